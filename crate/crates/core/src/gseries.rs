//! Truncated weight-graded polynomials in the odd times over exact rationals.
//!
//! A [`GradedSeries`] lives over one alphabet (`T` or `S`) or over a product of
//! two alphabets (`T×S`, `T×T'`). Every term is keyed by a pair of monomials; for
//! single alphabets the second monomial is always `1`. Terms whose weight exceeds
//! the cutoff are never stored, and the cutoff records how far the series is known.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{binomial, format_rational, int, parse_rational, pow, Rational};

/// Monomial `prod_k t_k^{e_k}` in the odd times, stored by `(k-1)/2` with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Mono(Vec<u32>);

pub(crate) fn odd_index(k: u32) -> Result<usize> {
    if k % 2 == 1 {
        Ok(((k - 1) / 2) as usize)
    } else {
        Err(Error::InvalidTimeIndex(k as i64))
    }
}

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Mono(exps)
    }

    /// Builds `prod t_k^e` from `(k, e)` pairs; `k` must be odd.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self> {
        let mut exps = Vec::new();
        for &(k, e) in pairs {
            let i = odd_index(k)?;
            if exps.len() <= i {
                exps.resize(i + 1, 0);
            }
            exps[i] += e;
        }
        Ok(Mono::from_exponents(exps))
    }

    pub fn var(k: u32) -> Result<Self> {
        Mono::from_pairs(&[(k, 1)])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, k: u32) -> u32 {
        if k % 2 == 0 {
            return 0;
        }
        self.0.get(((k - 1) / 2) as usize).copied().unwrap_or(0)
    }

    /// Nonzero `(k, e)` pairs in increasing `k`.
    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (2 * i as u32 + 1, e))
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &e)| (2 * i as u32 + 1) * e).sum()
    }

    /// Total degree `sum_k e_k`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let n = self.0.len().max(other.0.len());
        let exps = (0..n)
            .map(|i| self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0))
            .collect();
        Mono(exps)
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees `self.divides(other)`.
    pub fn quotient_of(&self, other: &Mono) -> Mono {
        let exps = other
            .0
            .iter()
            .enumerate()
            .map(|(i, &b)| b - self.0.get(i).copied().unwrap_or(0))
            .collect();
        Mono::from_exponents(exps)
    }

    /// Componentwise minimum (gcd of two monomials).
    pub fn gcd(&self, other: &Mono) -> Mono {
        let exps = self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect();
        Mono::from_exponents(exps)
    }

    pub(crate) fn to_json(&self) -> BTreeMap<String, u32> {
        self.pairs().map(|(k, e)| (k.to_string(), e)).collect()
    }

    fn from_json(map: &BTreeMap<String, u32>) -> Result<Mono> {
        let mut pairs = Vec::new();
        for (k, &e) in map {
            let k: u32 = k
                .parse()
                .map_err(|_| Error::Parse(format!("time index {k:?} is not an integer")))?;
            pairs.push((k, e));
        }
        Mono::from_pairs(&pairs)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (k, e) in self.pairs() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "t{k}")?;
            } else {
                write!(f, "t{k}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Which variables a series is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    #[serde(rename = "T")]
    T,
    #[serde(rename = "S")]
    S,
    #[serde(rename = "TxS")]
    TS,
    #[serde(rename = "TxT'")]
    TT,
}

impl Alphabet {
    pub fn is_joint(self) -> bool {
        matches!(self, Alphabet::TS | Alphabet::TT)
    }

    pub fn name(self) -> &'static str {
        match self {
            Alphabet::T => "T",
            Alphabet::S => "S",
            Alphabet::TS => "TxS",
            Alphabet::TT => "TxT'",
        }
    }

    /// The alphabet of each component of a joint series.
    pub fn components(self) -> (Alphabet, Alphabet) {
        match self {
            Alphabet::TS => (Alphabet::T, Alphabet::S),
            Alphabet::TT => (Alphabet::T, Alphabet::T),
            a => (a, a),
        }
    }
}

/// Key of a term: `(first, second)` monomials. Single-alphabet series keep `second == 1`.
pub type Key = (Mono, Mono);

#[derive(Clone, PartialEq, Eq)]
pub struct GradedSeries {
    alphabet: Alphabet,
    cutoff: (u32, u32),
    terms: BTreeMap<Key, Rational>,
}

impl fmt::Debug for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} cutoff {:?}] ", self.alphabet.name(), self.cutoffs())?;
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if self.alphabet.is_joint() {
                write!(f, "({}) {:?} | {:?}", format_rational(c), a, b)?;
            } else {
                write!(f, "({}) {:?}", format_rational(c), a)?;
            }
        }
        Ok(())
    }
}

impl GradedSeries {
    pub fn zero(alphabet: Alphabet, cutoff: u32) -> Self {
        assert!(!alphabet.is_joint(), "use zero_joint for joint alphabets");
        GradedSeries { alphabet, cutoff: (cutoff, 0), terms: BTreeMap::new() }
    }

    pub fn zero_joint(alphabet: Alphabet, cutoffs: (u32, u32)) -> Self {
        assert!(alphabet.is_joint(), "use zero for single alphabets");
        GradedSeries { alphabet, cutoff: cutoffs, terms: BTreeMap::new() }
    }

    fn empty_like(&self) -> Self {
        GradedSeries { alphabet: self.alphabet, cutoff: self.cutoff, terms: BTreeMap::new() }
    }

    pub fn constant(alphabet: Alphabet, cutoff: u32, c: Rational) -> Self {
        let mut s = GradedSeries::zero(alphabet, cutoff);
        s.insert((Mono::one(), Mono::one()), c);
        s
    }

    pub fn one(alphabet: Alphabet, cutoff: u32) -> Self {
        GradedSeries::constant(alphabet, cutoff, Rational::one())
    }

    pub fn one_joint(alphabet: Alphabet, cutoffs: (u32, u32)) -> Self {
        let mut s = GradedSeries::zero_joint(alphabet, cutoffs);
        s.insert((Mono::one(), Mono::one()), Rational::one());
        s
    }

    /// `coeff * t_k` over alphabet `T`.
    pub fn time(k: u32, cutoff: u32, coeff: Rational) -> Result<Self> {
        let mut s = GradedSeries::zero(Alphabet::T, cutoff);
        s.insert((Mono::var(k)?, Mono::one()), coeff);
        Ok(s)
    }

    /// Single-alphabet series from `(monomial, coefficient)` pairs, truncated at `cutoff`.
    pub fn from_terms<I>(alphabet: Alphabet, cutoff: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Mono, Rational)>,
    {
        let mut s = GradedSeries::zero(alphabet, cutoff);
        for (m, c) in terms {
            s.accumulate((m, Mono::one()), c);
        }
        s.prune();
        s
    }

    pub fn from_joint_terms<I>(alphabet: Alphabet, cutoffs: (u32, u32), terms: I) -> Self
    where
        I: IntoIterator<Item = (Key, Rational)>,
    {
        let mut s = GradedSeries::zero_joint(alphabet, cutoffs);
        for (k, c) in terms {
            s.accumulate(k, c);
        }
        s.prune();
        s
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// Cutoff of the first (or only) alphabet.
    pub fn cutoff(&self) -> u32 {
        self.cutoff.0
    }

    pub fn cutoffs(&self) -> (u32, u32) {
        self.cutoff
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Rational)> {
        self.terms.iter()
    }

    /// Terms of a single-alphabet series as `(monomial, coefficient)`.
    pub fn mono_terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter().map(|((m, _), c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Rational {
        self.terms.get(&(m.clone(), Mono::one())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff_joint(&self, key: &Key) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff_joint(&(Mono::one(), Mono::one()))
    }

    fn fits(&self, key: &Key) -> bool {
        key.0.weight() <= self.cutoff.0 && key.1.weight() <= self.cutoff.1
    }

    fn insert(&mut self, key: Key, c: Rational) {
        if !c.is_zero() && self.fits(&key) {
            self.terms.insert(key, c);
        }
    }

    fn accumulate(&mut self, key: Key, c: Rational) {
        if c.is_zero() || !self.fits(&key) {
            return;
        }
        *self.terms.entry(key).or_insert_with(Rational::zero) += c;
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    fn check_same(&self, other: &GradedSeries) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(
                self.alphabet.name().into(),
                other.alphabet.name().into(),
            ));
        }
        Ok(())
    }

    fn min_cutoff(&self, other: &GradedSeries) -> (u32, u32) {
        (self.cutoff.0.min(other.cutoff.0), self.cutoff.1.min(other.cutoff.1))
    }

    /// Lowers the cutoff (never raises it) and drops terms beyond it.
    pub fn truncate(&self, cutoff: u32) -> Self {
        self.truncate_joint((cutoff, self.cutoff.1))
    }

    pub fn truncate_joint(&self, cutoffs: (u32, u32)) -> Self {
        let cutoff = (cutoffs.0.min(self.cutoff.0), cutoffs.1.min(self.cutoff.1));
        let mut out = GradedSeries { alphabet: self.alphabet, cutoff, terms: BTreeMap::new() };
        for (k, c) in &self.terms {
            out.insert(k.clone(), c.clone());
        }
        out
    }

    /// Re-declares the cutoff; only sound when the series is known to be an exact
    /// polynomial whose terms all lie at or below the old cutoff.
    pub fn with_exact_cutoff(&self, cutoff: u32) -> Self {
        let mut out = self.truncate(cutoff);
        out.cutoff.0 = cutoff;
        out
    }

    pub fn add(&self, other: &GradedSeries) -> Result<Self> {
        self.check_same(other)?;
        let mut out = GradedSeries {
            alphabet: self.alphabet,
            cutoff: self.min_cutoff(other),
            terms: BTreeMap::new(),
        };
        for (k, c) in self.terms.iter().chain(other.terms.iter()) {
            out.accumulate(k.clone(), c.clone());
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &GradedSeries) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.empty_like();
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v * c);
        }
        out
    }

    pub fn add_assign_scaled(&mut self, other: &GradedSeries, c: &Rational) -> Result<()> {
        self.check_same(other)?;
        self.cutoff = self.min_cutoff(other);
        self.terms.retain(|k, _| k.0.weight() <= self.cutoff.0 && k.1.weight() <= self.cutoff.1);
        for (k, v) in &other.terms {
            self.accumulate(k.clone(), v * c);
        }
        self.prune();
        Ok(())
    }

    pub fn mul(&self, other: &GradedSeries) -> Result<Self> {
        self.check_same(other)?;
        let mut out = GradedSeries {
            alphabet: self.alphabet,
            cutoff: self.min_cutoff(other),
            terms: BTreeMap::new(),
        };
        let (d0, d1) = out.cutoff;
        for ((a0, a1), ca) in &self.terms {
            let wa0 = a0.weight();
            if wa0 > d0 {
                continue;
            }
            let wa1 = a1.weight();
            for ((b0, b1), cb) in &other.terms {
                // keys are ordered by the weight of the first monomial
                if wa0 + b0.weight() > d0 {
                    break;
                }
                if wa1 + b1.weight() > d1 {
                    continue;
                }
                out.accumulate((a0.mul(b0), a1.mul(b1)), ca * cb);
            }
        }
        out.prune();
        Ok(out)
    }

    /// `sum_n f^n / n!` for `f` with zero constant term.
    pub fn exp_positive(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstant);
        }
        let mut one = self.empty_like();
        one.insert((Mono::one(), Mono::one()), Rational::one());
        let mut result = one.clone();
        let mut power = one;
        let mut n = 0i64;
        loop {
            n += 1;
            power = power.mul(self)?.scale(&Rational::new(1.into(), n.into()));
            if power.is_zero() {
                break;
            }
            result = result.add(&power)?;
        }
        Ok(result)
    }

    /// `d/dt_k` in the first (or only) alphabet.
    pub fn partial(&self, k: u32) -> Result<Self> {
        self.partial_in(0, k)
    }

    /// `d/dt_k` in component `slot` (0 or 1) of a series.
    pub fn partial_in(&self, slot: usize, k: u32) -> Result<Self> {
        let idx = odd_index(k)?;
        let mut out = self.empty_like();
        let var = {
            let mut e = vec![0; idx + 1];
            e[idx] = 1;
            Mono::from_exponents(e)
        };
        for (key, c) in &self.terms {
            let m = if slot == 0 { &key.0 } else { &key.1 };
            let e = m.exponent(k);
            if e == 0 {
                continue;
            }
            let reduced = var.quotient_of(m);
            let new_key = if slot == 0 { (reduced, key.1.clone()) } else { (key.0.clone(), reduced) };
            out.accumulate(new_key, c * int(e as i64));
        }
        // input weights above the cutoff would land below it
        if slot == 0 {
            out.cutoff.0 = out.cutoff.0.saturating_sub(k);
        } else {
            out.cutoff.1 = out.cutoff.1.saturating_sub(k);
        }
        out.prune();
        Ok(out)
    }

    /// Part of weight exactly `w` (first alphabet).
    pub fn graded_part(&self, w: u32) -> Self {
        let mut out = self.empty_like();
        for (k, c) in &self.terms {
            if k.0.weight() == w {
                out.terms.insert(k.clone(), c.clone());
            }
        }
        out
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0.weight()).max()
    }

    pub fn is_homogeneous(&self, w: u32) -> bool {
        self.terms.keys().all(|k| k.0.weight() + k.1.weight() == w)
    }

    /// Equality of all coefficients of weight `<= d` in the first alphabet.
    pub fn eq_through(&self, other: &GradedSeries, d: u32) -> bool {
        self.alphabet == other.alphabet && self.truncate(d).terms == other.truncate(d).terms
    }

    /// `f(c t)`: every monomial is scaled by `c^degree`.
    pub fn rescale_times(&self, c: &Rational) -> Self {
        let mut out = self.empty_like();
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v * pow(c, k.0.degree()) * pow(c, k.1.degree()));
        }
        out.prune();
        out
    }

    /// Swaps the two components of a joint series.
    pub fn swap(&self) -> Self {
        let mut out = GradedSeries {
            alphabet: self.alphabet,
            cutoff: (self.cutoff.1, self.cutoff.0),
            terms: BTreeMap::new(),
        };
        for ((a, b), c) in &self.terms {
            out.terms.insert((b.clone(), a.clone()), c.clone());
        }
        out
    }

    /// Tensor product of two single-alphabet series into a joint series.
    pub fn tensor(&self, other: &GradedSeries, alphabet: Alphabet) -> Self {
        let mut out = GradedSeries::zero_joint(alphabet, (self.cutoff.0, other.cutoff.0));
        for ((a, _), ca) in &self.terms {
            for ((b, _), cb) in &other.terms {
                out.insert((a.clone(), b.clone()), ca * cb);
            }
        }
        out
    }

    /// Evaluates a single-alphabet series at `t_k = values[k]` (unset keys are zero).
    pub fn specialize(&self, values: &BTreeMap<u32, Rational>) -> Result<Rational> {
        if self.alphabet.is_joint() {
            return Err(Error::Unsupported("specialize needs a single alphabet".into()));
        }
        Ok(self.terms.iter().fold(Rational::zero(), |acc, ((m, _), c)| acc + c * eval_mono(m, values)))
    }

    /// Substitutes values for the second alphabet of a joint series.
    pub fn specialize_second(&self, values: &BTreeMap<u32, Rational>) -> Result<Self> {
        if !self.alphabet.is_joint() {
            return Err(Error::Unsupported("specialize_second needs a joint alphabet".into()));
        }
        let first = self.alphabet.components().0;
        let mut out = GradedSeries::zero(first, self.cutoff.0);
        for ((a, b), c) in &self.terms {
            out.accumulate((a.clone(), Mono::one()), c * eval_mono(b, values));
        }
        out.prune();
        Ok(out)
    }

    /// Substitutes `t_k -> t_k + c / (k z^k)` for every odd `k` and collects by powers of `z`.
    ///
    /// The slot at `z^{-p}` is exact through weight `cutoff - p`: monomials of `f`
    /// above the cutoff would otherwise feed it.
    pub fn miwa_shift(&self, c: &Rational, zwindow: u32) -> Result<MiwaShifted> {
        if self.alphabet.is_joint() {
            return Err(Error::Unsupported("miwa_shift needs a single alphabet".into()));
        }
        let d = self.cutoff.0;
        let depth = zwindow.min(d);
        let mut slots: BTreeMap<i32, GradedSeries> = (0..=depth)
            .map(|p| (-(p as i32), GradedSeries::zero(self.alphabet, d - p)))
            .collect();
        for ((m, _), coeff) in &self.terms {
            // Expand prod_k (t_k + c/(k z^k))^{e_k} one variable at a time.
            let mut partial: Vec<(u32, Vec<u32>, Rational)> = vec![(0, Vec::new(), coeff.clone())];
            for (k, e) in m.pairs() {
                let idx = ((k - 1) / 2) as usize;
                let step = c / int(k as i64);
                let mut next = Vec::with_capacity(partial.len() * (e as usize + 1));
                for (zdrop, exps, v) in &partial {
                    for j in 0..=e {
                        let drop = zdrop + k * j;
                        if drop > depth {
                            break;
                        }
                        let mut ex = exps.clone();
                        if ex.len() <= idx {
                            ex.resize(idx + 1, 0);
                        }
                        ex[idx] = e - j;
                        next.push((drop, ex, v * binomial(e, j) * pow(&step, j)));
                    }
                }
                partial = next;
            }
            for (zdrop, exps, v) in partial {
                let slot = slots.get_mut(&-(zdrop as i32)).expect("slot within window");
                slot.accumulate((Mono::from_exponents(exps), Mono::one()), v);
            }
        }
        for s in slots.values_mut() {
            s.prune();
        }
        Ok(MiwaShifted { zmin: -(depth as i32), zmax: 0, coeffs: slots })
    }

    pub fn to_json(&self) -> SeriesJson {
        let cutoff = if self.alphabet.is_joint() {
            CutoffJson::Joint([self.cutoff.0, self.cutoff.1])
        } else {
            CutoffJson::Single(self.cutoff.0)
        };
        let terms = self
            .terms
            .iter()
            .map(|((a, b), c)| TermJson {
                mono: a.to_json(),
                mono2: if self.alphabet.is_joint() { Some(b.to_json()) } else { None },
                coeff: format_rational(c),
            })
            .collect();
        SeriesJson { alphabet: self.alphabet, cutoff, terms }
    }

    pub fn from_json(json: &SeriesJson) -> Result<Self> {
        let mut s = match (json.alphabet.is_joint(), &json.cutoff) {
            (false, CutoffJson::Single(d)) => GradedSeries::zero(json.alphabet, *d),
            (true, CutoffJson::Joint([d0, d1])) => GradedSeries::zero_joint(json.alphabet, (*d0, *d1)),
            _ => return Err(Error::Parse("cutoff shape does not match alphabet".into())),
        };
        for t in &json.terms {
            let a = Mono::from_json(&t.mono)?;
            let b = match &t.mono2 {
                Some(m) => Mono::from_json(m)?,
                None => Mono::one(),
            };
            let key = (a, b);
            if !s.fits(&key) {
                return Err(Error::Parse(format!("term {:?} exceeds the cutoff", key)));
            }
            s.accumulate(key, parse_rational(&t.coeff)?);
        }
        s.prune();
        Ok(s)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("series serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: SeriesJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        GradedSeries::from_json(&json)
    }
}

fn eval_mono(m: &Mono, values: &BTreeMap<u32, Rational>) -> Rational {
    let mut acc = Rational::one();
    for (k, e) in m.pairs() {
        match values.get(&k) {
            Some(v) => acc *= pow(v, e),
            None => return Rational::zero(),
        }
    }
    acc
}

/// A finite `z`-window of `f(t + c[z^{-1}])`.
#[derive(Clone, Debug, PartialEq)]
pub struct MiwaShifted {
    pub zmin: i32,
    pub zmax: i32,
    pub coeffs: BTreeMap<i32, GradedSeries>,
}

impl MiwaShifted {
    pub fn slot(&self, power: i32) -> Option<&GradedSeries> {
        self.coeffs.get(&power)
    }

    /// Sets every time to zero: the principal specialization `f(c[z^{-1}])` by power of `z`.
    pub fn principal(&self) -> BTreeMap<i32, Rational> {
        self.coeffs.iter().map(|(p, s)| (*p, s.constant_term())).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CutoffJson {
    Single(u32),
    Joint([u32; 2]),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub mono: BTreeMap<String, u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mono2: Option<BTreeMap<String, u32>>,
    pub coeff: String,
}

/// Wire format: `{"alphabet":"T","cutoff":D,"terms":[{"mono":{"1":2},"coeff":"4/3"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub alphabet: Alphabet,
    pub cutoff: CutoffJson,
    pub terms: Vec<TermJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn t(k: u32, d: u32, c: i64) -> GradedSeries {
        GradedSeries::time(k, d, int(c)).unwrap()
    }

    fn mono(pairs: &[(u32, u32)]) -> Mono {
        Mono::from_pairs(pairs).unwrap()
    }

    #[test]
    fn add_examples() {
        let z = GradedSeries::zero(Alphabet::T, 4);
        let g = t(1, 4, 3).add(&t(3, 4, 1)).unwrap();
        assert_eq!(z.add(&g).unwrap(), g);
        assert!(t(1, 4, 2).add(&t(1, 4, -2)).unwrap().is_zero());
        let s = t(1, 4, 1).add(&t(3, 4, 1)).unwrap();
        assert_eq!(s.coeff(&mono(&[(1, 1)])), int(1));
        assert_eq!(s.coeff(&mono(&[(3, 1)])), int(1));
        assert_eq!(s.len(), 2);
        let other = GradedSeries::one(Alphabet::S, 4);
        assert!(matches!(s.add(&other), Err(Error::AlphabetMismatch(..))));
    }

    #[test]
    fn mul_examples() {
        let f = t(1, 4, 2).add(&t(3, 4, 1)).unwrap();
        assert_eq!(f.mul(&GradedSeries::one(Alphabet::T, 4)).unwrap(), f);
        let sq = t(1, 4, 2).mul(&t(1, 4, 2)).unwrap();
        assert_eq!(sq.coeff(&mono(&[(1, 2)])), int(4));
        assert_eq!(sq.len(), 1);
        assert!(t(1, 3, 1).mul(&t(3, 3, 1)).unwrap().is_zero());
    }

    #[test]
    fn exp_examples() {
        assert_eq!(GradedSeries::zero(Alphabet::T, 3).exp_positive().unwrap(), GradedSeries::one(Alphabet::T, 3));
        let e = t(1, 2, 2).exp_positive().unwrap();
        assert_eq!(e.coeff(&Mono::one()), int(1));
        assert_eq!(e.coeff(&mono(&[(1, 1)])), int(2));
        assert_eq!(e.coeff(&mono(&[(1, 2)])), int(2));
        assert_eq!(e.len(), 3);
        let joint = GradedSeries::from_joint_terms(
            Alphabet::TS,
            (2, 2),
            [((mono(&[(1, 1)]), mono(&[(1, 1)])), int(2))],
        );
        let ej = joint.exp_positive().unwrap();
        assert_eq!(ej.coeff_joint(&(mono(&[(1, 1)]), mono(&[(1, 1)]))), int(2));
        assert_eq!(ej.coeff_joint(&(mono(&[(1, 2)]), mono(&[(1, 2)]))), int(2));
        assert_eq!(ej.len(), 3);
        assert_eq!(GradedSeries::one(Alphabet::T, 2).exp_positive(), Err(Error::NonzeroConstant));
    }

    #[test]
    fn partial_examples() {
        let f = GradedSeries::from_terms(Alphabet::T, 5, [(mono(&[(1, 2)]), int(2))]);
        let d = f.partial(1).unwrap();
        assert_eq!(d.coeff(&mono(&[(1, 1)])), int(4));
        assert_eq!(d.len(), 1);
        assert!(t(1, 5, 1).partial(3).unwrap().is_zero());
        let g = GradedSeries::from_terms(Alphabet::T, 5, [(mono(&[(1, 1), (3, 1)]), int(1))]);
        assert_eq!(g.partial(1).unwrap(), t(3, 4, 1));
        assert_eq!(g.partial(2), Err(Error::InvalidTimeIndex(2)));
    }

    #[test]
    fn miwa_examples() {
        let one = GradedSeries::one(Alphabet::T, 3);
        let m = one.miwa_shift(&int(-2), 3).unwrap();
        assert_eq!(m.principal().get(&0), Some(&int(1)));
        assert!(m.coeffs.iter().filter(|(p, _)| **p != 0).all(|(_, s)| s.is_zero()));

        let m = t(1, 3, 1).miwa_shift(&int(-2), 3).unwrap();
        assert_eq!(m.slot(0).unwrap(), &t(1, 3, 1));
        assert_eq!(m.slot(-1).unwrap().constant_term(), int(-2));

        let f = GradedSeries::from_terms(Alphabet::T, 2, [(mono(&[(1, 2)]), int(2))]);
        let m = f.miwa_shift(&int(-2), 2).unwrap();
        assert_eq!(m.slot(0).unwrap().coeff(&mono(&[(1, 2)])), int(2));
        assert_eq!(m.slot(-1).unwrap().coeff(&mono(&[(1, 1)])), int(-8));
        assert_eq!(m.slot(-2).unwrap().constant_term(), int(8));
        assert_eq!(m.slot(-1).unwrap().cutoff(), 1);
    }

    #[test]
    fn miwa_with_zero_shift_is_identity() {
        let f = GradedSeries::from_terms(
            Alphabet::T,
            5,
            [(mono(&[(1, 2), (3, 1)]), rat(3, 2)), (mono(&[(5, 1)]), int(-1)), (Mono::one(), int(1))],
        );
        let m = f.miwa_shift(&Rational::zero(), 5).unwrap();
        assert_eq!(m.slot(0).unwrap(), &f);
        assert!(m.coeffs.iter().filter(|(p, _)| **p != 0).all(|(_, s)| s.is_zero()));
    }

    #[test]
    fn specialize_examples() {
        let delta: BTreeMap<u32, Rational> = [(1, int(1))].into_iter().collect();
        assert_eq!(t(1, 3, 2).specialize(&delta).unwrap(), int(2));
        let q21 = GradedSeries::from_terms(
            Alphabet::T,
            3,
            [(mono(&[(1, 3)]), rat(4, 3)), (mono(&[(3, 1)]), int(-4))],
        );
        assert_eq!(q21.specialize(&delta).unwrap(), rat(4, 3));
        let f = q21.add(&GradedSeries::constant(Alphabet::T, 3, int(7))).unwrap();
        assert_eq!(f.specialize(&BTreeMap::new()).unwrap(), int(7));
    }

    #[test]
    fn json_shape() {
        let f = GradedSeries::from_terms(Alphabet::T, 3, [(mono(&[(1, 3)]), rat(4, 3)), (mono(&[(3, 1)]), int(-4))]);
        let s = f.to_json_string();
        assert_eq!(
            s,
            r#"{"alphabet":"T","cutoff":3,"terms":[{"mono":{"3":1},"coeff":"-4"},{"mono":{"1":3},"coeff":"4/3"}]}"#
        );
        assert_eq!(GradedSeries::from_json_str(&s).unwrap(), f);
        let j = GradedSeries::from_joint_terms(Alphabet::TS, (2, 3), [((mono(&[(1, 1)]), mono(&[(3, 1)])), int(5))]);
        assert_eq!(GradedSeries::from_json_str(&j.to_json_string()).unwrap(), j);
        assert!(GradedSeries::from_json_str(r#"{"alphabet":"T","cutoff":1,"terms":[{"mono":{"3":1},"coeff":"1"}]}"#).is_err());
        assert!(GradedSeries::from_json_str(r#"{"alphabet":"T","cutoff":4,"terms":[{"mono":{"2":1},"coeff":"1"}]}"#).is_err());
    }

    fn arb_series(d: u32) -> impl Strategy<Value = GradedSeries> {
        let monos: Vec<Mono> = (0..=d)
            .flat_map(crate::partition::odd_part_exponents)
            .map(Mono::from_exponents)
            .collect();
        let n = monos.len();
        proptest::collection::vec((0..n, -4i64..=4, 1i64..=3), 0..6).prop_map(move |v| {
            GradedSeries::from_terms(Alphabet::T, d, v.into_iter().map(|(i, a, b)| (monos[i].clone(), rat(a, b))))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(f in arb_series(7), g in arb_series(7), h in arb_series(7)) {
            prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
            prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
            prop_assert_eq!(
                f.mul(&g.add(&h).unwrap()).unwrap(),
                f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
            );
        }

        #[test]
        fn leibniz(f in arb_series(7), g in arb_series(7), k in prop::sample::select(vec![1u32, 3, 5])) {
            let lhs = f.mul(&g).unwrap().partial(k).unwrap();
            let rhs = f.partial(k).unwrap().mul(&g).unwrap()
                .add(&f.mul(&g.partial(k).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn exp_inverse(f in arb_series(6)) {
            let f0 = f.sub(&GradedSeries::constant(Alphabet::T, 6, f.constant_term())).unwrap();
            let e = f0.exp_positive().unwrap().mul(&f0.neg().exp_positive().unwrap()).unwrap();
            prop_assert_eq!(e, GradedSeries::one(Alphabet::T, 6));
        }

        #[test]
        fn json_round_trip(f in arb_series(6)) {
            prop_assert_eq!(GradedSeries::from_json_str(&f.to_json_string()).unwrap(), f);
        }
    }
}
