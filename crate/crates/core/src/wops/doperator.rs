use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gseries::{Alphabet, GradedSeries, Mono};
use crate::rational::{binomial, falling, format_rational, int, parse_rational, Rational};

/// Normal-ordered differential operator `sum c t^alpha d^beta` in the odd times.
///
/// Generators are infinite mode sums, so an operator is only ever materialized on a
/// weight window `W`: every term with `|alpha| <= W` and `|beta| <= W` is present, and the
/// operator agrees with the full one on every series of cutoff `<= W`.
#[derive(Clone, PartialEq, Eq)]
pub struct DOperator {
    terms: BTreeMap<(Mono, Mono), Rational>,
    window: u32,
}

impl fmt::Debug for DOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[window {}] ", self.window)?;
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}) {:?} d[{:?}]", format_rational(c), a, b)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    creation: BTreeMap<String, u32>,
    annihilation: BTreeMap<String, u32>,
    coeff: String,
}

fn mono_json(m: &Mono) -> BTreeMap<String, u32> {
    m.pairs().map(|(k, e)| (k.to_string(), e)).collect()
}

fn mono_from_json(map: &BTreeMap<String, u32>) -> Result<Mono> {
    let mut pairs = Vec::new();
    for (k, &e) in map {
        let k: u32 = k.parse().map_err(|_| Error::Parse(format!("time index {k:?}")))?;
        pairs.push((k, e));
    }
    Mono::from_pairs(&pairs)
}

/// `prod_k C(b_k, e_k) g_k!/(g_k - e_k)!` over all `e <= gcd(b, g)`, paired with `e`.
fn contractions(b: &Mono, g: &Mono) -> Vec<(Mono, Rational)> {
    let common = b.gcd(g);
    let mut out = vec![(Vec::<u32>::new(), Rational::one())];
    for (k, emax) in common.pairs() {
        let idx = ((k - 1) / 2) as usize;
        let (bk, gk) = (b.exponent(k), g.exponent(k));
        let mut next = Vec::new();
        for (exps, c) in &out {
            for e in 0..=emax {
                let mut ex = exps.clone();
                if ex.len() <= idx {
                    ex.resize(idx + 1, 0);
                }
                ex[idx] = e;
                next.push((ex, c * binomial(bk, e) * falling(&int(gk as i64), e)));
            }
        }
        out = next;
    }
    out.into_iter().map(|(e, c)| (Mono::from_exponents(e), c)).collect()
}

impl DOperator {
    pub fn zero(window: u32) -> Self {
        DOperator { terms: BTreeMap::new(), window }
    }

    pub fn scalar(c: Rational, window: u32) -> Self {
        let mut op = DOperator::zero(window);
        op.add_term(Mono::one(), Mono::one(), c);
        op
    }

    pub fn identity(window: u32) -> Self {
        DOperator::scalar(Rational::one(), window)
    }

    /// Builds from raw terms, keeping only those inside the window.
    pub fn from_terms<I>(window: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Mono, Mono, Rational)>,
    {
        let mut op = DOperator::zero(window);
        for (a, b, c) in terms {
            op.add_term(a, b, c);
        }
        op.prune();
        op
    }

    pub(crate) fn add_term(&mut self, creation: Mono, annihilation: Mono, c: Rational) {
        if c.is_zero() || creation.weight() > self.window || annihilation.weight() > self.window {
            return;
        }
        *self.terms.entry((creation, annihilation)).or_insert_with(Rational::zero) += c;
    }

    pub(crate) fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Mono, &Rational)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, creation: &Mono, annihilation: &Mono) -> Rational {
        self.terms
            .get(&(creation.clone(), annihilation.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// The scalar `c` if the operator is `c * identity`.
    pub fn as_scalar(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let ((a, b), c) = self.terms.iter().next()?;
                (a.is_one() && b.is_one()).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `weight(alpha) - weight(beta)` if it is the same for every term.
    pub fn weight_shift(&self) -> Option<i64> {
        let mut shifts = self.terms.keys().map(|(a, b)| a.weight() as i64 - b.weight() as i64);
        let first = shifts.next()?;
        shifts.all(|s| s == first).then_some(first)
    }

    /// Largest `|weight(alpha) - weight(beta)|` over the terms.
    pub fn max_abs_shift(&self) -> u32 {
        self.terms
            .keys()
            .map(|(a, b)| (a.weight() as i64 - b.weight() as i64).unsigned_abs() as u32)
            .max()
            .unwrap_or(0)
    }

    /// Largest amount by which a term lowers the weight.
    fn max_lowering(&self) -> u32 {
        self.terms
            .keys()
            .map(|(a, b)| b.weight().saturating_sub(a.weight()))
            .max()
            .unwrap_or(0)
    }

    /// Restricts to a smaller window.
    pub fn restrict(&self, window: u32) -> Self {
        let window = window.min(self.window);
        let mut op = DOperator::zero(window);
        for ((a, b), c) in &self.terms {
            op.add_term(a.clone(), b.clone(), c.clone());
        }
        op
    }

    /// Equality of the two operators on the smaller of the two windows.
    pub fn eq_on_window(&self, other: &DOperator) -> bool {
        let w = self.window.min(other.window);
        self.restrict(w).terms == other.restrict(w).terms
    }

    pub fn add(&self, other: &DOperator) -> Self {
        self.add_scaled(other, &Rational::one())
    }

    pub fn sub(&self, other: &DOperator) -> Self {
        self.add_scaled(other, &-Rational::one())
    }

    pub fn add_scaled(&self, other: &DOperator, c: &Rational) -> Self {
        let mut op = self.restrict(self.window.min(other.window));
        for ((a, b), v) in &other.terms {
            op.add_term(a.clone(), b.clone(), v * c);
        }
        op.prune();
        op
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut op = DOperator::zero(self.window);
        for ((a, b), v) in &self.terms {
            op.add_term(a.clone(), b.clone(), v * c);
        }
        op
    }

    /// Applies the operator to a series over `T`.
    ///
    /// The input is first cut to the window. The result is exact through
    /// `min(cutoff, window)` minus the largest weight-lowering of any term.
    pub fn apply(&self, f: &GradedSeries) -> Result<GradedSeries> {
        if f.alphabet() != Alphabet::T {
            return Err(Error::AlphabetMismatch(f.alphabet().name().into(), Alphabet::T.name().into()));
        }
        let d = f.cutoff().min(self.window);
        let out_cutoff = d.saturating_sub(self.max_lowering());
        let mut acc: BTreeMap<Mono, Rational> = BTreeMap::new();
        for (m, v) in f.mono_terms() {
            if m.weight() > d {
                continue;
            }
            for ((a, b), c) in &self.terms {
                if !b.divides(m) {
                    continue;
                }
                let out = a.mul(&b.quotient_of(m));
                if out.weight() > out_cutoff {
                    continue;
                }
                let factor: Rational = b
                    .pairs()
                    .map(|(k, e)| falling(&int(m.exponent(k) as i64), e))
                    .fold(Rational::one(), |x, y| x * y);
                *acc.entry(out).or_insert_with(Rational::zero) += c * v * factor;
            }
        }
        Ok(GradedSeries::from_terms(Alphabet::T, out_cutoff, acc))
    }

    /// Normal-ordered product `self * other`, exact on `window`.
    ///
    /// Terms of one factor outside the requested window can reach it through
    /// contractions, so each factor must be materialized on `window` plus the
    /// largest shift of the other.
    pub fn compose(&self, other: &DOperator, window: u32) -> Result<DOperator> {
        let need_self = window + other.max_abs_shift();
        let need_other = window + self.max_abs_shift();
        if self.window < need_self {
            return Err(Error::InsufficientWindow { needed: need_self, have: self.window });
        }
        if other.window < need_other {
            return Err(Error::InsufficientWindow { needed: need_other, have: other.window });
        }
        let mut op = DOperator::zero(window);
        for ((a, b), ca) in &self.terms {
            for ((g, d), cb) in &other.terms {
                for (e, c) in contractions(b, g) {
                    let creation = a.mul(&e.quotient_of(g));
                    let annihilation = e.quotient_of(b).mul(d);
                    op.add_term(creation, annihilation, ca * cb * c);
                }
            }
        }
        op.prune();
        Ok(op)
    }

    /// `[a, b] = ab - ba`, exact on `window`.
    pub fn commutator(a: &DOperator, b: &DOperator, window: u32) -> Result<DOperator> {
        Ok(a.compose(b, window)?.sub(&b.compose(a, window)?))
    }

    pub fn to_json_string(&self) -> String {
        let list: Vec<TermJson> = self
            .terms
            .iter()
            .map(|((a, b), c)| TermJson {
                creation: mono_json(a),
                annihilation: mono_json(b),
                coeff: format_rational(c),
            })
            .collect();
        serde_json::to_string(&list).expect("operator serializes")
    }

    pub fn from_json_str(s: &str, window: u32) -> Result<Self> {
        let list: Vec<TermJson> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut op = DOperator::zero(window);
        for t in list {
            op.add_term(mono_from_json(&t.creation)?, mono_from_json(&t.annihilation)?, parse_rational(&t.coeff)?);
        }
        op.prune();
        Ok(op)
    }
}
