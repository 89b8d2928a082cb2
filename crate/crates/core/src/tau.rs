//! Hypergeometric BKP tau-functions by partition sums and by cut-and-join operators.
//!
//! Normalization: `tau = sum_lambda 2^{-l(lambda)} r_lambda Q_lambda(t/2) Q_lambda(s/2)`,
//! which for trivial weights is `exp(1/2 sum_k k t_k s_k)`. The effective second times are
//! `hbar^k s_k`, so the weight-`w` part of a tau carries `hbar^w`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gseries::{Alphabet, GradedSeries, Mono};
use crate::partition::{enumerate_strict_upto, StrictPartition};
use crate::qschur::{from_qbasis, mul_time, q_delta_hook, q_lambda_half, to_qbasis, QExpansion};
use crate::rational::{format_rational, int, pow, rat, Rational};
use crate::spectral::LaurentWindow;
use crate::wops::{w_km_closed, w_of_symbol, DOperator, DPoly, ZDSymbol};

/// Numerator parameters `u_a` and denominator parameters `w_b` of the weight function
/// `r(m) = prod_a r^{(u_a)}(m) / prod_b r^{(w_b)}(m)`, `r^{(c)}(m) = ((2m-1)^2 - 4c^2)/4`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightData {
    pub numer: Vec<Rational>,
    pub denom: Vec<Rational>,
}

/// `r^{(c)}(m) = ((2m-1)^2 - 4c^2)/4`.
pub fn r_content(c: &Rational, m: u32) -> Rational {
    let x = int(2 * m as i64 - 1);
    (&x * &x - int(4) * c * c) / int(4)
}

impl WeightData {
    pub fn new(numer: Vec<Rational>, denom: Vec<Rational>) -> Self {
        WeightData { numer, denom }
    }

    /// The generalized BGW model: one numerator parameter `N`.
    pub fn bgw(n: Rational) -> Self {
        WeightData::new(vec![n], Vec::new())
    }

    /// Checks that no denominator content vanishes in cells `1..=d`.
    pub fn validate(&self, d: u32) -> Result<()> {
        for (j, w) in self.denom.iter().enumerate() {
            for m in 1..=d {
                if r_content(w, m).is_zero() {
                    return Err(Error::ContentZero { param: format!("w_{}={}", j + 1, format_rational(w)), row: j + 1, cell: m });
                }
            }
        }
        Ok(())
    }

    /// `r(m)` for a single cell.
    pub fn cell(&self, m: u32) -> Result<Rational> {
        let mut v = Rational::one();
        for u in &self.numer {
            v *= r_content(u, m);
        }
        for (j, w) in self.denom.iter().enumerate() {
            let r = r_content(w, m);
            if r.is_zero() {
                return Err(Error::ContentZero { param: format!("w_{}={}", j + 1, format_rational(w)), row: j + 1, cell: m });
            }
            v /= r;
        }
        Ok(v)
    }

    /// `w(u, w) = z^{-1} prod_a ((D-1/2)^2 - u_a^2)`; only for `b = 0`.
    pub fn symbol(&self) -> Result<ZDSymbol> {
        if !self.denom.is_empty() {
            return Err(Error::Unsupported(
                "the t-space cut-and-join operator is finite only without denominator parameters".into(),
            ));
        }
        let shifted = DPoly::new(vec![rat(-1, 2), Rational::one()]);
        let square = shifted.mul(&shifted);
        let p = self
            .numer
            .iter()
            .fold(DPoly::constant(Rational::one()), |acc, u| acc.mul(&square.sub(&DPoly::constant(u * u))));
        Ok(ZDSymbol::term(-1, p))
    }
}

/// `r_lambda = prod_j prod_{m=1}^{lambda_j} r(m)`.
pub fn content_product(weights: &WeightData, lambda: &StrictPartition) -> Result<Rational> {
    let mut v = Rational::one();
    for (row, &part) in lambda.parts().iter().enumerate() {
        for m in 1..=part {
            match weights.cell(m) {
                Ok(c) => v *= c,
                Err(Error::ContentZero { param, cell, .. }) => {
                    return Err(Error::ContentZero { param, row: row + 1, cell })
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(v)
}

/// Second set of times: specialized values or a formal alphabet with its own cutoff.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SSpec {
    Specialized(BTreeMap<u32, Rational>),
    Formal { cutoff: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauSpec {
    pub weights: WeightData,
    pub s: SSpec,
    pub hbar: Rational,
    pub cutoff: u32,
}

impl TauSpec {
    /// `s_k = delta_{k,1}/2`, so that the effective `s_1` is `hbar/2`.
    pub fn bgw(n: Rational, hbar: Rational, cutoff: u32) -> Self {
        TauSpec {
            weights: WeightData::bgw(n),
            s: SSpec::Specialized([(1, rat(1, 2))].into_iter().collect()),
            hbar,
            cutoff,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let SSpec::Specialized(s) = &self.s {
            for &k in s.keys() {
                if k % 2 == 0 {
                    return Err(Error::InvalidTimeIndex(k as i64));
                }
            }
        }
        self.weights.validate(self.cutoff)
    }

    /// `hbar^k s_k`.
    pub fn effective_s(&self) -> Result<BTreeMap<u32, Rational>> {
        match &self.s {
            SSpec::Specialized(s) => Ok(s
                .iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(&k, v)| (k, v * pow(&self.hbar, k)))
                .collect()),
            SSpec::Formal { .. } => Err(Error::Unsupported("formal s has no specialized values".into())),
        }
    }
}

/// Partition-sum coordinates of a tau with specialized `s` in the basis `Q_lambda(t/2)`.
pub fn tau_qexpansion(spec: &TauSpec) -> Result<QExpansion> {
    spec.validate()?;
    let s = spec.effective_s()?;
    let mut e = QExpansion::new(spec.cutoff);
    for lambda in enumerate_strict_upto(spec.cutoff) {
        let r = content_product(&spec.weights, &lambda)?;
        if r.is_zero() {
            continue;
        }
        let qs = q_lambda_half(&lambda, lambda.size()).specialize(&s)?;
        let c = r * qs * pow(&rat(1, 2), lambda.len() as u32);
        e.add_term(lambda, c);
    }
    Ok(e)
}

/// The hypergeometric tau-function by its partition sum.
///
/// With formal `s` the result is a joint `T×S` series with cutoffs `(cutoff, s-cutoff)`.
pub fn hypergeometric_tau(spec: &TauSpec) -> Result<GradedSeries> {
    match spec.s {
        SSpec::Specialized(_) => Ok(from_qbasis(&tau_qexpansion(spec)?)),
        SSpec::Formal { cutoff: ds } => {
            spec.validate()?;
            let dt = spec.cutoff;
            let mut acc = GradedSeries::zero_joint(Alphabet::TS, (dt, ds));
            for lambda in enumerate_strict_upto(dt.min(ds)) {
                let r = content_product(&spec.weights, &lambda)?;
                if r.is_zero() {
                    continue;
                }
                let c = r * pow(&rat(1, 2), lambda.len() as u32) * pow(&spec.hbar, lambda.size());
                let qt = q_lambda_half(&lambda, dt);
                let qs = q_lambda_half(&lambda, ds);
                acc.add_assign_scaled(&qt.tensor(&qs, Alphabet::TS), &c)?;
            }
            Ok(acc)
        }
    }
}

/// `sum_lambda (hbar/4)^{|lambda|} r^{(N)}_lambda Q_lambda(t/2) Q_lambda(delta_{k,1}) 2^{-l(lambda)}`.
pub fn bgw_tau(n: &Rational, hbar: &Rational, d: u32) -> GradedSeries {
    let weights = WeightData::bgw(n.clone());
    let mut e = QExpansion::new(d);
    for lambda in enumerate_strict_upto(d) {
        let r = content_product(&weights, &lambda).expect("no denominator parameters");
        let c = pow(&(hbar / int(4)), lambda.size()) * r * q_delta_hook(&lambda) * pow(&rat(1, 2), lambda.len() as u32);
        e.add_term(lambda, c);
    }
    from_qbasis(&e)
}

/// `exp(sum_k X_k) . 1` for commuting operators `X_k` raising the weight by exactly `k`,
/// by `w T_w = sum_k k X_k T_{w-k}`.
fn graded_exp(d: u32, ops: &[(u32, DOperator)]) -> Result<GradedSeries> {
    let mut parts = vec![GradedSeries::one(Alphabet::T, d)];
    for w in 1..=d {
        let mut acc = GradedSeries::zero(Alphabet::T, d);
        for (k, x) in ops {
            if *k <= w {
                let term = x.apply(&parts[(w - k) as usize])?;
                acc.add_assign_scaled(&term.with_exact_cutoff(d), &int(*k as i64))?;
            }
        }
        parts.push(acc.scale(&rat(1, w as i64)));
    }
    let mut total = GradedSeries::zero(Alphabet::T, d);
    for p in &parts {
        total = total.add(p)?;
    }
    Ok(total)
}

/// `exp(hbar (1/4 W_{-1,2} + (1/16 - N^2/4) W_{-1,0})) . 1`.
pub fn bgw_cutjoin(n: &Rational, hbar: &Rational, d: u32) -> GradedSeries {
    let w0 = w_km_closed(-1, 2, d)
        .expect("parity")
        .scale(&rat(1, 4))
        .add_scaled(&w_km_closed(-1, 0, d).expect("parity"), &(rat(1, 16) - n * n / int(4)));
    graded_exp(d, &[(1, w0.scale(hbar))]).expect("alphabet T")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    TSpace,
    QBasis,
}

/// `exp(-sum_k s_k W_{w(u)^k}) . 1` (t-space) or the dressed exponential in the Q-basis.
pub fn cutjoin_tau(spec: &TauSpec, strategy: Strategy) -> Result<GradedSeries> {
    spec.validate()?;
    let s = spec.effective_s()?;
    let d = spec.cutoff;
    match strategy {
        Strategy::TSpace => {
            let w = spec.weights.symbol()?;
            let mut ops = Vec::new();
            for (&k, v) in &s {
                if k > d {
                    continue;
                }
                let op = w_of_symbol(&w.pow(k), d)?;
                ops.push((k, op.scale(&-v)));
            }
            graded_exp(d, &ops)
        }
        Strategy::QBasis => {
            // exp(1/2 sum k s_k t_k) in the Q-basis, then the diagonal content factors
            let mut parts: Vec<QExpansion> = vec![{
                let mut e = QExpansion::new(d);
                e.add_term(StrictPartition::empty(), Rational::one());
                e
            }];
            for w in 1..=d {
                let mut acc = QExpansion::new(d);
                for (&k, v) in &s {
                    if k > w {
                        continue;
                    }
                    let a = int(k as i64) * v / int(2);
                    for (lambda, c) in &parts[(w - k) as usize].coeffs {
                        for (mu, m) in &mul_time(lambda, k, d)?.coeffs {
                            acc.add_term(mu.clone(), int(k as i64) * &a * c * m);
                        }
                    }
                }
                let scaled = acc.coeffs.into_iter().map(|(l, c)| (l, c / int(w as i64))).collect();
                parts.push(QExpansion { cutoff: d, coeffs: scaled });
            }
            let mut total = QExpansion::new(d);
            for part in parts {
                for (lambda, c) in part.coeffs {
                    let r = content_product(&spec.weights, &lambda)?;
                    total.add_term(lambda, c * r);
                }
            }
            Ok(from_qbasis(&total))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecursionReport {
    pub passed: bool,
    pub checked_through: u32,
    pub first_failure: Option<u32>,
}

/// Checks `T_w = -(c l / w) W_{w(u)^l} T_{w-l}` on the graded parts of the partition sum,
/// for `s` supported on the single index `l` with effective value `c`.
pub fn degree_recursion_check(spec: &TauSpec) -> Result<RecursionReport> {
    let s = spec.effective_s()?;
    if s.len() != 1 {
        return Err(Error::Unsupported("degree recursion needs exactly one nonzero s_k".into()));
    }
    let (&l, c) = s.iter().next().expect("one entry");
    let d = spec.cutoff;
    let tau = hypergeometric_tau(spec)?;
    let op = w_of_symbol(&spec.weights.symbol()?.pow(l), d)?;
    for w in 1..=d {
        let expected = if w >= l {
            let prev = tau.graded_part(w - l);
            op.apply(&prev)?.graded_part(w).scale(&(-c * int(l as i64) / int(w as i64)))
        } else {
            GradedSeries::zero(Alphabet::T, d)
        };
        if tau.graded_part(w).mono_terms().ne(expected.mono_terms()) {
            return Ok(RecursionReport { passed: false, checked_through: d, first_failure: Some(w) });
        }
    }
    Ok(RecursionReport { passed: true, checked_through: d, first_failure: None })
}

/// `Psi(z) = tau(-2[z^{-1}])`, trusted down to `z^{-min(K, cutoff)}`.
pub fn wave_function(tau: &GradedSeries, k: u32) -> Result<LaurentWindow> {
    let shifted = tau.miwa_shift(&int(-2), k)?;
    let principal = shifted.principal();
    Ok(LaurentWindow::from_coeffs(
        shifted.zmin as i64,
        0,
        principal.into_iter().map(|(p, c)| (p as i64, c)),
    ))
}

/// Double Q-expansion `tau = sum c_{lambda,mu} Q_lambda(t/2) Q_mu(s/2)` of a tau with formal `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzTable {
    pub entries: BTreeMap<(StrictPartition, StrictPartition), Rational>,
}

impl HurwitzTable {
    pub fn entry(&self, lambda: &StrictPartition, mu: &StrictPartition) -> Rational {
        self.entries.get(&(lambda.clone(), mu.clone())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|(l, m)| l == m)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda,mu,coeff\n");
        for ((l, m), c) in &self.entries {
            out.push_str(&format!("\"{l}\",\"{m}\",{}\n", format_rational(c)));
        }
        out
    }
}

/// Extracts the double Q-expansion by solving in `t` and then in `s`.
pub fn hurwitz_table(spec: &TauSpec) -> Result<HurwitzTable> {
    let SSpec::Formal { cutoff: ds } = spec.s else {
        return Err(Error::Unsupported("hurwitz_table needs formal s".into()));
    };
    let dt = spec.cutoff;
    let tau = hypergeometric_tau(spec)?;

    let mut by_s: BTreeMap<Mono, Vec<(Mono, Rational)>> = BTreeMap::new();
    for ((a, b), c) in tau.terms() {
        by_s.entry(b.clone()).or_default().push((a.clone(), c.clone()));
    }
    let mut by_lambda: BTreeMap<StrictPartition, Vec<(Mono, Rational)>> = BTreeMap::new();
    for (b, ts) in by_s {
        let f = GradedSeries::from_terms(Alphabet::T, dt, ts);
        for (lambda, c) in to_qbasis(&f)?.coeffs {
            by_lambda.entry(lambda).or_default().push((b.clone(), c));
        }
    }
    let mut entries = BTreeMap::new();
    for (lambda, ss) in by_lambda {
        // the s-alphabet is solved with the same basis as t
        let g = GradedSeries::from_terms(Alphabet::T, ds, ss);
        for (mu, c) in to_qbasis(&g)?.coeffs {
            entries.insert((lambda.clone(), mu), c);
        }
    }
    Ok(HurwitzTable { entries })
}
