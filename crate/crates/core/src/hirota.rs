//! The BKP bilinear identity
//! `res_z z^{-1} e^{sum z^k (t_k - t'_k)} tau(t - 2[z^{-1}]) tau(t' + 2[z^{-1}]) = tau(t) tau(t')`
//! as an exact check on a truncated series.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gseries::{Alphabet, GradedSeries, MiwaShifted, TermJson};
use crate::rational::{format_rational, int, rat};

/// Coefficients `h_j` of `exp(sign * sum_k z^k t_k)`, each homogeneous of weight `j`.
fn exp_coeffs(sign: i64, d: u32) -> Vec<GradedSeries> {
    let mut h = vec![GradedSeries::one(Alphabet::T, d)];
    for j in 1..=d {
        let mut acc = GradedSeries::zero(Alphabet::T, d);
        for k in (1..=j).step_by(2) {
            let tk = GradedSeries::time(k, d, int(sign * k as i64)).expect("odd index");
            acc = acc.add(&tk.mul(&h[(j - k) as usize]).expect("alphabet T")).expect("alphabet T");
        }
        h.push(acc.scale(&rat(1, j as i64)));
    }
    h
}

/// `sum_j z^{j-p} h_j M_p` collected at `z^n`, exact through weight `d`.
fn dressed_coeff(h: &[GradedSeries], m: &MiwaShifted, n: i64, d: u32) -> Result<GradedSeries> {
    let mut acc = GradedSeries::zero(Alphabet::T, d);
    for (j, hj) in h.iter().enumerate() {
        let p = j as i64 - n;
        if p < 0 {
            continue;
        }
        let Some(slot) = m.slot(-(p as i32)) else {
            return Err(Error::InsufficientCutoff { needed: p as u32, have: (-m.zmin) as u32 });
        };
        // h_j has weight j, so the product is exact through j + slot cutoff
        if j as u32 + slot.cutoff() < d {
            return Err(Error::InsufficientCutoff { needed: d - j as u32 + p as u32, have: slot.cutoff() + p as u32 });
        }
        acc = acc.add(&hj.mul(&slot.with_exact_cutoff(d))?)?;
    }
    Ok(acc)
}

/// The residual as a joint `T×T'` series through bidegree `(dt, dt2)`.
///
/// Coefficients at `(w, w')` involve tau up to weight `w + w'`, so the tau cutoff
/// must be at least `dt + dt2`.
pub fn hirota_residual(tau: &GradedSeries, dt: u32, dt2: u32) -> Result<GradedSeries> {
    if tau.alphabet() != Alphabet::T {
        return Err(Error::AlphabetMismatch(tau.alphabet().name().into(), Alphabet::T.name().into()));
    }
    let needed = dt + dt2;
    if tau.cutoff() < needed {
        return Err(Error::InsufficientCutoff { needed, have: tau.cutoff() });
    }
    let tau = tau.truncate(needed);
    let m_minus = tau.miwa_shift(&int(-2), needed)?;
    let m_plus = tau.miwa_shift(&int(2), needed)?;
    let h = exp_coeffs(1, dt);
    let h2 = exp_coeffs(-1, dt2);

    let mut residual = tau.truncate(dt).tensor(&tau.truncate(dt2), Alphabet::TT).neg();
    for n in -(dt2 as i64)..=(dt as i64) {
        let a = dressed_coeff(&h, &m_minus, n, dt)?;
        if a.is_zero() {
            continue;
        }
        let b = dressed_coeff(&h2, &m_plus, -n, dt2)?;
        residual = residual.add(&a.tensor(&b, Alphabet::TT))?;
    }
    Ok(residual)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HirotaReport {
    pub verdict: Verdict,
    pub checked_bidegree: [u32; 2],
    /// First nonzero term of the residual in the canonical order.
    pub witness: Option<TermJson>,
}

impl HirotaReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Pass iff the residual vanishes through the bidegree.
pub fn is_bkp_tau(tau: &GradedSeries, dt: u32, dt2: u32) -> Result<HirotaReport> {
    let residual = hirota_residual(tau, dt, dt2)?;
    let witness = residual.terms().next().map(|((a, b), c)| TermJson {
        mono: a.to_json(),
        mono2: Some(b.to_json()),
        coeff: format_rational(c),
    });
    Ok(HirotaReport {
        verdict: if witness.is_none() { Verdict::Pass } else { Verdict::Fail },
        checked_bidegree: [dt, dt2],
        witness,
    })
}
