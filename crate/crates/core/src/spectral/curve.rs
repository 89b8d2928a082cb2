use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gseries::TermJson;
use crate::rational::{format_rational, int, rat, Rational};
use crate::tau::{bgw_tau, WeightData};
use crate::wops::{w_km_closed, DOperator, DPoly, ZDSymbol};

use super::grassmann::shifted_squares;
use super::laurent::{LaurentEndo, LaurentWindow};
use super::Outcome;

/// The polynomial symbol of the spectral curve
/// `A = D K - sum_k k s_k z^{-k} prod_{r=1}^{l-k} prod_b ((D+r-1/2)^2 - w^2) prod_{m=0}^{k-1} prod_a ((D-m-1/2)^2 - u^2)`
/// with `K = prod_{r=1}^{l} prod_b ((D+r-1/2)^2 - w^2)` and `l` the top index of `s`.
pub fn qsc_symbol(weights: &WeightData, s: &BTreeMap<u32, Rational>) -> Result<ZDSymbol> {
    let top = s.keys().next_back().copied().unwrap_or(0);
    if top > 0 && top % 2 == 0 {
        return Err(Error::InvalidTimeIndex(top as i64));
    }
    let b_block = |r: u32| shifted_squares(&weights.denom, &(int(r as i64) - rat(1, 2)));
    let a_block = |m: u32| shifted_squares(&weights.numer, &(-int(m as i64) - rat(1, 2)));
    let one = DPoly::constant(Rational::one());
    let k_poly = (1..=top).fold(one.clone(), |acc, r| acc.mul(&b_block(r)));
    let mut a = ZDSymbol::d_poly(DPoly::d().mul(&k_poly));
    for (&k, v) in s {
        if v.is_zero() {
            continue;
        }
        let p = (1..=top - k)
            .map(b_block)
            .chain((0..k).map(a_block))
            .fold(one.clone(), |acc, f| acc.mul(&f));
        a = a.sub(&ZDSymbol::term(-(k as i64), p.scale(&(int(k as i64) * v))));
    }
    Ok(a)
}

pub fn qsc_operator(weights: &WeightData, s: &BTreeMap<u32, Rational>) -> Result<LaurentEndo> {
    Ok(LaurentEndo::from_symbol(&qsc_symbol(weights, s)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnihilationReport {
    pub outcome: Outcome,
    /// Window on which `A Psi` is known exactly.
    pub certified: [i64; 2],
    pub required_through: i64,
    /// Highest nonzero certified coefficient `(power, value)`.
    pub witness: Option<(i64, String)>,
    #[serde(skip)]
    pub residual: LaurentWindow,
}

/// Checks `A Psi = 0` on the certified window, which must reach down to `z^{through}`.
pub fn annihilation_check(a: &LaurentEndo, psi: &LaurentWindow, through: i64) -> Result<AnnihilationReport> {
    let residual = a.apply(psi)?;
    let witness = residual.coeffs().last().map(|(p, c)| (p, format_rational(c)));
    let outcome = if witness.is_some() {
        Outcome::Fail
    } else if residual.zmin > through {
        Outcome::Inconclusive
    } else {
        Outcome::Pass
    };
    Ok(AnnihilationReport {
        outcome,
        certified: [residual.zmin, residual.zmax],
        required_through: through,
        witness,
        residual,
    })
}

/// `-1/2 W_{0,1} + c_2 W_{-1,2} + c_0 W_{-1,0}` on the window.
pub fn constraint_operator(c2: &Rational, c0: &Rational, window: u32) -> Result<DOperator> {
    Ok(w_km_closed(0, 1, window)?
        .scale(&rat(-1, 2))
        .add_scaled(&w_km_closed(-1, 2, window)?, c2)
        .add_scaled(&w_km_closed(-1, 0, window)?, c0))
}

/// The coefficients `(hbar/4, hbar (1/16 - N^2/4))` of the BGW constraint.
pub fn bgw_constraint_coeffs(n: &Rational, hbar: &Rational) -> (Rational, Rational) {
    (hbar * rat(1, 4), hbar * (rat(1, 16) - n * n * rat(1, 4)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintReport {
    pub outcome: Outcome,
    pub checked_through: u32,
    pub witness: Option<TermJson>,
}

/// Applies a constraint operator to `bgw_tau(N, hbar, D)`; every output weight up to `D` is exact.
pub fn constraint_check_with(op: &DOperator, n: &Rational, hbar: &Rational, d: u32) -> Result<ConstraintReport> {
    let tau = bgw_tau(n, hbar, d);
    let out = op.apply(&tau)?;
    let witness = out.mono_terms().next().map(|(m, c)| TermJson { mono: m.to_json(), mono2: None, coeff: format_rational(c) });
    Ok(ConstraintReport {
        outcome: if witness.is_none() { Outcome::Pass } else { Outcome::Fail },
        checked_through: out.cutoff(),
        witness,
    })
}

pub fn constraint_check_bgw(n: &Rational, hbar: &Rational, d: u32) -> Result<ConstraintReport> {
    let (c2, c0) = bgw_constraint_coeffs(n, hbar);
    constraint_check_with(&constraint_operator(&c2, &c0, d)?, n, hbar, d)
}
