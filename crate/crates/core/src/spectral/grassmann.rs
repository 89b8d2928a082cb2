use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, rat, Rational};
use crate::tau::WeightData;
use crate::wops::DPoly;

use super::laurent::{LaurentEndo, LaurentWindow, Primitive};
use super::Outcome;

/// `Gamma(x)/Gamma(x - m) = prod_{i=1}^{m} (x - i)`.
pub fn gamma_ratio(x: &Rational, m: u32) -> Rational {
    (1..=m).fold(Rational::one(), |acc, i| acc * (x - int(i as i64)))
}

/// Coefficients `e_n` of `exp(-sum_j s_j z^{-j})` at `z^{-n}`, `n = 0..=depth`.
fn exp_coeffs(s: &BTreeMap<u32, Rational>, depth: u32) -> Vec<Rational> {
    // n e_n = -sum_j j s_j e_{n-j}
    let mut e = vec![Rational::one()];
    for n in 1..=depth {
        let mut acc = Rational::zero();
        for (&j, v) in s {
            if j <= n {
                acc -= int(j as i64) * v * &e[(n - j) as usize];
            }
        }
        e.push(acc / int(n as i64));
    }
    e
}

/// `Phi_k = z^{k-1}(1 + O(z^{-1}))`, trusted down to `z^{zmin}`.
///
/// The coefficient of `z^{k-1-n}` is `e_n` times the Gamma-ratio eigenvalue
/// `prod_a G(k-1/2+u_a, n) G(k-1/2-u_a, n) / prod_b G(k-1/2+w_b, n) G(k-1/2-w_b, n)`.
pub fn grassmannian_basis(
    weights: &WeightData,
    s: &BTreeMap<u32, Rational>,
    k: u32,
    zmin: i64,
) -> Result<LaurentWindow> {
    let top = k as i64 - 1;
    let depth = (top - zmin).max(0) as u32;
    let e = exp_coeffs(s, depth);
    let x = int(k as i64) - rat(1, 2);
    let mut out = LaurentWindow::new(zmin, top);
    for n in 0..=depth {
        let mut num = e[n as usize].clone();
        for u in &weights.numer {
            num *= gamma_ratio(&(&x + u), n) * gamma_ratio(&(&x - u), n);
        }
        let mut den = Rational::one();
        for w in &weights.denom {
            den *= gamma_ratio(&(&x + w), n) * gamma_ratio(&(&x - w), n);
        }
        if den.is_zero() {
            return Err(Error::EigenvaluePole(top - n as i64));
        }
        out.add(top - n as i64, num / den);
    }
    Ok(out)
}

/// `prod_c ((D + shift)^2 - c^2)`.
pub(crate) fn shifted_squares(params: &[Rational], shift: &Rational) -> DPoly {
    let lin = DPoly::new(vec![shift.clone(), Rational::one()]);
    let square = lin.mul(&lin);
    params
        .iter()
        .fold(DPoly::constant(Rational::one()), |acc, c| acc.mul(&square.sub(&DPoly::constant(c * c))))
}

/// `R_m = prod_b ((D+1/2-m)^2 - w_b^2) / prod_a ((D+1/2-m)^2 - u_a^2)` as `(num, den)`.
fn r_m(weights: &WeightData, m: i64) -> (DPoly, DPoly) {
    let shift = rat(1, 2) - int(m);
    (shifted_squares(&weights.denom, &shift), shifted_squares(&weights.numer, &shift))
}

/// `prod_{m=1}^{n} R_m^{-1}` as a single rational function of `D`.
fn r_inverse_product(weights: &WeightData, n: u32) -> Primitive {
    let (mut num, mut den) = (DPoly::constant(Rational::one()), DPoly::constant(Rational::one()));
    for m in 1..=n as i64 {
        let (a, b) = r_m(weights, m);
        num = num.mul(&b);
        den = den.mul(&a);
    }
    Primitive::RatD { num, den }
}

/// `q = z R_0`.
pub fn ks_q(weights: &WeightData) -> LaurentEndo {
    let (num, den) = r_m(weights, 0);
    LaurentEndo::chain(vec![Primitive::ZPow(1), Primitive::RatD { num, den }])
}

/// `p = R_0^{-1} d/dz - sum_k k s_k z^{-k-1} prod_{m=1}^{k+1} R_m^{-1}`.
pub fn ks_p(weights: &WeightData, s: &BTreeMap<u32, Rational>) -> LaurentEndo {
    let (num, den) = r_m(weights, 0);
    let mut p = LaurentEndo::chain(vec![Primitive::RatD { num: den, den: num }, Primitive::Dz]);
    for (&k, v) in s {
        let term = LaurentEndo::chain(vec![Primitive::ZPow(-(k as i64) - 1), r_inverse_product(weights, k + 1)]);
        p = p.add(&term.scale(&-(int(k as i64) * v)));
    }
    p
}

/// `c = qp = D - sum_k k s_k z^{-k} prod_{m=1}^{k} R_m^{-1}`.
pub fn ks_c(weights: &WeightData, s: &BTreeMap<u32, Rational>) -> LaurentEndo {
    let mut c = LaurentEndo::ratd(DPoly::d(), DPoly::constant(Rational::one()));
    for (&k, v) in s {
        let term = LaurentEndo::chain(vec![Primitive::ZPow(-(k as i64)), r_inverse_product(weights, k)]);
        c = c.add(&term.scale(&-(int(k as i64) * v)));
    }
    c
}

/// Reduces `v` modulo the basis (leading power of `basis[j]` is `j`), returning the remainder.
fn reduce(v: &LaurentWindow, basis: &[LaurentWindow]) -> Option<LaurentWindow> {
    let mut rest = v.clone();
    for power in (0..=v.zmax).rev() {
        let c = rest.coeff(power)?;
        if c.is_zero() {
            continue;
        }
        let phi = basis.get(power as usize)?;
        rest = rest.sub_window(&phi.scale(&c));
    }
    Some(rest)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KsReport {
    pub outcome: Outcome,
    /// `(operator, k, z-power, coefficient)` of the first nonzero remainder.
    pub witness: Option<(String, u32, i64, String)>,
    /// Lowest z-power on which every remainder was certified.
    pub certified_through: i64,
}

/// Checks `q Phi_k` and `p Phi_k` lie in the span of the computed basis for `k <= k_max`.
pub fn ks_invariance_check(
    weights: &WeightData,
    s: &BTreeMap<u32, Rational>,
    k_max: u32,
    zmin: i64,
) -> Result<KsReport> {
    let basis: Vec<LaurentWindow> =
        (1..=k_max + 1).map(|k| grassmannian_basis(weights, s, k, zmin)).collect::<Result<_>>()?;
    ks_invariance_on_basis(weights, s, &basis, k_max)
}

/// Same check on a supplied basis `Phi_1, Phi_2, ...` (at least `k_max + 1` vectors).
pub fn ks_invariance_on_basis(
    weights: &WeightData,
    s: &BTreeMap<u32, Rational>,
    basis: &[LaurentWindow],
    k_max: u32,
) -> Result<KsReport> {
    let ops = [("q", ks_q(weights)), ("p", ks_p(weights, s))];
    let mut certified = i64::MIN;
    for k in 1..=k_max {
        let phi = &basis[(k - 1) as usize];
        for (name, op) in &ops {
            let image = op.apply(phi)?;
            let Some(rest) = reduce(&image, basis) else {
                return Ok(KsReport { outcome: Outcome::Inconclusive, witness: None, certified_through: certified });
            };
            certified = certified.max(rest.zmin);
            if rest.zmin > -1 {
                return Ok(KsReport { outcome: Outcome::Inconclusive, witness: None, certified_through: certified });
            }
            if let Some((p, c)) = rest.coeffs().last() {
                return Ok(KsReport {
                    outcome: Outcome::Fail,
                    witness: Some((name.to_string(), k, p, format_rational(c))),
                    certified_through: certified,
                });
            }
        }
    }
    Ok(KsReport { outcome: Outcome::Pass, witness: None, certified_through: certified })
}

/// `[p, q] f - f` on the trusted window.
pub fn canonical_commutator_defect(
    weights: &WeightData,
    s: &BTreeMap<u32, Rational>,
    f: &LaurentWindow,
) -> Result<LaurentWindow> {
    let (p, q) = (ks_p(weights, s), ks_q(weights));
    let pq = p.compose(&q).apply(f)?;
    let qp = q.compose(&p).apply(f)?;
    Ok(pq.sub_window(&qp).sub_window(f))
}
