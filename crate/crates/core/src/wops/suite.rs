use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::partition::enumerate_strict_upto;
use crate::qschur::{q_lambda_half, to_qbasis};
use crate::rational::{int, pow, rat, Rational};

use super::doperator::DOperator;
use super::generators::{faa_di_bruno_w, j_op, l_op, m_op, w_km_closed};
use super::symbol::{central_mu, w_of_symbol, DPoly, ZDSymbol};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub pass: bool,
}

impl NamedCheck {
    fn new(name: String, pass: bool) -> Self {
        NamedCheck { name, pass }
    }
}

const ODD: [i64; 6] = [-5, -3, -1, 1, 3, 5];
const EVEN: [i64; 5] = [-4, -2, 0, 2, 4];
const ODD_M: [i64; 4] = [-3, -1, 1, 3];

/// Central polynomial `c(k)` in `[L_k, L_{-k}] = 4k L_0 + c(k)` and `[L_k, M_m] = ... + 2c(k) J_{k+m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Central {
    /// `k(k^2 - 1)/3`, as usually displayed; agrees with the operators only for `|k| <= 2`.
    Displayed,
    /// `k(k^2 + 2)/6`, the value for the odd-moded boson.
    Twisted,
}

impl Central {
    pub fn eval(self, k: i64) -> Rational {
        match self {
            Central::Displayed => rat(k * (k * k - 1), 3),
            Central::Twisted => rat(k * (k * k + 2), 6),
        }
    }
}

/// The J/L/M commutation table on the window; `central_shift` perturbs the Virasoro central term.
pub fn commutator_table(window: u32, central: Central, central_shift: &Rational) -> Result<Vec<NamedCheck>> {
    let wide = window + 10;
    let cube = |k: i64| central.eval(k);
    let mut out = Vec::new();
    let mut check = |name: String, lhs: DOperator, rhs: DOperator| out.push(NamedCheck::new(name, lhs == rhs));

    for &k in &ODD {
        for &m in &ODD {
            let delta = if k + m == 0 { int(2 * k) } else { Rational::zero() };
            let lhs = DOperator::commutator(&j_op(k, wide), &j_op(m, wide), window)?;
            check(format!("[J{k},J{m}]"), lhs, DOperator::scalar(delta, window));
        }
        for &m in &EVEN {
            let lhs = DOperator::commutator(&j_op(k, wide), &l_op(m, wide), window)?;
            check(format!("[J{k},L{m}]"), lhs, j_op(k + m, window).scale(&int(2 * k)));
        }
    }
    for &k in &EVEN {
        for &m in &EVEN {
            let mut rhs = l_op(k + m, window).scale(&int(2 * (k - m)));
            if k + m == 0 {
                rhs = rhs.add(&DOperator::scalar(cube(k) + central_shift, window));
            }
            let lhs = DOperator::commutator(&l_op(k, wide), &l_op(m, wide), window)?;
            check(format!("[L{k},L{m}]"), lhs, rhs);
        }
    }
    for &k in &ODD_M {
        for &m in &ODD_M {
            let lhs = DOperator::commutator(&j_op(k, wide), &m_op(m, wide), window)?;
            check(format!("[J{k},M{m}]"), lhs, l_op(k + m, window).scale(&int(4 * k)));
        }
    }
    for &k in &EVEN {
        for &m in &ODD_M {
            let rhs = m_op(k + m, window)
                .scale(&int(2 * (2 * k - m)))
                .add(&j_op(k + m, window).scale(&(cube(k) * int(2))));
            let lhs = DOperator::commutator(&l_op(k, wide), &m_op(m, wide), window)?;
            check(format!("[L{k},M{m}]"), lhs, rhs);
        }
    }
    Ok(out)
}

/// Faà di Bruno operators against the J/L/M closed forms for `m <= 2`, `|k| <= 5`.
pub fn closed_form_checks(window: u32) -> Result<Vec<NamedCheck>> {
    let mut out = Vec::new();
    for k in -5i64..=5 {
        for m in 0u32..=2 {
            if (k + m as i64).rem_euclid(2) == 1 {
                let pass = faa_di_bruno_w(k, m, window)? == w_km_closed(k, m, window)?;
                out.push(NamedCheck::new(format!("W({k},{m})"), pass));
            }
        }
    }
    Ok(out)
}

/// `W_{D^k} Q_lambda(t/2) = -sum_j lambda_j^k Q_lambda(t/2)`, read off through the Q-basis.
pub fn eigenvalue_checks(max_size: u32) -> Result<Vec<NamedCheck>> {
    let mut out = Vec::new();
    for k in [1u32, 3, 5] {
        let op = w_of_symbol(&ZDSymbol::d_poly(DPoly::monomial(k as usize, int(1))), max_size)?;
        let mut pass = true;
        for lambda in enumerate_strict_upto(max_size) {
            let image = to_qbasis(&op.apply(&q_lambda_half(&lambda, max_size))?)?;
            let eigen: Rational = -lambda.parts().iter().map(|&p| pow(&int(p as i64), k)).sum::<Rational>();
            let mut coeffs = image.coeffs.iter().filter(|(_, c)| !c.is_zero());
            let ok = match coeffs.next() {
                None => eigen.is_zero(),
                Some((mu, c)) => *mu == lambda && *c == eigen && coeffs.next().is_none(),
            };
            pass &= ok;
        }
        out.push(NamedCheck::new(format!("eigenvalue D^{k}"), pass));
    }
    Ok(out)
}

/// `[W_a, W_b] = W_{[a,b]} + mu(a,b)` for basis symbols.
pub fn central_term_checks(window: u32) -> Result<Vec<NamedCheck>> {
    let pairs = [((2, 1), (-2, 1)), ((1, 0), (-1, 0)), ((1, 2), (-1, 2)), ((3, 0), (-3, 2)), ((2, 1), (-1, 2)), ((4, 1), (-4, 1))];
    let wide = window + 10;
    let mut out = Vec::new();
    for ((k1, m1), (k2, m2)) in pairs {
        let a = ZDSymbol::w_basis(k1, m1)?;
        let b = ZDSymbol::w_basis(k2, m2)?;
        let mu = central_mu(&a, &b)?;
        let lhs = DOperator::commutator(&w_of_symbol(&a, wide)?, &w_of_symbol(&b, wide)?, window)?;
        let rhs = w_of_symbol(&a.commutator(&b), window)?.add(&DOperator::scalar(mu, window));
        out.push(NamedCheck::new(format!("mu(w({k1},{m1}),w({k2},{m2}))"), lhs == rhs));
    }
    Ok(out)
}

/// Every check of the W-algebra suite on the window.
pub fn walg_suite(window: u32, central: Central, central_shift: &Rational) -> Result<Vec<NamedCheck>> {
    let mut out = commutator_table(window, central, central_shift)?;
    out.extend(closed_form_checks(window)?);
    out.extend(eigenvalue_checks(window)?);
    out.extend(central_term_checks(window)?);
    Ok(out)
}
