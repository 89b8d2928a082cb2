use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gseries::Mono;
use crate::rational::{falling, int, rat, Rational};

use super::doperator::DOperator;

/// Normal-ordered mode `J_n`: `2 d/dt_n` for `n > 0`, `-n t_{-n}` for `n < 0`.
fn mode(n: i64) -> (Mono, Mono, Rational) {
    let k = n.unsigned_abs() as u32;
    let var = Mono::var(k).expect("odd mode");
    if n > 0 {
        (Mono::one(), var, int(2))
    } else {
        (var, Mono::one(), int(k as i64))
    }
}

fn normal_product(modes: &[i64]) -> (Mono, Mono, Rational) {
    modes.iter().fold((Mono::one(), Mono::one(), Rational::one()), |(a, b, c), &n| {
        let (ma, mb, mc) = mode(n);
        (a.mul(&ma), b.mul(&mb), c * mc)
    })
}

fn odd_modes(window: u32) -> impl Iterator<Item = i64> {
    let w = window as i64;
    (-w..=w).filter(|n| n.rem_euclid(2) == 1)
}

/// `J_k` on the window; zero for even `k`.
pub fn j_op(k: i64, window: u32) -> DOperator {
    if k.rem_euclid(2) == 0 {
        return DOperator::zero(window);
    }
    let (a, b, c) = mode(k);
    DOperator::from_terms(window, [(a, b, c)])
}

/// `L_k = 1/2 sum_{i+j=k} :J_i J_j:` on the window; zero for odd `k`.
pub fn l_op(k: i64, window: u32) -> DOperator {
    if k.rem_euclid(2) == 1 {
        return DOperator::zero(window);
    }
    let half = rat(1, 2);
    DOperator::from_terms(
        window,
        odd_modes(window).filter_map(|i| {
            let j = k - i;
            (j.unsigned_abs() <= window as u64).then(|| {
                let (a, b, c) = normal_product(&[i, j]);
                (a, b, c * &half)
            })
        }),
    )
}

/// `M_k = 1/3 sum_{i+j+l=k} :J_i J_j J_l:` on the window; zero for even `k`.
pub fn m_op(k: i64, window: u32) -> DOperator {
    if k.rem_euclid(2) == 0 {
        return DOperator::zero(window);
    }
    let third = rat(1, 3);
    let mut terms = Vec::new();
    for i in odd_modes(window) {
        for j in odd_modes(window) {
            let l = k - i - j;
            if l.unsigned_abs() <= window as u64 {
                let (a, b, c) = normal_product(&[i, j, l]);
                terms.push((a, b, c * &third));
            }
        }
    }
    DOperator::from_terms(window, terms)
}

fn check_parity(k: i64, m: u32) -> Result<()> {
    if (k + m as i64).rem_euclid(2) == 1 {
        Ok(())
    } else {
        Err(Error::Parity(format!("k + m must be odd, got k={k}, m={m}")))
    }
}

/// `W_{k,m}` for `m <= 2` from the J, L, M generators.
pub fn w_km_closed(k: i64, m: u32, window: u32) -> Result<DOperator> {
    check_parity(k, m)?;
    let kr = int(k);
    match m {
        0 => Ok(j_op(k, window)),
        1 => Ok(l_op(k, window).add_scaled(&j_op(k, window), &(-&kr / int(2)))),
        2 => {
            let c_l = -(&kr + int(1));
            let c_j = (&kr + int(1)) * (int(2) * &kr + int(1)) / int(6);
            Ok(m_op(k, window)
                .add_scaled(&l_op(k, window), &c_l)
                .add_scaled(&j_op(k, window), &c_j))
        }
        _ => Err(Error::Unsupported(format!("closed form only for m <= 2, got m={m}"))),
    }
}

/// A normal-ordered monomial in the modes of `y_1, y_2, ...`, kept as an operator term.
type Poly = BTreeMap<(Mono, Mono), Rational>;

/// Modes of `y_j = w^j d^{j-1} J(w)`: the power of `w` of each mode equals its weight shift.
fn y_modes(j: u32, window: u32) -> Vec<(Mono, Mono, Rational)> {
    let mut out = Vec::new();
    for n in odd_modes(window) {
        let (a, b, c) = mode(n);
        let f = falling(&int(-n - 1), j - 1);
        if !f.is_zero() {
            out.push((a, b, c * f));
        }
    }
    out
}

fn poly_mul(p: &Poly, q: &[(Mono, Mono, Rational)], window: u32) -> Poly {
    let mut out = Poly::new();
    for ((a, b), c) in p {
        for (qa, qb, qc) in q {
            let (na, nb) = (a.mul(qa), b.mul(qb));
            if na.weight() > window || nb.weight() > window {
                continue;
            }
            *out.entry((na, nb)).or_insert_with(Rational::zero) += c * qc;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Complete Bell polynomials `B_0 .. B_n` as maps from multisets of `y`-indices to coefficients,
/// via `B_{m+1} = (d + y_1) B_m` with `d y_j = y_{j+1}`.
fn bell_polynomials(n: u32) -> Vec<BTreeMap<Vec<u32>, Rational>> {
    let mut out = vec![BTreeMap::from([(Vec::new(), Rational::one())])];
    for _ in 0..n {
        let prev = out.last().expect("nonempty");
        let mut next: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (idx, c) in prev {
            let mut with_y1 = idx.clone();
            with_y1.push(1);
            with_y1.sort_unstable();
            *next.entry(with_y1).or_insert_with(Rational::zero) += c;
            for pos in 0..idx.len() {
                let mut raised = idx.clone();
                raised[pos] += 1;
                raised.sort_unstable();
                *next.entry(raised).or_insert_with(Rational::zero) += c;
            }
        }
        out.push(next);
    }
    out
}

/// Part of `:B_m(y):` of weight shift `shift`, on the window.
fn normal_bell(m: u32, shift: i64, window: u32) -> DOperator {
    let bell = bell_polynomials(m);
    let mut op = DOperator::zero(window);
    for (idx, c) in &bell[m as usize] {
        let mut p: Poly = BTreeMap::from([((Mono::one(), Mono::one()), c.clone())]);
        for &j in idx {
            p = poly_mul(&p, &y_modes(j, window), window);
        }
        for ((a, b), v) in p {
            if a.weight() as i64 - b.weight() as i64 == shift {
                op.add_term(a, b, v);
            }
        }
    }
    op.prune();
    op
}

/// `W_{k,m}` on the window via Faà di Bruno polynomials of the bosonic current:
/// `W_{k,m} = res_w w^{k-1} ( :B_{m+1}(y): / (m+1) + :B_m(y): / 2 )`.
pub fn faa_di_bruno_w(k: i64, m: u32, window: u32) -> Result<DOperator> {
    check_parity(k, m)?;
    let upper = normal_bell(m + 1, -k, window).scale(&rat(1, m as i64 + 1));
    let lower = normal_bell(m, -k, window).scale(&rat(1, 2));
    Ok(upper.add(&lower))
}
