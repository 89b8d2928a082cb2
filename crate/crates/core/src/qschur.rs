//! Schur Q-functions in the odd times and the change of basis to and from them.
//!
//! Convention: `sum_r Q_(r)(t) z^r = exp(2 sum_k t_k z^k)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gseries::{Alphabet, GradedSeries, Mono};
use crate::partition::{enumerate_strict, odd_part_exponents, StrictPartition};
use crate::rational::{factorial, format_rational, int, parse_rational, pow, rat, Rational};

type Cache<K, V> = OnceLock<Mutex<HashMap<K, V>>>;

static ONE_ROW: Cache<u32, GradedSeries> = OnceLock::new();
static PFAFFIAN: Cache<Vec<u32>, GradedSeries> = OnceLock::new();
static QBASIS: Cache<u32, Arc<WeightBasis>> = OnceLock::new();
static MUL_TIME: Cache<(StrictPartition, u32), Option<QExpansion>> = OnceLock::new();

fn cached<K, V, F>(cache: &'static Cache<K, V>, key: K, compute: F) -> V
where
    K: std::hash::Hash + Eq + Clone,
    V: Clone,
    F: FnOnce() -> V,
{
    let table = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = table.lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return v.clone();
    }
    // computed outside the lock: recursive fills would otherwise deadlock
    let v = compute();
    table.lock().unwrap_or_else(|e| e.into_inner()).entry(key).or_insert(v).clone()
}

/// Exact homogeneous `Q_(r)`, stored with cutoff `r`.
fn one_row_exact(r: u32) -> GradedSeries {
    cached(&ONE_ROW, r, || {
        if r == 0 {
            return GradedSeries::one(Alphabet::T, 0);
        }
        // r q_r = sum_{k odd <= r} 2k t_k q_{r-k}
        let mut acc = GradedSeries::zero(Alphabet::T, r);
        for k in (1..=r).step_by(2) {
            let tk = GradedSeries::time(k, r, int(2 * k as i64)).expect("odd index");
            let prev = one_row_exact(r - k).with_exact_cutoff(r);
            acc = acc.add(&tk.mul(&prev).expect("same alphabet")).expect("same alphabet");
        }
        acc.scale(&rat(1, r as i64))
    })
}

/// `Q_(r)(t)` truncated at `cutoff`.
pub fn one_row_q(r: u32, cutoff: u32) -> GradedSeries {
    one_row_exact(r).with_exact_cutoff(cutoff)
}

/// `Q_(a,b)` for `a > b >= 0`, as an exact polynomial of weight `a + b`.
fn two_row(a: u32, b: u32) -> GradedSeries {
    let w = a + b;
    let q = |r: u32| one_row_exact(r).with_exact_cutoff(w);
    let mut acc = q(a).mul(&q(b)).expect("same alphabet");
    for i in 1..=b {
        let sign = if i % 2 == 0 { 2 } else { -2 };
        let term = q(a + i).mul(&q(b - i)).expect("same alphabet");
        acc.add_assign_scaled(&term, &int(sign)).expect("same alphabet");
    }
    acc
}

/// Pfaffian expansion along the first row; `parts` is strictly decreasing with even length
/// (a trailing zero part is allowed).
fn pfaffian(parts: Vec<u32>) -> GradedSeries {
    cached(&PFAFFIAN, parts.clone(), || {
        let w: u32 = parts.iter().sum();
        match parts.len() {
            0 => GradedSeries::one(Alphabet::T, 0),
            2 => two_row(parts[0], parts[1]),
            m => {
                let mut acc = GradedSeries::zero(Alphabet::T, w);
                for j in 1..m {
                    let rest: Vec<u32> = parts
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != 0 && *i != j)
                        .map(|(_, &p)| p)
                        .collect();
                    let pair = two_row(parts[0], parts[j]).with_exact_cutoff(w);
                    let minor = pfaffian(rest).with_exact_cutoff(w);
                    let sign = if j % 2 == 1 { 1 } else { -1 };
                    acc.add_assign_scaled(&pair.mul(&minor).expect("same alphabet"), &int(sign))
                        .expect("same alphabet");
                }
                acc
            }
        }
    })
}

fn q_exact(lambda: &StrictPartition) -> GradedSeries {
    let mut parts = lambda.parts().to_vec();
    if parts.len() == 1 {
        return one_row_exact(parts[0]);
    }
    if parts.len() % 2 == 1 {
        parts.push(0);
    }
    pfaffian(parts)
}

/// `Q_lambda(t)` truncated at `cutoff` (zero when `|lambda| > cutoff`).
pub fn q_lambda(lambda: &StrictPartition, cutoff: u32) -> GradedSeries {
    q_exact(lambda).with_exact_cutoff(cutoff)
}

/// `Q_lambda(t/2)`.
pub fn q_lambda_half(lambda: &StrictPartition, cutoff: u32) -> GradedSeries {
    q_lambda(lambda, cutoff).rescale_times(&rat(1, 2))
}

/// `Q_lambda` at `t_k = delta_{k,1}` by the hook-type product formula.
pub fn q_delta_hook(lambda: &StrictPartition) -> Rational {
    let parts = lambda.parts();
    let mut v = pow(&int(2), lambda.size());
    for &p in parts {
        v /= factorial(p);
    }
    for (i, &a) in parts.iter().enumerate() {
        for &b in &parts[i + 1..] {
            v *= rat(a as i64 - b as i64, (a + b) as i64);
        }
    }
    v
}

/// `f = sum_lambda c_lambda Q_lambda(t/2)`, known through `cutoff`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    pub cutoff: u32,
    pub coeffs: BTreeMap<StrictPartition, Rational>,
}

#[derive(Serialize, Deserialize)]
struct QTermJson {
    partition: StrictPartition,
    coeff: String,
}

impl QExpansion {
    pub fn new(cutoff: u32) -> Self {
        QExpansion { cutoff, coeffs: BTreeMap::new() }
    }

    pub fn coeff(&self, lambda: &StrictPartition) -> Rational {
        self.coeffs.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c` to the coefficient of `lambda`, dropping partitions above the cutoff.
    pub fn add_term(&mut self, lambda: StrictPartition, c: Rational) {
        if lambda.size() > self.cutoff || c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(lambda).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
    }

    pub fn to_json_string(&self) -> String {
        let list: Vec<QTermJson> = self
            .coeffs
            .iter()
            .map(|(l, c)| QTermJson { partition: l.clone(), coeff: format_rational(c) })
            .collect();
        serde_json::to_string(&list).expect("expansion serializes")
    }

    pub fn from_json_str(s: &str, cutoff: u32) -> Result<Self> {
        let list: Vec<QTermJson> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = QExpansion::new(cutoff);
        for t in list {
            if t.partition.size() > cutoff {
                return Err(Error::CutoffExceeded { needed: t.partition.size(), cutoff });
            }
            out.add_term(t.partition, parse_rational(&t.coeff)?);
        }
        Ok(out)
    }
}

/// Monomials and strict partitions of one weight, with the inverse change-of-basis matrix.
struct WeightBasis {
    monos: Vec<Mono>,
    partitions: Vec<StrictPartition>,
    /// `inverse[j][i]`: coefficient of `Q_{partitions[j]}(t/2)` contributed by `monos[i]`.
    inverse: Vec<Vec<Rational>>,
}

fn weight_basis(w: u32) -> Result<Arc<WeightBasis>> {
    let basis = cached(&QBASIS, w, || {
        let monos: Vec<Mono> = odd_part_exponents(w).into_iter().map(Mono::from_exponents).collect();
        let partitions = enumerate_strict(w);
        let n = monos.len();
        // column j holds Q_{partitions[j]}(t/2) in the monomial basis
        let mut a: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n]; n];
        for (j, lambda) in partitions.iter().enumerate() {
            let q = q_lambda_half(lambda, w);
            for (i, m) in monos.iter().enumerate() {
                a[i][j] = q.coeff(m);
            }
        }
        let inverse = invert(a);
        Arc::new(WeightBasis { monos, partitions, inverse: inverse.unwrap_or_default() })
    });
    if basis.monos.len() != basis.partitions.len() || basis.inverse.len() != basis.monos.len() {
        return Err(Error::NotInQSpan(w));
    }
    Ok(basis)
}

/// Gauss-Jordan inverse over the rationals; `None` when singular.
fn invert(mut a: Vec<Vec<Rational>>) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return None;
    }
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                a[r][j] -= x;
                inv[r][j] -= y;
            }
        }
    }
    Some(inv)
}

/// Coordinates of `f` in the basis `Q_lambda(t/2)`.
pub fn to_qbasis(f: &GradedSeries) -> Result<QExpansion> {
    if f.alphabet() != Alphabet::T {
        return Err(Error::AlphabetMismatch(f.alphabet().name().into(), Alphabet::T.name().into()));
    }
    let mut out = QExpansion::new(f.cutoff());
    for w in 0..=f.cutoff() {
        let part = f.graded_part(w);
        if part.is_zero() {
            continue;
        }
        let basis = weight_basis(w)?;
        let index: HashMap<&Mono, usize> = basis.monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rhs = vec![Rational::zero(); basis.monos.len()];
        for (m, c) in part.mono_terms() {
            let i = *index.get(m).ok_or(Error::NotInQSpan(w))?;
            rhs[i] = c.clone();
        }
        for (j, lambda) in basis.partitions.iter().enumerate() {
            let c = basis.inverse[j].iter().zip(&rhs).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
            out.add_term(lambda.clone(), c);
        }
    }
    Ok(out)
}

/// `sum_lambda c_lambda Q_lambda(t/2)` truncated at the expansion's cutoff.
pub fn from_qbasis(e: &QExpansion) -> GradedSeries {
    let mut acc = GradedSeries::zero(Alphabet::T, e.cutoff);
    for (lambda, c) in &e.coeffs {
        acc.add_assign_scaled(&q_lambda_half(lambda, e.cutoff), c).expect("same alphabet");
    }
    acc
}

/// Q-basis expansion of `t_k Q_lambda(t/2)`.
pub fn mul_time(lambda: &StrictPartition, k: u32, cutoff: u32) -> Result<QExpansion> {
    let needed = lambda.size() + k;
    if needed > cutoff {
        return Err(Error::CutoffExceeded { needed, cutoff });
    }
    Mono::var(k)?;
    let exact = cached(&MUL_TIME, (lambda.clone(), k), || {
        let tk = GradedSeries::time(k, needed, Rational::one()).ok()?;
        to_qbasis(&tk.mul(&q_lambda_half(lambda, needed)).ok()?).ok()
    });
    let mut e = exact.ok_or(Error::NotInQSpan(needed))?;
    e.cutoff = cutoff;
    Ok(e)
}

/// Q-basis expansion of `t_1 Q_lambda(t/2)`.
pub fn pieri_t1(lambda: &StrictPartition, cutoff: u32) -> Result<QExpansion> {
    mul_time(lambda, 1, cutoff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::enumerate_strict_upto;

    fn sp(p: &[u32]) -> StrictPartition {
        StrictPartition::new(p.to_vec()).unwrap()
    }

    fn mono(pairs: &[(u32, u32)]) -> Mono {
        Mono::from_pairs(pairs).unwrap()
    }

    #[test]
    fn one_row_values() {
        assert_eq!(one_row_q(0, 5), GradedSeries::one(Alphabet::T, 5));
        let q1 = one_row_q(1, 5);
        assert_eq!(q1.coeff(&mono(&[(1, 1)])), int(2));
        assert_eq!(q1.len(), 1);
        let q3 = one_row_q(3, 5);
        assert_eq!(q3.coeff(&mono(&[(3, 1)])), int(2));
        assert_eq!(q3.coeff(&mono(&[(1, 3)])), rat(4, 3));
        assert_eq!(q3.len(), 2);
    }

    #[test]
    fn q_lambda_values() {
        let q2 = q_lambda(&sp(&[2]), 4);
        assert_eq!(q2.coeff(&mono(&[(1, 2)])), int(2));
        assert_eq!(q2.len(), 1);
        let q21 = q_lambda(&sp(&[2, 1]), 4);
        assert_eq!(q21.coeff(&mono(&[(1, 3)])), rat(4, 3));
        assert_eq!(q21.coeff(&mono(&[(3, 1)])), int(-4));
        assert_eq!(q21.len(), 2);
        assert_eq!(q_lambda(&StrictPartition::empty(), 3), GradedSeries::one(Alphabet::T, 3));
        assert!(q_lambda(&sp(&[3, 1]), 3).is_zero());
    }

    #[test]
    fn hook_values() {
        assert_eq!(q_delta_hook(&sp(&[1])), int(2));
        assert_eq!(q_delta_hook(&sp(&[2, 1])), rat(4, 3));
    }

    #[test]
    fn hook_matches_evaluation() {
        let delta: BTreeMap<u32, Rational> = [(1, int(1))].into_iter().collect();
        for lambda in enumerate_strict_upto(12) {
            let q = q_lambda(&lambda, 12);
            assert!(q.is_homogeneous(lambda.size()), "{lambda}");
            assert_eq!(q.specialize(&delta).unwrap(), q_delta_hook(&lambda), "{lambda}");
        }
    }

    #[test]
    fn qbasis_examples() {
        let one = to_qbasis(&GradedSeries::one(Alphabet::T, 3)).unwrap();
        assert_eq!(one.coeffs.len(), 1);
        assert_eq!(one.coeff(&StrictPartition::empty()), int(1));
        let t1 = to_qbasis(&GradedSeries::time(1, 3, int(1)).unwrap()).unwrap();
        assert_eq!(t1.coeffs.len(), 1);
        assert_eq!(t1.coeff(&sp(&[1])), int(1));

        let mut e = QExpansion::new(4);
        e.add_term(sp(&[2, 1]), int(3));
        let f = from_qbasis(&e);
        assert_eq!(f.coeff(&mono(&[(1, 3)])), rat(1, 2));
        assert_eq!(f.coeff(&mono(&[(3, 1)])), int(-6));
        assert_eq!(to_qbasis(&f).unwrap(), e);
    }

    #[test]
    fn pieri_examples() {
        let e = pieri_t1(&StrictPartition::empty(), 3).unwrap();
        assert_eq!(e.coeffs.len(), 1);
        assert_eq!(e.coeff(&sp(&[1])), int(1));
        let e = pieri_t1(&sp(&[1]), 3).unwrap();
        assert_eq!(e.coeffs.len(), 1);
        assert_eq!(e.coeff(&sp(&[2])), int(2));
        assert!(matches!(pieri_t1(&sp(&[2, 1]), 3), Err(Error::CutoffExceeded { .. })));
        let e = pieri_t1(&sp(&[2, 1]), 6).unwrap();
        let direct = GradedSeries::time(1, 6, int(1)).unwrap().mul(&q_lambda_half(&sp(&[2, 1]), 6)).unwrap();
        assert_eq!(from_qbasis(&e), direct);
    }

    #[test]
    fn cauchy_identity() {
        let d = 8;
        let mut lhs = GradedSeries::zero_joint(Alphabet::TS, (d, d));
        for lambda in enumerate_strict_upto(d) {
            let q = q_lambda(&lambda, d);
            let c = pow(&rat(1, 2), lambda.len() as u32);
            lhs.add_assign_scaled(&q.tensor(&q, Alphabet::TS), &c).unwrap();
        }
        let mut arg = GradedSeries::zero_joint(Alphabet::TS, (d, d));
        for k in (1..=d).step_by(2) {
            let m = Mono::var(k).unwrap();
            let term = GradedSeries::from_joint_terms(Alphabet::TS, (d, d), [((m.clone(), m), int(2 * k as i64))]);
            arg = arg.add(&term).unwrap();
        }
        assert_eq!(lhs, arg.exp_positive().unwrap());
    }

    #[test]
    fn json_round_trip() {
        let mut e = QExpansion::new(5);
        e.add_term(sp(&[3, 1]), rat(-2, 7));
        e.add_term(StrictPartition::empty(), int(1));
        let s = e.to_json_string();
        assert_eq!(s, r#"[{"partition":[],"coeff":"1"},{"partition":[3,1],"coeff":"-2/7"}]"#);
        assert_eq!(QExpansion::from_json_str(&s, 5).unwrap(), e);
    }
}
