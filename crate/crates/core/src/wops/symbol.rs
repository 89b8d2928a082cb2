use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qschur::QExpansion;
use crate::rational::{format_rational, int, Rational};

use super::doperator::DOperator;
use super::generators::faa_di_bruno_w;

/// Polynomial in `D = z d/dz` with rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct DPoly(Vec<Rational>);

impl fmt::Debug for DPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format_rational(c),
                1 => format!("{}*D", format_rational(c)),
                _ => format!("{}*D^{i}", format_rational(c)),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl DPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DPoly(coeffs)
    }

    pub fn zero() -> Self {
        DPoly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        DPoly::new(vec![c])
    }

    /// `D`.
    pub fn d() -> Self {
        DPoly::new(vec![Rational::zero(), Rational::one()])
    }

    /// `c D^n`.
    pub fn monomial(n: usize, c: Rational) -> Self {
        let mut v = vec![Rational::zero(); n + 1];
        v[n] = c;
        DPoly::new(v)
    }

    /// `(D + s)(D + s - 1)...(D + s - m + 1)`.
    pub fn falling(s: &Rational, m: u32) -> Self {
        (0..m).fold(DPoly::constant(Rational::one()), |acc, i| {
            acc.mul(&DPoly::new(vec![s - int(i as i64), Rational::one()]))
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, other: &DPoly) -> Self {
        let n = self.0.len().max(other.0.len());
        DPoly::new(
            (0..n)
                .map(|i| {
                    self.0.get(i).cloned().unwrap_or_else(Rational::zero)
                        + other.0.get(i).cloned().unwrap_or_else(Rational::zero)
                })
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        DPoly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn sub(&self, other: &DPoly) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &DPoly) -> Self {
        if self.is_zero() || other.is_zero() {
            return DPoly::zero();
        }
        let mut v = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        DPoly::new(v)
    }

    /// `p(a D + b)`.
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> Self {
        let lin = DPoly::new(vec![b.clone(), a.clone()]);
        self.0
            .iter()
            .rev()
            .fold(DPoly::zero(), |acc, c| acc.mul(&lin).add(&DPoly::constant(c.clone())))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// True if only odd powers of `D` occur.
    pub fn is_odd(&self) -> bool {
        self.0.iter().step_by(2).all(|c| c.is_zero())
    }
}

/// `sum_j z^j p_j(D)` with all powers of `z` to the left.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ZDSymbol {
    terms: BTreeMap<i64, DPoly>,
}

impl fmt::Debug for ZDSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(j, p)| format!("z^{j}*({p:?})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl ZDSymbol {
    pub fn zero() -> Self {
        ZDSymbol::default()
    }

    /// `z^j p(D)`.
    pub fn term(j: i64, p: DPoly) -> Self {
        let mut s = ZDSymbol::zero();
        if !p.is_zero() {
            s.terms.insert(j, p);
        }
        s
    }

    /// `c z^j`.
    pub fn z_pow(j: i64, c: Rational) -> Self {
        ZDSymbol::term(j, DPoly::constant(c))
    }

    /// `p(D)`.
    pub fn d_poly(p: DPoly) -> Self {
        ZDSymbol::term(0, p)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &DPoly)> {
        self.terms.iter().map(|(j, p)| (*j, p))
    }

    pub fn component(&self, j: i64) -> DPoly {
        self.terms.get(&j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &ZDSymbol) -> Self {
        let mut out = self.clone();
        for (j, p) in &other.terms {
            let sum = out.component(*j).add(p);
            if sum.is_zero() {
                out.terms.remove(j);
            } else {
                out.terms.insert(*j, sum);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = ZDSymbol::zero();
        for (j, p) in &self.terms {
            out = out.add(&ZDSymbol::term(*j, p.scale(c)));
        }
        out
    }

    pub fn sub(&self, other: &ZDSymbol) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Product using `p(D) z^b = z^b p(D + b)`.
    pub fn mul(&self, other: &ZDSymbol) -> Self {
        let mut out = ZDSymbol::zero();
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                let shifted = p.compose_linear(&Rational::one(), &int(*b));
                out = out.add(&ZDSymbol::term(a + b, shifted.mul(q)));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(ZDSymbol::d_poly(DPoly::constant(Rational::one())), |acc, _| acc.mul(self))
    }

    pub fn commutator(&self, other: &ZDSymbol) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// `iota(z^j p(D)) = (-1)^j z^j p(-D - j)`.
    pub fn iota(&self) -> Self {
        let mut out = ZDSymbol::zero();
        for (j, p) in &self.terms {
            let sign = if j.rem_euclid(2) == 0 { Rational::one() } else { -Rational::one() };
            out = out.add(&ZDSymbol::term(*j, p.compose_linear(&-Rational::one(), &int(-j)).scale(&sign)));
        }
        out
    }

    /// Membership in the odd subalgebra: `iota(a) = -a`.
    pub fn in_algebra(&self) -> bool {
        self.iota() == self.scale(&-Rational::one())
    }

    /// Basis element `w_{k,m} = -z^k [ (D)_m + (D+k+m-1)_m ]`, `k + m` odd.
    pub fn w_basis(k: i64, m: u32) -> Result<Self> {
        if (k + m as i64).rem_euclid(2) == 0 {
            return Err(Error::Parity(format!("k + m must be odd, got k={k}, m={m}")));
        }
        let p = DPoly::falling(&Rational::zero(), m).add(&DPoly::falling(&int(k + m as i64 - 1), m));
        Ok(ZDSymbol::term(k, p.scale(&-Rational::one())))
    }

    /// Coordinates in the basis `w_{k,m}`.
    pub fn decompose(&self) -> Result<BTreeMap<(i64, u32), Rational>> {
        if !self.in_algebra() {
            return Err(Error::NotInAlgebra);
        }
        let mut out = BTreeMap::new();
        for (j, p) in &self.terms {
            let mut rest = p.clone();
            // the leading term of w_{j,m} is -2 D^m
            while let Some(d) = rest.degree() {
                if (*j + d as i64).rem_euclid(2) == 0 {
                    return Err(Error::NotInAlgebra);
                }
                let c = rest.coeffs()[d].clone() / int(-2);
                let basis = ZDSymbol::w_basis(*j, d as u32)?.component(*j);
                rest = rest.sub(&basis.scale(&c));
                out.insert((*j, d as u32), c);
            }
        }
        Ok(out)
    }

    /// `w_0(N) = -1/2 z^{-1} ((D - 1/2)^2 - N^2)`.
    pub fn bgw_symbol(n: &Rational) -> Self {
        let shifted = DPoly::new(vec![-Rational::new(1.into(), 2.into()), Rational::one()]);
        let p = shifted.mul(&shifted).sub(&DPoly::constant(n * n));
        ZDSymbol::term(-1, p.scale(&-Rational::new(1.into(), 2.into())))
    }
}

/// `W_a` on the window, through the basis decomposition and the Faà di Bruno operators.
pub fn w_of_symbol(a: &ZDSymbol, window: u32) -> Result<DOperator> {
    let mut op = DOperator::zero(window);
    for ((k, m), c) in a.decompose()? {
        op = op.add_scaled(&faa_di_bruno_w(k, m, window)?, &c);
    }
    Ok(op)
}

/// Action of `W_{p(D)}` in the Q-basis: `Q_lambda(t/2)` has eigenvalue `-sum_j p(lambda_j)`.
pub fn diagonal_action(p: &DPoly, e: &QExpansion) -> Result<QExpansion> {
    if !p.is_odd() {
        return Err(Error::Parity("diagonal action needs only odd powers of D".into()));
    }
    let mut out = QExpansion::new(e.cutoff);
    for (lambda, c) in &e.coeffs {
        let eig: Rational = lambda.parts().iter().map(|&x| p.eval(&int(x as i64))).sum();
        out.add_term(lambda.clone(), -eig * c);
    }
    Ok(out)
}

/// Coefficients of `(w_1 - w_2)/(w_1 + w_2)` expanded in `w_2/w_1`: `1, -2, 2, -2, ...`.
fn region_coeff(n: i64) -> Rational {
    match n {
        0 => Rational::one(),
        n if n % 2 == 0 => int(2),
        _ => int(-2),
    }
}

/// Central term of `[W_a, W_b] = W_[a,b] + mu(a, b)`.
pub fn central_mu(a: &ZDSymbol, b: &ZDSymbol) -> Result<Rational> {
    if !a.in_algebra() || !b.in_algebra() {
        return Err(Error::NotInAlgebra);
    }
    let mut total = Rational::zero();
    for (j, p) in a.terms() {
        let q = b.component(-j);
        if q.is_zero() {
            continue;
        }
        if j <= 0 {
            for n in 0..=-j {
                let m = -j - n;
                total += region_coeff(m) * region_coeff(n) * p.eval(&int(n)) * q.eval(&int(-n));
            }
        }
        if j >= 0 {
            for n in 0..=j {
                let m = j - n;
                total -= region_coeff(m) * region_coeff(n) * p.eval(&int(-n)) * q.eval(&int(n));
            }
        }
    }
    Ok(total / int(8))
}
