use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, Rational};
use crate::wops::{DPoly, ZDSymbol};

/// Laurent series known on `[zmin, zmax]`: exactly zero above `zmax`, unknown below `zmin`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentWindow {
    pub zmin: i64,
    pub zmax: i64,
    coeffs: BTreeMap<i64, Rational>,
}

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    zmin: i64,
    zmax: i64,
    coeffs: BTreeMap<String, String>,
}

impl LaurentWindow {
    pub fn new(zmin: i64, zmax: i64) -> Self {
        LaurentWindow { zmin, zmax, coeffs: BTreeMap::new() }
    }

    pub fn from_coeffs<I>(zmin: i64, zmax: i64, coeffs: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut w = LaurentWindow::new(zmin, zmax);
        for (p, c) in coeffs {
            w.add(p, c);
        }
        w
    }

    /// `z^n` known on `[zmin, n]`.
    pub fn monomial(n: i64, zmin: i64) -> Self {
        LaurentWindow::from_coeffs(zmin, n, [(n, Rational::one())])
    }

    /// Adds `c z^p`; terms outside the window are dropped.
    pub fn add(&mut self, p: i64, c: Rational) {
        if p < self.zmin || p > self.zmax || c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(p).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&p);
        }
    }

    /// Coefficient of `z^p`, or `None` below the trusted window.
    pub fn coeff(&self, p: i64) -> Option<Rational> {
        if p < self.zmin {
            return None;
        }
        Some(self.coeffs.get(&p).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(p, c)| (*p, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Shrinks the trusted window from below.
    pub fn truncate(&self, zmin: i64) -> Self {
        let zmin = zmin.max(self.zmin);
        LaurentWindow::from_coeffs(zmin, self.zmax, self.coeffs.iter().map(|(p, c)| (*p, c.clone())))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LaurentWindow::from_coeffs(self.zmin, self.zmax, self.coeffs.iter().map(|(p, v)| (*p, v * c)))
    }

    /// Sum, trusted down to the larger of the two `zmin`.
    pub fn add_window(&self, other: &LaurentWindow) -> Self {
        let mut out = LaurentWindow::new(self.zmin.max(other.zmin), self.zmax.max(other.zmax));
        for (p, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            out.add(*p, c.clone());
        }
        out
    }

    pub fn sub_window(&self, other: &LaurentWindow) -> Self {
        self.add_window(&other.scale(&-Rational::one()))
    }

    /// Equality on the shared trusted window.
    pub fn eq_on_window(&self, other: &LaurentWindow) -> bool {
        let lo = self.zmin.max(other.zmin);
        self.truncate(lo).coeffs == other.truncate(lo).coeffs
    }

    /// Product of two series, trusted where no unknown tail can contribute.
    pub fn mul(&self, other: &LaurentWindow) -> Self {
        let zmax = self.zmax + other.zmax;
        let zmin = (self.zmin + other.zmax).max(other.zmin + self.zmax);
        let mut out = LaurentWindow::new(zmin, zmax);
        for (p, a) in &self.coeffs {
            for (q, b) in &other.coeffs {
                out.add(p + q, a * b);
            }
        }
        out
    }

    pub fn to_json_string(&self) -> String {
        let json = LaurentJson {
            zmin: self.zmin,
            zmax: self.zmax,
            coeffs: self.coeffs.iter().map(|(p, c)| (p.to_string(), format_rational(c))).collect(),
        };
        serde_json::to_string(&json).expect("window serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: LaurentJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = LaurentWindow::new(json.zmin, json.zmax);
        for (p, c) in json.coeffs {
            let p: i64 = p.parse().map_err(|_| Error::Parse(format!("z-power {p:?}")))?;
            if p < json.zmin || p > json.zmax {
                return Err(Error::Parse(format!("z-power {p} outside [{}, {}]", json.zmin, json.zmax)));
            }
            out.add(p, parse_rational(&c)?);
        }
        Ok(out)
    }
}

/// Primitive action on Laurent series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Primitive {
    /// Multiplication by `z^j`.
    ZPow(i64),
    /// `z^n -> num(n)/den(n) z^n`.
    RatD { num: DPoly, den: DPoly },
    /// `d/dz`.
    Dz,
}

impl Primitive {
    pub fn poly(p: DPoly) -> Self {
        Primitive::RatD { num: p, den: DPoly::constant(Rational::one()) }
    }

    fn apply(&self, f: &LaurentWindow) -> Result<LaurentWindow> {
        match self {
            Primitive::ZPow(j) => Ok(LaurentWindow::from_coeffs(
                f.zmin + j,
                f.zmax + j,
                f.coeffs().map(|(p, c)| (p + j, c.clone())),
            )),
            Primitive::Dz => Ok(LaurentWindow::from_coeffs(
                f.zmin - 1,
                f.zmax - 1,
                f.coeffs().map(|(p, c)| (p - 1, c * int(p))),
            )),
            Primitive::RatD { num, den } => {
                for n in f.zmin..=f.zmax {
                    if den.eval(&int(n)).is_zero() {
                        return Err(Error::EigenvaluePole(n));
                    }
                }
                Ok(LaurentWindow::from_coeffs(
                    f.zmin,
                    f.zmax,
                    f.coeffs().map(|(p, c)| (p, c * num.eval(&int(p)) / den.eval(&int(p)))),
                ))
            }
        }
    }
}

/// `sum_i c_i P_{i,1} P_{i,2} ... P_{i,n}`, each chain applied right to left.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentEndo {
    pub terms: Vec<(Rational, Vec<Primitive>)>,
}

impl LaurentEndo {
    pub fn zero() -> Self {
        LaurentEndo::default()
    }

    pub fn identity() -> Self {
        LaurentEndo::chain(Vec::new())
    }

    pub fn chain(prims: Vec<Primitive>) -> Self {
        LaurentEndo { terms: vec![(Rational::one(), prims)] }
    }

    pub fn z_pow(j: i64) -> Self {
        LaurentEndo::chain(vec![Primitive::ZPow(j)])
    }

    pub fn ratd(num: DPoly, den: DPoly) -> Self {
        LaurentEndo::chain(vec![Primitive::RatD { num, den }])
    }

    pub fn dz() -> Self {
        LaurentEndo::chain(vec![Primitive::Dz])
    }

    /// `sum_j z^j p_j(D)`.
    pub fn from_symbol(a: &ZDSymbol) -> Self {
        LaurentEndo {
            terms: a
                .terms()
                .map(|(j, p)| (Rational::one(), vec![Primitive::ZPow(j), Primitive::poly(p.clone())]))
                .collect(),
        }
    }

    pub fn add(&self, other: &LaurentEndo) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        LaurentEndo { terms }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LaurentEndo { terms: self.terms.iter().map(|(v, p)| (v * c, p.clone())).collect() }
    }

    pub fn sub(&self, other: &LaurentEndo) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    /// `self * other` (apply `other` first).
    pub fn compose(&self, other: &LaurentEndo) -> Self {
        let mut terms = Vec::new();
        for (a, pa) in &self.terms {
            for (b, pb) in &other.terms {
                let mut chain = pa.clone();
                chain.extend(pb.iter().cloned());
                terms.push((a * b, chain));
            }
        }
        LaurentEndo { terms }
    }

    pub fn apply(&self, f: &LaurentWindow) -> Result<LaurentWindow> {
        let mut out: Option<LaurentWindow> = None;
        for (c, chain) in &self.terms {
            let mut g = f.clone();
            for prim in chain.iter().rev() {
                g = prim.apply(&g)?;
            }
            let g = g.scale(c);
            out = Some(match out {
                None => g,
                Some(acc) => acc.add_window(&g),
            });
        }
        Ok(out.unwrap_or_else(|| LaurentWindow::new(f.zmin, f.zmax)))
    }
}
