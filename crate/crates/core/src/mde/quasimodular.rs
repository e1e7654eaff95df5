use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::linalg;
use crate::qseries::{eisenstein, PuiseuxSeries};
use crate::rational::{fmt_rat, int, rat};
use crate::{Error, Result};

/// Exponents of `E_2^a E_4^b E_6^c`.
pub type Monomial = (u32, u32, u32);

/// A polynomial in `E_2, E_4, E_6` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuasiModularPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

fn monomial_weight((a, b, c): Monomial) -> u32 {
    2 * a + 4 * b + 6 * c
}

impl QuasiModularPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial((0, 0, 0), c)
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn e2() -> Self {
        Self::monomial((1, 0, 0), BigRational::one())
    }

    pub fn e4() -> Self {
        Self::monomial((0, 1, 0), BigRational::one())
    }

    pub fn e6() -> Self {
        Self::monomial((0, 0, 1), BigRational::one())
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (&m, x) in &self.terms {
            out.add_term(m, x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a, b, c), x) in &self.terms {
            for (&(d, e, f), y) in &other.terms {
                out.add_term((a + d, b + e, c + f), x * y);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// The common weight of all terms, `None` if the polynomial is zero or
    /// inhomogeneous.
    pub fn weight(&self) -> Option<u32> {
        let mut ws = self.terms.keys().map(|&m| monomial_weight(m));
        let w = ws.next()?;
        ws.all(|x| x == w).then_some(w)
    }

    pub fn is_homogeneous_of(&self, w: u32) -> bool {
        self.is_zero() || self.weight() == Some(w)
    }

    pub fn contains_e2(&self) -> bool {
        self.terms.keys().any(|&(a, _, _)| a > 0)
    }

    /// `q d/dq`, through `θE_2 = -E_2^2 + 5E_4`, `θE_4 = -4E_2E_4 + 14E_6`,
    /// `θE_6 = -6E_2E_6 + (60/7)E_4^2`.
    pub fn theta(&self) -> Self {
        let d2 = Self::e2().mul(&Self::e2()).scale(&int(-1)).add(&Self::e4().scale(&int(5)));
        let d4 = Self::e2().mul(&Self::e4()).scale(&int(-4)).add(&Self::e6().scale(&int(14)));
        let d6 = Self::e2()
            .mul(&Self::e6())
            .scale(&int(-6))
            .add(&Self::e4().mul(&Self::e4()).scale(&rat(60, 7)));
        let mut out = Self::zero();
        for (&(a, b, c), x) in &self.terms {
            if a > 0 {
                let rest = Self::monomial((a - 1, b, c), x * int(i64::from(a)));
                out = out.add(&rest.mul(&d2));
            }
            if b > 0 {
                let rest = Self::monomial((a, b - 1, c), x * int(i64::from(b)));
                out = out.add(&rest.mul(&d4));
            }
            if c > 0 {
                let rest = Self::monomial((a, b, c - 1), x * int(i64::from(c)));
                out = out.add(&rest.mul(&d6));
            }
        }
        out
    }

    /// q-expansion with `trunc` coefficients.
    pub fn to_series(&self, trunc: usize) -> Result<PuiseuxSeries> {
        let e = [eisenstein(2, trunc)?, eisenstein(4, trunc)?, eisenstein(6, trunc)?];
        let mut out = PuiseuxSeries::zero(trunc);
        for (&(a, b, c), x) in &self.terms {
            let mut t = PuiseuxSeries::constant(x.clone(), trunc);
            for (base, n) in e.iter().zip([a, b, c]) {
                for _ in 0..n {
                    t = t.mul(base);
                }
            }
            out = out.add(&t.with_weight(None))?;
        }
        Ok(out)
    }

    /// Value at `q = 0`.
    pub fn constant_term(&self) -> BigRational {
        let e = [rat(-1, 12), rat(1, 720), rat(-1, 30240)];
        let mut s = BigRational::zero();
        for (&(a, b, c), x) in &self.terms {
            let mut t = x.clone();
            for (base, n) in e.iter().zip([a, b, c]) {
                for _ in 0..n {
                    t *= base;
                }
            }
            s += t;
        }
        s
    }
}

/// Monomials `E_4^a E_6^b` of weight exactly `w`, ordered by `a`.
pub fn modular_monomials(w: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut a = 0;
    while 4 * a <= w {
        let rest = w - 4 * a;
        if rest.is_multiple_of(6) {
            out.push((0, a, rest / 6));
        }
        a += 1;
    }
    out
}

/// `E_{k}` (`k ≥ 4` even) as a polynomial in `E_4, E_6`, solved from the
/// q-expansion and checked on extra coefficients.
pub fn eisenstein_in_e4_e6(k: u32) -> Result<QuasiModularPoly> {
    if k < 4 || k % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "E_{k} is not a modular Eisenstein series"
        )));
    }
    let basis = modular_monomials(k);
    let trunc = basis.len() + 4;
    let cols: Vec<Vec<BigRational>> = basis
        .iter()
        .map(|&m| {
            QuasiModularPoly::monomial(m, BigRational::one())
                .to_series(trunc)
                .map(|s| s.coeffs().to_vec())
        })
        .collect::<Result<_>>()?;
    let target = eisenstein(k as usize, trunc)?.coeffs().to_vec();
    let x = linalg::solve(&cols, &target)
        .ok_or_else(|| Error::InvalidArgument(format!("E_{k} not in the span of E_4, E_6 monomials")))?;
    let mut p = QuasiModularPoly::zero();
    for (&m, c) in basis.iter().zip(x) {
        p.add_term(m, c);
    }
    Ok(p)
}

impl fmt::Display for QuasiModularPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b, c), x) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", fmt_rat(x))?;
            for (name, n) in [("E2", a), ("E4", b), ("E6", c)] {
                match n {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{n}")?,
                }
            }
        }
        Ok(())
    }
}
