//! Truncated q-series `q^λ · Σ a_n q^n` with exact rational coefficients.
//!
//! Every series lives on a single exponent lattice `λ + ℤ`. Binary
//! operations on series whose leading exponents differ by a non-integer
//! are rejected rather than coerced. The number of stored coefficients is
//! the guaranteed-valid window: coefficient `n` is exact for `n < trunc`,
//! beyond that nothing is known.

mod cache;
mod modular;
mod numeric;

pub use cache::{parse_cache, write_cache};
pub use modular::{
    classical_eisenstein, eisenstein, eisenstein_constant, eta, eta_power, serre_derivative,
};
pub use numeric::{eval_numeric, NumericValue};

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::rational::{fmt_rat, int, is_integer};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxSeries {
    lambda: BigRational,
    coeffs: Vec<BigRational>,
    weight: Option<BigRational>,
}

impl PuiseuxSeries {
    pub fn new(lambda: BigRational, coeffs: Vec<BigRational>) -> Self {
        Self {
            lambda,
            coeffs,
            weight: None,
        }
    }

    /// A power series (leading exponent 0).
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        Self::new(BigRational::zero(), coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(trunc: usize) -> Self {
        Self::from_coeffs(vec![BigRational::zero(); trunc])
    }

    pub fn one(trunc: usize) -> Self {
        Self::constant(BigRational::one(), trunc)
    }

    pub fn constant(c: BigRational, trunc: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); trunc];
        if trunc > 0 {
            coeffs[0] = c;
        }
        Self::from_coeffs(coeffs)
    }

    /// `q^λ` with `trunc` valid coefficients.
    pub fn monomial(lambda: BigRational, trunc: usize) -> Self {
        let mut s = Self::one(trunc);
        s.lambda = lambda;
        s
    }

    pub fn with_weight(mut self, weight: Option<BigRational>) -> Self {
        self.weight = weight;
        self
    }

    pub fn lambda(&self) -> &BigRational {
        &self.lambda
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    pub fn weight(&self) -> Option<&BigRational> {
        self.weight.as_ref()
    }

    /// Coefficient of `q^{λ+n}`; `None` outside the valid window.
    pub fn coeff(&self, n: usize) -> Option<&BigRational> {
        self.coeffs.get(n)
    }

    /// Exponent one past the last valid coefficient.
    pub fn valid_end(&self) -> BigRational {
        &self.lambda + int(self.trunc() as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(mut self, trunc: usize) -> Self {
        self.coeffs.truncate(trunc);
        self
    }

    fn check_lattice(&self, other: &Self) -> Result<()> {
        if is_integer(&(&self.lambda - &other.lambda)) {
            Ok(())
        } else {
            Err(Error::LatticeMismatch {
                left: Box::new(self.lambda.clone()),
                right: Box::new(other.lambda.clone()),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, &BigRational::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, &(-BigRational::one()))
    }

    fn combine(&self, other: &Self, sign: &BigRational) -> Result<Self> {
        self.check_lattice(other)?;
        let lambda = (&self.lambda).min(&other.lambda).clone();
        let end = self.valid_end().min(other.valid_end());
        let n = (&end - &lambda).to_integer();
        let n: usize = n.try_into().unwrap_or(0);
        let off_a: usize = (&self.lambda - &lambda).to_integer().try_into().unwrap();
        let off_b: usize = (&other.lambda - &lambda).to_integer().try_into().unwrap();
        let coeffs = (0..n)
            .map(|i| {
                let a = i
                    .checked_sub(off_a)
                    .and_then(|j| self.coeffs.get(j))
                    .cloned()
                    .unwrap_or_else(BigRational::zero);
                let b = i
                    .checked_sub(off_b)
                    .and_then(|j| other.coeffs.get(j))
                    .cloned()
                    .unwrap_or_else(BigRational::zero);
                a + sign * b
            })
            .collect();
        let weight = match (&self.weight, &other.weight) {
            (Some(a), Some(b)) if a == b => Some(a.clone()),
            _ => None,
        };
        Ok(Self {
            lambda,
            coeffs,
            weight,
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.trunc().min(other.trunc());
        let mut coeffs = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        let weight = match (&self.weight, &other.weight) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Self {
            lambda: &self.lambda + &other.lambda,
            coeffs,
            weight,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            lambda: self.lambda.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            weight: self.weight.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&(-BigRational::one()))
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: &BigRational) -> Self {
        Self {
            lambda: &self.lambda + e,
            coeffs: self.coeffs.clone(),
            weight: None,
        }
    }

    /// `q d/dq`: the coefficient of `q^{λ+n}` is multiplied by `λ+n`.
    pub fn theta(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| a * (&self.lambda + int(n as i64)))
            .collect();
        Self::new(self.lambda.clone(), coeffs)
    }

    /// `f^r` for rational `r`.
    ///
    /// The leading coefficient must be 1 unless `r` is an integer, in which
    /// case any nonzero leading coefficient is accepted. Uses the
    /// J. C. P. Miller recurrence.
    pub fn pow_rational(&self, r: &BigRational) -> Result<Self> {
        let n = self.trunc();
        if n == 0 {
            return Err(Error::InvalidArgument("empty series".into()));
        }
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::InvalidArgument(
                "leading coefficient is zero; normalize the leading exponent first".into(),
            ));
        }
        let lead = if a0.is_one() {
            BigRational::one()
        } else if is_integer(r) {
            let e: i32 = r.to_integer().try_into().map_err(|_| {
                Error::InvalidArgument("integer exponent out of range".into())
            })?;
            num_traits::pow::Pow::pow(a0, e)
        } else {
            return Err(Error::InvalidArgument(format!(
                "rational power {} needs a unit leading coefficient, found {}",
                fmt_rat(r),
                fmt_rat(a0)
            )));
        };
        let f: Vec<BigRational> = self.coeffs.iter().map(|c| c / a0).collect();
        let mut g = vec![BigRational::zero(); n];
        g[0] = BigRational::one();
        let rp1 = r + BigRational::one();
        for m in 1..n {
            let mut s = BigRational::zero();
            for k in 1..=m {
                if f[k].is_zero() {
                    continue;
                }
                s += (&rp1 * int(k as i64) - int(m as i64)) * &f[k] * &g[m - k];
            }
            g[m] = s / int(m as i64);
        }
        let coeffs = g.into_iter().map(|c| c * &lead).collect();
        Ok(Self {
            lambda: &self.lambda * r,
            coeffs,
            weight: self.weight.as_ref().map(|w| w * r),
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        self.pow_rational(&int(-1))
    }

    /// Formal logarithm of a power series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.lambda.is_zero() || self.coeffs.first().is_none_or(|c| !c.is_one()) {
            return Err(Error::InvalidArgument(
                "log requires a power series with constant term 1".into(),
            ));
        }
        let ratio = self.theta().mul(&self.inverse()?);
        let mut coeffs = vec![BigRational::zero(); self.trunc()];
        for (n, c) in ratio.coeffs.iter().enumerate().skip(1) {
            coeffs[n] = c / int(n as i64);
        }
        Ok(Self::from_coeffs(coeffs))
    }

    /// Formal exponential of a power series with constant term 0.
    pub fn exp(&self) -> Result<Self> {
        if !self.lambda.is_zero() || self.coeffs.first().is_some_and(|c| !c.is_zero()) {
            return Err(Error::InvalidArgument(
                "exp requires a power series with constant term 0".into(),
            ));
        }
        let n = self.trunc();
        let mut e = vec![BigRational::zero(); n];
        if n > 0 {
            e[0] = BigRational::one();
        }
        for m in 1..n {
            let mut s = BigRational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    s += int(k as i64) * &self.coeffs[k] * &e[m - k];
                }
            }
            e[m] = s / int(m as i64);
        }
        Ok(Self::from_coeffs(e))
    }

    /// First index in the common valid window where the two series differ,
    /// with both values. Errors on incompatible lattices.
    pub fn first_mismatch(
        &self,
        other: &Self,
    ) -> Result<Option<(BigRational, BigRational, BigRational)>> {
        let d = self.sub(other)?;
        Ok(d.coeffs.iter().position(|c| !c.is_zero()).map(|i| {
            let e = d.lambda.clone() + int(i as i64);
            let at = |s: &Self| {
                let k = (&e - &s.lambda).to_integer();
                usize::try_from(k)
                    .ok()
                    .and_then(|k| s.coeffs.get(k).cloned())
                    .unwrap_or_else(BigRational::zero)
            };
            (e.clone(), at(self), at(other))
        }))
    }

    /// Equality over the common valid window.
    pub fn agrees_with(&self, other: &Self) -> Result<bool> {
        Ok(self.first_mismatch(other)?.is_none())
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^({}) * (", fmt_rat(&self.lambda))?;
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})q^{n}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{}))", self.trunc())
    }
}
