//! Two-variable series `P_k(z, q)` and Weierstrass-type Laurent data.
//!
//! `P_k(z, q) = 1/(k-1)! Σ_{n≠0} n^{k-1} z^n / (1 - q^n)`, where for
//! negative `n` the factor `1/(1 - q^n)` is re-expanded as
//! `-q^{|n|} / (1 - q^{|n|})` so every coefficient is a power series in `q`.

mod identities;

pub use identities::{
    binomial_poly_coeffs, check_p2_with_negated_wp, residue_constants, verify_expansion_identity, verify_p_wp_relations,
    verify_residue_identities, ResidueEntry, ResidueReport,
};

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::powser;
use crate::qseries::{eisenstein, PuiseuxSeries};
use crate::rational::{binomial_int, factorial, int};
use crate::{Error, Result};

/// A Laurent polynomial in `z` over `q`-power series, known exactly on the
/// exponent window `z_min..=z_max` and for `q`-powers below `trunc`.
///
/// Exponents inside the window without an entry are zero; exponents outside
/// the window are unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateLaurent {
    z_min: i64,
    z_max: i64,
    trunc: usize,
    entries: BTreeMap<i64, PuiseuxSeries>,
}

impl BivariateLaurent {
    pub fn zero(z_min: i64, z_max: i64, trunc: usize) -> Self {
        Self {
            z_min,
            z_max,
            trunc,
            entries: BTreeMap::new(),
        }
    }

    pub fn z_window(&self) -> (i64, i64) {
        (self.z_min, self.z_max)
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Coefficient of `z^n`; `None` outside the window.
    pub fn coeff(&self, n: i64) -> Option<PuiseuxSeries> {
        if n < self.z_min || n > self.z_max {
            return None;
        }
        Some(
            self.entries
                .get(&n)
                .cloned()
                .unwrap_or_else(|| PuiseuxSeries::zero(self.trunc)),
        )
    }

    /// Sets the coefficient of `z^n`; ignored outside the window.
    pub fn set(&mut self, n: i64, s: PuiseuxSeries) {
        if n < self.z_min || n > self.z_max {
            return;
        }
        let s = s.truncate(self.trunc).with_weight(None);
        if s.is_zero() {
            self.entries.remove(&n);
        } else {
            self.entries.insert(n, s);
        }
    }

    /// Adds `c z^n q^j`.
    pub fn add_term(&mut self, n: i64, j: usize, c: &BigRational) {
        if n < self.z_min || n > self.z_max || j >= self.trunc || c.is_zero() {
            return;
        }
        let mut coeffs = self.coeff(n).expect("inside window").coeffs().to_vec();
        coeffs[j] += c;
        self.set(n, PuiseuxSeries::from_coeffs(coeffs));
    }

    /// Coefficient of `z^n q^j`; `None` outside the known window.
    pub fn at(&self, n: i64, j: usize) -> Option<BigRational> {
        if j >= self.trunc {
            return None;
        }
        self.coeff(n).map(|s| s.coeffs()[j].clone())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.z_min, self.z_max, self.trunc);
        for (&n, s) in &self.entries {
            out.set(n, s.scale(c));
        }
        out
    }

    /// Sum over the intersection of the two windows.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero(
            self.z_min.max(other.z_min),
            self.z_max.min(other.z_max),
            self.trunc.min(other.trunc),
        );
        for n in out.z_min..=out.z_max {
            let a = self.coeff(n).expect("inside window");
            let b = other.coeff(n).expect("inside window");
            out.set(n, a.add(&b).expect("power series share a lattice"));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    /// Multiplies every `z`-coefficient by a `q`-series.
    pub fn mul_q(&self, f: &PuiseuxSeries) -> Self {
        let mut out = Self::zero(self.z_min, self.z_max, self.trunc.min(f.trunc()));
        for (&n, s) in &self.entries {
            out.set(n, s.mul(f));
        }
        out
    }

    /// `z d/dz`.
    pub fn z_d_dz(&self) -> Self {
        let mut out = Self::zero(self.z_min, self.z_max, self.trunc);
        for (&n, s) in &self.entries {
            out.set(n, s.scale(&int(n)));
        }
        out
    }

    /// `d/dz`; the window moves down by one.
    pub fn d_dz(&self) -> Self {
        let mut out = Self::zero(self.z_min - 1, self.z_max - 1, self.trunc);
        for (&n, s) in &self.entries {
            out.set(n - 1, s.scale(&int(n)));
        }
        out
    }

    /// First `(z-power, q-power, left, right)` where the two disagree on the
    /// common window.
    pub fn first_mismatch(&self, other: &Self) -> Option<(i64, usize, BigRational, BigRational)> {
        let (lo, hi) = (self.z_min.max(other.z_min), self.z_max.min(other.z_max));
        let trunc = self.trunc.min(other.trunc);
        for n in lo..=hi {
            for j in 0..trunc {
                let a = self.at(n, j).expect("inside window");
                let b = other.at(n, j).expect("inside window");
                if a != b {
                    return Some((n, j, a, b));
                }
            }
        }
        None
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("P_k and ℘_k need k ≥ 1".into()));
    }
    Ok(())
}

fn inv_factorial(n: usize) -> BigRational {
    BigRational::new(1.into(), factorial(n))
}

fn int_pow(n: i64, e: usize) -> BigRational {
    int(n).pow(e as i32)
}

/// `P_k(z, q)` on the window `z_min..=z_max`, `q`-powers below `trunc`.
pub fn p_series(k: usize, z_min: i64, z_max: i64, trunc: usize) -> Result<BivariateLaurent> {
    check_k(k)?;
    let mut out = BivariateLaurent::zero(z_min, z_max, trunc);
    let pre = inv_factorial(k - 1);
    for n in z_min..=z_max {
        if n == 0 {
            continue;
        }
        let c = &pre * int_pow(n, k - 1);
        let d = n.unsigned_abs() as usize;
        // n > 0: Σ_{t≥0} q^{nt};  n < 0: -Σ_{t≥1} q^{|n|t}
        let (start, sign) = if n > 0 { (0, int(1)) } else { (1, int(-1)) };
        let mut j = start * d;
        while j < trunc {
            out.add_term(n, j, &(&c * &sign));
            j += d;
        }
    }
    Ok(out)
}

/// `P_k(e^z, q)` as a Laurent series in `z`, window `-k..=z_max`.
///
/// The `q^0` part sums to `(d/dz)^{k-1} [e^z / (1 - e^z)] / (k-1)!`; each
/// `q^m`, `m ≥ 1`, is the finite sum over divisors `d | m` of
/// `(d^{k-1} e^{dz} - (-d)^{k-1} e^{-dz}) / (k-1)!`.
pub fn p_series_exp(k: usize, z_max: i64, trunc: usize) -> Result<BivariateLaurent> {
    check_k(k)?;
    let z_min = -(k as i64);
    let mut out = BivariateLaurent::zero(z_min, z_max, trunc);
    if trunc == 0 {
        return Ok(out);
    }
    let pre = inv_factorial(k - 1);
    // e^z/(1-e^z) = -(1/z) e^z ((e^z-1)/z)^{-1}
    let len = (z_max + k as i64 + 2).max(1) as usize;
    let denom = powser::pow(&powser::expm1_over_z(len), &int(-1), len);
    let s = powser::mul(&powser::exp_linear(&int(1), len), &denom, len);
    // Laurent coefficients: f[j] at z^{j-1}
    let mut f: BTreeMap<i64, BigRational> = s.iter().enumerate().map(|(i, c)| (i as i64 - 1, -c)).collect();
    for _ in 1..k {
        f = f
            .into_iter()
            .filter(|(e, _)| *e != 0)
            .map(|(e, c)| (e - 1, c * int(e)))
            .collect();
    }
    for (e, c) in f {
        out.add_term(e, 0, &(&c * &pre));
    }
    for m in 1..trunc as i64 {
        for d in (1..=m).filter(|d| m % d == 0) {
            for j in 0..=z_max.max(-1) {
                let e = k - 1 + j as usize;
                let parity = if e.is_multiple_of(2) { 0 } else { 2 };
                if parity == 0 {
                    continue;
                }
                let c = &pre * int_pow(d, e) * inv_factorial(j as usize) * int(parity);
                out.add_term(j, m as usize, &c);
            }
        }
    }
    Ok(out)
}

/// `℘̃_k(z) = z^{-k} + (-1)^k Σ_{n≥1} C(2n+1, k-1) E_{2n+2} z^{2n+2-k}` on the
/// window `-k..=z_max`.
pub fn wp_expansion(k: usize, z_max: i64, trunc: usize) -> Result<BivariateLaurent> {
    check_k(k)?;
    let ki = k as i64;
    let mut out = BivariateLaurent::zero(-ki, z_max, trunc);
    out.add_term(-ki, 0, &int(1));
    let sign = if k.is_multiple_of(2) { int(1) } else { int(-1) };
    let mut n = 1i64;
    while 2 * n + 2 - ki <= z_max {
        let b = binomial_int(2 * n + 1, k - 1);
        if !b.is_zero() {
            let e = eisenstein(2 * n as usize + 2, trunc)?;
            out.set(2 * n + 2 - ki, e.scale(&(&sign * b)));
        }
        n += 1;
    }
    Ok(out)
}
