//! Floating-point checks of modular behaviour at sample points of the upper
//! half-plane, using principal branches throughout.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;

use crate::qseries::{eisenstein, eval_numeric, PuiseuxSeries};
use crate::rational::{int, reduce_into, to_f64};
use crate::{Error, Result};

/// Supported `SL(2, ℤ)` elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transform {
    Identity,
    /// `τ ↦ -1/τ`.
    S,
    /// `τ ↦ τ + 1`.
    T,
}

/// Sampled values of a ratio expected to be a constant.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularReport {
    pub name: String,
    pub samples: Vec<Complex64>,
    pub values: Vec<Complex64>,
    /// Largest `|μ(τ_i) - μ(τ_j)|`.
    pub spread: f64,
    /// Largest `| |μ(τ_i)| - 1 |`.
    pub modulus_deviation: f64,
    /// Largest distance from the expected value, when there is one.
    pub deviation: f64,
    pub tolerance: f64,
}

impl ModularReport {
    fn new(name: impl Into<String>, samples: Vec<Complex64>, values: Vec<Complex64>, expected: Option<Complex64>, tolerance: f64) -> Self {
        let mut spread = 0.0f64;
        for a in &values {
            for b in &values {
                spread = spread.max((a - b).norm());
            }
        }
        let modulus_deviation = values.iter().map(|v| (v.norm() - 1.0).abs()).fold(0.0, f64::max);
        let deviation = expected.map_or(0.0, |e| values.iter().map(|v| (v - e).norm()).fold(0.0, f64::max));
        Self {
            name: name.into(),
            samples,
            values,
            spread,
            modulus_deviation,
            deviation,
            tolerance,
        }
    }

    pub fn pass(&self) -> bool {
        self.spread < self.tolerance && self.modulus_deviation < self.tolerance && self.deviation < self.tolerance
    }

    /// The sample with the largest deviation from the first value.
    pub fn worst_sample(&self) -> Option<Complex64> {
        let first = *self.values.first()?;
        self.values
            .iter()
            .zip(&self.samples)
            .max_by(|(a, _), (b, _)| (*a - first).norm().total_cmp(&(*b - first).norm()))
            .map(|(_, s)| *s)
    }
}

fn check_samples(samples: &[Complex64]) -> Result<()> {
    match samples.iter().find(|t| t.im <= 0.0) {
        Some(t) => Err(Error::Domain(format!("τ = {t} is not in the upper half-plane"))),
        None => Ok(()),
    }
}

fn cpow(z: Complex64, a: f64) -> Complex64 {
    z.powf(a)
}

/// `μ(τ) = S|γ(τ) / S(τ)` for a trace function `S` of weight `k`.
///
/// For `γ = S`, `μ(τ) = (-iτ)^{-t} τ^{t-k} S(-1/τ) / S(τ)` with `t` the
/// weight reduced into `(-1, 1]`; for `γ = T`, `μ = S(τ+1)/S(τ)`.
pub fn modular_transform_numeric(
    solution: &PuiseuxSeries,
    k: &BigRational,
    gamma: Transform,
    samples: &[Complex64],
    terms: usize,
    tolerance: f64,
) -> Result<ModularReport> {
    check_samples(samples)?;
    let s = solution.clone().truncate(terms);
    let t = to_f64(&reduce_into(k, &int(-1), &int(2)));
    let kf = to_f64(k);
    let i = Complex64::i();
    let mut values = Vec::with_capacity(samples.len());
    for &tau in samples {
        let base = eval_numeric(&s, tau)?.value;
        let mu = match gamma {
            Transform::Identity => Complex64::new(1.0, 0.0),
            Transform::S => {
                let image = eval_numeric(&s, -1.0 / tau)?.value;
                cpow(-i * tau, -t) * cpow(tau, t - kf) * image / base
            }
            Transform::T => eval_numeric(&s, tau + 1.0)?.value / base,
        };
        values.push(mu);
    }
    let expected = match gamma {
        Transform::T => Some(Complex64::from_polar(1.0, 2.0 * PI * to_f64(solution.lambda()))),
        _ => Some(Complex64::new(1.0, 0.0)),
    };
    Ok(ModularReport::new(format!("{gamma:?}-transform"), samples.to_vec(), values, expected, tolerance))
}

/// The series lives on `λ + ℤ`, so `S(τ + 1) = e^{2πiλ} S(τ)` term by term.
pub fn t_eigenvalue_exact(solution: &PuiseuxSeries, lambda: &BigRational) -> bool {
    crate::rational::is_integer(&(solution.lambda() - lambda))
}

/// `|E_2(-1/τ) - (τ² E_2(τ) - τ/(2πi))|` at each sample.
pub fn e2_quasimodularity_check(samples: &[Complex64], terms: usize, tolerance: f64) -> Result<ModularReport> {
    check_samples(samples)?;
    let e2 = eisenstein(2, terms)?;
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let mut values = Vec::new();
    for &tau in samples {
        let lhs = eval_numeric(&e2, -1.0 / tau)?.value;
        let rhs = tau * tau * eval_numeric(&e2, tau)?.value - tau / two_pi_i;
        // report the ratio, expected 1
        values.push(lhs / rhs);
    }
    Ok(ModularReport::new("E2 quasi-modularity", samples.to_vec(), values, Some(Complex64::new(1.0, 0.0)), tolerance))
}

/// The two scalar branch identities behind the `SL(2, ℤ)` action:
/// `(-iτ)^{-t} (i/τ)^{-t} (-1)^{t-k} = 1` for `k - t` even, and
/// `i^t (1-τ)^{-t} (-i/(τ-1))^{-t} = 1`, the latter valid for `Re τ < 1`.
pub fn sl2_branch_check(t: &BigRational, k: &BigRational, samples: &[Complex64], tolerance: f64) -> Result<(ModularReport, ModularReport)> {
    check_samples(samples)?;
    let diff = k - t;
    if !crate::rational::is_integer(&diff) || diff.to_integer() % 2 != 0.into() {
        return Err(Error::InvalidArgument("k - t must be an even integer".into()));
    }
    let tf = to_f64(t);
    let i = Complex64::i();
    let sign = Complex64::from_polar(1.0, PI * to_f64(&diff));
    let first: Vec<Complex64> = samples
        .iter()
        .map(|&tau| cpow(-i * tau, -tf) * cpow(i / tau, -tf) * sign)
        .collect();
    let second: Vec<Complex64> = samples
        .iter()
        .map(|&tau| cpow(i, tf) * cpow(1.0 - tau, -tf) * cpow(-i / (tau - 1.0), -tf))
        .collect();
    let one = Some(Complex64::new(1.0, 0.0));
    Ok((
        ModularReport::new("S-branch", samples.to_vec(), first, one, tolerance),
        ModularReport::new("ST-branch", samples.to_vec(), second, one, tolerance),
    ))
}
