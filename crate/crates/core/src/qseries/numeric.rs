use std::f64::consts::PI;

use num_complex::Complex64;

use super::PuiseuxSeries;
use crate::rational::to_f64;
use crate::{Error, Result};

/// Partial sum of a truncated series at a point of the upper half-plane.
#[derive(Clone, Copy, Debug)]
pub struct NumericValue {
    pub value: Complex64,
    /// Magnitude of the last retained term; a proxy for truncation error.
    pub tail: f64,
}

/// Evaluates `f` at `q = exp(2πiτ)`, using the principal `q^λ = exp(2πiλτ)`.
pub fn eval_numeric(f: &PuiseuxSeries, tau: Complex64) -> Result<NumericValue> {
    if tau.im <= 0.0 {
        return Err(Error::Domain(format!(
            "Im τ must be positive, got τ = {tau}"
        )));
    }
    let two_pi_i_tau = Complex64::new(0.0, 2.0 * PI) * tau;
    let q = two_pi_i_tau.exp();
    let lead = (two_pi_i_tau * to_f64(f.lambda())).exp();
    // Horner from the top
    let mut acc = Complex64::new(0.0, 0.0);
    for c in f.coeffs().iter().rev() {
        acc = acc * q + to_f64(c);
    }
    let tail = match f.coeffs().last() {
        Some(c) => {
            let n = (f.trunc() - 1) as i32;
            (to_f64(c).abs()) * q.norm().powi(n) * lead.norm()
        }
        None => 0.0,
    };
    Ok(NumericValue {
        value: lead * acc,
        tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::eta;

    #[test]
    fn constant_one() {
        let v = eval_numeric(&PuiseuxSeries::one(3), Complex64::new(0.2, 0.7)).unwrap();
        assert!((v.value - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn eta_at_i() {
        // η(i) = Γ(1/4) / (2 π^{3/4})
        let v = eval_numeric(&eta(80), Complex64::new(0.0, 1.0)).unwrap();
        assert!((v.value.re - 0.768_225_422_326_056_7).abs() < 1e-8);
        assert!(v.value.im.abs() < 1e-12);
    }

    #[test]
    fn lower_half_plane_rejected() {
        assert!(matches!(
            eval_numeric(&PuiseuxSeries::one(2), Complex64::new(0.0, -1.0)),
            Err(Error::Domain(_))
        ));
        assert!(eval_numeric(&PuiseuxSeries::one(2), Complex64::new(1.0, 0.0)).is_err());
    }
}
