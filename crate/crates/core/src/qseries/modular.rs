use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::PuiseuxSeries;
use crate::rational::{bernoulli, divisor_sum, factorial, int, rat};
use crate::{Error, Result};

/// Constant term of `E_k` in the `(2πi)^{-k} G_k` normalization: `-B_k / k!`.
pub fn eisenstein_constant(k: usize) -> BigRational {
    -bernoulli(k) / BigRational::from_integer(factorial(k))
}

/// `E_k = G_k / (2πi)^k` for even `k ≥ 2`, with `trunc` coefficients.
///
/// The constant term is `-B_k/k!` and the coefficient of `q^n` is
/// `2 σ_{k-1}(n) / (k-1)!`. In particular `E_2 = -1/12 + 2q + 6q² + …`,
/// which is `-1/12` times the classical `E_2`.
pub fn eisenstein(k: usize, trunc: usize) -> Result<PuiseuxSeries> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "Eisenstein weight must be even and at least 2, got {k}"
        )));
    }
    let scale = BigRational::new(BigInt::from(2), factorial(k - 1));
    let coeffs = (0..trunc)
        .map(|n| {
            if n == 0 {
                eisenstein_constant(k)
            } else {
                BigRational::from_integer(divisor_sum(k as u32 - 1, n as u64)) * &scale
            }
        })
        .collect();
    Ok(PuiseuxSeries::from_coeffs(coeffs).with_weight(Some(int(k as i64))))
}

/// The classical normalization with constant term 1 (`E_2^std = -12 E_2`,
/// `E_4^std = 720 E_4`, `E_6^std = -30240 E_6`).
pub fn classical_eisenstein(k: usize, trunc: usize) -> Result<PuiseuxSeries> {
    let e = eisenstein(k, trunc)?;
    Ok(e.scale(&(BigRational::one() / eisenstein_constant(k))))
}

fn euler_product(trunc: usize) -> PuiseuxSeries {
    let mut coeffs = vec![BigRational::zero(); trunc];
    if trunc > 0 {
        coeffs[0] = BigRational::one();
    }
    for n in 1..trunc {
        // multiply by (1 - q^n) in place, high degrees first
        for i in (n..trunc).rev() {
            let t = coeffs[i - n].clone();
            if !t.is_zero() {
                coeffs[i] -= t;
            }
        }
    }
    PuiseuxSeries::from_coeffs(coeffs)
}

/// Dedekind eta `q^{1/24} ∏ (1 - q^n)`.
pub fn eta(trunc: usize) -> PuiseuxSeries {
    let mut s = euler_product(trunc).shift(&rat(1, 24));
    s.weight = Some(rat(1, 2));
    s
}

/// `η^r` via `exp(r · log ∏(1 - q^n))`; leading exponent `r/24`, weight `r/2`.
pub fn eta_power(r: &BigRational, trunc: usize) -> PuiseuxSeries {
    let log = euler_product(trunc)
        .log()
        .expect("Euler product has constant term 1");
    let body = log.scale(r).exp().expect("scaled log has constant term 0");
    let mut s = body.shift(&(r / int(24)));
    s.weight = Some(r / int(2));
    s
}

/// `∂_k f = q d/dq f + k E_2 f`, with `E_2` in the normalization of
/// [`eisenstein`] (constant term `-1/12`). Raises the weight tag to `k + 2`.
pub fn serre_derivative(f: &PuiseuxSeries, k: &BigRational) -> Result<PuiseuxSeries> {
    let e2 = eisenstein(2, f.trunc())?;
    if e2.trunc() < f.trunc() {
        return Err(Error::Truncation("E_2 shorter than the series".into()));
    }
    let corr = e2.mul(f).scale(k);
    let mut out = f.theta().add(&corr)?;
    out.weight = Some(k + int(2));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e2_low_terms() {
        let e2 = eisenstein(2, 4).unwrap();
        assert_eq!(e2.coeffs(), &[rat(-1, 12), int(2), int(6), int(8)]);
    }

    #[test]
    fn e4_low_terms() {
        let e4 = eisenstein(4, 2).unwrap();
        assert_eq!(e4.coeffs(), &[rat(1, 720), rat(1, 3)]);
        assert_eq!(eisenstein(4, 3).unwrap().coeff(2), Some(&int(3)));
    }

    #[test]
    fn weight_tags() {
        assert_eq!(eisenstein(6, 1).unwrap().weight(), Some(&int(6)));
        assert_eq!(eta(3).weight(), Some(&rat(1, 2)));
    }

    #[test]
    fn invalid_weights() {
        assert!(eisenstein(3, 4).is_err());
        assert!(eisenstein(0, 4).is_err());
    }

    #[test]
    fn classical_normalization() {
        let e2 = classical_eisenstein(2, 3).unwrap();
        assert_eq!(e2.coeffs(), &[int(1), int(-24), int(-72)]);
        let e4 = classical_eisenstein(4, 2).unwrap();
        assert_eq!(e4.coeffs(), &[int(1), int(240)]);
        let e6 = classical_eisenstein(6, 2).unwrap();
        assert_eq!(e6.coeffs(), &[int(1), int(-504)]);
    }

    #[test]
    fn eta_matches_pentagonal_numbers() {
        // Euler: Σ_k (-1)^k q^{k(3k-1)/2}, k ∈ ℤ
        let n = 60;
        let mut oracle = vec![0i64; n];
        for k in -10i64..=10 {
            let e = k * (3 * k - 1) / 2;
            if (0..n as i64).contains(&e) {
                oracle[e as usize] += if k % 2 == 0 { 1 } else { -1 };
            }
        }
        let e = eta(n);
        assert_eq!(e.lambda(), &rat(1, 24));
        assert_eq!(e.coeffs(), PuiseuxSeries::from_ints(&oracle).coeffs());
        assert_eq!(&oracle[..6], &[1, -1, -1, 0, 0, 1]);
    }

    #[test]
    fn eta_power_trivial_cases() {
        let z = eta_power(&int(0), 5);
        assert_eq!(z.coeffs(), PuiseuxSeries::one(5).coeffs());
        assert_eq!(z.lambda(), &int(0));
        assert_eq!(eta_power(&rat(1, 5), 1).lambda(), &rat(1, 120));
        assert_eq!(eta_power(&int(1), 40), eta(40));
    }

    #[test]
    fn eta_power_agrees_with_miller_power() {
        let e = eta(25);
        let r = rat(2, 7);
        let miller = e.pow_rational(&r).unwrap();
        assert_eq!(miller, eta_power(&r, 25));
    }

    #[test]
    fn serre_derivative_kills_eta_powers() {
        assert!(serre_derivative(&eta(30), &rat(1, 2)).unwrap().is_zero());
        for (r, k) in [(rat(1, 5), rat(1, 10)), (rat(4, 5), rat(2, 5)), (rat(2, 7), rat(1, 7))] {
            assert!(serre_derivative(&eta_power(&r, 30), &k).unwrap().is_zero());
        }
    }

    #[test]
    fn serre_derivative_leading_coefficient() {
        let f = PuiseuxSeries::new(rat(1, 3), vec![int(1), int(4), int(-2)]);
        let k = rat(5, 2);
        let d = serre_derivative(&f, &k).unwrap();
        assert_eq!(d.coeff(0), Some(&(rat(1, 3) - &k / int(12))));
        assert_eq!(d.weight(), Some(&rat(9, 2)));
        assert!(serre_derivative(&PuiseuxSeries::one(6), &int(0)).unwrap().is_zero());
    }

    #[test]
    fn theta_of_e2() {
        // term-by-term: n · 2σ_1(n) at n = 1
        assert_eq!(eisenstein(2, 3).unwrap().theta().coeff(1), Some(&int(2)));
    }

    #[test]
    fn eta_log_derivative() {
        // θη = -(1/2) E_2 η from the logarithmic derivative of the Euler product
        let n = 40;
        let e = eta(n);
        let lhs = e.theta();
        let rhs = eisenstein(2, n).unwrap().mul(&e).scale(&rat(-1, 2));
        assert!(lhs.agrees_with(&rhs).unwrap());
    }

    #[test]
    fn serre_derivative_is_a_derivation() {
        let n = 20;
        let f = eisenstein(4, n).unwrap();
        let g = eta_power(&rat(3, 5), n);
        let (k, l) = (int(4), rat(3, 10));
        let lhs = serre_derivative(&f.mul(&g), &(&k + &l)).unwrap();
        let rhs = serre_derivative(&f, &k)
            .unwrap()
            .mul(&g)
            .add(&f.mul(&serre_derivative(&g, &l).unwrap()))
            .unwrap();
        assert!(lhs.agrees_with(&rhs).unwrap());
    }
}
