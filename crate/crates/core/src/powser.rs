//! Truncated univariate power series as plain coefficient vectors
//! (`a[i]` is the coefficient of `z^i`).

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::rational::{binomial, factorial, int};

pub(crate) fn mul(a: &[BigRational], b: &[BigRational], n: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `g^alpha` for `g[0] = 1`.
pub(crate) fn pow(g: &[BigRational], alpha: &BigRational, n: usize) -> Vec<BigRational> {
    assert!(g.first().is_some_and(One::is_one), "pow needs unit constant term");
    let mut f = vec![BigRational::zero(); n];
    if n == 0 {
        return f;
    }
    f[0] = BigRational::one();
    for k in 1..n {
        let mut s = BigRational::zero();
        for j in 1..=k.min(g.len() - 1) {
            let w = (alpha + int(1)) * int(j as i64) - int(k as i64);
            s += w * &g[j] * &f[k - j];
        }
        f[k] = s / int(k as i64);
    }
    f
}

/// `log(1 + z) / z`.
pub(crate) fn log1p_over_z(n: usize) -> Vec<BigRational> {
    (0..n)
        .map(|i| {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            BigRational::new(sign.into(), (i as i64 + 1).into())
        })
        .collect()
}

/// `(1 + z)^alpha`.
pub(crate) fn binomial_series(alpha: &BigRational, n: usize) -> Vec<BigRational> {
    (0..n).map(|i| binomial(alpha, i)).collect()
}

/// `exp(a z)`.
pub(crate) fn exp_linear(a: &BigRational, n: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n);
    let mut p = BigRational::one();
    for i in 0..n {
        out.push(&p / BigRational::from_integer(factorial(i)));
        p *= a;
    }
    out
}

/// `(exp(z) - 1) / z`.
pub(crate) fn expm1_over_z(n: usize) -> Vec<BigRational> {
    (0..n)
        .map(|i| BigRational::new(1.into(), factorial(i + 1)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn pow_inverts() {
        let g = log1p_over_z(8);
        let a = pow(&g, &int(3), 8);
        let b = pow(&g, &int(-3), 8);
        let one = mul(&a, &b, 8);
        assert_eq!(one[0], int(1));
        assert!(one[1..].iter().all(Zero::is_zero));
    }

    #[test]
    fn half_power_of_binomial() {
        let g = binomial_series(&int(1), 6);
        assert_eq!(pow(&g, &rat(1, 2), 6), binomial_series(&rat(1, 2), 6));
    }
}
