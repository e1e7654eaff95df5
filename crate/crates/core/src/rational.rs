//! Small helpers over [`BigRational`]: construction, generalized binomials,
//! Bernoulli numbers, divisor sums and the `num/den` text form.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Generalized binomial coefficient `x(x-1)...(x-k+1)/k!`.
pub fn binomial(x: &BigRational, k: usize) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..k {
        acc = acc * (x - int(i as i64)) / int(i as i64 + 1);
    }
    acc
}

pub fn binomial_int(n: i64, k: usize) -> BigRational {
    binomial(&int(n), k)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

static BERNOULLI: Mutex<Vec<BigRational>> = Mutex::new(Vec::new());

/// Bernoulli number `B_n` with the convention `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> BigRational {
    let mut cache = BERNOULLI.lock().expect("bernoulli cache poisoned");
    while cache.len() <= n {
        let m = cache.len();
        if m == 0 {
            cache.push(BigRational::one());
            continue;
        }
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut s = BigRational::zero();
        for (j, b) in cache.iter().enumerate() {
            s += binomial_int(m as i64 + 1, j) * b;
        }
        cache.push(-s / int(m as i64 + 1));
    }
    cache[n].clone()
}

/// `sigma_k(n)` by naive divisor enumeration.
pub fn divisor_sum(k: u32, n: u64) -> BigInt {
    let mut s = BigInt::zero();
    for d in 1..=n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(k);
        }
    }
    s
}

pub fn is_integer(x: &BigRational) -> bool {
    x.denom().is_one()
}

/// Reduce `x` into the half-open interval `(lo, lo + period]`.
pub fn reduce_into(x: &BigRational, lo: &BigRational, period: &BigRational) -> BigRational {
    let shifted = (x - lo) / period;
    let k = shifted.ceil() - BigRational::one();
    x - k * period
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // fall back for huge numerators/denominators
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// `num/den` form, used for every serialized rational.
pub fn fmt_rat(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or a bare integer.
pub fn parse_rat(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

/// All rational roots of a polynomial given by coefficients (constant term first).
/// Multiplicities are reported by repetition.
pub fn rational_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    let mut poly: Vec<BigRational> = coeffs.to_vec();
    while poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
    let mut roots = Vec::new();
    // roots at zero
    while poly.len() > 1 && poly[0].is_zero() {
        roots.push(BigRational::zero());
        poly.remove(0);
    }
    if poly.len() <= 1 {
        return roots;
    }
    // clear denominators
    let lcm = poly
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = poly
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let lead = ints.last().unwrap().abs();
    let constant = ints[0].abs();
    let ps = divisors(&constant);
    let qs = divisors(&lead);
    let mut candidates = Vec::new();
    for p in &ps {
        for q in &qs {
            let r = BigRational::new(p.clone(), q.clone());
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates.sort();
    candidates.dedup();
    for r in candidates {
        loop {
            if poly.len() <= 1 {
                break;
            }
            let (quot, rem) = synthetic_division(&poly, &r);
            if rem.is_zero() {
                roots.push(r.clone());
                poly = quot;
            } else {
                break;
            }
        }
    }
    roots.sort();
    roots
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.to_u64().expect("coefficient too large for root search");
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out
}

/// Divides by `(x - r)`; coefficients constant term first.
pub fn synthetic_division(poly: &[BigRational], r: &BigRational) -> (Vec<BigRational>, BigRational) {
    let n = poly.len();
    let mut quot = vec![BigRational::zero(); n - 1];
    let mut carry = BigRational::zero();
    for i in (0..n).rev() {
        let v = &poly[i] + &carry * r;
        if i == 0 {
            return (quot, v);
        }
        quot[i - 1] = v.clone();
        carry = v;
    }
    unreachable!()
}

/// Evaluate a polynomial (constant term first).
pub fn eval_poly(poly: &[BigRational], x: &BigRational) -> BigRational {
    poly.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}
