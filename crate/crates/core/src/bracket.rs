//! Square-bracket modes.
//!
//! For a homogeneous `v` of weight `w`, `Y[v, z] = Y(v, e^z - 1) e^{zw}`, so
//! `v[m] = Res_z Y(v, z) log(1+z)^m (1+z)^{w-1} = sum_i a_i v(m+i)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::powser;
use crate::rational::{int, rat};
use crate::virasoro::{VermaModule, VermaVector};

/// `v[mode] = sum_i coeffs[i] v(mode + i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketCoeffTable {
    pub weight: BigRational,
    pub mode: i64,
    pub coeffs: Vec<BigRational>,
}

impl BracketCoeffTable {
    pub fn depth(&self) -> usize {
        self.coeffs.len() - 1
    }
}

type CacheKey = (BigRational, i64, usize);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<BracketCoeffTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<BracketCoeffTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients `a_0..=a_depth`, `a_i = [z^i] (log(1+z)/z)^m (1+z)^{w-1}`.
pub fn bracket_coeffs(w: &BigRational, m: i64, depth: usize) -> Arc<BracketCoeffTable> {
    let key = (w.clone(), m, depth);
    if let Some(t) = cache().lock().expect("bracket cache poisoned").get(&key) {
        return Arc::clone(t);
    }
    let n = depth + 1;
    let g = powser::pow(&powser::log1p_over_z(n), &int(m), n);
    let coeffs = powser::mul(&g, &powser::binomial_series(&(w - int(1)), n), n);
    let t = Arc::new(BracketCoeffTable {
        weight: w.clone(),
        mode: m,
        coeffs,
    });
    cache()
        .lock()
        .expect("bracket cache poisoned")
        .insert(key, Arc::clone(&t));
    t
}

/// `v(n) = sum_i b_i v[n + i]`, by triangular inversion of [`bracket_coeffs`].
pub fn inverse_bracket_coeffs(w: &BigRational, n: i64, depth: usize) -> BracketCoeffTable {
    // remaining[j] is the pending coefficient of v(n + j)
    let mut remaining = vec![BigRational::zero(); depth + 1];
    remaining[0] = BigRational::one();
    let mut coeffs = Vec::with_capacity(depth + 1);
    for j in 0..=depth {
        let b = remaining[j].clone();
        if !b.is_zero() {
            let row = bracket_coeffs(w, n + j as i64, depth - j);
            for (i, a) in row.coeffs.iter().enumerate() {
                remaining[j + i] -= &b * a;
            }
        }
        coeffs.push(b);
    }
    BracketCoeffTable {
        weight: w.clone(),
        mode: n,
        coeffs,
    }
}

/// `L[n]` in round modes: `L[n] = sum_i coeffs[i] L(n + i) + central * c`.
///
/// Follows from `L[n] = ω̃[n+1]` with `ω̃ = ω - c/24`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareLExpansion {
    pub mode: i64,
    pub coeffs: Vec<BigRational>,
    pub central: BigRational,
}

pub fn square_l_in_round_modes(n: i64, depth: usize) -> SquareLExpansion {
    let table = bracket_coeffs(&int(2), n + 1, depth);
    SquareLExpansion {
        mode: n,
        coeffs: table.coeffs.clone(),
        central: if n == -2 { rat(-1, 24) } else { BigRational::zero() },
    }
}

/// A module in square-bracket modes.
///
/// `(V, Y[ , ])` is isomorphic to `(V, Y( , ))` as a vertex operator algebra,
/// so square-bracket PBW vectors `L[-λ]u` obey exactly the structure
/// constants of the round module; this type reuses the round engine.
#[derive(Debug)]
pub struct SquareBracketModule {
    inner: VermaModule,
}

impl SquareBracketModule {
    pub fn new(c: BigRational, h: BigRational) -> Self {
        Self {
            inner: VermaModule::new(c, h),
        }
    }

    pub fn vacuum(c: BigRational) -> Self {
        Self {
            inner: VermaModule::vacuum(c),
        }
    }

    pub fn from_round(inner: VermaModule) -> Self {
        Self { inner }
    }

    pub fn engine(&self) -> &VermaModule {
        &self.inner
    }

    /// `L[n] v`.
    pub fn l_action(&self, n: i64, v: &VermaVector) -> VermaVector {
        self.inner.apply(n, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::binomial;

    #[test]
    fn mode_zero_is_binomial() {
        let w = rat(7, 3);
        let t = bracket_coeffs(&w, 0, 6);
        for (i, a) in t.coeffs.iter().enumerate() {
            assert_eq!(*a, binomial(&(&w - int(1)), i));
        }
    }

    #[test]
    fn l_zero_square() {
        let e = square_l_in_round_modes(0, 4);
        assert_eq!(e.coeffs[0], int(1));
        for k in 1..=4i64 {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            assert_eq!(e.coeffs[k as usize], rat(sign, k * (k + 1)));
        }
    }

    #[test]
    fn unitriangular_and_round_trip() {
        for w in [rat(1, 2), int(1), int(2), int(3)] {
            for m in -2..=3 {
                let fwd = bracket_coeffs(&w, m, 8);
                assert_eq!(fwd.coeffs[0], int(1));
                let inv = inverse_bracket_coeffs(&w, m, 8);
                // compose: v(m) = sum_j b_j v[m+j] = sum_j b_j sum_i a_i(m+j) v(m+j+i)
                let mut total = vec![BigRational::zero(); 9];
                for (j, b) in inv.coeffs.iter().enumerate() {
                    let a = bracket_coeffs(&w, m + j as i64, 8 - j);
                    for (i, x) in a.coeffs.iter().enumerate() {
                        total[i + j] += b * x;
                    }
                }
                assert_eq!(total[0], int(1));
                assert!(total[1..].iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn inverse_matches_exponential_substitution() {
        // b_i = [z^{n+i}] (e^z - 1)^n e^{(1-w)z}
        let (w, n, d) = (rat(5, 2), 2i64, 6usize);
        let len = d + 1;
        let base = powser::pow(&powser::expm1_over_z(len), &int(n), len);
        let expected = powser::mul(&base, &powser::exp_linear(&(int(1) - &w), len), len);
        assert_eq!(inverse_bracket_coeffs(&w, n, d).coeffs, expected);
    }

    #[test]
    fn square_ising_singular_vector() {
        let m = SquareBracketModule::new(rat(1, 2), rat(1, 2));
        let s = crate::virasoro::singular_vectors_in(m.engine(), 2);
        assert_eq!(s.len(), 1);
        let hw = VermaVector::basis(crate::virasoro::Partition::empty());
        let v = m.l_action(1, &m.l_action(-1, &hw));
        assert_eq!(v, hw.scale(&int(1)));
    }
}
