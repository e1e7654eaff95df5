//! Vertex operator modes `a_(n)` for vacuum descendants `a = L(-λ)1`.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;

use super::partition::Partition;
use super::verma::{VermaModule, VermaVector};
use crate::rational::binomial_int;

impl VermaModule {
    /// `a_(n) x` for `a = L(-λ_1)...L(-λ_k)1` with all parts `≥ 2`.
    ///
    /// Uses the iterate formula for `(ω_(p) a')_(n)`, `p = 1 - λ_1`, with
    /// `ω_(m) = L(m - 1)`; both sums are finite on a fixed level.
    pub fn vertex_mode_basis(&self, a: &Partition, n: i64, x: &Partition) -> Arc<VermaVector> {
        assert!(!a.contains_part(1), "vertex modes need a vacuum descendant without L(-1)");
        let key = (a.clone(), n, x.clone());
        if let Some(v) = self.modes.lock().expect("mode cache poisoned").get(&key) {
            return Arc::clone(v);
        }
        let v = Arc::new(self.compute_vertex_mode(a, n, x));
        self.modes
            .lock()
            .expect("mode cache poisoned")
            .insert(key, Arc::clone(&v));
        v
    }

    fn compute_vertex_mode(&self, a: &Partition, n: i64, x: &Partition) -> VermaVector {
        let lx = x.level() as i64;
        let target = lx + a.level() as i64 - n - 1;
        if target < 0 {
            return VermaVector::zero(0);
        }
        let Some(k) = a.first() else {
            return if n == -1 {
                VermaVector::basis(x.clone())
            } else {
                VermaVector::zero(target as usize)
            };
        };
        let rest = a.tail();
        let wt_rest = rest.level() as i64;
        let p = 1 - i64::from(k);
        let xv = VermaVector::basis(x.clone());
        let mut out = VermaVector::zero(target as usize);
        // sum_j (-1)^j C(p, j) L(p - j - 1) a'_(n+j) x
        let mut j = 0i64;
        while n + j < lx + wt_rest {
            let coeff = sign(j) * binomial_int(p, j as usize);
            let inner = self.vertex_mode(&rest, n + j, &xv);
            out.add_scaled(&coeff, &self.apply(p - j - 1, &inner));
            j += 1;
        }
        // - (-1)^p sum_j (-1)^j C(p, j) a'_(p+n-j) L(j - 1) x
        for j in 0..=lx + 1 {
            let coeff = -sign(p) * sign(j) * binomial_int(p, j as usize);
            let lowered = self.apply(j - 1, &xv);
            if lowered.is_zero() {
                continue;
            }
            out.add_scaled(&coeff, &self.vertex_mode(&rest, p + n - j, &lowered));
        }
        out
    }

    /// `a_(n) x` extended linearly in `x`.
    pub fn vertex_mode(&self, a: &Partition, n: i64, x: &VermaVector) -> VermaVector {
        let target = (x.level() as i64 + a.level() as i64 - n - 1).max(0) as usize;
        let mut out = VermaVector::zero(target);
        for (p, c) in x.entries() {
            out.add_scaled(c, &self.vertex_mode_basis(a, n, p));
        }
        out
    }

    /// `a_(n) x` extended linearly in both `a` and `x`.
    pub fn vertex_mode_vec(&self, a: &VermaVector, n: i64, x: &VermaVector) -> VermaVector {
        let target = (x.level() as i64 + a.level() as i64 - n - 1).max(0) as usize;
        let mut out = VermaVector::zero(target);
        for (p, c) in a.entries() {
            out.add_scaled(c, &self.vertex_mode(p, n, x));
        }
        out
    }
}

fn sign(j: i64) -> BigRational {
    if j.rem_euclid(2) == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn omega_modes_are_virasoro_modes() {
        let m = VermaModule::new(rat(7, 10), rat(3, 80));
        for x in [p(&[]), p(&[1]), p(&[2, 1]), p(&[3, 1, 1])] {
            let xv = VermaVector::basis(x.clone());
            for n in -3..=4 {
                assert_eq!(*m.vertex_mode_basis(&p(&[2]), n, &x), m.apply(n - 1, &xv));
            }
        }
    }

    #[test]
    fn creation_property() {
        // a_(-1) 1 = a in the vacuum module
        let m = VermaModule::vacuum(rat(1, 2));
        for a in [p(&[2]), p(&[3]), p(&[2, 2]), p(&[4, 2]), p(&[3, 3])] {
            let v = m.vertex_mode_basis(&a, -1, &Partition::empty());
            assert_eq!(*v, VermaVector::basis(a.clone()));
            for n in 0..4 {
                assert!(m.vertex_mode_basis(&a, n, &Partition::empty()).is_zero());
            }
        }
    }

    #[test]
    fn l_minus_one_derivative() {
        // (L(-1)a)_(n) = -n a_(n-1); L(-1)L(-2)1 = L(-3)1
        let m = VermaModule::new(rat(1, 2), rat(1, 16));
        for x in [p(&[]), p(&[1]), p(&[2]), p(&[1, 1])] {
            for n in -3..=3i64 {
                let lhs = m.vertex_mode_basis(&p(&[3]), n, &x);
                let rhs = m.vertex_mode_basis(&p(&[2]), n - 1, &x).scale(&int(-n));
                assert_eq!(*lhs, rhs);
            }
        }
    }

    #[test]
    fn commutator_with_virasoro() {
        // [L(m), a_(n)] = sum_i C(m+1, i) (L(i-1) a)_(m+n+1-i), here for a = L(-2)^2 1
        let vac = VermaModule::vacuum(rat(4, 5));
        let m_mod = VermaModule::new(rat(4, 5), rat(2, 5));
        let a = p(&[2, 2]);
        let x = VermaVector::basis(p(&[2, 1]));
        for mm in -1..=2i64 {
            for n in -2..=2i64 {
                let mut lhs = m_mod.apply(mm, &m_mod.vertex_mode(&a, n, &x));
                lhs.add_scaled(&int(-1), &m_mod.vertex_mode(&a, n, &m_mod.apply(mm, &x)));
                let mut rhs = VermaVector::zero(0);
                let av = VermaVector::basis(a.clone());
                for i in 0..=(mm + 1).max(0) as usize {
                    let b = vac.apply(i as i64 - 1, &av);
                    if b.is_zero() {
                        continue;
                    }
                    let term = m_mod.vertex_mode_vec(&b, mm + n + 1 - i as i64, &x);
                    rhs.add_scaled(&binomial_int(mm + 1, i), &term);
                }
                assert_eq!(lhs, rhs, "m={mm} n={n}");
            }
        }
    }
}
