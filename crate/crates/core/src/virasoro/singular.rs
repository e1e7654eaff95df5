use num_rational::BigRational;
use num_traits::Zero;

use super::verma::{VermaModule, VermaVector};
use crate::linalg::{self, Vector};

/// Vectors at `level` annihilated by `L(1)` and `L(2)` (hence by all
/// `L(n)`, `n > 0`), one per kernel dimension.
///
/// Each vector is scaled so that its first nonzero coefficient in basis
/// order is 1; the basis starts with the pure `L(-level)` term.
pub fn singular_vectors_in(module: &VermaModule, level: usize) -> Vec<VermaVector> {
    if level == 0 {
        return Vec::new();
    }
    let basis = module.basis(level);
    let mut rows: Vec<Vector> = module.lowering_matrix(1, level);
    if level >= 2 {
        rows.extend(module.lowering_matrix(2, level));
    }
    let kernel = if rows.is_empty() {
        linalg::kernel(&[vec![BigRational::zero(); basis.len()]], basis.len())
    } else {
        linalg::kernel(&rows, basis.len())
    };
    kernel
        .into_iter()
        .map(|k| {
            let lead = k.iter().find(|x| !x.is_zero()).cloned().expect("nonzero kernel vector");
            let scaled: Vector = k.iter().map(|x| x / &lead).collect();
            VermaVector::from_dense(level, &basis, &scaled)
        })
        .collect()
}

/// Singular vectors of the Verma module `M(c, h)` at `level`.
pub fn singular_vectors(c: &BigRational, h: &BigRational, level: usize) -> Vec<VermaVector> {
    singular_vectors_in(&VermaModule::new(c.clone(), h.clone()), level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::virasoro::Partition;

    #[test]
    fn ising_energy() {
        let s = singular_vectors(&rat(1, 2), &rat(1, 2), 2);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].coeff(&Partition::new(vec![2])), rat(1, 1));
        assert_eq!(s[0].coeff(&Partition::new(vec![1, 1])), rat(-3, 4));
    }

    #[test]
    fn generic_has_none() {
        assert!(singular_vectors(&rat(1, 3), &rat(2, 9), 2).is_empty());
    }

    #[test]
    fn tricritical_level_two() {
        assert_eq!(singular_vectors(&rat(7, 10), &rat(1, 10), 2).len(), 1);
    }

    #[test]
    fn annihilated_by_positive_modes() {
        let m = VermaModule::new(rat(7, 10), rat(3, 80));
        for level in 1..=6 {
            for s in singular_vectors_in(&m, level) {
                for n in 1..=4 {
                    assert!(m.apply(n, &s).is_zero());
                }
            }
        }
    }

    #[test]
    fn ising_vacuum_level_six() {
        let m = VermaModule::vacuum(rat(1, 2));
        assert!(singular_vectors_in(&m, 4).is_empty());
        assert_eq!(singular_vectors_in(&m, 6).len(), 1);
    }
}
