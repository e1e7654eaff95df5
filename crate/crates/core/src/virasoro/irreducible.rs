use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use num_traits::Zero;

use super::partition::Partition;
use super::verma::{VermaModule, VermaVector};
use crate::linalg::{self, RowSpace, Vector};

/// One graded piece of an irreducible quotient: the chosen PBW labels and
/// the projection from Verma coordinates onto them.
#[derive(Clone, Debug)]
pub struct LevelData {
    pub level: usize,
    /// Surviving PBW labels, a subset of the Verma basis in basis order.
    pub basis: Vec<Partition>,
    /// `|basis| x |verma basis|` matrix sending Verma coordinates to quotient
    /// coordinates.
    pub projection: Vec<Vector>,
    verma_basis: Vec<Partition>,
}

impl LevelData {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.basis.iter().position(|b| b == p)
    }
}

/// `L(c, h)` realised as the quotient of a Verma module by the radical of its
/// contravariant form.
#[derive(Debug)]
pub struct IrreducibleModule {
    verma: VermaModule,
    levels: Mutex<HashMap<usize, Arc<LevelData>>>,
}

impl IrreducibleModule {
    pub fn new(c: BigRational, h: BigRational) -> Self {
        let verma = if h.is_zero() {
            VermaModule::vacuum(c)
        } else {
            VermaModule::new(c, h)
        };
        Self::from_verma(verma)
    }

    pub fn from_verma(verma: VermaModule) -> Self {
        Self {
            verma,
            levels: Mutex::new(HashMap::new()),
        }
    }

    pub fn verma(&self) -> &VermaModule {
        &self.verma
    }

    pub fn c(&self) -> &BigRational {
        self.verma.c()
    }

    pub fn h(&self) -> &BigRational {
        self.verma.h()
    }

    pub fn level(&self, level: usize) -> Arc<LevelData> {
        if let Some(d) = self.levels.lock().expect("level cache poisoned").get(&level) {
            return Arc::clone(d);
        }
        let gram = self.verma.gram(level);
        let mut space = RowSpace::new(gram.basis.len());
        let mut chosen = Vec::new();
        for (i, row) in gram.matrix.iter().enumerate() {
            if space.insert(row) {
                chosen.push(i);
            }
        }
        let g_bb: Vec<Vector> = chosen
            .iter()
            .map(|&i| chosen.iter().map(|&j| gram.matrix[i][j].clone()).collect())
            .collect();
        let g_ball: Vec<Vector> = chosen.iter().map(|&i| gram.matrix[i].clone()).collect();
        let inv = linalg::inverse(&g_bb).expect("greedy rows give an invertible block");
        let data = Arc::new(LevelData {
            level,
            basis: chosen.iter().map(|&i| gram.basis[i].clone()).collect(),
            projection: linalg::mat_mul(&inv, &g_ball),
            verma_basis: gram.basis.clone(),
        });
        self.levels
            .lock()
            .expect("level cache poisoned")
            .insert(level, Arc::clone(&data));
        data
    }

    pub fn dim(&self, level: usize) -> usize {
        self.level(level).dim()
    }

    pub fn graded_dims(&self, max_level: usize) -> Vec<usize> {
        (0..=max_level).map(|n| self.dim(n)).collect()
    }

    /// Quotient coordinates of a Verma vector.
    pub fn project(&self, v: &VermaVector) -> Vector {
        let data = self.level(v.level());
        if v.is_zero() {
            return vec![BigRational::zero(); data.dim()];
        }
        linalg::mat_vec(&data.projection, &v.to_dense(&data.verma_basis))
    }

    /// The Verma vector `sum_i x_i L(-basis_i) v` representing quotient
    /// coordinates `x`.
    pub fn lift(&self, level: usize, x: &[BigRational]) -> VermaVector {
        let data = self.level(level);
        VermaVector::from_dense(level, &data.basis, x)
    }

    /// `L(n)` on quotient coordinates at `level`; `None` below level zero.
    pub fn apply(&self, n: i64, level: usize, x: &[BigRational]) -> Option<Vector> {
        let target = level as i64 - n;
        if target < 0 {
            return None;
        }
        let v = self.verma.apply(n, &self.lift(level, x));
        if v.is_zero() {
            return Some(vec![BigRational::zero(); self.dim(target as usize)]);
        }
        Some(self.project(&v))
    }

    pub fn is_zero(&self, v: &VermaVector) -> bool {
        self.project(v).iter().all(Zero::is_zero)
    }
}

/// `dim L(c, h)_{h+n}` for `n = 0..=max_level`.
pub fn graded_dims(c: &BigRational, h: &BigRational, max_level: usize) -> Vec<usize> {
    IrreducibleModule::new(c.clone(), h.clone()).graded_dims(max_level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn ising_vacuum_dims() {
        assert_eq!(graded_dims(&rat(1, 2), &rat(0, 1), 6), vec![1, 0, 1, 1, 2, 2, 3]);
    }

    #[test]
    fn generic_is_verma() {
        assert_eq!(graded_dims(&rat(1, 3), &rat(2, 9), 6), vec![1, 1, 2, 3, 5, 7, 11]);
    }

    #[test]
    fn ising_sigma() {
        let d = graded_dims(&rat(1, 2), &rat(1, 16), 4);
        assert_eq!(d[1], 1);
        // character of the Ising spin field: 1 + q + q^2 + 2q^3 + 2q^4
        assert_eq!(d, vec![1, 1, 1, 2, 2]);
    }

    #[test]
    fn projection_kills_singular_vector() {
        let m = IrreducibleModule::new(rat(1, 2), rat(1, 2));
        let s = VermaVector::from_terms(
            2,
            [
                (Partition::new(vec![2]), rat(1, 1)),
                (Partition::new(vec![1, 1]), rat(-3, 4)),
            ],
        );
        assert!(m.is_zero(&s));
        assert_eq!(m.dim(2), 1);
    }
}
