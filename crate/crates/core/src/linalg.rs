//! Exact dense linear algebra over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Vector = Vec<BigRational>;

/// Incrementally maintained row space in fully reduced echelon form.
///
/// Every stored row has a unit pivot and zeros in the pivot columns of all
/// other rows, so reducing a vector is a single pass.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    dim: usize,
    rows: Vec<(usize, Vector)>,
}

impl RowSpace {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(p, _)| *p)
    }

    /// Remainder of `v` modulo the span.
    pub fn reduce(&self, v: &[BigRational]) -> Vector {
        assert_eq!(v.len(), self.dim, "vector length does not match row space");
        let mut out = v.to_vec();
        for (p, row) in &self.rows {
            if out[*p].is_zero() {
                continue;
            }
            let f = out[*p].clone();
            axpy(&mut out, &(-f), row);
        }
        out
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[BigRational]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = BigRational::one() / &r[p];
        for x in r.iter_mut().skip(p) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                axpy(row, &(-f), &r);
            }
        }
        self.rows.push((p, r));
        true
    }
}

/// `y += a * x`
pub fn axpy(y: &mut [BigRational], a: &BigRational, x: &[BigRational]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vector]) -> (Vec<Vector>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vector> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(sel) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, sel);
        let inv = BigRational::one() / &m[r][c];
        for x in m[r].iter_mut().skip(c) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -row[c].clone();
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vector]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    rref(rows).1.len()
}

/// Basis of `{x : A x = 0}` where `A` is given by rows of length `ncols`.
pub fn kernel(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    if rows.is_empty() {
        return (0..ncols)
            .map(|j| {
                let mut e = vec![BigRational::zero(); ncols];
                e[j] = BigRational::one();
                e
            })
            .collect();
    }
    let (m, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); ncols];
            x[f] = BigRational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

/// One solution of `sum_j x_j columns[j] = rhs`, if any.
pub fn solve(columns: &[Vector], rhs: &[BigRational]) -> Option<Vector> {
    let n = columns.len();
    let dim = rhs.len();
    let rows: Vec<Vector> = (0..dim)
        .map(|i| {
            let mut row: Vector = columns.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    if rows.is_empty() {
        return Some(vec![BigRational::zero(); n]);
    }
    let (m, pivots) = rref(&rows);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (row, &p) in m.iter().zip(&pivots) {
        x[p] = row[n].clone();
    }
    Some(x)
}

/// Matrix-vector product for row-major `a`.
pub fn mat_vec(a: &[Vector], x: &[BigRational]) -> Vector {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .filter(|(r, v)| !r.is_zero() && !v.is_zero())
                .fold(BigRational::zero(), |acc, (r, v)| acc + r * v)
        })
        .collect()
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(a: &[Vector]) -> Option<Vec<Vector>> {
    let n = a.len();
    let rows: Vec<Vector> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    let (m, pivots) = rref(&rows);
    if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Matrix product of row-major matrices.
pub fn mat_mul(a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![BigRational::zero(); cols];
            for (x, brow) in row.iter().zip(b) {
                if !x.is_zero() {
                    axpy(&mut out, x, brow);
                }
            }
            out
        })
        .collect()
}

/// Exact determinant by elimination.
pub fn determinant(a: &[Vector]) -> BigRational {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(sel) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if sel != c {
            m.swap(sel, c);
            det = -det;
        }
        det *= &m[c][c];
        let pivot_row = m[c].clone();
        for row in m.iter_mut().skip(c + 1) {
            if !row[c].is_zero() {
                let f = -(&row[c] / &pivot_row[c]);
                axpy(row, &f, &pivot_row);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn inverse_round_trip() {
        let a = vec![v(&[2, 1, 0]), v(&[1, 3, 1]), v(&[0, 1, 4])];
        let inv = inverse(&a).unwrap();
        let id = mat_mul(&a, &inv);
        for (i, row) in id.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(*x, int(i64::from(i == j)));
            }
        }
        assert!(inverse(&[v(&[1, 2]), v(&[2, 4])]).is_none());
    }

    #[test]
    fn rowspace_reduces_members_to_zero() {
        let mut s = RowSpace::new(3);
        assert!(s.insert(&v(&[1, 2, 3])));
        assert!(s.insert(&v(&[0, 1, 1])));
        assert!(!s.insert(&v(&[2, 5, 7])));
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&v(&[1, 3, 4])));
        assert!(!s.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn kernel_and_rank() {
        let a = vec![v(&[1, 2, 3]), v(&[2, 4, 6])];
        assert_eq!(rank(&a), 1);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(mat_vec(&a, x).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let cols = vec![v(&[1, 0]), v(&[1, 1])];
        let x = solve(&cols, &v(&[3, 1])).unwrap();
        assert_eq!(x, v(&[2, 1]));
        let cols = vec![v(&[1, 1])];
        assert!(solve(&cols, &v(&[1, 0])).is_none());
    }

    #[test]
    fn det() {
        assert_eq!(determinant(&[v(&[2, 1]), v(&[1, 3])]), int(5));
        assert_eq!(determinant(&[v(&[0, 1]), v(&[1, 0])]), int(-1));
    }
}
