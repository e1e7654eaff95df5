use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::partition::{partitions, Partition};
use crate::linalg::{self, Vector};
use crate::rational::{fmt_rat, int, rat};

/// A vector of a Verma module: PBW labels with nonzero rational
/// coefficients. Most vectors are homogeneous; `level` is the top level.
#[derive(Clone, Debug, Default)]
pub struct VermaVector {
    level: usize,
    entries: BTreeMap<Partition, BigRational>,
}

// Zero vectors compare equal regardless of their nominal level.
impl PartialEq for VermaVector {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for VermaVector {}

impl VermaVector {
    pub fn zero(level: usize) -> Self {
        Self {
            level,
            entries: BTreeMap::new(),
        }
    }

    pub fn basis(p: Partition) -> Self {
        let level = p.level();
        let mut entries = BTreeMap::new();
        entries.insert(p, BigRational::one());
        Self { level, entries }
    }

    pub fn from_terms(level: usize, terms: impl IntoIterator<Item = (Partition, BigRational)>) -> Self {
        let mut v = Self::zero(level);
        for (p, c) in terms {
            v.add_term(p, c);
        }
        v
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn entries(&self) -> &BTreeMap<Partition, BigRational> {
        &self.entries
    }

    pub fn coeff(&self, p: &Partition) -> BigRational {
        self.entries.get(p).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.entries.keys().all(|p| p.level() == self.level)
    }

    pub fn add_term(&mut self, p: Partition, c: BigRational) {
        if c.is_zero() {
            return;
        }
        self.level = self.level.max(p.level());
        match self.entries.entry(p) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &BigRational, other: &VermaVector) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        if self.is_zero() {
            self.level = other.level;
        }
        for (p, x) in &other.entries {
            self.add_term(p.clone(), c * x);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.level);
        out.add_scaled(c, self);
        out
    }

    /// Dense coordinates in the given basis.
    pub fn to_dense(&self, basis: &[Partition]) -> Vector {
        basis.iter().map(|p| self.coeff(p)).collect()
    }

    pub fn from_dense(level: usize, basis: &[Partition], x: &[BigRational]) -> Self {
        Self::from_terms(level, basis.iter().cloned().zip(x.iter().cloned()))
    }
}

impl fmt::Display for VermaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in &self.entries {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}) {}", fmt_rat(c), p)?;
        }
        Ok(())
    }
}

/// The Verma module `M(c, h)`, or for the vacuum variant the quotient
/// `M(c, 0) / ⟨L(-1)v⟩`, whose PBW basis uses only parts `≥ 2`.
///
/// Mode actions and Gram matrices are memoized; the caches are shared
/// behind mutexes so a module can be used from several threads.
pub struct VermaModule {
    c: BigRational,
    h: BigRational,
    vacuum: bool,
    action: Mutex<HashMap<(i64, Partition), Arc<VermaVector>>>,
    grams: Mutex<HashMap<usize, Arc<GramMatrix>>>,
    pub(super) modes: Mutex<HashMap<(Partition, i64, Partition), Arc<VermaVector>>>,
}

impl fmt::Debug for VermaModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VermaModule")
            .field("c", &fmt_rat(&self.c))
            .field("h", &fmt_rat(&self.h))
            .field("vacuum", &self.vacuum)
            .finish()
    }
}

/// Shapovalov form on one level, in the basis order of [`VermaModule::basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub level: usize,
    pub basis: Vec<Partition>,
    pub matrix: Vec<Vector>,
}

impl GramMatrix {
    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix)
    }

    pub fn determinant(&self) -> BigRational {
        linalg::determinant(&self.matrix)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.matrix.len();
        (0..n).all(|i| (0..i).all(|j| self.matrix[i][j] == self.matrix[j][i]))
    }
}

impl VermaModule {
    pub fn new(c: BigRational, h: BigRational) -> Self {
        Self {
            c,
            h,
            vacuum: false,
            action: Mutex::new(HashMap::new()),
            grams: Mutex::new(HashMap::new()),
            modes: Mutex::new(HashMap::new()),
        }
    }

    /// `M(c, 0)/⟨L(-1)1⟩`, the universal Virasoro vertex algebra.
    pub fn vacuum(c: BigRational) -> Self {
        Self {
            vacuum: true,
            ..Self::new(c, BigRational::zero())
        }
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn h(&self) -> &BigRational {
        &self.h
    }

    pub fn is_vacuum(&self) -> bool {
        self.vacuum
    }

    pub fn basis(&self, level: usize) -> Vec<Partition> {
        partitions(level, if self.vacuum { 2 } else { 1 })
    }

    fn admissible(&self, p: &Partition) -> bool {
        !(self.vacuum && p.contains_part(1))
    }

    /// `L(n)` applied to the PBW basis vector labelled by `p`.
    pub fn apply_basis(&self, n: i64, p: &Partition) -> Arc<VermaVector> {
        let key = (n, p.clone());
        if let Some(v) = self.action.lock().expect("action cache poisoned").get(&key) {
            return Arc::clone(v);
        }
        let v = Arc::new(self.compute_basis(n, p));
        self.action
            .lock()
            .expect("action cache poisoned")
            .insert(key, Arc::clone(&v));
        v
    }

    fn compute_basis(&self, n: i64, p: &Partition) -> VermaVector {
        let level = p.level();
        let target = level as i64 - n;
        if target < 0 || !self.admissible(p) {
            return VermaVector::zero(target.max(0) as usize);
        }
        let target = target as usize;
        if n == 0 {
            return VermaVector::basis(p.clone()).scale(&(&self.h + int(level as i64)));
        }
        match p.first() {
            None => {
                // highest-weight vector
                if n > 0 {
                    VermaVector::zero(target)
                } else {
                    let q = Partition::new(vec![(-n) as u32]);
                    if self.admissible(&q) {
                        VermaVector::basis(q)
                    } else {
                        VermaVector::zero(target)
                    }
                }
            }
            Some(k) if n < 0 && (-n) as u32 >= k => {
                let q = p.prepend((-n) as u32);
                if self.admissible(&q) {
                    VermaVector::basis(q)
                } else {
                    VermaVector::zero(target)
                }
            }
            Some(k) => {
                // L(n) L(-k) rest = L(-k) L(n) rest + (n + k) L(n - k) rest + central
                let k = k as i64;
                let rest = p.tail();
                let mut out = VermaVector::zero(target);
                let inner = self.apply_basis(n, &rest);
                out.add_scaled(&BigRational::one(), &self.apply(-k, &inner));
                if n + k != 0 {
                    out.add_scaled(&int(n + k), &self.apply_basis(n - k, &rest));
                }
                if n == k {
                    let central = &self.c * rat(n * n * n - n, 12);
                    out.add_scaled(&central, &VermaVector::basis(rest));
                }
                out
            }
        }
    }

    /// `L(n) v`.
    pub fn apply(&self, n: i64, v: &VermaVector) -> VermaVector {
        let target = (v.level() as i64 - n).max(0) as usize;
        let mut out = VermaVector::zero(target);
        for (p, c) in v.entries() {
            out.add_scaled(c, &self.apply_basis(n, p));
        }
        out
    }

    /// Applies `L(n_1) ... L(n_k)` (rightmost first).
    pub fn apply_word(&self, word: &[i64], v: &VermaVector) -> VermaVector {
        word.iter().rev().fold(v.clone(), |acc, &n| self.apply(n, &acc))
    }

    /// Gram matrix of the contravariant form, `⟨v, v⟩ = 1`, `L(n)† = L(-n)`.
    pub fn gram(&self, level: usize) -> Arc<GramMatrix> {
        if let Some(g) = self.grams.lock().expect("gram cache poisoned").get(&level) {
            return Arc::clone(g);
        }
        let basis = self.basis(level);
        let mut matrix = vec![vec![BigRational::zero(); basis.len()]; basis.len()];
        if level == 0 {
            matrix[0][0] = BigRational::one();
        } else {
            for (j, q) in basis.iter().enumerate() {
                for (i, p) in basis.iter().enumerate().take(j + 1) {
                    let k = p.first().expect("nonempty at positive level");
                    // ⟨L(-k) rest, q⟩ = ⟨rest, L(k) q⟩
                    let lowered = self.apply_basis(k as i64, q);
                    let lower = self.gram(level - k as usize);
                    let rest = p.tail();
                    let ri = lower
                        .basis
                        .iter()
                        .position(|b| *b == rest)
                        .expect("tail is a basis element");
                    let mut s = BigRational::zero();
                    for (b, x) in lowered.entries() {
                        let bj = lower.basis.iter().position(|t| t == b).expect("basis element");
                        s += x * &lower.matrix[ri][bj];
                    }
                    matrix[i][j] = s.clone();
                    matrix[j][i] = s;
                }
            }
        }
        let g = Arc::new(GramMatrix {
            level,
            basis,
            matrix,
        });
        self.grams
            .lock()
            .expect("gram cache poisoned")
            .insert(level, Arc::clone(&g));
        g
    }

    /// Matrix of `L(n)` (`n > 0`) from `level` to `level - n`, rows indexed by
    /// the target basis.
    pub fn lowering_matrix(&self, n: i64, level: usize) -> Vec<Vector> {
        let source = self.basis(level);
        let target = self.basis(level.saturating_sub(n as usize));
        let cols: Vec<Vector> = source
            .iter()
            .map(|p| self.apply_basis(n, p).to_dense(&target))
            .collect();
        (0..target.len())
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn single_commutator() {
        let h = rat(3, 7);
        let m = VermaModule::new(rat(1, 2), h.clone());
        let v = m.apply_word(&[1, -1], &VermaVector::basis(Partition::empty()));
        assert_eq!(v, VermaVector::basis(Partition::empty()).scale(&(int(2) * h)));
    }

    #[test]
    fn central_term() {
        let (c, h) = (rat(7, 10), rat(1, 10));
        let m = VermaModule::new(c.clone(), h.clone());
        let v = m.apply_word(&[2, -2], &VermaVector::basis(Partition::empty()));
        let expected = int(4) * &h + c / int(2);
        assert_eq!(v.coeff(&Partition::empty()), expected);
    }

    #[test]
    fn l0_is_grading() {
        let h = rat(1, 16);
        let m = VermaModule::new(rat(1, 2), h.clone());
        let v = VermaVector::from_terms(4, [(p(&[3, 1]), int(2)), (p(&[2, 1, 1]), rat(-1, 3))]);
        assert_eq!(m.apply(0, &v), v.scale(&(h + int(4))));
    }

    #[test]
    fn level_two_gram() {
        let (c, h) = (rat(4, 5), rat(2, 5));
        let m = VermaModule::new(c.clone(), h.clone());
        let g = m.gram(2);
        assert_eq!(g.basis, vec![p(&[2]), p(&[1, 1])]);
        let four_h = int(4) * &h;
        assert_eq!(g.matrix[0][0], &four_h + &c / int(2));
        assert_eq!(g.matrix[0][1], int(6) * &h);
        assert_eq!(g.matrix[1][1], &four_h * (int(2) * &h + int(1)));
        assert_eq!(m.gram(1).matrix, vec![vec![int(2) * h]]);
    }

    #[test]
    fn kac_vanishing_at_level_two() {
        let m = VermaModule::new(rat(1, 2), rat(1, 2));
        assert!(m.gram(2).determinant().is_zero());
        let generic = VermaModule::new(rat(1, 3), rat(2, 9));
        assert!(!generic.gram(2).determinant().is_zero());
    }

    #[test]
    fn vacuum_drops_l_minus_one() {
        let m = VermaModule::vacuum(rat(1, 2));
        let v = m.apply(-1, &VermaVector::basis(Partition::empty()));
        assert!(v.is_zero());
        assert_eq!(m.basis(4), vec![p(&[4]), p(&[2, 2])]);
        // L(-1) L(-2) 1 = L(-3) 1 in the quotient
        let w = m.apply(-1, &VermaVector::basis(p(&[2])));
        assert_eq!(w, VermaVector::basis(p(&[3])));
    }

    #[test]
    fn virasoro_relations_hold() {
        let (c, h) = (rat(7, 10), rat(3, 80));
        let m = VermaModule::new(c.clone(), h);
        for level in 0..=6 {
            for b in m.basis(level) {
                let v = VermaVector::basis(b);
                for a in -3i64..=3 {
                    for n in -3i64..=3 {
                        let lhs = {
                            let mut x = m.apply_word(&[a, n], &v);
                            x.add_scaled(&int(-1), &m.apply_word(&[n, a], &v));
                            x
                        };
                        let mut rhs = m.apply(a + n, &v).scale(&int(a - n));
                        if a + n == 0 {
                            rhs.add_scaled(&(&c * rat(a * a * a - a, 12)), &v);
                        }
                        assert_eq!(lhs, rhs, "[L({a}), L({n})] on level {level}");
                    }
                }
            }
        }
    }

    #[test]
    fn gram_is_symmetric() {
        let m = VermaModule::new(rat(6, 7), rat(1, 7));
        for level in 0..=5 {
            assert!(m.gram(level).is_symmetric());
        }
    }
}
