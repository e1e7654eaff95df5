//! Normal forms in `M(Γ(1)) ⊗ U` modulo `O_q(U)`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::quasimodular::{eisenstein_in_e4_e6, Monomial, QuasiModularPoly};
use crate::linalg::{self, RowSpace, Vector};
use crate::rational::{fmt_rat, int};
use crate::virasoro::{IrreducibleModule, Partition, VermaVector};
use crate::{Error, Result};

/// A homogeneous element of `M(Γ(1)) ⊗ U`: coefficients on
/// `E_4^a E_6^b ⊗ L[-λ]u`, where `λ` runs over the irreducible basis of `U`.
///
/// `degree` is the total weight minus the lowest weight of `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedVector {
    pub degree: usize,
    pub entries: BTreeMap<(Monomial, Partition), BigRational>,
}

impl GradedVector {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            entries: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, p: Partition, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let key = (m, p);
        let slot = self.entries.entry(key.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.entries.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, c: &BigRational, other: &Self) {
        for ((m, p), x) in &other.entries {
            self.add_term(*m, p.clone(), c * x);
        }
    }

    /// Multiplies by `E_4^a E_6^b`.
    pub fn times_monomial(&self, m: Monomial) -> Self {
        let mut out = Self::zero(self.degree + (4 * m.1 + 6 * m.2) as usize);
        for ((k, p), x) in &self.entries {
            out.add_term((0, k.1 + m.1, k.2 + m.2), p.clone(), x.clone());
        }
        out
    }

    pub fn describe(&self) -> String {
        if self.entries.is_empty() {
            return "0".into();
        }
        self.entries
            .iter()
            .map(|((m, p), x)| format!("({}) E4^{} E6^{} ⊗ {}", fmt_rat(x), m.1, m.2, p))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

struct Piece {
    /// `(monomial, level, offset)` blocks.
    blocks: Vec<(Monomial, usize, usize)>,
    dim: usize,
    relations: RowSpace,
}

/// Row-reduced span of the `O_q(U)` generators, graded piece by graded piece,
/// for `U = L(c, h)` in square-bracket coordinates.
pub struct Reducer {
    vacuum: IrreducibleModule,
    module: IrreducibleModule,
    weight_bound: BigRational,
    max_degree: usize,
    pieces: Vec<Piece>,
}

impl std::fmt::Debug for Reducer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Reducer")
            .field("c", &fmt_rat(self.module.c()))
            .field("h", &fmt_rat(self.module.h()))
            .field("max_degree", &self.max_degree)
            .finish()
    }
}

fn modular_monomials_upto(d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for b in 0..=d / 4 {
        for c in 0..=(d - 4 * b) / 6 {
            out.push((0, b as u32, c as u32));
        }
    }
    out.sort_by_key(|&(_, b, c)| (4 * b + 6 * c, b));
    out
}

impl Reducer {
    /// Builds the relation space for all generators of total weight at most
    /// `weight_bound`.
    pub fn build(c: &BigRational, h: &BigRational, weight_bound: &BigRational) -> Result<Self> {
        if *weight_bound < h + int(4) {
            return Err(Error::InvalidArgument(format!(
                "weight bound {} is below h + 4 = {}",
                fmt_rat(weight_bound),
                fmt_rat(&(h + int(4)))
            )));
        }
        let max_degree = (weight_bound - h).floor().to_integer();
        let max_degree = usize::try_from(max_degree).map_err(|_| Error::InvalidArgument("weight bound too large".into()))?;
        let vacuum = IrreducibleModule::new(c.clone(), BigRational::zero());
        let module = IrreducibleModule::new(c.clone(), h.clone());
        let mut pieces = Vec::with_capacity(max_degree + 1);
        for d in 0..=max_degree {
            let mut blocks = Vec::new();
            let mut dim = 0;
            for m in modular_monomials_upto(d) {
                let level = d - (4 * m.1 + 6 * m.2) as usize;
                blocks.push((m, level, dim));
                dim += module.dim(level);
            }
            pieces.push(Piece {
                blocks,
                dim,
                relations: RowSpace::new(dim),
            });
        }
        let mut r = Self {
            vacuum,
            module,
            weight_bound: weight_bound.clone(),
            max_degree,
            pieces,
        };
        r.insert_generators()?;
        Ok(r)
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn weight_bound(&self) -> &BigRational {
        &self.weight_bound
    }

    pub fn module(&self) -> &IrreducibleModule {
        &self.module
    }

    /// Number of independent relations in piece `d`.
    pub fn relation_rank(&self, d: usize) -> usize {
        self.pieces[d].relations.rank()
    }

    pub fn piece_dim(&self, d: usize) -> usize {
        self.pieces[d].dim
    }

    /// `E_4^a E_6^b ⊗ v` for a module vector `v` (projected to `U`).
    pub fn embed(&self, m: Monomial, v: &VermaVector) -> GradedVector {
        let mut out = GradedVector::zero(v.level() + (4 * m.1 + 6 * m.2) as usize);
        if v.is_zero() {
            return out;
        }
        let x = self.module.project(v);
        let basis = self.module.level(v.level()).basis.clone();
        for (p, c) in basis.into_iter().zip(x) {
            out.add_term(m, p, c);
        }
        out
    }

    fn to_dense(&self, v: &GradedVector) -> Result<Vector> {
        let piece = self.piece(v.degree)?;
        let mut out = vec![BigRational::zero(); piece.dim];
        for ((m, p), x) in &v.entries {
            let &(_, level, offset) = piece
                .blocks
                .iter()
                .find(|(bm, _, _)| bm == m)
                .ok_or_else(|| Error::InvalidArgument(format!("monomial {m:?} does not fit degree {}", v.degree)))?;
            let idx = self
                .module
                .level(level)
                .index_of(p)
                .ok_or_else(|| Error::InvalidArgument(format!("{p} is not an irreducible basis label")))?;
            out[offset + idx] += x;
        }
        Ok(out)
    }

    fn to_graded(&self, degree: usize, x: &[BigRational]) -> GradedVector {
        let piece = &self.pieces[degree];
        let mut out = GradedVector::zero(degree);
        for &(m, level, offset) in &piece.blocks {
            let basis = self.module.level(level).basis.clone();
            for (i, p) in basis.into_iter().enumerate() {
                out.add_term(m, p, x[offset + i].clone());
            }
        }
        out
    }

    fn piece(&self, d: usize) -> Result<&Piece> {
        self.pieces.get(d).ok_or_else(|| {
            Error::Truncation(format!(
                "total weight h + {d} exceeds the weight bound {}",
                fmt_rat(&self.weight_bound)
            ))
        })
    }

    /// Normal form modulo the relations; zero iff the vector lies in
    /// `O_q(U)` (within the weight bound).
    pub fn reduce(&self, v: &GradedVector) -> Result<GradedVector> {
        let dense = self.to_dense(v)?;
        let reduced = self.pieces[v.degree].relations.reduce(&dense);
        Ok(self.to_graded(v.degree, &reduced))
    }

    fn reduce_dense(&self, v: &GradedVector) -> Result<Vector> {
        let dense = self.to_dense(v)?;
        Ok(self.pieces[v.degree].relations.reduce(&dense))
    }

    /// `v[n] u'` for `v = L[-λ]1` and `u' = L[-μ]u`, in square-bracket
    /// coordinates; the round engine is reused since `Y[ , ]` and `Y( , )`
    /// define isomorphic structures.
    fn mode(&self, v: &Partition, n: i64, u: &Partition) -> VermaVector {
        (*self.module.verma().vertex_mode_basis(v, n, u)).clone()
    }

    fn insert_generators(&mut self) -> Result<()> {
        let eis: Vec<(usize, QuasiModularPoly)> = (2..=self.max_degree / 2 + 1)
            .map(|k| eisenstein_in_e4_e6(2 * k as u32).map(|p| (k, p)))
            .collect::<Result<_>>()?;
        let mut bare: Vec<Vec<GradedVector>> = vec![Vec::new(); self.max_degree + 1];
        for lv in 1..=self.max_degree + 1 {
            let v_basis = self.vacuum.level(lv).basis.clone();
            for v in &v_basis {
                for lu in 0..=self.max_degree {
                    let u_basis = self.module.level(lu).basis.clone();
                    for u in &u_basis {
                        // v[0]u'
                        let d0 = lu + lv - 1;
                        if d0 <= self.max_degree {
                            bare[d0].push(self.embed((0, 0, 0), &self.mode(v, 0, u)));
                        }
                        // v[-2]u' + Σ_{k≥2} (2k-1) E_{2k} ⊗ v[2k-2]u'
                        let d2 = lu + lv + 1;
                        if d2 <= self.max_degree {
                            let mut g = self.embed((0, 0, 0), &self.mode(v, -2, u));
                            for (k, e) in &eis {
                                let lower = (lu + lv + 1) as i64 - 2 * *k as i64;
                                if lower < 0 {
                                    break;
                                }
                                let w = self.mode(v, 2 * *k as i64 - 2, u);
                                if w.is_zero() {
                                    continue;
                                }
                                for (m, c) in e.terms() {
                                    let coeff = c * int(2 * *k as i64 - 1);
                                    g.add_scaled(&coeff, &self.embed(*m, &w));
                                }
                            }
                            bare[d2].push(g);
                        }
                    }
                }
            }
        }
        for (r, gens) in bare.iter().enumerate() {
            for m in modular_monomials_upto(self.max_degree - r) {
                for g in gens {
                    let shifted = g.times_monomial(m);
                    let dense = self.to_dense(&shifted)?;
                    self.pieces[shifted.degree].relations.insert(&dense);
                }
            }
        }
        Ok(())
    }
}

/// `L[-2]^m u + Σ_{i<m} r_i L[-2]^i u ∈ O_q(U)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recursion {
    pub c: BigRational,
    pub h: BigRational,
    pub order: usize,
    /// `r_0..r_{m-1}`, with `r_i` of weight `2(m - i)`.
    pub coeffs: Vec<QuasiModularPoly>,
}

/// Finds the least `m ≤ max_order` admitting a relation.
pub fn derive_recursion(reducer: &Reducer, max_order: usize) -> Result<Recursion> {
    let module = reducer.module();
    let hw = |i: usize| VermaVector::basis(Partition::repeated(2, i));
    for m in 1..=max_order {
        if 2 * m > reducer.max_degree() {
            break;
        }
        let target = reducer.reduce_dense(&reducer.embed((0, 0, 0), &hw(m)))?;
        let mut labels = Vec::new();
        let mut columns = Vec::new();
        for i in 0..m {
            for mono in super::quasimodular::modular_monomials(2 * (m - i) as u32) {
                columns.push(reducer.reduce_dense(&reducer.embed(mono, &hw(i)))?);
                labels.push((i, mono));
            }
        }
        let rhs: Vector = target.iter().map(|x| -x).collect();
        let solution = if columns.is_empty() {
            rhs.iter().all(Zero::is_zero).then(Vec::new)
        } else {
            linalg::solve(&columns, &rhs)
        };
        if let Some(x) = solution {
            let mut coeffs = vec![QuasiModularPoly::zero(); m];
            for ((i, mono), c) in labels.into_iter().zip(x) {
                coeffs[i].add_term(mono, c);
            }
            return Ok(Recursion {
                c: module.c().clone(),
                h: module.h().clone(),
                order: m,
                coeffs,
            });
        }
    }
    Err(Error::NoRelation {
        max_order,
        weight_bound: reducer.weight_bound().clone(),
    })
}
