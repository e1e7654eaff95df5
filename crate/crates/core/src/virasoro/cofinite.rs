//! Truncated quotients `U / C_2(U)` and `U / C_[2,0](U)`.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::irreducible::IrreducibleModule;
use super::verma::VermaVector;
use crate::bracket::bracket_coeffs;
use crate::linalg::{RowSpace, Vector};
use crate::rational::{binomial_int, int};

/// Which generators span the subspace being quotiented out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuotientKind {
    /// `a(-2)u`.
    C2,
    /// `a[-2]u`, expanded into round modes.
    C2Square,
    /// `a[-2]u` and `a[0]u`, expanded into round modes.
    C20,
}

impl fmt::Display for QuotientKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::C2 => "c2",
            Self::C2Square => "c2-square",
            Self::C20 => "c20",
        })
    }
}

/// Quotient dimensions for truncations `U_{h+0..=h+N}`, `N = 0..=max_level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientReport {
    pub kind: QuotientKind,
    pub dims: Vec<usize>,
}

impl QuotientReport {
    /// The last three truncations agree.
    pub fn stabilized(&self) -> bool {
        self.dims.len() >= 3 && self.dims[self.dims.len() - 3..].windows(2).all(|w| w[0] == w[1])
    }

    pub fn last(&self) -> usize {
        *self.dims.last().expect("at least one truncation")
    }
}

struct Coordinates {
    offsets: Vec<usize>,
    total: usize,
}

impl Coordinates {
    fn new(u: &IrreducibleModule, max_level: usize) -> Self {
        let mut offsets = Vec::with_capacity(max_level + 2);
        let mut total = 0;
        for l in 0..=max_level {
            offsets.push(total);
            total += u.dim(l);
        }
        offsets.push(total);
        Self { offsets, total }
    }

    fn upto(&self, level: usize) -> usize {
        self.offsets[level + 1]
    }
}

/// `sum_i coeffs[i] a_(n + i) u`, as dense coordinates of `U_{≤ max_level}`.
fn mode_combination(
    u: &IrreducibleModule,
    coords: &Coordinates,
    a: &VermaVector,
    u_vec: &VermaVector,
    n: i64,
    coeffs: &[BigRational],
) -> Vector {
    let mut out = vec![BigRational::zero(); coords.total];
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mode = n + i as i64;
        let level = u_vec.level() as i64 + a.level() as i64 - mode - 1;
        if level < 0 {
            break;
        }
        let v = u.verma().vertex_mode_vec(a, mode, u_vec);
        if v.is_zero() {
            continue;
        }
        let x = u.project(&v);
        let off = coords.offsets[level as usize];
        for (k, xk) in x.iter().enumerate() {
            if !xk.is_zero() {
                out[off + k] += c * xk;
            }
        }
    }
    out
}

/// Quotient dimensions of `U = L(c, h)` by generators built from
/// `a ∈ V = L(c, 0)`, one entry per truncation level.
///
/// Generators are included only when their top component lies inside the
/// truncation, so each entry can only overestimate the true quotient.
pub fn quotient_dims(
    vacuum: &IrreducibleModule,
    u: &IrreducibleModule,
    kind: QuotientKind,
    max_level: usize,
) -> QuotientReport {
    let coords = Coordinates::new(u, max_level);
    // generators bucketed by the level of their top component
    let mut buckets: Vec<Vec<Vector>> = vec![Vec::new(); max_level + 1];
    for la in 0..=max_level {
        let a_basis = vacuum.level(la).basis.clone();
        for a_part in a_basis {
            let a = VermaVector::basis(a_part);
            for lu in 0..=max_level {
                let u_basis = u.level(lu).basis.clone();
                for u_part in u_basis {
                    let uv = VermaVector::basis(u_part);
                    let mut push = |top: usize, v: Vector| {
                        if top <= max_level {
                            buckets[top].push(v);
                        }
                    };
                    let top = lu + la + 1;
                    if top <= max_level {
                        match kind {
                            QuotientKind::C2 => {
                                push(top, mode_combination(u, &coords, &a, &uv, -2, &[int(1)]));
                            }
                            QuotientKind::C2Square | QuotientKind::C20 => {
                                let t = bracket_coeffs(&int(la as i64), -2, top);
                                push(top, mode_combination(u, &coords, &a, &uv, -2, &t.coeffs));
                            }
                        }
                    }
                    if kind == QuotientKind::C20 && la >= 1 && lu + la - 1 <= max_level {
                        let top = lu + la - 1;
                        let coeffs: Vec<BigRational> =
                            (0..=top).map(|i| binomial_int(la as i64 - 1, i)).collect();
                        push(top, mode_combination(u, &coords, &a, &uv, 0, &coeffs));
                    }
                }
            }
        }
    }
    let mut space = RowSpace::new(coords.total);
    let mut dims = Vec::with_capacity(max_level + 1);
    for (level, bucket) in buckets.iter().enumerate() {
        for v in bucket {
            space.insert(v);
        }
        dims.push(coords.upto(level) - space.rank());
    }
    QuotientReport { kind, dims }
}

/// `dim U_{≤N} / C_2` for `U = L(c, h)`, truncated at level `N`.
pub fn c2_quotient_dim(c: &BigRational, h: &BigRational, max_level: usize) -> usize {
    quotient_report(c, h, QuotientKind::C2, max_level).last()
}

/// `dim U_{≤N} / C_[2,0]` for `U = L(c, h)`, truncated at level `N`.
pub fn c20_quotient_dim(c: &BigRational, h: &BigRational, max_level: usize) -> usize {
    quotient_report(c, h, QuotientKind::C20, max_level).last()
}

pub fn quotient_report(c: &BigRational, h: &BigRational, kind: QuotientKind, max_level: usize) -> QuotientReport {
    let vacuum = IrreducibleModule::new(c.clone(), BigRational::zero());
    let u = IrreducibleModule::new(c.clone(), h.clone());
    quotient_dims(&vacuum, &u, kind, max_level)
}
