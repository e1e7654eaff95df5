//! Zhu's algebra of the Virasoro vertex algebra `L(c, 0)`.
//!
//! `A(V)` is generated by `x = [ω]`, so it is a quotient of `ℚ[x]`. The map
//! `Φ: V → ℚ[x]` sends `L(-n_1)...L(-n_k)1` to its class, using
//! `Φ(L(-2)u) = (x + wt u) Φ(u)`, `Φ(L(-1)u) = -wt u Φ(u)` and
//! `Φ(L(-n)u) = -2Φ(L(-n+1)u) - Φ(L(-n+2)u)` for `n ≥ 3`, all of which follow
//! from `a ∘ u ∈ O(V)` with `a = ω`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::linalg::{RowSpace, Vector};
use crate::rational::{binomial_int, fmt_rat, int, rational_roots};
use crate::virasoro::{
    central_charge, singular_vectors_in, IrreducibleModule, Partition, VermaModule, VermaVector,
};
use crate::{Error, Result};

/// `a · u = Σ_i C(wt a, i) a(i-1) u`, with `a = L(-λ)1`.
pub fn a_dot_u(module: &VermaModule, a: &Partition, u: &VermaVector, trunc: usize) -> Result<VermaVector> {
    mode_sum(module, a, u, trunc, a.level() as i64)
}

/// `u * a = Σ_i C(wt a - 1, i) a(i-1) u`.
pub fn u_star_a(module: &VermaModule, a: &Partition, u: &VermaVector, trunc: usize) -> Result<VermaVector> {
    mode_sum(module, a, u, trunc, a.level() as i64 - 1)
}

fn mode_sum(module: &VermaModule, a: &Partition, u: &VermaVector, trunc: usize, top: i64) -> Result<VermaVector> {
    let top_level = a.level() + u.level();
    if top_level > trunc {
        return Err(Error::Truncation(format!(
            "product of levels {} and {} exceeds truncation {trunc}",
            a.level(),
            u.level()
        )));
    }
    let mut out = VermaVector::zero(top_level);
    for i in 0..=top_level {
        let b = binomial_int(top, i);
        if b.is_zero() {
            continue;
        }
        out.add_scaled(&b, &module.vertex_mode_vec(&VermaVector::basis(a.clone()), i as i64 - 1, u));
    }
    Ok(out)
}

/// Truncated span of `a ∘ u = Σ_i C(wt a, i) a(i-2) u` inside `V_{≤trunc}`.
#[derive(Debug)]
pub struct OSpace {
    pub trunc: usize,
    /// `dim V_n` for `n ≤ trunc`.
    pub level_dims: Vec<usize>,
    pub span: RowSpace,
}

impl OSpace {
    pub fn total_dim(&self) -> usize {
        self.level_dims.iter().sum()
    }

    pub fn quotient_dim(&self) -> usize {
        self.total_dim() - self.span.rank()
    }

    /// Whether the projection of `v` onto the irreducible quotient lies in
    /// the span.
    pub fn contains(&self, vacuum: &IrreducibleModule, v: &VermaVector) -> bool {
        let mut x = vec![BigRational::zero(); self.total_dim()];
        for level in 0..=v.level().min(self.trunc) {
            let part = VermaVector::from_terms(
                level,
                v.entries()
                    .iter()
                    .filter(|(p, _)| p.level() == level)
                    .map(|(p, c)| (p.clone(), c.clone())),
            );
            if part.is_zero() {
                continue;
            }
            let off: usize = self.level_dims[..level].iter().sum();
            for (i, c) in vacuum.project(&part).into_iter().enumerate() {
                x[off + i] = c;
            }
        }
        self.span.contains(&x)
    }
}

/// `O(V) ∩ V_{≤trunc}` as spanned by generators whose top component lies
/// in the truncation, for `V = L(c, 0)`.
pub fn o_space(c: &BigRational, trunc: usize) -> OSpace {
    let vacuum = IrreducibleModule::new(c.clone(), BigRational::zero());
    let level_dims: Vec<usize> = (0..=trunc).map(|l| vacuum.dim(l)).collect();
    let offsets: Vec<usize> = level_dims
        .iter()
        .scan(0, |acc, d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let total: usize = level_dims.iter().sum();
    let mut span = RowSpace::new(total);
    for la in 0..=trunc {
        for a in vacuum.level(la).basis.clone() {
            for lu in 0..=trunc - la {
                for u in vacuum.level(lu).basis.clone() {
                    let top = la + lu + 1;
                    if top > trunc {
                        continue;
                    }
                    let mut x: Vector = vec![BigRational::zero(); total];
                    let uv = VermaVector::basis(u);
                    for i in 0..=top {
                        let b = binomial_int(la as i64, i);
                        if b.is_zero() {
                            continue;
                        }
                        let level = top as i64 - i as i64;
                        let v = vacuum.verma().vertex_mode(&a, i as i64 - 2, &uv);
                        if v.is_zero() {
                            continue;
                        }
                        for (k, y) in vacuum.project(&v).into_iter().enumerate() {
                            x[offsets[level as usize] + k] += &b * y;
                        }
                    }
                    span.insert(&x);
                }
            }
        }
    }
    OSpace {
        trunc,
        level_dims,
        span,
    }
}

type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_add_scaled(acc: &mut Poly, c: &BigRational, p: &[BigRational]) {
    if acc.len() < p.len() {
        acc.resize(p.len(), BigRational::zero());
    }
    for (a, b) in acc.iter_mut().zip(p) {
        *a += c * b;
    }
}

fn poly_rem(a: &[BigRational], b: &[BigRational]) -> Poly {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = r.last().expect("nonempty") / &lead;
        for (i, x) in b.iter().enumerate() {
            r[shift + i] -= &f * x;
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(a: &[BigRational], b: &[BigRational]) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

fn monic(p: Poly) -> Poly {
    let p = trim(p);
    match p.last().cloned() {
        Some(l) => p.into_iter().map(|x| x / &l).collect(),
        None => p,
    }
}

/// `Φ: V → ℚ[x]`, memoized on PBW labels of the vacuum module.
pub struct ZhuMap {
    verma: VermaModule,
    memo: Mutex<HashMap<Partition, Poly>>,
}

impl fmt::Debug for ZhuMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ZhuMap").field("verma", &self.verma).finish()
    }
}

impl ZhuMap {
    pub fn new(c: BigRational) -> Self {
        Self {
            verma: VermaModule::vacuum(c),
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn verma(&self) -> &VermaModule {
        &self.verma
    }

    /// Class of `v` as a polynomial in `x = [ω]` (constant term first).
    pub fn apply(&self, v: &VermaVector) -> Vec<BigRational> {
        let mut out = Poly::new();
        for (p, c) in v.entries() {
            poly_add_scaled(&mut out, c, &self.basis(p));
        }
        trim(out)
    }

    fn basis(&self, p: &Partition) -> Poly {
        if let Some(r) = self.memo.lock().expect("zhu memo poisoned").get(p) {
            return r.clone();
        }
        let r = match p.first() {
            None => vec![BigRational::one()],
            Some(n) => {
                let rest = p.tail();
                let w = int(rest.level() as i64);
                if n == 2 {
                    // (x + wt u) Φ(u)
                    let inner = self.basis(&rest);
                    let mut out = vec![BigRational::zero(); inner.len() + 1];
                    for (i, a) in inner.iter().enumerate() {
                        out[i] += a * &w;
                        out[i + 1] += a;
                    }
                    out
                } else {
                    let restv = VermaVector::basis(rest);
                    let one = self.verma.apply(-(i64::from(n) - 1), &restv);
                    let two = self.verma.apply(-(i64::from(n) - 2), &restv);
                    let two_phi = if n == 3 {
                        // L(-1)u: normal ordering keeps it inside V, Φ(L(-1)u) = -wt u Φ(u)
                        let mut t = self.apply(&two);
                        if two.is_zero() {
                            t = Poly::new();
                        }
                        t
                    } else {
                        self.apply(&two)
                    };
                    let mut out = Poly::new();
                    poly_add_scaled(&mut out, &int(-2), &self.apply(&one));
                    poly_add_scaled(&mut out, &int(-1), &two_phi);
                    out
                }
            }
        };
        let r = trim(r);
        self.memo
            .lock()
            .expect("zhu memo poisoned")
            .insert(p.clone(), r.clone());
        r
    }
}

/// Monic generator of the ideal cut out by the maximal submodule of the
/// vacuum Verma quotient, i.e. `A(L(c_m, 0)) = ℚ[x] / (zhu_poly)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZhuPoly {
    pub m: u32,
    pub singular_level: usize,
    /// Monic, constant term first.
    pub coeffs: Vec<BigRational>,
    /// The same computation with descendants up to `trunc + 2`.
    pub check_coeffs: Vec<BigRational>,
    pub trunc: usize,
}

impl ZhuPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn stabilized(&self) -> bool {
        self.coeffs == self.check_coeffs
    }

    pub fn roots(&self) -> Vec<BigRational> {
        rational_roots(&self.coeffs)
    }
}

impl fmt::Display for ZhuPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => fmt_rat(c),
                1 => format!("({})x", fmt_rat(c)),
                _ => format!("({})x^{i}", fmt_rat(c)),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// First level carrying a singular vector of the vacuum module.
pub fn vacuum_singular_vector(verma: &VermaModule, max_level: usize) -> Option<VermaVector> {
    (2..=max_level).find_map(|l| singular_vectors_in(verma, l).into_iter().next())
}

fn ideal_generator(map: &ZhuMap, s: &VermaVector, extra: usize) -> Poly {
    let mut g = map.apply(s);
    for n in 1..=extra {
        for lam in crate::virasoro::partitions(n, 1) {
            let word: Vec<i64> = lam.parts().iter().map(|&k| -i64::from(k)).collect();
            let v = map.verma().apply_word(&word, s);
            let p = map.apply(&v);
            if !p.is_empty() {
                g = poly_gcd(&g, &p);
            }
        }
    }
    monic(g)
}

/// `zhu_poly(m)`: `Φ` of the vacuum singular vector and its descendants up
/// to `trunc`, with a repeat at `trunc + 2`. `trunc = None` uses the
/// singular level plus 4.
pub fn zhu_poly(m: u32, trunc: Option<usize>) -> Result<ZhuPoly> {
    let c = central_charge(m);
    let map = ZhuMap::new(c);
    let bound = ((m as usize + 1) * (m as usize + 2)).max(2);
    let s = vacuum_singular_vector(map.verma(), bound).ok_or_else(|| {
        Error::InvalidArgument(format!("no vacuum singular vector up to level {bound}"))
    })?;
    let level = s.level();
    let trunc = trunc.unwrap_or(level + 4);
    if trunc < level {
        return Err(Error::Truncation(format!(
            "truncation {trunc} is below the singular level {level}"
        )));
    }
    let coeffs = ideal_generator(&map, &s, trunc - level);
    let check_coeffs = ideal_generator(&map, &s, trunc + 2 - level);
    Ok(ZhuPoly {
        m,
        singular_level: level,
        coeffs,
        check_coeffs,
        trunc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::virasoro::minimal_model;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn omega_dot_highest_weight() {
        let h = rat(3, 80);
        let m = VermaModule::new(rat(7, 10), h.clone());
        let u = VermaVector::basis(Partition::empty());
        let v = a_dot_u(&m, &p(&[2]), &u, 4).unwrap();
        // L(-2)u + 2L(-1)u + L(0)u
        let mut expected = VermaVector::basis(p(&[2]));
        expected.add_scaled(&int(2), &VermaVector::basis(p(&[1])));
        expected.add_scaled(&h, &u);
        assert_eq!(v, expected);
    }

    #[test]
    fn vacuum_acts_trivially() {
        let m = VermaModule::vacuum(rat(1, 2));
        let u = VermaVector::basis(p(&[3, 2]));
        assert_eq!(a_dot_u(&m, &Partition::empty(), &u, 8).unwrap(), u);
        assert!(a_dot_u(&m, &p(&[4]), &u, 8).is_err());
    }

    #[test]
    fn dot_minus_star_is_zero_mode() {
        let m = VermaModule::vacuum(rat(4, 5));
        for level in 0..=6 {
            for b in m.basis(level) {
                let u = VermaVector::basis(b);
                let mut lhs = a_dot_u(&m, &p(&[2]), &u, 8).unwrap();
                lhs.add_scaled(&int(-1), &u_star_a(&m, &p(&[2]), &u, 8).unwrap());
                // ω[0] = L(-1) + L(0)
                let mut rhs = m.apply(-1, &u);
                rhs.add_scaled(&BigRational::one(), &m.apply(0, &u));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn o_space_examples() {
        let c = rat(1, 2);
        let o = o_space(&c, 6);
        assert_eq!(o.quotient_dim(), 3);
        let vac = IrreducibleModule::new(c.clone(), BigRational::zero());
        // ω ∘ 1 = L(-3)1 + 2L(-2)1
        let mut v = VermaVector::basis(p(&[3]));
        v.add_scaled(&int(2), &VermaVector::basis(p(&[2])));
        assert!(o.contains(&vac, &v));
        assert!(!o.contains(&vac, &VermaVector::basis(Partition::empty())));
    }

    #[test]
    fn omega_squared() {
        let map = ZhuMap::new(rat(1, 2));
        let m = map.verma();
        let w = VermaVector::basis(p(&[2]));
        let sq = a_dot_u(m, &p(&[2]), &w, 4).unwrap();
        assert_eq!(map.apply(&sq), vec![int(0), int(0), int(1)]);
    }

    #[test]
    fn zhu_spectrum_small() {
        for m in 1..=2 {
            let z = zhu_poly(m, None).unwrap();
            assert!(z.stabilized());
            let mut roots = z.roots();
            roots.dedup();
            assert_eq!(roots, minimal_model(m).weights);
            assert_eq!(z.degree(), minimal_model(m).weights.len());
        }
    }
}
