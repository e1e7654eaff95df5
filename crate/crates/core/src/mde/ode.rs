//! The modular ODE in the weight-shifting Serre derivative, its θ-form,
//! indicial roots and Frobenius solutions.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::quasimodular::{eisenstein_in_e4_e6, QuasiModularPoly};
use super::reducer::Recursion;
use crate::qseries::PuiseuxSeries;
use crate::rational::{eval_poly, fmt_rat, int, rational_roots};
use crate::virasoro::{Partition, VermaModule, VermaVector};
use crate::{Error, Result};

/// `Σ_{i=0}^{m} h_i ∂^i S = 0` with `h_m = 1`, where
/// `∂^i = ∂_{k+2i-2} ∘ ... ∘ ∂_k` and `∂_k = θ + k E_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularODE {
    pub order: usize,
    /// `h_0..h_{m-1}`; `h_i` has weight `2(m - i)`.
    pub coeffs: Vec<QuasiModularPoly>,
    pub k: BigRational,
    pub c: BigRational,
    pub h: BigRational,
}

impl fmt::Display for ModularODE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "∂^{}", self.order)?;
        for (i, h) in self.coeffs.iter().enumerate().rev() {
            if !h.is_zero() {
                write!(f, " + [{h}] ∂^{i}")?;
            }
        }
        write!(f, " = 0  (k = {})", fmt_rat(&self.k))
    }
}

/// A linear operator `Σ_j f_j θ^j` with quasi-modular coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ThetaOperator {
    pub coeffs: Vec<QuasiModularPoly>,
}

impl ThetaOperator {
    fn identity() -> Self {
        Self {
            coeffs: vec![QuasiModularPoly::one()],
        }
    }

    fn add_scaled(&mut self, f: &QuasiModularPoly, other: &Self) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), QuasiModularPoly::zero());
        }
        for (j, g) in other.coeffs.iter().enumerate() {
            self.coeffs[j] = self.coeffs[j].add(&f.mul(g));
        }
    }

    /// `(θ + k E_2) ∘ self`.
    fn serre_after(&self, k: &BigRational) -> Self {
        let mut out = Self {
            coeffs: vec![QuasiModularPoly::zero(); self.coeffs.len() + 1],
        };
        let ke2 = QuasiModularPoly::e2().scale(k);
        for (j, f) in self.coeffs.iter().enumerate() {
            out.coeffs[j] = out.coeffs[j].add(&f.theta()).add(&ke2.mul(f));
            out.coeffs[j + 1] = out.coeffs[j + 1].add(f);
        }
        out
    }

    /// Indicial polynomial (constant term first).
    pub fn indicial_polynomial(&self) -> Vec<BigRational> {
        self.coeffs.iter().map(QuasiModularPoly::constant_term).collect()
    }
}

impl ModularODE {
    /// The operator in θ-form.
    pub fn theta_form(&self) -> ThetaOperator {
        let mut power = ThetaOperator::identity();
        let mut out = ThetaOperator::default();
        for i in 0..=self.order {
            let h = if i == self.order {
                QuasiModularPoly::one()
            } else {
                self.coeffs[i].clone()
            };
            out.add_scaled(&h, &power);
            power = power.serre_after(&(&self.k + int(2 * i as i64)));
        }
        out
    }

    /// Applies the operator to a q-series.
    pub fn apply(&self, s: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        let op = self.theta_form();
        let trunc = s.trunc();
        let mut out = PuiseuxSeries::new(s.lambda().clone(), vec![BigRational::zero(); trunc]);
        let mut th = s.clone().with_weight(None);
        for f in &op.coeffs {
            out = out.add(&f.to_series(trunc)?.mul(&th))?;
            th = th.theta();
        }
        Ok(out)
    }
}

/// `S(L[-2]^{i} u) = Σ_j f_{ij} ∂^j S(u)` for `i ≤ order`, from the
/// recursion `S(L[-2]v) = ∂_{wt v} S(v) + Σ_{k≥2} E_{2k} S(L[2k-2]v)`.
pub fn iterated_traces(c: &BigRational, h: &BigRational, order: usize) -> Result<Vec<Vec<QuasiModularPoly>>> {
    let verma = VermaModule::new(c.clone(), h.clone());
    let mut t: Vec<Vec<QuasiModularPoly>> = vec![vec![QuasiModularPoly::one()]];
    for i in 0..order {
        let prev = &t[i];
        let mut next = vec![QuasiModularPoly::zero(); i + 2];
        // ∂_{k+2i}(f ∂^j S) = (θf + 2(i-j) E_2 f) ∂^j S + f ∂^{j+1} S
        for (j, f) in prev.iter().enumerate() {
            let shift = QuasiModularPoly::e2().scale(&int(2 * (i as i64 - j as i64))).mul(f);
            next[j] = next[j].add(&f.theta()).add(&shift);
            next[j + 1] = next[j + 1].add(f);
        }
        let v = VermaVector::basis(Partition::repeated(2, i));
        for k in 2..=i + 1 {
            let lowered = verma.apply(2 * k as i64 - 2, &v);
            if lowered.is_zero() {
                continue;
            }
            let e = eisenstein_in_e4_e6(2 * k as u32)?;
            for (p, x) in lowered.entries() {
                let reps = p.len();
                if *p != Partition::repeated(2, reps) {
                    return Err(Error::InvalidArgument(format!(
                        "L[{}] L[-2]^{i} u left the span of L[-2] powers: {p}",
                        2 * k - 2
                    )));
                }
                let factor = e.scale(x);
                for (j, f) in t[reps].iter().enumerate() {
                    next[j] = next[j].add(&factor.mul(f));
                }
            }
        }
        t.push(next);
    }
    Ok(t)
}

/// Turns `L[-2]^m u + Σ r_i L[-2]^i u ∈ O_q(U)` into an ODE for `S(u)`.
pub fn to_ode(rec: &Recursion) -> Result<ModularODE> {
    let t = iterated_traces(&rec.c, &rec.h, rec.order)?;
    let mut total = t[rec.order].clone();
    for (i, r) in rec.coeffs.iter().enumerate() {
        for (j, f) in t[i].iter().enumerate() {
            total[j] = total[j].add(&r.mul(f));
        }
    }
    debug_assert!(total[rec.order] == QuasiModularPoly::one());
    Ok(ModularODE {
        order: rec.order,
        coeffs: total[..rec.order].to_vec(),
        k: rec.h.clone(),
        c: rec.c.clone(),
        h: rec.h.clone(),
    })
}

/// Rational roots of the indicial polynomial, with multiplicity.
pub fn indicial_roots(ode: &ModularODE) -> Vec<BigRational> {
    rational_roots(&ode.theta_form().indicial_polynomial())
}

/// `q^λ Σ a_n q^n` with `a_0 = 1`; `log_degree` is always 0 here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusSolution {
    pub lambda: BigRational,
    pub series: PuiseuxSeries,
    pub log_degree: usize,
}

/// Solves the ODE by the Frobenius recursion with `terms` coefficients.
pub fn frobenius_solve(ode: &ModularODE, lambda: &BigRational, terms: usize) -> Result<FrobeniusSolution> {
    let op = ode.theta_form();
    let g: Vec<PuiseuxSeries> = op
        .coeffs
        .iter()
        .map(|f| f.to_series(terms.max(1)))
        .collect::<Result<_>>()?;
    // P_s(x) = Σ_j g_{j,s} x^j
    let poly_at = |s: usize, x: &BigRational| -> BigRational {
        let coeffs: Vec<BigRational> = g.iter().map(|gj| gj.coeffs()[s].clone()).collect();
        eval_poly(&coeffs, x)
    };
    if !poly_at(0, lambda).is_zero() {
        return Err(Error::InvalidArgument(format!(
            "{} is not an indicial root",
            fmt_rat(lambda)
        )));
    }
    let mut a: Vec<BigRational> = Vec::with_capacity(terms);
    if terms > 0 {
        a.push(BigRational::one());
    }
    for n in 1..terms {
        let x = lambda + int(n as i64);
        let lead = poly_at(0, &x);
        let mut rhs = BigRational::zero();
        for s in 1..=n {
            if a[n - s].is_zero() {
                continue;
            }
            let shifted = lambda + int((n - s) as i64);
            rhs -= poly_at(s, &shifted) * &a[n - s];
        }
        if lead.is_zero() {
            return Err(Error::Resonance { n, exponent: x });
        }
        a.push(rhs / lead);
    }
    Ok(FrobeniusSolution {
        lambda: lambda.clone(),
        series: PuiseuxSeries::new(lambda.clone(), a),
        log_degree: 0,
    })
}
