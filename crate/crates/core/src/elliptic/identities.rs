//! Exact checks of the relations between `P_k`, `℘̃_k` and the residue sums
//! that drive the trace recursion.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::{p_series, p_series_exp, wp_expansion, BivariateLaurent};
use crate::bracket::bracket_coeffs;
use crate::powser;
use crate::qseries::{eisenstein, PuiseuxSeries};
use crate::rational::{binomial_int, fmt_rat, int, rat};
use crate::Result;

/// One compared coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueEntry {
    pub key: String,
    pub left: BigRational,
    pub right: BigRational,
}

impl ResidueEntry {
    pub fn passes(&self) -> bool {
        self.left == self.right
    }
}

/// Coefficient-by-coefficient comparison of two sides of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueReport {
    pub identity: String,
    pub entries: Vec<ResidueEntry>,
    pub pass: bool,
}

impl ResidueReport {
    fn new(identity: impl Into<String>, entries: Vec<ResidueEntry>) -> Self {
        let pass = entries.iter().all(ResidueEntry::passes);
        Self {
            identity: identity.into(),
            entries,
            pass,
        }
    }

    pub fn first_failure(&self) -> Option<&ResidueEntry> {
        self.entries.iter().find(|e| !e.passes())
    }

    fn push_laurent(entries: &mut Vec<ResidueEntry>, prefix: &str, lhs: &BivariateLaurent, rhs: &BivariateLaurent) {
        let (lo, hi) = (lhs.z_window().0.max(rhs.z_window().0), lhs.z_window().1.min(rhs.z_window().1));
        let trunc = lhs.trunc().min(rhs.trunc());
        for n in lo..=hi {
            for j in 0..trunc {
                entries.push(ResidueEntry {
                    key: format!("{prefix}z^{n} q^{j}"),
                    left: lhs.at(n, j).expect("inside window"),
                    right: rhs.at(n, j).expect("inside window"),
                });
            }
        }
    }
}

impl fmt::Display for ResidueReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({} coefficients)", self.identity, if self.pass { "pass" } else { "FAIL" }, self.entries.len())?;
        if let Some(e) = self.first_failure() {
            write!(f, "; first mismatch at {}: {} vs {}", e.key, fmt_rat(&e.left), fmt_rat(&e.right))?;
        }
        Ok(())
    }
}

/// Right side of the `P_k(e^z)` relation. `negate_wp2` selects `-℘̃_2 + E_2`
/// instead of `℘̃_2 + E_2` for `k = 2`.
fn p_exp_rhs(k: usize, z_max: i64, trunc: usize, negate_wp2: bool) -> Result<BivariateLaurent> {
    let wp = wp_expansion(k, z_max, trunc)?;
    let e2 = eisenstein(2, trunc)?;
    Ok(match k {
        1 => {
            let mut r = wp.scale(&int(-1));
            r.set(1, r.coeff(1).expect("window").add(&e2.with_weight(None))?);
            r.add_term(0, 0, &rat(-1, 2));
            r
        }
        2 => {
            let mut r = if negate_wp2 { wp.scale(&int(-1)) } else { wp };
            r.set(0, r.coeff(0).expect("window").add(&e2.with_weight(None))?);
            r
        }
        _ => wp.scale(&int(if k.is_multiple_of(2) { 1 } else { -1 })),
    })
}

/// Compares `P_k(e^z, q)` with its Weierstrass form:
/// `P_1 = -℘̃_1 + E_2 z - 1/2`, `P_2 = ℘̃_2 + E_2`, `P_k = (-1)^k ℘̃_k` (`k > 2`),
/// on `z`-powers up to `z_max` and `q`-powers below `trunc`.
pub fn verify_p_wp_relations(k: usize, z_max: i64, trunc: usize) -> Result<ResidueReport> {
    let lhs = p_series_exp(k, z_max, trunc)?;
    let rhs = p_exp_rhs(k, z_max, trunc, false)?;
    let mut entries = Vec::new();
    ResidueReport::push_laurent(&mut entries, "", &lhs, &rhs);
    Ok(ResidueReport::new(format!("p-wp k={k}"), entries))
}

/// The `k = 2` relation with `-℘̃_2 + E_2` on the right; fails off the
/// `z^{-2}` and `z^0` terms' sign.
pub fn check_p2_with_negated_wp(z_max: i64, trunc: usize) -> Result<ResidueReport> {
    let lhs = p_series_exp(2, z_max, trunc)?;
    let rhs = p_exp_rhs(2, z_max, trunc, true)?;
    let mut entries = Vec::new();
    ResidueReport::push_laurent(&mut entries, "", &lhs, &rhs);
    Ok(ResidueReport::new("p-wp k=2 negated", entries))
}

/// `c_{-1}, c_0, ..., c_{count-2}` with `(1+z)^{w-1} / log(1+z) = Σ c_i z^i`.
pub fn residue_constants(w: &BigRational, count: usize) -> Vec<BigRational> {
    let g_inv = powser::pow(&powser::log1p_over_z(count), &int(-1), count);
    powser::mul(&g_inv, &powser::binomial_series(&(w - int(1)), count), count)
}

type Laurent = BTreeMap<i64, BigRational>;

fn bracket_at_y1(a: &Laurent, f: &Laurent) -> BigRational {
    let mut s = BigRational::zero();
    for (e, x) in a {
        if let Some(y) = f.get(&(1 - e)) {
            s += x * y;
        }
    }
    s
}

/// `y^{w-i} (1-y)^i`, with `i = -1` expanded in `y` (first) or `1/y` (second).
fn kernel_poly(w: i64, i: i64, window: i64, first: bool) -> Laurent {
    let mut out = Laurent::new();
    if i == -1 {
        for j in 0..=2 * window {
            if first {
                out.insert(w + 1 + j, int(1));
            } else {
                out.insert(w - j, int(-1));
            }
        }
    } else {
        for k in 0..=i {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            out.insert(w - i + k, binomial_int(i, k as usize) * int(sign));
        }
    }
    out
}

/// Rows of `F(y)` (first sum) and `F(qy)` (second sum) by `q`-power.
fn insertion_rows(m: Option<usize>, window: i64, trunc: usize) -> Result<(Vec<Laurent>, Vec<Laurent>)> {
    let mut first = vec![Laurent::new(); trunc];
    let mut second = vec![Laurent::new(); trunc];
    let Some(m) = m else {
        first[0].insert(0, int(1));
        second[0].insert(0, int(1));
        return Ok((first, second));
    };
    let wide = p_series(m, -window, window, trunc + window as usize + 1)?;
    for n in -window..=window {
        for (j, row) in first.iter_mut().enumerate() {
            if let Some(c) = wide.at(n, j).filter(|c| !c.is_zero()) {
                row.insert(n, c);
            }
        }
        // P_m(qy): y^n q^j comes from y^n q^{j-n}
        for (j, row) in second.iter_mut().enumerate() {
            let src = j as i64 - n;
            if src < 0 {
                continue;
            }
            if let Some(c) = wide.at(n, src as usize).filter(|c| !c.is_zero()) {
                row.insert(n, c);
            }
        }
    }
    if m == 1 {
        *second[0].entry(0).or_insert_with(BigRational::zero) -= int(1);
    }
    Ok((first, second))
}

/// Per-`i` contributions (before multiplying by `c_i`) to the residue sum,
/// indexed `[i + 1][q-power]`.
fn residue_terms(w: i64, m: Option<usize>, trunc: usize, i_max: i64) -> Result<Vec<Vec<BigRational>>> {
    let window = trunc as i64 + w.abs() + i_max + 4;
    let (f1, f2) = insertion_rows(m, window, trunc)?;
    let mut out = Vec::new();
    for i in -1..=i_max {
        let a = kernel_poly(w, i, window, true);
        let b = kernel_poly(w, i, window, false);
        let row: Vec<BigRational> = (0..trunc)
            .map(|j| bracket_at_y1(&a, &f1[j]) - bracket_at_y1(&b, &f2[j]))
            .collect();
        out.push(row);
    }
    Ok(out)
}

fn residue_identity(
    entries: &mut Vec<ResidueEntry>,
    label: &str,
    w: i64,
    m: Option<usize>,
    expected: &PuiseuxSeries,
    trunc: usize,
) -> Result<()> {
    let i_max = m.unwrap_or(1) as i64 + 4;
    let terms = residue_terms(w, m, trunc, i_max)?;
    let c = residue_constants(&int(w), terms.len());
    let vanish_from = m.unwrap_or(1);
    for j in 0..trunc {
        let mut total = BigRational::zero();
        for (idx, t) in terms.iter().enumerate() {
            total += &c[idx] * &t[j];
        }
        entries.push(ResidueEntry {
            key: format!("{label} q^{j}"),
            left: total,
            right: expected.coeffs()[j].clone(),
        });
    }
    // the sum terminates: terms with i ≥ vanish_from are identically zero
    for (idx, t) in terms.iter().enumerate() {
        let i = idx as i64 - 1;
        if i >= vanish_from as i64 {
            for (j, x) in t.iter().enumerate() {
                entries.push(ResidueEntry {
                    key: format!("{label} term i={i} q^{j}"),
                    left: x.clone(),
                    right: BigRational::zero(),
                });
            }
        }
    }
    Ok(())
}

/// The three residue identities for `a` of weight `w`: the plain sum is 1,
/// the `P_1` sum is `-1/2`, and the `P_m` sum is `E_m` for `2 ≤ m ≤ m_max`
/// (zero for odd `m`).
pub fn verify_residue_identities(w: i64, m_max: usize, trunc: usize) -> Result<ResidueReport> {
    let mut entries = Vec::new();
    residue_identity(&mut entries, "unit", w, None, &PuiseuxSeries::one(trunc), trunc)?;
    residue_identity(
        &mut entries,
        "P_1",
        w,
        Some(1),
        &PuiseuxSeries::constant(rat(-1, 2), trunc),
        trunc,
    )?;
    for m in 2..=m_max {
        let expected = if m % 2 == 0 {
            eisenstein(m, trunc)?
        } else {
            PuiseuxSeries::zero(trunc)
        };
        residue_identity(&mut entries, &format!("P_{m}"), w, Some(m), &expected, trunc)?;
    }
    Ok(ResidueReport::new(format!("residue w={w}"), entries))
}

/// `c(w, i, s)`: coefficient of `x^s` in `C(w - 1 + x, i)`.
pub fn binomial_poly_coeffs(w: &BigRational, i: usize) -> Vec<BigRational> {
    let mut poly = vec![int(1)];
    for t in 0..i {
        let shift = w - int(1) - int(t as i64);
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (s, c) in poly.iter().enumerate() {
            next[s] += c * &shift;
            next[s + 1] += c;
        }
        poly = next;
    }
    let fact = BigRational::from_integer(crate::rational::factorial(i));
    poly.into_iter().map(|c| c / &fact).collect()
}

/// The mode expansion identity: for each `i`, the coefficient of `a(i)b` in
/// `Σ_k C(w-1+k, i) x^k/(1-q^k)` (both signs of `k`) equals that of
/// `Σ_m P_{m+1}(x, q) a[m]b`, with `a[m]` expanded by the bracket table.
///
/// Also checks `Σ_{i≥s} c(w,i,s) z^i = log(1+z)^s (1+z)^{w-1} / s!` to
/// `z^z_order` and that it agrees with the bracket table row for mode `s`.
pub fn verify_expansion_identity(w: i64, x_max: i64, trunc: usize, i_max: usize, z_order: usize) -> Result<ResidueReport> {
    let wq = int(w);
    let mut entries = Vec::new();
    let p1 = p_series(1, -x_max, x_max, trunc)?;
    let p: Vec<BivariateLaurent> = (1..=i_max + 1)
        .map(|k| p_series(k, -x_max, x_max, trunc))
        .collect::<Result<_>>()?;
    for i in 0..=i_max {
        let mut lhs = BivariateLaurent::zero(-x_max, x_max, trunc);
        for n in -x_max..=x_max {
            if n == 0 {
                continue;
            }
            let b = crate::rational::binomial(&(&wq - int(1) + int(n)), i);
            lhs.set(n, p1.coeff(n).expect("window").scale(&b));
        }
        let mut rhs = BivariateLaurent::zero(-x_max, x_max, trunc);
        for (m, pm) in p.iter().enumerate().take(i + 1) {
            let a = &bracket_coeffs(&wq, m as i64, i - m).coeffs[i - m];
            rhs = rhs.add(&pm.scale(a));
        }
        ResidueReport::push_laurent(&mut entries, &format!("a({i}) "), &lhs, &rhs);
    }
    let len = z_order + 1;
    for s in 0..=z_order.min(i_max) {
        let g = powser::pow(&powser::log1p_over_z(len), &int(s as i64), len);
        let gen = powser::mul(&g, &powser::binomial_series(&(&wq - int(1)), len), len);
        let s_fact = BigRational::from_integer(crate::rational::factorial(s));
        let table = bracket_coeffs(&wq, s as i64, z_order);
        for i in s..=z_order {
            let c = binomial_poly_coeffs(&wq, i).get(s).cloned().unwrap_or_else(BigRational::zero);
            entries.push(ResidueEntry {
                key: format!("c(i={i}, s={s}) generating function"),
                left: c.clone(),
                right: &gen[i - s] / &s_fact,
            });
            entries.push(ResidueEntry {
                key: format!("c(i={i}, s={s}) bracket table"),
                left: c * &s_fact,
                right: table.coeffs[i - s].clone(),
            });
        }
    }
    Ok(ResidueReport::new(format!("expansion w={w}"), entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_wp_relations() {
        for k in 1..=5 {
            let r = verify_p_wp_relations(k, 8, 8).unwrap();
            assert!(r.pass, "{r}");
        }
    }

    #[test]
    fn negated_p2_fails() {
        let r = check_p2_with_negated_wp(4, 4).unwrap();
        assert!(!r.pass);
        assert_eq!(r.first_failure().unwrap().key, "z^-2 q^0");
    }

    #[test]
    fn degenerate_window() {
        assert!(verify_p_wp_relations(3, -3, 0).unwrap().pass);
    }

    #[test]
    fn residue_constants_start() {
        let c = residue_constants(&int(2), 3);
        // (1+z) (1/z)(1 + z/2 - z^2/12 + ...)
        assert_eq!(c, vec![int(1), rat(3, 2), rat(5, 12)]);
        assert_eq!(residue_constants(&int(1), 3), vec![int(1), rat(1, 2), rat(-1, 12)]);
    }

    #[test]
    fn residue_identities() {
        for w in 1..=6 {
            let r = verify_residue_identities(w, 5, 6).unwrap();
            assert!(r.pass, "{r}");
        }
    }

    #[test]
    fn expansion_identity() {
        let r = verify_expansion_identity(2, 4, 4, 4, 8).unwrap();
        assert!(r.pass, "{r}");
        let r = verify_expansion_identity(3, 3, 3, 3, 8).unwrap();
        assert!(r.pass, "{r}");
    }
}
