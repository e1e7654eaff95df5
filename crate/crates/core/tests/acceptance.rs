//! End-to-end acceptance suite. Prints one pass/fail line per criterion and
//! fails if any criterion fails. Lines go straight to stderr so they show
//! even when test output is captured.

use std::io::Write;
use std::time::{Duration, Instant};

use modtrace::bracket::{bracket_coeffs, inverse_bracket_coeffs, square_l_in_round_modes};
use modtrace::elliptic::{verify_expansion_identity, verify_p_wp_relations, verify_residue_identities, wp_expansion};
use modtrace::mde::{
    default_weight_bound, derive_ode, e2_quasimodularity_check, frobenius_solve, modular_transform_numeric,
    sl2_branch_check, t_eigenvalue_exact, Derivation, Transform, DEFAULT_MAX_ORDER,
};
use modtrace::qseries::eta_power;
use modtrace::rational::{binomial, fmt_rat, int, rat};
use modtrace::virasoro::{
    c20_quotient_dim, graded_dims, minimal_model, quotient_report, singular_vectors, QuotientKind, VermaModule,
};
use modtrace::zhu::zhu_poly;
use modtrace::{BigRational, PuiseuxSeries};
use num_complex::Complex64;
use num_traits::Zero;

type Outcome = Result<String, String>;

/// Name, check and runtime budget in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

/// `(m, c, h, h_W)`: the module `L(c, h)`, its trace function `η^{2h}`
/// and the lowest weight `h_W` fixing the leading exponent `h_W - c/24`.
fn eta_cases() -> Vec<(u32, BigRational, BigRational, BigRational)> {
    vec![
        (1, rat(1, 2), rat(1, 2), rat(1, 16)),
        (2, rat(7, 10), rat(1, 10), rat(3, 80)),
        (3, rat(4, 5), rat(2, 5), rat(1, 15)),
        (4, rat(6, 7), rat(1, 7), rat(1, 21)),
    ]
}

fn derive(c: &BigRational, h: &BigRational) -> Result<Derivation, String> {
    derive_ode(c, h, &default_weight_bound(h), DEFAULT_MAX_ORDER).map_err(|e| e.to_string())
}

fn solve(c: &BigRational, h: &BigRational, h_w: &BigRational, terms: usize) -> Result<(Derivation, PuiseuxSeries), String> {
    let d = derive(c, h)?;
    let lambda = h_w - c / int(24);
    let s = frobenius_solve(&d.ode, &lambda, terms).map_err(|e| format!("L({},{}): {e}", fmt_rat(c), fmt_rat(h)))?;
    Ok((d, s.series))
}

fn samples() -> Vec<Complex64> {
    vec![Complex64::new(0.3, 1.1), Complex64::new(0.0, 1.0), Complex64::new(-0.2, 0.8)]
}

fn eta_traces() -> Outcome {
    for (_, c, h, h_w) in eta_cases() {
        let (_, s) = solve(&c, &h, &h_w, 30)?;
        let target = eta_power(&(int(2) * &h), 30);
        if s.lambda() != target.lambda() || s.coeffs() != target.coeffs() {
            let n = s.coeffs().iter().zip(target.coeffs()).position(|(a, b)| a != b);
            return Err(format!("L({},{}) differs from eta^{} at index {n:?}", fmt_rat(&c), fmt_rat(&h), fmt_rat(&(int(2) * &h))));
        }
    }
    Ok("4 solutions equal eta^(2h) to 30 coefficients".into())
}

fn leading_exponents() -> Outcome {
    let stated = [rat(1, 24), rat(1, 120), rat(1, 30), rat(1, 81)];
    let mut found = Vec::new();
    let mut notes = Vec::new();
    for ((_, c, h, h_w), stated) in eta_cases().into_iter().zip(stated) {
        let d = derive(&c, &h)?;
        let lambda = &h_w - &c / int(24);
        let forced = &h / int(12);
        if d.roots != [lambda.clone()] || lambda != forced {
            return Err(format!("L({},{}): roots {:?}, expected {}", fmt_rat(&c), fmt_rat(&h), d.roots, fmt_rat(&lambda)));
        }
        if lambda != stated {
            notes.push(format!("stated {} disagrees with forced {}", fmt_rat(&stated), fmt_rat(&lambda)));
        }
        found.push(fmt_rat(&lambda));
    }
    Ok(format!("exponents {}; discrepancy flagged: {}", found.join(", "), notes.join("; ")))
}

fn elliptic_suite() -> Outcome {
    for k in 1..=5usize {
        let w = wp_expansion(k, 8, 8).map_err(|e| e.to_string())?;
        for n in -(k as i64)..=8 {
            if (n + k as i64) % 2 != 0 && !w.coeff(n).expect("in window").is_zero() {
                return Err(format!("wp_{k} has a z^{n} term"));
            }
        }
        let r = verify_p_wp_relations(k, 8, 8).map_err(|e| e.to_string())?;
        if !r.pass {
            return Err(r.to_string());
        }
    }
    Ok("parity and P_k(e^z) relations for k = 1..5 to z^8 q^8".into())
}

fn residue_suite() -> Outcome {
    for w in 1..=6 {
        let r = verify_residue_identities(w, 5, 6).map_err(|e| e.to_string())?;
        if !r.pass {
            return Err(r.to_string());
        }
    }
    for w in 1..=5 {
        let r = verify_expansion_identity(w, 6, 6, 5, 8).map_err(|e| e.to_string())?;
        if !r.pass {
            return Err(r.to_string());
        }
    }
    Ok("residues for wt 1..6 to q^6; expansion identity for wt 1..5, |x| <= 6".into())
}

fn bracket_suite() -> Outcome {
    let w = rat(7, 3);
    let row = bracket_coeffs(&w, 0, 8);
    if row.coeffs.iter().enumerate().any(|(i, a)| *a != binomial(&(&w - int(1)), i)) {
        return Err("mode-0 row is not binomial".into());
    }
    let l0 = square_l_in_round_modes(0, 8);
    for k in 1..=8i64 {
        let expected = rat(if k % 2 == 1 { 1 } else { -1 }, k * (k + 1));
        if l0.coeffs[k as usize] != expected {
            return Err(format!("L[0] coefficient {k} is {}", fmt_rat(&l0.coeffs[k as usize])));
        }
    }
    for w in [rat(1, 2), int(1), int(2), int(3)] {
        for m in -2..=3i64 {
            let inv = inverse_bracket_coeffs(&w, m, 8);
            let mut total = vec![BigRational::zero(); 9];
            for (j, b) in inv.coeffs.iter().enumerate() {
                let a = bracket_coeffs(&w, m + j as i64, 8 - j);
                for (i, x) in a.coeffs.iter().enumerate() {
                    total[i + j] += b * x;
                }
            }
            if total[0] != int(1) || total[1..].iter().any(|x| !x.is_zero()) {
                return Err(format!("round trip fails for wt {} mode {m}", fmt_rat(&w)));
            }
        }
    }
    Ok(format!("L[0] = L(0) + ({}) L(1) + ({}) L(2) + ...; round trip to depth 8", fmt_rat(&l0.coeffs[1]), fmt_rat(&l0.coeffs[2])))
}

fn virasoro_suite() -> Outcome {
    let mut pairs: Vec<(BigRational, BigRational)> = eta_cases().into_iter().map(|(_, c, h, _)| (c, h)).collect();
    pairs.push((rat(1, 3), rat(2, 9)));
    for (c, h) in &pairs {
        let g = VermaModule::new(c.clone(), h.clone()).gram(2);
        let two = g.basis.iter().position(|p| p.parts() == [2]).expect("level 2 basis");
        let one = 1 - two;
        let expected = [
            [int(4) * h + c / int(2), int(6) * h],
            [int(6) * h, int(4) * h * (int(2) * h + int(1))],
        ];
        let idx = [two, one];
        for i in 0..2 {
            for j in 0..2 {
                if g.matrix[idx[i]][idx[j]] != expected[i][j] {
                    return Err(format!("Gram entry ({i},{j}) wrong for L({},{})", fmt_rat(c), fmt_rat(h)));
                }
            }
        }
    }
    for (c, h) in &pairs[..4] {
        if singular_vectors(c, h, 2).len() != 1 {
            return Err(format!("no level-2 singular vector for L({},{})", fmt_rat(c), fmt_rat(h)));
        }
    }
    let vacuum = VermaModule::vacuum(rat(1, 2));
    let ranks: Vec<usize> = (0..=8).map(|l| vacuum.gram(l).rank()).collect();
    let dims = graded_dims(&rat(1, 2), &int(0), 8);
    if dims != ranks {
        return Err(format!("vacuum dims {dims:?} vs Gram ranks {ranks:?}"));
    }
    Ok(format!("Gram level 2, singular vectors, L(1/2,0) dims {dims:?}"))
}

fn zhu_suite() -> Outcome {
    let mut degrees = Vec::new();
    for m in 1..=3 {
        let z = zhu_poly(m, None).map_err(|e| e.to_string())?;
        let weights = minimal_model(m).weights;
        if z.roots() != weights || !z.stabilized() {
            return Err(format!("m = {m}: roots {:?} vs {:?}", z.roots(), weights));
        }
        degrees.push(z.degree());
    }
    Ok(format!("degrees {degrees:?}"))
}

fn cofinite_suite() -> Outcome {
    let mut dims = Vec::new();
    for (m, c, h, _) in eta_cases() {
        let bound = ((m + 1) * (m + 2) / 2) as usize;
        let r = quotient_report(&c, &h, QuotientKind::C20, 8);
        if !r.stabilized() || r.last() > bound {
            return Err(format!("L({},{}): c20 dims {:?}, bound {bound}", fmt_rat(&c), fmt_rat(&h), r.dims));
        }
        dims.push(r.last());
    }
    let control = quotient_report(&rat(1, 3), &rat(2, 9), QuotientKind::C20, 8);
    if control.stabilized() {
        return Err(format!("Verma control stabilized: {:?}", control.dims));
    }
    let direct = c20_quotient_dim(&rat(1, 2), &rat(1, 2), 8);
    Ok(format!("c20 dims {dims:?} (Ising energy {direct}); control {:?}", control.dims))
}

fn numeric_invariance() -> Outcome {
    let mut worst = 0.0f64;
    for (_, c, h, h_w) in eta_cases() {
        let (d, s) = solve(&c, &h, &h_w, 80)?;
        let r = modular_transform_numeric(&s, &d.ode.k, Transform::S, &samples(), 80, 1e-6).map_err(|e| e.to_string())?;
        if !r.pass() {
            return Err(format!("L({},{}) S-transform: spread {:e}, |mu| deviation {:e} at {:?}", fmt_rat(&c), fmt_rat(&h), r.spread, r.modulus_deviation, r.worst_sample()));
        }
        if !t_eigenvalue_exact(&s, &(&h_w - &c / int(24))) {
            return Err(format!("L({},{}) T-eigenvalue", fmt_rat(&c), fmt_rat(&h)));
        }
        worst = worst.max(r.spread).max(r.modulus_deviation);
    }
    Ok(format!("worst deviation {worst:.2e}"))
}

fn quasimodularity() -> Outcome {
    let e2 = e2_quasimodularity_check(&samples(), 80, 1e-6).map_err(|e| e.to_string())?;
    if !e2.pass() {
        return Err(format!("E2: deviation {:e}", e2.deviation));
    }
    for (t, k) in [(rat(1, 2), rat(1, 2)), (rat(1, 10), rat(1, 10)), (rat(2, 5), rat(2, 5)), (rat(1, 7), rat(1, 7)), (int(1), int(3))] {
        let (a, b) = sl2_branch_check(&t, &k, &samples(), 1e-6).map_err(|e| e.to_string())?;
        if !a.pass() || !b.pass() {
            return Err(format!("branch identity fails for t = {}", fmt_rat(&t)));
        }
    }
    Ok(format!("E2 deviation {:.2e}", e2.deviation))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("eta-power trace functions", eta_traces, 60),
        ("leading exponents", leading_exponents, 1),
        ("elliptic identities", elliptic_suite, 30),
        ("residue identities", residue_suite, 60),
        ("bracket transform", bracket_suite, 1),
        ("Virasoro engine", virasoro_suite, 30),
        ("Zhu spectrum", zhu_suite, 120),
        ("cofiniteness", cofinite_suite, 60),
        ("numeric modular invariance", numeric_invariance, 10),
        ("E2 quasi-modularity and branches", quasimodularity, 5),
    ];
    let mut failures = 0;
    std::io::stderr().write_all(b"\n").ok();
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let timing = if elapsed > Duration::from_secs(*budget) { " over budget" } else { "" };
        let line = match outcome {
            Ok(detail) => format!("{:>2} PASS {name}: {detail} [{elapsed:.2?}, budget {budget}s{timing}]\n", i + 1),
            Err(detail) => {
                failures += 1;
                format!("{:>2} FAIL {name}: {detail} [{elapsed:.2?}]\n", i + 1)
            }
        };
        std::io::stderr().write_all(line.as_bytes()).ok();
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
