//! Check runners behind each subcommand. Every runner returns reports
//! instead of failing so one bad input never hides the others.

use std::fs;
use std::path::PathBuf;

use modtrace::elliptic::{verify_expansion_identity, verify_p_wp_relations, verify_residue_identities};
use modtrace::mde::{
    default_weight_bound, derive_ode, e2_quasimodularity_check, frobenius_solve, modular_transform_numeric,
    sl2_branch_check, t_eigenvalue_exact, Derivation, Transform, DEFAULT_MAX_ORDER,
};
use modtrace::qseries::{classical_eisenstein, eisenstein, eisenstein_constant, eta, eta_power, parse_cache, write_cache};
use modtrace::rational::{fmt_rat, int, rat as q, to_f64};
use modtrace::virasoro::{
    minimal_model, quotient_report, singular_vectors_in, IrreducibleModule, QuotientKind, VermaModule,
};
use modtrace::zhu::zhu_poly;
use modtrace::{BigRational, Error, PuiseuxSeries, Result};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::report::{compare_series, from_modular, from_residue, rat, rats, series, Report};

pub const DEFAULT_TERMS: usize = 30;
pub const NUMERIC_TERMS: usize = 80;
pub const NUMERIC_TOLERANCE: f64 = 1e-6;

/// Flags shared by all subcommands.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub terms: Option<usize>,
    pub weight_bound: Option<BigRational>,
    pub max_order: Option<usize>,
    pub taus: Vec<Complex64>,
    pub cache_dir: Option<PathBuf>,
}

impl Options {
    fn terms(&self, default: usize) -> usize {
        self.terms.unwrap_or(default)
    }

    fn weight_bound(&self, h: &BigRational) -> BigRational {
        self.weight_bound.clone().unwrap_or_else(|| default_weight_bound(h))
    }

    fn max_order(&self) -> usize {
        self.max_order.unwrap_or(DEFAULT_MAX_ORDER)
    }

    fn taus(&self) -> Vec<Complex64> {
        if self.taus.is_empty() {
            default_taus()
        } else {
            self.taus.clone()
        }
    }

    /// Loads `key` from the cache when it holds enough terms, otherwise
    /// computes it and writes it back.
    fn cached(&self, key: &str, terms: usize, compute: impl FnOnce() -> Result<PuiseuxSeries>) -> Result<PuiseuxSeries> {
        let Some(dir) = &self.cache_dir else {
            return compute();
        };
        let path = dir.join(format!("{}.series", key.replace(['/', ' ', ','], "_")));
        if let Ok(text) = fs::read_to_string(&path) {
            let s = parse_cache(&text)?;
            if s.trunc() >= terms {
                return Ok(s.truncate(terms));
            }
        }
        let s = compute()?;
        fs::create_dir_all(dir).map_err(|e| Error::Io(e.to_string()))?;
        fs::write(&path, write_cache(&s)).map_err(|e| Error::Io(e.to_string()))?;
        Ok(s)
    }
}

pub fn default_taus() -> Vec<Complex64> {
    vec![Complex64::new(0.3, 1.1), Complex64::new(0.0, 1.0), Complex64::new(-0.2, 0.8)]
}

fn module_name(c: &BigRational, h: &BigRational) -> String {
    format!("L({},{})", fmt_rat(c), fmt_rat(h))
}

fn report_or_error(name: &str, r: Result<Vec<Report>>) -> Vec<Report> {
    r.unwrap_or_else(|e| vec![Report::error(name, e)])
}

pub fn eisenstein_check(k: usize, opts: &Options) -> Vec<Report> {
    let name = format!("eisenstein/E{k}");
    let terms = opts.terms(DEFAULT_TERMS);
    report_or_error(&name, (|| {
        let actual = opts.cached(&format!("eisenstein_E{k}"), terms, || eisenstein(k, terms))?;
        let expected = classical_eisenstein(k, terms)?.scale(&eisenstein_constant(k));
        Ok(vec![compare_series(&name, &expected.with_weight(None), &actual.with_weight(None))])
    })())
}

/// `η^r` from the product formula, checked against `exp(r log η)`.
pub fn eta_check(r: &BigRational, opts: &Options) -> Vec<Report> {
    let name = format!("eta^{}", fmt_rat(r));
    let terms = opts.terms(DEFAULT_TERMS);
    report_or_error(&name, (|| {
        let actual = opts.cached(&format!("eta_{}", fmt_rat(r)), terms, || Ok(eta_power(r, terms)))?;
        let expected = eta(terms).pow_rational(r)?;
        Ok(vec![compare_series(&name, &expected, &actual)])
    })())
}

fn verma_for(c: &BigRational, h: &BigRational) -> VermaModule {
    if h == &int(0) {
        VermaModule::vacuum(c.clone())
    } else {
        VermaModule::new(c.clone(), h.clone())
    }
}

pub fn gram_check(c: &BigRational, h: &BigRational, level: usize) -> Vec<Report> {
    let name = format!("gram/{}/level{level}", module_name(c, h));
    let g = VermaModule::new(c.clone(), h.clone()).gram(level);
    let matrix: Vec<Value> = g.matrix.iter().map(|row| rats(row)).collect();
    let actual = json!({
        "basis": g.basis.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "matrix": matrix,
        "rank": g.rank(),
        "determinant": rat(&g.determinant()),
    });
    if level != 2 {
        return vec![Report::exact(name, g.is_symmetric(), json!({ "symmetric": true }), actual)];
    }
    // basis L(-2)v, L(-1)^2 v in engine order
    let two = g.basis.iter().position(|p| p.parts() == [2]).expect("level-2 basis");
    let one = 1 - two;
    let (a, b, d) = (int(4) * h + c / int(2), int(6) * h, int(4) * h * (int(2) * h + int(1)));
    let ok = g.matrix[two][two] == a && g.matrix[two][one] == b && g.matrix[one][two] == b && g.matrix[one][one] == d;
    let expected = json!({ "basis": ["L(-2)", "L(-1)L(-1)"], "matrix": [[rat(&a), rat(&b)], [rat(&b), rat(&d)]] });
    vec![Report::exact(name, ok, expected, actual)]
}

/// Singular vectors at one level, each verified against `L(1)` and `L(2)`.
pub fn singular_check(c: &BigRational, h: &BigRational, level: usize) -> Vec<Report> {
    let name = format!("singular/{}/level{level}", module_name(c, h));
    let verma = verma_for(c, h);
    let vectors = singular_vectors_in(&verma, level);
    let bad = vectors
        .iter()
        .position(|v| v.is_zero() || !verma.apply(1, v).is_zero() || !verma.apply(2, v).is_zero());
    let mut actual = json!({ "vectors": vectors.iter().map(|v| v.to_string()).collect::<Vec<_>>() });
    if let Some(i) = bad {
        actual["first_bad_vector"] = json!(i);
    }
    vec![Report::exact(name, bad.is_none(), json!({ "annihilated_by": ["L(1)", "L(2)"] }), actual)]
}

/// Irreducible graded dimensions against Verma Gram ranks.
pub fn dims_check(c: &BigRational, h: &BigRational, max_level: usize) -> Vec<Report> {
    let name = format!("dims/{}", module_name(c, h));
    let module = IrreducibleModule::new(c.clone(), h.clone());
    let dims = module.graded_dims(max_level);
    let ranks: Vec<usize> = (0..=max_level).map(|l| module.verma().gram(l).rank()).collect();
    vec![Report::exact(name, dims == ranks, json!({ "gram_ranks": ranks }), json!({ "dims": dims }))]
}

/// Passes when the quotient dimension has stabilized by `max_level`.
pub fn cofinite_check(c: &BigRational, h: &BigRational, kind: QuotientKind, max_level: usize) -> Vec<Report> {
    let name = format!("cofinite/{kind}/{}", module_name(c, h));
    let r = quotient_report(c, h, kind, max_level);
    let actual = json!({ "dims": r.dims, "stabilized": r.stabilized(), "last": r.last() });
    vec![Report::exact(name, r.stabilized(), json!({ "stabilized": true }), actual)]
}

/// Zhu polynomial roots against the deduplicated Kac table.
pub fn zhu_check(m: u32, trunc: Option<usize>) -> Vec<Report> {
    let name = format!("zhu/m{m}");
    report_or_error(&name, (|| {
        let z = zhu_poly(m, trunc)?;
        let weights = minimal_model(m).weights;
        let roots = z.roots();
        let actual = json!({
            "roots": rats(&roots),
            "degree": z.degree(),
            "singular_level": z.singular_level,
            "stabilized": z.stabilized(),
        });
        let ok = roots == weights && z.stabilized();
        Ok(vec![Report::exact(&name, ok, json!({ "roots": rats(&weights), "degree": weights.len() }), actual)])
    })())
}

fn derive(c: &BigRational, h: &BigRational, opts: &Options) -> Result<Derivation> {
    derive_ode(c, h, &opts.weight_bound(h), opts.max_order())
}

fn derivation_json(d: &Derivation) -> Value {
    json!({
        "order": d.ode.order,
        "ode": d.ode.to_string(),
        "k": rat(&d.ode.k),
        "indicial_roots": rats(&d.roots),
    })
}

/// Fails (rather than errors) when no relation exists within the bounds.
pub fn mde_derive_check(c: &BigRational, h: &BigRational, opts: &Options) -> Vec<Report> {
    let name = format!("mde-derive/{}", module_name(c, h));
    let expected = json!({ "max_order": opts.max_order(), "weight_bound": rat(&opts.weight_bound(h)) });
    match derive(c, h, opts) {
        Ok(d) => vec![Report::exact(name, true, expected, derivation_json(&d))],
        Err(e @ Error::NoRelation { .. }) => vec![Report::exact(name, false, expected, json!({ "error": e.to_string() }))],
        Err(e) => vec![Report::error(name, e)],
    }
}

/// Frobenius solution at `lambda` (default: smallest indicial root), checked
/// by substituting it back into the ODE.
pub fn mde_solve_check(c: &BigRational, h: &BigRational, lambda: Option<&BigRational>, opts: &Options) -> Vec<Report> {
    let name = format!("mde-solve/{}", module_name(c, h));
    let terms = opts.terms(DEFAULT_TERMS);
    report_or_error(&name, (|| {
        let d = derive(c, h, opts)?;
        let lambda = match lambda {
            Some(l) => l.clone(),
            None => d.roots.first().cloned().ok_or_else(|| Error::Domain("ODE has no rational indicial root".into()))?,
        };
        let key = format!("solution_{}_{}_{}", fmt_rat(c), fmt_rat(h), fmt_rat(&lambda));
        let s = opts.cached(&key, terms, || Ok(frobenius_solve(&d.ode, &lambda, terms)?.series))?;
        let residual = d.ode.apply(&s)?;
        let first = residual.coeffs().iter().position(|x| x != &int(0));
        let mut actual = derivation_json(&d);
        actual["solution"] = series(&s);
        if let Some(n) = first {
            actual["first_nonzero_residual"] = json!({ "exponent": rat(&(residual.lambda() + int(n as i64))) });
        }
        Ok(vec![Report::exact(&name, first.is_none(), json!({ "residual": "0" }), actual)])
    })())
}

/// S- and T-transform behaviour of the Frobenius solution.
pub fn modular_check(c: &BigRational, h: &BigRational, opts: &Options) -> Vec<Report> {
    let name = format!("modular/{}", module_name(c, h));
    let terms = opts.terms(NUMERIC_TERMS);
    report_or_error(&name, (|| {
        let d = derive(c, h, opts)?;
        let lambda = d.roots.first().cloned().ok_or_else(|| Error::Domain("ODE has no rational indicial root".into()))?;
        let s = frobenius_solve(&d.ode, &lambda, terms)?.series;
        modular_reports(&name, &s, &d.ode.k, &lambda, &opts.taus(), terms)
    })())
}

fn modular_reports(
    name: &str,
    s: &PuiseuxSeries,
    k: &BigRational,
    lambda: &BigRational,
    taus: &[Complex64],
    terms: usize,
) -> Result<Vec<Report>> {
    let one = Complex64::new(1.0, 0.0);
    let phase = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * to_f64(lambda));
    let sr = modular_transform_numeric(s, k, Transform::S, taus, terms, NUMERIC_TOLERANCE)?;
    let tr = modular_transform_numeric(s, k, Transform::T, taus, terms, NUMERIC_TOLERANCE)?;
    let exact = t_eigenvalue_exact(s, lambda);
    Ok(vec![
        from_modular(&format!("{name}/S"), &sr, one),
        from_modular(&format!("{name}/T"), &tr, phase),
        Report::exact(
            format!("{name}/T-eigenvalue"),
            exact,
            json!({ "exp_2pi_i": rat(lambda) }),
            json!({ "lambda": rat(s.lambda()) }),
        ),
    ])
}

/// `E_2` quasi-modularity and the two `SL(2, ℤ)` branch identities.
pub fn quasimodular_checks(opts: &Options) -> Vec<Report> {
    let taus = opts.taus();
    let terms = opts.terms(NUMERIC_TERMS);
    let one = Complex64::new(1.0, 0.0);
    let mut out = report_or_error("quasimodular/E2", (|| {
        Ok(vec![from_modular("quasimodular/E2", &e2_quasimodularity_check(&taus, terms, NUMERIC_TOLERANCE)?, one)])
    })());
    for (t, k) in [(q(1, 2), q(1, 2)), (q(1, 10), q(1, 10)), (q(2, 5), q(2, 5)), (q(1, 7), q(1, 7)), (int(1), int(3))] {
        let name = format!("branch[t={},k={}]", fmt_rat(&t), fmt_rat(&k));
        out.extend(report_or_error(&name, (|| {
            let (a, b) = sl2_branch_check(&t, &k, &taus, NUMERIC_TOLERANCE)?;
            Ok(vec![from_modular(&format!("{name}/S"), &a, one), from_modular(&format!("{name}/ST"), &b, one)])
        })()));
    }
    out
}

pub fn elliptic_checks(opts: &Options) -> Vec<Report> {
    let trunc = opts.terms(8);
    let mut out = Vec::new();
    for k in 1..=5 {
        let name = format!("elliptic/P{k}-vs-wp");
        out.extend(report_or_error(&name, verify_p_wp_relations(k, 8, trunc).map(|r| vec![from_residue(&name, &r)])));
    }
    for w in 1..=6 {
        let name = format!("elliptic/residues-wt{w}");
        out.extend(report_or_error(&name, verify_residue_identities(w, 5, trunc.min(6)).map(|r| vec![from_residue(&name, &r)])));
    }
    for w in 1..=5 {
        let name = format!("elliptic/expansion-wt{w}");
        out.extend(report_or_error(&name, verify_expansion_identity(w, 6, trunc.min(6), 5, 8).map(|r| vec![from_residue(&name, &r)])));
    }
    out
}

/// A unitary minimal-model module `U = L(c, h)` whose trace function is a
/// power of `η`, with the lowest weight `h_W` of the intertwined module.
#[derive(Clone, Debug)]
pub struct EtaCase {
    pub c: BigRational,
    pub h: BigRational,
    pub h_w: BigRational,
    /// Leading exponent as originally stated, when it disagrees with ours.
    pub stated_lambda: Option<BigRational>,
}

pub fn eta_cases() -> Vec<EtaCase> {
    let case = |c, h, h_w, stated| EtaCase { c, h, h_w, stated_lambda: stated };
    vec![
        case(q(1, 2), q(1, 2), q(1, 16), None),
        case(q(7, 10), q(1, 10), q(3, 80), None),
        case(q(4, 5), q(2, 5), q(1, 15), None),
        case(q(6, 7), q(1, 7), q(1, 21), Some(q(1, 81))),
    ]
}

/// Derives the ODE, solves at `h_W - c/24` and compares with `η^{2h}`.
pub fn eta_trace_check(case: &EtaCase, opts: &Options) -> Vec<Report> {
    let name = format!("trace/{}", module_name(&case.c, &case.h));
    let terms = opts.terms(DEFAULT_TERMS);
    let lambda = &case.h_w - &case.c / int(24);
    let power = int(2) * &case.h;
    report_or_error(&name, (|| {
        let d = derive(&case.c, &case.h, opts)?;
        let s = frobenius_solve(&d.ode, &lambda, terms)?.series;
        let target = eta_power(&power, terms);
        let mut r = compare_series(&name, &target, &s);
        r.expected["power"] = rat(&power);
        r.actual["ode"] = json!(d.ode.to_string());
        if let Some(stated) = &case.stated_lambda {
            r.expected["note"] = json!(format!(
                "stated leading exponent {} is inconsistent with eta^{} and h_W - c/24 = {}",
                fmt_rat(stated),
                fmt_rat(&power),
                fmt_rat(&lambda)
            ));
        }
        Ok(vec![r])
    })())
}

pub fn eta_trace_checks(opts: &Options) -> Vec<Report> {
    eta_cases().iter().flat_map(|case| crate::report::timed(|| eta_trace_check(case, opts))).collect()
}

/// Every suite, run on worker threads and sorted by check name.
pub fn all_checks(opts: &Options) -> Vec<Report> {
    type Job<'a> = Box<dyn FnOnce() -> Vec<Report> + Send + 'a>;
    let mut jobs: Vec<Job> = Vec::new();
    for case in eta_cases() {
        let trace_case = case.clone();
        jobs.push(Box::new(move || eta_trace_check(&trace_case, opts)));
        let (c, h) = (case.c.clone(), case.h.clone());
        jobs.push(Box::new(move || singular_check(&c, &h, 2)));
        let (c, h) = (case.c.clone(), case.h.clone());
        jobs.push(Box::new(move || cofinite_check(&c, &h, QuotientKind::C20, 8)));
        jobs.push(Box::new(move || {
            let name = format!("modular/{}", module_name(&case.c, &case.h));
            let terms = opts.terms(NUMERIC_TERMS).max(NUMERIC_TERMS);
            report_or_error(&name, (|| {
                let lambda = &case.h_w - &case.c / int(24);
                let d = derive(&case.c, &case.h, opts)?;
                let s = frobenius_solve(&d.ode, &lambda, terms)?.series;
                modular_reports(&name, &s, &d.ode.k, &lambda, &opts.taus(), terms)
            })())
        }));
    }
    jobs.push(Box::new(move || elliptic_checks(opts)));
    jobs.push(Box::new(move || quasimodular_checks(opts)));
    jobs.push(Box::new(|| gram_check(&q(1, 2), &q(1, 16), 2)));
    jobs.push(Box::new(|| dims_check(&q(1, 2), &int(0), 8)));
    for m in 1..=3 {
        jobs.push(Box::new(move || zhu_check(m, None)));
    }
    for k in [2, 4, 6] {
        jobs.push(Box::new(move || eisenstein_check(k, opts)));
    }
    let mut reports: Vec<Report> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs.into_iter().map(|job| scope.spawn(move || crate::report::timed(job))).collect();
        handles.into_iter().flat_map(|h| h.join().expect("check thread panicked")).collect()
    });
    reports.sort_by(|a, b| a.check_name.cmp(&b.check_name));
    reports
}
