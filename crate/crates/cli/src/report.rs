use std::fmt;
use std::time::Instant;

use modtrace::elliptic::ResidueReport;
use modtrace::mde::ModularReport;
use modtrace::rational::fmt_rat;
use modtrace::{BigRational, PuiseuxSeries};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        })
    }
}

/// One check result. Field order is the serialization order.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check_name: String,
    pub status: Status,
    pub expected: Value,
    pub actual: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub runtime_ms: u64,
}

impl Report {
    pub fn exact(name: impl Into<String>, ok: bool, expected: Value, actual: Value) -> Self {
        Self {
            check_name: name.into(),
            status: Status::from_bool(ok),
            expected,
            actual,
            tolerance: None,
            runtime_ms: 0,
        }
    }

    pub fn error(name: impl Into<String>, message: impl fmt::Display) -> Self {
        Self {
            check_name: name.into(),
            status: Status::Error,
            expected: Value::Null,
            actual: json!({ "error": message.to_string() }),
            tolerance: None,
            runtime_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_text(&self) -> String {
        let mut line = format!("{:<5} {}", self.status.to_string().to_uppercase(), self.check_name);
        if let Some(t) = self.tolerance {
            line.push_str(&format!(" (tol {t:e})"));
        }
        line.push_str(&format!(" [{} ms]\n  expected: {}\n  actual:   {}", self.runtime_ms, self.expected, self.actual));
        line
    }
}

/// Runs `f` and stamps the elapsed time on every report it returns.
pub fn timed(f: impl FnOnce() -> Vec<Report>) -> Vec<Report> {
    let start = Instant::now();
    let mut reports = f();
    let ms = start.elapsed().as_millis() as u64;
    for r in &mut reports {
        r.runtime_ms = ms;
    }
    reports
}

pub fn rat(x: &BigRational) -> Value {
    Value::String(fmt_rat(x))
}

pub fn rats(xs: &[BigRational]) -> Value {
    Value::Array(xs.iter().map(rat).collect())
}

pub fn series(s: &PuiseuxSeries) -> Value {
    json!({ "lambda": rat(s.lambda()), "coeffs": rats(s.coeffs()) })
}

pub fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Exact comparison of two series, naming the first differing coefficient.
pub fn compare_series(name: &str, expected: &PuiseuxSeries, actual: &PuiseuxSeries) -> Report {
    let mismatch = match actual.first_mismatch(expected) {
        Ok(m) => m,
        Err(e) => return Report::error(name, e),
    };
    let mut actual_json = series(actual);
    if let Some((n, a, b)) = &mismatch {
        actual_json["first_mismatch"] = json!({ "exponent": rat(n), "actual": rat(a), "expected": rat(b) });
    }
    Report::exact(name, mismatch.is_none(), series(expected), actual_json)
}

pub fn from_residue(name: &str, r: &ResidueReport) -> Report {
    let mut actual = json!({ "coefficients": r.entries.len() });
    if let Some(e) = r.first_failure() {
        actual["first_mismatch"] = json!({ "key": e.key, "left": rat(&e.left), "right": rat(&e.right) });
    }
    Report::exact(name, r.pass, json!("all coefficients agree"), actual)
}

pub fn from_modular(name: &str, r: &ModularReport, expected: Complex64) -> Report {
    let mut actual = json!({
        "spread": r.spread,
        "modulus_deviation": r.modulus_deviation,
        "deviation": r.deviation,
        "values": r.values.iter().copied().map(complex).collect::<Vec<_>>(),
    });
    if !r.pass() {
        actual["worst_sample"] = r.worst_sample().map_or(Value::Null, complex);
    }
    Report {
        check_name: name.into(),
        status: Status::from_bool(r.pass()),
        expected: json!({ "value": complex(expected), "samples": r.samples.iter().copied().map(complex).collect::<Vec<_>>() }),
        actual,
        tolerance: Some(r.tolerance),
        runtime_ms: 0,
    }
}
