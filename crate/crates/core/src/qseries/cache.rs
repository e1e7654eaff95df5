//! Text cache format:
//!
//! ```text
//! lambda=<p>/<q> terms=<N> weight=<w|none>
//! <num>/<den>
//! ...            (N coefficient lines)
//! ```

use super::PuiseuxSeries;
use crate::rational::{fmt_rat, parse_rat};
use crate::{Error, Result};

pub fn write_cache(s: &PuiseuxSeries) -> String {
    let weight = s.weight().map_or_else(|| "none".to_string(), fmt_rat);
    let mut out = format!(
        "lambda={} terms={} weight={}\n",
        fmt_rat(s.lambda()),
        s.trunc(),
        weight
    );
    for c in s.coeffs() {
        out.push_str(&fmt_rat(c));
        out.push('\n');
    }
    out
}

pub fn parse_cache(text: &str) -> Result<PuiseuxSeries> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty cache file".into()))?;
    let mut lambda = None;
    let mut terms = None;
    let mut weight = None;
    for field in header.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("bad header field {field:?}")))?;
        match key {
            "lambda" => lambda = Some(parse_rat(value)?),
            "terms" => {
                terms = Some(
                    value
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad term count {value:?}")))?,
                )
            }
            "weight" => {
                weight = Some(if value == "none" {
                    None
                } else {
                    Some(parse_rat(value)?)
                })
            }
            _ => return Err(Error::Parse(format!("unknown header field {key:?}"))),
        }
    }
    let (Some(lambda), Some(terms), Some(weight)) = (lambda, terms, weight) else {
        return Err(Error::Parse("header needs lambda, terms and weight".into()));
    };
    let coeffs = lines
        .filter(|l| !l.trim().is_empty())
        .map(parse_rat)
        .collect::<Result<Vec<_>>>()?;
    if coeffs.len() != terms {
        return Err(Error::Parse(format!(
            "header announces {terms} terms, found {}",
            coeffs.len()
        )));
    }
    Ok(PuiseuxSeries::new(lambda, coeffs).with_weight(weight))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::eta_power;
    use crate::rational::rat;
    use proptest::prelude::*;

    #[test]
    fn header_layout() {
        let s = eta_power(&rat(1, 5), 3);
        let text = write_cache(&s);
        assert_eq!(text.lines().next().unwrap(), "lambda=1/120 terms=3 weight=1/10");
        assert_eq!(text.lines().nth(1).unwrap(), "1/1");
        assert_eq!(text.lines().nth(2).unwrap(), "-1/5");
    }

    #[test]
    fn rejects_wrong_count() {
        assert!(parse_cache("lambda=0/1 terms=2 weight=none\n1/1\n").is_err());
        assert!(parse_cache("").is_err());
    }

    proptest! {
        #[test]
        fn round_trip(num in -50i64..50, den in 1i64..30,
                      cs in proptest::collection::vec((-99i64..99, 1i64..20), 0..12),
                      tagged in any::<bool>()) {
            let coeffs = cs.iter().map(|&(a, b)| rat(a, b)).collect();
            let s = PuiseuxSeries::new(rat(num, den), coeffs)
                .with_weight(tagged.then(|| rat(den, 7)));
            prop_assert_eq!(parse_cache(&write_cache(&s)).unwrap(), s);
        }
    }
}
