//! Support code for the `turan` binary: argument helpers and the acceptance suite.

pub mod suite;

use turan_core::rational::{parse_rational, Rational};
use turan_core::{Error, Result};

/// Environment variable overriding enumeration budgets.
pub const BUDGET_VAR: &str = "TURAN_BUDGET";

/// Parses `start:end:step` into the exact values `start, start+step, ...` up to
/// and including `end`. Each field accepts `p/q`, integers or decimals.
pub fn parse_alpha_range(spec: &str) -> Result<Vec<Rational>> {
    let fields: Vec<&str> = spec.split(':').collect();
    let (start, end, step) = match fields.as_slice() {
        [a] => {
            let a = parse_rational(a)?;
            return Ok(vec![a]);
        }
        [a, b, c] => (parse_rational(a)?, parse_rational(b)?, parse_rational(c)?),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "expected start:end:step, got `{spec}`"
            )))
        }
    };
    if step <= Rational::from_integer(0.into()) {
        return Err(Error::InvalidArgument("alpha step must be positive".into()));
    }
    if end < start {
        return Err(Error::InvalidArgument(format!(
            "empty alpha range `{spec}`"
        )));
    }
    let mut out = Vec::new();
    let mut a = start;
    while a <= end {
        out.push(a.clone());
        a += &step;
    }
    Ok(out)
}

/// Reads the budget override, if set.
pub fn budget_override() -> Result<Option<u128>> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v.trim().parse::<u128>().map(Some).map_err(|_| {
            Error::InvalidArgument(format!(
                "{BUDGET_VAR} must be a nonnegative integer, got `{v}`"
            ))
        }),
        Err(_) => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use turan_core::rational::rat;

    #[test]
    fn decimal_steps_are_exact() {
        let v = parse_alpha_range("0:0.5:0.05").unwrap();
        assert_eq!(v.len(), 11);
        assert_eq!(v[10], rat(1, 2));
        assert_eq!(v[3], rat(3, 20));
    }

    #[test]
    fn fractions_and_single_values() {
        assert_eq!(parse_alpha_range("1/4").unwrap(), vec![rat(1, 4)]);
        assert_eq!(parse_alpha_range("0:1/2:1/6").unwrap().len(), 4);
        assert!(parse_alpha_range("0:1").is_err());
        assert!(parse_alpha_range("0:1:0").is_err());
        assert!(parse_alpha_range("1:0:0.1").is_err());
    }
}
