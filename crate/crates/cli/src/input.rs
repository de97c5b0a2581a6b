use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde_json::Value;

use cn_lattice::prelude::*;

use crate::CliError;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_kernel_spec(path: &Path) -> Result<KernelSpec, CliError> {
    Ok(KernelSpec::from_json(&read(path)?)?)
}

pub fn load_kernel(path: &Path) -> Result<StepKernel, CliError> {
    let spec = load_kernel_spec(path)?;
    StepKernel::from_spec(&spec).map_err(|r| CliError::Input(format!("invalid kernel: {r}")))
}

/// Accepts a JSON array (`[1,0]`), a comma list (`1,0`) or, in one
/// dimension, a bare integer.
pub fn parse_site(text: &str, dim: usize) -> Result<Site, CliError> {
    let text = text.trim();
    let bad = || CliError::Input(format!("bad site {text:?}"));
    let coords: Vec<i64> = if text.starts_with('[') {
        serde_json::from_str(text).map_err(|_| bad())?
    } else {
        text.split(',')
            .map(|c| c.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?
    };
    if coords.len() != dim {
        return Err(CliError::Input(format!(
            "site {text} has dimension {}, kernel has dimension {dim}",
            coords.len()
        )));
    }
    Ok(Site(coords))
}

/// Payoff files map site keys (`"3"`, `"[1,2]"`) to rationals given as
/// strings or integers. Every site must lie above the boundary.
pub fn parse_payoff(text: &str, dim: usize) -> Result<LatticeFunction, CliError> {
    let raw: BTreeMap<String, Value> = serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("payoff file: {e}")))?;
    let mut values = Vec::with_capacity(raw.len());
    for (key, v) in raw {
        let site = parse_site(&key, dim)?;
        let value = match v {
            Value::String(s) => parse_rational(&s)?,
            Value::Number(n) if n.is_i64() => int(n.as_i64().expect("checked")),
            other => {
                return Err(CliError::Input(format!(
                    "payoff value {other} at {key} must be a rational string or integer"
                )))
            }
        };
        values.push((site, value));
    }
    Ok(LatticeFunction::upper(values)?)
}

pub fn load_payoff(path: &Path, dim: usize) -> Result<LatticeFunction, CliError> {
    parse_payoff(&read(path)?, dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn site_forms() {
        assert_eq!(parse_site("[-1]", 1).unwrap(), Site::new([-1]));
        assert_eq!(parse_site("3", 1).unwrap(), Site::new([3]));
        assert_eq!(parse_site("1, -2", 2).unwrap(), Site::new([1, -2]));
        assert!(parse_site("[1,2]", 1).is_err());
        assert!(parse_site("x", 1).is_err());
    }

    #[test]
    fn payoff_forms() {
        let f = parse_payoff(r#"{"1": "1", "3": 2, "[5]": "-1/2"}"#, 1).unwrap();
        assert_eq!(f.value(&Site::new([3])), int(2));
        assert_eq!(f.value(&Site::new([5])), ratio(-1, 2));
        assert!(parse_payoff(r#"{"0": "1"}"#, 1).is_err());
        assert!(parse_payoff(r#"{"[1,-1]": "1"}"#, 2).is_err());
        assert!(parse_payoff(r#"{"1": 0.5}"#, 1).is_err());
    }
}
