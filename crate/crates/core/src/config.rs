//! Plain-text gauge configuration files.
//!
//! ```text
//! # comment
//! charge = 1
//! A0 = x1
//! A2 = x0
//! U = W[1]
//! U = W[1] * W[2]
//! ```
//!
//! Unlisted potentials are zero, `charge` defaults to 1 and every `U` line
//! adds one unitary for `gauge transform` and `gauge verify`.

use crate::error::{KminkError, Result};
use crate::eval::eval_str;
use crate::gauge::{GaugeConfig, UnitaryElement};
use crate::metric::DIM;
use crate::scalar::ScalarValue;

#[derive(Clone, Debug)]
pub struct GaugeFile {
    pub config: GaugeConfig,
    pub unitaries: Vec<(String, UnitaryElement)>,
}

pub fn parse_gauge_config(text: &str) -> Result<GaugeFile> {
    let mut config = GaugeConfig::zero(ScalarValue::one());
    let mut seen = [false; DIM + 1];
    let mut unitaries = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let err = |message: String| KminkError::Config { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rhs) = content.split_once('=').ok_or_else(|| err(format!("expected `name = expression`, got `{}`", content)))?;
        let (key, rhs) = (key.trim(), rhs.trim());
        let value = eval_str(rhs).map_err(|e| err(format!("{}: {}", key, e)))?;
        match key {
            "charge" => {
                let g = value
                    .as_position()
                    .ok()
                    .and_then(|p| p.as_scalar())
                    .ok_or_else(|| err(format!("charge must be a scalar, got `{}`", value)))?;
                if g.inverse().is_none() {
                    return Err(err(format!("charge must be invertible, got `{}`", g)));
                }
                if std::mem::replace(&mut seen[DIM], true) {
                    return Err(err("charge given twice".into()));
                }
                config.charge = g;
            }
            "U" => {
                let u = value.as_position().map_err(|e| err(e.to_string()))?;
                let u = UnitaryElement::new(u).map_err(|e| err(e.to_string()))?;
                unitaries.push((rhs.to_string(), u));
            }
            _ => {
                let k = key
                    .strip_prefix('A')
                    .and_then(|s| s.parse::<usize>().ok())
                    .filter(|k| *k < DIM)
                    .ok_or_else(|| err(format!("unknown key `{}`; expected charge, A0..A4 or U", key)))?;
                if std::mem::replace(&mut seen[k], true) {
                    return Err(err(format!("A{} given twice", k)));
                }
                config.a[k] = value.as_position().map_err(|e| err(e.to_string()))?;
            }
        }
    }
    Ok(GaugeFile { config, unitaries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::PositionElement;

    #[test]
    fn parses_fixture() {
        let text = "# fixture\ncharge = 2\nA1 = x0  # time\n\nA4 = x1 + 1/2\nU = W[1]\n";
        let file = parse_gauge_config(text).unwrap();
        assert_eq!(file.config.charge, ScalarValue::from_int(2));
        assert_eq!(file.config.a[1], PositionElement::x(0));
        assert!(file.config.a[0].is_zero());
        assert_eq!(file.unitaries.len(), 1);
        let again = parse_gauge_config(&file.config.to_string()).unwrap();
        assert_eq!(again.config, file.config);
    }

    #[test]
    fn reports_line_numbers() {
        let cases = [
            ("A1 = x0\nA5 = x1", 2),
            ("A1 = x0\nA1 = x1", 2),
            ("\n\ncharge = 0", 3),
            ("A0 x1", 1),
            ("A0 = x9", 1),
            ("U = x0", 1),
            ("A2 = P1", 1),
        ];
        for (text, want) in cases {
            match parse_gauge_config(text) {
                Err(KminkError::Config { line, .. }) => assert_eq!(line, want, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }
}
