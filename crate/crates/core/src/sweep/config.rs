//! Config file reader.
//!
//! The file is TOML restricted to flat `key = value` pairs plus an optional
//! ordered list of `[[variant]]` tables:
//!
//! ```toml
//! gamma1 = 1.0
//! Gamma1 = 1.0
//! Omega = 5.0
//! G1 = 20.0            # or [re, im]
//! alpha_l = 30
//! delta_min = -80
//! delta_max = 80
//! points = 1601
//! engine = "both"      # analytic | numeric | both
//! format = "csv"       # csv | json
//! output = "out.csv"
//!
//! [[variant]]
//! name = "G1=50"
//! G1 = 50.0
//! ```
//!
//! Keys are case-sensitive (`gamma1` and `Gamma1` are different rates).
//! Unknown keys are rejected.

use std::path::PathBuf;

use num_complex::Complex64;
use toml::{Table, Value};

use super::{ConfigError, DeltaGrid, EngineChoice, OutputSpec, Overrides, SweepConfig, Variant};
use crate::params::SystemParams;

const PARAM_KEYS: &[&str] = &["gamma1", "gamma2", "Gamma1", "Gamma2", "Omega", "Delta", "G1", "G2", "alpha_l"];
const SWEEP_KEYS: &[&str] = &["delta_min", "delta_max", "points", "engine", "format", "output", "variant"];

pub const DEFAULT_GRID: DeltaGrid = DeltaGrid { min: -150.0, max: 150.0, points: 2001 };

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

fn as_real(key: &str, value: &Value) -> Result<f64, ConfigError> {
    match value {
        Value::Float(x) => Ok(*x),
        Value::Integer(n) => Ok(*n as f64),
        other => Err(ConfigError::invalid(key, format!("expected a number, got {}", other.type_str()))),
    }
}

fn as_complex(key: &str, value: &Value) -> Result<Complex64, ConfigError> {
    match value {
        Value::Array(parts) if parts.len() == 2 => {
            Ok(Complex64::new(as_real(key, &parts[0])?, as_real(key, &parts[1])?))
        }
        Value::Array(_) => Err(ConfigError::invalid(key, "complex values are written [re, im]")),
        other => Ok(Complex64::new(as_real(key, other)?, 0.0)),
    }
}

fn as_str<'a>(key: &str, value: &'a Value) -> Result<&'a str, ConfigError> {
    value.as_str().ok_or_else(|| ConfigError::invalid(key, format!("expected a string, got {}", value.type_str())))
}

fn set_param(overrides: &mut Overrides, key: &str, label: &str, value: &Value) -> Result<(), ConfigError> {
    match key {
        "gamma1" => overrides.gamma1 = Some(as_real(label, value)?),
        "gamma2" => overrides.gamma2 = Some(as_real(label, value)?),
        "Gamma1" => overrides.upper_gamma1 = Some(as_real(label, value)?),
        "Gamma2" => overrides.upper_gamma2 = Some(as_real(label, value)?),
        "Omega" => overrides.zeeman = Some(as_real(label, value)?),
        "Delta" => overrides.control_detuning = Some(as_real(label, value)?),
        "G1" => overrides.control1 = Some(as_complex(label, value)?),
        "G2" => overrides.control2 = Some(as_complex(label, value)?),
        "alpha_l" => overrides.alpha_l = Some(as_real(label, value)?),
        _ => unreachable!("caller checks PARAM_KEYS"),
    }
    Ok(())
}

fn unknown(label: &str) -> ConfigError {
    if label.ends_with("delta") {
        ConfigError::invalid(label, "unknown key (the probe detuning is swept; use delta_min/delta_max/points)")
    } else {
        ConfigError::invalid(label, "unknown key")
    }
}

fn parse_variant(index: usize, value: &Value) -> Result<Variant, ConfigError> {
    let prefix = format!("variant[{index}]");
    let table = value.as_table().ok_or_else(|| ConfigError::invalid(&prefix, "expected a [[variant]] table"))?;
    let mut name = None;
    let mut overrides = Overrides::default();
    for (key, value) in table {
        let label = format!("{prefix}.{key}");
        if key == "name" {
            name = Some(as_str(&label, value)?.to_owned());
        } else if PARAM_KEYS.contains(&key.as_str()) {
            set_param(&mut overrides, key, &label, value)?;
        } else {
            return Err(unknown(&label));
        }
    }
    let name = name.ok_or_else(|| ConfigError::invalid(format!("{prefix}.name"), "missing"))?;
    Ok(Variant { name, overrides })
}

/// Parses and validates a sweep description.
pub fn parse_config(text: &str) -> Result<SweepConfig, ConfigError> {
    let table: Table = text.parse().map_err(|e: toml::de::Error| ConfigError::Syntax {
        line: e.span().map(|s| line_of(text, s.start)),
        message: e.message().to_owned(),
    })?;

    let mut base = Overrides::default();
    let mut grid = DEFAULT_GRID;
    let mut engine = EngineChoice::default();
    let mut output = OutputSpec::default();
    let mut variants = Vec::new();

    for (key, value) in &table {
        let key = key.as_str();
        if PARAM_KEYS.contains(&key) {
            set_param(&mut base, key, key, value)?;
            continue;
        }
        if !SWEEP_KEYS.contains(&key) {
            return Err(unknown(key));
        }
        match key {
            "delta_min" => grid.min = as_real(key, value)?,
            "delta_max" => grid.max = as_real(key, value)?,
            "points" => {
                let n = value.as_integer().ok_or_else(|| ConfigError::invalid(key, "expected an integer"))?;
                if n < 2 {
                    return Err(ConfigError::invalid(key, "points must be >= 2"));
                }
                grid.points = usize::try_from(n).map_err(|_| ConfigError::invalid(key, "too large"))?;
            }
            "engine" => engine = as_str(key, value)?.parse().map_err(|m: String| ConfigError::invalid(key, m))?,
            "format" => {
                output.format = as_str(key, value)?.parse().map_err(|m: String| ConfigError::invalid(key, m))?
            }
            "output" => output.path = Some(PathBuf::from(as_str(key, value)?)),
            "variant" => {
                let list = value.as_array().ok_or_else(|| ConfigError::invalid(key, "expected [[variant]] tables"))?;
                for (i, v) in list.iter().enumerate() {
                    variants.push(parse_variant(i, v)?);
                }
            }
            _ => unreachable!(),
        }
    }

    let cfg = SweepConfig { base: base.apply(&SystemParams::default()), delta_grid: grid, variants, engine, output };
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::OutputFormat;

    const MINIMAL: &str = r#"
G1 = 20
delta_min = -150
delta_max = 150
points = 2001
"#;

    #[test]
    fn minimal_config() {
        let cfg = parse_config(MINIMAL).unwrap();
        assert_eq!(cfg.base.control1, Complex64::new(20.0, 0.0));
        assert_eq!(cfg.delta_grid, DeltaGrid::new(-150.0, 150.0, 2001));
        assert_eq!(cfg.engine, EngineChoice::Analytic);
        assert_eq!(cfg.output, OutputSpec::default());
        assert!(cfg.variants.is_empty());
        assert_eq!(cfg.series()[0].name, "base");
    }

    #[test]
    fn full_config() {
        let text = r#"
gamma1 = 1.0
gamma2 = 1
Gamma1 = 0.5
Gamma2 = 1.5
Omega = 5
Delta = -20.0
G1 = [3.0, 4.0]
G2 = 0
alpha_l = 12.5
delta_min = -80
delta_max = 80.0
points = 1601
engine = "both"
format = "json"
output = "out/fig.json"

[[variant]]
name = "G1=0"
G1 = 0

[[variant]]
name = "strong"
G1 = 50
Delta = 5
"#;
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.base.upper_gamma1, 0.5);
        assert_eq!(cfg.base.upper_gamma2, 1.5);
        assert_eq!(cfg.base.control1, Complex64::new(3.0, 4.0));
        assert_eq!(cfg.base.control_detuning, -20.0);
        assert_eq!(cfg.base.alpha_l, 12.5);
        assert_eq!(cfg.engine, EngineChoice::Both);
        assert_eq!(cfg.output.format, OutputFormat::Json);
        assert_eq!(cfg.output.path, Some(PathBuf::from("out/fig.json")));
        let names: Vec<_> = cfg.variants.iter().map(|v| v.name.as_str()).collect();
        assert_eq!(names, ["G1=0", "strong"]);
        let strong = cfg.variants[1].overrides.apply(&cfg.base);
        assert_eq!(strong.control1, Complex64::new(50.0, 0.0));
        assert_eq!(strong.control_detuning, 5.0);
        assert_eq!(strong.zeeman, 5.0);
    }

    #[test]
    fn points_below_two_rejected() {
        let err = parse_config("points = 1").unwrap_err();
        assert!(matches!(&err, ConfigError::Validation { key, .. } if key == "points"), "{err}");
        assert!(err.to_string().contains(">= 2"));
    }

    #[test]
    fn unknown_keys_rejected() {
        let err = parse_config("dopler = 1.0").unwrap_err();
        assert_eq!(err, ConfigError::invalid("dopler", "unknown key"));
        let err = parse_config("[[variant]]\nname = \"a\"\nomega = 2").unwrap_err();
        assert!(matches!(&err, ConfigError::Validation { key, .. } if key == "variant[0].omega"));
        // δ is the sweep axis, not a parameter
        let err = parse_config("delta = 3").unwrap_err();
        assert!(matches!(&err, ConfigError::Validation { key, .. } if key == "delta"));
    }

    #[test]
    fn syntax_error_reports_line() {
        let err = parse_config("G1 = 20\nOmega = = 5\n").unwrap_err();
        match err {
            ConfigError::Syntax { line, .. } => assert_eq!(line, Some(2)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_values_name_their_key() {
        for (text, key) in [
            ("gamma1 = -1", "gamma1"),
            ("Gamma1 = 0\nGamma2 = 0", "Gamma1+Gamma2"),
            ("Omega = \"five\"", "Omega"),
            ("G1 = [1, 2, 3]", "G1"),
            ("engine = \"fast\"", "engine"),
            ("format = \"xml\"", "format"),
            ("delta_min = 5\ndelta_max = -5", "delta_max"),
            ("[[variant]]\nG1 = 3", "variant[0].name"),
            ("[[variant]]\nname = \"a\"\n[[variant]]\nname = \"a\"", "variant[1].name"),
            ("[[variant]]\nname = \"a\"\nalpha_l = -2", "variant[0].alpha_l"),
        ] {
            match parse_config(text) {
                Err(ConfigError::Validation { key: k, .. }) => assert_eq!(k, key, "{text}"),
                other => panic!("{text}: unexpected {other:?}"),
            }
        }
    }
}
