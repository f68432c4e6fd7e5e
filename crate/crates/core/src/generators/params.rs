//! Parameter schema and `k=v,k2=v2` parsing.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{GeoError, Result};

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ParamKind {
    Number { default: f64, min: f64, max: f64 },
    Integer { default: i64, min: i64, max: i64 },
    Choice { default: &'static str, options: &'static [&'static str] },
}

#[derive(Clone, Debug, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    #[serde(flatten)]
    pub kind: ParamKind,
    pub doc: &'static str,
}

pub const fn num(name: &'static str, default: f64, min: f64, max: f64, doc: &'static str) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Number { default, min, max }, doc }
}

pub const fn int(name: &'static str, default: i64, min: i64, max: i64, doc: &'static str) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Integer { default, min, max }, doc }
}

pub const fn choice(
    name: &'static str,
    default: &'static str,
    options: &'static [&'static str],
    doc: &'static str,
) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Choice { default, options }, doc }
}

/// Raw user-supplied parameters.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Params(pub BTreeMap<String, String>);

impl Params {
    /// Parses `k=v` pairs separated by commas; repeated calls can be merged with [`Params::extend`].
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| GeoError::Input(format!("parameter `{item}` is not of the form key=value")))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Params(map))
    }

    pub fn extend(&mut self, other: Params) {
        self.0.extend(other.0);
    }

    pub fn set(mut self, key: &str, value: impl ToString) -> Self {
        self.0.insert(key.to_string(), value.to_string());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Number(f64),
    Text(String),
}

/// Parameters after defaults and range checks.
#[derive(Clone, Debug, Default)]
pub struct Resolved(pub BTreeMap<String, Value>);

impl Resolved {
    pub fn f(&self, name: &str) -> f64 {
        match self.0.get(name) {
            Some(Value::Number(v)) => *v,
            _ => panic!("parameter {name} is not numeric in the schema"),
        }
    }

    pub fn u(&self, name: &str) -> usize {
        self.f(name) as usize
    }

    pub fn s(&self, name: &str) -> &str {
        match self.0.get(name) {
            Some(Value::Text(v)) => v,
            _ => panic!("parameter {name} is not a choice in the schema"),
        }
    }

    pub fn describe(&self) -> String {
        self.0
            .iter()
            .map(|(k, v)| match v {
                Value::Number(x) => format!("{k}={x}"),
                Value::Text(t) => format!("{k}={t}"),
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

pub fn resolve(schema: &[ParamSpec], given: &Params) -> Result<Resolved> {
    for key in given.0.keys() {
        if !schema.iter().any(|p| p.name == key) {
            let known: Vec<&str> = schema.iter().map(|p| p.name).collect();
            return Err(GeoError::ParamOutOfRange {
                name: key.clone(),
                reason: format!("unknown parameter (expected one of: {})", known.join(", ")),
            });
        }
    }
    let mut out = BTreeMap::new();
    for spec in schema {
        let raw = given.0.get(spec.name);
        let value = match &spec.kind {
            ParamKind::Number { default, min, max } => {
                let v = match raw {
                    Some(r) => parse_number(spec.name, r)?,
                    None => *default,
                };
                if !(v >= *min && v <= *max) {
                    return Err(GeoError::ParamOutOfRange {
                        name: spec.name.into(),
                        reason: format!("{v} outside [{min}, {max}]"),
                    });
                }
                Value::Number(v)
            }
            ParamKind::Integer { default, min, max } => {
                let v = match raw {
                    Some(r) => r.parse::<i64>().map_err(|_| GeoError::ParamOutOfRange {
                        name: spec.name.into(),
                        reason: format!("`{r}` is not an integer"),
                    })?,
                    None => *default,
                };
                if v < *min || v > *max {
                    return Err(GeoError::ParamOutOfRange {
                        name: spec.name.into(),
                        reason: format!("{v} outside [{min}, {max}]"),
                    });
                }
                Value::Number(v as f64)
            }
            ParamKind::Choice { default, options } => {
                let v = raw.map(String::as_str).unwrap_or(default);
                if !options.contains(&v) {
                    return Err(GeoError::ParamOutOfRange {
                        name: spec.name.into(),
                        reason: format!("`{v}` is not one of {}", options.join("|")),
                    });
                }
                Value::Text(v.to_string())
            }
        };
        out.insert(spec.name.to_string(), value);
    }
    Ok(Resolved(out))
}

fn parse_number(name: &str, raw: &str) -> Result<f64> {
    let t = raw.trim();
    let v = match t {
        "pi" => std::f64::consts::PI,
        "2pi" | "tau" => std::f64::consts::TAU,
        _ => t.parse::<f64>().map_err(|_| GeoError::ParamOutOfRange {
            name: name.into(),
            reason: format!("`{raw}` is not a number"),
        })?,
    };
    if !v.is_finite() {
        return Err(GeoError::ParamOutOfRange { name: name.into(), reason: "must be finite".into() });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SCHEMA: &[ParamSpec] = &[
        num("r", 1.0, 0.0, 10.0, "radius"),
        choice("beta", "small_circle", &["small_circle", "harmonic"], "base curve"),
    ];

    #[test]
    fn parse_and_resolve() {
        let p = Params::parse("beta=harmonic, r=2.5").unwrap();
        let r = resolve(SCHEMA, &p).unwrap();
        assert_eq!(r.f("r"), 2.5);
        assert_eq!(r.s("beta"), "harmonic");
        assert_eq!(r.describe(), "beta=harmonic,r=2.5");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Params::parse("r").is_err());
        assert!(resolve(SCHEMA, &Params::parse("q=1").unwrap()).is_err());
        assert!(resolve(SCHEMA, &Params::parse("r=20").unwrap()).is_err());
        assert!(resolve(SCHEMA, &Params::parse("beta=line").unwrap()).is_err());
    }
}
