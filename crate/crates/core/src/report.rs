//! Verdict records and their canonical JSON form.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{Map, Number, Value};

use crate::scalar::Real;
use crate::tol::Tolerances;

/// Classifier outcome, ordered along the lattice homothetic ⇒ conformal ⇒ weakly conformal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Degenerate,
    Isometric,
    Homothetic,
    Conformal,
    WeaklyConformal,
    None,
}

impl Verdict {
    pub fn is_homothetic(self) -> bool {
        matches!(self, Verdict::Homothetic | Verdict::Isometric)
    }

    pub fn is_conformal(self) -> bool {
        self.is_homothetic() || self == Verdict::Conformal
    }

    pub fn is_weakly_conformal(self) -> bool {
        self.is_conformal() || self == Verdict::WeaklyConformal
    }
}

/// Sup and mean of a residual field together with the threshold it was judged against.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub sup: f64,
    pub mean: f64,
    pub threshold: f64,
    pub holds: bool,
}

impl Residual {
    /// Summary of `|field|` over `samples`, passing when the sup is within `threshold`.
    pub fn of<T: Real>(field: &[T], samples: &[usize], threshold: f64) -> Self {
        let vals: Vec<f64> = samples.iter().map(|&p| field[p].abs().f64()).collect();
        Residual::from_values(&vals, threshold)
    }

    pub fn from_values(vals: &[f64], threshold: f64) -> Self {
        let sup = vals.iter().copied().fold(0.0, f64::max);
        let mean = if vals.is_empty() { 0.0 } else { vals.iter().sum::<f64>() / vals.len() as f64 };
        Residual { sup, mean, threshold, holds: sup <= threshold }
    }

    /// A vacuous pass (empty sample set).
    pub fn vacuous(threshold: f64) -> Self {
        Residual { sup: 0.0, mean: 0.0, threshold, holds: true }
    }
}

/// Outcome of a classifier run, serializable as a report section.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub verdict: Verdict,
    pub constants: BTreeMap<String, f64>,
    pub residuals: BTreeMap<String, Residual>,
    pub tolerances: Tolerances,
    /// Boundary band excluded on non-periodic axes.
    pub trim: usize,
    /// Number of samples excluded from the verdict.
    pub trimmed: usize,
    pub source_label: String,
}

/// Serializes with sorted keys and every float written with 17 significant digits.
pub fn to_canonical_json<S: Serialize>(value: &S) -> serde_json::Result<String> {
    let v = serde_json::to_value(value)?;
    serde_json::to_string_pretty(&canonical(v))
}

pub fn canonical(v: Value) -> Value {
    match v {
        Value::Number(n) => number(&n),
        Value::Array(a) => Value::Array(a.into_iter().map(canonical).collect()),
        Value::Object(o) => {
            let sorted: BTreeMap<String, Value> = o.into_iter().map(|(k, v)| (k, canonical(v))).collect();
            Value::Object(sorted.into_iter().collect::<Map<String, Value>>())
        }
        other => other,
    }
}

fn number(n: &Number) -> Value {
    if n.is_i64() || n.is_u64() {
        return Value::Number(n.clone());
    }
    match n.as_f64() {
        Some(x) => float(x),
        None => Value::Number(n.clone()),
    }
}

/// A float as a JSON number with 17 significant digits, or null when not finite.
pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let text = format!("{x:.16e}");
    text.parse::<Number>().map(Value::Number).unwrap_or(Value::Null)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_fixed_precision_and_keys_sort() {
        let mut m = BTreeMap::new();
        m.insert("z", 0.1);
        m.insert("a", 2.0);
        let s = to_canonical_json(&m).unwrap();
        assert!(s.find("\"a\"").unwrap() < s.find("\"z\"").unwrap());
        assert!(s.contains("1.0000000000000001e-1"), "{s}");
        assert!(s.contains("2.0000000000000000e+0"), "{s}");
        let back: BTreeMap<String, f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back["z"], 0.1);
        assert_eq!(to_canonical_json(&f64::NAN).unwrap(), "null");
    }

    #[test]
    fn verdict_lattice() {
        assert!(Verdict::Isometric.is_weakly_conformal());
        assert!(Verdict::Conformal.is_weakly_conformal() && !Verdict::Conformal.is_homothetic());
        assert!(!Verdict::None.is_weakly_conformal());
    }
}
