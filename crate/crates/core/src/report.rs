//! Serializable ring reports and `expect` evaluation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::dsl::ExpectValue;
use crate::props::{Property, PropertyReport, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyEntry {
    /// `true`, `false` or `skipped`.
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub claim: Option<String>,
    pub algorithm: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
    pub properties_ms: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RingReport {
    pub name: String,
    pub order: u128,
    pub dim: usize,
    pub field: String,
    pub local: bool,
    pub chain: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residue_field_size: Option<u64>,
    pub filtration_dims: Vec<usize>,
    pub nilpotency_index: usize,
    pub properties: BTreeMap<String, PropertyEntry>,
    pub unit_order_max: u64,
    pub unit_orders: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings: Option<Timings>,
}

fn verdict_parts(v: &Verdict) -> (String, Option<String>) {
    match v {
        Verdict::True => ("true".into(), None),
        Verdict::False => ("false".into(), None),
        Verdict::Skipped(why) => ("skipped".into(), Some(why.clone())),
    }
}

impl RingReport {
    pub fn new(alg: &FiniteAlgebra, r: &PropertyReport) -> RingReport {
        let s = &r.structure;
        let properties = r
            .results
            .iter()
            .map(|(p, res)| {
                let (verdict, reason) = verdict_parts(&res.verdict);
                let witness = res.witness.as_ref().map(|w| {
                    w.formatted(alg).into_iter().map(|(k, v)| (k.to_string(), v)).collect::<BTreeMap<_, _>>()
                });
                let claim = res.witness.as_ref().map(|w| w.claim(alg));
                let algorithm = serde_json::to_value(res.algorithm)
                    .ok()
                    .and_then(|v| v.as_str().map(String::from))
                    .unwrap_or_default();
                (p.name().to_string(), PropertyEntry { verdict, reason, witness, claim, algorithm })
            })
            .collect();
        let timings = Timings {
            total_ms: r.elapsed.as_secs_f64() * 1e3,
            properties_ms: r.results.iter().map(|(p, res)| (p.name().to_string(), res.elapsed.as_secs_f64() * 1e3)).collect(),
        };
        RingReport {
            name: alg.name().to_string(),
            order: alg.order(),
            dim: alg.dim(),
            field: alg.field().name(),
            local: s.local,
            chain: s.is_chain(),
            residue_field_size: s.residue_field_size(alg.lanes().p()).ok(),
            filtration_dims: s.dims(alg),
            nilpotency_index: s.filtration.nilpotency_index,
            properties,
            unit_order_max: r.max_unit_order(),
            unit_orders: r.unit_orders.iter().copied().collect(),
            timings: Some(timings),
        }
    }

    /// The report without wall-clock data, for byte-stable comparisons.
    pub fn without_timings(mut self) -> RingReport {
        self.timings = None;
        self
    }

    pub fn verdict(&self, p: Property) -> Option<&str> {
        self.properties.get(p.name()).map(|e| e.verdict.as_str())
    }

    /// The value a key of an `expect` statement refers to.
    pub fn value(&self, key: &str) -> Option<Actual> {
        let int = |n: u64| Some(Actual::Value(ExpectValue::Int(n)));
        match key {
            "order" => u64::try_from(self.order).ok().and_then(int),
            "dim" => int(self.dim as u64),
            "local" => Some(Actual::Value(ExpectValue::Bool(self.local))),
            "chain" => Some(Actual::Value(ExpectValue::Bool(self.chain))),
            "nilpotency_index" => int(self.nilpotency_index as u64),
            "unit_order_max" => int(self.unit_order_max),
            "residue_field_size" => Some(match self.residue_field_size {
                Some(n) => Actual::Value(ExpectValue::Int(n)),
                None => Actual::Missing("ring is not local".into()),
            }),
            "filtration_dims" => {
                Some(Actual::Value(ExpectValue::List(self.filtration_dims.iter().map(|&d| d as u64).collect())))
            }
            k => {
                let p = Property::from_name(k)?;
                let e = self.properties.get(p.name())?;
                Some(match e.verdict.as_str() {
                    "true" => Actual::Value(ExpectValue::Bool(true)),
                    "false" => Actual::Value(ExpectValue::Bool(false)),
                    _ => Actual::Missing(e.reason.clone().unwrap_or_else(|| "skipped".into())),
                })
            }
        }
    }

    /// Compares every expectation against the report.
    pub fn check(&self, expect: &[(String, ExpectValue)]) -> Vec<Mismatch> {
        expect
            .iter()
            .filter_map(|(k, v)| {
                let actual = self.value(k).unwrap_or(Actual::Missing("unknown key".into()));
                match &actual {
                    Actual::Value(a) if a == v => None,
                    _ => Some(Mismatch { key: k.clone(), expected: v.clone(), actual }),
                }
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "ring {}: order {} = {}^{}", self.name, self.order, self.field, self.dim);
        let local = match self.residue_field_size {
            Some(q) => format!("local, residue field of order {q}"),
            None => "not local".into(),
        };
        let _ = writeln!(s, "  {local}{}", if self.chain { ", chain ring" } else { "" });
        let _ = writeln!(
            s,
            "  radical filtration dims {:?}, nilpotency index {}",
            self.filtration_dims, self.nilpotency_index
        );
        for (name, e) in &self.properties {
            let _ = write!(s, "  {name:<16} {}", e.verdict);
            if let Some(r) = &e.reason {
                let _ = write!(s, " ({r})");
            }
            if let (Some(w), Some(c)) = (&e.witness, &e.claim) {
                let tuple: Vec<String> = w.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                let _ = write!(s, "  [{}; {c}]", tuple.join(", "));
            }
            s.push('\n');
        }
        let _ = writeln!(s, "  unit orders {:?}, max {}", self.unit_orders, self.unit_order_max);
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Actual {
    Value(ExpectValue),
    /// The value could not be determined, e.g. a skipped check.
    Missing(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub key: String,
    pub expected: ExpectValue,
    pub actual: Actual,
}

impl Mismatch {
    /// The expectation could not be evaluated rather than being contradicted.
    pub fn is_undecided(&self) -> bool {
        matches!(self.actual, Actual::Missing(_))
    }
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.actual {
            Actual::Value(a) => write!(f, "{}: expected {}, found {a}", self.key, self.expected),
            Actual::Missing(why) => write!(f, "{}: expected {}, undecided ({why})", self.key, self.expected),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors;
    use crate::gf::Field;
    use crate::props::{property_report, CheckOptions};

    #[test]
    fn expectations_and_json() {
        let alg = constructors::upper_triangular(&Field::f2(), 2).unwrap();
        let r = RingReport::new(&alg, &property_report(&alg, &CheckOptions::default()).unwrap());
        assert!(r.check(&[("ni".into(), ExpectValue::Bool(true)), ("order".into(), ExpectValue::Int(8))]).is_empty());
        let bad = r.check(&[("abelian".into(), ExpectValue::Bool(true))]);
        assert_eq!(bad.len(), 1);
        assert!(!bad[0].is_undecided());
        let json = serde_json::to_string(&r.clone().without_timings()).unwrap();
        assert!(!json.contains("timings"));
        let back: RingReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r.without_timings());
    }
}
