//! Instance files: a matroid spec `p`, an optional second spec `q`, and an
//! optional partition of the ground set. The JSON schema is documented in
//! the repository README; unknown fields are rejected.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::fair::Partition;
use crate::intersect::Dimatroid;
use crate::matroid::{Matroid, MatroidSpec};
use crate::set::ElementSet;
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub label: String,
    pub p: MatroidSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<MatroidSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Vec<usize>>>,
}

impl Instance {
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        validate_instance_fields(&value)?;
        serde_json::from_value(value).map_err(|e| Error::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serialization cannot fail")
    }

    pub fn matroid_p(&self) -> Result<Matroid> {
        Matroid::from_spec(&self.p)
    }

    pub fn matroid_q(&self) -> Result<Option<Matroid>> {
        self.q.as_ref().map(Matroid::from_spec).transpose()
    }

    /// Requires a `q` spec and equal ground sizes.
    pub fn dimatroid(&self) -> Result<Dimatroid> {
        let p = self.matroid_p()?;
        let q = self
            .matroid_q()?
            .ok_or_else(|| Error::InvalidSpec(format!("instance {:?} has no \"q\" spec", self.label)))?;
        Dimatroid::new(p, q)
    }

    /// The declared partition (or `None`), validated against `p`'s ground set.
    pub fn partition(&self) -> Result<Option<Partition>> {
        let Some(blocks) = &self.partition else { return Ok(None) };
        let n = self.matroid_p()?.ground_size();
        let sets: Result<Vec<ElementSet>> = blocks
            .iter()
            .map(|b| ElementSet::from_members(n, b.iter().copied()))
            .collect();
        Partition::new(n, sets?).map(Some)
    }
}

/// Strict schema validation: every object may carry only the keys its
/// `type` admits. serde alone cannot reject unknown keys inside an
/// internally tagged enum, so instance files get this explicit pass.
fn validate_instance_fields(value: &Value) -> Result<()> {
    let obj = as_object(value, "instance")?;
    check_keys(obj, &["label", "p", "q", "partition"], "instance")?;
    let p = obj.get("p").ok_or_else(|| Error::Json("instance is missing \"p\"".into()))?;
    validate_spec_fields(p)?;
    if let Some(q) = obj.get("q") {
        validate_spec_fields(q)?;
    }
    Ok(())
}

fn validate_spec_fields(value: &Value) -> Result<()> {
    let obj = as_object(value, "matroid spec")?;
    let ty = obj
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Json("matroid spec is missing \"type\"".into()))?;
    let allowed: &[&str] = match ty {
        "uniform" => &["type", "n", "r"],
        "partition" => &["type", "n", "parts", "capacities"],
        "graphic" => &["type", "vertices", "edges"],
        "binary" => &["type", "columns"],
        "explicit" => &["type", "n", "independent", "bases"],
        "dual" => &["type", "inner"],
        "truncation" => &["type", "inner", "g"],
        "restriction" => &["type", "inner", "elements"],
        other => return Err(Error::Json(format!("unknown matroid type {other:?}"))),
    };
    check_keys(obj, allowed, &format!("{ty} spec"))?;
    if let Some(inner) = obj.get("inner") {
        validate_spec_fields(inner)?;
    }
    Ok(())
}

fn as_object<'v>(
    value: &'v Value,
    what: &str,
) -> Result<&'v serde_json::Map<String, Value>> {
    value
        .as_object()
        .ok_or_else(|| Error::Json(format!("{what} must be a JSON object")))
}

fn check_keys(
    obj: &serde_json::Map<String, Value>,
    allowed: &[&str],
    what: &str,
) -> Result<()> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(Error::Json(format!("unknown field {key:?} in {what}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_dimatroid_instance() {
        let text = r#"{
            "label": "k4-vs-matchings",
            "p": {"type": "graphic", "vertices": 4,
                  "edges": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]},
            "q": {"type": "partition", "n": 6,
                  "parts": [[0,5],[1,4],[2,3]], "capacities": [1,1,1]},
            "partition": [[0,5],[1,4],[2,3]]
        }"#;
        let inst = Instance::from_json(text).unwrap();
        let d = inst.dimatroid().unwrap();
        assert_eq!(d.ground_size(), 6);
        let part = inst.partition().unwrap().unwrap();
        assert_eq!(part.num_blocks(), 3);
    }

    #[test]
    fn parses_nested_specs() {
        let text = r#"{
            "label": "dual-of-truncation",
            "p": {"type": "dual",
                  "inner": {"type": "truncation", "g": 2,
                            "inner": {"type": "uniform", "n": 5, "r": 3}}}
        }"#;
        let inst = Instance::from_json(text).unwrap();
        let m = inst.matroid_p().unwrap();
        assert_eq!(m.ground_size(), 5);
        assert_eq!(m.full_rank(), 3);
    }

    #[test]
    fn rejects_unknown_fields_everywhere() {
        let top = r#"{"label": "x", "p": {"type": "uniform", "n": 2, "r": 1}, "frobnicate": 1}"#;
        assert!(matches!(Instance::from_json(top), Err(Error::Json(_))));
        let nested = r#"{"label": "x",
            "p": {"type": "uniform", "n": 2, "r": 1, "color": "red"}}"#;
        assert!(matches!(Instance::from_json(nested), Err(Error::Json(_))));
        let deep = r#"{"label": "x",
            "p": {"type": "dual", "inner": {"type": "uniform", "n": 2, "r": 1, "x": 0}}}"#;
        assert!(matches!(Instance::from_json(deep), Err(Error::Json(_))));
    }

    #[test]
    fn rejects_bad_partitions() {
        let text = r#"{
            "label": "bad",
            "p": {"type": "uniform", "n": 3, "r": 2},
            "partition": [[0], [1]]
        }"#;
        let inst = Instance::from_json(text).unwrap();
        assert!(inst.partition().is_err());
    }

    #[test]
    fn roundtrips_through_json() {
        let inst = Instance {
            label: "roundtrip".into(),
            p: MatroidSpec::Uniform { n: 4, r: 2 },
            q: Some(MatroidSpec::Binary { columns: vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 1]] }),
            partition: Some(vec![vec![0, 1], vec![2, 3]]),
        };
        let back = Instance::from_json(&inst.to_json()).unwrap();
        assert_eq!(back, inst);
    }
}
