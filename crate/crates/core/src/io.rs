//! JSON interchange for configurations.
//!
//! ```json
//! {"dim": 2, "covectors": [["1","0"],["1","-1/2"]], "multiplicities": ["3/7","1"], "name": "demo"}
//! ```
//! Rationals are strings; integral JSON numbers are tolerated on input.

use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, serde_rational, CoVec, Rational};
use crate::configuration::Configuration;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct ConfigDoc {
    dim: usize,
    covectors: Vec<CoVec>,
    multiplicities: Vec<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

/// Parses and validates a configuration document. Empty configurations are
/// rejected.
pub fn config_from_json(text: &str) -> Result<Configuration> {
    let doc: ConfigDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    config_from_doc(doc)
}

pub fn config_from_value(v: serde_json::Value) -> Result<Configuration> {
    let doc: ConfigDoc = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
    config_from_doc(doc)
}

fn config_from_doc(doc: ConfigDoc) -> Result<Configuration> {
    if doc.covectors.is_empty() {
        return Err(Error::InvalidConfig("configuration has no covectors".into()));
    }
    let mults = doc
        .multiplicities
        .iter()
        .map(serde_rational::from_value)
        .collect::<Result<Vec<Rational>>>()?;
    let mut cfg = Configuration::new(doc.dim, doc.covectors, mults)?;
    cfg.name = doc.name;
    Ok(cfg)
}

pub fn config_to_value(cfg: &Configuration) -> serde_json::Value {
    let doc = ConfigDoc {
        dim: cfg.dim(),
        covectors: cfg.covectors().to_vec(),
        multiplicities: cfg
            .multiplicities()
            .iter()
            .map(|m| serde_json::Value::String(format_rational(m)))
            .collect(),
        name: cfg.name.clone(),
    };
    serde_json::to_value(doc).expect("configuration serializes")
}

/// Pretty JSON with a trailing newline; stable for a given configuration.
pub fn config_to_json(cfg: &Configuration) -> String {
    let mut s = serde_json::to_string_pretty(&config_to_value(cfg)).expect("serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, rat};

    #[test]
    fn roundtrip_is_byte_identical() {
        let cfg = Configuration::new(
            2,
            vec![CoVec::from_ints(&[1, 0]), CoVec::new(vec![frac(1, 2), frac(-3, 7)])],
            vec![frac(3, 7), rat(-2)],
        )
        .unwrap()
        .with_name("demo");
        let a = config_to_json(&cfg);
        let back = config_from_json(&a).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(config_to_json(&back), a);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(config_from_json(r#"{"dim":1,"covectors":[],"multiplicities":[]}"#).is_err());
        assert!(config_from_json(r#"{"dim":1,"covectors":[["0"]],"multiplicities":["1"]}"#).is_err());
        assert!(config_from_json(r#"{"dim":1,"covectors":[[0.5]],"multiplicities":["1"]}"#).is_err());
        assert!(config_from_json(r#"{"dim":1,"covectors":[["1"]],"multiplicities":[1.5]}"#).is_err());
        assert!(config_from_json(r#"{"dim":2,"covectors":[["1"]],"multiplicities":["1"]}"#).is_err());
        let ok = config_from_json(r#"{"dim":1,"covectors":[[2]],"multiplicities":["1/3"]}"#).unwrap();
        assert_eq!(ok.covector(0), &CoVec::from_ints(&[2]));
    }
}
