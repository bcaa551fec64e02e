//! Interchange form of [`Poly`]:
//! `{"vars": [...], "terms": [{"coeff": "p/q", "exps": [...]}, ...]}`
//! with terms in canonical order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{Poly, Scalar, VarSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<u32>,
}

impl From<&Poly> for PolyJson {
    fn from(p: &Poly) -> Self {
        PolyJson {
            vars: p.vars().names().to_vec(),
            terms: p
                .terms()
                .map(|(m, c)| TermJson { coeff: c.to_string(), exps: m.exps().to_vec() })
                .collect(),
        }
    }
}

impl TryFrom<&PolyJson> for Poly {
    type Error = Error;

    fn try_from(j: &PolyJson) -> Result<Poly> {
        let vars = VarSet::new(j.vars.iter().cloned())?;
        let terms = j
            .terms
            .iter()
            .map(|t| Ok((t.exps.clone(), t.coeff.parse::<Scalar>()?)))
            .collect::<Result<Vec<_>>>()?;
        Poly::from_terms(&vars, terms)
    }
}

impl Poly {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(PolyJson::from(self)).expect("poly json is always serializable")
    }

    /// Compact, deterministic JSON text.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyJson::from(self)).expect("poly json is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Poly> {
        let j: PolyJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Poly::try_from(&j)
    }
}
