//! The JSON arrangement file:
//! `{"dim": int, "hyperplanes": [[int, ...], ...], "multiplicity": [int, ...]?, "labels": [string, ...]?}`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, MultiArrangement, Multiplicity};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementFile {
    pub dim: usize,
    pub hyperplanes: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl ArrangementFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn to_arrangement(&self) -> Result<Arrangement> {
        let forms = self
            .hyperplanes
            .iter()
            .map(|h| h.iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        let a = Arrangement::new(self.dim, forms)?;
        match &self.labels {
            Some(labels) => a.with_labels(labels.clone()),
            None => Ok(a),
        }
    }

    pub fn to_multi(&self) -> Result<MultiArrangement> {
        let a = self.to_arrangement()?;
        match &self.multiplicity {
            Some(m) => MultiArrangement::new(a, Multiplicity::new(m.clone())),
            None => Ok(MultiArrangement::simple(a)),
        }
    }

    pub fn from_arrangement(a: &Arrangement) -> Result<Self> {
        let hyperplanes = a
            .forms()
            .iter()
            .enumerate()
            .map(|(i, f)| {
                f.to_i64()
                    .ok_or_else(|| Error::Internal(format!("hyperplane {i} exceeds 64-bit range")))
            })
            .collect::<Result<_>>()?;
        Ok(ArrangementFile {
            dim: a.dim(),
            hyperplanes,
            multiplicity: None,
            labels: a.labels().map(<[String]>::to_vec),
        })
    }

    /// Omits the multiplicity when it is constantly one.
    pub fn from_multi(ma: &MultiArrangement) -> Result<Self> {
        let mut file = ArrangementFile::from_arrangement(ma.arrangement())?;
        if !ma.is_simple() {
            file.multiplicity = Some(ma.multiplicity().values().to_vec());
        }
        Ok(file)
    }
}
