//! JSON file formats for models and point maps.
//!
//! All rationals travel as strings such as `"1/8"`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::constructions::PointMap;
use crate::error::Error;
use crate::grade::Grade;
use crate::model::{Model, Valuation};
use crate::space::UltrametricSpace;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceSpec {
    /// Row-major matrix in `points` order.
    Matrix(Vec<Vec<String>>),
    /// Binary history per point; distances follow the first-difference rule.
    Sequences(BTreeMap<String, String>),
}

/// On-disk model. Field order is alphabetical so output keys are sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub distance: DistanceSpec,
    pub points: Vec<String>,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<String>>,
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<ModelFile, Error> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Matrix form of an in-memory model.
    pub fn from_model(m: &Model) -> ModelFile {
        let n = m.space.len();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| m.space.distance(i, j).to_string()).collect())
            .collect();
        ModelFile {
            distance: DistanceSpec::Matrix(matrix),
            points: m.space.points().to_vec(),
            valuation: m.valuation.to_names(&m.space),
        }
    }

    /// Build the space without checking the metric axioms.
    pub fn space_unchecked(&self) -> Result<UltrametricSpace, Error> {
        match &self.distance {
            DistanceSpec::Matrix(rows) => {
                let matrix = rows
                    .iter()
                    .map(|r| r.iter().map(|s| s.parse::<Grade>()).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                UltrametricSpace::new(self.points.clone(), matrix)
            }
            DistanceSpec::Sequences(seqs) => {
                if let Some(extra) = seqs.keys().find(|k| !self.points.contains(k)) {
                    return Err(Error::UnknownPoint(extra.clone()));
                }
                let ordered = self
                    .points
                    .iter()
                    .map(|p| seqs.get(p).cloned().ok_or_else(|| Error::Format(format!("no sequence for `{p}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                UltrametricSpace::from_sequences(self.points.clone(), &ordered)
            }
        }
    }

    /// Build and validate the model; invalid spaces are rejected with the
    /// full violation report.
    pub fn into_model(&self) -> Result<Model, Error> {
        let space = self.space_unchecked()?;
        let report = space.validate();
        if !report.is_valid() {
            return Err(Error::InvalidSpace(report));
        }
        let valuation = Valuation::from_names(&space, self.valuation.clone())?;
        Model::new(space, valuation)
    }
}

pub fn load_model(text: &str) -> Result<Model, Error> {
    ModelFile::from_json(text)?.into_model()
}

/// Valuation file: atom to point names.
pub fn load_valuation(text: &str) -> Result<BTreeMap<String, Vec<String>>, Error> {
    Ok(serde_json::from_str(text)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointMapFile {
    pub k: String,
    pub map: BTreeMap<String, String>,
}

impl PointMapFile {
    pub fn from_json(text: &str) -> Result<PointMapFile, Error> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn resolve(&self, src: &UltrametricSpace, tgt: &UltrametricSpace) -> Result<PointMap, Error> {
        PointMap::from_names(src, tgt, &self.map, self.k.parse()?)
    }

    pub fn from_point_map(pm: &PointMap, src: &UltrametricSpace, tgt: &UltrametricSpace) -> PointMapFile {
        PointMapFile {
            k: pm.k().to_string(),
            map: pm
                .images()
                .iter()
                .enumerate()
                .map(|(i, &j)| (src.name(i).to_string(), tgt.name(j).to_string()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}
