//! JSON map-spec files and report documents.
//!
//! ```json
//! {"field": "Fq:2:1,1,1", "domain_dim": 1, "codomain_dim": 1,
//!  "map": {"kind": "klinear_extension", "basis_images": ["[0,1]", "[0,1]"]}}
//! ```

use serde::{Deserialize, Serialize};

use super::check::{CheckReport, Witness};
use super::{char2_indicator, ratio_map, MapBody, MapSpec};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linspace::{Space, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub field: String,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub map: MapPayload,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapPayload {
    /// `[input, output]` for every domain vector.
    Table { entries: Vec<(String, String)> },
    /// `[representative, value]` for every orbit.
    OrbitTable { values: Vec<(String, String)> },
    KlinearExtension { basis_images: Vec<String> },
    Ratio,
    Indicator,
    Matrix { rows: Vec<Vec<String>> },
}

impl MapSpec {
    pub fn to_file(&self) -> MapFile {
        let pairs = |keys: Vec<Vector>, values: &[Vector]| {
            keys.into_iter()
                .zip(values)
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect()
        };
        let map = match self.body() {
            MapBody::Table(entries) => MapPayload::Table {
                entries: pairs(self.domain().vectors().expect("finite").collect(), entries),
            },
            MapBody::OrbitTable(values) => MapPayload::OrbitTable {
                values: pairs(
                    self.domain()
                        .orbits()
                        .expect("finite")
                        .into_iter()
                        .map(|o| o.representative)
                        .collect(),
                    values,
                ),
            },
            MapBody::KLinearExtension(images) => MapPayload::KlinearExtension {
                basis_images: images.iter().map(|e| e.to_string()).collect(),
            },
            MapBody::Ratio => MapPayload::Ratio,
            MapBody::Indicator => MapPayload::Indicator,
            MapBody::Matrix(rows) => MapPayload::Matrix {
                rows: rows
                    .iter()
                    .map(|r| r.iter().map(|e| e.to_string()).collect())
                    .collect(),
            },
        };
        MapFile {
            field: self.field().to_string(),
            domain_dim: self.domain().dim(),
            codomain_dim: self.codomain().dim(),
            map,
        }
    }

    pub fn from_file(file: &MapFile) -> Result<Self> {
        let field: Field = file.field.parse()?;
        let domain = Space::new(field.clone(), file.domain_dim)?;
        let codomain = Space::new(field.clone(), file.codomain_dim)?;
        let body = match &file.map {
            MapPayload::Table { entries } => {
                let mut table = vec![None; domain.cardinality()? as usize];
                for (input, output) in entries {
                    let u = domain.parse_vector(input)?;
                    let slot = &mut table[domain.rank(&u).expect("finite") as usize];
                    if slot.is_some() {
                        return Err(Error::InvalidMap(format!("table lists {input} twice")));
                    }
                    *slot = Some(codomain.parse_vector(output)?);
                }
                let values = table
                    .into_iter()
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::InvalidMap("table does not cover the domain".into()))?;
                MapBody::Table(values)
            }
            MapPayload::OrbitTable { values } => {
                let mut table = vec![None; domain.orbit_count()? as usize];
                for (rep, value) in values {
                    let r = domain.parse_vector(rep)?;
                    let idx = domain
                        .orbit_index(&r)
                        .ok_or_else(|| Error::InvalidMap(format!("{rep} is not a canonical representative")))?;
                    let slot = &mut table[idx as usize];
                    if slot.is_some() {
                        return Err(Error::InvalidMap(format!("orbit table lists {rep} twice")));
                    }
                    *slot = Some(codomain.parse_vector(value)?);
                }
                let values = table
                    .into_iter()
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::InvalidMap("orbit table misses an orbit".into()))?;
                MapBody::OrbitTable(values)
            }
            MapPayload::KlinearExtension { basis_images } => MapBody::KLinearExtension(
                basis_images
                    .iter()
                    .map(|s| field.parse_element(s))
                    .collect::<Result<_>>()?,
            ),
            MapPayload::Ratio => {
                let built = ratio_map(&field)?;
                return MapSpec::new(domain, codomain, built.body.clone());
            }
            MapPayload::Indicator => {
                let built = char2_indicator();
                if field != *built.field() {
                    return Err(Error::InvalidMap("indicator is defined over Fp:2".into()));
                }
                return MapSpec::new(domain, codomain, MapBody::Indicator);
            }
            MapPayload::Matrix { rows } => MapBody::Matrix(
                rows.iter()
                    .map(|r| r.iter().map(|s| field.parse_element(s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<_>>()?,
            ),
        };
        MapSpec::new(domain, codomain, body)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: MapFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        MapSpec::from_file(&file)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub kind: String,
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub property: String,
    pub verdict: String,
    pub witness: Option<WitnessDoc>,
    pub pairs_checked: u64,
}

impl From<&Witness> for WitnessDoc {
    fn from(w: &Witness) -> Self {
        match w {
            Witness::Additivity { u1, u2, lhs, rhs } => WitnessDoc {
                kind: "additivity".into(),
                inputs: vec![u1.to_string(), u2.to_string()],
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            },
            Witness::Homogeneity { lambda, u, lhs, rhs } => WitnessDoc {
                kind: "homogeneity".into(),
                inputs: vec![lambda.to_string(), u.to_string()],
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            },
        }
    }
}

impl From<&CheckReport> for ReportDoc {
    fn from(r: &CheckReport) -> Self {
        ReportDoc {
            property: r.property.as_str().into(),
            verdict: r.verdict.as_str().into(),
            witness: r.witness.as_ref().map(WitnessDoc::from),
            pairs_checked: r.pairs_checked,
        }
    }
}

impl Serialize for CheckReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ReportDoc::from(self).serialize(serializer)
    }
}
