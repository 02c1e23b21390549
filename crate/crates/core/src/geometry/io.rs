//! JSON forms of regions, simplices and adapted subdivisions. Coordinates
//! are exact `"p/q"` strings.

use serde::{Deserialize, Serialize};

use super::adapted::{AdaptedBlock, AdaptedSubdivision, CoverBox};
use super::{HalfSpace, LinearRegion, Point, Sense, Simplex};
use crate::complex::AtomId;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfSpaceJson {
    pub normal: Vec<i64>,
    #[serde(with = "rational::as_str")]
    pub offset: Rational,
    pub sense: Sense,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionJson {
    pub ambient_dim: usize,
    pub pieces: Vec<Vec<HalfSpaceJson>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointJson(#[serde(with = "rational::vec_as_str")] pub Point);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexJson {
    pub vertices: Vec<PointJson>,
    pub orientation: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockJson {
    pub atoms: Vec<AtomId>,
    pub trace: Vec<CoverBox>,
    pub depth: usize,
    pub simplices: Vec<SimplexJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdaptedJson {
    pub dim: usize,
    pub blocks: Vec<BlockJson>,
}

impl From<&HalfSpace> for HalfSpaceJson {
    fn from(h: &HalfSpace) -> Self {
        Self { normal: h.normal().to_vec(), offset: h.offset().clone(), sense: h.sense() }
    }
}

impl From<&LinearRegion> for RegionJson {
    fn from(r: &LinearRegion) -> Self {
        Self {
            ambient_dim: r.ambient_dim,
            pieces: r.pieces.iter().map(|p| p.iter().map(HalfSpaceJson::from).collect()).collect(),
        }
    }
}

impl TryFrom<&RegionJson> for LinearRegion {
    type Error = Error;

    fn try_from(r: &RegionJson) -> Result<Self> {
        let pieces = r
            .pieces
            .iter()
            .map(|p| p.iter().map(|h| HalfSpace::from_ints(&h.normal, h.offset.clone(), h.sense)).collect())
            .collect::<Result<Vec<Vec<HalfSpace>>>>()?;
        LinearRegion::new(r.ambient_dim, pieces)
    }
}

impl From<&Simplex> for SimplexJson {
    fn from(s: &Simplex) -> Self {
        Self { vertices: s.vertices.iter().cloned().map(PointJson).collect(), orientation: s.orientation }
    }
}

impl TryFrom<&SimplexJson> for Simplex {
    type Error = Error;

    fn try_from(s: &SimplexJson) -> Result<Self> {
        Simplex::new(s.vertices.iter().map(|p| p.0.clone()).collect())
    }
}

impl From<&AdaptedBlock> for BlockJson {
    fn from(b: &AdaptedBlock) -> Self {
        Self {
            atoms: b.atoms.clone(),
            trace: b.trace.clone(),
            depth: b.depth,
            simplices: b.simplices.iter().map(SimplexJson::from).collect(),
        }
    }
}

impl From<&AdaptedSubdivision> for AdaptedJson {
    fn from(s: &AdaptedSubdivision) -> Self {
        Self { dim: s.dim, blocks: s.blocks.iter().map(BlockJson::from).collect() }
    }
}

pub fn regions_to_json(regions: &[LinearRegion]) -> serde_json::Value {
    serde_json::to_value(regions.iter().map(RegionJson::from).collect::<Vec<_>>()).expect("serializable")
}

pub fn regions_from_json(text: &str) -> Result<Vec<LinearRegion>> {
    let raw: Vec<RegionJson> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    raw.iter().map(LinearRegion::try_from).collect()
}

pub fn simplices_to_json(simplices: &[Simplex]) -> serde_json::Value {
    serde_json::to_value(simplices.iter().map(SimplexJson::from).collect::<Vec<_>>()).expect("serializable")
}

pub fn simplices_from_json(text: &str) -> Result<Vec<Simplex>> {
    let raw: Vec<SimplexJson> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    raw.iter().map(Simplex::try_from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn region_round_trip() {
        let r = LinearRegion::cuboid(&[int(0), rat(1, 3)], &[int(2), int(1)]).unwrap();
        let text = regions_to_json(std::slice::from_ref(&r)).to_string();
        assert!(text.contains("\"1/3\""));
        assert_eq!(regions_from_json(&text).unwrap(), vec![r]);
    }

    #[test]
    fn simplex_round_trip() {
        let s = Simplex::new(vec![vec![int(0), int(0)], vec![rat(1, 2), int(0)], vec![int(0), int(1)]]).unwrap();
        let text = simplices_to_json(std::slice::from_ref(&s)).to_string();
        assert_eq!(simplices_from_json(&text).unwrap(), vec![s]);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"[{"ambient_dim": 1, "pieces": [], "colour": "red"}]"#;
        assert!(matches!(regions_from_json(text), Err(Error::Parse(_))));
    }
}
