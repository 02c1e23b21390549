//! JSON text form of a fibered complex.
//!
//! ```json
//! {
//!   "transversal": { "atoms": [0, 1], "weights": ["1/2", "1/3"] },
//!   "families": [
//!     [ { "base": [0, 1], "faces": [] } ],
//!     [ { "base": [0, 1], "faces": [ { "target": 0, "map": [[0, 0], [1, 1]] },
//!                                    { "target": 0, "map": [[0, 0], [1, 1]] } ] } ]
//!   ],
//!   "regularity_bound": 2
//! }
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{structural, Error, Result};
use crate::rational::{self, Rational};

use super::{Face, FiberedComplex, PartialHolonomy, SimplexFamily, Transversal};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransversalFile {
    pub atoms: Vec<usize>,
    #[serde(with = "rational::vec_as_str")]
    pub weights: Vec<Rational>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceFile {
    pub target: usize,
    pub map: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub base: Vec<usize>,
    pub faces: Vec<FaceFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub transversal: TransversalFile,
    pub families: Vec<Vec<FamilyFile>>,
    pub regularity_bound: usize,
}

impl ComplexFile {
    pub fn from_complex(c: &FiberedComplex) -> Self {
        let transversal = TransversalFile {
            atoms: (0..c.transversal().len()).collect(),
            weights: c.transversal().weights().to_vec(),
        };
        let families = c
            .all_families()
            .iter()
            .map(|fams| {
                fams.iter()
                    .map(|f| FamilyFile {
                        base: f.base.clone(),
                        faces: f
                            .faces
                            .iter()
                            .map(|face| FaceFile { target: face.target, map: face.map.pairs().collect() })
                            .collect(),
                    })
                    .collect()
            })
            .collect();
        Self { transversal, families, regularity_bound: c.regularity_bound() }
    }

    pub fn into_complex(self) -> Result<FiberedComplex> {
        let ComplexFile { transversal, families, regularity_bound } = self;
        if transversal.atoms.len() != transversal.weights.len() {
            return Err(structural(format!(
                "{} atoms but {} weights",
                transversal.atoms.len(),
                transversal.weights.len()
            )));
        }
        if transversal.atoms.iter().enumerate().any(|(i, &a)| a != i) {
            return Err(structural("atom ids must be dense and ordered 0..k-1"));
        }
        let families = families
            .into_iter()
            .enumerate()
            .map(|(n, fams)| {
                fams.into_iter()
                    .map(|f| {
                        let faces = f
                            .faces
                            .into_iter()
                            .map(|face| Face::new(face.target, PartialHolonomy::new(face.map)))
                            .collect();
                        SimplexFamily::new(n, f.base, faces)
                    })
                    .collect()
            })
            .collect();
        FiberedComplex::new(Transversal::new(transversal.weights)?, families, regularity_bound)
    }
}

impl FiberedComplex {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ComplexFile::from_complex(self)).expect("complex serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ComplexFile = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
        file.into_complex()
    }
}
