//! Recipe files: what to build and which subcomplexes to look at.
//!
//! A recipe is a bare build object `{"kind": ...}`, a complex file, or a
//! wrapper
//!
//! ```json
//! {
//!   "recipe": { "kind": "kronecker", "q": 3, "p": 1 },
//!   "coeff": "z2",
//!   "subcomplexes": { "a": { "closure": [[0, 0, 0]] } },
//!   "cochain": { "degree": 1, "values": [["1", "0", "1"]] },
//!   "homotopy": "cylinder"
//! }
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use lamcohom::circle::{ArcSet, QuadReal};
use lamcohom::complex::io::ComplexFile;
use lamcohom::constructions::{kronecker, product_complex, suspension, wedge, SuspensionData};
use lamcohom::geometry::io::RegionJson;
use lamcohom::geometry::{CoverElement, LinearRegion};
use lamcohom::rational::{self, Rational};
use lamcohom::{CoeffKind, DeltaComplex, FiberedComplex, Instance, PartialHolonomy, Subcomplex, Transversal};
use serde::Deserialize;

/// Bad input: exit status 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<lamcohom::Error> for InputError {
    fn from(e: lamcohom::Error) -> Self {
        InputError(e.to_string())
    }
}

pub type Input<T> = Result<T, InputError>;

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BaseSpec {
    Point,
    Edge,
    Triangle,
    Simplex { n: usize },
    Circle { vertices: usize },
    Bouquet { loops: usize },
    Torus,
    Torus7,
    Sphere2,
    Simplices { maximal: Vec<Vec<usize>> },
}

impl BaseSpec {
    pub fn build(&self) -> Input<DeltaComplex> {
        Ok(match self {
            BaseSpec::Point => DeltaComplex::point(),
            BaseSpec::Edge => DeltaComplex::edge(),
            BaseSpec::Triangle => DeltaComplex::triangle(),
            BaseSpec::Simplex { n } => DeltaComplex::simplex(*n),
            BaseSpec::Circle { vertices } if *vertices == 0 => {
                return Err(InputError("a circle needs at least one vertex".into()))
            }
            BaseSpec::Circle { vertices } => DeltaComplex::circle(*vertices),
            BaseSpec::Bouquet { loops } => DeltaComplex::bouquet(*loops),
            BaseSpec::Torus => DeltaComplex::torus(),
            BaseSpec::Torus7 => DeltaComplex::torus7(),
            BaseSpec::Sphere2 => DeltaComplex::sphere2(),
            BaseSpec::Simplices { maximal } => {
                if maximal.iter().any(Vec::is_empty) {
                    return Err(InputError("empty simplex in \"maximal\"".into()));
                }
                DeltaComplex::from_simplices(maximal)
            }
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverSpec {
    pub dim: usize,
    pub atoms: usize,
    pub elements: Vec<CoverElement>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Recipe {
    ExplicitComplex {
        #[serde(default)]
        complex: Option<ComplexFile>,
        #[serde(default)]
        file: Option<String>,
    },
    Product {
        base: BaseSpec,
        #[serde(with = "rational::vec_as_str")]
        weights: Vec<Rational>,
    },
    Wedge {
        first: Box<Recipe>,
        second: Box<Recipe>,
        first_vertex: usize,
        second_vertex: usize,
        gamma: Vec<(usize, usize)>,
    },
    Suspension(SuspensionData),
    Kronecker {
        q: usize,
        p: i64,
    },
    Arcs {
        sets: Vec<ArcSet>,
        angles: Vec<QuadReal>,
        #[serde(default)]
        levels: Option<u32>,
    },
    Geometry {
        #[serde(default)]
        regions: Option<Vec<RegionJson>>,
        #[serde(default)]
        cover: Option<CoverSpec>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum SubSpec {
    /// Face closure of the listed `[dim, family, atom]` instances.
    Closure(Vec<(usize, usize, usize)>),
    /// Coface closure.
    Star(Vec<(usize, usize, usize)>),
    /// Exactly the listed instances.
    Instances(Vec<(usize, usize, usize)>),
}

impl SubSpec {
    pub fn build(&self, c: &FiberedComplex) -> Input<Subcomplex> {
        let inst = |v: &[(usize, usize, usize)]| v.iter().map(|&(d, f, a)| Instance::new(d, f, a)).collect::<Vec<_>>();
        Ok(match self {
            SubSpec::Closure(v) => Subcomplex::closure(c, inst(v))?,
            SubSpec::Star(v) => Subcomplex::star(c, inst(v))?,
            SubSpec::Instances(v) => Subcomplex::from_instances(c, inst(v))?,
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainSpec {
    pub degree: usize,
    /// One list of `"p/q"` values per family, in base order.
    pub values: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HomotopyKind {
    Cylinder,
    Projection,
    CollapseBottom,
    CollapseTop,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecipeFile {
    pub recipe: Recipe,
    #[serde(default)]
    pub coeff: Option<CoeffKind>,
    #[serde(default)]
    pub subcomplexes: BTreeMap<String, SubSpec>,
    #[serde(default)]
    pub cochain: Option<CochainSpec>,
    #[serde(default)]
    pub homotopy: Option<HomotopyKind>,
}

/// A parsed recipe together with the directory its `file` references are
/// resolved against.
pub struct Loaded {
    pub file: RecipeFile,
    pub dir: PathBuf,
}

fn parse_error(origin: &str, e: serde_json::Error) -> InputError {
    InputError(format!("{origin}: parse error: {e}"))
}

pub fn parse(text: &str, origin: &str) -> Input<RecipeFile> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| parse_error(origin, e))?;
    let bare = |recipe| RecipeFile { recipe, coeff: None, subcomplexes: BTreeMap::new(), cochain: None, homotopy: None };
    if value.get("kind").is_some() {
        Ok(bare(serde_json::from_str(text).map_err(|e| parse_error(origin, e))?))
    } else if value.get("transversal").is_some() {
        let complex: ComplexFile = serde_json::from_str(text).map_err(|e| parse_error(origin, e))?;
        Ok(bare(Recipe::ExplicitComplex { complex: Some(complex), file: None }))
    } else {
        serde_json::from_str(text).map_err(|e| parse_error(origin, e))
    }
}

pub fn load(path: &Path) -> Input<Loaded> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let file = parse(&text, &path.display().to_string())?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(Loaded { file, dir })
}

impl Recipe {
    pub fn kind(&self) -> &'static str {
        match self {
            Recipe::ExplicitComplex { .. } => "explicit-complex",
            Recipe::Product { .. } => "product",
            Recipe::Wedge { .. } => "wedge",
            Recipe::Suspension(_) => "suspension",
            Recipe::Kronecker { .. } => "kronecker",
            Recipe::Arcs { .. } => "arcs",
            Recipe::Geometry { .. } => "geometry",
        }
    }

    pub fn build_complex(&self, dir: &Path) -> Input<FiberedComplex> {
        match self {
            Recipe::ExplicitComplex { complex, file } => match (complex, file) {
                (Some(c), None) => Ok(c.clone().into_complex()?),
                (None, Some(f)) => {
                    let path = dir.join(f);
                    let text =
                        std::fs::read_to_string(&path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
                    FiberedComplex::from_json(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
                }
                _ => Err(InputError("explicit-complex needs exactly one of \"complex\" and \"file\"".into())),
            },
            Recipe::Product { base, weights } => Ok(product_complex(&base.build()?, Transversal::new(weights.clone())?)),
            Recipe::Wedge { first, second, first_vertex, second_vertex, gamma } => {
                let f = first.build_complex(dir)?;
                let g = second.build_complex(dir)?;
                let gamma = PartialHolonomy::new(gamma.iter().copied());
                Ok(wedge(&f, &g, *first_vertex, *second_vertex, &gamma)?.complex)
            }
            Recipe::Suspension(data) => Ok(suspension(data)?),
            Recipe::Kronecker { q, p } => Ok(kronecker(*q, *p)?),
            Recipe::Arcs { .. } | Recipe::Geometry { .. } => {
                Err(InputError(format!("a {} recipe does not describe a complex", self.kind())))
            }
        }
    }
}

pub fn regions(raw: &[RegionJson]) -> Input<Vec<LinearRegion>> {
    Ok(raw.iter().map(LinearRegion::try_from).collect::<lamcohom::Result<Vec<_>>>()?)
}
