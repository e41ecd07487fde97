//! Strict JSON schemas for space files and the conversions to core types.
//!
//! One space per file. Scalars are strings: `p/q` or integers in exact mode,
//! decimal literals in approx mode; a literal of the wrong kind for the
//! file's mode is rejected. Unknown fields are rejected everywhere.

use std::collections::BTreeMap;

use ordunit_core::cone::{ConeSpec, HalfSpace};
use ordunit_core::linalg::Matrix;
use ordunit_core::scalar::{parse_scalar, Rational, Scalar, ScalarMode};
use ordunit_core::vector::{ComplexElement, RealVector};
use ordunit_core::{Error as CoreError, OrderedSpace};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub schema_version: u32,
    pub scalar_mode: ScalarModeTag,
    pub dimension: usize,
    pub cone: ConeFile,
    pub unit: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub elements: BTreeMap<String, ElementFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ideals: BTreeMap<String, IdealFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, MapFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functionals: BTreeMap<String, FunctionalFile>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarModeTag {
    Exact,
    Approx,
}

impl From<ScalarModeTag> for ScalarMode {
    fn from(t: ScalarModeTag) -> ScalarMode {
        match t {
            ScalarModeTag::Exact => ScalarMode::Exact,
            ScalarModeTag::Approx => ScalarMode::Approx,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ConeFile {
    PolyhedralH {
        rows: Vec<HalfSpaceFile>,
        #[serde(default)]
        include_origin: bool,
    },
    PolyhedralV {
        generators: Vec<Vec<String>>,
    },
    MatrixPsd {
        d: usize,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfSpaceFile {
    pub normal: Vec<String>,
    #[serde(default)]
    pub strict: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementFile {
    pub re: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealFile {
    pub basis: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    /// rows = target dimension, columns = source dimension
    pub matrix: Vec<Vec<String>>,
    /// Path of the target space file, relative to this file.
    pub target: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionalFile {
    /// Basis of the subspace the functional is defined on.
    pub basis: Vec<Vec<String>>,
    pub values: Vec<String>,
}

pub fn parse_vector(vals: &[String], mode: ScalarMode) -> Result<RealVector, CoreError> {
    let coords = vals
        .iter()
        .map(|s| parse_scalar(s, mode))
        .collect::<Result<Vec<Scalar>, _>>()?;
    Ok(RealVector::new(coords))
}

impl SpaceFile {
    pub fn to_space(&self) -> Result<OrderedSpace, CoreError> {
        if self.schema_version != 1 {
            return Err(CoreError::parse(format!(
                "unsupported schema_version {} (expected 1)",
                self.schema_version
            )));
        }
        let mode: ScalarMode = self.scalar_mode.into();
        let cone = match &self.cone {
            ConeFile::PolyhedralH {
                rows,
                include_origin,
            } => {
                let rows = rows
                    .iter()
                    .map(|r| {
                        Ok(HalfSpace {
                            normal: parse_vector(&r.normal, mode)?,
                            strict: r.strict,
                        })
                    })
                    .collect::<Result<Vec<_>, CoreError>>()?;
                ConeSpec::polyhedral_h(rows, *include_origin)?
            }
            ConeFile::PolyhedralV { generators } => {
                let gens = generators
                    .iter()
                    .map(|g| parse_vector(g, mode))
                    .collect::<Result<Vec<_>, _>>()?;
                ConeSpec::polyhedral_v(gens)?
            }
            ConeFile::MatrixPsd { d } => {
                if mode != ScalarMode::Approx {
                    return Err(CoreError::parse(
                        "matrix_psd cones require scalar_mode = approx",
                    ));
                }
                ConeSpec::MatrixPsd { d: *d }
            }
        };
        if cone.ambient_dim() != self.dimension {
            return Err(CoreError::parse(format!(
                "cone lives in dimension {} but the file declares {}",
                cone.ambient_dim(),
                self.dimension
            )));
        }
        let unit = parse_vector(&self.unit, mode)?;
        let mut space = OrderedSpace::new(cone, unit)?;
        space.basis_labels = self.basis_labels.clone();
        // the constructor picks the default mode/tol pair per cone family;
        // an exact file over a polyhedral cone keeps exact mode
        if mode == ScalarMode::Approx && space.mode == ScalarMode::Exact {
            space = space.with_mode(ScalarMode::Approx, 1e-9);
        }
        Ok(space)
    }

    pub fn element(&self, name: &str, mode: ScalarMode) -> Result<ComplexElement, CoreError> {
        let ef = self
            .elements
            .get(name)
            .ok_or_else(|| CoreError::parse(format!("no element named `{name}` in the file")))?;
        element_from_file(ef, mode)
    }

    pub fn ideal(&self, name: &str, mode: ScalarMode) -> Result<Vec<RealVector>, CoreError> {
        let f = self
            .ideals
            .get(name)
            .ok_or_else(|| CoreError::parse(format!("no ideal named `{name}` in the file")))?;
        f.basis.iter().map(|b| parse_vector(b, mode)).collect()
    }

    pub fn map(&self, name: &str) -> Result<&MapFile, CoreError> {
        self.maps
            .get(name)
            .ok_or_else(|| CoreError::parse(format!("no map named `{name}` in the file")))
    }

    pub fn functional(
        &self,
        name: &str,
        mode: ScalarMode,
    ) -> Result<(Vec<RealVector>, Vec<Scalar>), CoreError> {
        let f = self
            .functionals
            .get(name)
            .ok_or_else(|| CoreError::parse(format!("no functional named `{name}` in the file")))?;
        let basis = f
            .basis
            .iter()
            .map(|b| parse_vector(b, mode))
            .collect::<Result<Vec<_>, _>>()?;
        let values = f
            .values
            .iter()
            .map(|s| parse_scalar(s, mode))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((basis, values))
    }
}

pub fn element_from_file(ef: &ElementFile, mode: ScalarMode) -> Result<ComplexElement, CoreError> {
    let re = parse_vector(&ef.re, mode)?;
    let im = match &ef.im {
        Some(im) => parse_vector(im, mode)?,
        None => RealVector::zeros(re.len()),
    };
    ComplexElement::new(re, im)
}

pub fn matrix_from_rows(rows: &[Vec<String>], mode: ScalarMode) -> Result<Matrix, CoreError> {
    let parsed: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| parse_scalar(s, mode)?.to_rational())
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    Matrix::from_rows(parsed)
}

/// Parse an element argument: a name from the file's `elements` block, a
/// hermitian literal `(a,b,...)`, or a complex literal `(..)+(..)i`.
pub fn parse_element_arg(
    file: &SpaceFile,
    arg: &str,
    mode: ScalarMode,
) -> Result<ComplexElement, CoreError> {
    let t = arg.trim();
    if !t.starts_with('(') {
        return file.element(t, mode);
    }
    let parse_tuple = |s: &str| -> Result<RealVector, CoreError> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| CoreError::parse(format!("malformed tuple `{s}`")))?;
        let vals: Vec<String> = inner.split(',').map(|x| x.trim().to_string()).collect();
        parse_vector(&vals, mode)
    };
    if let Some(stripped) = t.strip_suffix('i') {
        if let Some(pos) = stripped.find(")+(") {
            let re = parse_tuple(&stripped[..pos + 1])?;
            let im = parse_tuple(&stripped[pos + 2..])?;
            return ComplexElement::new(re, im);
        }
        return Err(CoreError::parse(format!(
            "malformed complex element literal `{t}`; expected `(..)+(..)i`"
        )));
    }
    Ok(ComplexElement::hermitian(parse_tuple(t)?))
}

/// Scalar rendered per the file conventions: `p/q` for exact values,
/// decimal text for floats.
pub fn scalar_to_string(s: &Scalar) -> String {
    format!("{s}")
}

pub fn rational_to_string(r: &Rational) -> String {
    scalar_to_string(&Scalar::Exact(r.clone()))
}

pub fn vector_to_strings(v: &RealVector) -> Vec<String> {
    v.coords.iter().map(scalar_to_string).collect()
}

pub fn rationals_to_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational_to_string).collect()
}

/// Serialize a space back into the file schema (used for quotient outputs
/// and for embedding inputs in reports).
pub fn space_to_file(space: &OrderedSpace) -> SpaceFile {
    let cone = match &space.cone {
        ConeSpec::PolyhedralH {
            rows,
            include_origin,
        } => ConeFile::PolyhedralH {
            rows: rows
                .iter()
                .map(|r| HalfSpaceFile {
                    normal: vector_to_strings(&r.normal),
                    strict: r.strict,
                })
                .collect(),
            include_origin: *include_origin,
        },
        ConeSpec::PolyhedralV { generators } => ConeFile::PolyhedralV {
            generators: generators.iter().map(vector_to_strings).collect(),
        },
        ConeSpec::MatrixPsd { d } => ConeFile::MatrixPsd { d: *d },
    };
    SpaceFile {
        schema_version: 1,
        scalar_mode: match space.mode {
            ScalarMode::Exact => ScalarModeTag::Exact,
            ScalarMode::Approx => ScalarModeTag::Approx,
        },
        dimension: space.n,
        cone,
        unit: vector_to_strings(&space.unit),
        basis_labels: space.basis_labels.clone(),
        elements: BTreeMap::new(),
        ideals: BTreeMap::new(),
        maps: BTreeMap::new(),
        functionals: BTreeMap::new(),
    }
}

pub fn element_to_file(v: &ComplexElement) -> ElementFile {
    ElementFile {
        re: vector_to_strings(&v.re),
        im: if v.im.is_zero() {
            None
        } else {
            Some(vector_to_strings(&v.im))
        },
    }
}
