//! Machine-readable reports: operation, input echo with digest, result,
//! certificates, warnings. Serialization order is stable, so identical
//! invocations produce byte-identical reports apart from the timing field.

use ordunit_core::norms::{
    CertifiedInterval, Decomposition, Domination, IntervalStatus, LowerCert, TermKind, UpperCert,
};
use ordunit_core::scalar::Rational;
use serde::{Deserialize, Serialize};

use crate::format::{rational_to_string, rationals_to_strings, ElementFile, SpaceFile};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema_version: u32,
    pub operation: String,
    pub inputs: Inputs,
    pub result: serde_json::Value,
    pub certificates: Vec<Certificate>,
    pub warnings: Vec<String>,
    /// Wall-clock milliseconds; excluded from reproducibility guarantees.
    pub timing_ms: u128,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Inputs {
    pub digest: String,
    pub space: SpaceFile,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<ElementFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_space: Option<SpaceFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub functional: Option<(Vec<Vec<String>>, Vec<String>)>,
    pub flags: Flags,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    pub tol: String,
    pub max_rounds: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

/// FNV-1a 64 over the canonical serialization of the inputs.
pub fn digest_of(value: &serde_json::Value) -> String {
    let text = serde_json::to_string(value).unwrap_or_default();
    let mut hash: u64 = 0xcbf29ce484222325;
    for b in text.as_bytes() {
        hash ^= u64::from(*b);
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("fnv1a64:{hash:016x}")
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Certificate {
    /// Extreme state whose evaluation modulus squared bounds the norm below.
    StateModulus {
        side: String,
        state: Vec<String>,
        value_sq: String,
    },
    /// Dual functional pair with its domination data.
    DualFunctional {
        side: String,
        phi_re: Vec<String>,
        phi_im: Vec<String>,
        domination: DominationJson,
        value: String,
    },
    /// Explicit decomposition: reconstructs the element, bounds the norm above.
    Decomposition {
        side: String,
        terms: Vec<TermJson>,
        #[serde(skip_serializing_if = "Option::is_none")]
        dominator: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        value_sq: Option<String>,
    },
    /// Approximate-mode bound with its source quantity.
    FloatBound {
        side: String,
        source: String,
        value: f64,
    },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum DominationJson {
    UnitBall,
    PositiveFunctional { mu: Vec<String> },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub coeff_re: String,
    pub coeff_im: String,
    pub element: Vec<String>,
    pub kind: String,
}

pub fn lower_cert_json(cert: &LowerCert) -> Certificate {
    match cert {
        LowerCert::StateModulus { state, value_sq } => Certificate::StateModulus {
            side: "lower".into(),
            state: rationals_to_strings(state),
            value_sq: rational_to_string(value_sq),
        },
        LowerCert::DualFunctional {
            phi_re,
            phi_im,
            domination,
            value,
        } => Certificate::DualFunctional {
            side: "lower".into(),
            phi_re: rationals_to_strings(phi_re),
            phi_im: rationals_to_strings(phi_im),
            domination: match domination {
                Domination::UnitBall => DominationJson::UnitBall,
                Domination::PositiveFunctional { mu } => DominationJson::PositiveFunctional {
                    mu: rationals_to_strings(mu),
                },
            },
            value: rational_to_string(value),
        },
        LowerCert::Float { source, value } => Certificate::FloatBound {
            side: "lower".into(),
            source: source.clone(),
            value: *value,
        },
    }
}

pub fn upper_cert_json(cert: &UpperCert) -> Certificate {
    match cert {
        UpperCert::Decomposition {
            decomposition,
            dominator,
            value_sq,
        } => Certificate::Decomposition {
            side: "upper".into(),
            terms: decomposition
                .terms
                .iter()
                .map(|t| TermJson {
                    coeff_re: rational_to_string(&t.coeff_re),
                    coeff_im: rational_to_string(&t.coeff_im),
                    element: rationals_to_strings(&t.element),
                    kind: match t.kind {
                        TermKind::Hermitian => "hermitian".into(),
                        TermKind::Positive => "positive".into(),
                    },
                })
                .collect(),
            dominator: dominator.as_ref().map(rational_to_string),
            value_sq: value_sq.as_ref().map(rational_to_string),
        },
        UpperCert::Float { source, value } => Certificate::FloatBound {
            side: "upper".into(),
            source: source.clone(),
            value: *value,
        },
    }
}

fn parse_rat(s: &str) -> Result<Rational, ordunit_core::Error> {
    ordunit_core::scalar::parse_scalar(s, ordunit_core::scalar::ScalarMode::Exact)?
        .to_rational()
}

fn parse_rats(v: &[String]) -> Result<Vec<Rational>, ordunit_core::Error> {
    v.iter().map(|s| parse_rat(s)).collect()
}

pub fn lower_cert_from_json(c: &Certificate) -> Result<LowerCert, ordunit_core::Error> {
    match c {
        Certificate::StateModulus { state, value_sq, .. } => Ok(LowerCert::StateModulus {
            state: parse_rats(state)?,
            value_sq: parse_rat(value_sq)?,
        }),
        Certificate::DualFunctional {
            phi_re,
            phi_im,
            domination,
            value,
            ..
        } => Ok(LowerCert::DualFunctional {
            phi_re: parse_rats(phi_re)?,
            phi_im: parse_rats(phi_im)?,
            domination: match domination {
                DominationJson::UnitBall => Domination::UnitBall,
                DominationJson::PositiveFunctional { mu } => Domination::PositiveFunctional {
                    mu: parse_rats(mu)?,
                },
            },
            value: parse_rat(value)?,
        }),
        Certificate::FloatBound { source, value, .. } => Ok(LowerCert::Float {
            source: source.clone(),
            value: *value,
        }),
        Certificate::Decomposition { .. } => Err(ordunit_core::Error::parse(
            "decomposition certificates bound from above",
        )),
    }
}

pub fn upper_cert_from_json(c: &Certificate) -> Result<UpperCert, ordunit_core::Error> {
    match c {
        Certificate::Decomposition {
            terms,
            dominator,
            value_sq,
            ..
        } => Ok(UpperCert::Decomposition {
            decomposition: Decomposition {
                terms: terms
                    .iter()
                    .map(|t| {
                        Ok(ordunit_core::norms::DecompositionTerm {
                            coeff_re: parse_rat(&t.coeff_re)?,
                            coeff_im: parse_rat(&t.coeff_im)?,
                            element: parse_rats(&t.element)?,
                            kind: match t.kind.as_str() {
                                "hermitian" => TermKind::Hermitian,
                                "positive" => TermKind::Positive,
                                other => {
                                    return Err(ordunit_core::Error::parse(format!(
                                        "unknown term kind `{other}`"
                                    )))
                                }
                            },
                        })
                    })
                    .collect::<Result<Vec<_>, ordunit_core::Error>>()?,
            },
            dominator: dominator.as_ref().map(|s| parse_rat(s)).transpose()?,
            value_sq: value_sq.as_ref().map(|s| parse_rat(s)).transpose()?,
        }),
        Certificate::FloatBound { source, value, .. } => Ok(UpperCert::Float {
            source: source.clone(),
            value: *value,
        }),
        _ => Err(ordunit_core::Error::parse(
            "this certificate kind bounds from below",
        )),
    }
}

pub fn cert_side(c: &Certificate) -> &str {
    match c {
        Certificate::StateModulus { side, .. }
        | Certificate::DualFunctional { side, .. }
        | Certificate::Decomposition { side, .. }
        | Certificate::FloatBound { side, .. } => side,
    }
}

/// Interval rendered for the result block.
pub fn interval_json(iv: &CertifiedInterval) -> serde_json::Value {
    serde_json::json!({
        "lower": iv.lower,
        "upper": iv.upper,
        "exact_lower": iv.exact_lower.as_ref().map(rational_to_string),
        "exact_upper": iv.exact_upper.as_ref().map(rational_to_string),
        "tol": iv.tol,
        "status": status_str(iv.status),
        "grid_k": iv.grid_k,
        "method_notes": iv.method_notes,
    })
}

pub fn status_str(s: IntervalStatus) -> &'static str {
    match s {
        IntervalStatus::Certified => "certified",
        IntervalStatus::BoundsOnly => "bounds_only",
        IntervalStatus::ToleranceUnmet => "tolerance_unmet",
    }
}
