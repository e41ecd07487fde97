//! Function-system embedding: represent an Archimedean polyhedral space
//! inside the functions on its extreme states, check that the embedding is a
//! unital order isomorphism onto its range and an isometry for the minimal
//! norm.
//!
//! The finite set of extreme states plays the role of the compact state
//! space: the sup of |f(v)| over all states is attained at an extreme state
//! by convexity, and positivity against every extreme state already decides
//! membership in the closed cone.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::cone::OrderedSpace;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::norms;
use crate::order;
use crate::scalar::Rational;
use crate::vector::{ComplexElement, RealVector};

/// Evaluation data of the embedding: one row per extreme state.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub extreme_states: Vec<Vec<Rational>>,
    /// rows = extreme states, columns = V_h basis.
    pub matrix: Matrix,
}

impl Embedding {
    /// Image of a hermitian element: the vector (f_k(h)).
    pub fn apply_hermitian(&self, h: &RealVector) -> Result<Vec<Rational>> {
        self.matrix.apply(&h.to_rationals()?)
    }

    /// Image of a complex element: pairs (f_k(x), f_k(y)) read as complex
    /// function values.
    pub fn apply(&self, v: &ComplexElement) -> Result<Vec<(Rational, Rational)>> {
        let re = self.matrix.apply(&v.re.to_rationals()?)?;
        let im = self.matrix.apply(&v.im.to_rationals()?)?;
        Ok(re.into_iter().zip(im).collect())
    }

    pub fn states(&self) -> usize {
        self.extreme_states.len()
    }
}

/// Build the embedding `v -> (f(v))_f over extreme states` of an Archimedean
/// polyhedral space. Injectivity (full column rank) is verified.
pub fn kadison_embed(space: &OrderedSpace) -> Result<Embedding> {
    if !space.cone.is_polyhedral() {
        return Err(Error::capability(
            "function-system embedding needs a polyhedral space",
        ));
    }
    if !order::is_archimedean(space)? {
        return Err(Error::precondition(
            "space is not Archimedean: apply archimedeanize first, then embed the quotient",
        ));
    }
    let sp = order::state_polytope(space)?;
    let states: Vec<Vec<Rational>> = sp
        .extreme_states
        .iter()
        .map(|f| f.coeffs.to_rationals())
        .collect::<Result<_>>()?;
    let matrix = Matrix::from_rows(states.clone())?;
    if matrix.rank() != space.n {
        return Err(Error::internal(
            "extreme states fail to separate points on an Archimedean space",
        ));
    }
    Ok(Embedding {
        extreme_states: states,
        matrix,
    })
}

/// One failed check with its counterexample.
#[derive(Debug, Clone)]
pub struct EmbeddingFailure {
    pub check: String,
    pub counterexample: ComplexElement,
}

#[derive(Debug, Clone)]
pub struct EmbeddingReport {
    /// max_k |f_k(v)| equals the minimal norm, exactly on squares.
    pub isometry: bool,
    /// h in cl(C) iff the image is componentwise nonnegative.
    pub order_isomorphism: bool,
    /// The unit maps to the constant-one function.
    pub unit_to_one: bool,
    /// The image of v* is the componentwise conjugate.
    pub star_compatible: bool,
    pub samples: usize,
    pub failures: Vec<EmbeddingFailure>,
}

impl EmbeddingReport {
    pub fn all_passed(&self) -> bool {
        self.isometry && self.order_isomorphism && self.unit_to_one && self.star_compatible
    }
}

/// Exercise the four embedding properties on `samples` deterministic
/// pseudo-random elements (plus the unit and the basis vectors).
pub fn verify_embedding(
    space: &OrderedSpace,
    emb: &Embedding,
    samples: usize,
    seed: u64,
) -> Result<EmbeddingReport> {
    let n = space.n;
    let mut report = EmbeddingReport {
        isometry: true,
        order_isomorphism: true,
        unit_to_one: true,
        star_compatible: true,
        samples,
        failures: Vec::new(),
    };
    // (3) unit to the constant function one
    let e_img = emb.apply_hermitian(&space.unit)?;
    if e_img.iter().any(|v| !v.is_one()) {
        report.unit_to_one = false;
        report.failures.push(EmbeddingFailure {
            check: String::from("unit does not map to the constant one"),
            counterexample: ComplexElement::hermitian(space.unit.clone()),
        });
    }
    let mut rng = seed | 1;
    let mut next_int = move || {
        rng ^= rng << 13;
        rng ^= rng >> 7;
        rng ^= rng << 17;
        ((rng >> 33) as i64).rem_euclid(9) - 4
    };
    for s in 0..samples {
        let v = if s == 0 {
            ComplexElement::hermitian(space.unit.clone())
        } else {
            ComplexElement::new(
                RealVector::from_ints(&(0..n).map(|_| next_int()).collect::<Vec<_>>()),
                RealVector::from_ints(&(0..n).map(|_| next_int()).collect::<Vec<_>>()),
            )?
        };
        // (1) isometry, exact on squared moduli
        let img = emb.apply(&v)?;
        let img_max_sq = img
            .iter()
            .map(|(a, b)| a * a + b * b)
            .max()
            .unwrap_or_else(Rational::zero);
        let m = norms::minimal_norm(space, &v, space.tol.max(1e-9))?;
        let msq = m
            .value_sq
            .ok_or_else(|| Error::internal("minimal norm lost its square on a polyhedral space"))?;
        if img_max_sq != msq {
            report.isometry = false;
            report.failures.push(EmbeddingFailure {
                check: format!("isometry: max |f(v)|^2 = {img_max_sq} but ||v||_m^2 = {msq}"),
                counterexample: v.clone(),
            });
        }
        // (2) order isomorphism on the hermitian part
        let h = v.re.clone();
        let member = space.closure_member(&h)?;
        let img_h = emb.apply_hermitian(&h)?;
        let nonneg = img_h.iter().all(|t| !t.is_negative());
        if member != nonneg {
            report.order_isomorphism = false;
            report.failures.push(EmbeddingFailure {
                check: String::from("membership does not match componentwise positivity"),
                counterexample: ComplexElement::hermitian(h),
            });
        }
        // (4) star compatibility
        let star_img = emb.apply(&crate::vector::star(&v))?;
        let conj: Vec<(Rational, Rational)> =
            img.iter().map(|(a, b)| (a.clone(), -b)).collect();
        if star_img != conj {
            report.star_compatible = false;
            report.failures.push(EmbeddingFailure {
                check: String::from("image of v* is not the componentwise conjugate"),
                counterexample: v,
            });
        }
    }
    Ok(report)
}
