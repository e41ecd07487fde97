//! Coordinate vectors, complex elements as real pairs, and functionals.
//!
//! The complex space is never stored as complex scalars: an element of `V` is
//! always the pair (re, im) of vectors in the hermitian part `V_h = R^n`, so
//! every algorithm downstream can run on real rational data.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Coordinates of an element of `V_h` in the fixed basis.
#[derive(Debug, Clone, PartialEq)]
pub struct RealVector {
    pub coords: Vec<Scalar>,
}

impl RealVector {
    pub fn new(coords: Vec<Scalar>) -> Self {
        RealVector { coords }
    }

    pub fn from_ints(vals: &[i64]) -> Self {
        RealVector::new(vals.iter().map(|&v| Scalar::from_int(v)).collect())
    }

    pub fn from_rationals(vals: Vec<Rational>) -> Self {
        RealVector::new(vals.into_iter().map(Scalar::Exact).collect())
    }

    pub fn zeros(n: usize) -> Self {
        RealVector::new(vec![Scalar::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    /// Exact rational coordinates (lossless for finite floats).
    pub fn to_rationals(&self) -> Result<Vec<Rational>> {
        self.coords.iter().map(Scalar::to_rational).collect()
    }

    pub fn to_f64s(&self) -> Vec<f64> {
        self.coords.iter().map(Scalar::to_f64).collect()
    }

    pub fn add(&self, other: &RealVector) -> Result<RealVector> {
        Error::check_dim(self.len(), other.len())?;
        Ok(RealVector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &RealVector) -> Result<RealVector> {
        Error::check_dim(self.len(), other.len())?;
        Ok(RealVector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn scale(&self, s: &Scalar) -> RealVector {
        RealVector::new(self.coords.iter().map(|c| c * s).collect())
    }

    pub fn neg(&self) -> RealVector {
        RealVector::new(self.coords.iter().map(|c| -c).collect())
    }

    pub fn dot(&self, other: &RealVector) -> Result<Scalar> {
        Error::check_dim(self.len(), other.len())?;
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b)))
    }
}

/// An element `v = x + iy` of the complex space, stored as the pair (x, y).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexElement {
    pub re: RealVector,
    pub im: RealVector,
}

impl ComplexElement {
    pub fn new(re: RealVector, im: RealVector) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::malformed(malformed_msg(re.len(), im.len())));
        }
        Ok(ComplexElement { re, im })
    }

    pub fn hermitian(re: RealVector) -> Self {
        let n = re.len();
        ComplexElement {
            re,
            im: RealVector::zeros(n),
        }
    }

    pub fn len(&self) -> usize {
        self.re.len()
    }

    pub fn is_empty(&self) -> bool {
        self.re.is_empty()
    }

    pub fn is_hermitian(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Scale by a complex scalar (a + bi): (a + bi)(x + iy) = (ax - by) + i(bx + ay).
    pub fn scale_complex(&self, a: &Scalar, b: &Scalar) -> Result<ComplexElement> {
        ComplexElement::new(
            self.re.scale(a).sub(&self.im.scale(b))?,
            self.re.scale(b).add(&self.im.scale(a))?,
        )
    }

    pub fn add(&self, other: &ComplexElement) -> Result<ComplexElement> {
        ComplexElement::new(self.re.add(&other.re)?, self.im.add(&other.im)?)
    }

    pub fn sub(&self, other: &ComplexElement) -> Result<ComplexElement> {
        ComplexElement::new(self.re.sub(&other.re)?, self.im.sub(&other.im)?)
    }
}

/// The *-operation: (x, y) -> (x, -y). Involutive and conjugate linear.
pub fn star(v: &ComplexElement) -> ComplexElement {
    ComplexElement {
        re: v.re.clone(),
        im: v.im.neg(),
    }
}

/// Real part of `v`, i.e. (v + v*)/2 in coordinates.
pub fn re_part(v: &ComplexElement) -> RealVector {
    v.re.clone()
}

/// Imaginary part of `v`, i.e. (v - v*)/2i in coordinates.
pub fn im_part(v: &ComplexElement) -> RealVector {
    v.im.clone()
}

/// A real linear functional on `V_h`, acting by the standard pairing.
#[derive(Debug, Clone, PartialEq)]
pub struct RealFunctional {
    pub coeffs: RealVector,
}

impl RealFunctional {
    pub fn new(coeffs: RealVector) -> Self {
        RealFunctional { coeffs }
    }

    pub fn from_rationals(vals: Vec<Rational>) -> Self {
        RealFunctional::new(RealVector::from_rationals(vals))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, h: &RealVector) -> Result<Scalar> {
        self.coeffs.dot(h)
    }

    pub fn eval_rational(&self, h: &[Rational]) -> Result<Rational> {
        let own = self.coeffs.to_rationals()?;
        Error::check_dim(own.len(), h.len())?;
        Ok(crate::linalg::dot(&own, h))
    }

    /// Complexification applied to `v`: the pair (f(Re v), f(Im v)) read as
    /// f(Re v) + i f(Im v).
    pub fn complexify(&self, v: &ComplexElement) -> Result<(Scalar, Scalar)> {
        Ok((self.eval(&v.re)?, self.eval(&v.im)?))
    }
}

/// A complex linear functional arising as the complexification of a real one.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexFunctional {
    pub base: RealFunctional,
}

impl ComplexFunctional {
    pub fn new(base: RealFunctional) -> Self {
        ComplexFunctional { base }
    }

    /// Evaluate as a complex pair (re, im).
    pub fn eval(&self, v: &ComplexElement) -> Result<(Scalar, Scalar)> {
        self.base.complexify(v)
    }

    /// Squared modulus of the evaluation; exact on exact inputs.
    pub fn eval_modulus_squared(&self, v: &ComplexElement) -> Result<Scalar> {
        let (re, im) = self.eval(v)?;
        Ok(&(&re * &re) + &(&im * &im))
    }
}

/// Convenience constructor for `x + iy` from rational coordinate slices.
pub fn complex_from_rationals(x: Vec<Rational>, y: Vec<Rational>) -> Result<ComplexElement> {
    ComplexElement::new(
        RealVector::from_rationals(x),
        RealVector::from_rationals(y),
    )
}

fn malformed_msg(re_len: usize, im_len: usize) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    let _ = write!(s, "re has length {re_len} but im has length {im_len}");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ce(re: &[i64], im: &[i64]) -> ComplexElement {
        ComplexElement::new(RealVector::from_ints(re), RealVector::from_ints(im)).unwrap()
    }

    #[test]
    fn star_conjugates_in_coordinates() {
        let v = ce(&[1, 0], &[0, 1]);
        let s = star(&v);
        assert_eq!(s.re, RealVector::from_ints(&[1, 0]));
        assert_eq!(s.im, RealVector::from_ints(&[0, -1]));
        // hermitian elements are fixed points
        let h = ce(&[2, 3], &[0, 0]);
        assert_eq!(star(&h), h);
    }

    #[test]
    fn re_im_reconstruct() {
        let v = ce(&[1, 0], &[0, 1]);
        assert_eq!(re_part(&v), RealVector::from_ints(&[1, 0]));
        assert_eq!(im_part(&v), RealVector::from_ints(&[0, 1]));
        assert_eq!(im_part(&star(&v)), RealVector::from_ints(&[0, -1]));
    }

    #[test]
    fn complexify_projects_coordinates() {
        let v = ce(&[1, 0], &[0, 1]);
        let f = RealFunctional::new(RealVector::from_ints(&[1, 0]));
        assert_eq!(
            f.complexify(&v).unwrap(),
            (Scalar::from_int(1), Scalar::from_int(0))
        );
        let g = RealFunctional::new(RealVector::from_ints(&[0, 1]));
        assert_eq!(
            g.complexify(&v).unwrap(),
            (Scalar::from_int(0), Scalar::from_int(1))
        );
    }

    #[test]
    fn mismatched_parts_rejected() {
        let bad = ComplexElement::new(RealVector::from_ints(&[1]), RealVector::from_ints(&[1, 2]));
        assert!(matches!(bad, Err(Error::MalformedElement(_))));
    }
}
