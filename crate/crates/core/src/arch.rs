//! Archimedeanization, order ideals, quotients, and the first-isomorphism
//! helper.
//!
//! For closed polyhedral cones the limit conditions defining D and N_J
//! collapse to plain membership: finitely generated cones and their sums with
//! subspaces are closed, so `r e + v in C + J for all r > 0` is equivalent to
//! `v in C + J`. The complex layer rides along componentwise, since every
//! ideal and kernel here is of the form `J_R + i J_R`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::cone::{self, ConeSpec, OrderedSpace};
use crate::error::{Error, Result};
use crate::linalg::{self, dot, Matrix};
use crate::order;
use crate::scalar::Rational;
use crate::vector::{ComplexElement, RealVector};

/// A linear map between hermitian parts, rows = target dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    pub matrix: Matrix,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Self {
        LinearMap { matrix }
    }

    pub fn identity(n: usize) -> Self {
        LinearMap {
            matrix: Matrix::identity(n),
        }
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows
    }

    pub fn apply(&self, v: &RealVector) -> Result<RealVector> {
        Ok(RealVector::from_rationals(
            self.matrix.apply(&v.to_rationals()?)?,
        ))
    }

    /// Complexification acts componentwise on (re, im).
    pub fn apply_complex(&self, v: &ComplexElement) -> Result<ComplexElement> {
        ComplexElement::new(self.apply(&v.re)?, self.apply(&v.im)?)
    }

    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        Ok(LinearMap {
            matrix: self.matrix.mul(&inner.matrix)?,
        })
    }

    /// Unital and positive against the closures of the two cones.
    pub fn is_positive_unital(
        &self,
        source: &OrderedSpace,
        target: &OrderedSpace,
    ) -> Result<bool> {
        Error::check_dim(source.n, self.source_dim())?;
        Error::check_dim(target.n, self.target_dim())?;
        if self.apply(&source.unit)?.to_rationals()? != target.unit_rationals()? {
            return Ok(false);
        }
        for g in cone::generators(&cone::closure(&source.cone))? {
            if !target.closure_member(&self.apply(&g)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Self-adjoint order ideal, stored through its hermitian part `J_R`; the
/// complex ideal is `J_R + i J_R`.
#[derive(Debug, Clone)]
pub struct OrderIdeal {
    pub basis: Vec<RealVector>,
}

impl OrderIdeal {
    pub fn new(basis: Vec<RealVector>) -> Self {
        OrderIdeal { basis }
    }

    pub fn zero() -> Self {
        OrderIdeal { basis: Vec::new() }
    }

    pub fn basis_rationals(&self) -> Result<Vec<Vec<Rational>>> {
        let raw: Vec<Vec<Rational>> = self
            .basis
            .iter()
            .map(|b| b.to_rationals())
            .collect::<Result<_>>()?;
        linalg::independent_subset(&raw)
    }
}

/// Quotient of the hermitian part by a subspace, with the induced cone.
#[derive(Debug, Clone)]
pub struct QuotientResult {
    /// Projection `V_h -> (V/N)_h` (rows = quotient dimension).
    pub projection: LinearMap,
    /// Right inverse of the projection for lifting representatives.
    pub section: LinearMap,
    /// Basis of the subspace that was quotiented out.
    pub kernel_basis: Vec<Vec<Rational>>,
    pub space: OrderedSpace,
}

impl QuotientResult {
    pub fn is_identity(&self) -> bool {
        self.kernel_basis.is_empty()
    }

    /// Apply the quotient map to a complex element (componentwise).
    pub fn project_complex(&self, v: &ComplexElement) -> Result<ComplexElement> {
        self.projection.apply_complex(v)
    }
}

/// D = closure of the cone, and N = D intersect -D as a subspace basis.
pub fn compute_d_and_n(space: &OrderedSpace) -> Result<(ConeSpec, Vec<Vec<Rational>>)> {
    let d = cone::closure(&space.cone);
    let n = cone::lineality_space(&d)?;
    Ok((d, n))
}

/// Quotient V/N with cone D + N and unit e + N; the result is Archimedean.
/// When N = {0} and the cone is closed the projection is the identity.
pub fn archimedeanize(space: &OrderedSpace) -> Result<QuotientResult> {
    let (d, n_basis) = compute_d_and_n(space)?;
    if n_basis.is_empty() {
        let space_out = OrderedSpace {
            n: space.n,
            cone: d,
            unit: space.unit.clone(),
            basis_labels: space.basis_labels.clone(),
            mode: space.mode,
            tol: space.tol,
        };
        return Ok(QuotientResult {
            projection: LinearMap::identity(space.n),
            section: LinearMap::identity(space.n),
            kernel_basis: Vec::new(),
            space: space_out,
        });
    }
    let (projection, section) = quotient_maps(&n_basis, space.n)?;
    // D is invariant under translation by N, so the section pulls the H-rep
    // back exactly: image cone = { c : A S c >= 0 }.
    let quotient_cone = match &d {
        ConeSpec::PolyhedralH { rows, .. } => {
            let mut new_rows = Vec::new();
            for r in rows {
                let a = r.normal.to_rationals()?;
                let pulled: Vec<Rational> = (0..projection.target_dim())
                    .map(|j| {
                        (0..space.n)
                            .map(|i| &a[i] * &section.matrix[(i, j)])
                            .sum::<Rational>()
                    })
                    .collect();
                if pulled.iter().any(|x| !x.is_zero()) {
                    new_rows.push(cone::HalfSpace {
                        normal: RealVector::from_rationals(pulled),
                        strict: false,
                    });
                }
            }
            ConeSpec::polyhedral_h(new_rows, false)?
        }
        _ => project_cone_generators(&d, &projection)?,
    };
    let unit = projection.apply(&space.unit)?;
    let out = OrderedSpace {
        n: projection.target_dim(),
        cone: quotient_cone,
        unit,
        basis_labels: None,
        mode: space.mode,
        tol: space.tol,
    };
    if !cone::is_pointed(&out.cone)? {
        return Err(Error::internal("archimedeanization produced a non-pointed cone"));
    }
    Ok(QuotientResult {
        projection,
        section,
        kernel_basis: n_basis,
        space: out,
    })
}

/// Projection/section pair for V_h / span(kernel), with the complement basis
/// chosen deterministically (standard basis vectors in index order).
fn quotient_maps(kernel: &[Vec<Rational>], n: usize) -> Result<(LinearMap, LinearMap)> {
    let complement = linalg::complete_basis(kernel, n)?;
    let m = complement.len();
    // columns of B: kernel basis then complement
    let mut b = Matrix::zeros(n, n);
    for (j, k) in kernel.iter().chain(complement.iter()).enumerate() {
        for i in 0..n {
            b[(i, j)] = k[i].clone();
        }
    }
    let b_inv = b
        .inverse()?
        .ok_or_else(|| Error::internal("kernel + complement basis not invertible"))?;
    let mut projection = Matrix::zeros(m, n);
    for j in 0..m {
        for i in 0..n {
            projection[(j, i)] = b_inv[(kernel.len() + j, i)].clone();
        }
    }
    let mut section = Matrix::zeros(n, m);
    for (j, c) in complement.iter().enumerate() {
        for i in 0..n {
            section[(i, j)] = c[i].clone();
        }
    }
    Ok((LinearMap::new(projection), LinearMap::new(section)))
}

fn project_cone_generators(c: &ConeSpec, projection: &LinearMap) -> Result<ConeSpec> {
    let mut gens = Vec::new();
    for g in cone::generators(c)? {
        let img = projection.apply(&g)?;
        let canon = linalg::canonical_direction(&img.to_rationals()?);
        if canon.iter().any(|x| !x.is_zero()) {
            let v = RealVector::from_rationals(canon);
            if !gens.contains(&v) {
                gens.push(v);
            }
        }
    }
    ConeSpec::polyhedral_v(gens)
}

/// Outcome of the order-ideal test, with an explicit violation witness
/// (`0 <= q <= p`, `p` in J, `q` outside) when the answer is negative.
#[derive(Debug, Clone)]
pub struct OrderIdealCheck {
    pub is_ideal: bool,
    pub witness: Option<OrderIdealViolation>,
}

#[derive(Debug, Clone)]
pub struct OrderIdealViolation {
    pub p: Vec<Rational>,
    pub q: Vec<Rational>,
}

/// Decide whether span(J) is an order ideal of the closed cone.
///
/// J is an order ideal iff F = J intersect cl(C) is a face of cl(C), iff the
/// minimal face of cl(C) containing a relative-interior point of F lies in J.
/// That face is cut out by the rows active at s = (sum of the generators of
/// F), and its generators are enumerated and tested for membership in J.
pub fn is_order_ideal(space: &OrderedSpace, ideal: &OrderIdeal) -> Result<OrderIdealCheck> {
    if !space.cone.is_polyhedral() {
        if ideal.basis.iter().all(RealVector::is_zero) || ideal.basis.is_empty() {
            return Ok(OrderIdealCheck {
                is_ideal: true,
                witness: None,
            });
        }
        return Err(Error::capability(
            "order-ideal testing on matrix cones supports only J = {0}",
        ));
    }
    let basis = ideal.basis_rationals()?;
    let n = space.n;
    for b in &basis {
        Error::check_dim(n, b.len())?;
    }
    // relative-interior point of J intersect cl C
    let f_gens = order::subspace_cone_generators(space, &basis)?;
    let mut s = vec![Rational::zero(); n];
    for g in &f_gens {
        for i in 0..n {
            s[i] += &g[i];
        }
    }
    let rows = space.cone_rows()?;
    let mut active: Vec<Vec<Rational>> = Vec::new();
    let mut inactive: Vec<Vec<Rational>> = Vec::new();
    for a in &rows {
        if dot(a, &s).is_zero() {
            active.push(a.clone());
        } else {
            inactive.push(a.clone());
        }
    }
    let (rays, lineality) = cone::cone_vrep_of_hrep(&inactive, &active, n)?;
    let mut face_gens: Vec<Vec<Rational>> = rays;
    for l in lineality {
        face_gens.push(l.iter().map(|x| -x).collect());
        face_gens.push(l);
    }
    for g in &face_gens {
        if !linalg::in_span(&basis, g)? {
            // witness: q = g with p = s / eps where eps = max{ e : s - e g in cl C }
            let mut eps: Option<Rational> = None;
            for a in &rows {
                let ag = dot(a, g);
                if ag.is_positive() {
                    let bound = dot(a, &s) / ag;
                    if eps.as_ref().map_or(true, |e| bound < *e) {
                        eps = Some(bound);
                    }
                }
            }
            let p = match eps {
                Some(e) if e.is_positive() => s.iter().map(|x| x / &e).collect(),
                _ => s.clone(),
            };
            return Ok(OrderIdealCheck {
                is_ideal: false,
                witness: Some(OrderIdealViolation { p, q: g.clone() }),
            });
        }
    }
    Ok(OrderIdealCheck {
        is_ideal: true,
        witness: None,
    })
}

/// Quotient of the space by an order ideal: cone = image of C, unit = e + J.
pub fn quotient(space: &OrderedSpace, ideal: &OrderIdeal) -> Result<QuotientResult> {
    let basis = ideal.basis_rationals()?;
    if basis.is_empty() {
        return Ok(QuotientResult {
            projection: LinearMap::identity(space.n),
            section: LinearMap::identity(space.n),
            kernel_basis: Vec::new(),
            space: space.clone(),
        });
    }
    if space.cone.has_strict_rows() {
        return Err(Error::capability(
            "quotients of non-closed cones by nontrivial ideals leave the representable family; archimedeanize first or use arch_quotient",
        ));
    }
    let check = is_order_ideal(space, ideal)?;
    if !check.is_ideal {
        return Err(Error::Precondition(violation_message(&check)));
    }
    if linalg::in_span(&basis, &space.unit_rationals()?)? {
        return Err(Error::precondition("order unit lies in the ideal"));
    }
    let (projection, section) = quotient_maps(&basis, space.n)?;
    let quotient_cone = project_cone_generators(&space.cone, &projection)?;
    if !cone::is_pointed(&quotient_cone)? {
        return Err(Error::internal(
            "quotient by an order ideal produced a non-pointed cone",
        ));
    }
    let unit = projection.apply(&space.unit)?;
    let out = OrderedSpace {
        n: projection.target_dim(),
        cone: quotient_cone,
        unit,
        basis_labels: None,
        mode: space.mode,
        tol: space.tol,
    };
    Ok(QuotientResult {
        projection,
        section,
        kernel_basis: basis,
        space: out,
    })
}

fn violation_message(check: &OrderIdealCheck) -> String {
    use core::fmt::Write;
    let mut s = String::from("subspace is not an order ideal");
    if let Some(w) = &check.witness {
        let _ = write!(
            s,
            ": q = {} satisfies 0 <= q <= p = {} but q is outside",
            fmt_vec(&w.q),
            fmt_vec(&w.p)
        );
    }
    s
}

fn fmt_vec(v: &[Rational]) -> String {
    use core::fmt::Write;
    let mut s = String::from("(");
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{x}");
    }
    s.push(')');
    s
}

/// Archimedean quotient in one step: V / N_J with N_J = (cl C + J) âˆ© -(cl C + J).
/// For closed polyhedral cones the sum cl C + J is closed, so the
/// for-all-r limit condition reduces to plain membership; `r_grid_spot_check`
/// samples r = 1, 1/2, 1/4, ... as a runtime sanity check of that collapse.
pub fn arch_quotient(space: &OrderedSpace, ideal: &OrderIdeal) -> Result<QuotientResult> {
    if !space.cone.is_polyhedral() {
        return Err(Error::capability("arch_quotient needs a polyhedral cone"));
    }
    let basis = ideal.basis_rationals()?;
    let check = is_order_ideal(space, ideal)?;
    if !check.is_ideal {
        return Err(Error::Precondition(violation_message(&check)));
    }
    // W = cl C + J as a V-rep cone
    let mut w_gens = cone::generators(&cone::closure(&space.cone))?;
    for b in &basis {
        w_gens.push(RealVector::from_rationals(b.clone()));
        w_gens.push(RealVector::from_rationals(b.iter().map(|x| -x).collect()));
    }
    let w = ConeSpec::polyhedral_v(w_gens)?;
    let n_j = cone::lineality_space(&w)?;
    if linalg::in_span(&n_j, &space.unit_rationals()?)? {
        return Err(Error::precondition("order unit lies in N_J"));
    }
    if n_j.is_empty() {
        let space_out = OrderedSpace {
            n: space.n,
            cone: cone::closure(&space.cone),
            unit: space.unit.clone(),
            basis_labels: space.basis_labels.clone(),
            mode: space.mode,
            tol: space.tol,
        };
        return Ok(QuotientResult {
            projection: LinearMap::identity(space.n),
            section: LinearMap::identity(space.n),
            kernel_basis: Vec::new(),
            space: space_out,
        });
    }
    let (projection, section) = quotient_maps(&n_j, space.n)?;
    let quotient_cone = project_cone_generators(&w, &projection)?;
    if !cone::is_pointed(&quotient_cone)? {
        return Err(Error::internal("arch quotient produced a non-pointed cone"));
    }
    let unit = projection.apply(&space.unit)?;
    let out = OrderedSpace {
        n: projection.target_dim(),
        cone: quotient_cone,
        unit,
        basis_labels: None,
        mode: space.mode,
        tol: space.tol,
    };
    Ok(QuotientResult {
        projection,
        section,
        kernel_basis: n_j,
        space: out,
    })
}

/// Spot check of the closed-cone collapse behind `arch_quotient`: an element
/// declared in N_J must satisfy `j + r e +/- v in cl C` for sampled r.
pub fn r_grid_spot_check(space: &OrderedSpace, q: &QuotientResult, depth: u32) -> Result<bool> {
    let e = space.unit_rationals()?;
    let gens = cone::generators(&cone::closure(&space.cone))?;
    let mut w_gens = gens;
    for b in &q.kernel_basis {
        w_gens.push(RealVector::from_rationals(b.clone()));
        w_gens.push(RealVector::from_rationals(b.iter().map(|x| -x).collect()));
    }
    let w = ConeSpec::polyhedral_v(w_gens)?;
    for v in &q.kernel_basis {
        let mut r = Rational::one();
        for _ in 0..depth {
            for sign in [Rational::one(), -Rational::one()] {
                let shifted: Vec<Rational> = (0..space.n)
                    .map(|i| &r * &e[i] + &sign * &v[i])
                    .collect();
                if !cone::member(&w, &RealVector::from_rationals(shifted), space.tol)? {
                    return Ok(false);
                }
            }
            r /= Rational::from_integer(2.into());
        }
    }
    Ok(true)
}

/// Factorization through the Archimedeanization: for positive unital phi into
/// an Archimedean target, produce the induced map with phi = induced âˆ˜ q.
#[derive(Debug, Clone)]
pub struct FactorResult {
    pub quotient: QuotientResult,
    pub induced: LinearMap,
    /// Exact verification that induced âˆ˜ q equals phi.
    pub factorization_exact: bool,
}

pub fn factor_through(
    space: &OrderedSpace,
    phi: &LinearMap,
    target: &OrderedSpace,
) -> Result<FactorResult> {
    if !order::is_archimedean(target)? {
        return Err(Error::precondition("factorization target must be Archimedean"));
    }
    if !phi.is_positive_unital(space, target)? {
        return Err(Error::precondition(
            "map must be positive and unital for the universal property",
        ));
    }
    let q = archimedeanize(space)?;
    // positive unital maps into Archimedean targets kill N
    for k in &q.kernel_basis {
        let img = phi.matrix.apply(k)?;
        if img.iter().any(|x| !x.is_zero()) {
            return Err(Error::internal(
                "kernel of the Archimedeanization not annihilated by a positive unital map",
            ));
        }
    }
    let induced = phi.compose(&q.section)?;
    let recomposed = induced.compose(&q.projection)?;
    let factorization_exact = recomposed.matrix == phi.matrix;
    if !factorization_exact {
        return Err(Error::internal("factorization identity failed"));
    }
    Ok(FactorResult {
        quotient: q,
        induced,
        factorization_exact,
    })
}

/// First-isomorphism analysis of a positive unital map between Archimedean
/// spaces: kernel ideal, Archimedean quotient, induced map, and the
/// order-isomorphism condition `phi(V+) = W+ intersect im(phi)`.
#[derive(Debug, Clone)]
pub struct FirstIsoReport {
    pub kernel_basis: Vec<Vec<Rational>>,
    pub kernel_is_order_ideal: bool,
    pub quotient: QuotientResult,
    pub induced: LinearMap,
    /// phi(V+) = W+ intersect im(phi)?
    pub cone_condition: bool,
    /// Order isomorphism onto the image (requires the cone condition).
    pub order_isomorphism: bool,
}

pub fn first_isomorphism(
    space: &OrderedSpace,
    phi: &LinearMap,
    target: &OrderedSpace,
) -> Result<FirstIsoReport> {
    if !order::is_archimedean(space)? || !order::is_archimedean(target)? {
        return Err(Error::precondition(
            "first isomorphism requires Archimedean source and target",
        ));
    }
    if !phi.is_positive_unital(space, target)? {
        return Err(Error::precondition("map must be positive and unital"));
    }
    let kernel = phi.matrix.nullspace();
    let ideal = OrderIdeal::new(
        kernel
            .iter()
            .cloned()
            .map(RealVector::from_rationals)
            .collect(),
    );
    let kernel_check = is_order_ideal(space, &ideal)?;
    let q = arch_quotient(space, &ideal)?;
    // for kernels of positive unital maps, N_J = J exactly
    if q.kernel_basis.len() != kernel.len() {
        return Err(Error::internal("N_J differs from ker(phi) for a kernel ideal"));
    }
    let induced = phi.compose(&q.section)?;
    let image_cone = phi_image_cone(space, phi)?;
    let restricted = target_cone_on_image(target, phi)?;
    let cone_condition =
        mutual_cone_inclusion(&image_cone, &restricted)? && mutual_cone_inclusion(&restricted, &image_cone)?;
    let injective = induced.matrix.rank() == q.space.n;
    Ok(FirstIsoReport {
        kernel_basis: kernel,
        kernel_is_order_ideal: kernel_check.is_ideal,
        quotient: q,
        induced,
        cone_condition,
        order_isomorphism: cone_condition && injective,
    })
}

/// phi(V+) as a V-rep cone in the target.
fn phi_image_cone(space: &OrderedSpace, phi: &LinearMap) -> Result<ConeSpec> {
    let mut gens = Vec::new();
    for g in cone::generators(&cone::closure(&space.cone))? {
        let img = phi.apply(&g)?;
        let canon = linalg::canonical_direction(&img.to_rationals()?);
        if canon.iter().any(|x| !x.is_zero()) {
            let v = RealVector::from_rationals(canon);
            if !gens.contains(&v) {
                gens.push(v);
            }
        }
    }
    ConeSpec::polyhedral_v(gens)
}

/// W+ intersect im(phi) as a V-rep cone in the target.
fn target_cone_on_image(target: &OrderedSpace, phi: &LinearMap) -> Result<ConeSpec> {
    let cols: Vec<Vec<Rational>> = (0..phi.source_dim())
        .map(|j| {
            (0..phi.target_dim())
                .map(|i| phi.matrix[(i, j)].clone())
                .collect()
        })
        .collect();
    let img_basis = linalg::independent_subset(&cols)?;
    if img_basis.is_empty() {
        return ConeSpec::polyhedral_v(Vec::new());
    }
    let gens = order::subspace_cone_generators(target, &img_basis)?;
    let mut out: Vec<RealVector> = Vec::new();
    for g in gens {
        let canon = linalg::canonical_direction(&g);
        if canon.iter().any(|x| !x.is_zero()) {
            let v = RealVector::from_rationals(canon);
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    ConeSpec::polyhedral_v(out)
}

/// Is every generator of `a` a member of `b`?
fn mutual_cone_inclusion(a: &ConeSpec, b: &ConeSpec) -> Result<bool> {
    let gens = match a {
        ConeSpec::PolyhedralV { generators } => generators.clone(),
        other => cone::generators(other)?,
    };
    for g in gens {
        if !cone::member(b, &g, 0.0)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::HalfSpace;
    use crate::scalar::{rat, Scalar};

    fn open_quadrant() -> OrderedSpace {
        let cone = ConeSpec::polyhedral_h(
            vec![
                HalfSpace {
                    normal: RealVector::from_ints(&[1, 0]),
                    strict: true,
                },
                HalfSpace {
                    normal: RealVector::from_ints(&[0, 1]),
                    strict: true,
                },
            ],
            true,
        )
        .unwrap();
        OrderedSpace::new(cone, RealVector::from_ints(&[1, 1])).unwrap()
    }

    fn halfplane_interior() -> OrderedSpace {
        let cone = ConeSpec::polyhedral_h(
            vec![HalfSpace {
                normal: RealVector::from_ints(&[1, 0]),
                strict: true,
            }],
            true,
        )
        .unwrap();
        OrderedSpace::new(cone, RealVector::from_ints(&[1, 0])).unwrap()
    }

    #[test]
    fn d_and_n_of_examples() {
        // open quadrant: D = orthant, N = 0
        let (d, n) = compute_d_and_n(&open_quadrant()).unwrap();
        assert!(n.is_empty());
        assert!(cone::member(&d, &RealVector::from_ints(&[1, 0]), 0.0).unwrap());
        // halfplane interior: D = halfplane, N = y-axis
        let (_, n) = compute_d_and_n(&halfplane_interior()).unwrap();
        assert_eq!(n.len(), 1);
        assert!(n[0][0].is_zero() && !n[0][1].is_zero());
        // orthant: already Archimedean
        let s = OrderedSpace::orthant(2, RealVector::from_ints(&[1, 1])).unwrap();
        let (_, n) = compute_d_and_n(&s).unwrap();
        assert!(n.is_empty());
    }

    #[test]
    fn archimedeanize_open_quadrant_is_orthant_with_identity() {
        let q = archimedeanize(&open_quadrant()).unwrap();
        assert!(q.is_identity());
        assert_eq!(q.space.n, 2);
        assert!(order::is_archimedean(&q.space).unwrap());
        assert!(q.space.member(&RealVector::from_ints(&[1, 0])).unwrap());
    }

    #[test]
    fn archimedeanize_orthant_is_identity() {
        let s = OrderedSpace::orthant(2, RealVector::from_ints(&[1, 1])).unwrap();
        let q = archimedeanize(&s).unwrap();
        assert!(q.is_identity());
        // idempotent: the output is a fixed point
        let q2 = archimedeanize(&q.space).unwrap();
        assert!(q2.is_identity());
    }

    #[test]
    fn archimedeanize_halfplane_interior_gives_the_line() {
        let s = halfplane_interior();
        let q = archimedeanize(&s).unwrap();
        assert_eq!(q.space.n, 1);
        assert!(order::is_archimedean(&q.space).unwrap());
        assert_eq!(q.space.unit_rationals().unwrap(), vec![rat(1)]);
        assert!(q.space.member(&RealVector::from_ints(&[1])).unwrap());
        assert!(!q.space.member(&RealVector::from_ints(&[-1])).unwrap());
        // projection kills exactly the y-axis
        assert_eq!(
            q.projection.apply(&RealVector::from_ints(&[0, 5])).unwrap(),
            RealVector::from_ints(&[0])
        );
        // projection . section = id
        let ps = q.projection.compose(&q.section).unwrap();
        assert_eq!(ps.matrix, Matrix::identity(1));
        assert!(r_grid_spot_check(&s, &q, 6).unwrap());
    }

    #[test]
    fn face_ideals_of_the_orthant() {
        let s = OrderedSpace::orthant(3, RealVector::from_ints(&[1, 1, 1])).unwrap();
        let j = OrderIdeal::new(vec![RealVector::from_ints(&[1, 0, 0])]);
        assert!(is_order_ideal(&s, &j).unwrap().is_ideal);
        let bad = OrderIdeal::new(vec![RealVector::from_ints(&[1, 1, 0])]);
        let check = is_order_ideal(&s, &bad).unwrap();
        assert!(!check.is_ideal);
        let w = check.witness.unwrap();
        // 0 <= q <= p with p in J and q outside: exactly the documented failure
        assert!(s.member(&RealVector::from_rationals(w.q.clone())).unwrap());
        let p_minus_q: Vec<Rational> = w.p.iter().zip(&w.q).map(|(a, b)| a - b).collect();
        assert!(s.member(&RealVector::from_rationals(p_minus_q)).unwrap());
    }

    #[test]
    fn zero_ideal_and_off_cone_line_are_ideals() {
        let s = OrderedSpace::orthant(2, RealVector::from_ints(&[1, 1])).unwrap();
        assert!(is_order_ideal(&s, &OrderIdeal::zero()).unwrap().is_ideal);
        // span{(1,-1)} meets the cone only at 0: vacuously an order ideal
        let j = OrderIdeal::new(vec![RealVector::from_ints(&[1, -1])]);
        assert!(is_order_ideal(&s, &j).unwrap().is_ideal);
    }

    #[test]
    fn quotient_orthant_by_axis() {
        let s = OrderedSpace::orthant(3, RealVector::from_ints(&[1, 1, 1])).unwrap();
        let j = OrderIdeal::new(vec![RealVector::from_ints(&[1, 0, 0])]);
        let q = quotient(&s, &j).unwrap();
        assert_eq!(q.space.n, 2);
        assert_eq!(q.space.unit_rationals().unwrap(), vec![rat(1), rat(1)]);
        assert!(order::validate_space(&q.space).unwrap().is_valid());
        // the quotient cone is the orthant in quotient coordinates
        assert!(q.space.member(&RealVector::from_ints(&[1, 0])).unwrap());
        assert!(!q.space.member(&RealVector::from_ints(&[-1, 0])).unwrap());
        // J = 0 gives the identity
        let q0 = quotient(&s, &OrderIdeal::zero()).unwrap();
        assert!(q0.is_identity());
    }

    #[test]
    fn quotient_rejects_non_ideals() {
        let s = OrderedSpace::orthant(3, RealVector::from_ints(&[1, 1, 1])).unwrap();
        let bad = OrderIdeal::new(vec![RealVector::from_ints(&[1, 1, 0])]);
        assert!(matches!(quotient(&s, &bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn arch_quotient_matches_quotient_on_closed_cones() {
        let s = OrderedSpace::orthant(3, RealVector::from_ints(&[1, 1, 1])).unwrap();
        let j = OrderIdeal::new(vec![RealVector::from_ints(&[1, 0, 0])]);
        let q = arch_quotient(&s, &j).unwrap();
        assert_eq!(q.space.n, 2);
        assert!(order::is_archimedean(&q.space).unwrap());
        // here N_J = J
        assert_eq!(q.kernel_basis.len(), 1);
        assert!(r_grid_spot_check(&s, &q, 6).unwrap());
        // J = {0} on an Archimedean space: identity
        let q0 = arch_quotient(&s, &OrderIdeal::zero()).unwrap();
        assert!(q0.is_identity());
    }

    #[test]
    fn arch_quotient_on_general_vrep_cone() {
        let c = ConeSpec::polyhedral_v(vec![
            RealVector::from_ints(&[1, 0, 0]),
            RealVector::from_ints(&[1, 1, 0]),
            RealVector::from_ints(&[1, 1, 1]),
        ])
        .unwrap();
        let s = OrderedSpace::new(c, RealVector::from_ints(&[3, 2, 1])).unwrap();
        assert!(order::validate_space(&s).unwrap().is_valid());
        let j = OrderIdeal::new(vec![RealVector::from_ints(&[0, 0, 1])]);
        if is_order_ideal(&s, &j).unwrap().is_ideal {
            let q = arch_quotient(&s, &j).unwrap();
            assert!(order::is_archimedean(&q.space).unwrap());
            assert!(order::validate_space(&q.space).unwrap().is_valid());
        }
    }

    #[test]
    fn factor_through_halfplane_interior() {
        // phi(x, y) = x into (R, R+, 1) factors through the archimedeanization
        let s = halfplane_interior();
        let target = OrderedSpace::orthant(1, RealVector::from_ints(&[1])).unwrap();
        let phi = LinearMap::new(
            Matrix::from_rows(vec![vec![rat(1), rat(0)]]).unwrap(),
        );
        let f = factor_through(&s, &phi, &target).unwrap();
        assert!(f.factorization_exact);
        assert_eq!(f.quotient.space.n, 1);
        // universal property applied to q itself: induced = identity
        let q = archimedeanize(&s).unwrap();
        let f2 = factor_through(&s, &q.projection, &q.space).unwrap();
        assert_eq!(f2.induced.matrix, Matrix::identity(1));
    }

    #[test]
    fn first_isomorphism_coordinate_projection() {
        let s = OrderedSpace::orthant(3, RealVector::from_ints(&[1, 1, 1])).unwrap();
        let w = OrderedSpace::orthant(2, RealVector::from_ints(&[1, 1])).unwrap();
        let phi = LinearMap::new(
            Matrix::from_rows(vec![
                vec![rat(1), rat(0), rat(0)],
                vec![rat(0), rat(1), rat(0)],
            ])
            .unwrap(),
        );
        let report = first_isomorphism(&s, &phi, &w).unwrap();
        assert!(report.kernel_is_order_ideal);
        assert!(report.cone_condition);
        assert!(report.order_isomorphism);
        assert_eq!(report.quotient.space.n, 2);
    }

    #[test]
    fn first_isomorphism_injective_map_is_trivial_quotient() {
        let s = OrderedSpace::orthant(2, RealVector::from_ints(&[1, 1])).unwrap();
        let phi = LinearMap::identity(2);
        let report = first_isomorphism(&s, &phi, &s).unwrap();
        assert!(report.quotient.is_identity());
        assert!(report.order_isomorphism);
        assert_eq!(report.induced.matrix, phi.matrix);
    }

    #[test]
    fn first_isomorphism_detects_cone_shrinkage() {
        // source cone generated by {(1,0),(1,1)} mapped identically into the
        // orthant: image cone is strictly smaller than W+ on the image
        let v = OrderedSpace::new(
            ConeSpec::polyhedral_v(vec![
                RealVector::from_ints(&[1, 0]),
                RealVector::from_ints(&[1, 1]),
            ])
            .unwrap(),
            RealVector::from_ints(&[2, 1]),
        )
        .unwrap();
        // target: orthant with matching unit
        let w = OrderedSpace::orthant(2, RealVector::from_ints(&[2, 1])).unwrap();
        let phi = LinearMap::identity(2);
        let report = first_isomorphism(&v, &phi, &w).unwrap();
        assert!(!report.cone_condition);
        assert!(!report.order_isomorphism);
    }

    #[test]
    fn complex_layer_star_commutes_with_projection() {
        let s = halfplane_interior();
        let q = archimedeanize(&s).unwrap();
        let v = ComplexElement::new(
            RealVector::from_ints(&[1, 2]),
            RealVector::from_ints(&[3, -4]),
        )
        .unwrap();
        let a = q.project_complex(&crate::vector::star(&v)).unwrap();
        let b = crate::vector::star(&q.project_complex(&v).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn positive_unital_maps_kill_n() {
        // any positive unital map out of the halfplane-interior space kills y
        let s = halfplane_interior();
        let target = OrderedSpace::orthant(2, RealVector::from_ints(&[1, 2])).unwrap();
        // phi(e1) = unit, phi(e2) = 0 is the only choice; check positivity
        let phi = LinearMap::new(
            Matrix::from_rows(vec![vec![rat(1), rat(0)], vec![rat(2), rat(0)]]).unwrap(),
        );
        assert!(phi.is_positive_unital(&s, &target).unwrap());
        let f = factor_through(&s, &phi, &target).unwrap();
        assert!(f.factorization_exact);
        let _ = Scalar::one();
    }
}
