//! Order-theoretic computations on an ordered space: validation, Archimedean
//! checks, the state interval, the order seminorm, the state polytope,
//! functional positivity and norms, and constructive positive extension.
//!
//! All state and seminorm computations run against the closure of the cone;
//! states cannot see strictness, so for non-Archimedean spaces this realizes
//! the seminorm semantics (the values match the sup-over-states formulas).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Float, One, Signed, Zero};

use crate::cone::{self, ConeSpec, OrderedSpace};
use crate::error::{Error, Result};
use crate::linalg::{self, dot, Matrix};
use crate::lp::{self, LinearProgram, LpResult, Polytope, Row};
use crate::psd;
use crate::scalar::{Rational, Scalar};
use crate::vector::{RealFunctional, RealVector};

/// Per-axiom validation outcome.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub pointed: bool,
    pub unit_in_cone: bool,
    /// Order-unit condition per basis vector: some r > 0 with r e +/- b in C.
    pub order_unit_on_basis: Vec<bool>,
    pub archimedean: bool,
    pub messages: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.pointed && self.unit_in_cone && self.order_unit_on_basis.iter().all(|&b| b)
    }
}

/// Check the ordered-space axioms: pointedness, e in the cone, and the
/// order-unit condition on every basis vector (which suffices for all of V_h).
pub fn validate_space(space: &OrderedSpace) -> Result<ValidationReport> {
    let n = space.n;
    let pointed = cone::is_pointed(&space.cone)?;
    let unit_in_cone = space.member(&space.unit)?;
    let mut order_unit_on_basis = Vec::with_capacity(n);
    let mut messages = Vec::new();
    if !pointed {
        messages.push(String::from("cone is not pointed: C intersect -C != {0}"));
    }
    if !unit_in_cone {
        messages.push(String::from("unit is not a member of the cone"));
    }
    for k in 0..n {
        let mut b = RealVector::zeros(n);
        b.coords[k] = Scalar::one();
        let ok = dominates_some_multiple(space, &b)? && dominates_some_multiple(space, &b.neg())?;
        if !ok {
            messages.push(format!(
                "order-unit condition fails on basis vector {k}: no r > 0 with r e - v in cone"
            ));
        }
        order_unit_on_basis.push(ok);
    }
    let archimedean = if order_unit_on_basis.iter().all(|&b| b) && pointed && unit_in_cone {
        is_archimedean(space)?
    } else {
        false
    };
    Ok(ValidationReport {
        pointed,
        unit_in_cone,
        order_unit_on_basis,
        archimedean,
        messages,
    })
}

/// Validation that errors out on the first violated axiom.
pub fn ensure_valid(space: &OrderedSpace) -> Result<ValidationReport> {
    let report = validate_space(space)?;
    if !report.is_valid() {
        return Err(Error::precondition(
            report
                .messages
                .first()
                .cloned()
                .unwrap_or_else(|| String::from("space fails validation")),
        ));
    }
    Ok(report)
}

/// Is there r > 0 with `r e - v` in the cone (strictness respected)?
fn dominates_some_multiple(space: &OrderedSpace, v: &RealVector) -> Result<bool> {
    match &space.cone {
        ConeSpec::PolyhedralH {
            rows,
            include_origin,
        } => {
            let e = space.unit_rationals()?;
            let x = v.to_rationals()?;
            // one-variable feasibility of { r > 0 : a.(re - v) >= 0 (or >) }
            let mut lo = Rational::zero();
            let mut lo_strict = true; // the r > 0 constraint itself
            let mut hi: Option<(Rational, bool)> = None;
            for r in rows {
                let a = r.normal.to_rationals()?;
                let ae = dot(&a, &e);
                let av = dot(&a, &x);
                if ae.is_zero() {
                    let ok = if r.strict {
                        av.is_negative()
                    } else {
                        !av.is_positive()
                    };
                    if !ok {
                        return origin_rescue(*include_origin, &e, &x);
                    }
                } else if ae.is_positive() {
                    let bound = &av / &ae;
                    if bound > lo {
                        lo = bound;
                        lo_strict = r.strict;
                    } else if bound == lo {
                        lo_strict = lo_strict || r.strict;
                    }
                } else {
                    let bound = &av / &ae;
                    match &mut hi {
                        None => hi = Some((bound, r.strict)),
                        Some((h, hs)) => {
                            if bound < *h {
                                *h = bound;
                                *hs = r.strict;
                            } else if bound == *h {
                                *hs = *hs || r.strict;
                            }
                        }
                    }
                }
            }
            let feasible = match &hi {
                None => true,
                Some((h, hs)) => lo < *h || (lo == *h && !lo_strict && !hs),
            };
            if feasible {
                Ok(true)
            } else {
                origin_rescue(*include_origin, &e, &x)
            }
        }
        ConeSpec::PolyhedralV { generators } => {
            // feasibility of r e - sum lambda g = v with lambda >= 0, r free
            let n = space.n;
            let k = generators.len();
            let e = space.unit_rationals()?;
            let x = v.to_rationals()?;
            let mut prog = LinearProgram::new(1 + k, vec![Rational::zero(); 1 + k], false)?;
            for i in 0..n {
                let mut coeffs = vec![Rational::zero(); 1 + k];
                coeffs[0] = e[i].clone();
                for (j, g) in generators.iter().enumerate() {
                    coeffs[1 + j] = -g.to_rationals()?[i].clone();
                }
                prog.push_eq(Row::new(coeffs, x[i].clone()))?;
            }
            for j in 0..k {
                let mut coeffs = vec![Rational::zero(); 1 + k];
                coeffs[1 + j] = Rational::one();
                prog.push_ineq(Row::homogeneous(coeffs))?;
            }
            Ok(matches!(lp::solve(&prog)?, LpResult::Optimal { .. }))
        }
        ConeSpec::MatrixPsd { d } => {
            // doubling probe: succeeds iff the unit eventually dominates v
            let e = psd::coords_to_matrix(*d, &space.unit.to_f64s())?;
            let b = psd::coords_to_matrix(*d, &v.to_f64s())?;
            let mut r = 1.0f64;
            for _ in 0..48 {
                let m = e.combine(r, &b, -1.0);
                if psd::min_eigenvalue(&m) >= -space.tol {
                    return Ok(true);
                }
                r *= 2.0;
            }
            Ok(false)
        }
    }
}

fn origin_rescue(include_origin: bool, e: &[Rational], x: &[Rational]) -> Result<bool> {
    // r e - v = 0 for some r > 0 lands on the adjoined origin
    if !include_origin {
        return Ok(false);
    }
    let Some(i0) = e.iter().position(|c| !c.is_zero()) else {
        return Ok(x.iter().all(Zero::is_zero));
    };
    let r = &x[i0] / &e[i0];
    if !r.is_positive() {
        return Ok(false);
    }
    for i in 0..e.len() {
        if &r * &e[i] != x[i] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Archimedean iff the cone is closed. For strict polyhedral cones this is
/// decided by testing the closure's generators against the strict rows: the
/// strict set is itself closed under conic combinations, so it contains the
/// closure iff it contains every extreme generator.
pub fn is_archimedean(space: &OrderedSpace) -> Result<bool> {
    match &space.cone {
        ConeSpec::MatrixPsd { .. } | ConeSpec::PolyhedralV { .. } => Ok(true),
        ConeSpec::PolyhedralH { rows, .. } => {
            if rows.iter().all(|r| !r.strict) {
                return Ok(true);
            }
            for g in cone::generators(&cone::closure(&space.cone))? {
                if !space.member(&g)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// The exact range of state values on a hermitian element.
#[derive(Debug, Clone)]
pub struct StateInterval {
    pub alpha: Scalar,
    pub beta: Scalar,
}

/// alpha = max{r : h - r e in cl C}, beta = min{s : s e - h in cl C}.
/// Both endpoints are attained by states, and the state values on h fill
/// exactly [alpha, beta].
pub fn state_interval(space: &OrderedSpace, h: &RealVector) -> Result<StateInterval> {
    Error::check_dim(space.n, h.len())?;
    match &space.cone {
        ConeSpec::PolyhedralH { .. } => {
            let rows = space.cone_rows()?;
            let e = space.unit_rationals()?;
            let x = h.to_rationals()?;
            let alpha = one_var_extremum(&rows, &e, &x, true)?;
            let beta = one_var_extremum(&rows, &e, &x, false)?;
            Ok(StateInterval {
                alpha: Scalar::Exact(alpha),
                beta: Scalar::Exact(beta),
            })
        }
        ConeSpec::PolyhedralV { generators } => {
            let alpha = vrep_extremum(space, generators, h, true)?;
            let beta = vrep_extremum(space, generators, h, false)?;
            Ok(StateInterval {
                alpha: Scalar::Exact(alpha),
                beta: Scalar::Exact(beta),
            })
        }
        ConeSpec::MatrixPsd { d } => {
            let hm = psd::coords_to_matrix(*d, &h.to_f64s())?;
            let unit_is_identity = space
                .unit_rationals()?
                .iter()
                .zip(psd::identity_coords(*d))
                .all(|(a, b)| *a == b);
            if unit_is_identity {
                let ev = psd::eigenvalues(&hm);
                Ok(StateInterval {
                    alpha: Scalar::Approx(ev[0]),
                    beta: Scalar::Approx(*ev.last().unwrap()),
                })
            } else {
                let em = psd::coords_to_matrix(*d, &space.unit.to_f64s())?;
                let e_min = psd::min_eigenvalue(&em);
                if e_min <= space.tol {
                    return Err(Error::precondition(
                        "matrix-space unit must be positive definite",
                    ));
                }
                let h_scale = psd::eigenvalues(&hm)
                    .iter()
                    .fold(0.0f64, |m, &v| Float::max(m, Float::abs(v)));
                let bound = (h_scale + 1.0) / e_min + 1.0;
                let tol = space.tol;
                let beta = lp::infimum_by_bisection(
                    |s| psd::min_eigenvalue(&em.combine(s, &hm, -1.0)) >= -tol,
                    -bound,
                    bound,
                    tol,
                )?;
                let alpha = -lp::infimum_by_bisection(
                    |s| psd::min_eigenvalue(&em.combine(s, &hm, 1.0)) >= -tol,
                    -bound,
                    bound,
                    tol,
                )?;
                Ok(StateInterval {
                    alpha: Scalar::Approx(alpha),
                    beta: Scalar::Approx(beta),
                })
            }
        }
    }
}

/// alpha (want_max) or beta over H-rep rows by one-variable interval
/// arithmetic; no LP needed.
fn one_var_extremum(
    rows: &[Vec<Rational>],
    e: &[Rational],
    x: &[Rational],
    want_max: bool,
) -> Result<Rational> {
    // want_max: max r with a.(x - r e) >= 0 for all rows
    // else:     min s with a.(s e - x) >= 0 for all rows
    let mut best: Option<Rational> = None;
    for a in rows {
        let ae = dot(a, e);
        let ax = dot(a, x);
        if ae.is_zero() {
            let ok = if want_max {
                !ax.is_negative()
            } else {
                !ax.is_positive()
            };
            if !ok {
                return Err(Error::internal(
                    "state interval empty: space not validated",
                ));
            }
            continue;
        }
        if ae.is_negative() {
            // a.e >= 0 on every row of a validated space (the unit is a member)
            return Err(Error::internal(
                "cone row with a.e < 0: space not validated",
            ));
        }
        let bound = &ax / &ae;
        let improves = match (&best, want_max) {
            (None, _) => true,
            (Some(b), true) => bound < *b,
            (Some(b), false) => bound > *b,
        };
        if improves {
            best = Some(bound);
        }
    }
    best.ok_or_else(|| Error::internal("state interval unbounded: cone row set empty against e"))
}

fn vrep_extremum(
    space: &OrderedSpace,
    generators: &[RealVector],
    h: &RealVector,
    want_alpha: bool,
) -> Result<Rational> {
    // alpha: max r s.t. h - r e = sum lambda g ; beta: min s s.t. s e - h = sum lambda g
    let n = space.n;
    let k = generators.len();
    let e = space.unit_rationals()?;
    let x = h.to_rationals()?;
    let mut obj = vec![Rational::zero(); 1 + k];
    obj[0] = Rational::one();
    let mut prog = LinearProgram::new(1 + k, obj, want_alpha)?;
    for i in 0..n {
        let mut coeffs = vec![Rational::zero(); 1 + k];
        coeffs[0] = e[i].clone();
        for (j, g) in generators.iter().enumerate() {
            let gi = g.to_rationals()?[i].clone();
            coeffs[1 + j] = if want_alpha { gi } else { -gi };
        }
        prog.push_eq(Row::new(coeffs, x[i].clone()))?;
    }
    for j in 0..k {
        let mut coeffs = vec![Rational::zero(); 1 + k];
        coeffs[1 + j] = Rational::one();
        prog.push_ineq(Row::homogeneous(coeffs))?;
    }
    match lp::solve(&prog)? {
        LpResult::Optimal { value, .. } => Ok(value),
        LpResult::Unbounded { .. } => Err(Error::internal(
            "state interval unbounded: space not validated",
        )),
        LpResult::Infeasible { .. } => Err(Error::internal(
            "state interval infeasible: space not validated",
        )),
    }
}

/// Order seminorm `max(|alpha|, |beta|) = inf{r : r e +/- h in cl C}`.
pub fn order_seminorm(space: &OrderedSpace, h: &RealVector) -> Result<Scalar> {
    let iv = state_interval(space, h)?;
    let a = iv.alpha.abs();
    let b = iv.beta.abs();
    Ok(match (a.as_exact(), b.as_exact()) {
        (Some(x), Some(y)) => Scalar::Exact(if x >= y { x.clone() } else { y.clone() }),
        _ => Scalar::Approx(Float::max(a.to_f64(), b.to_f64())),
    })
}

/// Exact rational order seminorm (polyhedral spaces).
pub fn order_seminorm_exact(space: &OrderedSpace, h: &RealVector) -> Result<Rational> {
    order_seminorm(space, h)?
        .as_exact()
        .cloned()
        .ok_or_else(|| Error::capability("exact seminorm needs a polyhedral space"))
}

/// Inequality description plus enumerated extreme states.
#[derive(Debug, Clone)]
pub struct StatePolytope {
    /// Cone generators; positivity of f means `f . g >= 0` on each.
    pub constraint_generators: Vec<RealVector>,
    pub extreme_states: Vec<RealFunctional>,
}

/// Enumerate the state polytope `{f : f(C) >= 0, f(e) = 1}` of a polyhedral
/// space. Every state is a convex combination of the extreme states.
pub fn state_polytope(space: &OrderedSpace) -> Result<StatePolytope> {
    if !space.cone.is_polyhedral() {
        return Err(Error::capability(
            "matrix cones have infinitely many extreme states; use state_interval",
        ));
    }
    let gens = space.cone_generators()?;
    let e = space.unit_rationals()?;
    let mut poly = Polytope::default();
    for g in &gens {
        poly.ineqs.push(Row::homogeneous(g.to_rationals()?));
    }
    poly.eqs.push(Row::new(e, Rational::one()));
    let vs = lp::vertices(&poly)?;
    if vs.is_empty() {
        return Err(Error::internal("state polytope empty: space not validated"));
    }
    Ok(StatePolytope {
        constraint_generators: gens,
        extreme_states: vs.into_iter().map(RealFunctional::from_rationals).collect(),
    })
}

/// Positivity of a linear functional: `f(C) >= 0`.
pub fn is_positive_functional(space: &OrderedSpace, f: &RealFunctional) -> Result<bool> {
    Error::check_dim(space.n, f.len())?;
    match &space.cone {
        ConeSpec::MatrixPsd { d } => {
            // the representing matrix W of f (f(h) = Tr(W h)) must be PSD
            let w = functional_matrix(*d, f)?;
            Ok(psd::min_eigenvalue(&w) >= -space.tol)
        }
        _ => {
            let fr = f.coeffs.to_rationals()?;
            for g in space.cone_generators()? {
                if dot(&fr, &g.to_rationals()?).is_negative() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Representing hermitian matrix of a functional on the matrix space:
/// diagonal coordinates map straight to the diagonal, off-diagonal pairs are
/// halved (Tr(W (E_ij + E_ji)) = 2 Re W_ij).
pub fn functional_matrix(d: usize, f: &RealFunctional) -> Result<psd::Herm> {
    let coords = f.coeffs.to_f64s();
    Error::check_dim(d * d, coords.len())?;
    let mut scaled = coords;
    for (u, v) in psd::offdiag_coord_indices(d) {
        scaled[u] *= 0.5;
        scaled[v] *= 0.5;
    }
    psd::coords_to_matrix(d, &scaled)
}

/// Functional norm against the order seminorm plus the positivity criterion
/// `||f|| = f(e)`.
#[derive(Debug, Clone)]
pub struct FunctionalNorm {
    pub norm: Scalar,
    pub unit_value: Scalar,
    /// For validated Archimedean spaces this equality holds iff the
    /// functional is positive.
    pub norm_equals_unit_value: bool,
}

/// `sup{|f(h)| : ||h|| <= 1}` over the vertices of the order-unit ball
/// `{h : -e <= h <= e}`.
pub fn functional_norm(space: &OrderedSpace, f: &RealFunctional) -> Result<FunctionalNorm> {
    Error::check_dim(space.n, f.len())?;
    let ball = unit_ball_vertices(space)?;
    let fr = f.coeffs.to_rationals()?;
    let mut best = Rational::zero();
    for b in &ball {
        let v = dot(&fr, b).abs();
        if v > best {
            best = v;
        }
    }
    let fe = dot(&fr, &space.unit_rationals()?);
    Ok(FunctionalNorm {
        norm_equals_unit_value: best == fe,
        norm: Scalar::Exact(best),
        unit_value: Scalar::Exact(fe),
    })
}

/// Vertices of the order-unit ball `{h : e - h in cl C and e + h in cl C}`.
pub fn unit_ball_vertices(space: &OrderedSpace) -> Result<Vec<Vec<Rational>>> {
    if !space.cone.is_polyhedral() {
        return Err(Error::capability(
            "unit-ball vertex enumeration needs a polyhedral cone",
        ));
    }
    let rows = space.cone_rows()?;
    let e = space.unit_rationals()?;
    let mut poly = Polytope::default();
    for a in &rows {
        let ae = dot(a, &e);
        // a.(e - h) >= 0  <=>  (-a).h >= -a.e ; a.(e + h) >= 0  <=>  a.h >= -a.e
        poly.ineqs
            .push(Row::new(a.iter().map(|x| -x).collect(), -ae.clone()));
        poly.ineqs.push(Row::new(a.clone(), -ae));
    }
    lp::vertices(&poly)
}

/// One step of the iterated positive extension.
#[derive(Debug, Clone)]
pub struct ExtensionStep {
    pub direction: Vec<Rational>,
    pub lower: Rational,
    pub upper: Rational,
    pub gamma: Rational,
}

#[derive(Debug, Clone)]
pub struct ExtensionResult {
    pub functional: RealFunctional,
    pub steps: Vec<ExtensionStep>,
}

/// Extend a positive functional from a subspace containing e to all of V_h by
/// iterated one-dimensional extension. At each new direction h the achievable
/// values form the interval [l, u] with
///   l = sup{ f(z) : z in E, z <= h },  u = inf{ f(z) : z in E, h <= z },
/// and gamma is fixed at the midpoint.
pub fn extend_positive_functional(
    space: &OrderedSpace,
    subspace_basis: &[RealVector],
    values: &[Scalar],
) -> Result<ExtensionResult> {
    if !space.cone.is_polyhedral() {
        return Err(Error::capability(
            "positive extension is implemented for polyhedral spaces",
        ));
    }
    Error::check_dim(subspace_basis.len(), values.len())?;
    let n = space.n;
    for b in subspace_basis {
        Error::check_dim(n, b.len())?;
    }
    // independent sub-basis, with consistency of the values on dropped vectors
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    let mut vals: Vec<Rational> = Vec::new();
    for (b, v) in subspace_basis.iter().zip(values) {
        let br = b.to_rationals()?;
        let vr = v
            .as_exact()
            .ok_or_else(|| Error::precondition("extension values must be exact rationals"))?
            .clone();
        match linalg::coords_in_span(&basis, &br)? {
            None => {
                basis.push(br);
                vals.push(vr);
            }
            Some(t) => {
                if dot(&t, &vals) != vr {
                    return Err(Error::precondition(
                        "values are not linear on the given subspace basis",
                    ));
                }
            }
        }
    }
    let e = space.unit_rationals()?;
    if linalg::coords_in_span(&basis, &e)?.is_none() {
        return Err(Error::precondition("subspace must contain the order unit"));
    }
    // positivity on E intersect cl C, checked on generators of that cone
    for p in subspace_cone_generators(space, &basis)? {
        let t = linalg::coords_in_span(&basis, &p)?
            .ok_or_else(|| Error::internal("subspace cone generator left the subspace"))?;
        if dot(&t, &vals).is_negative() {
            return Err(Error::precondition(
                "functional is not positive on the subspace intersected with the cone",
            ));
        }
    }

    let mut steps = Vec::new();
    for h in linalg::complete_basis(&basis, n)? {
        let lower = bound_over_subspace(space, &basis, &vals, &h, true)?;
        let upper = bound_over_subspace(space, &basis, &vals, &h, false)?;
        if lower > upper {
            return Err(Error::internal("extension interval inverted (l > u)"));
        }
        let gamma = (&lower + &upper) / Rational::from_integer(2.into());
        steps.push(ExtensionStep {
            direction: h.clone(),
            lower,
            upper,
            gamma: gamma.clone(),
        });
        basis.push(h);
        vals.push(gamma);
    }
    // global coefficient vector from basis_k . w = vals_k
    let m = Matrix::from_rows(basis)?;
    let w = m
        .solve(&vals)?
        .ok_or_else(|| Error::internal("extension solve failed"))?;
    let functional = RealFunctional::from_rationals(w);
    Ok(ExtensionResult { functional, steps })
}

/// Generators of `{ z in span(basis) : z in cl C }` mapped back to V_h
/// coordinates; lineality directions appear with both signs.
pub fn subspace_cone_generators(
    space: &OrderedSpace,
    basis: &[Vec<Rational>],
) -> Result<Vec<Vec<Rational>>> {
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let k = basis.len();
    let rows = space.cone_rows()?;
    let t_rows: Vec<Vec<Rational>> = rows
        .iter()
        .map(|a| basis.iter().map(|b| dot(a, b)).collect())
        .collect();
    let (rays, lineality) = cone::cone_vrep_of_hrep(&t_rows, &[], k)?;
    let mut out = Vec::new();
    for t in &rays {
        out.push(combine(basis, t));
    }
    for t in &lineality {
        out.push(combine(basis, t));
        out.push(combine(basis, &t.iter().map(|x| -x).collect::<Vec<_>>()));
    }
    Ok(out)
}

fn combine(basis: &[Vec<Rational>], t: &[Rational]) -> Vec<Rational> {
    let n = basis[0].len();
    let mut v = vec![Rational::zero(); n];
    for (coef, b) in t.iter().zip(basis) {
        for i in 0..n {
            v[i] += coef * &b[i];
        }
    }
    v
}

/// sup f(z) over {z in E : h - z in cl C} (want_sup) or inf f(z) over
/// {z in E : z - h in cl C}.
fn bound_over_subspace(
    space: &OrderedSpace,
    basis: &[Vec<Rational>],
    vals: &[Rational],
    h: &[Rational],
    want_sup: bool,
) -> Result<Rational> {
    let k = basis.len();
    match &space.cone {
        ConeSpec::PolyhedralH { .. } => {
            let rows = space.cone_rows()?;
            let mut prog = LinearProgram::new(k, vals.to_vec(), want_sup)?;
            for a in &rows {
                // want_sup:  a.(h - sum t b) >= 0   =>   sum t (-a.b) >= -a.h
                // else:      a.(sum t b - h) >= 0   =>   sum t ( a.b) >=  a.h
                let ah = dot(a, h);
                let coeffs: Vec<Rational> = basis
                    .iter()
                    .map(|b| {
                        let ab = dot(a, b);
                        if want_sup {
                            -ab
                        } else {
                            ab
                        }
                    })
                    .collect();
                prog.push_ineq(Row::new(coeffs, if want_sup { -ah } else { ah }))?;
            }
            extract_opt(&prog)
        }
        ConeSpec::PolyhedralV { generators } => {
            let n = space.n;
            let g = generators.len();
            // variables (t_1..t_k, lambda_1..lambda_g):
            // want_sup:  sum t b + sum lambda gen = h
            // else:      sum t b - sum lambda gen = h   (flip via -lambda trick)
            let mut obj = vals.to_vec();
            obj.extend(vec![Rational::zero(); g]);
            let mut prog = LinearProgram::new(k + g, obj, want_sup)?;
            for i in 0..n {
                let mut coeffs = vec![Rational::zero(); k + g];
                for (j, b) in basis.iter().enumerate() {
                    coeffs[j] = b[i].clone();
                }
                for (j, gen) in generators.iter().enumerate() {
                    let gi = gen.to_rationals()?[i].clone();
                    coeffs[k + j] = if want_sup { gi } else { -gi };
                }
                prog.push_eq(Row::new(coeffs, h[i].clone()))?;
            }
            for j in 0..g {
                let mut coeffs = vec![Rational::zero(); k + g];
                coeffs[k + j] = Rational::one();
                prog.push_ineq(Row::homogeneous(coeffs))?;
            }
            extract_opt(&prog)
        }
        ConeSpec::MatrixPsd { .. } => Err(Error::capability(
            "positive extension is implemented for polyhedral spaces",
        )),
    }
}

fn extract_opt(prog: &LinearProgram) -> Result<Rational> {
    match lp::solve(prog)? {
        LpResult::Optimal { value, .. } => Ok(value),
        LpResult::Unbounded { .. } => Err(Error::internal(
            "extension bound unbounded: unit not in subspace?",
        )),
        LpResult::Infeasible { .. } => Err(Error::internal(
            "extension bound infeasible: unit not an order unit?",
        )),
    }
}
