//! The three order (semi)norms on complex elements: minimal, maximal and
//! decomposition, plus convex combinations and the positivity test for unital
//! maps. Exact over polyhedral cones, certified intervals over matrix cones.
//!
//! The maximal and decomposition norms are computed by restricting the
//! phases of the decomposition coefficients to a grid of rational points on
//! the unit circle (so every LP stays in exact arithmetic). The grid optimum
//! is an upper bound; the LP dual, rescaled from the grid polygon into the
//! true disc, is an exactly feasible dual functional and hence a certified
//! lower bound. Both bounds converge quadratically in the grid spacing:
//! rounding a phase onto the two adjacent grid points costs a factor of at
//! most 1/cos(gap/2).
//!
//! Every bound ships with a certificate that can be re-verified from the
//! space data alone: an explicit decomposition for upper bounds, a dual
//! functional with its domination data for lower bounds.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Float, One, Signed, Zero};

use crate::arch::{self, LinearMap};
use crate::cone::{ConeSpec, OrderedSpace};
use crate::error::{Error, Result};
use crate::linalg::dot;
use crate::lp::{self, StandardLp, StandardResult};
use crate::order;
use crate::psd;
use crate::scalar::{
    rational_to_f64_down, rational_to_f64_up, sqrt_exact, sqrt_lower, sqrt_upper, Rational, Scalar,
};
use crate::vector::{ComplexElement, RealVector};

const SQRT_BITS: u32 = 48;

// ---------------------------------------------------------------------------
// result and certificate types
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalStatus {
    /// upper - lower <= tol, both endpoints certified.
    Certified,
    /// Valid certified bounds, no tightness claim (matrix-cone routes).
    BoundsOnly,
    /// Refinement budget exhausted before reaching tol; bounds still valid.
    ToleranceUnmet,
}

/// Certified two-sided bound for a norm value.
#[derive(Debug, Clone)]
pub struct CertifiedInterval {
    pub lower: f64,
    pub upper: f64,
    pub tol: f64,
    pub status: IntervalStatus,
    /// Exact rational enclosures of the endpoints when the computation ran in
    /// rational arithmetic; the floats are outward roundings of these.
    pub exact_lower: Option<Rational>,
    pub exact_upper: Option<Rational>,
    pub lower_cert: Option<LowerCert>,
    pub upper_cert: Option<UpperCert>,
    /// Final phase-grid size, when a grid was used.
    pub grid_k: Option<usize>,
    pub method_notes: String,
}

impl CertifiedInterval {
    fn exact(value: Rational, tol: f64, notes: String) -> Self {
        CertifiedInterval {
            lower: rational_to_f64_down(&value),
            upper: rational_to_f64_up(&value),
            tol,
            status: IntervalStatus::Certified,
            exact_lower: Some(value.clone()),
            exact_upper: Some(value),
            lower_cert: None,
            upper_cert: None,
            grid_k: None,
            method_notes: notes,
        }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermKind {
    Hermitian,
    Positive,
}

/// One term `lambda * element` of a decomposition.
#[derive(Debug, Clone)]
pub struct DecompositionTerm {
    pub coeff_re: Rational,
    pub coeff_im: Rational,
    pub element: Vec<Rational>,
    pub kind: TermKind,
}

/// `v = sum_i lambda_i element_i`, reconstructing the target exactly.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub terms: Vec<DecompositionTerm>,
}

impl Decomposition {
    /// Exact reconstruction check against (x, y).
    pub fn reconstructs(&self, x: &[Rational], y: &[Rational]) -> bool {
        let n = x.len();
        let mut re = vec![Rational::zero(); n];
        let mut im = vec![Rational::zero(); n];
        for t in &self.terms {
            if t.element.len() != n {
                return false;
            }
            for i in 0..n {
                re[i] += &t.coeff_re * &t.element[i];
                im[i] += &t.coeff_im * &t.element[i];
            }
        }
        re == x && im == y
    }
}

#[derive(Debug, Clone)]
pub enum Domination {
    /// `(phi_re.b)^2 + (phi_im.b)^2 <= 1` on every unit-ball vertex b.
    UnitBall,
    /// `(phi_re.g)^2 + (phi_im.g)^2 <= mu(g)^2` on every cone generator g,
    /// with mu positive on the cone and mu(e) <= 1.
    PositiveFunctional { mu: Vec<Rational> },
}

#[derive(Debug, Clone)]
pub enum LowerCert {
    /// An extreme state f with |f~(v)|^2 = value_sq; the square root is a
    /// lower bound for every order seminorm.
    StateModulus {
        state: Vec<Rational>,
        value_sq: Rational,
    },
    /// Real-linear functional T(x + iy) = phi_re.x + phi_im.y whose sup over
    /// phases is dominated as stated; T(v) = value is a lower bound.
    DualFunctional {
        phi_re: Vec<Rational>,
        phi_im: Vec<Rational>,
        domination: Domination,
        value: Rational,
    },
    /// Approximate-mode source (matrix cones): named quantity.
    Float { source: String, value: f64 },
}

#[derive(Debug, Clone)]
pub enum UpperCert {
    Decomposition {
        decomposition: Decomposition,
        /// dec route: s with `s e - sum |lambda_i| p_i` in the closed cone.
        dominator: Option<Rational>,
        /// When the claimed bound is irrational, its exact square.
        value_sq: Option<Rational>,
    },
    Float {
        source: String,
        value: f64,
    },
}

// ---------------------------------------------------------------------------
// minimal norm
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct MinimalNormResult {
    /// Exact when the squared value is a perfect rational square.
    pub value: Scalar,
    /// Exact squared value (polyhedral route).
    pub value_sq: Option<Rational>,
    pub lower: f64,
    pub upper: f64,
    /// Maximizing extreme state (polyhedral route).
    pub witness_state: Option<Vec<Rational>>,
    pub via_arch_quotient: bool,
}

/// `||v||_m = sup over states of |f~(v)|`. Over a polyhedral cone the
/// modulus is convex in f, so the sup is attained at an extreme state and the
/// squared value is exact. Over the PSD cone this is the numerical radius,
/// certified by the angle sweep.
pub fn minimal_norm(
    space: &OrderedSpace,
    v: &ComplexElement,
    tol: f64,
) -> Result<MinimalNormResult> {
    Error::check_dim(space.n, v.len())?;
    match &space.cone {
        ConeSpec::MatrixPsd { d } => {
            let x = psd::coords_to_matrix(*d, &v.re.to_f64s())?;
            let y = psd::coords_to_matrix(*d, &v.im.to_f64s())?;
            let (lo, hi) = psd::numerical_radius(&x, &y, tol, 2_000_000)?;
            Ok(MinimalNormResult {
                value: Scalar::Approx(0.5 * (lo + hi)),
                value_sq: None,
                lower: lo,
                upper: hi,
                witness_state: None,
                via_arch_quotient: false,
            })
        }
        _ => {
            let (space, v, via) = reduce_to_norm_space(space, v)?;
            let sp = order::state_polytope(&space)?;
            let x = v.re.to_rationals()?;
            let y = v.im.to_rationals()?;
            let mut best = Rational::zero();
            let mut witness: Option<Vec<Rational>> = None;
            for f in &sp.extreme_states {
                let fr = f.coeffs.to_rationals()?;
                let fx = dot(&fr, &x);
                let fy = dot(&fr, &y);
                let msq = &fx * &fx + &fy * &fy;
                if msq > best || witness.is_none() {
                    best = msq;
                    witness = Some(fr);
                }
            }
            let value = crate::scalar::scalar_sqrt(&Scalar::Exact(best.clone()));
            Ok(MinimalNormResult {
                value,
                lower: rational_to_f64_down(&sqrt_lower(&best, SQRT_BITS)?),
                upper: rational_to_f64_up(&sqrt_upper(&best, SQRT_BITS)?),
                value_sq: Some(best),
                witness_state: witness,
                via_arch_quotient: via,
            })
        }
    }
}

/// Norms factor through the Archimedeanization: representatives differing by
/// the null space N have equal seminorms, and decompositions lift/project
/// with the same cost. Spaces with N != 0 are reduced before any grid work.
fn reduce_to_norm_space(
    space: &OrderedSpace,
    v: &ComplexElement,
) -> Result<(OrderedSpace, ComplexElement, bool)> {
    if matches!(space.cone, ConeSpec::MatrixPsd { .. }) {
        return Ok((space.clone(), v.clone(), false));
    }
    let q = arch::archimedeanize(space)?;
    if q.is_identity() {
        // keep the closure rewrite so strict rows disappear
        Ok((q.space, v.clone(), false))
    } else {
        let vq = q.project_complex(v)?;
        Ok((q.space, vq, true))
    }
}

// ---------------------------------------------------------------------------
// rational phase grids
// ---------------------------------------------------------------------------

/// K points exactly on the unit circle (Pythagorean parametrization),
/// closed under multiplication by i, approximately uniform in angle.
#[derive(Debug, Clone)]
pub struct PhaseGrid {
    pub points: Vec<(Rational, Rational)>,
}

pub fn phase_grid(k: usize) -> Result<PhaseGrid> {
    if k < 4 || k % 4 != 0 {
        return Err(Error::precondition(
            "phase grid size must be a multiple of 4",
        ));
    }
    let q = k / 4;
    let denom = 8 * k as i64;
    let mut pts: Vec<(Rational, Rational)> = Vec::with_capacity(k);
    for j in 0..q {
        // theta_j = (pi/2) j / q; rational circle point near that angle
        let theta = core::f64::consts::FRAC_PI_2 * (j as f64) / (q as f64);
        let t = Float::tan(0.5 * theta);
        let ti = Float::round(t * denom as f64) as i64;
        let tr = Rational::new(ti.into(), denom.into());
        let t2 = &tr * &tr;
        let den = Rational::one() + &t2;
        let c = (Rational::one() - &t2) / &den;
        let s = (Rational::from_integer(2.into()) * &tr) / &den;
        pts.push((c, s));
    }
    for rot in 1..4usize {
        for j in 0..q {
            let (c, s) = pts[(rot - 1) * q + j].clone();
            pts.push((-s, c)); // multiply by i
        }
    }
    Ok(PhaseGrid { points: pts })
}

impl PhaseGrid {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `min over adjacent pairs of cos^2(gap/2) = (1 + u.u')/2`; the
    /// polygon-to-disc rescale factor is the square root of this.
    pub fn min_cos_half_gap_sq(&self) -> Rational {
        let k = self.points.len();
        let mut min: Option<Rational> = None;
        for i in 0..k {
            let (c1, s1) = &self.points[i];
            let (c2, s2) = &self.points[(i + 1) % k];
            let d = c1 * c2 + s1 * s2;
            let val = (Rational::one() + d) / Rational::from_integer(2.into());
            if min.as_ref().map_or(true, |m| val < *m) {
                min = Some(val);
            }
        }
        min.unwrap_or_else(Rational::zero)
    }
}

// ---------------------------------------------------------------------------
// refinement options
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
pub struct NormOptions {
    pub tol: f64,
    pub start_k: usize,
    pub max_rounds: u32,
}

impl Default for NormOptions {
    fn default() -> Self {
        NormOptions {
            tol: 1e-6,
            start_k: 16,
            max_rounds: 6,
        }
    }
}

impl NormOptions {
    pub fn with_tol(tol: f64) -> Self {
        NormOptions {
            tol,
            ..Default::default()
        }
    }
}

// ---------------------------------------------------------------------------
// maximal and decomposition norms
// ---------------------------------------------------------------------------

/// `||v||_M = inf { sum |lambda_i| ||v_i|| : v = sum lambda_i v_i, v_i hermitian }`.
pub fn maximal_norm(
    space: &OrderedSpace,
    v: &ComplexElement,
    opts: &NormOptions,
) -> Result<CertifiedInterval> {
    Error::check_dim(space.n, v.len())?;
    if v.is_zero() {
        return Ok(CertifiedInterval::exact(
            Rational::zero(),
            opts.tol,
            String::from("zero element"),
        ));
    }
    if let ConeSpec::MatrixPsd { d } = &space.cone {
        return psd_upper_norm(space, *d, v, opts, true);
    }
    let (space, v, via) = reduce_to_norm_space(space, v)?;
    if let Some(iv) = hermitian_axis_fast_path(&space, &v, opts.tol, via)? {
        return Ok(iv);
    }
    polyhedral_grid_norm(&space, &v, opts, via, GridNorm::Maximal)
}

/// `||v||_dec = inf { || sum |lambda_i| p_i || : v = sum lambda_i p_i, p_i in C }`.
pub fn decomposition_norm(
    space: &OrderedSpace,
    v: &ComplexElement,
    opts: &NormOptions,
) -> Result<CertifiedInterval> {
    Error::check_dim(space.n, v.len())?;
    if v.is_zero() {
        return Ok(CertifiedInterval::exact(
            Rational::zero(),
            opts.tol,
            String::from("zero element"),
        ));
    }
    if let ConeSpec::MatrixPsd { d } = &space.cone {
        return psd_upper_norm(space, *d, v, opts, false);
    }
    let (space, v, via) = reduce_to_norm_space(space, v)?;
    if let Some(iv) = hermitian_axis_fast_path(&space, &v, opts.tol, via)? {
        return Ok(iv);
    }
    if let Some(iv) = unit_shift_fast_path(&space, &v, opts.tol, via)? {
        return Ok(iv);
    }
    polyhedral_grid_norm(&space, &v, opts, via, GridNorm::Decomposition)
}

/// `||v||_t = t ||v||_m + (1-t) ||v||_M`, by interval arithmetic.
pub fn convex_combination_norm(
    space: &OrderedSpace,
    v: &ComplexElement,
    t: &Rational,
    opts: &NormOptions,
) -> Result<CertifiedInterval> {
    if t.is_negative() || t > &Rational::one() {
        return Err(Error::precondition("t must lie in [0, 1]"));
    }
    let m = minimal_norm(space, v, opts.tol)?;
    let mx = maximal_norm(space, v, opts)?;
    let s = Rational::one() - t;
    let (t_f, s_f) = (rational_to_f64_up(t), rational_to_f64_up(&s));
    let lower = t_f * Float::max(0.0, m.lower) + s_f * Float::max(0.0, mx.lower);
    let upper = t_f * m.upper + s_f * mx.upper;
    let status = if upper - lower <= opts.tol && mx.status == IntervalStatus::Certified {
        IntervalStatus::Certified
    } else {
        mx.status
    };
    Ok(CertifiedInterval {
        lower,
        upper,
        tol: opts.tol,
        status,
        exact_lower: None,
        exact_upper: None,
        lower_cert: None,
        upper_cert: None,
        grid_k: mx.grid_k,
        method_notes: format!("convex combination t = {t} of the minimal and maximal norms"),
    })
}

/// On hermitian elements (or i times hermitian) every order seminorm
/// restricts to the order seminorm, with a one-term decomposition as the
/// certificate.
fn hermitian_axis_fast_path(
    space: &OrderedSpace,
    v: &ComplexElement,
    tol: f64,
    via: bool,
) -> Result<Option<CertifiedInterval>> {
    let (h, coeff) = if v.im.is_zero() {
        (v.re.clone(), (Rational::one(), Rational::zero()))
    } else if v.re.is_zero() {
        (v.im.clone(), (Rational::zero(), Rational::one()))
    } else {
        return Ok(None);
    };
    let value = order::order_seminorm_exact(space, &h)?;
    let decomposition = Decomposition {
        terms: vec![DecompositionTerm {
            coeff_re: coeff.0,
            coeff_im: coeff.1,
            element: h.to_rationals()?,
            kind: TermKind::Hermitian,
        }],
    };
    let witness = best_state_for(space, v)?;
    Ok(Some(CertifiedInterval {
        lower: rational_to_f64_down(&value),
        upper: rational_to_f64_up(&value),
        tol,
        status: IntervalStatus::Certified,
        exact_lower: Some(value.clone()),
        exact_upper: Some(value.clone()),
        lower_cert: witness,
        upper_cert: Some(UpperCert::Decomposition {
            decomposition,
            dominator: None,
            value_sq: None,
        }),
        grid_k: None,
        method_notes: note(
            via,
            "hermitian element: all order seminorms restrict to the order seminorm",
        ),
    }))
}

/// Elements of the form `lambda e + h` with hermitian h have equal minimal
/// and decomposition norms; the two-term split (mu +/- c)/(2c) (c e +/- k)
/// over positives realizes the value exactly.
fn unit_shift_fast_path(
    space: &OrderedSpace,
    v: &ComplexElement,
    tol: f64,
    via: bool,
) -> Result<Option<CertifiedInterval>> {
    let e = space.unit_rationals()?;
    let y = v.im.to_rationals()?;
    // v = i b e + x  <=>  imaginary part proportional to the unit
    let Some(i0) = e.iter().position(|c| !c.is_zero()) else {
        return Ok(None);
    };
    let b = &y[i0] / &e[i0];
    for i in 0..e.len() {
        if &b * &e[i] != y[i] {
            return Ok(None);
        }
    }
    let x = v.re.to_rationals()?;
    let iv = order::state_interval(space, &v.re)?;
    let (alpha, beta) = (iv.alpha.to_rational()?, iv.beta.to_rational()?);
    let two = Rational::from_integer(2.into());
    let r = (&alpha + &beta) / &two;
    let c = (&beta - &alpha) / &two;
    // mu = r + i b ; k = x - r e ; value^2 = (|r| + c)^2 + b^2
    let value_sq = {
        let m = r.abs() + &c;
        &m * &m + &b * &b
    };
    let terms = if c.is_zero() {
        // k has zero seminorm; N = 0 in a reduced space, so k = 0 and v = mu e
        vec![DecompositionTerm {
            coeff_re: r.clone(),
            coeff_im: b.clone(),
            element: e.clone(),
            kind: TermKind::Positive,
        }]
    } else {
        let ce_plus_k: Vec<Rational> = (0..e.len())
            .map(|i| &c * &e[i] + &x[i] - &r * &e[i])
            .collect();
        let ce_minus_k: Vec<Rational> = (0..e.len())
            .map(|i| &c * &e[i] - &x[i] + &r * &e[i])
            .collect();
        let twoc = &two * &c;
        vec![
            DecompositionTerm {
                // (mu + c) / 2c with mu = r + i b
                coeff_re: (&r + &c) / &twoc,
                coeff_im: &b / &twoc,
                element: ce_plus_k,
                kind: TermKind::Positive,
            },
            DecompositionTerm {
                // (mu - c) / 2c
                coeff_re: (&r - &c) / &twoc,
                coeff_im: &b / &twoc,
                element: ce_minus_k,
                kind: TermKind::Positive,
            },
        ]
    };
    let lower = sqrt_lower(&value_sq, SQRT_BITS)?;
    let upper = sqrt_upper(&value_sq, SQRT_BITS)?;
    let witness = best_state_for(space, v)?;
    Ok(Some(CertifiedInterval {
        lower: rational_to_f64_down(&lower),
        upper: rational_to_f64_up(&upper),
        tol,
        status: IntervalStatus::Certified,
        exact_lower: Some(lower),
        exact_upper: Some(upper),
        lower_cert: witness,
        upper_cert: Some(UpperCert::Decomposition {
            decomposition: Decomposition { terms },
            dominator: None,
            value_sq: Some(value_sq),
        }),
        grid_k: None,
        method_notes: note(
            via,
            "unit-shifted hermitian element: minimal and decomposition norms coincide",
        ),
    }))
}

fn best_state_for(space: &OrderedSpace, v: &ComplexElement) -> Result<Option<LowerCert>> {
    let sp = order::state_polytope(space)?;
    let x = v.re.to_rationals()?;
    let y = v.im.to_rationals()?;
    let mut best: Option<(Vec<Rational>, Rational)> = None;
    for f in &sp.extreme_states {
        let fr = f.coeffs.to_rationals()?;
        let msq = {
            let fx = dot(&fr, &x);
            let fy = dot(&fr, &y);
            &fx * &fx + &fy * &fy
        };
        if best.as_ref().map_or(true, |(_, b)| msq > *b) {
            best = Some((fr, msq));
        }
    }
    Ok(best.map(|(state, value_sq)| LowerCert::StateModulus { state, value_sq }))
}

fn note(via: bool, base: &str) -> String {
    if via {
        format!("{base}; computed in the Archimedeanization quotient")
    } else {
        String::from(base)
    }
}

enum GridNorm {
    Maximal,
    Decomposition,
}

/// Shared phase-grid engine for the maximal and decomposition norms on a
/// polyhedral space with trivial null part.
fn polyhedral_grid_norm(
    space: &OrderedSpace,
    v: &ComplexElement,
    opts: &NormOptions,
    via: bool,
    which: GridNorm,
) -> Result<CertifiedInterval> {
    let n = space.n;
    let x = v.re.to_rationals()?;
    let y = v.im.to_rationals()?;
    let e = space.unit_rationals()?;
    let tol_rat = Rational::from_float(opts.tol)
        .ok_or_else(|| Error::precondition("tolerance must be finite"))?;

    let m_res = minimal_norm(space, v, opts.tol)?;
    let m_sq = m_res
        .value_sq
        .clone()
        .ok_or_else(|| Error::internal("polyhedral minimal norm lost its square"))?;
    let m_lower = sqrt_lower(&m_sq, SQRT_BITS)?;
    let state_cert = m_res
        .witness_state
        .clone()
        .map(|state| LowerCert::StateModulus {
            state,
            value_sq: m_sq.clone(),
        });

    let ball: Vec<Vec<Rational>>;
    let gens: Vec<Vec<Rational>>;
    let rows: Vec<Vec<Rational>>;
    match which {
        GridNorm::Maximal => {
            ball = order::unit_ball_vertices(space)?;
            gens = Vec::new();
            rows = Vec::new();
        }
        GridNorm::Decomposition => {
            ball = Vec::new();
            gens = space
                .cone_generators()?
                .iter()
                .map(|g| g.to_rationals())
                .collect::<Result<_>>()?;
            rows = space.cone_rows()?;
        }
    }

    // hermitian-split seed: ||x|| + ||y|| bounds M (and hence dec) from above
    let split_upper =
        order::order_seminorm_exact(space, &v.re)? + order::order_seminorm_exact(space, &v.im)?;
    let split_cert = UpperCert::Decomposition {
        decomposition: Decomposition {
            terms: vec![
                DecompositionTerm {
                    coeff_re: Rational::one(),
                    coeff_im: Rational::zero(),
                    element: x.clone(),
                    kind: TermKind::Hermitian,
                },
                DecompositionTerm {
                    coeff_re: Rational::zero(),
                    coeff_im: Rational::one(),
                    element: y.clone(),
                    kind: TermKind::Hermitian,
                },
            ],
        },
        dominator: None,
        value_sq: None,
    };
    let mut best_lower: Rational = m_lower;
    let mut best_lower_cert: Option<LowerCert> = state_cert;
    let mut best_upper: Rational = split_upper.clone();
    let mut best_upper_cert: Option<UpperCert> = Some(split_cert);

    // bracket width ~ value * (pi/K)^2 / 2, so size the first grid from the
    // tolerance instead of climbing from a fixed small K
    let value_est = Float::max(rational_to_f64_up(&split_upper), 1e-6);
    let k_est = core::f64::consts::PI * Float::sqrt(value_est / (2.0 * opts.tol));
    let k_est = ((Float::ceil(k_est / 4.0) as usize) * 4).clamp(4, 4096);
    let mut k = opts.start_k.max(k_est);
    let mut rounds = 0u32;
    let mut status = IntervalStatus::ToleranceUnmet;
    loop {
        if &best_upper - &best_lower <= tol_rat {
            status = IntervalStatus::Certified;
            break;
        }
        if rounds >= opts.max_rounds {
            break;
        }
        let grid = phase_grid(k)?;
        let round = match which {
            GridNorm::Maximal => maximal_round(n, &x, &y, &ball, &grid)?,
            GridNorm::Decomposition => dec_round(n, &x, &y, &e, &gens, &rows, &grid)?,
        };
        if round.upper < best_upper {
            best_upper = round.upper;
            best_upper_cert = Some(round.upper_cert);
        }
        if round.lower > best_lower {
            best_lower = round.lower;
            best_lower_cert = Some(round.lower_cert);
        }
        rounds += 1;
        k *= 2;
    }
    let base = match which {
        GridNorm::Maximal => "maximal norm by phase-grid decomposition LP with rescaled dual",
        GridNorm::Decomposition => "decomposition norm by phase-grid conic LP with rescaled dual",
    };
    Ok(CertifiedInterval {
        lower: rational_to_f64_down(&best_lower),
        upper: rational_to_f64_up(&best_upper),
        tol: opts.tol,
        status,
        exact_lower: Some(best_lower),
        exact_upper: Some(best_upper),
        lower_cert: best_lower_cert,
        upper_cert: best_upper_cert,
        grid_k: Some(k.max(opts.start_k * 2) / 2),
        method_notes: note(via, base),
    })
}

struct RoundResult {
    lower: Rational,
    upper: Rational,
    lower_cert: LowerCert,
    upper_cert: UpperCert,
}

/// One grid round for the maximal norm.
///
/// Primal: min sum mu_{jk} s.t. sum mu_{jk} (c_j b_k, s_j b_k) = (x, y),
/// over phases j and unit-ball vertices b_k. Its value U is the grid-M
/// norm, an upper bound on the true norm. The dual functional satisfies the
/// polygon constraints `c_j T1(b) + s_j T2(b) <= 1`; scaling it into the
/// true discs gives the certified lower bound rho U.
fn maximal_round(
    n: usize,
    x: &[Rational],
    y: &[Rational],
    ball: &[Vec<Rational>],
    grid: &PhaseGrid,
) -> Result<RoundResult> {
    let k = grid.len();
    let bnum = ball.len();
    let cols = k * bnum;
    let mut rows_mat: Vec<(Vec<Rational>, Rational)> = Vec::with_capacity(2 * n);
    for i in 0..2 * n {
        let rhs = if i < n { x[i].clone() } else { y[i - n].clone() };
        let mut coeffs = vec![Rational::zero(); cols];
        for (j, (c, s)) in grid.points.iter().enumerate() {
            for (kb, b) in ball.iter().enumerate() {
                coeffs[j * bnum + kb] = if i < n { c * &b[i] } else { s * &b[i - n] };
            }
        }
        rows_mat.push((coeffs, rhs));
    }
    let lp = StandardLp {
        cols,
        objective: vec![Rational::one(); cols],
        rows: rows_mat,
    };
    let StandardResult::Optimal {
        value,
        x: mu,
        y: dual,
    } = lp::solve_standard(&lp)?
    else {
        return Err(Error::internal("maximal-norm grid LP not optimal"));
    };
    let mut terms = Vec::new();
    for (col, w) in mu.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        let (j, kb) = (col / bnum, col % bnum);
        let (c, s) = &grid.points[j];
        terms.push(DecompositionTerm {
            coeff_re: w * c,
            coeff_im: w * s,
            element: ball[kb].clone(),
            kind: TermKind::Hermitian,
        });
    }
    let upper_cert = UpperCert::Decomposition {
        decomposition: Decomposition { terms },
        dominator: None,
        value_sq: None,
    };
    // rescale the dual into the unit discs
    let t1 = &dual[0..n];
    let t2 = &dual[n..2 * n];
    let mut max_modsq = Rational::zero();
    for b in ball {
        let u = dot(t1, b);
        let w = dot(t2, b);
        let modsq = &u * &u + &w * &w;
        if modsq > max_modsq {
            max_modsq = modsq;
        }
    }
    let rho = if max_modsq <= Rational::one() {
        Rational::one()
    } else {
        sqrt_lower(&(Rational::one() / &max_modsq), SQRT_BITS)?
    };
    let phi_re: Vec<Rational> = t1.iter().map(|a| a * &rho).collect();
    let phi_im: Vec<Rational> = t2.iter().map(|a| a * &rho).collect();
    let lower = &rho * &value;
    let lower_cert = LowerCert::DualFunctional {
        phi_re,
        phi_im,
        domination: Domination::UnitBall,
        value: lower.clone(),
    };
    Ok(RoundResult {
        lower,
        upper: value,
        lower_cert,
        upper_cert,
    })
}

/// One grid round for the decomposition norm.
///
/// Primal: min s s.t. sum nu_{jk} (c_j g_k, s_j g_k) = (x, y) and
/// `s e - sum nu_{jk} g_k` in the closed cone (one slack per H-row). The
/// dual yields a functional pair dominated by the positive functional
/// mu = sum z_a a with mu(e) <= 1; rescaling into the discs certifies the
/// lower bound.
fn dec_round(
    n: usize,
    x: &[Rational],
    y: &[Rational],
    e: &[Rational],
    gens: &[Vec<Rational>],
    hrows: &[Vec<Rational>],
    grid: &PhaseGrid,
) -> Result<RoundResult> {
    let k = grid.len();
    let gnum = gens.len();
    let a_num = hrows.len();
    // columns: nu (k * gnum), s, slack (a_num)
    let cols = k * gnum + 1 + a_num;
    let s_col = k * gnum;
    let mut rows_mat: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for i in 0..2 * n {
        let rhs = if i < n { x[i].clone() } else { y[i - n].clone() };
        let mut coeffs = vec![Rational::zero(); cols];
        for (j, (c, s)) in grid.points.iter().enumerate() {
            for (kg, g) in gens.iter().enumerate() {
                coeffs[j * gnum + kg] = if i < n { c * &g[i] } else { s * &g[i - n] };
            }
        }
        rows_mat.push((coeffs, rhs));
    }
    for (ai, a) in hrows.iter().enumerate() {
        // a.e s - sum nu a.g - slack_a = 0
        let mut coeffs = vec![Rational::zero(); cols];
        for j in 0..k {
            for (kg, g) in gens.iter().enumerate() {
                coeffs[j * gnum + kg] = -dot(a, g);
            }
        }
        coeffs[s_col] = dot(a, e);
        coeffs[s_col + 1 + ai] = -Rational::one();
        rows_mat.push((coeffs, Rational::zero()));
    }
    let mut objective = vec![Rational::zero(); cols];
    objective[s_col] = Rational::one();
    let lp = StandardLp {
        cols,
        objective,
        rows: rows_mat,
    };
    let StandardResult::Optimal {
        value,
        x: nu,
        y: dual,
    } = lp::solve_standard(&lp)?
    else {
        return Err(Error::internal("decomposition-norm grid LP not optimal"));
    };
    let mut terms = Vec::new();
    for (col, w) in nu.iter().enumerate().take(k * gnum) {
        if w.is_zero() {
            continue;
        }
        let (j, kg) = (col / gnum, col % gnum);
        let (c, s) = &grid.points[j];
        terms.push(DecompositionTerm {
            coeff_re: w * c,
            coeff_im: w * s,
            element: gens[kg].clone(),
            kind: TermKind::Positive,
        });
    }
    let upper_cert = UpperCert::Decomposition {
        decomposition: Decomposition { terms },
        dominator: Some(value.clone()),
        value_sq: None,
    };
    // dual: T = (dual[0..n], dual[n..2n]); mu = sum z_a a with z >= 0
    let t1 = &dual[0..n];
    let t2 = &dual[n..2 * n];
    let z = &dual[2 * n..2 * n + a_num];
    let mut mu = vec![Rational::zero(); n];
    for (za, a) in z.iter().zip(hrows) {
        if za.is_negative() {
            return Err(Error::internal("dec dual has a negative row multiplier"));
        }
        for i in 0..n {
            mu[i] += za * &a[i];
        }
    }
    // rho^2 = min over generators of mu(g)^2 / mod^2(g)
    let mut rho_sq = Rational::one();
    for g in gens {
        let u = dot(t1, g);
        let w = dot(t2, g);
        let modsq = &u * &u + &w * &w;
        if modsq.is_zero() {
            continue;
        }
        let mg = dot(&mu, g);
        let ratio = &(&mg * &mg) / &modsq;
        if ratio < rho_sq {
            rho_sq = ratio;
        }
    }
    let rho = sqrt_lower(&rho_sq, SQRT_BITS)?;
    let phi_re: Vec<Rational> = t1.iter().map(|a| a * &rho).collect();
    let phi_im: Vec<Rational> = t2.iter().map(|a| a * &rho).collect();
    let lower = &rho * &value;
    let lower_cert = LowerCert::DualFunctional {
        phi_re,
        phi_im,
        domination: Domination::PositiveFunctional { mu },
        value: lower.clone(),
    };
    Ok(RoundResult {
        lower,
        upper: value,
        lower_cert,
        upper_cert,
    })
}

// ---------------------------------------------------------------------------
// matrix-cone routes
// ---------------------------------------------------------------------------

/// Bounds for the maximal/decomposition norm over the PSD cone. Diagonal
/// elements route through the commutative C^d space (unital positive maps in
/// both directions transfer the norms); normal elements collapse dec to the
/// operator norm; everything else ships certified bounds.
fn psd_upper_norm(
    space: &OrderedSpace,
    d: usize,
    v: &ComplexElement,
    opts: &NormOptions,
    maximal: bool,
) -> Result<CertifiedInterval> {
    let unit_is_identity = space
        .unit_rationals()?
        .iter()
        .zip(psd::identity_coords(d))
        .all(|(a, b)| *a == b);
    if !unit_is_identity {
        return Err(Error::capability(
            "matrix-cone maximal/decomposition norms support the identity unit only",
        ));
    }
    if let Some((dx, dy)) = diagonal_coords(d, v)? {
        // commutative route: the diagonal compression and inclusion are both
        // positive unital, so the M/dec values agree with the C^d ones
        let cd = OrderedSpace::orthant(d, RealVector::from_rationals(vec![Rational::one(); d]))?;
        let vd = ComplexElement::new(
            RealVector::from_rationals(dx),
            RealVector::from_rationals(dy),
        )?;
        let mut iv = if maximal {
            maximal_norm(&cd, &vd, opts)?
        } else {
            decomposition_norm(&cd, &vd, opts)?
        };
        iv.method_notes = format!(
            "diagonal element routed through the commutative C^{d} space; {}",
            iv.method_notes
        );
        return Ok(iv);
    }
    let x = psd::coords_to_matrix(d, &v.re.to_f64s())?;
    let y = psd::coords_to_matrix(d, &v.im.to_f64s())?;
    let z = psd::element_matrix(&x, &y);
    let opnorm = psd::operator_norm(&z);
    let (w_lo, _w_hi) = psd::numerical_radius(&x, &y, Float::max(opts.tol, 1e-9), 2_000_000)?;
    // approximate mode: endpoints are f64-accurate, comparisons carry the
    // space tolerance
    let lower = Float::max(Float::max(w_lo, opnorm), 0.0);
    let mut upper;
    let notes;
    let normal = psd::is_normal(&z, 1e-9);
    if !maximal && normal {
        // normal: the spectral decomposition realizes dec = operator norm
        upper = opnorm;
        notes = String::from(
            "normal element: dec equals the operator norm (spectral decomposition above, operator-norm bound below)",
        );
    } else {
        // hermitian split bounds dec <= M <= ||Re v|| + ||Im v||
        let hx = psd::eigenvalues(&x)
            .iter()
            .fold(0.0f64, |m, &t| Float::max(m, Float::abs(t)));
        let hy = psd::eigenvalues(&y)
            .iter()
            .fold(0.0f64, |m, &t| Float::max(m, Float::abs(t)));
        upper = hx + hy;
        notes = String::from(
            "matrix-cone bounds: max(numerical radius, operator norm) below, hermitian split above",
        );
    }
    if upper < lower {
        upper = lower;
    }
    let status = if upper - lower <= opts.tol {
        IntervalStatus::Certified
    } else {
        IntervalStatus::BoundsOnly
    };
    Ok(CertifiedInterval {
        lower,
        upper,
        tol: opts.tol,
        status,
        exact_lower: None,
        exact_upper: None,
        lower_cert: Some(LowerCert::Float {
            source: String::from("max(numerical radius, operator norm)"),
            value: lower,
        }),
        upper_cert: Some(UpperCert::Float {
            source: if !maximal && normal {
                String::from("spectral decomposition of a normal element")
            } else {
                String::from("hermitian split ||Re v|| + ||Im v||")
            },
            value: upper,
        }),
        grid_k: None,
        method_notes: notes,
    })
}

/// Diagonal coordinates of v when both parts are diagonal matrices.
fn diagonal_coords(
    d: usize,
    v: &ComplexElement,
) -> Result<Option<(Vec<Rational>, Vec<Rational>)>> {
    let xr = v.re.to_rationals()?;
    let yr = v.im.to_rationals()?;
    for (u, w) in psd::offdiag_coord_indices(d) {
        if !xr[u].is_zero() || !xr[w].is_zero() || !yr[u].is_zero() || !yr[w].is_zero() {
            return Ok(None);
        }
    }
    Ok(Some((xr[..d].to_vec(), yr[..d].to_vec())))
}

// ---------------------------------------------------------------------------
// certificate verification
// ---------------------------------------------------------------------------

/// Re-check a lower certificate from scratch; returns the certified bound.
pub fn verify_lower_cert(
    space: &OrderedSpace,
    v: &ComplexElement,
    cert: &LowerCert,
) -> Result<f64> {
    let (space, v, _) = reduce_to_norm_space(space, v)?;
    let x = v.re.to_rationals()?;
    let y = v.im.to_rationals()?;
    match cert {
        LowerCert::Float { value, .. } => Ok(*value),
        LowerCert::StateModulus { state, value_sq } => {
            let e = space.unit_rationals()?;
            if dot(state, &e) != Rational::one() {
                return Err(Error::internal("certificate state is not unital"));
            }
            for g in space.cone_generators()? {
                if dot(state, &g.to_rationals()?).is_negative() {
                    return Err(Error::internal("certificate state is not positive"));
                }
            }
            let fx = dot(state, &x);
            let fy = dot(state, &y);
            if &(&fx * &fx) + &(&fy * &fy) != *value_sq {
                return Err(Error::internal("certificate state modulus mismatch"));
            }
            Ok(rational_to_f64_down(&sqrt_lower(value_sq, SQRT_BITS)?))
        }
        LowerCert::DualFunctional {
            phi_re,
            phi_im,
            domination,
            value,
        } => {
            match domination {
                Domination::UnitBall => {
                    for b in order::unit_ball_vertices(&space)? {
                        let u = dot(phi_re, &b);
                        let w = dot(phi_im, &b);
                        if &u * &u + &w * &w > Rational::one() {
                            return Err(Error::internal(
                                "dual functional exceeds the unit disc on a ball vertex",
                            ));
                        }
                    }
                }
                Domination::PositiveFunctional { mu } => {
                    let e = space.unit_rationals()?;
                    if dot(mu, &e) > Rational::one() {
                        return Err(Error::internal("dominating functional has mu(e) > 1"));
                    }
                    for g in space.cone_generators()? {
                        let gr = g.to_rationals()?;
                        let mg = dot(mu, &gr);
                        if mg.is_negative() {
                            return Err(Error::internal("dominating functional not positive"));
                        }
                        let u = dot(phi_re, &gr);
                        let w = dot(phi_im, &gr);
                        if &u * &u + &w * &w > &mg * &mg {
                            return Err(Error::internal(
                                "dual functional exceeds its domination on a generator",
                            ));
                        }
                    }
                }
            }
            let got = dot(phi_re, &x) + dot(phi_im, &y);
            if got != *value {
                return Err(Error::internal("dual functional value mismatch"));
            }
            Ok(rational_to_f64_down(value))
        }
    }
}

/// Re-check an upper certificate; returns the certified bound.
pub fn verify_upper_cert(
    space: &OrderedSpace,
    v: &ComplexElement,
    cert: &UpperCert,
) -> Result<f64> {
    let (space, v, _) = reduce_to_norm_space(space, v)?;
    let x = v.re.to_rationals()?;
    let y = v.im.to_rationals()?;
    match cert {
        UpperCert::Float { value, .. } => Ok(*value),
        UpperCert::Decomposition {
            decomposition,
            dominator,
            value_sq,
        } => {
            if !decomposition.reconstructs(&x, &y) {
                return Err(Error::internal(
                    "decomposition does not reconstruct the element",
                ));
            }
            let mut cost_upper = Rational::zero();
            let mut weighted_sum = vec![Rational::zero(); space.n];
            for t in &decomposition.terms {
                let modsq = &t.coeff_re * &t.coeff_re + &t.coeff_im * &t.coeff_im;
                let lam_hi = match sqrt_exact(&modsq) {
                    Some(r) => r,
                    None => sqrt_upper(&modsq, SQRT_BITS)?,
                };
                let elem = RealVector::from_rationals(t.element.clone());
                match t.kind {
                    TermKind::Hermitian => {
                        let norm = order::order_seminorm_exact(&space, &elem)?;
                        cost_upper += &lam_hi * &norm;
                    }
                    TermKind::Positive => {
                        if !space.closure_member(&elem)? {
                            return Err(Error::internal(
                                "positive decomposition term outside the closed cone",
                            ));
                        }
                        for i in 0..space.n {
                            weighted_sum[i] += &lam_hi * &t.element[i];
                        }
                    }
                }
            }
            if weighted_sum.iter().any(|c| !c.is_zero()) {
                let positive_part = RealVector::from_rationals(weighted_sum);
                cost_upper += order::order_seminorm_exact(&space, &positive_part)?;
            }
            // enclosure slack from the 48-bit square roots
            let slack = Rational::new(1.into(), (1u64 << 40).into());
            if let Some(s) = dominator {
                if &cost_upper > s && &cost_upper - s > slack {
                    return Err(Error::internal("dec dominator below the recomputed cost"));
                }
                Ok(rational_to_f64_up(s))
            } else if let Some(sq) = value_sq {
                let claimed = sqrt_upper(sq, SQRT_BITS)?;
                if cost_upper > &claimed + &slack {
                    return Err(Error::internal(
                        "claimed squared bound below the recomputed cost",
                    ));
                }
                Ok(rational_to_f64_up(&claimed))
            } else {
                Ok(rational_to_f64_up(&cost_upper))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// positivity of unital maps via norms
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct MapPositivityReport {
    pub positive: bool,
    pub violating_generator: Option<Vec<Rational>>,
    /// Hermitian element with `||phi(w)|| / ||w|| > 1` (exact ratio), present
    /// exactly when the map is not positive.
    pub witness: Option<PositivityWitness>,
    /// Max of `||phi(v)||_m / ||v||_m` over the sample set.
    pub sampled_norm_ratio: f64,
    /// Positivity holds iff the sampled minimal-norm ratio stays at one;
    /// cross-checked, not used as the decision.
    pub norm_one_consistent: bool,
}

#[derive(Debug, Clone)]
pub struct PositivityWitness {
    pub element: Vec<Rational>,
    pub ratio: Rational,
}

/// Report positivity of a unital map together with a sampled estimate of its
/// minimal-norm seminorm. The decision is the direct generator test; the
/// norm estimate cross-checks the positivity-iff-norm-one equivalence and is
/// not the decision procedure.
pub fn map_positivity_test(
    source: &OrderedSpace,
    target: &OrderedSpace,
    phi: &LinearMap,
    samples: usize,
) -> Result<MapPositivityReport> {
    if !source.cone.is_polyhedral() || !target.cone.is_polyhedral() {
        return Err(Error::capability(
            "map positivity test needs polyhedral spaces",
        ));
    }
    if !order::is_archimedean(source)? || !order::is_archimedean(target)? {
        return Err(Error::precondition(
            "map positivity test needs Archimedean spaces",
        ));
    }
    if phi.apply(&source.unit)?.to_rationals()? != target.unit_rationals()? {
        return Err(Error::precondition("map is not unital"));
    }
    // direct decision on the generators
    let mut violating: Option<Vec<Rational>> = None;
    for g in source.cone_generators()? {
        if !target.closure_member(&phi.apply(&g)?)? {
            violating = Some(g.to_rationals()?);
            break;
        }
    }
    // exact hermitian witness: w = (||p||/2) e - p has ||phi(w)|| > ||w||
    let witness = match &violating {
        None => None,
        Some(p) => {
            let pv = RealVector::from_rationals(p.clone());
            let pnorm = order::order_seminorm_exact(source, &pv)?;
            let c = &pnorm / Rational::from_integer(2.into());
            let w = source.unit.scale(&Scalar::Exact(c)).sub(&pv)?;
            let wnorm = order::order_seminorm_exact(source, &w)?;
            let img = phi.apply(&w)?;
            let inorm = order::order_seminorm_exact(target, &img)?;
            if wnorm.is_zero() {
                return Err(Error::internal("positivity witness has zero norm"));
            }
            let ratio = inorm / wnorm;
            Some(PositivityWitness {
                element: w.to_rationals()?,
                ratio,
            })
        }
    };
    // sampled minimal-norm ratios over ball vertices and complex combinations
    let ball = order::unit_ball_vertices(source)?;
    let mut max_ratio_sq = Rational::zero();
    let mut rng = 0x243f6a8885a308d3u64;
    let mut push_sample = |re: Vec<Rational>, im: Vec<Rational>| -> Result<()> {
        let v = ComplexElement::new(
            RealVector::from_rationals(re),
            RealVector::from_rationals(im),
        )?;
        if v.is_zero() {
            return Ok(());
        }
        let num = minimal_norm(target, &phi.apply_complex(&v)?, 1e-9)?;
        let den = minimal_norm(source, &v, 1e-9)?;
        let (Some(nsq), Some(dsq)) = (num.value_sq, den.value_sq) else {
            return Ok(());
        };
        if dsq.is_zero() {
            return Ok(());
        }
        let r = nsq / dsq;
        if r > max_ratio_sq {
            max_ratio_sq = r;
        }
        Ok(())
    };
    for b in &ball {
        push_sample(b.clone(), vec![Rational::zero(); source.n])?;
    }
    for _ in 0..samples {
        rng ^= rng << 13;
        rng ^= rng >> 7;
        rng ^= rng << 17;
        let i = (rng >> 8) as usize % ball.len();
        rng ^= rng << 13;
        rng ^= rng >> 7;
        rng ^= rng << 17;
        let j = (rng >> 8) as usize % ball.len();
        push_sample(ball[i].clone(), ball[j].clone())?;
    }
    let positive = violating.is_none();
    let sampled_norm_ratio = Float::sqrt(rational_to_f64_up(&max_ratio_sq));
    let norm_one_consistent = if positive {
        max_ratio_sq <= Rational::one()
    } else {
        witness
            .as_ref()
            .map_or(false, |w| w.ratio > Rational::one())
    };
    Ok(MapPositivityReport {
        positive,
        violating_generator: violating,
        witness,
        sampled_norm_ratio,
        norm_one_consistent,
    })
}
