//! Cone representations and primitive cone queries.
//!
//! Three families: polyhedral cones in H-representation (halfspace rows with
//! optional strict flags), polyhedral cones in V-representation (generators),
//! and the PSD cone of d-by-d hermitian matrices in a fixed real coordinate
//! basis of dimension d^2. Strict rows plus an include-origin flag are the
//! only supported non-closed cones; they cover the non-Archimedean examples
//! and make closure a pure representation rewrite.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{canonical_direction, dot, independent_subset, Matrix};
use crate::lp::{self, LinearProgram, LpResult, Row};
use crate::psd;
use crate::scalar::{Rational, Scalar, ScalarMode};
use crate::vector::RealVector;

/// One halfspace `a.x >= 0`, strict when flagged.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSpace {
    pub normal: RealVector,
    pub strict: bool,
}

/// Description of the positive cone.
#[derive(Debug, Clone, PartialEq)]
pub enum ConeSpec {
    /// Intersection of halfspaces; the origin is adjoined when any row is
    /// strict (a strict intersection alone would miss it and not be a cone).
    PolyhedralH {
        rows: Vec<HalfSpace>,
        include_origin: bool,
    },
    /// Conic hull of finitely many generators (always closed).
    PolyhedralV { generators: Vec<RealVector> },
    /// PSD hermitian d-by-d matrices, ambient dimension d^2.
    MatrixPsd { d: usize },
}

impl ConeSpec {
    /// H-representation constructor; validates the strictness/origin contract.
    pub fn polyhedral_h(rows: Vec<HalfSpace>, include_origin: bool) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.normal.len());
        for r in &rows {
            Error::check_dim(n, r.normal.len())?;
        }
        if rows.iter().any(|r| r.strict) && !include_origin {
            return Err(Error::precondition(
                "strict rows require include_origin (otherwise 0 is excluded and the set is not a cone)",
            ));
        }
        Ok(ConeSpec::PolyhedralH {
            rows,
            include_origin,
        })
    }

    pub fn polyhedral_v(generators: Vec<RealVector>) -> Result<Self> {
        let n = generators.first().map_or(0, RealVector::len);
        for g in &generators {
            Error::check_dim(n, g.len())?;
        }
        Ok(ConeSpec::PolyhedralV { generators })
    }

    pub fn orthant(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut v = vec![Scalar::zero(); n];
                v[i] = Scalar::one();
                HalfSpace {
                    normal: RealVector::new(v),
                    strict: false,
                }
            })
            .collect();
        ConeSpec::PolyhedralH {
            rows,
            include_origin: false,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            ConeSpec::PolyhedralH { rows, .. } => rows.first().map_or(0, |r| r.normal.len()),
            ConeSpec::PolyhedralV { generators } => generators.first().map_or(0, RealVector::len),
            ConeSpec::MatrixPsd { d } => d * d,
        }
    }

    pub fn is_polyhedral(&self) -> bool {
        !matches!(self, ConeSpec::MatrixPsd { .. })
    }

    pub fn has_strict_rows(&self) -> bool {
        matches!(self, ConeSpec::PolyhedralH { rows, .. } if rows.iter().any(|r| r.strict))
    }
}

/// Membership query. `tol` is honored on approximate paths (PSD eigenvalues,
/// approx-mode polyhedral boundaries) and ignored in exact mode.
pub fn member(cone: &ConeSpec, h: &RealVector, tol: f64) -> Result<bool> {
    Error::check_dim(cone.ambient_dim(), h.len())?;
    let approx = h.coords.iter().any(|c| !c.is_exact());
    match cone {
        ConeSpec::PolyhedralH {
            rows,
            include_origin,
        } => {
            let x = h.to_rationals()?;
            let slack = if approx {
                Rational::from_float(tol).unwrap_or_else(Rational::zero)
            } else {
                Rational::zero()
            };
            let mut ok = true;
            for r in rows {
                let v = dot(&r.normal.to_rationals()?, &x);
                let pass = if r.strict { v > slack } else { v >= -slack.clone() };
                if !pass {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(true);
            }
            Ok(*include_origin && x.iter().all(Zero::is_zero))
        }
        ConeSpec::PolyhedralV { generators } => {
            let x = h.to_rationals()?;
            if generators.is_empty() {
                return Ok(x.iter().all(Zero::is_zero));
            }
            conic_combination_exists(generators, &x)
        }
        ConeSpec::MatrixPsd { d } => {
            let mat = psd::coords_to_matrix(*d, &h.to_f64s())?;
            Ok(psd::min_eigenvalue(&mat) >= -tol)
        }
    }
}

/// LP feasibility of `sum lambda_j g_j = x` with `lambda >= 0`.
pub fn conic_combination_exists(generators: &[RealVector], x: &[Rational]) -> Result<bool> {
    let n = x.len();
    let k = generators.len();
    let mut lp = LinearProgram::new(k, vec![Rational::zero(); k], false)?;
    for i in 0..n {
        let mut coeffs = Vec::with_capacity(k);
        for g in generators {
            coeffs.push(g.to_rationals()?[i].clone());
        }
        lp.push_eq(Row::new(coeffs, x[i].clone()))?;
    }
    for j in 0..k {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs[j] = Rational::one();
        lp.push_ineq(Row::homogeneous(coeffs))?;
    }
    Ok(matches!(lp::solve(&lp)?, LpResult::Optimal { .. }))
}

/// Closure as a representation rewrite: strict flags cleared, origin flag
/// absorbed. V-rep and PSD cones are already closed.
pub fn closure(cone: &ConeSpec) -> ConeSpec {
    match cone {
        ConeSpec::PolyhedralH { rows, .. } => ConeSpec::PolyhedralH {
            rows: rows
                .iter()
                .map(|r| HalfSpace {
                    normal: r.normal.clone(),
                    strict: false,
                })
                .collect(),
            include_origin: false,
        },
        other => other.clone(),
    }
}

/// Exact H-representation rows of the closure, as rational row vectors.
pub fn closure_rows(cone: &ConeSpec) -> Result<Vec<Vec<Rational>>> {
    match cone {
        ConeSpec::PolyhedralH { rows, .. } => {
            rows.iter().map(|r| r.normal.to_rationals()).collect()
        }
        ConeSpec::PolyhedralV { generators } => {
            // facets of the conic hull = extreme rays of the dual, which has
            // H-rep rows equal to the generators
            let n = cone.ambient_dim();
            let gen_rows: Vec<Vec<Rational>> = generators
                .iter()
                .map(|g| g.to_rationals())
                .collect::<Result<_>>()?;
            let (rays, lineality) = cone_vrep_of_hrep(&gen_rows, &[], n)?;
            let mut rows = rays;
            for l in lineality {
                rows.push(l.iter().map(|x| -x).collect());
                rows.push(l);
            }
            Ok(rows)
        }
        ConeSpec::MatrixPsd { .. } => Err(Error::capability(
            "matrix PSD cone has no finite H-representation",
        )),
    }
}

/// Extreme rays of the closure plus a +/- spanned lineality part, i.e. a
/// V-representation of the (possibly non-pointed) closed cone.
pub fn generators(cone: &ConeSpec) -> Result<Vec<RealVector>> {
    let n = cone.ambient_dim();
    if n > lp::MAX_ENUM_DIM {
        return Err(Error::capability(format!(
            "generator enumeration supports dimension <= {}, got {n}",
            lp::MAX_ENUM_DIM
        )));
    }
    match cone {
        ConeSpec::PolyhedralV { generators } => {
            // reduce to extreme rays of the hull for a canonical answer
            let rats: Vec<Vec<Rational>> = generators
                .iter()
                .map(|g| g.to_rationals())
                .collect::<Result<_>>()?;
            let kept = extreme_among(&rats)?;
            Ok(kept.into_iter().map(RealVector::from_rationals).collect())
        }
        ConeSpec::PolyhedralH { .. } => {
            let rows = closure_rows(cone)?;
            let (rays, lineality) = cone_vrep_of_hrep(&rows, &[], n)?;
            let mut out = rays;
            for l in lineality {
                out.push(l.iter().map(|x| -x).collect());
                out.push(l);
            }
            Ok(out.into_iter().map(RealVector::from_rationals).collect())
        }
        ConeSpec::MatrixPsd { .. } => Err(Error::capability(
            "matrix PSD cone has infinitely many extreme rays",
        )),
    }
}

/// Reduce a generating set to a minimal one. Removal is sequential (each
/// step re-checks against the surviving set), which stays sound when the
/// cone has lineality; for pointed cones the result is the extreme rays.
fn extreme_among(gens: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let mut list: Vec<Vec<Rational>> = Vec::new();
    for g in gens {
        let c = canonical_direction(g);
        if !c.iter().all(Zero::is_zero) && !list.contains(&c) {
            list.push(c);
        }
    }
    let mut i = 0;
    while i < list.len() {
        let others: Vec<RealVector> = list
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| RealVector::from_rationals(v.clone()))
            .collect();
        if !others.is_empty() && conic_combination_exists(&others, &list[i])? {
            list.remove(i);
        } else {
            i += 1;
        }
    }
    list.sort();
    Ok(list)
}

/// Dual cone of a polyhedral cone: `{ f : f.g >= 0 for all g in C }`.
/// The closure is taken first (duality cannot see strictness).
pub fn dual_cone(cone: &ConeSpec) -> Result<ConeSpec> {
    match cone {
        ConeSpec::MatrixPsd { .. } => Err(Error::capability(
            "matrix PSD cone is self-dual; dual_cone supports polyhedral cones only",
        )),
        ConeSpec::PolyhedralV { generators } => {
            // dual of cone(G) has H-rep rows G; convert to generators
            let gen_rows: Vec<Vec<Rational>> = generators
                .iter()
                .map(|g| g.to_rationals())
                .collect::<Result<_>>()?;
            let n = cone.ambient_dim();
            let (rays, lineality) = cone_vrep_of_hrep(&gen_rows, &[], n)?;
            let mut out = rays;
            for l in lineality {
                out.push(l.iter().map(|x| -x).collect());
                out.push(l);
            }
            out.sort();
            ConeSpec::polyhedral_v(out.into_iter().map(RealVector::from_rationals).collect())
        }
        ConeSpec::PolyhedralH { .. } => {
            // dual of {x : Ax >= 0} is the conic hull of the rows of A
            let rows = closure_rows(cone)?;
            let kept = extreme_among(&rows)?;
            ConeSpec::polyhedral_v(kept.into_iter().map(RealVector::from_rationals).collect())
        }
    }
}

/// Pointedness: `C intersect -C = {0}`.
pub fn is_pointed(cone: &ConeSpec) -> Result<bool> {
    match cone {
        ConeSpec::MatrixPsd { .. } => Ok(true),
        ConeSpec::PolyhedralH { rows, .. } => {
            // a strict row kills +/- membership of any nonzero h outright
            if rows.iter().any(|r| r.strict) {
                return Ok(true);
            }
            Ok(lineality_space(cone)?.is_empty())
        }
        ConeSpec::PolyhedralV { .. } => Ok(lineality_space(cone)?.is_empty()),
    }
}

/// Basis of the lineality space of the closure, `cl(C) intersect -cl(C)`.
pub fn lineality_space(cone: &ConeSpec) -> Result<Vec<Vec<Rational>>> {
    match cone {
        ConeSpec::MatrixPsd { .. } => Ok(Vec::new()),
        ConeSpec::PolyhedralH { .. } => {
            let rows = closure_rows(cone)?;
            if rows.is_empty() {
                return Ok(Matrix::zeros(1, cone.ambient_dim()).nullspace());
            }
            Ok(Matrix::from_rows(rows)?.nullspace())
        }
        ConeSpec::PolyhedralV { generators } => {
            // span of the generators whose negative stays inside the hull
            let mut members = Vec::new();
            for g in generators {
                let neg = g.neg();
                if conic_combination_exists(generators, &neg.to_rationals()?)? {
                    members.push(g.to_rationals()?);
                }
            }
            independent_subset(&members)
        }
    }
}

/// Extreme rays and lineality basis of `{x : rows.x >= 0, eqs.x = 0}`.
///
/// Brute force over row subsets of rank n-1, capped at desk scale.
pub fn cone_vrep_of_hrep(
    ineq_rows: &[Vec<Rational>],
    eq_rows: &[Vec<Rational>],
    n: usize,
) -> Result<(Vec<Vec<Rational>>, Vec<Vec<Rational>>)> {
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    if n > lp::MAX_ENUM_DIM {
        return Err(Error::capability(format!(
            "ray enumeration supports dimension <= {}, got {n}",
            lp::MAX_ENUM_DIM
        )));
    }
    // lineality: all constraints tight
    let mut all_rows: Vec<Vec<Rational>> = ineq_rows.to_vec();
    all_rows.extend(eq_rows.to_vec());
    let lineality = if all_rows.is_empty() {
        // no constraints: the cone is the whole space
        Matrix::zeros(1, n).nullspace()
    } else {
        Matrix::from_rows(all_rows)?.nullspace()
    };

    // pointed part: intersect with the orthogonal complement of the lineality
    let mut eqs: Vec<Vec<Rational>> = eq_rows.to_vec();
    for l in &lineality {
        eqs.push(l.clone());
    }
    let eq_basis = independent_subset(&eqs)?;
    let r = eq_basis.len();
    let mut rays: Vec<Vec<Rational>> = Vec::new();
    if n > r {
        let need = n - 1 - r;
        let m = ineq_rows.len();
        if need > m {
            // not enough rows to pin a ray; the pointed part is {0}
            return Ok((rays, lineality));
        }
        let mut subset = vec![0usize; need];
        let mut base: Vec<Vec<Rational>> = eq_basis.clone();
        enumerate_subsets(m, need, &mut subset, &mut |chosen| {
            base.truncate(r);
            for &k in chosen {
                base.push(ineq_rows[k].clone());
            }
            let ns = if base.is_empty() {
                // no constraints pin the ray: only possible in dimension 1
                if n == 1 {
                    vec![vec![Rational::one()]]
                } else {
                    return Ok(());
                }
            } else {
                Matrix::from_rows(base.clone())?.nullspace()
            };
            if ns.len() != 1 {
                return Ok(());
            }
            let d = canonical_direction(&ns[0]);
            for cand in [d.clone(), d.iter().map(|x| -x).collect::<Vec<_>>()] {
                let inside = ineq_rows.iter().all(|row| !dot(row, &cand).is_negative())
                    && eq_rows.iter().all(|row| dot(row, &cand).is_zero());
                if inside {
                    let c = canonical_direction(&cand);
                    if !rays.contains(&c) {
                        rays.push(c);
                    }
                }
            }
            Ok(())
        })?;
    }
    rays.sort();
    Ok((rays, lineality))
}

fn enumerate_subsets(
    m: usize,
    k: usize,
    buf: &mut [usize],
    f: &mut impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    fn rec(
        m: usize,
        k: usize,
        start: usize,
        depth: usize,
        buf: &mut [usize],
        f: &mut impl FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        if depth == k {
            return f(&buf[..k]);
        }
        for i in start..m {
            buf[depth] = i;
            rec(m, k, i + 1, depth + 1, buf, f)?;
        }
        Ok(())
    }
    if k == 0 {
        return f(&[]);
    }
    rec(m, k, 0, 0, buf, f)
}

// ---------------------------------------------------------------------------
// ordered spaces
// ---------------------------------------------------------------------------

/// `(V, V+, e)` in coordinates: hermitian dimension, cone, order unit.
#[derive(Debug, Clone)]
pub struct OrderedSpace {
    pub n: usize,
    pub cone: ConeSpec,
    pub unit: RealVector,
    pub basis_labels: Option<Vec<String>>,
    pub mode: ScalarMode,
    /// Default tolerance for approximate paths.
    pub tol: f64,
}

impl OrderedSpace {
    pub fn new(cone: ConeSpec, unit: RealVector) -> Result<Self> {
        let n = cone.ambient_dim();
        Error::check_dim(n, unit.len())?;
        let (mode, tol) = match cone {
            ConeSpec::MatrixPsd { .. } => (ScalarMode::Approx, 1e-9),
            _ => (ScalarMode::Exact, 0.0),
        };
        Ok(OrderedSpace {
            n,
            cone,
            unit,
            basis_labels: None,
            mode,
            tol,
        })
    }

    pub fn with_mode(mut self, mode: ScalarMode, tol: f64) -> Self {
        self.mode = mode;
        self.tol = tol;
        self
    }

    /// The standard C^n / R^n space with the orthant cone.
    pub fn orthant(n: usize, unit: RealVector) -> Result<Self> {
        OrderedSpace::new(ConeSpec::orthant(n), unit)
    }

    /// The hermitian d-by-d matrix space ordered by the PSD cone, unit = I.
    pub fn matrix(d: usize) -> Result<Self> {
        OrderedSpace::new(
            ConeSpec::MatrixPsd { d },
            RealVector::from_rationals(psd::identity_coords(d)),
        )
    }

    pub fn member(&self, h: &RealVector) -> Result<bool> {
        member(&self.cone, h, self.tol)
    }

    pub fn closure_member(&self, h: &RealVector) -> Result<bool> {
        member(&closure(&self.cone), h, self.tol)
    }

    /// Generators of the closed cone (polyhedral only).
    pub fn cone_generators(&self) -> Result<Vec<RealVector>> {
        generators(&self.cone)
    }

    /// H-representation rows of the closed cone (polyhedral only).
    pub fn cone_rows(&self) -> Result<Vec<Vec<Rational>>> {
        closure_rows(&self.cone)
    }

    pub fn unit_rationals(&self) -> Result<Vec<Rational>> {
        self.unit.to_rationals()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oq() -> ConeSpec {
        // open quadrant with the origin adjoined
        ConeSpec::polyhedral_h(
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
        .unwrap()
    }

    #[test]
    fn orthant_membership() {
        let c = ConeSpec::orthant(2);
        assert!(member(&c, &RealVector::from_ints(&[1, 1]), 0.0).unwrap());
        assert!(!member(&c, &RealVector::from_ints(&[-1, 1]), 0.0).unwrap());
    }

    #[test]
    fn open_quadrant_membership() {
        let c = oq();
        assert!(!member(&c, &RealVector::from_ints(&[1, 0]), 0.0).unwrap());
        assert!(member(&c, &RealVector::from_ints(&[1, 1]), 0.0).unwrap());
        assert!(member(&c, &RealVector::from_ints(&[0, 0]), 0.0).unwrap());
        assert!(is_pointed(&c).unwrap());
    }

    #[test]
    fn strict_rows_need_origin_flag() {
        let bad = ConeSpec::polyhedral_h(
            vec![HalfSpace {
                normal: RealVector::from_ints(&[1, 0]),
                strict: true,
            }],
            false,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn closure_clears_strictness() {
        let c = closure(&oq());
        assert!(member(&c, &RealVector::from_ints(&[1, 0]), 0.0).unwrap());
        assert!(!c.has_strict_rows());
        assert_eq!(closure(&c), c);
    }

    #[test]
    fn closure_grows_membership() {
        let c = oq();
        let cl = closure(&c);
        for h in [[1, 1], [2, 3], [0, 0]] {
            let h = RealVector::from_ints(&h);
            if member(&c, &h, 0.0).unwrap() {
                assert!(member(&cl, &h, 0.0).unwrap());
            }
        }
    }

    #[test]
    fn orthant_self_dual() {
        let d = dual_cone(&ConeSpec::orthant(2)).unwrap();
        let gens = generators(&d).unwrap();
        assert_eq!(gens.len(), 2);
        assert!(gens.contains(&RealVector::from_ints(&[1, 0])));
        assert!(gens.contains(&RealVector::from_ints(&[0, 1])));
    }

    #[test]
    fn dual_of_vrep_cone() {
        let c = ConeSpec::polyhedral_v(vec![
            RealVector::from_ints(&[1, 0]),
            RealVector::from_ints(&[1, 1]),
        ])
        .unwrap();
        let d = dual_cone(&c).unwrap();
        let gens = generators(&d).unwrap();
        assert_eq!(gens.len(), 2);
        assert!(gens.contains(&RealVector::from_ints(&[0, 1])));
        assert!(gens.contains(&RealVector::from_ints(&[1, -1])));
        for f in &gens {
            for g in [[1, 0], [1, 1]] {
                let g = RealVector::from_ints(&g);
                assert!(!f.dot(&g).unwrap().to_rational().unwrap().is_negative());
            }
        }
    }

    #[test]
    fn orthant_rays() {
        let gens = generators(&ConeSpec::orthant(3)).unwrap();
        assert_eq!(gens.len(), 3);
        for i in 0..3 {
            let mut v = [0i64; 3];
            v[i] = 1;
            assert!(gens.contains(&RealVector::from_ints(&v)));
        }
    }

    #[test]
    fn halfplane_not_pointed() {
        let c = ConeSpec::polyhedral_h(
            vec![HalfSpace {
                normal: RealVector::from_ints(&[1, 0]),
                strict: false,
            }],
            false,
        )
        .unwrap();
        assert!(!is_pointed(&c).unwrap());
        assert_eq!(lineality_space(&c).unwrap().len(), 1);
        assert!(is_pointed(&ConeSpec::MatrixPsd { d: 2 }).unwrap());
    }

    #[test]
    fn psd_membership_by_eigenvalues() {
        // [[1,1],[1,1]] is PSD (eigenvalues 0, 2); [[1,2],[2,1]] is not (-1, 3)
        let d = ConeSpec::MatrixPsd { d: 2 };
        let ones = RealVector::from_ints(&[1, 1, 1, 0]);
        assert!(member(&d, &ones, 1e-9).unwrap());
        let bad = RealVector::from_ints(&[1, 1, 2, 0]);
        assert!(!member(&d, &bad, 1e-9).unwrap());
    }

    #[test]
    fn hrep_vrep_round_trip_membership() {
        let rows = vec![
            HalfSpace {
                normal: RealVector::from_ints(&[1, 0, 0]),
                strict: false,
            },
            HalfSpace {
                normal: RealVector::from_ints(&[1, 1, 0]),
                strict: false,
            },
            HalfSpace {
                normal: RealVector::from_ints(&[0, 1, 2]),
                strict: false,
            },
        ];
        let c = ConeSpec::polyhedral_h(rows, false).unwrap();
        let v = ConeSpec::polyhedral_v(generators(&c).unwrap()).unwrap();
        let mut state = 12345u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 33) as i64 % 9) - 4
        };
        for _ in 0..200 {
            let h = RealVector::from_ints(&[next(), next(), next()]);
            assert_eq!(
                member(&c, &h, 0.0).unwrap(),
                member(&v, &h, 0.0).unwrap(),
                "h = {h:?}"
            );
        }
    }

    #[test]
    fn enumeration_caps_are_capability_errors() {
        let big = ConeSpec::orthant(9);
        assert!(matches!(generators(&big), Err(crate::Error::Capability(_))));
        // membership still works above the enumeration cap
        let mut v = [1i64; 9];
        v[3] = 0;
        assert!(member(&big, &RealVector::from_ints(&v), 0.0).unwrap());
        assert!(matches!(
            dual_cone(&ConeSpec::MatrixPsd { d: 2 }),
            Err(crate::Error::Capability(_))
        ));
    }

    #[test]
    fn dual_dual_is_closure() {
        // round trip on a pointed full cone in R^3
        let c = ConeSpec::polyhedral_v(vec![
            RealVector::from_ints(&[1, 0, 0]),
            RealVector::from_ints(&[1, 1, 0]),
            RealVector::from_ints(&[1, 1, 1]),
        ])
        .unwrap();
        let dd = dual_cone(&dual_cone(&c).unwrap()).unwrap();
        let mut state = 999u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 33) as i64 % 7) - 3
        };
        for _ in 0..100 {
            let h = RealVector::from_ints(&[next(), next(), next()]);
            assert_eq!(
                member(&c, &h, 0.0).unwrap(),
                member(&dd, &h, 0.0).unwrap()
            );
        }
    }
}
