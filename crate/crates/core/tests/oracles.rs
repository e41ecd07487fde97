//! Independent-oracle cross checks: each computation path is tested against
//! a second route that shares as little machinery as possible (dense
//! enumeration, sampling grids, bisection, or an alternative LP formulation).

mod common;

use common::*;
use num_traits::{Float, One, Signed, Zero};
use ordunit_core::cone::{self, ConeSpec, HalfSpace};
use ordunit_core::lp::{self, LinearProgram, LpResult, Polytope, Row, StandardLp, StandardResult};
use ordunit_core::norms::{self, NormOptions};
use ordunit_core::psd;
use ordunit_core::scalar::{rat, ratio, Rational};
use ordunit_core::vector::{ComplexElement, RealVector};
use ordunit_core::{order, OrderedSpace, Scalar};
use rand::Rng;

#[test]
fn lp_optimum_matches_dense_vertex_enumeration() {
    // feasible bounded random LPs: certified optimum equals the best vertex
    let mut r = rng(201);
    for case in 0..200 {
        let n = r.gen_range(2..=4);
        let mut prog = LinearProgram::new(
            n,
            (0..n).map(|_| rat(r.gen_range(-4..=4))).collect(),
            true,
        )
        .unwrap();
        let mut poly = Polytope::default();
        for i in 0..n {
            for sgn in [1i64, -1] {
                let mut row = vec![Rational::zero(); n];
                row[i] = rat(sgn);
                let rw = Row::new(row, rat(-3));
                prog.push_ineq(rw.clone()).unwrap();
                poly.ineqs.push(rw);
            }
        }
        for _ in 0..r.gen_range(1..=3) {
            let coeffs: Vec<Rational> = (0..n).map(|_| rat(r.gen_range(-3..=3))).collect();
            let rhs = rat(r.gen_range(-6..=-1));
            let rw = Row::new(coeffs, rhs);
            prog.push_ineq(rw.clone()).unwrap();
            poly.ineqs.push(rw);
        }
        let res = lp::solve(&prog).unwrap();
        let LpResult::Optimal { value, .. } = &res else {
            panic!("case {case}: expected optimal");
        };
        lp::verify_optimal(&prog, &res).unwrap();
        let best = lp::vertices(&poly)
            .unwrap()
            .iter()
            .map(|v| ordunit_core::linalg::dot(&prog.objective, v))
            .max()
            .unwrap();
        assert_eq!(*value, best, "case {case}");
    }
}

#[test]
fn enumerated_vertices_are_feasible_and_extreme() {
    let mut r = rng(202);
    for _ in 0..40 {
        let n = r.gen_range(2..=3);
        let mut poly = Polytope::default();
        for i in 0..n {
            for sgn in [1i64, -1] {
                let mut row = vec![Rational::zero(); n];
                row[i] = rat(sgn);
                poly.ineqs.push(Row::new(row, rat(-2)));
            }
        }
        for _ in 0..2 {
            let coeffs: Vec<Rational> = (0..n).map(|_| rat(r.gen_range(-2..=2))).collect();
            poly.ineqs.push(Row::new(coeffs, rat(r.gen_range(-4..=0))));
        }
        let vs = lp::vertices(&poly).unwrap();
        for v in &vs {
            assert!(poly.contains(v));
        }
        // no vertex is the midpoint of two others
        for (i, v) in vs.iter().enumerate() {
            for (j, a) in vs.iter().enumerate() {
                for b in vs.iter().skip(j + 1) {
                    if i == j {
                        continue;
                    }
                    let mid: Vec<Rational> = a
                        .iter()
                        .zip(b)
                        .map(|(p, q)| (p + q) / rat(2))
                        .collect();
                    assert!(
                        mid != *v || a == v || b == v,
                        "vertex {v:?} is a midpoint"
                    );
                }
            }
        }
    }
}

#[test]
fn closure_membership_agrees_with_r_sampling_oracle() {
    // D = {v : re + v in C for all r > 0} equals the flag-cleared closure
    let halfplane = ConeSpec::polyhedral_h(
        vec![HalfSpace {
            normal: RealVector::from_ints(&[1, 0]),
            strict: true,
        }],
        true,
    )
    .unwrap();
    let e = RealVector::from_ints(&[1, 0]);
    let closed = cone::closure(&halfplane);
    let mut r = rng(203);
    for _ in 0..200 {
        let v = random_vector(&mut r, 2, 5);
        let in_closure = cone::member(&closed, &v, 0.0).unwrap();
        // oracle: r e + v in C for r = 1, 1/2, ..., 1/2^10
        let mut all_in = true;
        let mut rr = Rational::one();
        for _ in 0..10 {
            let shifted = e.scale(&Scalar::Exact(rr.clone())).add(&v).unwrap();
            if !cone::member(&halfplane, &shifted, 0.0).unwrap() {
                all_in = false;
                break;
            }
            rr /= rat(2);
        }
        assert_eq!(in_closure, all_in, "v = {v:?}");
    }
}

#[test]
fn dual_cone_double_description_round_trip() {
    // dual(dual(C)) has the same membership as C on random pointed cones
    let mut r = rng(204);
    let mut done = 0;
    while done < 50 {
        let space = random_vrep_space(&mut r, 3);
        let c = space.cone.clone();
        if !cone::is_pointed(&c).unwrap() {
            continue;
        }
        let dd = cone::dual_cone(&cone::dual_cone(&c).unwrap()).unwrap();
        for _ in 0..20 {
            let h = random_vector(&mut r, 3, 4);
            assert_eq!(
                cone::member(&c, &h, 0.0).unwrap(),
                cone::member(&dd, &h, 0.0).unwrap(),
                "h = {h:?}"
            );
        }
        // membership iff nonnegative against every dual generator
        let dual_gens = cone::generators(&cone::dual_cone(&c).unwrap()).unwrap();
        for _ in 0..20 {
            let h = random_vector(&mut r, 3, 4);
            let by_dual = dual_gens.iter().all(|f| {
                !f.dot(&h)
                    .unwrap()
                    .to_rational()
                    .unwrap()
                    .is_negative()
            });
            assert_eq!(by_dual, cone::member(&c, &h, 0.0).unwrap());
        }
        done += 1;
    }
}

#[test]
fn hrep_to_vrep_round_trip_on_random_points() {
    let mut r = rng(205);
    for _ in 0..5 {
        let space = random_hrep_space(&mut r, 3);
        let vrep = ConeSpec::polyhedral_v(space.cone_generators().unwrap()).unwrap();
        for _ in 0..200 {
            let h = random_vector(&mut r, 3, 6);
            assert_eq!(
                cone::member(&space.cone, &h, 0.0).unwrap(),
                cone::member(&vrep, &h, 0.0).unwrap()
            );
        }
    }
}

#[test]
fn psd_order_norm_by_bisection_matches_spectrum() {
    // order norm of diag(1, -2) in M2: spectral oracle gives exactly 2
    let space = OrderedSpace::matrix(2).unwrap();
    let h = RealVector::from_ints(&[1, -2, 0, 0]);
    let e = space.unit.clone();
    let tol = 1e-9;
    let member = |r: f64| {
        let re = e.scale(&Scalar::Approx(r));
        let plus = re.add(&h).unwrap();
        let minus = re.sub(&h).unwrap();
        space.member(&plus).unwrap() && space.member(&minus).unwrap()
    };
    let norm = lp::infimum_by_bisection(member, 0.0, 10.0, tol).unwrap();
    assert!((norm - 2.0).abs() <= 1e-7);
    // and the state-interval route agrees
    let by_interval = order::order_seminorm(&space, &h).unwrap().to_f64();
    assert!((by_interval - 2.0).abs() <= 1e-7);
}

#[test]
fn polyhedral_seminorm_lp_and_bisection_agree() {
    let mut r = rng(206);
    let tol = 1e-7;
    for _ in 0..100 {
        let n = r.gen_range(2..=3);
        let space = random_space(&mut r, n);
        let h = random_vector(&mut r, n, 5);
        let exact = order::order_seminorm_exact(&space, &h).unwrap();
        let exact_f = ordunit_core::scalar::rational_to_f64(&exact);
        let e = space.unit.clone();
        let hi = exact_f + 2.0;
        let member = |r: f64| {
            // rational r keeps the membership test exact
            let rr = Rational::from_float(r).unwrap();
            let re = e.scale(&Scalar::Exact(rr));
            let plus = re.add(&h).unwrap();
            let minus = re.sub(&h).unwrap();
            space.closure_member(&plus).unwrap() && space.closure_member(&minus).unwrap()
        };
        let by_bisect = lp::infimum_by_bisection(member, -1.0, hi, tol).unwrap();
        assert!(
            (by_bisect - exact_f).abs() <= 2.0 * tol,
            "bisection {by_bisect} vs exact {exact_f}"
        );
    }
}

#[test]
fn minimal_norm_matches_dense_angle_sweep() {
    // oracle: ||v||_m = sup over angles of beta(cos t x - sin t y), computed
    // on a dense angle grid through the state-interval route
    let mut r = rng(207);
    for _ in 0..20 {
        let n = r.gen_range(2..=3);
        let space = random_space(&mut r, n);
        let v = random_element(&mut r, n, 4);
        let m = norms::minimal_norm(&space, &v, 1e-9).unwrap();
        let mut best = f64::NEG_INFINITY;
        let steps = 720;
        for k in 0..steps {
            let t = 2.0 * core::f64::consts::PI * (k as f64) / (steps as f64);
            let (c, s) = (Float::cos(t), Float::sin(t));
            // rational approximations keep the LP exact
            let cr = Rational::from_float(c).unwrap();
            let sr = Rational::from_float(s).unwrap();
            let h = v
                .re
                .scale(&Scalar::Exact(cr))
                .sub(&v.im.scale(&Scalar::Exact(sr)))
                .unwrap();
            let beta = order::state_interval(&space, &h).unwrap().beta;
            best = Float::max(best, beta.to_f64());
        }
        let exact = m.value.to_f64();
        // the grid undershoots by at most (1 - cos(pi/steps)) relative
        assert!(best <= exact + 1e-9, "sweep exceeded the certified value");
        assert!(
            best >= exact * (1.0 - 1e-4) - 1e-9,
            "sweep {best} too far below {exact}"
        );
    }
}

#[test]
fn maximal_norm_agrees_with_independent_free_variable_lp() {
    // independent route: explicit hermitian variables h_j per phase with
    // t_j e +/- h_j in the cone, on a coarse non-power-of-two grid
    let mut r = rng(208);
    for case in 0..6 {
        let n = 2;
        let space = random_space(&mut r, n);
        let v = random_element(&mut r, n, 3);
        if v.is_zero() {
            continue;
        }
        let iv = norms::maximal_norm(&space, &v, &NormOptions::with_tol(5e-3)).unwrap();
        let grid = norms::phase_grid(36).unwrap();
        let k = grid.len();
        let rows_h = space.cone_rows().unwrap();
        let e = space.unit_rationals().unwrap();
        // variables per phase: h_j (n each) and t_j; all free except the
        // cone rows force t_j e +/- h_j into the closure
        let vars = k * (n + 1);
        let mut prog = LinearProgram::new(
            vars,
            {
                let mut c = vec![Rational::zero(); vars];
                for j in 0..k {
                    c[j * (n + 1) + n] = Rational::one();
                }
                c
            },
            false,
        )
        .unwrap();
        let x = v.re.to_rationals().unwrap();
        let y = v.im.to_rationals().unwrap();
        for i in 0..n {
            let mut re_row = vec![Rational::zero(); vars];
            let mut im_row = vec![Rational::zero(); vars];
            for (j, (c, s)) in grid.points.iter().enumerate() {
                re_row[j * (n + 1) + i] = c.clone();
                im_row[j * (n + 1) + i] = s.clone();
            }
            prog.push_eq(Row::new(re_row, x[i].clone())).unwrap();
            prog.push_eq(Row::new(im_row, y[i].clone())).unwrap();
        }
        for a in &rows_h {
            for j in 0..k {
                for sgn in [1i64, -1] {
                    let mut row = vec![Rational::zero(); vars];
                    for i in 0..n {
                        row[j * (n + 1) + i] = &a[i] * rat(sgn);
                    }
                    row[j * (n + 1) + n] = ordunit_core::linalg::dot(a, &e);
                    prog.push_ineq(Row::homogeneous(row)).unwrap();
                }
            }
        }
        let res = lp::solve(&prog).unwrap();
        let LpResult::Optimal { value, .. } = res else {
            panic!("oracle LP not optimal");
        };
        // oracle bracket: [value * cos-half-gap, value]
        let chg = grid.min_cos_half_gap_sq();
        let oracle_lower = ordunit_core::scalar::rational_to_f64_down(
            &(ordunit_core::scalar::sqrt_lower(&chg, 32).unwrap() * &value),
        );
        let oracle_upper = ordunit_core::scalar::rational_to_f64_up(&value);
        // both brackets contain the truth, so they must nearly intersect
        assert!(
            iv.lower <= oracle_upper + 5e-3 && oracle_lower <= iv.upper + 5e-3,
            "case {case}: impl [{}, {}] vs oracle [{}, {}]",
            iv.lower,
            iv.upper,
            oracle_lower,
            oracle_upper
        );
    }
}

#[test]
fn decomposition_norm_agrees_with_randomized_decompositions() {
    // random positive decompositions only ever overestimate; the certified
    // interval must sit below every sampled cost and within the dual gap
    let mut r = rng(209);
    for _ in 0..6 {
        let n = 2;
        let space = random_space(&mut r, n);
        let gens = space.cone_generators().unwrap();
        // v = sum of random complex multiples of generators (known witness)
        let mut x = RealVector::zeros(n);
        let mut y = RealVector::zeros(n);
        let mut sum_abs_upper = Rational::zero();
        let mut weighted = RealVector::zeros(n);
        for g in &gens {
            let a = ratio(r.gen_range(-3..=3), 2);
            let b = ratio(r.gen_range(-3..=3), 2);
            x = x.add(&g.scale(&Scalar::Exact(a.clone()))).unwrap();
            y = y.add(&g.scale(&Scalar::Exact(b.clone()))).unwrap();
            let modsq = &a * &a + &b * &b;
            let lam = ordunit_core::scalar::sqrt_upper(&modsq, 40).unwrap();
            sum_abs_upper += &lam;
            weighted = weighted.add(&g.scale(&Scalar::Exact(lam))).unwrap();
        }
        let v = ComplexElement::new(x, y).unwrap();
        if v.is_zero() {
            continue;
        }
        let sampled_cost = order::order_seminorm_exact(&space, &weighted).unwrap();
        let iv = norms::decomposition_norm(&space, &v, &NormOptions::with_tol(5e-3)).unwrap();
        let sampled = ordunit_core::scalar::rational_to_f64_up(&sampled_cost);
        assert!(
            iv.lower <= sampled + 1e-9,
            "certified lower {} beats a genuine decomposition cost {}",
            iv.lower,
            sampled
        );
    }
}

#[test]
fn positive_functional_sign_matches_sampled_minimum() {
    let mut r = rng(210);
    for _ in 0..50 {
        let n = r.gen_range(2..=3);
        let space = random_space(&mut r, n);
        let f = ordunit_core::vector::RealFunctional::new(random_vector(&mut r, n, 4));
        let declared = order::is_positive_functional(&space, &f).unwrap();
        let mut sampled_min = Rational::zero();
        for _ in 0..60 {
            let p = random_cone_member(&mut r, &space, 3);
            let val = f.eval(&p).unwrap().to_rational().unwrap();
            if val < sampled_min {
                sampled_min = val;
            }
        }
        if !declared {
            // a negative value must eventually show on the generators
            let on_gens = space.cone_generators().unwrap().iter().any(|g| {
                f.eval(g).unwrap().to_rational().unwrap().is_negative()
            });
            assert!(on_gens);
        } else {
            assert!(!sampled_min.is_negative());
        }
    }
}

#[test]
fn standard_form_solver_agrees_with_free_form_solver() {
    let mut r = rng(211);
    for _ in 0..60 {
        let cols = r.gen_range(2..=5);
        let rows = r.gen_range(1..=2.min(cols));
        let objective: Vec<Rational> = (0..cols).map(|_| rat(r.gen_range(0..=4))).collect();
        let data: Vec<(Vec<Rational>, Rational)> = (0..rows)
            .map(|_| {
                (
                    (0..cols).map(|_| rat(r.gen_range(0..=3))).collect(),
                    rat(r.gen_range(0..=5)),
                )
            })
            .collect();
        let std_lp = StandardLp {
            cols,
            objective: objective.clone(),
            rows: data.clone(),
        };
        // same program with explicit nonnegativity rows
        let mut free = LinearProgram::new(cols, objective, false).unwrap();
        for (coeffs, rhs) in &data {
            free.push_eq(Row::new(coeffs.clone(), rhs.clone())).unwrap();
        }
        for j in 0..cols {
            let mut row = vec![Rational::zero(); cols];
            row[j] = Rational::one();
            free.push_ineq(Row::homogeneous(row)).unwrap();
        }
        let a = lp::solve_standard(&std_lp).unwrap();
        let b = lp::solve(&free).unwrap();
        match (a, b) {
            (StandardResult::Optimal { value: va, .. }, LpResult::Optimal { value: vb, .. }) => {
                assert_eq!(va, vb)
            }
            (StandardResult::Infeasible, LpResult::Infeasible { .. }) => {}
            (StandardResult::Unbounded, LpResult::Unbounded { .. }) => {}
            (a, b) => panic!("solver disagreement: {a:?} vs {b:?}"),
        }
    }
}

#[test]
fn lp_certificates_survive_degenerate_and_redundant_systems() {
    // random programs with duplicated rows, zero rows and mixed outcomes:
    // every outcome must carry a certificate that checks out exactly
    let mut r = rng(213);
    let mut optimal = 0;
    let mut infeasible = 0;
    let mut unbounded = 0;
    for case in 0..150 {
        let n = r.gen_range(1..=4);
        let mut prog = LinearProgram::new(
            n,
            (0..n).map(|_| rat(r.gen_range(-3..=3))).collect(),
            r.gen_bool(0.5),
        )
        .unwrap();
        for _ in 0..r.gen_range(1..=5) {
            let coeffs: Vec<Rational> = (0..n).map(|_| rat(r.gen_range(-2..=2))).collect();
            let rhs = rat(r.gen_range(-3..=3));
            let row = Row::new(coeffs, rhs);
            if r.gen_bool(0.3) {
                prog.push_eq(row.clone()).unwrap();
            } else {
                prog.push_ineq(row.clone()).unwrap();
            }
            // duplicate some rows to force degeneracy
            if r.gen_bool(0.3) {
                prog.push_ineq(row).unwrap();
            }
        }
        match lp::solve(&prog).unwrap_or_else(|e| panic!("case {case}: {e}")) {
            res @ LpResult::Optimal { .. } => {
                lp::verify_optimal(&prog, &res).unwrap();
                optimal += 1;
            }
            LpResult::Infeasible { farkas } => {
                lp::verify_infeasible(&prog, &farkas).unwrap();
                infeasible += 1;
            }
            LpResult::Unbounded { witness, ray } => {
                assert!(prog.is_feasible_point(&witness).unwrap());
                // the ray must stay feasible and improve the objective
                let shifted: Vec<Rational> = witness
                    .iter()
                    .zip(&ray)
                    .map(|(w, d)| w + d * rat(1000))
                    .collect();
                assert!(prog.is_feasible_point(&shifted).unwrap());
                let gain = ordunit_core::linalg::dot(&prog.objective, &ray);
                if prog.maximize {
                    assert!(gain.is_positive());
                } else {
                    assert!(gain.is_negative());
                }
                unbounded += 1;
            }
        }
    }
    // the mix must actually exercise all three outcomes
    assert!(optimal > 10 && infeasible > 10 && unbounded > 10,
        "outcome mix too thin: {optimal}/{infeasible}/{unbounded}");
}

#[test]
fn numerical_radius_bracket_contains_rayleigh_samples() {
    // oracle: |<Xh, h>| for random unit vectors never exceeds the bracket
    let mut r = rng(212);
    let x = psd::coords_to_matrix(2, &[0.3, -0.7, 0.4, 0.1]).unwrap();
    let y = psd::coords_to_matrix(2, &[0.0, 0.2, -0.5, 0.6]).unwrap();
    let (lo, hi) = psd::numerical_radius(&x, &y, 1e-6, 2_000_000).unwrap();
    assert!(lo <= hi && hi - lo <= 1e-6);
    let z = psd::element_matrix(&x, &y);
    for _ in 0..500 {
        // random complex unit vector h
        let mut h: Vec<(f64, f64)> = (0..2)
            .map(|_| (r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
            .collect();
        let norm: f64 = Float::sqrt(h.iter().map(|(a, b)| a * a + b * b).sum::<f64>());
        if norm < 1e-6 {
            continue;
        }
        for t in h.iter_mut() {
            t.0 /= norm;
            t.1 /= norm;
        }
        // <Zh, h> = sum_ij conj(h_i) Z_ij h_j
        let mut re = 0.0;
        let mut im = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let (zr, zi) = (z.re[i][j], z.im[i][j]);
                let (hr, hi_) = h[j];
                let (gr, gi) = h[i];
                // conj(g) * z * h
                let pr = zr * hr - zi * hi_;
                let pi = zr * hi_ + zi * hr;
                re += gr * pr + gi * pi;
                im += gr * pi - gi * pr;
            }
        }
        let rayleigh = Float::sqrt(re * re + im * im);
        assert!(rayleigh <= hi + 1e-9, "rayleigh {rayleigh} above bracket {hi}");
    }
}
