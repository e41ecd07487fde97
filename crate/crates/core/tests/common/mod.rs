//! Shared generators for the randomized suites: valid ordered spaces with
//! exactly known structure, and random elements over them.

use ordunit_core::cone::ConeSpec;
use ordunit_core::linalg::Matrix;
use ordunit_core::scalar::{rat, Rational};
use ordunit_core::vector::{ComplexElement, RealVector};
use ordunit_core::OrderedSpace;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn random_invertible(rng: &mut StdRng, n: usize) -> Matrix {
    loop {
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..n).map(|_| rat(rng.gen_range(-3..=3))).collect())
            .collect();
        let m = Matrix::from_rows(rows).unwrap();
        if m.rank() == n {
            return m;
        }
    }
}

/// Simplicial cone: generators are the columns of a random invertible
/// integer matrix, unit is their sum (interior, hence an order unit).
pub fn random_vrep_space(rng: &mut StdRng, n: usize) -> OrderedSpace {
    let a = random_invertible(rng, n);
    let gens: Vec<RealVector> = (0..n)
        .map(|j| RealVector::from_rationals((0..n).map(|i| a[(i, j)].clone()).collect()))
        .collect();
    let unit = RealVector::from_rationals(
        (0..n)
            .map(|i| (0..n).map(|j| a[(i, j)].clone()).sum())
            .collect(),
    );
    OrderedSpace::new(ConeSpec::polyhedral_v(gens).unwrap(), unit).unwrap()
}

/// Simplicial cone in H-representation: rows of a random invertible matrix,
/// unit solving A e = 1 (so every row sees the unit strictly inside).
pub fn random_hrep_space(rng: &mut StdRng, n: usize) -> OrderedSpace {
    let a = random_invertible(rng, n);
    let ones = vec![Rational::from_integer(1.into()); n];
    let e = a.solve(&ones).unwrap().unwrap();
    let rows = (0..n)
        .map(|i| ordunit_core::cone::HalfSpace {
            normal: RealVector::from_rationals(a.row(i).to_vec()),
            strict: false,
        })
        .collect();
    OrderedSpace::new(
        ConeSpec::polyhedral_h(rows, false).unwrap(),
        RealVector::from_rationals(e),
    )
    .unwrap()
}

/// Alternate between the two representations.
pub fn random_space(rng: &mut StdRng, n: usize) -> OrderedSpace {
    if rng.gen_bool(0.5) {
        random_vrep_space(rng, n)
    } else {
        random_hrep_space(rng, n)
    }
}

pub fn random_vector(rng: &mut StdRng, n: usize, bound: i64) -> RealVector {
    RealVector::from_ints(
        &(0..n)
            .map(|_| rng.gen_range(-bound..=bound))
            .collect::<Vec<_>>(),
    )
}

pub fn random_element(rng: &mut StdRng, n: usize, bound: i64) -> ComplexElement {
    ComplexElement::new(random_vector(rng, n, bound), random_vector(rng, n, bound)).unwrap()
}

/// Random conic combination of the cone generators (a known member).
pub fn random_cone_member(rng: &mut StdRng, space: &OrderedSpace, terms: i64) -> RealVector {
    let gens = space.cone_generators().unwrap();
    let mut acc = RealVector::zeros(space.n);
    for g in &gens {
        let w = ordunit_core::Scalar::from_int(rng.gen_range(0..=terms));
        acc = acc.add(&g.scale(&w)).unwrap();
    }
    acc
}
