//! Exact rational linear programming: two-phase primal simplex with Bland's
//! rule, duality certificates, polytope vertex enumeration and a scalar
//! bisection utility for membership-oracle infima.
//!
//! Variables are free; constraints are `a.x = b` or `a.x >= b`. Every Optimal
//! answer carries a primal witness and a dual vector certifying the value;
//! Infeasible and Unbounded answers carry Farkas-type certificates. All
//! results are reproducible bit-for-bit (deterministic pivoting).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{dot, independent_subset, Matrix};
use crate::scalar::Rational;

/// Iterations of most-negative-cost pricing before falling back to Bland's
/// rule (which cannot cycle).
const DANTZIG_BUDGET: usize = 2000;

/// `a.x = b` or `a.x >= b` row.
#[derive(Debug, Clone)]
pub struct Row {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl Row {
    pub fn new(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Row { coeffs, rhs }
    }

    /// Homogeneous row `a.x >= 0` / `a.x = 0`.
    pub fn homogeneous(coeffs: Vec<Rational>) -> Self {
        Row {
            coeffs,
            rhs: Rational::zero(),
        }
    }
}

/// A linear program over free variables, exact mode throughout.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub n: usize,
    pub objective: Vec<Rational>,
    pub maximize: bool,
    pub eq_rows: Vec<Row>,
    pub ineq_rows: Vec<Row>,
}

impl LinearProgram {
    pub fn new(n: usize, objective: Vec<Rational>, maximize: bool) -> Result<Self> {
        Error::check_dim(n, objective.len())?;
        Ok(LinearProgram {
            n,
            objective,
            maximize,
            eq_rows: Vec::new(),
            ineq_rows: Vec::new(),
        })
    }

    pub fn push_eq(&mut self, row: Row) -> Result<()> {
        Error::check_dim(self.n, row.coeffs.len())?;
        self.eq_rows.push(row);
        Ok(())
    }

    pub fn push_ineq(&mut self, row: Row) -> Result<()> {
        Error::check_dim(self.n, row.coeffs.len())?;
        self.ineq_rows.push(row);
        Ok(())
    }

    fn rows(&self) -> usize {
        self.eq_rows.len() + self.ineq_rows.len()
    }

    pub fn is_feasible_point(&self, x: &[Rational]) -> Result<bool> {
        Error::check_dim(self.n, x.len())?;
        for r in &self.eq_rows {
            if dot(&r.coeffs, x) != r.rhs {
                return Ok(false);
            }
        }
        for r in &self.ineq_rows {
            if dot(&r.coeffs, x) < r.rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Outcome of `solve`.
#[derive(Debug, Clone)]
pub enum LpResult {
    /// Certified optimum: `witness` is feasible, `dual` proves the bound.
    Optimal {
        value: Rational,
        witness: Vec<Rational>,
        /// One multiplier per row (eq rows first, then ineq rows) with
        /// `sum_i dual_i * a_i = c`; signs as checked by [`verify_optimal`].
        dual: Vec<Rational>,
    },
    /// No feasible point; `farkas` combines the rows into a contradiction.
    Infeasible { farkas: Vec<Rational> },
    /// Feasible but unbounded along `ray` from `witness`.
    Unbounded {
        witness: Vec<Rational>,
        ray: Vec<Rational>,
    },
}

impl LpResult {
    pub fn optimal(&self) -> Result<(&Rational, &Vec<Rational>)> {
        match self {
            LpResult::Optimal { value, witness, .. } => Ok((value, witness)),
            LpResult::Infeasible { .. } => Err(Error::internal("expected Optimal, got Infeasible")),
            LpResult::Unbounded { .. } => Err(Error::internal("expected Optimal, got Unbounded")),
        }
    }
}

/// Check an Optimal answer against the program: primal feasibility, dual
/// feasibility and exact strong duality.
pub fn verify_optimal(lp: &LinearProgram, res: &LpResult) -> Result<()> {
    let LpResult::Optimal {
        value,
        witness,
        dual,
    } = res
    else {
        return Err(Error::internal("verify_optimal on non-optimal result"));
    };
    if !lp.is_feasible_point(witness)? {
        return Err(Error::internal("optimal witness infeasible"));
    }
    if dot(&lp.objective, witness) != *value {
        return Err(Error::internal("optimal witness value mismatch"));
    }
    Error::check_dim(lp.rows(), dual.len())?;
    // sum_i dual_i a_i = c, dual signs <= 0 (max) / >= 0 (min) on ineq rows,
    // and sum_i dual_i b_i = value.
    let mut combo = vec![Rational::zero(); lp.n];
    let mut bound = Rational::zero();
    for (i, row) in lp.eq_rows.iter().chain(&lp.ineq_rows).enumerate() {
        for j in 0..lp.n {
            combo[j] += &dual[i] * &row.coeffs[j];
        }
        bound += &dual[i] * &row.rhs;
        if i >= lp.eq_rows.len() {
            let ok = if lp.maximize {
                !dual[i].is_positive()
            } else {
                !dual[i].is_negative()
            };
            if !ok {
                return Err(Error::internal("dual sign violation"));
            }
        }
    }
    if combo != lp.objective {
        return Err(Error::internal("dual combination does not match objective"));
    }
    if bound != *value {
        return Err(Error::internal("strong duality gap"));
    }
    Ok(())
}

/// Check a Farkas infeasibility certificate.
pub fn verify_infeasible(lp: &LinearProgram, farkas: &[Rational]) -> Result<()> {
    Error::check_dim(lp.rows(), farkas.len())?;
    let mut combo = vec![Rational::zero(); lp.n];
    let mut rhs = Rational::zero();
    for (i, row) in lp.eq_rows.iter().chain(&lp.ineq_rows).enumerate() {
        if i >= lp.eq_rows.len() && farkas[i].is_negative() {
            return Err(Error::internal("farkas multiplier sign violation"));
        }
        for j in 0..lp.n {
            combo[j] += &farkas[i] * &row.coeffs[j];
        }
        rhs += &farkas[i] * &row.rhs;
    }
    if combo.iter().any(|c| !c.is_zero()) || !rhs.is_positive() {
        return Err(Error::internal("farkas certificate invalid"));
    }
    Ok(())
}

/// Solve the program with the exact two-phase simplex.
pub fn solve(lp: &LinearProgram) -> Result<LpResult> {
    for row in lp.eq_rows.iter().chain(&lp.ineq_rows) {
        Error::check_dim(lp.n, row.coeffs.len())?;
    }
    let mut t = Tableau::build(lp);
    let res = t.run(lp)?;
    if let LpResult::Optimal { .. } = &res {
        verify_optimal(lp, &res)?;
    }
    Ok(res)
}

// ---------------------------------------------------------------------------
// internal tableau
// ---------------------------------------------------------------------------

/// Standard-form tableau. Columns: x+ (n), x- (n), surplus (one per ineq),
/// artificial (one per row). Row signs are flipped so the RHS is nonnegative.
struct Tableau {
    n: usize,
    m: usize,
    cols: usize,
    art0: usize, // first artificial column
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    basis: Vec<usize>,
    sign: Vec<Rational>, // per original row: +1 or -1
    cost: Vec<Rational>, // reduced cost row
    obj: Rational,       // current objective value (of the internal min problem)
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let m = lp.rows();
        let art0 = 2 * lp.n + lp.ineq_rows.len();
        let cols = art0 + m;
        let mut a = vec![vec![Rational::zero(); cols]; m];
        let mut b = vec![Rational::zero(); m];
        let mut sign = vec![Rational::one(); m];
        for (i, row) in lp.eq_rows.iter().chain(&lp.ineq_rows).enumerate() {
            let s = if row.rhs.is_negative() {
                -Rational::one()
            } else {
                Rational::one()
            };
            for j in 0..lp.n {
                a[i][j] = &s * &row.coeffs[j];
                a[i][lp.n + j] = -&a[i][j];
            }
            if i >= lp.eq_rows.len() {
                a[i][2 * lp.n + (i - lp.eq_rows.len())] = -&s;
            }
            a[i][art0 + i] = Rational::one();
            b[i] = &s * &row.rhs;
            sign[i] = s;
        }
        let basis = (art0..cols).collect();
        Tableau {
            n: lp.n,
            m,
            cols,
            art0,
            a,
            b,
            basis,
            sign,
            cost: Vec::new(),
            obj: Rational::zero(),
        }
    }

    /// Reduced costs `c_j - c_B . T_j` for a cost vector over all columns.
    fn load_costs(&mut self, c: &[Rational]) {
        let mut cost = c.to_vec();
        let mut obj = Rational::zero();
        for i in 0..self.m {
            let cb = &c[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                if !self.a[i][j].is_zero() {
                    let v = &cost[j] - &(cb * &self.a[i][j]);
                    cost[j] = v;
                }
            }
            obj += cb * &self.b[i];
        }
        self.cost = cost;
        self.obj = obj;
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.a[row][col].clone();
        let inv = p.recip();
        for j in 0..self.cols {
            if !self.a[row][j].is_zero() {
                let v = &self.a[row][j] * &inv;
                self.a[row][j] = v;
            }
        }
        let v = &self.b[row] * &inv;
        self.b[row] = v;
        for i in 0..self.m {
            if i != row && !self.a[i][col].is_zero() {
                let f = self.a[i][col].clone();
                for j in 0..self.cols {
                    if !self.a[row][j].is_zero() {
                        let v = &self.a[i][j] - &(&f * &self.a[row][j]);
                        self.a[i][j] = v;
                    }
                }
                let v = &self.b[i] - &(&f * &self.b[row]);
                self.b[i] = v;
            }
        }
        if !self.cost[col].is_zero() {
            let f = self.cost[col].clone();
            for j in 0..self.cols {
                if !self.a[row][j].is_zero() {
                    let v = &self.cost[j] - &(&f * &self.a[row][j]);
                    self.cost[j] = v;
                }
            }
            self.obj += &f * &self.b[row];
        }
        self.basis[row] = col;
    }

    /// Simplex iteration on the current cost row; `allowed` filters the
    /// entering candidates. Dantzig pricing at first, switching to Bland's
    /// rule after a fixed budget so cycling cannot occur. Returns the
    /// unbounded entering column, if any.
    fn iterate(&mut self, allowed: impl Fn(usize) -> bool) -> Option<usize> {
        let mut iters = 0usize;
        loop {
            iters += 1;
            let col = if iters <= DANTZIG_BUDGET {
                let mut best: Option<(usize, &Rational)> = None;
                for j in 0..self.cols {
                    if allowed(j) && self.cost[j].is_negative() && !self.basis.contains(&j) {
                        if best.map_or(true, |(_, c)| self.cost[j] < *c) {
                            best = Some((j, &self.cost[j]));
                        }
                    }
                }
                best.map(|(j, _)| j)
            } else {
                (0..self.cols)
                    .find(|&j| allowed(j) && !self.basis.contains(&j) && self.cost[j].is_negative())
            };
            let Some(col) = col else {
                return None;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.m {
                if self.a[i][col].is_positive() {
                    let ratio = &self.b[i] / &self.a[i][col];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, col),
                None => return Some(col),
            }
        }
    }

    fn run(&mut self, lp: &LinearProgram) -> Result<LpResult> {
        // Phase 1: minimize the sum of artificials.
        let mut c1 = vec![Rational::zero(); self.cols];
        for j in self.art0..self.cols {
            c1[j] = Rational::one();
        }
        self.load_costs(&c1);
        if self.iterate(|_| true).is_some() {
            return Err(Error::internal("phase-1 objective unbounded"));
        }
        if self.obj.is_positive() {
            // Farkas: y_i = sign_i * (phase-1 dual)_i, read from the
            // artificial columns, scaled so the combination is exact.
            let farkas: Vec<Rational> = (0..self.m)
                .map(|i| {
                    let y = Rational::one() - &self.cost[self.art0 + i];
                    &self.sign[i] * &y
                })
                .collect();
            verify_infeasible(lp, &farkas)?;
            return Ok(LpResult::Infeasible { farkas });
        }
        self.evict_artificials();

        // Phase 2: original objective (internally always minimized).
        let mut c2 = vec![Rational::zero(); self.cols];
        for j in 0..self.n {
            c2[j] = if lp.maximize {
                -lp.objective[j].clone()
            } else {
                lp.objective[j].clone()
            };
            c2[self.n + j] = -&c2[j];
        }
        let art0 = self.art0;
        self.load_costs(&c2);
        if let Some(col) = self.iterate(|j| j < art0) {
            let witness = self.extract_x();
            let ray = self.extract_ray(col);
            return Ok(LpResult::Unbounded { witness, ray });
        }
        let witness = self.extract_x();
        let value = if lp.maximize { -&self.obj } else { self.obj.clone() };
        // Duals off the artificial columns: reduced cost there is -c_B B^-1 e_i.
        let dual: Vec<Rational> = (0..self.m)
            .map(|i| {
                let y = -&self.cost[self.art0 + i];
                let y = &self.sign[i] * &y;
                if lp.maximize {
                    -y
                } else {
                    y
                }
            })
            .collect();
        Ok(LpResult::Optimal {
            value,
            witness,
            dual,
        })
    }

    /// Pivot basic artificials out (or detect redundant rows and leave the
    /// zero-valued artificial parked; it never re-enters pricing).
    fn evict_artificials(&mut self) {
        for i in 0..self.m {
            if self.basis[i] >= self.art0 {
                if let Some(col) = (0..self.art0).find(|&j| !self.a[i][j].is_zero()) {
                    // cost row not loaded yet in this window; pivot directly
                    let saved = core::mem::take(&mut self.cost);
                    self.cost = vec![Rational::zero(); self.cols];
                    self.pivot(i, col);
                    self.cost = saved;
                }
            }
        }
    }

    fn extract_x(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.n];
        for i in 0..self.m {
            let j = self.basis[i];
            if j < self.n {
                x[j] += &self.b[i];
            } else if j < 2 * self.n {
                x[j - self.n] -= &self.b[i];
            }
        }
        x
    }

    fn extract_ray(&self, col: usize) -> Vec<Rational> {
        let mut z = vec![Rational::zero(); self.cols];
        z[col] = Rational::one();
        for i in 0..self.m {
            z[self.basis[i]] = -&self.a[i][col];
        }
        let mut d = vec![Rational::zero(); self.n];
        for j in 0..self.n {
            d[j] = &z[j] - &z[self.n + j];
        }
        d
    }
}

// ---------------------------------------------------------------------------
// standard form
// ---------------------------------------------------------------------------

/// `min c.x  s.t.  A x = b, x >= 0`, for the column-heavy norm programs.
/// Nonnegativity is implicit, so the tableau has only `rows` rows.
#[derive(Debug, Clone)]
pub struct StandardLp {
    pub cols: usize,
    pub objective: Vec<Rational>,
    /// (row coefficients, rhs) of each equality.
    pub rows: Vec<(Vec<Rational>, Rational)>,
}

#[derive(Debug, Clone)]
pub enum StandardResult {
    Optimal {
        value: Rational,
        /// Primal witness (sparse: at most `rows` nonzeros).
        x: Vec<Rational>,
        /// Row duals with `y.A_j <= c_j` for every column j and `y.b = value`.
        y: Vec<Rational>,
    },
    Infeasible,
    Unbounded,
}

/// Two-phase simplex with Bland's rule on the standard form.
pub fn solve_standard(lp: &StandardLp) -> Result<StandardResult> {
    let m = lp.rows.len();
    let n = lp.cols;
    Error::check_dim(n, lp.objective.len())?;
    for (coeffs, _) in &lp.rows {
        Error::check_dim(n, coeffs.len())?;
    }
    let cols = n + m;
    let mut a = vec![vec![Rational::zero(); cols]; m];
    let mut b = vec![Rational::zero(); m];
    let mut sign = vec![Rational::one(); m];
    for (i, (coeffs, rhs)) in lp.rows.iter().enumerate() {
        let s = if rhs.is_negative() {
            -Rational::one()
        } else {
            Rational::one()
        };
        for j in 0..n {
            a[i][j] = &s * &coeffs[j];
        }
        a[i][n + i] = Rational::one();
        b[i] = &s * rhs;
        sign[i] = s;
    }
    let basis: Vec<usize> = (n..cols).collect();
    let mut t = StdTableau {
        n,
        m,
        cols,
        a,
        b,
        basis,
        cost: Vec::new(),
        obj: Rational::zero(),
    };
    // phase 1
    let mut c1 = vec![Rational::zero(); cols];
    for j in n..cols {
        c1[j] = Rational::one();
    }
    t.load_costs(&c1);
    if t.iterate(|j| j < n).is_some() {
        return Err(Error::internal("standard phase-1 unbounded"));
    }
    if t.obj.is_positive() {
        return Ok(StandardResult::Infeasible);
    }
    t.evict_artificials();
    // phase 2
    let mut c2 = vec![Rational::zero(); cols];
    c2[..n].clone_from_slice(&lp.objective);
    t.load_costs(&c2);
    if t.iterate(|j| j < n).is_some() {
        return Ok(StandardResult::Unbounded);
    }
    let mut x = vec![Rational::zero(); n];
    for i in 0..m {
        if t.basis[i] < n {
            x[t.basis[i]] += &t.b[i];
        }
    }
    let y: Vec<Rational> = (0..m)
        .map(|i| {
            let yi = -&t.cost[n + i];
            &sign[i] * &yi
        })
        .collect();
    // exactness guard: dual feasibility and strong duality
    let mut yb = Rational::zero();
    for (i, (_, rhs)) in lp.rows.iter().enumerate() {
        yb += &y[i] * rhs;
    }
    if yb != t.obj {
        return Err(Error::internal("standard-form duality gap"));
    }
    for j in 0..n {
        let mut ya = Rational::zero();
        for (i, (coeffs, _)) in lp.rows.iter().enumerate() {
            if !coeffs[j].is_zero() {
                ya += &y[i] * &coeffs[j];
            }
        }
        if ya > lp.objective[j] {
            return Err(Error::internal("standard-form dual infeasibility"));
        }
    }
    Ok(StandardResult::Optimal {
        value: t.obj.clone(),
        x,
        y,
    })
}

struct StdTableau {
    n: usize,
    m: usize,
    cols: usize,
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    basis: Vec<usize>,
    cost: Vec<Rational>,
    obj: Rational,
}

impl StdTableau {
    fn load_costs(&mut self, c: &[Rational]) {
        let mut cost = c.to_vec();
        let mut obj = Rational::zero();
        for i in 0..self.m {
            let cb = &c[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                if !self.a[i][j].is_zero() {
                    let v = &cost[j] - &(cb * &self.a[i][j]);
                    cost[j] = v;
                }
            }
            obj += cb * &self.b[i];
        }
        self.cost = cost;
        self.obj = obj;
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.a[row][col].recip();
        for j in 0..self.cols {
            if !self.a[row][j].is_zero() {
                let v = &self.a[row][j] * &inv;
                self.a[row][j] = v;
            }
        }
        let v = &self.b[row] * &inv;
        self.b[row] = v;
        for i in 0..self.m {
            if i != row && !self.a[i][col].is_zero() {
                let f = self.a[i][col].clone();
                for j in 0..self.cols {
                    if !self.a[row][j].is_zero() {
                        let v = &self.a[i][j] - &(&f * &self.a[row][j]);
                        self.a[i][j] = v;
                    }
                }
                let v = &self.b[i] - &(&f * &self.b[row]);
                self.b[i] = v;
            }
        }
        if !self.cost[col].is_zero() {
            let f = self.cost[col].clone();
            for j in 0..self.cols {
                if !self.a[row][j].is_zero() {
                    let v = &self.cost[j] - &(&f * &self.a[row][j]);
                    self.cost[j] = v;
                }
            }
            self.obj += &f * &self.b[row];
        }
        self.basis[row] = col;
    }

    fn iterate(&mut self, allowed: impl Fn(usize) -> bool) -> Option<usize> {
        let mut iters = 0usize;
        loop {
            iters += 1;
            let col = if iters <= DANTZIG_BUDGET {
                let mut best: Option<(usize, &Rational)> = None;
                for j in 0..self.cols {
                    if allowed(j) && self.cost[j].is_negative() && !self.basis.contains(&j) {
                        if best.map_or(true, |(_, c)| self.cost[j] < *c) {
                            best = Some((j, &self.cost[j]));
                        }
                    }
                }
                best.map(|(j, _)| j)
            } else {
                (0..self.cols)
                    .find(|&j| allowed(j) && !self.basis.contains(&j) && self.cost[j].is_negative())
            };
            let Some(col) = col else {
                return None;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.m {
                if self.a[i][col].is_positive() {
                    let ratio = &self.b[i] / &self.a[i][col];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, col),
                None => return Some(col),
            }
        }
    }

    fn evict_artificials(&mut self) {
        for i in 0..self.m {
            if self.basis[i] >= self.n {
                if let Some(col) = (0..self.n).find(|&j| !self.a[i][j].is_zero()) {
                    let saved = core::mem::take(&mut self.cost);
                    self.cost = vec![Rational::zero(); self.cols];
                    self.pivot(i, col);
                    self.cost = saved;
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// vertex enumeration
// ---------------------------------------------------------------------------

/// Inequality/equality description of a polytope.
#[derive(Debug, Clone, Default)]
pub struct Polytope {
    pub ineqs: Vec<Row>, // a.x >= b
    pub eqs: Vec<Row>,   // a.x = b
}

pub const MAX_ENUM_DIM: usize = 8;
const MAX_ENUM_SUBSETS: u64 = 3_000_000;

impl Polytope {
    pub fn dim(&self) -> usize {
        self.ineqs
            .first()
            .or(self.eqs.first())
            .map_or(0, |r| r.coeffs.len())
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.eqs.iter().all(|r| dot(&r.coeffs, x) == r.rhs)
            && self.ineqs.iter().all(|r| dot(&r.coeffs, x) >= r.rhs)
    }
}

/// Complete list of extreme points, deduplicated exactly.
///
/// Errors with a ray certificate on unbounded input, a capability error above
/// the enumeration caps.
pub fn vertices(p: &Polytope) -> Result<Vec<Vec<Rational>>> {
    let n = p.dim();
    if n == 0 || n > MAX_ENUM_DIM {
        return Err(Error::capability(format!(
            "vertex enumeration supports dimensions 1..={MAX_ENUM_DIM}, got {n}"
        )));
    }
    if let Some(ray) = recession_ray(p)? {
        return Err(Error::precondition(format!(
            "polytope is unbounded along ray {ray:?}"
        )));
    }
    let eq_basis = independent_subset(
        &p.eqs.iter().map(|r| r.coeffs.clone()).collect::<Vec<_>>(),
    )?;
    let r = eq_basis.len();
    if r > n {
        return Ok(Vec::new());
    }
    let take = n - r;
    let m = p.ineqs.len();
    if take > m && take > 0 {
        return Ok(Vec::new());
    }
    guard_subsets(m as u64, take as u64)?;

    let mut found: Vec<Vec<Rational>> = Vec::new();
    let mut stack_rows: Vec<Vec<Rational>> = eq_basis.clone();
    let mut rhs: Vec<Rational> = {
        // rhs for the independent equality subset, re-derived by matching rows
        let mut v = Vec::new();
        for eb in &eq_basis {
            let src = p
                .eqs
                .iter()
                .find(|r| &r.coeffs == eb)
                .ok_or_else(|| Error::internal("equality basis row lost"))?;
            v.push(src.rhs.clone());
        }
        v
    };
    let base_len = stack_rows.len();
    let mut subset = vec![0usize; take];
    enumerate_subsets(m, take, &mut subset, &mut |chosen| {
        stack_rows.truncate(base_len);
        rhs.truncate(base_len);
        for &k in chosen {
            stack_rows.push(p.ineqs[k].coeffs.clone());
            rhs.push(p.ineqs[k].rhs.clone());
        }
        let mat = Matrix::from_rows(stack_rows.clone())?;
        if mat.rank() != n {
            return Ok(());
        }
        if let Some(x) = mat.solve(&rhs)? {
            if p.contains(&x) && !found.contains(&x) {
                found.push(x);
            }
        }
        Ok(())
    })?;
    found.sort();
    Ok(found)
}

/// A nonzero recession direction of the polytope, if one exists.
pub fn recession_ray(p: &Polytope) -> Result<Option<Vec<Rational>>> {
    let n = p.dim();
    for i in 0..n {
        for sgn in [Rational::one(), -Rational::one()] {
            let mut obj = vec![Rational::zero(); n];
            obj[i] = sgn.clone();
            let mut lp = LinearProgram::new(n, obj.clone(), true)?;
            for r in &p.eqs {
                lp.push_eq(Row::homogeneous(r.coeffs.clone()))?;
            }
            for r in &p.ineqs {
                lp.push_ineq(Row::homogeneous(r.coeffs.clone()))?;
            }
            // cap the coordinate so the cone question becomes an LP question
            let mut cap = vec![Rational::zero(); n];
            cap[i] = -sgn.clone();
            lp.push_ineq(Row::new(cap, -Rational::one()))?;
            match solve(&lp)? {
                LpResult::Optimal { value, witness, .. } => {
                    if value.is_positive() {
                        return Ok(Some(witness));
                    }
                }
                LpResult::Unbounded { ray, .. } => return Ok(Some(ray)),
                LpResult::Infeasible { .. } => {
                    return Err(Error::internal("recession cone LP infeasible"))
                }
            }
        }
    }
    Ok(None)
}

fn guard_subsets(m: u64, k: u64) -> Result<()> {
    let mut total: u64 = 1;
    for i in 0..k {
        total = total.saturating_mul(m - i) / (i + 1);
        if total > MAX_ENUM_SUBSETS {
            return Err(Error::capability(format!(
                "enumeration over {m} choose {k} subsets exceeds the cap"
            )));
        }
    }
    Ok(())
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
// bisection
// ---------------------------------------------------------------------------

/// Infimum of `{ r : pred(r) }` for a monotone predicate (false below the
/// threshold, true above). Approx mode only; exact paths use the LP solver.
pub fn infimum_by_bisection(
    mut pred: impl FnMut(f64) -> bool,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<f64> {
    if !(lo < hi) || !tol.is_finite() || tol <= 0.0 {
        return Err(Error::precondition("bisection needs lo < hi and tol > 0"));
    }
    if !pred(hi) {
        return Err(Error::precondition(
            "bisection bracket invalid: pred(hi) is false",
        ));
    }
    let (mut lo, mut hi) = (lo, hi);
    if pred(lo) {
        return Ok(lo);
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn rv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn simple_bounded_max() {
        // max x s.t. x <= 1, x >= 0
        let mut lp = LinearProgram::new(1, rv(&[1]), true).unwrap();
        lp.push_ineq(Row::new(rv(&[-1]), rat(-1))).unwrap();
        lp.push_ineq(Row::new(rv(&[1]), rat(0))).unwrap();
        let res = solve(&lp).unwrap();
        let (value, witness) = res.optimal().unwrap();
        assert_eq!(*value, rat(1));
        assert_eq!(witness, &rv(&[1]));
        verify_optimal(&lp, &res).unwrap();
    }

    #[test]
    fn equality_simplex() {
        // max x+y s.t. x+y = 1, x >= 0, y >= 0
        let mut lp = LinearProgram::new(2, rv(&[1, 1]), true).unwrap();
        lp.push_eq(Row::new(rv(&[1, 1]), rat(1))).unwrap();
        lp.push_ineq(Row::new(rv(&[1, 0]), rat(0))).unwrap();
        lp.push_ineq(Row::new(rv(&[0, 1]), rat(0))).unwrap();
        let (value, _) = solve(&lp).unwrap().optimal().map(|(v, w)| (v.clone(), w.clone())).unwrap();
        assert_eq!(value, rat(1));
    }

    #[test]
    fn infeasible_with_farkas() {
        // x >= 1 and -x >= 0
        let mut lp = LinearProgram::new(1, rv(&[0]), true).unwrap();
        lp.push_ineq(Row::new(rv(&[1]), rat(1))).unwrap();
        lp.push_ineq(Row::new(rv(&[-1]), rat(0))).unwrap();
        match solve(&lp).unwrap() {
            LpResult::Infeasible { farkas } => verify_infeasible(&lp, &farkas).unwrap(),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn unbounded_with_ray() {
        let mut lp = LinearProgram::new(2, rv(&[1, 0]), true).unwrap();
        lp.push_ineq(Row::new(rv(&[1, 0]), rat(0))).unwrap();
        match solve(&lp).unwrap() {
            LpResult::Unbounded { witness, ray } => {
                assert!(lp.is_feasible_point(&witness).unwrap());
                assert!(dot(&lp.objective, &ray).is_positive());
            }
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn simplex_vertices() {
        // {f >= 0, f1 + f2 = 1} -> {(1,0), (0,1)}
        let p = Polytope {
            ineqs: vec![
                Row::new(rv(&[1, 0]), rat(0)),
                Row::new(rv(&[0, 1]), rat(0)),
            ],
            eqs: vec![Row::new(rv(&[1, 1]), rat(1))],
        };
        let vs = vertices(&p).unwrap();
        assert_eq!(vs.len(), 2);
        assert!(vs.contains(&rv(&[0, 1])));
        assert!(vs.contains(&rv(&[1, 0])));
    }

    #[test]
    fn unit_box_vertices() {
        // {-e <= h <= e} with e = (1,1): four corners
        let p = Polytope {
            ineqs: vec![
                Row::new(rv(&[1, 0]), rat(-1)),
                Row::new(rv(&[0, 1]), rat(-1)),
                Row::new(rv(&[-1, 0]), rat(-1)),
                Row::new(rv(&[0, -1]), rat(-1)),
            ],
            eqs: vec![],
        };
        let vs = vertices(&p).unwrap();
        assert_eq!(vs.len(), 4);
        for v in &vs {
            assert!(v.iter().all(|c| c.abs() == rat(1).abs()));
        }
    }

    #[test]
    fn unbounded_polytope_rejected() {
        let p = Polytope {
            ineqs: vec![Row::new(rv(&[1, 0]), rat(0))],
            eqs: vec![],
        };
        assert!(vertices(&p).is_err());
    }

    #[test]
    fn standard_form_matches_free_form() {
        // min x1 + x2 s.t. x1 + 2 x2 = 3, x >= 0: optimum 3/2 at (0, 3/2)
        let lp = StandardLp {
            cols: 2,
            objective: rv(&[1, 1]),
            rows: vec![(rv(&[1, 2]), rat(3))],
        };
        match solve_standard(&lp).unwrap() {
            StandardResult::Optimal { value, x, y } => {
                assert_eq!(value, crate::scalar::ratio(3, 2));
                assert_eq!(x, vec![rat(0), crate::scalar::ratio(3, 2)]);
                // dual feasibility: y.A_j <= c_j
                assert!(&y[0] * &rat(1) <= rat(1));
                assert!(&y[0] * &rat(2) <= rat(1));
            }
            other => panic!("unexpected {other:?}"),
        }
        // infeasible: x1 + x2 = -1 with x >= 0
        let bad = StandardLp {
            cols: 2,
            objective: rv(&[0, 0]),
            rows: vec![(rv(&[1, 1]), rat(-1))],
        };
        assert!(matches!(
            solve_standard(&bad).unwrap(),
            StandardResult::Infeasible
        ));
    }

    #[test]
    fn bisection_threshold() {
        let r = infimum_by_bisection(|r| r >= 1.0, 0.0, 10.0, 1e-9).unwrap();
        assert!((r - 1.0).abs() <= 1e-8);
        assert!(infimum_by_bisection(|r| r >= 20.0, 0.0, 10.0, 1e-9).is_err());
    }

    #[test]
    fn random_lps_match_vertex_enumeration() {
        // deterministic LCG; feasible bounded LPs over a box
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as i64 % 7) - 3
        };
        for _ in 0..60 {
            let n = 2 + (next().unsigned_abs() as usize % 3); // 2..4
            let mut lp = LinearProgram::new(n, (0..n).map(|_| rat(next())).collect(), true).unwrap();
            let mut p = Polytope::default();
            // box [-2, 2]^n keeps it bounded
            for i in 0..n {
                let mut row = rv(&vec![0; n]);
                row[i] = rat(1);
                lp.push_ineq(Row::new(row.clone(), rat(-2))).unwrap();
                p.ineqs.push(Row::new(row, rat(-2)));
                let mut row = rv(&vec![0; n]);
                row[i] = rat(-1);
                lp.push_ineq(Row::new(row.clone(), rat(-2))).unwrap();
                p.ineqs.push(Row::new(row, rat(-2)));
            }
            for _ in 0..2 {
                let coeffs: Vec<Rational> = (0..n).map(|_| rat(next())).collect();
                let rhs = rat(next() - 4);
                lp.push_ineq(Row::new(coeffs.clone(), rhs.clone())).unwrap();
                p.ineqs.push(Row::new(coeffs, rhs));
            }
            let res = solve(&lp).unwrap();
            let LpResult::Optimal { value, .. } = &res else {
                panic!("expected optimal");
            };
            verify_optimal(&lp, &res).unwrap();
            let best = vertices(&p)
                .unwrap()
                .iter()
                .map(|v| dot(&lp.objective, v))
                .max()
                .unwrap();
            assert_eq!(*value, best);
        }
    }
}
