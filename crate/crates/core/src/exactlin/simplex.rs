//! Two-phase dense simplex over exact rationals with Bland's pivot rule.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{LinAlgError, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `maximize objective . x` subject to `constraints`, with per-variable sign
/// restrictions (`nonneg[j]` means `x_j >= 0`, otherwise `x_j` is free).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
    nonneg: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

impl LinearProgram {
    /// A program over `objective.len()` nonnegative variables with no constraints.
    pub fn maximize(objective: Vec<Rational>) -> Self {
        let n = objective.len();
        Self {
            objective,
            constraints: Vec::new(),
            nonneg: vec![true; n],
        }
    }

    pub fn with_free_variables(mut self, free: &[usize]) -> Self {
        for &j in free {
            self.nonneg[j] = false;
        }
        self
    }

    pub fn add_constraint(
        &mut self,
        coeffs: Vec<Rational>,
        relation: Relation,
        rhs: Rational,
    ) -> Result<(), LinAlgError> {
        if coeffs.len() != self.objective.len() {
            return Err(LinAlgError::ConstraintLength {
                expected: self.objective.len(),
                got: coeffs.len(),
            });
        }
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn nonneg(&self) -> &[bool] {
        &self.nonneg
    }

    /// Whether `x` satisfies every constraint and sign restriction exactly.
    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        if x.iter().zip(&self.nonneg).any(|(v, &nn)| nn && v.is_negative()) {
            return false;
        }
        self.constraints.iter().all(|c| {
            let lhs = dot(&c.coeffs, x);
            match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Ge => lhs >= c.rhs,
                Relation::Eq => lhs == c.rhs,
            }
        })
    }

    pub fn objective_at(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }

    /// Constraints in `<=` form with equalities split into two rows.
    fn normalized_le_rows(&self) -> Vec<(Vec<Rational>, Rational)> {
        let mut rows = Vec::new();
        for c in &self.constraints {
            let neg = || (c.coeffs.iter().map(|x| -x).collect::<Vec<_>>(), -&c.rhs);
            match c.relation {
                Relation::Le => rows.push((c.coeffs.clone(), c.rhs.clone())),
                Relation::Ge => rows.push(neg()),
                Relation::Eq => {
                    rows.push((c.coeffs.clone(), c.rhs.clone()));
                    rows.push(neg());
                }
            }
        }
        rows
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Dual of a maximization program over nonnegative variables.
///
/// With the primal normalized to `max c.x, Ax <= b, x >= 0` (a `>=` row is
/// negated, an equality becomes a `<=`/`>=` pair), the dual is
/// `min b.y, A^T y >= c, y >= 0`, returned as `max (-b).y` over the same
/// region. Its optimal value is therefore the negated primal optimum.
pub fn lp_dual(p: &LinearProgram) -> Result<LinearProgram, LinAlgError> {
    if p.nonneg.iter().any(|&nn| !nn) {
        return Err(LinAlgError::FreeVariableInDual);
    }
    let rows = p.normalized_le_rows();
    let mut dual = LinearProgram::maximize(rows.iter().map(|(_, b)| -b).collect());
    for j in 0..p.num_vars() {
        let coeffs = rows.iter().map(|(a, _)| a[j].clone()).collect();
        dual.add_constraint(coeffs, Relation::Ge, p.objective[j].clone())?;
    }
    Ok(dual)
}

/// Solves `p` exactly. Pivoting follows Bland's rule so the returned vertex is
/// deterministic.
pub fn lp_solve(p: &LinearProgram) -> LpOutcome {
    // Column layout: one column per nonnegative variable, two (x+, x-) per free one.
    let mut column_of = Vec::with_capacity(p.num_vars());
    let mut ncols = 0;
    for &nn in &p.nonneg {
        column_of.push(ncols);
        ncols += if nn { 1 } else { 2 };
    }
    let structural = ncols;

    // Equalities split; rows oriented so the right-hand side is nonnegative.
    let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::new();
    for c in &p.constraints {
        let mut expanded = vec![Rational::zero(); structural];
        for (j, a) in c.coeffs.iter().enumerate() {
            expanded[column_of[j]] = a.clone();
            if !p.nonneg[j] {
                expanded[column_of[j] + 1] = -a;
            }
        }
        let rels: &[Relation] = match c.relation {
            Relation::Eq => &[Relation::Le, Relation::Ge],
            Relation::Le => &[Relation::Le],
            Relation::Ge => &[Relation::Ge],
        };
        for &rel in rels {
            let (mut coeffs, mut rhs, mut rel) = (expanded.clone(), c.rhs.clone(), rel);
            if rhs.is_negative() || (rhs.is_zero() && rel == Relation::Ge) {
                coeffs.iter_mut().for_each(|x| *x = -&*x);
                rhs = -rhs;
                rel = match rel {
                    Relation::Le => Relation::Ge,
                    _ => Relation::Le,
                };
            }
            rows.push((coeffs, rel, rhs));
        }
    }

    let m = rows.len();
    let slack_count = m;
    let artificial_rows: Vec<usize> = (0..m).filter(|&i| rows[i].1 == Relation::Ge).collect();
    let first_artificial = structural + slack_count;
    let total = first_artificial + artificial_rows.len();

    let mut tab = Tableau::new(m, total);
    let mut next_art = first_artificial;
    for (i, (coeffs, rel, rhs)) in rows.into_iter().enumerate() {
        for (j, a) in coeffs.into_iter().enumerate() {
            tab.set(i, j, a);
        }
        tab.set_rhs(i, rhs);
        let slack = structural + i;
        if rel == Relation::Le {
            tab.set(i, slack, Rational::one());
            tab.basis[i] = slack;
        } else {
            tab.set(i, slack, -Rational::one());
            tab.set(i, next_art, Rational::one());
            tab.basis[i] = next_art;
            next_art += 1;
        }
    }

    if !artificial_rows.is_empty() {
        let mut cost = vec![Rational::zero(); total];
        for c in cost.iter_mut().skip(first_artificial) {
            *c = -Rational::one();
        }
        tab.load_objective(&cost);
        let finished = tab.run(total);
        debug_assert!(finished, "phase one is bounded");
        if tab.objective_value().is_negative() {
            return LpOutcome::Infeasible;
        }
        tab.evict_artificials(first_artificial);
    }

    let mut cost = vec![Rational::zero(); total];
    for (j, c) in p.objective.iter().enumerate() {
        cost[column_of[j]] = c.clone();
        if !p.nonneg[j] {
            cost[column_of[j] + 1] = -c;
        }
    }
    tab.load_objective(&cost);
    if !tab.run(first_artificial) {
        return LpOutcome::Unbounded;
    }

    let mut values = vec![Rational::zero(); total];
    for (i, &b) in tab.basis.iter().enumerate() {
        values[b] = tab.rhs(i).clone();
    }
    let point: Vec<Rational> = (0..p.num_vars())
        .map(|j| {
            let c = column_of[j];
            if p.nonneg[j] {
                values[c].clone()
            } else {
                &values[c] - &values[c + 1]
            }
        })
        .collect();
    let value = p.objective_at(&point);
    LpOutcome::Optimal { value, point }
}

/// Row-major tableau: `rows` constraint rows of width `cols + 1` (rhs last)
/// and a reduced-cost row (negated objective value in the rhs slot).
struct Tableau {
    cols: usize,
    a: Vec<Vec<Rational>>,
    reduced: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn new(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            a: vec![vec![Rational::zero(); cols + 1]; rows],
            reduced: vec![Rational::zero(); cols + 1],
            basis: vec![usize::MAX; rows],
        }
    }

    fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.a[i][j] = v;
    }

    fn set_rhs(&mut self, i: usize, v: Rational) {
        let c = self.cols;
        self.a[i][c] = v;
    }

    fn rhs(&self, i: usize) -> &Rational {
        &self.a[i][self.cols]
    }

    fn objective_value(&self) -> Rational {
        -&self.reduced[self.cols]
    }

    /// Reduced costs `c_j - c_B B^-1 A_j` for the current basis.
    fn load_objective(&mut self, cost: &[Rational]) {
        let mut reduced: Vec<Rational> = cost.to_vec();
        reduced.push(Rational::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (j, r) in reduced.iter_mut().enumerate() {
                *r -= cb * &self.a[i][j];
            }
        }
        self.reduced = reduced;
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.a[row][col].recip();
        for v in self.a[row].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.a[row].clone();
        for (i, r) in self.a.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (v, pv) in r.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        if !self.reduced[col].is_zero() {
            let f = self.reduced[col].clone();
            for (v, pv) in self.reduced.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Pivots to optimality using only columns `< usable`. Returns `false` on
    /// an unbounded ray.
    fn run(&mut self, usable: usize) -> bool {
        loop {
            let Some(enter) = (0..usable).find(|&j| self.reduced[j].is_positive()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.a.len() {
                let a = &self.a[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((l, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return false;
            };
            self.pivot(row, enter);
        }
    }

    /// After a feasible phase one, pivots zero-level artificials out of the
    /// basis and drops rows that are linearly redundant.
    fn evict_artificials(&mut self, first_artificial: usize) {
        let mut i = 0;
        while i < self.a.len() {
            if self.basis[i] < first_artificial {
                i += 1;
                continue;
            }
            match (0..first_artificial).find(|&j| !self.a[i][j].is_zero()) {
                Some(col) => {
                    self.pivot(i, col);
                    i += 1;
                }
                None => {
                    self.a.remove(i);
                    self.basis.remove(i);
                }
            }
        }
        for row in self.a.iter_mut() {
            for v in row.iter_mut().take(self.cols).skip(first_artificial) {
                *v = Rational::zero();
            }
        }
    }
}
