//! Strict-inequality linear feasibility over exact rationals.
//!
//! Systems mix equalities (`=`), weak inequalities (`>=`), and strict
//! inequalities (`>`). Strictness is decided without any tolerance: each
//! strict constraint `lhs > rhs` is rewritten as `lhs - rhs >= eps` for one
//! shared margin variable `eps`, `eps` is capped at 1 so the program is
//! bounded, and `eps` is maximized by a two-phase simplex over exact
//! rationals. The system is strictly feasible exactly when the optimal
//! margin is positive.
//!
//! When even the weak version of the system (all `>` relaxed to `>=`) has no
//! solution, the reported margin is negative: its absolute value is the
//! smallest uniform relaxation of every constraint that restores weak
//! feasibility. A verdict therefore always comes with a signed margin.
//!
//! Pivoting uses Bland's rule throughout, so the solver terminates on every
//! input and identical constraint lists yield identical witnesses.
//! Coefficients can grow large under pivoting; all arithmetic is
//! arbitrary-precision.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::rational::Rat;

/// Identifier of a solver variable. Ordered; Bland's rule breaks pivot ties
/// by the lowest id.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VarId(String);

impl VarId {
    pub fn new(name: impl Into<String>) -> Self {
        VarId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VarId {
    fn from(s: &str) -> Self {
        VarId(s.to_owned())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    /// Left side equals the right side.
    Eq,
    /// Left side is at least the right side.
    Ge,
    /// Left side strictly exceeds the right side.
    Gt,
}

/// One linear constraint. Variables not present have coefficient zero.
#[derive(Clone, Debug)]
pub struct LinConstraint {
    pub coefficients: BTreeMap<VarId, Rat>,
    pub relation: Relation,
    pub rhs: Rat,
}

impl LinConstraint {
    pub fn new(relation: Relation, rhs: Rat) -> Self {
        LinConstraint {
            coefficients: BTreeMap::new(),
            relation,
            rhs,
        }
    }

    /// Adds `coef * var` to the left side, merging repeated mentions.
    pub fn term(mut self, var: impl Into<VarId>, coef: Rat) -> Self {
        let entry = self
            .coefficients
            .entry(var.into())
            .or_insert_with(Rat::zero);
        *entry += coef;
        self
    }

    /// Evaluates the left side under an assignment (absent variables are 0).
    pub fn lhs_value(&self, assignment: &BTreeMap<VarId, Rat>) -> Rat {
        self.coefficients
            .iter()
            .map(|(v, c)| match assignment.get(v) {
                Some(x) => c * x,
                None => Rat::zero(),
            })
            .sum()
    }

    /// Whether the assignment satisfies this constraint, requiring strict
    /// constraints to hold with at least `margin`.
    pub fn satisfied_with_margin(&self, assignment: &BTreeMap<VarId, Rat>, margin: &Rat) -> bool {
        let lhs = self.lhs_value(assignment);
        match self.relation {
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Gt => &lhs - &self.rhs >= *margin,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Feasible,
    Infeasible,
}

/// Result of a strict-feasibility query.
#[derive(Clone, Debug)]
pub struct FeasibilityOutcome {
    pub verdict: Verdict,
    /// Satisfying assignment, present exactly when the verdict is feasible.
    pub witness: Option<BTreeMap<VarId, Rat>>,
    /// The maximized strictness margin. Positive means strictly feasible;
    /// zero means only weakly feasible; negative means even the weak system
    /// needs a uniform relaxation of that size.
    pub slack: Rat,
}

impl FeasibilityOutcome {
    pub fn is_feasible(&self) -> bool {
        self.verdict == Verdict::Feasible
    }
}

/// Decides whether the strict system has a solution and maximizes the shared
/// strictness margin.
pub fn solve_strict_feasibility(constraints: &[LinConstraint]) -> FeasibilityOutcome {
    let vars: Vec<VarId> = constraints
        .iter()
        .flat_map(|c| c.coefficients.keys().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    match solve_margin_program(constraints, &vars) {
        Some((eps, assignment)) => {
            if eps.is_positive() {
                debug_assert!(constraints
                    .iter()
                    .all(|c| c.satisfied_with_margin(&assignment, &eps)));
                FeasibilityOutcome {
                    verdict: Verdict::Feasible,
                    witness: Some(assignment),
                    slack: eps,
                }
            } else {
                FeasibilityOutcome {
                    verdict: Verdict::Infeasible,
                    witness: None,
                    slack: eps,
                }
            }
        }
        None => {
            let violation = solve_relaxation_program(constraints, &vars);
            FeasibilityOutcome {
                verdict: Verdict::Infeasible,
                witness: None,
                slack: -violation,
            }
        }
    }
}

/// Maximize `eps` subject to the system with strict rows relaxed by `eps`,
/// `0 <= eps <= 1`. Returns `None` when even that program is infeasible.
fn solve_margin_program(
    constraints: &[LinConstraint],
    vars: &[VarId],
) -> Option<(Rat, BTreeMap<VarId, Rat>)> {
    // Columns: x+ / x- per variable, then eps, then one slack per
    // inequality row (including the eps cap).
    let eps_col = 2 * vars.len();
    let mut builder = Builder::new(eps_col + 1);

    for c in constraints {
        let mut row = builder.structural_row(c, vars);
        if c.relation == Relation::Gt {
            row[eps_col] = Rat::from(-1);
        }
        match c.relation {
            Relation::Eq => builder.push_eq(row, c.rhs.clone()),
            Relation::Ge | Relation::Gt => builder.push_ge(row, c.rhs.clone()),
        }
    }
    // eps <= 1 keeps the program bounded.
    let mut cap = vec![Rat::zero(); eps_col + 1];
    cap[eps_col] = Rat::one();
    builder.push_le(cap, Rat::one());

    let mut objective = vec![Rat::zero(); builder.cols];
    objective[eps_col] = Rat::one();

    let solution = builder.solve(objective)?;
    let eps = solution[eps_col].clone();
    Some((eps, recover_assignment(vars, &solution)))
}

/// Minimize the uniform relaxation `n >= 0` that makes the weak system
/// satisfiable. Always feasible.
fn solve_relaxation_program(constraints: &[LinConstraint], vars: &[VarId]) -> Rat {
    let relax_col = 2 * vars.len();
    let mut builder = Builder::new(relax_col + 1);

    for c in constraints {
        let mut row = builder.structural_row(c, vars);
        row[relax_col] = Rat::one();
        match c.relation {
            Relation::Eq => {
                // |lhs - rhs| <= n, split into two relaxed inequalities.
                let mirrored: Vec<Rat> = row
                    .iter()
                    .enumerate()
                    .map(|(j, x)| if j == relax_col { x.clone() } else { -x })
                    .collect();
                builder.push_ge(row, c.rhs.clone());
                builder.push_ge(mirrored, -&c.rhs);
            }
            Relation::Ge | Relation::Gt => builder.push_ge(row, c.rhs.clone()),
        }
    }

    let mut objective = vec![Rat::zero(); builder.cols];
    objective[relax_col] = Rat::from(-1);

    let solution = builder
        .solve(objective)
        .expect("relaxed system is feasible by construction");
    solution[relax_col].clone()
}

fn recover_assignment(vars: &[VarId], solution: &[Rat]) -> BTreeMap<VarId, Rat> {
    vars.iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), &solution[2 * i] - &solution[2 * i + 1]))
        .collect()
}

/// Accumulates rows in computational standard form (Ax = b, x >= 0, b >= 0)
/// and runs the two-phase simplex.
struct Builder {
    structural_cols: usize,
    cols: usize,
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
}

impl Builder {
    fn new(structural_cols: usize) -> Self {
        Builder {
            structural_cols,
            cols: structural_cols,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    /// Splits each free variable of `c` into a nonnegative pair of columns.
    fn structural_row(&self, c: &LinConstraint, vars: &[VarId]) -> Vec<Rat> {
        let mut row = vec![Rat::zero(); self.structural_cols];
        for (v, coef) in &c.coefficients {
            let i = vars.binary_search(v).expect("variable was collected");
            row[2 * i] = coef.clone();
            row[2 * i + 1] = -coef;
        }
        row
    }

    fn push_eq(&mut self, row: Vec<Rat>, rhs: Rat) {
        self.push_row(row, rhs, None);
    }

    fn push_ge(&mut self, row: Vec<Rat>, rhs: Rat) {
        self.push_row(row, rhs, Some(Rat::from(-1)));
    }

    fn push_le(&mut self, row: Vec<Rat>, rhs: Rat) {
        self.push_row(row, rhs, Some(Rat::one()));
    }

    fn push_row(&mut self, mut row: Vec<Rat>, rhs: Rat, slack: Option<Rat>) {
        if let Some(slack_coef) = slack {
            // Rows are padded to a common width in `solve`.
            row.resize(self.cols, Rat::zero());
            row.push(slack_coef);
            self.cols += 1;
        }
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    /// Two-phase simplex maximizing `objective`; returns the column values
    /// of an optimal basic solution, or `None` when infeasible.
    fn solve(mut self, mut objective: Vec<Rat>) -> Option<Vec<Rat>> {
        for r in &mut self.rows {
            r.resize(self.cols, Rat::zero());
        }
        objective.resize(self.cols, Rat::zero());

        // Normalize right-hand sides to be nonnegative.
        for (row, b) in self.rows.iter_mut().zip(self.rhs.iter_mut()) {
            if b.is_negative() {
                for x in row.iter_mut() {
                    *x = -&*x;
                }
                *b = -&*b;
            }
        }

        let m = self.rows.len();
        let real_cols = self.cols;
        let mut tableau = Tableau {
            rows: self.rows,
            rhs: self.rhs,
            basis: Vec::with_capacity(m),
            enterable: vec![true; real_cols + m],
        };

        // Phase 1: artificial basis, maximize minus their sum.
        for (r, row) in tableau.rows.iter_mut().enumerate() {
            row.resize(real_cols + m, Rat::zero());
            row[real_cols + r] = Rat::one();
            tableau.basis.push(real_cols + r);
        }
        let mut phase1 = vec![Rat::zero(); real_cols + m];
        for cost in phase1.iter_mut().skip(real_cols) {
            *cost = Rat::from(-1);
        }
        let attained = tableau.maximize(phase1);
        if !attained.is_zero() {
            return None;
        }
        tableau.evict_artificials(real_cols);
        for j in real_cols..real_cols + m {
            tableau.enterable[j] = false;
        }

        // Phase 2: the real objective.
        objective.resize(real_cols + m, Rat::zero());
        tableau.maximize(objective);

        let mut values = vec![Rat::zero(); real_cols];
        for (r, &j) in tableau.basis.iter().enumerate() {
            if j < real_cols {
                values[j] = tableau.rhs[r].clone();
            }
        }
        Some(values)
    }
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
    enterable: Vec<bool>,
}

impl Tableau {
    /// Runs primal simplex on `objective` (to be maximized) from the current
    /// basis; returns the attained objective value. Bland's rule: the
    /// entering column is the lowest-index one with a positive reduced cost,
    /// and ratio-test ties leave the row whose basic column is lowest.
    fn maximize(&mut self, objective: Vec<Rat>) -> Rat {
        // Reduced-cost row, canonicalized against the current basis.
        let mut reduced = objective;
        let mut value = Rat::zero();
        for (r, &j) in self.basis.iter().enumerate() {
            if !reduced[j].is_zero() {
                let factor = reduced[j].clone();
                for (c, x) in self.rows[r].iter().enumerate() {
                    let delta = &factor * x;
                    reduced[c] -= delta;
                }
                value += &factor * &self.rhs[r];
            }
        }

        loop {
            let entering = match (0..reduced.len())
                .find(|&j| self.enterable[j] && reduced[j].is_positive())
            {
                Some(j) => j,
                None => return value,
            };

            let mut leaving: Option<(usize, Rat)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][entering];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &leaving {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
            let (pivot_row, _) = leaving.expect("program is bounded by construction");

            self.pivot(pivot_row, entering);
            let factor = reduced[entering].clone();
            if !factor.is_zero() {
                for (c, x) in self.rows[pivot_row].iter().enumerate() {
                    let delta = &factor * x;
                    reduced[c] -= delta;
                }
                value += &factor * &self.rhs[pivot_row];
            }
        }
    }

    fn pivot(&mut self, pivot_row: usize, entering: usize) {
        let pivot = self.rows[pivot_row][entering].clone();
        for x in self.rows[pivot_row].iter_mut() {
            *x = &*x / &pivot;
        }
        self.rhs[pivot_row] = &self.rhs[pivot_row] / &pivot;

        for r in 0..self.rows.len() {
            if r == pivot_row {
                continue;
            }
            let factor = self.rows[r][entering].clone();
            if factor.is_zero() {
                continue;
            }
            for c in 0..self.rows[r].len() {
                let delta = &factor * &self.rows[pivot_row][c];
                self.rows[r][c] -= delta;
            }
            let delta = &factor * &self.rhs[pivot_row];
            self.rhs[r] -= delta;
        }
        self.basis[pivot_row] = entering;
    }

    /// After phase 1, pivots remaining artificial columns out of the basis;
    /// rows that cannot be pivoted are redundant and get dropped.
    fn evict_artificials(&mut self, real_cols: usize) {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] < real_cols {
                r += 1;
                continue;
            }
            match (0..real_cols).find(|&j| !self.rows[r][j].is_zero()) {
                Some(j) => {
                    self.pivot(r, j);
                    r += 1;
                }
                None => {
                    self.rows.remove(r);
                    self.rhs.remove(r);
                    self.basis.remove(r);
                }
            }
        }
    }
}
