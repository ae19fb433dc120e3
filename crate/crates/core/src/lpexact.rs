//! Exact rational linear programming.
//!
//! Two-phase primal simplex on a dense tableau with Bland's rule. Variables
//! are free; each is split into a positive and a negative part internally.
//! Every outcome carries a certificate that [`validate_outcome`] re-checks
//! without touching the solver.

use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, CvxError, Result};
use crate::exactlin::{int, QVector, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Relation {
    Le,
    Eq,
    Lt,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Le => "le",
            Relation::Eq => "eq",
            Relation::Lt => "lt",
        }
    }
}

/// `coefficients · x  (≤ | = | <)  bound`
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LinearConstraint {
    pub coefficients: QVector,
    pub bound: Rational,
    pub relation: Relation,
}

impl LinearConstraint {
    pub fn new(coefficients: QVector, relation: Relation, bound: Rational) -> Self {
        LinearConstraint {
            coefficients,
            bound,
            relation,
        }
    }

    pub fn le(coefficients: QVector, bound: Rational) -> Self {
        Self::new(coefficients, Relation::Le, bound)
    }

    pub fn lt(coefficients: QVector, bound: Rational) -> Self {
        Self::new(coefficients, Relation::Lt, bound)
    }

    pub fn eq(coefficients: QVector, bound: Rational) -> Self {
        Self::new(coefficients, Relation::Eq, bound)
    }

    /// `coefficients · x ≥ bound`
    pub fn ge(coefficients: QVector, bound: Rational) -> Self {
        Self::le(coefficients.neg(), -bound)
    }

    /// `coefficients · x > bound`
    pub fn gt(coefficients: QVector, bound: Rational) -> Self {
        Self::lt(coefficients.neg(), -bound)
    }

    pub fn dim(&self) -> usize {
        self.coefficients.dim()
    }

    pub fn is_strict(&self) -> bool {
        self.relation == Relation::Lt
    }

    pub fn satisfied_by(&self, x: &QVector) -> bool {
        let lhs = self.coefficients.dot(x);
        match self.relation {
            Relation::Le => lhs <= self.bound,
            Relation::Eq => lhs == self.bound,
            Relation::Lt => lhs < self.bound,
        }
    }

    /// Same row with `<` replaced by `≤`.
    pub fn relaxed(&self) -> Self {
        let mut c = self.clone();
        if c.relation == Relation::Lt {
            c.relation = Relation::Le;
        }
        c
    }

    /// Same row with `≤` replaced by `<`.
    pub fn strictified(&self) -> Self {
        let mut c = self.clone();
        if c.relation == Relation::Le {
            c.relation = Relation::Lt;
        }
        c
    }

    /// Row in the coordinates `x = offset + map·u` (map given as columns).
    pub fn substitute(&self, offset: &QVector, columns: &[QVector]) -> Self {
        let coefficients = columns.iter().map(|c| self.coefficients.dot(c)).collect();
        Self::new(
            coefficients,
            self.relation,
            &self.bound - self.coefficients.dot(offset),
        )
    }

    /// Constraint on `x` equivalent to this one holding at `x + t`.
    pub fn translated(&self, t: &QVector) -> Self {
        Self::new(
            self.coefficients.clone(),
            self.relation,
            &self.bound + self.coefficients.dot(t),
        )
    }

    /// Embeds the row into a larger space: coefficient `i` lands at `offset + i`.
    pub fn lift(&self, total_dim: usize, offset: usize) -> Self {
        let mut c = QVector::zeros(total_dim).into_inner();
        for (i, a) in self.coefficients.iter().enumerate() {
            c[offset + i] = a.clone();
        }
        Self::new(QVector::new(c), self.relation, self.bound.clone())
    }
}

/// Minimize `objective · x` subject to `constraints` (relations `≤`/`=` only).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpProblem {
    pub objective: QVector,
    pub constraints: Vec<LinearConstraint>,
}

impl LpProblem {
    pub fn new(objective: QVector, constraints: Vec<LinearConstraint>) -> Self {
        LpProblem {
            objective,
            constraints,
        }
    }

    pub fn dim(&self) -> usize {
        self.objective.dim()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    /// `duals[i] ≥ 0` on `≤` rows with `Σ duals[i]·a_i = −objective` and
    /// `value = −Σ duals[i]·b_i`.
    Optimal {
        point: QVector,
        value: Rational,
        duals: Vec<Rational>,
    },
    /// `point` is feasible; `ray` is a recession direction with `objective · ray < 0`.
    Unbounded { point: QVector, ray: QVector },
    /// `farkas[i] ≥ 0` on `≤` rows, `Σ farkas[i]·a_i = 0`, `Σ farkas[i]·b_i < 0`.
    Infeasible { farkas: Vec<Rational> },
}

impl LpOutcome {
    pub fn optimal_value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&QVector> {
        match self {
            LpOutcome::Optimal { point, .. } | LpOutcome::Unbounded { point, .. } => Some(point),
            LpOutcome::Infeasible { .. } => None,
        }
    }
}

const DEGENERATE_LIMIT: usize = 50;

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    obj: Vec<Rational>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.ncols]
    }

    fn set_costs(&mut self, costs: &[Rational]) {
        let mut obj: Vec<Rational> = costs.to_vec();
        obj.push(Rational::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (o, t) in obj.iter_mut().zip(&self.rows[i]) {
                *o -= cb * t;
            }
        }
        self.obj = obj;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let prow = self.rows[r].clone();
        let eliminate = |row: &mut Vec<Rational>| {
            if row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = c;
    }

    /// Runs to optimality with the most negative reduced cost, switching to
    /// Bland's rule for good after a run of degenerate pivots.
    /// `Err(col)` reports an unbounded entering column.
    fn optimize(&mut self, allowed: impl Fn(usize) -> bool) -> std::result::Result<(), usize> {
        let mut degenerate = 0;
        loop {
            let entering = (0..self.ncols).filter(|&j| allowed(j) && self.obj[j].is_negative());
            let c = if degenerate < DEGENERATE_LIMIT {
                entering.min_by(|&a, &b| self.obj[a].cmp(&self.obj[b]).then(a.cmp(&b)))
            } else {
                entering.min()
            };
            let Some(c) = c else {
                return Ok(());
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, ratio)) => {
                    if ratio.is_zero() {
                        degenerate += 1;
                    } else if degenerate < DEGENERATE_LIMIT {
                        degenerate = 0;
                    }
                    self.pivot(r, c)
                }
                None => return Err(c),
            }
        }
    }

    fn column_values(&self) -> Vec<Rational> {
        let mut z = vec![Rational::zero(); self.ncols];
        for (i, &b) in self.basis.iter().enumerate() {
            z[b] = self.rhs(i).clone();
        }
        z
    }
}

/// Solves the LP exactly.
pub fn solve(p: &LpProblem) -> Result<LpOutcome> {
    let n = p.dim();
    for c in &p.constraints {
        check_dim(n, c.dim())?;
        if c.relation == Relation::Lt {
            return Err(CvxError::InvalidInput(
                "strict rows are not allowed in an LP; use strict_feasible".into(),
            ));
        }
    }
    Ok(solve_unchecked(p))
}

fn solve_unchecked(p: &LpProblem) -> LpOutcome {
    let n = p.dim();
    let m = p.constraints.len();
    let slack_of: Vec<Option<usize>> = {
        let mut k = 2 * n;
        p.constraints
            .iter()
            .map(|c| {
                if c.relation == Relation::Le {
                    k += 1;
                    Some(k - 1)
                } else {
                    None
                }
            })
            .collect()
    };
    let nslack = slack_of.iter().flatten().count();
    let art0 = 2 * n + nslack;
    let ncols = art0 + m;
    let mut sign = Vec::with_capacity(m);
    let mut rows = Vec::with_capacity(m);
    for (i, c) in p.constraints.iter().enumerate() {
        let s = if c.bound.is_negative() { -int(1) } else { int(1) };
        let mut row = vec![Rational::zero(); ncols + 1];
        for (j, a) in c.coefficients.iter().enumerate() {
            row[2 * j] = a * &s;
            row[2 * j + 1] = -(a * &s);
        }
        if let Some(k) = slack_of[i] {
            row[k] = s.clone();
        }
        row[art0 + i] = Rational::one();
        row[ncols] = &c.bound * &s;
        rows.push(row);
        sign.push(s);
    }
    // a `≤` row with nonnegative bound starts on its slack
    let basis = (0..m)
        .map(|i| match slack_of[i] {
            Some(k) if sign[i].is_positive() => k,
            _ => art0 + i,
        })
        .collect();
    let mut t = Tableau {
        rows,
        basis,
        obj: Vec::new(),
        ncols,
    };

    // Phase 1.
    let mut costs = vec![Rational::zero(); ncols];
    for c in costs.iter_mut().skip(art0) {
        *c = Rational::one();
    }
    t.set_costs(&costs);
    t.optimize(|_| true)
        .expect("phase one is bounded below by zero");
    let phase1_value = -t.obj[ncols].clone();
    if phase1_value.is_positive() {
        // π_i = 1 − r_art_i ; y_i = −π_i σ_i
        let farkas = (0..m)
            .map(|i| -(Rational::one() - &t.obj[art0 + i]) * &sign[i])
            .collect();
        return LpOutcome::Infeasible { farkas };
    }

    // Drive remaining artificials out of the basis where possible.
    for i in 0..m {
        if t.basis[i] >= art0 {
            if let Some(c) = (0..art0).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, c);
            }
        }
    }

    // Phase 2.
    let mut costs = vec![Rational::zero(); ncols];
    for (j, c) in p.objective.iter().enumerate() {
        costs[2 * j] = c.clone();
        costs[2 * j + 1] = -c.clone();
    }
    t.set_costs(&costs);
    let to_x = |z: &[Rational]| -> QVector { (0..n).map(|j| &z[2 * j] - &z[2 * j + 1]).collect() };
    match t.optimize(|j| j < art0) {
        Ok(()) => {
            let z = t.column_values();
            let point = to_x(&z);
            let value = p.objective.dot(&point);
            let duals = (0..m).map(|i| &t.obj[art0 + i] * &sign[i]).collect();
            LpOutcome::Optimal {
                point,
                value,
                duals,
            }
        }
        Err(c) => {
            let z = t.column_values();
            let mut dz = vec![Rational::zero(); ncols];
            dz[c] = Rational::one();
            for (i, &b) in t.basis.iter().enumerate() {
                dz[b] = -t.rows[i][c].clone();
            }
            LpOutcome::Unbounded {
                point: to_x(&z),
                ray: to_x(&dz),
            }
        }
    }
}

/// Independent check of an LP certificate.
pub fn validate_outcome(p: &LpProblem, outcome: &LpOutcome) -> bool {
    let m = p.constraints.len();
    let n = p.dim();
    let sign_ok = |ys: &[Rational]| {
        ys.len() == m
            && p.constraints
                .iter()
                .zip(ys)
                .all(|(c, y)| c.relation == Relation::Eq || !y.is_negative())
    };
    let combine = |ys: &[Rational]| -> QVector {
        let mut acc = QVector::zeros(n);
        for (c, y) in p.constraints.iter().zip(ys) {
            acc = acc.axpy(y, &c.coefficients);
        }
        acc
    };
    let rhs = |ys: &[Rational]| -> Rational {
        p.constraints
            .iter()
            .zip(ys)
            .fold(Rational::zero(), |acc, (c, y)| acc + y * &c.bound)
    };
    match outcome {
        LpOutcome::Optimal {
            point,
            value,
            duals,
        } => {
            point.dim() == n
                && p.constraints.iter().all(|c| c.satisfied_by(point))
                && p.objective.dot(point) == *value
                && sign_ok(duals)
                && combine(duals) == p.objective.neg()
                && -rhs(duals) == *value
        }
        LpOutcome::Unbounded { point, ray } => {
            p.constraints.iter().all(|c| c.satisfied_by(point))
                && p.objective.dot(ray).is_negative()
                && p.constraints.iter().all(|c| {
                    let d = c.coefficients.dot(ray);
                    match c.relation {
                        Relation::Eq => d.is_zero(),
                        _ => !d.is_positive(),
                    }
                })
        }
        LpOutcome::Infeasible { farkas } => {
            sign_ok(farkas) && combine(farkas).is_zero() && rhs(farkas).is_negative()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrictOutcome {
    /// Every strict row holds with margin at least `slack`; all other rows hold.
    Witness { point: QVector, slack: Rational },
    /// Multipliers `y` (≥ 0 off equalities) with `Σ y_i a_i = 0`, `Σ y_i b_i ≤ 0`,
    /// and either `Σ y_i b_i < 0` or some strict row carrying positive weight.
    Empty { certificate: Vec<Rational> },
}

impl StrictOutcome {
    pub fn is_empty(&self) -> bool {
        matches!(self, StrictOutcome::Empty { .. })
    }

    pub fn witness(&self) -> Option<&QVector> {
        match self {
            StrictOutcome::Witness { point, .. } => Some(point),
            StrictOutcome::Empty { .. } => None,
        }
    }
}

/// Decides feasibility of a mixed strict/non-strict system by maximizing a
/// common slack `t ≤ 1` on the strict rows.
pub fn strict_feasible(system: &[LinearConstraint]) -> Result<StrictOutcome> {
    let Some(n) = system.first().map(LinearConstraint::dim) else {
        return Err(CvxError::InvalidInput(
            "strict_feasible needs at least one row (dimension unknown)".into(),
        ));
    };
    strict_feasible_dim(n, system)
}

/// Like [`strict_feasible`] with an explicit ambient dimension, so an empty
/// system is accepted (and is trivially feasible).
pub fn strict_feasible_dim(n: usize, system: &[LinearConstraint]) -> Result<StrictOutcome> {
    for c in system {
        check_dim(n, c.dim())?;
    }
    let mut rows = Vec::with_capacity(system.len() + 1);
    for c in system {
        let mut coefs = c.coefficients.clone();
        let strict = c.relation == Relation::Lt;
        coefs.push(if strict { int(1) } else { int(0) });
        let rel = if c.relation == Relation::Eq {
            Relation::Eq
        } else {
            Relation::Le
        };
        rows.push(LinearConstraint::new(coefs, rel, c.bound.clone()));
    }
    rows.push(LinearConstraint::le(QVector::unit(n + 1, n), int(1)));
    let lp = LpProblem::new(QVector::unit(n + 1, n).neg(), rows);
    match solve_unchecked(&lp) {
        LpOutcome::Infeasible { farkas } => Ok(StrictOutcome::Empty {
            certificate: farkas[..system.len()].to_vec(),
        }),
        LpOutcome::Optimal { point, duals, .. } => {
            let slack = point[n].clone();
            if slack.is_positive() {
                Ok(StrictOutcome::Witness {
                    point: point.slice(0..n),
                    slack,
                })
            } else {
                Ok(StrictOutcome::Empty {
                    certificate: duals[..system.len()].to_vec(),
                })
            }
        }
        LpOutcome::Unbounded { .. } => Err(CvxError::Internal(
            "slack maximization is capped and cannot be unbounded".into(),
        )),
    }
}

pub fn validate_strict(system: &[LinearConstraint], outcome: &StrictOutcome) -> bool {
    match outcome {
        StrictOutcome::Witness { point, slack } => {
            slack.is_positive()
                && system.iter().all(|c| {
                    let lhs = c.coefficients.dot(point);
                    match c.relation {
                        Relation::Le => lhs <= c.bound,
                        Relation::Eq => lhs == c.bound,
                        Relation::Lt => lhs + slack <= c.bound,
                    }
                })
        }
        StrictOutcome::Empty { certificate } => {
            if certificate.len() != system.len() {
                return false;
            }
            let Some(n) = system.first().map(LinearConstraint::dim) else {
                return false;
            };
            let mut acc = QVector::zeros(n);
            let mut rhs = Rational::zero();
            let mut strict_weight = Rational::zero();
            for (c, y) in system.iter().zip(certificate) {
                if c.relation != Relation::Eq && y.is_negative() {
                    return false;
                }
                acc = acc.axpy(y, &c.coefficients);
                rhs += y * &c.bound;
                if c.relation == Relation::Lt {
                    strict_weight += y;
                }
            }
            acc.is_zero()
                && (rhs.is_negative() || (!rhs.is_positive() && strict_weight.is_positive()))
        }
    }
}

/// Convenience: does the system admit a point?
pub fn is_feasible(n: usize, system: &[LinearConstraint]) -> bool {
    matches!(
        strict_feasible_dim(n, system).expect("dimension-checked system"),
        StrictOutcome::Witness { .. }
    )
}

/// Maximizes `objective · x`; returns `None` when infeasible, `Some(None)` when unbounded.
pub fn maximize(
    objective: &QVector,
    constraints: &[LinearConstraint],
) -> Result<Option<Option<(Rational, QVector)>>> {
    let lp = LpProblem::new(objective.neg(), constraints.to_vec());
    Ok(match solve(&lp)? {
        LpOutcome::Optimal { point, value, .. } => Some(Some((-value, point))),
        LpOutcome::Unbounded { .. } => Some(None),
        LpOutcome::Infeasible { .. } => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::ratio;

    fn v(xs: &[i64]) -> QVector {
        QVector::from_ints(xs)
    }

    #[test]
    fn single_active_bound() {
        let p = LpProblem::new(v(&[1]), vec![LinearConstraint::ge(v(&[1]), int(1))]);
        let out = solve(&p).unwrap();
        assert!(validate_outcome(&p, &out));
        assert_eq!(out.optimal_value(), Some(&int(1)));
        assert_eq!(out.point(), Some(&v(&[1])));
    }

    #[test]
    fn contradictory_bounds_farkas() {
        let p = LpProblem::new(
            v(&[1]),
            vec![
                LinearConstraint::le(v(&[1]), int(0)),
                LinearConstraint::ge(v(&[1]), int(1)),
            ],
        );
        let out = solve(&p).unwrap();
        assert!(validate_outcome(&p, &out));
        match out {
            LpOutcome::Infeasible { farkas } => {
                assert_eq!(farkas[0], farkas[1]);
                assert!(farkas[0].is_positive());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn open_direction_unbounded() {
        let p = LpProblem::new(v(&[-1]), vec![LinearConstraint::ge(v(&[1]), int(0))]);
        let out = solve(&p).unwrap();
        assert!(validate_outcome(&p, &out));
        match out {
            LpOutcome::Unbounded { ray, .. } => assert_eq!(ray.primitive(), v(&[1])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn no_constraints() {
        let p = LpProblem::new(v(&[0, 0]), vec![]);
        let out = solve(&p).unwrap();
        assert!(validate_outcome(&p, &out));
        let p = LpProblem::new(v(&[1, 0]), vec![]);
        assert!(matches!(solve(&p).unwrap(), LpOutcome::Unbounded { .. }));
    }

    #[test]
    fn redundant_equalities() {
        let p = LpProblem::new(
            v(&[1, 1]),
            vec![
                LinearConstraint::eq(v(&[1, 1]), int(2)),
                LinearConstraint::eq(v(&[2, 2]), int(4)),
                LinearConstraint::ge(v(&[1, 0]), int(0)),
                LinearConstraint::ge(v(&[0, 1]), int(0)),
            ],
        );
        let out = solve(&p).unwrap();
        assert!(validate_outcome(&p, &out));
        assert_eq!(out.optimal_value(), Some(&int(2)));
    }

    #[test]
    fn strict_examples() {
        let sys = vec![
            LinearConstraint::gt(v(&[1]), int(0)),
            LinearConstraint::lt(v(&[1]), int(1)),
        ];
        let out = strict_feasible(&sys).unwrap();
        assert!(validate_strict(&sys, &out));
        assert_eq!(
            out,
            StrictOutcome::Witness {
                point: QVector::new(vec![ratio(1, 2)]),
                slack: ratio(1, 2)
            }
        );

        let sys = vec![
            LinearConstraint::lt(v(&[1]), int(0)),
            LinearConstraint::gt(v(&[1]), int(0)),
        ];
        let out = strict_feasible(&sys).unwrap();
        assert!(out.is_empty());
        assert!(validate_strict(&sys, &out));

        let sys = vec![
            LinearConstraint::eq(v(&[1]), int(0)),
            LinearConstraint::lt(v(&[1]), int(1)),
        ];
        let out = strict_feasible(&sys).unwrap();
        assert!(validate_strict(&sys, &out));
        assert_eq!(
            out,
            StrictOutcome::Witness {
                point: v(&[0]),
                slack: int(1)
            }
        );
    }

    #[test]
    fn strict_rows_rejected_by_solve() {
        let p = LpProblem::new(v(&[1]), vec![LinearConstraint::lt(v(&[1]), int(0))]);
        assert!(solve(&p).is_err());
        let p = LpProblem::new(v(&[1]), vec![LinearConstraint::le(v(&[1, 0]), int(0))]);
        assert!(matches!(solve(&p), Err(CvxError::DimensionMismatch { .. })));
    }

    #[test]
    fn closed_infeasible_strict_system() {
        let sys = vec![
            LinearConstraint::le(v(&[1, 0]), int(0)),
            LinearConstraint::ge(v(&[1, 0]), int(1)),
            LinearConstraint::lt(v(&[0, 1]), int(5)),
        ];
        let out = strict_feasible(&sys).unwrap();
        assert!(out.is_empty());
        assert!(validate_strict(&sys, &out));
    }
}
