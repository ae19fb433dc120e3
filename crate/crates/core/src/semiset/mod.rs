//! Semilinear sets: finite unions of semi-closed convex cells, with exact
//! core, relative core, vectorial closure, boundary and convex components.

mod components;
mod ops;

pub use components::{components, components_with_cap, DecompositionResult, DEFAULT_ROW_CAP};
pub use ops::*;

use num_traits::{Signed, Zero};

use crate::error::{check_dim, CvxError, Result};
use crate::exactlin::{int, QVector, Rational};
use crate::lpexact::{strict_feasible_dim, LinearConstraint, Relation, StrictOutcome};
use crate::polyrep::{h_to_v, simplify_rows, GeneratorRep, HRep};

/// Intersection of linear rows with relations `≤`, `<`, `=`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ConvexCell {
    dim: usize,
    constraints: Vec<LinearConstraint>,
}

impl ConvexCell {
    /// Rows are normalized (primitive integer coefficients, tautologies dropped).
    pub fn new(dim: usize, constraints: Vec<LinearConstraint>) -> Result<Self> {
        for c in &constraints {
            check_dim(dim, c.dim())?;
        }
        Ok(Self::from_rows(dim, constraints))
    }

    pub(crate) fn from_rows(dim: usize, constraints: Vec<LinearConstraint>) -> Self {
        ConvexCell {
            dim,
            constraints: simplify_rows(dim, constraints),
        }
    }

    pub fn universe(dim: usize) -> Self {
        ConvexCell {
            dim,
            constraints: vec![],
        }
    }

    /// Axis box `[lo_i, hi_i]`.
    pub fn closed_box(lo: &[Rational], hi: &[Rational]) -> Self {
        let dim = lo.len();
        let mut rows = Vec::new();
        for i in 0..dim {
            rows.push(LinearConstraint::ge(QVector::unit(dim, i), lo[i].clone()));
            rows.push(LinearConstraint::le(QVector::unit(dim, i), hi[i].clone()));
        }
        Self::from_rows(dim, rows)
    }

    /// Axis box `(lo_i, hi_i)`.
    pub fn open_box(lo: &[Rational], hi: &[Rational]) -> Self {
        let dim = lo.len();
        let mut rows = Vec::new();
        for i in 0..dim {
            rows.push(LinearConstraint::gt(QVector::unit(dim, i), lo[i].clone()));
            rows.push(LinearConstraint::lt(QVector::unit(dim, i), hi[i].clone()));
        }
        Self::from_rows(dim, rows)
    }

    pub fn point(p: &QVector) -> Self {
        let dim = p.dim();
        let rows = (0..dim)
            .map(|i| LinearConstraint::eq(QVector::unit(dim, i), p[i].clone()))
            .collect();
        Self::from_rows(dim, rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.constraints.iter().all(|c| c.satisfied_by(x))
    }

    pub fn feasibility(&self) -> StrictOutcome {
        strict_feasible_dim(self.dim, &self.constraints).expect("dimension-checked cell")
    }

    pub fn is_empty(&self) -> bool {
        self.feasibility().is_empty()
    }

    /// A point of the cell, if any.
    pub fn witness(&self) -> Option<QVector> {
        self.feasibility().witness().cloned()
    }

    pub fn intersect(&self, other: &ConvexCell) -> ConvexCell {
        let mut rows = self.constraints.clone();
        rows.extend(other.constraints.iter().cloned());
        Self::from_rows(self.dim, rows)
    }

    /// Topological closure; `None` for an empty cell.
    pub fn closure(&self) -> Option<ConvexCell> {
        if self.is_empty() {
            return None;
        }
        let rows = self.constraints.iter().map(LinearConstraint::relaxed).collect();
        Some(Self::from_rows(self.dim, rows))
    }

    /// Interior: every inequality made strict; empty when an equality survives.
    pub fn interior(&self) -> ConvexCell {
        if self.constraints.iter().any(|c| c.relation == Relation::Eq) {
            return Self::empty_cell(self.dim);
        }
        let rows = self.constraints.iter().map(LinearConstraint::strictified).collect();
        Self::from_rows(self.dim, rows)
    }

    pub(crate) fn empty_cell(dim: usize) -> ConvexCell {
        ConvexCell {
            dim,
            constraints: vec![LinearConstraint::le(QVector::zeros(dim), int(-1))],
        }
    }

    pub fn translate(&self, t: &QVector) -> ConvexCell {
        let rows = self.constraints.iter().map(|c| c.translated(t)).collect();
        Self::from_rows(self.dim, rows)
    }

    /// `{α x : x ∈ P}` for `α ≠ 0`.
    pub fn scale(&self, alpha: &Rational) -> Result<ConvexCell> {
        if alpha.is_zero() {
            return Err(CvxError::InvalidInput("scaling factor must be nonzero".into()));
        }
        let rows = self
            .constraints
            .iter()
            .map(|c| {
                let bound = &c.bound * alpha;
                if alpha.is_negative() {
                    LinearConstraint::new(c.coefficients.neg(), c.relation, -bound)
                } else {
                    LinearConstraint::new(c.coefficients.clone(), c.relation, bound)
                }
            })
            .collect();
        Ok(Self::from_rows(self.dim, rows))
    }

    /// Generators of the closure; `None` for an empty cell.
    pub fn closure_generators(&self) -> Option<GeneratorRep> {
        let closed = self.closure()?;
        let h = HRep::new(self.dim, closed.constraints).expect("relaxed rows");
        Some(h_to_v(&h))
    }

    /// Rows `a·d rel 0` of directions entering the cell from `x`, or `None`
    /// when `x` is outside the closure.
    pub fn entry_cone(&self, x: &QVector) -> Option<ConvexCell> {
        let closed = self.closure()?;
        if !closed.contains(x) {
            return None;
        }
        let rows = self
            .constraints
            .iter()
            .filter(|c| c.coefficients.dot(x) == c.bound)
            .map(|c| LinearConstraint::new(c.coefficients.clone(), c.relation, int(0)))
            .collect();
        Some(Self::from_rows(self.dim, rows))
    }
}

/// Finite union of cells.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemilinearSet {
    dim: usize,
    cells: Vec<ConvexCell>,
}

impl SemilinearSet {
    pub fn new(dim: usize, cells: Vec<ConvexCell>) -> Result<Self> {
        for c in &cells {
            check_dim(dim, c.dim())?;
        }
        Ok(SemilinearSet { dim, cells })
    }

    pub fn empty(dim: usize) -> Self {
        SemilinearSet { dim, cells: vec![] }
    }

    pub fn universe(dim: usize) -> Self {
        SemilinearSet {
            dim,
            cells: vec![ConvexCell::universe(dim)],
        }
    }

    pub fn from_cell(cell: ConvexCell) -> Self {
        SemilinearSet {
            dim: cell.dim(),
            cells: vec![cell],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[ConvexCell] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<ConvexCell> {
        self.cells
    }

    /// Drops empty cells and duplicates; sorts canonically.
    pub fn pruned(&self) -> SemilinearSet {
        let mut cells: Vec<ConvexCell> =
            self.cells.iter().filter(|c| !c.is_empty()).cloned().collect();
        cells.sort();
        cells.dedup();
        SemilinearSet {
            dim: self.dim,
            cells,
        }
    }

    pub fn translate(&self, t: &QVector) -> Result<SemilinearSet> {
        check_dim(self.dim, t.dim())?;
        Ok(SemilinearSet {
            dim: self.dim,
            cells: self.cells.iter().map(|c| c.translate(t)).collect(),
        })
    }

    pub fn scale(&self, alpha: &Rational) -> Result<SemilinearSet> {
        let cells = self.cells.iter().map(|c| c.scale(alpha)).collect::<Result<_>>()?;
        Ok(SemilinearSet {
            dim: self.dim,
            cells,
        })
    }

    /// Box-shaped set helpers used by fixtures.
    pub fn closed_box_union(boxes: &[(Vec<Rational>, Vec<Rational>)]) -> SemilinearSet {
        let dim = boxes.first().map(|b| b.0.len()).unwrap_or(0);
        SemilinearSet {
            dim,
            cells: boxes.iter().map(|(lo, hi)| ConvexCell::closed_box(lo, hi)).collect(),
        }
    }
}
