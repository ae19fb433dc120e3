use num_traits::{Signed, Zero};

use super::{ConvexCell, SemilinearSet};
use crate::error::{check_dim, CvxError, Result};
use crate::exactlin::{affine_hull, int, left_inverse, ratio, span_basis, QVector, Rational};
use crate::lpexact::{LinearConstraint, Relation};
use crate::polyrep::{minkowski_sum_rows, negate_row};

pub fn contains(s: &SemilinearSet, x: &QVector) -> Result<bool> {
    check_dim(s.dim(), x.dim())?;
    Ok(s.cells().iter().any(|c| c.contains(x)))
}

pub fn is_empty(s: &SemilinearSet) -> bool {
    s.cells().iter().all(ConvexCell::is_empty)
}

pub fn union(s: &SemilinearSet, t: &SemilinearSet) -> Result<SemilinearSet> {
    check_dim(s.dim(), t.dim())?;
    let mut cells = s.cells().to_vec();
    cells.extend(t.cells().iter().cloned());
    Ok(SemilinearSet::new(s.dim(), cells)?.pruned())
}

pub fn intersect(s: &SemilinearSet, t: &SemilinearSet) -> Result<SemilinearSet> {
    check_dim(s.dim(), t.dim())?;
    let mut cells = Vec::new();
    for a in s.cells() {
        for b in t.cells() {
            let c = a.intersect(b);
            if !c.is_empty() {
                cells.push(c);
            }
        }
    }
    // cells are already known nonempty
    cells.sort();
    cells.dedup();
    SemilinearSet::new(s.dim(), cells)
}

fn row_negations(r: &LinearConstraint) -> Vec<LinearConstraint> {
    match r.relation {
        Relation::Eq => vec![
            LinearConstraint::lt(r.coefficients.clone(), r.bound.clone()),
            LinearConstraint::gt(r.coefficients.clone(), r.bound.clone()),
        ],
        _ => vec![negate_row(r)],
    }
}

/// Disjoint DNF `¬r1 ∨ (r1 ∧ ¬r2) ∨ …` of the complement of one cell.
pub fn complement_cell(cell: &ConvexCell) -> Vec<ConvexCell> {
    let dim = cell.dim();
    let mut out = Vec::new();
    let mut prefix: Vec<LinearConstraint> = Vec::new();
    for r in cell.constraints() {
        for n in row_negations(r) {
            let mut rows = prefix.clone();
            rows.push(n);
            let c = ConvexCell::from_rows(dim, rows);
            if !c.is_empty() {
                out.push(c);
            }
        }
        prefix.push(r.clone());
    }
    out
}

/// DNF `¬r1 ∨ ¬r2 ∨ …` with one row per term; terms may overlap.
fn complement_rows(cell: &ConvexCell) -> Vec<ConvexCell> {
    let dim = cell.dim();
    cell.constraints()
        .iter()
        .flat_map(row_negations)
        .map(|n| ConvexCell::from_rows(dim, vec![n]))
        .filter(|c| !c.is_empty())
        .collect()
}

pub fn complement(s: &SemilinearSet) -> SemilinearSet {
    let dim = s.dim();
    let s = s.pruned();
    // one-row terms keep a lone cell's complement small; across several
    // cells the disjoint form prunes the product far better
    let split: fn(&ConvexCell) -> Vec<ConvexCell> =
        if s.cells().len() == 1 { complement_rows } else { complement_cell };
    let mut acc = SemilinearSet::universe(dim);
    for cell in s.cells() {
        let comp = SemilinearSet::new(dim, split(cell)).expect("same dimension");
        acc = intersect(&acc, &comp).expect("same dimension");
        if acc.cells().is_empty() {
            break;
        }
    }
    acc
}

pub fn difference(s: &SemilinearSet, t: &SemilinearSet) -> Result<SemilinearSet> {
    check_dim(s.dim(), t.dim())?;
    let mut acc = s.pruned();
    for cell in t.cells() {
        if acc.cells().is_empty() {
            break;
        }
        let comp = SemilinearSet::new(s.dim(), complement_cell(cell))?;
        acc = intersect(&acc, &comp)?;
    }
    Ok(acc)
}

pub fn subset(s: &SemilinearSet, t: &SemilinearSet) -> Result<bool> {
    Ok(is_empty(&difference(s, t)?))
}

pub fn equal(s: &SemilinearSet, t: &SemilinearSet) -> Result<bool> {
    Ok(subset(s, t)? && subset(t, s)?)
}

pub fn closure(s: &SemilinearSet) -> SemilinearSet {
    let cells = s.cells().iter().filter_map(ConvexCell::closure).collect();
    SemilinearSet::new(s.dim(), cells).expect("same dimension").pruned()
}

/// Directions entering some cell from `x`, as a union of cones.
fn entry_directions(s: &SemilinearSet, x: &QVector) -> SemilinearSet {
    let cones = s.cells().iter().filter_map(|c| c.entry_cone(x)).collect();
    SemilinearSet::new(s.dim(), cones).expect("same dimension")
}

/// `x ∈ S`, or some segment `(x, x + λd]` with small `λ` lies in one cell.
pub fn vcl_member(s: &SemilinearSet, x: &QVector) -> Result<bool> {
    if contains(s, x)? {
        return Ok(true);
    }
    Ok(!is_empty(&entry_directions(s, x)))
}

/// Directional core: `x ∈ S` and every direction enters some cell.
pub fn cor_member(s: &SemilinearSet, x: &QVector) -> Result<bool> {
    if !contains(s, x)? {
        return Ok(false);
    }
    Ok(is_empty(&complement(&entry_directions(s, x))))
}

/// Interior as `complement(closure(complement(S)))`.
pub fn cor_set(s: &SemilinearSet) -> SemilinearSet {
    complement(&closure(&complement(s)))
}

/// Affine chart `x = base + D z` of `aff(S)` for nonempty `S`.
struct AffineChart {
    base: QVector,
    directions: Vec<QVector>,
    left: Vec<QVector>,
    normals: Vec<QVector>,
}

impl AffineChart {
    fn of(s: &SemilinearSet) -> Result<AffineChart> {
        let dim = s.dim();
        let mut points = Vec::new();
        let mut dirs = Vec::new();
        for g in s.cells().iter().filter_map(ConvexCell::closure_generators) {
            points.extend(g.vertices);
            dirs.extend(g.rays);
            dirs.extend(g.lineality);
        }
        if points.is_empty() {
            return Err(CvxError::InvalidInput("relative core of an empty set".into()));
        }
        let (base, hull_dirs) = affine_hull(&points)?;
        dirs.extend(hull_dirs);
        let directions = span_basis(&dirs, dim);
        let left = left_inverse(&directions, dim);
        let normals = crate::exactlin::nullspace(&directions, dim);
        Ok(AffineChart {
            base,
            directions,
            left,
            normals,
        })
    }

    fn k(&self) -> usize {
        self.directions.len()
    }

    fn on_plane(&self, x: &QVector) -> bool {
        let d = x.sub(&self.base);
        self.normals.iter().all(|n| n.dot(&d).is_zero())
    }

    fn to_chart(&self, x: &QVector) -> QVector {
        let d = x.sub(&self.base);
        self.left.iter().map(|l| l.dot(&d)).collect()
    }

    fn pull_set(&self, s: &SemilinearSet) -> SemilinearSet {
        let k = self.k();
        let cells = s
            .cells()
            .iter()
            .map(|c| {
                let rows = c
                    .constraints()
                    .iter()
                    .map(|r| r.substitute(&self.base, &self.directions))
                    .collect();
                ConvexCell::from_rows(k, rows)
            })
            .collect();
        SemilinearSet::new(k, cells).expect("chart dimension")
    }

    fn push_set(&self, s: &SemilinearSet) -> SemilinearSet {
        let dim = self.base.dim();
        let plane: Vec<LinearConstraint> = self
            .normals
            .iter()
            .map(|n| LinearConstraint::eq(n.clone(), n.dot(&self.base)))
            .collect();
        let cells = s
            .cells()
            .iter()
            .map(|c| {
                let mut rows = plane.clone();
                for r in c.constraints() {
                    // a·z with z = L(x − base)
                    let mut coefs = QVector::zeros(dim);
                    for (a, l) in r.coefficients.iter().zip(&self.left) {
                        coefs = coefs.axpy(a, l);
                    }
                    let bound = &r.bound + coefs.dot(&self.base);
                    rows.push(LinearConstraint::new(coefs, r.relation, bound));
                }
                ConvexCell::from_rows(dim, rows)
            })
            .collect();
        SemilinearSet::new(dim, cells).expect("ambient dimension")
    }
}

/// Core computed inside the affine hull; a singleton is its own relative core.
pub fn icr_member(s: &SemilinearSet, x: &QVector) -> Result<bool> {
    check_dim(s.dim(), x.dim())?;
    let chart = AffineChart::of(s)?;
    if !contains(s, x)? || !chart.on_plane(x) {
        return Ok(false);
    }
    if chart.k() == 0 {
        return Ok(true);
    }
    cor_member(&chart.pull_set(s), &chart.to_chart(x))
}

pub fn ri_set(s: &SemilinearSet) -> Result<SemilinearSet> {
    let chart = AffineChart::of(s)?;
    if chart.k() == 0 {
        return Ok(s.pruned());
    }
    let inner = cor_set(&chart.pull_set(s));
    Ok(chart.push_set(&inner).pruned())
}

pub fn algebraic_boundary(s: &SemilinearSet) -> SemilinearSet {
    difference(&closure(s), &cor_set(s)).expect("same dimension")
}

/// `{x + y : x ∈ S, y ∈ T}`.
pub fn minkowski_sum(s: &SemilinearSet, t: &SemilinearSet) -> Result<SemilinearSet> {
    check_dim(s.dim(), t.dim())?;
    let dim = s.dim();
    let s = s.pruned();
    let t = t.pruned();
    let mut cells = Vec::new();
    for a in s.cells() {
        for b in t.cells() {
            let rows = minkowski_sum_rows(dim, a.constraints(), b.constraints())?;
            cells.push(ConvexCell::from_rows(dim, rows));
        }
    }
    Ok(SemilinearSet::new(dim, cells)?.pruned())
}

/// Midpoint convexity `½S ⊕ ½S ⊆ S`, checked pairwise over cells.
pub fn is_convex(s: &SemilinearSet) -> bool {
    let s = s.pruned();
    let half = ratio(1, 2);
    let halves: Vec<ConvexCell> = s
        .cells()
        .iter()
        .map(|c| c.scale(&half).expect("nonzero factor"))
        .collect();
    for i in 0..halves.len() {
        for j in i + 1..halves.len() {
            let rows = minkowski_sum_rows(s.dim(), halves[i].constraints(), halves[j].constraints())
                .expect("same dimension");
            let mid = SemilinearSet::from_cell(ConvexCell::from_rows(s.dim(), rows));
            if !subset(&mid, &s).expect("same dimension") {
                return false;
            }
        }
    }
    true
}

pub fn is_basis_member(s: &SemilinearSet) -> bool {
    is_convex(s) && equal(&cor_set(s), s).expect("same dimension")
}

/// Core membership through the coordinate directions `±e_i` only; valid for
/// convex cells.
pub fn cor_via_basis(cell: &ConvexCell, a: &QVector) -> Result<bool> {
    check_dim(cell.dim(), a.dim())?;
    if !cell.contains(a) {
        return Err(CvxError::InvalidInput("point is not in the cell".into()));
    }
    let n = cell.dim();
    for i in 0..n {
        for sign in [1, -1] {
            let e = QVector::unit(n, i).scale(&int(sign));
            // rows in δ: (c·e) δ rel b − c·a, and δ > 0
            let mut rows: Vec<LinearConstraint> = cell
                .constraints()
                .iter()
                .map(|c| {
                    LinearConstraint::new(
                        QVector::new(vec![c.coefficients.dot(&e)]),
                        c.relation,
                        &c.bound - c.coefficients.dot(a),
                    )
                })
                .collect();
            rows.push(LinearConstraint::gt(QVector::from_ints(&[1]), int(0)));
            if ConvexCell::from_rows(1, rows).is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Largest admissible step `δ ≤ 1` along `±e_i` from `a`, used in reports.
pub fn basis_step(cell: &ConvexCell, a: &QVector, i: usize, positive: bool) -> Option<Rational> {
    let n = cell.dim();
    let e = if positive {
        QVector::unit(n, i)
    } else {
        QVector::unit(n, i).neg()
    };
    let mut best = int(1);
    for c in cell.constraints() {
        let rate = c.coefficients.dot(&e);
        let room = &c.bound - c.coefficients.dot(a);
        match c.relation {
            Relation::Eq => {
                if !rate.is_zero() {
                    return None;
                }
            }
            _ => {
                if rate.is_positive() {
                    let step = &room / &rate;
                    let step = if c.relation == Relation::Lt { step / int(2) } else { step };
                    if !step.is_positive() {
                        return None;
                    }
                    if step < best {
                        best = step;
                    }
                }
            }
        }
    }
    Some(best)
}

/// Generators whose hull is `closure(S)` for convex `S`; `None` when `S` is empty.
pub fn closure_generators(s: &SemilinearSet) -> Option<crate::polyrep::GeneratorRep> {
    let mut out: Option<crate::polyrep::GeneratorRep> = None;
    for g in s.cells().iter().filter_map(ConvexCell::closure_generators) {
        match out.as_mut() {
            None => out = Some(g),
            Some(acc) => {
                acc.vertices.extend(g.vertices);
                acc.rays.extend(g.rays);
                acc.lineality.extend(g.lineality);
            }
        }
    }
    if let Some(acc) = out.as_mut() {
        for list in [&mut acc.vertices, &mut acc.rays, &mut acc.lineality] {
            list.sort();
            list.dedup();
        }
    }
    out
}

/// A point of `S`, if any.
pub fn witness(s: &SemilinearSet) -> Option<QVector> {
    s.cells().iter().find_map(ConvexCell::witness)
}
