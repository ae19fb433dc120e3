//! Separation of convex sets and cones, the sandwich construction for
//! piecewise-linear functions, and the translative functional of a closed
//! convex set along a direction.

mod gerstewitz;
mod sandwich;

pub use gerstewitz::*;
pub use sandwich::*;

use num_traits::{Signed, Zero};

use crate::error::{check_dim, CvxError, Result};
use crate::exactlin::{int, QVector, Rational};
use crate::lpexact::{maximize, strict_feasible_dim, LinearConstraint, StrictOutcome};
use crate::polyrep::{v_to_h, GeneratorRep};
use crate::semiset::{
    closure, closure_generators, cor_member, cor_set, equal, intersect, is_convex, witness,
    ConvexCell, SemilinearSet,
};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SeparationKind {
    Proper,
    Strong { gap: Rational },
    Cone,
}

/// `⟨f,a⟩ ≤ α ≤ ⟨f,b⟩`; `witnesses` are interior points where the
/// inequality is strict (first set first).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeparationCertificate {
    pub functional: QVector,
    pub threshold: Rational,
    pub kind: SeparationKind,
    pub witnesses: Vec<QVector>,
}

/// `{x : |⟨f,x⟩| < radius}`: an absorbing set with `(A + V) ∩ B = ∅`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbsorbingSlab {
    pub functional: QVector,
    pub radius: Rational,
}

impl AbsorbingSlab {
    pub fn to_cell(&self) -> ConvexCell {
        ConvexCell::new(
            self.functional.dim(),
            vec![
                LinearConstraint::lt(self.functional.clone(), self.radius.clone()),
                LinearConstraint::gt(self.functional.clone(), -self.radius.clone()),
            ],
        )
        .expect("slab rows share the functional's dimension")
    }
}

fn require_convex(s: &SemilinearSet, name: &str) -> Result<GeneratorRep> {
    let Some(g) = closure_generators(s) else {
        return Err(CvxError::Hypothesis(format!("{name} is empty")));
    };
    if !is_convex(s) {
        return Err(CvxError::Hypothesis(format!("{name} is not convex")));
    }
    Ok(g)
}

/// Rows on `(f, α)` stating `⟨f,·⟩ − α` has sign `side` on the hull of `g`
/// (`side = −1`: `≤ 0`; `side = 1`: `≥ 0`).
fn side_rows(g: &GeneratorRep, side: i64, with_alpha: bool, extra: usize) -> Vec<LinearConstraint> {
    let n = g.dim;
    let width = n + usize::from(with_alpha) + extra;
    let mut rows = Vec::new();
    let lift = |v: &QVector, alpha: Option<Rational>| {
        let mut c = v.clone().into_inner();
        if with_alpha {
            c.push(alpha.unwrap_or_else(Rational::zero));
        }
        c.resize(width, Rational::zero());
        QVector::new(c)
    };
    for v in &g.vertices {
        let row = lift(v, Some(int(-1)));
        rows.push(if side < 0 {
            LinearConstraint::le(row, int(0))
        } else {
            LinearConstraint::ge(row, int(0))
        });
    }
    for r in &g.rays {
        let row = lift(r, None);
        rows.push(if side < 0 {
            LinearConstraint::le(row, int(0))
        } else {
            LinearConstraint::ge(row, int(0))
        });
    }
    for l in &g.lineality {
        rows.push(LinearConstraint::eq(lift(l, None), int(0)));
    }
    rows
}

/// Proper separation with strictness on `cor(A)`.
pub fn proper_separate(a: &SemilinearSet, b: &SemilinearSet) -> Result<SeparationCertificate> {
    check_dim(a.dim(), b.dim())?;
    let n = a.dim();
    let ga = require_convex(a, "A")?;
    let gb = require_convex(b, "B")?;
    if !intersect(a, b)?.cells().is_empty() {
        return Err(CvxError::Hypothesis("A and B are not disjoint".into()));
    }
    let Some(w) = witness(&cor_set(a)) else {
        return Err(CvxError::Hypothesis(
            "hypothesis violated: cor(A) is empty".into(),
        ));
    };
    let mut rows = side_rows(&ga, -1, true, 0);
    rows.extend(side_rows(&gb, 1, true, 0));
    // α − ⟨f,w⟩ = 1
    let mut norm = w.neg().into_inner();
    norm.push(int(1));
    rows.push(LinearConstraint::eq(QVector::new(norm), int(1)));
    let point = feasible_point(n + 1, &rows, "proper separation")?;
    Ok(SeparationCertificate {
        functional: point.slice(0..n),
        threshold: point[n].clone(),
        kind: SeparationKind::Proper,
        witnesses: vec![w],
    })
}

fn feasible_point(dim: usize, rows: &[LinearConstraint], what: &str) -> Result<QVector> {
    match strict_feasible_dim(dim, rows)? {
        StrictOutcome::Witness { point, .. } => Ok(point),
        StrictOutcome::Empty { .. } => Err(CvxError::Internal(format!(
            "{what} system is infeasible although its hypotheses hold"
        ))),
    }
}

/// Exact check of a proper-separation certificate.
pub fn validate_proper(
    a: &SemilinearSet,
    b: &SemilinearSet,
    cert: &SeparationCertificate,
) -> bool {
    let (Some(ga), Some(gb)) = (closure_generators(a), closure_generators(b)) else {
        return false;
    };
    let f = &cert.functional;
    let alpha = &cert.threshold;
    let Some(w) = cert.witnesses.first() else {
        return false;
    };
    cert.kind == SeparationKind::Proper
        && hull_on_side(&ga, f, alpha, -1)
        && hull_on_side(&gb, f, alpha, 1)
        && f.dot(w) < *alpha
        && cor_member(a, w).unwrap_or(false)
}

fn hull_on_side(g: &GeneratorRep, f: &QVector, alpha: &Rational, side: i64) -> bool {
    let vert_ok = g.vertices.iter().all(|v| {
        let x = f.dot(v);
        if side < 0 {
            x <= *alpha
        } else {
            x >= *alpha
        }
    });
    let ray_ok = g.rays.iter().all(|r| {
        let x = f.dot(r);
        if side < 0 {
            !x.is_positive()
        } else {
            !x.is_negative()
        }
    });
    vert_ok && ray_ok && g.lineality.iter().all(|l| f.dot(l).is_zero())
}

/// Strong separation of a closed convex set from a polytope. Returns the
/// certificate and the absorbing slab `V`.
pub fn strong_separate(
    a: &SemilinearSet,
    b: &GeneratorRep,
) -> Result<(SeparationCertificate, AbsorbingSlab)> {
    check_dim(a.dim(), b.dim)?;
    let n = a.dim();
    let ga = require_convex(a, "A")?;
    if !equal(&closure(a), a)? {
        return Err(CvxError::Hypothesis("A is not vectorially closed".into()));
    }
    if b.is_empty() {
        return Err(CvxError::Hypothesis("B is empty".into()));
    }
    if !b.is_bounded() {
        return Err(CvxError::Hypothesis("B is not a polytope".into()));
    }
    let b_set = polytope_set(b);
    if !intersect(a, &b_set)?.cells().is_empty() {
        return Err(CvxError::Hypothesis("A and B are not disjoint".into()));
    }
    // variables (f, α, gap): hull(A) ≤ α, hull(B) ≥ α + gap, |f_i| ≤ 1
    let width = n + 2;
    let mut rows = side_rows(&ga, -1, true, 1);
    for v in &b.vertices {
        let mut c = v.clone().into_inner();
        c.push(int(-1));
        c.push(int(-1));
        rows.push(LinearConstraint::ge(QVector::new(c), int(0)));
    }
    for i in 0..n {
        rows.push(LinearConstraint::le(QVector::unit(width, i), int(1)));
        rows.push(LinearConstraint::ge(QVector::unit(width, i), int(-1)));
    }
    let objective = QVector::unit(width, n + 1);
    let (gap, point) = match maximize(&objective, &rows)? {
        Some(Some(best)) => best,
        _ => {
            return Err(CvxError::Internal(
                "strong separation LP must be feasible and bounded".into(),
            ))
        }
    };
    if !gap.is_positive() {
        return Err(CvxError::Internal(
            "disjoint closed set and polytope must have a positive gap".into(),
        ));
    }
    let functional = point.slice(0..n);
    let cert = SeparationCertificate {
        functional: functional.clone(),
        threshold: point[n].clone(),
        kind: SeparationKind::Strong { gap: gap.clone() },
        witnesses: vec![],
    };
    let slab = AbsorbingSlab {
        functional,
        radius: gap / int(2),
    };
    Ok((cert, slab))
}

pub(crate) fn polytope_set(b: &GeneratorRep) -> SemilinearSet {
    let h = v_to_h(b);
    SemilinearSet::from_cell(
        ConvexCell::new(b.dim, h.constraints).expect("generator dimension"),
    )
}

/// Exact check of a strong-separation certificate and of `(A + V) ∩ B = ∅`.
pub fn validate_strong(
    a: &SemilinearSet,
    b: &GeneratorRep,
    cert: &SeparationCertificate,
    slab: &AbsorbingSlab,
) -> bool {
    let SeparationKind::Strong { gap } = &cert.kind else {
        return false;
    };
    let Some(ga) = closure_generators(a) else {
        return false;
    };
    let f = &cert.functional;
    let alpha = &cert.threshold;
    let upper = alpha + gap;
    if !gap.is_positive()
        || !hull_on_side(&ga, f, alpha, -1)
        || !b.vertices.iter().all(|v| f.dot(v) >= upper)
    {
        return false;
    }
    // {(x, v) : x ∈ A, v ∈ V, x + v ∈ B} is empty
    let n = a.dim();
    let b_cell = polytope_set(b).into_cells().remove(0);
    let slab_cell = slab.to_cell();
    a.cells().iter().all(|cell| {
        let mut rows: Vec<LinearConstraint> =
            cell.constraints().iter().map(|c| c.lift(2 * n, 0)).collect();
        rows.extend(slab_cell.constraints().iter().map(|c| c.lift(2 * n, n)));
        for c in b_cell.constraints() {
            rows.push(LinearConstraint::new(
                c.coefficients.concat(&c.coefficients),
                c.relation,
                c.bound.clone(),
            ));
        }
        ConvexCell::from_rows(2 * n, rows).is_empty()
    })
}

fn require_cone(s: &SemilinearSet, name: &str) -> Result<(GeneratorRep, QVector)> {
    let g = require_convex(s, name)?;
    if g.vertices.iter().any(|v| !v.is_zero()) {
        return Err(CvxError::Hypothesis(format!("{name} is not a cone")));
    }
    let Some(w) = witness(&cor_set(s)) else {
        return Err(CvxError::Hypothesis(format!("{name} is not solid")));
    };
    Ok((g, w))
}

/// `⟨f,m⟩ ≤ 0 ≤ ⟨f,k⟩`, strict at interior witnesses of both cones.
pub fn separate_cones(m: &SemilinearSet, k: &SemilinearSet) -> Result<SeparationCertificate> {
    check_dim(m.dim(), k.dim())?;
    let n = m.dim();
    let (gm, wm) = require_cone(m, "M")?;
    let (gk, wk) = require_cone(k, "K")?;
    if !intersect(m, &cor_set(k))?.cells().is_empty() {
        return Err(CvxError::Hypothesis(
            "M ∩ cor(K) is nonempty".into(),
        ));
    }
    let mut rows = side_rows(&gm, -1, false, 0);
    rows.extend(side_rows(&gk, 1, false, 0));
    rows.push(LinearConstraint::le(wm.clone(), int(-1)));
    rows.push(LinearConstraint::ge(wk.clone(), int(1)));
    let f = feasible_point(n, &rows, "cone separation")?;
    Ok(SeparationCertificate {
        functional: f,
        threshold: Rational::zero(),
        kind: SeparationKind::Cone,
        witnesses: vec![wm, wk],
    })
}

pub fn validate_cones(m: &SemilinearSet, k: &SemilinearSet, cert: &SeparationCertificate) -> bool {
    let (Some(gm), Some(gk)) = (closure_generators(m), closure_generators(k)) else {
        return false;
    };
    let f = &cert.functional;
    let zero = Rational::zero();
    let [wm, wk] = cert.witnesses.as_slice() else {
        return false;
    };
    cert.kind == SeparationKind::Cone
        && cert.threshold.is_zero()
        && hull_on_side(&gm, f, &zero, -1)
        && hull_on_side(&gk, f, &zero, 1)
        && f.dot(wm).is_negative()
        && f.dot(wk).is_positive()
        && cor_member(m, wm).unwrap_or(false)
        && cor_member(k, wk).unwrap_or(false)
}
