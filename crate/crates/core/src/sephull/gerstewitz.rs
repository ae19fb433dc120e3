use num_traits::{Signed, Zero};

use crate::error::{check_dim, CvxError, Result};
use crate::exactlin::{QVector, Rational};
use crate::lpexact::{solve, LinearConstraint, LpOutcome, LpProblem, Relation};
use crate::polyrep::{project_onto_prefix, HRep};
use crate::semiset::{
    algebraic_boundary, cor_set, difference, intersect, witness, ConvexCell,
    SemilinearSet,
};

/// `g(x) = min{t : x − t·k ∈ cbar}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GerstewitzFunctional {
    pub cbar: HRep,
    pub k: QVector,
    /// `−k` is a recession direction of `cbar`.
    pub recession_ok: bool,
    /// Translates `cbar + ℝk` cover the space.
    pub covers: bool,
}

/// Checks the premises exactly and returns the functional.
pub fn gerstewitz_build(cbar: &HRep, k: &QVector) -> Result<GerstewitzFunctional> {
    check_dim(cbar.dim, k.dim())?;
    if k.is_zero() {
        return Err(CvxError::Hypothesis("k must be nonzero".into()));
    }
    if cbar.is_empty() {
        return Err(CvxError::Hypothesis("cbar is empty".into()));
    }
    let recession_ok = cbar.constraints.iter().all(|c| {
        let d = c.coefficients.dot(k);
        match c.relation {
            Relation::Eq => d.is_zero(),
            _ => !d.is_negative(),
        }
    });
    if !recession_ok {
        return Err(CvxError::Hypothesis(
            "premise violated: −k is not a recession direction of cbar".into(),
        ));
    }
    let covers = project_onto_prefix(cbar.dim + 1, shifted_rows(cbar, k), cbar.dim).is_empty();
    if !covers {
        return Err(CvxError::Hypothesis(
            "premise violated: translates of cbar along k do not cover the space".into(),
        ));
    }
    if cbar.constraints.iter().all(|c| c.coefficients.dot(k).is_zero()) {
        return Err(CvxError::Hypothesis(
            "premise violated: cbar contains every line along k, so g is unbounded below".into(),
        ));
    }
    Ok(GerstewitzFunctional {
        cbar: cbar.clone(),
        k: k.clone(),
        recession_ok,
        covers,
    })
}

/// Rows of `{(x, t) : x − t·k ∈ cbar}`.
fn shifted_rows(cbar: &HRep, k: &QVector) -> Vec<LinearConstraint> {
    cbar.constraints
        .iter()
        .map(|c| {
            let mut coefs = c.coefficients.clone();
            coefs.push(-c.coefficients.dot(k));
            LinearConstraint::new(coefs, c.relation, c.bound.clone())
        })
        .collect()
}

pub fn gerstewitz_eval(g: &GerstewitzFunctional, x: &QVector) -> Result<Rational> {
    check_dim(g.cbar.dim, x.dim())?;
    if !(g.recession_ok && g.covers) {
        return Err(CvxError::InvalidInput(
            "functional was not built with verified premises".into(),
        ));
    }
    // rows in t: −(a·k) t ≤ b − a·x
    let rows = g
        .cbar
        .constraints
        .iter()
        .map(|c| {
            LinearConstraint::new(
                QVector::new(vec![-c.coefficients.dot(&g.k)]),
                c.relation,
                &c.bound - c.coefficients.dot(x),
            )
        })
        .collect();
    match solve(&LpProblem::new(QVector::from_ints(&[1]), rows))? {
        LpOutcome::Optimal { value, .. } => Ok(value),
        _ => Err(CvxError::Internal(
            "translative functional is finite under its premises".into(),
        )),
    }
}

impl GerstewitzFunctional {
    /// `{x : g(x) < level}` (strict) or `{x : g(x) ≤ level}`.
    pub fn sublevel(&self, level: &Rational, strict: bool) -> SemilinearSet {
        let n = self.cbar.dim;
        let mut rows = shifted_rows(&self.cbar, &self.k);
        let t = QVector::unit(n + 1, n);
        rows.push(if strict {
            LinearConstraint::lt(t, level.clone())
        } else {
            LinearConstraint::le(t, level.clone())
        });
        let projected = project_onto_prefix(n + 1, rows, n);
        SemilinearSet::from_cell(ConvexCell::new(n, projected).expect("projected rows"))
    }

    pub fn cbar_set(&self) -> SemilinearSet {
        SemilinearSet::from_cell(
            ConvexCell::new(self.cbar.dim, self.cbar.constraints.clone()).expect("cbar rows"),
        )
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClaimCheck {
    pub claim: &'static str,
    pub holds: bool,
    /// A point of the violation set when the claim fails.
    pub witness: Option<QVector>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sep3Report {
    pub claims: Vec<ClaimCheck>,
}

impl Sep3Report {
    pub fn all_hold(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }
}

fn claim(name: &'static str, violation: &SemilinearSet) -> ClaimCheck {
    let w = witness(violation);
    ClaimCheck {
        claim: name,
        holds: w.is_none(),
        witness: w,
    }
}

/// Cells of `{z : Σ x_blocks − (Σ t_cols)·k ∉ cbar}` in dimension `total`.
fn outside_cbar_rows(
    cbar: &HRep,
    k: &QVector,
    total: usize,
    x_blocks: &[usize],
    t_cols: &[usize],
) -> Vec<ConvexCell> {
    let mut cells = Vec::new();
    for c in &cbar.constraints {
        let mut coefs = QVector::zeros(total).into_inner();
        for &off in x_blocks {
            for (i, a) in c.coefficients.iter().enumerate() {
                coefs[off + i] += a;
            }
        }
        let ak = c.coefficients.dot(k);
        for &tc in t_cols {
            coefs[tc] -= &ak;
        }
        let coefs = QVector::new(coefs);
        match c.relation {
            Relation::Eq => {
                cells.push(ConvexCell::from_rows(total, vec![LinearConstraint::lt(coefs.clone(), c.bound.clone())]));
                cells.push(ConvexCell::from_rows(total, vec![LinearConstraint::gt(coefs, c.bound.clone())]));
            }
            _ => cells.push(ConvexCell::from_rows(total, vec![LinearConstraint::gt(coefs, c.bound.clone())])),
        }
    }
    cells
}

fn inside_cbar_rows(cbar: &HRep, k: &QVector, total: usize, x_off: usize, t_col: usize) -> Vec<LinearConstraint> {
    cbar.constraints
        .iter()
        .map(|c| {
            let mut coefs = QVector::zeros(total).into_inner();
            for (i, a) in c.coefficients.iter().enumerate() {
                coefs[x_off + i] = a.clone();
            }
            coefs[t_col] = -c.coefficients.dot(k);
            LinearConstraint::new(QVector::new(coefs), c.relation, c.bound.clone())
        })
        .collect()
}

fn with_rows(cells: Vec<ConvexCell>, rows: &[LinearConstraint]) -> SemilinearSet {
    let dim = cells.first().map(ConvexCell::dim).unwrap_or(0);
    let cells = cells
        .into_iter()
        .map(|c| {
            let mut r = c.constraints().to_vec();
            r.extend(rows.iter().cloned());
            ConvexCell::new(dim, r).expect("uniform dimension")
        })
        .collect();
    SemilinearSet::new(dim, cells).expect("uniform dimension")
}

/// Verifies the separation claims for `A` against `C = cor(cbar)` and,
/// optionally, monotonicity along a closed cone `b_cone` and subadditivity,
/// each by exact emptiness of an encoded violation set.
pub fn sep3_verify(
    g: &GerstewitzFunctional,
    a: &SemilinearSet,
    b_cone: Option<&HRep>,
    subadditivity: bool,
) -> Result<Sep3Report> {
    let n = g.cbar.dim;
    check_dim(n, a.dim())?;
    let zero = Rational::zero();
    let c_open = cor_set(&g.cbar_set());
    let lt0 = g.sublevel(&zero, true);
    let le0 = g.sublevel(&zero, false);
    let mut claims = vec![
        claim("A ∩ C = ∅", &intersect(a, &c_open)?),
        claim("g(A) ≥ 0", &intersect(a, &lt0)?),
        claim("g(cor A) > 0", &intersect(&cor_set(a), &le0)?),
        claim("g(C) < 0", &difference(&c_open, &lt0)?),
    ];
    let boundary = algebraic_boundary(&g.cbar_set());
    let off_zero = crate::semiset::union(&intersect(&boundary, &lt0)?, &difference(&boundary, &le0)?)?;
    claims.push(claim("g(δC) = 0", &off_zero));

    if let Some(b) = b_cone {
        check_dim(n, b.dim)?;
        // (x1, x2, t): x2 − x1 ∈ B, x2 − t k ∈ cbar, x1 − t k ∉ cbar
        let total = 2 * n + 1;
        let mut rows: Vec<LinearConstraint> = b
            .constraints
            .iter()
            .map(|c| {
                let mut coefs = c.coefficients.neg().into_inner();
                coefs.extend(c.coefficients.iter().cloned());
                coefs.push(zero.clone());
                LinearConstraint::new(QVector::new(coefs), c.relation, c.bound.clone())
            })
            .collect();
        rows.extend(inside_cbar_rows(&g.cbar, &g.k, total, n, 2 * n));
        let outside = outside_cbar_rows(&g.cbar, &g.k, total, &[0], &[2 * n]);
        claims.push(claim("B-monotone", &with_rows(outside, &rows)));
    }
    if subadditivity {
        // (x, y, t1, t2): x − t1 k ∈ cbar, y − t2 k ∈ cbar, x + y − (t1 + t2) k ∉ cbar
        let total = 2 * n + 2;
        let mut rows = inside_cbar_rows(&g.cbar, &g.k, total, 0, 2 * n);
        rows.extend(inside_cbar_rows(&g.cbar, &g.k, total, n, 2 * n + 1));
        let outside = outside_cbar_rows(&g.cbar, &g.k, total, &[0, n], &[2 * n, 2 * n + 1]);
        claims.push(claim("subadditive", &with_rows(outside, &rows)));
    }
    Ok(Sep3Report { claims })
}

/// `g(x) ≤ t ⟺ x − t·k ∈ cbar`, checked at one pair.
pub fn sublevel_encoding_agrees(g: &GerstewitzFunctional, x: &QVector, t: &Rational) -> Result<bool> {
    let value = gerstewitz_eval(g, x)?;
    let shifted = x.axpy(&-t.clone(), &g.k);
    Ok((value <= *t) == g.cbar.contains(&shifted))
}
