use num_traits::Zero;

use crate::error::{check_dim, CvxError, Result};
use crate::exactlin::{int, solve_linear, LinearSolution, QMatrix, QVector, Rational};
use crate::lpexact::{strict_feasible_dim, LinearConstraint, StrictOutcome};
use crate::semiset::ConvexCell;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PwlMode {
    /// Pointwise maximum of affine pieces (convex).
    Max,
    /// Pointwise minimum of affine pieces (concave).
    Min,
}

/// `max` or `min` over pieces of `⟨c,x⟩ + d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PwlFunction {
    pub dim: usize,
    pub pieces: Vec<(QVector, Rational)>,
    pub mode: PwlMode,
}

impl PwlFunction {
    pub fn new(dim: usize, pieces: Vec<(QVector, Rational)>, mode: PwlMode) -> Result<Self> {
        if pieces.is_empty() {
            return Err(CvxError::InvalidInput("piecewise function without pieces".into()));
        }
        for (c, _) in &pieces {
            check_dim(dim, c.dim())?;
        }
        Ok(PwlFunction { dim, pieces, mode })
    }

    pub fn affine(c: QVector, d: Rational, mode: PwlMode) -> Self {
        PwlFunction {
            dim: c.dim(),
            pieces: vec![(c, d)],
            mode,
        }
    }

    pub fn eval(&self, x: &QVector) -> Rational {
        let vals = self.pieces.iter().map(|(c, d)| c.dot(x) + d);
        match self.mode {
            PwlMode::Max => vals.max(),
            PwlMode::Min => vals.min(),
        }
        .expect("nonempty pieces")
    }

    /// Points where `dim + 1` pieces tie at the active value.
    pub fn breakpoints(&self) -> Vec<QVector> {
        let n = self.dim;
        let p = self.pieces.len();
        let mut out = Vec::new();
        if p < n + 1 {
            return out;
        }
        let mut idx: Vec<usize> = (0..=n).collect();
        loop {
            let base = &self.pieces[idx[0]];
            let rows: Vec<QVector> = idx[1..]
                .iter()
                .map(|&j| self.pieces[j].0.sub(&base.0))
                .collect();
            let rhs: QVector = idx[1..]
                .iter()
                .map(|&j| &base.1 - &self.pieces[j].1)
                .collect();
            if n == 0 {
                break;
            }
            let m = QMatrix::new(rows, n).expect("square system");
            if let Ok(LinearSolution::Solution(x)) = solve_linear(&m, &rhs) {
                let v = base.0.dot(&x) + &base.1;
                if self.eval(&x) == v && !out.contains(&x) {
                    out.push(x);
                }
            }
            // next combination
            let mut i = n + 1;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if idx[i] < p - (n + 1 - i) {
                    idx[i] += 1;
                    for j in i + 1..=n {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
        out
    }
}

/// `{x : lhs(x) > rhs(x)}` for affine `lhs − rhs = ⟨c,x⟩ + d`.
fn positive_part(c: QVector, d: Rational) -> LinearConstraint {
    // ⟨c,x⟩ + d > 0  ⟺  ⟨−c,x⟩ < d
    LinearConstraint::lt(c.neg(), d)
}

/// A point where `g > f`, if any.
pub fn sandwich_premise_violation(f: &PwlFunction, g: &PwlFunction) -> Result<Option<QVector>> {
    check_dim(f.dim, g.dim)?;
    if f.mode != PwlMode::Max || g.mode != PwlMode::Min {
        return Err(CvxError::InvalidInput(
            "sandwich needs a max-of-affine f and a min-of-affine g".into(),
        ));
    }
    // g(x) > f(x)  ⟺  every g-piece exceeds every f-piece
    let mut rows = Vec::new();
    for (cg, dg) in &g.pieces {
        for (cf, df) in &f.pieces {
            rows.push(positive_part(cg.sub(cf), dg - df));
        }
    }
    Ok(strict_feasible_dim(f.dim, &rows)?.witness().cloned())
}

/// Affine `⟨l,x⟩ + α` with `g ≤ l + α ≤ f`.
pub fn sandwich(f: &PwlFunction, g: &PwlFunction) -> Result<(QVector, Rational)> {
    if let Some(x) = sandwich_premise_violation(f, g)? {
        return Err(CvxError::Hypothesis(format!(
            "premise violated: g exceeds f at {x}"
        )));
    }
    let n = f.dim;
    let p = f.pieces.len();
    let q = g.pieces.len();
    // variables (λ ∈ R^p, μ ∈ R^q, α)
    let width = p + q + 1;
    let mut rows = Vec::new();
    for i in 0..n {
        let mut c = vec![Rational::zero(); width];
        for (j, (cf, _)) in f.pieces.iter().enumerate() {
            c[j] = cf[i].clone();
        }
        for (j, (cg, _)) in g.pieces.iter().enumerate() {
            c[p + j] = -cg[i].clone();
        }
        rows.push(LinearConstraint::eq(QVector::new(c), int(0)));
    }
    let mut sum_l = vec![Rational::zero(); width];
    let mut sum_m = vec![Rational::zero(); width];
    let mut upper = vec![Rational::zero(); width];
    let mut lower = vec![Rational::zero(); width];
    for (j, (_, d)) in f.pieces.iter().enumerate() {
        sum_l[j] = int(1);
        upper[j] = -d.clone();
    }
    for (j, (_, d)) in g.pieces.iter().enumerate() {
        sum_m[p + j] = int(1);
        lower[p + j] = d.clone();
    }
    upper[p + q] = int(1);
    lower[p + q] = int(-1);
    rows.push(LinearConstraint::eq(QVector::new(sum_l), int(1)));
    rows.push(LinearConstraint::eq(QVector::new(sum_m), int(1)));
    // α ≤ Σ λ d_f  and  Σ μ d_g ≤ α
    rows.push(LinearConstraint::le(QVector::new(upper), int(0)));
    rows.push(LinearConstraint::le(QVector::new(lower), int(0)));
    for j in 0..p + q {
        rows.push(LinearConstraint::ge(QVector::unit(width, j), int(0)));
    }
    let point = match strict_feasible_dim(width, &rows)? {
        StrictOutcome::Witness { point, .. } => point,
        StrictOutcome::Empty { .. } => {
            return Err(CvxError::Internal(
                "sandwich system infeasible although g ≤ f".into(),
            ))
        }
    };
    let mut l = QVector::zeros(n);
    for (j, (cf, _)) in f.pieces.iter().enumerate() {
        l = l.axpy(&point[j], cf);
    }
    Ok((l, point[p + q].clone()))
}

/// Exact global check `g ≤ l + α ≤ f`, plus pointwise checks at the
/// breakpoints of both functions and at `samples`.
pub fn validate_sandwich(
    f: &PwlFunction,
    g: &PwlFunction,
    l: &QVector,
    alpha: &Rational,
    samples: &[QVector],
) -> bool {
    let n = f.dim;
    if l.dim() != n || g.dim != n {
        return false;
    }
    // l + α > f somewhere: above every f-piece at once
    let rows = f
        .pieces
        .iter()
        .map(|(c, d)| positive_part(l.sub(c), alpha - d))
        .collect();
    let above_f = !ConvexCell::from_rows(n, rows).is_empty();
    // g > l + α somewhere: every g-piece above at once
    let rows = g
        .pieces
        .iter()
        .map(|(c, d)| positive_part(c.sub(l), d - alpha))
        .collect();
    let below_g = !ConvexCell::from_rows(n, rows).is_empty();
    if above_f || below_g {
        return false;
    }
    let h = |x: &QVector| l.dot(x) + alpha;
    f.breakpoints()
        .iter()
        .chain(g.breakpoints().iter())
        .chain(samples)
        .all(|x| g.eval(x) <= h(x) && h(x) <= f.eval(x))
}
