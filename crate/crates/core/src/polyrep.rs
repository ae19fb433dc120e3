//! Closed polyhedra in constraint (H) and generator (V) form.
//!
//! Conversions use the double description method on the homogenized cone;
//! projections use Fourier–Motzkin elimination, which also handles strict
//! rows (a combined row is strict when either parent is).

use num_traits::{Signed, Zero};

use crate::error::{check_dim, CvxError, Result};
use crate::exactlin::{int, QVector, Rational};
use crate::lpexact::{strict_feasible_dim, LinearConstraint, Relation, StrictOutcome};

/// `conv(vertices) + cone(rays) + span(lineality)`. No vertices means the empty set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorRep {
    pub dim: usize,
    pub vertices: Vec<QVector>,
    pub rays: Vec<QVector>,
    pub lineality: Vec<QVector>,
}

impl GeneratorRep {
    pub fn new(
        dim: usize,
        vertices: Vec<QVector>,
        rays: Vec<QVector>,
        lineality: Vec<QVector>,
    ) -> Result<Self> {
        for v in vertices.iter().chain(&rays).chain(&lineality) {
            check_dim(dim, v.dim())?;
        }
        if rays.iter().chain(&lineality).any(QVector::is_zero) {
            return Err(CvxError::InvalidInput("zero ray or lineality vector".into()));
        }
        Ok(GeneratorRep {
            dim,
            vertices,
            rays,
            lineality,
        })
    }

    pub fn empty(dim: usize) -> Self {
        GeneratorRep {
            dim,
            vertices: vec![],
            rays: vec![],
            lineality: vec![],
        }
    }

    pub fn polytope(dim: usize, vertices: Vec<QVector>) -> Result<Self> {
        Self::new(dim, vertices, vec![], vec![])
    }

    /// Cone generated by `rays` (apex at the origin).
    pub fn cone(dim: usize, rays: Vec<QVector>) -> Result<Self> {
        let rays = rays.into_iter().filter(|r| !r.is_zero()).collect();
        Self::new(dim, vec![QVector::zeros(dim)], rays, vec![])
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    /// Membership by LP over convex weights.
    pub fn contains(&self, x: &QVector) -> bool {
        if self.is_empty() {
            return false;
        }
        let nv = self.vertices.len();
        let nr = self.rays.len();
        let nl = self.lineality.len();
        let total = nv + nr + nl;
        let mut rows = Vec::new();
        for i in 0..self.dim {
            let mut c = Vec::with_capacity(total);
            c.extend(self.vertices.iter().map(|v| v[i].clone()));
            c.extend(self.rays.iter().map(|r| r[i].clone()));
            c.extend(self.lineality.iter().map(|l| l[i].clone()));
            rows.push(LinearConstraint::eq(QVector::new(c), x[i].clone()));
        }
        for j in 0..nv + nr {
            rows.push(LinearConstraint::ge(QVector::unit(total, j), int(0)));
        }
        let mut w = QVector::zeros(total).into_inner();
        for x in w.iter_mut().take(nv) {
            *x = int(1);
        }
        rows.push(LinearConstraint::eq(QVector::new(w), int(1)));
        !strict_feasible_dim(total, &rows)
            .expect("well-formed membership system")
            .is_empty()
    }
}

/// Closed polyhedron `{x : rows}` with relations `≤`/`=`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HRep {
    pub dim: usize,
    pub constraints: Vec<LinearConstraint>,
}

impl HRep {
    pub fn new(dim: usize, constraints: Vec<LinearConstraint>) -> Result<Self> {
        for c in &constraints {
            check_dim(dim, c.dim())?;
            if c.relation == Relation::Lt {
                return Err(CvxError::InvalidInput(
                    "closed polyhedron cannot carry strict rows".into(),
                ));
            }
        }
        Ok(HRep { dim, constraints })
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.constraints.iter().all(|c| c.satisfied_by(x))
    }

    pub fn is_empty(&self) -> bool {
        strict_feasible_dim(self.dim, &self.constraints)
            .expect("dimension-checked rows")
            .is_empty()
    }

    /// Box `lo ≤ x_i ≤ hi` in every coordinate.
    pub fn cube(dim: usize, lo: Rational, hi: Rational) -> Self {
        let mut rows = Vec::new();
        for i in 0..dim {
            rows.push(LinearConstraint::le(QVector::unit(dim, i), hi.clone()));
            rows.push(LinearConstraint::ge(QVector::unit(dim, i), lo.clone()));
        }
        HRep {
            dim,
            constraints: rows,
        }
    }
}

// -- double description ----------------------------------------------------

#[derive(Clone)]
struct DdRay {
    v: QVector,
    zeros: Vec<bool>,
}

/// Extreme rays and a lineality basis of `{y : a·y ≥ 0 (a ∈ ineqs), e·y = 0 (e ∈ eqs)}`.
pub fn cone_generators(
    dim: usize,
    ineqs: &[QVector],
    eqs: &[QVector],
) -> (Vec<QVector>, Vec<QVector>) {
    let mut halfspaces: Vec<QVector> = Vec::with_capacity(ineqs.len() + 2 * eqs.len());
    for e in eqs {
        halfspaces.push(e.clone());
        halfspaces.push(e.neg());
    }
    halfspaces.extend(ineqs.iter().cloned());
    let total = halfspaces.len();

    let mut lineality: Vec<QVector> = (0..dim).map(|i| QVector::unit(dim, i)).collect();
    let mut rays: Vec<DdRay> = Vec::new();

    for (hi, h) in halfspaces.iter().enumerate() {
        if h.is_zero() {
            for r in rays.iter_mut() {
                r.zeros[hi] = true;
            }
            continue;
        }
        if let Some(li) = lineality.iter().position(|l| !h.dot(l).is_zero()) {
            let mut l = lineality.remove(li);
            let mut hl = h.dot(&l);
            if hl.is_negative() {
                l = l.neg();
                hl = -hl;
            }
            for other in lineality.iter_mut() {
                let f = h.dot(other) / &hl;
                if !f.is_zero() {
                    *other = other.axpy(&-f, &l);
                }
            }
            for r in rays.iter_mut() {
                let f = h.dot(&r.v) / &hl;
                if !f.is_zero() {
                    r.v = r.v.axpy(&-f, &l).primitive();
                }
                r.zeros[hi] = true;
            }
            let mut zeros = vec![false; total];
            for z in zeros.iter_mut().take(hi) {
                *z = true;
            }
            rays.push(DdRay {
                v: l.primitive(),
                zeros,
            });
            dedup_rays(&mut rays);
            continue;
        }

        let vals: Vec<Rational> = rays.iter().map(|r| h.dot(&r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next: Vec<DdRay> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if !vals[i].is_negative() {
                let mut r = r.clone();
                if vals[i].is_zero() {
                    r.zeros[hi] = true;
                }
                next.push(r);
            }
        }
        for &p in &pos {
            for &n in &neg {
                let common: Vec<bool> = rays[p]
                    .zeros
                    .iter()
                    .zip(&rays[n].zeros)
                    .map(|(a, b)| *a && *b)
                    .collect();
                let adjacent = !rays.iter().enumerate().any(|(k, r)| {
                    k != p
                        && k != n
                        && common
                            .iter()
                            .zip(&r.zeros)
                            .all(|(c, z)| !*c || *z)
                });
                if !adjacent {
                    continue;
                }
                let v = rays[n]
                    .v
                    .scale(&vals[p])
                    .axpy(&-vals[n].clone(), &rays[p].v)
                    .primitive();
                if v.is_zero() {
                    continue;
                }
                let mut zeros = common;
                zeros[hi] = true;
                next.push(DdRay { v, zeros });
            }
        }
        rays = next;
        dedup_rays(&mut rays);
    }
    let mut out: Vec<QVector> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    (out, lineality)
}

fn dedup_rays(rays: &mut Vec<DdRay>) {
    let mut seen: Vec<QVector> = Vec::new();
    rays.retain(|r| {
        if r.v.is_zero() || seen.contains(&r.v) {
            false
        } else {
            seen.push(r.v.clone());
            true
        }
    });
}

/// Generator form of a closed polyhedron.
pub fn h_to_v(h: &HRep) -> GeneratorRep {
    let n = h.dim;
    let mut ineqs = Vec::new();
    let mut eqs = Vec::new();
    for c in &h.constraints {
        // b·s − a·x ≥ 0
        let mut v = c.coefficients.neg();
        v.push(c.bound.clone());
        if c.relation == Relation::Eq {
            eqs.push(v);
        } else {
            ineqs.push(v);
        }
    }
    ineqs.push(QVector::unit(n + 1, n));
    let (rays, lin) = cone_generators(n + 1, &ineqs, &eqs);
    let mut vertices = Vec::new();
    let mut out_rays = Vec::new();
    for r in rays {
        let s = r[n].clone();
        let x = r.slice(0..n);
        if s.is_positive() {
            vertices.push(x.scale(&s.recip()));
        } else if !x.is_zero() {
            out_rays.push(x.primitive());
        }
    }
    if vertices.is_empty() {
        return GeneratorRep::empty(n);
    }
    vertices.sort();
    vertices.dedup();
    out_rays.sort();
    out_rays.dedup();
    let lineality = lin.into_iter().map(|l| l.slice(0..n)).filter(|l| !l.is_zero()).collect();
    GeneratorRep {
        dim: n,
        vertices,
        rays: out_rays,
        lineality,
    }
}

/// Constraint form of `conv(V) + cone(R) + span(L)`.
pub fn v_to_h(g: &GeneratorRep) -> HRep {
    let n = g.dim;
    if g.is_empty() {
        return HRep {
            dim: n,
            constraints: vec![LinearConstraint::le(QVector::zeros(n), int(-1))],
        };
    }
    // Valid inequalities a·x ≤ β form the cone in (a, β).
    let mut ineqs = Vec::new();
    for v in &g.vertices {
        let mut row = v.neg();
        row.push(int(1));
        ineqs.push(row);
    }
    for r in &g.rays {
        let mut row = r.neg();
        row.push(int(0));
        ineqs.push(row);
    }
    let eqs: Vec<QVector> = g
        .lineality
        .iter()
        .map(|l| {
            let mut row = l.clone();
            row.push(int(0));
            row
        })
        .collect();
    let (rays, lin) = cone_generators(n + 1, &ineqs, &eqs);
    let mut rows = Vec::new();
    for l in lin {
        let a = l.slice(0..n);
        if !a.is_zero() {
            rows.push(LinearConstraint::eq(a, l[n].clone()));
        }
    }
    for r in rays {
        let a = r.slice(0..n);
        if !a.is_zero() {
            rows.push(LinearConstraint::le(a, r[n].clone()));
        }
    }
    HRep {
        dim: n,
        constraints: rows,
    }
}

/// `{d : A d ≤ 0, E d = 0}` for a nonempty polyhedron.
pub fn recession_cone(h: &HRep) -> Result<GeneratorRep> {
    if h.is_empty() {
        return Err(CvxError::InvalidInput(
            "recession cone of an empty polyhedron".into(),
        ));
    }
    let n = h.dim;
    let mut ineqs = Vec::new();
    let mut eqs = Vec::new();
    for c in &h.constraints {
        if c.relation == Relation::Eq {
            eqs.push(c.coefficients.clone());
        } else {
            ineqs.push(c.coefficients.neg());
        }
    }
    let (rays, lineality) = cone_generators(n, &ineqs, &eqs);
    Ok(GeneratorRep {
        dim: n,
        vertices: vec![QVector::zeros(n)],
        rays,
        lineality,
    })
}

/// Closure of the cone generated by a nonempty polyhedron: `cone(V) + rec(P)`,
/// reduced to extreme rays.
pub fn closed_conic_hull(g: &GeneratorRep) -> Result<GeneratorRep> {
    if g.is_empty() {
        return Err(CvxError::InvalidInput("conic hull of an empty set".into()));
    }
    let n = g.dim;
    let rays: Vec<QVector> = g
        .vertices
        .iter()
        .filter(|v| !v.is_zero())
        .chain(&g.rays)
        .cloned()
        .collect();
    let raw = GeneratorRep {
        dim: n,
        vertices: vec![QVector::zeros(n)],
        rays,
        lineality: g.lineality.clone(),
    };
    Ok(h_to_v(&v_to_h(&raw)))
}

pub fn minkowski_sum_gen(a: &GeneratorRep, b: &GeneratorRep) -> Result<GeneratorRep> {
    check_dim(a.dim, b.dim)?;
    if a.is_empty() || b.is_empty() {
        return Ok(GeneratorRep::empty(a.dim));
    }
    let mut vertices: Vec<QVector> = a
        .vertices
        .iter()
        .flat_map(|u| b.vertices.iter().map(move |v| u.add(v)))
        .collect();
    vertices.sort();
    vertices.dedup();
    Ok(GeneratorRep {
        dim: a.dim,
        vertices,
        rays: a.rays.iter().chain(&b.rays).cloned().collect(),
        lineality: a.lineality.iter().chain(&b.lineality).cloned().collect(),
    })
}

pub fn minkowski_sum_h(a: &HRep, b: &HRep) -> Result<HRep> {
    check_dim(a.dim, b.dim)?;
    Ok(v_to_h(&minkowski_sum_gen(&h_to_v(a), &h_to_v(b))?))
}

/// `{x + y : x ∈ A, y ∈ B}` for semi-closed systems, via projection of the
/// lifted system in `(z, y)` with `z − y ∈ A`, `y ∈ B`.
pub fn minkowski_sum_rows(
    dim: usize,
    a: &[LinearConstraint],
    b: &[LinearConstraint],
) -> Result<Vec<LinearConstraint>> {
    for c in a.iter().chain(b) {
        check_dim(dim, c.dim())?;
    }
    let mut lifted = Vec::with_capacity(a.len() + b.len());
    for c in a {
        let mut coefs = c.coefficients.clone();
        for x in c.coefficients.iter() {
            coefs.push(-x.clone());
        }
        lifted.push(LinearConstraint::new(coefs, c.relation, c.bound.clone()));
    }
    for c in b {
        lifted.push(c.lift(2 * dim, dim));
    }
    Ok(project_onto_prefix(2 * dim, lifted, dim))
}

/// Eliminates variables `keep..total` and returns rows over the first `keep` variables.
pub fn project_onto_prefix(
    total: usize,
    mut rows: Vec<LinearConstraint>,
    keep: usize,
) -> Vec<LinearConstraint> {
    let mut dim = total;
    while dim > keep {
        rows = fm_eliminate(dim, &rows, dim - 1);
        dim -= 1;
    }
    rows
}

/// Removes variable `var`; the result lives in dimension `dim − 1`.
pub fn fm_eliminate(dim: usize, rows: &[LinearConstraint], var: usize) -> Vec<LinearConstraint> {
    let drop_col = |c: &LinearConstraint| -> LinearConstraint {
        let coefs: QVector = c
            .coefficients
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != var)
            .map(|(_, x)| x.clone())
            .collect();
        LinearConstraint::new(coefs, c.relation, c.bound.clone())
    };

    // Substitute through an equality when one mentions the variable.
    if let Some(ei) = rows
        .iter()
        .position(|c| c.relation == Relation::Eq && !c.coefficients[var].is_zero())
    {
        let e = &rows[ei];
        let pivot = e.coefficients[var].clone();
        let out: Vec<LinearConstraint> = rows
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != ei)
            .map(|(_, c)| {
                let f = &c.coefficients[var] / &pivot;
                if f.is_zero() {
                    drop_col(c)
                } else {
                    let coefs = c.coefficients.axpy(&-f.clone(), &e.coefficients);
                    let bound = &c.bound - &f * &e.bound;
                    drop_col(&LinearConstraint::new(coefs, c.relation, bound))
                }
            })
            .collect();
        return simplify_rows(dim - 1, out);
    }

    let mut upper = Vec::new();
    let mut lower = Vec::new();
    let mut out = Vec::new();
    for c in rows {
        let a = &c.coefficients[var];
        if a.is_zero() {
            out.push(drop_col(c));
        } else if c.relation == Relation::Eq {
            // unreachable: equalities touching var were substituted above
            unreachable!("equality survived substitution");
        } else if a.is_positive() {
            upper.push(c);
        } else {
            lower.push(c);
        }
    }
    for p in &upper {
        for n in &lower {
            let cp = p.coefficients[var].clone();
            let cn = -n.coefficients[var].clone();
            let coefs = p.coefficients.scale(&cn).axpy(&cp, &n.coefficients);
            let bound = &p.bound * &cn + &n.bound * &cp;
            let rel = if p.is_strict() || n.is_strict() {
                Relation::Lt
            } else {
                Relation::Le
            };
            out.push(drop_col(&LinearConstraint::new(coefs, rel, bound)));
        }
    }
    let out = simplify_rows(dim - 1, out);
    if out.len() > 4 * dim + 8 {
        remove_redundant(dim - 1, out)
    } else {
        out
    }
}

/// Scales rows to primitive integer form, drops tautologies, keeps the
/// tightest of parallel inequalities and collapses contradictions to a single
/// `0 ≤ −1` row.
pub fn simplify_rows(dim: usize, rows: Vec<LinearConstraint>) -> Vec<LinearConstraint> {
    let contradiction = || vec![LinearConstraint::le(QVector::zeros(dim), int(-1))];
    let mut out: Vec<LinearConstraint> = Vec::new();
    for c in rows {
        if c.coefficients.is_zero() {
            let ok = match c.relation {
                Relation::Le => !c.bound.is_negative(),
                Relation::Eq => c.bound.is_zero(),
                Relation::Lt => c.bound.is_positive(),
            };
            if ok {
                continue;
            }
            return contradiction();
        }
        let prim = c.coefficients.primitive();
        // positive factor mapping c.coefficients onto prim
        let idx = prim.iter().position(|x| !x.is_zero()).unwrap();
        let f = &prim[idx] / &c.coefficients[idx];
        let mut coefs = prim;
        let mut bound = &c.bound * &f;
        if c.relation == Relation::Eq && coefs[idx].is_negative() {
            coefs = coefs.neg();
            bound = -bound;
        }
        let c = LinearConstraint::new(coefs, c.relation, bound);
        if c.relation == Relation::Eq {
            if !out.contains(&c) {
                out.push(c);
            }
            continue;
        }
        if let Some(existing) = out
            .iter_mut()
            .find(|e| e.relation != Relation::Eq && e.coefficients == c.coefficients)
        {
            let tighter = c.bound < existing.bound
                || (c.bound == existing.bound && c.is_strict());
            if tighter {
                *existing = c;
            }
        } else {
            out.push(c);
        }
    }
    out.sort();
    out
}

/// Drops rows implied by the others, keeping the represented set unchanged.
pub fn remove_redundant(dim: usize, rows: Vec<LinearConstraint>) -> Vec<LinearConstraint> {
    if strict_feasible_dim(dim, &rows)
        .expect("dimension-checked rows")
        .is_empty()
    {
        return vec![LinearConstraint::le(QVector::zeros(dim), int(-1))];
    }
    let mut keep: Vec<LinearConstraint> = rows;
    let mut i = 0;
    while i < keep.len() {
        if keep[i].relation == Relation::Eq {
            i += 1;
            continue;
        }
        let mut others: Vec<LinearConstraint> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, c)| c.clone())
            .collect();
        others.push(negate_row(&keep[i]));
        let implied = matches!(
            strict_feasible_dim(dim, &others).expect("dimension-checked rows"),
            StrictOutcome::Empty { .. }
        );
        if implied {
            keep.remove(i);
        } else {
            i += 1;
        }
    }
    keep
}

/// Complement of a single inequality row (`≤` ↦ `>`, `<` ↦ `≥`).
pub fn negate_row(c: &LinearConstraint) -> LinearConstraint {
    match c.relation {
        Relation::Le => LinearConstraint::gt(c.coefficients.clone(), c.bound.clone()),
        Relation::Lt => LinearConstraint::ge(c.coefficients.clone(), c.bound.clone()),
        Relation::Eq => panic!("negation of an equality is a disjunction"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::ratio;

    fn v(xs: &[i64]) -> QVector {
        QVector::from_ints(xs)
    }

    fn same_set(a: &HRep, b: &HRep) -> bool {
        let ga = h_to_v(a);
        let gb = h_to_v(b);
        gen_inside(&ga, b) && gen_inside(&gb, a)
    }

    /// Every generator of `g` respects `h`: vertices satisfy it, rays and
    /// lineality are recession directions.
    fn gen_inside(g: &GeneratorRep, h: &HRep) -> bool {
        g.vertices.iter().all(|x| h.contains(x))
            && h.constraints.iter().all(|c| {
                g.rays.iter().all(|r| {
                    let d = c.coefficients.dot(r);
                    if c.relation == Relation::Eq {
                        d.is_zero()
                    } else {
                        !d.is_positive()
                    }
                }) && g.lineality.iter().all(|l| c.coefficients.dot(l).is_zero())
            })
    }

    #[test]
    fn unit_square_vertices() {
        let g = h_to_v(&HRep::cube(2, int(0), int(1)));
        assert_eq!(g.vertices.len(), 4);
        assert!(g.rays.is_empty() && g.lineality.is_empty());
    }

    #[test]
    fn half_line() {
        let h = HRep::new(1, vec![LinearConstraint::ge(v(&[1]), int(0))]).unwrap();
        let g = h_to_v(&h);
        assert_eq!(g.vertices, vec![v(&[0])]);
        assert_eq!(g.rays, vec![v(&[1])]);
    }

    #[test]
    fn corner_region_matches_active_set_enumeration() {
        let h = HRep::new(
            2,
            vec![
                LinearConstraint::ge(v(&[1, 1]), int(1)),
                LinearConstraint::ge(v(&[1, 0]), int(0)),
                LinearConstraint::ge(v(&[0, 1]), int(0)),
            ],
        )
        .unwrap();
        let g = h_to_v(&h);
        assert_eq!(g.vertices, vec![v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(g.rays, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn line_has_lineality() {
        let h = HRep::new(2, vec![LinearConstraint::eq(v(&[0, 1]), int(2))]).unwrap();
        let g = h_to_v(&h);
        assert_eq!(g.vertices.len(), 1);
        assert_eq!(g.vertices[0][1], int(2));
        assert_eq!(g.lineality.len(), 1);
    }

    #[test]
    fn empty_polyhedron() {
        let h = HRep::new(
            1,
            vec![
                LinearConstraint::le(v(&[1]), int(0)),
                LinearConstraint::ge(v(&[1]), int(1)),
            ],
        )
        .unwrap();
        assert!(h_to_v(&h).is_empty());
        assert!(recession_cone(&h).is_err());
    }

    #[test]
    fn v_to_h_examples() {
        let seg = GeneratorRep::polytope(2, vec![v(&[0, 0]), v(&[1, 0])]).unwrap();
        let expect = HRep::new(
            2,
            vec![
                LinearConstraint::eq(v(&[0, 1]), int(0)),
                LinearConstraint::le(v(&[1, 0]), int(1)),
                LinearConstraint::ge(v(&[1, 0]), int(0)),
            ],
        )
        .unwrap();
        assert!(same_set(&v_to_h(&seg), &expect));

        let cone = GeneratorRep::cone(2, vec![v(&[1, 0]), v(&[1, 1])]).unwrap();
        let expect = HRep::new(
            2,
            vec![
                LinearConstraint::ge(v(&[0, 1]), int(0)),
                LinearConstraint::ge(v(&[1, -1]), int(0)),
            ],
        )
        .unwrap();
        assert!(same_set(&v_to_h(&cone), &expect));

        let pt = GeneratorRep::polytope(2, vec![v(&[2, 3])]).unwrap();
        let h = v_to_h(&pt);
        assert!(h.contains(&v(&[2, 3])));
        assert!(!h.contains(&v(&[2, 4])));
        assert_eq!(h_to_v(&h).vertices, vec![v(&[2, 3])]);
    }

    #[test]
    fn recession_examples() {
        let r = recession_cone(&HRep::cube(2, int(0), int(1))).unwrap();
        assert!(r.rays.is_empty() && r.lineality.is_empty());

        let q = HRep::new(
            2,
            vec![
                LinearConstraint::le(v(&[1, 0]), int(0)),
                LinearConstraint::le(v(&[0, 1]), int(0)),
            ],
        )
        .unwrap();
        assert_eq!(recession_cone(&q).unwrap().rays, vec![v(&[-1, 0]), v(&[0, -1])]);

        let wedge = HRep::new(
            2,
            vec![
                LinearConstraint::ge(v(&[-1, 1]), int(0)),
                LinearConstraint::ge(v(&[1, 1]), int(0)),
            ],
        )
        .unwrap();
        assert_eq!(recession_cone(&wedge).unwrap().rays, vec![v(&[-1, 1]), v(&[1, 1])]);
    }

    #[test]
    fn conic_hull_examples() {
        let seg = GeneratorRep::polytope(2, vec![v(&[1, 0]), v(&[1, 1])]).unwrap();
        let c = closed_conic_hull(&seg).unwrap();
        assert_eq!(c.rays, vec![v(&[1, 0]), v(&[1, 1])]);

        let p = GeneratorRep::new(2, vec![v(&[1, 0])], vec![v(&[0, 1])], vec![]).unwrap();
        let c = closed_conic_hull(&p).unwrap();
        assert_eq!(c.rays, vec![v(&[0, 1]), v(&[1, 0])]);
        // (0,1) is not in cone(P) itself: every point of P has first coordinate 1.
        assert!(c.contains(&v(&[0, 1])));

        let z = GeneratorRep::polytope(2, vec![v(&[0, 0])]).unwrap();
        let c = closed_conic_hull(&z).unwrap();
        assert!(c.rays.is_empty() && c.lineality.is_empty());
    }

    #[test]
    fn interval_sums() {
        let unit = vec![
            LinearConstraint::ge(v(&[1]), int(0)),
            LinearConstraint::le(v(&[1]), int(1)),
        ];
        let half_open = vec![
            LinearConstraint::ge(v(&[1]), int(0)),
            LinearConstraint::lt(v(&[1]), int(1)),
        ];
        let s = minkowski_sum_rows(1, &unit, &unit).unwrap();
        assert_eq!(
            s,
            simplify_rows(
                1,
                vec![
                    LinearConstraint::ge(v(&[1]), int(0)),
                    LinearConstraint::le(v(&[1]), int(2))
                ]
            )
        );
        let s = minkowski_sum_rows(1, &half_open, &unit).unwrap();
        assert_eq!(
            s,
            simplify_rows(
                1,
                vec![
                    LinearConstraint::ge(v(&[1]), int(0)),
                    LinearConstraint::lt(v(&[1]), int(2))
                ]
            )
        );
    }

    #[test]
    fn generator_sum_is_concatenation() {
        let a = GeneratorRep::new(2, vec![v(&[1, 0])], vec![v(&[0, 1])], vec![]).unwrap();
        let b = h_to_v(&HRep::cube(2, int(0), int(1)));
        let s = minkowski_sum_gen(&a, &b).unwrap();
        let h = v_to_h(&s);
        for p in [v(&[1, 0]), v(&[2, 1]), v(&[2, 7])] {
            assert!(h.contains(&p));
        }
        assert!(!h.contains(&v(&[1, -1])));
        assert!(!h.contains(&QVector::new(vec![ratio(5, 2), int(3)])));
    }

    #[test]
    fn fm_keeps_strictness() {
        // 0 < x < y < 1  projected on x gives 0 < x < 1
        let rows = vec![
            LinearConstraint::gt(v(&[1, 0]), int(0)),
            LinearConstraint::lt(v(&[1, -1]), int(0)),
            LinearConstraint::lt(v(&[0, 1]), int(1)),
        ];
        let p = fm_eliminate(2, &rows, 1);
        assert_eq!(
            p,
            simplify_rows(
                1,
                vec![
                    LinearConstraint::gt(v(&[1]), int(0)),
                    LinearConstraint::lt(v(&[1]), int(1))
                ]
            )
        );
    }
}
