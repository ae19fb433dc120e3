use std::cell::OnceCell;

use num_traits::{One, Signed, Zero};

use super::{benson_cones_meet_trivially, dominating_point, Evidence, Image, Verdict, VopInstance};
use crate::error::{CvxError, Result};
use crate::exactlin::{int, QVector, Rational};
use crate::lpexact::{maximize, strict_feasible_dim, LinearConstraint, Relation};
use crate::polyrep::{closed_conic_hull, v_to_h, GeneratorRep};

/// Dilations `ε = 2^-1, …, 2^-depth` are tried.
pub const DEFAULT_DEPTH: u32 = 10;

/// `2^-i` for `i = 1..=depth`.
pub fn dilation_schedule(depth: u32) -> Vec<Rational> {
    let mut out = Vec::with_capacity(depth as usize);
    let mut eps = Rational::one();
    for _ in 0..depth {
        eps /= int(2);
        out.push(eps.clone());
    }
    out
}

/// Vertices of `[-1, 1]^dim`.
pub fn cube_vertices(dim: usize) -> Vec<QVector> {
    (0..1usize << dim)
        .map(|mask| {
            QVector::new(
                (0..dim)
                    .map(|i| if mask >> i & 1 == 1 { int(1) } else { int(-1) })
                    .collect(),
            )
        })
        .collect()
}

/// Verdicts that need the base and the dilation schedule.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SearchVerdicts {
    pub vh: Verdict,
    pub vp: Verdict,
    pub strict: Verdict,
    pub super_eff: Verdict,
    pub strong: Verdict,
}

/// Cone over `B + εU` with `U` the unit `ℓ∞` ball.
struct Dilated {
    eps: Rational,
    rays: Vec<QVector>,
    rows: Vec<LinearConstraint>,
    /// `⟨l, w⟩ ≥ 1` on `B + εU`.
    functional: QVector,
}

fn dilate(inst: &VopInstance, eps: &Rational) -> Result<Option<Dilated>> {
    let n = inst.dim;
    let base = inst.require_base()?;
    let cube = cube_vertices(n);
    let mut w = Vec::new();
    for b in &base.polytope.vertices {
        for u in &cube {
            w.push(b.axpy(eps, u));
        }
    }
    let rows: Vec<LinearConstraint> =
        w.iter().map(|p| LinearConstraint::ge(p.clone(), int(1))).collect();
    let functional = match strict_feasible_dim(n, &rows)?.witness() {
        Some(l) => l.clone(),
        // 0 ∈ B + εU, so the cone is the whole space
        None => return Ok(None),
    };
    let hull = closed_conic_hull(&GeneratorRep::cone(n, w)?)?;
    let rows = v_to_h(&hull).constraints;
    Ok(Some(Dilated {
        eps: eps.clone(),
        rays: hull.rays,
        rows,
        functional,
    }))
}

impl Dilated {
    fn evidence(&self) -> Evidence {
        Evidence::Dilation {
            eps: self.eps.clone(),
            rays: self.rays.clone(),
            functional: self.functional.clone(),
        }
    }
}

/// VP certificate at one dilation: `l > 0` on `B + εU` and no image point
/// `y ≠ y0` with `y0 − y ∈ cone(B + εU)`.
pub fn vp_certificate_at(inst: &VopInstance, y0: &QVector, eps: &Rational) -> Result<Option<Evidence>> {
    inst.require_point(y0)?;
    Ok(match dilate(inst, eps)? {
        Some(dil) if dominating_point(inst, y0, &dil.rows).is_none() => Some(dil.evidence()),
        _ => None,
    })
}

/// Closed convex cone contained in `vcl(cone(y0 − image))`; the pieces cover it.
enum Piece {
    Ray(QVector),
    Cone(Vec<LinearConstraint>),
}

fn difference_cones(inst: &VopInstance, y0: &QVector) -> Result<Vec<Piece>> {
    let n = inst.dim;
    match &inst.image {
        Image::Finite(ps) => {
            let mut dirs: Vec<QVector> = ps.iter().map(|y| y0.sub(y)).collect();
            dirs.sort();
            dirs.dedup();
            Ok(dirs.into_iter().map(Piece::Ray).collect())
        }
        Image::Polytope(g) => {
            let verts = g.vertices.iter().map(|v| y0.sub(v)).collect();
            let hull = closed_conic_hull(&GeneratorRep::polytope(n, verts)?)?;
            Ok(vec![Piece::Cone(v_to_h(&hull).constraints)])
        }
    }
}

/// Rows on the block at `offset` plus `sign` times the block at `other`.
fn on_blocks(
    rows: &[LinearConstraint],
    total: usize,
    offset: usize,
    other: Option<(usize, i64)>,
) -> Vec<LinearConstraint> {
    rows.iter()
        .map(|c| {
            let mut coefs = QVector::zeros(total).into_inner();
            for (i, a) in c.coefficients.iter().enumerate() {
                coefs[offset + i] += a;
                if let Some((o, s)) = other {
                    coefs[o + i] += a * int(s);
                }
            }
            LinearConstraint::new(QVector::new(coefs), c.relation, c.bound.clone())
        })
        .collect()
}

/// `|z_i| ≤ r` (or `< r`) on the block at `offset`.
fn box_rows(total: usize, offset: usize, n: usize, r: &Rational, strict: bool) -> Vec<LinearConstraint> {
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        for s in [1, -1] {
            let c = QVector::unit(total, offset + i).scale(&int(s));
            out.push(if strict {
                LinearConstraint::lt(c, r.clone())
            } else {
                LinearConstraint::le(c, r.clone())
            });
        }
    }
    out
}

/// Largest `|z_i|` over the first `n` variables, or `None` if unbounded.
fn sup_norm(total: usize, n: usize, rows: &[LinearConstraint]) -> Result<Option<Rational>> {
    let mut best = Rational::zero();
    for i in 0..n {
        for s in [1, -1] {
            let obj = QVector::unit(total, i).scale(&int(s));
            match maximize(&obj, rows)? {
                Some(Some((v, _))) => best = best.max(v),
                Some(None) => return Ok(None),
                None => return Err(CvxError::Internal("system contains the origin".into())),
            }
        }
    }
    Ok(Some(best))
}

fn norm_inf(v: &QVector) -> Rational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}

/// Dilations shared by every point of one instance.
pub struct SearchContext<'a> {
    inst: &'a VopInstance,
    depth: u32,
    schedule: Vec<Rational>,
    dilations: Vec<OnceCell<Option<Dilated>>>,
    base_rows: Vec<LinearConstraint>,
}

impl<'a> SearchContext<'a> {
    pub fn new(inst: &'a VopInstance, depth: u32) -> Result<Self> {
        let base_rows = v_to_h(&inst.require_base()?.polytope).constraints;
        Ok(SearchContext {
            inst,
            depth,
            schedule: dilation_schedule(depth),
            dilations: (0..depth).map(|_| OnceCell::new()).collect(),
            base_rows,
        })
    }

    fn dilation(&self, i: usize) -> Result<Option<&Dilated>> {
        if self.dilations[i].get().is_none() {
            let d = dilate(self.inst, &self.schedule[i])?;
            let _ = self.dilations[i].set(d);
        }
        Ok(self.dilations[i].get().expect("just set").as_ref())
    }

    /// `piece ∩ (B + εU°) = ∅`.
    fn misses_dilated_base(&self, piece: &Piece, eps: &Rational) -> Result<bool> {
        let n = self.inst.dim;
        let rows = match piece {
            Piece::Ray(d) => {
                // (t, u): t·d − u ∈ B, t ≥ 0, |u_i| < ε
                let total = n + 1;
                let mut rows: Vec<LinearConstraint> = self
                    .base_rows
                    .iter()
                    .map(|c| {
                        let mut coefs = vec![c.coefficients.dot(d)];
                        coefs.extend(c.coefficients.iter().map(|a| -a.clone()));
                        LinearConstraint::new(QVector::new(coefs), c.relation, c.bound.clone())
                    })
                    .collect();
                rows.push(LinearConstraint::ge(QVector::unit(total, 0), int(0)));
                rows.extend(box_rows(total, 1, n, eps, true));
                (total, rows)
            }
            Piece::Cone(p) => {
                // (x, u): x ∈ D, x − u ∈ B, |u_i| < ε
                let total = 2 * n;
                let mut rows = on_blocks(p, total, 0, None);
                rows.extend(on_blocks(&self.base_rows, total, 0, Some((n, -1))));
                rows.extend(box_rows(total, n, n, eps, true));
                (total, rows)
            }
        };
        Ok(strict_feasible_dim(rows.0, &rows.1)?.is_empty())
    }

    /// `piece ∩ C_ε = {0}`, equivalently `piece ∩ (U + C_ε)` is bounded.
    fn meets_trivially(&self, piece: &Piece, dil: &Dilated) -> Result<bool> {
        match piece {
            Piece::Ray(d) => Ok(d.is_zero() || !dil.rows.iter().all(|r| r.satisfied_by(d))),
            Piece::Cone(p) => {
                let mut rows = p.clone();
                rows.extend(dil.rows.iter().cloned());
                rows.push(LinearConstraint::le(dil.functional.clone(), int(1)));
                match maximize(&dil.functional, &rows)? {
                    Some(Some((v, _))) => Ok(v.is_zero()),
                    _ => Err(CvxError::Internal("bounded slice of a cone".into())),
                }
            }
        }
    }

    /// `sup ‖d‖∞` over `d ∈ piece ∩ (K + U)`, or `None` if unbounded.
    fn super_constant(&self, piece: &Piece) -> Result<Option<Rational>> {
        let n = self.inst.dim;
        let k_rows = &self.inst.cone.hrep.constraints;
        match piece {
            Piece::Ray(d) if d.is_zero() => Ok(Some(Rational::zero())),
            Piece::Ray(d) => {
                // dist∞(d, K) over (k, s); the bound is ‖d‖∞ / dist
                let total = n + 1;
                let mut rows = on_blocks(k_rows, total, 0, None);
                for i in 0..n {
                    let e = QVector::unit(total, i);
                    let s = QVector::unit(total, n);
                    rows.push(LinearConstraint::le(e.neg().sub(&s), -d[i].clone()));
                    rows.push(LinearConstraint::le(e.sub(&s), d[i].clone()));
                }
                match maximize(&QVector::unit(total, n).neg(), &rows)? {
                    Some(Some((v, _))) if !v.is_zero() => Ok(Some(norm_inf(d) / -v)),
                    Some(Some(_)) => Ok(None),
                    _ => Err(CvxError::Internal("distance to a cone is finite".into())),
                }
            }
            Piece::Cone(p) => {
                let total = 2 * n;
                let mut rows = on_blocks(p, total, 0, None);
                rows.extend(on_blocks(k_rows, total, n, None));
                rows.extend(on_blocks(&box_rows(n, 0, n, &int(1), false), total, 0, Some((n, -1))));
                sup_norm(total, n, &rows)
            }
        }
    }

    /// VH, VP, strict, super and strong efficiency at `y0`.
    pub fn classify(&self, y0: &QVector) -> Result<SearchVerdicts> {
        let inst = self.inst;
        inst.require_point(y0)?;
        let unknown = Verdict::Unknown { depth: self.depth };
        let refuted = |why| {
            if inst.image.is_polytope() {
                Verdict::No(Evidence::Implied(why))
            } else {
                unknown.clone()
            }
        };
        if !benson_cones_meet_trivially(inst, y0)? {
            return Ok(SearchVerdicts {
                vh: Verdict::No(Evidence::Implied("BeV refuted")),
                vp: Verdict::No(Evidence::Implied("VH refuted")),
                strict: refuted("VP refuted"),
                super_eff: refuted("VP refuted"),
                strong: refuted("VP refuted"),
            });
        }
        let pieces = difference_cones(inst, y0)?;

        let (mut vp, mut vh, mut strong) = (None, None, None);
        for i in 0..self.schedule.len() {
            let Some(dil) = self.dilation(i)? else {
                continue;
            };
            if dominating_point(inst, y0, &dil.rows).is_some() {
                continue;
            }
            let interior = inst.cone.generators.iter().all(|g| {
                dil.rows
                    .iter()
                    .all(|r| r.relation != Relation::Eq && r.coefficients.dot(g) < r.bound)
            });
            if interior && vh.is_none() {
                vh = Some(Verdict::Yes(dil.evidence()));
            }
            vp.get_or_insert_with(|| Verdict::Yes(dil.evidence()));
            if strong.is_none() {
                let mut ok = true;
                for p in &pieces {
                    if !self.meets_trivially(p, dil)? {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    strong = Some(Verdict::Yes(dil.evidence()));
                }
            }
            if vh.is_some() && strong.is_some() {
                break;
            }
        }

        let mut strict = None;
        'eps: for eps in &self.schedule {
            for p in &pieces {
                if !self.misses_dilated_base(p, eps)? {
                    continue 'eps;
                }
            }
            strict = Some(Verdict::Yes(Evidence::Neighborhood(eps.clone())));
            break;
        }

        // V = εU° is met by U = δU° with δ = ε·2^-j, 2^j ≥ sup ‖d‖∞ over D ∩ (K + U)
        let mut bound = Some(Rational::zero());
        for p in &pieces {
            bound = match (bound, self.super_constant(p)?) {
                (Some(a), Some(b)) => Some(a.max(b)),
                _ => None,
            };
        }
        let super_eff = bound.map(|m| {
            let mut shrink = Rational::one();
            while shrink.recip() < m {
                shrink /= int(2);
            }
            let pairs = self.schedule.iter().map(|e| (e.clone(), e * &shrink)).collect();
            Verdict::Yes(Evidence::Schedule(pairs))
        });

        let settle = |found: Option<Verdict>| found.unwrap_or_else(|| unknown.clone());
        Ok(SearchVerdicts {
            vh: settle(vh),
            vp: settle(vp),
            strict: settle(strict),
            super_eff: settle(super_eff),
            strong: settle(strong),
        })
    }
}

/// VH, VP, strict, super and strong efficiency over the dilation schedule.
pub fn classify_proper_search(inst: &VopInstance, y0: &QVector, depth: u32) -> Result<SearchVerdicts> {
    SearchContext::new(inst, depth)?.classify(y0)
}
