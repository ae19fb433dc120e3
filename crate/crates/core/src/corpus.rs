//! Seeded instance generators shared by the test suites and the CLI.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlin::{int, ratio, rank_of, QVector, Rational};
use crate::lpexact::{LinearConstraint, LpProblem};
use crate::polyrep::{v_to_h, GeneratorRep};
use crate::semiset::{ConvexCell, SemilinearSet};
use crate::sephull::{PwlFunction, PwlMode};
use crate::vopt::{o_set_membership, vp_certificate_at, ConeBase, Image, OrderingCone, VopInstance};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_vector(rng: &mut ChaCha8Rng, dim: usize, lo: i64, hi: i64) -> QVector {
    QVector::new((0..dim).map(|_| int(rng.gen_range(lo..=hi))).collect())
}

fn nonzero_vector(rng: &mut ChaCha8Rng, dim: usize, r: i64) -> QVector {
    loop {
        let v = small_vector(rng, dim, -r, r);
        if !v.is_zero() {
            return v;
        }
    }
}

fn box_rows(dim: usize, r: i64, strict: bool) -> Vec<LinearConstraint> {
    let mut out = Vec::new();
    for i in 0..dim {
        for s in [1, -1] {
            let c = QVector::unit(dim, i).scale(&int(s));
            out.push(if strict {
                LinearConstraint::lt(c, int(r))
            } else {
                LinearConstraint::le(c, int(r))
            });
        }
    }
    out
}

/// Random rows around an integer center; `margin = false` allows rows
/// through the center and equalities.
fn rows_around(rng: &mut ChaCha8Rng, center: &QVector, count: usize, margin: bool) -> Vec<LinearConstraint> {
    let dim = center.dim();
    (0..count)
        .map(|_| {
            let a = nonzero_vector(rng, dim, 3);
            let ac = a.dot(center);
            let slack = if margin { rng.gen_range(1..=3) } else { rng.gen_range(0..=3) };
            match rng.gen_range(0..10) {
                0 if !margin => LinearConstraint::eq(a, ac),
                1..=4 => LinearConstraint::lt(a, ac + int(slack)),
                _ => LinearConstraint::le(a, ac + int(slack)),
            }
        })
        .collect()
}

/// Union of one to three cells inside `[-3, 3]^dim`.
pub fn semilinear_set(seed: u64, dim: usize) -> SemilinearSet {
    let mut r = rng(seed);
    let ncells = r.gen_range(1..=3);
    let cells = (0..ncells)
        .map(|_| {
            let center = small_vector(&mut r, dim, -2, 2);
            let count = r.gen_range(1..=3);
            let mut rows = rows_around(&mut r, &center, count, false);
            rows.extend(box_rows(dim, 3, r.gen_bool(0.3)));
            ConvexCell::new(dim, rows).expect("uniform dimension")
        })
        .collect();
    SemilinearSet::new(dim, cells).expect("uniform dimension")
}

/// Cell with nonempty core inside `[-3, 3]^dim`.
pub fn solid_cell(seed: u64, dim: usize) -> ConvexCell {
    let mut r = rng(seed);
    let center = small_vector(&mut r, dim, -2, 2);
    let count = r.gen_range(1..=4);
    let mut rows = rows_around(&mut r, &center, count, true);
    rows.extend(box_rows(dim, 3, r.gen_bool(0.5)));
    ConvexCell::new(dim, rows).expect("uniform dimension")
}

/// Generators with `⟨e, g⟩ ≥ 1` for `e = (1, …, 1)`, spanning the space.
fn halfspace_generators(rng: &mut ChaCha8Rng, dim: usize, count: usize) -> Vec<QVector> {
    let e = QVector::new(vec![int(1); dim]);
    loop {
        let mut gens = Vec::with_capacity(count);
        while gens.len() < count {
            let g = small_vector(rng, dim, -1, 3);
            if e.dot(&g) >= int(1) && !gens.contains(&g) {
                gens.push(g);
            }
        }
        if rank_of(&gens, dim) == dim {
            return gens;
        }
    }
}

fn cone_cell(dim: usize, gens: Vec<QVector>) -> ConvexCell {
    let h = v_to_h(&GeneratorRep::cone(dim, gens).expect("generator dimension"));
    ConvexCell::new(dim, h.constraints).expect("cone rows")
}

/// Closed solid pointed cone.
pub fn solid_cone(seed: u64, dim: usize) -> SemilinearSet {
    let mut r = rng(seed);
    let count = r.gen_range(dim..=dim + 2);
    SemilinearSet::from_cell(cone_cell(dim, halfspace_generators(&mut r, dim, count)))
}

/// Disjoint convex `A` with nonempty core and nonempty convex `B`.
pub fn proper_pair(seed: u64) -> (SemilinearSet, SemilinearSet) {
    for attempt in 0.. {
        let mut r = rng(seed.wrapping_mul(1_000_003).wrapping_add(attempt));
        let dim = r.gen_range(1..=3);
        let f = nonzero_vector(&mut r, dim, 2);
        let alpha = int(r.gen_range(-2..=2));
        let a = solid_cell(r.gen(), dim);
        let b = solid_cell(r.gen(), dim);
        let side = if r.gen_bool(0.5) {
            LinearConstraint::lt(f.clone(), alpha.clone())
        } else {
            LinearConstraint::le(f.clone(), alpha.clone())
        };
        let a = a.intersect(&ConvexCell::new(dim, vec![side.clone()]).expect("dim"));
        let b_side = if side.is_strict() {
            LinearConstraint::ge(f, alpha)
        } else {
            LinearConstraint::gt(f, alpha)
        };
        let b = b.intersect(&ConvexCell::new(dim, vec![b_side]).expect("dim"));
        if !a.interior().is_empty() && !b.is_empty() {
            return (SemilinearSet::from_cell(a), SemilinearSet::from_cell(b));
        }
    }
    unreachable!()
}

/// Closed convex `A` and a polytope `B` at distance at least one step apart.
pub fn strong_pair(seed: u64) -> (SemilinearSet, GeneratorRep) {
    for attempt in 0.. {
        let mut r = rng(seed.wrapping_mul(1_000_033).wrapping_add(attempt));
        let dim = r.gen_range(1..=3);
        let f = nonzero_vector(&mut r, dim, 2);
        let alpha = int(r.gen_range(-2..=2));
        let a = solid_cell(r.gen(), dim)
            .closure()
            .expect("solid cell")
            .intersect(&ConvexCell::new(dim, vec![LinearConstraint::le(f.clone(), alpha.clone())]).expect("dim"));
        let nv = r.gen_range(1..=dim + 2);
        let verts: Vec<QVector> = (0..nv)
            .map(|_| small_vector(&mut r, dim, -4, 4))
            .filter(|v| f.dot(v) >= &alpha + int(1))
            .collect();
        if !a.is_empty() && !verts.is_empty() {
            let b = GeneratorRep::polytope(dim, verts).expect("dim");
            return (SemilinearSet::from_cell(a), b);
        }
    }
    unreachable!()
}

/// Solid convex cones `M`, `K` with `M ∩ cor(K) = ∅`.
pub fn cone_pair(seed: u64) -> (SemilinearSet, SemilinearSet) {
    let mut r = rng(seed);
    let dim = r.gen_range(1..=3);
    let kcount = r.gen_range(dim..=dim + 1);
    let k = halfspace_generators(&mut r, dim, kcount);
    let e = QVector::new(vec![int(1); dim]);
    let mcount = r.gen_range(dim..=dim + 1);
    let m = loop {
        let mut m = Vec::new();
        while m.len() < mcount {
            let g = small_vector(&mut r, dim, -3, 1);
            if !g.is_zero() && e.dot(&g) <= int(0) && !m.contains(&g) {
                m.push(g);
            }
        }
        if rank_of(&m, dim) == dim {
            break m;
        }
    };
    (
        SemilinearSet::from_cell(cone_cell(dim, m)),
        SemilinearSet::from_cell(cone_cell(dim, k)),
    )
}

/// Max-affine `f` and min-affine `g` with `g ≤ h ≤ f` for a hidden affine `h`.
pub fn pwl_pair(seed: u64) -> (PwlFunction, PwlFunction) {
    let mut r = rng(seed);
    let dim = r.gen_range(1..=2);
    let h = small_vector(&mut r, dim, -2, 2);
    let d = int(r.gen_range(-2..=2));
    let mut fp = vec![(h.clone(), &d + int(r.gen_range(0..=2)))];
    let mut gp = vec![(h, &d - int(r.gen_range(0..=2)))];
    for _ in 0..r.gen_range(0..=3) {
        fp.push((small_vector(&mut r, dim, -3, 3), int(r.gen_range(-3..=3))));
    }
    for _ in 0..r.gen_range(0..=3) {
        gp.push((small_vector(&mut r, dim, -3, 3), int(r.gen_range(-3..=3))));
    }
    fp.shuffle(&mut r);
    gp.shuffle(&mut r);
    (
        PwlFunction::new(dim, fp, PwlMode::Max).expect("dim"),
        PwlFunction::new(dim, gp, PwlMode::Min).expect("dim"),
    )
}

/// LP over random rows intersected with `[-5, 5]^n`, so never unbounded.
pub fn bounded_lp(seed: u64) -> LpProblem {
    let mut r = rng(seed);
    let n = r.gen_range(2..=4);
    let m = r.gen_range(1..=4);
    let mut rows = box_rows(n, 5, false);
    for _ in 0..m {
        let a = nonzero_vector(&mut r, n, 4);
        let b = int(r.gen_range(-6..=8));
        rows.push(if r.gen_range(0..6) == 0 {
            LinearConstraint::eq(a, b)
        } else {
            LinearConstraint::le(a, b)
        });
    }
    rows.shuffle(&mut r);
    LpProblem::new(small_vector(&mut r, n, -4, 4), rows)
}

/// Simplicial `K`, normalized base, and one to twelve image points (or a
/// polytope image) in dimension two to four.
pub fn vop_instance(seed: u64) -> VopInstance {
    let mut r = rng(seed);
    let dim = r.gen_range(2..=4);
    let cone = OrderingCone::new(dim, halfspace_generators(&mut r, dim, dim)).expect("simplicial cone");
    let base = ConeBase::from_cone(&cone).expect("pointed cone");
    let image = if r.gen_range(0..5) == 0 {
        let nv = r.gen_range(2..=5);
        let verts: Vec<QVector> = (0..nv).map(|_| small_vector(&mut r, dim, 0, 4)).collect();
        Image::Polytope(GeneratorRep::polytope(dim, dedup(verts)).expect("dim"))
    } else {
        let count = r.gen_range(1..=12);
        Image::Finite(dedup((0..count).map(|_| small_vector(&mut r, dim, 0, 5)).collect()))
    };
    VopInstance::new(image, cone, Some(base)).expect("valid instance")
}

fn dedup(mut v: Vec<QVector>) -> Vec<QVector> {
    let mut seen = Vec::new();
    v.retain(|x| {
        let fresh = !seen.contains(x);
        if fresh {
            seen.push(x.clone());
        }
        fresh
    });
    v
}

/// Dilation every `O^ss` point of a coarse instance is certified at.
pub fn coarse_eps() -> Rational {
    ratio(1, 8)
}

/// Finite-image instance on which every `O^ss` point has a VP certificate at
/// `ε = 1/8`; candidates failing the check are redrawn.
pub fn coarse_vop_instance(seed: u64) -> VopInstance {
    let eps = coarse_eps();
    for attempt in 0u64.. {
        let inst = vop_instance(seed.wrapping_mul(0x9E37_79B9).wrapping_add(attempt));
        if inst.image.is_polytope() {
            continue;
        }
        let ok = inst.image.generators().iter().all(|y0| {
            let oss = o_set_membership(&inst, y0).map(|o| o.o_ss.is_yes()).unwrap_or(false);
            !oss || matches!(vp_certificate_at(&inst, y0, &eps), Ok(Some(_)))
        });
        if ok {
            return inst;
        }
    }
    unreachable!()
}

/// Pointed cone on one to `dim` generators, often lower-dimensional.
pub fn flat_cone(seed: u64, dim: usize) -> SemilinearSet {
    let mut r = rng(seed);
    let count = r.gen_range(1..=dim);
    let e = QVector::new(vec![int(1); dim]);
    let mut gens = Vec::with_capacity(count);
    while gens.len() < count {
        let g = small_vector(&mut r, dim, -1, 3);
        if e.dot(&g) >= int(1) && !gens.contains(&g) {
            gens.push(g);
        }
    }
    SemilinearSet::from_cell(cone_cell(dim, gens))
}
