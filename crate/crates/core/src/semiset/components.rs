//! Maximal convex subsets among unions of faces of the hyperplane
//! arrangement spanned by the set's own constraint rows.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};

use super::ops::{equal, is_convex};
use super::{ConvexCell, SemilinearSet};
use crate::error::{CvxError, Result};
use crate::exactlin::{ratio, QVector, Rational};
use crate::lpexact::{LinearConstraint, Relation};
use crate::polyrep::{v_to_h, GeneratorRep};

pub const DEFAULT_ROW_CAP: usize = 24;
const MAX_DIM: usize = 3;
const STATE_CAP: usize = 100_000;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DecompositionResult {
    /// Each component is convex; canonical order.
    pub components: Vec<SemilinearSet>,
    pub maximal: Vec<bool>,
}

pub fn components(s: &SemilinearSet) -> Result<DecompositionResult> {
    components_with_cap(s, DEFAULT_ROW_CAP)
}

pub fn components_with_cap(s: &SemilinearSet, cap: usize) -> Result<DecompositionResult> {
    let rows: usize = s.cells().iter().map(|c| c.constraints().len()).sum();
    if s.dim() > MAX_DIM || rows > cap {
        return Err(CvxError::DecompositionCap {
            found: rows,
            cap,
            dim: s.dim(),
        });
    }
    let s = s.pruned();
    if s.cells().is_empty() {
        return Ok(DecompositionResult {
            components: vec![],
            maximal: vec![],
        });
    }
    if is_convex(&s) {
        return Ok(DecompositionResult {
            components: vec![s],
            maximal: vec![true],
        });
    }
    let arrangement = Arrangement::build(&s);
    let mut search = Search::new(&arrangement);
    let found = search.run()?;
    let mut comps: Vec<SemilinearSet> = found
        .iter()
        .map(|u| arrangement.to_set(u))
        .collect();
    comps.sort_by(|a, b| a.cells().cmp(b.cells()));
    comps.dedup();
    let maximal = vec![true; comps.len()];
    Ok(DecompositionResult {
        components: comps,
        maximal,
    })
}

/// `(a, b)` with `a` primitive and its first nonzero entry positive.
fn hyperplane_key(c: &LinearConstraint) -> Option<(QVector, Rational)> {
    if c.coefficients.is_zero() {
        return None;
    }
    let p = c.coefficients.primitive();
    let idx = p.iter().position(|x| !x.is_zero())?;
    let mut f = &p[idx] / &c.coefficients[idx];
    let mut a = p;
    if a[idx].is_negative() {
        a = a.neg();
        f = -f;
    }
    Some((a, &c.bound * &f))
}

struct Face {
    signs: Vec<i8>,
    cell: ConvexCell,
    witness: QVector,
    inside: bool,
}

struct Arrangement {
    dim: usize,
    planes: Vec<(QVector, Rational)>,
    faces: Vec<Face>,
    by_signs: HashMap<Vec<i8>, usize>,
}

fn sign_row(plane: &(QVector, Rational), sign: i8) -> LinearConstraint {
    let (a, b) = plane;
    match sign {
        -1 => LinearConstraint::lt(a.clone(), b.clone()),
        0 => LinearConstraint::eq(a.clone(), b.clone()),
        _ => LinearConstraint::gt(a.clone(), b.clone()),
    }
}

fn side(plane: &(QVector, Rational), x: &QVector) -> i8 {
    let v = plane.0.dot(x);
    match v.cmp(&plane.1) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

impl Arrangement {
    fn build(s: &SemilinearSet) -> Arrangement {
        let dim = s.dim();
        let mut planes: Vec<(QVector, Rational)> = s
            .cells()
            .iter()
            .flat_map(|c| c.constraints().iter().filter_map(hyperplane_key))
            .collect();
        planes.sort();
        planes.dedup();

        // (signs, rows, witness)
        let mut partial: Vec<(Vec<i8>, Vec<LinearConstraint>, QVector)> =
            vec![(vec![], vec![], QVector::zeros(dim))];
        for plane in &planes {
            let mut next = Vec::new();
            for (signs, rows, w) in partial {
                let own = side(plane, &w);
                for sign in [-1i8, 0, 1] {
                    let mut r = rows.clone();
                    r.push(sign_row(plane, sign));
                    let witness = if sign == own {
                        Some(w.clone())
                    } else {
                        ConvexCell::from_rows(dim, r.clone()).witness()
                    };
                    if let Some(x) = witness {
                        let mut sg = signs.clone();
                        sg.push(sign);
                        next.push((sg, r, x));
                    }
                }
            }
            partial = next;
        }
        let faces: Vec<Face> = partial
            .into_iter()
            .map(|(signs, rows, w)| Face {
                signs,
                cell: ConvexCell::from_rows(dim, rows),
                inside: s.cells().iter().any(|c| c.contains(&w)),
                witness: w,
            })
            .collect();
        let by_signs = faces.iter().enumerate().map(|(i, f)| (f.signs.clone(), i)).collect();
        Arrangement {
            dim,
            planes,
            faces,
            by_signs,
        }
    }

    /// Faces meeting `½f ⊕ ½g`, or `None` when one of them leaves the set.
    fn midpoint_faces(&self, f: usize, g: usize) -> Option<Vec<usize>> {
        let (sf, sg) = (&self.faces[f].signs, &self.faces[g].signs);
        // the midpoint of the witnesses already decides many pairs
        let mid = self.faces[f].witness.add(&self.faces[g].witness).scale(&ratio(1, 2));
        let key: Vec<i8> = self.planes.iter().map(|p| side(p, &mid)).collect();
        if self.by_signs.get(&key).is_some_and(|&h| !self.faces[h].inside) {
            return None;
        }
        let mut fixed: Vec<Option<i8>> = Vec::with_capacity(sf.len());
        for (&a, &b) in sf.iter().zip(sg) {
            fixed.push(if a == b {
                Some(a)
            } else if a == 0 {
                Some(b)
            } else if b == 0 {
                Some(a)
            } else {
                None
            });
        }
        let free: Vec<usize> = (0..fixed.len()).filter(|&i| fixed[i].is_none()).collect();
        let n = self.dim;
        let half = ratio(1, 2);
        let mut rows: Vec<LinearConstraint> = Vec::new();
        for c in self.faces[f].cell.constraints() {
            rows.push(c.lift(2 * n, 0));
        }
        for c in self.faces[g].cell.constraints() {
            rows.push(c.lift(2 * n, n));
        }
        let start = self.faces[f].witness.concat(&self.faces[g].witness);
        // sign patterns of the free planes over the midpoint set, refined one
        // plane at a time and reusing witnesses
        let mut partial: Vec<(Vec<i8>, Vec<LinearConstraint>, QVector)> = vec![(vec![], rows, start)];
        for &i in &free {
            let plane = &self.planes[i];
            let mut next = Vec::new();
            for (signs, rows, w) in partial {
                let mid: QVector = (0..n).map(|k| (&w[k] + &w[k + n]) * &half).collect();
                let own = side(plane, &mid);
                for sign in [-1i8, 0, 1] {
                    let row = sign_row(plane, sign);
                    let a = row.coefficients.scale(&half);
                    let mut r = rows.clone();
                    r.push(LinearConstraint::new(a.concat(&a), row.relation, row.bound));
                    let witness = if sign == own {
                        Some(w.clone())
                    } else {
                        ConvexCell::from_rows(2 * n, r.clone()).witness()
                    };
                    if let Some(x) = witness {
                        let mut sg = signs.clone();
                        sg.push(sign);
                        next.push((sg, r, x));
                    }
                }
            }
            partial = next;
        }
        let mut out = Vec::new();
        for (signs, _, _) in partial {
            let mut full: Vec<i8> = fixed.iter().map(|s| s.unwrap_or(0)).collect();
            for (&i, s) in free.iter().zip(signs) {
                full[i] = s;
            }
            let h = *self.by_signs.get(&full)?;
            if !self.faces[h].inside {
                return None;
            }
            out.push(h);
        }
        Some(out)
    }

    fn to_set(&self, u: &FixedBitSet) -> SemilinearSet {
        let cells: Vec<ConvexCell> = u.ones().map(|i| self.faces[i].cell.clone()).collect();
        let faces = SemilinearSet::new(self.dim, cells).expect("arrangement dimension");
        merge_cells(&faces).unwrap_or(faces)
    }
}

/// Single-cell form of a convex face union when one exists: the closed hull
/// with a row made strict wherever the union misses its whole facet plane.
fn merge_cells(faces: &SemilinearSet) -> Option<SemilinearSet> {
    let dim = faces.dim();
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    let mut lineality = Vec::new();
    for c in faces.cells() {
        let g = c.closure_generators()?;
        vertices.extend(g.vertices);
        rays.extend(g.rays);
        lineality.extend(g.lineality);
    }
    let hull = v_to_h(&GeneratorRep::new(dim, vertices, rays, lineality).ok()?);
    let rows = hull
        .constraints
        .into_iter()
        .map(|r| {
            if r.relation == Relation::Eq {
                return r;
            }
            let touches = faces.cells().iter().any(|c| {
                let mut rows = c.constraints().to_vec();
                rows.push(LinearConstraint::eq(r.coefficients.clone(), r.bound.clone()));
                !ConvexCell::from_rows(dim, rows).is_empty()
            });
            if touches {
                r
            } else {
                r.strictified()
            }
        })
        .collect();
    let cell = SemilinearSet::from_cell(ConvexCell::from_rows(dim, rows));
    if equal(&cell, faces).ok()? {
        Some(cell)
    } else {
        None
    }
}

struct Search<'a> {
    arr: &'a Arrangement,
    inside: Vec<usize>,
    pairs: HashMap<(usize, usize), Option<FixedBitSet>>,
    visits: usize,
}

impl<'a> Search<'a> {
    fn new(arr: &'a Arrangement) -> Self {
        let inside = (0..arr.faces.len()).filter(|&i| arr.faces[i].inside).collect();
        Search {
            arr,
            inside,
            pairs: HashMap::new(),
            visits: 0,
        }
    }

    fn pair(&mut self, a: usize, b: usize) -> Option<FixedBitSet> {
        let key = (a.min(b), a.max(b));
        if let Some(v) = self.pairs.get(&key) {
            return v.clone();
        }
        let n = self.arr.faces.len();
        let v = self.arr.midpoint_faces(key.0, key.1).map(|fs| {
            let mut b = FixedBitSet::with_capacity(n);
            for f in fs {
                b.insert(f);
            }
            b
        });
        self.pairs.insert(key, v.clone());
        v
    }

    /// Smallest midpoint-closed face union containing `u ∪ {extra}`.
    fn close(&mut self, u: &FixedBitSet, extra: usize) -> Option<FixedBitSet> {
        let mut set = u.clone();
        let mut queue = vec![extra];
        set.insert(extra);
        while let Some(x) = queue.pop() {
            let members: Vec<usize> = set.ones().collect();
            for y in members {
                if y == x {
                    continue;
                }
                let m = self.pair(x, y)?;
                for z in m.ones() {
                    if !set.contains(z) {
                        set.insert(z);
                        queue.push(z);
                    }
                }
            }
        }
        Some(set)
    }

    /// Maximal midpoint-closed unions of inside faces.
    fn run(&mut self) -> Result<Vec<FixedBitSet>> {
        let n = self.arr.faces.len();
        let mut all = FixedBitSet::with_capacity(n);
        all.extend(self.inside.iter().copied());
        let mut found = Vec::new();
        self.refine(&all, &mut found)?;
        let mut maximal: Vec<FixedBitSet> = Vec::new();
        for (i, u) in found.iter().enumerate() {
            let dominated = found
                .iter()
                .enumerate()
                .any(|(j, w)| j != i && u.is_subset(w) && (u != w || j < i));
            if !dominated {
                maximal.push(u.clone());
            }
        }
        Ok(maximal)
    }

    /// Closed unions inside `q` are cliques of the graph joining `a, b ∈ q`
    /// whose midpoint faces stay in `q`. A closed maximal clique is reported;
    /// any other clique is strictly smaller than `q` and refined again.
    fn refine(&mut self, q: &FixedBitSet, found: &mut Vec<FixedBitSet>) -> Result<()> {
        self.visits += 1;
        if self.visits > STATE_CAP {
            return Err(CvxError::SearchCap { cap: STATE_CAP });
        }
        let n = self.arr.faces.len();
        let members: Vec<usize> = q.ones().collect();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if self.pair(a, b).is_some_and(|m| m.is_subset(q)) {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
        }
        let mut cliques = Vec::new();
        bron_kerbosch(&adj, FixedBitSet::with_capacity(n), q.clone(), FixedBitSet::with_capacity(n), &mut cliques);
        for c in cliques {
            if found.iter().any(|f| c.is_subset(f)) {
                continue;
            }
            let closed = c.ones().try_fold(FixedBitSet::with_capacity(n), |u, f| self.close(&u, f));
            if closed.as_ref() == Some(&c) {
                found.push(c);
            } else {
                self.refine(&c, found)?;
            }
        }
        Ok(())
    }
}

/// Maximal cliques, with pivoting.
fn bron_kerbosch(
    adj: &[FixedBitSet],
    r: FixedBitSet,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<FixedBitSet>,
) {
    if p.is_clear() && x.is_clear() {
        out.push(r);
        return;
    }
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| p.intersection(&adj[u]).count())
        .expect("p or x is nonempty");
    let mut branch = p.clone();
    branch.difference_with(&adj[pivot]);
    for v in branch.ones().collect::<Vec<_>>() {
        let mut r2 = r.clone();
        r2.insert(v);
        let mut p2 = p.clone();
        p2.intersect_with(&adj[v]);
        let mut x2 = x.clone();
        x2.intersect_with(&adj[v]);
        bron_kerbosch(adj, r2, p2, x2, out);
        p.set(v, false);
        x.insert(v);
    }
}
