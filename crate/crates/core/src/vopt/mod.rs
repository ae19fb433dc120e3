//! Efficiency notions of vector optimization in image space, decided with
//! certificates over finite or polytope images and polyhedral ordering cones.

mod diagram;
mod search;
mod weff;

pub use diagram::*;
pub use search::*;
pub use weff::*;

use num_traits::{Signed, Zero};

use crate::error::{check_dim, CvxError, Result};
use crate::exactlin::{affine_hull, in_span, int, QVector, Rational};
use crate::lpexact::{solve, strict_feasible_dim, LinearConstraint, LpOutcome, LpProblem, StrictOutcome};
use crate::polyrep::{closed_conic_hull, v_to_h, GeneratorRep, HRep};
use crate::semiset::{difference, intersect, witness, ConvexCell, SemilinearSet};
use crate::sephull::strong_separate;

/// Polyhedral ordering cone given by generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderingCone {
    pub dim: usize,
    pub generators: Vec<QVector>,
    pub hrep: HRep,
    pub pointed: bool,
    pub solid: bool,
    /// `l` with `⟨l,g⟩ ≥ 1` on every generator, when pointed.
    positive: Option<QVector>,
}

impl OrderingCone {
    pub fn new(dim: usize, generators: Vec<QVector>) -> Result<Self> {
        if generators.is_empty() {
            return Err(CvxError::InvalidInput("ordering cone needs generators".into()));
        }
        for g in &generators {
            check_dim(dim, g.dim())?;
            if g.is_zero() {
                return Err(CvxError::InvalidInput("zero cone generator".into()));
            }
        }
        let hrep = v_to_h(&GeneratorRep::cone(dim, generators.clone())?);
        if hrep.constraints.is_empty() {
            return Err(CvxError::Hypothesis("K must be nontrivial (K ≠ X)".into()));
        }
        let rows: Vec<LinearConstraint> = generators
            .iter()
            .map(|g| LinearConstraint::ge(g.clone(), int(1)))
            .collect();
        let positive = strict_feasible_dim(dim, &rows)?.witness().cloned();
        let cell = ConvexCell::new(dim, hrep.constraints.clone())?;
        let solid = !cell.interior().is_empty();
        Ok(OrderingCone {
            dim,
            pointed: positive.is_some(),
            solid,
            generators,
            hrep,
            positive,
        })
    }

    /// Nonnegative orthant.
    pub fn orthant(dim: usize) -> Self {
        Self::new(dim, (0..dim).map(|i| QVector::unit(dim, i)).collect())
            .expect("orthant is a valid cone")
    }

    pub fn cell(&self) -> ConvexCell {
        ConvexCell::new(self.dim, self.hrep.constraints.clone()).expect("cone rows")
    }

    pub fn interior_cell(&self) -> ConvexCell {
        self.cell().interior()
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.hrep.contains(x)
    }

    pub fn in_interior(&self, x: &QVector) -> bool {
        self.interior_cell().contains(x)
    }

    /// A functional strictly positive on `K ∖ {0}`.
    pub fn positive_functional(&self) -> Result<&QVector> {
        self.positive
            .as_ref()
            .ok_or_else(|| CvxError::Hypothesis("K is not pointed".into()))
    }
}

/// Polytope `B` with `0 ∉ aff(B)` whose rays through its points are exactly `K ∖ {0}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConeBase {
    pub polytope: GeneratorRep,
}

impl ConeBase {
    pub fn new(cone: &OrderingCone, vertices: Vec<QVector>) -> Result<Self> {
        let polytope = GeneratorRep::polytope(cone.dim, vertices)?;
        if polytope.is_empty() {
            return Err(CvxError::InvalidInput("base needs vertices".into()));
        }
        if let Some(v) = polytope.vertices.iter().find(|v| !cone.contains(v)) {
            return Err(CvxError::Hypothesis(format!("base point {v} is outside K")));
        }
        let (p, dirs) = affine_hull(&polytope.vertices)?;
        if in_span(&p, &dirs) {
            return Err(CvxError::Hypothesis("0 lies in the affine hull of the base".into()));
        }
        let n = cone.dim;
        let m = polytope.vertices.len();
        for g in &cone.generators {
            // t g = Σ μ_j b_j, μ ≥ 0, Σ μ = 1, t > 0
            let width = m + 1;
            let mut rows = Vec::new();
            for i in 0..n {
                let mut c: Vec<Rational> = polytope.vertices.iter().map(|b| b[i].clone()).collect();
                c.push(-g[i].clone());
                rows.push(LinearConstraint::eq(QVector::new(c), int(0)));
            }
            let mut sum = vec![int(1); m];
            sum.push(int(0));
            rows.push(LinearConstraint::eq(QVector::new(sum), int(1)));
            for j in 0..m {
                rows.push(LinearConstraint::ge(QVector::unit(width, j), int(0)));
            }
            rows.push(LinearConstraint::gt(QVector::unit(width, m), int(0)));
            if strict_feasible_dim(width, &rows)?.is_empty() {
                return Err(CvxError::Hypothesis(format!(
                    "generator {g} of K does not meet the base"
                )));
            }
        }
        Ok(ConeBase { polytope })
    }

    /// Generators scaled onto `⟨l,·⟩ = 1` for a strictly positive `l`.
    pub fn from_cone(cone: &OrderingCone) -> Result<Self> {
        let l = cone.positive_functional()?.clone();
        let mut vertices: Vec<QVector> = cone
            .generators
            .iter()
            .map(|g| g.scale(&l.dot(g).recip()))
            .collect();
        vertices.sort();
        vertices.dedup();
        Self::new(cone, vertices)
    }
}

/// `f(Ω)` given directly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Image {
    Finite(Vec<QVector>),
    Polytope(GeneratorRep),
}

impl Image {
    /// Listed points or polytope vertices.
    pub fn generators(&self) -> &[QVector] {
        match self {
            Image::Finite(ps) => ps,
            Image::Polytope(g) => &g.vertices,
        }
    }

    pub fn is_polytope(&self) -> bool {
        matches!(self, Image::Polytope(_))
    }

    pub fn to_set(&self, dim: usize) -> SemilinearSet {
        match self {
            Image::Finite(ps) => {
                SemilinearSet::new(dim, ps.iter().map(ConvexCell::point).collect())
                    .expect("image dimension")
            }
            Image::Polytope(g) => SemilinearSet::from_cell(
                ConvexCell::new(dim, v_to_h(g).constraints).expect("image dimension"),
            ),
        }
    }

    pub fn contains(&self, y: &QVector) -> bool {
        match self {
            Image::Finite(ps) => ps.contains(y),
            Image::Polytope(g) => g.contains(y),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VopInstance {
    pub dim: usize,
    pub image: Image,
    pub cone: OrderingCone,
    pub base: Option<ConeBase>,
}

impl VopInstance {
    pub fn new(image: Image, cone: OrderingCone, base: Option<ConeBase>) -> Result<Self> {
        let dim = cone.dim;
        if image.generators().is_empty() {
            return Err(CvxError::InvalidInput("image is empty".into()));
        }
        for y in image.generators() {
            check_dim(dim, y.dim())?;
        }
        if let Image::Polytope(g) = &image {
            check_dim(dim, g.dim)?;
            if !g.is_bounded() {
                return Err(CvxError::InvalidInput("polytope image must be bounded".into()));
            }
        }
        if !cone.pointed {
            return Err(CvxError::Hypothesis("K must be pointed".into()));
        }
        if let Some(b) = &base {
            check_dim(dim, b.polytope.dim)?;
        }
        Ok(VopInstance {
            dim,
            image,
            cone,
            base,
        })
    }

    pub fn image_set(&self) -> SemilinearSet {
        self.image.to_set(self.dim)
    }

    fn require_point(&self, y0: &QVector) -> Result<()> {
        check_dim(self.dim, y0.dim())?;
        if self.image.contains(y0) {
            Ok(())
        } else {
            Err(CvxError::InvalidInput(format!("{y0} is not in the image")))
        }
    }

    fn require_base(&self) -> Result<&ConeBase> {
        self.base
            .as_ref()
            .ok_or_else(|| CvxError::InvalidInput("operation needs a cone base".into()))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Evidence {
    None,
    /// A violating image point or direction.
    Witness(QVector),
    Functional(QVector),
    Functionals(Vec<QVector>),
    /// Dilation `ε` of the base with the extreme rays of the dilated cone and
    /// a functional strictly positive on it.
    Dilation {
        eps: Rational,
        rays: Vec<QVector>,
        functional: QVector,
    },
    /// `V = εU°` with `U` the unit `ℓ∞` ball.
    Neighborhood(Rational),
    /// Pairs `(ε, δ)` from the dilation schedule.
    Schedule(Vec<(Rational, Rational)>),
    /// Infeasibility multipliers of the defining system.
    Farkas(Vec<Rational>),
    /// Derived from another verdict through a proven implication.
    Implied(&'static str),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Yes(Evidence),
    No(Evidence),
    Unknown { depth: u32 },
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes(_) => "yes",
            Verdict::No(_) => "no",
            Verdict::Unknown { .. } => "unknown",
        }
    }
}

/// Image point `y ≠ y0` with `y0 − y ∈ C` for the closed cone `C` given by rows
/// `a·x rel 0`.
pub(crate) fn dominating_point(
    inst: &VopInstance,
    y0: &QVector,
    cone_rows: &[LinearConstraint],
) -> Option<QVector> {
    let shifted: Vec<LinearConstraint> = cone_rows
        .iter()
        .map(|c| {
            // a·(y0 − y) rel 0  ⟺  −a·y rel −a·y0
            LinearConstraint::new(c.coefficients.neg(), c.relation, -c.coefficients.dot(y0))
        })
        .collect();
    match &inst.image {
        Image::Finite(ps) => ps
            .iter()
            .find(|y| *y != y0 && shifted.iter().all(|c| c.satisfied_by(y)))
            .cloned(),
        Image::Polytope(_) => {
            let region = SemilinearSet::from_cell(
                ConvexCell::new(inst.dim, shifted).expect("cone dimension"),
            );
            let meet = intersect(&inst.image_set(), &region).expect("same dimension");
            let single = SemilinearSet::from_cell(ConvexCell::point(y0));
            witness(&difference(&meet, &single).expect("same dimension"))
        }
    }
}

/// EFF and WEFF verdicts.
pub fn classify_basic(inst: &VopInstance, y0: &QVector) -> Result<(Verdict, Verdict)> {
    inst.require_point(y0)?;
    let eff = match dominating_point(inst, y0, &inst.cone.hrep.constraints) {
        Some(y) => Verdict::No(Evidence::Witness(y)),
        None => Verdict::Yes(Evidence::None),
    };
    let interior = inst.cone.interior_cell();
    let weff = if interior.is_empty() {
        Verdict::Yes(Evidence::None)
    } else {
        match dominating_point(inst, y0, interior.constraints()) {
            Some(y) => Verdict::No(Evidence::Witness(y)),
            None => Verdict::Yes(Evidence::None),
        }
    };
    Ok((eff, weff))
}

/// Either `m` with `m ≥ 0` on `C` and `m ≥ 1` on the generators of `K`
/// (so `C ∩ −K = {0}`), or a nonzero point of `C ∩ −K`.
pub(crate) fn meets_negative_cone(
    c: &GeneratorRep,
    k: &OrderingCone,
) -> Result<std::result::Result<QVector, QVector>> {
    let n = k.dim;
    let mut rows = Vec::new();
    for r in &c.rays {
        rows.push(LinearConstraint::ge(r.clone(), int(0)));
    }
    for l in &c.lineality {
        rows.push(LinearConstraint::eq(l.clone(), int(0)));
    }
    for g in &k.generators {
        rows.push(LinearConstraint::ge(g.clone(), int(1)));
    }
    if let StrictOutcome::Witness { point, .. } = strict_feasible_dim(n, &rows)? {
        return Ok(Ok(point));
    }
    // min ⟨l,x⟩ over C ∩ −K with ⟨l,x⟩ ≥ −1
    let l = k.positive_functional()?.clone();
    let mut rows = v_to_h(c).constraints;
    for r in &k.hrep.constraints {
        rows.push(LinearConstraint::new(r.coefficients.neg(), r.relation, r.bound.clone()));
    }
    rows.push(LinearConstraint::ge(l.clone(), int(-1)));
    match solve(&LpProblem::new(l, rows))? {
        LpOutcome::Optimal { point, value, .. } if value.is_negative() => Ok(Err(point)),
        _ => Err(CvxError::Internal(
            "cone meets −K only at 0 yet admits no separating functional".into(),
        )),
    }
}

/// Closed cones whose union is `vcl(cone(image − y0 + K))`.
pub(crate) fn benson_cones(inst: &VopInstance, y0: &QVector) -> Result<Vec<GeneratorRep>> {
    let rays = inst.cone.generators.clone();
    match &inst.image {
        Image::Finite(ps) => ps
            .iter()
            .map(|y| {
                closed_conic_hull(&GeneratorRep::new(inst.dim, vec![y.sub(y0)], rays.clone(), vec![])?)
            })
            .collect(),
        Image::Polytope(g) => {
            let verts = g.vertices.iter().map(|v| v.sub(y0)).collect();
            Ok(vec![closed_conic_hull(&GeneratorRep::new(inst.dim, verts, rays, vec![])?)?])
        }
    }
}

pub(crate) fn benson_cones_meet_trivially(inst: &VopInstance, y0: &QVector) -> Result<bool> {
    for c in benson_cones(inst, y0)? {
        if meets_negative_cone(&c, &inst.cone)?.is_err() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `vcl(conv(cone((image − y0) ∪ K)))`.
pub(crate) fn hurwicz_cone(inst: &VopInstance, y0: &QVector) -> Result<GeneratorRep> {
    let mut rays: Vec<QVector> = inst
        .image
        .generators()
        .iter()
        .map(|y| y.sub(y0))
        .filter(|d| !d.is_zero())
        .collect();
    rays.extend(inst.cone.generators.iter().cloned());
    closed_conic_hull(&GeneratorRep::cone(inst.dim, rays)?)
}

/// BeV and HuV verdicts.
pub fn classify_proper_closed(inst: &VopInstance, y0: &QVector) -> Result<(Verdict, Verdict)> {
    inst.require_point(y0)?;
    let mut functionals = Vec::new();
    let mut bev = None;
    for c in benson_cones(inst, y0)? {
        match meets_negative_cone(&c, &inst.cone)? {
            Ok(m) => functionals.push(m),
            Err(x) => {
                bev = Some(Verdict::No(Evidence::Witness(x)));
                break;
            }
        }
    }
    let bev = bev.unwrap_or(Verdict::Yes(Evidence::Functionals(functionals)));
    let huv = match meets_negative_cone(&hurwicz_cone(inst, y0)?, &inst.cone)? {
        Ok(m) => Verdict::Yes(Evidence::Functional(m)),
        Err(x) => Verdict::No(Evidence::Witness(x)),
    };
    Ok((bev, huv))
}

/// Minimizers of `⟨l,y⟩` over the image (vertices of the optimal face for polytopes).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OptimizerSet {
    pub value: Rational,
    pub points: Vec<QVector>,
}

pub fn scalarize(inst: &VopInstance, l: &QVector) -> Result<OptimizerSet> {
    check_dim(inst.dim, l.dim())?;
    if l.is_zero() {
        return Err(CvxError::InvalidInput("scalarizing functional must be nonzero".into()));
    }
    let gens = inst.image.generators();
    let value = gens.iter().map(|y| l.dot(y)).min().expect("nonempty image");
    let mut points: Vec<QVector> = gens.iter().filter(|y| l.dot(y) == value).cloned().collect();
    points.sort();
    points.dedup();
    Ok(OptimizerSet { value, points })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DualMembership {
    pub plus: bool,
    pub plus_strict: bool,
    /// `None` without a base.
    pub ss: Option<bool>,
}

pub fn dual_membership(k: &OrderingCone, base: Option<&ConeBase>, l: &QVector) -> Result<DualMembership> {
    check_dim(k.dim, l.dim())?;
    let vals: Vec<Rational> = k.generators.iter().map(|g| l.dot(g)).collect();
    let ss = base.map(|b| {
        b.polytope
            .vertices
            .iter()
            .map(|v| l.dot(v))
            .min()
            .is_some_and(|m| m.is_positive())
    });
    Ok(DualMembership {
        plus: vals.iter().all(|v| !v.is_negative()),
        plus_strict: vals.iter().all(|v| v.is_positive()),
        ss,
    })
}

/// A functional with `inf_B ⟨l,·⟩ > 0`, from strongly separating `0` and `B`.
pub fn kss_find(base: &ConeBase) -> Result<QVector> {
    let n = base.polytope.dim;
    let origin = SemilinearSet::from_cell(ConvexCell::point(&QVector::zeros(n)));
    let (cert, _) = strong_separate(&origin, &base.polytope)?;
    Ok(cert.functional)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OSetVerdicts {
    pub o_plus: Verdict,
    pub o_s: Verdict,
    pub o_ss: Verdict,
}

/// `l` with `⟨l, y − y0⟩ ≥ 0` on the image and the dual-cone rows `extra`.
fn optimality_functional(
    inst: &VopInstance,
    y0: &QVector,
    extra: Vec<LinearConstraint>,
) -> Result<Verdict> {
    let mut rows: Vec<LinearConstraint> = inst
        .image
        .generators()
        .iter()
        .map(|y| LinearConstraint::ge(y.sub(y0), int(0)))
        .collect();
    rows.extend(extra);
    Ok(match strict_feasible_dim(inst.dim, &rows)? {
        StrictOutcome::Witness { point, .. } => Verdict::Yes(Evidence::Functional(point)),
        StrictOutcome::Empty { certificate } => Verdict::No(Evidence::Farkas(certificate)),
    })
}

pub fn o_set_membership(inst: &VopInstance, y0: &QVector) -> Result<OSetVerdicts> {
    inst.require_point(y0)?;
    let gens = &inst.cone.generators;
    let zero = Rational::zero();
    let mut plus: Vec<LinearConstraint> =
        gens.iter().map(|g| LinearConstraint::ge(g.clone(), zero.clone())).collect();
    let sum = gens.iter().fold(QVector::zeros(inst.dim), |acc, g| acc.add(g));
    plus.push(LinearConstraint::eq(sum, int(1)));
    let o_plus = optimality_functional(inst, y0, plus)?;
    let strict = gens.iter().map(|g| LinearConstraint::gt(g.clone(), zero.clone())).collect();
    let o_s = optimality_functional(inst, y0, strict)?;
    let o_ss = match &inst.base {
        Some(b) => {
            let rows = b
                .polytope
                .vertices
                .iter()
                .map(|v| LinearConstraint::gt(v.clone(), zero.clone()))
                .collect();
            optimality_functional(inst, y0, rows)?
        }
        None => return Err(CvxError::InvalidInput("O^ss needs a cone base".into())),
    };
    Ok(OSetVerdicts { o_plus, o_s, o_ss })
}

#[cfg(test)]
mod tests;
