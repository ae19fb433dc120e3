use num_traits::Zero;

use super::{Image, VopInstance};
use crate::error::{check_dim, CvxError, Result};
use crate::exactlin::{QVector, Rational};
use crate::lpexact::{solve, LinearConstraint, LpOutcome, LpProblem};
use crate::polyrep::{v_to_h, HRep};
use crate::semiset::{algebraic_boundary, cor_set, difference, intersect, union, witness, SemilinearSet};
use crate::sephull::{gerstewitz_build, gerstewitz_eval, ClaimCheck, GerstewitzFunctional};

/// Translative functional for `cbar = y0 − K` with its checked claims.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeffCertificate {
    pub functional: GerstewitzFunctional,
    pub claims: Vec<ClaimCheck>,
    /// `min g` over the image.
    pub image_min: Rational,
    /// An image point with `g < 0`, when `y0` is not weakly efficient.
    pub witness: Option<QVector>,
}

impl WeffCertificate {
    pub fn weakly_efficient(&self) -> bool {
        self.witness.is_none()
    }

    pub fn all_hold(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }
}

fn check(claim: &'static str, violation: &SemilinearSet) -> ClaimCheck {
    let w = witness(violation);
    ClaimCheck {
        claim,
        holds: w.is_none(),
        witness: w,
    }
}

/// `g(y) = min{t : y − t·k ∈ y0 − K}` with `k ∈ cor(K)`; `g ≥ 0` on the image
/// exactly when `y0` is weakly efficient.
pub fn weff_certificate(inst: &VopInstance, y0: &QVector, k: &QVector) -> Result<WeffCertificate> {
    inst.require_point(y0)?;
    check_dim(inst.dim, k.dim())?;
    if !inst.cone.in_interior(k) {
        return Err(CvxError::Hypothesis(format!("k = {k} is not in cor(K)")));
    }
    let rows = inst
        .cone
        .hrep
        .constraints
        .iter()
        .map(|c| {
            // a·(y0 − y) rel b
            LinearConstraint::new(c.coefficients.neg(), c.relation, &c.bound - c.coefficients.dot(y0))
        })
        .collect();
    let cbar = HRep::new(inst.dim, rows)?;
    let g = gerstewitz_build(&cbar, k)?;

    let zero = Rational::zero();
    let lt0 = g.sublevel(&zero, true);
    let le0 = g.sublevel(&zero, false);
    let at_y0 = gerstewitz_eval(&g, y0)?;
    let (image_min, witness_pt) = minimize_over_image(inst, &g)?;
    let c_open = cor_set(&g.cbar_set());
    let boundary = algebraic_boundary(&g.cbar_set());
    let claims = vec![
        ClaimCheck {
            claim: "g(y0) = 0",
            holds: at_y0.is_zero(),
            witness: (!at_y0.is_zero()).then(|| y0.clone()),
        },
        check("g ≥ 0 on the image", &intersect(&inst.image_set(), &lt0)?),
        check("g < 0 on y0 − cor(K)", &difference(&c_open, &lt0)?),
        check(
            "g = 0 on y0 − δK",
            &union(&intersect(&boundary, &lt0)?, &difference(&boundary, &le0)?)?,
        ),
    ];
    let witness = (image_min < zero).then_some(witness_pt);
    Ok(WeffCertificate {
        functional: g,
        claims,
        image_min,
        witness,
    })
}

fn minimize_over_image(inst: &VopInstance, g: &GerstewitzFunctional) -> Result<(Rational, QVector)> {
    match &inst.image {
        Image::Finite(ps) => {
            let mut best: Option<(Rational, QVector)> = None;
            for y in ps {
                let v = gerstewitz_eval(g, y)?;
                if best.as_ref().is_none_or(|(b, _)| v < *b) {
                    best = Some((v, y.clone()));
                }
            }
            Ok(best.expect("nonempty image"))
        }
        Image::Polytope(p) => {
            // min t over (y, t): y ∈ P, y − t·k ∈ cbar
            let n = inst.dim;
            let mut rows: Vec<LinearConstraint> =
                v_to_h(p).constraints.iter().map(|c| c.lift(n + 1, 0)).collect();
            for c in &g.cbar.constraints {
                let mut coefs = c.coefficients.clone();
                coefs.push(-c.coefficients.dot(&g.k));
                rows.push(LinearConstraint::new(coefs, c.relation, c.bound.clone()));
            }
            match solve(&LpProblem::new(QVector::unit(n + 1, n), rows))? {
                LpOutcome::Optimal { point, value, .. } => Ok((value, point.slice(0..n))),
                _ => Err(CvxError::Internal("translative functional is bounded on a polytope".into())),
            }
        }
    }
}
