use super::{
    classify_basic, classify_proper_closed, o_set_membership, SearchContext, Verdict, VopInstance,
};
use crate::error::{CvxError, Result};
use crate::exactlin::QVector;

/// All twelve verdicts at one image point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EfficiencyReport {
    pub point: QVector,
    pub eff: Verdict,
    pub weff: Verdict,
    pub bev: Verdict,
    pub huv: Verdict,
    pub vh: Verdict,
    pub vp: Verdict,
    pub strict: Verdict,
    pub super_eff: Verdict,
    pub strong: Verdict,
    pub o_plus: Verdict,
    pub o_s: Verdict,
    pub o_ss: Verdict,
}

/// When an implication is a theorem for the instance at hand.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Scope {
    Always,
    /// Polytope image, so `cone(image − y0)` and `cone(y0 − image)` are convex.
    Polytope,
    /// Polytope image and solid `K`.
    PolytopeSolid,
}

/// `(premise, conclusion, scope)`; a violation is `premise = yes` with `conclusion = no`.
const IMPLICATIONS: &[(&str, &str, Scope)] = &[
    ("EFF", "WEFF", Scope::Always),
    ("BeV", "EFF", Scope::Always),
    ("HuV", "BeV", Scope::Always),
    ("VH", "BeV", Scope::Always),
    ("VP", "VH", Scope::Always),
    ("HuV", "VH", Scope::Always),
    ("O^ss", "VP", Scope::Always),
    ("O^ss", "O^s", Scope::Always),
    ("O^s", "O^+", Scope::Always),
    ("O^s", "VH", Scope::Always),
    ("O^s", "EFF", Scope::Always),
    ("O^+", "WEFF", Scope::Always),
    ("BeV", "HuV", Scope::Polytope),
    ("BeV", "O^s", Scope::PolytopeSolid),
    ("BeV", "VH", Scope::PolytopeSolid),
    ("VP", "O^ss", Scope::Polytope),
    ("strict", "VP", Scope::Polytope),
    ("VP", "strict", Scope::Polytope),
    ("super", "VP", Scope::Polytope),
    ("VP", "super", Scope::Polytope),
    ("strong", "VP", Scope::Polytope),
    ("VP", "strong", Scope::Polytope),
];

impl EfficiencyReport {
    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        Some(match name {
            "EFF" => &self.eff,
            "WEFF" => &self.weff,
            "BeV" => &self.bev,
            "HuV" => &self.huv,
            "VH" => &self.vh,
            "VP" => &self.vp,
            "strict" => &self.strict,
            "super" => &self.super_eff,
            "strong" => &self.strong,
            "O^+" => &self.o_plus,
            "O^s" => &self.o_s,
            "O^ss" => &self.o_ss,
            _ => return None,
        })
    }

    pub fn entries(&self) -> Vec<(&'static str, &Verdict)> {
        [
            "EFF", "WEFF", "BeV", "HuV", "VH", "VP", "strict", "super", "strong", "O^+", "O^s",
            "O^ss",
        ]
        .into_iter()
        .map(|n| (n, self.verdict(n).expect("known name")))
        .collect()
    }

    /// Implications of the diagram contradicted by definite verdicts.
    pub fn violations(&self, inst: &VopInstance) -> Vec<String> {
        let polytope = inst.image.is_polytope();
        IMPLICATIONS
            .iter()
            .filter(|(_, _, scope)| match scope {
                Scope::Always => true,
                Scope::Polytope => polytope,
                Scope::PolytopeSolid => polytope && inst.cone.solid,
            })
            .filter(|(p, c, _)| {
                self.verdict(p).is_some_and(Verdict::is_yes) && self.verdict(c).is_some_and(Verdict::is_no)
            })
            .map(|(p, c, _)| format!("{p} ⇒ {c} violated at {}", self.point))
            .collect()
    }
}

/// Runs every classifier at `y0` without auditing.
pub fn efficiency_report(inst: &VopInstance, y0: &QVector, depth: u32) -> Result<EfficiencyReport> {
    report_with(&SearchContext::new(inst, depth)?, inst, y0)
}

fn report_with(ctx: &SearchContext, inst: &VopInstance, y0: &QVector) -> Result<EfficiencyReport> {
    let (eff, weff) = classify_basic(inst, y0)?;
    let (bev, huv) = classify_proper_closed(inst, y0)?;
    let s = ctx.classify(y0)?;
    let o = o_set_membership(inst, y0)?;
    Ok(EfficiencyReport {
        point: y0.clone(),
        eff,
        weff,
        bev,
        huv,
        vh: s.vh,
        vp: s.vp,
        strict: s.strict,
        super_eff: s.super_eff,
        strong: s.strong,
        o_plus: o.o_plus,
        o_s: o.o_s,
        o_ss: o.o_ss,
    })
}

/// Full battery at `y0`; any violated implication is an internal error.
pub fn classify(inst: &VopInstance, y0: &QVector, depth: u32) -> Result<EfficiencyReport> {
    let report = efficiency_report(inst, y0, depth)?;
    let bad = report.violations(inst);
    if bad.is_empty() {
        Ok(report)
    } else {
        Err(CvxError::Internal(bad.join("; ")))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagramAudit {
    pub reports: Vec<EfficiencyReport>,
    pub violations: Vec<String>,
    /// Implication instances whose premise held definitely.
    pub checked: usize,
}

impl DiagramAudit {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Audits the implication diagram at `points` (default: the listed image
/// points or polytope vertices).
pub fn diagram_check(inst: &VopInstance, points: Option<&[QVector]>, depth: u32) -> Result<DiagramAudit> {
    let points = points.unwrap_or(inst.image.generators());
    let ctx = SearchContext::new(inst, depth)?;
    let mut reports = Vec::with_capacity(points.len());
    let mut violations = Vec::new();
    let mut checked = 0;
    for y0 in points {
        let r = report_with(&ctx, inst, y0)?;
        checked += IMPLICATIONS
            .iter()
            .filter(|(p, _, _)| r.verdict(p).is_some_and(Verdict::is_yes))
            .count();
        violations.extend(r.violations(inst));
        reports.push(r);
    }
    Ok(DiagramAudit {
        reports,
        violations,
        checked,
    })
}
