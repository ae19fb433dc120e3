//! Subcommand handlers. Each returns a report or an error message; the
//! caller turns errors into exit code 2.

use std::path::Path;

use cvxcore::exactlin::parse_rational;
use cvxcore::semiset::{
    algebraic_boundary, closure, components, contains, cor_member, cor_set, icr_member, is_basis_member,
    is_convex, ri_set, vcl_member, SemilinearSet,
};
use cvxcore::sephull::{
    gerstewitz_build, gerstewitz_eval, proper_separate, sandwich, separate_cones, sep3_verify, strong_separate,
    validate_cones, validate_proper, validate_sandwich, validate_strong, SeparationCertificate, SeparationKind,
};
use cvxcore::vopt::{diagram_check, o_set_membership, scalarize};
use cvxcore::{corpus, CvxError, QVector};

use crate::convert::{polytope_block, pwl_block, set_block, set_from_block, sets_file, vop_file};
use crate::format::{Block, InstanceFile, Kind};
use crate::report::{q, vec, Report, EXIT_NO};
use crate::{Cmd, GenArgs, GenKind, GenPair, Output, SepCmd, SetCmd, SetFile, VopCmd};

const ENGINE: &str = concat!("cvxcore ", env!("CARGO_PKG_VERSION"));

/// Largest dimension `gen --kind set` accepts.
const GEN_MAX_DIM: usize = 4;

type Outcome = std::result::Result<Output, String>;

fn err(e: CvxError) -> String {
    e.to_string()
}

fn load(path: &Path, kinds: &[Kind]) -> std::result::Result<InstanceFile, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let file = InstanceFile::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if !kinds.contains(&file.kind) {
        let want: Vec<&str> = kinds.iter().map(|k| k.as_str()).collect();
        return Err(format!("expected a {} file, found {}", want.join(" or "), file.kind.as_str()));
    }
    Ok(file)
}

fn point(text: &str, dim: usize) -> std::result::Result<QVector, String> {
    let coords = text
        .split(',')
        .map(|t| parse_rational(t.trim()))
        .collect::<cvxcore::Result<Vec<_>>>()
        .map_err(err)?;
    if coords.len() != dim {
        return Err(format!("point has {} coordinates, file has dimension {dim}", coords.len()));
    }
    Ok(QVector::new(coords))
}

fn report(command: &str) -> Report {
    let mut r = Report::new(command);
    r.put("engine", ENGINE);
    r
}

fn show(p: &Path) -> String {
    p.display().to_string()
}

fn with_point(base: String, point: &Option<String>) -> String {
    match point {
        Some(p) => format!("{base} --point {p}"),
        None => base,
    }
}

/// Canonical echo of the invocation, stable across runs.
pub fn echo(cmd: &Cmd) -> String {
    let set = |verb: &str, s: &SetFile| {
        let mut e = format!("set {verb} {}", show(&s.file));
        if let Some(n) = &s.name {
            e.push_str(&format!(" --name {n}"));
        }
        e
    };
    match cmd {
        Cmd::Set(c) => match c {
            SetCmd::Member { set: s, point } => format!("{} --point {point}", set("member", s)),
            SetCmd::Interior { set: s, point, relative } => {
                let e = with_point(set("interior", s), point);
                if *relative {
                    format!("{e} --relative")
                } else {
                    e
                }
            }
            SetCmd::Closure { set: s, point } => with_point(set("closure", s), point),
            SetCmd::Vcl { set: s, point } => format!("{} --point {point}", set("vcl", s)),
            SetCmd::Boundary { set: s, point } => with_point(set("boundary", s), point),
            SetCmd::Components { set: s } => set("components", s),
            SetCmd::Convex { set: s } => set("convex", s),
            SetCmd::Basis { set: s } => set("basis", s),
        },
        Cmd::Sep(c) => match c {
            SepCmd::Proper { file } => format!("sep proper {}", show(file)),
            SepCmd::Strong { file } => format!("sep strong {}", show(file)),
            SepCmd::Cones { file } => format!("sep cones {}", show(file)),
            SepCmd::Sandwich { file } => format!("sep sandwich {}", show(file)),
            SepCmd::Gerstewitz { file, point, subadditive } => {
                let e = with_point(format!("sep gerstewitz {}", show(file)), point);
                if *subadditive {
                    format!("{e} --subadditive")
                } else {
                    e
                }
            }
        },
        Cmd::Vop(c) => match c {
            VopCmd::Classify { file, point, depth } => {
                format!("{} --depth {depth}", with_point(format!("vop classify {}", show(file)), point))
            }
            VopCmd::Scalarize { file, l } => format!("vop scalarize {} --l {l}", show(file)),
            VopCmd::Oset { file, point } => with_point(format!("vop oset {}", show(file)), point),
            VopCmd::Diagram { file, depth } => format!("vop diagram {} --depth {depth}", show(file)),
        },
        Cmd::Check { file } => format!("check {}", show(file)),
        Cmd::Gen(g) => {
            let kind = match g.kind {
                GenKind::Set => "set",
                GenKind::Sep => "sep",
                GenKind::Vop => "vop",
            };
            format!("gen --kind {kind} --seed {}", g.seed)
        }
    }
}

pub fn dispatch(cmd: &Cmd) -> Outcome {
    match cmd {
        Cmd::Set(c) => set_cmd(c, &echo(cmd)),
        Cmd::Sep(c) => sep_cmd(c, &echo(cmd)),
        Cmd::Vop(c) => vop_cmd(c, &echo(cmd)),
        Cmd::Check { file } => check(file, &echo(cmd)),
        Cmd::Gen(g) => gen(g),
    }
}

/// `set=<block>` and `cells=N`; an empty result exits 1.
fn put_set(r: &mut Report, s: &SemilinearSet) {
    let s = s.pruned();
    let block = serde_json::to_string(&set_block("result", &s)).expect("block serializes");
    r.put("set", block);
    r.put("cells", s.cells().len());
    if s.cells().is_empty() {
        r.code = EXIT_NO;
    }
}

fn set_cmd(c: &SetCmd, command: &str) -> Outcome {
    let sf = match c {
        SetCmd::Member { set, .. }
        | SetCmd::Interior { set, .. }
        | SetCmd::Closure { set, .. }
        | SetCmd::Vcl { set, .. }
        | SetCmd::Boundary { set, .. }
        | SetCmd::Components { set }
        | SetCmd::Convex { set }
        | SetCmd::Basis { set } => set,
    };
    let file = load(&sf.file, &[Kind::Set, Kind::Sep])?;
    let s = file.set(sf.name.as_deref()).map_err(err)?;
    let n = s.dim();
    let mut r = report(command);
    match c {
        SetCmd::Member { point: p, .. } => {
            let x = point(p, n)?;
            r.predicate("member", contains(&s, &x).map_err(err)?);
        }
        SetCmd::Interior { point: p, relative, .. } => match (p, relative) {
            (Some(p), false) => r.predicate("interior", cor_member(&s, &point(p, n)?).map_err(err)?),
            (Some(p), true) => r.predicate("interior", icr_member(&s, &point(p, n)?).map_err(err)?),
            (None, false) => put_set(&mut r, &cor_set(&s)),
            (None, true) => put_set(&mut r, &ri_set(&s).map_err(err)?),
        },
        SetCmd::Closure { point: p, .. } => {
            let cl = closure(&s);
            match p {
                Some(p) => r.predicate("closure", contains(&cl, &point(p, n)?).map_err(err)?),
                None => put_set(&mut r, &cl),
            }
        }
        SetCmd::Vcl { point: p, .. } => r.predicate("vcl", vcl_member(&s, &point(p, n)?).map_err(err)?),
        SetCmd::Boundary { point: p, .. } => {
            let b = algebraic_boundary(&s);
            match p {
                Some(p) => r.predicate("boundary", contains(&b, &point(p, n)?).map_err(err)?),
                None => put_set(&mut r, &b),
            }
        }
        SetCmd::Components { .. } => {
            let d = components(&s).map_err(err)?;
            r.put("components", d.components.len());
            for (i, (comp, maximal)) in d.components.iter().zip(&d.maximal).enumerate() {
                let block = serde_json::to_string(&set_block(&format!("C{i}"), comp)).expect("block serializes");
                r.put(&format!("component.{i}"), block);
                r.put(&format!("component.{i}.maximal"), maximal);
            }
        }
        SetCmd::Convex { .. } => r.predicate("convex", is_convex(&s)),
        SetCmd::Basis { .. } => r.predicate("basis", is_basis_member(&s)),
    }
    Ok(Output::Report(r))
}

fn put_cert(r: &mut Report, cert: &SeparationCertificate) {
    r.put("functional", vec(&cert.functional));
    r.put("threshold", q(&cert.threshold));
    if let SeparationKind::Strong { gap } = &cert.kind {
        r.put("gap", q(gap));
    }
    for (i, w) in cert.witnesses.iter().enumerate() {
        r.put(&format!("witness.{i}"), vec(w));
    }
}

/// Integer grid `{−2,…,2}^n` for `n ≤ 3`; breakpoints alone beyond that.
fn sandwich_samples(dim: usize) -> Vec<QVector> {
    if dim > 3 {
        return Vec::new();
    }
    let mut pts = vec![Vec::new()];
    for _ in 0..dim {
        pts = pts
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-2..=2).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    pts.iter().map(|p| QVector::from_ints(p)).collect()
}

fn sep_cmd(c: &SepCmd, command: &str) -> Outcome {
    let path = match c {
        SepCmd::Proper { file }
        | SepCmd::Strong { file }
        | SepCmd::Cones { file }
        | SepCmd::Sandwich { file }
        | SepCmd::Gerstewitz { file, .. } => file,
    };
    let file = load(path, &[Kind::Sep])?;
    let mut r = report(command);
    match c {
        SepCmd::Proper { .. } => {
            let (a, b) = (file.set(Some("A")).map_err(err)?, file.set(Some("B")).map_err(err)?);
            let cert = proper_separate(&a, &b).map_err(err)?;
            put_cert(&mut r, &cert);
            r.predicate("valid", validate_proper(&a, &b, &cert));
        }
        SepCmd::Strong { .. } => {
            let a = file.set(Some("A")).map_err(err)?;
            let b = file.polytope("B").map_err(err)?;
            let (cert, slab) = strong_separate(&a, &b).map_err(err)?;
            put_cert(&mut r, &cert);
            r.put("slab.functional", vec(&slab.functional));
            r.put("slab.radius", q(&slab.radius));
            r.predicate("valid", validate_strong(&a, &b, &cert, &slab));
        }
        SepCmd::Cones { .. } => {
            let (m, k) = (file.set(Some("M")).map_err(err)?, file.set(Some("K")).map_err(err)?);
            let cert = separate_cones(&m, &k).map_err(err)?;
            put_cert(&mut r, &cert);
            r.predicate("valid", validate_cones(&m, &k, &cert));
        }
        SepCmd::Sandwich { .. } => {
            let (f, g) = (file.pwl("f").map_err(err)?, file.pwl("g").map_err(err)?);
            let (l, alpha) = sandwich(&f, &g).map_err(err)?;
            r.put("functional", vec(&l));
            r.put("alpha", q(&alpha));
            let samples = sandwich_samples(file.dim);
            r.put("samples", samples.len());
            r.predicate("valid", validate_sandwich(&f, &g, &l, &alpha, &samples));
        }
        SepCmd::Gerstewitz { point: p, subadditive, .. } => {
            let cbar = file.hrep("cbar").map_err(err)?;
            let k = file.vector("k").map_err(err)?;
            let g = gerstewitz_build(&cbar, &k).map_err(err)?;
            r.flag("recession", g.recession_ok);
            r.flag("covers", g.covers);
            if let Some(p) = p {
                r.put("value", q(&gerstewitz_eval(&g, &point(p, file.dim)?).map_err(err)?));
            }
            if file.has("A") {
                let a = file.set(Some("A")).map_err(err)?;
                let b = if file.has("B") { Some(file.hrep("B").map_err(err)?) } else { None };
                let rep = sep3_verify(&g, &a, b.as_ref(), *subadditive).map_err(err)?;
                r.put("claims", rep.claims.len());
                for (i, c) in rep.claims.iter().enumerate() {
                    r.put(&format!("claim.{i}"), c.claim);
                    r.put(&format!("claim.{i}.holds"), c.holds);
                    if let Some(w) = &c.witness {
                        r.put(&format!("claim.{i}.witness"), vec(w));
                    }
                }
                r.predicate("all_hold", rep.all_hold());
            }
        }
    }
    Ok(Output::Report(r))
}

fn vop_cmd(c: &VopCmd, command: &str) -> Outcome {
    let path = match c {
        VopCmd::Classify { file, .. }
        | VopCmd::Scalarize { file, .. }
        | VopCmd::Oset { file, .. }
        | VopCmd::Diagram { file, .. } => file,
    };
    let file = load(path, &[Kind::Vop])?;
    let inst = file.vop().map_err(err)?;
    let n = inst.dim;
    let points = |p: &Option<String>| -> std::result::Result<Vec<QVector>, String> {
        match p {
            Some(p) => Ok(vec![point(p, n)?]),
            None => Ok(inst.image.generators().to_vec()),
        }
    };
    let mut r = report(command);
    match c {
        VopCmd::Classify { point: p, depth, .. } => {
            let pts = points(p)?;
            let audit = diagram_check(&inst, Some(&pts), *depth).map_err(err)?;
            r.put("points", pts.len());
            for (i, rep) in audit.reports.iter().enumerate() {
                r.put(&format!("y.{i}"), vec(&rep.point));
                for (name, v) in rep.entries() {
                    r.verdict(&format!("y.{i}.{name}"), v);
                }
            }
        }
        VopCmd::Scalarize { l, .. } => {
            let opt = scalarize(&inst, &point(l, n)?).map_err(err)?;
            r.put("value", q(&opt.value));
            r.put("argmin", opt.points.len());
            for (i, y) in opt.points.iter().enumerate() {
                r.put(&format!("argmin.{i}"), vec(y));
            }
        }
        VopCmd::Oset { point: p, .. } => {
            let pts = points(p)?;
            r.put("points", pts.len());
            for (i, y) in pts.iter().enumerate() {
                let o = o_set_membership(&inst, y).map_err(err)?;
                r.put(&format!("y.{i}"), vec(y));
                r.verdict(&format!("y.{i}.O^+"), &o.o_plus);
                r.verdict(&format!("y.{i}.O^s"), &o.o_s);
                r.verdict(&format!("y.{i}.O^ss"), &o.o_ss);
            }
        }
        VopCmd::Diagram { depth, .. } => {
            let audit = diagram_check(&inst, None, *depth).map_err(err)?;
            r.put("points", audit.reports.len());
            r.put("checked", audit.checked);
            r.put("violations", audit.violations.len());
            for (i, v) in audit.violations.iter().enumerate() {
                r.put(&format!("violation.{i}"), v);
            }
            if !audit.is_consistent() {
                r.code = EXIT_NO;
            }
        }
    }
    Ok(Output::Report(r))
}

/// Builds every block so that structural hypotheses are checked too.
fn check(path: &Path, command: &str) -> Outcome {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let file = InstanceFile::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut r = report(command);
    r.put("kind", file.kind.as_str());
    r.put("dim", file.dim);
    r.put("blocks", file.blocks.len());
    r.flag("canonical", file.serialize() == text);
    if file.kind == Kind::Vop {
        let inst = file.vop().map_err(err)?;
        r.put("image", inst.image.generators().len());
        r.flag("base", inst.base.is_some());
    } else {
        for b in &file.blocks {
            match b {
                Block::Set { .. } => drop(set_from_block(file.dim, b).map_err(err)?),
                Block::Polytope { name, .. } => drop(file.polytope(name).map_err(err)?),
                Block::Pwl { name, .. } => drop(file.pwl(name).map_err(err)?),
                Block::Hrep { name, .. } => drop(file.hrep(name).map_err(err)?),
                _ => {}
            }
        }
    }
    Ok(Output::Report(r))
}

fn gen(g: &GenArgs) -> Outcome {
    let file = match g.kind {
        GenKind::Set => {
            let dim = g.dim.unwrap_or(2);
            if !(1..=GEN_MAX_DIM).contains(&dim) {
                return Err(format!("size cap exceeded: --dim must be in 1..={GEN_MAX_DIM}"));
            }
            let s = corpus::semilinear_set(g.seed, dim);
            sets_file(dim, &[("A", &s)])
        }
        GenKind::Sep => match g.pair {
            GenPair::Proper => {
                let (a, b) = corpus::proper_pair(g.seed);
                sep_file(a.dim(), vec![set_block("A", &a), set_block("B", &b)])
            }
            GenPair::Strong => {
                let (a, b) = corpus::strong_pair(g.seed);
                sep_file(a.dim(), vec![set_block("A", &a), polytope_block("B", &b)])
            }
            GenPair::Cones => {
                let (m, k) = corpus::cone_pair(g.seed);
                sep_file(m.dim(), vec![set_block("M", &m), set_block("K", &k)])
            }
            GenPair::Sandwich => {
                let (f, h) = corpus::pwl_pair(g.seed);
                sep_file(f.dim, vec![pwl_block("f", &f), pwl_block("g", &h)])
            }
        },
        GenKind::Vop => {
            let inst = if g.coarse {
                corpus::coarse_vop_instance(g.seed)
            } else {
                corpus::vop_instance(g.seed)
            };
            vop_file(&inst)
        }
    };
    Ok(Output::Text(file.serialize()))
}

fn sep_file(dim: usize, blocks: Vec<Block>) -> InstanceFile {
    InstanceFile {
        kind: Kind::Sep,
        dim,
        blocks,
    }
}
