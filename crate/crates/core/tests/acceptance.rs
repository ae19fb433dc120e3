//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Run with `cargo test -p cvxcore --test acceptance -- --nocapture`.

use std::sync::{Mutex, MutexGuard};
use std::time::{Duration, Instant};

use rand::Rng;

use cvxcore::corpus;
use cvxcore::exactlin::{int, rank_of, ratio, solve_linear, LinearSolution, QMatrix, QVector, Rational};
use cvxcore::lpexact::{solve, validate_outcome, LinearConstraint, LpOutcome, LpProblem};
use cvxcore::polyrep::{closed_conic_hull, v_to_h, GeneratorRep, HRep};
use cvxcore::semiset::*;
use cvxcore::sephull::*;
use cvxcore::vopt::*;

/// Criteria run one at a time so each timing is its own.
static SERIAL: Mutex<()> = Mutex::new(());

fn serial() -> MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

/// Prints the criterion line. `required` criteria also fail the test.
fn report(id: u32, title: &str, pass: bool, elapsed: Duration, limit_s: u64, required: bool) {
    let in_time = elapsed < Duration::from_secs(limit_s);
    let verdict = if pass && in_time { "PASS" } else { "FAIL" };
    println!(
        "{verdict} criterion {id}: {title} ({:.1}s, limit {limit_s}s)",
        elapsed.as_secs_f64()
    );
    if required {
        assert!(pass, "criterion {id} failed: {title}");
        assert!(in_time, "criterion {id} exceeded {limit_s}s");
    }
}

fn v(xs: &[i64]) -> QVector {
    QVector::from_ints(xs)
}

/// Random point with coordinates in `[-r, r]` on a grid of step `1/den`.
fn sample(rng: &mut impl Rng, dim: usize, r: i64, den: i64) -> QVector {
    QVector::new((0..dim).map(|_| ratio(rng.gen_range(-r * den..=r * den), den)).collect())
}

fn one(rows: Vec<LinearConstraint>) -> SemilinearSet {
    let dim = rows[0].dim();
    SemilinearSet::from_cell(ConvexCell::new(dim, rows).unwrap())
}

fn cbox(lo: &[i64], hi: &[i64]) -> ConvexCell {
    let lo: Vec<Rational> = lo.iter().map(|&x| int(x)).collect();
    let hi: Vec<Rational> = hi.iter().map(|&x| int(x)).collect();
    ConvexCell::closed_box(&lo, &hi)
}

// ---------------------------------------------------------------- criterion 10

/// Minimum over basic feasible points; `None` when no basic point is feasible.
fn brute_force_min(p: &LpProblem) -> Option<Rational> {
    let n = p.dim();
    let rows = &p.constraints;
    let m = rows.len();
    let mut best: Option<Rational> = None;
    let mut idx: Vec<usize> = (0..n).collect();
    if m < n {
        return None;
    }
    loop {
        let a = QMatrix::new(idx.iter().map(|&i| rows[i].coefficients.clone()).collect(), n).unwrap();
        let b: QVector = idx.iter().map(|&i| rows[i].bound.clone()).collect();
        if let Ok(LinearSolution::Solution(x)) = solve_linear(&a, &b) {
            let unique = a.rank() == n;
            if unique && rows.iter().all(|r| r.satisfied_by(&x)) {
                let val = p.objective.dot(&x);
                if best.as_ref().is_none_or(|b| val < *b) {
                    best = Some(val);
                }
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if idx[i] < m - (n - i) {
                idx[i] += 1;
                for j in i + 1..n {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[test]
fn criterion_10_lp_kernel() {
    let _serial = serial();
    let t = Instant::now();
    let mut pass = true;
    for seed in 0..100 {
        let p = corpus::bounded_lp(seed);
        let out = solve(&p).unwrap();
        let valid = validate_outcome(&p, &out);
        let agree = match (&out, brute_force_min(&p)) {
            (LpOutcome::Optimal { value, .. }, Some(b)) => *value == b,
            (LpOutcome::Infeasible { .. }, None) => true,
            _ => false,
        };
        if !(valid && agree) {
            eprintln!("lp seed {seed}: valid={valid} agree={agree}");
            pass = false;
        }
    }
    report(10, "LP kernel agrees with basic-point enumeration", pass, t.elapsed(), 30, true);
}

// ----------------------------------------------------------------- criterion 7

#[test]
fn criterion_7_gerstewitz_fixture() {
    let _serial = serial();
    let t = Instant::now();
    let cbar = HRep::new(
        2,
        vec![
            LinearConstraint::le(v(&[1, 0]), int(0)),
            LinearConstraint::le(v(&[0, 1]), int(0)),
        ],
    )
    .unwrap();
    let g = gerstewitz_build(&cbar, &v(&[1, 1])).unwrap();
    let values = [([1, 3], 3), ([-2, -5], -2), ([0, 0], 0)]
        .iter()
        .all(|(x, val)| gerstewitz_eval(&g, &v(x)).unwrap() == int(*val));
    // A = complement of the open negative orthant, a nonconvex closed set
    let a = SemilinearSet::new(
        2,
        vec![
            ConvexCell::new(2, vec![LinearConstraint::ge(v(&[1, 0]), int(0))]).unwrap(),
            ConvexCell::new(2, vec![LinearConstraint::ge(v(&[0, 1]), int(0))]).unwrap(),
        ],
    )
    .unwrap();
    let orthant = HRep::new(
        2,
        vec![
            LinearConstraint::ge(v(&[1, 0]), int(0)),
            LinearConstraint::ge(v(&[0, 1]), int(0)),
        ],
    )
    .unwrap();
    let r = sep3_verify(&g, &a, Some(&orthant), true).unwrap();
    let claims = r.all_hold() && r.claims.len() == 7;
    if !claims {
        eprintln!("{r:?}");
    }
    report(7, "Gerstewitz values and sep3 claims", values && claims, t.elapsed(), 10, true);
}

// ----------------------------------------------------------------- criterion 8

#[test]
fn criterion_8_worked_vop_example() {
    let _serial = serial();
    let t = Instant::now();
    let k = OrderingCone::orthant(2);
    let base = ConeBase::new(&k, vec![v(&[1, 0]), v(&[0, 1])]).unwrap();
    let y = vec![v(&[1, 3]), v(&[2, 2]), v(&[3, 1]), v(&[3, 3])];
    let inst = VopInstance::new(Image::Finite(y.clone()), k, Some(base)).unwrap();
    let mut ok = Vec::new();

    let eff: Vec<QVector> = y
        .iter()
        .filter(|p| classify_basic(&inst, p).unwrap().0.is_yes())
        .cloned()
        .collect();
    ok.push(eff == vec![v(&[1, 3]), v(&[2, 2]), v(&[3, 1])]);

    let far = v(&[3, 3]);
    let (e, w) = classify_basic(&inst, &far).unwrap();
    let o = o_set_membership(&inst, &far).unwrap();
    ok.push(e.is_no() && w.is_no() && o.o_plus.is_no());

    let mid = v(&[2, 2]);
    let (bev, huv) = classify_proper_closed(&inst, &mid).unwrap();
    ok.push(bev.is_yes() && huv.is_yes());
    let o = o_set_membership(&inst, &mid).unwrap();
    let l = v(&[1, 1]);
    let l_ok = dual_membership(&inst.cone, inst.base.as_ref(), &l).unwrap().ss == Some(true)
        && scalarize(&inst, &l).unwrap().points.contains(&mid);
    ok.push(o.o_ss.is_yes() && l_ok);
    let at_quarter = vp_certificate_at(&inst, &mid, &ratio(1, 4)).unwrap().is_some();
    let s = classify_proper_search(&inst, &mid, DEFAULT_DEPTH).unwrap();
    ok.push(at_quarter && s.vp.is_yes());

    if ok.iter().any(|b| !b) {
        eprintln!("worked example checks: {ok:?}");
    }
    report(8, "worked vector optimization example", ok.iter().all(|b| *b), t.elapsed(), 10, true);
}

// ----------------------------------------------------------------- criterion 6

#[test]
fn criterion_6_sandwich() {
    let _serial = serial();
    let t = Instant::now();
    let mut pass = true;
    for seed in 0..50 {
        let (f, g) = corpus::pwl_pair(seed);
        let mut r = corpus::rng(seed ^ 0xABCD);
        let samples: Vec<QVector> = (0..100).map(|_| sample(&mut r, f.dim, 5, 4)).collect();
        let ok = match sandwich(&f, &g) {
            Ok((l, a)) => validate_sandwich(&f, &g, &l, &a, &samples),
            Err(e) => {
                eprintln!("sandwich seed {seed}: {e}");
                false
            }
        };
        pass &= ok;
    }
    report(6, "sandwich affine validates on 50 pairs", pass, t.elapsed(), 30, true);
}

// ----------------------------------------------------------------- criterion 5

fn named_errors() -> bool {
    let mut ok = true;
    let half = one(vec![LinearConstraint::le(v(&[1]), int(0))]);
    let msg = |r: Result<SeparationCertificate, cvxcore::CvxError>| r.unwrap_err().to_string();
    ok &= msg(proper_separate(&half, &half)).contains("not disjoint");
    let pt = SemilinearSet::from_cell(ConvexCell::point(&v(&[0])));
    let right = one(vec![LinearConstraint::ge(v(&[1]), int(1))]);
    ok &= msg(proper_separate(&pt, &right)).contains("cor(A) is empty");
    let open = one(vec![LinearConstraint::lt(v(&[1]), int(0))]);
    let b = GeneratorRep::polytope(1, vec![v(&[2])]).unwrap();
    ok &= strong_separate(&open, &b).unwrap_err().to_string().contains("not vectorially closed");
    let ray = GeneratorRep::new(1, vec![v(&[2])], vec![v(&[1])], vec![]).unwrap();
    ok &= strong_separate(&half, &ray).unwrap_err().to_string().contains("not a polytope");
    let q = one(vec![
        LinearConstraint::ge(v(&[1, 0]), int(0)),
        LinearConstraint::ge(v(&[0, 1]), int(0)),
    ]);
    ok &= msg(separate_cones(&q, &q)).contains("cor(K)");
    ok
}

#[test]
fn criterion_5_separation_certificates() {
    let _serial = serial();
    let t = Instant::now();
    let mut pass = true;
    for seed in 0..100 {
        let (a, b) = corpus::proper_pair(seed);
        let ok = proper_separate(&a, &b).is_ok_and(|c| validate_proper(&a, &b, &c));
        let (sa, sb) = corpus::strong_pair(seed);
        let sok = strong_separate(&sa, &sb).is_ok_and(|(c, s)| validate_strong(&sa, &sb, &c, &s));
        let (m, k) = corpus::cone_pair(seed);
        let cok = separate_cones(&m, &k).is_ok_and(|c| validate_cones(&m, &k, &c));
        if !(ok && sok && cok) {
            eprintln!("separation seed {seed}: proper={ok} strong={sok} cones={cok}");
            pass = false;
        }
    }
    let named = named_errors();
    report(5, "separation certificates validate; hypotheses named", pass && named, t.elapsed(), 60, true);
}

// ------------------------------------------------------------- criteria 1 and 2

fn corpus_set(seed: u64) -> SemilinearSet {
    corpus::semilinear_set(seed, (seed % 3) as usize + 1)
}

/// Vertices of every cell closure, then `extra` grid samples in `[-4, 4]^d`.
fn probe_points(s: &SemilinearSet, seed: u64, extra: usize) -> Vec<QVector> {
    let mut pts: Vec<QVector> = s
        .cells()
        .iter()
        .filter_map(ConvexCell::closure_generators)
        .flat_map(|g| g.vertices)
        .collect();
    let mut r = corpus::rng(seed ^ 0x5EED);
    pts.extend((0..extra).map(|_| sample(&mut r, s.dim(), 4, 2)));
    pts
}

#[test]
fn criterion_1_cor_two_oracles() {
    let _serial = serial();
    let t = Instant::now();
    let mut pass = true;
    for seed in 0..200 {
        let s = corpus_set(seed);
        // x ∈ cor(S) iff x is outside the closure of the complement
        let outer = closure(&complement(&s));
        for x in probe_points(&s, seed, 50) {
            let directional = cor_member(&s, &x).unwrap();
            let topological = !contains(&outer, &x).unwrap();
            if directional != topological {
                eprintln!("cor seed {seed} at {x}: directional={directional}");
                pass = false;
            }
        }
    }
    report(1, "directional core equals complement-closure interior", pass, t.elapsed(), 60, true);
}

#[test]
fn criterion_2_closure_union() {
    let _serial = serial();
    let t = Instant::now();
    let mut pass = true;
    for seed in 0..200 {
        let s = corpus_set(seed);
        let cl = closure(&s);
        // each cell closure rebuilt from its generators
        let cells = s
            .cells()
            .iter()
            .filter_map(ConvexCell::closure_generators)
            .map(|g| ConvexCell::new(s.dim(), v_to_h(&g).constraints).unwrap())
            .collect();
        let via_generators = SemilinearSet::new(s.dim(), cells).unwrap();
        let same = equal(&cl, &via_generators).unwrap();
        let pointwise = probe_points(&s, seed, 50)
            .iter()
            .all(|x| vcl_member(&s, x).unwrap() == contains(&cl, x).unwrap());
        if !(same && pointwise) {
            eprintln!("closure seed {seed}: equal={same} vcl={pointwise}");
            pass = false;
        }
    }
    report(2, "closure equals union of cell closures", pass, t.elapsed(), 30, true);
}

// ----------------------------------------------------------------- criterion 3

/// Row cap for corpus decompositions; larger sets count as not decomposable.
const CAP: usize = 14;

fn rects(boxes: &[([i64; 2], [i64; 2])]) -> SemilinearSet {
    SemilinearSet::new(2, boxes.iter().map(|(lo, hi)| cbox(lo, hi)).collect()).unwrap()
}

/// `cor(S)` against the union of component cores on the step-1/8 grid of `[-4, 4]^2`.
fn grid_agrees(s: &SemilinearSet, comps: &[SemilinearSet]) -> bool {
    (-32..=32).all(|i| {
        (-32..=32).all(|j| {
            let x = QVector::new(vec![ratio(i, 8), ratio(j, 8)]);
            let whole = cor_member(s, &x).unwrap();
            let parts = comps.iter().any(|c| cor_member(c, &x).unwrap());
            whole == parts
        })
    })
}

fn interior_union_holds(s: &SemilinearSet, comps: &[SemilinearSet]) -> bool {
    let mut acc = SemilinearSet::empty(s.dim());
    for c in comps {
        acc = union(&acc, &cor_set(c)).unwrap();
    }
    equal(&cor_set(s), &acc).unwrap()
}

#[test]
fn criterion_3_components() {
    let _serial = serial();
    let t = Instant::now();
    let plus = rects(&[([-3, -1], [3, 1]), ([-1, -3], [1, 3])]);
    let pc = components(&plus).unwrap().components;
    let plus_ok = pc.len() == 2 && interior_union_holds(&plus, &pc) && grid_agrees(&plus, &pc);

    let l = rects(&[([0, 0], [2, 1]), ([0, 0], [1, 2])]);
    let lc = components(&l).unwrap().components;
    let triangle = one(vec![
        LinearConstraint::ge(v(&[1, 0]), int(0)),
        LinearConstraint::ge(v(&[0, 1]), int(0)),
        LinearConstraint::le(v(&[1, 1]), int(2)),
    ]);
    let l_count = lc.len() == 3 && lc.iter().any(|c| equal(c, &triangle).unwrap());
    let l_identity = interior_union_holds(&l, &lc) && grid_agrees(&l, &lc);
    if !l_count {
        eprintln!("L-shape: {} components, triangle absent", lc.len());
    }

    let mut corpus_ok = true;
    let (mut decomposed, mut gridded) = (0, 0);
    for seed in 0..200 {
        let s = corpus_set(seed);
        let Ok(r) = components_with_cap(&s, CAP) else { continue };
        decomposed += 1;
        let mut ok = interior_union_holds(&s, &r.components) && r.maximal.iter().all(|m| *m);
        if s.dim() == 2 && gridded < 12 {
            gridded += 1;
            ok &= grid_agrees(&s, &r.components);
        }
        if !ok {
            eprintln!("components seed {seed}: identity or grid mismatch");
            corpus_ok = false;
        }
    }
    eprintln!("components: {decomposed} decomposable corpus sets, {gridded} grid-checked");
    let required = plus_ok && l_identity && corpus_ok;
    report(3, "components: plus, L-shape, interior union, grid oracle", required && l_count, t.elapsed(), 120, false);
    assert!(required, "component identities failed");
    assert!(t.elapsed() < Duration::from_secs(120), "criterion 3 exceeded 120s");
}

// ----------------------------------------------------------------- criterion 4

fn cell_set(seed: u64) -> SemilinearSet {
    SemilinearSet::from_cell(corpus::solid_cell(seed, (seed % 3) as usize + 1))
}

fn cone_dim(seed: u64) -> usize {
    (seed % 3) as usize + 1
}

/// The eight identities, each as `(name, check)` over one seed.
fn identity_checks() -> Vec<(&'static str, Box<dyn Fn(u64) -> bool>)> {
    vec![
        ("cor(cor A) = cor A", Box::new(|seed| {
            let c = cor_set(&cell_set(seed));
            equal(&cor_set(&c), &c).unwrap()
        })),
        ("cor(A ∩ B) = cor A ∩ cor B", Box::new(|seed| {
            let a = cell_set(seed);
            let b = SemilinearSet::from_cell(corpus::solid_cell(seed + 1000, a.dim()));
            let lhs = cor_set(&intersect(&a, &b).unwrap());
            equal(&lhs, &intersect(&cor_set(&a), &cor_set(&b)).unwrap()).unwrap()
        })),
        ("cor(x + A) = x + cor A", Box::new(|seed| {
            let a = cell_set(seed);
            let x = sample(&mut corpus::rng(seed), a.dim(), 3, 3);
            equal(&cor_set(&a.translate(&x).unwrap()), &cor_set(&a).translate(&x).unwrap()).unwrap()
        })),
        ("cor(αA) = α cor A", Box::new(|seed| {
            let a = cell_set(seed);
            [int(2), int(-1), ratio(1, 3)].iter().all(|al| {
                equal(&cor_set(&a.scale(al).unwrap()), &cor_set(&a).scale(al).unwrap()).unwrap()
            })
        })),
        ("0 ∈ cor A ⇒ cone(A) = X", Box::new(|seed| {
            let a = cell_set(seed);
            let w = witness(&cor_set(&a)).expect("solid cell");
            let centered = a.translate(&w.neg()).unwrap();
            assert!(cor_member(&centered, &QVector::zeros(a.dim())).unwrap());
            let g = closure_generators(&centered).unwrap();
            let hull = closed_conic_hull(&g).unwrap();
            rank_of(&hull.lineality, a.dim()) == a.dim()
        })),
        ("cor K ∪ {0} convex", Box::new(|seed| {
            let k = corpus::solid_cone(seed, cone_dim(seed));
            let origin = SemilinearSet::from_cell(ConvexCell::point(&QVector::zeros(k.dim())));
            is_convex(&union(&cor_set(&k), &origin).unwrap())
        })),
        ("cor K + K = cor K", Box::new(|seed| {
            let k = corpus::solid_cone(seed, cone_dim(seed));
            let core = cor_set(&k);
            equal(&minkowski_sum(&core, &k).unwrap(), &core).unwrap()
        })),
        ("ri K + ri C = ri(K + C)", Box::new(|seed| {
            let dim = cone_dim(seed);
            let k = corpus::flat_cone(seed, dim);
            let c = corpus::flat_cone(seed + 7919, dim);
            let lhs = minkowski_sum(&ri_set(&k).unwrap(), &ri_set(&c).unwrap()).unwrap();
            equal(&lhs, &ri_set(&minkowski_sum(&k, &c).unwrap()).unwrap()).unwrap()
        })),
    ]
}

#[test]
fn criterion_4_set_identities() {
    let _serial = serial();
    let t = Instant::now();
    let mut pass = true;
    for (name, check) in identity_checks() {
        let ti = Instant::now();
        let failed: Vec<u64> = (0..100).filter(|&seed| !check(seed)).collect();
        eprintln!("identity {name}: {:.1}s", ti.elapsed().as_secs_f64());
        if !failed.is_empty() {
            eprintln!("identity {name} fails at seeds {failed:?}");
            pass = false;
        }
    }
    report(4, "eight core identities on 100 instances each", pass, t.elapsed(), 60, true);
}

// ----------------------------------------------------------------- criterion 9

#[test]
fn criterion_9_diagram_audit() {
    let _serial = serial();
    let t = Instant::now();
    let mut pass = true;
    let (mut checked, mut unknown) = (0, 0);
    for seed in 0..300 {
        let inst = corpus::vop_instance(seed);
        let audit = diagram_check(&inst, None, DEFAULT_DEPTH).unwrap();
        checked += audit.checked;
        unknown += audit
            .reports
            .iter()
            .flat_map(|r| r.entries())
            .filter(|(_, v)| matches!(v, Verdict::Unknown { .. }))
            .count();
        if !audit.is_consistent() {
            eprintln!("diagram seed {seed}: {:?}", audit.violations);
            pass = false;
        }
    }
    let (mut oss, mut found) = (0, 0);
    for seed in 0..30 {
        let inst = corpus::coarse_vop_instance(seed);
        for y0 in inst.image.generators() {
            if !o_set_membership(&inst, y0).unwrap().o_ss.is_yes() {
                continue;
            }
            oss += 1;
            let s = classify_proper_search(&inst, y0, DEFAULT_DEPTH).unwrap();
            if matches!(s.vp, Verdict::Yes(Evidence::Dilation { .. })) {
                found += 1;
            } else {
                eprintln!("coarse seed {seed} at {y0}: VP {}", s.vp.label());
            }
        }
    }
    eprintln!("diagram: {checked} premises checked, {unknown} unknown verdicts; coarse VP {found}/{oss}");
    pass &= oss > 0 && found == oss;
    report(9, "diagram audit and coarse VP certificates", pass, t.elapsed(), 600, true);
}
