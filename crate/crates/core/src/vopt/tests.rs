use super::*;
use crate::exactlin::ratio;

fn v(xs: &[i64]) -> QVector {
    QVector::from_ints(xs)
}

fn worked() -> VopInstance {
    let k = OrderingCone::orthant(2);
    let base = ConeBase::new(&k, vec![v(&[1, 0]), v(&[0, 1])]).unwrap();
    let y = vec![v(&[1, 3]), v(&[2, 2]), v(&[3, 1]), v(&[3, 3])];
    VopInstance::new(Image::Finite(y), k, Some(base)).unwrap()
}

#[test]
fn cone_flags() {
    let k = OrderingCone::orthant(2);
    assert!(k.pointed && k.solid);
    let ray = OrderingCone::new(2, vec![v(&[1, 0])]).unwrap();
    assert!(ray.pointed && !ray.solid);
    let half = OrderingCone::new(2, vec![v(&[1, 0]), v(&[-1, 0]), v(&[0, 1])]).unwrap();
    assert!(!half.pointed);
    let whole = OrderingCone::new(1, vec![v(&[1]), v(&[-1])]);
    assert!(whole.is_err());
    assert!(VopInstance::new(Image::Finite(vec![v(&[0, 0])]), half, None).is_err());
}

#[test]
fn base_checks() {
    let k = OrderingCone::orthant(2);
    assert!(ConeBase::new(&k, vec![v(&[1, 0])]).is_err());
    assert!(ConeBase::new(&k, vec![v(&[1, 0]), v(&[-1, 1])]).is_err());
    assert!(ConeBase::new(&k, vec![v(&[1, 0]), v(&[0, 0]), v(&[0, 1])]).is_err());
    let b = ConeBase::from_cone(&k).unwrap();
    assert_eq!(b.polytope.vertices.len(), 2);
}

#[test]
fn basic_examples() {
    let inst = worked();
    let (eff, weff) = classify_basic(&inst, &v(&[2, 2])).unwrap();
    assert!(eff.is_yes() && weff.is_yes());
    let (eff, weff) = classify_basic(&inst, &v(&[3, 3])).unwrap();
    assert_eq!(eff, Verdict::No(Evidence::Witness(v(&[1, 3]))));
    assert_eq!(weff, Verdict::No(Evidence::Witness(v(&[2, 2]))));
    assert!(classify_basic(&inst, &v(&[0, 0])).is_err());

    let single = VopInstance::new(Image::Finite(vec![v(&[5, 5])]), OrderingCone::orthant(2), None).unwrap();
    assert!(classify_basic(&single, &v(&[5, 5])).unwrap().0.is_yes());
}

#[test]
fn proper_closed_examples() {
    let inst = worked();
    let (bev, huv) = classify_proper_closed(&inst, &v(&[2, 2])).unwrap();
    assert!(bev.is_yes() && huv.is_yes());
    let (bev, _) = classify_proper_closed(&inst, &v(&[3, 3])).unwrap();
    match bev {
        Verdict::No(Evidence::Witness(x)) => {
            assert!(!x.is_zero());
            assert!(inst.cone.contains(&x.neg()));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn search_examples() {
    let inst = worked();
    let s = classify_proper_search(&inst, &v(&[2, 2]), DEFAULT_DEPTH).unwrap();
    assert!(s.vp.is_yes() && s.vh.is_yes() && s.strict.is_yes() && s.strong.is_yes());
    assert!(s.super_eff.is_yes());
    match &s.vp {
        Verdict::Yes(Evidence::Dilation { eps, .. }) => assert_eq!(eps, &ratio(1, 4)),
        other => panic!("{other:?}"),
    }
    assert!(vp_certificate_at(&inst, &v(&[2, 2]), &ratio(1, 2)).unwrap().is_none());
    let cert = vp_certificate_at(&inst, &v(&[2, 2]), &ratio(1, 4)).unwrap();
    match cert {
        Some(Evidence::Dilation { rays, functional, .. }) => {
            let mut prim: Vec<QVector> = rays.iter().map(QVector::primitive).collect();
            prim.sort();
            assert_eq!(prim, vec![v(&[-1, 3]), v(&[3, -1])]);
            assert!(functional.dot(&v(&[3, -1])).is_positive());
        }
        other => panic!("{other:?}"),
    }
    let s = classify_proper_search(&inst, &v(&[3, 3]), DEFAULT_DEPTH).unwrap();
    assert_eq!(s.vh, Verdict::No(Evidence::Implied("BeV refuted")));
    assert!(s.vp.is_no());
    let no_base = VopInstance { base: None, ..inst };
    assert!(classify_proper_search(&no_base, &v(&[2, 2]), 3).is_err());
}

#[test]
fn scalarize_examples() {
    let inst = worked();
    let o = scalarize(&inst, &v(&[1, 1])).unwrap();
    assert_eq!(o.value, int(4));
    assert_eq!(o.points, vec![v(&[1, 3]), v(&[2, 2]), v(&[3, 1])]);
    let o = scalarize(&inst, &v(&[1, 0])).unwrap();
    assert_eq!((o.value, o.points), (int(1), vec![v(&[1, 3])]));
    assert!(scalarize(&inst, &v(&[0, 0])).is_err());
}

#[test]
fn dual_examples() {
    let inst = worked();
    let k = &inst.cone;
    let base = inst.base.as_ref();
    let d = dual_membership(k, base, &v(&[1, 1])).unwrap();
    assert!(d.plus && d.plus_strict && d.ss == Some(true));
    let d = dual_membership(k, base, &v(&[1, 0])).unwrap();
    assert!(d.plus && !d.plus_strict && d.ss == Some(false));
    let l = kss_find(base.unwrap()).unwrap();
    assert!(dual_membership(k, base, &l).unwrap().ss == Some(true));
}

#[test]
fn o_set_examples() {
    let inst = worked();
    let o = o_set_membership(&inst, &v(&[2, 2])).unwrap();
    match &o.o_ss {
        Verdict::Yes(Evidence::Functional(l)) => {
            assert!(l[0].is_positive() && l[0] == l[1]);
        }
        other => panic!("{other:?}"),
    }
    let o = o_set_membership(&inst, &v(&[3, 3])).unwrap();
    assert!(o.o_plus.is_no() && o.o_s.is_no() && o.o_ss.is_no());
    let o = o_set_membership(&inst, &v(&[1, 3])).unwrap();
    assert!(o.o_s.is_yes());
}

#[test]
fn weff_examples() {
    let inst = worked();
    let c = weff_certificate(&inst, &v(&[1, 3]), &v(&[1, 1])).unwrap();
    assert!(c.all_hold() && c.weakly_efficient());
    let g = &c.functional;
    let expect = [([1, 3], 0), ([2, 2], 1), ([3, 1], 2), ([3, 3], 2)];
    for (y, val) in expect {
        assert_eq!(crate::sephull::gerstewitz_eval(g, &v(&y)).unwrap(), int(val));
    }
    let c = weff_certificate(&inst, &v(&[3, 3]), &v(&[1, 1])).unwrap();
    assert_eq!(c.image_min, int(-1));
    assert_eq!(c.witness, Some(v(&[2, 2])));
    assert!(!c.claims[1].holds);
    assert!(weff_certificate(&inst, &v(&[1, 3]), &v(&[1, 0])).is_err());

    let single = VopInstance::new(Image::Finite(vec![v(&[0, 0])]), OrderingCone::orthant(2), None).unwrap();
    assert!(weff_certificate(&single, &v(&[0, 0]), &v(&[2, 1])).unwrap().weakly_efficient());
}

#[test]
fn worked_diagram() {
    let inst = worked();
    let audit = diagram_check(&inst, None, DEFAULT_DEPTH).unwrap();
    assert!(audit.is_consistent(), "{:?}", audit.violations);
    let eff: Vec<&QVector> = audit
        .reports
        .iter()
        .filter(|r| r.eff.is_yes())
        .map(|r| &r.point)
        .collect();
    assert_eq!(eff, vec![&v(&[1, 3]), &v(&[2, 2]), &v(&[3, 1])]);
    assert!(classify(&inst, &v(&[2, 2]), 4).unwrap().o_ss.is_yes());
}

#[test]
fn polytope_image() {
    // segment from (0,2) to (2,0) plus the dominated corner (2,2)
    let img = GeneratorRep::polytope(2, vec![v(&[0, 2]), v(&[2, 0]), v(&[2, 2])]).unwrap();
    let k = OrderingCone::orthant(2);
    let base = ConeBase::from_cone(&k).unwrap();
    let inst = VopInstance::new(Image::Polytope(img), k, Some(base)).unwrap();
    let mid = v(&[1, 1]);
    let r = classify(&inst, &mid, DEFAULT_DEPTH).unwrap();
    assert!(r.eff.is_yes() && r.bev.is_yes() && r.vp.is_yes() && r.o_ss.is_yes());
    assert!(r.strict.is_yes() && r.strong.is_yes());
    let r = classify(&inst, &v(&[2, 2]), DEFAULT_DEPTH).unwrap();
    assert!(r.eff.is_no() && r.vp.is_no() && r.strict.is_no());
    let c = weff_certificate(&inst, &v(&[2, 2]), &v(&[1, 1])).unwrap();
    assert!(!c.weakly_efficient());
    assert_eq!(c.image_min, int(-1));
}

#[test]
fn endpoint_of_flat_front() {
    // (0,1) on the segment (0,1)-(0,2): weakly but not properly efficient
    let y = vec![v(&[0, 1]), v(&[0, 2]), v(&[1, 0])];
    let k = OrderingCone::orthant(2);
    let base = ConeBase::from_cone(&k).unwrap();
    let inst = VopInstance::new(Image::Finite(y), k, Some(base)).unwrap();
    let r = classify(&inst, &v(&[0, 2]), DEFAULT_DEPTH).unwrap();
    assert!(r.eff.is_no() && r.weff.is_yes());
    assert!(r.o_plus.is_yes() && r.o_s.is_no());
}
