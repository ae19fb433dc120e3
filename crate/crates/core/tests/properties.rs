//! Property tests with oracles that avoid the LP kernel.

use proptest::prelude::*;

use cvxcore::corpus;
use cvxcore::exactlin::{int, QVector, Rational};
use cvxcore::lpexact::LinearConstraint;
use cvxcore::polyrep::{h_to_v, v_to_h, HRep};
use cvxcore::semiset::{equal, ConvexCell, SemilinearSet};
use cvxcore::vopt::{classify_proper_closed, Image, OrderingCone, VopInstance};
use rand::Rng;

fn det(a: &QVector, b: &QVector) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// `d ∈ cone{k1, k2} ∖ {0}` by Cramer's rule.
fn in_cone_nonzero(d: &QVector, k1: &QVector, k2: &QVector) -> bool {
    let den = det(k1, k2);
    let a = det(d, k2) / &den;
    let b = det(k1, d) / &den;
    a >= int(0) && b >= int(0) && !d.is_zero()
}

fn pt() -> impl Strategy<Value = QVector> {
    (-4i64..=4, -4i64..=4).prop_map(|(x, y)| QVector::from_ints(&[x, y]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// With a finite image, `y0` is Benson efficient exactly when no
    /// `y0 − y` lies in `K ∖ {0}`.
    #[test]
    fn benson_matches_cone_membership(
        ys in prop::collection::vec(pt(), 1..=5),
        k1 in pt(),
        k2 in pt(),
        pick in 0usize..5,
    ) {
        prop_assume!(det(&k1, &k2) != int(0));
        let k = OrderingCone::new(2, vec![k1.clone(), k2.clone()]).unwrap();
        let y0 = ys[pick % ys.len()].clone();
        let inst = VopInstance::new(Image::Finite(ys.clone()), k, None).unwrap();
        let (bev, _) = classify_proper_closed(&inst, &y0).unwrap();
        let dominated = ys.iter().any(|y| in_cone_nonzero(&y0.sub(y), &k1, &k2));
        prop_assert_eq!(bev.is_yes(), !dominated);
        prop_assert_eq!(bev.is_no(), dominated);
    }

    /// `v_to_h ∘ h_to_v` describes the same polyhedron.
    #[test]
    fn hrep_round_trip(seed in 0u64..100_000) {
        let mut r = corpus::rng(seed);
        let dim = r.gen_range(1..=3);
        let mut rows = Vec::new();
        for i in 0..dim {
            let e = QVector::unit(dim, i);
            rows.push(LinearConstraint::le(e.clone(), int(4)));
            rows.push(LinearConstraint::ge(e, int(-4)));
        }
        for _ in 0..r.gen_range(0..=4) {
            let a = QVector::new((0..dim).map(|_| int(r.gen_range(-3..=3))).collect());
            rows.push(LinearConstraint::le(a, int(r.gen_range(-2..=4))));
        }
        let h = HRep::new(dim, rows.clone()).unwrap();
        let back = v_to_h(&h_to_v(&h));
        let cell = |rows: Vec<LinearConstraint>| {
            SemilinearSet::from_cell(ConvexCell::new(dim, rows).unwrap())
        };
        prop_assert!(equal(&cell(rows), &cell(back.constraints)).unwrap());
    }
}
