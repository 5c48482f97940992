mod common;

use common::*;
use proptest::prelude::*;
use stratkit::poly::ratio;
use stratkit::{fixtures, Analysis, CSet, Containment, Ideal, Piece, Ring};

fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|g| p(r, g)).collect()).unwrap()
}

fn piece(r: &Ring, closure: &[&str], except: &[&str]) -> Piece {
    Piece::new(ideal(r, closure), ideal(r, except)).unwrap()
}

fn x123() -> Ring {
    ring(&["x1", "x2", "x3"])
}

#[test]
fn normalization_keeps_a_saturated_closure() {
    let r = x123();
    let v21 = piece(&r, &["3*x1^2 - x2*x3"], &["x3"]).normalize().unwrap();
    let expect = ideal(&r, &["3*x1^2 - x2*x3"]);
    assert!(v21.closure_ideal().same_ideal(&expect).unwrap());
    let xy = ring(&["x", "y"]);
    let n = piece(&xy, &["x*y"], &["x"]).normalize().unwrap();
    assert!(n.closure_ideal().same_ideal(&ideal(&xy, &["y"])).unwrap());
    let closed = piece(&xy, &["x"], &["1"]).normalize().unwrap();
    assert!(closed.is_closed().unwrap());
}

#[test]
fn emptiness_examples() {
    let r = ring(&["x", "y"]);
    assert!(piece(&r, &["x"], &["x"]).is_empty().unwrap());
    assert!(!piece(&r, &["x"], &["y"]).is_empty().unwrap());
    assert!(piece(&r, &["1"], &["x*y + 3"]).is_empty().unwrap());
    assert_eq!(CSet::empty(&r).dimension().unwrap(), -1);
    assert!(CSet::empty(&r).closure().unwrap().is_unit().unwrap());
    let rep = CSet::empty(&r).is_pure_dimensional().unwrap();
    assert!(rep.pure);
}

/// V²₂ = {x₁ = 0, x₂x₃ ≠ 0} with the x₃-axis removed: membership follows the
/// defining conditions.
#[test]
fn removing_an_axis_from_a_plane() {
    let r = x123();
    let v22 = piece(&r, &["x1"], &["x2*x3"]);
    let axis = ideal(&r, &["x1", "x2"]);
    let d = v22.difference(&axis).unwrap();
    assert!(d.contains_point(&pt(&[0, 1, 1])).unwrap());
    assert!(!d.contains_point(&pt(&[0, 0, 1])).unwrap());
    assert!(!d.contains_point(&pt(&[1, 1, 1])).unwrap());
    assert!(d.contains_point(&pt(&[0, -2, 5])).unwrap());
    let a = piece(&r, &["x1"], &["x2"]);
    let same = a.difference(&Ideal::unit(&r)).unwrap();
    assert!(same.is_subset_of(&CSet::from_pieces(&r, vec![a.clone()])).unwrap());
    assert!(CSet::from_pieces(&r, vec![a.clone()]).is_subset_of(&same).unwrap());
    let aa = a.intersect(&a).unwrap();
    assert!(aa.is_subset_of(&a).unwrap() && a.is_subset_of(&aa).unwrap());
    assert!(d.contains_point(&pt(&[0])).is_err());
}

#[test]
fn critical_values_of_the_reference_map() {
    let an = Analysis::new(fixtures::pasferme()).unwrap();
    let t = an.target().clone();
    let k0 = an.k0().unwrap();
    assert!(k0.contains_point(&pt(&[0, 0, 0])).unwrap());
    assert!(!k0.contains_point(&pt(&[0, 0, 1])).unwrap());
    assert!(k0.contains_point(&pt(&[-2, 3, 1])).unwrap());
    // The cusp curve in {α₃ = 0}: 27α₁² = 4α₂³ at (2s³, 3s², 0).
    for s in [1, 2, -3] {
        let c = pt(&[2 * s * s * s, 3 * s * s, 0]);
        assert!(!k0.contains_point(&c).unwrap());
    }
    let closure = k0.closure().unwrap();
    let expect = ideal(&t, &["27*a1^2 - 4*a2^3"])
        .intersect(&ideal(&t, &["a2", "a3"]))
        .unwrap()
        .intersect(&ideal(&t, &["a1", "a3"]))
        .unwrap();
    assert!(closure.same_variety(&expect).unwrap());
    assert!(closure.same_variety(an.k0_closure().unwrap()).unwrap());

    let purity = k0.is_pure_dimensional().unwrap();
    assert_eq!(purity.dimension, 2);
    assert!(!purity.pure);
    let sf = CSet::closed(an.sf().unwrap().clone());
    let union = k0.union(&sf).unwrap();
    let purity = union.is_pure_dimensional().unwrap();
    assert_eq!(purity.dimension, 2);
    assert!(purity.pure);
    // The axes fall inside the planes.
    let sf_ideal = an.sf().unwrap();
    assert!(ideal(&t, &["a2", "a3"]).contains_ideal(sf_ideal, Containment::UpToRadical).unwrap());
    assert!(ideal(&t, &["a1", "a3"]).contains_ideal(sf_ideal, Containment::UpToRadical).unwrap());
}

#[test]
fn json_lists_closure_exception_and_dimension() {
    let r = ring(&["x", "y"]);
    let c = CSet::from_pieces(&r, vec![piece(&r, &["x*y"], &["x"])]);
    let j = serde_json::to_value(c.to_json().unwrap()).unwrap();
    assert_eq!(j, serde_json::json!([{ "closure": ["y"], "except": ["x"], "dim": 1 }]));
}

fn xyz() -> Ring {
    ring(&["x", "y", "z"])
}

fn arb_piece() -> impl Strategy<Value = Piece> {
    (
        prop::collection::vec(arb_nonzero_poly(xyz(), 2, 2), 1..=2),
        arb_nonzero_poly(xyz(), 2, 2),
    )
        .prop_map(|(cs, e)| {
            let r = xyz();
            Piece::new(Ideal::new(&r, cs).unwrap(), Ideal::principal(e)).unwrap()
        })
}

fn grid() -> Vec<Vec<stratkit::Rational>> {
    let vals = [-1, 0, 1, 2];
    let mut out = Vec::new();
    for a in vals {
        for b in vals {
            for c in vals {
                out.push(pt(&[a, b, c]));
            }
        }
    }
    out.push(vec![ratio(1, 2), ratio(-3, 2), ratio(2, 3)]);
    out
}

proptest! {
    #![proptest_config(config(40))]

    #[test]
    fn normalization_preserves_points(a in arb_piece()) {
        let n = a.normalize().unwrap();
        for x in grid() {
            prop_assert_eq!(a.contains_point(&x).unwrap(), n.contains_point(&x).unwrap());
        }
    }

    #[test]
    fn membership_matches_substitution(a in arb_piece()) {
        for x in grid() {
            let on = a.closure_ideal().generators().iter().all(|g| g.evaluate(&x).unwrap() == q(0));
            let off = a.except_ideal().generators().iter().any(|g| g.evaluate(&x).unwrap() != q(0));
            prop_assert_eq!(a.contains_point(&x).unwrap(), on && off);
        }
    }

    #[test]
    fn nothing_survives_removing_the_closure(a in arb_piece()) {
        let c = CSet::from_pieces(&xyz(), vec![a.clone()]).closure().unwrap();
        prop_assert!(a.difference(&c).unwrap().is_empty().unwrap());
    }

    #[test]
    fn closure_is_monotone(a in arb_piece(), b in arb_piece()) {
        let small = CSet::from_pieces(&xyz(), vec![a.clone()]);
        let big = CSet::from_pieces(&xyz(), vec![a, b]);
        let cs = small.closure().unwrap();
        let cb = big.closure().unwrap();
        prop_assert!(cs.contains_ideal(&cb, Containment::Exact).unwrap());
    }

    #[test]
    fn union_dimension_is_the_maximum(a in arb_piece(), b in arb_piece()) {
        let r = xyz();
        let ua = CSet::from_pieces(&r, vec![a.clone()]);
        let ub = CSet::from_pieces(&r, vec![b.clone()]);
        let u = ua.union(&ub).unwrap();
        prop_assert_eq!(
            u.dimension().unwrap(),
            ua.dimension().unwrap().max(ub.dimension().unwrap())
        );
    }

    #[test]
    fn refinement_is_disjoint_with_the_same_points(a in arb_piece(), b in arb_piece()) {
        let r = xyz();
        let u = CSet::from_pieces(&r, vec![a, b]);
        let f = u.refine().unwrap();
        let ps = f.pieces();
        for i in 0..ps.len() {
            for j in i + 1..ps.len() {
                prop_assert!(!ps[i].meets(&ps[j]).unwrap());
            }
        }
        for x in grid() {
            prop_assert_eq!(u.contains_point(&x).unwrap(), f.contains_point(&x).unwrap());
        }
    }
}
