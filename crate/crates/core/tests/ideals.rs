mod common;

use common::*;
use proptest::prelude::*;
use stratkit::ideal::budget::with_step_budget;
use stratkit::mapanalysis::{asymptotic_set, critical_values_closure, graph_ideal, target_ring};
use stratkit::poly::{rat, ratio, Monomial};
use stratkit::{fixtures, Containment, Ideal, MonomialOrder, Polynomial, Ring, VariableContext};

fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|g| p(r, g)).collect()).unwrap()
}

#[test]
fn twisted_cubic_relation_from_a_lex_basis() {
    let r = VariableContext::new(&["x", "y", "z"], MonomialOrder::Lex).unwrap();
    let i = ideal(&r, &["x^2 - y", "x^3 - z"]);
    let g = i.basis().unwrap();
    let rel = p(&r, "y^3 - z^2");
    assert!(g.normal_form(&rel).unwrap().is_zero());
    // The relation vanishes on the parametrization (t, t², t³).
    for t in -3..=3 {
        let v = rel.evaluate(&pt(&[t, t * t, t * t * t])).unwrap();
        assert_eq!(v, rat(0));
    }
    assert!(g.elements().iter().all(|e| e.leading_coeff() == Some(&rat(1))));
    assert!(g.verify());
}

#[test]
fn cusp_equation_lies_on_the_rank_two_image_only() {
    let f = fixtures::pasferme();
    let t = target_ring(&f).unwrap();
    let cusp = p(&t, "27*a1^2 - 4*a2^3");
    // The cusp vanishes on F(V²₁): points (−2s³, 3s², s·x3) with 3s² = x2·x3.
    for (s, x3) in [(1, 1), (2, 3), (-1, 5), (3, -2)] {
        let x = [rat(s), ratio(3 * s * s, x3), rat(x3)];
        let a = f.evaluate(&x).unwrap();
        assert_eq!(a[0], rat(-2 * s * s * s));
        assert_eq!(cusp.evaluate(&a).unwrap(), rat(0));
    }
    let r = f.source().clone();
    let v21 = Ideal::new(&r, vec![p(&r, "3*x1^2 - x2*x3")]).unwrap();
    let w22 = graph_ideal(&f, Some(&v21)).unwrap().eliminate_to(&t).unwrap();
    assert!(w22.contains(&cusp).unwrap());
    // The closure of all critical values also holds the axis 0α₁, where the
    // cusp equation does not vanish.
    let k0bar = critical_values_closure(&f).unwrap();
    assert!(!k0bar.contains(&cusp).unwrap());
    assert!(k0bar.contains(&(&cusp * &p(&t, "a3"))).unwrap());
}

#[test]
fn planes_at_infinity_of_the_reference_map() {
    let f = fixtures::pasferme();
    let t = target_ring(&f).unwrap();
    let sf = asymptotic_set(&f).unwrap();
    assert!(sf.radical_contains(&p(&t, "a1*a3")).unwrap());
    assert!(!sf.radical_contains(&p(&t, "a1")).unwrap());
    assert!(!sf.radical_contains(&p(&t, "a3")).unwrap());
    assert_eq!(sf.dimension().unwrap(), 2);
    let planes = ideal(&t, &["a1*a3"]);
    assert!(sf.same_variety(&planes).unwrap());
}

#[test]
fn elimination_examples() {
    let r = ring(&["x", "y", "z"]);
    let e = ideal(&r, &["y - x^2", "z - x^3"]).eliminate(&["x"]).unwrap();
    let yz = ring(&["y", "z"]);
    assert!(e.same_variety(&ideal(&yz, &["z^2 - y^3"])).unwrap());
    let x = ring(&["x", "y"]);
    assert!(ideal(&x, &["x"]).eliminate(&["x"]).unwrap().is_zero_ideal());
    assert!(ideal(&r, &["x"]).eliminate(&["w"]).is_err());
}

/// The graph of the reference map eliminates to zero; independently, three
/// rational targets with a₁ = s³ − a₂s are hit at x = (s, a₂s/a₃, a₃/s).
#[test]
fn reference_map_is_dominant() {
    let f = fixtures::pasferme();
    let t = target_ring(&f).unwrap();
    let g = graph_ideal(&f, None).unwrap();
    assert!(g.eliminate_to(&t).unwrap().is_zero_ideal());
    for (s, a2, a3) in [(2, 5, 3), (-1, 7, -4), (3, -2, 9)] {
        let (s, a2, a3) = (rat(s), rat(a2), rat(a3));
        let a1 = &s * &s * &s - &a2 * &s;
        let x = [s.clone(), &a2 * &s / &a3, &a3 / &s];
        assert_eq!(f.evaluate(&x).unwrap(), vec![a1, a2, a3]);
    }
}

#[test]
fn membership_and_radical_membership() {
    let r = ring(&["x", "y"]);
    assert!(ideal(&r, &["x - 1"]).contains(&p(&r, "x^2 - 1")).unwrap());
    assert!(!ideal(&r, &["x^2"]).contains(&p(&r, "x")).unwrap());
    assert!(ideal(&r, &["x^2"]).radical_contains(&p(&r, "x")).unwrap());
    assert!(!ideal(&r, &["x^2"]).radical_contains(&p(&r, "x + 1")).unwrap());
    let unit = ideal(&r, &["1"]);
    assert_eq!(unit.basis().unwrap().elements(), &[Polynomial::one(&r)]);
    assert_eq!(ideal(&r, &["x - 1"]).render().unwrap(), vec!["x - 1"]);
}

#[test]
fn saturation_and_dimension_examples() {
    let r = ring(&["x", "y"]);
    assert!(ideal(&r, &["x*y"]).saturate(&p(&r, "x")).unwrap().same_ideal(&ideal(&r, &["y"])).unwrap());
    assert!(ideal(&r, &["x^2"]).saturate(&p(&r, "x")).unwrap().is_unit().unwrap());
    let a = ring(&["a1", "a2", "a3"]);
    assert_eq!(Ideal::zero(&a).dimension().unwrap(), 3);
    assert_eq!(ideal(&a, &["27*a1^2 - 4*a2^3"]).dimension().unwrap(), 2);
    assert_eq!(ideal(&a, &["1"]).dimension().unwrap(), -1);
    assert!(ideal(&r, &["x"]).contains_ideal(&ideal(&r, &["x^2"]), Containment::Exact).unwrap());
    assert!(!ideal(&r, &["x^2"]).contains_ideal(&ideal(&r, &["x"]), Containment::Exact).unwrap());
    assert!(ideal(&r, &["x^2"]).contains_ideal(&ideal(&r, &["x"]), Containment::UpToRadical).unwrap());
}

#[test]
fn step_budget_stops_runaway_computations() {
    let r = ring(&["x", "y", "z"]);
    let gens = ["x^2*y - z", "x*y^2 - 1", "y^3 - x - z"];
    let out = stratkit::ideal::budget::with_step_budget(1, || ideal(&r, &gens).dimension());
    assert!(matches!(out, Err(stratkit::Error::BudgetExceeded(1))), "{out:?}");
    assert_eq!(ideal(&r, &gens).dimension().unwrap(), 0);
}

/// Fifty varieties `x = φ(t)` with up to three coordinates: curves of
/// degree ≤ 3 and surfaces of degree ≤ 2.
#[test]
fn elimination_on_random_parametrized_varieties() {
    let nontrivial = check_random_eliminations(2024, 50);
    assert!(nontrivial >= 40, "only {nontrivial} nontrivial eliminations");
}

fn xyz() -> Ring {
    ring(&["x", "y", "z"])
}

fn arb_ideal() -> impl Strategy<Value = Ideal> {
    prop::collection::vec(arb_nonzero_poly(xyz(), 3, 3), 1..=3)
        .prop_map(|gs| Ideal::new(&xyz(), gs).unwrap())
}

fn arb_small_ideal() -> impl Strategy<Value = Ideal> {
    prop::collection::vec(arb_nonzero_poly(xyz(), 3, 2), 1..=2)
        .prop_map(|gs| Ideal::new(&xyz(), gs).unwrap())
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn bases_are_reduced_and_closed_under_s_pairs(i in arb_ideal()) {
        let g = i.basis().unwrap();
        prop_assert!(g.verify());
        let lms: Vec<&Monomial> = g.leading_monomials().collect();
        for (a, m) in lms.iter().enumerate() {
            for (b, n) in lms.iter().enumerate() {
                prop_assert!(a == b || !m.divides(n));
            }
        }
        for gen in i.generators() {
            prop_assert!(g.normal_form(gen).unwrap().is_zero());
        }
    }

    #[test]
    fn normal_form_is_idempotent(i in arb_ideal(), f in arb_poly(xyz(), 6, 4)) {
        let g = i.basis().unwrap();
        let r = g.normal_form(&f).unwrap();
        prop_assert_eq!(g.normal_form(&r).unwrap(), r.clone());
        prop_assert_eq!(i.contains(&f).unwrap(), r.is_zero());
        prop_assert!(i.contains(&(&f - &r)).unwrap());
    }

    #[test]
    fn saturation_grows_and_is_idempotent(i in arb_ideal(), f in arb_nonzero_poly(xyz(), 2, 2)) {
        let s = i.saturate(&f).unwrap();
        prop_assert!(s.contains_ideal(&i, Containment::Exact).unwrap());
        let s2 = s.saturate(&f).unwrap();
        prop_assert!(s2.same_ideal(&s).unwrap());
    }

    #[test]
    fn dimension_is_monotone(i in arb_ideal(), g in arb_nonzero_poly(xyz(), 3, 3)) {
        let j = i.with_generator(g).unwrap();
        prop_assert!(j.dimension().unwrap() <= i.dimension().unwrap());
    }

    #[test]
    fn radical_membership_agrees_with_powers(i in arb_ideal(), f in arb_poly(xyz(), 3, 2)) {
        // Membership of a power implies radical membership.
        for k in 1..=3 {
            if i.contains(&f.pow(k)).unwrap() {
                prop_assert!(i.radical_contains(&f).unwrap());
            }
        }
        // A point of V(I) where f is nonzero refutes radical membership.
        for x in [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [-1, 1, 2]] {
            let x = pt(&x);
            let on_v = i.generators().iter().all(|g| g.evaluate(&x).unwrap() == rat(0));
            if on_v && f.evaluate(&x).unwrap() != rat(0) {
                prop_assert!(!i.radical_contains(&f).unwrap());
            }
        }
    }

    #[test]
    fn intersection_is_contained_in_both(a in arb_small_ideal(), b in arb_small_ideal()) {
        // Cases whose elimination outgrows the budget are skipped.
        let c = with_step_budget(200_000, || a.intersect(&b));
        prop_assume!(!matches!(c, Err(stratkit::Error::BudgetExceeded(_))));
        let c = c.unwrap();
        prop_assert!(a.contains_ideal(&c, Containment::Exact).unwrap());
        prop_assert!(b.contains_ideal(&c, Containment::Exact).unwrap());
        let prod = a.product(&b).unwrap();
        prop_assert!(c.contains_ideal(&prod, Containment::Exact).unwrap());
    }
}
