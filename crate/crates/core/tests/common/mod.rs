#![allow(dead_code)]

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stratkit::parse::parse_polynomial;
use stratkit::poly::{rat, ratio, Monomial};
use stratkit::{Ideal, Polynomial, Rational, Ring, VariableContext};

pub fn ring(names: &[&str]) -> Ring {
    VariableContext::grevlex(names).unwrap()
}

pub fn p(r: &Ring, s: &str) -> Polynomial {
    parse_polynomial(s, r).unwrap()
}

pub fn q(n: i64) -> Rational {
    rat(n)
}

pub fn pt(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| rat(x)).collect()
}

/// Random polynomials over `r` with exponents below `max_exp` and small
/// integer coefficients.
pub fn arb_poly(r: Ring, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    let n = r.arity();
    prop::collection::vec(
        (prop::collection::vec(0..max_exp, n), -5i64..=5),
        0..=max_terms,
    )
    .prop_map(move |ts| {
        let terms = ts
            .into_iter()
            .map(|(e, c)| (Monomial::from_exponents(&e), rat(c)))
            .collect();
        Polynomial::from_terms(&r, terms)
    })
}

pub fn arb_nonzero_poly(r: Ring, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    arb_poly(r, max_terms, max_exp).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn arb_point(n: usize, bound: i64) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(-bound..=bound, n).prop_map(|v| v.into_iter().map(rat).collect())
}

pub fn random_poly(rng: &mut ChaCha8Rng, r: &Ring, max_deg: u32) -> Polynomial {
    let n = r.arity();
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let mut e = vec![0u32; n];
        let mut budget = rng.gen_range(0..=max_deg);
        while budget > 0 {
            e[rng.gen_range(0..n)] += 1;
            budget -= 1;
        }
        terms.push((Monomial::from_exponents(&e), rat(rng.gen_range(-3..=3))));
    }
    Polynomial::from_terms(r, terms)
}

/// Random parametrized varieties `x = φ(t)`: curves of degree ≤ 3 and
/// surfaces of degree ≤ 2 in up to three coordinates. The eliminated
/// generators must lie in the graph ideal, avoid the parameters and vanish
/// at sampled images. Returns how many eliminations were nontrivial.
pub fn check_random_eliminations(seed: u64, count: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nontrivial = 0;
    for case in 0..count {
        let arity = rng.gen_range(2..=3usize);
        let params = rng.gen_range(1..arity.min(2) + 1);
        let pnames: Vec<String> = (0..params).map(|i| format!("t{i}")).collect();
        let xnames: Vec<String> = (0..arity).map(|i| format!("x{i}")).collect();
        let mut names = pnames.clone();
        names.extend(xnames.iter().cloned());
        let big = VariableContext::grevlex(&names).unwrap();
        let pr = VariableContext::grevlex(&pnames).unwrap();
        let phi: Vec<Polynomial> = (0..arity)
            .map(|_| {
                if params == 1 && rng.gen_range(0..3) == 0 {
                    random_poly(&mut rng, &pr, 3)
                } else {
                    random_poly(&mut rng, &pr, 2)
                }
            })
            .collect();
        let gens: Vec<Polynomial> = xnames
            .iter()
            .zip(&phi)
            .map(|(x, f)| &Polynomial::var_named(&big, x).unwrap() - &f.embed(&big).unwrap())
            .collect();
        let g = Ideal::new(&big, gens).unwrap();
        let xr = VariableContext::grevlex(&xnames).unwrap();
        let e = g.eliminate_to(&xr).unwrap();
        // Soundness.
        for h in e.generators() {
            assert!(g.contains(&h.embed(&big).unwrap()).unwrap(), "case {case}: {h} not in ideal");
        }
        // Completeness at points.
        for _ in 0..5 {
            let t0: Vec<_> = (0..params).map(|_| ratio(rng.gen_range(-7..=7), rng.gen_range(1..=4))).collect();
            let x0: Vec<_> = phi.iter().map(|f| f.evaluate(&t0).unwrap()).collect();
            for h in e.generators() {
                assert_eq!(h.evaluate(&x0).unwrap(), rat(0), "case {case}: {h} at {x0:?}");
            }
        }
        let d = e.dimension().unwrap();
        assert!(d >= 0 && d <= params as i64, "case {case}: dimension {d}");
        if !e.is_zero_ideal() {
            nontrivial += 1;
        }
    }
    nontrivial
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn numeric_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != rat(0)) else {
            continue;
        };
        m.swap(rank, piv);
        for r in 0..rows {
            if r != rank && m[r][c] != rat(0) {
                let f = &m[r][c] / &m[rank][c];
                for k in c..cols {
                    let v = &f * &m[rank][k];
                    m[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn grid(n: usize, b: i64) -> Vec<Vec<Rational>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-b..=b).map(move |x| {
                    let mut w = v.clone();
                    w.push(rat(x));
                    w
                })
            })
            .collect();
    }
    out
}

/// Proptest settings with a fixed seed, so every run explores the same cases.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed_1234),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}
