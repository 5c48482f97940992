//! Buchberger's algorithm with the normal selection strategy and the
//! Gebauer–Möller installation of the product and chain criteria.

use std::sync::atomic::{AtomicU8, AtomicUsize, Ordering as AtomicOrdering};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::budget::Steps;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Rational, Ring};

// 0: not set, 1: on, 2: off.
static CHECK_BASES: AtomicU8 = AtomicU8::new(0);
static BASES_CHECKED: AtomicUsize = AtomicUsize::new(0);

/// Overrides, process-wide, whether every computed basis is checked for
/// S-polynomial reduction to zero. Without an override the check runs in
/// debug builds, or as `STRATKIT_CHECK_BASES` says (`0` turns it off).
pub fn set_basis_checks(on: bool) {
    CHECK_BASES.store(if on { 1 } else { 2 }, AtomicOrdering::Relaxed);
}

/// Number of bases that passed through the check so far.
pub fn bases_checked() -> usize {
    BASES_CHECKED.load(AtomicOrdering::Relaxed)
}

fn checks_enabled() -> bool {
    static FROM_ENV: OnceLock<bool> = OnceLock::new();
    match CHECK_BASES.load(AtomicOrdering::Relaxed) {
        1 => true,
        2 => false,
        _ => *FROM_ENV.get_or_init(|| match std::env::var("STRATKIT_CHECK_BASES") {
            Ok(v) => v != "0",
            Err(_) => cfg!(debug_assertions),
        }),
    }
}

/// A reduced Gröbner basis: monic, inter-reduced, sorted by ascending
/// leading monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis {
    ring: Ring,
    elements: Vec<Polynomial>,
    /// The elements scaled to primitive integer form, used for reduction.
    integral: Vec<Polynomial>,
}

impl GroebnerBasis {
    fn from_elements(ring: &Ring, elements: Vec<Polynomial>) -> Self {
        let integral = elements.iter().map(|g| g.primitive()).collect();
        GroebnerBasis {
            ring: ring.clone(),
            elements,
            integral,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.elements.iter().filter_map(|g| g.leading_monomial())
    }

    /// Fully reduced remainder of `p` (embedded into the basis ring).
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        let p = p.embed(&self.ring)?;
        let mut steps = Steps::new();
        reduce(p, &self.integral, true, &mut steps)
    }

    /// Every S-polynomial reduces to zero.
    pub fn verify(&self) -> bool {
        let mut steps = Steps::unlimited();
        for i in 0..self.integral.len() {
            for j in i + 1..self.integral.len() {
                let s = spoly(&self.integral[i], &self.integral[j]);
                match reduce_scaled(s, &self.integral, true, &mut steps) {
                    Ok((r, _)) if r.is_zero() => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

fn lm(p: &Polynomial) -> &Monomial {
    p.leading_monomial().expect("nonzero basis element")
}

fn lc_int(p: &Polynomial) -> BigInt {
    let c = p.leading_coeff().expect("nonzero");
    debug_assert!(c.is_integer());
    c.numer().clone()
}

fn int(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// S-polynomial of two integral polynomials, up to a nonzero scalar.
pub(crate) fn spoly(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let l = lm(f).lcm(lm(g));
    let (a, b) = (lc_int(f), lc_int(g));
    let d = a.gcd(&b);
    let mut s = f.mul_term(&int(&b / &d), &l.div(lm(f)));
    s.sub_mul_term(&int(&a / &d), &l.div(lm(g)), g);
    s
}

/// `(lcm of denominators) / content`, so that `p * factor` is primitive
/// with integer coefficients.
fn integral_factor(p: &Polynomial) -> Rational {
    let mut den = BigInt::one();
    for (_, c) in p.terms() {
        den = den.lcm(c.denom());
    }
    let mut content = BigInt::zero();
    for (_, c) in p.terms() {
        content = content.gcd(&(c.numer() * (&den / c.denom())));
        if content.is_one() {
            break;
        }
    }
    if content.is_zero() {
        return Rational::one();
    }
    Rational::new(den, content)
}

/// Reduces `p` by `basis`, whose elements must have integer coefficients.
/// With `full = false` only the leading term is reduced until it is
/// irreducible. The remainder is exact.
pub(crate) fn reduce(
    p: Polynomial,
    basis: &[Polynomial],
    full: bool,
    steps: &mut Steps,
) -> Result<Polynomial> {
    let (r, s) = reduce_scaled(p, basis, full, steps)?;
    Ok(r.scale(&s.recip()))
}

/// Fraction-free reduction: returns `(r, s)` where `r / s` is the
/// remainder and `r` has integer coefficients.
fn reduce_scaled(
    p: Polynomial,
    basis: &[Polynomial],
    full: bool,
    steps: &mut Steps,
) -> Result<(Polynomial, Rational)> {
    let ring = p.ring().clone();
    if p.is_zero() {
        return Ok((p, Rational::one()));
    }
    let mut s = integral_factor(&p);
    let mut p = p.scale(&s);
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    let mut since_content = 0usize;
    loop {
        let Some((m, c)) = p.terms().first().cloned() else {
            break;
        };
        match basis.iter().find(|g| lm(g).divides(&m)) {
            Some(g) => {
                steps.tick()?;
                let a = lc_int(g);
                let c = c.numer().clone();
                let d = a.gcd(&c);
                let mult = int(&a / &d);
                if !mult.is_one() {
                    p = p.scale(&mult);
                    for (_, rc) in rem.iter_mut() {
                        *rc = &*rc * &mult;
                    }
                    s = &s * &mult;
                }
                p.sub_mul_term(&int(&c / &d), &m.div(lm(g)), g);
                since_content += 1;
                if since_content >= 4 {
                    since_content = 0;
                    let mut content = BigInt::zero();
                    for (_, c) in p.terms().iter().chain(rem.iter()) {
                        content = content.gcd(c.numer());
                        if content.is_one() {
                            break;
                        }
                    }
                    if !content.is_zero() && !content.is_one() {
                        let inv = Rational::new(BigInt::one(), content);
                        p = p.scale(&inv);
                        for (_, rc) in rem.iter_mut() {
                            *rc = &*rc * &inv;
                        }
                        s = &s * &inv;
                    }
                }
            }
            None if full => {
                let mut terms = p.take_terms();
                let head = terms.remove(0);
                rem.push(head);
                p = Polynomial::from_sorted_terms(&ring, terms);
            }
            None => break,
        }
    }
    if full {
        Ok((Polynomial::from_sorted_terms(&ring, rem), s))
    } else {
        Ok((p, s))
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State {
    ring: Ring,
    polys: Vec<Polynomial>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl State {
    fn active_polys(&self) -> Vec<Polynomial> {
        self.active.iter().map(|&k| self.polys[k].clone()).collect()
    }

    /// Gebauer–Möller update with the new element `h`.
    fn update(&mut self, h: usize) {
        let lh = lm(&self.polys[h]).clone();
        let mut cands: Vec<(usize, Monomial)> = self
            .active
            .iter()
            .map(|&g| (g, lh.lcm(lm(&self.polys[g]))))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while !cands.is_empty() {
            let (g1, l1) = cands.remove(0);
            let coprime = lh.coprime(lm(&self.polys[g1]));
            let dominated = cands.iter().any(|(_, l2)| l2.divides(&l1))
                || kept.iter().any(|(_, l2)| l2.divides(&l1));
            if coprime || !dominated {
                kept.push((g1, l1));
            }
        }
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm)
                && lh.lcm(lm(&polys[p.i])) != p.lcm
                && lh.lcm(lm(&polys[p.j])) != p.lcm)
        });
        for (g, l) in kept {
            if !lh.coprime(lm(&self.polys[g])) {
                self.pairs.push(Pair { i: g, j: h, lcm: l });
            }
        }
        let polys = &self.polys;
        self.active.retain(|&g| !lh.divides(lm(&polys[g])));
        self.active.push(h);
    }

    fn insert(&mut self, p: Polynomial) {
        self.polys.push(p.primitive());
        let h = self.polys.len() - 1;
        self.update(h);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.ring.order();
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let c = order
                .compare(a.lcm.exponents(), b.lcm.exponents())
                .then((a.i, a.j).cmp(&(b.i, b.j)));
            if c.is_lt() {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

fn unit_basis(ring: &Ring) -> GroebnerBasis {
    GroebnerBasis::from_elements(ring, vec![Polynomial::one(ring)])
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `ring`'s order.
pub(crate) fn groebner(gens: &[Polynomial], ring: &Ring) -> Result<GroebnerBasis> {
    let mut steps = Steps::new();
    let mut input: Vec<Polynomial> = gens
        .iter()
        .map(|g| g.embed(ring))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.primitive())
        .collect();
    if input.iter().any(|g| g.is_unit()) {
        return Ok(unit_basis(ring));
    }
    let order = ring.order().clone();
    input.sort_by(|a, b| order.compare(lm(a).exponents(), lm(b).exponents()));

    let mut st = State {
        ring: ring.clone(),
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in input {
        let (r, _) = reduce_scaled(g, &st.active_polys(), false, &mut steps)?;
        if r.is_zero() {
            continue;
        }
        if r.is_unit() {
            return Ok(unit_basis(ring));
        }
        st.insert(r);
    }
    while let Some(pair) = st.next_pair() {
        let s = spoly(&st.polys[pair.i], &st.polys[pair.j]);
        let (r, _) = reduce_scaled(s, &st.active_polys(), false, &mut steps)?;
        if r.is_zero() {
            continue;
        }
        if r.is_unit() {
            return Ok(unit_basis(ring));
        }
        st.insert(r);
    }

    let mut minimal = st.active_polys();
    minimal.sort_by(|a, b| order.compare(lm(a).exponents(), lm(b).exponents()));
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, p)| p.clone())
            .collect();
        let head = minimal[k].clone();
        let lead = Polynomial::from_sorted_terms(ring, vec![head.terms()[0].clone()]);
        let tail = Polynomial::from_sorted_terms(ring, head.terms()[1..].to_vec());
        let (tail, s) = reduce_scaled(tail, &others, true, &mut steps)?;
        reduced.push((&lead.scale(&s) + &tail).monic());
    }
    let gb = GroebnerBasis::from_elements(ring, reduced);
    debug_assert!(
        gb.elements.iter().all(|g| g.leading_coeff().is_some_and(|c| c.is_one())),
        "basis elements are monic"
    );
    if checks_enabled() {
        BASES_CHECKED.fetch_add(1, AtomicOrdering::Relaxed);
        if !gb.verify() {
            return Err(Error::Internal("computed basis fails the S-polynomial check".into()));
        }
    }
    Ok(gb)
}

pub(crate) fn from_reduced(ring: &Ring, elements: Vec<Polynomial>) -> Arc<GroebnerBasis> {
    Arc::new(GroebnerBasis::from_elements(ring, elements))
}
