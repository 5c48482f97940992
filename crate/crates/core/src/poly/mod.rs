//! Sparse multivariate polynomials with exact rational coefficients.

mod map;
mod matrix;
mod monomial;
mod ring;
mod univariate;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use map::{PolyMap, PolyMapJson};
pub use matrix::{rational_rank, PolyMatrix};
pub use monomial::Monomial;
pub use ring::{MonomialOrder, Ring, VariableContext};
pub(crate) use ring::same_ring;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// A polynomial in canonical form: terms strictly descending in the ring's
/// order, no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(Monomial::one(ring.arity()), c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.arity(), i), Rational::one())],
        }
    }

    pub fn var_named(ring: &Ring, name: &str) -> Result<Self> {
        Ok(Self::var(ring, ring.require(name)?))
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Rational) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(ring: &Ring, terms: Vec<(Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.arity(), ring.arity());
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.compare(b.0.exponents(), a.0.exponents()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Nonzero constant, i.e. a unit of the ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Result<u32> {
        self.terms
            .iter()
            .map(|(m, _)| m.degree())
            .max()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Variables that occur with a positive exponent.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.arity()];
        for (m, _) in &self.terms {
            for i in m.support() {
                used[i] = true;
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i).collect()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    pub fn poly_arith(&self, other: &Polynomial, op: ArithOp) -> Result<Polynomial> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::ContextMismatch);
        }
        Ok(match op {
            ArithOp::Add => self.merge(other, false),
            ArithOp::Sub => self.merge(other, true),
            ArithOp::Mul => self.mul_impl(other),
        })
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match order.compare(ma.exponents(), mb.exponents()) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })),
        );
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(c, m);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(c, m);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(mb), ca * cb));
            }
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    /// `c * m * self`; multiplication by a monomial preserves the term order.
    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        self.mul_term(c, &Monomial::one(self.ring.arity()))
    }

    /// In place `self -= c * m * g`; the workhorse of reduction.
    pub(crate) fn sub_mul_term(&mut self, c: &Rational, m: &Monomial, g: &Polynomial) {
        let order = self.ring.order().clone();
        let old = std::mem::take(&mut self.terms);
        let mut out = Vec::with_capacity(old.len() + g.terms.len());
        let mut rhs = g.terms.iter().map(|(gm, gc)| (gm.mul(m), gc * c)).peekable();
        let mut lhs = old.into_iter().peekable();
        loop {
            match (lhs.peek(), rhs.peek()) {
                (Some(a), Some(b)) => match order.compare(a.0.exponents(), b.0.exponents()) {
                    Ordering::Greater => out.push(lhs.next().unwrap()),
                    Ordering::Less => {
                        let (bm, bc) = rhs.next().unwrap();
                        out.push((bm, -bc));
                    }
                    Ordering::Equal => {
                        let (am, ac) = lhs.next().unwrap();
                        let (_, bc) = rhs.next().unwrap();
                        let d = ac - bc;
                        if !d.is_zero() {
                            out.push((am, d));
                        }
                    }
                },
                (Some(_), None) => out.push(lhs.next().unwrap()),
                (None, Some(_)) => {
                    let (bm, bc) = rhs.next().unwrap();
                    out.push((bm, -bc));
                }
                (None, None) => break,
            }
        }
        self.terms = out;
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Scalar multiple with coprime integer coefficients and a positive
    /// leading coefficient. Generates the same ideal; used for display.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm_den = BigInt::one();
        for (_, c) in &self.terms {
            lcm_den = lcm_den.lcm(c.denom());
        }
        let mut content = BigInt::zero();
        for (_, c) in &self.terms {
            let n = c.numer() * (&lcm_den / c.denom());
            content = content.gcd(&n);
        }
        let mut factor = Rational::new(lcm_den, content);
        if self.terms[0].1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[var] > 0)
            .map(|(m, c)| {
                let e = m.0[var];
                let mut m2 = m.clone();
                m2.0[var] -= 1;
                (m2, c * rat(e as i64))
            })
            .collect();
        // Lowering one exponent can break the order, so re-canonicalize.
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ring.arity() {
            return Err(Error::Arity {
                expected: self.ring.arity(),
                got: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Evaluates at polynomial arguments, one per variable; the result lives
    /// in the ring of the arguments.
    pub fn compose(&self, values: &[Polynomial], target: &Ring) -> Result<Polynomial> {
        if values.len() != self.ring.arity() {
            return Err(Error::Arity {
                expected: self.ring.arity(),
                got: values.len(),
            });
        }
        if values.iter().any(|v| !same_ring(v.ring(), target)) {
            return Err(Error::ContextMismatch);
        }
        let mut powers: Vec<Vec<Polynomial>> = values
            .iter()
            .map(|v| vec![Polynomial::one(target), v.clone()])
            .collect();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &values[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitutes polynomials (in the same ring) for the named variables;
    /// unbound variables pass through.
    pub fn substitute(&self, bindings: &[(&str, Polynomial)]) -> Result<Polynomial> {
        let mut values: Vec<Polynomial> = (0..self.ring.arity())
            .map(|i| Polynomial::var(&self.ring, i))
            .collect();
        for (name, p) in bindings {
            let i = self.ring.require(name)?;
            if !same_ring(p.ring(), &self.ring) {
                return Err(Error::ContextMismatch);
            }
            values[i] = p.clone();
        }
        self.compose(&values, &self.ring)
    }

    pub fn homogeneous_component(&self, degree: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .cloned()
                .collect(),
        }
    }

    /// Homogeneous component of top degree.
    pub fn leading_form(&self) -> Result<Polynomial> {
        let d = self.total_degree()?;
        Ok(self.homogeneous_component(d))
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Homogenizes with a fresh variable `w` appended to the context.
    pub fn homogenize(&self, w: &str) -> Result<Polynomial> {
        if self.ring.index_of(w).is_some() {
            return Err(Error::VariableExists(w.to_string()));
        }
        let d = self.total_degree()?;
        let mut names = self.ring.names().to_vec();
        names.push(w.to_string());
        let order = match self.ring.order() {
            MonomialOrder::Lex => MonomialOrder::Lex,
            _ => MonomialOrder::GrevLex,
        };
        let ring = VariableContext::new(&names, order)?;
        let lifted = self.embed(&ring)?;
        let block: Vec<usize> = (0..self.ring.arity()).collect();
        Ok(lifted.homogenize_block(self.ring.arity(), &block, d))
    }

    /// Makes every term have degree `degree` in the variables of `block` plus
    /// `w`, by multiplying with powers of `w`. Terms of higher block degree
    /// are not expected.
    pub fn homogenize_block(&self, w: usize, block: &[usize], degree: u32) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let bd: u32 = block.iter().map(|&i| m.0[i]).sum();
                debug_assert!(bd <= degree);
                let mut m2 = m.clone();
                m2.0[w] += degree.saturating_sub(bd);
                (m2, c.clone())
            })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Sets `w = 1` and drops it from the context.
    pub fn dehomogenize(&self, w: &str) -> Result<Polynomial> {
        let wi = self.ring.require(w)?;
        let names: Vec<&String> = self
            .ring
            .names()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != wi)
            .map(|(_, n)| n)
            .collect();
        let ring = VariableContext::new(&names, self.ring.order().clone().without_block())?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let exps: Vec<u32> = m
                    .exponents()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != wi)
                    .map(|(_, &e)| e)
                    .collect();
                (Monomial::from_exponents(&exps), c.clone())
            })
            .collect();
        Ok(Polynomial::from_terms(&ring, terms))
    }

    /// Reinterprets the polynomial in another context by matching variable
    /// names. Fails if a variable that occurs is missing from `target`.
    pub fn embed(&self, target: &Ring) -> Result<Polynomial> {
        if same_ring(&self.ring, target) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.ring.arity());
        for name in self.ring.names() {
            map.push(target.index_of(name));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = Monomial::one(target.arity());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => exps.0[j] = e,
                    None => return Err(Error::UnknownVariable(self.ring.name(i).to_string())),
                }
            }
            terms.push((exps, c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        let (dm, dc) = d.terms.first()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            if !dm.divides(&m) {
                return None;
            }
            let qm = m.div(dm);
            let qc = c / dc;
            rem.sub_mul_term(&qc, &qm, d);
            quot.push((qm, qc));
        }
        Some(Polynomial::from_terms(&self.ring, quot))
    }

    /// Monomial content: the gcd of all term monomials.
    pub fn monomial_content(&self) -> Option<Monomial> {
        let mut it = self.terms.iter();
        let first = it.next()?.0.clone();
        Some(it.fold(first, |g, (m, _)| g.gcd(m)))
    }

    pub(crate) fn take_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub(crate) fn from_sorted_terms(ring: &Ring, terms: Vec<(Monomial, Rational)>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }
}

impl MonomialOrder {
    fn without_block(self) -> MonomialOrder {
        match self {
            MonomialOrder::Block { .. } => MonomialOrder::GrevLex,
            o => o,
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:expr) => {
        impl<'b> $tr<&'b Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics on mismatched contexts; use `poly_arith` for a checked variant.
            fn $method(self, rhs: &'b Polynomial) -> Polynomial {
                self.poly_arith(rhs, $op).expect("polynomials from different contexts")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, ArithOp::Add);
binop!(Sub, sub, ArithOp::Sub);
binop!(Mul, mul, ArithOp::Mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut first = true;
            if !abs.is_one() || m.is_one() {
                write_rational(f, &abs)?;
                first = false;
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.ring.name(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn ring3() -> Ring {
        VariableContext::grevlex(&["x1", "x2", "x3"]).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r = VariableContext::grevlex(&["x"]).unwrap();
        let a = p(&r, "x + 1");
        let b = p(&r, "x - 1");
        assert_eq!(a.poly_arith(&b, ArithOp::Mul).unwrap(), p(&r, "x^2 - 1"));
        let z = Polynomial::zero(&r);
        assert_eq!(a.poly_arith(&z, ArithOp::Add).unwrap(), a);

        let r = ring3();
        let f1 = p(&r, "x1^3 - x1*x2*x3");
        let c = p(&r, "x1^3");
        assert_eq!(f1.poly_arith(&c, ArithOp::Sub).unwrap(), p(&r, "-x1*x2*x3"));
    }

    #[test]
    fn mismatched_contexts_are_rejected() {
        let a = Polynomial::var(&ring3(), 0);
        let b = Polynomial::var(&VariableContext::grevlex(&["y"]).unwrap(), 0);
        assert_eq!(a.poly_arith(&b, ArithOp::Add), Err(Error::ContextMismatch));
    }

    #[test]
    fn substitution_examples() {
        let r = ring3();
        let f1 = p(&r, "x1^3 - x1*x2*x3");
        let bind = |v: i64| Polynomial::constant(&r, rat(v));
        let at = f1
            .substitute(&[("x1", bind(1)), ("x2", bind(3)), ("x3", bind(1))])
            .unwrap();
        assert_eq!(at, bind(-2));
        assert_eq!(f1.substitute(&[]).unwrap(), f1);
        let g = p(&r, "x2*x3");
        let t = Polynomial::var(&r, 1);
        let at = g
            .substitute(&[("x1", bind(0)), ("x2", t), ("x3", bind(0))])
            .unwrap();
        assert!(at.is_zero());
        assert!(matches!(
            f1.substitute(&[("q", bind(0))]),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn leading_form_examples() {
        let r = ring3();
        let f1 = p(&r, "x1^3 - x1*x2*x3");
        assert_eq!(f1.leading_form().unwrap(), f1);
        let r1 = VariableContext::grevlex(&["x"]).unwrap();
        assert_eq!(p(&r1, "x^2 + 3*x + 1").leading_form().unwrap(), p(&r1, "x^2"));
        assert_eq!(Polynomial::zero(&r1).leading_form(), Err(Error::ZeroPolynomial));
        // components of degrees (2,1,1) are all already top-degree forms
        for s in ["x1^2 - x2*x3", "x2 - x3", "x1 - x3"] {
            let q = p(&r, s);
            let top = q.total_degree().unwrap();
            let filtered: Vec<_> = q
                .terms()
                .iter()
                .filter(|(m, _)| m.degree() == top)
                .cloned()
                .collect();
            assert_eq!(q.leading_form().unwrap(), Polynomial::from_terms(&r, filtered));
            assert_eq!(q.leading_form().unwrap(), q);
        }
    }

    #[test]
    fn homogenize_examples() {
        let r = VariableContext::grevlex(&["x"]).unwrap();
        let h = p(&r, "x^2 + 3*x + 1").homogenize("w").unwrap();
        assert_eq!(h.to_string(), "x^2 + 3*x*w + w^2");
        assert_eq!(h.dehomogenize("w").unwrap(), p(&r, "x^2 + 3*x + 1"));
        let hom = p(&r, "5*x^3");
        assert_eq!(hom.homogenize("w").unwrap().dehomogenize("w").unwrap(), hom);
        assert_eq!(hom.homogenize("w").unwrap().to_string(), "5*x^3");
        assert!(matches!(
            p(&r, "x").homogenize("x"),
            Err(Error::VariableExists(_))
        ));
    }

    #[test]
    fn graph_equation_bihomogenization() {
        // y2 - x2*x3 homogenized in the x-block only, weight 2
        let r = VariableContext::grevlex(&["x1", "x2", "x3", "w", "y2"]).unwrap();
        let g = p(&r, "y2 - x2*x3");
        let h = g.homogenize_block(3, &[0, 1, 2], 2);
        assert_eq!(h, p(&r, "y2*w^2 - x2*x3"));
        let w1 = h.substitute(&[("w", Polynomial::one(&r))]).unwrap();
        assert_eq!(w1, g);
    }

    #[test]
    fn derivative_and_exact_division() {
        let r = ring3();
        let f = p(&r, "x1^3 - x1*x2*x3");
        assert_eq!(f.derivative(0), p(&r, "3*x1^2 - x2*x3"));
        assert_eq!(f.derivative(2), p(&r, "-x1*x2"));
        let d = p(&r, "x1*x3");
        let q = (&f * &d).exact_div(&d).unwrap();
        assert_eq!(q, f);
        assert!(f.exact_div(&p(&r, "x2 + 1")).is_none());
    }

    #[test]
    fn display_and_primitive() {
        let r = ring3();
        let f = p(&r, "x1^2 - 1/3*x2*x3");
        assert_eq!(f.to_string(), "x1^2 - 1/3*x2*x3");
        assert_eq!(f.primitive().to_string(), "3*x1^2 - x2*x3");
        assert_eq!(p(&r, "-2*x1 + 4").primitive().to_string(), "x1 - 2");
    }
}
