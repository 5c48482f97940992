//! Ideals over a variable context and the operations built on Gröbner
//! bases: membership, radical membership, elimination, saturation,
//! intersection and dimension.

pub mod budget;
mod groebner;
mod zerodim;

use std::fmt;
use std::sync::Arc;

use num_traits::One;
use once_cell::sync::OnceCell;

use crate::error::{Error, Result};
use crate::poly::{same_ring, Monomial, MonomialOrder, Polynomial, Rational, Ring, VariableContext};

pub use groebner::{bases_checked, set_basis_checks, GroebnerBasis};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    /// Generator membership.
    Exact,
    /// Membership in the radical, i.e. inclusion of varieties.
    UpToRadical,
}

/// A finitely generated ideal. The reduced basis in the ring's own order is
/// computed on first use and cached.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    basis: OnceCell<Arc<GroebnerBasis>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{:?}", self.gens.iter().map(|g| g.to_string()).collect::<Vec<_>>())
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::ContextMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            basis: OnceCell::new(),
        })
    }

    /// Ideal generated by polynomials from any context whose variables all
    /// exist in `ring`.
    pub fn embedded(ring: &Ring, gens: &[Polynomial]) -> Result<Self> {
        let gens = gens.iter().map(|g| g.embed(ring)).collect::<Result<_>>()?;
        Self::new(ring, gens)
    }

    pub fn unit(ring: &Ring) -> Self {
        Self::new(ring, vec![Polynomial::one(ring)]).expect("same ring")
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::new(ring, Vec::new()).expect("same ring")
    }

    pub fn principal(f: Polynomial) -> Self {
        let ring = f.ring().clone();
        Self::new(&ring, vec![f]).expect("same ring")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// Reduced basis in the ring's order.
    pub fn basis(&self) -> Result<Arc<GroebnerBasis>> {
        if let Some(b) = self.basis.get() {
            return Ok(b.clone());
        }
        let b = self
            .basis
            .get_or_try_init(|| groebner::groebner(&self.gens, &self.ring).map(Arc::new))?;
        Ok(b.clone())
    }

    /// Reduced basis with respect to another order on the same variables.
    pub fn groebner(&self, order: &MonomialOrder) -> Result<GroebnerBasis> {
        if order == self.ring.order() {
            return Ok((*self.basis()?).clone());
        }
        let ring = self.ring.with_order(order.clone())?;
        groebner::groebner(&self.gens, &ring)
    }

    pub fn is_unit(&self) -> Result<bool> {
        if self.gens.iter().any(|g| g.is_unit()) {
            return Ok(true);
        }
        if self.gens.is_empty() {
            return Ok(false);
        }
        Ok(self.basis()?.is_unit())
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if !same_ring(p.ring(), &self.ring) {
            return Err(Error::ContextMismatch);
        }
        self.basis()?.normal_form(p)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Whether `p` vanishes on the variety of the ideal (Rabinowitsch).
    pub fn radical_contains(&self, p: &Polynomial) -> Result<bool> {
        if !same_ring(p.ring(), &self.ring) {
            return Err(Error::ContextMismatch);
        }
        if self.contains(p)? {
            return Ok(true);
        }
        if let Some(k) = self.quotient_dimension()? {
            // In a k-dimensional algebra a nilpotent element has index at most k.
            return Ok(zerodim::power_mod(&*self.basis()?, p, k)?.is_zero());
        }
        let t = self.ring.fresh_name("t");
        let mut names = self.ring.names().to_vec();
        names.push(t.clone());
        let ext = VariableContext::grevlex(&names)?;
        let mut gens: Vec<Polynomial> = self
            .gens
            .iter()
            .map(|g| g.embed(&ext))
            .collect::<Result<_>>()?;
        let tp = &Polynomial::var_named(&ext, &t)? * &p.embed(&ext)?;
        gens.push(&Polynomial::one(&ext) - &tp);
        Ideal::new(&ext, gens)?.is_unit()
    }

    /// `other ⊆ self` (exact) or `V(self) ⊆ V(other)` (up to radical).
    pub fn contains_ideal(&self, other: &Ideal, mode: Containment) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::ContextMismatch);
        }
        for g in &other.gens {
            let ok = match mode {
                Containment::Exact => self.contains(g)?,
                Containment::UpToRadical => self.radical_contains(g)?,
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same variety.
    pub fn same_variety(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other, Containment::UpToRadical)?
            && other.contains_ideal(self, Containment::UpToRadical)?)
    }

    /// Equal as ideals (reduced bases coincide).
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::ContextMismatch);
        }
        Ok(self.basis()?.elements() == other.basis()?.elements())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::ContextMismatch);
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn with_generator(&self, f: Polynomial) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.push(f);
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::ContextMismatch);
        }
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a * b))
            .collect();
        Ideal::new(&self.ring, gens)
    }

    /// `I ∩ J` via `t·I + (1 - t)·J` and elimination of `t`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::ContextMismatch);
        }
        if self.is_zero_ideal() || other.is_unit()? {
            return Ok(self.clone());
        }
        if other.is_zero_ideal() || self.is_unit()? {
            return Ok(other.clone());
        }
        if self.contains_ideal(other, Containment::Exact)? {
            return Ok(other.clone());
        }
        if other.contains_ideal(self, Containment::Exact)? {
            return Ok(self.clone());
        }
        let (bi, bj) = (self.basis()?, other.basis()?);
        if let (Some(si), Some(sj)) = (
            zerodim::standard_monomials(&bi, zerodim::CAP),
            zerodim::standard_monomials(&bj, zerodim::CAP),
        ) {
            let gens = zerodim::intersect(&bi, &si, &bj, &sj)?;
            let out = Ideal::new(&self.ring, gens.clone())?;
            let _ = out.basis.set(groebner::from_reduced(&self.ring, gens));
            return Ok(out);
        }
        let (ext, t) = self.with_leading_var("t")?;
        let one_minus_t = &Polynomial::one(&ext) - &t;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&t * &g.embed(&ext)?);
        }
        for g in &other.gens {
            gens.push(&one_minus_t * &g.embed(&ext)?);
        }
        Ideal::new(&ext, gens)?.eliminate_to(&self.ring)
    }

    /// Extension by one fresh variable placed first, with an order that
    /// eliminates it and agrees with ours on the rest.
    fn with_leading_var(&self, base: &str) -> Result<(Ring, Polynomial)> {
        let t = self.ring.fresh_name(base);
        let mut names = vec![t.clone()];
        names.extend(self.ring.names().iter().cloned());
        let order = MonomialOrder::Block {
            split: 1,
            head: Box::new(MonomialOrder::GrevLex),
            tail: Box::new(self.ring.order().clone()),
        };
        let ext = if self.ring.arity() == 0 {
            VariableContext::grevlex(&names)?
        } else {
            VariableContext::new(&names, order)?
        };
        let tp = Polynomial::var(&ext, 0);
        Ok((ext, tp))
    }

    /// Saturation `I : f^∞`.
    pub fn saturate(&self, f: &Polynomial) -> Result<Ideal> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::ContextMismatch);
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.is_unit() || self.is_zero_ideal() {
            return Ok(self.clone());
        }
        if let Some(sat) = self.finite_saturation(std::slice::from_ref(f))? {
            return Ok(sat);
        }
        let (ext, t) = self.with_leading_var("t")?;
        let mut gens: Vec<Polynomial> = self
            .gens
            .iter()
            .map(|g| g.embed(&ext))
            .collect::<Result<_>>()?;
        gens.push(&Polynomial::one(&ext) - &(&t * &f.embed(&ext)?));
        Ideal::new(&ext, gens)?.eliminate_to(&self.ring)
    }

    /// `I : J^∞`, the intersection of the saturations by each generator of `J`.
    /// A zero `J` saturates to the unit ideal.
    pub fn saturate_ideal(&self, other: &Ideal) -> Result<Ideal> {
        if other.is_zero_ideal() {
            return Ok(Ideal::unit(&self.ring));
        }
        if let [g] = &other.gens[..] {
            return self.saturate(g);
        }
        if let Some(sat) = self.finite_saturation(&other.gens)? {
            return Ok(sat);
        }
        let mut acc: Option<Ideal> = None;
        for g in other.gens.iter() {
            let s = self.saturate(g)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s)?,
            });
        }
        Ok(acc.expect("nonempty generators"))
    }

    /// `I : J^∞` for finite `V(I)`, as the limit of `I : J`, `I : J²`, ...
    /// computed by linear algebra in `R/I`. `None` for other `I`.
    fn finite_saturation(&self, j: &[Polynomial]) -> Result<Option<Ideal>> {
        if self.gens.is_empty() || zerodim::standard_monomials(&*self.basis()?, zerodim::CAP).is_none() {
            return Ok(None);
        }
        let mut cur = self.clone();
        loop {
            let b = cur.basis()?;
            if b.is_unit() {
                return Ok(Some(cur));
            }
            let std = zerodim::standard_monomials(&b, usize::MAX)
                .expect("quotients of a finite algebra stay finite");
            let ann = zerodim::annihilator(&b, &std, j)?;
            if ann.is_empty() {
                return Ok(Some(cur));
            }
            let mut gens = b.elements().to_vec();
            gens.extend(ann);
            cur = Ideal::new(&self.ring, gens)?;
        }
    }

    /// Drops the named variables: `I ∩ k[remaining]`.
    pub fn eliminate(&self, drop: &[&str]) -> Result<Ideal> {
        for d in drop {
            self.ring.require(d)?;
        }
        let keep: Vec<&String> = self
            .ring
            .names()
            .iter()
            .filter(|n| !drop.contains(&n.as_str()))
            .collect();
        let order = match self.ring.order() {
            MonomialOrder::Block { .. } => MonomialOrder::GrevLex,
            o => o.clone(),
        };
        let target = VariableContext::new(&keep, order)?;
        self.eliminate_to(&target)
    }

    /// Eliminates every variable absent from `target` and returns the
    /// elimination ideal in `target`.
    pub fn eliminate_to(&self, target: &Ring) -> Result<Ideal> {
        for n in target.names() {
            self.ring.require(n)?;
        }
        let drop: Vec<String> = self
            .ring
            .names()
            .iter()
            .filter(|n| target.index_of(n).is_none())
            .cloned()
            .collect();
        if drop.is_empty() {
            return Ideal::embedded(target, &self.gens);
        }
        if target.arity() == 0 {
            return Err(Error::InvalidContext("cannot eliminate every variable".into()));
        }
        let mut names = drop.clone();
        names.extend(target.names().iter().cloned());
        let order = MonomialOrder::Block {
            split: drop.len(),
            head: Box::new(MonomialOrder::GrevLex),
            tail: Box::new(target.order().clone()),
        };
        let elim_ring = VariableContext::new(&names, order)?;
        let gb = groebner::groebner(&self.gens, &elim_ring)?;
        let k = drop.len();
        let kept: Vec<Polynomial> = gb
            .elements()
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[..k].iter().all(|&e| e == 0)))
            .map(|g| g.embed(target))
            .collect::<Result<_>>()?;
        let out = Ideal::new(target, kept.clone())?;
        // The surviving elements form the reduced basis in the tail order.
        let _ = out.basis.set(groebner::from_reduced(target, kept));
        Ok(out)
    }

    /// Krull dimension of the variety: the size of a largest set of
    /// variables containing the support of no leading monomial. `-1` for
    /// the empty variety.
    pub fn dimension(&self) -> Result<i64> {
        let n = self.ring.arity();
        if self.gens.is_empty() {
            return Ok(n as i64);
        }
        let b = self.basis()?;
        if b.is_unit() {
            return Ok(-1);
        }
        let masks: Vec<u64> = b
            .leading_monomials()
            .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
            .collect();
        let mut best = 0;
        for set in 0u64..(1u64 << n) {
            let size = set.count_ones();
            if size <= best {
                continue;
            }
            if masks.iter().all(|&mk| mk & !set != 0) {
                best = size;
            }
        }
        Ok(best as i64)
    }

    /// `dim_k R/I` when the variety is finite and the count of standard
    /// monomials is small enough to enumerate.
    pub fn quotient_dimension(&self) -> Result<Option<usize>> {
        if self.gens.is_empty() {
            return Ok(None);
        }
        let b = self.basis()?;
        Ok(zerodim::standard_monomials(&b, zerodim::CAP).map(|s| s.len()))
    }

    /// Reinterprets the generators in another context by variable names.
    pub fn embed(&self, ring: &Ring) -> Result<Ideal> {
        Ideal::embedded(ring, &self.gens)
    }

    /// Reduced basis in primitive integer form, one string per element.
    pub fn render(&self) -> Result<Vec<String>> {
        Ok(self
            .basis()?
            .elements()
            .iter()
            .map(|g| g.primitive().to_string())
            .collect())
    }

    /// An ideal with the same variety, obtained by replacing basis elements
    /// by squarefree parts where that is cheap: repeated monomial factors
    /// and elements in a single variable. Not a radical computation in
    /// general.
    pub fn reduce_multiplicities(&self) -> Result<Ideal> {
        let mut cur = self.clone();
        for _ in 0..8 {
            if cur.is_zero_ideal() || cur.is_unit()? {
                return Ok(cur);
            }
            let mut changed = false;
            let mut gens = Vec::new();
            for g in cur.basis()?.elements() {
                let h = squarefree_hint(g);
                changed |= h != *g;
                gens.push(h);
            }
            if !changed {
                break;
            }
            cur = Ideal::new(&self.ring, gens)?;
        }
        cur.finite_radical()
    }

    /// For a finite variety, the radical: the ideal plus the squarefree part
    /// of each variable's minimal polynomial over `R/I`. Other ideals are
    /// returned unchanged.
    fn finite_radical(self) -> Result<Ideal> {
        if self.gens.is_empty() || self.is_unit()? {
            return Ok(self);
        }
        let b = self.basis()?;
        let Some(std) = zerodim::standard_monomials(&b, zerodim::CAP) else {
            return Ok(self);
        };
        let mut extra = Vec::new();
        for v in 0..self.ring.arity() {
            let x = Polynomial::var(&self.ring, v);
            let m = zerodim::minimal_polynomial(&b, &std, &x)?;
            let sq = m.univariate_squarefree().unwrap_or_else(|| m.clone());
            if sq.total_degree()? < m.total_degree()? {
                extra.push(sq);
            }
        }
        if extra.is_empty() {
            return Ok(self);
        }
        let mut gens = b.elements().to_vec();
        gens.extend(extra);
        Ideal::new(&self.ring, gens)
    }

    /// Reduced basis elements scaled to primitive integer form.
    pub fn canonical_generators(&self) -> Result<Vec<Polynomial>> {
        Ok(self.basis()?.elements().iter().map(|g| g.primitive()).collect())
    }
}

/// Same zero set as `g`: repeated monomial factors and repeated factors of
/// a single-variable polynomial are dropped.
pub(crate) fn squarefree_hint(g: &Polynomial) -> Polynomial {
    if let Some(m) = g.monomial_content().filter(|m| !m.is_one()) {
        let rest = g
            .exact_div(&Polynomial::monomial(g.ring(), m.clone(), Rational::one()))
            .expect("monomial content divides");
        let support: Vec<u32> = m.exponents().iter().map(|&e| e.min(1)).collect();
        let sq = Polynomial::monomial(g.ring(), Monomial::from_exponents(&support), Rational::one());
        return (&sq * &squarefree_hint(&rest)).monic();
    }
    g.univariate_squarefree().unwrap_or_else(|| g.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn ring(names: &[&str]) -> Ring {
        VariableContext::grevlex(names).unwrap()
    }

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(
            r,
            gens.iter().map(|s| parse_polynomial(s, r).unwrap()).collect(),
        )
        .unwrap()
    }

    fn p(r: &Ring, s: &str) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    #[test]
    fn principal_and_unit_bases() {
        let r = ring(&["x"]);
        let b = ideal(&r, &["x - 1"]).basis().unwrap();
        assert_eq!(b.elements(), &[p(&r, "x - 1")]);
        assert!(ideal(&r, &["1"]).basis().unwrap().is_unit());
        assert!(ideal(&r, &["x^2 - 1", "x^3 - x + 1"]).is_unit().unwrap());
    }

    #[test]
    fn twisted_cubic_lex_basis() {
        let r = VariableContext::new(&["x", "y", "z"], MonomialOrder::Lex).unwrap();
        let i = ideal(&r, &["x^2 - y", "x^3 - z"]);
        let b = i.basis().unwrap();
        assert!(b.verify());
        let target = p(&r, "y^3 - z^2");
        assert!(b.elements().contains(&target));
        // the parametrization (t, t^2, t^3) satisfies it
        for t in -3..=3 {
            let pt = [crate::poly::rat(t), crate::poly::rat(t * t), crate::poly::rat(t * t * t)];
            assert_eq!(target.evaluate(&pt).unwrap(), crate::poly::rat(0));
        }
    }

    #[test]
    fn membership() {
        let r = ring(&["x"]);
        assert!(ideal(&r, &["x - 1"]).contains(&p(&r, "x^2 - 1")).unwrap());
        assert!(!ideal(&r, &["x^2"]).contains(&p(&r, "x")).unwrap());
        assert!(ideal(&r, &["x^2"]).radical_contains(&p(&r, "x")).unwrap());
        assert!(!ideal(&r, &["x^2"]).radical_contains(&p(&r, "x + 1")).unwrap());
    }

    #[test]
    fn elimination_examples() {
        let r = ring(&["x", "y", "z"]);
        let e = ideal(&r, &["y - x^2", "z - x^3"]).eliminate(&["x"]).unwrap();
        let r2 = e.ring().clone();
        let expected = ideal(&r2, &["z^2 - y^3"]);
        assert!(e.same_variety(&expected).unwrap());
        let r1 = ring(&["x", "y"]);
        assert!(ideal(&r1, &["x"]).eliminate(&["x"]).unwrap().is_zero_ideal());
    }

    #[test]
    fn saturation_examples() {
        let r = ring(&["x", "y"]);
        let s = ideal(&r, &["x*y"]).saturate(&p(&r, "x")).unwrap();
        assert!(s.same_ideal(&ideal(&r, &["y"])).unwrap());
        let s = ideal(&r, &["x^2"]).saturate(&p(&r, "x")).unwrap();
        assert!(s.is_unit().unwrap());
    }

    #[test]
    fn intersection() {
        let r = ring(&["x", "y"]);
        let i = ideal(&r, &["x"]).intersect(&ideal(&r, &["y"])).unwrap();
        assert!(i.same_ideal(&ideal(&r, &["x*y"])).unwrap());
    }

    #[test]
    fn dimension_examples() {
        let r = ring(&["a1", "a2", "a3"]);
        assert_eq!(Ideal::zero(&r).dimension().unwrap(), 3);
        assert_eq!(ideal(&r, &["27*a1^2 - 4*a2^3"]).dimension().unwrap(), 2);
        assert_eq!(ideal(&r, &["a1", "a2"]).dimension().unwrap(), 1);
        assert_eq!(ideal(&r, &["a1", "a2", "a3"]).dimension().unwrap(), 0);
        assert_eq!(Ideal::unit(&r).dimension().unwrap(), -1);
    }

    #[test]
    fn containment_modes() {
        let r = ring(&["x"]);
        let x = ideal(&r, &["x"]);
        let x2 = ideal(&r, &["x^2"]);
        // <x^2> ⊆ <x>
        assert!(x.contains_ideal(&x2, Containment::Exact).unwrap());
        assert!(!x2.contains_ideal(&x, Containment::Exact).unwrap());
        // V(<x>) ⊆ V(<x^2>)
        assert!(x.contains_ideal(&x2, Containment::UpToRadical).unwrap());
        assert!(x2.contains_ideal(&x, Containment::UpToRadical).unwrap());
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let r = ring(&["x", "y", "z"]);
        let i = ideal(&r, &["x^2*y - z + 1", "x*y^2 - x*z", "y*z^2 - x*y - 2"]);
        let res = budget::with_step_budget(5, || i.basis().map(|_| ()));
        assert!(matches!(res, Err(Error::BudgetExceeded(5))), "{res:?}");
        // a failed computation is not cached
        assert!(i.basis().is_ok());
    }
}
