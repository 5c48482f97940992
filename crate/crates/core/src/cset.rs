//! Constructible sets as finite unions of locally closed pieces
//! `V(I) \ V(E)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{Containment, Ideal};
use crate::poly::{same_ring, PolyMatrix, Polynomial, Rational, Ring};

/// The locally closed set `V(I) \ V(E)`.
#[derive(Debug, Clone)]
pub struct Piece {
    closure: Ideal,
    except: Ideal,
    normalized: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieceJson {
    pub closure: Vec<String>,
    pub except: Vec<String>,
    pub dim: i64,
}

impl Piece {
    pub fn new(closure: Ideal, except: Ideal) -> Result<Self> {
        if !same_ring(closure.ring(), except.ring()) {
            return Err(Error::ContextMismatch);
        }
        Ok(Piece {
            closure,
            except,
            normalized: false,
        })
    }

    /// The closed set `V(I)`.
    pub fn closed(closure: Ideal) -> Self {
        let except = Ideal::unit(closure.ring());
        Piece {
            closure,
            except,
            normalized: false,
        }
    }

    pub fn empty(ring: &Ring) -> Self {
        Piece {
            closure: Ideal::unit(ring),
            except: Ideal::unit(ring),
            normalized: true,
        }
    }

    pub fn ring(&self) -> &Ring {
        self.closure.ring()
    }

    pub fn closure_ideal(&self) -> &Ideal {
        &self.closure
    }

    pub fn except_ideal(&self) -> &Ideal {
        &self.except
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Same point set with `I` saturated by `E`, so that `V(I)` is the
    /// closure of the piece. Repeated factors of basis elements are also
    /// stripped where that is cheap, and `E` is reduced modulo `I`. An
    /// empty piece normalizes to `(⟨1⟩, ⟨1⟩)`.
    pub fn normalize(&self) -> Result<Piece> {
        if self.normalized {
            return Ok(self.clone());
        }
        let ring = self.ring().clone();
        if self.except.is_zero_ideal() || self.closure.is_unit()? {
            return Ok(Piece::empty(&ring));
        }
        let sat = if self.except.is_unit()? {
            self.closure.clone()
        } else {
            self.closure.saturate_ideal(&self.except)?
        };
        if sat.is_unit()? {
            return Ok(Piece::empty(&ring));
        }
        let closure = sat.reduce_multiplicities()?;
        let except = reduce_exception(&closure, &self.except)?;
        Ok(Piece {
            closure,
            except,
            normalized: true,
        })
    }

    /// True iff `V(I) ⊆ V(E)`.
    pub fn is_empty(&self) -> Result<bool> {
        if self.normalized {
            return self.closure.is_unit();
        }
        if self.except.is_zero_ideal() {
            return Ok(true);
        }
        for e in self.except.generators() {
            if !self.closure.radical_contains(e)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the piece is closed, i.e. nothing is removed from `V(I)`.
    pub fn is_closed(&self) -> Result<bool> {
        let n = self.normalize()?;
        n.except.is_unit()
    }

    /// Dimension of the closure; `-1` when empty.
    pub fn dimension(&self) -> Result<i64> {
        let n = self.normalize()?;
        if n.closure.is_unit()? {
            return Ok(-1);
        }
        n.closure.dimension()
    }

    pub fn contains_point(&self, point: &[Rational]) -> Result<bool> {
        let arity = self.ring().arity();
        if point.len() != arity {
            return Err(Error::Arity {
                expected: arity,
                got: point.len(),
            });
        }
        for g in self.closure.generators() {
            if !g.evaluate(point)?.is_zero_value() {
                return Ok(false);
            }
        }
        if self.except.is_zero_ideal() {
            return Ok(false);
        }
        for e in self.except.generators() {
            if !e.evaluate(point)?.is_zero_value() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// `self \ V(b)`.
    pub fn difference(&self, b: &Ideal) -> Result<CSet> {
        let except = self.except.product(b)?;
        let p = Piece::new(self.closure.clone(), except)?.normalize()?;
        Ok(CSet::from_pieces(self.ring(), vec![p]))
    }

    pub fn intersect(&self, other: &Piece) -> Result<Piece> {
        Piece::new(
            self.closure.sum(&other.closure)?,
            self.except.product(&other.except)?,
        )?
        .normalize()
    }

    /// Intersection with the closed set `V(c)`.
    pub fn restrict(&self, c: &Ideal) -> Result<Piece> {
        Piece::new(self.closure.sum(c)?, self.except.clone())?.normalize()
    }

    /// `self \ other` as at most two pieces.
    pub fn minus(&self, other: &Piece) -> Result<CSet> {
        let ring = self.ring().clone();
        let mut out = Vec::new();
        let outside = Piece::new(self.closure.clone(), self.except.product(&other.closure)?)?
            .normalize()?;
        out.push(outside);
        if !other.except.is_unit()? {
            let boundary = Piece::new(
                self.closure.sum(&other.closure)?.sum(&other.except)?,
                self.except.clone(),
            )?
            .normalize()?;
            out.push(boundary);
        }
        let pieces = out
            .into_iter()
            .filter(|p| !p.closure.is_unit().unwrap_or(false))
            .collect();
        Ok(CSet::from_pieces(&ring, pieces))
    }

    pub fn meets(&self, other: &Piece) -> Result<bool> {
        Ok(!self.intersect(other)?.is_empty()?)
    }

    pub fn is_subset_of(&self, other: &Piece) -> Result<bool> {
        self.minus(other)?.is_empty()
    }

    /// Whether the piece lies in the closed set `V(c)`.
    pub fn lies_in(&self, c: &Ideal) -> Result<bool> {
        let n = self.normalize()?;
        n.closure.contains_ideal(c, Containment::UpToRadical)
    }

    pub fn to_json(&self) -> Result<PieceJson> {
        let n = self.normalize()?;
        Ok(PieceJson {
            closure: n.closure.render()?,
            except: n.except.render()?,
            dim: n.dimension()?,
        })
    }

    /// Sort key: closure dimension descending, then rendered generators.
    pub fn sort_key(&self) -> Result<(i64, Vec<String>, Vec<String>)> {
        let j = self.to_json()?;
        let mut c = j.closure;
        c.sort();
        let mut e = j.except;
        e.sort();
        Ok((-j.dim, c, e))
    }
}

trait IsZeroValue {
    fn is_zero_value(&self) -> bool;
}

impl IsZeroValue for Rational {
    fn is_zero_value(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

/// Exception generators reduced modulo the closure ideal: normal forms of a
/// basis of `I + E`, dropping those that vanish.
fn reduce_exception(closure: &Ideal, except: &Ideal) -> Result<Ideal> {
    let ring = closure.ring().clone();
    let sum = closure.sum(except)?;
    if sum.is_unit()? {
        return Ok(Ideal::unit(&ring));
    }
    let mut gens: Vec<Polynomial> = Vec::new();
    for g in sum.basis()?.elements() {
        let r = closure.normal_form(g)?;
        if r.is_zero() {
            continue;
        }
        let r = crate::ideal::squarefree_hint(&r).primitive();
        if !gens.contains(&r) {
            gens.push(r);
        }
    }
    Ideal::new(&ring, gens)
}

/// A finite union of pieces.
#[derive(Debug, Clone)]
pub struct CSet {
    ring: Ring,
    pieces: Vec<Piece>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PurityReport {
    pub dimension: i64,
    pub pure: bool,
    /// Closure dimension of each piece, in piece order.
    pub piece_dims: Vec<i64>,
    /// Indices of the pieces whose closures are maximal.
    pub maximal: Vec<usize>,
    pub note: String,
}

const PURITY_NOTE: &str = "decided on maximal piece closures; a piece whose closure is itself \
mixed-dimensional would be misjudged";

impl CSet {
    pub fn empty(ring: &Ring) -> Self {
        CSet {
            ring: ring.clone(),
            pieces: Vec::new(),
        }
    }

    pub fn from_pieces(ring: &Ring, pieces: Vec<Piece>) -> Self {
        CSet {
            ring: ring.clone(),
            pieces,
        }
    }

    pub fn closed(ideal: Ideal) -> Self {
        let ring = ideal.ring().clone();
        CSet::from_pieces(&ring, vec![Piece::closed(ideal)])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn push(&mut self, p: Piece) {
        self.pieces.push(p);
    }

    pub fn union(&self, other: &CSet) -> Result<CSet> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::ContextMismatch);
        }
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().cloned());
        Ok(CSet::from_pieces(&self.ring, pieces))
    }

    /// Normalizes every piece and drops the empty ones.
    pub fn normalize(&self) -> Result<CSet> {
        let mut pieces = Vec::new();
        for p in &self.pieces {
            let n = p.normalize()?;
            if !n.closure.is_unit()? {
                pieces.push(n);
            }
        }
        Ok(CSet::from_pieces(&self.ring, pieces))
    }

    pub fn is_empty(&self) -> Result<bool> {
        for p in &self.pieces {
            if !p.is_empty()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ideal of the Zariski closure: the intersection of the normalized
    /// closure ideals.
    pub fn closure(&self) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        for p in self.normalize()?.pieces {
            acc = acc.intersect(&p.closure)?;
        }
        Ok(acc)
    }

    pub fn contains_point(&self, point: &[Rational]) -> Result<bool> {
        for p in &self.pieces {
            if p.contains_point(point)? {
                return Ok(true);
            }
        }
        if point.len() != self.ring.arity() {
            return Err(Error::Arity {
                expected: self.ring.arity(),
                got: point.len(),
            });
        }
        Ok(false)
    }

    pub fn dimension(&self) -> Result<i64> {
        let mut d = -1;
        for p in &self.pieces {
            d = d.max(p.dimension()?);
        }
        Ok(d)
    }

    /// `self \ other`.
    pub fn difference(&self, other: &CSet) -> Result<CSet> {
        let mut cur = self.normalize()?.pieces;
        for q in &other.pieces {
            let mut next = Vec::new();
            for p in &cur {
                next.extend(p.minus(q)?.pieces);
            }
            cur = next;
        }
        Ok(CSet::from_pieces(&self.ring, cur))
    }

    /// `self \ V(c)`.
    pub fn difference_closed(&self, c: &Ideal) -> Result<CSet> {
        let mut out = Vec::new();
        for p in &self.pieces {
            out.extend(p.difference(c)?.pieces);
        }
        CSet::from_pieces(&self.ring, out).normalize()
    }

    pub fn is_subset_of(&self, other: &CSet) -> Result<bool> {
        self.difference(other)?.is_empty()
    }

    /// Same union, pairwise disjoint pieces.
    pub fn refine(&self) -> Result<CSet> {
        let mut done: Vec<Piece> = Vec::new();
        for p in self.normalize()?.pieces {
            let mut parts = vec![p];
            for r in &done {
                let mut next = Vec::new();
                for q in &parts {
                    next.extend(q.minus(r)?.pieces);
                }
                parts = next;
            }
            done.extend(parts);
        }
        Ok(CSet::from_pieces(&self.ring, done))
    }

    pub fn is_pure_dimensional(&self) -> Result<PurityReport> {
        let pieces = self.normalize()?.pieces;
        let mut piece_dims = Vec::with_capacity(pieces.len());
        for p in &pieces {
            piece_dims.push(p.closure.dimension()?);
        }
        let mut maximal = Vec::new();
        for i in 0..pieces.len() {
            let mut dominated = false;
            for j in 0..pieces.len() {
                if i == j {
                    continue;
                }
                let (a, b) = (&pieces[i].closure, &pieces[j].closure);
                if a.contains_ideal(b, Containment::UpToRadical)? {
                    let equal = b.contains_ideal(a, Containment::UpToRadical)?;
                    if !equal || j < i {
                        dominated = true;
                        break;
                    }
                }
            }
            if !dominated {
                maximal.push(i);
            }
        }
        let dimension = piece_dims.iter().copied().max().unwrap_or(-1);
        let pure = maximal.iter().all(|&i| piece_dims[i] == dimension);
        Ok(PurityReport {
            dimension,
            pure,
            piece_dims,
            maximal,
            note: PURITY_NOTE.to_string(),
        })
    }

    pub fn to_json(&self) -> Result<Vec<PieceJson>> {
        self.pieces.iter().map(|p| p.to_json()).collect()
    }
}

/// Splits `V(I)` along monomial factors of basis elements: a basis element
/// `m·h` with `m` a monomial gives `V(I + ⟨x_i⟩)` for each variable of `m`
/// and `V(I + ⟨h⟩)`. Redundant parts are dropped. The union is unchanged.
pub fn split_components(ideal: &Ideal) -> Result<Vec<Ideal>> {
    let mut todo = vec![ideal.reduce_multiplicities()?];
    let mut done: Vec<Ideal> = Vec::new();
    let mut guard = 0;
    while let Some(i) = todo.pop() {
        guard += 1;
        if guard > 512 {
            return Err(Error::Internal("component splitting did not settle".into()));
        }
        if i.is_unit()? {
            continue;
        }
        let split = i.basis()?.elements().iter().find_map(|g| {
            let m = g.monomial_content()?;
            (!m.is_one() && g.len() > 1 || m.support().count() > 1).then_some((g.clone(), m))
        });
        match split {
            None => done.push(i),
            Some((g, m)) => {
                let ring = i.ring().clone();
                for v in m.support() {
                    todo.push(i.with_generator(Polynomial::var(&ring, v))?.reduce_multiplicities()?);
                }
                let mono = Polynomial::monomial(&ring, m, num_traits::One::one());
                let h = g.exact_div(&mono).expect("content divides");
                if !h.is_constant() {
                    todo.push(i.with_generator(h)?.reduce_multiplicities()?);
                }
            }
        }
    }
    irredundant(done)
}

/// Drops every ideal whose variety lies in another's (keeping the first of
/// equal ones).
pub fn irredundant(ideals: Vec<Ideal>) -> Result<Vec<Ideal>> {
    let mut keep: Vec<Ideal> = Vec::new();
    'outer: for i in ideals {
        if i.is_unit()? {
            continue;
        }
        for k in &keep {
            if i.contains_ideal(k, Containment::UpToRadical)? {
                continue 'outer;
            }
        }
        let mut next = Vec::new();
        for k in keep {
            if !k.contains_ideal(&i, Containment::UpToRadical)? {
                next.push(k);
            }
        }
        next.push(i);
        keep = next;
    }
    Ok(keep)
}

/// Jacobian criterion: `I + minors_c(Jac)` with `c` the codimension, taken
/// over a basis of `I` with repeated factors stripped. Exact for radical
/// equidimensional `I`.
pub fn singular_locus(ideal: &Ideal) -> Result<Ideal> {
    let ring = ideal.ring().clone();
    let i = ideal.reduce_multiplicities()?;
    if i.is_zero_ideal() || i.is_unit()? {
        return Ok(Ideal::unit(&ring));
    }
    let n = ring.arity();
    let d = i.dimension()?;
    let c = n - d as usize;
    let gens: Vec<Polynomial> = i.basis()?.elements().to_vec();
    let entries = gens
        .iter()
        .flat_map(|g| (0..n).map(move |j| g.derivative(j)))
        .collect();
    let jac = PolyMatrix::new(gens.len(), n, entries)?;
    if c > gens.len() {
        return Ok(i);
    }
    let minors = jac.minors(c)?;
    let mut sing = i.clone();
    for m in minors {
        if !m.is_zero() {
            sing = sing.with_generator(m)?;
        }
    }
    Ok(sing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::poly::{rat, VariableContext};

    fn ring() -> Ring {
        VariableContext::grevlex(&["x", "y", "z"]).unwrap()
    }

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        let gens = gens.iter().map(|g| parse_polynomial(g, r).unwrap()).collect();
        Ideal::new(r, gens).unwrap()
    }

    fn pt(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| rat(c)).collect()
    }

    #[test]
    fn normalize_drops_removed_component() {
        let r = ring();
        let p = Piece::new(ideal(&r, &["x*y"]), ideal(&r, &["x"])).unwrap();
        let n = p.normalize().unwrap();
        assert_eq!(n.closure_ideal().render().unwrap(), vec!["y"]);
        let closed = Piece::closed(ideal(&r, &["x"])).normalize().unwrap();
        assert!(closed.is_closed().unwrap());
    }

    #[test]
    fn emptiness() {
        let r = ring();
        assert!(Piece::new(ideal(&r, &["x"]), ideal(&r, &["x"])).unwrap().is_empty().unwrap());
        assert!(!Piece::new(ideal(&r, &["x"]), ideal(&r, &["y"])).unwrap().is_empty().unwrap());
        assert!(Piece::new(ideal(&r, &["1"]), ideal(&r, &["y"])).unwrap().is_empty().unwrap());
    }

    #[test]
    fn difference_and_points() {
        let r = ring();
        // {x = 0, z != 0} minus the z-axis
        let v = Piece::new(ideal(&r, &["x"]), ideal(&r, &["z"])).unwrap();
        let d = v.difference(&ideal(&r, &["x", "y"])).unwrap();
        assert!(d.contains_point(&pt(&[0, 1, 1])).unwrap());
        assert!(!d.contains_point(&pt(&[0, 0, 1])).unwrap());
        assert!(!d.contains_point(&pt(&[0, 1, 0])).unwrap());
        let same = v.difference(&Ideal::unit(&r)).unwrap();
        assert!(same.contains_point(&pt(&[0, 5, 2])).unwrap());
    }

    #[test]
    fn purity_of_mixed_union() {
        let r = ring();
        let c = CSet::from_pieces(
            &r,
            vec![
                Piece::closed(ideal(&r, &["z"])),
                Piece::closed(ideal(&r, &["x", "y"])),
            ],
        );
        let rep = c.is_pure_dimensional().unwrap();
        assert!(!rep.pure);
        assert_eq!(rep.piece_dims, vec![2, 1]);
        let c2 = c.union(&CSet::closed(ideal(&r, &["x"]))).unwrap();
        assert!(c2.is_pure_dimensional().unwrap().pure);
        assert!(CSet::empty(&r).is_pure_dimensional().unwrap().pure);
    }

    #[test]
    fn splitting_and_singular_locus() {
        let r = ring();
        let parts = split_components(&ideal(&r, &["x*z*(3*x^2 - y*z)"])).unwrap();
        assert_eq!(parts.len(), 3);
        let sing = singular_locus(&ideal(&r, &["x*y"])).unwrap();
        assert!(sing.same_variety(&ideal(&r, &["x", "y"])).unwrap());
        let cone = singular_locus(&ideal(&r, &["3*x^2 - y*z"])).unwrap();
        assert!(cone.same_variety(&ideal(&r, &["x", "y", "z"])).unwrap());
    }

    #[test]
    fn refine_makes_pieces_disjoint() {
        let r = ring();
        let c = CSet::from_pieces(
            &r,
            vec![Piece::closed(ideal(&r, &["x"])), Piece::closed(ideal(&r, &["y"]))],
        );
        let d = c.refine().unwrap();
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                assert!(!d.pieces()[i].meets(&d.pieces()[j]).unwrap());
            }
        }
        assert!(d.contains_point(&pt(&[0, 0, 3])).unwrap());
        assert!(d.closure().unwrap().same_variety(&ideal(&r, &["x*y"])).unwrap());
    }
}
