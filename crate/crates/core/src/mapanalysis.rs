//! Map-level invariants: singular locus, critical values K₀(F), asymptotic
//! set S_F, dominance, properness and leading-form data.

use std::collections::BTreeSet;

use once_cell::sync::OnceCell;
use serde::Serialize;

use crate::cset::{CSet, Piece, PieceJson};
use crate::error::{Error, Result};
use crate::ideal::{Containment, Ideal};
use crate::poly::{MonomialOrder, PolyMap, PolyMapJson, Polynomial, Rational, Ring, VariableContext};
use crate::thom::{self, ImageStratum, SmoothPiece};

/// Ring of the target coordinates, with the source's order kind.
pub fn target_ring(map: &PolyMap) -> Result<Ring> {
    let order = match map.source().order() {
        MonomialOrder::Lex => MonomialOrder::Lex,
        _ => MonomialOrder::GrevLex,
    };
    VariableContext::new(map.targets(), order)
}

/// Ring on source then target variables, used for graph ideals.
pub fn graph_ring(map: &PolyMap) -> Result<Ring> {
    let mut names = map.source().names().to_vec();
    names.extend(map.targets().iter().cloned());
    VariableContext::grevlex(&names)
}

fn graph_generators(map: &PolyMap, ring: &Ring) -> Result<Vec<Polynomial>> {
    map.targets()
        .iter()
        .zip(map.components())
        .map(|(y, f)| Ok(&Polynomial::var_named(ring, y)? - &f.embed(ring)?))
        .collect()
}

/// `⟨y - F(x)⟩ + constraint` in the graph ring.
pub fn graph_ideal(map: &PolyMap, constraint: Option<&Ideal>) -> Result<Ideal> {
    let ring = graph_ring(map)?;
    let mut gens = graph_generators(map, &ring)?;
    if let Some(c) = constraint {
        for g in c.generators() {
            gens.push(g.embed(&ring)?);
        }
    }
    Ideal::new(&ring, gens)
}

/// `⟨det J_F⟩`.
pub fn singular_locus(map: &PolyMap) -> Result<Ideal> {
    map.require_square()?;
    let det = map.jacobian().determinant()?;
    Ideal::new(map.source(), vec![det])
}

/// Ideal of the Zariski closure of `F(V(constraint))`.
pub fn image_closure(map: &PolyMap, constraint: &Ideal) -> Result<Ideal> {
    let target = target_ring(map)?;
    graph_ideal(map, Some(constraint))?.eliminate_to(&target)
}

/// Ideal of the closure of K₀(F).
pub fn critical_values_closure(map: &PolyMap) -> Result<Ideal> {
    image_closure(map, &singular_locus(map)?)
}

/// Closure ideal of K₀(F) and K₀(F) itself as the union of the exact images
/// of the Thom pieces.
pub fn critical_values(map: &PolyMap) -> Result<(Ideal, CSet)> {
    let an = Analysis::new(map.clone())?;
    Ok((an.k0_closure()?.clone(), an.k0()?.clone()))
}

/// Whether `a` has a preimage in `V(constraint)`: the fiber ideal is not
/// the unit ideal.
pub fn point_in_image(map: &PolyMap, constraint: &Ideal, a: &[Rational]) -> Result<bool> {
    if a.len() != map.components().len() {
        return Err(Error::Arity {
            expected: map.components().len(),
            got: a.len(),
        });
    }
    let ring = map.source();
    let mut gens: Vec<Polynomial> = map
        .components()
        .iter()
        .zip(a)
        .map(|(f, c)| f - &Polynomial::constant(ring, c.clone()))
        .collect();
    for g in constraint.generators() {
        gens.push(g.embed(ring)?);
    }
    Ok(!Ideal::new(ring, gens)?.is_unit()?)
}

/// The exact image `F(piece)` as a constructible set in the target ring.
///
/// For each exception generator `e`, the ideal `I + ⟨1 - t·e⟩ + ⟨y - F⟩`
/// gets a basis in an order eliminating `(t, x)`. With `Z` the variety of
/// the elimination ideal and `c_g ∈ k[y]` the coefficient of the leading
/// `(t, x)`-monomial of each remaining basis element, every point of
/// `Z \ V(∏ c_g)` lifts; the rest of the image comes from adding each `c_g`
/// and repeating.
pub fn image_of_piece(map: &PolyMap, piece: &Piece) -> Result<CSet> {
    let target = target_ring(map)?;
    let piece = piece.normalize()?;
    if piece.closure_ideal().is_unit()? {
        return Ok(CSet::empty(&target));
    }
    let src = map.source();
    let t = {
        let mut probe = src.names().to_vec();
        probe.extend(map.targets().iter().cloned());
        VariableContext::grevlex(&probe)?.fresh_name("t")
    };
    let mut names = vec![t];
    names.extend(src.names().iter().cloned());
    let head = names.len();
    names.extend(map.targets().iter().cloned());
    let ring = VariableContext::new(
        &names,
        MonomialOrder::Block {
            split: head,
            head: Box::new(MonomialOrder::GrevLex),
            tail: Box::new(target.order().clone()),
        },
    )?;
    let tvar = Polynomial::var(&ring, 0);
    let mut base = graph_generators(map, &ring)?;
    for g in piece.closure_ideal().generators() {
        base.push(g.embed(&ring)?);
    }
    let excepts: Vec<Option<Polynomial>> = if piece.except_ideal().is_unit()? {
        vec![None]
    } else {
        piece.except_ideal().generators().iter().cloned().map(Some).collect()
    };
    let mut out = Vec::new();
    for e in excepts {
        let mut gens = base.clone();
        if let Some(e) = e {
            gens.push(&Polynomial::one(&ring) - &(&tvar * &e.embed(&ring)?));
        }
        let mut seen = BTreeSet::new();
        project(&ring, &target, head, &gens, Vec::new(), &mut seen, &mut out, 0)?;
    }
    let mut seen = BTreeSet::new();
    let mut pieces = Vec::new();
    for p in CSet::from_pieces(&target, out).normalize()?.pieces() {
        let j = p.to_json()?;
        if seen.insert((j.closure, j.except)) {
            pieces.push(p.clone());
        }
    }
    Ok(CSet::from_pieces(&target, pieces))
}

#[allow(clippy::too_many_arguments)]
fn project(
    ring: &Ring,
    target: &Ring,
    head: usize,
    base: &[Polynomial],
    extra: Vec<Polynomial>,
    seen: &mut BTreeSet<Vec<String>>,
    out: &mut Vec<Piece>,
    depth: usize,
) -> Result<Option<Ideal>> {
    let mut key: Vec<String> = extra.iter().map(|p| p.primitive().to_string()).collect();
    key.sort();
    if !seen.insert(key) {
        return Ok(None);
    }
    if depth > 64 {
        return Err(Error::Internal("image recursion did not terminate".into()));
    }
    let mut gens = base.to_vec();
    for c in &extra {
        gens.push(c.embed(ring)?);
    }
    let ideal = Ideal::new(ring, gens)?;
    let gb = ideal.basis()?;
    if gb.is_unit() {
        return Ok(Some(Ideal::unit(target)));
    }
    let mut elim = Vec::new();
    let mut coeffs: Vec<Polynomial> = Vec::new();
    for g in gb.elements() {
        let lm = g.leading_monomial().expect("nonzero");
        let lead_head = &lm.exponents()[..head];
        if lead_head.iter().all(|&e| e == 0) {
            elim.push(g.embed(target)?);
            continue;
        }
        let terms = g
            .terms()
            .iter()
            .filter(|(m, _)| &m.exponents()[..head] == lead_head)
            .map(|(m, c)| {
                (
                    crate::poly::Monomial::from_exponents(&m.exponents()[head..]),
                    c.clone(),
                )
            })
            .collect();
        let c = Polynomial::from_terms(target, terms);
        if !c.is_constant() {
            let c = c.primitive();
            if !coeffs.contains(&c) {
                coeffs.push(c);
            }
        }
    }
    let z = Ideal::new(target, elim)?;
    // A coefficient whose locus on Z is entirely hit by the recursion is
    // not removed from Z.
    let mut uncovered = Vec::new();
    for c in coeffs {
        let mut next = extra.clone();
        next.push(c.clone());
        let sub = project(ring, target, head, base, next, seen, out, depth + 1)?;
        let covered = match sub {
            Some(zc) => z.with_generator(c.clone())?.contains_ideal(&zc, Containment::UpToRadical)?,
            None => false,
        };
        if !covered {
            uncovered.push(c);
        }
    }
    let closed = uncovered.is_empty();
    let product = uncovered.iter().fold(Polynomial::one(target), |acc, c| &acc * c);
    out.push(Piece::new(z.clone(), Ideal::principal(product))?);
    Ok(closed.then_some(z))
}

/// Ideal of S_F: the bihomogenized graph is closed up in the x-block with a
/// fresh `w`, cut with `w = 0`, the locus `x = 0` is removed chart by chart
/// and the x-block is eliminated.
pub fn asymptotic_set(map: &PolyMap) -> Result<Ideal> {
    map.require_square()?;
    let target = target_ring(map)?;
    let src = map.source();
    let n = src.arity();
    let mut probe = src.names().to_vec();
    probe.extend(map.targets().iter().cloned());
    let w = VariableContext::grevlex(&probe)?.fresh_name("w");
    let mut names = src.names().to_vec();
    names.push(w);
    names.extend(map.targets().iter().cloned());
    let ring = VariableContext::grevlex(&names)?;
    let block: Vec<usize> = (0..n).collect();
    let graph = graph_generators(map, &ring)?;
    let gens = graph
        .iter()
        .zip(map.components())
        .map(|(g, f)| {
            let d = f.total_degree().unwrap_or(0);
            g.homogenize_block(n, &block, d)
        })
        .collect();
    let wpoly = Polynomial::var(&ring, n);
    let closed = Ideal::new(&ring, gens)?.saturate(&wpoly)?;
    let at_infinity = closed.with_generator(wpoly)?;
    let mut acc: Option<Ideal> = None;
    for i in 0..n {
        let chart = at_infinity.saturate(&Polynomial::var(&ring, i))?;
        let proj = chart.eliminate_to(&target)?;
        acc = Some(match acc {
            None => proj,
            Some(a) => a.intersect(&proj)?,
        });
    }
    match acc {
        Some(a) => a.reduce_multiplicities(),
        None => Ok(Ideal::unit(&target)),
    }
}

pub fn is_dominant(map: &PolyMap) -> Result<bool> {
    map.require_square()?;
    Ok(image_closure(map, &Ideal::zero(map.source()))?.is_zero_ideal())
}

pub fn is_proper(map: &PolyMap) -> Result<bool> {
    asymptotic_set(map)?.is_unit()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JelonekReport {
    pub dominant: bool,
    pub sf_dim: i64,
    pub ambient_dim: usize,
    /// For a dominant map, `dim S_F ∈ {-1, n-1}`; vacuous otherwise.
    pub ok: bool,
}

pub fn check_jelonek(map: &PolyMap) -> Result<JelonekReport> {
    let an = Analysis::new(map.clone())?;
    an.jelonek()
}

#[derive(Debug, Clone)]
pub struct LeadingFormData {
    pub forms: Vec<Polynomial>,
    pub generic_rank: usize,
    pub v_ideal: Ideal,
    pub v_dim: i64,
    /// `generic_rank ≥ n - 1`.
    pub rank_condition_ok: bool,
    /// `v_dim ≤ 1`.
    pub v_dim_ok: bool,
    /// `v_dim = n - generic_rank`.
    pub corank_agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeadingFormJson {
    pub forms: Vec<String>,
    pub generic_rank: usize,
    pub v_dim: i64,
    pub rank_condition_ok: bool,
    pub v_dim_ok: bool,
    pub corank_agrees: bool,
}

impl LeadingFormData {
    pub fn to_json(&self) -> LeadingFormJson {
        LeadingFormJson {
            forms: self.forms.iter().map(|f| f.to_string()).collect(),
            generic_rank: self.generic_rank,
            v_dim: self.v_dim,
            rank_condition_ok: self.rank_condition_ok,
            v_dim_ok: self.v_dim_ok,
            corank_agrees: self.corank_agrees,
        }
    }
}

pub fn leading_form_data(map: &PolyMap) -> Result<LeadingFormData> {
    map.require_square()?;
    let n = map.arity();
    let mut forms = Vec::with_capacity(n);
    for (i, f) in map.components().iter().enumerate() {
        if f.is_zero() {
            return Err(Error::ZeroComponent(i));
        }
        forms.push(f.leading_form()?);
    }
    let hat = PolyMap::new(map.source().clone(), map.targets().to_vec(), forms.clone())?;
    let generic_rank = hat.jacobian().generic_rank()?;
    let v_ideal = Ideal::new(map.source(), forms.clone())?;
    let v_dim = v_ideal.dimension()?;
    Ok(LeadingFormData {
        forms,
        generic_rank,
        v_ideal,
        v_dim,
        rank_condition_ok: generic_rank + 1 >= n,
        v_dim_ok: v_dim <= 1,
        corank_agrees: v_dim == (n - generic_rank) as i64,
    })
}

/// Cached analysis of one square map; every stage is computed at most once.
pub struct Analysis {
    map: PolyMap,
    target: Ring,
    sing: OnceCell<Ideal>,
    k0_closure: OnceCell<Ideal>,
    sf: OnceCell<Ideal>,
    dominant: OnceCell<bool>,
    thom: OnceCell<Vec<ImageStratum>>,
    k0: OnceCell<CSet>,
    sf_strata: OnceCell<Vec<SmoothPiece>>,
    leading: OnceCell<LeadingFormData>,
}

impl Analysis {
    pub fn new(map: PolyMap) -> Result<Self> {
        map.require_square()?;
        let target = target_ring(&map)?;
        Ok(Analysis {
            map,
            target,
            sing: OnceCell::new(),
            k0_closure: OnceCell::new(),
            sf: OnceCell::new(),
            dominant: OnceCell::new(),
            thom: OnceCell::new(),
            k0: OnceCell::new(),
            sf_strata: OnceCell::new(),
            leading: OnceCell::new(),
        })
    }

    pub fn map(&self) -> &PolyMap {
        &self.map
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn ambient_dim(&self) -> usize {
        self.map.arity()
    }

    pub fn sing(&self) -> Result<&Ideal> {
        self.sing.get_or_try_init(|| singular_locus(&self.map))
    }

    pub fn k0_closure(&self) -> Result<&Ideal> {
        self.k0_closure
            .get_or_try_init(|| image_closure(&self.map, self.sing()?))
    }

    pub fn sf(&self) -> Result<&Ideal> {
        self.sf.get_or_try_init(|| asymptotic_set(&self.map))
    }

    pub fn dominant(&self) -> Result<bool> {
        self.dominant.get_or_try_init(|| is_dominant(&self.map)).copied()
    }

    pub fn proper(&self) -> Result<bool> {
        self.sf()?.is_unit()
    }

    pub fn thom_partition(&self) -> Result<&[ImageStratum]> {
        self.thom
            .get_or_try_init(|| thom::thom_partition_of(self))
            .map(|v| v.as_slice())
    }

    /// K₀(F) as the union of the exact images of the Thom pieces.
    pub fn k0(&self) -> Result<&CSet> {
        self.k0.get_or_try_init(|| {
            let mut acc = CSet::empty(&self.target);
            for w in self.thom_partition()? {
                acc = acc.union(&w.image)?;
            }
            Ok(acc)
        })
    }

    pub fn sf_strata(&self) -> Result<&[SmoothPiece]> {
        self.sf_strata
            .get_or_try_init(|| thom::sf_stratification_of(self))
            .map(|v| v.as_slice())
    }

    pub fn leading(&self) -> Result<&LeadingFormData> {
        self.leading.get_or_try_init(|| leading_form_data(&self.map))
    }

    pub fn jelonek(&self) -> Result<JelonekReport> {
        let dominant = self.dominant()?;
        let sf_dim = self.sf()?.dimension()?;
        let n = self.ambient_dim();
        Ok(JelonekReport {
            dominant,
            sf_dim,
            ambient_dim: n,
            ok: !dominant || sf_dim == -1 || sf_dim == n as i64 - 1,
        })
    }

    pub fn report(&self) -> Result<MapReport> {
        let jelonek = self.jelonek()?;
        Ok(MapReport {
            map: self.map.to_json(),
            sing: self.sing()?.render()?,
            k0_closure: self.k0_closure()?.render()?,
            k0_pieces: self.k0()?.normalize()?.to_json()?,
            sf: self.sf()?.render()?,
            dominant: jelonek.dominant,
            proper: self.proper()?,
            jelonek_ok: jelonek.ok,
            leading: self.leading()?.to_json(),
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MapReport {
    pub map: PolyMapJson,
    pub sing: Vec<String>,
    pub k0_closure: Vec<String>,
    pub k0_pieces: Vec<PieceJson>,
    pub sf: Vec<String>,
    pub dominant: bool,
    pub proper: bool,
    pub jelonek_ok: bool,
    pub leading: LeadingFormJson,
}

pub fn analyze(map: &PolyMap) -> Result<MapReport> {
    Analysis::new(map.clone())?.report()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_map;
    use crate::poly::rat;

    fn xy() -> PolyMap {
        parse_map("vars: x y\nmap:\nx\nx*y\n").unwrap()
    }

    #[test]
    fn xy_map_basics() {
        let f = xy();
        assert_eq!(singular_locus(&f).unwrap().render().unwrap(), vec!["x"]);
        assert!(is_dominant(&f).unwrap());
        let sf = asymptotic_set(&f).unwrap();
        assert_eq!(sf.render().unwrap(), vec!["y1"]);
        let sing = singular_locus(&f).unwrap();
        assert!(point_in_image(&f, &sing, &[rat(0), rat(0)]).unwrap());
        assert!(!point_in_image(&f, &sing, &[rat(0), rat(1)]).unwrap());
    }

    #[test]
    fn image_of_punctured_line() {
        // x -> (x, x) on x != 0: the diagonal minus the origin
        let f = parse_map("vars: x y\nmap:\nx\nx\n").unwrap();
        let r = f.source().clone();
        let piece = Piece::new(
            Ideal::new(&r, vec![Polynomial::var(&r, 1)]).unwrap(),
            Ideal::new(&r, vec![Polynomial::var(&r, 0)]).unwrap(),
        )
        .unwrap();
        let img = image_of_piece(&f, &piece).unwrap();
        assert!(img.contains_point(&[rat(2), rat(2)]).unwrap());
        assert!(!img.contains_point(&[rat(0), rat(0)]).unwrap());
        assert!(!img.contains_point(&[rat(1), rat(2)]).unwrap());
    }

    #[test]
    fn image_of_hyperbola_projection() {
        // (x, y) -> (x, x*y) restricted to x*y = 1 lands on {y2 = 1} minus y1 = 0
        let f = xy();
        let r = f.source().clone();
        let h = crate::parse::parse_polynomial("x*y - 1", &r).unwrap();
        let img = image_of_piece(&f, &Piece::closed(Ideal::principal(h))).unwrap();
        assert!(img.contains_point(&[rat(3), rat(1)]).unwrap());
        assert!(!img.contains_point(&[rat(0), rat(1)]).unwrap());
    }
}
