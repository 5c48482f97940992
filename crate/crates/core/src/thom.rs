//! Thom's rank partition of the critical values, a stratification of
//! K₀(F) ∪ S_F and checks of its structural properties.

use serde::Serialize;

use crate::cset::{irredundant, singular_locus, split_components, CSet, Piece, PieceJson, PurityReport};
use crate::error::{Error, Result};
use crate::ideal::{Containment, Ideal};
use crate::mapanalysis::{image_closure, image_of_piece, Analysis};
use crate::poly::PolyMap;

/// Locus inside Sing F where the Jacobian has rank `rank`.
#[derive(Debug, Clone)]
pub struct RankPiece {
    pub rank: usize,
    pub piece: Piece,
}

/// A smooth locally closed piece with labels `(i, j)`. `rank` is the
/// Jacobian rank on the piece.
#[derive(Debug, Clone)]
pub struct SmoothPiece {
    pub i: usize,
    pub j: usize,
    pub rank: usize,
    pub piece: Piece,
    pub dim: i64,
    overlap: bool,
}

impl SmoothPiece {
    fn new(i: usize, rank: usize, piece: Piece, overlap: bool) -> Result<Self> {
        let piece = piece.normalize()?;
        let dim = piece.dimension()?;
        Ok(SmoothPiece {
            i,
            j: 0,
            rank,
            piece,
            dim,
            overlap,
        })
    }

    pub fn label(&self) -> String {
        format!("V^{}_{}", self.i, self.j)
    }
}

/// Image of a smooth piece: `image_closure` has dimension `k`, the
/// restricted rank; `image` is the exact image.
#[derive(Debug, Clone)]
pub struct ImageStratum {
    pub i: usize,
    pub k: usize,
    pub j: usize,
    pub image_closure: Ideal,
    pub image: CSet,
    pub source: SmoothPiece,
}

impl ImageStratum {
    pub fn label(&self) -> String {
        format!("W^{},{}_{}", self.i, self.k, self.j)
    }

    pub fn to_json(&self) -> Result<ImageStratumJson> {
        Ok(ImageStratumJson {
            label: self.label(),
            source_label: self.source.label(),
            rank: self.source.rank,
            restricted_rank: self.k,
            source: self.source.piece.to_json()?,
            image_closure: self.image_closure.render()?,
            image: self.image.to_json()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageStratumJson {
    pub label: String,
    pub source_label: String,
    pub rank: usize,
    pub restricted_rank: usize,
    pub source: PieceJson,
    pub image_closure: Vec<String>,
    pub image: Vec<PieceJson>,
}

fn minors_ideal(map: &PolyMap, k: usize) -> Result<Ideal> {
    let ring = map.source();
    if k == 0 {
        return Ok(Ideal::unit(ring));
    }
    Ideal::new(ring, map.jacobian().minors(k)?)
}

/// `V^i = V(minors_{i+1}) \ V(minors_i)` for `i < n`, empty ones dropped.
pub fn rank_subdivision(map: &PolyMap) -> Result<Vec<RankPiece>> {
    map.require_square()?;
    let n = map.arity();
    let mut out = Vec::new();
    for i in 0..n {
        let piece = Piece::new(minors_ideal(map, i + 1)?, minors_ideal(map, i)?)?.normalize()?;
        if !piece.is_empty()? {
            out.push(RankPiece { rank: i, piece });
        }
    }
    Ok(out)
}

/// Splits a piece into smooth pieces by iterated singular loci
/// (Jacobian criterion). Labels are `(rank, 0)`.
pub fn smooth_subdivision(rp: &RankPiece) -> Result<Vec<SmoothPiece>> {
    let piece = rp.piece.normalize()?;
    let n = piece.ring().arity();
    let except = piece.except_ideal().clone();
    let mut out = Vec::new();
    for comp in split_components(piece.closure_ideal())? {
        smooth_rec(&comp, &except, rp.rank, 0, n, &mut out)?;
    }
    Ok(out)
}

fn smooth_rec(
    closure: &Ideal,
    except: &Ideal,
    rank: usize,
    depth: usize,
    limit: usize,
    out: &mut Vec<SmoothPiece>,
) -> Result<()> {
    let piece = Piece::new(closure.clone(), except.clone())?.normalize()?;
    if piece.is_empty()? {
        return Ok(());
    }
    if depth > limit {
        return Err(Error::Internal(format!(
            "smooth subdivision exceeded depth {limit} at {:?}",
            piece.closure_ideal()
        )));
    }
    let i = piece.closure_ideal();
    let sing = singular_locus(i)?;
    let smooth = Piece::new(i.clone(), piece.except_ideal().product(&sing)?)?.normalize()?;
    if !smooth.is_empty()? {
        out.push(SmoothPiece::new(rank, rank, smooth, false)?);
    }
    let rest = piece.restrict(&sing)?;
    if rest.is_empty()? {
        return Ok(());
    }
    for comp in split_components(&sing)? {
        smooth_rec(&comp, piece.except_ideal(), rank, depth + 1, limit, out)?;
    }
    Ok(())
}

type Key = (i64, bool, Vec<String>, Vec<String>);

fn key(p: &SmoothPiece) -> Result<Key> {
    let (d, c, e) = p.piece.sort_key()?;
    Ok((d, p.overlap, c, e))
}

fn sort_pieces(v: &mut [SmoothPiece]) -> Result<()> {
    let mut keyed = Vec::with_capacity(v.len());
    for p in v.iter() {
        let (d, _, c, e) = key(p)?;
        keyed.push((d, c, e));
    }
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| keyed[a].cmp(&keyed[b]));
    let sorted: Vec<SmoothPiece> = idx.iter().map(|&k| v[k].clone()).collect();
    v.clone_from_slice(&sorted);
    Ok(())
}

fn derive(parent: &SmoothPiece, piece: Piece) -> Result<Option<SmoothPiece>> {
    let piece = piece.normalize()?;
    if piece.is_empty()? {
        return Ok(None);
    }
    let mut sp = SmoothPiece::new(parent.i, parent.rank, piece, parent.overlap)?;
    sp.i = sp.i.min(sp.dim.max(0) as usize);
    Ok(Some(sp))
}

/// Pairwise-disjoint pieces with the same union. Pieces are processed by
/// decreasing dimension, ties by generator strings. When a piece meets an
/// accepted one, both lose the closure of the overlap and the overlap is
/// kept as a piece of its own. Labels `j` are assigned per `i` afterwards.
pub fn refine_partition(pieces: Vec<SmoothPiece>) -> Result<Vec<SmoothPiece>> {
    let mut work = Vec::new();
    for p in pieces {
        if let Some(sp) = derive(&p, p.piece.clone())? {
            work.push(sp);
        }
    }
    let mut done: Vec<SmoothPiece> = Vec::new();
    let mut guard = 0usize;
    loop {
        sort_pieces(&mut work)?;
        if work.is_empty() {
            break;
        }
        guard += 1;
        if guard > 10_000 {
            return Err(Error::Internal("partition refinement did not settle".into()));
        }
        let p = work.remove(0);
        let mut hit = None;
        for (k, r) in done.iter().enumerate() {
            if p.piece.meets(&r.piece)? {
                hit = Some(k);
                break;
            }
        }
        let Some(k) = hit else {
            done.push(p);
            continue;
        };
        let r = done.remove(k);
        let o = p.piece.intersect(&r.piece)?;
        let z = o.closure_ideal().clone();
        let mut overlap = SmoothPiece::new(p.i.min(r.i), p.rank.min(r.rank), o.clone(), true)?;
        overlap.i = overlap.i.min(overlap.dim.max(0) as usize);
        let r_out = Piece::new(
            r.piece.closure_ideal().clone(),
            r.piece.except_ideal().product(&z)?,
        )?;
        let p_out = Piece::new(
            p.piece.closure_ideal().clone(),
            p.piece.except_ideal().product(&z)?,
        )?;
        if let Some(x) = derive(&r, r_out)? {
            done.push(x);
        }
        for q in r.piece.restrict(&z)?.minus(&p.piece)?.pieces() {
            if let Some(x) = derive(&r, q.clone())? {
                done.push(x);
            }
        }
        if !o.is_empty()? {
            done.push(overlap);
        }
        if let Some(x) = derive(&p, p_out)? {
            work.push(x);
        }
        for q in p.piece.restrict(&z)?.minus(&r.piece)?.pieces() {
            if let Some(x) = derive(&p, q.clone())? {
                work.push(x);
            }
        }
    }
    assign_labels(&mut done)?;
    Ok(done)
}

fn assign_labels(pieces: &mut Vec<SmoothPiece>) -> Result<()> {
    let mut keyed = Vec::with_capacity(pieces.len());
    for p in pieces.iter() {
        keyed.push((std::cmp::Reverse(p.i), key(p)?));
    }
    let mut idx: Vec<usize> = (0..pieces.len()).collect();
    idx.sort_by(|&a, &b| keyed[a].cmp(&keyed[b]));
    let mut sorted: Vec<SmoothPiece> = idx.iter().map(|&k| pieces[k].clone()).collect();
    let mut last = usize::MAX;
    let mut j = 0;
    for p in sorted.iter_mut() {
        if p.i != last {
            last = p.i;
            j = 0;
        }
        j += 1;
        p.j = j;
    }
    *pieces = sorted;
    Ok(())
}

/// Dimension of the closure of `F(piece)`.
pub fn restricted_rank(sp: &SmoothPiece, map: &PolyMap) -> Result<usize> {
    let d = image_closure(map, sp.piece.closure_ideal())?.dimension()?;
    if d < 0 {
        return Err(Error::Internal("image of a non-empty piece is empty".into()));
    }
    Ok(d as usize)
}

/// Steps 1-3: rank loci, smooth subdivision, disjoint refinement.
pub fn smooth_partition(map: &PolyMap) -> Result<Vec<SmoothPiece>> {
    let mut pieces = Vec::new();
    for rp in rank_subdivision(map)? {
        pieces.extend(smooth_subdivision(&rp)?);
    }
    refine_partition(pieces)
}

pub fn thom_partition(map: &PolyMap) -> Result<Vec<ImageStratum>> {
    let an = Analysis::new(map.clone())?;
    Ok(an.thom_partition()?.to_vec())
}

pub(crate) fn thom_partition_of(an: &Analysis) -> Result<Vec<ImageStratum>> {
    let map = an.map();
    let mut out = Vec::new();
    for sp in smooth_partition(map)? {
        let image_closure = image_closure(map, sp.piece.closure_ideal())?;
        let k = image_closure.dimension()?.max(0) as usize;
        let image = image_of_piece(map, &sp.piece)?;
        out.push(ImageStratum {
            i: sp.i,
            k,
            j: sp.j,
            image_closure,
            image,
            source: sp,
        });
    }
    Ok(out)
}

pub fn sf_stratification(map: &PolyMap) -> Result<Vec<SmoothPiece>> {
    let an = Analysis::new(map.clone())?;
    Ok(an.sf_strata()?.to_vec())
}

/// Smooth partition of S_F by iterated singular loci, refined to disjoint
/// pieces; labels `(dim, j)`.
pub(crate) fn sf_stratification_of(an: &Analysis) -> Result<Vec<SmoothPiece>> {
    let sf = an.sf()?;
    if sf.is_unit()? {
        return Ok(Vec::new());
    }
    let n = an.ambient_dim();
    let mut pieces = Vec::new();
    for comp in split_components(sf)? {
        let d = comp.dimension()?.max(0) as usize;
        let mut raw = Vec::new();
        smooth_rec(&comp, &Ideal::unit(an.target()), d, 0, n, &mut raw)?;
        for mut p in raw {
            p.i = p.dim.max(0) as usize;
            p.rank = p.i;
            pieces.push(p);
        }
    }
    refine_partition(pieces)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Thom,
    Sf,
    Intersection,
}

#[derive(Debug, Clone)]
pub struct Stratum {
    pub id: usize,
    pub piece: Piece,
    pub dim: i64,
    pub origin: Origin,
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumJson {
    pub id: usize,
    pub dim: i64,
    pub closure: Vec<String>,
    pub except: Vec<String>,
    pub origin: Origin,
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrontierReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairVerdict {
    Transverse,
    Disjoint,
    Containment,
    NotTransverse,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub thom: String,
    pub sf: String,
    pub thom_dim: i64,
    pub sf_dim: i64,
    pub intersection_dim: i64,
    pub bound: i64,
    pub verdict: PairVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransversalityReport {
    pub ok: bool,
    pub pairs: Vec<PairReport>,
}

#[derive(Debug, Clone)]
pub struct Stratification {
    pub ambient_dim: usize,
    pub strata: Vec<Stratum>,
    /// Closed sets `X_d` for `d` from the top dimension down to 0.
    pub filtration: Vec<Ideal>,
    /// `(lower, upper)` when the lower stratum lies in the closure of the
    /// upper one.
    pub incidence: Vec<(usize, usize)>,
    pub frontier: FrontierReport,
    pub transversality: TransversalityReport,
}

impl Stratification {
    pub fn count_by_dim(&self, d: i64) -> usize {
        self.strata.iter().filter(|s| s.dim == d).count()
    }

    pub fn as_cset(&self) -> CSet {
        let ring = self
            .filtration
            .first()
            .map(|i| i.ring().clone())
            .or_else(|| self.strata.first().map(|s| s.piece.ring().clone()));
        match ring {
            Some(r) => CSet::from_pieces(&r, self.strata.iter().map(|s| s.piece.clone()).collect()),
            None => panic!("stratification without a ring"),
        }
    }
}

fn render_key(i: &Ideal) -> Result<Vec<String>> {
    let mut r = i.render()?;
    r.sort();
    Ok(r)
}

fn dedupe(ideals: Vec<Ideal>) -> Result<Vec<Ideal>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for i in ideals {
        if i.is_unit()? {
            continue;
        }
        if seen.insert(render_key(&i)?) {
            out.push(i);
        }
    }
    Ok(out)
}

fn intersect_all(ring: &crate::poly::Ring, ideals: &[Ideal]) -> Result<Ideal> {
    let mut acc = Ideal::unit(ring);
    for i in ideals {
        acc = acc.intersect(i)?;
    }
    Ok(acc)
}

pub fn stratify_union(map: &PolyMap) -> Result<Stratification> {
    let an = Analysis::new(map.clone())?;
    stratify(&an)
}

/// Top-down construction. At each dimension `d` the `d`-dimensional closed
/// components are cut by their singular loci, by the other components and
/// by every constraint (closures and boundaries of Thom images and S_F
/// strata, and closures of strata already emitted) that does not contain
/// them. What is cut away is passed down.
pub fn stratify(an: &Analysis) -> Result<Stratification> {
    let target = an.target().clone();
    let n = an.ambient_dim();
    let thom = an.thom_partition()?;
    let sf = an.sf()?;
    let sf_strata = an.sf_strata()?;

    let mut pending: Vec<Ideal> = Vec::new();
    let mut constraints: Vec<Ideal> = Vec::new();
    for w in thom {
        pending.push(w.image_closure.clone());
        for p in w.image.normalize()?.pieces() {
            constraints.push(p.closure_ideal().clone());
            constraints.push(p.closure_ideal().sum(p.except_ideal())?);
        }
    }
    if !sf.is_unit()? {
        pending.push(sf.clone());
    }
    for s in sf_strata {
        constraints.push(s.piece.closure_ideal().clone());
        constraints.push(s.piece.closure_ideal().sum(s.piece.except_ideal())?);
    }
    let mut constraints = dedupe(constraints)?;

    let mut raw: Vec<(Piece, i64)> = Vec::new();
    for d in (0..=n as i64).rev() {
        let mut comps = Vec::new();
        for p in dedupe(pending)? {
            comps.extend(split_components(&p)?);
        }
        let mut comps = irredundant(comps)?;
        settle_level(&mut comps, &constraints, d)?;
        let mut next = Vec::new();
        let mut dims = Vec::with_capacity(comps.len());
        for c in &comps {
            dims.push(c.dimension()?);
        }
        for (a, comp) in comps.iter().enumerate() {
            if dims[a] > d {
                return Err(Error::Internal("component above the current level".into()));
            }
            if dims[a] < d {
                next.push(comp.clone());
                continue;
            }
            let mut bad = vec![singular_locus(comp)?];
            for (b, other) in comps.iter().enumerate() {
                if a != b {
                    bad.push(comp.sum(other)?);
                }
            }
            for c in &constraints {
                if !comp.contains_ideal(c, Containment::UpToRadical)? {
                    bad.push(comp.sum(c)?);
                }
            }
            let bad = dedupe(bad)?;
            for b in &bad {
                if b.dimension()? >= d {
                    return Err(Error::Internal(format!(
                        "cut locus of {:?} is not lower-dimensional",
                        comp
                    )));
                }
            }
            let except = intersect_all(&target, &bad)?;
            let piece = Piece::new(comp.clone(), except)?.normalize()?;
            if !piece.is_empty()? {
                raw.push((piece, d));
            }
            next.extend(bad);
            constraints.push(comp.clone());
        }
        constraints = dedupe(constraints)?;
        pending = next;
    }

    let k0_closure = an.k0_closure()?;
    let mut keyed = Vec::new();
    for (p, d) in raw {
        let k = p.sort_key()?;
        keyed.push((k, p, d));
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let mut strata = Vec::new();
    for (id, (_, piece, dim)) in keyed.into_iter().enumerate() {
        let in_sf = !sf.is_unit()? && piece.lies_in(sf)?;
        let in_k0 = !k0_closure.is_unit()? && piece.lies_in(k0_closure)?;
        let origin = match (in_k0, in_sf) {
            (true, true) => Origin::Intersection,
            (false, true) => Origin::Sf,
            _ => Origin::Thom,
        };
        let mut labels = Vec::new();
        for w in thom {
            let single = CSet::from_pieces(&target, vec![piece.clone()]);
            if single.is_subset_of(&w.image)? {
                labels.push(w.label());
            }
        }
        let mut in_sf_stratum = false;
        for s in sf_strata {
            if piece.is_subset_of(&s.piece)? {
                labels.push(format!("S^{}_{}", s.i, s.j));
                in_sf_stratum = true;
            }
        }
        if in_sf_stratum {
            labels.push("facons-substitute".to_string());
        }
        strata.push(Stratum {
            id,
            piece,
            dim,
            origin,
            labels,
        });
    }

    let top = strata.iter().map(|s| s.dim).max().unwrap_or(-1);
    let mut filtration = Vec::new();
    for d in (0..=top).rev() {
        let closures: Vec<Ideal> = strata
            .iter()
            .filter(|s| s.dim <= d)
            .map(|s| s.piece.closure_ideal().clone())
            .collect();
        filtration.push(intersect_all(&target, &closures)?);
    }
    let mut incidence = Vec::new();
    for lo in &strata {
        for up in &strata {
            if lo.dim < up.dim && lo.piece.lies_in(up.piece.closure_ideal())? {
                incidence.push((lo.id, up.id));
            }
        }
    }
    let pieces: Vec<Piece> = strata.iter().map(|s| s.piece.clone()).collect();
    let frontier = frontier_check(&pieces)?;
    let transversality = transversality_of(an)?;
    Ok(Stratification {
        ambient_dim: n,
        strata,
        filtration,
        incidence,
        frontier,
        transversality,
    })
}

/// Splits components until no two top-dimensional components share a
/// top-dimensional part and no constraint cuts a top component in a
/// top-dimensional set.
fn settle_level(comps: &mut Vec<Ideal>, constraints: &[Ideal], d: i64) -> Result<()> {
    for _ in 0..64 {
        let mut changed = None;
        'search: for a in 0..comps.len() {
            if comps[a].dimension()? != d {
                continue;
            }
            for b in 0..comps.len() {
                if a == b || comps[b].dimension()? != d {
                    continue;
                }
                if comps[a].sum(&comps[b])?.dimension()? == d {
                    let rest = comps[b].saturate_ideal(&comps[a])?;
                    changed = Some((b, vec![rest]));
                    break 'search;
                }
            }
            for c in constraints {
                if comps[a].contains_ideal(c, Containment::UpToRadical)? {
                    continue;
                }
                let cut = comps[a].sum(c)?;
                if cut.dimension()? == d {
                    let rest = comps[a].saturate_ideal(c)?;
                    changed = Some((a, vec![rest, cut]));
                    break 'search;
                }
            }
        }
        match changed {
            None => return Ok(()),
            Some((idx, replacement)) => {
                comps.remove(idx);
                for r in replacement {
                    comps.extend(split_components(&r)?);
                }
                *comps = irredundant(std::mem::take(comps))?;
            }
        }
    }
    Err(Error::Internal("could not separate top-dimensional components".into()))
}

/// For every piece `S` with frontier `closure(S) \ S`: each other piece that
/// meets the frontier lies inside it, and the frontier is covered by the
/// pieces.
pub fn frontier_check(pieces: &[Piece]) -> Result<FrontierReport> {
    let mut violations = Vec::new();
    let pieces: Vec<Piece> = pieces.iter().map(|p| p.normalize()).collect::<Result<_>>()?;
    let Some(ring) = pieces.first().map(|p| p.ring().clone()) else {
        return Ok(FrontierReport {
            ok: true,
            violations,
        });
    };
    let all = CSet::from_pieces(&ring, pieces.clone());
    for (a, s) in pieces.iter().enumerate() {
        let frontier_ideal = s.closure_ideal().sum(s.except_ideal())?;
        if frontier_ideal.is_unit()? {
            continue;
        }
        for (b, t) in pieces.iter().enumerate() {
            if a == b {
                continue;
            }
            let meets = !t.restrict(&frontier_ideal)?.is_empty()?;
            if meets && !t.lies_in(&frontier_ideal)? {
                violations.push(format!(
                    "piece {b} meets the frontier of piece {a} without lying in it"
                ));
            }
        }
        let uncovered = CSet::closed(frontier_ideal).difference(&all)?;
        if !uncovered.is_empty()? {
            let parts: Vec<String> = uncovered
                .normalize()?
                .pieces()
                .iter()
                .map(|p| format!("{:?}", p.closure_ideal().render().unwrap_or_default()))
                .collect();
            violations.push(format!(
                "frontier of piece {a} is not a union of pieces; uncovered: {}",
                parts.join(", ")
            ));
        }
    }
    Ok(FrontierReport {
        ok: violations.is_empty(),
        violations,
    })
}

pub fn transversality_check(map: &PolyMap) -> Result<TransversalityReport> {
    transversality_of(&Analysis::new(map.clone())?)
}

pub fn transversality_of(an: &Analysis) -> Result<TransversalityReport> {
    let n = an.ambient_dim() as i64;
    let mut closures: Vec<(String, Ideal)> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for w in an.thom_partition()? {
        if seen.insert(render_key(&w.image_closure)?) {
            closures.push((w.label(), w.image_closure.clone()));
        }
    }
    let mut pairs = Vec::new();
    for (label, kbar) in &closures {
        let d1 = kbar.dimension()?;
        for s in an.sf_strata()? {
            let d2 = s.dim;
            let bound = d1 + d2 - n;
            let sclosure = s.piece.closure_ideal();
            let inter = s.piece.restrict(kbar)?;
            let idim = inter.dimension()?;
            let verdict = if kbar.contains_ideal(sclosure, Containment::UpToRadical)?
                || s.piece.lies_in(kbar)?
            {
                PairVerdict::Containment
            } else if idim < 0 {
                PairVerdict::Disjoint
            } else if idim <= bound {
                PairVerdict::Transverse
            } else {
                PairVerdict::NotTransverse
            };
            pairs.push(PairReport {
                thom: label.clone(),
                sf: format!("S^{}_{}", s.i, s.j),
                thom_dim: d1,
                sf_dim: d2,
                intersection_dim: idim,
                bound,
                verdict,
            });
        }
    }
    Ok(TransversalityReport {
        ok: pairs.iter().all(|p| p.verdict != PairVerdict::NotTransverse),
        pairs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosednessReport {
    pub ok: bool,
    /// closure(K₀) \ K₀ lies in S_F.
    pub boundary_in_sf: bool,
    /// K₀ ∪ S_F = closure(K₀) ∪ S_F.
    pub union_closed: bool,
    /// Pieces of closure(K₀) \ K₀.
    pub boundary: Vec<PieceJson>,
    pub witnesses: Vec<PieceJson>,
}

pub fn verify_closedness(map: &PolyMap) -> Result<ClosednessReport> {
    closedness_of(&Analysis::new(map.clone())?)
}

pub fn closedness_of(an: &Analysis) -> Result<ClosednessReport> {
    let target = an.target();
    let k0 = an.k0()?;
    let kbar = CSet::closed(an.k0_closure()?.clone());
    let sf = an.sf()?;
    let boundary = kbar.difference(k0)?.normalize()?;
    let mut witnesses = Vec::new();
    for p in boundary.pieces() {
        if sf.is_unit()? || !p.lies_in(sf)? {
            witnesses.push(p.to_json()?);
        }
    }
    let sf_set = if sf.is_unit()? {
        CSet::empty(target)
    } else {
        CSet::closed(sf.clone())
    };
    let left = k0.union(&sf_set)?;
    let right = kbar.union(&sf_set)?;
    let union_closed = right.is_subset_of(&left)? && left.is_subset_of(&right)?;
    let boundary_in_sf = witnesses.is_empty();
    Ok(ClosednessReport {
        ok: boundary_in_sf && union_closed,
        boundary_in_sf,
        union_closed,
        boundary: boundary.to_json()?,
        witnesses,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub dominant: bool,
    pub pure: bool,
    pub dimension: i64,
    pub dims: Vec<i64>,
    /// Purity of K₀(F) alone.
    pub k0_pure: bool,
    pub k0_dims: Vec<i64>,
    /// Dominant and not pure: a counterexample.
    pub counterexample: bool,
    pub note: String,
}

pub fn check_conjecture(map: &PolyMap) -> Result<ConjectureReport> {
    let an = Analysis::new(map.clone())?;
    let s = stratify(&an)?;
    conjecture_of(&an, &s)
}

pub fn conjecture_of(an: &Analysis, s: &Stratification) -> Result<ConjectureReport> {
    let dominant = an.dominant()?;
    let union = if s.strata.is_empty() {
        CSet::empty(an.target())
    } else {
        s.as_cset()
    };
    let PurityReport {
        dimension,
        pure,
        piece_dims,
        note,
        ..
    } = union.is_pure_dimensional()?;
    let k0 = an.k0()?.is_pure_dimensional()?;
    Ok(ConjectureReport {
        dominant,
        pure,
        dimension,
        dims: piece_dims,
        k0_pure: k0.pure,
        k0_dims: k0.piece_dims,
        counterexample: dominant && !pure,
        note,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureJson {
    pub dominant: bool,
    pub pure: bool,
    pub dims: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratificationJson {
    pub filtration: Vec<Vec<String>>,
    pub strata: Vec<StratumJson>,
    pub frontier_ok: bool,
    pub transversality: Vec<PairReport>,
    pub closedness_ok: bool,
    pub conjecture: ConjectureJson,
}

/// Stratification with the closedness and conjecture verdicts, in the
/// reporting schema.
pub fn stratification_json(an: &Analysis, s: &Stratification) -> Result<StratificationJson> {
    let mut strata = Vec::new();
    for st in &s.strata {
        let j = st.piece.to_json()?;
        strata.push(StratumJson {
            id: st.id,
            dim: st.dim,
            closure: j.closure,
            except: j.except,
            origin: st.origin,
            labels: st.labels.clone(),
        });
    }
    let filtration = s.filtration.iter().map(|i| i.render()).collect::<Result<_>>()?;
    let closed = closedness_of(an)?;
    let conj = conjecture_of(an, s)?;
    Ok(StratificationJson {
        filtration,
        strata,
        frontier_ok: s.frontier.ok,
        transversality: s.transversality.pairs.clone(),
        closedness_ok: closed.ok,
        conjecture: ConjectureJson {
            dominant: conj.dominant,
            pure: conj.pure,
            dims: conj.dims,
        },
    })
}

/// The pieces of K₀(F) alone, made disjoint, for checking that they do not
/// form a stratification with the frontier condition.
pub fn k0_pieces(an: &Analysis) -> Result<Vec<Piece>> {
    Ok(an.k0()?.refine()?.pieces().to_vec())
}
