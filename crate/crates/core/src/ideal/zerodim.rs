//! Linear algebra in `R/I` for zero-dimensional `I`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::groebner::GroebnerBasis;
use crate::error::Result;
use crate::poly::{Monomial, Polynomial, Rational};

/// Largest quotient dimension handled by the linear-algebra routines.
pub(crate) const CAP: usize = 400;

/// Monomials outside the leading-term ideal, when there are finitely many
/// and at most `cap` of them.
pub(crate) fn standard_monomials(b: &GroebnerBasis, cap: usize) -> Option<Vec<Monomial>> {
    let n = b.ring().arity();
    if b.is_unit() {
        return Some(Vec::new());
    }
    let lms: Vec<Vec<u32>> = b.leading_monomials().map(|m| m.exponents().to_vec()).collect();
    let mut bounds = vec![u32::MAX; n];
    for m in &lms {
        let support: Vec<usize> = (0..n).filter(|&i| m[i] > 0).collect();
        if let [i] = support[..] {
            bounds[i] = bounds[i].min(m[i]);
        }
    }
    if bounds.contains(&u32::MAX) {
        return None;
    }
    let total: u128 = bounds.iter().map(|&b| b as u128).product();
    if total > 1_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    loop {
        if !lms.iter().any(|m| m.iter().zip(&e).all(|(a, b)| a <= b)) {
            out.push(Monomial::from_exponents(&e));
            if out.len() > cap {
                return None;
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return Some(out);
            }
            e[i] += 1;
            if e[i] < bounds[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

/// `p^k mod I`.
pub(crate) fn power_mod(b: &GroebnerBasis, p: &Polynomial, k: usize) -> Result<Polynomial> {
    let mut base = b.normal_form(p)?;
    let mut acc = Polynomial::one(b.ring());
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            acc = b.normal_form(&(&acc * &base))?;
        }
        e >>= 1;
        if e > 0 {
            base = b.normal_form(&(&base * &base))?;
        }
    }
    Ok(acc)
}

/// Polynomials spanning `{g : f·g ∈ I for every f in fs}` modulo `I`, as
/// combinations of the standard monomials `std`.
pub(crate) fn annihilator(
    b: &GroebnerBasis,
    std: &[Monomial],
    fs: &[Polynomial],
) -> Result<Vec<Polynomial>> {
    let ring = b.ring();
    let index: HashMap<&Monomial, usize> = std.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = std.len();
    // Block k, column j holds the coordinates of fs[k]·std[j] mod I.
    let mut rows = vec![vec![Rational::zero(); n]; n * fs.len()];
    for (k, f) in fs.iter().enumerate() {
        let f = b.normal_form(f)?;
        for (j, m) in std.iter().enumerate() {
            let prod = b.normal_form(&f.mul_term(&Rational::one(), m))?;
            for (tm, c) in prod.terms() {
                let i = *index.get(tm).expect("normal form is spanned by standard monomials");
                rows[k * n + i][j] = c.clone();
            }
        }
    }
    Ok(kernel(rows, n)
        .into_iter()
        .map(|v| {
            let terms = std
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.clone(), c))
                .collect();
            Polynomial::from_terms(ring, terms)
        })
        .collect())
}

/// Monic minimal polynomial of `p` over `R/I`, in the variable of `p` when
/// `p` is a variable.
pub(crate) fn minimal_polynomial(
    b: &GroebnerBasis,
    std: &[Monomial],
    p: &Polynomial,
) -> Result<Polynomial> {
    let ring = b.ring();
    let index: HashMap<&Monomial, usize> = std.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = std.len();
    let mut rows = vec![vec![Rational::zero(); n + 1]; n];
    let mut pw = b.normal_form(&Polynomial::one(ring))?;
    for j in 0..=n {
        for (tm, c) in pw.terms() {
            let i = *index.get(tm).expect("normal form is spanned by standard monomials");
            rows[i][j] = c.clone();
        }
        if j < n {
            pw = b.normal_form(&(&pw * p))?;
        }
    }
    let v = kernel(rows, n + 1)
        .into_iter()
        .next()
        .expect("n + 1 vectors in an n-dimensional space are dependent");
    let mut out = Polynomial::zero(ring);
    let mut pk = Polynomial::one(ring);
    for c in v.iter() {
        if !c.is_zero() {
            out = &out + &pk.scale(c);
        }
        pk = &pk * p;
    }
    Ok(out.monic())
}

/// Coordinates of `p mod I` against `std`, written into `out[offset..]`.
fn coordinates(
    b: &GroebnerBasis,
    index: &HashMap<&Monomial, usize>,
    p: &Polynomial,
    out: &mut [Rational],
    offset: usize,
) -> Result<()> {
    for (tm, c) in b.normal_form(p)?.terms() {
        let i = *index.get(tm).expect("normal form is spanned by standard monomials");
        out[offset + i] = c.clone();
    }
    Ok(())
}

/// Reduced basis of `I ∩ J` for finite `V(I)`, `V(J)`: monomials are taken
/// in increasing order and mapped into `R/I × R/J`; each one dependent on
/// the standard monomials found so far yields a basis element.
pub(crate) fn intersect(
    bi: &GroebnerBasis,
    si: &[Monomial],
    bj: &GroebnerBasis,
    sj: &[Monomial],
) -> Result<Vec<Polynomial>> {
    let ring = bi.ring();
    let order = ring.order().clone();
    let n = ring.arity();
    let ii: HashMap<&Monomial, usize> = si.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let ij: HashMap<&Monomial, usize> = sj.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let width = si.len() + sj.len();
    // Echelon rows: (pivot column, vector, combination over `standard`).
    let mut rows: Vec<(usize, Vec<Rational>, Vec<Rational>)> = Vec::new();
    let mut standard: Vec<Monomial> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    let mut out = Vec::new();
    let mut queue: Vec<Monomial> = vec![Monomial::from_exponents(&vec![0; n])];
    while !queue.is_empty() {
        let k = (0..queue.len())
            .min_by(|&a, &b| order.compare(queue[a].exponents(), queue[b].exponents()))
            .expect("nonempty");
        let m = queue.swap_remove(k);
        if leads.iter().any(|l| l.divides(&m)) || standard.contains(&m) {
            continue;
        }
        let mp = Polynomial::monomial(ring, m.clone(), Rational::one());
        let mut v = vec![Rational::zero(); width];
        coordinates(bi, &ii, &mp, &mut v, 0)?;
        coordinates(bj, &ij, &mp, &mut v, si.len())?;
        let mut combo = vec![Rational::zero(); standard.len() + 1];
        combo[standard.len()] = Rational::one();
        for (piv, rv, rc) in &rows {
            if v[*piv].is_zero() {
                continue;
            }
            let f = v[*piv].clone();
            for (x, y) in v.iter_mut().zip(rv) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (x, y) in combo.iter_mut().zip(rc) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => {
                let mut terms = Vec::new();
                let mut all = standard.clone();
                all.push(m.clone());
                for (mon, c) in all.into_iter().zip(combo) {
                    if !c.is_zero() {
                        terms.push((mon, c));
                    }
                }
                out.push(Polynomial::from_terms(ring, terms).monic());
                leads.push(m);
            }
            Some(piv) => {
                let inv = v[piv].recip();
                for x in v.iter_mut() {
                    *x = &*x * &inv;
                }
                for x in combo.iter_mut() {
                    *x = &*x * &inv;
                }
                // Keep earlier rows reduced against the new pivot.
                for (_, rv, rc) in rows.iter_mut() {
                    if rv[piv].is_zero() {
                        continue;
                    }
                    let f = rv[piv].clone();
                    for (x, y) in rv.iter_mut().zip(&v) {
                        if !y.is_zero() {
                            *x -= &f * y;
                        }
                    }
                    rc.resize(combo.len(), Rational::zero());
                    for (x, y) in rc.iter_mut().zip(&combo) {
                        if !y.is_zero() {
                            *x -= &f * y;
                        }
                    }
                }
                rows.push((piv, v, combo));
                for (_, _, rc) in rows.iter_mut() {
                    rc.resize(standard.len() + 1, Rational::zero());
                }
                standard.push(m.clone());
                for i in 0..n {
                    let mut e = m.exponents().to_vec();
                    e[i] += 1;
                    queue.push(Monomial::from_exponents(&e));
                }
            }
        }
        for (_, _, rc) in rows.iter_mut() {
            rc.resize(standard.len() + 1, Rational::zero());
        }
    }
    Ok(out)
}

/// Basis of the right kernel of a matrix with `cols` columns.
fn kernel(mut a: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let k = a[i][c].clone();
                for j in 0..cols {
                    let d = &k * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[row][free].clone();
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = kernel(vec![vec![q(1), q(2)], vec![q(2), q(4)]], 2);
        assert_eq!(k, vec![vec![q(-2), q(1)]]);
    }
}
