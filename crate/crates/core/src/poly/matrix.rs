use itertools::Itertools;

use super::{Polynomial, Rational, Ring};
use crate::error::{Error, Result};

/// Dense row-major matrix of polynomials over one context.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Arity {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(PolyMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let entries = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    Polynomial::one(ring)
                } else {
                    Polynomial::zero(ring)
                }
            })
            .collect();
        PolyMatrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        PolyMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// Evaluates every entry at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|p| p.evaluate(point)).collect())
            .collect()
    }

    /// Fraction-free (Bareiss) elimination; every division is exact.
    pub fn determinant(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let Some(ring) = self.entries.first().map(|p| p.ring().clone()) else {
            return Err(Error::NonSquare { rows: 0, cols: 0 });
        };
        let mut a: Vec<Vec<Polynomial>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut prev = Polynomial::one(&ring);
        let mut negate = false;
        for k in 0..n.saturating_sub(1) {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(Polynomial::zero(&ring)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.exact_div(&prev).ok_or_else(|| {
                        Error::Internal("inexact division in fraction-free elimination".into())
                    })?;
                }
                a[i][k] = Polynomial::zero(&ring);
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    /// All `k`x`k` minors, rows and columns in lexicographic combination order.
    pub fn minors(&self, k: usize) -> Result<Vec<Polynomial>> {
        if k == 0 || k > self.rows.min(self.cols) {
            return Err(Error::MinorSize {
                k,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut out = Vec::new();
        for rs in (0..self.rows).combinations(k) {
            for cs in (0..self.cols).combinations(k) {
                out.push(self.submatrix(&rs, &cs).determinant()?);
            }
        }
        Ok(out)
    }

    /// Largest `k` such that some `k`x`k` minor is a nonzero polynomial.
    pub fn generic_rank(&self) -> Result<usize> {
        let mut rank = 0;
        for k in 1..=self.rows.min(self.cols) {
            if self.minors(k)?.iter().any(|m| !m.is_zero()) {
                rank = k;
            } else {
                break;
            }
        }
        Ok(rank)
    }
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rational_rank(mut m: Vec<Vec<Rational>>) -> usize {
    use num_traits::Zero;
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &pivot;
                for cc in c..cols {
                    let v = &f * &m[rank][cc];
                    m[r][cc] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::poly::VariableContext;

    #[test]
    fn identity_and_non_square() {
        let r = VariableContext::grevlex(&["x"]).unwrap();
        assert_eq!(
            PolyMatrix::identity(&r, 3).determinant().unwrap(),
            Polynomial::one(&r)
        );
        let m = PolyMatrix::new(1, 2, vec![Polynomial::one(&r), Polynomial::one(&r)]).unwrap();
        assert!(matches!(m.determinant(), Err(Error::NonSquare { .. })));
        assert!(matches!(m.minors(2), Err(Error::MinorSize { .. })));
    }

    #[test]
    fn pivoting_on_zero_entry() {
        let r = VariableContext::grevlex(&["x", "y"]).unwrap();
        let p = |s: &str| parse_polynomial(s, &r).unwrap();
        let m = PolyMatrix::new(2, 2, vec![p("0"), p("x"), p("y"), p("1")]).unwrap();
        assert_eq!(m.determinant().unwrap(), p("-x*y"));
    }

    #[test]
    fn rational_rank_basic() {
        use crate::poly::rat;
        let m = vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
            vec![rat(0), rat(1), rat(1)],
        ];
        assert_eq!(rational_rank(m), 2);
    }
}
