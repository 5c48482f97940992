//! Dense univariate arithmetic over the rationals, used for squarefree parts
//! of basis elements that involve a single variable.

use num_traits::{One, Zero};

use super::{Monomial, Polynomial, Rational};

type Dense = Vec<Rational>;

fn trim(mut a: Dense) -> Dense {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn rem(mut a: Dense, b: &Dense) -> Dense {
    let lb = b.last().expect("nonzero divisor").clone();
    while a.len() >= b.len() {
        let q = a.last().unwrap().clone() / &lb;
        let shift = a.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            a[shift + i] -= &q * c;
        }
        a.pop();
        a = trim(a);
    }
    a
}

fn quo(mut a: Dense, b: &Dense) -> Dense {
    let lb = b.last().expect("nonzero divisor").clone();
    let mut q = vec![Rational::zero(); a.len().saturating_sub(b.len()) + 1];
    while a.len() >= b.len() && !a.is_empty() {
        let c = a.last().unwrap().clone() / &lb;
        let shift = a.len() - b.len();
        for (i, bc) in b.iter().enumerate() {
            a[shift + i] -= &c * bc;
        }
        q[shift] = c;
        a.pop();
        a = trim(a);
    }
    trim(q)
}

fn gcd(mut a: Dense, mut b: Dense) -> Dense {
    while !b.is_empty() {
        let r = rem(a, &b);
        a = b;
        b = r;
    }
    match a.last().cloned() {
        Some(l) => a.into_iter().map(|c| c / &l).collect(),
        None => a,
    }
}

fn derivative(a: &Dense) -> Dense {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer((k as i64).into()))
            .collect(),
    )
}

impl Polynomial {
    /// Squarefree part of a polynomial in at most one variable; `None` when
    /// more than one variable occurs.
    pub fn univariate_squarefree(&self) -> Option<Polynomial> {
        let support = self.support();
        let var = match support.as_slice() {
            [] => return Some(self.clone()),
            [v] => *v,
            _ => return None,
        };
        let deg = self.degree_in(var) as usize;
        let mut dense = vec![Rational::zero(); deg + 1];
        for (m, c) in self.terms() {
            dense[m.exponents()[var] as usize] = c.clone();
        }
        let g = gcd(dense.clone(), derivative(&dense));
        let sf = if g.len() <= 1 { dense } else { quo(dense, &g) };
        let n = self.ring().arity();
        let terms = sf
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let mut e = vec![0u32; n];
                e[var] = k as u32;
                (Monomial::from_exponents(&e), c)
            })
            .collect();
        let p = Polynomial::from_terms(self.ring(), terms);
        Some(if p.leading_coeff().is_some_and(|c| c.is_one()) { p } else { p.monic() })
    }
}

#[cfg(test)]
mod tests {
    use crate::parse::parse_polynomial;
    use crate::poly::VariableContext;

    #[test]
    fn squarefree_parts() {
        let r = VariableContext::grevlex(&["x", "y"]).unwrap();
        let p = |s: &str| parse_polynomial(s, &r).unwrap();
        assert_eq!(p("y^3").univariate_squarefree(), Some(p("y")));
        let sq = p("(x - 1)^2*(x + 2)").univariate_squarefree().unwrap();
        assert_eq!(sq, p("(x - 1)*(x + 2)"));
        assert_eq!(p("x*y").univariate_squarefree(), None);
        assert_eq!(p("x^2 - 2").univariate_squarefree(), Some(p("x^2 - 2")));
    }
}
