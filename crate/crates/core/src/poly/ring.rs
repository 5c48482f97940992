//! Variable contexts and monomial orders.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

/// A monomial order on exponent vectors.
///
/// Variables are ranked by their position in the context: the first
/// variable is the largest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Compares the first `split` exponents with `head`, breaking ties on the
    /// remaining exponents with `tail`. Eliminates the head block.
    Block {
        split: usize,
        head: Box<MonomialOrder>,
        tail: Box<MonomialOrder>,
    },
}

impl MonomialOrder {
    /// Block order eliminating the first `split` variables, grevlex in each block.
    pub fn elimination(split: usize) -> Self {
        MonomialOrder::Block {
            split,
            head: Box::new(MonomialOrder::GrevLex),
            tail: Box::new(MonomialOrder::GrevLex),
        }
    }

    pub fn compare(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
            MonomialOrder::Block { split, head, tail } => head
                .compare(&a[..*split], &b[..*split])
                .then_with(|| tail.compare(&a[*split..], &b[*split..])),
        }
    }

    fn validate(&self, arity: usize) -> Result<()> {
        if let MonomialOrder::Block { split, head, tail } = self {
            if *split == 0 || *split >= arity {
                return Err(Error::InvalidContext(format!(
                    "block split {split} must lie strictly between 0 and the arity {arity}"
                )));
            }
            if let MonomialOrder::Block { .. } = **head {
                head.validate(*split)?;
            }
            if let MonomialOrder::Block { .. } = **tail {
                tail.validate(arity - split)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::GrevLex => write!(f, "grevlex"),
            MonomialOrder::Block { split, head, tail } => {
                write!(f, "block({split}, {head}, {tail})")
            }
        }
    }
}

/// Ordered, distinct variable names together with the active monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableContext {
    names: Vec<String>,
    order: MonomialOrder,
}

/// Shared handle to a variable context; every polynomial carries one.
pub type Ring = Arc<VariableContext>;

impl VariableContext {
    pub fn new<S: AsRef<str>>(names: &[S], order: MonomialOrder) -> Result<Ring> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::InvalidContext("empty variable name".into()));
            }
            if names[..i].contains(n) {
                return Err(Error::VariableExists(n.clone()));
            }
        }
        order.validate(names.len())?;
        Ok(Arc::new(VariableContext { names, order }))
    }

    pub fn grevlex<S: AsRef<str>>(names: &[S]) -> Result<Ring> {
        Self::new(names, MonomialOrder::GrevLex)
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Ring> {
        Self::new(&self.names, order)
    }

    /// A name derived from `base` that does not clash with any variable here.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.index_of(base).is_none() {
            return base.to_string();
        }
        (1..)
            .map(|k| format!("{base}_{k}"))
            .find(|n| self.index_of(n).is_none())
            .expect("unbounded search")
    }
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        let o = MonomialOrder::GrevLex;
        // x1^2 > x2*x3 in grevlex
        assert_eq!(o.compare(&[2, 0, 0], &[0, 1, 1]), Ordering::Greater);
        // x1*x3 < x2^2
        assert_eq!(o.compare(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(o.compare(&[0, 0, 3], &[1, 0, 0]), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_head() {
        let o = MonomialOrder::elimination(1);
        assert_eq!(o.compare(&[1, 0, 0], &[0, 5, 5]), Ordering::Greater);
        assert_eq!(o.compare(&[1, 1, 0], &[1, 0, 1]), Ordering::Greater);
    }

    #[test]
    fn context_validation() {
        assert!(VariableContext::grevlex(&["x", "x"]).is_err());
        assert!(VariableContext::grevlex(&["x", ""]).is_err());
        assert!(VariableContext::new(&["x", "y"], MonomialOrder::elimination(2)).is_err());
        let r = VariableContext::grevlex(&["t", "x"]).unwrap();
        assert_eq!(r.fresh_name("t"), "t_1");
        assert_eq!(r.fresh_name("w"), "w");
    }
}
