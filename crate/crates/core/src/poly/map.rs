use serde::Serialize;

use super::{PolyMatrix, Polynomial, Rational, Ring};
use crate::error::{Error, Result};

/// A polynomial map given by one polynomial per target coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMap {
    name: Option<String>,
    source: Ring,
    targets: Vec<String>,
    components: Vec<Polynomial>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PolyMapJson {
    pub name: Option<String>,
    pub vars: Vec<String>,
    pub targets: Vec<String>,
    pub components: Vec<String>,
}

impl PolyMap {
    pub fn new(source: Ring, targets: Vec<String>, components: Vec<Polynomial>) -> Result<Self> {
        if targets.len() != components.len() {
            return Err(Error::Arity {
                expected: targets.len(),
                got: components.len(),
            });
        }
        for (i, t) in targets.iter().enumerate() {
            if t.is_empty() || targets[..i].contains(t) {
                return Err(Error::InvalidContext(format!("bad target name `{t}`")));
            }
            if source.index_of(t).is_some() {
                return Err(Error::VariableExists(t.clone()));
            }
        }
        for c in &components {
            if !super::same_ring(c.ring(), &source) {
                return Err(Error::ContextMismatch);
            }
        }
        Ok(PolyMap {
            name: None,
            source,
            targets,
            components,
        })
    }

    /// Map with default target names `y1..yn` (or `a1..an` when those clash).
    pub fn with_default_targets(source: Ring, components: Vec<Polynomial>) -> Result<Self> {
        let targets = default_targets(&source, components.len());
        Self::new(source, targets, components)
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn targets(&self) -> &[String] {
        &self.targets
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn arity(&self) -> usize {
        self.source.arity()
    }

    pub fn is_square(&self) -> bool {
        self.components.len() == self.source.arity()
    }

    pub fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NonSquareMap {
                components: self.components.len(),
                vars: self.source.arity(),
            })
        }
    }

    /// Entry (i, j) is the partial derivative of component i in variable j.
    pub fn jacobian(&self) -> PolyMatrix {
        let n = self.source.arity();
        let entries = self
            .components
            .iter()
            .flat_map(|f| (0..n).map(move |j| f.derivative(j)))
            .collect();
        PolyMatrix::new(self.components.len(), n, entries).expect("shape by construction")
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.components.iter().map(|f| f.evaluate(point)).collect()
    }

    /// `self ∘ inner`: requires `inner` to land in this map's source space.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap> {
        if inner.components.len() != self.source.arity() {
            return Err(Error::Arity {
                expected: self.source.arity(),
                got: inner.components.len(),
            });
        }
        let components = self
            .components
            .iter()
            .map(|f| f.compose(&inner.components, &inner.source))
            .collect::<Result<_>>()?;
        PolyMap::new(inner.source.clone(), self.targets.clone(), components)
    }

    pub fn to_json(&self) -> PolyMapJson {
        PolyMapJson {
            name: self.name.clone(),
            vars: self.source.names().to_vec(),
            targets: self.targets.clone(),
            components: self.components.iter().map(|c| c.to_string()).collect(),
        }
    }
}

pub(crate) fn default_targets(source: &Ring, n: usize) -> Vec<String> {
    for prefix in ["y", "a", "b", "target"] {
        let names: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        if names.iter().all(|s| source.index_of(s).is_none()) {
            return names;
        }
    }
    (1..=n)
        .map(|i| source.fresh_name(&format!("target{i}")))
        .collect()
}
