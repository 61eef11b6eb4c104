//! Based spaces and tensor signatures.
//!
//! A basis tuple of `V₁⊗…⊗Vₙ` maps to the flat index with the leftmost
//! factor most significant.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Space {
    pub id: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl Space {
    pub fn new(id: impl Into<String>, dim: usize) -> Self {
        Space { id: id.into(), dim, labels: None }
    }

    pub fn labelled(id: impl Into<String>, labels: Vec<String>) -> Result<Self> {
        let s = Space { id: id.into(), dim: labels.len(), labels: Some(labels) };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Parse(format!("space `{}` has dimension 0", self.id)));
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.dim {
                return Err(Error::Parse(format!("space `{}`: {} labels for dim {}", self.id, labels.len(), self.dim)));
            }
            let mut seen = std::collections::HashSet::new();
            if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
                return Err(Error::Parse(format!("space `{}`: duplicate label `{dup}`", self.id)));
            }
        }
        Ok(())
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("{}[{}]", self.id, i),
        }
    }
}

/// Ordered tensor factors; one-dimensional factors are elided on construction.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Signature {
    factors: Vec<Arc<Space>>,
}

impl Signature {
    /// The base field: no factors, dimension one.
    pub fn ground() -> Self {
        Signature { factors: Vec::new() }
    }

    pub fn of(space: Space) -> Self {
        Signature::from_arcs(vec![Arc::new(space)])
    }

    pub fn from_arcs(factors: Vec<Arc<Space>>) -> Self {
        Signature { factors: factors.into_iter().filter(|s| s.dim != 1).collect() }
    }

    pub fn tensor(&self, other: &Signature) -> Signature {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Signature { factors }
    }

    pub fn tensor_all<'a>(sigs: impl IntoIterator<Item = &'a Signature>) -> Signature {
        sigs.into_iter().fold(Signature::ground(), |acc, s| acc.tensor(s))
    }

    pub fn factors(&self) -> &[Arc<Space>] {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|s| s.dim).product()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|s| s.dim).collect()
    }

    pub fn tuple(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (slot, s) in out.iter_mut().zip(&self.factors).rev() {
            *slot = index % s.dim;
            index /= s.dim;
        }
        out
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        tuple.iter().zip(&self.factors).fold(0, |acc, (&t, s)| acc * s.dim + t)
    }

    /// Human-readable name of a basis element, e.g. `z1⊗zb2`.
    pub fn describe(&self, index: usize) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.tuple(index)
            .iter()
            .zip(&self.factors)
            .map(|(&t, s)| s.label(t))
            .collect::<Vec<_>>()
            .join("⊗")
    }

    pub fn ids(&self) -> Vec<String> {
        self.factors.iter().map(|s| s.id.clone()).collect()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "k");
        }
        write!(f, "{}", self.ids().join("⊗"))
    }
}

/// Mixed-radix decoding against explicit factor dimensions.
pub fn decode(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
}

pub fn encode(tuple: &[usize], dims: &[usize]) -> usize {
    tuple.iter().zip(dims).fold(0, |acc, (&t, &d)| acc * d + t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leftmost_factor_is_most_significant() {
        let sig = Signature::of(Space::new("A", 2)).tensor(&Signature::of(Space::new("B", 3)));
        assert_eq!(sig.dim(), 6);
        assert_eq!(sig.tuple(4), vec![1, 1]);
        assert_eq!(sig.index(&[1, 2]), 5);
    }

    #[test]
    fn ground_factors_are_elided() {
        let sig = Signature::of(Space::new("k", 1)).tensor(&Signature::of(Space::new("B", 3)));
        assert_eq!(sig.factors().len(), 1);
        assert_eq!(Signature::ground().dim(), 1);
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(Space::labelled("A", vec!["x".into(), "x".into()]).is_err());
    }
}
