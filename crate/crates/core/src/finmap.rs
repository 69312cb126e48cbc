//! Maps between standard finite sets `{0, .., n-1}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A map of finite sets `{0..domain_size} -> {0..codomain_size}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawFinMap")]
pub struct FinMap {
    codomain_size: usize,
    values: Vec<usize>,
}

#[derive(Deserialize)]
struct RawFinMap {
    codomain_size: usize,
    values: Vec<usize>,
}

impl TryFrom<RawFinMap> for FinMap {
    type Error = Error;

    fn try_from(raw: RawFinMap) -> Result<Self> {
        FinMap::new(raw.values, raw.codomain_size, "finmap")
    }
}

impl FinMap {
    /// Checks every value against the codomain; `name` labels the map in errors.
    pub fn new(values: Vec<usize>, codomain_size: usize, name: &'static str) -> Result<Self> {
        if let Some(index) = values.iter().position(|&x| x >= codomain_size) {
            return Err(Error::IndexOutOfRange { map: name, index });
        }
        Ok(FinMap {
            codomain_size,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        FinMap {
            codomain_size: n,
            values: (0..n).collect(),
        }
    }

    pub fn empty(codomain_size: usize) -> Self {
        FinMap {
            codomain_size,
            values: Vec::new(),
        }
    }

    pub fn domain_size(&self) -> usize {
        self.values.len()
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain_size
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn get(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `other ∘ self`. Returns `None` when the codomain of `self` is not the domain of `other`.
    pub fn then(&self, other: &FinMap) -> Option<FinMap> {
        if self.codomain_size != other.domain_size() {
            return None;
        }
        Some(FinMap {
            codomain_size: other.codomain_size,
            values: self.values.iter().map(|&x| other.values[x]).collect(),
        })
    }

    /// Disjoint union `self ⊔ other`, with `other` shifted after `self` in both domain and codomain.
    pub fn sum(&self, other: &FinMap) -> FinMap {
        let shift = self.codomain_size;
        FinMap {
            codomain_size: self.codomain_size + other.codomain_size,
            values: self
                .values
                .iter()
                .copied()
                .chain(other.values.iter().map(|&x| x + shift))
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.codomain_size == self.values.len() && self.values.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn is_bijective(&self) -> bool {
        if self.codomain_size != self.values.len() {
            return false;
        }
        let mut seen = vec![false; self.codomain_size];
        for &x in &self.values {
            if std::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
        true
    }

    pub fn inverse(&self) -> Option<FinMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut values = vec![0; self.values.len()];
        for (i, &x) in self.values.iter().enumerate() {
            values[x] = i;
        }
        Some(FinMap {
            codomain_size: self.values.len(),
            values,
        })
    }

    /// Preimage of each codomain element, in increasing order.
    pub fn fibres(&self) -> Vec<Vec<usize>> {
        let mut fibres = vec![Vec::new(); self.codomain_size];
        for (i, &x) in self.values.iter().enumerate() {
            fibres[x].push(i);
        }
        fibres
    }
}
