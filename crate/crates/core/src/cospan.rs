//! Realization of gafs as cospans `B → W ← A` of finite 1-complexes, kept in homotopy
//! normal form: the components of `W`, the boundary points landing in each, and ranks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaf::Gaf;
use crate::monoidal::compose_h;
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NfComponent {
    pub a_legs: Vec<usize>,
    pub b_legs: Vec<usize>,
    pub rank: usize,
}

impl NfComponent {
    pub fn euler_char(&self) -> i64 {
        1 - self.rank as i64
    }
}

/// Components sorted by `(a_legs, b_legs, rank)`, each leg list sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CospanNF {
    pub components: Vec<NfComponent>,
}

impl CospanNF {
    /// Sorts legs and components into canonical order.
    pub fn new(mut components: Vec<NfComponent>) -> Self {
        for c in &mut components {
            c.a_legs.sort_unstable();
            c.b_legs.sort_unstable();
        }
        components.sort();
        CospanNF { components }
    }

    pub fn a_size(&self) -> usize {
        self.components.iter().map(|c| c.a_legs.len()).sum()
    }

    pub fn b_size(&self) -> usize {
        self.components.iter().map(|c| c.b_legs.len()).sum()
    }

    pub fn euler_char(&self) -> i64 {
        self.components.iter().map(NfComponent::euler_char).sum()
    }

    /// The normal form of `Id_n`: `n` contractible components, one leg on each side.
    pub fn identity(n: usize) -> Self {
        CospanNF::new(
            (0..n)
                .map(|i| NfComponent {
                    a_legs: vec![i],
                    b_legs: vec![i],
                    rank: 0,
                })
                .collect(),
        )
    }

    /// Component holding each boundary point on one side.
    fn owners(&self, side: impl Fn(&NfComponent) -> &Vec<usize>, n: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; n];
        for (k, c) in self.components.iter().enumerate() {
            for &x in side(c) {
                out[x] = k;
            }
        }
        out
    }
}

pub fn realize_nf(g: &Gaf) -> CospanNF {
    let inv = g.realization_invariants();
    let mut components: Vec<NfComponent> = inv
        .rank_per_component
        .iter()
        .map(|&rank| NfComponent {
            a_legs: Vec::new(),
            b_legs: Vec::new(),
            rank,
        })
        .collect();
    for x in 0..g.a_size() {
        components[inv.component_of.get(x)].a_legs.push(x);
    }
    for b in 0..g.b_size() {
        components[inv.component_of.get(g.rho().get(b))].b_legs.push(b);
    }
    CospanNF::new(components)
}

/// Pushout of `B'' → W' ← A'` and `A' → W ← A` along `A'`.
pub fn compose_nf(outer: &CospanNF, inner: &CospanNF) -> Result<CospanNF> {
    let shared = outer.b_size();
    if inner.a_size() != shared {
        return Err(Error::BoundaryMismatch {
            expected: shared,
            found: inner.a_size(),
        });
    }
    let n1 = outer.components.len();
    let n2 = inner.components.len();
    let from_outer = outer.owners(|c| &c.b_legs, shared);
    let from_inner = inner.owners(|c| &c.a_legs, shared);
    let mut uf = UnionFind::new(n1 + n2);
    for p in 0..shared {
        uf.union(from_outer[p], n1 + from_inner[p]);
    }
    let (labels, k) = uf.labels();
    let mut chi = vec![0i64; k];
    let mut merged: Vec<NfComponent> = vec![
        NfComponent {
            a_legs: Vec::new(),
            b_legs: Vec::new(),
            rank: 0,
        };
        k
    ];
    for (i, c) in outer.components.iter().enumerate() {
        chi[labels[i]] += c.euler_char();
        merged[labels[i]].a_legs.extend(&c.a_legs);
    }
    for (i, c) in inner.components.iter().enumerate() {
        chi[labels[n1 + i]] += c.euler_char();
        merged[labels[n1 + i]].b_legs.extend(&c.b_legs);
    }
    for p in 0..shared {
        chi[labels[from_outer[p]]] -= 1;
    }
    for (c, x) in merged.iter_mut().zip(chi) {
        c.rank = usize::try_from(1 - x).map_err(|_| Error::Internal("glued component has χ > 1".into()))?;
    }
    Ok(CospanNF::new(merged))
}

/// Disjoint union, left factor's boundary first.
pub fn tensor_nf(left: &CospanNF, right: &CospanNF) -> CospanNF {
    let (a, b) = (left.a_size(), left.b_size());
    let shifted = right.components.iter().map(|c| NfComponent {
        a_legs: c.a_legs.iter().map(|x| a + x).collect(),
        b_legs: c.b_legs.iter().map(|x| b + x).collect(),
        rank: c.rank,
    });
    CospanNF::new(left.components.iter().cloned().chain(shifted).collect())
}

/// `Re(G ∘ G') = Re(G) ∘ Re(G')` on normal forms.
pub fn verify_re_functorial(g: &Gaf, inner: &Gaf) -> Result<bool> {
    let lhs = realize_nf(&compose_h(g, inner)?);
    let rhs = compose_nf(&realize_nf(g), &realize_nf(inner))?;
    Ok(lhs == rhs)
}
