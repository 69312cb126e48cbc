//! Marked graphs attached to a finite set ("gafs").
//!
//! A gaf is the datum `(A, B, V, H, ρ, σ, υ)`: attaching vertices `A`, markings `B`,
//! inner vertices `V`, half-edges `H`, a marking map `ρ: B → A ⊔ V`, an attachment map
//! `σ: H → A ⊔ V` and a fixed-point free involution `υ` on `H`. Edges are the `υ`-orbits.
//!
//! Vertices are encoded in a single index range with `A` first: attaching vertex `i` is
//! `i`, inner vertex `j` is `a + j`. This encoding is used by every map into `A ⊔ V`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finmap::FinMap;
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawGaf", into = "RawGaf")]
pub struct Gaf {
    a: usize,
    b: usize,
    v: usize,
    rho: FinMap,
    sigma: FinMap,
    upsilon: FinMap,
}

/// The interchange shape of a gaf: `{"a","b","v","h","rho","sigma","upsilon"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGaf {
    pub a: usize,
    pub b: usize,
    pub v: usize,
    pub h: usize,
    pub rho: Vec<usize>,
    pub sigma: Vec<usize>,
    pub upsilon: Vec<usize>,
}

impl TryFrom<RawGaf> for Gaf {
    type Error = Error;

    fn try_from(raw: RawGaf) -> Result<Self> {
        Gaf::validate(raw)
    }
}

impl From<Gaf> for RawGaf {
    fn from(g: Gaf) -> Self {
        RawGaf {
            a: g.a,
            b: g.b,
            v: g.v,
            h: g.h_size(),
            rho: g.rho.values().to_vec(),
            sigma: g.sigma.values().to_vec(),
            upsilon: g.upsilon.values().to_vec(),
        }
    }
}

/// Homotopy invariants of the realization `Re(G)`: one entry per connected component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationInvariants {
    pub component_of: FinMap,
    pub num_components: usize,
    pub euler_char_per_component: Vec<i64>,
    pub rank_per_component: Vec<usize>,
}

/// A choice of subsets `A' ⊆ A`, `B' ⊆ B`, `V' ⊆ V`, `H' ⊆ H`.
///
/// Inner vertices are given by their index in `V` (not in `A ⊔ V`).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Selection {
    pub attaching: Vec<usize>,
    pub markings: Vec<usize>,
    pub inner: Vec<usize>,
    pub half_edges: Vec<usize>,
}

/// A sub-gaf together with the original indices of its elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubGaf {
    pub gaf: Gaf,
    /// Original vertex index (in `A ⊔ V`) of each vertex of the sub-gaf.
    pub vertices: Vec<usize>,
    pub markings: Vec<usize>,
    pub half_edges: Vec<usize>,
}

impl Gaf {
    /// Builds a gaf from raw structure maps, checking every invariant.
    pub fn new(
        a: usize,
        b: usize,
        v: usize,
        rho: Vec<usize>,
        sigma: Vec<usize>,
        upsilon: Vec<usize>,
    ) -> Result<Gaf> {
        let h = sigma.len();
        Gaf::validate(RawGaf {
            a,
            b,
            v,
            h,
            rho,
            sigma,
            upsilon,
        })
    }

    /// Checks a raw candidate and returns the gaf if all invariants hold.
    pub fn validate(raw: RawGaf) -> Result<Gaf> {
        let RawGaf {
            a,
            b,
            v,
            h,
            rho,
            sigma,
            upsilon,
        } = raw;
        for (map, expected, found) in [
            ("rho", b, rho.len()),
            ("sigma", h, sigma.len()),
            ("upsilon", h, upsilon.len()),
        ] {
            if expected != found {
                return Err(Error::LengthMismatch {
                    map,
                    expected,
                    found,
                });
            }
        }
        let rho = FinMap::new(rho, a + v, "rho")?;
        let sigma = FinMap::new(sigma, a + v, "sigma")?;
        let upsilon = FinMap::new(upsilon, h, "upsilon")?;
        for half_edge in 0..h {
            let partner = upsilon.get(half_edge);
            if partner == half_edge {
                return Err(Error::InvolutionHasFixedPoint { half_edge });
            }
            if upsilon.get(partner) != half_edge {
                return Err(Error::InvolutionNotSelfInverse { half_edge });
            }
        }
        Ok(Gaf {
            a,
            b,
            v,
            rho,
            sigma,
            upsilon,
        })
    }

    /// The monoidal unit: no vertices, markings or edges.
    pub fn empty() -> Gaf {
        Gaf {
            a: 0,
            b: 0,
            v: 0,
            rho: FinMap::empty(0),
            sigma: FinMap::empty(0),
            upsilon: FinMap::empty(0),
        }
    }

    pub fn a_size(&self) -> usize {
        self.a
    }

    pub fn b_size(&self) -> usize {
        self.b
    }

    pub fn v_size(&self) -> usize {
        self.v
    }

    pub fn h_size(&self) -> usize {
        self.sigma.domain_size()
    }

    pub fn e_size(&self) -> usize {
        self.h_size() / 2
    }

    /// `|A ⊔ V|`.
    pub fn vertex_count(&self) -> usize {
        self.a + self.v
    }

    pub fn is_attaching(&self, vertex: usize) -> bool {
        vertex < self.a
    }

    pub fn rho(&self) -> &FinMap {
        &self.rho
    }

    pub fn sigma(&self) -> &FinMap {
        &self.sigma
    }

    pub fn upsilon(&self) -> &FinMap {
        &self.upsilon
    }

    pub fn is_empty(&self) -> bool {
        self.a == 0 && self.b == 0 && self.v == 0 && self.h_size() == 0
    }

    pub fn to_raw(&self) -> RawGaf {
        self.clone().into()
    }

    /// The `υ`-orbits as `(smaller, larger)` half-edge pairs, ordered by the smaller index.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.h_size())
            .filter_map(|h| {
                let p = self.upsilon.get(h);
                (h < p).then_some((h, p))
            })
            .collect()
    }

    /// Index (in the order of [`Gaf::edges`]) of the edge containing each half-edge.
    pub fn edge_index_of_half_edges(&self) -> Vec<usize> {
        let mut out = vec![0; self.h_size()];
        for (i, (h1, h2)) in self.edges().into_iter().enumerate() {
            out[h1] = i;
            out[h2] = i;
        }
        out
    }

    /// The two endpoints of an edge given as a half-edge pair.
    pub fn endpoints(&self, edge: (usize, usize)) -> (usize, usize) {
        (self.sigma.get(edge.0), self.sigma.get(edge.1))
    }

    pub fn valence(&self, vertex: usize) -> Result<usize> {
        if vertex >= self.vertex_count() {
            return Err(Error::IndexOutOfRange {
                map: "vertex",
                index: vertex,
            });
        }
        Ok(self.sigma.values().iter().filter(|&&x| x == vertex).count())
    }

    /// Valence of every vertex of `A ⊔ V`.
    pub fn valences(&self) -> Vec<usize> {
        let mut out = vec![0; self.vertex_count()];
        for &x in self.sigma.values() {
            out[x] += 1;
        }
        out
    }

    /// Markings sent to `vertex` by `ρ`.
    pub fn markings_at(&self, vertex: usize) -> Vec<usize> {
        (0..self.b).filter(|&b| self.rho.get(b) == vertex).collect()
    }

    pub fn half_edges_at(&self, vertex: usize) -> Vec<usize> {
        (0..self.h_size())
            .filter(|&h| self.sigma.get(h) == vertex)
            .collect()
    }

    pub fn is_marked(&self, vertex: usize) -> bool {
        self.rho.values().contains(&vertex)
    }

    pub fn realization_invariants(&self) -> RealizationInvariants {
        let n = self.vertex_count();
        let mut uf = UnionFind::new(n);
        for (h1, h2) in self.edges() {
            uf.union(self.sigma.get(h1), self.sigma.get(h2));
        }
        let (labels, k) = uf.labels();
        let mut euler = vec![0i64; k];
        for &c in &labels {
            euler[c] += 1;
        }
        for (h1, _) in self.edges() {
            euler[labels[self.sigma.get(h1)]] -= 1;
        }
        let rank = euler
            .iter()
            .map(|&chi| usize::try_from(1 - chi).expect("connected graphs have χ ≤ 1"))
            .collect();
        RealizationInvariants {
            component_of: FinMap::new(labels, k, "component_of").expect("labels are below k"),
            num_components: k,
            euler_char_per_component: euler,
            rank_per_component: rank,
        }
    }

    /// `Re(G)` is non-empty and contractible.
    pub fn is_tree(&self) -> bool {
        let inv = self.realization_invariants();
        inv.num_components == 1 && inv.rank_per_component[0] == 0
    }

    pub fn is_based_tree(&self) -> bool {
        self.a == 1 && self.is_tree()
    }

    pub fn is_nonbased_tree(&self) -> bool {
        self.a == 0 && self.is_tree()
    }

    /// The sub-gaf on a selection, if `ρ`, `σ` and `υ` restrict to it.
    pub fn sub_gaf(&self, selection: &Selection) -> Result<Gaf> {
        self.restrict(selection).map(|s| s.gaf)
    }

    /// Like [`Gaf::sub_gaf`], also reporting where each element came from.
    pub fn restrict(&self, selection: &Selection) -> Result<SubGaf> {
        let n = self.vertex_count();
        let mut vertices: Vec<usize> = selection.attaching.clone();
        vertices.sort_unstable();
        vertices.dedup();
        let new_a = vertices.len();
        let mut inner: Vec<usize> = selection.inner.iter().map(|&j| self.a + j).collect();
        inner.sort_unstable();
        inner.dedup();
        vertices.extend(inner);
        for (i, &x) in vertices.iter().enumerate() {
            let in_range = if i < new_a { x < self.a } else { x < n };
            if !in_range {
                return Err(Error::IndexOutOfRange {
                    map: "selection",
                    index: x,
                });
            }
        }
        let mut vertex_pos = vec![usize::MAX; n];
        for (i, &x) in vertices.iter().enumerate() {
            vertex_pos[x] = i;
        }

        let mut markings = selection.markings.clone();
        markings.sort_unstable();
        markings.dedup();
        let mut half_edges = selection.half_edges.clone();
        half_edges.sort_unstable();
        half_edges.dedup();
        let mut half_edge_pos = vec![usize::MAX; self.h_size()];
        for (i, &h) in half_edges.iter().enumerate() {
            if h >= self.h_size() {
                return Err(Error::IndexOutOfRange {
                    map: "selection",
                    index: h,
                });
            }
            half_edge_pos[h] = i;
        }

        let mut rho = Vec::with_capacity(markings.len());
        for &b in &markings {
            if b >= self.b {
                return Err(Error::IndexOutOfRange {
                    map: "selection",
                    index: b,
                });
            }
            match vertex_pos[self.rho.get(b)] {
                usize::MAX => return Err(Error::NotClosed { map: "rho", index: b }),
                p => rho.push(p),
            }
        }
        let mut sigma = Vec::with_capacity(half_edges.len());
        let mut upsilon = Vec::with_capacity(half_edges.len());
        for &h in &half_edges {
            match vertex_pos[self.sigma.get(h)] {
                usize::MAX => return Err(Error::NotClosed { map: "sigma", index: h }),
                p => sigma.push(p),
            }
            match half_edge_pos[self.upsilon.get(h)] {
                usize::MAX => return Err(Error::NotClosed { map: "upsilon", index: h }),
                p => upsilon.push(p),
            }
        }
        let gaf = Gaf::new(
            new_a,
            markings.len(),
            vertices.len() - new_a,
            rho,
            sigma,
            upsilon,
        )
        .map_err(|e| Error::internal("restricted gaf", e))?;
        Ok(SubGaf {
            gaf,
            vertices,
            markings,
            half_edges,
        })
    }

    /// The selection spanned by a set of vertices (in `A ⊔ V` encoding) and half-edges,
    /// together with every marking landing on a selected vertex.
    pub(crate) fn selection_of(&self, vertices: &[usize], half_edges: &[usize]) -> Selection {
        let mut sel = Selection::default();
        for &x in vertices {
            if x < self.a {
                sel.attaching.push(x);
            } else {
                sel.inner.push(x - self.a);
            }
        }
        sel.markings = (0..self.b)
            .filter(|&b| vertices.contains(&self.rho.get(b)))
            .collect();
        sel.half_edges = half_edges.to_vec();
        sel
    }

    /// Relabels inner vertices and half-edges: inner vertex `j` becomes `vperm[j]`,
    /// half-edge `h` becomes `hperm[h]`. Both must be permutations.
    pub fn relabeled(&self, vperm: &[usize], hperm: &[usize]) -> Gaf {
        let a = self.a;
        let vlab = |x: usize| if x < a { x } else { a + vperm[x - a] };
        let h = self.h_size();
        let mut sigma = vec![0; h];
        let mut upsilon = vec![0; h];
        for old in 0..h {
            sigma[hperm[old]] = vlab(self.sigma.get(old));
            upsilon[hperm[old]] = hperm[self.upsilon.get(old)];
        }
        let rho = self.rho.values().iter().map(|&x| vlab(x)).collect();
        Gaf::new(a, self.b, self.v, rho, sigma, upsilon).expect("relabeling preserves validity")
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Gaf;

    /// One inner vertex with a loop.
    pub fn loop_gaf() -> Gaf {
        Gaf::new(0, 0, 1, vec![], vec![0, 0], vec![1, 0]).unwrap()
    }

    /// One isolated inner vertex.
    pub fn point() -> Gaf {
        Gaf::new(0, 0, 1, vec![], vec![], vec![]).unwrap()
    }

    /// Two inner vertices joined by two parallel edges.
    pub fn two_cycle() -> Gaf {
        Gaf::new(0, 0, 2, vec![], vec![0, 1, 0, 1], vec![1, 0, 3, 2]).unwrap()
    }

    /// Segment marked once at each end, attached to nothing.
    pub fn segment_marked() -> Gaf {
        Gaf::new(0, 2, 2, vec![0, 1], vec![0, 1], vec![1, 0]).unwrap()
    }

    /// Path of `k` edges through `k + 1` unmarked inner vertices.
    pub fn path(k: usize) -> Gaf {
        let mut sigma = Vec::new();
        let mut upsilon = Vec::new();
        for i in 0..k {
            sigma.extend([i, i + 1]);
            upsilon.extend([2 * i + 1, 2 * i]);
        }
        Gaf::new(0, 0, k + 1, vec![], sigma, upsilon).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn validate_examples() {
        let t = Gaf::new(0, 1, 1, vec![0], vec![], vec![]).unwrap();
        assert_eq!(t.h_size(), 0);
        assert!(Gaf::new(0, 0, 0, vec![], vec![], vec![]).unwrap().is_empty());
        assert_eq!(
            Gaf::new(0, 0, 1, vec![], vec![0], vec![0]),
            Err(Error::InvolutionHasFixedPoint { half_edge: 0 })
        );
    }

    #[test]
    fn validate_errors_name_the_offender() {
        assert_eq!(
            Gaf::new(0, 0, 1, vec![], vec![0, 0, 0], vec![1, 2, 0]),
            Err(Error::InvolutionNotSelfInverse { half_edge: 0 })
        );
        assert_eq!(
            Gaf::new(1, 1, 0, vec![1], vec![], vec![]),
            Err(Error::IndexOutOfRange { map: "rho", index: 0 })
        );
        assert_eq!(
            Gaf::new(0, 0, 1, vec![], vec![0, 1], vec![1, 0]),
            Err(Error::IndexOutOfRange {
                map: "sigma",
                index: 1
            })
        );
        let raw = RawGaf {
            a: 0,
            b: 0,
            v: 1,
            h: 4,
            rho: vec![],
            sigma: vec![0, 0],
            upsilon: vec![1, 0],
        };
        assert!(matches!(Gaf::validate(raw), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn edges_examples() {
        assert_eq!(loop_gaf().edges(), vec![(0, 1)]);
        let e = Gaf::new(2, 0, 0, vec![], vec![0, 1], vec![1, 0]).unwrap();
        assert_eq!(e.edges(), vec![(0, 1)]);
        let t = Gaf::new(0, 1, 1, vec![0], vec![], vec![]).unwrap();
        assert!(t.edges().is_empty());
    }

    #[test]
    fn realization_examples() {
        let inv = loop_gaf().realization_invariants();
        assert_eq!(inv.num_components, 1);
        assert_eq!(inv.euler_char_per_component, vec![0]);
        assert_eq!(inv.rank_per_component, vec![1]);

        let inv = segment_marked().realization_invariants();
        assert_eq!(inv.num_components, 1);
        assert_eq!(inv.euler_char_per_component, vec![1]);
        assert_eq!(inv.rank_per_component, vec![0]);

        assert_eq!(Gaf::empty().realization_invariants().num_components, 0);
    }

    #[test]
    fn tree_predicates() {
        assert!(segment_marked().is_nonbased_tree());
        assert!(!loop_gaf().is_tree());
        let bare = Gaf::new(1, 0, 0, vec![], vec![], vec![]).unwrap();
        assert!(bare.is_based_tree());
        assert!(!Gaf::empty().is_tree());
        assert!(!two_cycle().is_tree());
        assert!(path(3).is_nonbased_tree());
    }

    #[test]
    fn valence_examples() {
        assert_eq!(loop_gaf().valence(0), Ok(2));
        assert_eq!(segment_marked().valence(0), Ok(1));
        let t = Gaf::new(0, 1, 1, vec![0], vec![], vec![]).unwrap();
        assert_eq!(t.valence(0), Ok(0));
        assert!(matches!(t.valence(1), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn sub_gaf_examples() {
        let g = loop_gaf();
        let full = Selection {
            inner: vec![0],
            half_edges: vec![0, 1],
            ..Default::default()
        };
        assert_eq!(g.sub_gaf(&full).unwrap(), g);
        let vertex_only = Selection {
            inner: vec![0],
            ..Default::default()
        };
        assert_eq!(g.sub_gaf(&vertex_only).unwrap(), point());
        let half = Selection {
            inner: vec![0],
            half_edges: vec![0],
            ..Default::default()
        };
        assert_eq!(
            g.sub_gaf(&half),
            Err(Error::NotClosed {
                map: "upsilon",
                index: 0
            })
        );
        let dangling = Selection {
            markings: vec![0],
            ..Default::default()
        };
        assert_eq!(
            segment_marked().sub_gaf(&dangling),
            Err(Error::NotClosed { map: "rho", index: 0 })
        );
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_string(&segment_marked()).unwrap();
        assert_eq!(
            json,
            r#"{"a":0,"b":2,"v":2,"h":2,"rho":[0,1],"sigma":[0,1],"upsilon":[1,0]}"#
        );
        let back: Gaf = serde_json::from_str(&json).unwrap();
        assert_eq!(back, segment_marked());
        let bad = r#"{"a":0,"b":0,"v":1,"h":1,"rho":[],"sigma":[0],"upsilon":[0]}"#;
        assert!(serde_json::from_str::<Gaf>(bad).is_err());
    }
}
