//! Tree-collapse morphisms between gafs.
//!
//! A morphism `f: G → G'` is a map `A ⊔ B ⊔ V ⊔ H → A' ⊔ B' ⊔ V' ⊔ H'` which restricts to
//! `A → A'` and `B → B'`, commutes with `ρ`, `σ`, `υ`, has non-based trees as preimages
//! of inner vertices, disjoint unions of based trees (one per attaching preimage) as
//! preimages of attaching vertices, and is bijective onto the surviving half-edges.
//!
//! Encodings: `map_v` lands in `A' ⊔ V'` with `A'` first; `map_h` lands in
//! `A' ⊔ V' ⊔ H'` with `A'` first, then `V'`, then `H'`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finmap::FinMap;
use crate::gaf::Gaf;
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawMorphism", into = "RawMorphism")]
pub struct GafMorphism {
    source: Gaf,
    target: Gaf,
    map_a: FinMap,
    map_b: FinMap,
    map_v: FinMap,
    map_h: FinMap,
}

/// The interchange shape of a morphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMorphism {
    pub source: Gaf,
    pub target: Gaf,
    pub map_a: Vec<usize>,
    pub map_b: Vec<usize>,
    pub map_v: Vec<usize>,
    pub map_h: Vec<usize>,
}

impl TryFrom<RawMorphism> for GafMorphism {
    type Error = Error;

    fn try_from(raw: RawMorphism) -> Result<Self> {
        GafMorphism::validate(raw)
    }
}

impl From<GafMorphism> for RawMorphism {
    fn from(f: GafMorphism) -> Self {
        RawMorphism {
            map_a: f.map_a.values().to_vec(),
            map_b: f.map_b.values().to_vec(),
            map_v: f.map_v.values().to_vec(),
            map_h: f.map_h.values().to_vec(),
            source: f.source,
            target: f.target,
        }
    }
}

/// Where a half-edge goes: onto a vertex (its edge is collapsed) or onto a half-edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HalfEdgeImage {
    Vertex(usize),
    HalfEdge(usize),
}

impl GafMorphism {
    pub fn new(
        source: Gaf,
        target: Gaf,
        map_a: Vec<usize>,
        map_b: Vec<usize>,
        map_v: Vec<usize>,
        map_h: Vec<usize>,
    ) -> Result<GafMorphism> {
        GafMorphism::validate(RawMorphism {
            source,
            target,
            map_a,
            map_b,
            map_v,
            map_h,
        })
    }

    /// Checks the morphism conditions and returns the morphism if they all hold.
    pub fn validate(raw: RawMorphism) -> Result<GafMorphism> {
        let f = GafMorphism::from_raw_unchecked(raw)?;
        f.check_equivariance()?;
        f.check_half_edge_bijection()?;
        f.check_inner_preimages()?;
        f.check_attaching_preimages()?;
        Ok(f)
    }

    /// Range and length checks only.
    fn from_raw_unchecked(raw: RawMorphism) -> Result<GafMorphism> {
        let RawMorphism {
            source,
            target,
            map_a,
            map_b,
            map_v,
            map_h,
        } = raw;
        if map_a.len() != source.a_size() || map_a.iter().any(|&x| x >= target.a_size()) {
            return Err(Error::RestrictionViolated {
                detail: "map_a is not a map A → A'".into(),
            });
        }
        if map_b.len() != source.b_size() || map_b.iter().any(|&x| x >= target.b_size()) {
            return Err(Error::RestrictionViolated {
                detail: "map_b is not a map B → B'".into(),
            });
        }
        for (name, len, expected) in [
            ("map_v", map_v.len(), source.v_size()),
            ("map_h", map_h.len(), source.h_size()),
        ] {
            if len != expected {
                return Err(Error::LengthMismatch {
                    map: name,
                    expected,
                    found: len,
                });
            }
        }
        let vertex_range = target.vertex_count();
        let map_a = FinMap::new(map_a, target.a_size(), "map_a")?;
        let map_b = FinMap::new(map_b, target.b_size(), "map_b")?;
        let map_v = FinMap::new(map_v, vertex_range, "map_v")?;
        let map_h = FinMap::new(map_h, vertex_range + target.h_size(), "map_h")?;
        Ok(GafMorphism {
            source,
            target,
            map_a,
            map_b,
            map_v,
            map_h,
        })
    }

    pub fn identity(g: &Gaf) -> GafMorphism {
        let offset = g.vertex_count();
        GafMorphism {
            source: g.clone(),
            target: g.clone(),
            map_a: FinMap::identity(g.a_size()),
            map_b: FinMap::identity(g.b_size()),
            map_v: FinMap::new(
                (g.a_size()..offset).collect(),
                offset,
                "map_v",
            )
            .expect("in range"),
            map_h: FinMap::new(
                (offset..offset + g.h_size()).collect(),
                offset + g.h_size(),
                "map_h",
            )
            .expect("in range"),
        }
    }

    pub fn source(&self) -> &Gaf {
        &self.source
    }

    pub fn target(&self) -> &Gaf {
        &self.target
    }

    pub fn map_a(&self) -> &FinMap {
        &self.map_a
    }

    pub fn map_b(&self) -> &FinMap {
        &self.map_b
    }

    pub fn map_v(&self) -> &FinMap {
        &self.map_v
    }

    pub fn map_h(&self) -> &FinMap {
        &self.map_h
    }

    pub fn to_raw(&self) -> RawMorphism {
        self.clone().into()
    }

    /// Image of a source vertex (in `A ⊔ V` encoding) as a target vertex.
    pub fn vertex_image(&self, vertex: usize) -> usize {
        let a = self.source.a_size();
        if vertex < a {
            self.map_a.get(vertex)
        } else {
            self.map_v.get(vertex - a)
        }
    }

    pub fn half_edge_image(&self, half_edge: usize) -> HalfEdgeImage {
        let y = self.map_h.get(half_edge);
        let n = self.target.vertex_count();
        if y < n {
            HalfEdgeImage::Vertex(y)
        } else {
            HalfEdgeImage::HalfEdge(y - n)
        }
    }

    /// Indices (in the source's edge order) of the edges collapsed onto a vertex.
    pub fn collapsed_edges(&self) -> Vec<usize> {
        self.source
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, &(h, _))| matches!(self.half_edge_image(h), HalfEdgeImage::Vertex(_)))
            .map(|(i, _)| i)
            .collect()
    }

    /// Identity on `A` and `B`, as required of morphisms in a fixed hom-category.
    pub fn fixes_boundary(&self) -> bool {
        self.source.a_size() == self.target.a_size()
            && self.source.b_size() == self.target.b_size()
            && self.map_a.is_identity()
            && self.map_b.is_identity()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.map_a.is_bijective()
            && self.map_b.is_bijective()
            && self.source.v_size() == self.target.v_size()
            && self.source.h_size() == self.target.h_size()
            && (0..self.source.v_size()).all(|j| self.map_v.get(j) >= self.target.a_size())
            && self.collapsed_edges().is_empty()
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<GafMorphism> {
        if !self.is_isomorphism() {
            return None;
        }
        let (s, t) = (&self.source, &self.target);
        let mut map_v = vec![0; t.v_size()];
        for j in 0..s.v_size() {
            map_v[self.map_v.get(j) - t.a_size()] = s.a_size() + j;
        }
        let mut map_h = vec![0; t.h_size()];
        for h in 0..s.h_size() {
            match self.half_edge_image(h) {
                HalfEdgeImage::HalfEdge(h2) => map_h[h2] = s.vertex_count() + h,
                HalfEdgeImage::Vertex(_) => return None,
            }
        }
        GafMorphism::new(
            t.clone(),
            s.clone(),
            self.map_a.inverse()?.values().to_vec(),
            self.map_b.inverse()?.values().to_vec(),
            map_v,
            map_h,
        )
        .ok()
    }

    fn check_equivariance(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        for b in 0..s.b_size() {
            if self.vertex_image(s.rho().get(b)) != t.rho().get(self.map_b.get(b)) {
                return Err(Error::NotEquivariant { map: "rho", index: b });
            }
        }
        for h in 0..s.h_size() {
            let base = self.vertex_image(s.sigma().get(h));
            let partner = self.half_edge_image(s.upsilon().get(h));
            match self.half_edge_image(h) {
                HalfEdgeImage::Vertex(y) => {
                    if base != y {
                        return Err(Error::NotEquivariant { map: "sigma", index: h });
                    }
                    if partner != HalfEdgeImage::Vertex(y) {
                        return Err(Error::NotEquivariant { map: "upsilon", index: h });
                    }
                }
                HalfEdgeImage::HalfEdge(h2) => {
                    if base != t.sigma().get(h2) {
                        return Err(Error::NotEquivariant { map: "sigma", index: h });
                    }
                    if partner != HalfEdgeImage::HalfEdge(t.upsilon().get(h2)) {
                        return Err(Error::NotEquivariant { map: "upsilon", index: h });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_half_edge_bijection(&self) -> Result<()> {
        let mut count = vec![0usize; self.target.h_size()];
        for h in 0..self.source.h_size() {
            if let HalfEdgeImage::HalfEdge(h2) = self.half_edge_image(h) {
                count[h2] += 1;
            }
        }
        match count.iter().position(|&c| c != 1) {
            Some(half_edge) => Err(Error::HalfEdgeNotSingleton { half_edge }),
            None => Ok(()),
        }
    }

    /// Source vertices and half-edges sent onto a target vertex.
    fn preimage(&self, target_vertex: usize) -> (Vec<usize>, Vec<usize>) {
        let vertices = (0..self.source.vertex_count())
            .filter(|&x| self.vertex_image(x) == target_vertex)
            .collect();
        let half_edges = (0..self.source.h_size())
            .filter(|&h| self.half_edge_image(h) == HalfEdgeImage::Vertex(target_vertex))
            .collect();
        (vertices, half_edges)
    }

    /// The preimage of a target vertex as a sub-gaf of the source.
    pub fn preimage_gaf(&self, target_vertex: usize) -> Result<crate::gaf::SubGaf> {
        let (vertices, half_edges) = self.preimage(target_vertex);
        self.source
            .restrict(&self.source.selection_of(&vertices, &half_edges))
    }

    fn check_inner_preimages(&self) -> Result<()> {
        let t = &self.target;
        for vertex in t.a_size()..t.vertex_count() {
            let sub = self
                .preimage_gaf(vertex)
                .map_err(|_| Error::PreimageNotTree { vertex })?;
            if !sub.gaf.is_nonbased_tree() {
                return Err(Error::PreimageNotTree { vertex });
            }
        }
        Ok(())
    }

    fn check_attaching_preimages(&self) -> Result<()> {
        for vertex in 0..self.target.a_size() {
            let sub = self
                .preimage_gaf(vertex)
                .map_err(|_| Error::PreimageWrongBasing { vertex })?;
            let g = &sub.gaf;
            let inv = g.realization_invariants();
            let roots: Vec<usize> = (0..g.a_size())
                .map(|x| inv.component_of.get(x))
                .collect();
            let mut distinct = roots.clone();
            distinct.sort_unstable();
            distinct.dedup();
            let ok = inv.num_components == g.a_size()
                && distinct.len() == roots.len()
                && inv.rank_per_component.iter().all(|&r| r == 0);
            if !ok {
                return Err(Error::PreimageWrongBasing { vertex });
            }
        }
        Ok(())
    }
}

/// Vertical composite `g ∘ f`; requires `target(f) = source(g)` exactly.
pub fn compose_v(g: &GafMorphism, f: &GafMorphism) -> Result<GafMorphism> {
    if f.target != g.source {
        return Err(Error::SourceTargetMismatch);
    }
    let mid = &f.target;
    let map_a = f.map_a.values().iter().map(|&x| g.map_a.get(x)).collect();
    let map_b = f.map_b.values().iter().map(|&x| g.map_b.get(x)).collect();
    let map_v = f
        .map_v
        .values()
        .iter()
        .map(|&x| g.vertex_image(x))
        .collect();
    let offset = g.target.vertex_count();
    let map_h = (0..f.source.h_size())
        .map(|h| match f.half_edge_image(h) {
            HalfEdgeImage::Vertex(x) => g.vertex_image(x),
            HalfEdgeImage::HalfEdge(h2) => match g.half_edge_image(h2) {
                HalfEdgeImage::Vertex(y) => y,
                HalfEdgeImage::HalfEdge(h3) => offset + h3,
            },
        })
        .collect();
    debug_assert_eq!(mid, &g.source);
    GafMorphism::new(
        f.source.clone(),
        g.target.clone(),
        map_a,
        map_b,
        map_v,
        map_h,
    )
}

/// Collapses a set of edges (indices in [`Gaf::edges`] order) and returns the quotient
/// with its projection.
///
/// Each connected piece spanned by the chosen edges must be a tree with at most one
/// attaching vertex. A piece with an attaching vertex collapses onto it; every other
/// piece becomes a fresh inner vertex. Untouched inner vertices keep their relative
/// order and fresh vertices follow, ordered by their smallest original vertex.
pub fn collapse_edges(g: &Gaf, collapse: &[usize]) -> Result<(Gaf, GafMorphism)> {
    let edges = g.edges();
    let mut chosen = vec![false; edges.len()];
    for &e in collapse {
        if e >= edges.len() {
            return Err(Error::IndexOutOfRange { map: "edge", index: e });
        }
        chosen[e] = true;
    }
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    let mut cycle = None;
    for (i, &(h1, h2)) in edges.iter().enumerate() {
        if chosen[i] && !uf.union(g.sigma().get(h1), g.sigma().get(h2)) && cycle.is_none() {
            cycle = Some(i);
        }
    }
    let (labels, k) = uf.labels();
    let edges_in_class = |class: usize| -> Vec<usize> {
        (0..edges.len())
            .filter(|&i| chosen[i] && labels[g.sigma().get(edges[i].0)] == class)
            .collect()
    };
    if let Some(i) = cycle {
        return Err(Error::NotAForest {
            edges: edges_in_class(labels[g.sigma().get(edges[i].0)]),
        });
    }

    // Where each class goes in the quotient.
    let mut class_members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for x in 0..n {
        class_members[labels[x]].push(x);
    }
    let a = g.a_size();
    let mut class_target = vec![usize::MAX; k];
    let mut fresh_classes = Vec::new();
    let mut kept_inner = Vec::new();
    for (class, members) in class_members.iter().enumerate() {
        let attaching: Vec<usize> = members.iter().copied().filter(|&x| x < a).collect();
        if attaching.len() > 1 {
            return Err(Error::TwoAttachingVerticesInTree {
                edges: edges_in_class(class),
            });
        }
        if let Some(&x) = attaching.first() {
            class_target[class] = x;
        } else if members.len() == 1 {
            kept_inner.push((members[0], class));
        } else {
            fresh_classes.push((members[0], class));
        }
    }
    // kept_inner and fresh_classes are already ordered by smallest member.
    let mut next = a;
    for &(_, class) in kept_inner.iter().chain(fresh_classes.iter()) {
        class_target[class] = next;
        next += 1;
    }
    let new_v = next - a;
    let vertex_map = |x: usize| class_target[labels[x]];

    let mut survivor_index = vec![usize::MAX; g.h_size()];
    let mut survivors = Vec::new();
    for h in 0..g.h_size() {
        let e = edges
            .iter()
            .position(|&(h1, h2)| h == h1 || h == h2)
            .expect("every half-edge lies on an edge");
        if !chosen[e] {
            survivor_index[h] = survivors.len();
            survivors.push(h);
        }
    }
    let rho = g.rho().values().iter().map(|&x| vertex_map(x)).collect();
    let sigma = survivors.iter().map(|&h| vertex_map(g.sigma().get(h))).collect();
    let upsilon = survivors
        .iter()
        .map(|&h| survivor_index[g.upsilon().get(h)])
        .collect();
    let quotient = Gaf::new(a, g.b_size(), new_v, rho, sigma, upsilon)
        .map_err(|e| Error::internal("collapse quotient", e))?;

    let offset = quotient.vertex_count();
    let map_v = (a..n).map(vertex_map).collect();
    let map_h = (0..g.h_size())
        .map(|h| match survivor_index[h] {
            usize::MAX => vertex_map(g.sigma().get(h)),
            i => offset + i,
        })
        .collect();
    let proj = GafMorphism::new(
        g.clone(),
        quotient.clone(),
        (0..a).collect(),
        (0..g.b_size()).collect(),
        map_v,
        map_h,
    )
    .map_err(|e| Error::internal("collapse projection", e))?;
    Ok((quotient, proj))
}

/// All morphisms `G → G'` fixing `A` and `B` pointwise, ordered lexicographically by
/// `(map_v, map_h)`. Empty when the boundaries differ.
pub fn morphisms_between(g: &Gaf, target: &Gaf) -> Vec<GafMorphism> {
    if g.a_size() != target.a_size() || g.b_size() != target.b_size() {
        return Vec::new();
    }
    let mut search = MorphismSearch {
        g,
        t: target,
        edges: g.edges(),
        vimg: (0..g.a_size()).map(Some).chain((0..g.v_size()).map(|_| None)).collect(),
        himg: vec![usize::MAX; g.h_size()],
        used: vec![false; target.h_size()],
        out: Vec::new(),
    };
    search.vertices(0);
    let mut out = search.out;
    out.sort_by(|x, y| {
        (x.map_v.values(), x.map_h.values()).cmp(&(y.map_v.values(), y.map_h.values()))
    });
    out
}

struct MorphismSearch<'a> {
    g: &'a Gaf,
    t: &'a Gaf,
    edges: Vec<(usize, usize)>,
    vimg: Vec<Option<usize>>,
    himg: Vec<usize>,
    used: Vec<bool>,
    out: Vec<GafMorphism>,
}

impl MorphismSearch<'_> {
    fn vertices(&mut self, j: usize) {
        let (g, t) = (self.g, self.t);
        if j == g.v_size() {
            self.edge(0, t.h_size());
            return;
        }
        let x = g.a_size() + j;
        let forced: Vec<usize> = g.markings_at(x).iter().map(|&b| t.rho().get(b)).collect();
        let choices: Vec<usize> = match forced.first() {
            Some(&y) if forced.iter().all(|&z| z == y) => vec![y],
            Some(_) => return,
            None => (0..t.vertex_count()).collect(),
        };
        for y in choices {
            self.vimg[x] = Some(y);
            self.vertices(j + 1);
        }
        self.vimg[x] = None;
    }

    fn edge(&mut self, i: usize, uncovered: usize) {
        let (g, t) = (self.g, self.t);
        if uncovered > 2 * (self.edges.len() - i) {
            return;
        }
        if i == self.edges.len() {
            if uncovered == 0 {
                self.emit();
            }
            return;
        }
        let (h1, h2) = self.edges[i];
        let y1 = self.vimg[g.sigma().get(h1)].expect("all vertices assigned");
        let y2 = self.vimg[g.sigma().get(h2)].expect("all vertices assigned");
        if y1 == y2 {
            self.himg[h1] = y1;
            self.himg[h2] = y1;
            self.edge(i + 1, uncovered);
        }
        let offset = t.vertex_count();
        for k in 0..t.h_size() {
            let k2 = t.upsilon().get(k);
            if self.used[k] || t.sigma().get(k) != y1 || t.sigma().get(k2) != y2 {
                continue;
            }
            self.used[k] = true;
            self.used[k2] = true;
            self.himg[h1] = offset + k;
            self.himg[h2] = offset + k2;
            self.edge(i + 1, uncovered - 2);
            self.used[k] = false;
            self.used[k2] = false;
        }
    }

    fn emit(&mut self) {
        let (g, t) = (self.g, self.t);
        let map_v = (g.a_size()..g.vertex_count())
            .map(|x| self.vimg[x].expect("assigned"))
            .collect();
        if let Ok(f) = GafMorphism::new(
            g.clone(),
            t.clone(),
            (0..g.a_size()).collect(),
            (0..g.b_size()).collect(),
            map_v,
            self.himg.clone(),
        ) {
            self.out.push(f);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaf::fixtures::*;

    fn beta_source() -> Gaf {
        Gaf::new(1, 1, 1, vec![1], vec![0, 1], vec![1, 0]).unwrap()
    }

    fn beta_target() -> Gaf {
        Gaf::new(1, 1, 0, vec![0], vec![], vec![]).unwrap()
    }

    #[test]
    fn beta_validates() {
        let beta = GafMorphism::new(
            beta_source(),
            beta_target(),
            vec![0],
            vec![0],
            vec![0],
            vec![0, 0],
        )
        .unwrap();
        assert_eq!(beta.collapsed_edges(), vec![0]);
    }

    #[test]
    fn identity_validates() {
        for g in [loop_gaf(), two_cycle(), segment_marked(), path(3), Gaf::empty()] {
            let id = GafMorphism::identity(&g);
            assert!(GafMorphism::validate(id.to_raw()).is_ok());
            assert!(id.collapsed_edges().is_empty());
        }
    }

    #[test]
    fn loop_to_point_is_not_a_tree_collapse() {
        let r = GafMorphism::new(loop_gaf(), point(), vec![], vec![], vec![0], vec![0, 0]);
        assert_eq!(r, Err(Error::PreimageNotTree { vertex: 0 }));
    }

    #[test]
    fn violations_are_reported() {
        // σ-equivariance: half-edge sent to a half-edge based elsewhere.
        let seg = path(1);
        let r = GafMorphism::new(seg.clone(), seg.clone(), vec![], vec![], vec![0, 1], vec![3, 2]);
        assert_eq!(r, Err(Error::NotEquivariant { map: "sigma", index: 0 }));
        // A target half-edge without preimage.
        let r = GafMorphism::new(point(), loop_gaf(), vec![], vec![], vec![0], vec![]);
        assert_eq!(r, Err(Error::HalfEdgeNotSingleton { half_edge: 0 }));
        // Attaching vertex whose preimage holds an extra isolated inner vertex.
        let src = Gaf::new(1, 0, 1, vec![], vec![], vec![]).unwrap();
        let tgt = Gaf::new(1, 0, 0, vec![], vec![], vec![]).unwrap();
        let r = GafMorphism::new(src, tgt, vec![0], vec![], vec![0], vec![]);
        assert_eq!(r, Err(Error::PreimageWrongBasing { vertex: 0 }));
        // map_a out of range.
        let r = GafMorphism::new(
            beta_target(),
            beta_target(),
            vec![1],
            vec![0],
            vec![],
            vec![],
        );
        assert!(matches!(r, Err(Error::RestrictionViolated { .. })));
        // Empty preimage of an inner vertex.
        let r = GafMorphism::new(Gaf::empty(), point(), vec![], vec![], vec![], vec![]);
        assert_eq!(r, Err(Error::PreimageNotTree { vertex: 0 }));
    }

    #[test]
    fn collapse_examples() {
        let (q, proj) = collapse_edges(&beta_source(), &[0]).unwrap();
        assert_eq!(q, beta_target());
        assert_eq!(proj.map_h().values(), &[0, 0]);

        let g = two_cycle();
        let (q, proj) = collapse_edges(&g, &[]).unwrap();
        assert_eq!(q, g);
        assert_eq!(proj, GafMorphism::identity(&g));

        assert_eq!(
            collapse_edges(&g, &[0, 1]).unwrap_err(),
            Error::NotAForest { edges: vec![0, 1] }
        );
        let e = Gaf::new(2, 0, 0, vec![], vec![0, 1], vec![1, 0]).unwrap();
        assert_eq!(
            collapse_edges(&e, &[0]).unwrap_err(),
            Error::TwoAttachingVerticesInTree { edges: vec![0] }
        );
        let (q, _) = collapse_edges(&g, &[0]).unwrap();
        assert_eq!(q, loop_gaf());
    }

    #[test]
    fn collapse_path_in_two_steps() {
        let p = path(2);
        let (q0, f0) = collapse_edges(&p, &[0]).unwrap();
        let (q1, f1) = collapse_edges(&q0, &[0]).unwrap();
        let composite = compose_v(&f1, &f0).unwrap();
        let (q, direct) = collapse_edges(&p, &[0, 1]).unwrap();
        assert_eq!(q1, q);
        assert_eq!(composite, direct);
        assert_eq!(q, point());
    }

    #[test]
    fn compose_v_units_and_mismatch() {
        let (_, f) = collapse_edges(&two_cycle(), &[0]).unwrap();
        let id_src = GafMorphism::identity(f.source());
        let id_tgt = GafMorphism::identity(f.target());
        assert_eq!(compose_v(&f, &id_src).unwrap(), f);
        assert_eq!(compose_v(&id_tgt, &f).unwrap(), f);
        assert_eq!(compose_v(&f, &f), Err(Error::SourceTargetMismatch));
    }

    #[test]
    fn enumeration_counts() {
        // Either edge collapses, and the surviving edge may land in either orientation.
        assert_eq!(morphisms_between(&two_cycle(), &loop_gaf()).len(), 4);
        assert_eq!(morphisms_between(&loop_gaf(), &loop_gaf()).len(), 2);
        assert!(morphisms_between(&loop_gaf(), &point()).is_empty());
        let collapses: Vec<Vec<usize>> = morphisms_between(&two_cycle(), &loop_gaf())
            .iter()
            .map(|f| f.collapsed_edges())
            .collect();
        assert_eq!(collapses, vec![vec![0], vec![0], vec![1], vec![1]]);
    }

    #[test]
    fn inverse_of_swap() {
        let swap = morphisms_between(&loop_gaf(), &loop_gaf())
            .into_iter()
            .find(|f| *f != GafMorphism::identity(&loop_gaf()))
            .unwrap();
        assert_eq!(swap.inverse().unwrap(), swap);
        assert!(collapse_edges(&path(1), &[0]).unwrap().1.inverse().is_none());
    }

    #[test]
    fn json_roundtrip_validates() {
        let (_, f) = collapse_edges(&path(2), &[1]).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        let back: GafMorphism = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        let mut raw = f.to_raw();
        raw.map_h.swap(0, 1);
        let tampered = serde_json::to_string(&raw).unwrap();
        assert!(serde_json::from_str::<GafMorphism>(&tampered).is_err());
    }
}
