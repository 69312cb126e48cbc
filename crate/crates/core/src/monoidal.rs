//! Horizontal composition, disjoint union and the embedding of finite-set maps.
//!
//! `compose_h(G, G')` glues `G' ∈ Gr(A'', A')` onto `G ∈ Gr(A', A)` along `A'`: the
//! attaching vertices of `G'` are identified with the `ρ`-images of the markings of `G`.
//! Index blocks are fixed: `V̂ = V ⊔ V'` and `Ĥ = H ⊔ H'`, with `G`'s block first. With
//! this choice composition is associative and unital only up to canonical isomorphism.

use crate::error::{Error, Result};
use crate::finmap::FinMap;
use crate::gaf::Gaf;
use crate::morphism::{GafMorphism, HalfEdgeImage};

/// Vertex relabelings of the two factors of `G ⊔ G'` into the combined `A ⊔ V` range.
struct TensorLayout {
    a1: usize,
    a2: usize,
    v1: usize,
}

impl TensorLayout {
    fn new(g1: &Gaf, g2: &Gaf) -> Self {
        TensorLayout {
            a1: g1.a_size(),
            a2: g2.a_size(),
            v1: g1.v_size(),
        }
    }

    fn left(&self, x: usize) -> usize {
        if x < self.a1 {
            x
        } else {
            self.a2 + x
        }
    }

    fn right(&self, x: usize) -> usize {
        if x < self.a2 {
            self.a1 + x
        } else {
            self.a1 + self.v1 + x
        }
    }
}

/// Disjoint union; within each of `A`, `B`, `V`, `H` the left factor comes first.
pub fn tensor(g1: &Gaf, g2: &Gaf) -> Gaf {
    let lay = TensorLayout::new(g1, g2);
    let h1 = g1.h_size();
    let rho = g1
        .rho()
        .values()
        .iter()
        .map(|&x| lay.left(x))
        .chain(g2.rho().values().iter().map(|&x| lay.right(x)))
        .collect();
    let sigma = g1
        .sigma()
        .values()
        .iter()
        .map(|&x| lay.left(x))
        .chain(g2.sigma().values().iter().map(|&x| lay.right(x)))
        .collect();
    let upsilon = g1
        .upsilon()
        .values()
        .iter()
        .copied()
        .chain(g2.upsilon().values().iter().map(|&h| h1 + h))
        .collect();
    Gaf::new(
        g1.a_size() + g2.a_size(),
        g1.b_size() + g2.b_size(),
        g1.v_size() + g2.v_size(),
        rho,
        sigma,
        upsilon,
    )
    .expect("disjoint union of valid gafs is valid")
}

/// Tensor of a list of gafs, left to right.
pub fn tensor_all<'a>(gafs: impl IntoIterator<Item = &'a Gaf>) -> Gaf {
    gafs.into_iter().fold(Gaf::empty(), |acc, g| tensor(&acc, g))
}

/// Disjoint union of morphisms.
pub fn tensor_m(f1: &GafMorphism, f2: &GafMorphism) -> Result<GafMorphism> {
    let source = tensor(f1.source(), f2.source());
    let target = tensor(f1.target(), f2.target());
    let src = TensorLayout::new(f1.source(), f2.source());
    let tgt = TensorLayout::new(f1.target(), f2.target());
    let offset = target.vertex_count();
    let th1 = f1.target().h_size();
    let map_a = f1.map_a().sum(f2.map_a()).values().to_vec();
    let map_b = f1.map_b().sum(f2.map_b()).values().to_vec();
    let mut map_v = vec![0; source.v_size()];
    for x in f1.source().a_size()..f1.source().vertex_count() {
        map_v[src.left(x) - source.a_size()] = tgt.left(f1.vertex_image(x));
    }
    for x in f2.source().a_size()..f2.source().vertex_count() {
        map_v[src.right(x) - source.a_size()] = tgt.right(f2.vertex_image(x));
    }
    let map_h = (0..f1.source().h_size())
        .map(|h| match f1.half_edge_image(h) {
            HalfEdgeImage::Vertex(y) => tgt.left(y),
            HalfEdgeImage::HalfEdge(k) => offset + k,
        })
        .chain((0..f2.source().h_size()).map(|h| match f2.half_edge_image(h) {
            HalfEdgeImage::Vertex(y) => tgt.right(y),
            HalfEdgeImage::HalfEdge(k) => offset + th1 + k,
        }))
        .collect();
    GafMorphism::new(source, target, map_a, map_b, map_v, map_h)
        .map_err(|e| Error::internal("tensor of morphisms", e))
}

/// Where the vertices of the inner factor `G'` land in `G ∘ G'`.
fn glue_inner(g: &Gaf, inner: &Gaf, x: usize) -> usize {
    if x < inner.a_size() {
        g.rho().get(x)
    } else {
        g.vertex_count() + (x - inner.a_size())
    }
}

/// `G ∘_h G'` for `G ∈ Gr(A', A)` and `G' ∈ Gr(A'', A')`.
pub fn compose_h(g: &Gaf, inner: &Gaf) -> Result<Gaf> {
    if inner.a_size() != g.b_size() {
        return Err(Error::BoundaryMismatch {
            expected: g.b_size(),
            found: inner.a_size(),
        });
    }
    let h = g.h_size();
    let rho = inner
        .rho()
        .values()
        .iter()
        .map(|&x| glue_inner(g, inner, x))
        .collect();
    let sigma = g
        .sigma()
        .values()
        .iter()
        .copied()
        .chain(inner.sigma().values().iter().map(|&x| glue_inner(g, inner, x)))
        .collect();
    let upsilon = g
        .upsilon()
        .values()
        .iter()
        .copied()
        .chain(inner.upsilon().values().iter().map(|&k| h + k))
        .collect();
    Gaf::new(
        g.a_size(),
        inner.b_size(),
        g.v_size() + inner.v_size(),
        rho,
        sigma,
        upsilon,
    )
    .map_err(|e| Error::internal("horizontal composite", e))
}

/// Horizontal composite of a sequence `G₁ ∘ G₂ ∘ ... ∘ Gₙ`, bracketed to the left.
pub fn compose_h_all(gafs: &[Gaf]) -> Result<Gaf> {
    let (first, rest) = gafs
        .split_first()
        .ok_or_else(|| Error::PreconditionViolated("empty composite".into()))?;
    rest.iter()
        .try_fold(first.clone(), |acc, g| compose_h(&acc, g))
}

/// Horizontal composite of morphisms `f ∘_h f'`, with `f: G → G₁` and `f': G' → G'₁`.
///
/// Images of `f'` landing in `A'₁` are redirected through `ρ₁`, the marking map of `G₁`.
/// The actions on the shared set must agree: `f.map_b = f'.map_a`.
pub fn compose_h_m(f: &GafMorphism, inner: &GafMorphism) -> Result<GafMorphism> {
    let source = compose_h(f.source(), inner.source())?;
    let target = compose_h(f.target(), inner.target())?;
    if f.map_b() != inner.map_a() {
        return Err(Error::RestrictionViolated {
            detail: "the two factors act differently on the shared boundary".into(),
        });
    }
    let g1 = f.target();
    let inner_t = inner.target();
    let offset = target.vertex_count();
    let redirect = |y: usize| glue_inner(g1, inner_t, y);

    let mut map_v: Vec<usize> = (f.source().a_size()..f.source().vertex_count())
        .map(|x| f.vertex_image(x))
        .collect();
    map_v.extend(
        (inner.source().a_size()..inner.source().vertex_count()).map(|x| redirect(inner.vertex_image(x))),
    );
    let mut map_h: Vec<usize> = (0..f.source().h_size())
        .map(|h| match f.half_edge_image(h) {
            HalfEdgeImage::Vertex(y) => y,
            HalfEdgeImage::HalfEdge(k) => offset + k,
        })
        .collect();
    map_h.extend((0..inner.source().h_size()).map(|h| match inner.half_edge_image(h) {
        HalfEdgeImage::Vertex(y) => redirect(y),
        HalfEdgeImage::HalfEdge(k) => offset + g1.h_size() + k,
    }));
    GafMorphism::new(
        source,
        target,
        f.map_a().values().to_vec(),
        inner.map_b().values().to_vec(),
        map_v,
        map_h,
    )
    .map_err(|e| Error::internal("horizontal composite of morphisms", e))
}

/// The edge-free gaf with `ρ = φ`, for `φ: B → A`.
pub fn embed_finmap(phi: &FinMap) -> Gaf {
    Gaf::new(
        phi.codomain_size(),
        phi.domain_size(),
        0,
        phi.values().to_vec(),
        vec![],
        vec![],
    )
    .expect("a map of finite sets is a valid edge-free gaf")
}

/// `(A, A, ∅, ∅, Id_A, ∅, ∅)`.
pub fn identity_gaf(a: usize) -> Gaf {
    embed_finmap(&FinMap::identity(a))
}

/// The unique map `μ: 2 → 1`.
pub fn mu() -> FinMap {
    FinMap::new(vec![0, 0], 1, "mu").expect("in range")
}
