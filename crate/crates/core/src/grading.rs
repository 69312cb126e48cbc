//! Gradings by vertices-plus-edges and by collapsed edges, colorings, leaves and spines.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finmap::FinMap;
use crate::gaf::Gaf;
use crate::morphism::{collapse_edges, compose_v, GafMorphism, HalfEdgeImage};

/// An element of `V ⊔ E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VeElement {
    Vertex(usize),
    Edge(usize),
}

/// `#(V ⊔ E)`.
pub fn ve(g: &Gaf) -> usize {
    g.v_size() + g.e_size()
}

/// `V ⊔ E` with inner vertices first, then edges in canonical order.
pub fn ve_elements(g: &Gaf) -> Vec<VeElement> {
    (0..g.v_size())
        .map(VeElement::Vertex)
        .chain((0..g.e_size()).map(VeElement::Edge))
        .collect()
}

/// The edges of the source collapsed by `f`.
pub fn ce(f: &GafMorphism) -> Vec<usize> {
    f.collapsed_edges()
}

/// `#CE(f)`.
pub fn grade(f: &GafMorphism) -> usize {
    ce(f).len()
}

/// Fibre cardinalities of the marking, one per color.
pub fn grade_s(fm: &ColoredMorphism) -> Vec<usize> {
    let mut out = vec![0; fm.palette];
    for &c in fm.mark.values() {
        out[c] += 1;
    }
    out
}

/// A gaf with a color in `S` on every inner vertex and every edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawColoring", into = "RawColoring")]
pub struct Coloring {
    base: Gaf,
    palette: usize,
    color: FinMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawColoring {
    pub gaf: Gaf,
    pub palette: usize,
    pub color_v: Vec<usize>,
    pub color_e: Vec<usize>,
}

impl TryFrom<RawColoring> for Coloring {
    type Error = Error;

    fn try_from(raw: RawColoring) -> Result<Self> {
        Coloring::new(raw.gaf, raw.palette, raw.color_v, raw.color_e)
    }
}

impl From<Coloring> for RawColoring {
    fn from(c: Coloring) -> Self {
        let v = c.base.v_size();
        RawColoring {
            color_v: c.color.values()[..v].to_vec(),
            color_e: c.color.values()[v..].to_vec(),
            gaf: c.base,
            palette: c.palette,
        }
    }
}

impl Coloring {
    pub fn new(base: Gaf, palette: usize, color_v: Vec<usize>, color_e: Vec<usize>) -> Result<Self> {
        for (map, found, expected) in [
            ("color_v", color_v.len(), base.v_size()),
            ("color_e", color_e.len(), base.e_size()),
        ] {
            if found != expected {
                return Err(Error::LengthMismatch { map, expected, found });
            }
        }
        let color = FinMap::new([color_v, color_e].concat(), palette, "color")?;
        Ok(Coloring { base, palette, color })
    }

    pub fn base(&self) -> &Gaf {
        &self.base
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    /// Colors of `V ⊔ E`, vertices first.
    pub fn color(&self) -> &FinMap {
        &self.color
    }

    pub fn color_of(&self, element: VeElement) -> usize {
        match element {
            VeElement::Vertex(j) => self.color.get(j),
            VeElement::Edge(i) => self.color.get(self.base.v_size() + i),
        }
    }
}

/// A morphism with a color on each collapsed edge, in the order of [`ce`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawColoredMorphism", into = "RawColoredMorphism")]
pub struct ColoredMorphism {
    underlying: GafMorphism,
    palette: usize,
    mark: FinMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawColoredMorphism {
    pub morphism: GafMorphism,
    pub palette: usize,
    pub mark: Vec<usize>,
}

impl TryFrom<RawColoredMorphism> for ColoredMorphism {
    type Error = Error;

    fn try_from(raw: RawColoredMorphism) -> Result<Self> {
        ColoredMorphism::new(raw.morphism, raw.palette, raw.mark)
    }
}

impl From<ColoredMorphism> for RawColoredMorphism {
    fn from(c: ColoredMorphism) -> Self {
        RawColoredMorphism {
            morphism: c.underlying,
            palette: c.palette,
            mark: c.mark.values().to_vec(),
        }
    }
}

impl ColoredMorphism {
    pub fn new(underlying: GafMorphism, palette: usize, mark: Vec<usize>) -> Result<Self> {
        let expected = grade(&underlying);
        if mark.len() != expected {
            return Err(Error::LengthMismatch {
                map: "mark",
                expected,
                found: mark.len(),
            });
        }
        let mark = FinMap::new(mark, palette, "mark")?;
        Ok(ColoredMorphism {
            underlying,
            palette,
            mark,
        })
    }

    /// Every collapsed edge gets the same color.
    pub fn constant(underlying: GafMorphism, palette: usize, color: usize) -> Result<Self> {
        let n = grade(&underlying);
        ColoredMorphism::new(underlying, palette, vec![color; n])
    }

    pub fn underlying(&self) -> &GafMorphism {
        &self.underlying
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn mark(&self) -> &FinMap {
        &self.mark
    }

    /// Color of a source edge, if it is collapsed.
    pub fn color_of_edge(&self, edge: usize) -> Option<usize> {
        ce(&self.underlying)
            .iter()
            .position(|&e| e == edge)
            .map(|i| self.mark.get(i))
    }

    /// The distinguished color `•`, the last one of the palette.
    pub fn bullet(&self) -> Result<usize> {
        self.palette.checked_sub(1).ok_or(Error::NoDistinguishedColor)
    }
}

/// Source edge index carried by each edge of the target of `f`.
fn edge_preimages(f: &GafMorphism) -> Vec<usize> {
    let src_edge = f.source().edge_index_of_half_edges();
    let tgt_edge = f.target().edge_index_of_half_edges();
    let mut out = vec![usize::MAX; f.target().e_size()];
    for h in 0..f.source().h_size() {
        if let HalfEdgeImage::HalfEdge(k) = f.half_edge_image(h) {
            out[tgt_edge[k]] = src_edge[h];
        }
    }
    out
}

/// Vertical composite of colored morphisms; each collapsed edge keeps its color.
pub fn compose_colored_v(g: &ColoredMorphism, f: &ColoredMorphism) -> Result<ColoredMorphism> {
    if g.palette != f.palette {
        return Err(Error::PreconditionViolated("palettes differ".into()));
    }
    let composite = compose_v(&g.underlying, &f.underlying)?;
    let carried = edge_preimages(&f.underlying);
    let mut color = vec![None; f.underlying.source().e_size()];
    for (i, e) in ce(&f.underlying).into_iter().enumerate() {
        color[e] = Some(f.mark.get(i));
    }
    for (i, e) in ce(&g.underlying).into_iter().enumerate() {
        color[carried[e]] = Some(g.mark.get(i));
    }
    let mark = ce(&composite)
        .into_iter()
        .map(|e| color[e].ok_or_else(|| Error::Internal("uncolored collapsed edge".into())))
        .collect::<Result<Vec<_>>>()?;
    ColoredMorphism::new(composite, f.palette, mark)
}

/// Orientations `h` of an edge with `σ(h)` an inner vertex of valence 1.
pub fn is_leaf(g: &Gaf, edge: usize) -> Vec<usize> {
    let Some(&(h1, h2)) = g.edges().get(edge) else {
        return Vec::new();
    };
    let valence = g.valences();
    [h1, h2]
        .into_iter()
        .filter(|&h| {
            let x = g.sigma().get(h);
            !g.is_attaching(x) && valence[x] == 1
        })
        .collect()
}

/// The special leaf of a leaf-like colored morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafData {
    /// The edge `e_ℓ` in the source's edge order.
    pub edge: usize,
    /// The orientation `h_ℓ`, based at the leaf vertex.
    pub half_edge: usize,
    /// The leaf vertex `v_ℓ` in `A ⊔ V` encoding.
    pub vertex: usize,
}

/// Whether the `•`-fibre is a single edge which is a leaf of the tree collapsed onto
/// its image vertex. Returns the leaf data when it is.
pub fn is_leaf_like(fm: &ColoredMorphism) -> Result<Option<LeafData>> {
    let bullet = fm.bullet()?;
    let f = &fm.underlying;
    let collapsed = ce(f);
    let fibre: Vec<usize> = (0..collapsed.len())
        .filter(|&i| fm.mark.get(i) == bullet)
        .map(|i| collapsed[i])
        .collect();
    let [edge] = fibre[..] else {
        return Ok(None);
    };
    let src = f.source();
    let (h1, h2) = src.edges()[edge];
    let HalfEdgeImage::Vertex(image) = f.half_edge_image(h1) else {
        return Err(Error::Internal("collapsed edge does not land on a vertex".into()));
    };
    let sub = f.preimage_gaf(image)?;
    let leaf = [h1, h2].into_iter().find(|&h| {
        let x = src.sigma().get(h);
        let inside = sub.half_edges.iter().filter(|&&k| src.sigma().get(k) == x).count();
        !src.is_attaching(x) && inside == 1
    });
    Ok(leaf.map(|h| LeafData {
        edge,
        half_edge: h,
        vertex: src.sigma().get(h),
    }))
}

/// The factorization `f = f_s ∘ f_b` of a leaf-like collapse of a tree onto one vertex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spine {
    pub leaf: LeafData,
    /// `E_s`, in the source's edge order.
    pub edges: Vec<usize>,
    /// Collapses `E ∖ E_s`.
    pub f_b: ColoredMorphism,
    /// Collapses the image of `E_s`.
    pub f_s: ColoredMorphism,
}

/// Edges of the unique path between two vertices of a tree.
fn tree_path(g: &Gaf, from: usize, to: usize) -> Vec<usize> {
    let n = g.vertex_count();
    let edges = g.edges();
    let mut via: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::from([from]);
    seen[from] = true;
    while let Some(x) = queue.pop_front() {
        for (i, &(h1, h2)) in edges.iter().enumerate() {
            let (p, q) = g.endpoints((h1, h2));
            for (s, t) in [(p, q), (q, p)] {
                if s == x && !seen[t] {
                    seen[t] = true;
                    via[t] = Some((x, i));
                    queue.push_back(t);
                }
            }
        }
    }
    let mut path = Vec::new();
    let mut x = to;
    while let Some((prev, e)) = via[x] {
        path.push(e);
        x = prev;
    }
    path.sort_unstable();
    path
}

/// Factors a leaf-like collapse of a tree onto a single vertex through its spine.
pub fn spine(fm: &ColoredMorphism) -> Result<Spine> {
    let precondition = |s: &str| Err(Error::PreconditionViolated(s.to_string()));
    let Some(leaf) = is_leaf_like(fm)? else {
        return precondition("colored morphism is not leaf-like");
    };
    let f = &fm.underlying;
    let (src, tgt) = (f.source(), f.target());
    if tgt.vertex_count() != 1 || tgt.h_size() != 0 {
        return precondition("target is not a single vertex");
    }
    if !src.is_tree() {
        return precondition("source is not a tree");
    }
    let edges = if tgt.a_size() == 1 {
        if src.a_size() != 1 {
            return precondition("source must have exactly one attaching vertex");
        }
        tree_path(src, 0, leaf.vertex)
    } else {
        vec![leaf.edge]
    };
    let rest: Vec<usize> = (0..src.e_size()).filter(|e| !edges.contains(e)).collect();
    let (mid, f_b) = collapse_edges(src, &rest)?;
    let offset = tgt.vertex_count();
    debug_assert_eq!(offset, 1);
    let f_s = GafMorphism::new(
        mid.clone(),
        tgt.clone(),
        f.map_a().values().to_vec(),
        f.map_b().values().to_vec(),
        vec![0; mid.v_size()],
        vec![0; mid.h_size()],
    )?;
    if compose_v(&f_s, &f_b)? != *f {
        return Err(Error::Internal("spine factorization does not recompose".into()));
    }
    let color = |e: usize| fm.color_of_edge(e).expect("every source edge is collapsed");
    let fb_mark = ce(&f_b).into_iter().map(color).collect();
    let carried = edge_preimages(&f_b);
    let fs_mark = ce(&f_s).into_iter().map(|e| color(carried[e])).collect();
    Ok(Spine {
        leaf,
        edges,
        f_b: ColoredMorphism::new(f_b, fm.palette, fb_mark)?,
        f_s: ColoredMorphism::new(f_s, fm.palette, fs_mark)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaf::fixtures::*;
    use crate::generators::*;
    use crate::monoidal::{compose_h_m, embed_finmap, tensor, tensor_m};

    fn collapse_all(g: &Gaf) -> GafMorphism {
        let all: Vec<usize> = (0..g.e_size()).collect();
        collapse_edges(g, &all).unwrap().1
    }

    #[test]
    fn ve_examples() {
        assert_eq!(ve(&gen_ft()), 1);
        assert_eq!(ve(&gen_fe()), 1);
        assert_eq!(ve(&Gaf::empty()), 0);
        assert_eq!(ve_elements(&gen_g_beta1()), vec![VeElement::Vertex(0), VeElement::Edge(0)]);
        let phi = FinMap::new(vec![0, 2, 2], 3, "phi").unwrap();
        assert_eq!(ve(&embed_finmap(&phi)), 0);
    }

    #[test]
    fn grade_examples() {
        assert_eq!(ce(&gen_beta()), vec![0]);
        assert_eq!(grade(&gen_beta()), 1);
        assert_eq!(grade(&gen_tbeta()), 1);
        assert_eq!(grade(&GafMorphism::identity(&two_cycle())), 0);
        let (_, f) = collapse_edges(&two_cycle(), &[0]).unwrap();
        assert_eq!(ce(&f), vec![0]);
        let fm = ColoredMorphism::constant(gen_tbeta(), 2, 0).unwrap();
        assert_eq!(grade_s(&fm), vec![1, 0]);
    }

    #[test]
    fn grades_add() {
        let p = path(3);
        let (q, f) = collapse_edges(&p, &[0]).unwrap();
        let (_, g) = collapse_edges(&q, &[1]).unwrap();
        assert_eq!(grade(&compose_v(&g, &f).unwrap()), 2);
        let t = tensor_m(&gen_beta(), &f).unwrap();
        assert_eq!(grade(&t), 2);
        let id1 = GafMorphism::identity(&crate::monoidal::identity_gaf(1));
        let h = compose_h_m(&gen_beta(), &tensor_m(&id1, &id1).unwrap());
        assert!(h.is_err());
        let h = compose_h_m(&gen_beta(), &gen_beta()).unwrap();
        assert_eq!(grade(&h), 2);
        assert_eq!(ve(&tensor(&p, &q)), ve(&p) + ve(&q));
    }

    #[test]
    fn colored_composition_keeps_colors() {
        let p = path(2);
        let (q, f) = collapse_edges(&p, &[1]).unwrap();
        let (_, g) = collapse_edges(&q, &[0]).unwrap();
        let f = ColoredMorphism::new(f, 3, vec![2]).unwrap();
        let g = ColoredMorphism::new(g, 3, vec![0]).unwrap();
        let gf = compose_colored_v(&g, &f).unwrap();
        assert_eq!(gf.mark().values(), &[0, 2]);
        assert_eq!(grade_s(&gf), vec![1, 0, 1]);
    }

    #[test]
    fn coloring_json() {
        let c = Coloring::new(path(1), 2, vec![0, 1], vec![1]).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert!(text.contains("\"color_e\":[1]"));
        let back: Coloring = serde_json::from_str(&text).unwrap();
        assert_eq!(back.color_of(VeElement::Edge(0)), 1);
        assert!(Coloring::new(path(1), 2, vec![0], vec![1]).is_err());
    }

    #[test]
    fn leaf_examples() {
        assert_eq!(is_leaf(&gen_g_tbeta1(), 0), vec![0, 1]);
        assert!(is_leaf(&loop_gaf(), 0).is_empty());
        assert_eq!(is_leaf(&gen_g_beta1(), 0), vec![H_BETA]);
    }

    #[test]
    fn leaf_like_examples() {
        let beta = ColoredMorphism::constant(gen_beta(), 1, 0).unwrap();
        let leaf = is_leaf_like(&beta).unwrap().unwrap();
        assert_eq!(leaf.vertex, 1);
        assert_eq!(leaf.half_edge, H_BETA);

        let f = collapse_all(&path(3));
        let middle = ColoredMorphism::new(f.clone(), 2, vec![0, 1, 0]).unwrap();
        assert_eq!(is_leaf_like(&middle).unwrap(), None);
        let end = ColoredMorphism::new(f, 2, vec![1, 0, 0]).unwrap();
        assert_eq!(is_leaf_like(&end).unwrap().unwrap().vertex, 0);

        let id = ColoredMorphism::new(GafMorphism::identity(&path(2)), 1, vec![]).unwrap();
        assert_eq!(is_leaf_like(&id).unwrap(), None);
        let empty = ColoredMorphism::new(GafMorphism::identity(&path(2)), 0, vec![]).unwrap();
        assert_eq!(is_leaf_like(&empty), Err(Error::NoDistinguishedColor));
    }

    #[test]
    fn leaf_inside_preimage_not_whole_graph() {
        // Path of 2 edges; only the first edge collapses. Its far end has valence 2 in
        // the graph but valence 1 in the collapsed tree.
        let (_, f) = collapse_edges(&path(2), &[1]).unwrap();
        let fm = ColoredMorphism::constant(f, 1, 0).unwrap();
        let leaf = is_leaf_like(&fm).unwrap().unwrap();
        assert_eq!(leaf.half_edge, 2);
    }

    #[test]
    fn spine_inner_case() {
        let fm = ColoredMorphism::constant(gen_tbeta(), 1, 0).unwrap();
        let s = spine(&fm).unwrap();
        assert_eq!(s.edges, vec![0]);
        assert_eq!(s.f_b.underlying(), &GafMorphism::identity(&gen_g_tbeta1()));
        assert_eq!(compose_v(s.f_s.underlying(), s.f_b.underlying()).unwrap(), gen_tbeta());
    }

    fn rooted(edges_from: &[(usize, usize)], v: usize) -> Gaf {
        let mut sigma = Vec::new();
        let mut upsilon = Vec::new();
        for (i, &(x, y)) in edges_from.iter().enumerate() {
            sigma.extend([x, y]);
            upsilon.extend([2 * i + 1, 2 * i]);
        }
        Gaf::new(1, 0, v, vec![], sigma, upsilon).unwrap()
    }

    #[test]
    fn spine_attaching_case() {
        // x=0 - 1 - 2 - 3 with a branch 2 - 4; the edge 2-3 is the special leaf.
        let g = rooted(&[(0, 1), (1, 2), (2, 3), (2, 4)], 4);
        let f = collapse_all(&g);
        let fm = ColoredMorphism::new(f.clone(), 2, vec![0, 0, 1, 0]).unwrap();
        let s = spine(&fm).unwrap();
        assert_eq!(s.edges, vec![0, 1, 2]);
        assert_eq!(ce(s.f_b.underlying()), vec![3]);
        assert_eq!(grade_s(&s.f_s), vec![2, 1]);
        assert_eq!(compose_v(s.f_s.underlying(), s.f_b.underlying()).unwrap(), f);

        let g = rooted(&[(0, 1), (0, 2)], 2);
        let fm = ColoredMorphism::new(collapse_all(&g), 2, vec![1, 0]).unwrap();
        assert_eq!(spine(&fm).unwrap().edges, vec![0]);
    }

    #[test]
    fn spine_preconditions() {
        let (_, f) = collapse_edges(&two_cycle(), &[0]).unwrap();
        let fm = ColoredMorphism::constant(f, 1, 0).unwrap();
        assert!(matches!(spine(&fm), Err(Error::PreconditionViolated(_))));
    }
}
