//! Isomorphisms of gafs by backtracking over half-edge and vertex bijections.
//!
//! Search assigns edges one at a time (both orientations), which fixes the images of
//! their endpoints; isolated vertices are matched last. Vertices are pruned by
//! (valence, loop count, marking count).

use itertools::Itertools;

use crate::gaf::Gaf;
use crate::morphism::GafMorphism;

/// Whether isomorphisms must restrict to the identity on `A` and `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryMode {
    /// Identity on `A` and `B` (morphisms inside a hom-category).
    Fixed,
    /// Any bijections of `A` and `B`.
    Free,
}

/// An isomorphism `G → G'` fixing `A` and `B` pointwise, if one exists.
pub fn is_isomorphic(g: &Gaf, other: &Gaf) -> Option<GafMorphism> {
    isomorphisms(g, other, BoundaryMode::Fixed, Some(1)).pop()
}

/// The full automorphism group of `G` as a list; the identity comes first.
pub fn automorphisms(g: &Gaf, mode: BoundaryMode) -> Vec<GafMorphism> {
    isomorphisms(g, g, mode, None)
}

/// Isomorphisms `G → G'` acting on the boundary by the given permutations.
pub fn isomorphisms_over(
    g: &Gaf,
    other: &Gaf,
    on_a: &[usize],
    on_b: &[usize],
    limit: Option<usize>,
) -> Vec<GafMorphism> {
    if !same_shape(g, other) || on_a.len() != g.a_size() || on_b.len() != g.b_size() {
        return Vec::new();
    }
    let mut search = IsoSearch::new(g, other, on_a.to_vec(), on_b.to_vec(), limit);
    search.run();
    search.out
}

/// Isomorphisms `G → G'`, at most `limit` of them.
pub fn isomorphisms(
    g: &Gaf,
    other: &Gaf,
    mode: BoundaryMode,
    limit: Option<usize>,
) -> Vec<GafMorphism> {
    if !same_shape(g, other) {
        return Vec::new();
    }
    let a_perms: Vec<Vec<usize>> = match mode {
        BoundaryMode::Fixed => vec![(0..g.a_size()).collect()],
        BoundaryMode::Free => (0..g.a_size()).permutations(g.a_size()).collect(),
    };
    let b_perms: Vec<Vec<usize>> = match mode {
        BoundaryMode::Fixed => vec![(0..g.b_size()).collect()],
        BoundaryMode::Free => (0..g.b_size()).permutations(g.b_size()).collect(),
    };
    let mut out = Vec::new();
    for on_a in &a_perms {
        for on_b in &b_perms {
            let remaining = limit.map(|l| l - out.len());
            out.extend(isomorphisms_over(g, other, on_a, on_b, remaining));
            if limit.is_some_and(|l| out.len() >= l) {
                return out;
            }
        }
    }
    out
}

fn same_shape(g: &Gaf, other: &Gaf) -> bool {
    g.a_size() == other.a_size()
        && g.b_size() == other.b_size()
        && g.v_size() == other.v_size()
        && g.h_size() == other.h_size()
}

struct IsoSearch<'a> {
    g: &'a Gaf,
    t: &'a Gaf,
    on_b: Vec<usize>,
    edges: Vec<(usize, usize)>,
    vmap: Vec<Option<usize>>,
    vinv: Vec<Option<usize>>,
    hmap: Vec<usize>,
    hused: Vec<bool>,
    sig_g: Vec<(usize, usize, usize)>,
    sig_t: Vec<(usize, usize, usize)>,
    marks_t: Vec<Vec<usize>>,
    limit: Option<usize>,
    out: Vec<GafMorphism>,
}

fn vertex_signatures(g: &Gaf) -> Vec<(usize, usize, usize)> {
    let valence = g.valences();
    let mut loops = vec![0; g.vertex_count()];
    for (h1, h2) in g.edges() {
        if g.sigma().get(h1) == g.sigma().get(h2) {
            loops[g.sigma().get(h1)] += 1;
        }
    }
    (0..g.vertex_count())
        .map(|x| (valence[x], loops[x], g.markings_at(x).len()))
        .collect()
}

impl<'a> IsoSearch<'a> {
    fn new(g: &'a Gaf, t: &'a Gaf, on_a: Vec<usize>, on_b: Vec<usize>, limit: Option<usize>) -> Self {
        let n = g.vertex_count();
        let mut vmap = vec![None; n];
        let mut vinv = vec![None; n];
        for (x, &y) in on_a.iter().enumerate() {
            vmap[x] = Some(y);
            vinv[y] = Some(x);
        }
        IsoSearch {
            g,
            t,
            on_b,
            edges: g.edges(),
            vmap,
            vinv,
            hmap: vec![usize::MAX; g.h_size()],
            hused: vec![false; g.h_size()],
            sig_g: vertex_signatures(g),
            sig_t: vertex_signatures(t),
            marks_t: (0..t.vertex_count()).map(|y| t.markings_at(y)).collect(),
            limit,
            out: Vec::new(),
        }
    }

    fn done(&self) -> bool {
        self.limit.is_some_and(|l| self.out.len() >= l)
    }

    fn run(&mut self) {
        // Attaching vertices are pinned by the boundary permutation; check them up front.
        for x in 0..self.g.a_size() {
            let y = self.vmap[x].expect("pinned");
            if !self.compatible(x, y) {
                return;
            }
        }
        self.edge(0);
    }

    /// Can vertex `x` of the source go to vertex `y` of the target?
    fn compatible(&self, x: usize, y: usize) -> bool {
        if self.sig_g[x] != self.sig_t[y] {
            return false;
        }
        let mut moved: Vec<usize> = self.g.markings_at(x).iter().map(|&b| self.on_b[b]).collect();
        moved.sort_unstable();
        moved == self.marks_t[y]
    }

    /// Tries to extend the vertex map with `x ↦ y`; returns whether a new pair was added.
    fn bind(&mut self, x: usize, y: usize) -> Option<bool> {
        match (self.vmap[x], self.vinv[y]) {
            (Some(y0), _) => (y0 == y).then_some(false),
            (None, Some(_)) => None,
            (None, None) => {
                if x < self.g.a_size() || y < self.t.a_size() || !self.compatible(x, y) {
                    return None;
                }
                self.vmap[x] = Some(y);
                self.vinv[y] = Some(x);
                Some(true)
            }
        }
    }

    fn unbind(&mut self, x: usize) {
        if let Some(y) = self.vmap[x].take() {
            self.vinv[y] = None;
        }
    }

    fn edge(&mut self, i: usize) {
        if self.done() {
            return;
        }
        if i == self.edges.len() {
            self.isolated(self.g.a_size());
            return;
        }
        let (h1, h2) = self.edges[i];
        let (x1, x2) = (self.g.sigma().get(h1), self.g.sigma().get(h2));
        for k in 0..self.t.h_size() {
            if self.hused[k] {
                continue;
            }
            let k2 = self.t.upsilon().get(k);
            let (y1, y2) = (self.t.sigma().get(k), self.t.sigma().get(k2));
            let Some(new1) = self.bind(x1, y1) else { continue };
            let Some(new2) = self.bind(x2, y2) else {
                if new1 {
                    self.unbind(x1);
                }
                continue;
            };
            self.hused[k] = true;
            self.hused[k2] = true;
            self.hmap[h1] = k;
            self.hmap[h2] = k2;
            self.edge(i + 1);
            self.hused[k] = false;
            self.hused[k2] = false;
            if new2 {
                self.unbind(x2);
            }
            if new1 {
                self.unbind(x1);
            }
            if self.done() {
                return;
            }
        }
    }

    /// Matches the vertices no edge touched.
    fn isolated(&mut self, x: usize) {
        if self.done() {
            return;
        }
        if x == self.g.vertex_count() {
            self.emit();
            return;
        }
        if self.vmap[x].is_some() {
            self.isolated(x + 1);
            return;
        }
        for y in self.t.a_size()..self.t.vertex_count() {
            if let Some(true) = self.bind(x, y) {
                self.isolated(x + 1);
                self.unbind(x);
            }
        }
    }

    fn emit(&mut self) {
        let (g, t) = (self.g, self.t);
        let map_v = (g.a_size()..g.vertex_count())
            .map(|x| self.vmap[x].expect("complete"))
            .collect();
        let offset = t.vertex_count();
        let map_h = self.hmap.iter().map(|&k| offset + k).collect();
        let map_a = (0..g.a_size()).map(|x| self.vmap[x].expect("pinned")).collect();
        match GafMorphism::new(g.clone(), t.clone(), map_a, self.on_b.clone(), map_v, map_h) {
            Ok(f) => self.out.push(f),
            Err(e) => debug_assert!(false, "isomorphism search produced invalid map: {e}"),
        }
    }
}
