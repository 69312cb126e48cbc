//! Reductions by repeated single-edge collapse: unmarked leaves, bridges, and a
//! greedy reduction to a gaf in which no single edge can be collapsed.

use crate::gaf::Gaf;
use crate::morphism::{collapse_edges, compose_v, GafMorphism};
use crate::union_find::UnionFind;

/// Edges with an inner, unmarked endpoint of valence 1.
pub fn unmarked_leaves(g: &Gaf) -> Vec<usize> {
    let valence = g.valences();
    let is_free_leaf = |x: usize| !g.is_attaching(x) && !g.is_marked(x) && valence[x] == 1;
    g.edges()
        .iter()
        .enumerate()
        .filter(|(_, &e)| {
            let (x, y) = g.endpoints(e);
            is_free_leaf(x) || is_free_leaf(y)
        })
        .map(|(i, _)| i)
        .collect()
}

fn component_count_without(g: &Gaf, skip: usize) -> usize {
    let mut uf = UnionFind::new(g.vertex_count());
    for (i, &e) in g.edges().iter().enumerate() {
        if i != skip {
            let (x, y) = g.endpoints(e);
            uf.union(x, y);
        }
    }
    uf.labels().1
}

/// Separating non-loop edges whose endpoints are both unmarked inner vertices.
pub fn bridges(g: &Gaf) -> Vec<usize> {
    let components = g.realization_invariants().num_components;
    let free = |x: usize| !g.is_attaching(x) && !g.is_marked(x);
    g.edges()
        .iter()
        .enumerate()
        .filter(|&(i, &e)| {
            let (x, y) = g.endpoints(e);
            x != y && free(x) && free(y) && component_count_without(g, i) > components
        })
        .map(|(i, _)| i)
        .collect()
}

/// Edges whose collapse on their own is a valid morphism: non-loops not joining two
/// attaching vertices.
pub fn collapsible_edges(g: &Gaf) -> Vec<usize> {
    g.edges()
        .iter()
        .enumerate()
        .filter(|(_, &e)| {
            let (x, y) = g.endpoints(e);
            x != y && !(g.is_attaching(x) && g.is_attaching(y))
        })
        .map(|(i, _)| i)
        .collect()
}

pub fn is_collapse_free(g: &Gaf) -> bool {
    collapsible_edges(g).is_empty()
}

/// Collapses the first edge `pick` offers until it offers none.
fn iterate(g: &Gaf, pick: impl Fn(&Gaf) -> Option<usize>) -> (Gaf, GafMorphism) {
    let mut current = g.clone();
    let mut acc = GafMorphism::identity(g);
    while let Some(e) = pick(&current) {
        let (next, step) = collapse_edges(&current, &[e]).expect("single admissible edge collapses");
        acc = compose_v(&step, &acc).expect("consecutive collapses compose");
        current = next;
    }
    (current, acc)
}

/// Collapses unmarked leaves, smallest edge first, until every inner vertex of valence 1
/// is marked.
pub fn collapse_unmarked_leaves(g: &Gaf) -> (Gaf, GafMorphism) {
    iterate(g, |h| unmarked_leaves(h).first().copied())
}

/// Collapses bridges, smallest edge first, until none remain.
pub fn collapse_bridges(g: &Gaf) -> (Gaf, GafMorphism) {
    iterate(g, |h| bridges(h).first().copied())
}

/// Collapses single edges, smallest first, until the gaf is collapse-free.
pub fn reduce(g: &Gaf) -> (Gaf, GafMorphism) {
    iterate(g, |h| collapsible_edges(h).first().copied())
}
