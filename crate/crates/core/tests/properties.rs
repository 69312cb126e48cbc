use grcob::catalog::canonical_form;
use grcob::cospan::{compose_nf, realize_nf};
use grcob::grading::{ce, grade, ve};
use grcob::monoidal::{compose_h, tensor};
use grcob::morphism::{collapse_edges, compose_v, HalfEdgeImage};
use grcob::normalize::{collapse_bridges, collapse_unmarked_leaves, reduce};
use grcob::{is_isomorphic, Gaf, GafMorphism};
use proptest::prelude::*;
use proptest::sample::subsequence;

/// Gafs with the given boundary, up to `max_v` inner vertices and `max_e` edges.
fn gaf(a: usize, b: usize, max_v: usize, max_e: usize) -> impl Strategy<Value = Gaf> {
    (0..=max_v, 0..=max_e)
        .prop_filter("needs a vertex for every marking or edge", move |&(v, e)| a + v > 0 || (b == 0 && e == 0))
        .prop_flat_map(move |(v, e)| {
            let n = a + v;
            (
                proptest::collection::vec(0..n.max(1), b),
                proptest::collection::vec(0..n.max(1), 2 * e),
            )
                .prop_map(move |(rho, sigma)| {
                    let upsilon = (0..sigma.len()).map(|k| k ^ 1).collect();
                    Gaf::new(a, b, v, rho, sigma, upsilon).unwrap()
                })
        })
}

fn any_gaf() -> impl Strategy<Value = Gaf> {
    (0..=2usize, 0..=2usize).prop_flat_map(|(a, b)| gaf(a, b, 3, 4))
}

/// A gaf together with random permutations of its inner vertices and half-edges.
fn gaf_and_relabeling() -> impl Strategy<Value = (Gaf, Vec<usize>, Vec<usize>)> {
    any_gaf().prop_flat_map(|g| {
        let vperm = Just((0..g.v_size()).collect::<Vec<_>>()).prop_shuffle();
        let hperm = Just((0..g.h_size()).collect::<Vec<_>>()).prop_shuffle();
        (Just(g), vperm, hperm)
    })
}

fn gaf_and_edges() -> impl Strategy<Value = (Gaf, Vec<usize>)> {
    any_gaf().prop_flat_map(|g| {
        let e = g.e_size();
        (Just(g), subsequence((0..e).collect::<Vec<_>>(), 0..=e))
    })
}

/// Index in `f`'s target of a surviving source edge.
fn image_edge(f: &GafMorphism, g: &Gaf, edge: usize) -> usize {
    let (h, _) = g.edges()[edge];
    match f.half_edge_image(h) {
        HalfEdgeImage::HalfEdge(k) => f.target().edge_index_of_half_edges()[k],
        HalfEdgeImage::Vertex(_) => panic!("edge {edge} was collapsed"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_form_ignores_labels((g, vperm, hperm) in gaf_and_relabeling()) {
        let r = g.relabeled(&vperm, &hperm);
        prop_assert_eq!(canonical_form(&r), canonical_form(&g));
        prop_assert!(is_isomorphic(&g, &r).is_some());
    }

    #[test]
    fn canonical_form_decides_isomorphism(g in gaf(1, 1, 2, 2), h in gaf(1, 1, 2, 2)) {
        prop_assert_eq!(canonical_form(&g) == canonical_form(&h), is_isomorphic(&g, &h).is_some());
    }

    #[test]
    fn json_round_trip((g, edges) in gaf_and_edges()) {
        let back: Gaf = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        prop_assert_eq!(&back, &g);
        if let Ok((_, f)) = collapse_edges(&g, &edges) {
            let back: GafMorphism = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
            prop_assert_eq!(back, f);
        }
    }

    #[test]
    fn collapse_preserves_normal_form((g, edges) in gaf_and_edges()) {
        if let Ok((t, f)) = collapse_edges(&g, &edges) {
            prop_assert_eq!(realize_nf(&t), realize_nf(&g));
            prop_assert_eq!(ce(&f), edges.clone());
            prop_assert_eq!(grade(&f), edges.len());
        }
    }

    #[test]
    fn collapses_compose((g, edges) in gaf_and_edges(), split in 0usize..=4) {
        // Collapsing a prefix, then the rest in the result, agrees with collapsing all at once.
        let Ok((all, _)) = collapse_edges(&g, &edges) else { return Ok(()) };
        let (first, rest) = edges.split_at(split.min(edges.len()));
        let (mid, f) = collapse_edges(&g, first).unwrap();
        let later: Vec<usize> = rest.iter().map(|&e| image_edge(&f, &g, e)).collect();
        let (end, f2) = collapse_edges(&mid, &later).unwrap();
        prop_assert!(is_isomorphic(&end, &all).is_some());
        prop_assert_eq!(ce(&compose_v(&f2, &f).unwrap()), edges);
    }

    #[test]
    fn horizontal_composition_is_associative(
        x in gaf(1, 2, 2, 2), y in gaf(2, 1, 2, 2), z in gaf(1, 2, 2, 2),
    ) {
        let left = compose_h(&compose_h(&x, &y).unwrap(), &z).unwrap();
        let right = compose_h(&x, &compose_h(&y, &z).unwrap()).unwrap();
        prop_assert!(is_isomorphic(&left, &right).is_some());
    }

    #[test]
    fn ve_is_additive(x in gaf(2, 1, 3, 3), y in gaf(1, 2, 3, 3)) {
        prop_assert_eq!(ve(&compose_h(&x, &y).unwrap()), ve(&x) + ve(&y));
        prop_assert_eq!(ve(&tensor(&x, &y)), ve(&x) + ve(&y));
        let lhs = realize_nf(&compose_h(&x, &y).unwrap());
        prop_assert_eq!(lhs, compose_nf(&realize_nf(&x), &realize_nf(&y)).unwrap());
    }

    #[test]
    fn normalizations_are_idempotent(g in any_gaf()) {
        for step in [collapse_unmarked_leaves, collapse_bridges, reduce] {
            let (r, f) = step(&g);
            prop_assert_eq!(&step(&r).0, &r);
            prop_assert_eq!(grade(&f), g.e_size() - r.e_size());
            prop_assert_eq!(realize_nf(&r), realize_nf(&g));
        }
    }
}
