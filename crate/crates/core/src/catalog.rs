//! Canonical forms, bounded enumeration, nerves of finite truncations, expansion moves
//! and zig-zag reachability.
//!
//! The canonical form of a gaf is its least relabeling (inner vertices and half-edges;
//! `A` and `B` stay fixed) in the order `(ρ, σ, υ)`. For a fixed vertex labeling the best
//! half-edge layout is forced: `σ` lists each vertex once per incident half-edge in
//! label order, and `υ` pairs every slot greedily with the smallest slot still free.
//! Marked vertices get the first inner labels in order of first marking, so only
//! reorderings of unmarked vertices of equal valence need to be compared.

use std::collections::{BTreeSet, HashMap, VecDeque};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaf::Gaf;
use crate::morphism::{collapse_edges, compose_v, morphisms_between, GafMorphism};
use crate::normalize::collapsible_edges;

/// A gaf given by vertex labels: markings, then edges as unordered endpoint pairs.
struct Layout {
    a: usize,
    b: usize,
    v: usize,
    rho: Vec<usize>,
    sigma: Vec<usize>,
    upsilon: Vec<usize>,
    /// Slot taken by each half-edge of the original gaf, when laid out from one.
    slot_of: Vec<usize>,
}

/// Lays out `edges` (endpoint labels with the original half-edges, if any) greedily.
fn lay_out(a: usize, b: usize, v: usize, rho: Vec<usize>, edges: &[(usize, usize, usize, usize)]) -> Layout {
    let n = a + v;
    let mut valence = vec![0usize; n];
    // Edge lists per unordered label pair, with the original half-edge at each end.
    let mut by_pair: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
    for &(x, y, hx, hy) in edges {
        valence[x] += 1;
        valence[y] += 1;
        let (key, ends) = if x <= y { ((x, y), (hx, hy)) } else { ((y, x), (hy, hx)) };
        by_pair.entry(key).or_default().push(ends);
    }
    for list in by_pair.values_mut() {
        list.reverse();
    }
    let h = 2 * edges.len();
    let mut start = vec![0usize; n + 1];
    for x in 0..n {
        start[x + 1] = start[x] + valence[x];
    }
    let mut next_free = start.clone();
    let mut sigma = vec![0; h];
    for x in 0..n {
        sigma[start[x]..start[x + 1]].fill(x);
    }
    let mut upsilon = vec![usize::MAX; h];
    let mut slot_of = vec![usize::MAX; h];
    for x in 0..n {
        while next_free[x] < start[x + 1] {
            let i = next_free[x];
            next_free[x] += 1;
            let y = (x..n)
                .find(|&y| by_pair.get(&(x, y)).is_some_and(|l| !l.is_empty()))
                .expect("free slot has an edge");
            let p = next_free[y];
            next_free[y] += 1;
            let (hx, hy) = by_pair.get_mut(&(x, y)).and_then(Vec::pop).expect("nonempty");
            upsilon[i] = p;
            upsilon[p] = i;
            if hx != usize::MAX {
                slot_of[hx] = i;
                slot_of[hy] = p;
            }
        }
    }
    Layout {
        a,
        b,
        v,
        rho,
        sigma,
        upsilon,
        slot_of,
    }
}

impl Layout {
    fn key(&self) -> (&[usize], &[usize], &[usize]) {
        (&self.rho, &self.sigma, &self.upsilon)
    }

    fn into_gaf(self) -> Gaf {
        Gaf::new(self.a, self.b, self.v, self.rho, self.sigma, self.upsilon).expect("layouts are valid gafs")
    }
}

fn layout_under(g: &Gaf, label: &[usize]) -> Layout {
    let rho = g.rho().values().iter().map(|&x| label[x]).collect();
    let edges: Vec<(usize, usize, usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(h1, h2)| (label[g.sigma().get(h1)], label[g.sigma().get(h2)], h1, h2))
        .collect();
    lay_out(g.a_size(), g.b_size(), g.v_size(), rho, &edges)
}

/// Vertex labelings (as maps `A ⊔ V → A ⊔ V`) that can attain the least key.
fn candidate_labelings(g: &Gaf) -> Vec<Vec<usize>> {
    let a = g.a_size();
    let n = g.vertex_count();
    let mut label: Vec<usize> = (0..n).map(|x| if x < a { x } else { usize::MAX }).collect();
    let mut next = a;
    for &x in g.rho().values() {
        if label[x] == usize::MAX {
            label[x] = next;
            next += 1;
        }
    }
    let valence = g.valences();
    let mut free: Vec<usize> = (a..n).filter(|&x| label[x] == usize::MAX).collect();
    free.sort_by_key(|&x| std::cmp::Reverse(valence[x]));
    let groups: Vec<Vec<usize>> = free
        .iter()
        .chunk_by(|&&x| valence[x])
        .into_iter()
        .map(|(_, grp)| grp.copied().collect())
        .collect();
    let mut out = vec![label];
    for grp in groups {
        let base = next;
        next += grp.len();
        out = out
            .into_iter()
            .flat_map(|lab| {
                grp.iter()
                    .copied()
                    .permutations(grp.len())
                    .map(move |order| {
                        let mut lab = lab.clone();
                        for (i, x) in order.into_iter().enumerate() {
                            lab[x] = base + i;
                        }
                        lab
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

/// The canonical form together with an isomorphism onto it.
pub fn canonical_labeling(g: &Gaf) -> (Gaf, GafMorphism) {
    let best_label = candidate_labelings(g)
        .into_iter()
        .map(|lab| (layout_under(g, &lab), lab))
        .min_by(|(x, _), (y, _)| x.key().cmp(&y.key()))
        .map(|(_, lab)| lab)
        .expect("at least one labeling");
    let layout = layout_under(g, &best_label);
    let offset = g.vertex_count();
    let map_h = layout.slot_of.iter().map(|&s| offset + s).collect();
    let map_v = best_label[g.a_size()..].to_vec();
    let canon = layout.into_gaf();
    let iso = GafMorphism::new(
        g.clone(),
        canon.clone(),
        (0..g.a_size()).collect(),
        (0..g.b_size()).collect(),
        map_v,
        map_h,
    )
    .expect("relabeling is an isomorphism");
    (canon, iso)
}

/// The least relabeling of `V` and `H` fixing `A` and `B` pointwise.
pub fn canonical_form(g: &Gaf) -> Gaf {
    candidate_labelings(g)
        .into_iter()
        .map(|lab| layout_under(g, &lab))
        .min_by(|x, y| x.key().cmp(&y.key()))
        .expect("at least one labeling")
        .into_gaf()
}

fn enumeration_order(x: &Gaf, y: &Gaf) -> std::cmp::Ordering {
    (x.v_size(), x.h_size(), x.rho().values(), x.sigma().values(), x.upsilon().values()).cmp(&(
        y.v_size(),
        y.h_size(),
        y.rho().values(),
        y.sigma().values(),
        y.upsilon().values(),
    ))
}

/// All isomorphism classes with `|A| = a`, `|B| = b`, at most `max_v` inner vertices and
/// at most `max_e` edges, as canonical forms sorted by `(v, h, ρ, σ, υ)`.
///
/// Candidates are laid out from a marking map and an edge multiset under the identity
/// labeling and kept only when they are already canonical.
pub fn enumerate_gafs(a: usize, b: usize, max_v: usize, max_e: usize) -> Vec<Gaf> {
    let mut jobs = Vec::new();
    for v in 0..=max_v {
        let n = a + v;
        let rhos: Vec<Vec<usize>> = (0..b).map(|_| 0..n).multi_cartesian_product().collect();
        let rhos = if b == 0 { vec![Vec::new()] } else { rhos };
        for rho in rhos {
            for e in 0..=max_e {
                jobs.push((v, rho.clone(), e));
            }
        }
    }
    let mut out: Vec<Gaf> = jobs
        .into_par_iter()
        .flat_map_iter(|(v, rho, e)| {
            let n = a + v;
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x..n).map(move |y| (x, y))).collect();
            pairs
                .into_iter()
                .combinations_with_replacement(e)
                .filter_map(move |edges| {
                    let ends: Vec<_> = edges.iter().map(|&(x, y)| (x, y, usize::MAX, usize::MAX)).collect();
                    let g = lay_out(a, b, v, rho.clone(), &ends).into_gaf();
                    (canonical_form(&g) == g).then_some(g)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_by(enumeration_order);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NerveMorphism {
    pub src: usize,
    pub tgt: usize,
    pub map: GafMorphism,
}

/// A finite truncation of the hom-category: objects, morphisms, composition, identities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NerveData {
    pub objects: Vec<Gaf>,
    pub morphisms: Vec<NerveMorphism>,
    /// `[i, j, k]` whenever morphism `j` follows `i`, with `k = j ∘ i`.
    pub compose: Vec<[usize; 3]>,
    pub identities: Vec<usize>,
}

/// The truncation on `enumerate_gafs(a, b, max_v, max_e)`; fails once more than
/// `max_morphisms` morphisms are found.
pub fn nerve_export(a: usize, b: usize, max_v: usize, max_e: usize, max_morphisms: usize) -> Result<NerveData> {
    let objects = enumerate_gafs(a, b, max_v, max_e);
    let pairs: Vec<(usize, usize)> = (0..objects.len())
        .flat_map(|i| (0..objects.len()).map(move |j| (i, j)))
        .collect();
    let found: Vec<Vec<NerveMorphism>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            morphisms_between(&objects[i], &objects[j])
                .into_iter()
                .map(|map| NerveMorphism { src: i, tgt: j, map })
                .collect()
        })
        .collect();
    let morphisms: Vec<NerveMorphism> = found.into_iter().flatten().collect();
    if morphisms.len() > max_morphisms {
        return Err(Error::BudgetExceeded { limit: max_morphisms });
    }
    let index: HashMap<&GafMorphism, usize> = morphisms.iter().enumerate().map(|(k, m)| (&m.map, k)).collect();
    let identities = objects
        .iter()
        .map(|g| {
            index
                .get(&GafMorphism::identity(g))
                .copied()
                .ok_or_else(|| Error::Internal("identity missing from nerve".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out_of: Vec<Vec<usize>> = vec![Vec::new(); objects.len()];
    for (k, m) in morphisms.iter().enumerate() {
        out_of[m.src].push(k);
    }
    let compose = morphisms
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, first)| {
            out_of[first.tgt]
                .iter()
                .map(|&j| {
                    let composite = compose_v(&morphisms[j].map, &first.map)?;
                    let k = index
                        .get(&composite)
                        .copied()
                        .ok_or_else(|| Error::Internal("composite missing from nerve".into()))?;
                    Ok([i, j, k])
                })
                .collect::<Vec<_>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NerveData {
        objects,
        morphisms,
        compose,
        identities,
    })
}

/// Single-edge expansions of `G` up to isomorphism, each with the morphism collapsing
/// the fresh edge back onto `G`.
///
/// At a vertex `x`, any subset of its incident half-edges and markings moves to a fresh
/// inner vertex `w` joined to `x` by a fresh edge. `w` is the last inner vertex and the
/// fresh half-edges are the last two, `x`'s side first.
pub fn expansions(g: &Gaf) -> Vec<(Gaf, GafMorphism)> {
    let (a, v, h) = (g.a_size(), g.v_size(), g.h_size());
    let w = a + v;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in 0..g.vertex_count() {
        let half_edges = g.half_edges_at(x);
        let markings = g.markings_at(x);
        let items = half_edges.len() + markings.len();
        for mask in 0u64..(1u64 << items) {
            let moved = |i: usize| mask >> i & 1 == 1;
            let mut sigma: Vec<usize> = g.sigma().values().to_vec();
            for (i, &k) in half_edges.iter().enumerate() {
                if moved(i) {
                    sigma[k] = w;
                }
            }
            sigma.extend([x, w]);
            let mut rho: Vec<usize> = g.rho().values().to_vec();
            for (i, &m) in markings.iter().enumerate() {
                if moved(half_edges.len() + i) {
                    rho[m] = w;
                }
            }
            let mut upsilon: Vec<usize> = g.upsilon().values().to_vec();
            upsilon.extend([h + 1, h]);
            let expanded = Gaf::new(a, g.b_size(), v + 1, rho, sigma, upsilon).expect("expansion is a valid gaf");
            if !seen.insert(canonical_form(&expanded)) {
                continue;
            }
            let offset = g.vertex_count();
            let map_v = (a..w).chain([x]).collect();
            let map_h = (0..h).map(|k| offset + k).chain([x, x]).collect();
            let back = GafMorphism::new(
                expanded.clone(),
                g.clone(),
                (0..a).collect(),
                (0..g.b_size()).collect(),
                map_v,
                map_h,
            )
            .expect("collapsing the fresh edge is a valid morphism");
            out.push((expanded, back));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    Collapse,
    Expand,
}

/// One move of a zig-zag, with the canonical form reached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZigzagStep {
    pub kind: MoveKind,
    pub result: Gaf,
}

/// Canonical neighbours of a canonical gaf under single moves within the edge budget.
fn neighbours(g: &Gaf, budget: usize) -> Vec<(MoveKind, Gaf)> {
    let mut out: Vec<(MoveKind, Gaf)> = collapsible_edges(g)
        .into_iter()
        .filter_map(|e| collapse_edges(g, &[e]).ok())
        .map(|(q, _)| (MoveKind::Collapse, canonical_form(&q)))
        .collect();
    if g.e_size() < budget {
        out.extend(expansions(g).into_iter().map(|(x, _)| (MoveKind::Expand, canonical_form(&x))));
    }
    out.sort();
    out.dedup();
    out
}

/// The default edge budget for a zig-zag search between two gafs.
pub fn default_budget(g: &Gaf, other: &Gaf) -> usize {
    g.e_size().max(other.e_size()) + 2
}

/// A shortest sequence of collapses and expansions from `G` to a gaf isomorphic to `G'`
/// through gafs with at most `edge_budget` edges.
pub fn zigzag_connected(g: &Gaf, other: &Gaf, edge_budget: usize) -> Option<Vec<ZigzagStep>> {
    if g.a_size() != other.a_size() || g.b_size() != other.b_size() {
        return None;
    }
    if g.e_size() > edge_budget || other.e_size() > edge_budget {
        return None;
    }
    let start = canonical_form(g);
    let goal = canonical_form(other);
    let mut parent: HashMap<Gaf, Option<(Gaf, MoveKind)>> = HashMap::from([(start.clone(), None)]);
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        if cur == goal {
            let mut steps = Vec::new();
            let mut at = cur;
            while let Some(Some((prev, kind))) = parent.get(&at).cloned() {
                steps.push(ZigzagStep { kind, result: at });
                at = prev;
            }
            steps.reverse();
            return Some(steps);
        }
        for (kind, next) in neighbours(&cur, edge_budget) {
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((cur.clone(), kind)));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Every canonical form reachable from `G` through gafs with at most `edge_budget` edges.
pub fn zigzag_component(g: &Gaf, edge_budget: usize) -> BTreeSet<Gaf> {
    let start = canonical_form(g);
    let mut seen = BTreeSet::from([start.clone()]);
    if g.e_size() > edge_budget {
        return seen;
    }
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        for (_, next) in neighbours(&cur, edge_budget) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}
