//! Naive reference implementations over raw index vectors.
//!
//! Nothing here calls into the library's validation, search or canonicalization; the
//! morphism conditions are re-derived from the definition with `σ'` and `υ'` extended by
//! the identity on vertices.

#![allow(dead_code)]

use itertools::Itertools;

/// A gaf as plain vectors: vertices `0..a+v` (attaching first), half-edges `0..h`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Raw {
    pub a: usize,
    pub b: usize,
    pub v: usize,
    pub rho: Vec<usize>,
    pub sigma: Vec<usize>,
    pub upsilon: Vec<usize>,
}

impl Raw {
    pub fn n(&self) -> usize {
        self.a + self.v
    }

    pub fn h(&self) -> usize {
        self.sigma.len()
    }

    pub fn from_gaf(g: &grcob::Gaf) -> Raw {
        Raw {
            a: g.a_size(),
            b: g.b_size(),
            v: g.v_size(),
            rho: g.rho().values().to_vec(),
            sigma: g.sigma().values().to_vec(),
            upsilon: g.upsilon().values().to_vec(),
        }
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    r
}

/// Components of the graph on `vertices` with `edges` (pairs of vertices).
fn component_count(vertices: &[usize], edges: &[(usize, usize)], n: usize) -> (usize, Vec<usize>) {
    let mut parent: Vec<usize> = (0..n).collect();
    for &(x, y) in edges {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        if rx != ry {
            parent[rx] = ry;
        }
    }
    let mut roots: Vec<usize> = vertices.iter().map(|&x| find(&mut parent, x)).collect();
    let per_vertex = roots.clone();
    roots.sort_unstable();
    roots.dedup();
    (roots.len(), per_vertex)
}

/// All fixed-point free involutions of `0..h`.
pub fn matchings(h: usize) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(&first) = rest.first() else {
            out.push(cur.clone());
            return;
        };
        for i in 1..rest.len() {
            let other = rest[i];
            let mut next: Vec<usize> = rest.clone();
            next.retain(|&x| x != first && x != other);
            cur[first] = other;
            cur[other] = first;
            go(&mut next, cur, out);
        }
    }
    let mut out = Vec::new();
    if h % 2 == 1 {
        return out;
    }
    go(&mut (0..h).collect(), &mut vec![usize::MAX; h], &mut out);
    out
}

/// Least relabeling over every permutation of inner vertices and half-edges.
pub fn brute_canonical(g: &Raw) -> Raw {
    let h = g.h();
    let mut best: Option<Raw> = None;
    for vp in (0..g.v).permutations(g.v) {
        let lab = |x: usize| if x < g.a { x } else { g.a + vp[x - g.a] };
        for hp in (0..h).permutations(h) {
            let mut sigma = vec![0; h];
            let mut upsilon = vec![0; h];
            for old in 0..h {
                sigma[hp[old]] = lab(g.sigma[old]);
                upsilon[hp[old]] = hp[g.upsilon[old]];
            }
            let cand = Raw {
                a: g.a,
                b: g.b,
                v: g.v,
                rho: g.rho.iter().map(|&x| lab(x)).collect(),
                sigma,
                upsilon,
            };
            if best.as_ref().is_none_or(|b| (&cand.rho, &cand.sigma, &cand.upsilon) < (&b.rho, &b.sigma, &b.upsilon)) {
                best = Some(cand);
            }
        }
    }
    best.expect("at least the identity relabeling")
}

/// Number of isomorphism classes, by canonicalizing every raw assignment.
pub fn brute_class_count(a: usize, b: usize, max_v: usize, max_e: usize) -> usize {
    let mut classes = std::collections::BTreeSet::new();
    for v in 0..=max_v {
        let n = a + v;
        for e in 0..=max_e {
            let h = 2 * e;
            for upsilon in matchings(h) {
                for sigma in (0..h).map(|_| 0..n).multi_cartesian_product_or_unit() {
                    for rho in (0..b).map(|_| 0..n).multi_cartesian_product_or_unit() {
                        let g = Raw {
                            a,
                            b,
                            v,
                            rho: rho.clone(),
                            sigma: sigma.clone(),
                            upsilon: upsilon.clone(),
                        };
                        classes.insert(brute_canonical(&g));
                    }
                }
            }
        }
    }
    classes.len()
}

trait ProductOrUnit {
    fn multi_cartesian_product_or_unit(self) -> Vec<Vec<usize>>;
}

impl<I: Iterator<Item = std::ops::Range<usize>>> ProductOrUnit for I {
    fn multi_cartesian_product_or_unit(self) -> Vec<Vec<usize>> {
        let ranges: Vec<_> = self.collect();
        if ranges.is_empty() {
            return vec![Vec::new()];
        }
        ranges.into_iter().multi_cartesian_product().collect()
    }
}

/// A map `A ⊔ B ⊔ V ⊔ H → A' ⊔ B' ⊔ V' ⊔ H'` that is the identity on `A` and `B`.
/// Images of vertices lie in `0..n'`; images of half-edges lie in `0..n' + h'`, with
/// `n' + k` standing for half-edge `k`.
pub struct RawMap<'a> {
    pub src: &'a Raw,
    pub tgt: &'a Raw,
    pub on_v: &'a [usize],
    pub on_h: &'a [usize],
}

impl RawMap<'_> {
    fn vertex(&self, x: usize) -> usize {
        if x < self.src.a {
            x
        } else {
            self.on_v[x - self.src.a]
        }
    }

    /// `σ'` extended by the identity on vertices.
    fn sigma_t(&self, y: usize) -> usize {
        let n = self.tgt.n();
        if y < n {
            y
        } else {
            self.tgt.sigma[y - n]
        }
    }

    /// `υ'` extended by the identity on vertices.
    fn upsilon_t(&self, y: usize) -> usize {
        let n = self.tgt.n();
        if y < n {
            y
        } else {
            n + self.tgt.upsilon[y - n]
        }
    }

    /// The preimage of target vertex `y`: its vertices and edges (as vertex pairs).
    fn preimage(&self, y: usize) -> (Vec<usize>, Vec<(usize, usize)>) {
        let vertices: Vec<usize> = (0..self.src.n()).filter(|&x| self.vertex(x) == y).collect();
        let edges = (0..self.src.h())
            .filter(|&k| k < self.src.upsilon[k] && self.on_h[k] == y)
            .map(|k| (self.src.sigma[k], self.src.sigma[self.src.upsilon[k]]))
            .collect();
        (vertices, edges)
    }

    pub fn is_valid(&self) -> bool {
        let (s, t) = (self.src, self.tgt);
        if s.a != t.a || s.b != t.b {
            return false;
        }
        let n = t.n();
        // Equivariance.
        if (0..s.b).any(|b| self.vertex(s.rho[b]) != t.rho[b]) {
            return false;
        }
        for k in 0..s.h() {
            if self.vertex(s.sigma[k]) != self.sigma_t(self.on_h[k]) {
                return false;
            }
            if self.on_h[s.upsilon[k]] != self.upsilon_t(self.on_h[k]) {
                return false;
            }
        }
        // Every target half-edge has exactly one preimage.
        for k in 0..t.h() {
            if self.on_h.iter().filter(|&&y| y == n + k).count() != 1 {
                return false;
            }
        }
        for y in 0..n {
            let (vertices, edges) = self.preimage(y);
            let attaching = vertices.iter().filter(|&&x| x < s.a).count();
            let (components, _) = component_count(&vertices, &edges, s.n());
            let chi = vertices.len() as i64 - edges.len() as i64;
            if y >= t.a {
                // A non-based tree.
                if vertices.is_empty() || attaching > 0 || components != 1 || chi != 1 {
                    return false;
                }
            } else {
                // One based tree per attaching preimage, nothing else.
                if components != attaching || chi != attaching as i64 {
                    return false;
                }
                let (_, roots) = component_count(&vertices, &edges, s.n());
                let mut attaching_roots: Vec<usize> =
                    vertices.iter().zip(&roots).filter(|(&x, _)| x < s.a).map(|(_, &r)| r).collect();
                attaching_roots.sort_unstable();
                attaching_roots.dedup();
                if attaching_roots.len() != attaching {
                    return false;
                }
            }
        }
        true
    }
}

/// Every valid morphism `src → tgt` fixing `A` and `B`, by trying all set maps.
/// Returns `(map_v, map_h)` with `map_h` in the library's encoding.
pub fn brute_morphisms(src: &Raw, tgt: &Raw) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = tgt.n();
    let mut out = Vec::new();
    for on_v in (0..src.v).map(|_| 0..n).multi_cartesian_product_or_unit() {
        for on_h in (0..src.h()).map(|_| 0..n + tgt.h()).multi_cartesian_product_or_unit() {
            let map = RawMap {
                src,
                tgt,
                on_v: &on_v,
                on_h: &on_h,
            };
            if map.is_valid() {
                out.push((on_v.clone(), on_h.clone()));
            }
        }
    }
    out
}

/// Independent validity check of a raw gaf.
pub fn raw_gaf_is_valid(g: &Raw) -> bool {
    let n = g.n();
    g.rho.len() == g.b
        && g.rho.iter().all(|&x| x < n)
        && g.sigma.len() == g.upsilon.len()
        && g.sigma.iter().all(|&x| x < n)
        && (0..g.h()).all(|k| g.upsilon[k] < g.h() && g.upsilon[k] != k && g.upsilon[g.upsilon[k]] == k)
}

/// Sanity checks of the oracle itself on hand-countable cases.
pub fn self_check() -> bool {
    let lp = Raw {
        a: 0,
        b: 0,
        v: 1,
        rho: vec![],
        sigma: vec![0, 0],
        upsilon: vec![1, 0],
    };
    matchings(4).len() == 3
        && matchings(0) == vec![Vec::<usize>::new()]
        && raw_gaf_is_valid(&lp)
        && brute_morphisms(&lp, &lp).len() == 2
}
