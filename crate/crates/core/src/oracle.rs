//! Independent brute-force reference implementations, used by the test
//! suites to validate the search-based operations on small instances.
//!
//! Everything here is deliberately naive: map spaces are enumerated in full,
//! equivalence classes are transitive closures of the one-step relations,
//! and covers are searched over unrestricted candidate pools. None of the
//! optimizations of the main modules (core reduction, candidate pool
//! restrictions, move-graph search) are used, so agreement is meaningful.

use std::sync::Arc;

use crate::complex::{are_contiguous, SimplicialComplex, SimplicialMap};
use crate::poset::{maps_comparable, FinitePoset, MonotoneMap};

/// Deterministic 64-bit generator (SplitMix64) for randomized test
/// instances; avoids any dependency for reproducible fuzzing.
#[derive(Clone, Debug)]
pub struct Rng64 {
    state: u64,
}

impl Rng64 {
    pub fn new(seed: u64) -> Rng64 {
        Rng64 { state: seed }
    }

    pub fn next(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..bound` (bound > 0).
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next() % bound as u64) as usize
    }
}

/// All simplicial maps `source -> target`, by enumerating every vertex
/// assignment and keeping the simplicial ones; deterministic order.
pub fn all_simplicial_maps(
    source: &Arc<SimplicialComplex>,
    target: &Arc<SimplicialComplex>,
) -> Vec<SimplicialMap> {
    let n = source.vertex_count();
    let m = target.vertex_count();
    let mut out = Vec::new();
    let total = (m as u128).pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let mut assignment = Vec::with_capacity(n);
        for _ in 0..n {
            assignment.push((c % m as u128) as u32);
            c /= m as u128;
        }
        if let Ok(map) = SimplicialMap::new(Arc::clone(source), Arc::clone(target), assignment) {
            out.push(map);
        }
    }
    out
}

/// All monotone maps `source -> target`.
pub fn all_monotone_maps(
    source: &Arc<FinitePoset>,
    target: &Arc<FinitePoset>,
) -> Vec<MonotoneMap> {
    let n = source.point_count();
    let m = target.point_count();
    let mut out = Vec::new();
    let total = (m as u128).pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let mut assignment = Vec::with_capacity(n);
        for _ in 0..n {
            assignment.push((c % m as u128) as u32);
            c /= m as u128;
        }
        if let Ok(map) = MonotoneMap::new(Arc::clone(source), Arc::clone(target), assignment) {
            out.push(map);
        }
    }
    out
}

/// Partitions a list of maps into classes under the transitive closure of a
/// symmetric one-step relation; returns a class id per map.
fn closure_classes<T>(maps: &[T], related: impl Fn(&T, &T) -> bool) -> Vec<usize> {
    let n = maps.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..n {
        for j in i + 1..n {
            if related(&maps[i], &maps[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    (0..n).map(|i| find(&mut parent, i)).collect()
}

/// Contiguity classes of all maps `source -> target`: maps plus a class id
/// per map (the transitive closure of `are_contiguous`).
pub fn contiguity_classes(
    source: &Arc<SimplicialComplex>,
    target: &Arc<SimplicialComplex>,
) -> (Vec<SimplicialMap>, Vec<usize>) {
    let maps = all_simplicial_maps(source, target);
    let classes = closure_classes(&maps, |f, g| are_contiguous(f, g).unwrap());
    (maps, classes)
}

/// Homotopy classes of all maps `source -> target` (closure of pointwise
/// comparability).
pub fn homotopy_classes(
    source: &Arc<FinitePoset>,
    target: &Arc<FinitePoset>,
) -> (Vec<MonotoneMap>, Vec<usize>) {
    let maps = all_monotone_maps(source, target);
    let classes = closure_classes(&maps, |f, g| maps_comparable(f, g).unwrap());
    (maps, classes)
}

/// Brute-force `same_contiguity_class`.
pub fn brute_same_contiguity_class(f: &SimplicialMap, g: &SimplicialMap) -> bool {
    let (maps, classes) = contiguity_classes(f.source(), f.target());
    let fi = maps.iter().position(|m| m == f).expect("f is simplicial");
    let gi = maps.iter().position(|m| m == g).expect("g is simplicial");
    classes[fi] == classes[gi]
}

/// Brute-force `homotopic`.
pub fn brute_homotopic(f: &MonotoneMap, g: &MonotoneMap) -> bool {
    let (maps, classes) = homotopy_classes(f.source(), f.target());
    let fi = maps.iter().position(|m| m == f).expect("f is monotone");
    let gi = maps.iter().position(|m| m == g).expect("g is monotone");
    classes[fi] == classes[gi]
}

/// Brute-force categorical test for a subcomplex: the inclusion's closure
/// class contains a constant map.
pub fn brute_is_categorical_subcomplex(
    u: &Arc<SimplicialComplex>,
    k: &Arc<SimplicialComplex>,
) -> bool {
    let incl = SimplicialMap::inclusion(u, k).expect("subcomplex");
    let (maps, classes) = contiguity_classes(u, k);
    let ci = classes[maps.iter().position(|m| *m == incl).unwrap()];
    maps.iter()
        .zip(&classes)
        .any(|(m, &c)| c == ci && m.constant_value().is_some())
}

/// Brute-force categorical test for an open subset (given as a bitmask).
pub fn brute_is_categorical_open(x: &Arc<FinitePoset>, mask: u128) -> bool {
    let (sub, _) = x.subposet(mask);
    let sub = Arc::new(sub);
    let incl = MonotoneMap::inclusion(&sub, x).expect("subposet");
    let (maps, classes) = homotopy_classes(&sub, x);
    let ci = classes[maps.iter().position(|m| *m == incl).unwrap()];
    maps.iter()
        .zip(&classes)
        .any(|(m, &c)| c == ci && m.constant_value().is_some())
}

/// Brute-force strong collapsibility: the identity lies in the closure class
/// of some constant self-map.
pub fn brute_strongly_collapsible(k: &Arc<SimplicialComplex>) -> bool {
    brute_is_categorical_subcomplex(k, k)
}

/// Brute-force contractibility: the identity is homotopic to a constant.
pub fn brute_contractible(x: &Arc<FinitePoset>) -> bool {
    brute_is_categorical_open(x, x.full_mask())
}

/// All subcomplexes of `K` as antichains of simplex bitmasks, deterministic
/// order.
pub fn all_subcomplexes(k: &SimplicialComplex) -> Vec<Vec<u64>> {
    let simplices = k.simplices();
    let n = simplices.len();
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<u64>)> = vec![(0, Vec::new())];
    while let Some((next, chosen)) = stack.pop() {
        if next == n {
            if !chosen.is_empty() {
                out.push(chosen);
            }
            continue;
        }
        let s = simplices[next].bits();
        stack.push((next + 1, chosen.clone()));
        if !chosen.iter().any(|&c| c & !s == 0 || s & !c == 0) {
            let mut with = chosen;
            with.push(s);
            stack.push((next + 1, with));
        }
    }
    out
}

/// Exact minimum cover size over an explicit candidate list of item masks;
/// naive iterative deepening, independent of the main search.
fn brute_min_cover(universe: u128, cands: &[u128]) -> Option<usize> {
    fn dfs(uncovered: u128, cands: &[u128], depth: usize) -> bool {
        if uncovered == 0 {
            return true;
        }
        if depth == 0 {
            return false;
        }
        let item = uncovered.trailing_zeros();
        cands
            .iter()
            .filter(|&&c| c >> item & 1 == 1)
            .any(|&c| dfs(uncovered & !c, cands, depth - 1))
    }
    if universe == 0 {
        return Some(0);
    }
    (1..=universe.count_ones() as usize).find(|&d| dfs(universe, cands, d))
}

/// Brute-force `scat`: minimum cover of the facets by categorical
/// subcomplexes drawn from *all* subcomplexes of `K`.
pub fn brute_scat(k: &Arc<SimplicialComplex>) -> usize {
    let facet_bits: Vec<u64> = k.facets().iter().map(|f| f.bits()).collect();
    let mut cands: Vec<u128> = Vec::new();
    for masks in all_subcomplexes(k) {
        let coverage = facet_bits
            .iter()
            .enumerate()
            .filter(|(_, &f)| masks.contains(&f))
            .fold(0u128, |a, (i, _)| a | 1 << i);
        if coverage == 0 {
            continue;
        }
        let sub = Arc::new(k.subcomplex_from_simplices(&masks).unwrap());
        if brute_is_categorical_subcomplex(&sub, k) {
            cands.push(coverage);
        }
    }
    let universe = (1u128 << facet_bits.len()) - 1;
    brute_min_cover(universe, &cands).expect("single facets are categorical") - 1
}

/// Brute-force `gscat`: same cover search with brute strong collapsibility
/// as the candidate condition.
pub fn brute_gscat(k: &Arc<SimplicialComplex>) -> usize {
    let facet_bits: Vec<u64> = k.facets().iter().map(|f| f.bits()).collect();
    let mut cands: Vec<u128> = Vec::new();
    for masks in all_subcomplexes(k) {
        let coverage = facet_bits
            .iter()
            .enumerate()
            .filter(|(_, &f)| masks.contains(&f))
            .fold(0u128, |a, (i, _)| a | 1 << i);
        if coverage == 0 {
            continue;
        }
        let sub = Arc::new(k.subcomplex_from_simplices(&masks).unwrap());
        if brute_strongly_collapsible(&sub) {
            cands.push(coverage);
        }
    }
    let universe = (1u128 << facet_bits.len()) - 1;
    brute_min_cover(universe, &cands).expect("single facets are strongly collapsible") - 1
}

/// Brute-force `cat`: minimum cover of all points by categorical open sets
/// drawn from *all* non-empty open sets.
pub fn brute_cat(x: &Arc<FinitePoset>) -> usize {
    let opens = x.enumerate_open_sets(1 << 20).unwrap();
    let cands: Vec<u128> = opens
        .iter()
        .filter(|d| !d.is_empty())
        .filter(|d| brute_is_categorical_open(x, d.mask()))
        .map(|d| d.mask())
        .collect();
    brute_min_cover(x.full_mask(), &cands).expect("minimal opens are categorical") - 1
}

/// Brute-force `gcat`: candidate condition is brute contractibility of the
/// open set in itself.
pub fn brute_gcat(x: &Arc<FinitePoset>) -> usize {
    let opens = x.enumerate_open_sets(1 << 20).unwrap();
    let cands: Vec<u128> = opens
        .iter()
        .filter(|d| !d.is_empty())
        .filter(|d| {
            let (sub, _) = x.subposet(d.mask());
            brute_contractible(&Arc::new(sub))
        })
        .map(|d| d.mask())
        .collect();
    brute_min_cover(x.full_mask(), &cands).expect("minimal opens are contractible") - 1
}

/// A random simplicial complex: `n` vertices (at most 6 recommended) and up
/// to `max_facets` random faces of dimension at most 2.
pub fn random_complex(rng: &mut Rng64, n: usize, max_facets: usize) -> SimplicialComplex {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut faces: Vec<Vec<String>> = Vec::new();
    let count = 1 + rng.below(max_facets);
    for _ in 0..count {
        let size = 1 + rng.below(3.min(n));
        let mut verts: Vec<usize> = Vec::new();
        while verts.len() < size {
            let v = rng.below(n);
            if !verts.contains(&v) {
                verts.push(v);
            }
        }
        faces.push(verts.into_iter().map(|v| names[v].clone()).collect());
    }
    SimplicialComplex::build(&faces).unwrap()
}

/// A random poset on `n` points (at most 8 recommended): each pair `(i, j)`
/// with `i < j` gets the relation `i <= j` with probability `num/den`.
pub fn random_poset(rng: &mut Rng64, n: usize, num: u64, den: u64) -> FinitePoset {
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut rels: Vec<(String, String)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.next() % den < num {
                rels.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    FinitePoset::build(&names, &rels).unwrap()
}
