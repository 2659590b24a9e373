//! Finite abstract simplicial complexes, simplicial maps, contiguity, and
//! contiguity-class reachability.
//!
//! A complex stores only its facets (maximal simplices); all other simplices
//! are enumerated on demand. Vertices are kept in a vertex table in first
//! appearance order and simplices are bitmasks over that table, so all
//! enumeration orders are canonical and certificates reproduce byte for byte.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::budget::{BudgetMeter, Reachability, SearchBudget};
use crate::collapse;
use crate::{Error, Result};

/// Hard cap on vertex counts so simplices fit in a `u64` bitmask.
pub const MAX_VERTICES: usize = 64;

/// A non-empty set of vertices of an ambient complex, as a bitmask.
///
/// Equality is set equality; `vertices` always reports the canonical
/// ascending order.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Simplex {
    bits: u64,
}

impl Simplex {
    pub fn from_bits(bits: u64) -> Simplex {
        debug_assert!(bits != 0, "simplices are non-empty");
        Simplex { bits }
    }

    pub fn from_vertices(vs: &[usize]) -> Simplex {
        let mut bits = 0u64;
        for &v in vs {
            debug_assert!(v < MAX_VERTICES);
            bits |= 1 << v;
        }
        Simplex::from_bits(bits)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut b = self.bits;
        while b != 0 {
            let v = b.trailing_zeros() as usize;
            out.push(v);
            b &= b - 1;
        }
        out
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn dim(&self) -> usize {
        self.len() - 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits >> v & 1 == 1
    }

    pub fn is_subset_of(&self, other: Simplex) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn union(&self, other: Simplex) -> Simplex {
        Simplex::from_bits(self.bits | other.bits)
    }

    pub fn without(&self, v: usize) -> u64 {
        self.bits & !(1 << v)
    }

    /// Canonical order: by dimension, then lexicographically on the
    /// ascending vertex sequence.
    pub fn canonical_cmp(&self, other: &Simplex) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.vertices().cmp(&other.vertices()))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Simplex{:?}", self.vertices())
    }
}

/// A finite abstract simplicial complex stored by its facets.
///
/// Invariants: the facet list is an antichain in canonical order, and the
/// vertex table equals the union of the facet vertices (isolated vertices
/// are facets of dimension 0).
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    names: Vec<String>,
    facets: Vec<Simplex>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets: Vec<Vec<&str>> = self
            .facets
            .iter()
            .map(|s| s.vertices().into_iter().map(|v| self.names[v].as_str()).collect())
            .collect();
        write!(f, "SimplicialComplex{:?}", facets)
    }
}

/// Drops duplicates and faces contained in other faces; result is sorted
/// canonically.
fn reduce_to_antichain(mut masks: Vec<u64>) -> Vec<Simplex> {
    masks.sort_by(|a, b| b.count_ones().cmp(&a.count_ones()));
    let mut kept: Vec<u64> = Vec::new();
    for m in masks {
        if !kept.iter().any(|&k| m & !k == 0) {
            kept.push(m);
        }
    }
    let mut facets: Vec<Simplex> = kept.into_iter().map(Simplex::from_bits).collect();
    facets.sort_by(|a, b| a.canonical_cmp(b));
    facets
}

impl SimplicialComplex {
    /// Builds a normalized complex from facet lists of vertex names.
    ///
    /// Vertex table order is first appearance; faces that are subsets of
    /// other faces are absorbed.
    pub fn build<S: AsRef<str>>(facet_lists: &[Vec<S>]) -> Result<SimplicialComplex> {
        if facet_lists.is_empty() {
            return Err(Error::EmptyInput("no facets given".into()));
        }
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut masks: Vec<u64> = Vec::new();
        for (fi, face) in facet_lists.iter().enumerate() {
            if face.is_empty() {
                return Err(Error::EmptyInput(format!("face {fi} is empty")));
            }
            let mut mask = 0u64;
            for v in face {
                let v = v.as_ref();
                let idx = match index.get(v) {
                    Some(&i) => i,
                    None => {
                        let i = names.len();
                        if i >= MAX_VERTICES {
                            return Err(Error::TooLarge(i + 1, MAX_VERTICES));
                        }
                        names.push(v.to_string());
                        index.insert(v.to_string(), i);
                        i
                    }
                };
                if mask >> idx & 1 == 1 {
                    return Err(Error::DuplicateVertexInFace {
                        vertex: v.to_string(),
                        face: fi,
                    });
                }
                mask |= 1 << idx;
            }
            masks.push(mask);
        }
        Ok(SimplicialComplex {
            names,
            facets: reduce_to_antichain(masks),
        })
    }

    /// Builds from an existing vertex table and facet masks (normalizing).
    pub fn from_parts(names: Vec<String>, masks: Vec<u64>) -> SimplicialComplex {
        debug_assert!(names.len() <= MAX_VERTICES);
        SimplicialComplex {
            names,
            facets: reduce_to_antichain(masks),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn dim(&self) -> usize {
        self.facets.iter().map(|s| s.dim()).max().unwrap_or(0)
    }

    /// Bitmask of all vertices.
    pub fn full_mask(&self) -> u64 {
        if self.names.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.names.len()) - 1
        }
    }

    /// True iff the (non-empty) vertex set spans a simplex, i.e. is contained
    /// in some facet.
    pub fn is_simplex(&self, bits: u64) -> bool {
        bits != 0 && self.facets.iter().any(|f| bits & !f.bits() == 0)
    }

    /// All non-empty faces of all facets, deduplicated, in canonical
    /// (dimension, lexicographic) order.
    pub fn simplices(&self) -> Vec<Simplex> {
        let mut seen: HashSet<u64> = HashSet::new();
        for f in &self.facets {
            // Iterate all non-empty submasks of the facet.
            let m = f.bits();
            let mut sub = m;
            loop {
                seen.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & m;
            }
        }
        seen.remove(&0);
        let mut out: Vec<Simplex> = seen.into_iter().map(Simplex::from_bits).collect();
        out.sort_by(|a, b| a.canonical_cmp(b));
        out
    }

    /// The subcomplex generated by a subset of this complex's facets.
    ///
    /// Facets of the result are the maximal elements of the subset; the
    /// vertex table is restricted to the vertices actually used, preserving
    /// relative order.
    pub fn generated_subcomplex(&self, facet_indices: &[usize]) -> Result<SimplicialComplex> {
        if facet_indices.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut used = 0u64;
        for &i in facet_indices {
            used |= self.facets[i].bits();
        }
        let (names, translate) = self.restricted_names(used);
        let masks: Vec<u64> = facet_indices
            .iter()
            .map(|&i| translate_mask(self.facets[i].bits(), &translate))
            .collect();
        let _ = names.len();
        Ok(SimplicialComplex::from_parts(names, masks))
    }

    /// The full subcomplex on the vertices of `keep`: facets are the maximal
    /// elements of `{facet ∩ keep}`. Vertex indices are compacted.
    pub fn full_subcomplex(&self, keep: u64) -> SimplicialComplex {
        let masks: Vec<u64> = self
            .facets
            .iter()
            .map(|f| f.bits() & keep)
            .filter(|&m| m != 0)
            .collect();
        let mut used = 0u64;
        for &m in &masks {
            used |= m;
        }
        let (names, translate) = self.restricted_names(used);
        let masks = masks.into_iter().map(|m| translate_mask(m, &translate)).collect();
        SimplicialComplex::from_parts(names, masks)
    }

    /// The subcomplex generated by an arbitrary antichain of simplices of
    /// this complex (given as bitmasks); vertex indices are compacted.
    pub fn subcomplex_from_simplices(&self, masks: &[u64]) -> Result<SimplicialComplex> {
        if masks.is_empty() {
            return Err(Error::EmptySubset);
        }
        debug_assert!(masks.iter().all(|&m| self.is_simplex(m)));
        let mut used = 0u64;
        for &m in masks {
            used |= m;
        }
        let (names, translate) = self.restricted_names(used);
        let masks = masks.iter().map(|&m| translate_mask(m, &translate)).collect();
        Ok(SimplicialComplex::from_parts(names, masks))
    }

    fn restricted_names(&self, used: u64) -> (Vec<String>, Vec<u32>) {
        let mut names = Vec::new();
        let mut translate = vec![u32::MAX; self.names.len()];
        for v in 0..self.names.len() {
            if used >> v & 1 == 1 {
                translate[v] = names.len() as u32;
                names.push(self.names[v].clone());
            }
        }
        (names, translate)
    }

    /// True iff every facet of `sub` (matched by vertex name) spans a simplex
    /// here.
    pub fn has_subcomplex(&self, sub: &SimplicialComplex) -> bool {
        let mut map = Vec::with_capacity(sub.vertex_count());
        for n in sub.vertex_names() {
            match self.index_of(n) {
                Some(i) => map.push(i),
                None => return false,
            }
        }
        sub.facets.iter().all(|f| {
            let mut img = 0u64;
            for v in f.vertices() {
                img |= 1 << map[v];
            }
            self.is_simplex(img)
        })
    }
}

fn translate_mask(mask: u64, translate: &[u32]) -> u64 {
    let mut out = 0u64;
    let mut b = mask;
    while b != 0 {
        let v = b.trailing_zeros() as usize;
        out |= 1 << translate[v];
        b &= b - 1;
    }
    out
}

/// Builds a complex from facet lists of vertex names.
pub fn build_complex<S: AsRef<str>>(facet_lists: &[Vec<S>]) -> Result<SimplicialComplex> {
    SimplicialComplex::build(facet_lists)
}

/// A simplicial map: a total vertex assignment under which every simplex of
/// the source spans a simplex of the target.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    source: Arc<SimplicialComplex>,
    target: Arc<SimplicialComplex>,
    assignment: Vec<u32>,
}

impl fmt::Debug for SimplicialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .assignment
            .iter()
            .enumerate()
            .map(|(v, &w)| format!("{}->{}", self.source.name(v), self.target.name(w as usize)))
            .collect();
        write!(f, "SimplicialMap[{}]", pairs.join(", "))
    }
}

impl SimplicialMap {
    pub fn new(
        source: Arc<SimplicialComplex>,
        target: Arc<SimplicialComplex>,
        assignment: Vec<u32>,
    ) -> Result<SimplicialMap> {
        if assignment.len() != source.vertex_count() {
            return Err(Error::NotSimplicial(format!(
                "assignment has {} entries for {} vertices",
                assignment.len(),
                source.vertex_count()
            )));
        }
        if let Some(&v) = assignment.iter().find(|&&v| v as usize >= target.vertex_count()) {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
        for f in source.facets() {
            let img = image_mask(f.bits(), &assignment);
            if !target.is_simplex(img) {
                return Err(Error::NotSimplicial(format!("{f:?}")));
            }
        }
        Ok(SimplicialMap {
            source,
            target,
            assignment,
        })
    }

    pub fn identity(k: &Arc<SimplicialComplex>) -> SimplicialMap {
        SimplicialMap {
            source: Arc::clone(k),
            target: Arc::clone(k),
            assignment: (0..k.vertex_count() as u32).collect(),
        }
    }

    /// The constant map sending everything to target vertex `v`.
    pub fn constant(
        source: Arc<SimplicialComplex>,
        target: Arc<SimplicialComplex>,
        v: usize,
    ) -> SimplicialMap {
        debug_assert!(v < target.vertex_count());
        let n = source.vertex_count();
        SimplicialMap {
            source,
            target,
            assignment: vec![v as u32; n],
        }
    }

    /// The inclusion of a subcomplex, matching vertices by name.
    pub fn inclusion(
        sub: &Arc<SimplicialComplex>,
        ambient: &Arc<SimplicialComplex>,
    ) -> Result<SimplicialMap> {
        let mut assignment = Vec::with_capacity(sub.vertex_count());
        for n in sub.vertex_names() {
            let i = ambient
                .index_of(n)
                .ok_or_else(|| Error::NotASubcomplex(format!("vertex {n:?}")))?;
            assignment.push(i as u32);
        }
        let map = SimplicialMap::new(Arc::clone(sub), Arc::clone(ambient), assignment)
            .map_err(|_| Error::NotASubcomplex("facet image".into()))?;
        Ok(map)
    }

    pub fn source(&self) -> &Arc<SimplicialComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialComplex> {
        &self.target
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    pub fn apply(&self, v: usize) -> usize {
        self.assignment[v] as usize
    }

    pub fn image_of(&self, s: Simplex) -> Simplex {
        Simplex::from_bits(image_mask(s.bits(), &self.assignment))
    }

    /// `Some(v)` iff the map is constant at target vertex `v`.
    pub fn constant_value(&self) -> Option<usize> {
        let first = *self.assignment.first()?;
        self.assignment
            .iter()
            .all(|&w| w == first)
            .then_some(first as usize)
    }

    pub fn same_endpoints(&self, other: &SimplicialMap) -> bool {
        self.source == other.source && self.target == other.target
    }
}

pub(crate) fn image_mask(mask: u64, assignment: &[u32]) -> u64 {
    let mut out = 0u64;
    let mut b = mask;
    while b != 0 {
        let v = b.trailing_zeros() as usize;
        out |= 1 << assignment[v];
        b &= b - 1;
    }
    out
}

/// True iff `f(σ) ∪ g(σ)` spans a simplex of the target for every facet σ.
///
/// Checking facets suffices: any face inherits the property from a facet
/// containing it (this is asserted against the all-simplices test in the
/// property suite).
pub fn are_contiguous(f: &SimplicialMap, g: &SimplicialMap) -> Result<bool> {
    if !f.same_endpoints(g) {
        return Err(Error::MismatchedEndpoints);
    }
    Ok(f.source.facets().iter().all(|s| {
        let img = image_mask(s.bits(), &f.assignment) | image_mask(s.bits(), &g.assignment);
        f.target.is_simplex(img)
    }))
}

/// A replayable witness that two simplicial maps lie in the same contiguity
/// class: a chain of maps in which consecutive entries are contiguous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContiguityCertificate {
    pub chain: Vec<SimplicialMap>,
}

impl ContiguityCertificate {
    /// Re-validates the chain using only the contiguity checker.
    pub fn validate(&self) -> Result<()> {
        if self.chain.is_empty() {
            return Err(Error::EmptyInput("empty contiguity chain".into()));
        }
        for w in self.chain.windows(2) {
            if !are_contiguous(&w[0], &w[1])? {
                return Err(Error::NotSimplicial("chain entries not contiguous".into()));
            }
        }
        Ok(())
    }

    pub fn first(&self) -> &SimplicialMap {
        self.chain.first().expect("non-empty chain")
    }

    pub fn last(&self) -> &SimplicialMap {
        self.chain.last().expect("non-empty chain")
    }
}

/// What a contiguity BFS is looking for.
#[derive(Clone, Debug)]
pub(crate) enum MapGoal {
    Assignment(Vec<u32>),
    AnyConstant,
}

/// BFS over simplicial maps `source -> target` by single-vertex moves.
///
/// A move changes one vertex image so that the new map is simplicial and
/// contiguous to the old one; the components of this move graph are exactly
/// the contiguity classes (validated against the brute-force closure oracle).
/// Returns the assignment path on success.
pub(crate) fn contiguity_bfs(
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    start: Vec<u32>,
    goal: &MapGoal,
    budget: &SearchBudget,
) -> Reachability<Vec<Vec<u32>>> {
    let n = source.vertex_count();
    let m = target.vertex_count();
    let reached = |a: &[u32]| match goal {
        MapGoal::Assignment(g) => a == &g[..],
        MapGoal::AnyConstant => a.iter().all(|&w| w == a[0]),
    };
    if reached(&start) {
        return Reachability::Yes(vec![start]);
    }
    // Facets containing each source vertex, for the local contiguity check.
    let facets_at: Vec<Vec<u64>> = (0..n)
        .map(|v| {
            source
                .facets()
                .iter()
                .filter(|f| f.contains(v))
                .map(|f| f.bits())
                .collect()
        })
        .collect();
    let mut meter = BudgetMeter::start(budget);
    let mut parent: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
    let mut queue: VecDeque<Vec<u32>> = VecDeque::new();
    parent.insert(start.clone(), Vec::new());
    queue.push_back(start.clone());
    if !meter.tick() {
        return Reachability::Exhausted;
    }
    while let Some(cur) = queue.pop_front() {
        for v in 0..n {
            for w in 0..m as u32 {
                if w == cur[v] {
                    continue;
                }
                // The union image of every facet through v must still span a
                // simplex; facets avoiding v are unchanged.
                let old_bit = 1u64 << cur[v];
                let new_bit = 1u64 << w;
                let ok = facets_at[v].iter().all(|&fb| {
                    let img = image_mask(fb, &cur) | new_bit;
                    let _ = old_bit;
                    target.is_simplex(img)
                });
                if !ok {
                    continue;
                }
                let mut next = cur.clone();
                next[v] = w;
                if parent.contains_key(&next) {
                    continue;
                }
                let done = reached(&next);
                parent.insert(next.clone(), cur.clone());
                if done {
                    let mut path = vec![next];
                    loop {
                        let p = &parent[path.last().unwrap()];
                        if p.is_empty() {
                            break;
                        }
                        path.push(p.clone());
                    }
                    path.reverse();
                    return Reachability::Yes(path);
                }
                if !meter.tick() {
                    return Reachability::Exhausted;
                }
                queue.push_back(next);
            }
        }
    }
    Reachability::No
}

/// Core reduction data for contiguity questions between two fixed complexes.
///
/// Contiguity classes are invariant under strong collapse, so a reachability
/// question about maps `K -> L` reduces to the (much smaller) map space
/// `core(K) -> core(L)`. The fences recorded here let any answer be lifted
/// back to an explicit certificate in the original map space.
pub(crate) struct CoreReduction {
    pub source: Arc<SimplicialComplex>,
    pub target: Arc<SimplicialComplex>,
    pub core_source: Arc<SimplicialComplex>,
    pub core_target: Arc<SimplicialComplex>,
    /// Composite retractions of the source, as endomaps, starting with the
    /// identity.
    source_fence: Vec<Vec<u32>>,
    /// Composite retractions of the target, starting with the identity.
    target_fence: Vec<Vec<u32>>,
    /// Ascending original indices of the surviving source vertices.
    source_core_vertices: Vec<usize>,
    /// Position of each surviving source vertex in `source_core_vertices`.
    source_core_pos: Vec<u32>,
    /// Ascending original indices of the surviving target vertices.
    target_core_vertices: Vec<usize>,
    target_core_pos: Vec<u32>,
}

fn retraction_fence(k: &SimplicialComplex) -> (Vec<Vec<u32>>, u64) {
    let run = collapse::collapse_run(k);
    let n = k.vertex_count();
    let mut fence: Vec<Vec<u32>> = vec![(0..n as u32).collect()];
    for &(v, w) in &run.steps {
        let prev = fence.last().unwrap();
        let next: Vec<u32> = prev
            .iter()
            .map(|&x| if x as usize == v { w as u32 } else { x })
            .collect();
        fence.push(next);
    }
    (fence, run.alive)
}

impl CoreReduction {
    pub fn new(source: &Arc<SimplicialComplex>, target: &Arc<SimplicialComplex>) -> CoreReduction {
        let (source_fence, src_alive) = retraction_fence(source);
        let (target_fence, tgt_alive) = if Arc::ptr_eq(source, target) || source == target {
            (source_fence.clone(), src_alive)
        } else {
            retraction_fence(target)
        };
        let core_source = Arc::new(source.full_subcomplex(src_alive));
        let core_target = Arc::new(target.full_subcomplex(tgt_alive));
        let mut source_core_vertices = Vec::new();
        let mut source_core_pos = vec![u32::MAX; source.vertex_count()];
        for v in 0..source.vertex_count() {
            if src_alive >> v & 1 == 1 {
                source_core_pos[v] = source_core_vertices.len() as u32;
                source_core_vertices.push(v);
            }
        }
        let mut target_core_vertices = Vec::new();
        let mut target_core_pos = vec![u32::MAX; target.vertex_count()];
        for v in 0..target.vertex_count() {
            if tgt_alive >> v & 1 == 1 {
                target_core_pos[v] = target_core_vertices.len() as u32;
                target_core_vertices.push(v);
            }
        }
        CoreReduction {
            source: Arc::clone(source),
            target: Arc::clone(target),
            core_source,
            core_target,
            source_fence,
            target_fence,
            source_core_vertices,
            source_core_pos,
            target_core_vertices,
            target_core_pos,
        }
    }

    /// Restricts `assignment: source -> target` to an assignment
    /// `core(source) -> core(target)` by composing with both retractions.
    pub fn reduce(&self, assignment: &[u32]) -> Vec<u32> {
        let rho_t = self.target_fence.last().unwrap();
        self.source_core_vertices
            .iter()
            .map(|&v| {
                let w = rho_t[assignment[v] as usize] as usize;
                self.target_core_pos[w]
            })
            .collect()
    }

    /// Lifts a BFS path in the core map space to a full contiguity chain
    /// `start ~ ... ~ end` in the original map space.
    ///
    /// The chain runs: collapse the source under `start`, collapse the
    /// target, traverse the core path, then expand back for `end`. When
    /// `end` is `None` the chain simply terminates at the (constant) image
    /// of the last core map.
    pub fn lift(
        &self,
        start: &[u32],
        core_path: &[Vec<u32>],
        end: Option<&[u32]>,
    ) -> Result<ContiguityCertificate> {
        let rho_s_final = self.source_fence.last().unwrap();
        let mut assignments: Vec<Vec<u32>> = Vec::new();
        // start composed with progressive source retractions
        for rho in &self.source_fence {
            assignments.push(rho.iter().map(|&x| start[x as usize]).collect());
        }
        // then progressive target retractions
        let base: Vec<u32> = rho_s_final.iter().map(|&x| start[x as usize]).collect();
        for rho_t in &self.target_fence[1..] {
            assignments.push(base.iter().map(|&y| rho_t[y as usize]).collect());
        }
        // core path, embedded
        for m in core_path {
            let a: Vec<u32> = rho_s_final
                .iter()
                .map(|&x| {
                    let pos = self.source_core_pos[x as usize];
                    self.target_core_vertices[m[pos as usize] as usize] as u32
                })
                .collect();
            assignments.push(a);
        }
        if let Some(end) = end {
            let base: Vec<u32> = rho_s_final.iter().map(|&x| end[x as usize]).collect();
            for rho_t in self.target_fence[1..].iter().rev() {
                assignments.push(base.iter().map(|&y| rho_t[y as usize]).collect());
            }
            for rho in self.source_fence.iter().rev() {
                assignments.push(rho.iter().map(|&x| end[x as usize]).collect());
            }
        }
        assignments.dedup();
        let chain = assignments
            .into_iter()
            .map(|a| SimplicialMap::new(Arc::clone(&self.source), Arc::clone(&self.target), a))
            .collect::<Result<Vec<_>>>()?;
        let cert = ContiguityCertificate { chain };
        debug_assert!(cert.validate().is_ok());
        Ok(cert)
    }
}

/// Decides whether two simplicial maps lie in the same contiguity class.
///
/// BFS by single-vertex moves, run on the cores of source and target (the
/// reduction preserves the answer and keeps the state space small); the
/// returned certificate is lifted back to the original map space.
pub fn same_contiguity_class(
    f: &SimplicialMap,
    g: &SimplicialMap,
    budget: &SearchBudget,
) -> Result<Reachability<ContiguityCertificate>> {
    if !f.same_endpoints(g) {
        return Err(Error::MismatchedEndpoints);
    }
    if f.assignment == g.assignment {
        return Ok(Reachability::Yes(ContiguityCertificate {
            chain: vec![f.clone()],
        }));
    }
    let red = CoreReduction::new(f.source(), f.target());
    let a = red.reduce(&f.assignment);
    let b = red.reduce(&g.assignment);
    let outcome = contiguity_bfs(
        &red.core_source,
        &red.core_target,
        a,
        &MapGoal::Assignment(b),
        budget,
    );
    match outcome {
        Reachability::Yes(path) => Ok(Reachability::Yes(red.lift(
            &f.assignment,
            &path,
            Some(&g.assignment),
        )?)),
        Reachability::No => Ok(Reachability::No),
        Reachability::Exhausted => Ok(Reachability::Exhausted),
    }
}

/// Vertex bijection test mapping facet set onto facet set; backtracking with
/// degree-signature pruning. Intended for small instances.
pub fn complexes_isomorphic(k: &SimplicialComplex, l: &SimplicialComplex) -> bool {
    if k.vertex_count() != l.vertex_count() || k.facet_count() != l.facet_count() {
        return false;
    }
    if k == l {
        return true;
    }
    let mut dims_k: Vec<usize> = k.facets().iter().map(|f| f.len()).collect();
    let mut dims_l: Vec<usize> = l.facets().iter().map(|f| f.len()).collect();
    dims_k.sort_unstable();
    dims_l.sort_unstable();
    if dims_k != dims_l {
        return false;
    }
    let sig = |c: &SimplicialComplex, v: usize| -> Vec<usize> {
        let mut s: Vec<usize> = c
            .facets()
            .iter()
            .filter(|f| f.contains(v))
            .map(|f| f.len())
            .collect();
        s.sort_unstable();
        s
    };
    let sigs_k: Vec<Vec<usize>> = (0..k.vertex_count()).map(|v| sig(k, v)).collect();
    let sigs_l: Vec<Vec<usize>> = (0..l.vertex_count()).map(|v| sig(l, v)).collect();
    {
        let mut a = sigs_k.clone();
        let mut b = sigs_l.clone();
        a.sort();
        b.sort();
        if a != b {
            return false;
        }
    }
    let facet_set_l: HashSet<u64> = l.facets().iter().map(|f| f.bits()).collect();
    let n = k.vertex_count();
    let mut mapping = vec![u32::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        v: usize,
        n: usize,
        k: &SimplicialComplex,
        sigs_k: &[Vec<usize>],
        sigs_l: &[Vec<usize>],
        facet_set_l: &HashSet<u64>,
        mapping: &mut [u32],
        used: &mut [bool],
    ) -> bool {
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || sigs_k[v] != sigs_l[w] {
                continue;
            }
            mapping[v] = w as u32;
            used[w] = true;
            // every fully-assigned facet must map onto a facet of l
            let consistent = k.facets().iter().all(|f| {
                if f.vertices().iter().any(|&x| mapping[x] == u32::MAX) {
                    return true;
                }
                let img = image_mask(f.bits(), mapping);
                facet_set_l.contains(&img)
            });
            if consistent
                && extend(v + 1, n, k, sigs_k, sigs_l, facet_set_l, mapping, used)
            {
                return true;
            }
            mapping[v] = u32::MAX;
            used[w] = false;
        }
        false
    }

    extend(0, n, k, &sigs_k, &sigs_l, &facet_set_l, &mut mapping, &mut used)
}
