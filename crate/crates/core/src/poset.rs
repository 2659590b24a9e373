//! Finite T0-spaces as partial orders: open sets (down-sets), monotone maps,
//! and homotopy of maps via the fence relation.
//!
//! Points are indexed by a name table in declaration order; the order
//! relation and all subsets are bitmasks over that table, so enumeration
//! orders and certificates are deterministic.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::budget::{BudgetMeter, Reachability, SearchBudget};
use crate::collapse;
use crate::{Error, Result};

/// Hard cap on point counts so subsets fit in a `u128` bitmask.
pub const MAX_POINTS: usize = 128;

/// Default cap on the number of open sets `enumerate_open_sets` may produce.
pub const DEFAULT_OPEN_SET_LIMIT: usize = 1 << 20;

/// A finite T0-space presented as a partial order.
///
/// `below[x]` is the bitmask of all `y <= x` (including `x` itself), i.e. the
/// minimal open set U_x. The relation is reflexive, transitive, and
/// antisymmetric by construction.
#[derive(Clone, PartialEq, Eq)]
pub struct FinitePoset {
    names: Vec<String>,
    below: Vec<u128>,
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rels = Vec::new();
        for y in 0..self.names.len() {
            for x in self.point_indices(self.strictly_below(y)) {
                rels.push(format!("{}<{}", self.names[x], self.names[y]));
            }
        }
        write!(f, "FinitePoset({:?}; {})", self.names, rels.join(", "))
    }
}

/// An open set of the order topology: a downward-closed subset of an ambient
/// poset, as a bitmask. Built through [`FinitePoset`] methods, which enforce
/// down-closure.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DownSet {
    mask: u128,
}

impl DownSet {
    pub fn mask(&self) -> u128 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask >> x & 1 == 1
    }

    pub fn union(&self, other: DownSet) -> DownSet {
        DownSet {
            mask: self.mask | other.mask,
        }
    }
}

pub(crate) fn mask_points(mask: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut b = mask;
    while b != 0 {
        out.push(b.trailing_zeros() as usize);
        b &= b - 1;
    }
    out
}

impl FinitePoset {
    /// Builds a poset from declared points and `first <= second` pairs.
    ///
    /// Takes the reflexive-transitive closure; rejects cycles between
    /// distinct points (the T0 / antisymmetry condition).
    pub fn build<S: AsRef<str>>(points: &[S], relations: &[(S, S)]) -> Result<FinitePoset> {
        let (names, below) = closure_of(points, relations)?;
        for x in 0..names.len() {
            for y in 0..names.len() {
                if x != y && below[x] >> y & 1 == 1 && below[y] >> x & 1 == 1 {
                    return Err(Error::CycleDetected(names[x].clone(), names[y].clone()));
                }
            }
        }
        Ok(FinitePoset { names, below })
    }

    /// Builds from a name table and valid `below` rows (normalizing nothing);
    /// used internally for derived posets.
    pub(crate) fn from_parts(names: Vec<String>, below: Vec<u128>) -> FinitePoset {
        debug_assert!(names.len() <= MAX_POINTS);
        debug_assert!((0..names.len()).all(|x| below[x] >> x & 1 == 1));
        FinitePoset { names, below }
    }

    pub fn point_count(&self) -> usize {
        self.names.len()
    }

    pub fn point_names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn full_mask(&self) -> u128 {
        if self.names.len() == 128 {
            u128::MAX
        } else {
            (1u128 << self.names.len()) - 1
        }
    }

    /// `x <= y` in the order.
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.below[y] >> x & 1 == 1
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.le(x, y) || self.le(y, x)
    }

    /// Bitmask of `{y : y <= x}` (the minimal open set as raw bits).
    pub fn below_mask(&self, x: usize) -> u128 {
        self.below[x]
    }

    pub fn strictly_below(&self, x: usize) -> u128 {
        self.below[x] & !(1u128 << x)
    }

    /// Bitmask of `{y : x <= y}`.
    pub fn above_mask(&self, x: usize) -> u128 {
        let mut m = 0u128;
        for y in 0..self.names.len() {
            if self.le(x, y) {
                m |= 1 << y;
            }
        }
        m
    }

    pub fn strictly_above(&self, x: usize) -> u128 {
        self.above_mask(x) & !(1u128 << x)
    }

    /// Points covered by `x`: maximal elements of the strict down-set.
    pub fn covered_by(&self, x: usize) -> Vec<usize> {
        let strict = self.strictly_below(x);
        self.point_indices(strict)
            .into_iter()
            .filter(|&y| self.strictly_above(y) & strict == 0)
            .collect()
    }

    /// Points covering `x`: minimal elements of the strict up-set.
    pub fn covering(&self, x: usize) -> Vec<usize> {
        let strict = self.strictly_above(x);
        self.point_indices(strict)
            .into_iter()
            .filter(|&y| self.strictly_below(y) & strict == 0)
            .collect()
    }

    pub fn point_indices(&self, mask: u128) -> Vec<usize> {
        mask_points(mask)
    }

    pub fn point_names_of(&self, mask: u128) -> Vec<String> {
        self.point_indices(mask)
            .into_iter()
            .map(|x| self.names[x].clone())
            .collect()
    }

    /// Wraps a bitmask as a [`DownSet`], checking down-closure.
    pub fn down_set(&self, mask: u128) -> Result<DownSet> {
        for x in self.point_indices(mask) {
            if self.below[x] & !mask != 0 {
                return Err(Error::NotOpen(self.names[x].clone()));
            }
        }
        Ok(DownSet { mask })
    }

    pub fn is_down_set(&self, mask: u128) -> bool {
        self.down_set(mask).is_ok()
    }

    /// The down-closure of an arbitrary subset.
    pub fn down_closure(&self, mask: u128) -> DownSet {
        let mut m = 0u128;
        for x in self.point_indices(mask) {
            m |= self.below[x];
        }
        DownSet { mask: m }
    }

    /// The minimal open set U_x = {y : y <= x}.
    pub fn minimal_open(&self, x: usize) -> Result<DownSet> {
        if x >= self.names.len() {
            return Err(Error::UnknownPoint(format!("#{x}")));
        }
        Ok(DownSet {
            mask: self.below[x],
        })
    }

    /// Same, addressed by name.
    pub fn minimal_open_named(&self, name: &str) -> Result<DownSet> {
        let x = self
            .index_of(name)
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))?;
        self.minimal_open(x)
    }

    /// The poset with the order reversed. Involutive.
    pub fn opposite(&self) -> FinitePoset {
        let below = (0..self.names.len()).map(|x| self.above_mask(x)).collect();
        FinitePoset {
            names: self.names.clone(),
            below,
        }
    }

    /// Points with no strict upper bound, in index order. `M(X)` is the
    /// length of this list.
    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.names.len())
            .filter(|&x| self.strictly_above(x) == 0)
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.names.len())
            .filter(|&x| self.strictly_below(x) == 0)
            .collect()
    }

    pub fn is_antichain(&self, points: &[usize]) -> bool {
        for (i, &x) in points.iter().enumerate() {
            for &y in &points[i + 1..] {
                if self.comparable(x, y) {
                    return false;
                }
            }
        }
        true
    }

    /// The union of U_x over the antichain `a`.
    pub fn open_from_antichain(&self, a: &[usize]) -> Result<DownSet> {
        for (i, &x) in a.iter().enumerate() {
            for &y in &a[i + 1..] {
                if self.comparable(x, y) {
                    return Err(Error::NotAntichain(
                        self.names[x].clone(),
                        self.names[y].clone(),
                    ));
                }
            }
        }
        let mut mask = 0u128;
        for &x in a {
            mask |= self.below[x];
        }
        Ok(DownSet { mask })
    }

    /// Maximal points of a down-set; these form the unique antichain
    /// generating it.
    pub fn maximal_points_of(&self, d: DownSet) -> Vec<usize> {
        self.point_indices(d.mask)
            .into_iter()
            .filter(|&x| self.strictly_above(x) & d.mask == 0)
            .collect()
    }

    /// All down-sets (open sets of the order topology), including the empty
    /// set, via antichain enumeration; sorted by (size, mask).
    ///
    /// Antichains and down-sets are in bijection (a down-set is generated by
    /// its maximal points), so no deduplication is needed.
    pub fn enumerate_open_sets(&self, limit: usize) -> Result<Vec<DownSet>> {
        let n = self.names.len();
        let mut out: Vec<u128> = Vec::new();
        // DFS over antichains by ascending point index.
        let mut stack: Vec<(usize, u128, u128)> = vec![(0, 0, 0)]; // (next, chosen, closure)
        while let Some((next, chosen, closure)) = stack.pop() {
            if next == n {
                if out.len() >= limit {
                    return Err(Error::LimitExceeded(format!(
                        "more than {limit} open sets"
                    )));
                }
                out.push(closure);
                continue;
            }
            // skip `next`
            stack.push((next + 1, chosen, closure));
            // choose `next` if it stays an antichain
            let comparable = self.below[next] | self.above_mask(next);
            if chosen & comparable == 0 {
                stack.push((next + 1, chosen | 1 << next, closure | self.below[next]));
            }
        }
        out.sort_by_key(|&m| (m.count_ones(), m));
        Ok(out.into_iter().map(|mask| DownSet { mask }).collect())
    }

    /// Components of the comparability graph.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.names.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(x) = queue.pop_front() {
                comp.push(x);
                let nbrs = (self.below[x] | self.above_mask(x)) & !(1u128 << x);
                for y in self.point_indices(nbrs) {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The full subposet on the points of `keep`, with compacted indices.
    /// Also returns the original index of each surviving point.
    pub fn subposet(&self, keep: u128) -> (FinitePoset, Vec<usize>) {
        let orig = self.point_indices(keep);
        let mut pos = vec![u32::MAX; self.names.len()];
        for (i, &x) in orig.iter().enumerate() {
            pos[x] = i as u32;
        }
        let names = orig.iter().map(|&x| self.names[x].clone()).collect();
        let below = orig
            .iter()
            .map(|&x| {
                let mut m = 0u128;
                for y in self.point_indices(self.below[x] & keep) {
                    m |= 1 << pos[y];
                }
                m
            })
            .collect();
        (FinitePoset { names, below }, orig)
    }
}

fn closure_of<S: AsRef<str>>(
    points: &[S],
    relations: &[(S, S)],
) -> Result<(Vec<String>, Vec<u128>)> {
    if points.is_empty() {
        return Err(Error::EmptyInput("no points given".into()));
    }
    if points.len() > MAX_POINTS {
        return Err(Error::TooLarge(points.len(), MAX_POINTS));
    }
    let names: Vec<String> = points.iter().map(|p| p.as_ref().to_string()).collect();
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.as_str(), i).is_some() {
            return Err(Error::EmptyInput(format!("duplicate point {n:?}")));
        }
    }
    let n = names.len();
    let mut below: Vec<u128> = (0..n).map(|x| 1u128 << x).collect();
    for (a, b) in relations {
        let &x = index
            .get(a.as_ref())
            .ok_or_else(|| Error::UnknownPoint(a.as_ref().to_string()))?;
        let &y = index
            .get(b.as_ref())
            .ok_or_else(|| Error::UnknownPoint(b.as_ref().to_string()))?;
        below[y] |= 1 << x;
    }
    // transitive closure (Warshall over bit rows)
    loop {
        let mut changed = false;
        for y in 0..n {
            let mut acc = below[y];
            for x in mask_points(below[y]) {
                acc |= below[x];
            }
            if acc != below[y] {
                below[y] = acc;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok((names, below))
}

/// Builds a poset from declared points and `first <= second` pairs
/// (convenience wrapper; see [`FinitePoset::build`]).
pub fn build_poset<S: AsRef<str>>(points: &[S], relations: &[(S, S)]) -> Result<FinitePoset> {
    FinitePoset::build(points, relations)
}

/// Quotients a finite preorder by `x ~ y` iff `x <= y <= x`, yielding a
/// T0-space and the class map (original point index to class index).
pub fn t0_quotient<S: AsRef<str>>(
    points: &[S],
    relations: &[(S, S)],
) -> Result<(FinitePoset, Vec<usize>)> {
    let (names, below) = closure_of(points, relations)?;
    let n = names.len();
    let mut class = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..n {
        if class[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        class[x] = c;
        reps.push(x);
        for y in x + 1..n {
            if below[x] >> y & 1 == 1 && below[y] >> x & 1 == 1 {
                class[y] = c;
            }
        }
    }
    let q_names: Vec<String> = reps.iter().map(|&r| names[r].clone()).collect();
    let q_below: Vec<u128> = reps
        .iter()
        .map(|&r| {
            let mut m = 0u128;
            for y in mask_points(below[r]) {
                m |= 1 << class[y];
            }
            m
        })
        .collect();
    Ok((FinitePoset::from_parts(q_names, q_below), class))
}

/// An order-preserving map between finite posets.
#[derive(Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    source: Arc<FinitePoset>,
    target: Arc<FinitePoset>,
    assignment: Vec<u32>,
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .assignment
            .iter()
            .enumerate()
            .map(|(x, &y)| format!("{}->{}", self.source.name(x), self.target.name(y as usize)))
            .collect();
        write!(f, "MonotoneMap[{}]", pairs.join(", "))
    }
}

impl MonotoneMap {
    pub fn new(
        source: Arc<FinitePoset>,
        target: Arc<FinitePoset>,
        assignment: Vec<u32>,
    ) -> Result<MonotoneMap> {
        if assignment.len() != source.point_count() {
            return Err(Error::NotMonotone(
                format!("{} assigned points", assignment.len()),
                format!("{} source points", source.point_count()),
            ));
        }
        if let Some(&p) = assignment.iter().find(|&&p| p as usize >= target.point_count()) {
            return Err(Error::UnknownPoint(format!("#{p}")));
        }
        for y in 0..source.point_count() {
            for x in mask_points(source.strictly_below(y)) {
                if !target.le(assignment[x] as usize, assignment[y] as usize) {
                    return Err(Error::NotMonotone(
                        source.name(x).to_string(),
                        source.name(y).to_string(),
                    ));
                }
            }
        }
        Ok(MonotoneMap {
            source,
            target,
            assignment,
        })
    }

    pub fn identity(x: &Arc<FinitePoset>) -> MonotoneMap {
        MonotoneMap {
            source: Arc::clone(x),
            target: Arc::clone(x),
            assignment: (0..x.point_count() as u32).collect(),
        }
    }

    pub fn constant(
        source: Arc<FinitePoset>,
        target: Arc<FinitePoset>,
        y: usize,
    ) -> MonotoneMap {
        debug_assert!(y < target.point_count());
        let n = source.point_count();
        MonotoneMap {
            source,
            target,
            assignment: vec![y as u32; n],
        }
    }

    /// The inclusion of a subposet, matching points by name.
    pub fn inclusion(sub: &Arc<FinitePoset>, ambient: &Arc<FinitePoset>) -> Result<MonotoneMap> {
        let mut assignment = Vec::with_capacity(sub.point_count());
        for n in sub.point_names() {
            let i = ambient
                .index_of(n)
                .ok_or_else(|| Error::UnknownPoint(n.clone()))?;
            assignment.push(i as u32);
        }
        MonotoneMap::new(Arc::clone(sub), Arc::clone(ambient), assignment)
    }

    pub fn source(&self) -> &Arc<FinitePoset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinitePoset> {
        &self.target
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x] as usize
    }

    pub fn constant_value(&self) -> Option<usize> {
        let first = *self.assignment.first()?;
        self.assignment
            .iter()
            .all(|&y| y == first)
            .then_some(first as usize)
    }

    pub fn same_endpoints(&self, other: &MonotoneMap) -> bool {
        self.source == other.source && self.target == other.target
    }
}

/// True iff `f <= g` or `g <= f` pointwise (one step of the fence relation).
pub fn maps_comparable(f: &MonotoneMap, g: &MonotoneMap) -> Result<bool> {
    if !f.same_endpoints(g) {
        return Err(Error::MismatchedEndpoints);
    }
    let t = f.target();
    let le_all = |a: &[u32], b: &[u32]| {
        a.iter()
            .zip(b)
            .all(|(&x, &y)| t.le(x as usize, y as usize))
    };
    Ok(le_all(f.assignment(), g.assignment()) || le_all(g.assignment(), f.assignment()))
}

/// A replayable witness that two monotone maps are homotopic: a fence of
/// maps in which consecutive entries are pointwise comparable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyCertificate {
    pub chain: Vec<MonotoneMap>,
}

impl HomotopyCertificate {
    pub fn validate(&self) -> Result<()> {
        if self.chain.is_empty() {
            return Err(Error::EmptyInput("empty homotopy fence".into()));
        }
        for w in self.chain.windows(2) {
            if !maps_comparable(&w[0], &w[1])? {
                return Err(Error::NotMonotone(
                    "fence".into(),
                    "entries not comparable".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn first(&self) -> &MonotoneMap {
        self.chain.first().expect("non-empty fence")
    }

    pub fn last(&self) -> &MonotoneMap {
        self.chain.last().expect("non-empty fence")
    }
}

/// What a homotopy BFS is looking for.
#[derive(Clone, Debug)]
pub(crate) enum PosetGoal {
    Assignment(Vec<u32>),
    AnyConstant,
}

/// BFS over monotone maps `source -> target` by single-point moves.
///
/// A move changes one point's image to a comparable value keeping the map
/// monotone; the components of this move graph are exactly the homotopy
/// classes (validated against the brute-force fence-closure oracle).
pub(crate) fn homotopy_bfs(
    source: &FinitePoset,
    target: &FinitePoset,
    start: Vec<u32>,
    goal: &PosetGoal,
    budget: &SearchBudget,
) -> Reachability<Vec<Vec<u32>>> {
    let n = source.point_count();
    let m = target.point_count();
    let reached = |a: &[u32]| match goal {
        PosetGoal::Assignment(g) => a == &g[..],
        PosetGoal::AnyConstant => a.iter().all(|&y| y == a[0]),
    };
    if reached(&start) {
        return Reachability::Yes(vec![start]);
    }
    let src_below: Vec<Vec<usize>> = (0..n).map(|x| mask_points(source.strictly_below(x))).collect();
    let src_above: Vec<Vec<usize>> = (0..n).map(|x| mask_points(source.strictly_above(x))).collect();
    let mut meter = BudgetMeter::start(budget);
    let mut parent: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
    let mut queue: VecDeque<Vec<u32>> = VecDeque::new();
    parent.insert(start.clone(), Vec::new());
    queue.push_back(start.clone());
    if !meter.tick() {
        return Reachability::Exhausted;
    }
    while let Some(cur) = queue.pop_front() {
        for x in 0..n {
            for w in 0..m as u32 {
                if w == cur[x] || !target.comparable(w as usize, cur[x] as usize) {
                    continue;
                }
                let monotone = src_below[x]
                    .iter()
                    .all(|&y| target.le(cur[y] as usize, w as usize))
                    && src_above[x]
                        .iter()
                        .all(|&y| target.le(w as usize, cur[y] as usize));
                if !monotone {
                    continue;
                }
                let mut next = cur.clone();
                next[x] = w;
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

/// Core reduction data for homotopy questions between two fixed posets; the
/// poset analogue of the reduction used for contiguity. Homotopy classes are
/// invariant under beat-point removal, so reachability runs on the cores and
/// certificates are lifted back through the recorded retraction fences.
pub(crate) struct PosetCoreReduction {
    pub source: Arc<FinitePoset>,
    pub target: Arc<FinitePoset>,
    pub core_source: Arc<FinitePoset>,
    pub core_target: Arc<FinitePoset>,
    source_fence: Vec<Vec<u32>>,
    target_fence: Vec<Vec<u32>>,
    source_core_vertices: Vec<usize>,
    source_core_pos: Vec<u32>,
    target_core_vertices: Vec<usize>,
    target_core_pos: Vec<u32>,
}

fn retraction_fence(x: &FinitePoset) -> (Vec<Vec<u32>>, u128) {
    let run = collapse::poset_collapse_run(x);
    let n = x.point_count();
    let mut fence: Vec<Vec<u32>> = vec![(0..n as u32).collect()];
    for &(p, w) in &run.steps {
        let prev = fence.last().unwrap();
        let next: Vec<u32> = prev
            .iter()
            .map(|&z| if z as usize == p { w as u32 } else { z })
            .collect();
        fence.push(next);
    }
    (fence, run.alive)
}

impl PosetCoreReduction {
    pub fn new(source: &Arc<FinitePoset>, target: &Arc<FinitePoset>) -> PosetCoreReduction {
        let (source_fence, src_alive) = retraction_fence(source);
        let (target_fence, tgt_alive) = if Arc::ptr_eq(source, target) || source == target {
            (source_fence.clone(), src_alive)
        } else {
            retraction_fence(target)
        };
        let (core_source, source_core_vertices) = source.subposet(src_alive);
        let (core_target, target_core_vertices) = target.subposet(tgt_alive);
        let mut source_core_pos = vec![u32::MAX; source.point_count()];
        for (i, &x) in source_core_vertices.iter().enumerate() {
            source_core_pos[x] = i as u32;
        }
        let mut target_core_pos = vec![u32::MAX; target.point_count()];
        for (i, &x) in target_core_vertices.iter().enumerate() {
            target_core_pos[x] = i as u32;
        }
        PosetCoreReduction {
            source: Arc::clone(source),
            target: Arc::clone(target),
            core_source: Arc::new(core_source),
            core_target: Arc::new(core_target),
            source_fence,
            target_fence,
            source_core_vertices,
            source_core_pos,
            target_core_vertices,
            target_core_pos,
        }
    }

    pub fn reduce(&self, assignment: &[u32]) -> Vec<u32> {
        let rho_t = self.target_fence.last().unwrap();
        self.source_core_vertices
            .iter()
            .map(|&x| {
                let y = rho_t[assignment[x] as usize] as usize;
                self.target_core_pos[y]
            })
            .collect()
    }

    /// Lifts a BFS path in the core map space to a full homotopy fence in
    /// the original map space; see the simplicial counterpart for the shape
    /// of the chain.
    pub fn lift(
        &self,
        start: &[u32],
        core_path: &[Vec<u32>],
        end: Option<&[u32]>,
    ) -> Result<HomotopyCertificate> {
        let rho_s_final = self.source_fence.last().unwrap();
        let mut assignments: Vec<Vec<u32>> = Vec::new();
        for rho in &self.source_fence {
            assignments.push(rho.iter().map(|&z| start[z as usize]).collect());
        }
        let base: Vec<u32> = rho_s_final.iter().map(|&z| start[z as usize]).collect();
        for rho_t in &self.target_fence[1..] {
            assignments.push(base.iter().map(|&y| rho_t[y as usize]).collect());
        }
        for m in core_path {
            let a: Vec<u32> = rho_s_final
                .iter()
                .map(|&z| {
                    let pos = self.source_core_pos[z as usize];
                    self.target_core_vertices[m[pos as usize] as usize] as u32
                })
                .collect();
            assignments.push(a);
        }
        if let Some(end) = end {
            let base: Vec<u32> = rho_s_final.iter().map(|&z| end[z as usize]).collect();
            for rho_t in self.target_fence[1..].iter().rev() {
                assignments.push(base.iter().map(|&y| rho_t[y as usize]).collect());
            }
            for rho in self.source_fence.iter().rev() {
                assignments.push(rho.iter().map(|&z| end[z as usize]).collect());
            }
        }
        assignments.dedup();
        let chain = assignments
            .into_iter()
            .map(|a| MonotoneMap::new(Arc::clone(&self.source), Arc::clone(&self.target), a))
            .collect::<Result<Vec<_>>>()?;
        let cert = HomotopyCertificate { chain };
        debug_assert!(cert.validate().is_ok());
        Ok(cert)
    }
}

/// Decides whether two monotone maps are homotopic (lie in the same class of
/// the fence relation), with the same tri-state semantics as the contiguity
/// search.
pub fn homotopic(
    f: &MonotoneMap,
    g: &MonotoneMap,
    budget: &SearchBudget,
) -> Result<Reachability<HomotopyCertificate>> {
    if !f.same_endpoints(g) {
        return Err(Error::MismatchedEndpoints);
    }
    if f.assignment == g.assignment {
        return Ok(Reachability::Yes(HomotopyCertificate {
            chain: vec![f.clone()],
        }));
    }
    let red = PosetCoreReduction::new(f.source(), f.target());
    let a = red.reduce(&f.assignment);
    let b = red.reduce(&g.assignment);
    let outcome = homotopy_bfs(
        &red.core_source,
        &red.core_target,
        a,
        &PosetGoal::Assignment(b),
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

/// Point bijection test preserving the order both ways; backtracking with
/// degree-signature pruning. Intended for small instances.
pub fn posets_isomorphic(x: &FinitePoset, y: &FinitePoset) -> bool {
    let n = x.point_count();
    if n != y.point_count() {
        return false;
    }
    if x == y {
        return true;
    }
    let sig = |p: &FinitePoset, v: usize| -> (u32, u32) {
        (
            p.below_mask(v).count_ones(),
            p.above_mask(v).count_ones(),
        )
    };
    let sigs_x: Vec<(u32, u32)> = (0..n).map(|v| sig(x, v)).collect();
    let sigs_y: Vec<(u32, u32)> = (0..n).map(|v| sig(y, v)).collect();
    {
        let mut a = sigs_x.clone();
        let mut b = sigs_y.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return false;
        }
    }
    let mut mapping = vec![u32::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        v: usize,
        n: usize,
        x: &FinitePoset,
        y: &FinitePoset,
        sigs_x: &[(u32, u32)],
        sigs_y: &[(u32, u32)],
        mapping: &mut [u32],
        used: &mut [bool],
    ) -> bool {
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || sigs_x[v] != sigs_y[w] {
                continue;
            }
            let consistent = (0..v).all(|u| {
                let uw = mapping[u] as usize;
                x.le(u, v) == y.le(uw, w) && x.le(v, u) == y.le(w, uw)
            });
            if !consistent {
                continue;
            }
            mapping[v] = w as u32;
            used[w] = true;
            if extend(v + 1, n, x, y, sigs_x, sigs_y, mapping, used) {
                return true;
            }
            mapping[v] = u32::MAX;
            used[w] = false;
        }
        false
    }

    extend(0, n, x, y, &sigs_x, &sigs_y, &mut mapping, &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn chain(names: &[&str]) -> FinitePoset {
        let rels: Vec<(&str, &str)> = names.windows(2).map(|w| (w[0], w[1])).collect();
        FinitePoset::build(names, &rels).unwrap()
    }

    /// The 4-point model of the circle: c, d below both a and b.
    pub(crate) fn circle() -> FinitePoset {
        FinitePoset::build(
            &["c", "d", "a", "b"],
            &[("c", "a"), ("c", "b"), ("d", "a"), ("d", "b")],
        )
        .unwrap()
    }

    #[test]
    fn build_two_chain() {
        let p = FinitePoset::build(&["a", "b"], &[("a", "b")]).unwrap();
        assert!(p.le(0, 1));
        assert!(!p.le(1, 0));
    }

    #[test]
    fn build_rejects_cycle() {
        let r = FinitePoset::build(&["a", "b"], &[("a", "b"), ("b", "a")]);
        assert!(matches!(r, Err(Error::CycleDetected(_, _))));
    }

    #[test]
    fn build_circle_model() {
        let p = circle();
        assert_eq!(p.maximal_elements(), vec![2, 3]); // a, b
        assert_eq!(p.minimal_elements(), vec![0, 1]); // c, d
        let ua = p.minimal_open_named("a").unwrap();
        assert_eq!(p.point_names_of(ua.mask()), vec!["c", "d", "a"]);
    }

    #[test]
    fn build_takes_transitive_closure() {
        let p = chain(&["a", "b", "c"]);
        assert!(p.le(0, 2));
    }

    #[test]
    fn t0_quotient_collapses_mutual_pairs() {
        let (q, class) = t0_quotient(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap();
        assert_eq!(q.point_count(), 1);
        assert_eq!(class, vec![0, 0]);
    }

    #[test]
    fn t0_quotient_of_honest_poset_is_identity() {
        let (q, class) = t0_quotient(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(q.point_count(), 3);
        assert_eq!(class, vec![0, 1, 2]);
        assert!(posets_isomorphic(&q, &chain(&["a", "b", "c"])));
    }

    #[test]
    fn t0_quotient_mixed() {
        // a <= b <= a plus b <= c collapses to a 2-chain
        let (q, class) =
            t0_quotient(&["a", "b", "c"], &[("a", "b"), ("b", "a"), ("b", "c")]).unwrap();
        assert_eq!(q.point_count(), 2);
        assert_eq!(class, vec![0, 0, 1]);
        assert!(q.le(0, 1));
    }

    #[test]
    fn minimal_open_cases() {
        let p = chain(&["a", "b", "c"]);
        assert_eq!(p.minimal_open(2).unwrap().len(), 3); // maximum: whole chain
        assert_eq!(p.minimal_open(0).unwrap().len(), 1); // minimal point
    }

    #[test]
    fn opposite_is_involutive() {
        let p = chain(&["a", "b", "c"]);
        let op = p.opposite();
        assert!(op.le(2, 0));
        assert_eq!(op.opposite(), p);
        assert!(posets_isomorphic(&circle().opposite(), &circle()));
    }

    #[test]
    fn maximal_elements_of_antichain() {
        let p = FinitePoset::build(&["a", "b", "c"], &[]).unwrap();
        assert_eq!(p.maximal_elements().len(), 3);
    }

    #[test]
    fn open_from_antichain_cases() {
        let p = circle();
        let whole = p.open_from_antichain(&[2, 3]).unwrap();
        assert_eq!(whole.mask(), p.full_mask());
        assert!(p.open_from_antichain(&[]).unwrap().is_empty());
        assert!(matches!(
            p.open_from_antichain(&[0, 2]),
            Err(Error::NotAntichain(_, _))
        ));
    }

    #[test]
    fn open_set_counts() {
        assert_eq!(chain(&["a", "b", "c"]).enumerate_open_sets(100).unwrap().len(), 4);
        let antichain = FinitePoset::build(&["a", "b", "c"], &[]).unwrap();
        assert_eq!(antichain.enumerate_open_sets(100).unwrap().len(), 8);
        let point = FinitePoset::build(&["a"], &[]).unwrap();
        assert_eq!(point.enumerate_open_sets(100).unwrap().len(), 2);
        assert!(matches!(
            antichain.enumerate_open_sets(4),
            Err(Error::LimitExceeded(_))
        ));
    }

    #[test]
    fn down_set_validation() {
        let p = chain(&["a", "b"]);
        assert!(p.down_set(0b01).is_ok());
        assert!(matches!(p.down_set(0b10), Err(Error::NotOpen(_))));
    }

    #[test]
    fn connected_components_cases() {
        assert_eq!(chain(&["a", "b", "c"]).connected_components().len(), 1);
        let two = FinitePoset::build(&["a", "b", "x", "y"], &[("a", "b"), ("x", "y")]).unwrap();
        assert_eq!(two.connected_components().len(), 2);
        assert_eq!(circle().connected_components().len(), 1);
    }

    #[test]
    fn homotopic_chain_to_constant_top() {
        let p = Arc::new(chain(&["a", "b", "c"]));
        let id = MonotoneMap::identity(&p);
        let top = MonotoneMap::constant(Arc::clone(&p), Arc::clone(&p), 2);
        let r = homotopic(&id, &top, &SearchBudget::default()).unwrap();
        match r {
            Reachability::Yes(cert) => {
                cert.validate().unwrap();
                assert_eq!(cert.first(), &id);
                assert_eq!(cert.last(), &top);
            }
            _ => panic!("expected Yes"),
        }
    }

    #[test]
    fn circle_identity_not_null_homotopic() {
        let p = Arc::new(circle());
        let id = MonotoneMap::identity(&p);
        for y in 0..4 {
            let c = MonotoneMap::constant(Arc::clone(&p), Arc::clone(&p), y);
            assert!(homotopic(&id, &c, &SearchBudget::default()).unwrap().is_no());
        }
    }

    #[test]
    fn homotopic_reflexive() {
        let p = Arc::new(circle());
        let id = MonotoneMap::identity(&p);
        match homotopic(&id, &id, &SearchBudget::default()).unwrap() {
            Reachability::Yes(cert) => assert_eq!(cert.chain.len(), 1),
            _ => panic!("expected Yes"),
        }
    }

    #[test]
    fn monotone_map_rejects_order_violation() {
        let p = Arc::new(chain(&["a", "b"]));
        let q = Arc::new(chain(&["x", "y"]));
        let r = MonotoneMap::new(Arc::clone(&p), Arc::clone(&q), vec![1, 0]);
        assert!(matches!(r, Err(Error::NotMonotone(_, _))));
    }

    #[test]
    fn isomorphism_cases() {
        assert!(posets_isomorphic(&chain(&["a", "b"]), &chain(&["x", "y"])));
        let antichain = FinitePoset::build(&["a", "b"], &[]).unwrap();
        assert!(!posets_isomorphic(&chain(&["a", "b"]), &antichain));
    }
}
