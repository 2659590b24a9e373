//! The four invariants: `scat` and `gscat` for simplicial complexes, `cat`
//! and `gcat` for finite T0-spaces, computed by exact minimum-cover search
//! over certified candidate pools, plus the inequality audit.
//!
//! Candidate pools:
//!
//! * `scat` — subcomplexes generated by facet subsets. Categorical
//!   subcomplexes are shrink-closed, so minimal covers can be normalized to
//!   partitions of the facet set (validated against the unrestricted
//!   brute-force oracle).
//! * `cat` — open sets generated by antichains of maximal elements, for the
//!   same reason (the minimal open set of each maximal element must sit
//!   inside some cover element).
//! * `gscat` — strong collapsibility is *not* shrink-closed, so facet-union
//!   mode yields an upper bound (exact only when it meets the `scat` lower
//!   bound), while exhaustive mode searches all subcomplexes and is exact.
//! * `gcat` — all open sets contractible in themselves; fully exact.
//!
//! Every result carries a witness cover with per-element certificates that
//! re-validate through [`crate::verify`].

use std::collections::HashMap;
use std::sync::Arc;

use crate::budget::{Reachability, SearchBudget};
use crate::collapse::{
    beat_points, core_complex, core_poset, is_strongly_collapsible, remove_beat_point,
    ComplexCollapseTrace, PosetCollapseTrace,
};
use crate::complex::{
    contiguity_bfs, ContiguityCertificate, CoreReduction, MapGoal, SimplicialComplex,
    SimplicialMap,
};
use crate::functors::{barycentric_subdivision, face_poset, order_complex};
use crate::poset::{
    homotopy_bfs, DownSet, FinitePoset, HomotopyCertificate, MonotoneMap, PosetCoreReduction,
    PosetGoal,
};
use crate::{Error, Result};

/// One element of a witness cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverElement {
    /// Indices into the ambient complex's canonical facet list.
    FacetSubset(Vec<usize>),
    /// Point indices of the antichain generating an open set.
    Antichain(Vec<usize>),
}

/// A per-cover-element certificate, replayable by [`crate::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Chain from the element's inclusion to a constant map.
    Contiguity(ContiguityCertificate),
    /// Fence from the element's inclusion to a constant map.
    Homotopy(HomotopyCertificate),
    /// Strong collapse of the element to a single vertex.
    ComplexCollapse(ComplexCollapseTrace),
    /// Beat-point collapse of the element to a single point.
    PosetCollapse(PosetCollapseTrace),
}

/// An invariant value with exactness status and a certified witness cover.
///
/// `lower <= value <= upper` always holds; `exact` iff the bounds meet. The
/// witness has `upper + 1` elements and covers the whole object.
#[derive(Clone, Debug)]
pub struct CategoryResult {
    pub lower: usize,
    pub upper: usize,
    pub witness: Vec<CoverElement>,
    pub certificates: Vec<Certificate>,
    pub mode: &'static str,
}

impl CategoryResult {
    pub fn exact(&self) -> bool {
        self.lower == self.upper
    }

    /// The exact value, when known.
    pub fn value(&self) -> Option<usize> {
        self.exact().then_some(self.upper)
    }

    pub fn bounds(&self) -> (usize, usize) {
        (self.lower, self.upper)
    }
}

/// Decides whether a subcomplex is categorical in `K`: whether its inclusion
/// lies in the contiguity class of a constant map. Runs on the cores of both
/// complexes; the certificate chain ends at an explicit constant map.
pub fn is_categorical_subcomplex(
    u: &Arc<SimplicialComplex>,
    k: &Arc<SimplicialComplex>,
    budget: &SearchBudget,
) -> Result<Reachability<ContiguityCertificate>> {
    let incl = SimplicialMap::inclusion(u, k)?;
    let red = CoreReduction::new(u, k);
    let start = red.reduce(incl.assignment());
    match contiguity_bfs(
        &red.core_source,
        &red.core_target,
        start,
        &MapGoal::AnyConstant,
        budget,
    ) {
        Reachability::Yes(path) => Ok(Reachability::Yes(red.lift(incl.assignment(), &path, None)?)),
        Reachability::No => Ok(Reachability::No),
        Reachability::Exhausted => Ok(Reachability::Exhausted),
    }
}

/// Decides whether an open set is categorical in `X`: whether its inclusion
/// is homotopic to a constant map into `X`.
pub fn is_categorical_open(
    x: &Arc<FinitePoset>,
    u: DownSet,
    budget: &SearchBudget,
) -> Result<Reachability<HomotopyCertificate>> {
    if u.is_empty() {
        return Err(Error::EmptySubset);
    }
    x.down_set(u.mask())?;
    let (sub, _) = x.subposet(u.mask());
    let sub = Arc::new(sub);
    let incl = MonotoneMap::inclusion(&sub, x)?;
    let red = PosetCoreReduction::new(&sub, x);
    let start = red.reduce(incl.assignment());
    match homotopy_bfs(
        &red.core_source,
        &red.core_target,
        start,
        &PosetGoal::AnyConstant,
        budget,
    ) {
        Reachability::Yes(path) => Ok(Reachability::Yes(red.lift(incl.assignment(), &path, None)?)),
        Reachability::No => Ok(Reachability::No),
        Reachability::Exhausted => Ok(Reachability::Exhausted),
    }
}

fn bits64(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut b = mask;
    while b != 0 {
        out.push(b.trailing_zeros() as usize);
        b &= b - 1;
    }
    out
}

fn full64(items: usize) -> u64 {
    if items == 64 {
        u64::MAX
    } else {
        (1u64 << items) - 1
    }
}

struct CoverOutcome<C> {
    blocks: Vec<u64>,
    certs: Vec<C>,
    lower: usize,
    upper: usize,
}

/// Exact minimum cover by certified blocks, via iterative deepening over
/// partitions of the item set.
///
/// Because the "categorical" property is shrink-closed in both settings, any
/// cover of size `s` normalizes to a partition into at most `s` categorical
/// blocks, so refuting all partitions at size `s` proves there is no cover
/// of that size. Each size first tries fast upper-bound candidates (caller
/// seeds, singleton-plus-rest splits, greedily grown blocks passing the
/// `cheap` exactness test), then enumerates partitions in canonical
/// (restricted-growth) order when the count fits the candidate budget.
/// Sizes whose enumeration is skipped or hits exhausted block certifications
/// widen the result to an interval instead of producing a wrong exact value.
fn min_partition_cover<C: Clone>(
    items: usize,
    seeds: &[Vec<u64>],
    cheap: &dyn Fn(u64) -> bool,
    certify: &mut dyn FnMut(u64) -> Reachability<C>,
    budget: &SearchBudget,
) -> CoverOutcome<C> {
    assert!(items >= 1);
    let full = full64(items);
    let mut memo: HashMap<u64, Reachability<C>> = HashMap::new();
    let mut status = |mask: u64, memo: &mut HashMap<u64, Reachability<C>>| -> Reachability<C> {
        if let Some(s) = memo.get(&mask) {
            return s.clone();
        }
        let s = certify(mask);
        memo.insert(mask, s.clone());
        s
    };
    let finish = |blocks: Vec<u64>,
                  memo: &HashMap<u64, Reachability<C>>,
                  first_uncertain: Option<usize>| {
        let certs = blocks
            .iter()
            .map(|b| match &memo[b] {
                Reachability::Yes(c) => c.clone(),
                _ => unreachable!("found blocks are certified Yes"),
            })
            .collect();
        let upper = blocks.len() - 1;
        let lower = first_uncertain.map(|s| (s - 1).min(upper)).unwrap_or(upper);
        CoverOutcome {
            blocks,
            certs,
            lower,
            upper,
        }
    };

    let mut first_uncertain: Option<usize> = None;
    for s in 1..=items {
        // Fast wave: caller seeds get full certification; other heuristic
        // families are attempted only when every block already passes the
        // cheap exact test (certification is then immediate).
        let mut families: Vec<(Vec<u64>, bool)> = Vec::new(); // (blocks, needs_cheap)
        for seed in seeds {
            if !seed.is_empty() && seed.len() <= s {
                families.push((seed.clone(), false));
            }
        }
        if s == items {
            families.push(((0..items).map(|i| 1u64 << i).collect(), true));
        }
        if s >= 2 {
            for i in 0..items {
                families.push((vec![1u64 << i, full & !(1u64 << i)], true));
            }
            // Greedy partition: grow each block while the cheap test holds.
            let mut blocks = Vec::new();
            let mut remaining = full;
            while remaining != 0 {
                let mut block = 1u64 << remaining.trailing_zeros();
                for j in bits64(remaining & !block) {
                    if cheap(block | 1 << j) {
                        block |= 1 << j;
                    }
                }
                blocks.push(block);
                remaining &= !block;
            }
            if blocks.len() <= s {
                families.push((blocks, true));
            }
        }
        'fam: for (fam, needs_cheap) in families {
            if fam.iter().fold(0u64, |a, &b| a | b) != full {
                continue;
            }
            if needs_cheap && !fam.iter().all(|&b| cheap(b)) {
                continue;
            }
            for &b in &fam {
                if !status(b, &mut memo).is_yes() {
                    continue 'fam;
                }
            }
            return finish(fam, &memo, first_uncertain);
        }

        // Exhaustive wave: canonical partition enumeration, gated by the
        // candidate budget.
        let estimate = (s as u128).saturating_pow(items.saturating_sub(1) as u32);
        if estimate > budget.max_cover_candidates as u128 {
            first_uncertain.get_or_insert(s);
            continue;
        }
        let mut possibly_valid = false;
        let mut found: Option<Vec<u64>> = None;
        let mut blocks: Vec<u64> = vec![1u64 << 0];
        enumerate_partitions(
            1,
            items,
            s,
            &mut blocks,
            &mut |blocks: &[u64]| -> bool {
                let mut all_yes = true;
                for &b in blocks {
                    match status(b, &mut memo) {
                        Reachability::Yes(_) => {}
                        Reachability::No => return false,
                        Reachability::Exhausted => all_yes = false,
                    }
                }
                if all_yes {
                    found = Some(blocks.to_vec());
                    return true;
                }
                possibly_valid = true;
                false
            },
        );
        if let Some(blocks) = found {
            return finish(blocks, &memo, first_uncertain);
        }
        if possibly_valid {
            first_uncertain.get_or_insert(s);
        }
    }
    unreachable!("the singleton partition always certifies")
}

/// Visits every partition of `0..items` into at most `max_blocks` non-empty
/// blocks, in restricted-growth order; `visit` returns true to stop.
fn enumerate_partitions(
    idx: usize,
    items: usize,
    max_blocks: usize,
    blocks: &mut Vec<u64>,
    visit: &mut dyn FnMut(&[u64]) -> bool,
) -> bool {
    if idx == items {
        return visit(blocks);
    }
    let bit = 1u64 << idx;
    for b in 0..blocks.len() {
        blocks[b] |= bit;
        if enumerate_partitions(idx + 1, items, max_blocks, blocks, visit) {
            blocks[b] &= !bit;
            return true;
        }
        blocks[b] &= !bit;
    }
    if blocks.len() < max_blocks {
        blocks.push(bit);
        let stop = enumerate_partitions(idx + 1, items, max_blocks, blocks, visit);
        blocks.pop();
        if stop {
            return true;
        }
    }
    false
}

/// Exact minimum set cover by branch and bound with iterative deepening;
/// returns candidate indices, smallest cover first found in canonical order.
fn min_set_cover(universe: u128, cands: &[u128]) -> Option<Vec<usize>> {
    if universe == 0 {
        return Some(Vec::new());
    }
    for depth in 1..=universe.count_ones() as usize {
        let mut chosen = Vec::new();
        if cover_dfs(universe, cands, depth, &mut chosen) {
            return Some(chosen);
        }
    }
    None
}

fn cover_dfs(uncovered: u128, cands: &[u128], depth: usize, chosen: &mut Vec<usize>) -> bool {
    if uncovered == 0 {
        return true;
    }
    if depth == 0 {
        return false;
    }
    let item = uncovered.trailing_zeros();
    let mut order: Vec<usize> = (0..cands.len())
        .filter(|&i| cands[i] >> item & 1 == 1)
        .collect();
    order.sort_by_key(|&i| std::cmp::Reverse((cands[i] & uncovered).count_ones()));
    for i in order {
        if depth == 1 && uncovered & !cands[i] != 0 {
            continue;
        }
        chosen.push(i);
        if cover_dfs(uncovered & !cands[i], cands, depth - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// The simplicial LS-category: least `m` such that `K` is covered by `m + 1`
/// categorical subcomplexes.
pub fn scat(k: &Arc<SimplicialComplex>, budget: &SearchBudget) -> CategoryResult {
    scat_seeded(k, &[], budget)
}

/// `scat` with caller-provided candidate covers (each a list of
/// facet-index blocks) tried before the generic search; used to transport
/// covers along subdivision.
pub fn scat_seeded(
    k: &Arc<SimplicialComplex>,
    seeds: &[Vec<Vec<usize>>],
    budget: &SearchBudget,
) -> CategoryResult {
    let items = k.facet_count();
    let seed_masks: Vec<Vec<u64>> = seeds
        .iter()
        .map(|cover| {
            cover
                .iter()
                .map(|block| block.iter().fold(0u64, |a, &i| a | 1 << i))
                .collect()
        })
        .collect();
    let sub_of = |mask: u64| Arc::new(k.generated_subcomplex(&bits64(mask)).expect("non-empty"));
    let cheap = |mask: u64| is_strongly_collapsible(&sub_of(mask));
    let mut certify = |mask: u64| {
        is_categorical_subcomplex(&sub_of(mask), k, budget)
            .expect("facet-generated subcomplexes are subcomplexes")
    };
    let out = min_partition_cover(items, &seed_masks, &cheap, &mut certify, budget);
    CategoryResult {
        lower: out.lower,
        upper: out.upper,
        witness: out.blocks.iter().map(|&b| CoverElement::FacetSubset(bits64(b))).collect(),
        certificates: out.certs.into_iter().map(Certificate::Contiguity).collect(),
        mode: "facet-subsets",
    }
}

/// The LS-category of a finite space: least `n` such that `X` is covered by
/// `n + 1` categorical open sets.
pub fn cat(x: &Arc<FinitePoset>, budget: &SearchBudget) -> CategoryResult {
    let maxima = x.maximal_elements();
    let items = maxima.len();
    let antichain_of = |mask: u64| -> Vec<usize> { bits64(mask).into_iter().map(|i| maxima[i]).collect() };
    let open_of = |mask: u64| -> DownSet {
        x.open_from_antichain(&antichain_of(mask))
            .expect("subsets of the maxima are antichains")
    };
    let cheap = |mask: u64| {
        let (sub, _) = x.subposet(open_of(mask).mask());
        crate::collapse::is_contractible_poset(&sub)
    };
    let mut certify =
        |mask: u64| is_categorical_open(x, open_of(mask), budget).expect("antichain opens are open");
    let out = min_partition_cover(items, &[], &cheap, &mut certify, budget);
    CategoryResult {
        lower: out.lower,
        upper: out.upper,
        witness: out
            .blocks
            .iter()
            .map(|&b| CoverElement::Antichain(antichain_of(b)))
            .collect(),
        certificates: out.certs.into_iter().map(Certificate::Homotopy).collect(),
        mode: "maximal-antichains",
    }
}

/// Candidate pool mode for [`gscat`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GscatMode {
    /// Subcomplexes generated by facet subsets: certified upper bound, exact
    /// only when it meets the `scat` lower bound (strong collapsibility is
    /// not shrink-closed, so no partition normal form applies).
    FacetUnion,
    /// All subcomplexes (antichains of simplices): complete pool, exact;
    /// tiny inputs only.
    Exhaustive,
}

/// The simplicial geometric category: least `m` such that `K` is covered by
/// `m + 1` strongly collapsible subcomplexes.
pub fn gscat(
    k: &Arc<SimplicialComplex>,
    mode: GscatMode,
    budget: &SearchBudget,
) -> Result<CategoryResult> {
    let items = k.facet_count();
    let universe = full64(items) as u128;
    match mode {
        GscatMode::FacetUnion => {
            let scat_lower = scat(k, budget).lower;
            // Pool: strongly collapsible facet subsets (complete when the
            // subset count fits the candidate budget, else a heuristic
            // family of singletons and greedily grown blocks).
            let mut pool: Vec<u64> = Vec::new();
            let complete = items < 64
                && (1u128 << items) <= budget.max_cover_candidates as u128;
            let collapsible =
                |mask: u64| is_strongly_collapsible(&k.generated_subcomplex(&bits64(mask)).unwrap());
            if complete {
                for mask in 1..=full64(items) {
                    if collapsible(mask) {
                        pool.push(mask);
                    }
                }
            } else {
                for i in 0..items {
                    let mut block = 1u64 << i;
                    for j in 0..items {
                        if j != i && collapsible(block | 1 << j) {
                            block |= 1 << j;
                        }
                    }
                    pool.push(1u64 << i);
                    if block.count_ones() > 1 {
                        pool.push(block);
                    }
                }
                pool.sort_unstable();
                pool.dedup();
            }
            let cand_masks: Vec<u128> = pool.iter().map(|&m| m as u128).collect();
            let chosen = min_set_cover(universe, &cand_masks)
                .expect("singleton facet subcomplexes are strongly collapsible");
            let upper = chosen.len() - 1;
            let lower = scat_lower.min(upper);
            let (witness, certificates) = chosen
                .iter()
                .map(|&i| {
                    let block = pool[i];
                    let sub = k.generated_subcomplex(&bits64(block)).unwrap();
                    (
                        CoverElement::FacetSubset(bits64(block)),
                        Certificate::ComplexCollapse(core_complex(&sub).1),
                    )
                })
                .unzip();
            Ok(CategoryResult {
                lower,
                upper,
                witness,
                certificates,
                mode: "facet-union",
            })
        }
        GscatMode::Exhaustive => {
            // Pool: all antichains of simplices of K that are strongly
            // collapsible. A cover element contributes exactly the facets it
            // contains verbatim (a facet is maximal, so it lies in a
            // subcomplex only as one of its facets).
            let simplices = k.simplices();
            let n = simplices.len();
            let facet_index: HashMap<u64, usize> = k
                .facets()
                .iter()
                .enumerate()
                .map(|(i, f)| (f.bits(), i))
                .collect();
            let mut by_coverage: HashMap<u128, Vec<u64>> = HashMap::new();
            let mut count = 0usize;
            let mut stack: Vec<(usize, Vec<u64>)> = vec![(0, Vec::new())];
            while let Some((next, chosen)) = stack.pop() {
                if next == n {
                    if chosen.is_empty() {
                        continue;
                    }
                    count += 1;
                    if count > budget.max_cover_candidates {
                        return Err(Error::LimitExceeded(format!(
                            "more than {} exhaustive-mode candidates",
                            budget.max_cover_candidates
                        )));
                    }
                    let coverage = chosen
                        .iter()
                        .filter_map(|m| facet_index.get(m))
                        .fold(0u128, |a, &i| a | 1 << i);
                    // keep one *strongly collapsible* representative per
                    // coverage: antichains with equal coverage can differ in
                    // collapsibility
                    if coverage != 0
                        && !by_coverage.contains_key(&coverage)
                        && is_strongly_collapsible(&k.subcomplex_from_simplices(&chosen).unwrap())
                    {
                        by_coverage.insert(coverage, chosen);
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
            let mut entries: Vec<(u128, Vec<u64>)> = by_coverage.into_iter().collect();
            entries.sort_by_key(|&(cov, _)| cov);
            let cand_masks: Vec<u128> = entries.iter().map(|&(cov, _)| cov).collect();
            let chosen = min_set_cover(universe, &cand_masks)
                .expect("single facets are strongly collapsible candidates");
            let upper = chosen.len() - 1;
            let (witness, certificates) = chosen
                .iter()
                .map(|&i| {
                    let masks = &entries[i].1;
                    let sub = k.subcomplex_from_simplices(masks).unwrap();
                    let facet_ids = bits64(entries[i].0 as u64);
                    (
                        CoverElement::FacetSubset(facet_ids),
                        Certificate::ComplexCollapse(core_complex(&sub).1),
                    )
                })
                .unzip();
            Ok(CategoryResult {
                lower: upper,
                upper,
                witness,
                certificates,
                mode: "exhaustive",
            })
        }
    }
}

/// The geometric category of a finite space: least `n` such that `X` is
/// covered by `n + 1` open sets contractible in themselves. Fully exact.
pub fn gcat(x: &Arc<FinitePoset>, budget: &SearchBudget) -> Result<CategoryResult> {
    let opens = x.enumerate_open_sets(budget.max_cover_candidates)?;
    let mut pool: Vec<(u128, PosetCollapseTrace)> = Vec::new();
    for d in opens {
        if d.is_empty() {
            continue;
        }
        let (sub, _) = x.subposet(d.mask());
        let (core, trace) = core_poset(&sub);
        if core.point_count() == 1 {
            pool.push((d.mask(), trace));
        }
    }
    let cand_masks: Vec<u128> = pool.iter().map(|&(m, _)| m).collect();
    let chosen = min_set_cover(x.full_mask(), &cand_masks)
        .expect("minimal open sets are contractible in themselves");
    let upper = chosen.len() - 1;
    let (witness, certificates) = chosen
        .iter()
        .map(|&i| {
            let d = x.down_set(pool[i].0).unwrap();
            (
                CoverElement::Antichain(x.maximal_points_of(d)),
                Certificate::PosetCollapse(pool[i].1.clone()),
            )
        })
        .unzip();
    Ok(CategoryResult {
        lower: upper,
        upper,
        witness,
        certificates,
        mode: "open-sets-exhaustive",
    })
}

/// Outcome of one inequality check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Lt,
    Eq,
    Ge,
}

/// One audited inequality with the bounds that decided it.
#[derive(Clone, Debug)]
pub struct InequalityCheck {
    pub name: String,
    /// `(lower, upper)` bounds of the two sides; `None` when a side could
    /// not be computed within limits.
    pub lhs: Option<(usize, usize)>,
    pub rhs: Option<(usize, usize)>,
    pub relation: Relation,
    pub verdict: Verdict,
}

/// A named quantity computed during the audit, for reporting.
#[derive(Clone, Debug)]
pub struct AuditValue {
    pub name: String,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, Default)]
pub struct InequalityReport {
    pub values: Vec<AuditValue>,
    pub checks: Vec<InequalityCheck>,
}

impl InequalityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.verdict == Verdict::Holds)
    }

    pub fn any_violated(&self) -> bool {
        self.checks.iter().any(|c| c.verdict == Verdict::Violated)
    }

    fn record(&mut self, name: &str, result: &CategoryResult) -> Option<(usize, usize)> {
        self.values.push(AuditValue {
            name: name.to_string(),
            lower: result.lower,
            upper: result.upper,
            exact: result.exact(),
        });
        Some(result.bounds())
    }

    fn record_exact(&mut self, name: &str, v: usize) -> Option<(usize, usize)> {
        self.values.push(AuditValue {
            name: name.to_string(),
            lower: v,
            upper: v,
            exact: true,
        });
        Some((v, v))
    }

    fn check(
        &mut self,
        name: &str,
        lhs: Option<(usize, usize)>,
        relation: Relation,
        rhs: Option<(usize, usize)>,
    ) {
        let verdict = match (lhs, rhs) {
            (Some(l), Some(r)) => decide(l, relation, r),
            _ => Verdict::Inconclusive,
        };
        self.checks.push(InequalityCheck {
            name: name.to_string(),
            lhs,
            rhs,
            relation,
            verdict,
        });
    }
}

fn decide(l: (usize, usize), relation: Relation, r: (usize, usize)) -> Verdict {
    match relation {
        Relation::Le => {
            if l.1 <= r.0 {
                Verdict::Holds
            } else if l.0 > r.1 {
                Verdict::Violated
            } else {
                Verdict::Inconclusive
            }
        }
        Relation::Lt => {
            if l.1 < r.0 {
                Verdict::Holds
            } else if l.0 >= r.1 {
                Verdict::Violated
            } else {
                Verdict::Inconclusive
            }
        }
        Relation::Ge => decide(r, Relation::Le, l),
        Relation::Eq => {
            if l.0 == l.1 && r.0 == r.1 {
                if l.0 == r.0 {
                    Verdict::Holds
                } else {
                    Verdict::Violated
                }
            } else if l.1 < r.0 || r.1 < l.0 {
                Verdict::Violated
            } else {
                Verdict::Inconclusive
            }
        }
    }
}

fn gcat_bounds(
    report: &mut InequalityReport,
    name: &str,
    x: &Arc<FinitePoset>,
    budget: &SearchBudget,
) -> Option<(usize, usize)> {
    match gcat(x, budget) {
        Ok(r) => report.record(name, &r),
        Err(_) => None,
    }
}

/// Computes every applicable pair of invariants for the given objects and
/// audits the known relations between them. A violation among exact values
/// indicates a defect; interval results yield `Inconclusive` rather than a
/// wrong verdict.
pub fn check_inequalities(
    k: Option<&Arc<SimplicialComplex>>,
    x: Option<&Arc<FinitePoset>>,
    budget: &SearchBudget,
) -> Result<InequalityReport> {
    if k.is_none() && x.is_none() {
        return Err(Error::EmptyInput("no complex or poset given".into()));
    }
    let mut report = InequalityReport::default();

    if let Some(x) = x {
        let cat_x = cat(x, budget);
        let cat_b = report.record("cat X", &cat_x);
        let gcat_b = gcat_bounds(&mut report, "gcat X", x, budget);
        let m = x.maximal_elements().len();
        let m_b = report.record_exact("M(X)", m);
        report.check("cat X <= gcat X", cat_b, Relation::Le, gcat_b);
        report.check("gcat X < M(X)", gcat_b, Relation::Lt, m_b);

        let kx = Arc::new(order_complex(x));
        let scat_kx = scat(&kx, budget);
        let scat_kx_b = report.record("scat K(X)", &scat_kx);
        report.check("scat K(X) <= cat X", scat_kx_b, Relation::Le, cat_b);
        let gscat_kx = gscat(&kx, GscatMode::FacetUnion, budget)?;
        let gscat_kx_b = report.record("gscat K(X)", &gscat_kx);
        report.check("gscat K(X) <= gcat X", gscat_kx_b, Relation::Le, gcat_b);

        if let Some(bp) = beat_points(x).first() {
            let (rest, _) = remove_beat_point(x, bp.point)?;
            let rest = Arc::new(rest);
            let cat_rest = cat(&rest, budget);
            let cat_rest_b = report.record("cat X\\x0", &cat_rest);
            report.check("cat X\\x0 = cat X", cat_rest_b, Relation::Eq, cat_b);
            let gcat_rest_b = gcat_bounds(&mut report, "gcat X\\x0", &rest, budget);
            report.check("gcat X\\x0 >= gcat X", gcat_rest_b, Relation::Ge, gcat_b);
        }
    }

    if let Some(k) = k {
        let scat_k = scat(k, budget);
        let scat_b = report.record("scat K", &scat_k);
        let gscat_k = gscat(k, GscatMode::FacetUnion, budget)?;
        let gscat_b = report.record("gscat K", &gscat_k);
        report.check("scat K <= gscat K", scat_b, Relation::Le, gscat_b);

        let core = Arc::new(core_complex(k).0);
        let scat_core = scat(&core, budget);
        let scat_core_b = report.record("scat K0", &scat_core);
        report.check("scat K0 = scat K", scat_core_b, Relation::Eq, scat_b);

        let chi = Arc::new(face_poset(k));
        let cat_chi = cat(&chi, budget);
        let cat_chi_b = report.record("cat chi(K)", &cat_chi);
        report.check("cat chi(K) <= scat K", cat_chi_b, Relation::Le, scat_b);
        let gcat_chi_b = gcat_bounds(&mut report, "gcat chi(K)", &chi, budget);
        report.check("gcat chi(K) <= gscat K", gcat_chi_b, Relation::Le, gscat_b);

        // scat sd(K) <= scat K, via the transported witness cover: the
        // subdivision of each witness block is generated by the maximal
        // chains whose top simplex lies in the block.
        let sd = Arc::new(barycentric_subdivision(k));
        let seed = transport_cover_to_subdivision(k, &sd, &scat_k.witness);
        let scat_sd = scat_seeded(&sd, &[seed], budget);
        let scat_sd_b = report.record("scat sd(K)", &scat_sd);
        report.check("scat sd(K) <= scat K", scat_sd_b, Relation::Le, scat_b);
    }

    Ok(report)
}

/// Maps a facet-subset cover of `K` to the corresponding facet-subset cover
/// of `sd(K)`: an sd-facet (maximal chain) belongs to a block iff its top
/// simplex lies in the block's subcomplex.
pub fn transport_cover_to_subdivision(
    k: &SimplicialComplex,
    sd: &SimplicialComplex,
    witness: &[CoverElement],
) -> Vec<Vec<usize>> {
    let simplices = k.simplices();
    witness
        .iter()
        .map(|el| {
            let block = match el {
                CoverElement::FacetSubset(idxs) => idxs,
                CoverElement::Antichain(_) => unreachable!("complex witness"),
            };
            let block_facets: Vec<u64> = block.iter().map(|&i| k.facets()[i].bits()).collect();
            sd.facets()
                .iter()
                .enumerate()
                .filter(|(_, chain)| {
                    // top of the chain = union of its members' vertex sets
                    let top = chain
                        .vertices()
                        .into_iter()
                        .fold(0u64, |a, v| a | simplices[v].bits());
                    block_facets.iter().any(|&f| top & !f == 0)
                })
                .map(|(i, _)| i)
                .collect()
        })
        .collect()
}
