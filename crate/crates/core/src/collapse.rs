//! Strong collapses and cores on both sides of the correspondence:
//! dominated vertices of simplicial complexes and beat points of finite
//! posets, with replayable collapse traces.
//!
//! Cores are unique up to isomorphism, so the removal order (canonically
//! first dominated vertex / beat point, canonically smallest witness) is a
//! determinism choice, not a semantic one.

use std::sync::Arc;

use crate::complex::{complexes_isomorphic, SimplicialComplex, SimplicialMap};
use crate::poset::{maps_comparable, FinitePoset, MonotoneMap};
use crate::{Error, Result};

/// All pairs `(v, v')` where every facet containing `v` also contains `v'`,
/// in vertex order; the witness is the smallest valid one.
pub fn dominated_vertices(k: &SimplicialComplex) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for v in 0..k.vertex_count() {
        if let Some(w) = dominator_of(k.facets().iter().map(|f| f.bits()), v) {
            out.push((v, w));
        }
    }
    out
}

/// Smallest vertex contained in every facet of the iterator that contains
/// `v`, other than `v` itself.
fn dominator_of(facets: impl Iterator<Item = u64>, v: usize) -> Option<usize> {
    let mut common = u64::MAX;
    let mut any = false;
    for f in facets {
        if f >> v & 1 == 1 {
            common &= f;
            any = true;
        }
    }
    if !any {
        return None;
    }
    common &= !(1u64 << v);
    (common != 0).then(|| common.trailing_zeros() as usize)
}

fn is_dominated_by(k: &SimplicialComplex, v: usize, w: usize) -> bool {
    v != w
        && w < k.vertex_count()
        && k.facets()
            .iter()
            .filter(|f| f.contains(v))
            .all(|f| f.contains(w))
        && k.facets().iter().any(|f| f.contains(v))
}

/// One elementary strong collapse: removes a dominated vertex and returns
/// `K \ v` together with the retraction sending `v` to its dominator.
pub fn strong_collapse_step(
    k: &SimplicialComplex,
    v: usize,
    w: usize,
) -> Result<(SimplicialComplex, SimplicialMap)> {
    if !is_dominated_by(k, v, w) {
        let vn = k.vertex_names().get(v).cloned().unwrap_or_else(|| format!("#{v}"));
        let wn = k.vertex_names().get(w).cloned().unwrap_or_else(|| format!("#{w}"));
        return Err(Error::NotDominated(vn, wn));
    }
    let sub = k.full_subcomplex(k.full_mask() & !(1u64 << v));
    let ambient = Arc::new(k.clone());
    let sub = Arc::new(sub);
    let assignment: Vec<u32> = (0..k.vertex_count())
        .map(|x| {
            let y = if x == v { w } else { x };
            sub.index_of(k.name(y)).expect("surviving vertex") as u32
        })
        .collect();
    let r = SimplicialMap::new(Arc::clone(&ambient), Arc::clone(&sub), assignment)?;
    debug_assert!((0..sub.vertex_count())
        .all(|x| r.apply(ambient.index_of(sub.name(x)).unwrap()) == x));
    Ok((Arc::try_unwrap(sub).unwrap_or_else(|a| (*a).clone()), r))
}

/// A replayable record of a sequence of elementary strong collapses of a
/// complex. Steps are (removed vertex, witness) by name, so they survive
/// index compaction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexCollapseTrace {
    pub start: SimplicialComplex,
    pub end: SimplicialComplex,
    pub steps: Vec<(String, String)>,
}

impl ComplexCollapseTrace {
    /// Replays every step, re-checking the domination condition at removal
    /// time, and confirms the recorded end is reproduced.
    pub fn validate(&self) -> Result<()> {
        let mut cur = self.start.clone();
        for (v, w) in &self.steps {
            let vi = cur
                .index_of(v)
                .ok_or_else(|| Error::UnknownVertex(v.clone()))?;
            let wi = cur
                .index_of(w)
                .ok_or_else(|| Error::UnknownVertex(w.clone()))?;
            cur = strong_collapse_step(&cur, vi, wi)?.0;
        }
        if cur != self.end {
            return Err(Error::TraceReplayMismatch);
        }
        Ok(())
    }
}

/// Internal collapse engine working in the original index space, so callers
/// can compose the per-step retractions into fences.
pub(crate) struct ComplexRun {
    /// (removed vertex, witness), original indices, in removal order.
    pub steps: Vec<(usize, usize)>,
    /// Bitmask of surviving vertices.
    pub alive: u64,
}

pub(crate) fn collapse_run(k: &SimplicialComplex) -> ComplexRun {
    let mut facets: Vec<u64> = k.facets().iter().map(|f| f.bits()).collect();
    let mut alive = k.full_mask();
    let mut steps = Vec::new();
    'outer: loop {
        for v in 0..k.vertex_count() {
            if alive >> v & 1 == 0 {
                continue;
            }
            if let Some(w) = dominator_of(facets.iter().copied(), v) {
                steps.push((v, w));
                alive &= !(1u64 << v);
                let stripped: Vec<u64> = facets.iter().map(|f| f & alive).collect();
                let mut next: Vec<u64> = Vec::new();
                for &f in &stripped {
                    if f != 0
                        && !stripped.iter().any(|&g| g != f && f & !g == 0)
                        && !next.contains(&f)
                    {
                        next.push(f);
                    }
                }
                facets = next;
                continue 'outer;
            }
        }
        return ComplexRun { steps, alive };
    }
}

/// The core of a complex: repeatedly removes the first dominated vertex
/// until none remain, returning the core and a replayable trace.
pub fn core_complex(k: &SimplicialComplex) -> (SimplicialComplex, ComplexCollapseTrace) {
    let run = collapse_run(k);
    let core = k.full_subcomplex(run.alive);
    let steps = run
        .steps
        .iter()
        .map(|&(v, w)| (k.name(v).to_string(), k.name(w).to_string()))
        .collect();
    let trace = ComplexCollapseTrace {
        start: k.clone(),
        end: core.clone(),
        steps,
    };
    (core, trace)
}

/// True iff the core is a single vertex (strong homotopy type of a point).
pub fn is_strongly_collapsible(k: &SimplicialComplex) -> bool {
    collapse_run(k).alive.count_ones() == 1
}

/// Two complexes have the same strong homotopy type iff their cores are
/// isomorphic.
pub fn same_strong_homotopy_type(k: &SimplicialComplex, l: &SimplicialComplex) -> bool {
    complexes_isomorphic(&core_complex(k).0, &core_complex(l).0)
}

/// Which side of the order witnesses a beat point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BeatDirection {
    /// Covered by exactly one point (witness above).
    Up,
    /// Covers exactly one point (witness below).
    Down,
    /// Both characterizations apply.
    Both,
}

/// A beat point with its canonical witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BeatPoint {
    pub point: usize,
    pub witness: usize,
    pub direction: BeatDirection,
}

/// The minimum of the strict up-set of `x` within `alive`, if it exists.
fn min_above(x: &FinitePoset, p: usize, alive: u128) -> Option<usize> {
    let cand = x.strictly_above(p) & alive;
    crate::poset::mask_points(cand)
        .into_iter()
        .find(|&m| cand & !x.above_mask(m) == 0)
}

/// The maximum of the strict down-set of `p` within `alive`, if it exists.
fn max_below(x: &FinitePoset, p: usize, alive: u128) -> Option<usize> {
    let cand = x.strictly_below(p) & alive;
    crate::poset::mask_points(cand)
        .into_iter()
        .find(|&m| cand & !x.below_mask(m) == 0)
}

/// Checks the three defining conditions of a beat point for a concrete
/// witness: the witness bounds the strict up-set from below and the strict
/// down-set from above, and is comparable to the point.
fn is_beat_witness(x: &FinitePoset, p: usize, w: usize, alive: u128) -> bool {
    p != w
        && alive >> w & 1 == 1
        && x.comparable(p, w)
        && x.strictly_above(p) & alive & !x.above_mask(w) == 0
        && x.strictly_below(p) & alive & !x.below_mask(w) == 0
}

fn beat_witness(x: &FinitePoset, p: usize, alive: u128) -> Option<(usize, BeatDirection)> {
    let below = max_below(x, p, alive);
    let above = min_above(x, p, alive);
    // The definitional (witness-based) and covering characterizations must
    // agree; the implementation keeps both and cross-checks rather than
    // silently trusting one.
    let definitional = crate::poset::mask_points(alive)
        .into_iter()
        .any(|w| is_beat_witness(x, p, w, alive));
    let by_covering = below.is_some() || above.is_some();
    assert_eq!(
        definitional, by_covering,
        "beat point characterizations disagree at {}",
        x.name(p)
    );
    match (below, above) {
        (Some(b), Some(a)) => Some((b.min(a), BeatDirection::Both)),
        (Some(b), None) => Some((b, BeatDirection::Down)),
        (None, Some(a)) => Some((a, BeatDirection::Up)),
        (None, None) => None,
    }
}

/// All beat points of `X`, in point order, with canonical witnesses.
pub fn beat_points(x: &FinitePoset) -> Vec<BeatPoint> {
    let alive = x.full_mask();
    (0..x.point_count())
        .filter_map(|p| {
            beat_witness(x, p, alive).map(|(witness, direction)| BeatPoint {
                point: p,
                witness,
                direction,
            })
        })
        .collect()
}

/// Removes one beat point and returns `X \ x0` with the retraction sending
/// `x0` to its witness.
pub fn remove_beat_point(x: &FinitePoset, p: usize) -> Result<(FinitePoset, MonotoneMap)> {
    let alive = x.full_mask();
    let Some((w, _)) = beat_witness(x, p, alive) else {
        let n = x
            .point_names()
            .get(p)
            .cloned()
            .unwrap_or_else(|| format!("#{p}"));
        return Err(Error::NotBeatPoint(n));
    };
    let (sub, orig) = x.subposet(alive & !(1u128 << p));
    let ambient = Arc::new(x.clone());
    let sub_arc = Arc::new(sub);
    let mut pos = vec![u32::MAX; x.point_count()];
    for (i, &o) in orig.iter().enumerate() {
        pos[o] = i as u32;
    }
    let assignment: Vec<u32> = (0..x.point_count())
        .map(|q| pos[if q == p { w } else { q }])
        .collect();
    let r = MonotoneMap::new(Arc::clone(&ambient), Arc::clone(&sub_arc), assignment)?;
    debug_assert!({
        let i = MonotoneMap::inclusion(&sub_arc, &ambient).unwrap();
        let ir: Vec<u32> = (0..x.point_count())
            .map(|q| i.assignment()[r.apply(q)])
            .collect();
        let ir = MonotoneMap::new(Arc::clone(&ambient), Arc::clone(&ambient), ir).unwrap();
        maps_comparable(&ir, &MonotoneMap::identity(&ambient)).unwrap()
    });
    Ok((Arc::try_unwrap(sub_arc).unwrap_or_else(|a| (*a).clone()), r))
}

/// A replayable record of successive beat-point removals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetCollapseTrace {
    pub start: FinitePoset,
    pub end: FinitePoset,
    pub steps: Vec<(String, String)>,
}

impl PosetCollapseTrace {
    pub fn validate(&self) -> Result<()> {
        let mut cur = self.start.clone();
        for (p, w) in &self.steps {
            let pi = cur
                .index_of(p)
                .ok_or_else(|| Error::UnknownPoint(p.clone()))?;
            let wi = cur
                .index_of(w)
                .ok_or_else(|| Error::UnknownPoint(w.clone()))?;
            if !is_beat_witness(&cur, pi, wi, cur.full_mask()) {
                return Err(Error::NotBeatPoint(p.clone()));
            }
            cur = remove_beat_point(&cur, pi)?.0;
        }
        if cur != self.end {
            return Err(Error::TraceReplayMismatch);
        }
        Ok(())
    }
}

/// Internal beat-point elimination in the original index space.
pub(crate) struct PosetRun {
    pub steps: Vec<(usize, usize)>,
    pub alive: u128,
}

pub(crate) fn poset_collapse_run(x: &FinitePoset) -> PosetRun {
    let mut alive = x.full_mask();
    let mut steps = Vec::new();
    'outer: loop {
        if alive.count_ones() <= 1 {
            return PosetRun { steps, alive };
        }
        for p in 0..x.point_count() {
            if alive >> p & 1 == 0 {
                continue;
            }
            if let Some((w, _)) = beat_witness(x, p, alive) {
                steps.push((p, w));
                alive &= !(1u128 << p);
                continue 'outer;
            }
        }
        return PosetRun { steps, alive };
    }
}

/// The Stong core of a finite space: successive elimination of beat points
/// until none remain.
pub fn core_poset(x: &FinitePoset) -> (FinitePoset, PosetCollapseTrace) {
    let run = poset_collapse_run(x);
    let (core, _) = x.subposet(run.alive);
    let steps = run
        .steps
        .iter()
        .map(|&(p, w)| (x.name(p).to_string(), x.name(w).to_string()))
        .collect();
    let trace = PosetCollapseTrace {
        start: x.clone(),
        end: core.clone(),
        steps,
    };
    (core, trace)
}

/// True iff the core is a single point.
pub fn is_contractible_poset(x: &FinitePoset) -> bool {
    poset_collapse_run(x).alive.count_ones() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::posets_isomorphic;

    fn c(facets: &[&[&str]]) -> SimplicialComplex {
        let lists: Vec<Vec<&str>> = facets.iter().map(|f| f.to_vec()).collect();
        SimplicialComplex::build(&lists).unwrap()
    }

    fn chain(names: &[&str]) -> FinitePoset {
        let rels: Vec<(&str, &str)> = names.windows(2).map(|w| (w[0], w[1])).collect();
        FinitePoset::build(names, &rels).unwrap()
    }

    fn circle() -> FinitePoset {
        FinitePoset::build(
            &["c", "d", "a", "b"],
            &[("c", "a"), ("c", "b"), ("d", "a"), ("d", "b")],
        )
        .unwrap()
    }

    #[test]
    fn full_triangle_all_vertices_dominated() {
        let k = c(&[&["a", "b", "c"]]);
        let d = dominated_vertices(&k);
        assert_eq!(d, vec![(0, 1), (1, 0), (2, 0)]);
    }

    #[test]
    fn boundary_triangle_nothing_dominated() {
        let k = c(&[&["a", "b"], &["b", "c"], &["a", "c"]]);
        assert!(dominated_vertices(&k).is_empty());
    }

    #[test]
    fn path_endpoints_dominated() {
        let k = c(&[&["a", "b"], &["b", "c"]]);
        let d = dominated_vertices(&k);
        assert_eq!(d, vec![(0, 1), (2, 1)]);
    }

    #[test]
    fn collapse_step_on_full_triangle() {
        let k = c(&[&["a", "b", "c"]]);
        let (rest, r) = strong_collapse_step(&k, 2, 0).unwrap();
        assert_eq!(rest, c(&[&["a", "b"]]));
        assert_eq!(r.apply(2), 0);
    }

    #[test]
    fn collapse_step_on_path() {
        let k = c(&[&["a", "b"], &["b", "c"]]);
        let (rest, _) = strong_collapse_step(&k, 0, 1).unwrap();
        assert_eq!(rest, c(&[&["b", "c"]]));
    }

    #[test]
    fn collapse_step_rejects_undominated() {
        let k = c(&[&["a", "b"], &["b", "c"], &["a", "c"]]);
        for v in 0..3 {
            for w in 0..3 {
                if v != w {
                    assert!(matches!(
                        strong_collapse_step(&k, v, w),
                        Err(Error::NotDominated(_, _))
                    ));
                }
            }
        }
    }

    #[test]
    fn core_of_simplex_is_point() {
        for n in 1..=4 {
            let verts: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let k = SimplicialComplex::build(&[verts]).unwrap();
            let (core, trace) = core_complex(&k);
            assert_eq!(core.vertex_count(), 1);
            trace.validate().unwrap();
            assert!(is_strongly_collapsible(&k));
        }
    }

    #[test]
    fn boundary_triangle_is_its_own_core() {
        let k = c(&[&["a", "b"], &["b", "c"], &["a", "c"]]);
        let (core, trace) = core_complex(&k);
        assert_eq!(core, k);
        assert!(trace.steps.is_empty());
        assert!(!is_strongly_collapsible(&k));
    }

    #[test]
    fn same_strong_homotopy_type_cases() {
        let triangle = c(&[&["a", "b", "c"]]);
        let point = c(&[&["p"]]);
        assert!(same_strong_homotopy_type(&triangle, &point));
        let k = c(&[&["a", "b"], &["b", "c"], &["a", "c"]]);
        let relabeled = c(&[&["x", "y"], &["y", "z"], &["x", "z"]]);
        assert!(same_strong_homotopy_type(&k, &relabeled));
        assert!(!same_strong_homotopy_type(&k, &point));
    }

    #[test]
    fn beat_points_of_chain() {
        let p = chain(&["a", "b", "c"]);
        let bp = beat_points(&p);
        assert_eq!(bp.len(), 3);
        assert_eq!(bp[0].direction, BeatDirection::Up); // a covered only by b
        assert_eq!(bp[1].direction, BeatDirection::Both);
        assert_eq!(bp[2].direction, BeatDirection::Down); // c covers only b
    }

    #[test]
    fn circle_has_no_beat_points() {
        assert!(beat_points(&circle()).is_empty());
    }

    #[test]
    fn single_point_has_no_beat_points() {
        let p = FinitePoset::build(&["a"], &[]).unwrap();
        assert!(beat_points(&p).is_empty());
    }

    #[test]
    fn remove_beat_point_cases() {
        let p = chain(&["a", "b", "c"]);
        let (rest, r) = remove_beat_point(&p, 0).unwrap();
        assert!(posets_isomorphic(&rest, &chain(&["b", "c"])));
        assert_eq!(r.apply(0), rest.index_of("b").unwrap());
        let two = chain(&["a", "b"]);
        let (pt, _) = remove_beat_point(&two, 0).unwrap();
        assert_eq!(pt.point_count(), 1);
        assert!(matches!(
            remove_beat_point(&circle(), 0),
            Err(Error::NotBeatPoint(_))
        ));
    }

    #[test]
    fn core_poset_cases() {
        let (core, trace) = core_poset(&chain(&["a", "b", "c", "d"]));
        assert_eq!(core.point_count(), 1);
        trace.validate().unwrap();
        let (core, trace) = core_poset(&circle());
        assert_eq!(core, circle());
        assert!(trace.steps.is_empty());
        trace.validate().unwrap();
    }

    #[test]
    fn contractibility_cases() {
        assert!(is_contractible_poset(&chain(&["a", "b", "c"])));
        assert!(!is_contractible_poset(&circle()));
        // U_x is contractible for every x (it has a maximum)
        let p = circle();
        for x in 0..p.point_count() {
            let (u, _) = p.subposet(p.below_mask(x));
            assert!(is_contractible_poset(&u));
        }
    }

    #[test]
    fn contractible_iff_opposite_contractible() {
        for p in [chain(&["a", "b", "c"]), circle()] {
            assert_eq!(is_contractible_poset(&p), is_contractible_poset(&p.opposite()));
        }
    }

    #[test]
    fn trace_replay_detects_tampering() {
        let k = c(&[&["a", "b", "c"]]);
        let (_, mut trace) = core_complex(&k);
        trace.end = c(&[&["a", "b"]]);
        assert!(matches!(trace.validate(), Err(Error::TraceReplayMismatch)));
    }
}
