//! The release gate: one test per acceptance criterion, each printing a
//! single pass line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines.

use std::sync::Arc;

use lscat_core::category::{cat, gcat, gscat, scat, check_inequalities, GscatMode, Verdict};
use lscat_core::collapse::{
    beat_points, core_complex, core_poset, dominated_vertices, is_contractible_poset,
    is_strongly_collapsible, remove_beat_point, same_strong_homotopy_type, strong_collapse_step,
};
use lscat_core::complex::{complexes_isomorphic, same_contiguity_class, SimplicialComplex};
use lscat_core::functors::{barycentric_subdivision, face_poset, order_complex};
use lscat_core::io::InputDocument;
use lscat_core::oracle::{
    brute_cat, brute_contractible, brute_gcat, brute_gscat, brute_scat,
    brute_strongly_collapsible, contiguity_classes, homotopy_classes, random_complex,
    random_poset, Rng64,
};
use lscat_core::poset::{homotopic, posets_isomorphic, FinitePoset};
use lscat_core::verify::{verify_cat, verify_gcat, verify_gscat, verify_scat};
use lscat_core::SearchBudget;

fn load(name: &str) -> InputDocument {
    let path = format!("{}/../../fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    InputDocument::parse(&text).unwrap()
}

fn load_complex(name: &str) -> Arc<SimplicialComplex> {
    Arc::new(load(name).to_complex().unwrap())
}

fn load_poset(name: &str) -> Arc<FinitePoset> {
    Arc::new(load(name).to_poset().unwrap())
}

/// All posets on `n` labeled points (relations only from lower to higher
/// index, which reaches every isomorphism class), deduplicated up to
/// isomorphism.
fn posets_up_to_iso(max_points: usize) -> Vec<Arc<FinitePoset>> {
    let mut reps: Vec<Arc<FinitePoset>> = Vec::new();
    for n in 1..=max_points {
        let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        for code in 0u32..1 << pairs.len() {
            let rels: Vec<(String, String)> = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| code >> b & 1 == 1)
                .map(|(_, &(i, j))| (names[i].clone(), names[j].clone()))
                .collect();
            let x = FinitePoset::build(&names, &rels).unwrap();
            if !reps.iter().any(|r| posets_isomorphic(r, &x)) {
                reps.push(Arc::new(x));
            }
        }
    }
    reps
}

/// All complexes on at most `max_vertices` vertices, enumerated as antichain
/// families of nonempty vertex subsets, deduplicated up to isomorphism.
fn complexes_up_to_iso(max_vertices: usize) -> Vec<Arc<SimplicialComplex>> {
    let subsets: Vec<u64> = (1..1u64 << max_vertices).collect();
    let mut reps: Vec<Arc<SimplicialComplex>> = Vec::new();
    let mut stack: Vec<(usize, Vec<u64>)> = vec![(0, Vec::new())];
    while let Some((next, chosen)) = stack.pop() {
        if next == subsets.len() {
            if chosen.is_empty() {
                continue;
            }
            let lists: Vec<Vec<String>> = chosen
                .iter()
                .map(|&m| (0..max_vertices).filter(|v| m >> v & 1 == 1).map(|v| format!("v{v}")).collect())
                .collect();
            let k = SimplicialComplex::build(&lists).unwrap();
            if !reps.iter().any(|r| complexes_isomorphic(r, &k)) {
                reps.push(Arc::new(k));
            }
            continue;
        }
        let s = subsets[next];
        stack.push((next + 1, chosen.clone()));
        if !chosen.iter().any(|&c| c & !s == 0 || s & !c == 0) {
            let mut with = chosen;
            with.push(s);
            stack.push((next + 1, with));
        }
    }
    reps
}

#[test]
fn criterion_1_fixture_reproduction() {
    let b = SearchBudget::default();

    let x = load_poset("op_asymmetric");
    assert_eq!(cat(&x, &b).value(), Some(1), "op_asymmetric cat");
    let op = Arc::new(x.opposite());
    assert_eq!(cat(&op, &b).value(), Some(2), "op_asymmetric opposite cat");

    let y = load_poset("cat1_gcat2");
    assert_eq!(cat(&y, &b).value(), Some(1), "cat1_gcat2 cat");
    assert_eq!(gcat(&y, &b).unwrap().value(), Some(2), "cat1_gcat2 gcat");

    let z = load_poset("gcat_drop");
    let z0 = load_poset("gcat_drop_core");
    assert_eq!(gcat(&z, &b).unwrap().value(), Some(1), "gcat_drop gcat");
    assert_eq!(gcat(&z0, &b).unwrap().value(), Some(2), "gcat_drop_core gcat");
    assert!(posets_isomorphic(&core_poset(&z).0, &z0), "gcat_drop core");

    let k = load_complex("disk");
    let r = scat(&k, &b);
    assert_eq!(r.value(), Some(1), "disk scat");
    assert_eq!(r.witness.len(), 2, "disk witness size");

    println!("acceptance criterion 1: pass — all fixture invariants reproduced exactly");
}

#[test]
fn criterion_2_oracle_equivalence() {
    let b = SearchBudget::default();
    let mut rng = Rng64::new(0xC2);

    let posets = posets_up_to_iso(5);
    for x in &posets {
        assert_eq!(cat(x, &b).value(), Some(brute_cat(x)), "cat vs oracle");
        assert_eq!(gcat(x, &b).unwrap().value(), Some(brute_gcat(x)), "gcat vs oracle");
        assert_eq!(
            is_contractible_poset(x),
            brute_contractible(x),
            "contractibility vs oracle"
        );
        let (maps, classes) = homotopy_classes(x, x);
        let m = maps.len();
        let pairs: Vec<(usize, usize)> = if m <= 25 {
            (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect()
        } else {
            (0..150).map(|_| (rng.below(m), rng.below(m))).collect()
        };
        for (i, j) in pairs {
            let fast = homotopic(&maps[i], &maps[j], &b).unwrap();
            assert!(!fast.is_exhausted(), "homotopy BFS exhausted on tiny input");
            assert_eq!(fast.is_yes(), classes[i] == classes[j], "homotopic vs closure");
        }
    }

    let complexes = complexes_up_to_iso(4);
    for k in &complexes {
        assert_eq!(scat(k, &b).value(), Some(brute_scat(k)), "scat vs oracle");
        assert_eq!(
            gscat(k, GscatMode::Exhaustive, &b).unwrap().value(),
            Some(brute_gscat(k)),
            "gscat vs oracle"
        );
        assert_eq!(
            is_strongly_collapsible(k),
            brute_strongly_collapsible(k),
            "strong collapsibility vs oracle"
        );
        let (maps, classes) = contiguity_classes(k, k);
        let m = maps.len();
        let pairs: Vec<(usize, usize)> = if m <= 25 {
            (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect()
        } else {
            (0..150).map(|_| (rng.below(m), rng.below(m))).collect()
        };
        for (i, j) in pairs {
            let fast = same_contiguity_class(&maps[i], &maps[j], &b).unwrap();
            assert!(!fast.is_exhausted(), "contiguity BFS exhausted on tiny input");
            assert_eq!(fast.is_yes(), classes[i] == classes[j], "contiguity vs closure");
        }
    }

    println!(
        "acceptance criterion 2: pass — {} posets and {} complexes agree with brute-force oracles",
        posets.len(),
        complexes.len()
    );
}

#[test]
fn criterion_3_theorem_suite() {
    let b = SearchBudget::default();
    let mut rng = Rng64::new(0xC3);
    let mut total = 0usize;
    let mut inconclusive = 0usize;
    let mut violations: Vec<String> = Vec::new();

    for _ in 0..500 {
        let n = 2 + rng.below(7);
        let x = Arc::new(random_poset(&mut rng, n, 1, 3));
        let report = check_inequalities(None, Some(&x), &b).unwrap();
        for c in &report.checks {
            total += 1;
            match c.verdict {
                Verdict::Violated => violations.push(format!("poset {n} pts: {}", c.name)),
                Verdict::Inconclusive => inconclusive += 1,
                Verdict::Holds => {}
            }
        }
    }

    for _ in 0..300 {
        let n = 2 + rng.below(5);
        let k = Arc::new(random_complex(&mut rng, n, 6));
        let report = check_inequalities(Some(&k), None, &b).unwrap();
        for c in &report.checks {
            total += 1;
            match c.verdict {
                Verdict::Violated => violations.push(format!("complex {n} verts: {}", c.name)),
                Verdict::Inconclusive => inconclusive += 1,
                Verdict::Holds => {}
            }
        }
    }

    assert!(violations.is_empty(), "violated inequalities: {violations:?}");
    assert!(
        inconclusive * 20 < total,
        "inconclusive rate too high: {inconclusive}/{total}"
    );
    println!(
        "acceptance criterion 3: pass — {total} inequality checks, 0 violations, {inconclusive} inconclusive"
    );
}

#[test]
fn criterion_4_core_uniqueness() {
    let mut rng = Rng64::new(0xC4);

    for _ in 0..200 {
        let n = 2 + rng.below(5);
        let k = random_complex(&mut rng, n, 6);
        let canonical = core_complex(&k).0;
        assert!(dominated_vertices(&canonical).is_empty());
        let mut cur = k;
        loop {
            let doms = dominated_vertices(&cur);
            if doms.is_empty() {
                break;
            }
            let (v, w) = doms[rng.below(doms.len())];
            cur = strong_collapse_step(&cur, v, w).unwrap().0;
        }
        assert!(
            complexes_isomorphic(&cur, &canonical),
            "random-order complex core differs"
        );
    }

    for _ in 0..200 {
        let n = 2 + rng.below(7);
        let x = random_poset(&mut rng, n, 1, 3);
        let canonical = core_poset(&x).0;
        assert!(beat_points(&canonical).is_empty());
        let mut cur = x;
        loop {
            let beats = beat_points(&cur);
            if beats.is_empty() {
                break;
            }
            let p = beats[rng.below(beats.len())].point;
            cur = remove_beat_point(&cur, p).unwrap().0;
        }
        assert!(
            posets_isomorphic(&cur, &canonical),
            "random-order poset core differs"
        );
    }

    println!("acceptance criterion 4: pass — 200 randomized removal orders per side, all cores isomorphic");
}

#[test]
fn criterion_5_structural_identities() {
    let mut rng = Rng64::new(0xC5);
    for _ in 0..100 {
        let n = 2 + rng.below(5);
        let k = random_complex(&mut rng, n, 6);
        let via_functors = order_complex(&face_poset(&k));
        assert!(complexes_isomorphic(&via_functors, &barycentric_subdivision(&k)));
    }

    let boundary =
        SimplicialComplex::build(&[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]).unwrap();
    let sd = barycentric_subdivision(&boundary);
    assert!(dominated_vertices(&boundary).is_empty(), "boundary is its own core");
    assert!(dominated_vertices(&sd).is_empty(), "subdivision is its own core");
    assert!(
        !same_strong_homotopy_type(&boundary, &sd),
        "subdivision changes the strong homotopy type of the triangle boundary"
    );

    println!("acceptance criterion 5: pass — subdivision identity on 100 complexes; triangle boundary vs its subdivision distinguished");
}

#[test]
fn criterion_6_certificate_soundness() {
    let b = SearchBudget::default();
    let mut rng = Rng64::new(0xC6);
    let mut checked = 0usize;

    let mut complexes: Vec<Arc<SimplicialComplex>> = vec![load_complex("disk")];
    for _ in 0..30 {
        let n = 2 + rng.below(5);
        complexes.push(Arc::new(random_complex(&mut rng, n, 6)));
    }
    for k in &complexes {
        let r = scat(k, &b);
        verify_scat(k, &r).unwrap();
        let g = gscat(k, GscatMode::FacetUnion, &b).unwrap();
        verify_gscat(k, &g).unwrap();
        checked += 2;
        if k.simplices().len() <= 12 {
            let g = gscat(k, GscatMode::Exhaustive, &b).unwrap();
            verify_gscat(k, &g).unwrap();
            checked += 1;
        }
    }

    let mut posets: Vec<Arc<FinitePoset>> = vec![
        load_poset("op_asymmetric"),
        load_poset("cat1_gcat2"),
        load_poset("gcat_drop"),
        load_poset("gcat_drop_core"),
    ];
    for _ in 0..30 {
        let n = 2 + rng.below(7);
        posets.push(Arc::new(random_poset(&mut rng, n, 1, 3)));
    }
    for x in &posets {
        let r = cat(x, &b);
        verify_cat(x, &r).unwrap();
        let g = gcat(x, &b).unwrap();
        verify_gcat(x, &g).unwrap();
        checked += 2;
    }

    println!("acceptance criterion 6: pass — {checked} witnesses re-validated independently");
}
