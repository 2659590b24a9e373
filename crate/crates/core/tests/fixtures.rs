//! Checks the documented invariant values of the example objects shipped in
//! `fixtures/`.

use std::sync::Arc;

use lscat_core::category::{cat, gcat, gscat, scat, GscatMode};
use lscat_core::collapse::{core_complex, core_poset, is_strongly_collapsible};
use lscat_core::complex::SimplicialComplex;
use lscat_core::io::InputDocument;
use lscat_core::poset::{posets_isomorphic, FinitePoset};
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

#[test]
fn disk_has_scat_one_and_nontrivial_core() {
    let k = load_complex("disk");
    assert!(!is_strongly_collapsible(&k));
    let (core, _) = core_complex(&k);
    assert!(core.vertex_count() > 1);

    let b = SearchBudget::default();
    let r = scat(&k, &b);
    assert_eq!((r.lower, r.upper), (1, 1));
    verify_scat(&k, &r).unwrap();

    let g = gscat(&k, GscatMode::FacetUnion, &b).unwrap();
    assert_eq!((g.lower, g.upper), (1, 1));
    verify_gscat(&k, &g).unwrap();
}

#[test]
fn op_asymmetric_space_has_different_category_than_its_opposite() {
    let x = load_poset("op_asymmetric");
    let b = SearchBudget::default();

    let r = cat(&x, &b);
    assert_eq!((r.lower, r.upper), (1, 1));
    verify_cat(&x, &r).unwrap();

    let op = Arc::new(x.opposite());
    let r = cat(&op, &b);
    assert_eq!((r.lower, r.upper), (2, 2));
    verify_cat(&op, &r).unwrap();
}

#[test]
fn nine_point_space_has_cat_one_but_gcat_two() {
    let x = load_poset("cat1_gcat2");
    let b = SearchBudget::default();

    let r = cat(&x, &b);
    assert_eq!((r.lower, r.upper), (1, 1));
    verify_cat(&x, &r).unwrap();

    let g = gcat(&x, &b).unwrap();
    assert_eq!((g.lower, g.upper), (2, 2));
    verify_gcat(&x, &g).unwrap();
}

#[test]
fn gcat_grows_when_passing_to_the_core() {
    let x = load_poset("gcat_drop");
    let x0 = load_poset("gcat_drop_core");
    let b = SearchBudget::default();

    let g = gcat(&x, &b).unwrap();
    assert_eq!((g.lower, g.upper), (1, 1));
    verify_gcat(&x, &g).unwrap();

    let (core, _) = core_poset(&x);
    assert!(posets_isomorphic(&core, &x0));

    let g0 = gcat(&x0, &b).unwrap();
    assert_eq!((g0.lower, g0.upper), (2, 2));
    verify_gcat(&x0, &g0).unwrap();

    let r0 = cat(&x0, &b);
    assert_eq!((r0.lower, r0.upper), (1, 1));
    verify_cat(&x0, &r0).unwrap();
}
