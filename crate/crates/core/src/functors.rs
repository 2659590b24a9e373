//! The order-complex functor `K` and the face-poset functor `chi`, on
//! objects and on maps, together with barycentric subdivision
//! `sd K = K(chi(K))`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::complex::{Simplex, SimplicialComplex, SimplicialMap};
use crate::poset::{FinitePoset, MonotoneMap};
use crate::Result;

/// The order complex `K(X)`: vertices are the points of `X` (same order),
/// facets are the maximal chains.
///
/// Maximal chains are enumerated by DFS from minimal points along covering
/// relations, so the facet antichain property holds automatically.
pub fn order_complex(x: &FinitePoset) -> SimplicialComplex {
    let n = x.point_count();
    let mut facets: Vec<u64> = Vec::new();
    let mut stack: Vec<(usize, u64)> = x
        .minimal_elements()
        .into_iter()
        .rev()
        .map(|m| (m, 1u64 << m))
        .collect();
    while let Some((top, chain)) = stack.pop() {
        let covers = x.covering(top);
        if covers.is_empty() {
            facets.push(chain);
            continue;
        }
        for c in covers.into_iter().rev() {
            stack.push((c, chain | 1 << c));
        }
    }
    debug_assert!(n <= crate::complex::MAX_VERTICES);
    SimplicialComplex::from_parts(x.point_names().to_vec(), facets)
}

/// The canonical point name of a simplex of `K` inside `chi(K)`: the sorted
/// vertex names wrapped in braces.
pub fn simplex_point_name(k: &SimplicialComplex, s: Simplex) -> String {
    let names: Vec<&str> = s.vertices().into_iter().map(|v| k.name(v)).collect();
    format!("{{{}}}", names.join(","))
}

/// The face poset `chi(K)`: points are the simplices of `K` in canonical
/// order, with inclusion as the order.
pub fn face_poset(k: &SimplicialComplex) -> FinitePoset {
    let simplices = k.simplices();
    let names: Vec<String> = simplices
        .iter()
        .map(|&s| simplex_point_name(k, s))
        .collect();
    let below: Vec<u128> = simplices
        .iter()
        .map(|&s| {
            let mut m = 0u128;
            for (j, &t) in simplices.iter().enumerate() {
                if t.is_subset_of(s) {
                    m |= 1 << j;
                }
            }
            m
        })
        .collect();
    FinitePoset::from_parts(names, below)
}

/// `K(f)` for a monotone map `f`: the simplicial map on order complexes with
/// the same underlying assignment (monotone images of chains are chains).
pub fn order_complex_map(f: &MonotoneMap) -> Result<SimplicialMap> {
    let ks = Arc::new(order_complex(f.source()));
    let kt = Arc::new(order_complex(f.target()));
    SimplicialMap::new(ks, kt, f.assignment().to_vec())
}

/// `chi(phi)` for a simplicial map `phi`: the monotone map on face posets
/// sending a simplex to its image vertex set.
pub fn face_poset_map(phi: &SimplicialMap) -> Result<MonotoneMap> {
    let xs = Arc::new(face_poset(phi.source()));
    let xt = Arc::new(face_poset(phi.target()));
    let target_simplices = phi.target().simplices();
    let index: HashMap<u64, u32> = target_simplices
        .iter()
        .enumerate()
        .map(|(i, s)| (s.bits(), i as u32))
        .collect();
    let assignment: Vec<u32> = phi
        .source()
        .simplices()
        .iter()
        .map(|&s| index[&phi.image_of(s).bits()])
        .collect();
    MonotoneMap::new(xs, xt, assignment)
}

/// The first barycentric subdivision `sd K = K(chi(K))`; vertices are the
/// simplices of `K`.
pub fn barycentric_subdivision(k: &SimplicialComplex) -> SimplicialComplex {
    order_complex(&face_poset(k))
}
