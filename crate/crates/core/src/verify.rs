//! Independent re-validation of witness covers and their certificates.
//!
//! These checks rebuild every map and subobject from primitive data (vertex
//! assignments, facet index lists, collapse steps) and validate them using
//! only the definitional checkers of [`crate::complex`], [`crate::poset`]
//! and [`crate::collapse`] — none of the search machinery is trusted.

use std::sync::Arc;

use crate::category::{CategoryResult, Certificate, CoverElement};
use crate::collapse::strong_collapse_step;
use crate::complex::{are_contiguous, SimplicialComplex, SimplicialMap};
use crate::poset::{maps_comparable, FinitePoset, MonotoneMap};
use crate::{Error, Result};

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidCertificate(msg.into())
}

/// Validates a chain certifying that subcomplex `u` is categorical in `k`:
/// every entry must be simplicial, consecutive entries contiguous, the first
/// entry the inclusion, and the last a constant map.
pub fn verify_categorical_chain_complex(
    u: &Arc<SimplicialComplex>,
    k: &Arc<SimplicialComplex>,
    chain: &[Vec<u32>],
) -> Result<()> {
    if chain.is_empty() {
        return Err(invalid("empty contiguity chain"));
    }
    let maps: Vec<SimplicialMap> = chain
        .iter()
        .map(|a| SimplicialMap::new(Arc::clone(u), Arc::clone(k), a.clone()))
        .collect::<Result<_>>()?;
    let inclusion = SimplicialMap::inclusion(u, k)?;
    if maps[0] != inclusion {
        return Err(invalid("chain does not start at the inclusion"));
    }
    for w in maps.windows(2) {
        if !are_contiguous(&w[0], &w[1])? {
            return Err(invalid("consecutive chain entries are not contiguous"));
        }
    }
    if maps.last().unwrap().constant_value().is_none() {
        return Err(invalid("chain does not end at a constant map"));
    }
    Ok(())
}

/// Validates a fence certifying that the open subposet `u` is categorical in
/// `x`; the poset analogue of [`verify_categorical_chain_complex`].
pub fn verify_categorical_chain_poset(
    u: &Arc<FinitePoset>,
    x: &Arc<FinitePoset>,
    chain: &[Vec<u32>],
) -> Result<()> {
    if chain.is_empty() {
        return Err(invalid("empty homotopy fence"));
    }
    let maps: Vec<MonotoneMap> = chain
        .iter()
        .map(|a| MonotoneMap::new(Arc::clone(u), Arc::clone(x), a.clone()))
        .collect::<Result<_>>()?;
    let inclusion = MonotoneMap::inclusion(u, x)?;
    if maps[0] != inclusion {
        return Err(invalid("fence does not start at the inclusion"));
    }
    for w in maps.windows(2) {
        if !maps_comparable(&w[0], &w[1])? {
            return Err(invalid("consecutive fence entries are not comparable"));
        }
    }
    if maps.last().unwrap().constant_value().is_none() {
        return Err(invalid("fence does not end at a constant map"));
    }
    Ok(())
}

/// Replays a strong-collapse certificate for a cover element of `k`: the
/// start complex must be a subcomplex of `k` containing the element's
/// facets, and the recorded steps must collapse it to a single vertex.
pub fn verify_collapse_to_point_complex(
    k: &SimplicialComplex,
    block: &[usize],
    start: &SimplicialComplex,
    steps: &[(String, String)],
) -> Result<()> {
    if !k.has_subcomplex(start) {
        return Err(invalid("collapse start is not a subcomplex of the ambient complex"));
    }
    for &i in block {
        let facet = &k.facets()[i];
        let mut img = 0u64;
        for v in facet.vertices() {
            let j = start
                .index_of(k.name(v))
                .ok_or_else(|| invalid("cover element facet missing from collapse start"))?;
            img |= 1 << j;
        }
        if !start.is_simplex(img) {
            return Err(invalid("cover element facet is not a simplex of the collapse start"));
        }
    }
    let mut cur = start.clone();
    for (v, w) in steps {
        let vi = cur
            .index_of(v)
            .ok_or_else(|| Error::UnknownVertex(v.clone()))?;
        let wi = cur
            .index_of(w)
            .ok_or_else(|| Error::UnknownVertex(w.clone()))?;
        cur = strong_collapse_step(&cur, vi, wi)?.0;
    }
    if cur.vertex_count() != 1 {
        return Err(invalid("collapse steps do not reach a single vertex"));
    }
    Ok(())
}

/// Replays a beat-point collapse certificate for an open cover element of
/// `x` (given by its generating antichain): the open subposet must collapse
/// to a single point under the recorded steps.
pub fn verify_collapse_to_point_poset(
    x: &FinitePoset,
    antichain: &[usize],
    steps: &[(String, String)],
) -> Result<()> {
    let open = x.open_from_antichain(antichain)?;
    if open.is_empty() {
        return Err(invalid("empty cover element"));
    }
    let (mut cur, _) = x.subposet(open.mask());
    for (p, w) in steps {
        let pi = cur
            .index_of(p)
            .ok_or_else(|| Error::UnknownPoint(p.clone()))?;
        let wi = cur
            .index_of(w)
            .ok_or_else(|| Error::UnknownPoint(w.clone()))?;
        // re-check the beat condition by replaying through the public API
        let trace = crate::collapse::PosetCollapseTrace {
            start: cur.clone(),
            end: crate::collapse::remove_beat_point(&cur, pi)?.0,
            steps: vec![(p.clone(), w.clone())],
        };
        trace.validate()?;
        let _ = wi;
        cur = trace.end;
    }
    if cur.point_count() != 1 {
        return Err(invalid("collapse steps do not reach a single point"));
    }
    Ok(())
}

fn block_of(el: &CoverElement) -> Result<&[usize]> {
    match el {
        CoverElement::FacetSubset(b) => Ok(b),
        CoverElement::Antichain(_) => Err(invalid("expected a facet-subset cover element")),
    }
}

fn antichain_of(el: &CoverElement) -> Result<&[usize]> {
    match el {
        CoverElement::Antichain(a) => Ok(a),
        CoverElement::FacetSubset(_) => Err(invalid("expected an antichain cover element")),
    }
}

fn check_shape(r: &CategoryResult) -> Result<()> {
    if r.witness.is_empty() || r.witness.len() != r.certificates.len() {
        return Err(invalid("witness and certificate lists do not match"));
    }
    if r.witness.len() != r.upper + 1 {
        return Err(invalid("witness size does not match the claimed upper bound"));
    }
    if r.lower > r.upper {
        return Err(invalid("lower bound exceeds upper bound"));
    }
    Ok(())
}

/// Re-validates a `scat` result: the witness must cover every facet and each
/// element must carry a valid inclusion-to-constant contiguity chain.
pub fn verify_scat(k: &Arc<SimplicialComplex>, r: &CategoryResult) -> Result<()> {
    check_shape(r)?;
    let mut covered = vec![false; k.facet_count()];
    for (el, cert) in r.witness.iter().zip(&r.certificates) {
        let block = block_of(el)?;
        let u = Arc::new(k.generated_subcomplex(block)?);
        let chain = match cert {
            Certificate::Contiguity(c) => c
                .chain
                .iter()
                .map(|m| m.assignment().to_vec())
                .collect::<Vec<_>>(),
            _ => return Err(invalid("expected a contiguity certificate")),
        };
        verify_categorical_chain_complex(&u, k, &chain)?;
        for &i in block {
            covered[i] = true;
        }
    }
    if covered.iter().all(|&c| c) {
        Ok(())
    } else {
        Err(invalid("witness does not cover every facet"))
    }
}

/// Re-validates a `gscat` result: full coverage plus a replayable strong
/// collapse to a point for every element.
pub fn verify_gscat(k: &Arc<SimplicialComplex>, r: &CategoryResult) -> Result<()> {
    check_shape(r)?;
    let mut covered = vec![false; k.facet_count()];
    for (el, cert) in r.witness.iter().zip(&r.certificates) {
        let block = block_of(el)?;
        let trace = match cert {
            Certificate::ComplexCollapse(t) => t,
            _ => return Err(invalid("expected a collapse certificate")),
        };
        verify_collapse_to_point_complex(k, block, &trace.start, &trace.steps)?;
        for &i in block {
            covered[i] = true;
        }
    }
    if covered.iter().all(|&c| c) {
        Ok(())
    } else {
        Err(invalid("witness does not cover every facet"))
    }
}

/// Re-validates a `cat` result: the opens must cover the space and each
/// element must carry a valid inclusion-to-constant homotopy fence.
pub fn verify_cat(x: &Arc<FinitePoset>, r: &CategoryResult) -> Result<()> {
    check_shape(r)?;
    let mut covered = 0u128;
    for (el, cert) in r.witness.iter().zip(&r.certificates) {
        let antichain = antichain_of(el)?;
        let open = x.open_from_antichain(antichain)?;
        if open.is_empty() {
            return Err(invalid("empty cover element"));
        }
        let (sub, _) = x.subposet(open.mask());
        let sub = Arc::new(sub);
        let chain = match cert {
            Certificate::Homotopy(c) => c
                .chain
                .iter()
                .map(|m| m.assignment().to_vec())
                .collect::<Vec<_>>(),
            _ => return Err(invalid("expected a homotopy certificate")),
        };
        verify_categorical_chain_poset(&sub, x, &chain)?;
        covered |= open.mask();
    }
    if covered == x.full_mask() {
        Ok(())
    } else {
        Err(invalid("witness does not cover every point"))
    }
}

/// Re-validates a `gcat` result: full coverage plus a replayable beat-point
/// collapse to a point for every element.
pub fn verify_gcat(x: &Arc<FinitePoset>, r: &CategoryResult) -> Result<()> {
    check_shape(r)?;
    let mut covered = 0u128;
    for (el, cert) in r.witness.iter().zip(&r.certificates) {
        let antichain = antichain_of(el)?;
        let steps = match cert {
            Certificate::PosetCollapse(t) => &t.steps,
            _ => return Err(invalid("expected a collapse certificate")),
        };
        verify_collapse_to_point_poset(x, antichain, steps)?;
        covered |= x.open_from_antichain(antichain)?.mask();
    }
    if covered == x.full_mask() {
        Ok(())
    } else {
        Err(invalid("witness does not cover every point"))
    }
}
