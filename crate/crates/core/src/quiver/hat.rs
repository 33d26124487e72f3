//! The equivalence `⊕ e_λ(i)^{P^i} ↦ ⊕ e_ρ(i)^{P^i}` between projective
//! representations with split-injective arrows and their split-surjective
//! mirror images.
//!
//! In canonical coordinates a morphism of projective representations is
//! determined by its matrix at the last vertex, which is block upper
//! triangular in the summand types; its restriction to vertex `v` is the
//! leading block of types `< = v`. Its image under hat has the trailing
//! blocks of types `>= v` at vertex `v`.

use super::{LineRep, ProjDecomposition, RepChainMap, RepComplex};
use crate::error::Result;
use crate::linalg::RingMatrix;

struct Canonical {
    dec: ProjDecomposition,
    /// Iso into canonical coordinates at the last vertex, and its inverse.
    to: RingMatrix,
    from: RingMatrix,
}

fn canonical(rep: &LineRep) -> Result<Canonical> {
    let (dec, to, from) = rep.canonical_iso()?;
    Ok(Canonical { dec, to: to.last().unwrap().clone(), from: from.last().unwrap().clone() })
}

/// Trailing blocks of a last-vertex matrix, vertex by vertex.
fn mirror(top: &RingMatrix, target: &ProjDecomposition, source: &ProjDecomposition) -> Vec<RingMatrix> {
    (0..source.ranks.len())
        .map(|v| {
            let r0: usize = target.ranks[..v].iter().sum();
            let c0: usize = source.ranks[..v].iter().sum();
            top.block(r0, c0, target.rho_dim(v), source.rho_dim(v))
        })
        .collect()
}

/// Image of a complex of projective representations.
pub fn hat(x: &RepComplex) -> Result<RepComplex> {
    let degrees: Vec<i64> = x.degrees().collect();
    let mut canon = std::collections::BTreeMap::new();
    if let (Some(&lo), Some(&hi)) = (degrees.first(), degrees.last()) {
        for i in lo..=hi + 1 {
            canon.insert(i, canonical(&x.term(i))?);
        }
    }
    let ring = x.ring();
    let n = x.vertices();
    let term = |i: i64| match canon.get(&i) {
        Some(c) => LineRep::canonical_rho(ring, &c.dec),
        None => LineRep::zero(ring, n),
    };
    let d = |i: i64| -> Vec<RingMatrix> {
        let (a, b) = (&canon[&i], &canon[&(i + 1)]);
        let top = &(&b.to * x.d(i).last().unwrap()) * &a.from;
        mirror(&top, &b.dec, &a.dec)
    };
    Ok(RepComplex::from_fn(ring, n, x.support(), term, d))
}

/// Image of a chain map `f: x -> y` as a map `hat(x) -> hat(y)`.
pub fn hat_map(f: &RepChainMap) -> Result<RepChainMap> {
    let (x, y) = (f.source(), f.target());
    let (hx, hy) = (hat(x)?, hat(y)?);
    let mut comps = std::collections::BTreeMap::new();
    for i in f.degrees() {
        let (cx, cy) = (canonical(&x.term(i))?, canonical(&y.term(i))?);
        let top = &(&cy.to * f.map(i).last().unwrap()) * &cx.from;
        comps.insert(i, mirror(&top, &cy.dec, &cx.dec));
    }
    RepChainMap::from_fn_unchecked(&hx, &hy, |i| {
        comps.get(&i).cloned().unwrap_or_else(|| {
            hy.term(i).vdims().iter().zip(hx.term(i).vdims()).map(|(&r, &c)| RingMatrix::zeros(x.ring(), r, c)).collect()
        })
    })
}
