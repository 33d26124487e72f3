//! The comparison between `F(ΣP)` and the shift `F(P)[1]`.

use std::collections::BTreeMap;

use super::{check_order, f_obj, position_dims, vertex_family, FBlockIndex};
use crate::error::{Error, Result};
use crate::linalg::RingMatrix;
use crate::ncomplex::NComplex;
use crate::quiver::{rep_null_homotopy, RepChainMap, RepHomotopy};

/// Mutually inverse maps up to homotopy between `F(ΣP)` and `F(P)[1]`.
#[derive(Clone, Debug)]
pub struct SuspensionCompat {
    pub alpha: RepChainMap,
    pub beta: RepChainMap,
    /// Homotopy with `β α - 1 = d s + s d`.
    pub s: RepHomotopy,
    /// Set when `s` did not verify as given and was replaced.
    pub discrepancy: Option<String>,
}

/// Positions of `F(ΣP)^i`, each split into the `N - 1` summands of `ΣP`.
fn sigma_layout(p: &NComplex, i: i64) -> Vec<Vec<usize>> {
    let b = FBlockIndex::new(p.order(), i);
    (0..b.positions())
        .map(|k| (1..p.order() as i64).map(|c| p.dim(b.source_degree(k) + c)).collect())
        .collect()
}

fn plain_layout(p: &NComplex, i: i64) -> Vec<Vec<usize>> {
    position_dims(p, i).into_iter().map(|d| vec![d]).collect()
}

/// `α^i: F(ΣP)^i -> F(P)^{i+1}`.
fn alpha(p: &NComplex, i: i64) -> Vec<RingMatrix> {
    let n = p.order();
    let b = FBlockIndex::new(n, i);
    let m = b.m();
    let (rows, cols) = (plain_layout(p, i + 1), sigma_layout(p, i));
    vertex_family(p.ring(), &rows, &cols, |a, _, k, c| {
        if b.is_even() {
            // Row a, summand P^{m+k+1+c}: composite of length N-2-k-c+a.
            let len = n as i64 - 2 - k as i64 - c as i64 + a as i64;
            (a <= k && len >= 0).then(|| p.comp(m + (k + c) as i64 + 1, len as usize))
        } else {
            (a == k && c == 0).then(|| RingMatrix::identity(p.ring(), rows[a][0]))
        }
    })
}

/// `β^i: F(P)^{i+1} -> F(ΣP)^i`.
fn beta(p: &NComplex, i: i64) -> Vec<RingMatrix> {
    let n = p.order();
    let b = FBlockIndex::new(n, i);
    let (rows, cols) = (sigma_layout(p, i), plain_layout(p, i + 1));
    vertex_family(p.ring(), &rows, &cols, |k, c, a, _| {
        let hit = if b.is_even() { k == a && c == n - 2 } else { a == k + c };
        hit.then(|| RingMatrix::identity(p.ring(), cols[a][0]))
    })
}

/// `s^i: F(ΣP)^i -> F(ΣP)^{i-1}`, zero in odd degrees.
fn homotopy(p: &NComplex, i: i64) -> Vec<RingMatrix> {
    let n = p.order();
    let b = FBlockIndex::new(n, i);
    let (rows, cols) = (sigma_layout(p, i - 1), sigma_layout(p, i));
    vertex_family(p.ring(), &rows, &cols, |a, rho, bb, c| {
        // Block (a, bb) is ψ_{bb-a+1}: -1 from summand c to summand c+bb-a+1.
        (b.is_even() && bb >= a && rho == c + bb - a + 1).then(|| -&RingMatrix::identity(p.ring(), cols[bb][c]))
    })
}

fn check_identity(ab: &RepChainMap) -> Option<i64> {
    ab.degrees().into_iter().find(|&i| {
        ab.map(i).iter().any(|m| m != &RingMatrix::identity(m.ring(), m.rows()) || m.rows() != m.cols())
    })
}

/// Build `α`, `β` and `s` for `p` and check `α β = 1` and
/// `β α - 1 = d s + s d` exactly.
pub fn suspension_compat(p: &NComplex) -> Result<SuspensionCompat> {
    check_order(p.order())?;
    p.validate()?;
    let fs = f_obj(&p.sigma())?;
    let fp1 = f_obj(p)?.shift();
    let a = RepChainMap::from_fn_unchecked(&fs, &fp1, |i| alpha(p, i))?;
    let b = RepChainMap::from_fn_unchecked(&fp1, &fs, |i| beta(p, i))?;
    a.validate().map_err(|e| Error::Witness(format!("α is not a chain map: {e}")))?;
    b.validate().map_err(|e| Error::Witness(format!("β is not a chain map: {e}")))?;
    if let Some(i) = check_identity(&RepChainMap::compose(&a, &b)?) {
        return Err(Error::Witness(format!("α β differs from the identity at degree {i}")));
    }
    let ba = RepChainMap::compose(&b, &a)?.sub(&RepChainMap::identity(&fs))?;
    let degs = ba.degrees();
    let t: BTreeMap<i64, Vec<RingMatrix>> = match (degs.first(), degs.last()) {
        (Some(&lo), Some(&hi)) => (lo..=hi + 1).map(|i| (i, homotopy(p, i))).collect(),
        _ => BTreeMap::new(),
    };
    let s = RepHomotopy { t, period: fs.period() };
    if s.verifies(&ba) {
        return Ok(SuspensionCompat { alpha: a, beta: b, s, discrepancy: None });
    }
    let s = rep_null_homotopy(&ba)?.ok_or_else(|| Error::Witness("β α is not homotopic to the identity".into()))?;
    Ok(SuspensionCompat { alpha: a, beta: b, s, discrepancy: Some("transcribed homotopy fails β α - 1 = d s + s d".into()) })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CoeffRing;

    #[test]
    fn zero_and_small_complexes() {
        let k = CoeffRing::PrimeField { p: 2 };
        let z = suspension_compat(&NComplex::zero(3, k)).unwrap();
        assert!(z.discrepancy.is_none());
        for n in 2..=5 {
            let p = NComplex::disk(n, k, 2, n - 1, 1).unwrap().direct_sum(&NComplex::disk(n, k, 4, 2, 1).unwrap()).unwrap();
            let c = suspension_compat(&p).unwrap();
            assert!(c.discrepancy.is_none(), "N = {n}: {:?}", c.discrepancy);
        }
    }
}
