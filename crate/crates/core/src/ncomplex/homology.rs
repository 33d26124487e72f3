use std::collections::BTreeMap;

use super::NComplex;
use crate::error::{Error, Result};
use crate::linalg::{quotient_dim, QuotientDim, RingMatrix};

/// All amplitude homologies `H^i_r`, `1 <= r <= N-1`, keyed by `(i, r)`.
/// Entries are stored for the degrees of the support; every other entry is
/// zero (for periodic complexes, degrees are read modulo the period).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyFingerprint {
    pub n: usize,
    pub period: Option<usize>,
    pub entries: BTreeMap<(i64, usize), QuotientDim>,
}

impl HomologyFingerprint {
    pub fn get(&self, i: i64, r: usize) -> QuotientDim {
        let i = self.period.map_or(i, |p| i.rem_euclid(p as i64));
        self.entries.get(&(i, r)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(QuotientDim::is_zero)
    }

    /// Entries with nonzero homology.
    pub fn nonzero(&self) -> impl Iterator<Item = (&(i64, usize), &QuotientDim)> {
        self.entries.iter().filter(|(_, q)| !q.is_zero())
    }
}

impl NComplex {
    /// `Z^i_r = ker d^i_{r}` as a ground-field basis.
    pub fn cycles(&self, i: i64, r: usize) -> RingMatrix {
        self.comp(i, r).kernel_basis()
    }

    /// `B^i_r = im d^{i-r}_{r}` as a ground-field spanning set.
    pub fn boundaries(&self, i: i64, r: usize) -> RingMatrix {
        self.comp(i - r as i64, r).ground_matrix()
    }

    /// `H^i_r = Z^i_r / B^i_{N-r}`.
    pub fn homology_at(&self, i: i64, r: usize) -> Result<QuotientDim> {
        if r == 0 || r >= self.n {
            return Err(Error::OutOfRange(format!("amplitude {r} outside 1..{}", self.n)));
        }
        quotient_dim(self.ring, &self.cycles(i, r), &self.boundaries(i, self.n - r))
            .map_err(|e| Error::Internal(format!("homology at degree {i}, amplitude {r}: {e}")))
    }

    /// `C^i_r = X^i / im d^{i-r}_{r}`.
    pub fn cokernel_at(&self, i: i64, r: usize) -> Result<QuotientDim> {
        let whole = RingMatrix::identity(self.ring.ground_ring(), self.dim(i) * self.ring.degree());
        quotient_dim(self.ring, &whole, &self.boundaries(i, r))
    }

    /// The table of all `C^i_r`, `1 <= r <= N-1`, over the support.
    pub fn cokernels(&self) -> Result<BTreeMap<(i64, usize), QuotientDim>> {
        let mut out = BTreeMap::new();
        for i in self.support.degrees() {
            for r in 1..self.n {
                out.insert((i, r), self.cokernel_at(i, r)?);
            }
        }
        Ok(out)
    }
}

/// Every homology group over the support (one period for periodic input).
pub fn homology(x: &NComplex) -> Result<HomologyFingerprint> {
    let mut entries = BTreeMap::new();
    for i in x.support.degrees() {
        for r in 1..x.n {
            entries.insert((i, r), x.homology_at(i, r)?);
        }
    }
    Ok(HomologyFingerprint { n: x.n, period: x.period(), entries })
}

/// True when every `H^i_r` vanishes.
pub fn is_n_exact(x: &NComplex) -> Result<bool> {
    for i in x.support.degrees() {
        for r in 1..x.n {
            if !x.homology_at(i, r)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CoeffRing;

    fn k() -> CoeffRing {
        CoeffRing::PrimeField { p: 2 }
    }

    #[test]
    fn short_disk_homology() {
        let d = NComplex::disk(3, k(), 1, 2, 1).unwrap();
        let h = homology(&d).unwrap();
        let nz: Vec<_> = h.nonzero().map(|(&key, q)| (key, q.dim)).collect();
        assert_eq!(nz, vec![((0, 2), 1), ((1, 1), 1)]);
        assert!(!is_n_exact(&d).unwrap());
    }

    #[test]
    fn full_disks_are_exact() {
        for n in 2..=4 {
            for rank in 1..=2 {
                for j in -1..=1 {
                    let d = NComplex::disk(n, k(), j, n, rank).unwrap();
                    assert!(is_n_exact(&d).unwrap());
                }
            }
        }
    }

    #[test]
    fn x_complex_is_exact() {
        let x = crate::ncomplex::tests::x_complex();
        let h = homology(&x).unwrap();
        assert!(h.is_zero());
        assert!(h.get(7, 2).is_zero());
        // C^0_1 = R / (x) is one-dimensional with trivial x-action.
        assert_eq!(x.cokernel_at(0, 1).unwrap(), QuotientDim { dim: 1, x_ranks: vec![0, 0] });
    }
}
