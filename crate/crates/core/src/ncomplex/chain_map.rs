use super::{joint_support, NComplex, Support};
use crate::error::{Error, Result};
use crate::linalg::RingMatrix;

/// A morphism of N-complexes `f^i: X^i -> Y^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMapN {
    source: NComplex,
    target: NComplex,
    support: Support,
    maps: Vec<RingMatrix>,
}

impl ChainMapN {
    /// Build from a degreewise callback and check that all squares commute.
    pub fn new(source: &NComplex, target: &NComplex, f: impl Fn(i64) -> RingMatrix) -> Result<Self> {
        let g = Self::from_fn_unchecked(source, target, f)?;
        g.validate()?;
        Ok(g)
    }

    /// Build without the commutation check (shapes are still checked).
    pub fn from_fn_unchecked(source: &NComplex, target: &NComplex, f: impl Fn(i64) -> RingMatrix) -> Result<Self> {
        if source.n != target.n || source.ring != target.ring {
            return Err(Error::RingMismatch("chain map between complexes of different kinds".into()));
        }
        let support = joint_support(source.support, target.support)?;
        let mut maps = Vec::new();
        for i in support.degrees() {
            let m = f(i);
            if m.shape() != (target.dim(i), source.dim(i)) || m.ring() != source.ring {
                return Err(Error::InvalidChainMap {
                    degree: i,
                    reason: format!(
                        "component is {}x{} over {}, expected {}x{}",
                        m.rows(),
                        m.cols(),
                        m.ring(),
                        target.dim(i),
                        source.dim(i)
                    ),
                });
            }
            maps.push(m);
        }
        Ok(ChainMapN { source: source.clone(), target: target.clone(), support, maps })
    }

    pub fn identity(x: &NComplex) -> Self {
        Self::from_fn_unchecked(x, x, |i| RingMatrix::identity(x.ring, x.dim(i))).unwrap()
    }

    pub fn zero(x: &NComplex, y: &NComplex) -> Result<Self> {
        Self::from_fn_unchecked(x, y, |i| RingMatrix::zeros(x.ring, y.dim(i), x.dim(i)))
    }

    pub fn source(&self) -> &NComplex {
        &self.source
    }
    pub fn target(&self) -> &NComplex {
        &self.target
    }

    /// The component `f^i`.
    pub fn map(&self, i: i64) -> RingMatrix {
        let k = match self.support {
            Support::Bounded { lo, hi } => (lo <= i && i <= hi).then(|| (i - lo) as usize),
            Support::Periodic { period } => Some(i.rem_euclid(period as i64) as usize),
        };
        match k {
            Some(k) => self.maps[k].clone(),
            None => RingMatrix::zeros(self.source.ring, self.target.dim(i), self.source.dim(i)),
        }
    }

    /// Degrees on which components are stored.
    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.support.degrees()
    }

    /// Check `f^{i+1} d_X^i = d_Y^i f^i` everywhere.
    pub fn validate(&self) -> Result<()> {
        let lo = *self.degrees().start() - 1;
        for i in lo..=*self.degrees().end() {
            let lhs = &self.map(i + 1) * &self.source.d(i);
            let rhs = &self.target.d(i) * &self.map(i);
            if lhs != rhs {
                return Err(Error::InvalidChainMap { degree: i, reason: "square does not commute".into() });
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(RingMatrix::is_zero)
    }

    /// `g ∘ f`.
    pub fn compose(g: &Self, f: &Self) -> Result<Self> {
        if f.target != g.source {
            return Err(Error::Shape("composing maps whose middle complexes differ".into()));
        }
        Self::from_fn_unchecked(&f.source, &g.target, |i| &g.map(i) * &f.map(i))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("subtracting maps between different complexes".into()));
        }
        Self::from_fn_unchecked(&self.source, &self.target, |i| &self.map(i) - &other.map(i))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("adding maps between different complexes".into()));
        }
        Self::from_fn_unchecked(&self.source, &self.target, |i| &self.map(i) + &other.map(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CoeffRing;

    #[test]
    fn identity_commutes_and_composes() {
        let x = crate::ncomplex::tests::x_complex();
        let id = ChainMapN::identity(&x);
        assert!(id.validate().is_ok());
        assert_eq!(ChainMapN::compose(&id, &id).unwrap(), id);
    }

    #[test]
    fn non_chain_map_is_rejected() {
        let k = CoeffRing::PrimeField { p: 3 };
        let d = NComplex::disk(3, k, 1, 2, 1).unwrap();
        let err = ChainMapN::new(&d, &d, |i| RingMatrix::scalar(k, d.dim(i), if i == 0 { 1 } else { 2 })).unwrap_err();
        assert!(matches!(err, Error::InvalidChainMap { degree: 0, .. }));
    }
}
