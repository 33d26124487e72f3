//! N-complexes of finitely generated free modules.

mod chain_map;
mod constructions;
mod homology;

pub use chain_map::ChainMapN;
pub use homology::{homology, is_n_exact, HomologyFingerprint};

use crate::error::{Error, Result};
use crate::linalg::{CoeffRing, RingMatrix};

/// Where a complex lives: a finite degree interval or a periodic pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Support {
    /// Degrees `lo..=hi`; empty when `lo > hi`.
    Bounded { lo: i64, hi: i64 },
    /// `X^{i + period} = X^i` and `d^{i + period} = d^i`.
    Periodic { period: usize },
}

impl Support {
    pub const EMPTY: Support = Support::Bounded { lo: 0, hi: -1 };

    pub fn is_periodic(&self) -> bool {
        matches!(self, Support::Periodic { .. })
    }

    /// The stored degrees: the interval, or one period starting at 0.
    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        match *self {
            Support::Bounded { lo, hi } => lo..=hi,
            Support::Periodic { period } => 0..=period as i64 - 1,
        }
    }

    fn len(&self) -> usize {
        match *self {
            Support::Bounded { lo, hi } => (hi - lo + 1).max(0) as usize,
            Support::Periodic { period } => period,
        }
    }
}

/// An N-complex of free modules `X^i = R^{dim(i)}` with differentials
/// `d^i: X^i -> X^{i+1}` whose N-fold composites vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NComplex {
    n: usize,
    ring: CoeffRing,
    support: Support,
    dims: Vec<usize>,
    /// Indexed like `dims`; the last bounded entry maps to the zero module.
    diffs: Vec<RingMatrix>,
}

impl NComplex {
    /// The zero complex.
    pub fn zero(n: usize, ring: CoeffRing) -> Self {
        NComplex { n, ring, support: Support::EMPTY, dims: vec![], diffs: vec![] }
    }

    /// Build a complex from its ranks and differentials, checking shapes but
    /// not `d^N = 0`. Use [`validate`](Self::validate) for the latter.
    pub fn from_parts(
        n: usize,
        ring: CoeffRing,
        support: Support,
        dims: Vec<usize>,
        diffs: Vec<RingMatrix>,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::OutOfRange(format!("N must be at least 2, got {n}")));
        }
        if let Support::Periodic { period: 0 } = support {
            return Err(Error::Support("period must be positive".into()));
        }
        let len = support.len();
        if dims.len() != len || diffs.len() != len {
            return Err(Error::Shape(format!(
                "support has {len} degrees but {} ranks and {} differentials were given",
                dims.len(),
                diffs.len()
            )));
        }
        let x = NComplex { n, ring, support, dims, diffs };
        for i in support.degrees() {
            let d = &x.diffs[x.index(i).unwrap()];
            if d.ring() != ring {
                return Err(Error::InvalidComplex { degree: i, reason: format!("differential is over {}", d.ring()) });
            }
            if d.shape() != (x.dim(i + 1), x.dim(i)) {
                return Err(Error::InvalidComplex {
                    degree: i,
                    reason: format!(
                        "differential is {}x{}, expected {}x{}",
                        d.rows(),
                        d.cols(),
                        x.dim(i + 1),
                        x.dim(i)
                    ),
                });
            }
        }
        Ok(x)
    }

    /// [`from_parts`](Self::from_parts) followed by [`validate`](Self::validate).
    pub fn new(n: usize, ring: CoeffRing, support: Support, dims: Vec<usize>, diffs: Vec<RingMatrix>) -> Result<Self> {
        let x = Self::from_parts(n, ring, support, dims, diffs)?;
        x.validate()?;
        Ok(x)
    }

    /// The period-1 complex `R --x--> R --x--> R ...` over `GF(p)[x]/(x^m)`,
    /// an N-complex whenever `m <= N`.
    pub fn x_multiplication(n: usize, ring: CoeffRing) -> Result<Self> {
        let CoeffRing::TruncatedPoly { m, .. } = ring else {
            return Err(Error::InvalidRing(format!("{ring} has no nilpotent variable")));
        };
        let mut x = vec![0; m];
        x[1] = 1;
        let d = RingMatrix::from_elems(ring, 1, 1, vec![crate::linalg::Elem::Poly(x)])?;
        Self::periodic(n, ring, vec![1], vec![d])
    }

    /// Bounded complex on `lo..lo + dims.len()`; `diffs[k]` is `d^{lo+k}`.
    /// The differential out of the top degree may be omitted.
    pub fn bounded(n: usize, ring: CoeffRing, lo: i64, dims: Vec<usize>, mut diffs: Vec<RingMatrix>) -> Result<Self> {
        if !dims.is_empty() && diffs.len() + 1 == dims.len() {
            diffs.push(RingMatrix::zeros(ring, 0, *dims.last().unwrap()));
        }
        let support = if dims.is_empty() {
            Support::EMPTY
        } else {
            Support::Bounded { lo, hi: lo + dims.len() as i64 - 1 }
        };
        Self::new(n, ring, support, dims, diffs)
    }

    pub fn periodic(n: usize, ring: CoeffRing, dims: Vec<usize>, diffs: Vec<RingMatrix>) -> Result<Self> {
        let period = dims.len();
        Self::new(n, ring, Support::Periodic { period }, dims, diffs)
    }

    /// Assemble a complex from degreewise callbacks over a support.
    pub(crate) fn from_fn(
        n: usize,
        ring: CoeffRing,
        support: Support,
        dim: impl Fn(i64) -> usize,
        d: impl Fn(i64) -> RingMatrix,
    ) -> Self {
        let dims = support.degrees().map(&dim).collect();
        let diffs = support.degrees().map(&d).collect();
        let x = Self::from_parts(n, ring, support, dims, diffs).expect("constructor produced inconsistent shapes");
        debug_assert!(x.validate().is_ok(), "constructor produced an invalid complex");
        x.trimmed()
    }

    pub fn order(&self) -> usize {
        self.n
    }
    pub fn ring(&self) -> CoeffRing {
        self.ring
    }
    pub fn support(&self) -> Support {
        self.support
    }
    pub fn is_periodic(&self) -> bool {
        self.support.is_periodic()
    }
    pub fn period(&self) -> Option<usize> {
        match self.support {
            Support::Periodic { period } => Some(period),
            _ => None,
        }
    }

    fn index(&self, i: i64) -> Option<usize> {
        match self.support {
            Support::Bounded { lo, hi } => (lo <= i && i <= hi).then(|| (i - lo) as usize),
            Support::Periodic { period } => Some(i.rem_euclid(period as i64) as usize),
        }
    }

    /// Rank of `X^i`.
    pub fn dim(&self, i: i64) -> usize {
        self.index(i).map_or(0, |k| self.dims[k])
    }

    /// Total rank over the stored degrees.
    pub fn total_rank(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `d^i: X^i -> X^{i+1}`.
    pub fn d(&self, i: i64) -> RingMatrix {
        match self.index(i) {
            Some(k) => self.diffs[k].clone(),
            None => RingMatrix::zeros(self.ring, self.dim(i + 1), self.dim(i)),
        }
    }

    /// `d^{i+r-1} ... d^i: X^i -> X^{i+r}`, for any `r >= 0`.
    pub(crate) fn comp(&self, i: i64, r: usize) -> RingMatrix {
        let mut acc = RingMatrix::identity(self.ring, self.dim(i));
        for k in 0..r as i64 {
            if acc.rows() == 0 || acc.cols() == 0 {
                return RingMatrix::zeros(self.ring, self.dim(i + r as i64), self.dim(i));
            }
            acc = &self.d(i + k) * &acc;
        }
        acc
    }

    /// The composite differential of length `r`, `0 <= r <= N`.
    pub fn composite(&self, i: i64, r: usize) -> Result<RingMatrix> {
        if r > self.n {
            return Err(Error::OutOfRange(format!("composite length {r} exceeds N = {}", self.n)));
        }
        Ok(self.comp(i, r))
    }

    /// Degrees with a nonzero term (one period for periodic complexes).
    pub fn nonzero_degrees(&self) -> Vec<i64> {
        self.support.degrees().filter(|&i| self.dim(i) > 0).collect()
    }

    /// Smallest and largest degree with a nonzero term (bounded only).
    pub fn extent(&self) -> Option<(i64, i64)> {
        if self.is_periodic() {
            return None;
        }
        let nz = self.nonzero_degrees();
        Some((*nz.first()?, *nz.last()?))
    }

    /// Check `d^N = 0` on every degree of the support. Reports the first
    /// failing degree.
    pub fn validate(&self) -> Result<()> {
        for i in self.support.degrees() {
            if !self.comp(i, self.n).is_zero() {
                return Err(Error::InvalidComplex {
                    degree: i,
                    reason: format!("composite of {} consecutive differentials starting here is nonzero", self.n),
                });
            }
        }
        Ok(())
    }

    /// Drop zero terms at the ends of a bounded support.
    pub fn trimmed(self) -> Self {
        let Some((lo, hi)) = self.extent() else {
            return if self.is_periodic() { self } else { Self::zero(self.n, self.ring) };
        };
        let (a, b) = (self.index(lo).unwrap(), self.index(hi).unwrap());
        let mut diffs = self.diffs[a..=b].to_vec();
        let last = diffs.last_mut().unwrap();
        *last = RingMatrix::zeros(self.ring, 0, last.cols());
        NComplex {
            n: self.n,
            ring: self.ring,
            support: Support::Bounded { lo, hi },
            dims: self.dims[a..=b].to_vec(),
            diffs,
        }
    }

    /// A periodic complex viewed with period `q`, a multiple of its period.
    pub fn inflate(&self, q: usize) -> Result<Self> {
        match self.support {
            Support::Periodic { period } if q % period == 0 && q > 0 => Ok(Self::from_fn(
                self.n,
                self.ring,
                Support::Periodic { period: q },
                |i| self.dim(i),
                |i| self.d(i),
            )),
            _ => Err(Error::Support(format!("cannot inflate {:?} to period {q}", self.support))),
        }
    }

    /// The bounded complex agreeing with `self` on degrees `lo..=hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Self {
        let hi = hi.max(lo - 1);
        let support = Support::Bounded { lo, hi };
        let dims = support.degrees().map(|i| self.dim(i)).collect();
        let diffs = support
            .degrees()
            .map(|i| if i == hi { RingMatrix::zeros(self.ring, 0, self.dim(i)) } else { self.d(i) })
            .collect();
        Self::from_parts(self.n, self.ring, support, dims, diffs).unwrap()
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.n != other.n || self.ring != other.ring {
            return Err(Error::RingMismatch("direct sum of complexes of different kinds".into()));
        }
        let support = joint_support(self.support, other.support)?;
        Ok(Self::from_fn(
            self.n,
            self.ring,
            support,
            |i| self.dim(i) + other.dim(i),
            |i| RingMatrix::block_diag(self.ring, &[self.d(i), other.d(i)]),
        ))
    }

    /// Conjugate every differential by the base changes `g(i)` of `X^i`.
    pub fn base_change(&self, g: impl Fn(i64) -> RingMatrix) -> Self {
        let inv: Vec<(i64, RingMatrix)> = self
            .support
            .degrees()
            .map(|i| (i, g(i).inverse().expect("base change must be invertible")))
            .collect();
        let inv_at = |i: i64| -> RingMatrix {
            let k = self.index(i).map(|k| inv[k].1.clone());
            k.unwrap_or_else(|| RingMatrix::identity(self.ring, 0))
        };
        Self::from_fn(self.n, self.ring, self.support, |i| self.dim(i), |i| {
            let gi1 = if self.dim(i + 1) == 0 { RingMatrix::identity(self.ring, 0) } else { g(i + 1) };
            &(&gi1 * &self.d(i)) * &inv_at(i)
        })
    }
}

/// The smallest support containing both (periodic supports combine to the
/// least common multiple of their periods).
pub(crate) fn joint_support(a: Support, b: Support) -> Result<Support> {
    use num_integer::Integer;
    match (a, b) {
        (Support::Bounded { lo: a0, hi: a1 }, Support::Bounded { lo: b0, hi: b1 }) => {
            if a0 > a1 {
                return Ok(b);
            }
            if b0 > b1 {
                return Ok(a);
            }
            Ok(Support::Bounded { lo: a0.min(b0), hi: a1.max(b1) })
        }
        (Support::Periodic { period: p }, Support::Periodic { period: q }) => Ok(Support::Periodic { period: p.lcm(&q) }),
        (Support::Periodic { .. }, Support::Bounded { lo, hi }) | (Support::Bounded { lo, hi }, Support::Periodic { .. })
            if lo > hi =>
        {
            Ok(if a.is_periodic() { a } else { b })
        }
        _ => Err(Error::Support("cannot combine bounded and periodic supports".into())),
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::linalg::Elem;

    pub(crate) fn gf2() -> CoeffRing {
        CoeffRing::PrimeField { p: 2 }
    }

    pub(crate) fn x_complex() -> NComplex {
        NComplex::x_multiplication(3, CoeffRing::TruncatedPoly { p: 2, m: 3 }).unwrap()
    }

    #[test]
    fn zero_complex_validates() {
        assert!(NComplex::zero(3, gf2()).validate().is_ok());
    }

    #[test]
    fn identity_chain_violates_n3() {
        let one = RingMatrix::identity(gf2(), 1);
        let x = NComplex::from_parts(
            3,
            gf2(),
            Support::Bounded { lo: 0, hi: 3 },
            vec![1; 4],
            vec![one.clone(), one.clone(), one, RingMatrix::zeros(gf2(), 0, 1)],
        )
        .unwrap();
        assert_eq!(
            x.validate().unwrap_err(),
            Error::InvalidComplex {
                degree: 0,
                reason: "composite of 3 consecutive differentials starting here is nonzero".into()
            }
        );
    }

    #[test]
    fn x_complex_is_valid() {
        let x = x_complex();
        assert!(x.validate().is_ok());
        let x2 = x.composite(5, 2).unwrap();
        assert_eq!(x2.entry(0, 0), Elem::Poly(vec![0, 0, 1]));
        assert!(x.composite(0, 3).unwrap().is_zero());
        assert!(x.composite(0, 4).is_err());
    }

    #[test]
    fn composite_zero_is_identity() {
        let x = x_complex();
        assert_eq!(x.composite(0, 0).unwrap(), RingMatrix::identity(x.ring(), 1));
    }

    #[test]
    fn shape_errors_are_located() {
        let err = NComplex::bounded(2, gf2(), 4, vec![1, 2], vec![RingMatrix::zeros(gf2(), 1, 1)]).unwrap_err();
        assert!(matches!(err, Error::InvalidComplex { degree: 4, .. }));
    }

    #[test]
    fn inflation_and_windows() {
        let x = x_complex().inflate(3).unwrap();
        assert_eq!(x.period(), Some(3));
        let w = x.window(-2, 2);
        assert_eq!(w.nonzero_degrees(), vec![-2, -1, 0, 1, 2]);
        assert!(w.validate().is_ok());
        assert!(w.d(2).rows() == 0);
    }
}
