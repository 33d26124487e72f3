use super::{joint_support, ChainMapN, NComplex, Support};
use crate::error::{Error, Result};
use crate::linalg::{CoeffRing, RingMatrix};

impl NComplex {
    /// The disk `D^j_i(R^rank)`: `R^rank` in degrees `j-i+1..=j`, joined by
    /// identities.
    pub fn disk(n: usize, ring: CoeffRing, j: i64, i: usize, rank: usize) -> Result<Self> {
        if !(1..=n).contains(&i) {
            return Err(Error::OutOfRange(format!("disk width {i} outside 1..={n}")));
        }
        if n < 2 {
            return Err(Error::OutOfRange(format!("N must be at least 2, got {n}")));
        }
        let lo = j - i as i64 + 1;
        let dims = vec![rank; i];
        let diffs = (0..i - 1).map(|_| RingMatrix::identity(ring, rank)).collect();
        Self::bounded(n, ring, lo, dims, diffs)
    }

    /// `Θ^k`, with `Θ(X)^i = X^{i+1}`.
    pub fn theta(&self, k: i64) -> Self {
        let support = match self.support {
            Support::Bounded { lo, hi } if lo <= hi => Support::Bounded { lo: lo - k, hi: hi - k },
            s => s,
        };
        Self::from_fn(self.n, self.ring, support, |i| self.dim(i + k), |i| self.d(i + k))
    }

    /// The suspension `(ΣX)^m = X^{m+1} ⊕ ... ⊕ X^{m+N-1}`.
    pub fn sigma(&self) -> Self {
        let n = self.n as i64;
        let support = match self.support {
            Support::Bounded { lo, hi } if lo <= hi => Support::Bounded { lo: lo - n + 1, hi: hi - 1 },
            s => s,
        };
        Self::from_fn(self.n, self.ring, support, |m| self.sigma_dims(m).iter().sum(), |m| self.sigma_diff(m, None))
    }

    fn sigma_dims(&self, m: i64) -> Vec<usize> {
        (1..self.n as i64).map(|c| self.dim(m + c)).collect()
    }

    /// The suspension differential at `m`; with `f` given, the cone
    /// differential (an extra leading `Y` block).
    fn sigma_diff(&self, m: i64, cone: Option<&ChainMapN>) -> RingMatrix {
        let n = self.n;
        let mut rows: Vec<usize> = self.sigma_dims(m + 1);
        let mut cols: Vec<usize> = self.sigma_dims(m);
        let off = usize::from(cone.is_some());
        if let Some(f) = cone {
            rows.insert(0, f.target().dim(m + 1));
            cols.insert(0, f.target().dim(m));
        }
        RingMatrix::from_blocks(self.ring, &rows, &cols, |rb, cb| {
            if let Some(f) = cone {
                if rb == 0 {
                    return match cb {
                        0 => Some(f.target().d(m)),
                        1 => Some(f.map(m + 1)),
                        _ => None,
                    };
                }
                if cb == 0 {
                    return None;
                }
            }
            let (rho, c) = (rb + 1 - off, cb + 1 - off);
            if rho < n - 1 {
                (c == rho + 1).then(|| RingMatrix::identity(self.ring, self.dim(m + c as i64)))
            } else {
                Some(-&self.comp(m + c as i64, n - c))
            }
        })
    }

    /// The inverse suspension `(Σ^{-1}X)^m = X^{m-N+1} ⊕ ... ⊕ X^{m-1}`.
    pub fn sigma_inv(&self) -> Self {
        let n = self.n as i64;
        let support = match self.support {
            Support::Bounded { lo, hi } if lo <= hi => Support::Bounded { lo: lo + 1, hi: hi + n - 1 },
            s => s,
        };
        let dims = |m: i64| -> Vec<usize> { (1..n).map(|c| self.dim(m - n + c)).collect() };
        Self::from_fn(self.n, self.ring, support, |m| dims(m).iter().sum(), |m| {
            RingMatrix::from_blocks(self.ring, &dims(m + 1), &dims(m), |rb, cb| {
                let (rho, c) = (rb + 1, cb + 1);
                if c == rho + 1 {
                    Some(RingMatrix::identity(self.ring, self.dim(m - n + c as i64)))
                } else if c == 1 {
                    Some(-&self.comp(m - n + 1, rho))
                } else {
                    None
                }
            })
        })
    }

    /// The mapping cone `C(f)^m = Y^m ⊕ X^{m+1} ⊕ ... ⊕ X^{m+N-1}` of
    /// `f: X -> Y`.
    pub fn cone(f: &ChainMapN) -> Self {
        let (x, y) = (f.source(), f.target());
        let n = x.n as i64;
        let sigma_support = match x.support {
            Support::Bounded { lo, hi } if lo <= hi => Support::Bounded { lo: lo - n + 1, hi: hi - 1 },
            s => s,
        };
        let support = joint_support(y.support, sigma_support).expect("chain map supports are compatible");
        Self::from_fn(
            x.n,
            x.ring,
            support,
            |m| y.dim(m) + x.sigma_dims(m).iter().sum::<usize>(),
            |m| x.sigma_diff(m, Some(f)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> CoeffRing {
        CoeffRing::PrimeField { p: 2 }
    }

    #[test]
    fn disks() {
        let stalk = NComplex::disk(3, gf2(), 0, 1, 1).unwrap();
        assert_eq!(stalk.nonzero_degrees(), vec![0]);
        let d = NComplex::disk(3, gf2(), 1, 2, 1).unwrap();
        assert_eq!(d.nonzero_degrees(), vec![0, 1]);
        assert_eq!(d.d(0), RingMatrix::identity(gf2(), 1));
        assert!(NComplex::disk(3, gf2(), 0, 3, 1).unwrap().validate().is_ok());
        assert!(NComplex::disk(3, gf2(), 0, 4, 1).is_err());
        assert!(NComplex::disk(3, gf2(), 0, 0, 1).is_err());
    }

    #[test]
    fn theta_reindexes() {
        let d = NComplex::disk(3, gf2(), 1, 2, 1).unwrap();
        assert_eq!(d.theta(0), d);
        assert_eq!(d.theta(1), NComplex::disk(3, gf2(), 0, 2, 1).unwrap());
        assert_eq!(d.theta(2).theta(-5), d.theta(-3));
    }

    #[test]
    fn sigma_of_stalk() {
        let s = NComplex::disk(3, gf2(), 0, 1, 1).unwrap().sigma();
        assert_eq!(s.nonzero_degrees(), vec![-2, -1]);
        assert_eq!(s.d(-2), RingMatrix::identity(gf2(), 1));
        assert!(NComplex::zero(3, gf2()).sigma().nonzero_degrees().is_empty());
    }

    #[test]
    fn n2_cone_is_classical() {
        let q = CoeffRing::Rationals;
        let x = NComplex::bounded(2, q, 0, vec![1, 1], vec![RingMatrix::from_ints(q, 1, 1, &[2])]).unwrap();
        let f = ChainMapN::identity(&x);
        let c = NComplex::cone(&f);
        // C^{-1} = X^0, C^0 = X^0 ⊕ X^1, C^1 = X^1
        assert_eq!(c.dim(-1), 1);
        assert_eq!(c.dim(0), 2);
        assert_eq!(c.d(-1), RingMatrix::from_ints(q, 2, 1, &[1, -2]));
        assert_eq!(c.d(0), RingMatrix::from_ints(q, 1, 2, &[2, 1]));
    }

    #[test]
    fn constructions_preserve_validity_on_periodic_input() {
        let x = super::super::tests::x_complex();
        for y in [x.sigma(), x.sigma_inv(), x.theta(4), NComplex::cone(&ChainMapN::identity(&x))] {
            assert!(y.validate().is_ok());
            assert_eq!(y.period(), Some(1));
        }
    }
}
