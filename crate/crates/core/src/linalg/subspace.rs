use super::{CoeffRing, RingMatrix};
use crate::error::{Error, Result};

/// Size of a subquotient `span(big) / span(small)` of `R^n`.
///
/// `dim` is the ground-field dimension. For truncated rings `x_ranks[k-1]`
/// is the rank of multiplication by `x^k` on the quotient, `k = 1..m-1`;
/// together these determine the isomorphism type of the quotient module.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientDim {
    pub dim: usize,
    pub x_ranks: Vec<usize>,
}

impl QuotientDim {
    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }
}

/// Compare two x-stable subspaces of `R^n`, given as ground-field column
/// bases in linearised coordinates (`n * m` rows).
pub fn quotient_dim(ring: CoeffRing, big: &RingMatrix, small: &RingMatrix) -> Result<QuotientDim> {
    let ground = ring.ground_ring();
    if big.ring() != ground || small.ring() != ground {
        return Err(Error::RingMismatch("quotient_dim expects ground-field bases".into()));
    }
    if big.rows() != small.rows() {
        return Err(Error::Shape(format!(
            "subspaces live in spaces of dimension {} and {}",
            big.rows(),
            small.rows()
        )));
    }
    let rows = big.rows();
    let rank_big = big.rank();
    let rank_small = small.rank();
    let joint = RingMatrix::hstack(ground, rows, &[big.clone(), small.clone()]);
    if joint.rank() != rank_big {
        return Err(Error::NotContained);
    }
    let dim = rank_big - rank_small;
    let m = ring.degree();
    let mut x_ranks = Vec::with_capacity(m.saturating_sub(1));
    if m > 1 && dim > 0 {
        let n = rows / m;
        for k in 1..m {
            let xk = RingMatrix::x_power_operator(ring, n, k);
            let moved = &xk * big;
            let r = RingMatrix::hstack(ground, rows, &[moved, small.clone()]).rank();
            x_ranks.push(r - rank_small);
        }
    } else if m > 1 {
        x_ranks.resize(m - 1, 0);
    }
    Ok(QuotientDim { dim, x_ranks })
}
