//! The functor from N-complexes of free modules to complexes of projective
//! representations of the line quiver with `N - 1` vertices.
//!
//! Degree `i = 2r` of the image collects the source degrees
//! `m, ..., m + N - 2` with `m = N r`; degree `2r + 1` collects
//! `m + N - 1, ..., m + 2N - 3`. Vertex `j` holds the first `j` of them.
//! For `N = 3` and `r = 0, 1` this reads
//!
//! ```text
//! degree    0          1          2          3
//! vertex 1  P0         P2         P3         P5
//! vertex 2  P0 + P1    P2 + P3    P3 + P4    P5 + P6
//! ```

mod generators;
mod suspension;
mod transport;

pub use generators::{generator_images, GeneratorImage, ThetaDirection};
pub use suspension::{suspension_compat, SuspensionCompat};
pub use transport::{faithful_witness, full_witness, transport_homotopy};

use crate::error::{Error, Result};
use crate::linalg::{CoeffRing, RingMatrix};
use crate::ncomplex::{ChainMapN, NComplex, Support};
use crate::quiver::{LineRep, ProjDecomposition, RepChainMap, RepComplex};

/// A computed value together with a note when the closed-form expression
/// failed its check and a solver produced the value instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derived<T> {
    pub value: T,
    pub discrepancy: Option<String>,
}

impl<T> Derived<T> {
    fn exact(value: T) -> Self {
        Derived { value, discrepancy: None }
    }
    pub fn used_fallback(&self) -> bool {
        self.discrepancy.is_some()
    }
}

/// Where the summands of `F(P)^i` come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FBlockIndex {
    pub degree: i64,
    pub n: usize,
}

impl FBlockIndex {
    pub fn new(n: usize, degree: i64) -> Self {
        FBlockIndex { degree, n }
    }
    pub fn is_even(&self) -> bool {
        self.degree.rem_euclid(2) == 0
    }
    /// `m = N r` for `i = 2r` or `i = 2r + 1`.
    pub fn m(&self) -> i64 {
        self.n as i64 * self.degree.div_euclid(2)
    }
    /// Source degree of the summand at 0-based position `a`.
    pub fn source_degree(&self, a: usize) -> i64 {
        let off = if self.is_even() { 0 } else { self.n as i64 - 1 };
        self.m() + off + a as i64
    }
    /// Source degrees present at vertex `j` (1-based).
    pub fn interval(&self, j: usize) -> std::ops::RangeInclusive<i64> {
        self.source_degree(0)..=self.source_degree(j - 1)
    }
    pub fn positions(&self) -> usize {
        self.n - 1
    }
}

pub(crate) fn check_order(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("the functor needs N >= 2, got {n}")));
    }
    Ok(())
}

/// Support of the image of a complex with support `s`.
pub(crate) fn image_support(n: usize, s: Support) -> Result<Support> {
    let nn = n as i64;
    match s {
        Support::Bounded { lo, hi } if lo <= hi => {
            Ok(Support::Bounded { lo: 2 * (lo.div_euclid(nn) - 2), hi: 2 * (hi.div_euclid(nn) + 1) + 1 })
        }
        Support::Bounded { .. } => Ok(Support::EMPTY),
        Support::Periodic { period } => {
            if period % n != 0 {
                return Err(Error::Support(format!("period {period} is not a multiple of N = {n}")));
            }
            Ok(Support::Periodic { period: 2 * period / n })
        }
    }
}

/// Vertexwise family from a block matrix at the last vertex. `rows[a]`
/// and `cols[b]` list the block sizes inside position `a`, `b`; vertex `v`
/// keeps positions `0..=v`. `entry(a, p, b, q)` is the block from part `q`
/// of position `b` to part `p` of position `a`.
pub(crate) fn vertex_family(
    ring: CoeffRing,
    rows: &[Vec<usize>],
    cols: &[Vec<usize>],
    mut entry: impl FnMut(usize, usize, usize, usize) -> Option<RingMatrix>,
) -> Vec<RingMatrix> {
    let flat = |v: &[Vec<usize>]| -> Vec<(usize, usize, usize)> {
        v.iter().enumerate().flat_map(|(a, parts)| parts.iter().enumerate().map(move |(p, &d)| (a, p, d))).collect()
    };
    let (fr, fc) = (flat(rows), flat(cols));
    let rs: Vec<usize> = fr.iter().map(|t| t.2).collect();
    let cs: Vec<usize> = fc.iter().map(|t| t.2).collect();
    let top = RingMatrix::from_blocks(ring, &rs, &cs, |x, y| entry(fr[x].0, fr[x].1, fc[y].0, fc[y].1));
    let prefix = |v: &[Vec<usize>], k: usize| -> usize { v[..=k].iter().flatten().sum() };
    (0..rows.len()).map(|v| top.block(0, 0, prefix(rows, v), prefix(cols, v))).collect()
}

/// Block at positions `(a, b)` of a last-vertex matrix whose positions
/// have sizes `rows`, `cols`.
pub(crate) fn position_block(top: &RingMatrix, rows: &[usize], cols: &[usize], a: usize, b: usize) -> RingMatrix {
    let r0: usize = rows[..a].iter().sum();
    let c0: usize = cols[..b].iter().sum();
    top.block(r0, c0, rows[a], cols[b])
}

fn singles(dims: Vec<usize>) -> Vec<Vec<usize>> {
    dims.into_iter().map(|d| vec![d]).collect()
}

/// Summand ranks of `F(P)^i` in position order.
pub(crate) fn position_dims(p: &NComplex, i: i64) -> Vec<usize> {
    let b = FBlockIndex::new(p.order(), i);
    (0..b.positions()).map(|a| p.dim(b.source_degree(a))).collect()
}

fn term(p: &NComplex, i: i64) -> LineRep {
    LineRep::canonical_lambda(p.ring(), &ProjDecomposition { ranks: position_dims(p, i) })
}

/// `μ^i` for even `i` and `λ^i` for odd `i`, vertexwise.
fn differential(p: &NComplex, i: i64) -> Vec<RingMatrix> {
    let n = p.order();
    let ring = p.ring();
    let b = FBlockIndex::new(n, i);
    let m = b.m();
    let (src, dst) = (position_dims(p, i), position_dims(p, i + 1));
    if b.is_even() {
        // μ: entry (a, b) is the composite of length N-1-(b-a) out of P^{m+b}.
        vertex_family(ring, &singles(dst.clone()), &singles(src.clone()), |a, _, c, _| {
            (a <= c).then(|| p.comp(m + c as i64, n - 1 - (c - a)))
        })
    } else {
        // λ: d on the diagonal, -1 on the superdiagonal.
        vertex_family(ring, &singles(dst.clone()), &singles(src.clone()), |a, _, c, _| {
            if c == a {
                Some(p.d(b.source_degree(a)))
            } else if c == a + 1 {
                Some(-&RingMatrix::identity(ring, src[c]))
            } else {
                None
            }
        })
    }
}

/// `F(P)`. Bounded inputs give bounded outputs; periodic inputs need a
/// period divisible by `N` and give period `2 * period / N`.
pub fn f_obj(p: &NComplex) -> Result<RepComplex> {
    let n = p.order();
    check_order(n)?;
    p.validate()?;
    let support = image_support(n, p.support())?;
    if support == Support::EMPTY {
        return Ok(RepComplex::zero(p.ring(), n - 1));
    }
    let x = RepComplex::from_fn(p.ring(), n - 1, support, |i| term(p, i), |i| differential(p, i));
    x.validate()?;
    Ok(x)
}

/// `F(f)`: blockwise diagonal in the components of `f`.
pub fn f_mor(f: &ChainMapN) -> Result<RepChainMap> {
    f.validate()?;
    let (q, p) = (f.source(), f.target());
    let (fq, fp) = (f_obj(q)?, f_obj(p)?);
    f_mor_between(f, &fq, &fp)
}

/// `F(f)` between already computed images.
pub(crate) fn f_mor_between(f: &ChainMapN, fq: &RepComplex, fp: &RepComplex) -> Result<RepChainMap> {
    let (q, p) = (f.source(), f.target());
    let n = q.order();
    let g = RepChainMap::from_fn_unchecked(fq, fp, |i| {
        let b = FBlockIndex::new(n, i);
        vertex_family(q.ring(), &singles(position_dims(p, i)), &singles(position_dims(q, i)), |a, _, c, _| {
            (a == c).then(|| f.map(b.source_degree(a)))
        })
    })?;
    debug_assert!(g.validate().is_ok());
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::random_chain_map;
    use crate::quiver::rep_null_homotopy;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn k() -> CoeffRing {
        CoeffRing::PrimeField { p: 5 }
    }

    /// Rank-one complex on `lo..lo+len` with `d` acting by distinct scalars
    /// so that composites are recognisable; the product of any N
    /// consecutive ones must vanish, so every N-th scalar is zero.
    fn scalar_complex(n: usize, lo: i64, len: usize) -> NComplex {
        let diffs = (0..len - 1)
            .map(|t| {
                let deg = lo + t as i64;
                let c = if deg.rem_euclid(n as i64) == (n as i64 - 1) { 0 } else { 2 + t as i64 };
                RingMatrix::scalar(k(), 1, c)
            })
            .collect();
        NComplex::bounded(n, k(), lo, vec![1; len], diffs).unwrap()
    }

    #[test]
    fn block_index_matches_worked_layout() {
        let idx = |i| FBlockIndex::new(3, i);
        assert_eq!(idx(-1).interval(2), -1..=0);
        assert_eq!(idx(0).interval(2), 0..=1);
        assert_eq!(idx(1).interval(2), 2..=3);
        assert_eq!(idx(2).interval(2), 3..=4);
        assert_eq!(idx(3).interval(2), 5..=6);
        assert_eq!(idx(3).interval(1), 5..=5);
    }

    #[test]
    fn example_for_n_three() {
        let p = scalar_complex(3, -1, 8);
        let fp = f_obj(&p).unwrap();
        let d = |i: i64| p.d(i);
        // λ out of degree -1 at vertex 2 is [[d^{-1}, -1], [0, d^0]].
        let lam = &fp.d(-1)[1];
        let expected = RingMatrix::from_blocks(k(), &[1, 1], &[1, 1], |a, b| match (a, b) {
            (0, 0) => Some(d(-1)),
            (0, 1) => Some(RingMatrix::scalar(k(), 1, -1)),
            (1, 1) => Some(d(0)),
            _ => None,
        });
        assert_eq!(lam, &expected);
        // μ out of degree 0 is [[d^1 d^0, d^1], [0, d^2 d^1]].
        let mu = &fp.d(0)[1];
        let expected = RingMatrix::from_blocks(k(), &[1, 1], &[1, 1], |a, b| match (a, b) {
            (0, 0) => Some(&d(1) * &d(0)),
            (0, 1) => Some(d(1)),
            (1, 1) => Some(&d(2) * &d(1)),
            _ => None,
        });
        assert_eq!(mu, &expected);
        assert_eq!(fp.d(0)[0], &d(1) * &d(0));
        assert_eq!(fp.d(-1)[0], d(-1));
    }

    #[test]
    fn n_two_is_a_reindexing() {
        let p = scalar_complex(2, -2, 5);
        let fp = f_obj(&p).unwrap();
        for i in -3..4 {
            assert_eq!(fp.term(i).vdims(), &[p.dim(i)]);
            assert_eq!(fp.d(i)[0], p.d(i));
        }
    }

    #[test]
    fn full_disk_maps_to_contractible() {
        for j in -2..3 {
            let disk = NComplex::disk(4, k(), j, 4, 1).unwrap();
            let fd = f_obj(&disk).unwrap();
            assert!(fd.is_acyclic().unwrap());
            let h = rep_null_homotopy(&RepChainMap::identity(&fd)).unwrap();
            assert!(h.is_some(), "disk ending at {j}");
        }
    }

    #[test]
    fn periodic_needs_divisible_period() {
        let x = crate::ncomplex::tests::x_complex();
        assert!(matches!(f_obj(&x), Err(Error::Support(_))));
        let x3 = x.inflate(3).unwrap();
        let fx = f_obj(&x3).unwrap();
        assert_eq!(fx.period(), Some(2));
        assert!(fx.is_acyclic().unwrap());
        let bad = NComplex::periodic(3, k(), vec![1, 1], vec![RingMatrix::zeros(k(), 1, 1); 2]).unwrap();
        assert!(matches!(f_obj(&bad), Err(Error::Support(_))));
    }

    #[test]
    fn functoriality() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = scalar_complex(3, 0, 5);
        let b = NComplex::disk(3, k(), 3, 3, 1).unwrap().direct_sum(&NComplex::disk(3, k(), 2, 2, 1).unwrap()).unwrap();
        let f = random_chain_map(&a, &b, &mut rng).unwrap();
        let g = random_chain_map(&b, &a, &mut rng).unwrap();
        let gf = ChainMapN::compose(&g, &f).unwrap();
        let lhs = f_mor(&gf).unwrap();
        let rhs = RepChainMap::compose(&f_mor(&g).unwrap(), &f_mor(&f).unwrap()).unwrap();
        for i in -4..6 {
            assert_eq!(lhs.map(i), rhs.map(i));
        }
        assert_eq!(f_mor(&ChainMapN::identity(&a)).unwrap(), RepChainMap::identity(&f_obj(&a).unwrap()));
    }
}
