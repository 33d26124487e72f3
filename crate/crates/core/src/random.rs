//! Seeded random instances: complexes, exact complexes and maps that are
//! null-homotopic by construction.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::homotopy::HomotopyWitness;
use crate::linalg::{CoeffRing, RingMatrix};
use crate::ncomplex::{is_n_exact, ChainMapN, NComplex};

/// Size bounds for generated complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomConfig {
    pub n: usize,
    pub ring: CoeffRing,
    pub max_rank: usize,
    pub max_width: usize,
    /// Lowest degree a generated complex may occupy.
    pub lo: i64,
}

impl RandomConfig {
    pub fn new(n: usize, ring: CoeffRing) -> Self {
        RandomConfig { n, ring, max_rank: 2, max_width: 2 * n, lo: 0 }
    }
    pub fn with_bounds(mut self, max_rank: usize, max_width: usize) -> Self {
        self.max_rank = max_rank.max(1);
        self.max_width = max_width.max(1);
        self
    }
}

/// The RNG for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A string of at most `N` free modules of random ranks ending in degree
/// `end`, joined by random maps. Fewer than `N` maps compose, so `d^N = 0`
/// holds for any choice.
pub fn random_segment<R: Rng + ?Sized>(cfg: &RandomConfig, end: i64, len: usize, rng: &mut R) -> NComplex {
    let len = len.clamp(1, cfg.n);
    let dims: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=cfg.max_rank)).collect();
    let diffs = (0..len - 1).map(|t| RingMatrix::random(cfg.ring, dims[t + 1], dims[t], rng)).collect();
    NComplex::bounded(cfg.n, cfg.ring, end - len as i64 + 1, dims, diffs).expect("segments are N-complexes")
}

/// A base change by random invertible matrices in every degree.
pub fn scramble<R: Rng + ?Sized>(x: &NComplex, rng: &mut R) -> NComplex {
    let g: std::collections::BTreeMap<i64, RingMatrix> =
        x.support().degrees().map(|i| (i, RingMatrix::random_invertible(x.ring(), x.dim(i), rng))).collect();
    x.base_change(|i| g.get(&i).cloned().unwrap_or_else(|| RingMatrix::identity(x.ring(), x.dim(i))))
}

fn window<R: Rng + ?Sized>(cfg: &RandomConfig, rng: &mut R) -> (i64, i64) {
    let width = rng.gen_range(1..=cfg.max_width) as i64;
    (cfg.lo, cfg.lo + width - 1)
}

/// A bounded complex within the configured bounds: a scrambled sum of
/// random segments. Over a field every bounded N-complex is isomorphic to
/// one of these.
pub fn random_ncomplex<R: Rng + ?Sized>(cfg: &RandomConfig, rng: &mut R) -> NComplex {
    let (lo, hi) = window(cfg, rng);
    let pieces = rng.gen_range(1..=(hi - lo + 2) as usize);
    let mut x = NComplex::zero(cfg.n, cfg.ring);
    for _ in 0..pieces {
        let end = rng.gen_range(lo..=hi);
        let len = rng.gen_range(1..=((end - lo + 1) as usize).min(cfg.n));
        let room = rank_budget(cfg, &x, end - len as i64 + 1, end);
        if room == 0 {
            continue;
        }
        let small = RandomConfig { max_rank: room, ..*cfg };
        x = x.direct_sum(&random_segment(&small, end, len, rng)).expect("same kind");
    }
    scramble(&x, rng)
}

/// Rank still available in every degree of `lo..=hi`, keeping each term of
/// rank at most `max_rank`.
fn rank_budget(cfg: &RandomConfig, x: &NComplex, lo: i64, hi: i64) -> usize {
    (lo..=hi).map(|i| cfg.max_rank.saturating_sub(x.dim(i))).min().unwrap_or(0)
}

/// An N-exact complex: a scrambled sum of full disks, optionally glued
/// with a segment and its cone of the identity.
pub fn random_exact<R: Rng + ?Sized>(cfg: &RandomConfig, rng: &mut R) -> NComplex {
    let (lo, hi) = window(cfg, rng);
    let hi = hi.max(lo + cfg.n as i64 - 1);
    let mut x = NComplex::zero(cfg.n, cfg.ring);
    for _ in 0..rng.gen_range(1..=2) {
        let j = rng.gen_range(lo + cfg.n as i64 - 1..=hi);
        let r = rng.gen_range(1..=cfg.max_rank);
        x = x.direct_sum(&NComplex::disk(cfg.n, cfg.ring, j, cfg.n, r).unwrap()).unwrap();
    }
    if rng.gen_bool(0.5) {
        let seg = random_segment(&RandomConfig { max_rank: 1, ..*cfg }, rng.gen_range(lo..=hi), cfg.n - 1, rng);
        x = x.direct_sum(&NComplex::cone(&ChainMapN::identity(&seg))).unwrap();
    }
    scramble(&x, rng)
}

/// A complex with `H^i_1 = 0` in every degree, by rejection sampling over
/// random segments of full length. Falls back to a sum of full disks.
pub fn random_h1_free<R: Rng + ?Sized>(cfg: &RandomConfig, rng: &mut R) -> NComplex {
    for _ in 0..64 {
        let (lo, hi) = window(cfg, rng);
        let mut x = NComplex::zero(cfg.n, cfg.ring);
        for _ in 0..rng.gen_range(1..=2) {
            let end = rng.gen_range(lo..=hi.max(lo + cfg.n as i64 - 1));
            let r = rng.gen_range(1..=cfg.max_rank);
            let dims = vec![r; cfg.n];
            let diffs = (0..cfg.n - 1).map(|_| RingMatrix::random(cfg.ring, r, r, rng)).collect();
            let seg = NComplex::bounded(cfg.n, cfg.ring, end - cfg.n as i64 + 1, dims, diffs).unwrap();
            x = x.direct_sum(&seg).unwrap();
        }
        if first_homology_vanishes(&x) {
            return scramble(&x, rng);
        }
    }
    random_exact(cfg, rng)
}

/// Whether `H^i_1 = 0` in every degree.
pub fn first_homology_vanishes(x: &NComplex) -> bool {
    let n = x.order() as i64;
    let degs: Vec<i64> = match x.extent() {
        Some((lo, hi)) => (lo - n..=hi + n).collect(),
        None => x.support().degrees().collect(),
    };
    degs.into_iter().all(|i| x.homology_at(i, 1).map(|h| h.is_zero()).unwrap_or(false))
}

/// Either an exact complex or a random one, each with probability 1/2,
/// together with a flag telling which.
pub fn random_mixed<R: Rng + ?Sized>(cfg: &RandomConfig, rng: &mut R) -> Result<(NComplex, bool)> {
    let x = if rng.gen_bool(0.5) { random_exact(cfg, rng) } else { random_ncomplex(cfg, rng) };
    let exact = is_n_exact(&x)?;
    Ok((x, exact))
}

/// A map `q -> p` built from a random homotopy, with that homotopy.
pub fn random_null_homotopic<R: Rng + ?Sized>(q: &NComplex, p: &NComplex, rng: &mut R) -> (ChainMapN, HomotopyWitness) {
    let n = q.order() as i64;
    let s = match q.extent() {
        Some((lo, hi)) => (lo..=hi)
            .filter(|&i| p.dim(i - n + 1) > 0)
            .map(|i| (i, RingMatrix::random(q.ring(), p.dim(i - n + 1), q.dim(i), rng)))
            .collect(),
        None => Default::default(),
    };
    let w = HomotopyWitness { s, period: None };
    (w.reconstruct(q, p), w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stalk_bounds() {
        let cfg = RandomConfig::new(3, CoeffRing::PrimeField { p: 2 }).with_bounds(1, 1);
        let x = random_ncomplex(&cfg, &mut trial_rng(1, 0));
        assert_eq!(x.total_rank(), 1);
        assert_eq!(x.extent(), Some((0, 0)));
    }

    #[test]
    fn generated_complexes_validate() {
        for (t, ring) in [CoeffRing::PrimeField { p: 2 }, CoeffRing::Rationals, CoeffRing::TruncatedPoly { p: 3, m: 2 }]
            .into_iter()
            .enumerate()
        {
            for n in 2..=5 {
                let cfg = RandomConfig::new(n, ring);
                let mut rng = trial_rng(9, (t * 10 + n) as u64);
                for _ in 0..10 {
                    assert!(random_ncomplex(&cfg, &mut rng).validate().is_ok());
                    assert!(is_n_exact(&random_exact(&cfg, &mut rng)).unwrap());
                    assert!(first_homology_vanishes(&random_h1_free(&cfg, &mut rng)));
                }
            }
        }
    }

    #[test]
    fn deterministic_under_seed() {
        let cfg = RandomConfig::new(4, CoeffRing::Rationals);
        assert_eq!(random_ncomplex(&cfg, &mut trial_rng(3, 2)), random_ncomplex(&cfg, &mut trial_rng(3, 2)));
    }

    #[test]
    fn map_first_is_null_homotopic() {
        let cfg = RandomConfig::new(3, CoeffRing::PrimeField { p: 3 });
        let mut rng = trial_rng(4, 0);
        let (q, p) = (random_ncomplex(&cfg, &mut rng), random_ncomplex(&cfg, &mut rng));
        let (f, w) = random_null_homotopic(&q, &p, &mut rng);
        assert!(w.verifies(&f));
        assert!(f.validate().is_ok());
    }
}
