//! Acyclicity predicates: Hom-vanishing against a finite test battery,
//! total acyclicity, a dual-exactness variant and the comparison with the
//! image under the functor.

use crate::error::{Error, Result};
use crate::functor::f_obj;
use crate::homotopy::hom_space_dim;
use crate::linalg::RingMatrix;
use crate::ncomplex::{is_n_exact, NComplex, Support};
use crate::par;
use crate::quiver::{rep_hom_space_dim, LineRep, RepComplex};
use crate::random::{random_ncomplex, trial_rng, RandomConfig};

/// Number of periods of a periodic complex that the battery probes.
pub const DEFAULT_PERIODS: usize = 3;
/// Seeded random members added to the default battery.
pub const DEFAULT_RANDOM_MEMBERS: usize = 25;

/// `β_{≤n}`: terms above degree `n` dropped. Periodic inputs are first
/// unrolled on `n - 3·period - N + 1 ..= n`.
pub fn brutal_truncate(x: &NComplex, n: i64) -> NComplex {
    let lo = match x.support() {
        Support::Bounded { lo, .. } => lo,
        Support::Periodic { period } => n - (DEFAULT_PERIODS * period + x.order()) as i64 + 1,
    };
    brutal_truncate_from(x, lo, n)
}

/// `β_{≤n}` of the window of `x` starting at `lo`.
pub fn brutal_truncate_from(x: &NComplex, lo: i64, n: i64) -> NComplex {
    let hi = match x.support() {
        Support::Bounded { hi, .. } => hi.min(n),
        Support::Periodic { .. } => n,
    };
    x.window(lo, hi).trimmed()
}

/// Bounded stand-in for `x` used in Hom computations: bounded complexes are
/// returned as they are; periodic ones are unrolled over `periods` periods
/// plus a margin of `3N` on both sides. Also returns the degree range the
/// battery should cover.
pub fn materialize(x: &NComplex, periods: usize) -> (NComplex, Option<(i64, i64)>) {
    let n = x.order() as i64;
    match x.support() {
        Support::Periodic { period } => {
            let core = (0, (periods * period) as i64 - 1);
            (x.window(core.0 - 3 * n, core.1 + 3 * n), Some(core))
        }
        _ => (x.clone(), x.extent()),
    }
}

/// A finite family of bounded complexes standing in for all of
/// `K^b_N(prj R)`.
#[derive(Clone, Debug, Default)]
pub struct TestBattery {
    pub members: Vec<NComplex>,
}

impl TestBattery {
    /// Disks `D^j_i(R)` for `1 <= i <= N` and `j` in `lo - N ..= hi + N`,
    /// and `random` seeded random complexes placed inside `lo..=hi`.
    pub fn around(x: &NComplex, periods: usize, random: usize, seed: u64) -> Result<Self> {
        let (n, ring) = (x.order(), x.ring());
        let nn = n as i64;
        let (_, core) = materialize(x, periods);
        let Some((lo, hi)) = core else { return Ok(TestBattery::default()) };
        let mut members = Vec::new();
        for i in 1..=n {
            for j in lo - nn..=hi + nn {
                members.push(NComplex::disk(n, ring, j, i, 1)?);
            }
        }
        let width = (hi - lo + 1).max(1) as usize;
        let mut cfg = RandomConfig::new(n, ring).with_bounds(2, width.min(3 * n));
        for t in 0..random {
            let mut rng = trial_rng(seed, t as u64);
            cfg.lo = lo + (t as i64 % width as i64);
            cfg.max_width = cfg.max_width.min((hi - cfg.lo + 1).max(1) as usize);
            members.push(random_ncomplex(&cfg, &mut rng));
        }
        Ok(TestBattery { members })
    }

    /// The default battery for `x`.
    pub fn default_for(x: &NComplex) -> Result<Self> {
        Self::around(x, DEFAULT_PERIODS, DEFAULT_RANDOM_MEMBERS, 0)
    }

    pub fn push(&mut self, p: NComplex) -> Result<()> {
        if p.is_periodic() {
            return Err(Error::Support("battery members must be bounded".into()));
        }
        p.validate()?;
        self.members.push(p);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn all_vanish(results: Vec<Result<usize>>) -> Result<bool> {
    let mut ok = true;
    for r in results {
        ok &= r? == 0;
    }
    Ok(ok)
}

/// `Hom_K(P, x) = 0` for every battery member `P`. On bounded inputs the
/// answer is cross-checked against N-exactness.
pub fn is_n_acyclic_hom(x: &NComplex, battery: &TestBattery) -> Result<bool> {
    x.validate()?;
    let (xm, _) = materialize(x, DEFAULT_PERIODS);
    let res = par::map_slice(&battery.members, |p| hom_space_dim(p, &xm).map(|d| d.hom_k));
    let acyclic = all_vanish(res)?;
    if !x.is_periodic() && x.extent().is_some() && battery.len() > 0 {
        let exact = is_n_exact(x)?;
        if exact != acyclic && covers(battery, x) {
            return Err(Error::Internal(format!(
                "Hom-vanishing ({acyclic}) disagrees with N-exactness ({exact}) on a bounded complex"
            )));
        }
    }
    Ok(acyclic)
}

/// Whether the battery contains every rank-one disk near the support of `x`.
fn covers(battery: &TestBattery, x: &NComplex) -> bool {
    let Some((lo, hi)) = x.extent() else { return true };
    let n = x.order();
    (1..=n).all(|i| {
        (lo..=hi + n as i64).all(|j| {
            battery.members.iter().any(|p| p.extent() == Some((j - i as i64 + 1, j)) && p.total_rank() == i && is_disk(p))
        })
    })
}

fn is_disk(p: &NComplex) -> bool {
    let Some((lo, hi)) = p.extent() else { return false };
    (lo..hi).all(|i| p.dim(i) == 1 && p.d(i) == RingMatrix::identity(p.ring(), 1))
}

/// Both `Hom_K(P, x) = 0` and `Hom_K(x, P) = 0` for every battery member.
pub fn is_n_totally_acyclic(x: &NComplex, battery: &TestBattery) -> Result<bool> {
    if !is_n_acyclic_hom(x, battery)? {
        return Ok(false);
    }
    let (xm, _) = materialize(x, DEFAULT_PERIODS);
    let res = par::map_slice(&battery.members, |p| hom_space_dim(&xm, p).map(|d| d.hom_k));
    all_vanish(res)
}

/// The degreewise dual `(X*)^i = (X^{-i})*` with `d*^i = (d^{-i-1})^T`.
pub fn dual(x: &NComplex) -> NComplex {
    let support = match x.support() {
        Support::Bounded { lo, hi } if lo <= hi => Support::Bounded { lo: -hi, hi: -lo },
        s => s,
    };
    NComplex::from_fn(x.order(), x.ring(), support, |i| x.dim(-i), |i| x.d(-i - 1).transpose())
}

/// N-exactness of the dual complex.
pub fn dual_exactness(x: &NComplex) -> Result<bool> {
    x.validate()?;
    is_n_exact(&dual(x))
}

/// Both sides of the comparison between `x` and its image `F(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub n_exact: bool,
    pub image_acyclic: bool,
    pub n_totally_acyclic: bool,
    pub image_totally_acyclic: bool,
    pub mismatch: Option<String>,
}

impl CorrespondenceReport {
    pub fn consistent(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Stalk complexes `e_λ(v)` in every degree of `lo..=hi`.
fn stalks(ring: crate::CoeffRing, vertices: usize, lo: i64, hi: i64) -> Result<Vec<RepComplex>> {
    let mut out = Vec::new();
    for v in 1..=vertices {
        for d in lo..=hi {
            out.push(RepComplex::stalk(LineRep::e_lambda(ring, vertices, v, 1)?, d));
        }
    }
    Ok(out)
}

/// Compare acyclicity of `x` with classical acyclicity of `F(x)` and, relative
/// to the battery, total acyclicity on both sides. The classical side is
/// tested against the images of the battery and the stalks `e_λ(v)`.
pub fn correspondence_check(x: &NComplex, battery: &TestBattery) -> Result<CorrespondenceReport> {
    x.validate()?;
    let n = x.order();
    let inflated;
    let x = match x.period() {
        Some(p) if p % n != 0 => {
            inflated = x.inflate(num_integer::lcm(p, n))?;
            &inflated
        }
        _ => x,
    };
    let n_exact = is_n_exact(x)?;
    let fx = f_obj(x)?;
    let image_acyclic = fx.is_acyclic()?;
    let n_totally_acyclic = is_n_totally_acyclic(x, battery)?;

    let (xm, core) = materialize(x, DEFAULT_PERIODS);
    let fxm = f_obj(&xm)?;
    let mut tests: Vec<RepComplex> = battery.members.iter().map(f_obj).collect::<Result<_>>()?;
    if let Some((lo, hi)) = core {
        let nn = n as i64;
        let (a, b) = (2 * (lo.div_euclid(nn) - 1), 2 * (hi.div_euclid(nn) + 1) + 1);
        tests.extend(stalks(x.ring(), n - 1, a, b)?);
    }
    let res = par::map_slice(&tests, |t| -> Result<usize> {
        Ok(rep_hom_space_dim(t, &fxm)?.hom_k + rep_hom_space_dim(&fxm, t)?.hom_k)
    });
    let image_totally_acyclic = image_acyclic && all_vanish(res)?;

    let mut mismatch = Vec::new();
    if n_exact != image_acyclic {
        mismatch.push(format!("N-exact: {n_exact}, image acyclic: {image_acyclic}"));
    }
    if n_totally_acyclic != image_totally_acyclic {
        mismatch.push(format!("N-totally acyclic: {n_totally_acyclic}, image totally acyclic: {image_totally_acyclic}"));
    }
    Ok(CorrespondenceReport {
        n_exact,
        image_acyclic,
        n_totally_acyclic,
        image_totally_acyclic,
        mismatch: (!mismatch.is_empty()).then(|| mismatch.join("; ")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CoeffRing;
    use crate::ncomplex::tests::x_complex;

    fn k() -> CoeffRing {
        CoeffRing::PrimeField { p: 2 }
    }

    #[test]
    fn truncation() {
        let d = NComplex::disk(3, k(), 2, 3, 1).unwrap();
        assert_eq!(brutal_truncate(&d, -5), NComplex::zero(3, k()));
        assert_eq!(brutal_truncate(&d, 7), d);
        assert_eq!(brutal_truncate(&d, 1).extent(), Some((0, 1)));
        let t = brutal_truncate(&x_complex(), 0);
        assert_eq!(t.extent().unwrap().1, 0);
        let (lo, _) = t.extent().unwrap();
        assert!((lo..=0).all(|i| t.dim(i) == 1));
    }

    #[test]
    fn disks() {
        let full = NComplex::disk(3, k(), 0, 3, 1).unwrap();
        let b = TestBattery::default_for(&full).unwrap();
        assert!(is_n_acyclic_hom(&full, &b).unwrap());
        assert!(is_n_totally_acyclic(&full, &b).unwrap());
        assert!(dual_exactness(&full).unwrap());
        let short = NComplex::disk(3, k(), 1, 2, 1).unwrap();
        let b = TestBattery::default_for(&short).unwrap();
        assert!(!is_n_acyclic_hom(&short, &b).unwrap());
        assert!(!is_n_totally_acyclic(&short, &b).unwrap());
        assert!(!dual_exactness(&short).unwrap());
        let r = correspondence_check(&short, &b).unwrap();
        assert!(r.consistent() && !r.n_exact && !r.image_acyclic);
        assert!(is_n_totally_acyclic(&NComplex::zero(3, k()), &TestBattery::default()).unwrap());
    }

    #[test]
    fn dual_of_x_complex() {
        let x = x_complex();
        assert_eq!(dual(&x), x);
        assert!(dual_exactness(&x).unwrap());
    }

    #[test]
    fn x_complex_is_totally_acyclic() {
        let x = x_complex();
        let b = TestBattery::default_for(&x).unwrap();
        assert!(is_n_acyclic_hom(&x, &b).unwrap());
        assert!(is_n_totally_acyclic(&x, &b).unwrap());
        let r = correspondence_check(&x, &b).unwrap();
        assert!(r.consistent(), "{:?}", r.mismatch);
        assert!(r.image_acyclic && r.image_totally_acyclic);
        // A finite piece of it is not: its ends carry homology.
        let piece = x.window(0, 8);
        let b = TestBattery::default_for(&piece).unwrap();
        assert!(b.len() > 25);
        assert!(!is_n_acyclic_hom(&piece, &b).unwrap());
    }
}
