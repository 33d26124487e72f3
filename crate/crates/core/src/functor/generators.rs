//! Images of shifted stalk complexes, which generate the target category.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{check_order, f_obj};
use crate::error::Result;
use crate::linalg::{CoeffRing, RingMatrix};
use crate::ncomplex::NComplex;
use crate::quiver::{rep_homotopy_equivalence, LineRep, RepComplex};

/// How a power `Θ^k` in a claim is read: as the shift `Θ(X)^i = X^{i+1}`
/// or as its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaDirection {
    AsDefined,
    Inverse,
}

#[derive(Clone, Debug)]
pub struct GeneratorImage {
    pub claim: String,
    pub image: RepComplex,
    pub expected: RepComplex,
    /// Whether a homotopy equivalence was exhibited.
    pub isomorphic: bool,
}

const ATTEMPTS: usize = 24;

/// `R` in degree 0 as an N-complex.
fn stalk(n: usize, ring: CoeffRing) -> Result<NComplex> {
    NComplex::disk(n, ring, 0, 1, 1)
}

/// `e_λ(N-1) -> e_λ(N-2)` in degrees `deg, deg + 1`.
fn two_term(n: usize, ring: CoeffRing, deg: i64) -> Result<RepComplex> {
    let v = n - 1;
    let (a, b) = (LineRep::e_lambda(ring, v, v, 1)?, LineRep::e_lambda(ring, v, v - 1, 1)?);
    let d = a
        .vdims()
        .iter()
        .zip(b.vdims())
        .map(|(&c, &r)| if c == 1 && r == 1 { RingMatrix::identity(ring, 1) } else { RingMatrix::zeros(ring, r, c) })
        .collect();
    RepComplex::two_term(a, b, d, deg)
}

/// The images of `Θ^{N-1}R`, `ΣΘ^{N-2}R` and (for `N >= 3`) `Θ^{N-3}R`
/// compared with `e_λ(1)`, `e_λ(N-1)` and `e_λ(N-1) -> e_λ(N-2)`.
/// With `AsDefined` the expected complexes sit in degree 0; with `Inverse`
/// they sit in the degrees the construction produces (1, -1 and -1..0).
pub fn generator_images(n: usize, ring: CoeffRing, dir: ThetaDirection) -> Result<Vec<GeneratorImage>> {
    check_order(n)?;
    let nn = n as i64;
    let sign = match dir {
        ThetaDirection::AsDefined => 1,
        ThetaDirection::Inverse => -1,
    };
    let (d1, dn, dt) = match dir {
        ThetaDirection::AsDefined => (0, 0, 0),
        ThetaDirection::Inverse => (1, -1, -1),
    };
    let r = stalk(n, ring)?;
    let exp = |k: i64| if sign == 1 { format!("Θ^{k}") } else { format!("Θ^-{k}") };
    let mut cases = vec![
        (
            format!("F({}R) ≅ e_λ(1) in degree {d1}", exp(nn - 1)),
            f_obj(&r.theta(sign * (nn - 1)))?,
            RepComplex::stalk(LineRep::e_lambda(ring, n - 1, 1, 1)?, d1),
        ),
        (
            format!("F(Σ{}R) ≅ e_λ({}) in degree {dn}", exp(nn - 2), n - 1),
            f_obj(&r.theta(sign * (nn - 2)).sigma())?,
            RepComplex::stalk(LineRep::e_lambda(ring, n - 1, n - 1, 1)?, dn),
        ),
    ];
    if n >= 3 {
        cases.push((
            format!("F({}R) ≅ e_λ({}) -> e_λ({}) in degrees {dt}..{}", exp(nn - 3), n - 1, n - 2, dt + 1),
            f_obj(&r.theta(sign * (nn - 3)))?,
            two_term(n, ring, dt)?,
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    cases
        .into_iter()
        .map(|(claim, image, expected)| {
            let isomorphic = rep_homotopy_equivalence(&image, &expected, &mut rng, ATTEMPTS)?.is_some();
            Ok(GeneratorImage { claim, image, expected, isomorphic })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_reading_holds() {
        for n in 3..=5 {
            for g in generator_images(n, CoeffRing::PrimeField { p: 2 }, ThetaDirection::Inverse).unwrap() {
                assert!(g.isomorphic, "N = {n}: {}", g.claim);
            }
        }
    }

    #[test]
    fn literal_reading_puts_the_stalk_elsewhere() {
        let g = generator_images(3, CoeffRing::PrimeField { p: 2 }, ThetaDirection::AsDefined).unwrap();
        assert!(!g[0].isomorphic);
    }
}
