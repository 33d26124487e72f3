use proptest::prelude::*;

use ncx_core::functor::f_obj;
use ncx_core::homotopy::{hom_space_dim, is_null_homotopic, random_chain_map};
use ncx_core::io;
use ncx_core::ncomplex::{homology, is_n_exact};
use ncx_core::quiver::{hat, hat_map, rep_hom_space_dim, RepChainMap};
use ncx_core::random::{random_exact, random_ncomplex, random_null_homotopic, trial_rng, RandomConfig};
use ncx_core::{ChainMapN, CoeffRing, NComplex, RingMatrix};

fn ring() -> impl Strategy<Value = CoeffRing> {
    prop_oneof![
        Just(CoeffRing::PrimeField { p: 2 }),
        Just(CoeffRing::PrimeField { p: 3 }),
        Just(CoeffRing::Rationals),
        Just(CoeffRing::TruncatedPoly { p: 2, m: 2 }),
    ]
}

/// A random complex of order `n` determined by the seed.
fn complex() -> impl Strategy<Value = NComplex> {
    (2usize..=4, ring(), any::<u64>()).prop_map(|(n, r, seed)| random_ncomplex(&RandomConfig::new(n, r), &mut trial_rng(seed, 0)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn documents_round_trip(x in complex()) {
        let s = io::complex_to_string(&x);
        let back = io::complex_from_str(&s).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(io::complex_to_string(&back), s);
    }

    #[test]
    fn rank_nullity(r in ring(), rows in 0usize..5, cols in 0usize..5, seed: u64) {
        let a = RingMatrix::random(r, rows, cols, &mut trial_rng(seed, 1));
        let g = a.kernel_basis();
        prop_assert_eq!(a.rank() + g.cols(), g.rows());
        prop_assert!((&a.ground_matrix() * &g).is_zero());
    }

    #[test]
    fn theta_shifts_homology(x in complex(), k in -3i64..=3) {
        let (h, hs) = (homology(&x).unwrap(), homology(&x.theta(k)).unwrap());
        let n = x.order();
        for i in -8..8 {
            for r in 1..n {
                prop_assert_eq!(hs.get(i, r), h.get(i + k, r));
            }
        }
    }

    #[test]
    fn identity_cone_is_exact(x in complex()) {
        prop_assert!(is_n_exact(&NComplex::cone(&ChainMapN::identity(&x))).unwrap());
    }

    #[test]
    fn sigma_inverse_undoes_sigma(x in complex()) {
        let y = x.sigma().sigma_inv();
        let d = hom_space_dim(&x, &y).unwrap();
        prop_assert_eq!(d.hom_k, hom_space_dim(&x, &x).unwrap().hom_k);
        prop_assert_eq!(hom_space_dim(&y, &y).unwrap().hom_k, d.hom_k);
    }

    #[test]
    fn exact_complexes_have_exact_images(n in 2usize..=4, r in ring(), seed: u64) {
        let x = random_exact(&RandomConfig::new(n, r), &mut trial_rng(seed, 2));
        prop_assert!(f_obj(&x).unwrap().is_acyclic().unwrap());
    }

    #[test]
    fn hat_preserves_homotopy_classes(x in complex(), seed: u64) {
        let y = random_ncomplex(&RandomConfig::new(x.order(), x.ring()), &mut trial_rng(seed, 7));
        let (fx, fy) = (f_obj(&x).unwrap(), f_obj(&y).unwrap());
        let (hx, hy) = (hat(&fx).unwrap(), hat(&fy).unwrap());
        prop_assert!(hx.validate().is_ok());
        prop_assert_eq!(rep_hom_space_dim(&hx, &hy).unwrap().hom_k, rep_hom_space_dim(&fx, &fy).unwrap().hom_k);
        let id = hat_map(&RepChainMap::identity(&fx)).unwrap();
        prop_assert_eq!(id, RepChainMap::identity(&hx));
    }

    #[test]
    fn map_first_maps_are_null_homotopic(x in complex(), seed: u64) {
        let y = random_ncomplex(&RandomConfig::new(x.order(), x.ring()), &mut trial_rng(seed, 3));
        let (f, w) = random_null_homotopic(&x, &y, &mut trial_rng(seed, 4));
        prop_assert!(w.verifies(&f));
        prop_assert!(is_null_homotopic(&f).unwrap());
    }

    #[test]
    fn hom_k_is_additive(x in complex(), seed: u64) {
        let y = random_ncomplex(&RandomConfig::new(x.order(), x.ring()), &mut trial_rng(seed, 5));
        let s = x.direct_sum(&y).unwrap();
        let lhs = hom_space_dim(&s, &x).unwrap().hom_k;
        let rhs = hom_space_dim(&x, &x).unwrap().hom_k + hom_space_dim(&y, &x).unwrap().hom_k;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn chain_maps_compose(x in complex(), seed: u64) {
        let mut rng = trial_rng(seed, 6);
        let f = random_chain_map(&x, &x, &mut rng).unwrap();
        let g = random_chain_map(&x, &x, &mut rng).unwrap();
        prop_assert!(ChainMapN::compose(&g, &f).unwrap().validate().is_ok());
    }
}
