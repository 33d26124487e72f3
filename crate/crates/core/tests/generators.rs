use ncx_core::io;
use ncx_core::random::{random_ncomplex, trial_rng, RandomConfig};
use ncx_core::CoeffRing;

#[test]
fn a_thousand_generated_complexes_validate() {
    let rings = [
        CoeffRing::PrimeField { p: 2 },
        CoeffRing::PrimeField { p: 5 },
        CoeffRing::Rationals,
        CoeffRing::TruncatedPoly { p: 3, m: 2 },
    ];
    for t in 0..1000u64 {
        let cfg = RandomConfig::new(2 + (t % 4) as usize, rings[(t / 4 % 4) as usize]).with_bounds(3, 9);
        let x = random_ncomplex(&cfg, &mut trial_rng(99, t));
        assert!(x.validate().is_ok(), "trial {t}");
        assert!(x.extent().map_or(true, |(lo, hi)| hi - lo < 9));
    }
}

#[test]
fn same_seed_same_document() {
    let cfg = RandomConfig::new(3, CoeffRing::Rationals);
    let a = io::complex_to_string(&random_ncomplex(&cfg, &mut trial_rng(17, 4)));
    let b = io::complex_to_string(&random_ncomplex(&cfg, &mut trial_rng(17, 4)));
    assert_eq!(a, b);
}
