use std::f64::consts::{FRAC_PI_2, PI};

use dbk_core::spectra::beta_grid;
use dbk_core::zerofree::{clustered_betas, gauge_identities, product_ratio_check, u_beta_apply, window_grid};
use dbk_core::{
    canonical_product, catalog, from_jacobi, gauge_check, theorem43_consistency, uniqueness_check,
    zero_free_membership, JacobiData, SampledFunction, Verdict, C,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn u_beta_is_isometric(
        n in 1usize..=9,
        beta in 0.05f64..3.09,
        raw in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 9),
    ) {
        let space = catalog(&format!("chebN:{n}")).unwrap();
        let values: Vec<C> = raw[..n].iter().map(|(a, b)| C::new(*a, *b)).collect();
        let (f, l2) = u_beta_apply(&space, &SampledFunction { beta, values }).unwrap();
        let norm = space.norm_sq(&f).unwrap();
        prop_assert!((norm - l2).abs() <= 1e-10 * (1.0 + l2), "{norm} vs {l2}");
    }

    #[test]
    fn norm_identity_with_sine_factor(
        diag in prop::collection::vec(-1.0f64..1.0, 4),
        off in prop::collection::vec(0.3f64..1.2, 3),
        beta in 0.05f64..3.09,
    ) {
        let space = from_jacobi("random", JacobiData::new(diag, off, 0.7).unwrap()).unwrap();
        let m = zero_free_membership(&space, beta).unwrap();
        prop_assert_eq!(m.verdict, Verdict::InSpace);
        prop_assert!(m.norm_identity_residual().unwrap() <= 1e-8);
        prop_assert!(m.is_zero_free());
    }

    #[test]
    fn user_product_is_proportional_to_canonical(n in 2usize..=8, beta in 0.1f64..3.0, scale in 0.1f64..10.0) {
        let space = catalog(&format!("chebN:{n}")).unwrap();
        let h = canonical_product(&space, beta, None).unwrap();
        let m = dbk_core::zerofree::zero_free_membership_with(&space, beta, h.scale_real(scale)).unwrap();
        prop_assert_eq!(m.verdict, Verdict::InSpace);
        let r = product_ratio_check(&space, beta, &h.scale_real(scale)).unwrap();
        prop_assert!(r.pass && (r.ratio[0] - scale).abs() <= 1e-9 * scale);
    }
}

#[test]
fn literal_norm_identity_holds_only_at_half_pi() {
    let space = catalog("cheb2").unwrap();
    let m = zero_free_membership(&space, FRAC_PI_2).unwrap();
    let literal = PI * m.stat.value();
    assert!((m.norm_sq.unwrap() - literal).abs() < 1e-12);
    let m = zero_free_membership(&space, PI / 4.0).unwrap();
    let literal = PI * m.stat.value();
    // pi^2/8 against pi^2/(8 sin(pi/4))
    assert!((m.norm_sq.unwrap() - PI * PI / 8.0).abs() < 1e-12);
    assert!((literal - PI * PI / (8.0 * (PI / 4.0).sin())).abs() < 1e-12);
}

#[test]
fn cross_beta_on_chebyshev_models() {
    for name in ["cheb2", "chebN:8", "chebN:5"] {
        let space = catalog(name).unwrap();
        let j0 = canonical_product(&space, 0.0, None).unwrap();
        let r = theorem43_consistency(&space, &clustered_betas(5), &j0).unwrap();
        assert!(r.pass, "{name}: {r:?}");
    }
}

#[test]
fn uniqueness_over_beta_pairs() {
    let space = catalog("chebN:7").unwrap();
    let betas = beta_grid(6, 0.2, 2.9);
    for a in &betas {
        for b in &betas {
            let r = uniqueness_check(&space, *a, *b).unwrap();
            assert!(r.pass, "{a} {b}: {r:?}");
        }
    }
}

#[test]
fn gauge_on_zero_free_functions() {
    for name in ["dim1", "cheb2", "chebN:6"] {
        let space = catalog(name).unwrap();
        assert!(gauge_identities(&space).unwrap().pass);
        let grid: Vec<C> = window_grid(&space, 20)
            .into_iter()
            .enumerate()
            .map(|(k, x)| C::new(x, 0.25 * (k % 5) as f64 - 0.5))
            .collect();
        for beta in [0.3, FRAC_PI_2, 2.5] {
            let g = zero_free_membership(&space, beta).unwrap().g.unwrap();
            assert!(gauge_check(&space, &g, &grid).unwrap().pass);
        }
    }
}
