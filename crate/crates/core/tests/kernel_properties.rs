use std::f64::consts::{FRAC_PI_2, PI};

use dbk_core::space::parseval;
use dbk_core::{catalog, from_jacobi, EntireFunction, JacobiData, C};
use proptest::prelude::*;

fn jacobi_data() -> impl Strategy<Value = JacobiData> {
    (1usize..=7).prop_flat_map(|n| {
        (prop::collection::vec(-1.0f64..1.0, n), prop::collection::vec(0.2f64..1.5, n - 1), 0.2f64..1.5)
            .prop_map(|(d, o, b)| JacobiData::new(d, o, b).unwrap())
    })
}

fn complex(r: f64) -> impl Strategy<Value = C> {
    (-r..r, -r..r).prop_map(|(a, b)| C::new(a, b))
}

/// Orthonormal polynomials `p_0 .. p_{n-1}` at `z` from the recurrence.
fn orthonormal(data: &JacobiData, z: C) -> Vec<C> {
    let n = data.diag.len();
    let mut p = vec![C::new(1.0, 0.0)];
    for k in 1..n {
        let prev2 = if k >= 2 { p[k - 2] * data.offdiag[k - 2] } else { C::new(0.0, 0.0) };
        p.push(((z - data.diag[k - 1]) * p[k - 1] - prev2) / data.offdiag[k - 1]);
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_is_christoffel_darboux_sum(data in jacobi_data(), z in complex(1.5), w in complex(1.5)) {
        let space = from_jacobi("random", data.clone()).unwrap();
        let pz = orthonormal(&data, z);
        let pw = orthonormal(&data, w.conj());
        let direct: C = pz.iter().zip(&pw).map(|(a, b)| a * b).sum();
        let k = space.kernel(z, w).unwrap();
        prop_assert!((k - direct).norm() <= 1e-12 * (1.0 + direct.norm()) * 10.0, "{k} vs {direct}");
    }

    #[test]
    fn kernel_symmetries(data in jacobi_data(), z in complex(2.0), w in complex(2.0)) {
        let space = from_jacobi("random", data).unwrap();
        let k = space.kernel(z, w).unwrap();
        let hermitian = space.kernel(w, z).unwrap().conj();
        let conjugated = space.kernel(z.conj(), w.conj()).unwrap().conj();
        let tol = 1e-10 * (1.0 + k.norm());
        prop_assert!((k - hermitian).norm() <= tol);
        prop_assert!((k - conjugated).norm() <= tol);
    }

    #[test]
    fn orientation_holds_on_random_points(data in jacobi_data(), xs in prop::collection::vec(-3.0f64..3.0, 100)) {
        let space = from_jacobi("random", data).unwrap();
        for x in xs {
            prop_assert!(space.kernel_diag(x).unwrap() > 0.0);
        }
    }

    #[test]
    fn reproducing_property(data in jacobi_data(), w in complex(1.0), seed in prop::collection::vec(-1.0f64..1.0, 7)) {
        let space = from_jacobi("random", data).unwrap();
        let n = space.dim().size();
        let f = EntireFunction::polynomial(seed[..n].to_vec());
        let kw = space.kernel_function(w).unwrap();
        let value = space.inner_product(&kw, &f, FRAC_PI_2).unwrap();
        let fw = f.eval(w).unwrap();
        prop_assert!((value - fw).norm() <= 1e-9 * (1.0 + fw.norm()), "{value} vs {fw}");
    }

    #[test]
    fn inner_products_do_not_depend_on_basis(
        data in jacobi_data(),
        a in prop::collection::vec(-1.0f64..1.0, 7),
        b in prop::collection::vec(-1.0f64..1.0, 7),
        beta in 0.05f64..3.09,
    ) {
        let space = from_jacobi("random", data).unwrap();
        let n = space.dim().size();
        let f = EntireFunction::polynomial(a[..n].to_vec());
        let g = EntireFunction::polynomial(b[..n].to_vec()).scale(C::new(0.3, -0.8));
        let half = space.inner_product(&f, &g, FRAC_PI_2).unwrap();
        let other = space.inner_product(&f, &g, beta).unwrap();
        let scale = (space.norm_sq(&f).unwrap() * space.norm_sq(&g).unwrap()).sqrt();
        prop_assert!((half - other).norm() <= 1e-9 * (1.0 + scale));
    }
}

#[test]
fn parseval_agrees_with_quadrature() {
    for name in ["dim1", "cheb2", "chebN:5", "chebN:9"] {
        let space = catalog(name).unwrap();
        let n = space.dim().size();
        let f = EntireFunction::polynomial((0..n).map(|k| 1.0 / (k as f64 + 1.0)).collect());
        let g = EntireFunction::polynomial((0..n).map(|k| (k as f64).cos()).collect());
        let p = space.inner_product(&f, &g, FRAC_PI_2).unwrap();
        let q = space.inner_product_quadrature(&f, &g).unwrap();
        assert!((p - q.value).norm() <= 1e-6 * (1.0 + p.norm()), "{name}: {p} vs {}", q.value);
    }
}

#[test]
fn parseval_form_is_conjugate_linear_in_first_argument() {
    let space = catalog("cheb2").unwrap();
    let spec = space.spectrum(FRAC_PI_2).unwrap();
    let one = EntireFunction::constant(1.0);
    let i_one = one.scale(C::new(0.0, 1.0));
    let v = parseval(&spec, &i_one, &one).unwrap();
    assert!((v - C::new(0.0, -1.0)).norm() < 1e-14);
}

#[test]
fn divergent_integrand_is_reported() {
    let dim1 = catalog("dim1").unwrap();
    let err = dim1
        .inner_product_quadrature(&EntireFunction::constant(1.0), &EntireFunction::identity().scale_real(PI))
        .unwrap_err();
    assert_eq!(err.code(), "divergent-integrand");
}
