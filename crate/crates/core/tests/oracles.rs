use ginicor::oracles::numeric::{std_normal_cdf, std_normal_pdf};
use ginicor::oracles::{
    exp_mixture_corrs, exp_mixture_dcov_xx_quadrature, gcor_by_quadrature, monotonicity_probe, normal_cross_gmd,
    normal_location_corrs, normal_scale_gcor, population_gcor, MixtureSpec, ProbeExample,
};
use proptest::prelude::*;

#[test]
fn reference_values() {
    assert!((exp_mixture_corrs(0.5, 1.0, 4.0).unwrap().rho_g - 0.1525).abs() < 5e-5);
    assert!((normal_location_corrs(0.5, 3.0).unwrap().rho_g - 0.4556).abs() < 5e-5);
    assert!((normal_scale_gcor(0.5, 3.0).unwrap() - 0.0557).abs() < 5e-5);
}

#[test]
fn closed_forms_match_quadrature() {
    for &p in &[0.2, 0.5, 0.7] {
        for &(t, b) in &[(1.0, 4.0), (2.0, 0.5), (1.0, 1.5)] {
            let spec = MixtureSpec::exp_mixture(p, t, b).unwrap();
            let q = gcor_by_quadrature(&spec).unwrap();
            let c = exp_mixture_corrs(p, t, b).unwrap().rho_g;
            assert!((q - c).abs() < 1e-6, "exp p={p} θ={t} β={b}: {q} vs {c}");
        }
        for &a in &[0.5, 1.0, 3.0] {
            let q = gcor_by_quadrature(&MixtureSpec::normal_location(p, a).unwrap()).unwrap();
            let c = normal_location_corrs(p, a).unwrap().rho_g;
            assert!((q - c).abs() < 1e-6, "location p={p} a={a}: {q} vs {c}");
        }
        for &r in &[0.5, 2.0, 3.0] {
            let q = gcor_by_quadrature(&MixtureSpec::normal_scale(p, r).unwrap()).unwrap();
            let c = normal_scale_gcor(p, r).unwrap();
            assert!((q - c).abs() < 1e-6, "scale p={p} r={r}: {q} vs {c}");
        }
    }
}

#[test]
fn population_dispatch() {
    let spec = MixtureSpec::normal_scale(0.5, 2.0).unwrap();
    assert_eq!(population_gcor(&spec).unwrap(), normal_scale_gcor(0.5, 2.0).unwrap());
}

#[test]
fn exp_dcov_xx_closed_form_matches_double_integral() {
    for &(p, t, b) in &[(0.5, 1.0, 4.0), (0.3, 2.0, 0.5), (0.8, 1.0, 1.0)] {
        let c = exp_mixture_corrs(p, t, b).unwrap();
        let q = exp_mixture_dcov_xx_quadrature(p, t, b).unwrap();
        assert!((c.dcov_xx - q).abs() < 1e-8 * q, "({p},{t},{b}): {} vs {q}", c.dcov_xx);
    }
}

#[test]
fn published_dcov_xx_excess_is_a_single_term() {
    let (p, t, b) = (0.5, 1.0, 4.0);
    let c = exp_mixture_corrs(p, t, b).unwrap();
    let excess = 16.0 * p * p * (1.0 - p) * (1.0 - p) * t * t * b * b / ((t + b) * (t + b));
    assert!((c.dcov_xx_published - c.dcov_xx - excess).abs() < 1e-12);
    assert!((c.dcov_xx_published - 3.569_166_666_666_667).abs() < 1e-12);
}

#[test]
fn single_exponential_dcov_xx() {
    // for one Exp(θ) component the double integral is θ²/3
    let c = exp_mixture_corrs(0.4, 2.0, 2.0).unwrap();
    assert!((c.dcov_xx - 4.0 / 3.0).abs() < 1e-12);
}

#[test]
fn rho_d_matches_distance_form() {
    // ρ_d = dCov(X,Y)/sqrt(dCov(X,X) dCov(Y,Y)) with dCov(Y,Y) = 4p²(1−p)²
    let c = exp_mixture_corrs(0.5, 1.0, 4.0).unwrap();
    assert!((c.dcov_yy - 0.25).abs() < 1e-15);
    assert!((c.rho_d - c.dcov_xy / (c.dcov_xx * c.dcov_yy).sqrt()).abs() < 1e-15);
    assert!((c.rho_d - 0.262_93).abs() < 1e-5);
}

#[test]
fn cross_gmd_derivative() {
    for &a in &[0.1, 0.7, 2.0, 4.5] {
        let h = 1e-5;
        let fd = (normal_cross_gmd(a + h) - normal_cross_gmd(a - h)) / (2.0 * h);
        let exact = 2.0 * std_normal_cdf(a / std::f64::consts::SQRT_2) - 1.0;
        assert!((fd - exact).abs() < 1e-8);
    }
    assert!((std_normal_pdf(0.0) - 1.0 / (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-16);
}

#[test]
fn normal_location_peaks_at_half() {
    for &a in &[0.5, 1.0, 3.0] {
        let mid = normal_location_corrs(0.5, a).unwrap().rho_g;
        for &p in &[0.1, 0.3, 0.45, 0.55, 0.8] {
            assert!(normal_location_corrs(p, a).unwrap().rho_g < mid);
        }
    }
}

#[test]
fn monotone_directions() {
    let a: Vec<f64> = (1..=8).map(|i| 0.5 * i as f64).collect();
    assert!(
        monotonicity_probe(ProbeExample::NormalLocation, 0.5, &a)
            .unwrap()
            .strictly_increasing
    );
    let r3: Vec<f64> = (0..=39).map(|i| 1.1 + 0.1 * i as f64).collect();
    assert!(
        monotonicity_probe(ProbeExample::NormalScale, 0.25, &r3)
            .unwrap()
            .strictly_increasing
    );
    let r1: Vec<f64> = (0..=38).map(|i| 1.2 + 0.1 * i as f64).collect();
    assert!(
        monotonicity_probe(ProbeExample::ExpRatio, 0.5, &r1)
            .unwrap()
            .strictly_increasing
    );
}

proptest! {
    #[test]
    fn oracle_values_in_unit_interval(p in 0.01f64..0.99, t in 0.05f64..20.0, b in 0.05f64..20.0, a in 0.0f64..10.0, r in 0.05f64..20.0) {
        let e = exp_mixture_corrs(p, t, b).unwrap();
        for v in [e.rho_g, e.rho_d, e.rho_p2] {
            prop_assert!((0.0..=1.0).contains(&v));
        }
        let n = normal_location_corrs(p, a).unwrap();
        prop_assert!((0.0..=1.0).contains(&n.rho_g) && (0.0..=1.0).contains(&n.rho_p2));
        let s = normal_scale_gcor(p, r).unwrap();
        prop_assert!((0.0..=1.0).contains(&s));
    }

    #[test]
    fn exp_swap_symmetry(p in 0.01f64..0.99, t in 0.05f64..20.0, b in 0.05f64..20.0) {
        let x = exp_mixture_corrs(p, t, b).unwrap();
        let y = exp_mixture_corrs(1.0 - p, b, t).unwrap();
        prop_assert!((x.rho_g - y.rho_g).abs() < 1e-12);
        prop_assert!((x.rho_p2 - y.rho_p2).abs() < 1e-12);
    }

    #[test]
    fn scale_mixture_reciprocal_symmetry(p in 0.01f64..0.99, r in 0.05f64..20.0) {
        // swapping components maps r to 1/r and p to 1 − p
        let x = normal_scale_gcor(p, r).unwrap();
        let y = normal_scale_gcor(1.0 - p, 1.0 / r).unwrap();
        prop_assert!((x - y).abs() < 1e-12);
    }
}
