mod common;

use common::{c, random_point, rel_err, rng, zeta_power};
use e3calc::fixtures::{all_fixtures, contractible_loop, load_fixture, load_function, BASE_POINT};
use e3calc::lambda::cauchy_theorem_residual;
use e3calc::monogenic::{
    cauchy_riemann_residual, default_contour, eval_representation, recover_derivative, Contour,
    RepresentationField,
};
use e3calc::{Complex64, HoloFunction, MonogenicSpec, Point3};

#[test]
fn polynomial_data_reproduce_powers_of_zeta() {
    for (i, f) in all_fixtures().unwrap().into_iter().enumerate() {
        let mut rng = rng(500 + i as u64);
        let sq = f.monogenic("square").unwrap();
        for _ in 0..10 {
            let p = random_point(&mut rng, &f.frame, 1.0, 0.05);
            let v = eval_representation(&sq, &f.frame, p, &f.spec).unwrap();
            assert!(rel_err(&v, &zeta_power(&f.frame, &f.spec, p, 2)) < 1e-12, "{}", f.name);
        }
    }
}

#[test]
fn nilpotent_term_multiplies_its_basis_vector() {
    // G_{m+1}(t) = t / 2 contributes I_{m+1} zeta / 2
    for f in all_fixtures().unwrap() {
        if f.spec.n() == f.spec.m() {
            continue;
        }
        let with = f.monogenic_with_g("unit").unwrap();
        let v = eval_representation(&with, &f.frame, BASE_POINT, &f.spec).unwrap();
        let s = f.spec.m() + 1;
        let g_part = f.spec.mul(&f.spec.basis(s), &f.frame.zeta(BASE_POINT)).scale_re(0.5);
        let expected = &f.spec.unit() + &g_part;
        assert!((&v - &expected).norm() < 1e-12, "{}: {v:?}", f.name);
    }
}

#[test]
fn representation_is_linear_in_the_data() {
    let two = c(2.0, 0.0);
    for f in all_fixtures().unwrap() {
        let m = f.spec.m();
        let a = MonogenicSpec::uniform(m, HoloFunction::monomial(2));
        let b = MonogenicSpec::uniform(m, HoloFunction::polynomial(vec![c(1.0, 0.0), two]));
        let sum = MonogenicSpec::uniform(m, HoloFunction::polynomial(vec![c(1.0, 0.0), two, c(1.0, 0.0)]));
        let eval = |s: &MonogenicSpec| eval_representation(s, &f.frame, BASE_POINT, &f.spec).unwrap();
        let lhs = eval(&sum);
        let rhs = &eval(&a) + &eval(&b);
        assert!((&lhs - &rhs).norm() <= 1e-13 * (1.0 + lhs.norm()), "{}", f.name);
    }
}

#[test]
fn doubling_the_contour_radius_changes_nothing() {
    for name in ["exp", "rational", "square"] {
        for f in all_fixtures().unwrap() {
            let base = f.monogenic(name).unwrap();
            let xi = f.frame.xi_values(BASE_POINT);
            let mut wide = base.clone();
            for u in 1..=f.spec.m() {
                let d = default_contour(&xi, u);
                wide = wide.with_contour(
                    u,
                    Contour {
                        center: d.center,
                        radius: 2.0 * d.radius,
                    },
                );
            }
            let v = eval_representation(&base, &f.frame, BASE_POINT, &f.spec).unwrap();
            let w = eval_representation(&wide, &f.frame, BASE_POINT, &f.spec).unwrap();
            assert!(rel_err(&w, &v) <= 1e-9, "{}/{name}: {}", f.name, rel_err(&w, &v));
        }
    }
}

#[test]
fn cauchy_riemann_residual_is_second_order() {
    for name in ["exp", "rational"] {
        for f in all_fixtures().unwrap() {
            let data = f.monogenic(name).unwrap();
            let phi = RepresentationField::new(&data, &f.frame, &f.spec);
            let r = |h: f64| {
                let (a, b) = cauchy_riemann_residual(&phi, &f.frame, &f.spec, BASE_POINT, h).unwrap();
                a + b
            };
            let (h1, h2, h3) = (1e-3, 5e-4, 2.5e-4);
            let constant = (r(h1) / (h1 * h1)).max(r(h2) / (h2 * h2));
            let last = r(h3);
            assert!(last <= (1.5 * constant * h3 * h3).max(1e-9), "{}/{name}: {last}", f.name);
        }
    }
}

#[test]
fn cauchy_theorem_for_rational_data() {
    let curve = contractible_loop(0.3, 1366).unwrap();
    for f in all_fixtures().unwrap() {
        let data = f.monogenic("rational").unwrap();
        let r = cauchy_theorem_residual(&data, &f.frame, &curve, &f.spec).unwrap();
        assert!(r <= 1e-7, "{}: {r}", f.name);
    }
}

#[test]
fn derivative_of_exp_data_is_rate_times_exp() {
    let f = load_fixture("A5").unwrap();
    let exp = load_function("exp").unwrap();
    let HoloFunction::Exp { rate, .. } = exp else {
        panic!("exp fixture kind")
    };
    let data = MonogenicSpec::uniform(1, exp.clone());
    let derived = MonogenicSpec::uniform(1, HoloFunction::custom(move |t: Complex64| rate * exp.eval(t)));
    assert!(!derived.is_verified());
    let phi = RepresentationField::new(&data, &f.frame, &f.spec);
    let d = recover_derivative(&phi, &f.frame, &f.spec, BASE_POINT, Point3::new(0.3, -0.2, 1.0), 1e-6).unwrap();
    let expected = eval_representation(&derived, &f.frame, BASE_POINT, &f.spec).unwrap();
    assert!(rel_err(&d, &expected) < 1e-5, "{}", rel_err(&d, &expected));
}
