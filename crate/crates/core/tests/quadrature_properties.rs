use monotone_kernel::quadrature::{laplace_integral, Envelope, IntegrandSpec};
use monotone_kernel::series::bessel_kernel;
use monotone_kernel::Real;
use proptest::prelude::*;

fn kernel(u: Real) -> Real {
    bessel_kernel(u, 1e-30).unwrap().value
}

fn transform(f: impl Fn(Real) -> Real, envelope: Envelope, t: f64, tol: f64) -> (f64, f64) {
    let spec = IntegrandSpec {
        evaluator: f,
        envelope,
    };
    let q = laplace_integral(&spec, Real::new(t), tol).unwrap();
    assert!(q.error_estimate >= 0.0 && q.evaluations >= 1);
    (q.value.to_f64(), q.error_estimate)
}

type ClosedForm = (fn(Real) -> Real, Envelope, f64, f64);

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn linearity(a in -3.0f64..3.0, b in -3.0f64..3.0, t in 0.5f64..20.0) {
        let (v1, e1) = transform(|u: Real| u.exp_m1().recip() * u, Envelope::new(1.0, 0.0, 1.0), t, 1e-12);
        let (v2, e2) = transform(kernel, Envelope::new(1.0, 2.0, 0.0), t, 1e-12);
        let (v, e) = transform(
            |u: Real| u.exp_m1().recip() * u * a + kernel(u) * b,
            Envelope::new(a.abs() + b.abs() + 1e-3, 2.0, 1.0),
            t,
            1e-12,
        );
        let gap = (v - (a * v1 + b * v2)).abs();
        prop_assert!(gap <= e + a.abs() * e1 + b.abs() * e2 + 1e-14 * v.abs().max(1.0));
    }

    #[test]
    fn shift_property(k in 1u32..4, t in 0.5f64..10.0) {
        // ∫ u^k g e^{-tu} = (-1)^k d^k/dt^k ∫ g e^{-tu}
        let env = Envelope::new(1.0, 2.0, 0.0);
        let (direct, _) = transform(|u: Real| kernel(u) * u.powi(k as i32), Envelope::new(1.0, 2.0, k as f64), t, 1e-13);
        let h = 1e-2 * t;
        let f = |s: f64| transform(kernel, env, s, 1e-14).0;
        let fd = match k {
            1 => -(f(t + h) - f(t - h)) / (2.0 * h),
            2 => (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h),
            _ => -(f(t + 2.0 * h) - 2.0 * f(t + h) + 2.0 * f(t - h) - f(t - 2.0 * h)) / (2.0 * h * h * h),
        };
        prop_assert!(((fd - direct) / direct).abs() < 1e-3, "k = {k}, t = {t}: {fd} vs {direct}");
    }
}

#[test]
fn error_is_honest_on_closed_forms() {
    let e = std::f64::consts::E;
    let cases: [ClosedForm; 3] = [
        (|_| Real::ONE, Envelope::new(1.0, 0.0, 0.0), 2.0, 0.5),
        (|u| u, Envelope::new(1.0, 0.0, 1.0), 1.0, 1.0),
        (kernel, Envelope::new(1.0, 2.0, 0.0), 1.0, e - 1.0),
    ];
    for (g, env, t, exact) in cases {
        for tol in [1e-4, 1e-8, 1e-12] {
            let (v, est) = transform(g, env, t, tol);
            assert!(
                (v - exact).abs() <= 3.0 * est.max(f64::EPSILON * exact),
                "tol {tol}: {v} vs {exact}"
            );
            assert!(est <= tol * v.abs().max(1.0));
        }
    }
}
