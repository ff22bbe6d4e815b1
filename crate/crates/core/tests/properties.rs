use proptest::prelude::*;
use rug::{Float, Integer, Rational};

use zetakit::cli::{format_rational_input, RangeSpec};
use zetakit::numerics::rational::{parse_rational, reconstruct};
use zetakit::numerics::{binomial_real, gamma};
use zetakit::poly::RationalPolynomial;
use zetakit::zeta_z::zeta_z_closed;
use zetakit::zeta_zn::{zeta_zn_direct, zeta_zn_direct_unfolded, DiscreteCircle};
use zetakit::{HPComplex, HPReal, PrecisionContext};

const ORACLE: u32 = 1024;

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..500).prop_map(|(p, q)| Rational::from((p, q)))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..10_000, 1i64..500).prop_map(|(p, q)| Rational::from((p, q)))
}

/// True when the exact value lies in the closed ball.
fn encloses(ball: &HPReal, exact: &Float) -> bool {
    let d = Float::with_val(ORACLE, exact - ball.value()).abs();
    let r = Float::with_val(ORACLE, ball.err());
    d <= r
}

fn low(q: &Rational) -> HPReal {
    HPReal::from_rational(64, q)
}

fn hi(q: &Rational) -> Float {
    Float::with_val(ORACLE, q)
}

fn rel(x: &Float, y: &Float) -> f64 {
    let d = Float::with_val(x.prec(), x - y).abs();
    let m = Float::with_val(x.prec(), y.abs_ref()).max(&Float::with_val(x.prec(), 1));
    (d / m).to_f64()
}

fn off_integers(x: f64) -> bool {
    (x - x.round()).abs() > 1e-3
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ball_arithmetic_encloses(a in rational(), b in rational()) {
        let (x, y) = (low(&a), low(&b));
        prop_assert!(encloses(&x, &hi(&a)));
        prop_assert!(encloses(&(&x + &y), &hi(&(a.clone() + &b))));
        prop_assert!(encloses(&(&x - &y), &hi(&(a.clone() - &b))));
        prop_assert!(encloses(&(&x * &y), &hi(&(a.clone() * &b))));
        if b != 0 {
            prop_assert!(encloses(&(&x / &y), &hi(&(a.clone() / &b))));
        }
    }

    #[test]
    fn ball_functions_enclose(a in positive_rational()) {
        let x = low(&a);
        prop_assert!(encloses(&x.sqrt(), &hi(&a).sqrt()));
        prop_assert!(encloses(&x.ln(), &hi(&a).ln()));
        let small = Rational::from(&a / 1000u32);
        prop_assert!(encloses(&low(&small).exp(), &hi(&small).exp()));
        prop_assert!(encloses(&low(&small).sin_pi(), &(hi(&small) * Float::with_val(ORACLE, rug::float::Constant::Pi)).sin()));
    }

    #[test]
    fn rational_input_round_trips(a in rational()) {
        let text = format_rational_input(&a);
        prop_assert_eq!(parse_rational(&text).unwrap(), a);
    }

    #[test]
    fn reconstruction_recovers_small_rationals(a in rational()) {
        let x = HPReal::from_rational(256, &a);
        prop_assert_eq!(reconstruct(&x, 64), Some(a));
    }

    #[test]
    fn interpolation_recovers_polynomials(coeffs in prop::collection::vec(rational(), 1..8)) {
        let p = RationalPolynomial::new(coeffs);
        let points: Vec<(Rational, Rational)> = (0..=p.coeffs().len() as i64)
            .map(|k| (Rational::from(k), p.eval_int(k)))
            .collect();
        prop_assert_eq!(RationalPolynomial::interpolate(&points), p);
    }

    #[test]
    fn ranges_are_increasing_and_bounded(start in -200i64..200, len in 0i64..400, step in 1i64..50) {
        let text = format!("{start}:{}:{}/{}", start + len, step, 7);
        let spec = RangeSpec::parse(&text).unwrap();
        let v = spec.values().unwrap();
        prop_assert!(!v.is_empty());
        prop_assert_eq!(&v[0], &Rational::from(start));
        prop_assert!(v.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(v.iter().all(|x| *x <= start + len));
        prop_assert!(v.last().unwrap().clone() + Rational::from((step, 7)) > start + len);
    }

    #[test]
    fn binomial_is_symmetric(a in 0.5f64..30.0, t in 0.05f64..0.95) {
        let ctx = PrecisionContext::with_precision(128).unwrap();
        let b = a * t;
        let (ha, hb) = (HPReal::from_f64(128, a), HPReal::from_f64(128, b));
        let left = binomial_real(&ha, &hb, &ctx).unwrap().value;
        let right = binomial_real(&ha, &(&ha - &hb), &ctx).unwrap().value;
        prop_assert!(rel(left.value(), right.value()) <= 4.0 * ctx.target_tol());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gamma_recurrence(x in -9.9f64..9.9, y in -5.0f64..5.0, bits in prop::sample::select(vec![128u32, 256])) {
        prop_assume!(y.abs() > 0.1 || off_integers(x));
        let ctx = PrecisionContext::with_precision(bits).unwrap();
        let s = HPComplex::from_parts(&HPReal::from_f64(bits, x), &HPReal::from_f64(bits, y));
        let g = gamma(&s, &ctx).unwrap();
        let g1 = gamma(&s.add_real(&HPReal::one(bits)), &ctx).unwrap();
        let d = &g1 - &(&s * &g);
        let scale = g1.mag_upper().max(1.0);
        prop_assert!(d.mag_upper() <= 4.0 * ctx.target_tol() * scale, "diff {} at s = {x}+{y}i", d.mag_upper());
    }

    #[test]
    fn gamma_matches_mpfr(p in -990i64..990) {
        let x = Rational::from((p, 100));
        prop_assume!(*x.denom() != 1);
        let ctx = PrecisionContext::with_precision(256).unwrap();
        let g = gamma(&HPReal::from_rational(256, &x).into(), &ctx).unwrap();
        let want = Float::with_val(ORACLE, &x).gamma();
        prop_assert!(rel(g.re(), &want) <= 1e-60, "Γ({x}) relative error {}", rel(g.re(), &want));
    }

    #[test]
    fn zeta_z_conjugate_symmetry(x in -3.0f64..0.45, y in 0.01f64..3.0) {
        let ctx = PrecisionContext::with_precision(128).unwrap();
        let s = HPComplex::from_parts(&HPReal::from_f64(128, x), &HPReal::from_f64(128, y));
        let a = zeta_z_closed(&s, &ctx).unwrap().value;
        let b = zeta_z_closed(&s.conj(), &ctx).unwrap().value;
        let d = &a.conj() - &b;
        prop_assert!(d.mag_upper() <= 4.0 * ctx.target_tol() * a.mag_upper().max(1.0));
    }

    #[test]
    fn discrete_zeta_is_positive_and_folds(n in 2u32..60, x in -6.0f64..6.0) {
        let ctx = PrecisionContext::with_precision(128).unwrap();
        let c = DiscreteCircle::new(n).unwrap();
        let s: HPComplex = HPReal::from_f64(128, x).into();
        let folded = zeta_zn_direct(c, &s, &ctx).unwrap().value;
        let unfolded = zeta_zn_direct_unfolded(c, &s, &ctx).unwrap().value;
        prop_assert!(folded.real_part().is_positive());
        let d = &folded - &unfolded;
        prop_assert!(d.mag_upper() <= 4.0 * ctx.target_tol() * folded.mag_upper().max(1.0));
    }
}

#[test]
fn integer_gamma_is_factorial() {
    let ctx = PrecisionContext::with_precision(256).unwrap();
    for n in 1..=40u32 {
        let g = gamma(&HPReal::from_int(256, n as i64).into(), &ctx).unwrap();
        let f = Float::with_val(ORACLE, Integer::from(Integer::factorial(n - 1)));
        assert!(rel(g.re(), &f) <= 1e-70, "Γ({n})");
    }
}
