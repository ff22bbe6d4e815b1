//! Invariant suites run by `zetakit verify` and by the acceptance harness.

use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rug::{Integer, Rational};
use serde::Serialize;

use crate::asymptotics::{
    euler_zeta_negative, evaluate_expansion, expansion_terms, sine_power_sum, zeta_even_from_functional_eq,
    zeta_zn_positive_from_asymptotics,
};
use crate::ball::{HPComplex, HPReal};
use crate::context::PrecisionContext;
use crate::error::{Result, ZetaError};
use crate::numerics::{bernoulli, digamma, gamma, riemann_zeta_numeric};
use crate::poly::RationalPolynomial;
use crate::spheres::{
    catalan, catalan_from_zeta, catalan_product, sphere_ratio, sphere_volume_gamma, sphere_volume_zproduct,
};
use crate::zeta_z::{zeta_z_closed, zeta_z_deriv, zeta_z_mellin, zeta_z_partial_product_exact, zeta_z_product};
use crate::zeta_zn::{
    check_closed_poly, sine_odd_power_direct, sine_odd_power_sum, zeta_zn_closed_poly, zeta_zn_direct,
    zeta_zn_direct_unfolded, zeta_zn_negative_int, DiscreteCircle,
};

pub const DEFAULT_SEED: u64 = 0x5eed_2e7a;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Numerics,
    ZetaZ,
    ZetaZn,
    Asymptotics,
    Spheres,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Numerics,
        Suite::ZetaZ,
        Suite::ZetaZn,
        Suite::Asymptotics,
        Suite::Spheres,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Numerics => "numerics",
            Suite::ZetaZ => "zeta-z",
            Suite::ZetaZn => "zeta-zn",
            Suite::Asymptotics => "asymptotics",
            Suite::Spheres => "spheres",
        }
    }

    /// Parse a suite selector; `all` expands to every suite.
    pub fn parse_selection(name: &str) -> Result<Vec<Suite>> {
        if name == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        name.parse().map(|s| vec![s])
    }
}

impl FromStr for Suite {
    type Err = ZetaError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| ZetaError::Domain(format!("unknown suite '{s}'")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Replace the reconstructed closed polynomial by a copy with a perturbed
    /// constant term, so the polynomial check must fail.
    pub corrupt_poly: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            corrupt_poly: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub detail: Option<String>,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}/{}: {} cases, max error {:.3e} (tol {:.1e})",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite,
            self.name,
            self.cases,
            self.max_error,
            self.tolerance
        )?;
        if let Some(d) = &self.detail {
            write!(f, " [{d}]")?;
        }
        Ok(())
    }
}

/// Largest error seen, and the first case that broke the tolerance.
struct Tally {
    tol: f64,
    max_error: f64,
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(tol: f64) -> Self {
        Self {
            tol,
            max_error: 0.0,
            cases: 0,
            failure: None,
        }
    }

    fn record(&mut self, err: f64, case: impl FnOnce() -> String) {
        self.cases += 1;
        if err > self.max_error || err.is_nan() {
            self.max_error = err;
        }
        if (err.is_nan() || err > self.tol) && self.failure.is_none() {
            self.failure = Some(format!("{}: error {err:.3e}", case()));
        }
    }

    fn require(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(case());
        }
    }
}

type CheckFn = fn(&PrecisionContext, &VerifyOptions, &mut StdRng, &mut Tally) -> Result<()>;

struct Check {
    name: &'static str,
    tol: fn(&PrecisionContext) -> f64,
    run: CheckFn,
}

fn ctx_tol(ctx: &PrecisionContext) -> f64 {
    ctx.target_tol()
}

fn checks(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Numerics => vec![
            Check {
                name: "gamma-recurrence",
                tol: |c| 4.0 * c.target_tol(),
                run: gamma_recurrence,
            },
            Check {
                name: "gamma-reflection",
                tol: ctx_tol,
                run: gamma_reflection,
            },
            Check {
                name: "bernoulli-odd-zero",
                tol: |_| 0.0,
                run: bernoulli_odd_zero,
            },
            Check {
                name: "digamma-reflection",
                tol: ctx_tol,
                run: digamma_reflection,
            },
            Check {
                name: "riemann-trivial-zeros",
                tol: ctx_tol,
                run: riemann_trivial_zeros,
            },
        ],
        Suite::ZetaZ => vec![
            Check {
                name: "route-agreement",
                tol: |_| 1e-10,
                run: zeta_z_routes,
            },
            Check {
                name: "catalan-exact",
                tol: |_| 0.0,
                run: zeta_z_catalan,
            },
            Check {
                name: "telescoping",
                tol: |_| 0.0,
                run: zeta_z_telescoping,
            },
            Check {
                name: "simple-zeros",
                tol: |_| 0.0,
                run: zeta_z_zeros,
            },
            Check {
                name: "derivative-fd",
                tol: |_| 1e-15,
                run: zeta_z_derivative_fd,
            },
        ],
        Suite::ZetaZn => vec![
            Check {
                name: "negative-int-consistency",
                tol: ctx_tol,
                run: zeta_zn_negative_consistency,
            },
            Check {
                name: "sine-cotangent",
                tol: ctx_tol,
                run: zeta_zn_sine,
            },
            Check {
                name: "poly-exactness",
                tol: |c| c.snap_radius(),
                run: zeta_zn_poly,
            },
            Check {
                name: "folding-symmetry",
                tol: ctx_tol,
                run: zeta_zn_folding,
            },
            Check {
                name: "positivity",
                tol: |_| 0.0,
                run: zeta_zn_positivity,
            },
        ],
        Suite::Asymptotics => vec![
            Check {
                name: "exact-at-zero",
                tol: ctx_tol,
                run: asym_exact_at_zero,
            },
            Check {
                name: "convergence-order",
                tol: |_| 0.2,
                run: asym_convergence_order,
            },
            Check {
                name: "euler-even-zeros",
                tol: |_| 0.0,
                run: asym_euler_zeros,
            },
            Check {
                name: "functional-equation",
                tol: |_| 1e-20,
                run: asym_functional_eq,
            },
            Check {
                name: "positive-integers",
                tol: ctx_tol,
                run: asym_positive_integers,
            },
        ],
        Suite::Spheres => vec![
            Check {
                name: "route-agreement",
                tol: ctx_tol,
                run: spheres_routes,
            },
            Check {
                name: "telescoping",
                tol: ctx_tol,
                run: spheres_telescoping,
            },
            Check {
                name: "catalan-triple",
                tol: |_| 0.0,
                run: spheres_catalan,
            },
            Check {
                name: "unimodal",
                tol: |_| 0.0,
                run: spheres_unimodal,
            },
        ],
    }
}

/// Number of checks a suite runs.
pub fn check_count(suite: Suite) -> usize {
    checks(suite).len()
}

/// Run one suite. Each check gets its own RNG stream derived from the seed, so
/// a check's cases do not depend on which other suites ran before it.
pub fn run_suite(suite: Suite, ctx: &PrecisionContext, opts: &VerifyOptions) -> Vec<CheckResult> {
    checks(suite)
        .into_iter()
        .enumerate()
        .map(|(i, check)| {
            let stream = opts.seed ^ ((suite as u64) << 32 | i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
            let mut rng = StdRng::seed_from_u64(stream);
            let tol = (check.tol)(ctx);
            let mut tally = Tally::new(tol);
            let outcome = (check.run)(ctx, opts, &mut rng, &mut tally);
            let detail = match outcome {
                Err(e) => Some(format!("{}: {e}", e.kind())),
                Ok(()) => tally.failure.clone(),
            };
            CheckResult {
                suite,
                name: check.name,
                passed: detail.is_none(),
                cases: tally.cases,
                max_error: tally.max_error,
                tolerance: tol,
                detail,
            }
        })
        .collect()
}

pub fn run_suites(suites: &[Suite], ctx: &PrecisionContext, opts: &VerifyOptions) -> Vec<CheckResult> {
    suites.iter().flat_map(|&s| run_suite(s, ctx, opts)).collect()
}

fn real(prec: u32, x: f64) -> HPReal {
    HPReal::from_f64(prec, x)
}

fn complex(prec: u32, x: f64, y: f64) -> HPComplex {
    HPComplex::from_parts(&real(prec, x), &real(prec, y))
}

fn int(prec: u32, k: i64) -> HPComplex {
    HPReal::from_int(prec, k).into()
}

fn diff(a: &HPComplex, b: &HPComplex) -> f64 {
    let d = a - b;
    let mut re = d.re().clone();
    re.square_mut();
    let mut im = d.im().clone();
    im.square_mut();
    (re + im).sqrt().to_f64()
}

fn diff_real(a: &HPReal, b: &HPReal) -> f64 {
    let d = a - b;
    d.value().clone().abs().to_f64()
}

/// Distance from `x` to the nearest integer `<= 0`, or infinity for `x > 1/2`.
fn pole_distance(x: f64, y: f64) -> f64 {
    let k = x.round().min(0.0);
    ((x - k).powi(2) + y * y).sqrt()
}

// numerics

fn gamma_recurrence(ctx: &PrecisionContext, _: &VerifyOptions, rng: &mut StdRng, t: &mut Tally) -> Result<()> {
    let p = ctx.precision_bits();
    while t.cases < 1000 {
        let (x, y) = (rng.gen_range(-10.0..10.0), rng.gen_range(-5.0..5.0));
        if pole_distance(x, y) < 0.1 {
            continue;
        }
        let s = complex(p, x, y);
        let lhs = gamma(&s.add_real(&HPReal::one(p)), ctx)?;
        let rhs = &s * &gamma(&s, ctx)?;
        t.record(diff(&lhs, &rhs), || format!("s = {x}+{y}i"));
    }
    Ok(())
}

fn gamma_reflection(ctx: &PrecisionContext, _: &VerifyOptions, rng: &mut StdRng, t: &mut Tally) -> Result<()> {
    let p = ctx.precision_bits();
    while t.cases < 100 {
        let (x, y): (f64, f64) = (rng.gen_range(-10.0..10.0), rng.gen_range(-2.0..2.0));
        if (x - x.round()).abs() < 0.05 && y.abs() < 0.05 {
            continue;
        }
        let z = complex(p, x, y);
        let one_minus = &HPComplex::one(p) - &z;
        let lhs = &gamma(&z, ctx)? * &gamma(&one_minus, ctx)?;
        let rhs = &HPComplex::from(HPReal::pi(p)) / &z.sin_pi();
        // The product can be large, so compare relative to the right side.
        let scale = rhs.mag_upper().max(1.0);
        t.record(diff(&lhs, &rhs) / scale, || format!("z = {x}+{y}i"));
    }
    Ok(())
}

fn bernoulli_odd_zero(_: &PrecisionContext, _: &VerifyOptions, _: &mut StdRng, t: &mut Tally) -> Result<()> {
    for k in 1..=60 {
        let b = bernoulli(2 * k + 1);
        t.record(if b == 0 { 0.0 } else { 1.0 }, || format!("B_{}", 2 * k + 1));
    }
    Ok(())
}

fn digamma_reflection(ctx: &PrecisionContext, _: &VerifyOptions, _: &mut StdRng, t: &mut Tally) -> Result<()> {
    let p = ctx.precision_bits();
    for i in 0..100 {
        // -9.9, -9.7, ..., 9.9: never an integer.
        let x = Rational::from((-99 + 2 * i, 10));
        let z = HPReal::from_rational(p, &x);
        let one_minus = &HPReal::one(p) - &z;
        let lhs = &digamma(&one_minus, ctx)? - &digamma(&z, ctx)?;
        let rhs = &(&HPReal::pi(p) * &z.cos_pi()) / &z.sin_pi();
        let scale = rhs.mag_upper().max(1.0);
        t.record(diff_real(&lhs, &rhs) / scale, || format!("x = {x}"));
    }
    Ok(())
}

fn riemann_trivial_zeros(ctx: &PrecisionContext, _: &VerifyOptions, _: &mut StdRng, t: &mut Tally) -> Result<()> {
    let p = ctx.precision_bits();
    for m in 1..=5 {
        let v = riemann_zeta_numeric(&int(p, -2 * m), ctx)?;
        t.record(v.mag_upper(), || format!("ζ(-{})", 2 * m));
    }
    Ok(())
}

// zeta-z

fn zeta_z_routes(ctx: &PrecisionContext, _: &VerifyOptions, rng: &mut StdRng, t: &mut Tally) -> Result<()> {
    let p = ctx.precision_bits();
    for _ in 0..50 {
        let (x, y) = (rng.gen_range(0.05..0.45), rng.gen_range(-1.0..1.0));
        let s = complex(p, x, y);
        let closed = zeta_z_closed(&s, ctx)?;
        for other in [zeta_z_mellin(&s, ctx)?, zeta_z_product(&s, ctx)?] {
            let d = diff(&closed.value, &other.value);
            let bound = closed.err + other.err;
            t.record(d, || format!("s = {x}+{y}i, {} route", other.method));
            if d > bound && t.failure.is_none() {
                t.failure = Some(format!(
                    "s = {x}+{y}i: {} route differs by {d:.3e}, bounds sum to {bound:.3e}",
                    other.method
                ));
            }
        }
    }
    Ok(())
}

fn zeta_z_catalan(ctx: &PrecisionContext, _: &VerifyOptions, _: &mut StdRng, t: &mut Tally) -> Result<()> {
    let p = ctx.precision_bits();
    for m in 0..=30u32 {
        let z = zeta_z_closed(&int(p, -(m as i64)), ctx)?;
        let ok = z
            .exact
            .as_ref()
            .map(|q| Rational::from(q / (m + 1)) == catalan(m))
            .unwrap_or(false);
        t.require(ok, || format!("ζ_Z(-{m})/{} is not C_{m}", m + 1));
    }
    Ok(())
}

fn zeta_z_telescoping(_: &PrecisionContext, _: &VerifyOptions, _: &mut StdRng, t: &mut Tally) -> Result<()> {
    for m in 1..=10u32 {
        let target = Rational::from(Integer::from(Integer::binomial_u(2 * m, m)));
        let mut prev_gap: Option<Rational> = None;
        for k in 2 * m..=2 * m + 20 {
            let partial = zeta_z_partial_product_exact(m, k);
            // Π_{k'=1}^{K} (k'+m)²/(k'(k'+2m)) = C(2m,m) · ((K+m)!)²/(K!(K+2m)!).
            let corr = Rational::from((
                Integer::from(Integer::factorial(k + m)).square(),
                Integer::from(Integer::factorial(k)) * Integer::from(Integer::factorial(k + 2 * m)),
            ));
            t.require(partial == Rational::from(&target * &corr), || {
                format!("partial product m = {m}, K = {k} breaks the telescoping identity")
            });
            let gap = Rational::from(&target - &partial).abs();
            if let Some(g) = &prev_gap {
                t.require(gap < *g, || {
                    format!("partial products at m = {m} not monotone at K = {k}")
                });
            }
            prev_gap = Some(gap);
        }
    }
    Ok(())
}

fn zeta_z_zeros(ctx: &PrecisionContext, _: &VerifyOptions, _: &mut StdRng, t: &mut Tally) -> Result<()> {
    let p = ctx.precision_bits();
    for n in 1..=10 {
        let z = zeta_z_closed(&int(p, n), ctx)?;
        t.require(z.exact.as_ref().is_some_and(|q| *q == 0) && z.note.is_some(), || {
            format!("ζ_Z({n}) is not an exact lattice zero")
        });
    }
    Ok(())
}

/// Central-difference step: 1e-20, or `10^4` snap radii when that is larger,
/// so `s ± h` never snaps onto the integer lattice.
pub fn fd_step(ctx: &PrecisionContext) -> f64 {
    (1e4 * ctx.snap_radius()).max(1e-20)
}

/// `(ζ_Z(s+h) - ζ_Z(s-h)) / 2h` with values accurate well below `h`.
pub fn zeta_z_central_difference(s: &HPReal, ctx: &PrecisionContext) -> Result<HPReal> {
    let h_f = fd_step(ctx);
    let fine = ctx.with_tol((h_f * 1e-17).min(ctx.target_tol()))?;
    let h = HPReal::from_f64(ctx.precision_bits(), h_f);
    let up = zeta_z_closed(&(s + &h).into(), &fine)?.re();
    let down = zeta_z_closed(&(s - &h).into(), &fine)?.re();
    Ok(&(&up - &down) / &h.mul_int(2))
}

fn zeta_z_derivative_fd(ctx: &PrecisionContext, _: &VerifyOptions, rng: &mut StdRng, t: &mut Tally) -> Result<()> {
    let p = ctx.precision_bits();
    for _ in 0..20 {
        let x: f64 = rng.gen_range(-10.0..0.4);
        let s = real(p, x);
        let d = zeta_z_deriv(&s, ctx)?.re();
        let fd = zeta_z_central_difference(&s, ctx)?;
        t.record(diff_real(&d, &fd), || format!("s = {x}"));
    }
    Ok(())
}

// zeta-zn

fn zeta_zn_negative_consistency(
    ctx: &PrecisionContext,
    _: &VerifyOptions,
    _: &mut StdRng,
    t: &mut Tally,
) -> Result<()> {
    let p = ctx.precision_bits();
    for n in 2..=20 {
        let c = DiscreteCircle::new(n)?;
        for m in 1..=12u32 {
            let direct = zeta_zn_direct(c, &int(p, -(m as i64)), ctx)?;
            let exact = HPReal::from_integer(p, &zeta_zn_negative_int(c, m));
            t.record(diff_real(&direct.re(), &exact), || format!("n = {n}, m = {m}"));
        }
    }
    Ok(())
}

fn zeta_zn_sine(ctx: &PrecisionContext, _: &VerifyOptions, _: &mut StdRng, t: &mut Tally) -> Result<()> {
    for n in 2..=50 {
        let c = DiscreteCircle::new(n)?;
        for m in 0..=8 {
            let cot = sine_odd_power_sum(c, m, ctx)?;
            let direct = sine_odd_power_direct(c, m, ctx)?;
            t.record(diff(&cot.value, &direct.value), || format!("n = {n}, m = {m}"));
        }
    }
    Ok(())
}

/// `p` with its constant term moved by 1/7.
pub fn corrupt_polynomial(p: &RationalPolynomial) -> RationalPolynomial {
    let mut c = p.coeffs().to_vec();
    c[0] += Rational::from((1, 7));
    RationalPolynomial::new(c)
}

fn zeta_zn_poly(ctx: &PrecisionContext, opts: &VerifyOptions, _: &mut StdRng, t: &mut Tally) -> Result<()> {
    let p = ctx.precision_bits();
    for m in 1..=4u32 {
        let mut poly = zeta_zn_closed_poly(m)?;
        if opts.corrupt_poly {
            poly = corrupt_polynomial(&poly);
        }
        let s = int(p, m as i64);
        for n in 2..=12u32 {
            let direct = zeta_zn_direct(DiscreteCircle::new(n)?, &s, ctx)?;
            let exact = HPReal::from_rational(p, &poly.eval_int(n as i64));
            t.record(diff_real(&direct.re(), &exact), || format!("P_{m}({n})"));
        }
        if let Err(e) = check_closed_poly(&poly, m, ctx) {
            t.require(false, || format!("P_{m}: {e}"));
        }
    }
    Ok(())
}

fn zeta_zn_folding(ctx: &PrecisionContext, _: &VerifyOptions, rng: &mut StdRng, t: &mut Tally) -> Result<()> {
    let p = ctx.precision_bits();
    for _ in 0..40 {
        let n = rng.gen_range(2..=30);
        let (x, y) = (rng.gen_range(-6.0..6.0), rng.gen_range(-3.0..3.0));
        let c = DiscreteCircle::new(n)?;
        let s = complex(p, x, y);
        let folded = zeta_zn_direct(c, &s, ctx)?;
        let unfolded = zeta_zn_direct_unfolded(c, &s, ctx)?;
        t.record(diff(&folded.value, &unfolded.value), || {
            format!("n = {n}, s = {x}+{y}i")
        });
        t.require((&folded.value - &unfolded.value).contains_zero(), || {
            format!("n = {n}, s = {x}+{y}i: folded and unfolded balls are disjoint")
        });
    }
    Ok(())
}

fn zeta_zn_positivity(ctx: &PrecisionContext, _: &VerifyOptions, rng: &mut StdRng, t: &mut Tally) -> Result<()> {
    let p = ctx.precision_bits();
    for _ in 0..100 {
        let n = rng.gen_range(2..=40);
        let x: f64 = rng.gen_range(-10.0..10.0);
        let v = zeta_zn_direct(DiscreteCircle::new(n)?, &real(p, x).into(), ctx)?;
        t.require(v.re().is_positive(), || format!("ζ_Z/{n}Z({x}) is not positive"));
    }
    Ok(())
}

// asymptotics

fn asym_exact_at_zero(ctx: &PrecisionContext, _: &VerifyOptions, _: &mut StdRng, t: &mut Tally) -> Result<()> {
    let p = ctx.precision_bits();
    let s = HPComplex::zero(p);
    let terms = expansion_terms(&s, ctx)?;
    for n in 2..=60 {
        let approx = evaluate_expansion(&terms, &HPReal::from_int(p, n));
        t.record(diff(&approx, &int(p, n - 1)), || format!("n = {n}"));
    }
    Ok(())
}

/// Log-log slope of the remainder after the two leading terms at `s = -1`.
pub fn convergence_slope(ctx: &PrecisionContext) -> Result<f64> {
    let p = ctx.precision_bits();
    let s = HPReal::from_int(p, -1);
    let terms = expansion_terms(&s.clone().into(), ctx)?;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for k in 5..=12 {
        let n = 1u32 << k;
        let wp = ctx.precision_bits() + 64;
        let sum = sine_power_sum(&s, n, wp);
        let two = evaluate_expansion(&terms[..2], &HPReal::from_int(wp, n as i64));
        let r = (&sum - &two.real_part()).abs();
        xs.push((n as f64).ln());
        ys.push(r.value().clone().ln().to_f64());
    }
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

fn asym_convergence_order(ctx: &PrecisionContext, _: &VerifyOptions, _: &mut StdRng, t: &mut Tally) -> Result<()> {
    let slope = convergence_slope(ctx)?;
    t.record((slope + 3.0).abs(), || format!("slope {slope:.4}"));
    Ok(())
}

fn asym_euler_zeros(_: &PrecisionContext, _: &VerifyOptions, _: &mut StdRng, t: &mut Tally) -> Result<()> {
    for k in 1..=10 {
        t.require(euler_zeta_negative(2 * k) == 0, || format!("ζ(-{}) is not zero", 2 * k));
    }
    Ok(())
}

fn asym_functional_eq(ctx: &PrecisionContext, _: &VerifyOptions, _: &mut StdRng, t: &mut Tally) -> Result<()> {
    let p = ctx.precision_bits();
    for m in 1..=6 {
        let fe = zeta_even_from_functional_eq(m, ctx)?;
        let em = riemann_zeta_numeric(&int(p, 2 * m as i64), ctx)?;
        t.record(diff(&fe.value, &em), || format!("ζ({})", 2 * m));
    }
    Ok(())
}

fn asym_positive_integers(ctx: &PrecisionContext, _: &VerifyOptions, _: &mut StdRng, t: &mut Tally) -> Result<()> {
    let p = ctx.precision_bits();
    for n in 2..=30 {
        for m in 1..=2u32 {
            let a = zeta_zn_positive_from_asymptotics(n, m, ctx)?;
            let d = zeta_zn_direct(DiscreteCircle::new(n)?, &int(p, m as i64), ctx)?;
            t.record(diff(&a.value, &d.value), || format!("n = {n}, m = {m}"));
        }
    }
    Ok(())
}

// spheres

fn spheres_routes(ctx: &PrecisionContext, _: &VerifyOptions, _: &mut StdRng, t: &mut Tally) -> Result<()> {
    for n in 1..=50 {
        let g = sphere_volume_gamma(n, ctx)?;
        let z = sphere_volume_zproduct(n, ctx)?;
        t.record(diff(&g.value, &z.value), || format!("n = {n}"));
    }
    Ok(())
}

fn spheres_telescoping(ctx: &PrecisionContext, _: &VerifyOptions, _: &mut StdRng, t: &mut Tally) -> Result<()> {
    let p = ctx.precision_bits();
    let mut prod = HPReal::from_int(p, 2);
    for n in 1..=30 {
        let r = sphere_ratio(n, ctx)?;
        t.require(r.agrees(), || format!("ratio at n = {n} disagrees with Z(1-n)"));
        prod = &prod * &r.gamma_ratio.re();
        let g = sphere_volume_gamma(n, ctx)?;
        t.record(diff_real(&prod, &g.re()), || format!("n = {n}"));
    }
    Ok(())
}

fn spheres_catalan(ctx: &PrecisionContext, _: &VerifyOptions, _: &mut StdRng, t: &mut Tally) -> Result<()> {
    for m in 0..=30 {
        let c = Rational::from(catalan(m));
        let ok = catalan_product(m) == c && catalan_from_zeta(m, ctx)? == c;
        t.require(ok, || format!("Catalan forms disagree at m = {m}"));
    }
    Ok(())
}

fn spheres_unimodal(ctx: &PrecisionContext, _: &VerifyOptions, _: &mut StdRng, t: &mut Tally) -> Result<()> {
    let vols = (0..=60)
        .map(|n| sphere_volume_gamma(n, ctx).map(|v| v.re().to_f64()))
        .collect::<Result<Vec<_>>>()?;
    for n in 1..vols.len() {
        let rising = n <= 6;
        t.require((vols[n] > vols[n - 1]) == rising, || {
            format!("volume sequence not unimodal at n = {n}")
        });
    }
    t.require(vols[60] < 1e-15, || {
        format!("vol(S^60) = {} does not tend to 0", vols[60])
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spheres_suite_has_four_passing_checks() {
        let ctx = PrecisionContext::default();
        let r = run_suite(Suite::Spheres, &ctx, &VerifyOptions::default());
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(|c| c.passed), "{r:?}");
    }

    #[test]
    fn corrupted_polynomial_fails_the_zeta_zn_suite() {
        let ctx = PrecisionContext::default();
        let opts = VerifyOptions {
            corrupt_poly: true,
            ..Default::default()
        };
        let r = run_suite(Suite::ZetaZn, &ctx, &opts);
        let poly = r.iter().find(|c| c.name == "poly-exactness").unwrap();
        assert!(!poly.passed);
        assert!(
            r.iter().filter(|c| c.name != "poly-exactness").all(|c| c.passed),
            "{r:?}"
        );
    }

    #[test]
    fn selection_parsing() {
        assert_eq!(Suite::parse_selection("all").unwrap().len(), 5);
        assert_eq!(Suite::parse_selection("zeta-zn").unwrap(), vec![Suite::ZetaZn]);
        assert!(Suite::parse_selection("bogus").is_err());
    }

    #[test]
    fn fd_step_stays_above_the_snap_radius() {
        let lo = PrecisionContext::with_precision(128).unwrap();
        let hi = PrecisionContext::default();
        assert_eq!(fd_step(&hi), 1e-20);
        assert!(fd_step(&lo) > 1e3 * lo.snap_radius());
    }
}
