//! Sphere volumes as products of `Z` values, Catalan numbers, and the
//! zeta products behind the volumes of `SL_n(ℤ)` and `Sp_{2n}(ℤ)`.

use rug::{Integer, Rational};

use crate::asymptotics::zeta_even_rational_coefficient;
use crate::ball::{HPComplex, HPReal};
use crate::context::PrecisionContext;
use crate::error::{Result, ZetaError};
use crate::eval::{EvalResult, Method};
use crate::numerics::escalate;
use crate::numerics::gamma::gamma_at;
use crate::numerics::riemann::zeta_at;
use crate::zeta_z::{big_z, big_z_neg_int_at, zeta_z_closed};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VolumeRoute {
    GammaClosedForm,
    ZProduct,
}

/// `vol(S^n)` together with the route that produced it.
#[derive(Debug, Clone)]
pub struct SphereVolume {
    pub n: u32,
    pub value: EvalResult,
    pub route: VolumeRoute,
}

pub fn sphere_volume(n: u32, route: VolumeRoute, ctx: &PrecisionContext) -> Result<SphereVolume> {
    let value = match route {
        VolumeRoute::GammaClosedForm => sphere_volume_gamma(n, ctx)?,
        VolumeRoute::ZProduct => sphere_volume_zproduct(n, ctx)?,
    };
    Ok(SphereVolume { n, value, route })
}

pub(crate) fn volume_gamma_at(n: u32, wp: u32) -> HPReal {
    let half_dim = HPReal::from_rational(wp, &Rational::from((n + 1, 2)));
    let pi_pow = (&HPReal::pi(wp).ln() * &half_dim).exp();
    let g = gamma_at(&HPComplex::from(&half_dim), wp).real_part();
    (&pi_pow / &g).mul_int(2)
}

/// `vol(S^n) = 2 π^{(n+1)/2} / Γ((n+1)/2)`.
pub fn sphere_volume_gamma(n: u32, ctx: &PrecisionContext) -> Result<EvalResult> {
    if n == 0 {
        return Ok(EvalResult::exact(
            Rational::from(2),
            ctx.precision_bits(),
            Method::ClosedForm,
        ));
    }
    let v = escalate(ctx, "sphere_volume_gamma", |wp| Ok(volume_gamma_at(n, wp)))?;
    Ok(EvalResult::real(v, Method::ClosedForm, true))
}

/// `vol(S^n) = 2 Z(0) Z(-1) ··· Z(-n+1)`; the empty product gives `vol(S^0) = 2`.
pub fn sphere_volume_zproduct(n: u32, ctx: &PrecisionContext) -> Result<EvalResult> {
    if n == 0 {
        return Ok(EvalResult::exact(
            Rational::from(2),
            ctx.precision_bits(),
            Method::Product,
        ));
    }
    let v = escalate(ctx, "sphere_volume_zproduct", |wp| {
        let mut p = HPReal::from_int(wp, 2);
        for j in 0..n {
            p = &p * &big_z_neg_int_at(j, wp);
        }
        Ok(p)
    })?;
    Ok(EvalResult::real(v, Method::Product, true))
}

/// Both sides of `vol(S^n) / vol(S^{n-1}) = Z(-n+1)`.
#[derive(Debug, Clone)]
pub struct SphereRatio {
    pub n: u32,
    pub gamma_ratio: EvalResult,
    pub z_value: EvalResult,
}

impl SphereRatio {
    pub fn agrees(&self) -> bool {
        self.gamma_ratio.agrees_with(&self.z_value)
    }
}

pub fn sphere_ratio(n: u32, ctx: &PrecisionContext) -> Result<SphereRatio> {
    if n == 0 {
        return Err(ZetaError::Domain("sphere_ratio needs n >= 1".into()));
    }
    let v = escalate(ctx, "sphere_ratio", |wp| {
        let below = if n == 1 {
            HPReal::from_int(wp, 2)
        } else {
            volume_gamma_at(n - 1, wp)
        };
        Ok(&volume_gamma_at(n, wp) / &below)
    })?;
    let z = big_z(
        &HPComplex::from(HPReal::from_int(ctx.precision_bits(), 1 - n as i64)),
        ctx,
    )?;
    Ok(SphereRatio {
        n,
        gamma_ratio: EvalResult::real(v, Method::ClosedForm, true),
        z_value: z,
    })
}

/// Dimension with the largest sphere volume among `0..=max_n`.
pub fn sphere_volume_peak(max_n: u32, ctx: &PrecisionContext) -> Result<u32> {
    let mut best = (0, sphere_volume_gamma(0, ctx)?.re());
    for n in 1..=max_n {
        let v = sphere_volume_gamma(n, ctx)?.re();
        if *v.value() > *best.1.value() {
            best = (n, v);
        }
    }
    Ok(best.0)
}

/// `C_m = C(2m, m) / (m + 1)`.
pub fn catalan(m: u32) -> Integer {
    Integer::from(Integer::binomial_u(2 * m, m)) / (m + 1)
}

/// `Π_{k=2}^{m} (m + k) / k` in exact rationals.
pub fn catalan_product(m: u32) -> Rational {
    let mut p = Rational::from(1);
    for k in 2..=m {
        p *= Rational::from((m + k, k));
    }
    p
}

/// `ζ_Z(-m) / (m + 1)`.
pub fn catalan_from_zeta(m: u32, ctx: &PrecisionContext) -> Result<Rational> {
    let s = HPComplex::from(HPReal::from_int(ctx.precision_bits(), -(m as i64)));
    let z = zeta_z_closed(&s, ctx)?;
    let exact = z
        .exact
        .ok_or_else(|| ZetaError::NoConvergence(format!("zeta_z(-{m}) did not take the exact path")))?;
    Ok(exact / (m + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    /// `ζ(2) ζ(3) ··· ζ(n)`
    SL,
    /// `ζ(2) ζ(4) ··· ζ(2n)`
    Sp,
}

/// The zeta product attached to `SL_n(ℤ)` or `Sp_{2n}(ℤ)`. Even arguments
/// use the exact `ζ(2m) = r π^{2m}`; odd ones use Euler–Maclaurin.
pub fn arithmetic_volume_demo(group: Group, n: u32, ctx: &PrecisionContext) -> Result<EvalResult> {
    let args: Vec<u32> = match group {
        Group::SL if n >= 2 => (2..=n).collect(),
        Group::Sp if n >= 1 => (1..=n).map(|k| 2 * k).collect(),
        _ => {
            return Err(ZetaError::Domain(format!("{group:?} product needs larger n, got {n}")));
        }
    };
    let v = escalate(ctx, "arithmetic_volume_demo", |wp| {
        let mut p = HPReal::one(wp);
        for &k in &args {
            let z = if k % 2 == 0 {
                let r = zeta_even_rational_coefficient(k / 2);
                &HPReal::from_rational(wp, &r) * &HPReal::pi(wp).powi(k as i64)
            } else {
                zeta_at(&HPComplex::from(HPReal::from_int(wp, k as i64)), wp).real_part()
            };
            p = &p * &z;
        }
        Ok(p)
    })?;
    Ok(EvalResult::real(v, Method::ClosedForm, true))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn close(r: &EvalResult, want: &HPReal) -> bool {
        (&r.re() - want).mag_upper() < 1e-30
    }

    #[test]
    fn first_volumes() {
        let c = ctx();
        let pi = HPReal::pi(300);
        assert_eq!(sphere_volume_gamma(0, &c).unwrap().exact, Some(Rational::from(2)));
        assert!(close(&sphere_volume_gamma(1, &c).unwrap(), &pi.mul_int(2)));
        assert!(close(&sphere_volume_gamma(2, &c).unwrap(), &pi.mul_int(4)));
        assert!(close(&sphere_volume_gamma(3, &c).unwrap(), &pi.sqr().mul_int(2)));
        assert!(close(&sphere_volume_zproduct(1, &c).unwrap(), &pi.mul_int(2)));
        assert!(close(&sphere_volume_zproduct(2, &c).unwrap(), &pi.mul_int(4)));
        assert!(close(&sphere_volume_zproduct(3, &c).unwrap(), &pi.sqr().mul_int(2)));
    }

    #[test]
    fn ratios() {
        let c = ctx();
        let pi = HPReal::pi(300);
        for (n, want) in [
            (1, pi.clone()),
            (2, HPReal::from_int(300, 2)),
            (5, pi.mul_int(3).div_int(8)),
        ] {
            let r = sphere_ratio(n, &c).unwrap();
            assert!(r.agrees(), "n = {n}");
            assert!(close(&r.gamma_ratio, &want), "n = {n}");
        }
    }

    #[test]
    fn peak_at_six() {
        assert_eq!(sphere_volume_peak(20, &ctx()).unwrap(), 6);
    }

    #[test]
    fn catalan_forms() {
        assert_eq!(catalan(0), 1);
        assert_eq!(catalan(3), 5);
        assert_eq!(catalan_product(0), 1);
        assert_eq!(catalan_from_zeta(2, &ctx()).unwrap(), 2);
    }

    #[test]
    fn arithmetic_products() {
        let c = ctx();
        let zeta2 = HPReal::pi(300).sqr().div_int(6);
        assert!(close(&arithmetic_volume_demo(Group::SL, 2, &c).unwrap(), &zeta2));
        assert!(close(&arithmetic_volume_demo(Group::Sp, 1, &c).unwrap(), &zeta2));
        let v = arithmetic_volume_demo(Group::SL, 3, &c).unwrap().to_f64();
        assert!((v - 1.977304350).abs() < 1e-8, "{v}");
        assert!(arithmetic_volume_demo(Group::SL, 1, &c).is_err());
        assert!(arithmetic_volume_demo(Group::Sp, 0, &c).is_err());
    }
}
