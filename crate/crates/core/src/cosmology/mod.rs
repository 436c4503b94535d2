//! Flat FLRW background: Hubble rate, particle horizon, and the box side
//! assigned to a scale factor.
//!
//! With `E(a) = H(a)/H0` the horizon integrand simplifies to
//! `1 / (a^2 E) = 1 / sqrt(omega_r0 + omega_m0 a + omega_l0 a^4)`, which is
//! finite at `a = 0` when radiation is present. The first stretch
//! `[0, b]`, `b = min(a, 1e-8)`, is integrated in closed form with the
//! `omega_l0` term dropped; the rest is integrated in `ln a`.

mod quadrature;

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};
use crate::Real;

/// Speed of light in m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// One megaparsec in meters.
pub const MEGAPARSEC: f64 = 3.085_677_581_491_367e22;

const ANALYTIC_EDGE: f64 = 1e-8;
const MAX_PANELS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CosmologyParams<T> {
    /// Hubble constant in km/s/Mpc.
    pub h0: T,
    pub omega_m0: T,
    pub omega_r0: T,
    pub omega_l0: T,
}

impl<T: Real> CosmologyParams<T> {
    /// Planck 2018 best fit with photons and massless neutrinos as radiation.
    pub fn planck2018() -> Self {
        Self {
            h0: T::lit(67.66),
            omega_m0: T::lit(0.3111),
            omega_r0: T::lit(9.18e-5),
            omega_l0: T::lit(0.6889),
        }
    }

    /// `H0` in 1/s.
    pub fn h0_si(&self) -> T {
        self.h0 * T::lit(1e3 / MEGAPARSEC)
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("h0", self.h0)?;
        for (name, v) in [
            ("omega_m0", self.omega_m0),
            ("omega_r0", self.omega_r0),
            ("omega_l0", self.omega_l0),
        ] {
            if !(v >= T::zero() && v.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be non-negative, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// `a^2 E(a)`.
    fn scaled_rate(&self, a: T) -> T {
        let a2 = a * a;
        (self.omega_r0 + self.omega_m0 * a + self.omega_l0 * a2 * a2).sqrt()
    }
}

impl<T: Real> Default for CosmologyParams<T> {
    fn default() -> Self {
        Self::planck2018()
    }
}

/// `H(a) = H0 sqrt(omega_m0 a^-3 + omega_r0 a^-4 + omega_l0)` in 1/s.
pub fn hubble<T: Real>(a: T, params: &CosmologyParams<T>) -> Result<T> {
    if !(a > T::zero()) {
        return Err(Error::NonPositiveScaleFactor { a: a.as_f64() });
    }
    params.validate()?;
    Ok(params.h0_si() * params.scaled_rate(a) / (a * a))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HorizonResult<T> {
    pub a: T,
    /// Physical horizon distance in meters.
    pub l_p: T,
    /// Comoving horizon distance in meters.
    pub comoving_chi: T,
    /// Estimated absolute error of `l_p`.
    pub quadrature_error: T,
}

/// `int_lo^hi da / (a^2 E(a))` for `0 < lo < hi`, with its error estimate.
fn horizon_integral<T: Real>(
    lo: T,
    hi: T,
    params: &CosmologyParams<T>,
    rel_tol: T,
) -> Result<(T, T)> {
    let (u0, u1) = (lo.ln(), hi.ln());
    // about two panels per e-fold
    let panels = ((u1 - u0) / T::lit(2.0))
        .ceil()
        .to_usize()
        .unwrap_or(1)
        .max(1);
    let r = quadrature::integrate(
        |u: T| {
            let a = u.exp();
            a / params.scaled_rate(a)
        },
        u0,
        u1,
        panels,
        rel_tol,
        MAX_PANELS,
    )?;
    Ok((r.value, r.error))
}

fn check_scale_factor<T: Real>(a: T) -> Result<()> {
    if !(a > T::zero()) {
        return Err(Error::NonPositiveScaleFactor { a: a.as_f64() });
    }
    if !(a <= T::one()) {
        return Err(Error::ScaleFactorOutOfRange { a: a.as_f64() });
    }
    Ok(())
}

/// Physical particle horizon `l_p = c a int_0^a da' / (a'^2 H(a'))`.
pub fn particle_horizon<T: Real>(
    a: T,
    params: &CosmologyParams<T>,
    rel_tol: T,
) -> Result<HorizonResult<T>> {
    check_scale_factor(a)?;
    params.validate()?;
    require_positive("rel_tol", rel_tol)?;
    if params.omega_r0 == T::zero() {
        return Err(Error::RadiationRequired);
    }
    let b = a.min(T::lit(ANALYTIC_EDGE));
    let sr = params.omega_r0.sqrt();
    let head = T::lit(2.0) * b / (params.scaled_rate(b) + sr);
    let (tail, tail_err) = if a > b {
        horizon_integral(b, a, params, rel_tol)?
    } else {
        (T::zero(), T::zero())
    };
    let scale = T::lit(SPEED_OF_LIGHT) / params.h0_si();
    let comoving_chi = scale * (head + tail);
    Ok(HorizonResult {
        a,
        l_p: a * comoving_chi,
        comoving_chi,
        quadrature_error: a * scale * tail_err,
    })
}

/// How the box side is tied to the particle horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoxConvention {
    /// `L / 2 = l_p`.
    #[default]
    HalfSideIsHorizon,
    /// `L = l_p`.
    SideIsHorizon,
}

impl BoxConvention {
    pub fn factor(&self) -> f64 {
        match self {
            BoxConvention::HalfSideIsHorizon => 2.0,
            BoxConvention::SideIsHorizon => 1.0,
        }
    }
}

/// Default relative tolerance of the horizon integral.
pub const DEFAULT_REL_TOL: f64 = 1e-12;

/// Box side `L = 2 l_p(a)` in meters.
pub fn box_length<T: Real>(a: T, params: &CosmologyParams<T>) -> Result<T> {
    box_length_with(a, params, BoxConvention::default(), T::lit(DEFAULT_REL_TOL))
}

pub fn box_length_with<T: Real>(
    a: T,
    params: &CosmologyParams<T>,
    convention: BoxConvention,
    rel_tol: T,
) -> Result<T> {
    Ok(T::lit(convention.factor()) * particle_horizon(a, params, rel_tol)?.l_p)
}
