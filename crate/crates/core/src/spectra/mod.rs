//! Bound-state eigenvalue conditions on the supported topologies.
//!
//! Everything here works in the dimensionless pair `(s, rho)`: the binding
//! root `s = sqrt(2|E|) ell` and the box ratio `rho = L / ell`. The free
//! bound state sits at `s = 1`; compactification pushes `s` above one by an
//! amount that is exponentially small in `rho`.

mod root;
mod solve;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{require_positive, Error, Result};
use crate::lattice::LatticeSumSpec;
use crate::Real;

pub use solve::{residual_circle, residual_e1, residual_e2, solve, MIN_RHO};

/// Reduced Planck constant in J s.
pub const HBAR: f64 = 1.054_571_817e-34;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "&'static str")]
pub enum Topology {
    FreeLine,
    Circle,
    FreeSpace,
    E1Torus,
    E2HalfTurn,
}

impl Topology {
    pub const ALL: [Topology; 5] = [
        Topology::FreeLine,
        Topology::Circle,
        Topology::FreeSpace,
        Topology::E1Torus,
        Topology::E2HalfTurn,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Topology::FreeLine => "free1d",
            Topology::Circle => "circle",
            Topology::FreeSpace => "free3d",
            Topology::E1Torus => "e1",
            Topology::E2HalfTurn => "e2",
        }
    }

    pub fn dimension(&self) -> u8 {
        match self {
            Topology::FreeLine | Topology::Circle => 1,
            _ => 3,
        }
    }

    pub fn is_compact(&self) -> bool {
        !matches!(self, Topology::FreeLine | Topology::FreeSpace)
    }

    /// Coefficient of the leading finite-size correction. For the 3D spaces
    /// `u - 1 ~ C (2/rho) e^{-rho}`, for the circle `u - 1 ~ C e^{-rho}`.
    pub fn c_gamma(&self) -> Option<f64> {
        match self {
            Topology::Circle => Some(4.0),
            Topology::E1Torus => Some(6.0),
            Topology::E2HalfTurn => Some(4.0),
            Topology::FreeLine | Topology::FreeSpace => None,
        }
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl From<Topology> for &'static str {
    fn from(t: Topology) -> Self {
        t.name()
    }
}

impl FromStr for Topology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Topology::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown topology `{s}`")))
    }
}

/// Coupling length `ell`: the free bound state has `|E| = 1/(2 ell^2)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct CouplingScale<T>(T);

impl<T: Real> CouplingScale<T> {
    pub fn new(ell: T) -> Result<Self> {
        require_positive("ell", ell)?;
        Ok(Self(ell))
    }

    pub fn value(&self) -> T {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimensionlessState<T> {
    pub s: T,
    pub rho: T,
}

impl<T: Real> DimensionlessState<T> {
    /// `l = L^2 |E| / (2 pi^2) = (s rho / 2 pi)^2`, the argument of the
    /// regularized mode sums.
    pub fn l(&self) -> T {
        let x = self.s * self.rho / (T::lit(2.0) * T::PI());
        x * x
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverReport<T> {
    pub iterations: usize,
    /// Residual in the excess form `f(s - 1)` at the returned root.
    pub residual: T,
    /// Final bracket on `s`.
    pub bracket: (T, T),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyResult<T> {
    pub topology: Topology,
    pub ell: T,
    pub rho: T,
    pub s: T,
    /// `s - 1`, kept separately because it is far below the resolution of `s`
    /// once `rho` is large.
    pub excess: T,
    /// `|E| = s^2 / (2 ell^2)`, in inverse squared units of `ell`.
    pub e_tilde_abs: T,
    /// `s^2 - 1`, the relative shift against the free bound state.
    pub eta_vs_free: T,
    /// `ln(eta_vs_free)`; analytic when the shift underflows, `None` for the
    /// free spaces.
    pub ln_eta: Option<T>,
    pub underflow_clamped: bool,
    pub energy_joules: Option<f64>,
    pub solver_report: SolverReport<T>,
}

impl<T: Real> EnergyResult<T> {
    pub(crate) fn from_excess(
        topology: Topology,
        ell: CouplingScale<T>,
        rho: T,
        excess: T,
        ln_eta: Option<T>,
        underflow_clamped: bool,
        solver_report: SolverReport<T>,
    ) -> Self {
        let ell = ell.value();
        let s = T::one() + excess;
        let eta = excess * (T::lit(2.0) + excess);
        Self {
            topology,
            ell,
            rho,
            s,
            excess,
            e_tilde_abs: s * s / (T::lit(2.0) * ell * ell),
            eta_vs_free: eta,
            ln_eta,
            underflow_clamped,
            energy_joules: None,
            solver_report,
        }
    }

    pub fn state(&self) -> DimensionlessState<T> {
        DimensionlessState {
            s: self.s,
            rho: self.rho,
        }
    }

    /// Attaches the physical energy `-hbar^2 |E| / m`. `ell` must then be in
    /// meters.
    pub fn with_mass(mut self, mass_kg: f64) -> Result<Self> {
        require_positive("mass", mass_kg)?;
        self.energy_joules = Some(-HBAR * HBAR * self.e_tilde_abs.as_f64() / mass_kg);
        Ok(self)
    }
}

/// Leading large-`rho` closed form `ln(u - 1)`.
pub(crate) fn asymptotic_ln_eta<T: Real>(topology: Topology, rho: T) -> Option<T> {
    let c = T::lit(topology.c_gamma()?);
    Some(match topology.dimension() {
        1 => c.ln() - rho,
        _ => (T::lit(2.0) * c / rho).ln() - rho,
    })
}

/// Large-`L` approximation `u = 1 + C (2 ell / L) e^{-L/ell}` (3D) or
/// `u = 1 + 4 e^{-L/ell}` (circle).
pub fn asymptotic_energy<T: Real>(
    topology: Topology,
    ell: CouplingScale<T>,
    box_length: T,
) -> Result<EnergyResult<T>> {
    require_positive("L", box_length)?;
    let rho = box_length / ell.value();
    let ln_eta = asymptotic_ln_eta(topology, rho).ok_or(Error::UnsupportedTopology(topology))?;
    let eta = ln_eta.exp();
    // s - 1 = eta / (1 + s)
    let excess = eta / (T::one() + (T::one() + eta).sqrt());
    let report = SolverReport {
        iterations: 0,
        residual: T::zero(),
        bracket: (T::one() + excess, T::one() + excess),
    };
    Ok(EnergyResult::from_excess(
        topology,
        ell,
        rho,
        excess,
        Some(ln_eta),
        eta == T::zero(),
        report,
    ))
}

/// Relative shift `(|E_full| - |E_base|) / |E_base|`.
pub fn eta<T: Real>(full: &EnergyResult<T>, baseline: &EnergyResult<T>) -> Result<T> {
    if full.ell != baseline.ell {
        return Err(Error::ScaleMismatch {
            a: full.ell.as_f64(),
            b: baseline.ell.as_f64(),
        });
    }
    require_positive("baseline.e_tilde_abs", baseline.e_tilde_abs)?;
    let (df, db) = (full.excess, baseline.excess);
    let sb = T::one() + db;
    Ok((df - db) * (T::lit(2.0) + df + db) / (sb * sb))
}

/// Per-sample coefficient estimate of the leading correction.
pub(crate) fn cgamma_estimator<T: Real>(dimension: u8, rho: T, ln_eta: T) -> T {
    match dimension {
        1 => (ln_eta + rho).exp(),
        _ => (ln_eta + rho).exp() * rho / T::lit(2.0),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CgammaEstimate<T> {
    pub topology: Topology,
    /// Estimator at the largest sampled `rho`.
    pub estimate: T,
    /// `(max - min) / estimate` over the samples.
    pub spread: T,
    /// `estimate / c_gamma()`; close to one in the asymptotic window.
    pub normalized: T,
    pub samples: Vec<(T, T)>,
}

/// Estimates the correction coefficient from solved roots at `rho_samples`
/// with `(u - 1) rho e^rho / 2` in 3D and `(u - 1) e^rho` on the circle.
pub fn extract_cgamma<T: Real>(
    topology: Topology,
    rho_samples: &[T],
    spec: &LatticeSumSpec,
    tol: T,
) -> Result<CgammaEstimate<T>> {
    let nominal = topology
        .c_gamma()
        .ok_or(Error::UnsupportedTopology(topology))?;
    if rho_samples.len() < 3 {
        return Err(Error::InsufficientSamples {
            needed: 3,
            got: rho_samples.len(),
        });
    }
    let ell = CouplingScale::new(T::one())?;
    let mut samples = Vec::with_capacity(rho_samples.len());
    for &rho in rho_samples {
        let r = solve(topology, ell, rho, spec, tol)?;
        let ln_eta = r.ln_eta.expect("compact topology has a shift");
        samples.push((rho, cgamma_estimator(topology.dimension(), rho, ln_eta)));
    }
    let (_, estimate) = *samples
        .iter()
        .max_by(|a, b| a.0.partial_cmp(&b.0).expect("finite rho"))
        .expect("at least three samples");
    let lo = samples.iter().map(|p| p.1).fold(T::infinity(), T::min);
    let hi = samples.iter().map(|p| p.1).fold(T::neg_infinity(), T::max);
    let spread = (hi - lo) / estimate.abs();
    if spread > T::lit(0.05) {
        return Err(Error::WindowTooNarrow {
            spread: spread.as_f64(),
        });
    }
    Ok(CgammaEstimate {
        topology,
        estimate,
        spread,
        normalized: estimate / T::lit(nominal),
        samples,
    })
}
