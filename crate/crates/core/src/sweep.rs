//! Scale-factor sweeps of the energy shift, crossover search and coefficient
//! extraction campaigns.

use rayon::prelude::*;
use serde::Serialize;

use crate::cosmology::{box_length_with, BoxConvention, CosmologyParams, DEFAULT_REL_TOL};
use crate::error::{require_positive, Error, Result};
use crate::lattice::LatticeSumSpec;
use crate::spectra::{
    extract_cgamma, solve, CgammaEstimate, CouplingScale, EnergyResult, Topology,
};
use crate::Real;

/// Bohr radius in meters, the default coupling length.
pub const BOHR_RADIUS: f64 = 0.529e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig<T> {
    pub a_min: T,
    pub a_max: T,
    pub n_points: usize,
    pub topologies: Vec<Topology>,
    /// Coupling length in meters.
    pub ell: CouplingScale<T>,
    pub cosmology: CosmologyParams<T>,
    pub spec: LatticeSumSpec,
    pub tol: T,
    pub convention: BoxConvention,
}

impl<T: Real> SweepConfig<T> {
    /// Log grid over `[a_min, a_max]` for the circle, E1 and E2 with the
    /// default coupling, cosmology and lattice policy.
    pub fn new(a_min: T, a_max: T, n_points: usize) -> Self {
        Self {
            a_min,
            a_max,
            n_points,
            topologies: vec![Topology::Circle, Topology::E1Torus, Topology::E2HalfTurn],
            ell: CouplingScale::new(T::lit(BOHR_RADIUS)).expect("positive literal"),
            cosmology: CosmologyParams::planck2018(),
            spec: LatticeSumSpec::default(),
            tol: T::lit(1e-12),
            convention: BoxConvention::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("a_min", self.a_min)?;
        require_positive("tol", self.tol)?;
        if !(self.a_min < self.a_max && self.a_max <= T::one()) {
            return Err(Error::InvalidConfig(format!(
                "need 0 < a_min < a_max <= 1, got [{}, {}]",
                self.a_min, self.a_max
            )));
        }
        if self.n_points < 2 {
            return Err(Error::InvalidConfig(format!(
                "n_points must be at least 2, got {}",
                self.n_points
            )));
        }
        if self.topologies.is_empty() {
            return Err(Error::InvalidConfig("no topologies selected".into()));
        }
        self.cosmology.validate()?;
        self.spec.validate()
    }

    /// Log-spaced scale factors; the endpoints are reproduced exactly.
    pub fn grid(&self) -> Vec<T> {
        let (l0, l1) = (self.a_min.ln(), self.a_max.ln());
        let last = self.n_points - 1;
        (0..self.n_points)
            .map(|i| match i {
                0 => self.a_min,
                i if i == last => self.a_max,
                i => (l0 + (l1 - l0) * T::count(i as u64) / T::count(last as u64)).exp(),
            })
            .collect()
    }

    fn box_length(&self, a: T) -> Result<T> {
        box_length_with(a, &self.cosmology, self.convention, T::lit(DEFAULT_REL_TOL))
    }

    fn solve_at(&self, topology: Topology, box_length: T) -> Result<EnergyResult<T>> {
        solve(topology, self.ell, box_length, &self.spec, self.tol)
    }
}

/// One topology's values in a sweep row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepEntry<T> {
    pub topology: Topology,
    pub s: Option<T>,
    pub e_tilde_abs: Option<T>,
    pub eta: Option<T>,
    pub ln_eta: Option<T>,
    pub clamped: bool,
    /// `"ok"` or the kind of the error that stopped this entry.
    pub status: String,
}

impl<T: Real> SweepEntry<T> {
    fn from_result(topology: Topology, r: Result<EnergyResult<T>>) -> Self {
        match r {
            Ok(r) => Self {
                topology,
                s: Some(r.s),
                e_tilde_abs: Some(r.e_tilde_abs),
                eta: Some(r.eta_vs_free),
                ln_eta: r.ln_eta,
                clamped: r.underflow_clamped,
                status: "ok".into(),
            },
            Err(e) => Self::failed(topology, &e),
        }
    }

    fn failed(topology: Topology, e: &Error) -> Self {
        Self {
            topology,
            s: None,
            e_tilde_abs: None,
            eta: None,
            ln_eta: None,
            clamped: false,
            status: e.kind().into(),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow<T> {
    pub a: T,
    /// Box side in meters; `None` when the horizon could not be evaluated.
    pub box_length: Option<T>,
    pub rho: Option<T>,
    pub entries: Vec<SweepEntry<T>>,
}

impl<T: Real> SweepRow<T> {
    pub fn entry(&self, topology: Topology) -> Option<&SweepEntry<T>> {
        self.entries.iter().find(|e| e.topology == topology)
    }
}

fn sweep_row<T: Real>(config: &SweepConfig<T>, a: T) -> SweepRow<T> {
    match config.box_length(a) {
        Ok(l) => SweepRow {
            a,
            box_length: Some(l),
            rho: Some(l / config.ell.value()),
            entries: config
                .topologies
                .iter()
                .map(|&t| SweepEntry::from_result(t, config.solve_at(t, l)))
                .collect(),
        },
        Err(e) => SweepRow {
            a,
            box_length: None,
            rho: None,
            entries: config
                .topologies
                .iter()
                .map(|&t| SweepEntry::failed(t, &e))
                .collect(),
        },
    }
}

/// Evaluates every grid point, in ascending `a`. Rows are computed in
/// parallel; failures are recorded per entry instead of aborting.
pub fn run_sweep<T: Real>(config: &SweepConfig<T>) -> Result<Vec<SweepRow<T>>> {
    config.validate()?;
    Ok(config
        .grid()
        .into_par_iter()
        .map(|a| sweep_row(config, a))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Crossover<T> {
    pub topology: Topology,
    pub eta_target: T,
    /// Scale factor where the shift equals the target.
    pub a: T,
    /// Final bracket on `a`.
    pub bracket: (T, T),
    pub box_length: T,
    pub l_p: T,
    pub rho: T,
    pub eta: T,
}

const CROSSOVER_REL_WIDTH: f64 = 1e-3;

/// Finds `a*` with `eta(a*) = eta_target` by bisection in `ln a` over the
/// config's range. The shift decreases with `a`, so the target must lie
/// between `eta(a_max)` and `eta(a_min)`.
pub fn find_crossover<T: Real>(
    topology: Topology,
    eta_target: T,
    config: &SweepConfig<T>,
) -> Result<Crossover<T>> {
    config.validate()?;
    require_positive("eta_target", eta_target)?;
    if !topology.is_compact() {
        return Err(Error::UnsupportedTopology(topology));
    }
    let ln_eta_at = |a: T| -> Result<T> {
        let r = config.solve_at(topology, config.box_length(a)?)?;
        Ok(r.ln_eta.expect("compact topology has a shift"))
    };
    let target = eta_target.ln();
    let (mut lo, mut hi) = (config.a_min, config.a_max);
    let (f_lo, f_hi) = (ln_eta_at(lo)?, ln_eta_at(hi)?);
    if !(target <= f_lo && target >= f_hi) {
        return Err(Error::TargetOutOfRange {
            target: eta_target.as_f64(),
            min: f_hi.exp().as_f64(),
            max: f_lo.exp().as_f64(),
        });
    }
    while hi / lo - T::one() > T::lit(CROSSOVER_REL_WIDTH) {
        let mid = (lo.ln() + (hi.ln() - lo.ln()) / T::lit(2.0)).exp();
        if !(mid > lo && mid < hi) {
            break;
        }
        if ln_eta_at(mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let a = (lo * hi).sqrt();
    let l = config.box_length(a)?;
    let r = config.solve_at(topology, l)?;
    Ok(Crossover {
        topology,
        eta_target,
        a,
        bracket: (lo, hi),
        box_length: l,
        l_p: l / T::lit(config.convention.factor()),
        rho: r.rho,
        eta: r.eta_vs_free,
    })
}

/// Runs [`extract_cgamma`] for each topology on `n_samples` evenly spaced
/// `rho` values across `rho_window`.
pub fn cgamma_campaign<T: Real>(
    topologies: &[Topology],
    rho_window: (T, T),
    n_samples: usize,
    spec: &LatticeSumSpec,
    tol: T,
) -> Result<Vec<CgammaEstimate<T>>> {
    let (lo, hi) = rho_window;
    if !(lo >= T::lit(15.0) && hi <= T::lit(40.0) && lo < hi) {
        return Err(Error::WindowOutOfRange {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        });
    }
    if n_samples < 3 {
        return Err(Error::InsufficientSamples {
            needed: 3,
            got: n_samples,
        });
    }
    let last = T::count(n_samples as u64 - 1);
    let rhos: Vec<T> = (0..n_samples)
        .map(|i| lo + (hi - lo) * T::count(i as u64) / last)
        .collect();
    topologies
        .par_iter()
        .map(|&t| extract_cgamma(t, &rhos, spec, tol))
        .collect()
}
