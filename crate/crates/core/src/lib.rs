//! Bound-state energy shifts of a renormalized delta potential on compact
//! flat spaces, and their mapping onto cosmic epochs.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the common choices.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod cosmology;
pub mod error;
pub mod lattice;
mod scalar;
pub mod spectra;
pub mod sum;
pub mod sweep;

pub use error::{Error, Result};
pub use scalar::Real;

pub use cosmology::{
    box_length, hubble, particle_horizon, BoxConvention, CosmologyParams, HorizonResult,
};
pub use lattice::{
    LatticeSumSpec, ModeSet, ModeVector, RegularizedDomain, RegularizedSumReport, SumMode,
};
pub use spectra::{
    asymptotic_energy, eta, extract_cgamma, solve, CgammaEstimate, CouplingScale,
    DimensionlessState, EnergyResult, Topology,
};
pub use sweep::{
    cgamma_campaign, find_crossover, run_sweep, Crossover, SweepConfig, SweepEntry, SweepRow,
};

pub type EnergyResult64 = EnergyResult<f64>;
pub type EnergyResult32 = EnergyResult<f32>;
pub type CouplingScale64 = CouplingScale<f64>;
pub type CosmologyParams64 = CosmologyParams<f64>;
pub type HorizonResult64 = HorizonResult<f64>;
pub type SweepConfig64 = SweepConfig<f64>;
pub type SweepRow64 = SweepRow<f64>;
pub type RegularizedSumReport64 = RegularizedSumReport<f64>;
pub type CgammaEstimate64 = CgammaEstimate<f64>;
