//! Explicit solution of the spherical collapse equation `R'' = -k R^γ`
//! through the quantile function of the beta distribution.

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod approx;
pub mod collapse;
pub mod error;
pub mod refode;
pub mod scenarios;
pub mod series;
pub mod specfun;
pub mod symmetry;

pub use collapse::{
    closed_form, collapse_time, energy_residual, energy_residual_relative, evaluate_extended,
    make_gamma, potential, rdot_at_collapse, CollapseSolution, EnergyState, GammaParam, Regime,
    Velocity, DEFAULT_CRITICAL_BAND,
};
pub use error::{Error, Result};
pub use series::{Sample, SampleSeries, Source};
