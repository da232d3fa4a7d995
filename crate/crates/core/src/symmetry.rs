//! Symmetries of the solution family.
//!
//! The collapse-time symmetry pairs `γ` with `-2 - γ` through
//! `τ(γ)·τ(-2-γ) = π/2`. The substitution symmetry `r' = r^δ`,
//! `t' = t√δ` with `δ = (1-γ)/2` maps a solution for `γ < 1` onto one for
//! `γ' = (γ+3)/(γ-1)`. Both leave `γ = -1` fixed.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::collapse::{collapse_time, GammaParam};
use crate::error::{Error, Result};

/// Image of `γ` under the collapse-time symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TauImage {
    pub gamma_prime: f64,
    pub tau_prime: f64,
}

/// `γ' = -2 - γ`, `τ' = π / (2 τ(γ))`.
pub fn tau_symmetry(gamma: f64) -> Result<TauImage> {
    let tau = collapse_time(&GammaParam::new(gamma)?)?;
    if gamma == -1.0 {
        return Ok(TauImage {
            gamma_prime: gamma,
            tau_prime: tau,
        });
    }
    Ok(TauImage {
        gamma_prime: -2.0 - gamma,
        tau_prime: FRAC_PI_2 / tau,
    })
}

/// Image of a point `(t, r)` of the `γ` solution under the substitution
/// symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SubstitutionImage {
    pub gamma_prime: f64,
    pub delta: f64,
    pub time_scale: f64,
    pub t_prime: f64,
    pub r_prime: f64,
}

/// `γ' = (γ+3)/(γ-1)`, `t' = t√δ`, `r' = r^δ` with `δ = (1-γ)/2`.
pub fn general_symmetry(gamma: f64, t: f64, r: f64) -> Result<SubstitutionImage> {
    if !(gamma < 1.0) || !gamma.is_finite() {
        return Err(Error::domain(
            "general_symmetry",
            format!("requires gamma < 1 so that delta > 0, got {gamma}"),
        ));
    }
    if !(0.0..=1.0).contains(&r) || !t.is_finite() {
        return Err(Error::domain(
            "general_symmetry",
            format!("requires finite t and r in [0, 1], got t = {t}, r = {r}"),
        ));
    }
    let delta = 0.5 * (1.0 - gamma);
    let time_scale = delta.sqrt();
    Ok(SubstitutionImage {
        gamma_prime: (gamma + 3.0) / (gamma - 1.0),
        delta,
        time_scale,
        t_prime: t * time_scale,
        r_prime: r.powf(delta),
    })
}
