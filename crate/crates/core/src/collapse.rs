//! Dimensionless solutions of `r'' = -r^γ` with `r(0) = 1`, `r'(0) = 0`.
//!
//! On `|t| <= τ` the radius is
//!
//! ```text
//! r(t) = Q(1 - |t|/τ; α, 1/2)^η            γ ≠ -1
//! r(t) = exp(-erfc⁻¹(1 - |t|/τ)²)           γ = -1
//! ```
//!
//! with `η = 1/|1+γ|`, `α = η` above the critical exponent and `α = η + 1/2`
//! below it, and `τ = √(η/2)·B(α, 1/2)`.

use std::f64::consts::{FRAC_PI_2, SQRT_2};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::specfun::{
    inv_erfc, inv_reg_inc_beta_split, jacobi_cn, log_beta, reg_inc_beta_pair, AccuracyPolicy,
};

/// Default half-width of the band around `γ = -1` handled by the error
/// function branch.
pub const DEFAULT_CRITICAL_BAND: f64 = 1e-6;

/// Which side of the critical exponent `γ = -1` a problem lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `γ < -1`: the collapse velocity diverges.
    Subcritical,
    /// `γ = -1` within the critical band.
    Critical,
    /// `γ > -1`: the collapse velocity stays finite.
    Supercritical,
}

/// The exponent `γ` with its derived constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaParam {
    gamma: f64,
    eta: f64,
    alpha: f64,
    regime: Regime,
}

impl GammaParam {
    /// Uses [`DEFAULT_CRITICAL_BAND`].
    pub fn new(gamma: f64) -> Result<Self> {
        make_gamma(gamma, DEFAULT_CRITICAL_BAND)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `η = 1/|1+γ|`; infinite at `γ = -1` exactly and unused by the
    /// critical branch.
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// First shape parameter of the beta quantile.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn is_critical(&self) -> bool {
        self.regime == Regime::Critical
    }
}

/// Builds a [`GammaParam`], classifying `|γ + 1| < critical_band` as
/// critical.
pub fn make_gamma(gamma: f64, critical_band: f64) -> Result<GammaParam> {
    if !gamma.is_finite() {
        return Err(Error::domain(
            "make_gamma",
            format!("gamma must be finite, got {gamma}"),
        ));
    }
    if !(critical_band > 0.0 && critical_band.is_finite()) {
        return Err(Error::domain(
            "make_gamma",
            format!("critical band must be positive, got {critical_band}"),
        ));
    }
    let offset = 1.0 + gamma;
    let eta = 1.0 / offset.abs();
    let alpha = if offset < 0.0 { eta + 0.5 } else { eta };
    let regime = if offset.abs() < critical_band {
        Regime::Critical
    } else if offset < 0.0 {
        Regime::Subcritical
    } else {
        Regime::Supercritical
    };
    Ok(GammaParam {
        gamma,
        eta,
        alpha,
        regime,
    })
}

/// Dimensionless collapse time `τ(γ)`.
///
/// Inside the critical band `τ = √(π/2)·(1 + (γ+1)/8)`, the first-order
/// expansion about `γ = -1`, which joins the general formula at the band
/// edges.
pub fn collapse_time(param: &GammaParam) -> Result<f64> {
    let critical = FRAC_PI_2.sqrt();
    if param.is_critical() {
        return Ok(critical * (1.0 + 0.125 * (1.0 + param.gamma)));
    }
    let ln_tau = 0.5 * (0.5 * param.eta).ln() + log_beta(param.alpha, 0.5)?;
    let tau = ln_tau.exp();
    if tau == 0.0 || !tau.is_finite() {
        return Err(Error::Overflow {
            op: "collapse_time",
            msg: format!(
                "tau = exp({ln_tau}) is not representable for gamma = {}",
                param.gamma
            ),
        });
    }
    Ok(tau)
}

/// A velocity that may diverge at the collapse point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Velocity {
    Finite(f64),
    NegInfinity,
    PosInfinity,
}

impl Velocity {
    fn from_f64(v: f64) -> Self {
        if v == f64::NEG_INFINITY {
            Velocity::NegInfinity
        } else if v == f64::INFINITY {
            Velocity::PosInfinity
        } else {
            Velocity::Finite(v)
        }
    }

    pub fn as_f64(&self) -> f64 {
        match *self {
            Velocity::Finite(v) => v,
            Velocity::NegInfinity => f64::NEG_INFINITY,
            Velocity::PosInfinity => f64::INFINITY,
        }
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            Velocity::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Velocity::Finite(_))
    }
}

impl fmt::Display for Velocity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Velocity::Finite(v) => write!(f, "{v}"),
            Velocity::NegInfinity => f.write_str("-INF"),
            Velocity::PosInfinity => f.write_str("INF"),
        }
    }
}

/// Finite values serialize as numbers, divergent ones as `"-INF"`/`"INF"`.
impl Serialize for Velocity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Velocity::Finite(v) => serializer.serialize_f64(*v),
            Velocity::NegInfinity => serializer.serialize_str("-INF"),
            Velocity::PosInfinity => serializer.serialize_str("INF"),
        }
    }
}

/// Velocity at the collapse point: `-√(2/(1+γ))` above the critical
/// exponent, divergent otherwise.
pub fn rdot_at_collapse(param: &GammaParam) -> Velocity {
    match param.regime {
        Regime::Supercritical => Velocity::Finite(-(2.0 / (1.0 + param.gamma)).sqrt()),
        _ => Velocity::NegInfinity,
    }
}

/// Radius and velocity at a time, plus the potential and Lagrangian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyState {
    pub r: f64,
    pub rdot: Velocity,
    pub phi: f64,
    pub lagrangian: f64,
}

/// A fully specified dimensionless problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollapseSolution {
    param: GammaParam,
    tau: f64,
    policy: AccuracyPolicy,
}

/// Radius at a time, with the pieces needed for an accurate velocity.
struct Point {
    r: f64,
    // Q for the beta branch, erfc⁻¹ argument for the critical one
    q: f64,
    q_complement: f64,
}

impl CollapseSolution {
    pub fn new(gamma: f64) -> Result<Self> {
        Self::from_param(GammaParam::new(gamma)?)
    }

    pub fn from_param(param: GammaParam) -> Result<Self> {
        Self::with_policy(param, AccuracyPolicy::default())
    }

    pub fn with_policy(param: GammaParam, policy: AccuracyPolicy) -> Result<Self> {
        let tau = collapse_time(&param)?;
        Ok(Self { param, tau, policy })
    }

    pub fn param(&self) -> &GammaParam {
        &self.param
    }

    pub fn gamma(&self) -> f64 {
        self.param.gamma
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    fn check_time(&self, op: &'static str, t: f64) -> Result<f64> {
        let at = t.abs();
        if at.is_nan() || at > self.tau {
            let hint = if is_odd_positive_integer(self.param.gamma) {
                "; use evaluate_extended beyond the collapse"
            } else {
                ""
            };
            return Err(Error::domain(
                op,
                format!("|t| must not exceed tau = {}, got t = {t}{hint}", self.tau),
            ));
        }
        Ok(at)
    }

    fn point(&self, at: f64) -> Result<Point> {
        // fraction of the collapse still ahead, and the elapsed fraction
        let ahead = (self.tau - at) / self.tau;
        let elapsed = at / self.tau;
        if self.param.is_critical() {
            if ahead == 0.0 {
                return Ok(Point {
                    r: 0.0,
                    q: f64::INFINITY,
                    q_complement: 0.0,
                });
            }
            let x = inv_erfc(ahead)?;
            return Ok(Point {
                r: (-x * x).exp(),
                q: x,
                q_complement: 0.0,
            });
        }
        let qt = inv_reg_inc_beta_split(ahead, elapsed, self.param.alpha, 0.5, &self.policy)?;
        let r = if qt.x() == 0.0 {
            0.0
        } else {
            (self.param.eta * qt.ln_x()).exp()
        };
        Ok(Point {
            r,
            q: qt.x(),
            q_complement: qt.complement(),
        })
    }

    /// `r(t)` on `[-τ, τ]`; even in `t`, with `r(0) = 1` and `r(±τ) = 0`.
    pub fn evaluate_r(&self, t: f64) -> Result<f64> {
        let at = self.check_time("evaluate_r", t)?;
        Ok(self.point(at)?.r)
    }

    /// `t(r)` on the collapse branch `t >= 0`.
    pub fn evaluate_t(&self, r: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::domain(
                "evaluate_t",
                format!("r must lie in [0, 1], got {r}"),
            ));
        }
        if r == 1.0 {
            return Ok(0.0);
        }
        if r == 0.0 {
            return Ok(self.tau);
        }
        let ln_r = r.ln();
        if self.param.is_critical() {
            return Ok(self.tau * crate::specfun::erf((-ln_r).sqrt()));
        }
        // s = r^|1+γ| with its complement
        let w = ln_r / self.param.eta;
        let (s, s_complement) = (w.exp(), -w.exp_m1());
        let (_, upper) = reg_inc_beta_pair(s, s_complement, self.param.alpha, 0.5, &self.policy)?;
        Ok(self.tau * upper)
    }

    fn velocity(&self, t: f64, p: &Point) -> Velocity {
        if t == 0.0 {
            return Velocity::Finite(0.0);
        }
        let speed = if self.param.is_critical() {
            // time rescaled onto the γ = -1 solution
            SQRT_2 * p.q * FRAC_PI_2.sqrt() / self.tau
        } else if self.param.gamma > -1.0 {
            // r^{1+γ} = Q
            (2.0 * p.q_complement / (1.0 + self.param.gamma)).sqrt()
        } else {
            // r^{1+γ} = 1/Q
            (2.0 * p.q_complement / (p.q * -(1.0 + self.param.gamma))).sqrt()
        };
        Velocity::from_f64(if t > 0.0 { -speed } else { speed })
    }

    /// `ṙ(t)` from the integral of motion; divergent at `±τ` for `γ <= -1`.
    pub fn evaluate_rdot(&self, t: f64) -> Result<Velocity> {
        let at = self.check_time("evaluate_rdot", t)?;
        let p = self.point(at)?;
        Ok(self.velocity(t, &p))
    }

    /// `(r, ṙ)` together, sharing the quantile evaluation.
    pub fn evaluate_r_rdot(&self, t: f64) -> Result<(f64, Velocity)> {
        let at = self.check_time("evaluate_r", t)?;
        let p = self.point(at)?;
        Ok((p.r, self.velocity(t, &p)))
    }

    /// Energy bookkeeping at `t`; requires `r(t) > 0`.
    pub fn evaluate_state(&self, t: f64) -> Result<EnergyState> {
        let (r, rdot) = self.evaluate_r_rdot(t)?;
        let phi = potential(&self.param, r)?;
        let v = rdot.as_f64();
        Ok(EnergyState {
            r,
            rdot,
            phi,
            lagrangian: 0.5 * v * v - phi,
        })
    }
}

/// Potential `φ(r) = r^{1+γ}/(1+γ)`, or `ln r` at the critical exponent.
pub fn potential(param: &GammaParam, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::domain(
            "potential",
            format!("r must be positive, got {r}"),
        ));
    }
    if param.is_critical() {
        return Ok(r.ln());
    }
    let g1 = 1.0 + param.gamma;
    Ok((g1 * r.ln()).exp() / g1)
}

fn check_residual_args(r: f64) -> Result<()> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::domain(
            "energy_residual",
            format!("r must lie in (0, 1], got {r}"),
        ));
    }
    Ok(())
}

/// Deviation from the integral of motion: `(1+γ)/2·ṙ² + r^{1+γ} - 1`, or
/// `ṙ² + 2 ln r` at the critical exponent.
pub fn energy_residual(param: &GammaParam, r: f64, rdot: f64) -> Result<f64> {
    check_residual_args(r)?;
    if param.is_critical() {
        return Ok(rdot * rdot + 2.0 * r.ln());
    }
    let g1 = 1.0 + param.gamma;
    Ok(0.5 * g1 * rdot * rdot + (g1 * r.ln()).exp_m1())
}

/// [`energy_residual`] divided by the magnitude of its largest term, so
/// that rounding in `r^{1+γ}` near the collapse does not dominate.
pub fn energy_residual_relative(param: &GammaParam, r: f64, rdot: f64) -> Result<f64> {
    let raw = energy_residual(param, r, rdot)?;
    let scale = if param.is_critical() {
        (rdot * rdot).max((2.0 * r.ln()).abs())
    } else {
        let g1 = 1.0 + param.gamma;
        (0.5 * g1 * rdot * rdot).abs().max((g1 * r.ln()).exp())
    };
    Ok(raw / scale.max(1.0))
}

/// Elementary forms for `γ ∈ {-3, 0, 1, 3}`.
pub fn closed_form(gamma: f64, t: f64) -> Result<f64> {
    if gamma == -3.0 {
        if !(t.abs() <= 1.0) {
            return Err(Error::domain(
                "closed_form",
                format!("|t| must not exceed 1, got {t}"),
            ));
        }
        Ok(((1.0 - t) * (1.0 + t)).sqrt())
    } else if gamma == 0.0 {
        if !(t.abs() <= SQRT_2) {
            return Err(Error::domain(
                "closed_form",
                format!("|t| must not exceed sqrt(2), got {t}"),
            ));
        }
        Ok(1.0 - 0.5 * t * t)
    } else if gamma == 1.0 {
        Ok(t.cos())
    } else if gamma == 3.0 {
        jacobi_cn(t, 0.5)
    } else {
        Err(Error::UnsupportedGamma {
            op: "closed_form",
            gamma,
        })
    }
}

fn is_odd_positive_integer(gamma: f64) -> bool {
    gamma >= 1.0 && gamma.fract() == 0.0 && gamma % 2.0 == 1.0
}

/// Oscillating continuation past the collapse for odd positive integer `γ`,
/// with period `4τ`: `r(τ) = 0`, `r(2τ) = -1`, `r(3τ) = 0`, `r(4τ) = 1`.
pub fn evaluate_extended(gamma: f64, t: f64) -> Result<f64> {
    if !is_odd_positive_integer(gamma) {
        return Err(Error::UnsupportedGamma {
            op: "evaluate_extended",
            gamma,
        });
    }
    if !t.is_finite() {
        return Err(Error::domain(
            "evaluate_extended",
            format!("t must be finite, got {t}"),
        ));
    }
    let sol = CollapseSolution::new(gamma)?;
    let tau = sol.tau();
    let u = t.abs().rem_euclid(4.0 * tau);
    if u <= tau {
        sol.evaluate_r(u)
    } else if u <= 2.0 * tau {
        Ok(-sol.evaluate_r((2.0 * tau - u).max(0.0))?)
    } else if u <= 3.0 * tau {
        Ok(-sol.evaluate_r((u - 2.0 * tau).min(tau))?)
    } else {
        sol.evaluate_r((4.0 * tau - u).min(tau))
    }
}
