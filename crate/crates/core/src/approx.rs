//! Polynomial approximations of the collapse curve, with `x = t/τ`:
//!
//! ```text
//! r̃ = (1 - x²)^p                          γ <= -1
//! r̃ = q(1-|x|) - (q-1)(1-|x|)^{q/(q-1)}    γ > -1
//! ```

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::collapse::{collapse_time, CollapseSolution, GammaParam, Regime};
use crate::error::{Error, Result};
use crate::specfun::beta_complete;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `(1 - x²)^p`, for `γ <= -1`.
    PowerLaw,
    /// Two-term form in `1 - |x|`, for `γ > -1`.
    TwoTerm,
}

/// Rule for choosing the shape parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    /// `p = 2/(1-γ)`: correct `ṙ(r)` asymptote at the collapse, `γ < -1`.
    P1,
    /// `p = τ²/2`: correct `r''(0) = -1`, `γ <= -1`.
    P2,
    /// `q = η B(η, 1/2)`: correct collapse velocity, `γ > -1`.
    Q1,
    /// `q = τ²/(τ² - 1)`: correct `r''(0) = -1`, `γ > -1`.
    Q2,
}

impl Shape {
    pub fn name(&self) -> &'static str {
        match self {
            Shape::P1 => "p1",
            Shape::P2 => "p2",
            Shape::Q1 => "q1",
            Shape::Q2 => "q2",
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Shape {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "p1" => Ok(Shape::P1),
            "p2" => Ok(Shape::P2),
            "q1" => Ok(Shape::Q1),
            "q2" => Ok(Shape::Q2),
            other => Err(format!(
                "unknown shape `{other}`, expected p1, p2, q1 or q2"
            )),
        }
    }
}

/// A resolved approximation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ApproxSpec {
    gamma: f64,
    branch: Branch,
    shape: Shape,
    value: f64,
    tau: f64,
}

impl ApproxSpec {
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// The resolved `p` or `q`.
    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    fn check_time(&self, op: &'static str, t: f64) -> Result<f64> {
        let x = t.abs() / self.tau;
        if !(x <= 1.0) {
            return Err(Error::domain(
                op,
                format!("|t| must not exceed tau = {}, got t = {t}", self.tau),
            ));
        }
        Ok(x)
    }

    /// `1 - r̃(t)`, accurate near `t = 0` where `r̃` rounds to 1.
    pub fn deficit(&self, t: f64) -> Result<f64> {
        let x = self.check_time("approx_deficit", t)?;
        Ok(match self.branch {
            Branch::PowerLaw => -(self.value * (-x * x).ln_1p()).exp_m1(),
            Branch::TwoTerm => {
                let q = self.value;
                let k = q / (q - 1.0);
                (q - 1.0) * (k * (-x).ln_1p()).exp_m1() + q * x
            }
        })
    }

    /// `dr̃/dt`.
    pub fn derivative(&self, t: f64) -> Result<f64> {
        let x = self.check_time("approx_derivative", t)?;
        let sign = if t > 0.0 {
            1.0
        } else if t < 0.0 {
            -1.0
        } else {
            0.0
        };
        let slope = match self.branch {
            Branch::PowerLaw => {
                let p = self.value;
                if x == 1.0 {
                    if p < 1.0 {
                        f64::INFINITY
                    } else if p == 1.0 {
                        2.0
                    } else {
                        0.0
                    }
                } else {
                    2.0 * p * x * ((p - 1.0) * (-x * x).ln_1p()).exp()
                }
            }
            Branch::TwoTerm => {
                let q = self.value;
                q * (1.0 - (1.0 - x).powf(1.0 / (q - 1.0)))
            }
        };
        Ok(-sign * slope / self.tau + 0.0)
    }
}

/// Resolves `shape` for `γ`, rejecting shapes outside their regime.
pub fn resolve_shape(gamma: f64, shape: Shape) -> Result<ApproxSpec> {
    let param = GammaParam::new(gamma)?;
    let tau = collapse_time(&param)?;
    let regime = param.regime();
    let incompatible = |msg: &'static str| Error::IncompatibleShape {
        shape: shape.name(),
        gamma,
        msg,
    };
    let (branch, value) = match shape {
        Shape::P1 => {
            if regime != Regime::Subcritical {
                return Err(incompatible("p1 is defined only for gamma < -1"));
            }
            (Branch::PowerLaw, 2.0 / (1.0 - gamma))
        }
        Shape::P2 => {
            if regime == Regime::Supercritical {
                return Err(incompatible("p2 is defined only for gamma <= -1"));
            }
            (Branch::PowerLaw, 0.5 * tau * tau)
        }
        Shape::Q1 => {
            if regime != Regime::Supercritical {
                return Err(incompatible("q1 is defined only for gamma > -1"));
            }
            let eta = param.eta();
            (Branch::TwoTerm, eta * beta_complete(eta, 0.5)?)
        }
        Shape::Q2 => {
            if regime != Regime::Supercritical {
                return Err(incompatible("q2 is defined only for gamma > -1"));
            }
            let tau2 = tau * tau;
            (Branch::TwoTerm, tau2 / (tau2 - 1.0))
        }
    };
    let in_range = match branch {
        Branch::PowerLaw => value > 0.0 && value < 1.0,
        Branch::TwoTerm => value > 1.0 && value.is_finite(),
    };
    if !in_range {
        return Err(incompatible(
            "resolved shape parameter is outside its admissible range",
        ));
    }
    Ok(ApproxSpec {
        gamma,
        branch,
        shape,
        value,
        tau,
    })
}

/// `r̃(t)` on `[-τ, τ]`.
pub fn evaluate_approx(spec: &ApproxSpec, t: f64) -> Result<f64> {
    let x = spec.check_time("evaluate_approx", t)?;
    Ok(match spec.branch {
        Branch::PowerLaw => {
            if x == 1.0 {
                0.0
            } else {
                (spec.value * (-x * x).ln_1p()).exp()
            }
        }
        Branch::TwoTerm => {
            let q = spec.value;
            let u = 1.0 - x;
            q * u - (q - 1.0) * u.powf(q / (q - 1.0))
        }
    })
}

/// Error of an approximation against the exact solution on a uniform grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ApproxErrorReport {
    pub gamma: f64,
    pub shape: Shape,
    pub value: f64,
    pub n_grid: usize,
    pub max_abs_err: f64,
    pub rms_err: f64,
}

/// Compares `r̃` with the exact `r` at `n_grid` uniform points on `[0, τ]`.
pub fn approx_error_report(gamma: f64, shape: Shape, n_grid: usize) -> Result<ApproxErrorReport> {
    if n_grid < 2 {
        return Err(Error::domain(
            "approx_error_report",
            format!("n_grid must be at least 2, got {n_grid}"),
        ));
    }
    let spec = resolve_shape(gamma, shape)?;
    let sol = CollapseSolution::new(gamma)?;
    let mut max_abs: f64 = 0.0;
    let mut sum_sq = 0.0;
    for i in 0..n_grid {
        let t = grid_time(sol.tau(), i, n_grid);
        let d = evaluate_approx(&spec, t)? - sol.evaluate_r(t)?;
        max_abs = max_abs.max(d.abs());
        sum_sq += d * d;
    }
    Ok(ApproxErrorReport {
        gamma,
        shape,
        value: spec.value,
        n_grid,
        max_abs_err: max_abs,
        rms_err: (sum_sq / n_grid as f64).sqrt(),
    })
}

/// `i`-th of `n` uniform points on `[0, τ]`, with the last one exactly `τ`.
pub(crate) fn grid_time(tau: f64, i: usize, n: usize) -> f64 {
    if i + 1 == n {
        tau
    } else {
        tau * (i as f64 / (n - 1) as f64)
    }
}
