//! Reference solutions that do not go through the beta quantile: direct
//! integration of `r'' = -r^γ` and the cycloid parametrisation at `γ = -2`.
//!
//! The integrator is the Dormand–Prince 5(4) pair with PI step control.
//! Below the critical exponent the acceleration diverges at the collapse, so
//! the system is integrated in a rescaled time `s` with `dt/ds = r^k`,
//! `k = (1-γ)/2`, which keeps `ln r` roughly linear in `s`.

use serde::Serialize;

use crate::approx::grid_time;
use crate::collapse::{
    closed_form, collapse_time, energy_residual_relative, CollapseSolution, GammaParam, Velocity,
};
use crate::error::{Error, Result};
use crate::series::{Sample, SampleSeries, Source};

const SQRT_8: f64 = 2.828_427_124_746_190_3;

/// Tolerances and limits for [`integrate_reference`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegratorConfig {
    rel_tol: f64,
    abs_tol: f64,
    r_floor: f64,
    max_steps: usize,
    max_step: Option<f64>,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            r_floor: 1e-6,
            max_steps: 1_000_000,
            max_step: None,
        }
    }
}

impl IntegratorConfig {
    pub fn new(rel_tol: f64, abs_tol: f64, r_floor: f64, max_steps: usize) -> Result<Self> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !positive(rel_tol) || !positive(abs_tol) {
            return Err(Error::domain(
                "IntegratorConfig::new",
                format!("tolerances must be positive, got rel {rel_tol}, abs {abs_tol}"),
            ));
        }
        if !(r_floor > 0.0 && r_floor < 0.1) {
            return Err(Error::domain(
                "IntegratorConfig::new",
                format!("r_floor must lie in (0, 0.1), got {r_floor}"),
            ));
        }
        if max_steps == 0 {
            return Err(Error::domain(
                "IntegratorConfig::new",
                "max_steps must be positive",
            ));
        }
        Ok(Self {
            rel_tol,
            abs_tol,
            r_floor,
            max_steps,
            max_step: None,
        })
    }

    /// Caps the step in time, which also bounds the sample spacing.
    pub fn with_max_step(mut self, max_step: f64) -> Result<Self> {
        if !(max_step > 0.0 && max_step.is_finite()) {
            return Err(Error::domain(
                "IntegratorConfig::with_max_step",
                format!("max_step must be positive, got {max_step}"),
            ));
        }
        self.max_step = Some(max_step);
        Ok(self)
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn r_floor(&self) -> f64 {
        self.r_floor
    }

    pub fn max_steps(&self) -> usize {
        self.max_steps
    }

    pub fn max_step(&self) -> Option<f64> {
        self.max_step
    }
}

/// Upper bound on the collapse time that does not use the explicit
/// solution: `τ <= √2` for `γ <= 0`, and `τ < √(1+γ) + 2` above.
pub fn time_horizon(gamma: f64) -> f64 {
    let bound = if gamma <= 0.0 {
        std::f64::consts::SQRT_2
    } else {
        (1.0 + gamma).sqrt() + 2.0
    };
    1.2 * bound
}

// Dormand–Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

type State = [f64; 3];

fn axpy(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..3 {
            out[i] += h * c * k[i];
        }
    }
    out
}

/// `(t, r, v)` in the rescaled time `s`.
struct Rhs {
    gamma: f64,
    k: f64,
}

impl Rhs {
    fn eval(&self, y: &State) -> State {
        let r = y[1];
        let v = y[2];
        if !(r > 0.0) {
            return [f64::NAN; 3];
        }
        if self.k == 0.0 {
            [1.0, v, -r.powf(self.gamma)]
        } else {
            let rk = r.powf(self.k);
            [rk, v * rk, -r.powf(self.gamma + self.k)]
        }
    }
}

/// Integrates `r'' = -r^γ` from `(r, ṙ) = (1, 0)` until `r <= r_floor` or
/// `t` passes [`time_horizon`]. Samples are the accepted steps, strictly
/// increasing in `t`, all with `r >= r_floor`.
pub fn integrate_reference(gamma: f64, config: &IntegratorConfig) -> Result<SampleSeries> {
    if !gamma.is_finite() {
        return Err(Error::domain(
            "integrate_reference",
            format!("gamma must be finite, got {gamma}"),
        ));
    }
    let horizon = time_horizon(gamma);
    let rhs = Rhs {
        gamma,
        k: if gamma <= -1.0 {
            0.5 * (1.0 - gamma)
        } else {
            0.0
        },
    };
    let max_step = config.max_step.unwrap_or(horizon / 20.0);

    let mut y: State = [0.0, 1.0, 0.0];
    let mut samples = vec![Sample {
        t: 0.0,
        r: 1.0,
        rdot: Velocity::Finite(0.0),
        source: Source::Oracle,
    }];
    let mut h = max_step.min(1e-3);
    let mut k1 = rhs.eval(&y);
    let mut err_prev: f64 = 1e-4;
    let mut steps = 0usize;

    loop {
        steps += 1;
        if steps > config.max_steps {
            return Err(Error::StepFailure {
                t: y[0],
                msg: format!("exceeded {} steps", config.max_steps),
            });
        }
        if h < 1e-15 * (1.0 + y[0].abs()) {
            return Err(Error::StepFailure {
                t: y[0],
                msg: format!("step size underflow at r = {}", y[1]),
            });
        }

        let k2 = rhs.eval(&axpy(&y, h, &[(A21, &k1)]));
        let k3 = rhs.eval(&axpy(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = rhs.eval(&axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = rhs.eval(&axpy(
            &y,
            h,
            &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)],
        ));
        let k6 = rhs.eval(&axpy(
            &y,
            h,
            &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
        ));
        let y_new = axpy(
            &y,
            h,
            &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
        );
        let k7 = rhs.eval(&y_new);

        let mut err: f64 = 0.0;
        for i in 0..3 {
            let e =
                h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let scale = config.abs_tol + config.rel_tol * y[i].abs().max(y_new[i].abs());
            err = err.max((e / scale).abs());
        }
        if !err.is_finite() || y_new.iter().chain(k7.iter()).any(|v| !v.is_finite()) {
            // stepped past r = 0
            h *= 0.25;
            continue;
        }

        if err <= 1.0 {
            let fac = 0.9 * err.max(1e-10).powf(-0.7 / 5.0) * err_prev.powf(0.4 / 5.0);
            let grown = h * fac.clamp(0.2, 5.0);
            err_prev = err.max(1e-4);
            y = y_new;
            k1 = k7;
            if y[1] < config.r_floor || y[0] > horizon {
                break;
            }
            if y[0] > samples.last().map_or(0.0, |s| s.t) {
                samples.push(Sample {
                    t: y[0],
                    r: y[1],
                    rdot: Velocity::Finite(y[2]),
                    source: Source::Oracle,
                });
            }
            // dt/ds <= 1, so capping s also caps t
            h = grown.min(max_step);
        } else {
            let fac = 0.9 * err.powf(-0.2);
            h *= fac.clamp(0.1, 0.9);
        }
    }
    Ok(SampleSeries { gamma, samples })
}

/// The integrated reference at `n` uniform times on `[0, τ]`, by cubic
/// Hermite interpolation between accepted steps. Times past the last step
/// (where `r` fell below the floor) are omitted.
pub fn oracle_series(gamma: f64, n: usize, config: &IntegratorConfig) -> Result<SampleSeries> {
    if n < 2 {
        return Err(Error::domain(
            "oracle_series",
            format!("need at least 2 samples, got {n}"),
        ));
    }
    let tau = collapse_time(&GammaParam::new(gamma)?)?;
    let config = match config.max_step {
        Some(_) => *config,
        None => config.with_max_step(tau / n as f64)?,
    };
    let steps = integrate_reference(gamma, &config)?.samples;
    let last = steps[steps.len() - 1].t;
    let mut samples = Vec::with_capacity(n);
    let mut j = 0;
    for i in 0..n {
        let t = grid_time(tau, i, n);
        if t > last {
            break;
        }
        while j + 2 < steps.len() && steps[j + 1].t < t {
            j += 1;
        }
        let (a, b) = (&steps[j], &steps[(j + 1).min(steps.len() - 1)]);
        let (va, vb) = (a.rdot.as_f64(), b.rdot.as_f64());
        let h = b.t - a.t;
        let (r, v) = if h == 0.0 {
            (a.r, va)
        } else {
            let s = (t - a.t) / h;
            let (s2, s3) = (s * s, s * s * s);
            let r = (2.0 * s3 - 3.0 * s2 + 1.0) * a.r
                + (s3 - 2.0 * s2 + s) * h * va
                + (3.0 * s2 - 2.0 * s3) * b.r
                + (s3 - s2) * h * vb;
            let v = (6.0 * s2 - 6.0 * s) * (a.r - b.r) / h
                + (3.0 * s2 - 4.0 * s + 1.0) * va
                + (3.0 * s2 - 2.0 * s) * vb;
            (r, v)
        };
        samples.push(Sample {
            t,
            r,
            rdot: Velocity::Finite(v),
            source: Source::Oracle,
        });
    }
    Ok(SampleSeries { gamma, samples })
}

/// Point of the cycloid `t = (θ + sin θ)/√8`, `r = (1 + cos θ)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParametricSample {
    pub theta: f64,
    pub t: f64,
    pub r: f64,
}

impl ParametricSample {
    /// `ṙ = -√2 tan(θ/2)`, divergent at `θ = ±π`.
    pub fn rdot(&self) -> Velocity {
        if self.theta.abs() == std::f64::consts::PI {
            if self.theta > 0.0 {
                Velocity::NegInfinity
            } else {
                Velocity::PosInfinity
            }
        } else {
            Velocity::Finite(-std::f64::consts::SQRT_2 * (0.5 * self.theta).tan() + 0.0)
        }
    }
}

/// The `γ = -2` solution in parametric form, for `|θ| <= π`.
pub fn parametric_tophat(theta: f64) -> Result<ParametricSample> {
    if !(theta.abs() <= std::f64::consts::PI) {
        return Err(Error::domain(
            "parametric_tophat",
            format!("theta must lie in [-pi, pi], got {theta}"),
        ));
    }
    let r = if theta.abs() == std::f64::consts::PI {
        0.0
    } else {
        0.5 * (1.0 + theta.cos())
    };
    Ok(ParametricSample {
        theta,
        t: (theta + theta.sin()) / SQRT_8,
        r,
    })
}

/// `n` samples of the parametric solution, uniform in `θ` on `[0, π]`.
pub fn parametric_series(n: usize) -> Result<SampleSeries> {
    if n < 2 {
        return Err(Error::domain(
            "parametric_series",
            format!("need at least 2 samples, got {n}"),
        ));
    }
    let samples = (0..n)
        .map(|i| {
            let theta = if i + 1 == n {
                std::f64::consts::PI
            } else {
                std::f64::consts::PI * (i as f64 / (n - 1) as f64)
            };
            let p = parametric_tophat(theta)?;
            Ok(Sample {
                t: p.t,
                r: p.r,
                rdot: p.rdot(),
                source: Source::Parametric,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SampleSeries {
        gamma: -2.0,
        samples,
    })
}

/// The parametric solution at time `t ∈ [0, π/√8]`, solving
/// `θ + sin θ = √8 t` by bisection.
pub fn parametric_at(t: f64) -> Result<ParametricSample> {
    let mut target = SQRT_8 * t;
    if target > std::f64::consts::PI && target <= std::f64::consts::PI * (1.0 + 4.0 * f64::EPSILON)
    {
        target = std::f64::consts::PI;
    }
    if !(0.0..=std::f64::consts::PI).contains(&target) {
        return Err(Error::domain(
            "parametric_at",
            format!("t must lie in [0, pi/sqrt(8)], got {t}"),
        ));
    }
    let (mut lo, mut hi) = (0.0f64, std::f64::consts::PI);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if mid + mid.sin() < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let theta = if target == 0.0 || target == std::f64::consts::PI {
        target
    } else {
        0.5 * (lo + hi)
    };
    let p = parametric_tophat(theta)?;
    Ok(ParametricSample { t, ..p })
}

/// Agreement of the explicit solution with an additional reference.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossCheck {
    pub name: &'static str,
    pub max_abs_err: f64,
}

/// Comparison of the explicit solution with the integrated reference.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub gamma: f64,
    pub tau: f64,
    pub grid_size: usize,
    /// Largest error over the grid, in `r` or, on steep stretches below the
    /// critical exponent, in `t`.
    pub max_abs_err: f64,
    pub rms_err: f64,
    pub max_r_err: f64,
    pub max_t_err: f64,
    /// Largest relative energy residual of the explicit solution on the grid.
    pub energy_max_resid: f64,
    /// Largest relative energy residual of the integrated reference.
    pub oracle_energy_drift: f64,
    pub t_range_covered: (f64, f64),
    pub cross_checks: Vec<CrossCheck>,
}

/// Checks the explicit solution against [`integrate_reference`] at the
/// integrator's own steps (capped at `τ_bound / n_grid`), for `r >= r_floor`.
///
/// Where `|ṙ| > 1` below the critical exponent the comparison is made on
/// `t(r)` instead of `r(t)`, since the radius is ill-conditioned there.
pub fn validate_explicit(
    gamma: f64,
    n_grid: usize,
    config: &IntegratorConfig,
) -> Result<ValidationReport> {
    if n_grid < 10 {
        return Err(Error::domain(
            "validate_explicit",
            format!("n_grid must be at least 10, got {n_grid}"),
        ));
    }
    let config = match config.max_step {
        Some(_) => *config,
        None => config.with_max_step(time_horizon(gamma) / n_grid as f64)?,
    };
    let oracle = integrate_reference(gamma, &config)?;
    let sol = CollapseSolution::new(gamma)?;
    let param: GammaParam = *sol.param();
    let tau = sol.tau();

    let mut max_r: f64 = 0.0;
    let mut max_t: f64 = 0.0;
    let mut sum_sq = 0.0;
    let mut energy: f64 = 0.0;
    let mut drift: f64 = 0.0;
    let mut count = 0usize;
    let mut t_lo = f64::INFINITY;
    let mut t_hi = f64::NEG_INFINITY;
    let mut cn_err: f64 = 0.0;
    let mut closed_err: f64 = 0.0;
    let mut cycloid_err: f64 = 0.0;

    for s in oracle.samples.iter().filter(|s| s.r >= config.r_floor) {
        let v = s.rdot.as_f64();
        let t = s.t.min(tau);
        let (r_exp, v_exp) = sol.evaluate_r_rdot(t)?;
        let err = if gamma > -1.0 || v.abs() <= 1.0 {
            let e = (r_exp - s.r).abs();
            max_r = max_r.max(e);
            e
        } else {
            let e = (sol.evaluate_t(s.r.min(1.0))? - s.t).abs();
            max_t = max_t.max(e);
            e
        };
        sum_sq += err * err;
        count += 1;
        t_lo = t_lo.min(s.t);
        t_hi = t_hi.max(s.t);
        if r_exp > 0.0 {
            let res = energy_residual_relative(&param, r_exp, v_exp.as_f64())?;
            energy = energy.max(res.abs());
        }
        drift = drift.max(energy_residual_relative(&param, s.r.min(1.0), v)?.abs());

        if gamma == 3.0 || gamma == -3.0 || gamma == 0.0 || gamma == 1.0 {
            let c = closed_form(gamma, t)?;
            let e = (c - r_exp).abs();
            if gamma == 3.0 {
                cn_err = cn_err.max(e);
            } else {
                closed_err = closed_err.max(e);
            }
        }
        if gamma == -2.0 {
            cycloid_err = cycloid_err.max((parametric_at(t)?.r - r_exp).abs());
        }
    }
    if count == 0 {
        return Err(Error::StepFailure {
            t: 0.0,
            msg: "reference integration produced no samples".into(),
        });
    }

    let mut cross_checks = Vec::new();
    if gamma == 3.0 {
        cross_checks.push(CrossCheck {
            name: "jacobi_cn",
            max_abs_err: cn_err,
        });
    }
    if gamma == -3.0 || gamma == 0.0 || gamma == 1.0 {
        cross_checks.push(CrossCheck {
            name: "closed_form",
            max_abs_err: closed_err,
        });
    }
    if gamma == -2.0 {
        cross_checks.push(CrossCheck {
            name: "parametric",
            max_abs_err: cycloid_err,
        });
    }

    Ok(ValidationReport {
        gamma,
        tau,
        grid_size: count,
        max_abs_err: max_r.max(max_t),
        rms_err: (sum_sq / count as f64).sqrt(),
        max_r_err: max_r,
        max_t_err: max_t,
        energy_max_resid: energy,
        oracle_energy_drift: drift,
        t_range_covered: (t_lo, t_hi),
        cross_checks,
    })
}
