use std::fmt;

use serde::Serialize;

use crate::approx::{evaluate_approx, grid_time, ApproxSpec};
use crate::collapse::{CollapseSolution, Velocity};
use crate::error::{Error, Result};

/// Where a sample came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Explicit,
    Oracle,
    Approx,
    Parametric,
}

impl Source {
    pub fn name(&self) -> &'static str {
        match self {
            Source::Explicit => "explicit",
            Source::Oracle => "oracle",
            Source::Approx => "approx",
            Source::Parametric => "parametric",
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub r: f64,
    pub rdot: Velocity,
    pub source: Source,
}

/// Samples of one curve, ordered by `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleSeries {
    pub gamma: f64,
    pub samples: Vec<Sample>,
}

fn check_count(op: &'static str, n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::domain(
            op,
            format!("need at least 2 samples, got {n}"),
        ));
    }
    Ok(())
}

impl SampleSeries {
    /// The explicit solution at `n` uniform times on `[0, τ]`.
    pub fn explicit(sol: &CollapseSolution, n: usize) -> Result<Self> {
        check_count("SampleSeries::explicit", n)?;
        let samples = (0..n)
            .map(|i| {
                let t = grid_time(sol.tau(), i, n);
                let (r, rdot) = sol.evaluate_r_rdot(t)?;
                Ok(Sample {
                    t,
                    r,
                    rdot,
                    source: Source::Explicit,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            gamma: sol.gamma(),
            samples,
        })
    }

    /// A polynomial approximation at `n` uniform times on `[0, τ]`.
    pub fn approx(spec: &ApproxSpec, n: usize) -> Result<Self> {
        check_count("SampleSeries::approx", n)?;
        let samples = (0..n)
            .map(|i| {
                let t = grid_time(spec.tau(), i, n);
                let d = spec.derivative(t)?;
                Ok(Sample {
                    t,
                    r: evaluate_approx(spec, t)?,
                    rdot: if d == f64::NEG_INFINITY {
                        Velocity::NegInfinity
                    } else {
                        Velocity::Finite(d)
                    },
                    source: Source::Approx,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            gamma: spec.gamma(),
            samples,
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}
