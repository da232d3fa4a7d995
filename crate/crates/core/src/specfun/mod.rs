//! Special-function kernel: log-gamma, the beta family and its quantile,
//! the error function and its inverse, and the Jacobi elliptic cosine.
//!
//! Every function here is a pure function of its arguments. Iterative
//! kernels take an [`AccuracyPolicy`]; the plain entry points use
//! [`AccuracyPolicy::default`].
//!
//! Naming note: some texts write the *inverse* error function as `erfi`.
//! That name usually denotes the imaginary error function `-i erf(ix)`, so
//! this crate calls the inverse [`inv_erf`] and does not provide the
//! imaginary error function at all.

mod beta;
mod elliptic;
mod erf;
mod gamma;

pub use beta::{
    beta_complete, inc_beta, inv_reg_inc_beta, inv_reg_inc_beta_with, log_beta, reg_inc_beta,
    reg_inc_beta_with, BetaQuantile,
};
pub(crate) use beta::{inv_reg_inc_beta_split, reg_inc_beta_pair};
pub use elliptic::{jacobi_cn, quarter_period};
pub use erf::{erf, erfc, inv_erf, inv_erfc};
pub use gamma::log_gamma;

use crate::error::{Error, Result};

/// Tolerance and iteration budget for the iterative kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyPolicy {
    rel_tol: f64,
    max_iter: usize,
}

impl AccuracyPolicy {
    pub fn new(rel_tol: f64, max_iter: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(Error::domain(
                "AccuracyPolicy::new",
                format!("rel_tol must be positive and finite, got {rel_tol}"),
            ));
        }
        if max_iter == 0 {
            return Err(Error::domain(
                "AccuracyPolicy::new",
                "max_iter must be at least 1",
            ));
        }
        Ok(Self { rel_tol, max_iter })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_iter(&self) -> usize {
        self.max_iter
    }
}

impl Default for AccuracyPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-14,
            max_iter: 200,
        }
    }
}

/// `(ln x, ln y)` for a pair with `x + y = 1`, taking the logarithm of the
/// larger member through `ln_1p` of the smaller one.
#[inline]
pub(crate) fn ln_complementary(x: f64, y: f64) -> (f64, f64) {
    if x <= y {
        (x.ln(), (-x).ln_1p())
    } else {
        ((-y).ln_1p(), y.ln())
    }
}
