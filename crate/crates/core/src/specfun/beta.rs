use super::gamma::{ln_gamma_pos, stirling_correction};
use super::{ln_complementary, AccuracyPolicy};
use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const TINY: f64 = 1e-300;
/// Shapes at least this large, paired with one no larger than 1, use the
/// positive series near the far endpoint.
const LARGE_SHAPE: f64 = 100.0;
const SERIES_REACH: f64 = 50.0;

fn check_shape(op: &'static str, a: f64, b: f64) -> Result<()> {
    if !(a > 0.0 && b > 0.0) || a.is_infinite() || b.is_infinite() {
        return Err(Error::domain(
            op,
            format!("shape parameters must be positive and finite, got a = {a}, b = {b}"),
        ));
    }
    Ok(())
}

/// `ln B(a, b)`, computed without forming the gamma functions when either
/// argument is large.
pub fn log_beta(a: f64, b: f64) -> Result<f64> {
    check_shape("log_beta", a, b)?;
    Ok(ln_beta_unchecked(a, b))
}

pub(crate) fn ln_beta_unchecked(a: f64, b: f64) -> f64 {
    let (p, q) = if a <= b { (a, b) } else { (b, a) };
    let s = p + q;
    if p >= 10.0 {
        let corr = stirling_correction(p) + stirling_correction(q) - stirling_correction(s);
        -0.5 * q.ln() + LN_SQRT_2PI + corr + (p - 0.5) * (p / s).ln() + q * (-p / s).ln_1p()
    } else if q >= 10.0 {
        let corr = stirling_correction(q) - stirling_correction(s);
        ln_gamma_pos(p) + corr + p - p * s.ln() + (q - 0.5) * (-p / s).ln_1p()
    } else {
        ln_gamma_pos(p) + ln_gamma_pos(q) - ln_gamma_pos(s)
    }
}

/// Complete beta function `B(a, b) = Γ(a)Γ(b)/Γ(a+b)`.
///
/// Reports [`Error::Overflow`] rather than returning `0` or `inf` when the
/// value leaves the representable range.
pub fn beta_complete(a: f64, b: f64) -> Result<f64> {
    let lnb = log_beta(a, b)?;
    let value = lnb.exp();
    if value == 0.0 || !value.is_finite() {
        return Err(Error::Overflow {
            op: "beta_complete",
            msg: format!("B({a}, {b}) = exp({lnb}) is not representable"),
        });
    }
    Ok(value)
}

/// Regularized incomplete beta function `I(x; a, b)` with the default policy.
pub fn reg_inc_beta(x: f64, a: f64, b: f64) -> Result<f64> {
    reg_inc_beta_with(x, a, b, &AccuracyPolicy::default())
}

pub fn reg_inc_beta_with(x: f64, a: f64, b: f64, policy: &AccuracyPolicy) -> Result<f64> {
    check_shape("reg_inc_beta", a, b)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(
            "reg_inc_beta",
            format!("x must lie in [0, 1], got {x}"),
        ));
    }
    let lnb = ln_beta_unchecked(a, b);
    Ok(ibeta_split(x, 1.0 - x, a, b, lnb, policy)?.0)
}

/// `(I(x; a, b), 1 - I(x; a, b))` for the pair `(x, y)` with `y = 1 - x`,
/// each member accurate on its own tail.
pub(crate) fn reg_inc_beta_pair(
    x: f64,
    y: f64,
    a: f64,
    b: f64,
    policy: &AccuracyPolicy,
) -> Result<(f64, f64)> {
    check_shape("reg_inc_beta", a, b)?;
    if !(0.0..=1.0).contains(&x) || !(0.0..=1.0).contains(&y) {
        return Err(Error::domain(
            "reg_inc_beta",
            format!("point pair must lie in [0, 1], got ({x}, {y})"),
        ));
    }
    ibeta_split(x, y, a, b, ln_beta_unchecked(a, b), policy)
}

/// Non-regularized incomplete beta function `B(x; a, b) = I(x; a, b) B(a, b)`.
pub fn inc_beta(x: f64, a: f64, b: f64) -> Result<f64> {
    let reg = reg_inc_beta(x, a, b)?;
    if reg == 0.0 {
        return Ok(0.0);
    }
    Ok(reg * beta_complete(a, b)?)
}

/// `(I, 1 - I)` at the point `(x, y)` with `y = 1 - x`, each member
/// computed directly on its own tail.
///
/// Lentz continued fraction with the usual switch at `x = (a+1)/(a+b+2)`.
pub(crate) fn ibeta_split(
    x: f64,
    y: f64,
    a: f64,
    b: f64,
    lnb: f64,
    policy: &AccuracyPolicy,
) -> Result<(f64, f64)> {
    if x <= 0.0 {
        return Ok((0.0, 1.0));
    }
    if y <= 0.0 {
        return Ok((1.0, 0.0));
    }
    let (lnx, lny) = ln_complementary(x, y);
    if b <= 1.0 && a >= LARGE_SHAPE && (a + b) * y <= SERIES_REACH {
        let w = hypergeometric_series(b, a, y, lny, lnx, lnb, policy)?;
        return Ok((1.0 - w, w));
    }
    if a <= 1.0 && b >= LARGE_SHAPE && (a + b) * x <= SERIES_REACH {
        let w = hypergeometric_series(a, b, x, lnx, lny, lnb, policy)?;
        return Ok((w, 1.0 - w));
    }
    let front = (a * lnx + b * lny - lnb).exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        let w = front * continued_fraction(a, b, x, policy)? / a;
        Ok((w, 1.0 - w))
    } else {
        let w = front * continued_fraction(b, a, y, policy)? / b;
        Ok((1.0 - w, w))
    }
}

/// `I(s; p, q) = s^p t^q / (p B) · Σ (p+q)_n / (p+1)_n sⁿ` with `t = 1 - s`.
/// Every term is positive, so nothing cancels when `p + q` is large.
fn hypergeometric_series(
    p: f64,
    q: f64,
    s: f64,
    ln_s: f64,
    ln_t: f64,
    lnb: f64,
    policy: &AccuracyPolicy,
) -> Result<f64> {
    let eps = policy.rel_tol().max(f64::EPSILON) * 0.5;
    let budget = policy.max_iter() + 4 * SERIES_REACH as usize;
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..budget {
        let n = n as f64;
        term *= (p + q + n) / (p + 1.0 + n) * s;
        sum += term;
        if term <= eps * sum && (p + q + n) * s < p + 1.0 + n {
            return Ok((p * ln_s + q * ln_t - lnb).exp() / p * sum);
        }
    }
    Err(Error::Convergence {
        op: "reg_inc_beta",
        iterations: budget,
    })
}

fn continued_fraction(a: f64, b: f64, x: f64, policy: &AccuracyPolicy) -> Result<f64> {
    let eps = policy.rel_tol().max(f64::EPSILON);
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;

    let clamp = |v: f64| if v.abs() < TINY { TINY } else { v };

    let mut c = 1.0;
    let mut d = 1.0 / clamp(1.0 - qab * x / qap);
    let mut h = d;

    for m in 1..=policy.max_iter() {
        let m = m as f64;
        let m2 = 2.0 * m;

        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 / clamp(1.0 + aa * d);
        c = clamp(1.0 + aa / c);
        h *= d * c;

        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 / clamp(1.0 + aa * d);
        c = clamp(1.0 + aa / c);
        let del = d * c;
        h *= del;

        if (del - 1.0).abs() <= eps {
            return Ok(h);
        }
    }
    Err(Error::Convergence {
        op: "reg_inc_beta",
        iterations: policy.max_iter(),
    })
}

/// A beta quantile carried together with its complement, so that values
/// close to 1 keep their full relative precision in `1 - x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaQuantile {
    x: f64,
    complement: f64,
}

impl BetaQuantile {
    fn new(x: f64, complement: f64) -> Self {
        Self { x, complement }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    /// `1 - x`, accurate even when `x` rounds to 1.
    pub fn complement(&self) -> f64 {
        self.complement
    }

    /// `ln x`, through `ln_1p(-complement)` when `x` is close to 1.
    pub fn ln_x(&self) -> f64 {
        if self.x == 0.0 {
            f64::NEG_INFINITY
        } else {
            ln_complementary(self.x, self.complement).0
        }
    }

    fn midpoint(lo: Self, hi: Self) -> Self {
        if hi.x <= 0.5 {
            let x = if lo.x > 0.0 && hi.x > 64.0 * lo.x {
                (lo.x * hi.x).sqrt()
            } else if lo.x == 0.0 && hi.x < 1e-3 {
                hi.x * 0.0625
            } else {
                0.5 * (lo.x + hi.x)
            };
            Self::new(x, 1.0 - x)
        } else if lo.x >= 0.5 {
            let y = if hi.complement > 0.0 && lo.complement > 64.0 * hi.complement {
                (lo.complement * hi.complement).sqrt()
            } else if hi.complement == 0.0 && lo.complement < 1e-3 {
                lo.complement * 0.0625
            } else {
                0.5 * (lo.complement + hi.complement)
            };
            Self::new(1.0 - y, y)
        } else {
            let x = 0.5 * (lo.x + hi.x);
            Self::new(x, 1.0 - x)
        }
    }

    /// Moves the point by `dx`, updating whichever coordinate is smaller.
    fn shifted(&self, dx: f64) -> Self {
        if self.x <= 0.5 {
            let x = self.x + dx;
            Self::new(x, 1.0 - x)
        } else {
            let y = self.complement - dx;
            Self::new(1.0 - y, y)
        }
    }

    fn strictly_between(&self, lo: &Self, hi: &Self) -> bool {
        if self.x <= 0.5 {
            self.x > lo.x && self.x < hi.x
        } else {
            self.complement < lo.complement && self.complement > hi.complement
        }
    }

    fn small_coordinate(&self) -> f64 {
        self.x.min(self.complement)
    }
}

/// Quantile of the beta distribution: `x` with `I(x; a, b) = p`.
pub fn inv_reg_inc_beta(p: f64, a: f64, b: f64) -> Result<f64> {
    inv_reg_inc_beta_with(p, a, b, &AccuracyPolicy::default())
}

pub fn inv_reg_inc_beta_with(p: f64, a: f64, b: f64, policy: &AccuracyPolicy) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(
            "inv_reg_inc_beta",
            format!("probability must lie in [0, 1], got {p}"),
        ));
    }
    Ok(inv_reg_inc_beta_split(p, 1.0 - p, a, b, policy)?.x())
}

/// Beta quantile for the probability pair `(p, q)` with `p + q = 1`.
///
/// Passing `q` separately keeps upper-tail targets exact: the residual is
/// formed on whichever of `I` and `1 - I` is smaller. The iteration is a
/// Newton method on `I` kept inside a shrinking bracket, falling back to
/// bisection whenever a Newton step leaves the bracket or stalls.
pub(crate) fn inv_reg_inc_beta_split(
    p: f64,
    q: f64,
    a: f64,
    b: f64,
    policy: &AccuracyPolicy,
) -> Result<BetaQuantile> {
    check_shape("inv_reg_inc_beta", a, b)?;
    if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&q) {
        return Err(Error::domain(
            "inv_reg_inc_beta",
            format!("probability pair must lie in [0, 1], got ({p}, {q})"),
        ));
    }
    if p == 0.0 {
        return Ok(BetaQuantile::new(0.0, 1.0));
    }
    if q == 0.0 {
        return Ok(BetaQuantile::new(1.0, 0.0));
    }

    let lnb = ln_beta_unchecked(a, b);
    let lower_tail = p <= q;
    let residual = |pt: &BetaQuantile| -> Result<f64> {
        let (i, ic) = ibeta_split(pt.x, pt.complement, a, b, lnb, policy)?;
        Ok(if lower_tail { i - p } else { q - ic })
    };
    let density = |pt: &BetaQuantile| -> f64 {
        let (lnx, lny) = ln_complementary(pt.x, pt.complement);
        ((a - 1.0) * lnx + (b - 1.0) * lny - lnb).exp()
    };

    let mut lo = BetaQuantile::new(0.0, 1.0);
    let mut hi = BetaQuantile::new(1.0, 0.0);
    let mut pt = initial_guess(p, q, a, b, lnb);
    if pt.small_coordinate() < f64::MIN_POSITIVE {
        // Below the normal range the tail asymptote is exact to working
        // precision.
        return Ok(pt);
    }
    let mut last_step = f64::INFINITY;
    let tol = policy.rel_tol();

    for _ in 0..policy.max_iter() {
        let f = residual(&pt)?;
        if f == 0.0 {
            return Ok(pt);
        }
        if f < 0.0 {
            lo = pt;
        } else {
            hi = pt;
        }

        let fprime = density(&pt);
        let newton = if fprime.is_finite() && fprime > 0.0 {
            Some(pt.shifted(-f / fprime))
        } else {
            None
        };

        let next = match newton {
            Some(cand)
                if cand.strictly_between(&lo, &hi) && (f / fprime).abs() <= 0.5 * last_step =>
            {
                cand
            }
            _ => BetaQuantile::midpoint(lo, hi),
        };

        let step = if pt.x <= 0.5 {
            (next.x - pt.x).abs()
        } else {
            (next.complement - pt.complement).abs()
        };
        last_step = step;
        pt = next;

        let scale = pt.small_coordinate();
        if step <= tol * scale || step == 0.0 {
            return Ok(pt);
        }
        let width = if hi.x <= 0.5 {
            hi.x - lo.x
        } else if lo.x >= 0.5 {
            lo.complement - hi.complement
        } else {
            hi.x - lo.x
        };
        if width <= f64::EPSILON * scale || width == 0.0 {
            return Ok(pt);
        }
    }
    Err(Error::Convergence {
        op: "inv_reg_inc_beta",
        iterations: policy.max_iter(),
    })
}

/// Starting point from the leading tail behaviour of `I`, falling back to
/// the distribution mean `a / (a + b)` in the bulk.
fn initial_guess(p: f64, q: f64, a: f64, b: f64, lnb: f64) -> BetaQuantile {
    let mean = a / (a + b);
    // I(x) ~ x^a / (a B) as x -> 0 and 1 - I ~ y^b / (b B) as y -> 0.
    let left = ((p.ln() + a.ln() + lnb) / a).exp();
    let right = ((q.ln() + b.ln() + lnb) / b).exp();
    let pt = if p <= q && left < mean {
        BetaQuantile::new(left, 1.0 - left)
    } else if p > q && right < 1.0 - mean {
        BetaQuantile::new(1.0 - right, right)
    } else {
        BetaQuantile::new(mean, b / (a + b))
    };
    if pt.x.is_finite() && pt.complement.is_finite() {
        pt
    } else {
        BetaQuantile::new(mean, b / (a + b))
    }
}
