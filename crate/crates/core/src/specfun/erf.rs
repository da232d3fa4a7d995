use crate::error::{Error, Result};

const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;
const LN_SQRT_PI: f64 = 0.572_364_942_924_700_1;
const SERIES_LIMIT: f64 = 1.5;

/// Error function.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    let ax = x.abs();
    let v = if ax < SERIES_LIMIT {
        erf_series(ax)
    } else if ax > 6.0 {
        1.0
    } else {
        1.0 - erfc_tail(ax)
    };
    v.copysign(x)
}

/// Complementary error function `1 - erf(x)`, accurate in the upper tail.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    if x < SERIES_LIMIT {
        1.0 - erf_series(x)
    } else if x > 27.3 {
        0.0
    } else {
        erfc_tail(x)
    }
}

/// `erf(x) = 2/√π · e^{-x²} Σ 2ⁿ x^{2n+1} / (2n+1)!!`, a series of positive
/// terms (no cancellation). For `x >= 0`.
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    while term > f64::EPSILON * 0.25 * sum {
        n += 1.0;
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
    }
    FRAC_2_SQRT_PI * (-x2).exp() * sum
}

/// Continued fraction `√π e^{x²} erfc(x) = 1/(x + ½/(x + 1/(x + 3/2/(x + …))))`,
/// evaluated by the modified Lentz method. For `x >= 1.5`.
fn erfc_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for n in 1..500 {
        let an = 0.5 * n as f64;
        d = x + an * d;
        d = if d.abs() < TINY { 1.0 / TINY } else { 1.0 / d };
        c = x + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        let del = c * d;
        f *= del;
        if (del - 1.0).abs() < 0.5 * f64::EPSILON {
            break;
        }
    }
    1.0 / f
}

fn erfc_tail(x: f64) -> f64 {
    (-x * x).exp() * erfc_fraction(x) / std::f64::consts::PI.sqrt()
}

/// `ln erfc(x)` for `x >= 1.5`; finite far beyond the underflow of `erfc`.
fn ln_erfc_tail(x: f64) -> f64 {
    -x * x - LN_SQRT_PI + erfc_fraction(x).ln()
}

/// Inverse of [`erf`] on `(-1, 1)`.
///
/// This is the function some references write as `erfi`; see the module
/// note on that name.
pub fn inv_erf(y: f64) -> Result<f64> {
    if y.is_nan() || y.abs() >= 1.0 {
        return Err(Error::domain(
            "inv_erf",
            format!("argument must lie in (-1, 1), got {y}"),
        ));
    }
    if y == 0.0 {
        return Ok(y);
    }
    let ay = y.abs();
    let x = if ay > 0.5 {
        inv_erfc_upper(1.0 - ay)
    } else {
        inv_erf_central(ay)
    };
    Ok(x.copysign(y))
}

/// Inverse of [`erfc`] on `(0, 2)`.
pub fn inv_erfc(q: f64) -> Result<f64> {
    if q.is_nan() || q <= 0.0 || q >= 2.0 {
        return Err(Error::domain(
            "inv_erfc",
            format!("argument must lie in (0, 2), got {q}"),
        ));
    }
    if q > 1.0 {
        return Ok(-inv_erfc(2.0 - q)?);
    }
    Ok(inv_erfc_upper(q))
}

/// Halley iteration on `erf(x) = y` for `0 < y <= 0.5`.
fn inv_erf_central(y: f64) -> f64 {
    use std::f64::consts::PI;
    let mut x = 0.5 * PI.sqrt() * y * (1.0 + PI / 12.0 * y * y * (1.0 + 7.0 * PI / 40.0 * y * y));
    for _ in 0..20 {
        let f = erf(x) - y;
        let step = f / (FRAC_2_SQRT_PI * (-x * x).exp());
        let dx = step / (1.0 + x * step);
        x -= dx;
        if dx.abs() <= f64::EPSILON * x.abs() {
            break;
        }
    }
    x
}

/// Solves `erfc(x) = q` for `0 < q <= 1`.
fn inv_erfc_upper(q: f64) -> f64 {
    if q == 1.0 {
        return 0.0;
    }
    if q >= 0.5 {
        return inv_erf_central(1.0 - q);
    }
    // erfc(x) ~ e^{-x²}/(x√π) seeds a Newton iteration on ln erfc.
    let ln_q = q.ln();
    let big_l = -ln_q;
    let mut x = (big_l - (big_l.sqrt() * std::f64::consts::PI.sqrt()).ln())
        .max(0.25)
        .sqrt();
    for _ in 0..50 {
        let ln_e = if x >= SERIES_LIMIT {
            ln_erfc_tail(x)
        } else {
            erfc(x).ln()
        };
        // d/dx ln erfc(x) = -2/√π e^{-x²} / erfc(x), expressed in logs
        let slope = -(FRAC_2_SQRT_PI.ln() - x * x - ln_e).exp();
        let dx = (ln_e - ln_q) / slope;
        x -= dx;
        if dx.abs() <= 2.0 * f64::EPSILON * x.abs() {
            break;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    // (x, erf x, erfc x) to 18 digits.
    const REFERENCE: [(f64, f64, f64); 8] = [
        (1e-10, 1.12837916709551262e-10, 0.999999999887162083),
        (0.1, 0.112462916018284898, 0.887537083981715102),
        (0.5, 0.520499877813046538, 0.479500122186953462),
        (1.0, 0.842700792949714869, 0.157299207050285131),
        (2.0, 0.995322265018952734, 0.00467773498104726584),
        (2.9, 0.999958902121900541, 0.000041097878099458858),
        (3.5, 0.999999256901627659, 7.43098372341412746e-7),
        (5.0, 0.99999999999846254, 1.53745979442803485e-12),
    ];

    #[test]
    fn erf_reference_values() {
        for (x, e, ec) in REFERENCE {
            let got = erf(x);
            assert!(((got - e) / e).abs() <= 1e-14, "erf({x}) = {got}, want {e}");
            assert_eq!(erf(-x), -got);
            let gotc = erfc(x);
            assert!(
                ((gotc - ec) / ec).abs() <= 1e-13,
                "erfc({x}) = {gotc}, want {ec}"
            );
        }
    }

    #[test]
    fn erf_edges() {
        assert_eq!(erf(0.0), 0.0);
        assert_eq!(erf(10.0), 1.0);
        assert_eq!(erf(-10.0), -1.0);
        assert_eq!(erf(f64::INFINITY), 1.0);
        assert!(erf(f64::NAN).is_nan());
        assert_eq!(erfc(40.0), 0.0);
        assert_eq!(erfc(-40.0), 2.0);
        // continuity across the series / fraction switch
        let series = erf_series(SERIES_LIMIT);
        let fraction = 1.0 - erfc_tail(SERIES_LIMIT);
        assert!((series - fraction).abs() < 1e-15);
    }

    #[test]
    fn inv_erf_examples() {
        assert_eq!(inv_erf(0.0).unwrap(), 0.0);
        let x = inv_erf(0.5).unwrap();
        assert!((x - 0.476936276204469873).abs() <= 1e-15);
        assert!((inv_erf(erf(1.0)).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn inv_erf_roundtrip() {
        for i in -999..=999 {
            let y = i as f64 / 1000.0;
            let x = inv_erf(y).unwrap();
            assert!((erf(x) - y).abs() <= 1e-15, "y = {y}");
            assert_eq!(inv_erf(-y).unwrap(), -x);
        }
    }

    #[test]
    fn inv_erfc_deep_tail() {
        for &q in &[1e-5, 1e-20, 1e-100, 1e-300, 5e-324] {
            let x = inv_erfc(q).unwrap();
            let back = if q > 1e-290 {
                (erfc(x) - q).abs() / q
            } else {
                0.0
            };
            assert!(back < 1e-13, "q = {q}: x = {x}, rel {back:e}");
            assert!(x.is_finite());
        }
        assert!((inv_erfc(1.0).unwrap()).abs() < 1e-300);
        assert!((inv_erfc(1.5).unwrap() + inv_erfc(0.5).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn inverse_domain_errors() {
        assert!(inv_erf(1.0).is_err());
        assert!(inv_erf(-1.0).is_err());
        assert!(inv_erf(f64::NAN).is_err());
        assert!(inv_erfc(0.0).is_err());
        assert!(inv_erfc(2.0).is_err());
    }
}
