use crate::error::{Error, Result};
use std::f64::consts::FRAC_PI_2;

const MAX_AGM_STEPS: usize = 32;

fn check_parameter(op: &'static str, m: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::domain(
            op,
            format!("parameter m must lie in [0, 1], got {m}"),
        ));
    }
    Ok(())
}

/// Arithmetic-geometric mean sequence starting at `(1, √(1-m))`.
/// Returns the final `a_N` and the ratios `c_n / a_n` for `n = 1..=N`.
fn agm_sequence(m: f64) -> (f64, Vec<f64>) {
    let mut a = 1.0;
    let mut b = (1.0 - m).sqrt();
    let mut c = m.sqrt();
    let mut ratios = Vec::with_capacity(8);
    for _ in 0..MAX_AGM_STEPS {
        if c.abs() <= f64::EPSILON * a {
            break;
        }
        let next_a = 0.5 * (a + b);
        c = 0.5 * (a - b);
        b = (a * b).sqrt();
        a = next_a;
        ratios.push(c / a);
    }
    (a, ratios)
}

/// Quarter period `K(m)` of the Jacobi elliptic functions, parameter
/// convention (`m = k²`).
pub fn quarter_period(m: f64) -> Result<f64> {
    check_parameter("quarter_period", m)?;
    if m == 1.0 {
        return Err(Error::domain("quarter_period", "K(m) diverges at m = 1"));
    }
    let (a, _) = agm_sequence(m);
    Ok(FRAC_PI_2 / a)
}

/// Jacobi elliptic cosine `cn(u | m)` in the parameter convention, via the
/// descending Landen (AGM) transformation.
///
/// `cn(u | 1/2)` solves `r'' = -r³` with `r(0) = 1`, `r'(0) = 0`.
pub fn jacobi_cn(u: f64, m: f64) -> Result<f64> {
    check_parameter("jacobi_cn", m)?;
    if !u.is_finite() {
        return Err(Error::domain(
            "jacobi_cn",
            format!("argument must be finite, got {u}"),
        ));
    }
    if m == 0.0 {
        return Ok(u.cos());
    }
    if m == 1.0 {
        return Ok(1.0 / u.cosh());
    }

    let (a, ratios) = agm_sequence(m);
    // cn has period 4K.
    let period = 4.0 * FRAC_PI_2 / a;
    let u = if u.abs() > period {
        u - period * (u / period).round()
    } else {
        u
    };

    let mut phi = u * a * (1u64 << ratios.len()) as f64;
    for &ratio in ratios.iter().rev() {
        phi = 0.5 * (phi + (ratio * phi.sin()).asin());
    }
    Ok(phi.cos())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cn_reference_values() {
        // 18-digit reference values.
        let cases = [
            (0.5, 0.5, 0.882266394890440286),
            (1.0, 0.5, 0.595976567672140674),
            (3.0, 0.5, -0.776571607370588956),
            (1.0, 0.9, 0.637940417510212175),
            (2.0, 0.1, -0.360278907460090728),
            (10.0, 0.5, -0.512290034666992518),
            (0.7, 0.999, 0.79667510565038313),
        ];
        for (u, m, want) in cases {
            let got = jacobi_cn(u, m).unwrap();
            assert!(
                (got - want).abs() <= 1e-14,
                "cn({u}|{m}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn cn_special_points() {
        assert_eq!(jacobi_cn(0.0, 0.5).unwrap(), 1.0);
        // first zero of cn(·|½) is K(½) = 1.85407468 (8 decimals)
        assert!(jacobi_cn(1.854_074_68, 0.5).unwrap().abs() <= 1e-7);
        let k = quarter_period(0.5).unwrap();
        assert!((k - 1.854_074_677_301_372).abs() <= 1e-15);
        assert!(jacobi_cn(k, 0.5).unwrap().abs() <= 1e-15);
        assert!((jacobi_cn(2.0 * k, 0.5).unwrap() + 1.0).abs() <= 1e-15);
    }

    #[test]
    fn degenerate_parameters() {
        for i in -50..=50 {
            let u = i as f64 * 0.37;
            assert!((jacobi_cn(u, 0.0).unwrap() - u.cos()).abs() <= 1e-12);
            assert!((jacobi_cn(u, 1e-18).unwrap() - u.cos()).abs() <= 1e-12);
            assert!((jacobi_cn(u, 1.0).unwrap() - 1.0 / u.cosh()).abs() <= 1e-15);
        }
        assert!((quarter_period(0.0).unwrap() - FRAC_PI_2).abs() < 1e-16);
    }

    #[test]
    fn even_and_periodic() {
        let k = quarter_period(0.5).unwrap();
        for i in 0..40 {
            let u = i as f64 * 0.31;
            let v = jacobi_cn(u, 0.5).unwrap();
            assert_eq!(jacobi_cn(-u, 0.5).unwrap(), v);
            assert!((jacobi_cn(u + 4.0 * k, 0.5).unwrap() - v).abs() <= 1e-13);
        }
    }

    #[test]
    fn rejects_bad_parameter() {
        assert!(jacobi_cn(0.3, -0.1).is_err());
        assert!(jacobi_cn(0.3, 1.1).is_err());
        assert!(jacobi_cn(f64::NAN, 0.5).is_err());
        assert!(quarter_period(1.0).is_err());
    }
}
