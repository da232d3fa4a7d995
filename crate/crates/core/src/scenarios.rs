//! Physical systems governed by `R'' = -k R^γ`, in SI units.
//!
//! Each scenario fixes `γ`, the initial radius `R0` and the time scale
//! `T0 = √(R0^{1-γ}/k)`, so that `R = R0·r` and `T = T0·t`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::collapse::{collapse_time, GammaParam, Velocity};
use crate::error::{Error, Result};
use crate::series::{Sample, SampleSeries, Source};

pub const GRAVITATIONAL_CONSTANT: f64 = 6.674_30e-11;
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
pub const COULOMB_CONSTANT: f64 = 8.987_551_792_3e9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ScenarioKind {
    CavitationBubble,
    BubbleNDim,
    TopHatCollapse,
    TwoBodyCollision,
    PowerLawPotentialFall,
    LogPotentialFall,
    UniformFieldFall,
    DipoleAcceleration,
    RelativisticOrbitalDecay,
    HarmonicOscillator,
    Polytrope,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 11] = [
        ScenarioKind::CavitationBubble,
        ScenarioKind::BubbleNDim,
        ScenarioKind::TopHatCollapse,
        ScenarioKind::TwoBodyCollision,
        ScenarioKind::PowerLawPotentialFall,
        ScenarioKind::LogPotentialFall,
        ScenarioKind::UniformFieldFall,
        ScenarioKind::DipoleAcceleration,
        ScenarioKind::RelativisticOrbitalDecay,
        ScenarioKind::HarmonicOscillator,
        ScenarioKind::Polytrope,
    ];

    /// Command-line name.
    pub fn name(&self) -> &'static str {
        match self {
            ScenarioKind::CavitationBubble => "cavitation",
            ScenarioKind::BubbleNDim => "bubble-nd",
            ScenarioKind::TopHatCollapse => "tophat",
            ScenarioKind::TwoBodyCollision => "two-body",
            ScenarioKind::PowerLawPotentialFall => "power-law",
            ScenarioKind::LogPotentialFall => "log-potential",
            ScenarioKind::UniformFieldFall => "uniform",
            ScenarioKind::DipoleAcceleration => "dipole",
            ScenarioKind::RelativisticOrbitalDecay => "gw-decay",
            ScenarioKind::HarmonicOscillator => "harmonic",
            ScenarioKind::Polytrope => "polytrope",
        }
    }

    /// Accepted parameters.
    pub fn schema(&self) -> &'static [ParamSpec] {
        use Rule::*;
        macro_rules! p {
            ($name:expr, $unit:expr, $default:expr, $rule:expr) => {
                ParamSpec {
                    name: $name,
                    unit: $unit,
                    default: $default,
                    rule: $rule,
                }
            };
        }
        const G: Option<f64> = Some(GRAVITATIONAL_CONSTANT);
        match self {
            ScenarioKind::CavitationBubble => &[
                p!("R0", "m", None, Positive),
                p!("dp", "Pa", None, Positive),
                p!("rho", "kg/m^3", None, Positive),
            ],
            ScenarioKind::BubbleNDim => &[
                p!("N", "", None, DimensionAtLeast3),
                p!("R0", "m", None, Positive),
                p!("dp", "Pa", None, Positive),
                p!("rho", "kg/m^3", None, Positive),
            ],
            ScenarioKind::TopHatCollapse => &[
                p!("rho0", "kg/m^3", None, Positive),
                p!("G", "m^3/(kg s^2)", G, Positive),
                p!("R0", "m", Some(1.0), Positive),
            ],
            ScenarioKind::TwoBodyCollision => &[
                p!("R0", "m", None, Positive),
                p!("M1", "kg", None, Positive),
                p!("M2", "kg", None, Positive),
                p!("G", "m^3/(kg s^2)", G, Positive),
            ],
            ScenarioKind::PowerLawPotentialFall => &[
                p!("alpha", "", None, NonZero),
                p!("L", "m", None, Positive),
                p!("V", "m/s", None, Positive),
                p!("R0", "m", None, Positive),
            ],
            ScenarioKind::LogPotentialFall => &[
                p!("V", "m/s", None, Positive),
                p!("R0", "m", None, Positive),
            ],
            ScenarioKind::UniformFieldFall => &[
                p!("R0", "m", None, Positive),
                p!("g", "m/s^2", None, Positive),
            ],
            ScenarioKind::DipoleAcceleration => &[
                p!("M", "kg", None, Positive),
                p!("R0", "m", None, Positive),
                p!("eps", "m", None, Positive),
                p!("Q", "C", None, Positive),
                p!("q", "C", None, Positive),
                p!("k_e", "N m^2/C^2", Some(COULOMB_CONSTANT), Positive),
            ],
            ScenarioKind::RelativisticOrbitalDecay => &[
                p!("R0", "m", None, Positive),
                p!("M1", "kg", None, Positive),
                p!("M2", "kg", None, Positive),
                p!("G", "m^3/(kg s^2)", G, Positive),
                p!("c", "m/s", Some(SPEED_OF_LIGHT), Positive),
            ],
            ScenarioKind::HarmonicOscillator => &[
                p!("M", "kg", None, Positive),
                p!("K", "N/m", None, Positive),
                p!("R0", "m", Some(1.0), Positive),
            ],
            ScenarioKind::Polytrope => &[
                p!("n", "", None, Positive),
                p!("K", "Pa (m^3/kg)^(1+1/n)", None, Positive),
                p!("G", "m^3/(kg s^2)", G, Positive),
                p!("rho0", "kg/m^3", None, Positive),
            ],
        }
    }

    /// Physical meaning and unit of `(R, T)`.
    pub fn roles(&self) -> Roles {
        match self {
            ScenarioKind::Polytrope => Roles {
                r: "density measure rho^(1/n)",
                r_unit: "(kg/m^3)^(1/n)",
                t: "distance from the centre of mass",
                t_unit: "m",
            },
            _ => Roles {
                r: match self {
                    ScenarioKind::CavitationBubble | ScenarioKind::BubbleNDim => "bubble radius",
                    ScenarioKind::TopHatCollapse => "radius of sphere",
                    ScenarioKind::TwoBodyCollision | ScenarioKind::RelativisticOrbitalDecay => {
                        "distance between the masses"
                    }
                    ScenarioKind::UniformFieldFall => "height above ground",
                    ScenarioKind::DipoleAcceleration => "distance to dipole centre",
                    ScenarioKind::HarmonicOscillator => "distance from equilibrium",
                    _ => "distance from centre of potential",
                },
                r_unit: "m",
                t: "time",
                t_unit: "s",
            },
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        ScenarioKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = ScenarioKind::ALL.iter().map(|k| k.name()).collect();
                format!(
                    "unknown scenario `{s}`, expected one of {}",
                    names.join(", ")
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule {
    Positive,
    NonZero,
    /// Integer `N >= 3`.
    DimensionAtLeast3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub unit: &'static str,
    pub default: Option<f64>,
    pub rule: Rule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Roles {
    pub r: &'static str,
    pub r_unit: &'static str,
    pub t: &'static str,
    pub t_unit: &'static str,
}

/// One physical system with its derived scales.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhysicalScenario {
    pub kind: ScenarioKind,
    /// All parameters, defaults included.
    pub params: BTreeMap<String, f64>,
    pub gamma: f64,
    pub r0: f64,
    pub t0: f64,
    pub k: f64,
    pub roles: Roles,
    pub warnings: Vec<String>,
}

impl PhysicalScenario {
    /// Unit of `k`, `R^{1-γ}/T²`.
    pub fn k_unit(&self) -> String {
        format!(
            "{}/{}^2",
            unit_power(self.roles.r_unit, 1.0 - self.gamma),
            self.roles.t_unit
        )
    }
}

/// `unit^e` with parentheses where the unit or exponent needs them.
pub fn unit_power(unit: &str, e: f64) -> String {
    let base = if unit.chars().all(|c| c.is_ascii_alphanumeric()) {
        unit.to_string()
    } else {
        format!("({unit})")
    };
    if e == 1.0 {
        base
    } else if e.fract() == 0.0 && e.abs() < 1e15 {
        format!("{base}^{}", e as i64)
    } else {
        format!("{base}^({e})")
    }
}

fn invalid(kind: ScenarioKind, name: &str, msg: impl Into<String>) -> Error {
    Error::InvalidParameter {
        kind: kind.name(),
        name: name.to_string(),
        msg: msg.into(),
    }
}

/// Builds a scenario from named SI values; absent parameters with a default
/// take it.
pub fn build_scenario(
    kind: ScenarioKind,
    params: &BTreeMap<String, f64>,
) -> Result<PhysicalScenario> {
    let schema = kind.schema();
    for name in params.keys() {
        if !schema.iter().any(|s| s.name == name) {
            let known: Vec<_> = schema.iter().map(|s| s.name).collect();
            return Err(invalid(
                kind,
                name,
                format!("unknown parameter, expected one of {}", known.join(", ")),
            ));
        }
    }
    let mut values = BTreeMap::new();
    for spec in schema {
        let v = match (params.get(spec.name), spec.default) {
            (Some(&v), _) => v,
            (None, Some(d)) => d,
            (None, None) => {
                return Err(Error::MissingParameter {
                    kind: kind.name(),
                    name: spec.name.to_string(),
                })
            }
        };
        if !v.is_finite() {
            return Err(invalid(kind, spec.name, format!("must be finite, got {v}")));
        }
        match spec.rule {
            Rule::Positive if v <= 0.0 => {
                return Err(invalid(
                    kind,
                    spec.name,
                    format!("must be positive, got {v}"),
                ))
            }
            Rule::NonZero if v == 0.0 => return Err(invalid(kind, spec.name, "must be nonzero")),
            Rule::DimensionAtLeast3 if v < 3.0 || v.fract() != 0.0 => {
                return Err(invalid(
                    kind,
                    spec.name,
                    format!("must be an integer >= 3, got {v}"),
                ))
            }
            _ => {}
        }
        values.insert(spec.name.to_string(), v);
    }
    let v = |name: &str| values[name];
    let mut warnings = Vec::new();

    let (gamma, r0, t0) = match kind {
        ScenarioKind::CavitationBubble => (-4.0, v("R0"), v("R0") * (v("rho") / v("dp")).sqrt()),
        ScenarioKind::BubbleNDim => {
            let n = v("N");
            (
                -n - 1.0,
                v("R0"),
                v("R0") * (v("rho") / v("dp")).sqrt() / (n - 2.0).sqrt(),
            )
        }
        ScenarioKind::TopHatCollapse => (
            -2.0,
            v("R0"),
            (3.0 / (4.0 * PI * v("G") * v("rho0"))).sqrt(),
        ),
        ScenarioKind::TwoBodyCollision => {
            let r0 = v("R0");
            (-2.0, r0, r0 * (r0 / (v("G") * (v("M1") + v("M2")))).sqrt())
        }
        ScenarioKind::PowerLawPotentialFall => {
            let a = v("alpha");
            let r0 = v("R0");
            // |α| keeps the time scale real for attractive potentials with α < 0
            (
                a - 1.0,
                r0,
                ((v("L") / r0).powf(a) / a.abs()).sqrt() * r0 / v("V"),
            )
        }
        ScenarioKind::LogPotentialFall => (-1.0, v("R0"), v("R0") / v("V")),
        ScenarioKind::UniformFieldFall => (0.0, v("R0"), (v("R0") / v("g")).sqrt()),
        ScenarioKind::DipoleAcceleration => {
            let r0 = v("R0");
            if v("eps") > 0.01 * r0 {
                warnings.push(format!(
                    "dipole separation eps = {} exceeds 1% of R0 = {r0}; the far-field force law is a poor approximation",
                    v("eps")
                ));
            }
            let t0 = (v("M") * r0.powi(4) / (4.0 * v("eps") * v("k_e") * v("Q") * v("q"))).sqrt();
            (-3.0, r0, t0)
        }
        ScenarioKind::RelativisticOrbitalDecay => {
            let (m1, m2, g, c, r0) = (v("M1"), v("M2"), v("G"), v("c"), v("R0"));
            let t0 = 5.0 * c.powi(5) * r0.powi(4)
                / (64.0 * 3f64.sqrt() * g.powi(3) * m1 * m2 * (m1 + m2));
            (-7.0, r0, t0)
        }
        ScenarioKind::HarmonicOscillator => (1.0, v("R0"), (v("M") / v("K")).sqrt()),
        ScenarioKind::Polytrope => {
            let n = v("n");
            let r0 = v("rho0").powf(1.0 / n);
            let t0 = ((1.0 + n) * v("K") * r0.powf(1.0 - n) / (4.0 * PI * v("G"))).sqrt();
            (n, r0, t0)
        }
    };

    if !(t0 > 0.0 && t0.is_finite() && r0 > 0.0 && r0.is_finite()) {
        return Err(Error::Overflow {
            op: "build_scenario",
            msg: format!("scales R0 = {r0}, T0 = {t0} are not representable"),
        });
    }
    let k = ((1.0 - gamma) * r0.ln() - 2.0 * t0.ln()).exp();
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Overflow {
            op: "build_scenario",
            msg: format!("force constant k for R0 = {r0}, T0 = {t0} is not representable"),
        });
    }
    Ok(PhysicalScenario {
        kind,
        params: values,
        gamma,
        r0,
        t0,
        k,
        roles: kind.roles(),
        warnings,
    })
}

/// `T_c = τ(γ)·T0`.
pub fn physical_collapse_time(sc: &PhysicalScenario) -> Result<f64> {
    Ok(collapse_time(&GammaParam::new(sc.gamma)?)? * sc.t0)
}

/// A sample in scenario units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct DimensionalSample {
    pub T: f64,
    pub R: f64,
    pub Rdot: Velocity,
    pub source: Source,
}

/// `R = R0·r`, `T = T0·t`, `Ṙ = (R0/T0)·ṙ`.
pub fn to_physical(sc: &PhysicalScenario, series: &SampleSeries) -> Vec<DimensionalSample> {
    let speed = sc.r0 / sc.t0;
    series
        .samples
        .iter()
        .map(|s| DimensionalSample {
            T: sc.t0 * s.t,
            R: sc.r0 * s.r,
            Rdot: match s.rdot {
                Velocity::Finite(v) => Velocity::Finite(speed * v),
                other => other,
            },
            source: s.source,
        })
        .collect()
}

/// Inverse of [`to_physical`].
pub fn to_dimensionless(sc: &PhysicalScenario, samples: &[DimensionalSample]) -> SampleSeries {
    let speed = sc.t0 / sc.r0;
    SampleSeries {
        gamma: sc.gamma,
        samples: samples
            .iter()
            .map(|s| Sample {
                t: s.T / sc.t0,
                r: s.R / sc.r0,
                rdot: match s.Rdot {
                    Velocity::Finite(v) => Velocity::Finite(speed * v),
                    other => other,
                },
                source: s.source,
            })
            .collect(),
    }
}

/// Force constant after the substitution `Z = R^δ`, `δ = (1-γ)/2`:
/// `k' = k δ R0^{1+γ}`.
pub fn transform_k(sc: &PhysicalScenario) -> Result<f64> {
    if !(sc.gamma < 1.0) {
        return Err(Error::domain(
            "transform_k",
            format!("requires gamma < 1, got {}", sc.gamma),
        ));
    }
    let delta = 0.5 * (1.0 - sc.gamma);
    Ok(sc.k * delta * ((1.0 + sc.gamma) * sc.r0.ln()).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn titan_implosion() {
        let sc = build_scenario(
            ScenarioKind::CavitationBubble,
            &params(&[("R0", 1.0), ("dp", 3.5e7), ("rho", 1e3)]),
        )
        .unwrap();
        assert_eq!(sc.gamma, -4.0);
        assert!(rel(sc.t0, 5.345_224_838e-3) < 1e-9);
        let tc = physical_collapse_time(&sc).unwrap();
        assert!((4.8e-3..=5.0e-3).contains(&tc), "{tc}");
        // Rayleigh: k = R0³ Δp / ρ
        assert!(rel(sc.k, 3.5e4) < 1e-12);
        // k' = 5Δp/(2ρ)
        assert!(rel(transform_k(&sc).unwrap(), 5.0 * 3.5e7 / 2e3) < 1e-12);
    }

    #[test]
    fn uniform_field() {
        let sc = build_scenario(
            ScenarioKind::UniformFieldFall,
            &params(&[("R0", 1.0), ("g", 9.81)]),
        )
        .unwrap();
        assert_eq!(sc.gamma, 0.0);
        assert!(rel(sc.t0, 0.319_275_428_1) < 1e-9);
        let tc = physical_collapse_time(&sc).unwrap();
        assert!(rel(tc, (2.0f64 / 9.81).sqrt()) < 1e-14);
        let sc4 = build_scenario(
            ScenarioKind::UniformFieldFall,
            &params(&[("R0", 4.0), ("g", 9.81)]),
        )
        .unwrap();
        assert!(rel(physical_collapse_time(&sc4).unwrap(), 2.0 * tc) < 1e-15);
    }

    #[test]
    fn tophat_and_two_body_carry_gm() {
        let rho0 = 1e-20;
        let sc = build_scenario(
            ScenarioKind::TopHatCollapse,
            &params(&[("rho0", rho0), ("R0", 3e20)]),
        )
        .unwrap();
        assert_eq!(sc.gamma, -2.0);
        assert!(
            rel(
                sc.t0,
                (3.0 / (4.0 * PI * GRAVITATIONAL_CONSTANT * rho0)).sqrt()
            ) < 1e-15
        );
        let mass = 4.0 / 3.0 * PI * 3e20f64.powi(3) * rho0;
        assert!(rel(sc.k, GRAVITATIONAL_CONSTANT * mass) < 1e-12);
        assert!(
            rel(
                transform_k(&sc).unwrap(),
                1.5 * GRAVITATIONAL_CONSTANT * mass / 3e20
            ) < 1e-12
        );

        let sc = build_scenario(
            ScenarioKind::TwoBodyCollision,
            &params(&[("R0", 1e11), ("M1", 2e30), ("M2", 6e24)]),
        )
        .unwrap();
        assert!(rel(sc.k, GRAVITATIONAL_CONSTANT * (2e30 + 6e24)) < 1e-12);
    }

    #[test]
    fn table_exponents_and_times() {
        type Case = (ScenarioKind, Vec<(&'static str, f64)>, f64);
        let cases: Vec<Case> = vec![
            (
                ScenarioKind::BubbleNDim,
                vec![("N", 5.0), ("R0", 1.0), ("dp", 1e5), ("rho", 1e3)],
                -6.0,
            ),
            (
                ScenarioKind::PowerLawPotentialFall,
                vec![("alpha", -1.0), ("L", 1.0), ("V", 1.0), ("R0", 2.0)],
                -2.0,
            ),
            (
                ScenarioKind::LogPotentialFall,
                vec![("V", 2e5), ("R0", 3e19)],
                -1.0,
            ),
            (
                ScenarioKind::DipoleAcceleration,
                vec![
                    ("M", 1e-3),
                    ("R0", 1.0),
                    ("eps", 1e-3),
                    ("Q", 1e-6),
                    ("q", 1e-6),
                ],
                -3.0,
            ),
            (
                ScenarioKind::RelativisticOrbitalDecay,
                vec![("R0", 1e9), ("M1", 3e30), ("M2", 3e30)],
                -7.0,
            ),
            (
                ScenarioKind::HarmonicOscillator,
                vec![("M", 2.0), ("K", 8.0)],
                1.0,
            ),
            (
                ScenarioKind::Polytrope,
                vec![("n", 1.5), ("K", 1e7), ("rho0", 1e3)],
                1.5,
            ),
        ];
        for (kind, p, gamma) in cases {
            let sc = build_scenario(kind, &params(&p)).unwrap();
            assert_eq!(sc.gamma, gamma, "{kind}");
            assert!(sc.warnings.is_empty());
        }
        let sc = build_scenario(
            ScenarioKind::HarmonicOscillator,
            &params(&[("M", 2.0), ("K", 8.0)]),
        )
        .unwrap();
        assert!(rel(physical_collapse_time(&sc).unwrap(), PI / 2.0 * 0.5) < 1e-15);
        let sc = build_scenario(
            ScenarioKind::RelativisticOrbitalDecay,
            &params(&[("R0", 1e9), ("M1", 3e30), ("M2", 3e30)]),
        )
        .unwrap();
        let tau = physical_collapse_time(&sc).unwrap() / sc.t0;
        assert!((tau - 0.746_83).abs() < 5e-6);
        assert_eq!(
            build_scenario(
                ScenarioKind::Polytrope,
                &params(&[("n", 2.0), ("K", 1.0), ("rho0", 4.0)])
            )
            .unwrap()
            .r0,
            2.0
        );
    }

    #[test]
    fn time_scale_consistency() {
        // T0 = √(R0^{1-γ}/k) for every kind with assorted parameters.
        let mut seed = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            0.5 + (seed >> 11) as f64 / (1u64 << 53) as f64 * 4.0
        };
        for kind in ScenarioKind::ALL {
            for _ in 0..100 {
                let mut p = BTreeMap::new();
                for spec in kind.schema() {
                    let v = match spec.rule {
                        Rule::DimensionAtLeast3 => 3.0 + (next() * 2.0).floor(),
                        _ => next(),
                    };
                    p.insert(spec.name.to_string(), v);
                }
                let sc = build_scenario(kind, &p).unwrap();
                let t0 = (sc.r0.powf(1.0 - sc.gamma) / sc.k).sqrt();
                assert!(rel(t0, sc.t0) < 1e-12, "{kind}: {p:?}");
            }
        }
    }

    #[test]
    fn schema_violations() {
        let err = build_scenario(
            ScenarioKind::CavitationBubble,
            &params(&[("R0", 1.0), ("dp", 1.0)]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::MissingParameter { .. }));
        let err = build_scenario(
            ScenarioKind::CavitationBubble,
            &params(&[("R0", -1.0), ("dp", 1.0), ("rho", 1.0)]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidParameter { .. }));
        assert!(build_scenario(
            ScenarioKind::BubbleNDim,
            &params(&[("N", 2.0), ("R0", 1.0), ("dp", 1.0), ("rho", 1.0)])
        )
        .is_err());
        assert!(build_scenario(
            ScenarioKind::BubbleNDim,
            &params(&[("N", 3.5), ("R0", 1.0), ("dp", 1.0), ("rho", 1.0)])
        )
        .is_err());
        assert!(build_scenario(
            ScenarioKind::UniformFieldFall,
            &params(&[("R0", 1.0), ("g", 1.0), ("x", 1.0)])
        )
        .is_err());
        assert!(build_scenario(
            ScenarioKind::PowerLawPotentialFall,
            &params(&[("alpha", 0.0), ("L", 1.0), ("V", 1.0), ("R0", 1.0)])
        )
        .is_err());
    }

    #[test]
    fn dipole_warns_outside_far_field() {
        let sc = build_scenario(
            ScenarioKind::DipoleAcceleration,
            &params(&[
                ("M", 1.0),
                ("R0", 1.0),
                ("eps", 0.1),
                ("Q", 1.0),
                ("q", 1.0),
            ]),
        )
        .unwrap();
        assert_eq!(sc.warnings.len(), 1);
    }

    #[test]
    fn transform_k_fixed_point_and_limits() {
        let sc = build_scenario(
            ScenarioKind::LogPotentialFall,
            &params(&[("V", 3.0), ("R0", 7.0)]),
        )
        .unwrap();
        assert!(rel(transform_k(&sc).unwrap(), sc.k) < 1e-15);
        let sc = build_scenario(
            ScenarioKind::HarmonicOscillator,
            &params(&[("M", 1.0), ("K", 1.0)]),
        )
        .unwrap();
        assert!(transform_k(&sc).is_err());
    }

    #[test]
    fn physical_roundtrip() {
        use crate::collapse::CollapseSolution;
        let sc = build_scenario(
            ScenarioKind::CavitationBubble,
            &params(&[("R0", 2e-3), ("dp", 1e5), ("rho", 998.0)]),
        )
        .unwrap();
        let series = SampleSeries::explicit(&CollapseSolution::new(-4.0).unwrap(), 50).unwrap();
        let phys = to_physical(&sc, &series);
        assert_eq!((phys[0].T, phys[0].R), (0.0, 2e-3));
        assert_eq!(phys[49].R, 0.0);
        assert!(rel(phys[49].T, physical_collapse_time(&sc).unwrap()) < 1e-15);
        let back = to_dimensionless(&sc, &phys);
        for (a, b) in back.samples.iter().zip(&series.samples) {
            assert!((a.t - b.t).abs() <= 1e-14 * b.t.max(1.0));
            assert!((a.r - b.r).abs() <= 1e-14);
        }
    }

    #[test]
    fn kind_names_roundtrip() {
        for kind in ScenarioKind::ALL {
            assert_eq!(kind.name().parse::<ScenarioKind>().unwrap(), kind);
        }
        assert!("cavity".parse::<ScenarioKind>().is_err());
        assert_eq!(ScenarioKind::Polytrope.roles().t_unit, "m");
    }
}
