use std::f64::consts::PI;

use rayon::prelude::*;
use thiserror::Error;

use tlvac::estimator::{
    dephasing_rate_from_time, detectability, shift_at, CircuitParams, DephasingConvention,
    SPEED_OF_LIGHT,
};
use tlvac::mirror1d::{
    casimir_energy_1d, casimir_energy_weak, casimir_force_1d, ReflectivityModel,
};
use tlvac::modes::{mode_envelope, CoaxGeometry, ModeCutoff, ModeKind};
use tlvac::potential::{
    enhancement_ratio, f_asymptotic_long, f_asymptotic_short, f_two_level, pair_kernel,
    u_multilevel, u_oscillatory, u_two_level, u_wick, CurveMethod, CurveUnits, DipoleSpec, Regime,
    TLGeometry, Transition,
};
use tlvac::quadrature::QuadratureSpec;

use crate::config::{ConfigError, Grid, Params, Spacing, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Curve,
    Ratio,
    Pair,
    Multilevel,
    WickCheck,
    Mirror,
    Modes,
    Estimate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Curve => "curve",
            Command::Ratio => "ratio",
            Command::Pair => "pair",
            Command::Multilevel => "multilevel",
            Command::WickCheck => "wick-check",
            Command::Mirror => "mirror",
            Command::Modes => "modes",
            Command::Estimate => "estimate",
        }
    }

    pub fn defaults(self) -> (Vec<(&'static str, Value)>, Grid) {
        let log = |z_min, z_max, points| Grid {
            z_min,
            z_max,
            points,
            spacing: Spacing::Log,
        };
        let num = Value::Num;
        let text = |s: &str| Value::Text(s.to_string());
        match self {
            Command::Curve => (
                vec![
                    ("method", text("closed_form")),
                    ("rel_tol", num(1e-10)),
                    ("oscillatory_rel_tol", num(1e-7)),
                ],
                log(1e-4, 1e2, 200),
            ),
            Command::Ratio => (
                vec![("a_over_lambda", num(1e-4)), ("regime", text("auto"))],
                log(1e-4, 1e2, 200),
            ),
            Command::Pair => (vec![("b", num(2.0))], log(1e-4, 1e2, 200)),
            Command::Multilevel => (dipole_keys(), log(1e-3, 10.0, 100)),
            Command::WickCheck => {
                let mut keys = dipole_keys();
                keys.extend([
                    ("rel_tol", num(1e-10)),
                    ("oscillatory", Value::Bool(false)),
                    ("oscillatory_rel_tol", num(1e-7)),
                ]);
                (keys, log(1e-4, 1e2, 100))
            }
            Command::Mirror => (
                vec![
                    ("model", text("power_law")),
                    ("quantity", text("weak")),
                    ("r0", num(0.1)),
                    ("p", num(1.0)),
                    ("cutoff", num(1.0)),
                    ("r0_2", num(-1.0)),
                ],
                log(1.0, 1e4, 100),
            ),
            Command::Modes => (
                vec![
                    ("a", num(1.0)),
                    ("b", num(2.0)),
                    ("rho", num(1.0)),
                    ("lambda_over_a", num(1e4)),
                    ("tm_count", Value::Int(1)),
                    ("include_te", Value::Bool(true)),
                    ("threshold", num(0.01)),
                ],
                log(0.1, 100.0, 200),
            ),
            Command::Estimate => (
                vec![
                    ("g_over_2pi_hz", num(360e6)),
                    ("f_e_hz", num(5e9)),
                    ("dephasing_hz", num(1e6)),
                    ("t2_s", num(0.0)),
                    ("dephasing_convention", text("angular")),
                    ("phase_velocity", num(SPEED_OF_LIGHT)),
                ],
                log(1e-3, 1e-2, 2),
            ),
        }
    }
}

fn dipole_keys() -> Vec<(&'static str, Value)> {
    vec![
        ("energies", Value::List(vec![1.0])),
        ("moments", Value::List(vec![1.0])),
        ("energies2", Value::List(vec![])),
        ("moments2", Value::List(vec![])),
        ("area1", Value::Num(1.0)),
        ("area2", Value::Num(1.0)),
        ("permittivity", Value::Num(1.0)),
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub enum Extra {
    Num(f64),
    Bool(bool),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub z: f64,
    pub value: f64,
    pub method: &'static str,
    pub units: &'static str,
    pub extra: Vec<(&'static str, Extra)>,
}

#[derive(Debug, Error)]
pub enum Failure {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("numerical failure at z = {}: {message}", format_zs(.zs))]
    Numerical { zs: Vec<f64>, message: String },
}

fn format_zs(zs: &[f64]) -> String {
    zs.iter()
        .map(|z| format!("{z:e}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn bad(key: &str, msg: impl Into<String>) -> Failure {
    Failure::Config(ConfigError::BadValue {
        key: key.to_string(),
        msg: msg.into(),
    })
}

fn setup<T>(key: &str, r: tlvac::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| bad(key, e.to_string()))
}

/// Evaluates `eval` on every node in parallel and keeps grid order.
fn sweep<F>(nodes: &[f64], eval: F) -> Result<Vec<Row>, Failure>
where
    F: Fn(f64) -> tlvac::Result<Row> + Sync,
{
    let results: Vec<(f64, tlvac::Result<Row>)> = nodes.par_iter().map(|&z| (z, eval(z))).collect();
    let mut rows = Vec::with_capacity(results.len());
    let mut failed = Vec::new();
    let mut message = String::new();
    for (z, r) in results {
        match r {
            Ok(row) => rows.push(row),
            Err(e) => {
                if failed.is_empty() {
                    message = e.to_string();
                }
                failed.push(z);
            }
        }
    }
    if failed.is_empty() {
        Ok(rows)
    } else {
        Err(Failure::Numerical {
            zs: failed,
            message,
        })
    }
}

fn quad_spec(key: &str, rel_tol: f64) -> Result<QuadratureSpec, Failure> {
    let spec = QuadratureSpec::default().with_rel_tol(rel_tol);
    setup(key, spec.validate().map(|_| spec))
}

pub fn run(command: Command, p: &Params, nodes: &[f64]) -> Result<Vec<Row>, Failure> {
    match command {
        Command::Curve => curve(p, nodes),
        Command::Ratio => ratio(p, nodes),
        Command::Pair => pair(p, nodes),
        Command::Multilevel => multilevel(p, nodes),
        Command::WickCheck => wick_check(p, nodes),
        Command::Mirror => mirror(p, nodes),
        Command::Modes => modes(p, nodes),
        Command::Estimate => estimate(p, nodes),
    }
}

/// Two-level dipole with λ = 1, ħ = c = 1 and unit moment and area.
fn unit_two_level() -> (DipoleSpec, TLGeometry) {
    let d = DipoleSpec::two_level(1.0, 2.0 * PI, 1.0).expect("valid constants");
    let g = TLGeometry::natural(1.0).expect("valid constants");
    (d, g)
}

fn curve(p: &Params, nodes: &[f64]) -> Result<Vec<Row>, Failure> {
    let method = p.choice(
        "method",
        &[
            "closed_form",
            "asymptotic_short",
            "asymptotic_long",
            "wick",
            "oscillatory",
        ],
    )?;
    let spec = quad_spec("rel_tol", p.num("rel_tol"))?;
    let osc_spec = quad_spec("oscillatory_rel_tol", p.num("oscillatory_rel_tol"))?;
    let (d, g) = unit_two_level();
    // U = −F/4 for unit moment, area and wavelength
    let m = match method.as_str() {
        "closed_form" => CurveMethod::ClosedForm,
        "asymptotic_short" => CurveMethod::AsymptoticShort,
        "asymptotic_long" => CurveMethod::AsymptoticLong,
        "wick" => CurveMethod::Wick,
        _ => CurveMethod::Oscillatory,
    };
    let f = |xi: f64| -> tlvac::Result<f64> {
        match m {
            CurveMethod::ClosedForm => f_two_level(xi),
            CurveMethod::AsymptoticShort => f_asymptotic_short(xi),
            CurveMethod::AsymptoticLong => f_asymptotic_long(xi),
            CurveMethod::Wick => Ok(-4.0 * u_wick(&d, &d, &g, xi, &spec)?),
            _ => Ok(-4.0 * u_oscillatory(&d, &d, &g, xi, &osc_spec)?),
        }
    };
    sweep(nodes, |xi| {
        Ok(Row {
            z: xi,
            value: f(xi)?,
            method: m.as_str(),
            units: CurveUnits::DimensionlessF.as_str(),
            extra: vec![],
        })
    })
}

fn ratio(p: &Params, nodes: &[f64]) -> Result<Vec<Row>, Failure> {
    let a = p.num("a_over_lambda");
    if !(a > 0.0) {
        return Err(bad("a_over_lambda", "must be > 0"));
    }
    let regime = p.choice("regime", &["auto", "short", "long"])?;
    let d = DipoleSpec::two_level(1.0, 2.0 * PI, 1.0).expect("valid constants");
    let g = setup("a_over_lambda", TLGeometry::natural(a * a))?;
    sweep(nodes, |xi| {
        let r = match regime.as_str() {
            "short" => Regime::Short,
            "long" => Regime::Long,
            _ if xi < 1.0 => Regime::Short,
            _ => Regime::Long,
        };
        let method = match r {
            Regime::Short => CurveMethod::FreespaceVdw,
            Regime::Long => CurveMethod::FreespaceCp,
        };
        Ok(Row {
            z: xi,
            value: enhancement_ratio(&d, &g, xi, r)?,
            method: method.as_str(),
            units: CurveUnits::Ratio.as_str(),
            extra: vec![],
        })
    })
}

fn pair(p: &Params, nodes: &[f64]) -> Result<Vec<Row>, Failure> {
    let b = p.num("b");
    if !(b > 0.0) {
        return Err(bad("b", "must be > 0"));
    }
    sweep(nodes, |xi| {
        Ok(Row {
            z: xi,
            value: pair_kernel(xi, b)?,
            method: CurveMethod::PairSum.as_str(),
            units: CurveUnits::DimensionlessF.as_str(),
            extra: vec![],
        })
    })
}

/// Dipoles in units where the first transition of dipole 1 has λ = 1.
fn dipoles(p: &Params) -> Result<(DipoleSpec, DipoleSpec, TLGeometry), Failure> {
    let build = |ek: &str, mk: &str, e: &[f64], m: &[f64]| -> Result<DipoleSpec, Failure> {
        if e.len() != m.len() {
            return Err(bad(mk, format!("needs one entry per value of {ek}")));
        }
        let ts = e
            .iter()
            .zip(m)
            .map(|(&e, &m)| setup(ek, Transition::natural(m, 2.0 * PI * e)))
            .collect::<Result<Vec<_>, _>>()?;
        setup(ek, DipoleSpec::new(ts))
    };
    let e1 = p.list("energies");
    let m1 = p.list("moments");
    let d1 = build("energies", "moments", e1, m1)?;
    let e2 = if p.list("energies2").is_empty() {
        e1
    } else {
        p.list("energies2")
    };
    let m2 = if p.list("moments2").is_empty() {
        m1
    } else {
        p.list("moments2")
    };
    let d2 = build("energies2", "moments2", e2, m2)?;
    let g = setup(
        "area1",
        TLGeometry::new(p.num("area1"), p.num("area2"), p.num("permittivity"), 1.0),
    )?;
    Ok((d1, d2, g))
}

fn multilevel(p: &Params, nodes: &[f64]) -> Result<Vec<Row>, Failure> {
    let (d1, d2, g) = dipoles(p)?;
    sweep(nodes, |z| {
        Ok(Row {
            z,
            value: u_multilevel(&d1, &d2, &g, z)?,
            method: CurveMethod::PairSum.as_str(),
            units: CurveUnits::Energy.as_str(),
            extra: vec![],
        })
    })
}

fn wick_check(p: &Params, nodes: &[f64]) -> Result<Vec<Row>, Failure> {
    let (d1, d2, g) = dipoles(p)?;
    let spec = quad_spec("rel_tol", p.num("rel_tol"))?;
    let osc_spec = quad_spec("oscillatory_rel_tol", p.num("oscillatory_rel_tol"))?;
    let with_osc = p.flag("oscillatory");
    let two_level = d1.transitions().len() == 1 && d1 == d2;
    sweep(nodes, |z| {
        let w = u_wick(&d1, &d2, &g, z, &spec)?;
        let reference = if two_level {
            u_two_level(&d1, &g, z)?
        } else {
            u_multilevel(&d1, &d2, &g, z)?
        };
        let mut extra = vec![
            ("reference", Extra::Num(reference)),
            ("rel_diff", Extra::Num(((w - reference) / reference).abs())),
        ];
        if with_osc {
            let o = u_oscillatory(&d1, &d2, &g, z, &osc_spec)?;
            extra.push(("oscillatory", Extra::Num(o)));
            extra.push(("rel_diff_oscillatory", Extra::Num(((o - w) / w).abs())));
        }
        Ok(Row {
            z,
            value: w,
            method: CurveMethod::Wick.as_str(),
            units: CurveUnits::Energy.as_str(),
            extra,
        })
    })
}

fn mirror(p: &Params, nodes: &[f64]) -> Result<Vec<Row>, Failure> {
    let model = p.choice("model", &["constant", "power_law"])?;
    let quantity = p.choice("quantity", &["weak", "full", "force"])?;
    let make = |r0: f64| -> Result<ReflectivityModel, Failure> {
        let m = match model.as_str() {
            "constant" => ReflectivityModel::constant(r0),
            _ => ReflectivityModel::power_law(r0, p.num("p"), p.num("cutoff")),
        };
        setup("r0", m)
    };
    let r1 = make(p.num("r0"))?;
    let r2 = if p.num("r0_2") < 0.0 {
        r1.clone()
    } else {
        make(p.num("r0_2"))?
    };
    let spec = QuadratureSpec::default();
    let (method, units): (&'static str, &'static str) = match quantity.as_str() {
        "weak" => ("mirror_weak", "energy"),
        "full" => ("mirror_full", "energy"),
        _ => ("mirror_force", "force"),
    };
    sweep(nodes, |z| {
        let value = match quantity.as_str() {
            "weak" => casimir_energy_weak(&r1, &r2, z, &spec)?,
            "full" => casimir_energy_1d(&r1, &r2, z, &spec)?,
            _ => casimir_force_1d(&r1, &r2, z, &spec)?,
        };
        Ok(Row {
            z,
            value,
            method,
            units,
            extra: vec![],
        })
    })
}

fn modes(p: &Params, nodes: &[f64]) -> Result<Vec<Row>, Failure> {
    let a = p.num("a");
    let geom = setup("a", CoaxGeometry::new(a, p.num("b"), p.num("rho")))?;
    let lambda = p.num("lambda_over_a") * a;
    if !(lambda > 0.0) {
        return Err(bad("lambda_over_a", "must be > 0"));
    }
    let threshold = p.num("threshold");
    if !(threshold > 0.0) {
        return Err(bad("threshold", "must be > 0"));
    }
    let cutoffs: Vec<ModeCutoff> = geom
        .approximate_cutoffs(p.int("tm_count") as u32)
        .into_iter()
        .filter(|c| p.flag("include_te") || c.kind != ModeKind::TE)
        .collect();
    if cutoffs.is_empty() {
        return Err(bad("tm_count", "no modes selected"));
    }
    let sqrt_area = geom.effective_area().sqrt();
    sweep(nodes, |z| {
        let envelope = cutoffs
            .iter()
            .map(|c| mode_envelope(c, z))
            .sum::<tlvac::Result<f64>>()?;
        let f = f_two_level(z / lambda)?;
        let relative = envelope / f;
        Ok(Row {
            z,
            value: envelope,
            method: "mode_sum",
            units: CurveUnits::Ratio.as_str(),
            extra: vec![
                ("f_tem", Extra::Num(f)),
                ("relative", Extra::Num(relative)),
                ("tem_dominant", Extra::Bool(z >= a && relative < threshold)),
                ("sqrt_area", Extra::Num(sqrt_area)),
            ],
        })
    })
}

fn estimate(p: &Params, nodes: &[f64]) -> Result<Vec<Row>, Failure> {
    let convention = match p
        .choice("dephasing_convention", &["angular", "inverse"])?
        .as_str()
    {
        "angular" => DephasingConvention::Angular,
        _ => DephasingConvention::Inverse,
    };
    let t2 = p.num("t2_s");
    let dephasing = if t2 > 0.0 {
        setup("t2_s", dephasing_rate_from_time(t2, convention))?
    } else {
        p.num("dephasing_hz")
    };
    let params = setup(
        "g_over_2pi_hz",
        CircuitParams::new(
            2.0 * PI * p.num("g_over_2pi_hz"),
            2.0 * PI * p.num("f_e_hz"),
            dephasing,
        ),
    )?;
    let c = p.num("phase_velocity");
    if !(c > 0.0) {
        return Err(bad("phase_velocity", "must be > 0"));
    }
    let lambda = params.wavelength(c);
    sweep(nodes, |xi| {
        let s = shift_at(&params, xi)?;
        let v = detectability(&params, &s);
        Ok(Row {
            z: xi,
            value: s.shift_hz,
            method: CurveMethod::ClosedForm.as_str(),
            units: "hz",
            extra: vec![
                ("prefactor_hz", Extra::Num(s.prefactor_hz)),
                ("dephasing_hz", Extra::Num(dephasing)),
                ("ratio", Extra::Num(v.ratio)),
                ("resolvable", Extra::Bool(v.resolvable)),
                ("z_m", Extra::Num(xi * lambda)),
            ],
        })
    })
}
