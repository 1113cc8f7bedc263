//! Casimir interaction of two scatterers on a one-dimensional line,
//! characterised by their reflection coefficients on the imaginary axis.
//!
//! Units: ħ = c = 1, so `u` is both an imaginary frequency and wavenumber.
//! Sign convention: attractive energies and forces are negative.

use std::f64::consts::PI;

use log::warn;

use crate::error::{domain, require_positive, Error, Result};
use crate::potential::{alpha_imaginary, u_wick, DipoleSpec, TLGeometry};
use crate::quadrature::{integrate_damped, QuadratureSpec};

/// Above this |r₁r₂| the weak-scatterer energy is flagged.
pub const WEAK_LIMIT: f64 = 0.1;

const PASSIVITY_SAMPLES: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReflectivityKind {
    Constant,
    PowerLaw,
    Dipole,
}

/// Reflection coefficient r(iu) of a lossless scatterer.
#[derive(Debug, Clone, PartialEq)]
pub struct ReflectivityModel {
    pub kind: ReflectivityKind,
    pub r0: f64,
    /// Low-frequency power, `r ∝ u^p`.
    pub exponent_p: f64,
    /// `u_c` of the power-law cutoff `e^{−u/u_c}`.
    pub cutoff: f64,
    pub dipole_ref: Option<DipoleSpec>,
    /// κ in `r(iu) = κ u α(iu)` for the dipole kind.
    pub coupling: f64,
}

impl ReflectivityModel {
    pub fn constant(r0: f64) -> Result<Self> {
        Self {
            kind: ReflectivityKind::Constant,
            r0,
            exponent_p: 0.0,
            cutoff: f64::INFINITY,
            dipole_ref: None,
            coupling: 0.0,
        }
        .checked()
    }

    /// `r(iu) = r₀ (u/u_c)^p e^{−u/u_c}`.
    pub fn power_law(r0: f64, exponent_p: f64, cutoff: f64) -> Result<Self> {
        if !(exponent_p >= 0.0 && exponent_p.is_finite()) {
            return domain(format!("exponent p must be >= 0, got {exponent_p}"));
        }
        require_positive("cutoff", cutoff)?;
        Self {
            kind: ReflectivityKind::PowerLaw,
            r0,
            exponent_p,
            cutoff,
            dipole_ref: None,
            coupling: 0.0,
        }
        .checked()
    }

    /// `r(iu) = κ u α(iu)`.
    pub fn dipole(dipole: DipoleSpec, coupling: f64) -> Result<Self> {
        if !coupling.is_finite() {
            return domain(format!("coupling must be finite, got {coupling}"));
        }
        Self {
            kind: ReflectivityKind::Dipole,
            r0: 0.0,
            exponent_p: 1.0,
            cutoff: f64::INFINITY,
            dipole_ref: Some(dipole),
            coupling,
        }
        .checked()
    }

    fn checked(self) -> Result<Self> {
        if !self.r0.is_finite() {
            return domain(format!("r0 must be finite, got {}", self.r0));
        }
        let worst = self.max_abs();
        if worst > 1.0 {
            return domain(format!(
                "reflectivity is not passive: |r(iu)| reaches {worst} on the imaginary axis"
            ));
        }
        Ok(self)
    }

    /// r(iu).
    pub fn at(&self, u: f64) -> f64 {
        match self.kind {
            ReflectivityKind::Constant => self.r0,
            ReflectivityKind::PowerLaw => {
                let x = u / self.cutoff;
                if x == 0.0 {
                    if self.exponent_p == 0.0 {
                        self.r0
                    } else {
                        0.0
                    }
                } else {
                    self.r0 * (self.exponent_p * x.ln() - x).exp()
                }
            }
            ReflectivityKind::Dipole => {
                let d = self
                    .dipole_ref
                    .as_ref()
                    .expect("dipole kind carries a dipole");
                self.coupling * u * alpha_imaginary(d, u).unwrap_or(0.0)
            }
        }
    }

    /// Natural frequency scale of the model, used to place sample grids.
    pub fn scale(&self) -> f64 {
        match self.kind {
            ReflectivityKind::Constant => 1.0,
            ReflectivityKind::PowerLaw => self.cutoff,
            ReflectivityKind::Dipole => self
                .dipole_ref
                .as_ref()
                .map_or(1.0, |d| d.transitions()[0].wavenumber),
        }
    }

    fn sample_grid(&self) -> impl Iterator<Item = f64> {
        let s = self.scale();
        (0..PASSIVITY_SAMPLES)
            .map(move |i| s * 10f64.powf(-8.0 + 16.0 * i as f64 / (PASSIVITY_SAMPLES - 1) as f64))
    }

    /// Largest |r(iu)| over a log grid spanning 16 decades around the model
    /// scale, plus the analytic maximum where one is known.
    pub fn max_abs(&self) -> f64 {
        let sampled = self
            .sample_grid()
            .map(|u| self.at(u).abs())
            .fold(0.0, f64::max);
        let peak = match self.kind {
            ReflectivityKind::Constant => self.r0.abs(),
            ReflectivityKind::PowerLaw => self.at(self.exponent_p * self.cutoff).abs(),
            ReflectivityKind::Dipole => 0.0,
        };
        sampled.max(peak)
    }
}

fn product_max(r1: &ReflectivityModel, r2: &ReflectivityModel) -> f64 {
    r1.sample_grid()
        .chain(r2.sample_grid())
        .map(|u| (r1.at(u) * r2.at(u)).abs())
        .fold(0.0, f64::max)
        .max(
            if r1.kind == ReflectivityKind::Constant && r2.kind == ReflectivityKind::Constant {
                (r1.r0 * r2.r0).abs()
            } else {
                0.0
            },
        )
}

fn check_pair(r1: &ReflectivityModel, r2: &ReflectivityModel) -> Result<()> {
    let m = product_max(r1, r2);
    if m > 1.0 {
        return domain(format!("|r1 r2| reaches {m} > 1 on the imaginary axis"));
    }
    Ok(())
}

/// `1 − R e^{−2uz}` without cancellation when both R → 1 and uz → 0.
fn one_minus(r: f64, u: f64, z: f64) -> f64 {
    (1.0 - r) - r * (-2.0 * u * z).exp_m1()
}

/// Damped integral with the integrand rescaled to O(1), so that `abs_tol`
/// does not swamp the tiny energies of large separations.
fn damped(f: impl Fn(f64) -> f64, spec: &QuadratureSpec) -> Result<f64> {
    let size = (-60..=90)
        .map(|e| {
            let u = 2f64.powi(e);
            (f(u) * u).abs()
        })
        .fold(0.0, f64::max);
    if size == 0.0 {
        return Ok(0.0);
    }
    if !size.is_finite() {
        return domain("integrand is not finite");
    }
    let r = integrate_damped(|u| f(u) / size, spec);
    if r.converged {
        Ok(r.value * size)
    } else {
        Err(Error::NonConvergence {
            value: r.value,
            est_error: r.est_error,
        })
    }
}

/// Casimir force `f = −(1/π) ∫₀^∞ u R e^{−2uz} / (1 − R e^{−2uz}) du`,
/// `R = r₁(iu) r₂(iu)`.
pub fn casimir_force_1d(
    r1: &ReflectivityModel,
    r2: &ReflectivityModel,
    z: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    require_positive("z", z)?;
    check_pair(r1, r2)?;
    let v = damped(
        |u| {
            let r = r1.at(u) * r2.at(u);
            if r == 0.0 {
                return 0.0;
            }
            let e = (-2.0 * u * z).exp();
            u * r * e / one_minus(r, u, z)
        },
        spec,
    )?;
    Ok(-v / PI)
}

/// Casimir energy `U = (1/2π) ∫₀^∞ ln(1 − R e^{−2uz}) du`.
pub fn casimir_energy_1d(
    r1: &ReflectivityModel,
    r2: &ReflectivityModel,
    z: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    require_positive("z", z)?;
    check_pair(r1, r2)?;
    let v = damped(
        |u| {
            let r = r1.at(u) * r2.at(u);
            let re = r * (-2.0 * u * z).exp();
            if re.abs() < 0.5 {
                (-re).ln_1p()
            } else {
                one_minus(r, u, z).ln()
            }
        },
        spec,
    )?;
    Ok(v / (2.0 * PI))
}

/// Weak-scatterer energy `U = −(1/2π) ∫₀^∞ r₁(iu) r₂(iu) e^{−2uz} du`.
pub fn casimir_energy_weak(
    r1: &ReflectivityModel,
    r2: &ReflectivityModel,
    z: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    require_positive("z", z)?;
    let m = product_max(r1, r2);
    if m >= WEAK_LIMIT {
        warn!("weak-scatterer energy used with |r1 r2| up to {m}");
    }
    let v = damped(|u| r1.at(u) * r2.at(u) * (-2.0 * u * z).exp(), spec)?;
    Ok(-v / (2.0 * PI))
}

/// Coupling κ that makes the weak energy of two dipole reflectivities
/// `κ u α(iu)` equal [`u_wick`] at `z_ref`. The same κ is applied to both.
///
/// With ħ = c = 1 the result is `1/(ε √(A₁A₂))` up to quadrature error.
pub fn calibrate_dipole_coupling(
    dipole_1: &DipoleSpec,
    dipole_2: &DipoleSpec,
    geom: &TLGeometry,
    z_ref: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let target = u_wick(dipole_1, dipole_2, geom, z_ref, spec)?;
    let unit_1 = ReflectivityModel {
        kind: ReflectivityKind::Dipole,
        r0: 0.0,
        exponent_p: 1.0,
        cutoff: f64::INFINITY,
        dipole_ref: Some(dipole_1.clone()),
        coupling: 1.0,
    };
    let unit_2 = ReflectivityModel {
        dipole_ref: Some(dipole_2.clone()),
        ..unit_1.clone()
    };
    let unit = casimir_energy_weak(&unit_1, &unit_2, z_ref, spec)?;
    if unit == 0.0 || target == 0.0 {
        return domain("calibration needs dipoles with nonzero moments");
    }
    Ok((target / unit).sqrt())
}

/// Least-squares slope of `−log|U|` against `log z` of the weak energy.
pub fn scaling_exponent(
    r1: &ReflectivityModel,
    r2: &ReflectivityModel,
    z_grid: &[f64],
    spec: &QuadratureSpec,
) -> Result<f64> {
    if z_grid.len() < 3 {
        return Err(Error::Fit("need at least 3 grid points".into()));
    }
    if z_grid.iter().any(|&z| !(z > 0.0 && z.is_finite())) {
        return domain("z grid must be positive and finite");
    }
    let (lo, hi) = z_grid
        .iter()
        .fold((f64::INFINITY, 0.0_f64), |(a, b), &z| (a.min(z), b.max(z)));
    if hi / lo < 10.0 * (1.0 - 1e-12) {
        return Err(Error::Fit(format!(
            "z grid spans {:.3} decades; at least one is needed",
            (hi / lo).log10()
        )));
    }
    let mut pts = Vec::with_capacity(z_grid.len());
    for &z in z_grid {
        let u = casimir_energy_weak(r1, r2, z, spec)?;
        pts.push((z, u.abs()));
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    if pts.iter().any(|p| p.1 == 0.0) || pts.windows(2).any(|w| !(w[1].1 < w[0].1)) {
        return Err(Error::Fit(
            "|U| is not strictly decreasing on the grid".into(),
        ));
    }
    let n = pts.len() as f64;
    let xs: Vec<f64> = pts.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(-sxy / sxx)
}
