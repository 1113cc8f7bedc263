//! TEM-mediated interaction energy between two dipoles along a line.
//!
//! Three independent routes to the same energy are provided:
//!
//! - closed forms built from Si/Ci ([`f_two_level`], [`f_pair`], summed by
//!   [`u_multilevel`]);
//! - the imaginary-axis integral of the product of polarizabilities
//!   ([`u_wick`]);
//! - the real-axis integral with transition poles pushed below the axis and
//!   an `e^{−ηk}` regulator extrapolated to zero ([`u_oscillatory`]).
//!
//! Units: ħ = 1. Energies and wavenumbers of a [`Transition`] fix the phase
//! velocity `c = E/k`, which must match [`TLGeometry::phase_velocity`].

use std::f64::consts::PI;

use log::warn;
use num_complex::Complex64;

use crate::error::{domain, require_positive, Result};
use crate::quadrature::{
    extrapolate_regularized, integrate_damped, integrate_interval, integrate_regulated,
    QuadratureResult, QuadratureSpec,
};
use crate::specfun::{auxiliary, EULER_GAMMA};

/// Below this distance from b = 1 the pair kernel is evaluated by
/// [`f_pair_degenerate`].
pub const DEGENERATE_DELTA: f64 = 1e-4;

/// Relative imaginary shift of transition energies for the real-axis route.
pub const POLE_SHIFT: f64 = 1e-6;

const PHASE_VELOCITY_RTOL: f64 = 1e-12;

/// One ground-to-excited dipole transition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    /// |d⊥|², squared transverse dipole matrix element.
    pub dipole_moment_sq_perp: f64,
    pub energy: f64,
    pub wavelength: f64,
    pub wavenumber: f64,
}

impl Transition {
    pub fn new(dipole_moment_sq_perp: f64, energy: f64, phase_velocity: f64) -> Result<Self> {
        if !(dipole_moment_sq_perp >= 0.0 && dipole_moment_sq_perp.is_finite()) {
            return domain(format!(
                "dipole moment squared must be >= 0 and finite, got {dipole_moment_sq_perp}"
            ));
        }
        require_positive("transition energy", energy)?;
        require_positive("phase velocity", phase_velocity)?;
        let wavenumber = energy / phase_velocity;
        Ok(Self {
            dipole_moment_sq_perp,
            energy,
            wavelength: 2.0 * PI / wavenumber,
            wavenumber,
        })
    }

    /// Transition in units with ħ = c = 1.
    pub fn natural(dipole_moment_sq_perp: f64, energy: f64) -> Result<Self> {
        Self::new(dipole_moment_sq_perp, energy, 1.0)
    }

    pub fn phase_velocity(&self) -> f64 {
        self.energy / self.wavenumber
    }
}

/// A polarizable dipole described by its transitions out of the ground state.
#[derive(Debug, Clone, PartialEq)]
pub struct DipoleSpec {
    transitions: Vec<Transition>,
    /// |d⊥|² / |d|²; 2/3 for an orientation-averaged dipole.
    pub isotropic_factor: f64,
}

impl DipoleSpec {
    pub fn new(transitions: Vec<Transition>) -> Result<Self> {
        if transitions.is_empty() {
            return domain("a dipole needs at least one transition");
        }
        let c0 = transitions[0].phase_velocity();
        if transitions
            .iter()
            .any(|t| ((t.phase_velocity() - c0) / c0).abs() > PHASE_VELOCITY_RTOL)
        {
            return domain("all transitions of a dipole must share one phase velocity");
        }
        Ok(Self {
            transitions,
            isotropic_factor: 2.0 / 3.0,
        })
    }

    pub fn two_level(dipole_moment_sq_perp: f64, energy: f64, phase_velocity: f64) -> Result<Self> {
        Self::new(vec![Transition::new(
            dipole_moment_sq_perp,
            energy,
            phase_velocity,
        )?])
    }

    pub fn with_isotropic_factor(mut self, factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor <= 1.0) {
            return domain(format!("isotropic factor must lie in (0, 1], got {factor}"));
        }
        self.isotropic_factor = factor;
        Ok(self)
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn phase_velocity(&self) -> f64 {
        self.transitions[0].phase_velocity()
    }

    fn single(&self) -> Result<&Transition> {
        match self.transitions.as_slice() {
            [t] => Ok(t),
            _ => domain("operation requires a two-level dipole (exactly one transition)"),
        }
    }

    /// Static polarizability α(0) = Σ |d⊥|²/E.
    pub fn static_polarizability(&self) -> f64 {
        self.transitions
            .iter()
            .map(|t| t.dipole_moment_sq_perp / t.energy)
            .sum()
    }
}

/// Transmission-line parameters seen by the two dipoles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TLGeometry {
    pub area_1: f64,
    pub area_2: f64,
    pub permittivity: f64,
    pub phase_velocity: f64,
}

impl TLGeometry {
    pub fn new(area_1: f64, area_2: f64, permittivity: f64, phase_velocity: f64) -> Result<Self> {
        require_positive("area_1", area_1)?;
        require_positive("area_2", area_2)?;
        require_positive("permittivity", permittivity)?;
        require_positive("phase velocity", phase_velocity)?;
        Ok(Self {
            area_1,
            area_2,
            permittivity,
            phase_velocity,
        })
    }

    /// Equal areas, ε = c = 1.
    pub fn natural(area: f64) -> Result<Self> {
        Self::new(area, area, 1.0, 1.0)
    }

    fn check(&self, dipoles: [&DipoleSpec; 2]) -> Result<()> {
        for d in dipoles {
            let c = d.phase_velocity();
            if ((c - self.phase_velocity) / self.phase_velocity).abs() > PHASE_VELOCITY_RTOL {
                return domain(format!(
                    "dipole phase velocity {c} does not match the line's {}",
                    self.phase_velocity
                ));
            }
        }
        Ok(())
    }

    fn coupling(&self) -> f64 {
        self.permittivity * self.permittivity * self.area_1 * self.area_2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveMethod {
    ClosedForm,
    AsymptoticShort,
    AsymptoticLong,
    PairSum,
    Wick,
    Oscillatory,
    FreespaceVdw,
    FreespaceCp,
}

impl CurveMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveMethod::ClosedForm => "closed_form",
            CurveMethod::AsymptoticShort => "asymptotic_short",
            CurveMethod::AsymptoticLong => "asymptotic_long",
            CurveMethod::PairSum => "pair_sum",
            CurveMethod::Wick => "wick",
            CurveMethod::Oscillatory => "oscillatory",
            CurveMethod::FreespaceVdw => "freespace_vdw",
            CurveMethod::FreespaceCp => "freespace_cp",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveUnits {
    DimensionlessF,
    Energy,
    Ratio,
}

impl CurveUnits {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveUnits::DimensionlessF => "dimensionless_F",
            CurveUnits::Energy => "energy",
            CurveUnits::Ratio => "ratio",
        }
    }
}

/// A sampled potential, F(z), U(z) or a ratio, with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialCurve {
    pub method: CurveMethod,
    pub units: CurveUnits,
    samples: Vec<(f64, f64)>,
}

impl PotentialCurve {
    pub fn new(method: CurveMethod, units: CurveUnits, samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return domain("curve samples must be strictly increasing in z");
        }
        Ok(Self {
            method,
            units,
            samples,
        })
    }

    /// Evaluates `f` on `zs` (must be strictly increasing).
    pub fn sample<F>(method: CurveMethod, units: CurveUnits, zs: &[f64], f: F) -> Result<Self>
    where
        F: Fn(f64) -> Result<f64>,
    {
        let samples = zs
            .iter()
            .map(|&z| f(z).map(|v| (z, v)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(method, units, samples)
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }
}

fn check_xi(xi: f64) -> Result<()> {
    require_positive("xi", xi)
}

/// Dimensionless two-level potential F(ξ), ξ = z/λ_e.
///
/// With `x = 4πξ` the closed form in terms of Ei(ix) collapses to
/// `F = 2 (f(x) − x g(x))` in the sine/cosine-integral auxiliary functions.
pub fn f_two_level(xi: f64) -> Result<f64> {
    check_xi(xi)?;
    let x = 4.0 * PI * xi;
    let aux = auxiliary(x)?;
    Ok(2.0 * (aux.f - x * aux.g))
}

/// F(ξ) assembled literally from Ei(ix), the oscillating exponentials and
/// their complex conjugate. Returns the complex sum so the imaginary residue
/// can be inspected.
pub fn f_two_level_from_ei(xi: f64) -> Result<Complex64> {
    check_xi(xi)?;
    let x = 4.0 * PI * xi;
    let ei = crate::specfun::ei_imag(x)?;
    let phase = Complex64::new(0.0, x).exp();
    let term = Complex64::new(x, 1.0) * phase.conj() * ei + Complex64::new(PI, PI * x) * phase;
    Ok(term + term.conj())
}

/// Short-range series `π + 16πξ ln ξ + 8π[2γ − 1 + 2 ln 4π] ξ`.
pub fn f_asymptotic_short(xi: f64) -> Result<f64> {
    check_xi(xi)?;
    if xi >= 0.1 {
        warn!("f_asymptotic_short called at xi = {xi}, outside its window xi < 0.1");
    }
    let c = 2.0 * EULER_GAMMA - 1.0 + 2.0 * (4.0 * PI).ln();
    Ok(PI + 16.0 * PI * xi * xi.ln() + 8.0 * PI * c * xi)
}

/// Long-range law `1/(8π³ξ³)`.
pub fn f_asymptotic_long(xi: f64) -> Result<f64> {
    check_xi(xi)?;
    if xi < 3.0 {
        warn!("f_asymptotic_long called at xi = {xi}; corrections are sizable below 3");
    }
    Ok(1.0 / (8.0 * PI.powi(3) * xi.powi(3)))
}

/// Pair kernel F_{n₁n₂}(ξ, b) for `|b − 1| >= DEGENERATE_DELTA`.
///
/// The Si/Ci combination `−2 Ci(x) sin x − cos x [π − 2 Si(x)]` equals
/// `−2 f(x)`, so the kernel is `4b [b f(bx) − f(x)] / (b² − 1)`.
pub fn f_pair(xi: f64, b: f64) -> Result<f64> {
    check_xi(xi)?;
    require_positive("b", b)?;
    if (b - 1.0).abs() < DEGENERATE_DELTA {
        return domain(format!(
            "f_pair requires |b - 1| >= {DEGENERATE_DELTA}, got b = {b}; use f_pair_degenerate"
        ));
    }
    f_pair_unchecked(xi, b)
}

fn f_pair_unchecked(xi: f64, b: f64) -> Result<f64> {
    let x = 4.0 * PI * xi;
    let fx = auxiliary(x)?.f;
    let fbx = auxiliary(b * x)?.f;
    Ok(4.0 * b * (b * fbx - fx) / (b * b - 1.0))
}

/// Pair kernel near b = 1, by linear interpolation between `1 ± δ`.
pub fn f_pair_degenerate(xi: f64, b: f64) -> Result<f64> {
    check_xi(xi)?;
    require_positive("b", b)?;
    if (b - 1.0).abs() >= DEGENERATE_DELTA {
        return domain(format!(
            "f_pair_degenerate requires |b - 1| < {DEGENERATE_DELTA}, got b = {b}"
        ));
    }
    let lo = f_pair_unchecked(xi, 1.0 - DEGENERATE_DELTA)?;
    let hi = f_pair_unchecked(xi, 1.0 + DEGENERATE_DELTA)?;
    let t = (b - (1.0 - DEGENERATE_DELTA)) / (2.0 * DEGENERATE_DELTA);
    Ok(lo + t * (hi - lo))
}

/// Pair kernel for any b > 0.
pub fn pair_kernel(xi: f64, b: f64) -> Result<f64> {
    require_positive("b", b)?;
    if (b - 1.0).abs() < DEGENERATE_DELTA {
        f_pair_degenerate(xi, b)
    } else {
        f_pair(xi, b)
    }
}

/// One summand of the multilevel energy: transition `t1` of dipole 1 with
/// transition `t2` of dipole 2, without the `1/(ε²A₁A₂)` factor.
pub fn pair_term(t1: &Transition, t2: &Transition, z: f64) -> Result<f64> {
    require_positive("z", z)?;
    let xi = z / t1.wavelength;
    let b = t2.energy / t1.energy;
    let pref = PI * t1.dipole_moment_sq_perp * t2.dipole_moment_sq_perp
        / (2.0 * t1.wavelength * t1.wavelength * t1.energy);
    Ok(-pref * pair_kernel(xi, b)?)
}

/// Multilevel pair energy as a double sum of closed-form pair kernels.
pub fn u_multilevel(
    dipole_1: &DipoleSpec,
    dipole_2: &DipoleSpec,
    geom: &TLGeometry,
    z: f64,
) -> Result<f64> {
    require_positive("z", z)?;
    geom.check([dipole_1, dipole_2])?;
    let mut sum = 0.0;
    for t1 in dipole_1.transitions() {
        for t2 in dipole_2.transitions() {
            sum += pair_term(t1, t2, z)?;
        }
    }
    Ok(sum / geom.coupling())
}

/// Closed-form energy of two identical two-level dipoles.
pub fn u_two_level(dipole: &DipoleSpec, geom: &TLGeometry, z: f64) -> Result<f64> {
    require_positive("z", z)?;
    geom.check([dipole, dipole])?;
    let t = dipole.single()?;
    let d4 = t.dipole_moment_sq_perp * t.dipole_moment_sq_perp;
    let pref = PI * d4 / (2.0 * geom.coupling() * t.energy * t.wavelength * t.wavelength);
    Ok(-pref * f_two_level(z / t.wavelength)?)
}

/// Polarizability on the imaginary axis, α(iu) = Σ E|d⊥|² / (E² + c²u²).
pub fn alpha_imaginary(dipole: &DipoleSpec, u: f64) -> Result<f64> {
    if !(u >= 0.0 && u.is_finite()) {
        return domain(format!("u must be >= 0 and finite, got {u}"));
    }
    Ok(dipole
        .transitions()
        .iter()
        .map(|t| {
            let r = u / t.wavenumber;
            t.dipole_moment_sq_perp / (t.energy * (1.0 + r * r))
        })
        .sum())
}

fn normalised_alpha_imag(dipole: &DipoleSpec, static_alpha: f64, s: f64, k_ref: f64) -> f64 {
    dipole
        .transitions()
        .iter()
        .map(|t| {
            let r = s * k_ref / t.wavenumber;
            t.dipole_moment_sq_perp / (t.energy * (1.0 + r * r))
        })
        .sum::<f64>()
        / static_alpha
}

fn non_convergence(r: QuadratureResult) -> crate::Error {
    crate::Error::NonConvergence {
        value: r.value,
        est_error: r.est_error,
    }
}

/// Energy from the imaginary-axis integral
/// `U = −(c / 2πε²A₁A₂) ∫₀^∞ α₁(iu) α₂(iu) u² e^{−2uz} du`.
pub fn u_wick(
    dipole_1: &DipoleSpec,
    dipole_2: &DipoleSpec,
    geom: &TLGeometry,
    z: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    require_positive("z", z)?;
    geom.check([dipole_1, dipole_2])?;
    spec.validate()?;
    let a1 = dipole_1.static_polarizability();
    let a2 = dipole_2.static_polarizability();
    if a1 == 0.0 || a2 == 0.0 {
        return Ok(0.0);
    }
    // u = k_ref s; the (1 + 2Z)³ factor keeps the integral O(1) at large Z.
    let k_ref = dipole_1.transitions()[0].wavenumber;
    let zz = k_ref * z;
    let scale = (1.0 + 2.0 * zz).powi(3);
    let r = integrate_damped(
        |s| {
            scale
                * normalised_alpha_imag(dipole_1, a1, s, k_ref)
                * normalised_alpha_imag(dipole_2, a2, s, k_ref)
                * s
                * s
                * (-2.0 * zz * s).exp()
        },
        spec,
    );
    if !r.converged {
        return Err(non_convergence(r));
    }
    let integral = r.value / scale * k_ref.powi(3) * a1 * a2;
    Ok(-geom.phase_velocity * integral / (2.0 * PI * geom.coupling()))
}

/// α(k)/α(0) on the real axis with every transition energy E → E(1 − iε).
fn normalised_alpha_real(
    dipole: &DipoleSpec,
    static_alpha: f64,
    s: Complex64,
    k_ref: f64,
) -> Complex64 {
    let shift = Complex64::new(1.0, -POLE_SHIFT);
    dipole
        .transitions()
        .iter()
        .map(|t| {
            let e = t.energy * shift;
            let r = s * k_ref / (t.wavenumber * shift);
            t.dipole_moment_sq_perp / (e * (1.0 - r * r))
        })
        .sum::<Complex64>()
        / static_alpha
}

/// Energy from the real-axis integral
/// `U = (c / 2πε²A₁A₂) ∫₀^∞ α₁(k) α₂(k) k² sin(2kz) dk`,
/// read as `Im ∫ α₁α₂ k² e^{2ikz} dk` with the transition poles pushed below
/// the axis by `E → E(1 − iε)`.
///
/// The integral is regulated by `e^{−ηk}` and extrapolated to `η → 0`. Each
/// pole is passed on a small upper semicircle; since the integrand is
/// analytic above the axis this does not change the value, and it avoids
/// integrating the narrow near-singular peak on the axis.
///
/// The oscillating integrand is larger than the result by roughly `(2kz)³`,
/// so relative tolerances much below 1e-8 are usually out of reach.
pub fn u_oscillatory(
    dipole_1: &DipoleSpec,
    dipole_2: &DipoleSpec,
    geom: &TLGeometry,
    z: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    require_positive("z", z)?;
    geom.check([dipole_1, dipole_2])?;
    spec.validate()?;
    let a1 = dipole_1.static_polarizability();
    let a2 = dipole_2.static_polarizability();
    if a1 == 0.0 || a2 == 0.0 {
        return Ok(0.0);
    }
    let k_ref = dipole_1.transitions()[0].wavenumber;
    let zz = k_ref * z;
    let scale = (1.0 + 2.0 * zz).powi(3);

    let integrand = |s: Complex64| -> Complex64 {
        normalised_alpha_real(dipole_1, a1, s, k_ref)
            * normalised_alpha_real(dipole_2, a2, s, k_ref)
            * s
            * s
            * (Complex64::new(0.0, 2.0 * zz) * s).exp()
            * scale
    };

    // Detour windows around the (merged) pole positions.
    let mut poles: Vec<f64> = dipole_1
        .transitions()
        .iter()
        .chain(dipole_2.transitions())
        .filter(|t| t.dipole_moment_sq_perp > 0.0)
        .map(|t| t.wavenumber / k_ref)
        .collect();
    poles.sort_by(f64::total_cmp);
    poles.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * b.abs());
    let windows: Vec<(f64, f64)> = poles
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let mut r = 0.25 * p;
            if i > 0 {
                r = r.min(0.4 * (p - poles[i - 1]));
            }
            if i + 1 < poles.len() {
                r = r.min(0.4 * (poles[i + 1] - p));
            }
            (p, r)
        })
        .collect();

    // η has the dimension of 1/s; the regulated integral is analytic in η
    // for |η| < 2Z.
    let etas: Vec<f64> = (0..10).map(|j| zz / 2f64.powi(j + 1)).collect();
    let eta_min = etas[etas.len() - 1];
    let half_period = PI / (2.0 * zz);
    let k_max = ((1.0 / (0.1 * spec.abs_tol)).ln() + 10.0) / eta_min;
    let n_nodes = (k_max / half_period).ceil() as usize;
    let mut points: Vec<f64> = (1..n_nodes).map(|i| i as f64 * half_period).collect();
    for &(p, r) in &windows {
        points.push(p - r);
        points.push(p + r);
    }

    let spec = QuadratureSpec {
        max_subdivisions: spec
            .max_subdivisions
            .max(QuadratureSpec::oscillatory().max_subdivisions),
        ..*spec
    };
    let in_window = |s: f64| windows.iter().any(|&(p, r)| (s - p).abs() < r);
    let pieces = |inner: &QuadratureSpec| {
        let eta = inner.regulator_eta;
        let axis = integrate_regulated(
            |s| {
                if in_window(s) {
                    0.0
                } else {
                    integrand(Complex64::new(s, 0.0)).im
                }
            },
            inner,
            &points,
        );
        let mut value = axis.value;
        let mut est_error = axis.est_error;
        let mut evaluations = axis.evaluations;
        let mut converged = axis.converged;
        for &(p, r) in &windows {
            // s = p + r e^{iθ}, traversed from θ = π to θ = 0
            let arc = integrate_interval(
                |theta| {
                    let e = Complex64::from_polar(1.0, theta);
                    let s = p + r * e;
                    -(integrand(s) * (-eta * s).exp() * Complex64::new(0.0, r) * e).im
                },
                0.0,
                PI,
                inner,
            );
            value += arc.value;
            est_error += arc.est_error;
            evaluations += arc.evaluations;
            converged &= arc.converged;
        }
        QuadratureResult {
            value,
            est_error,
            evaluations,
            converged,
        }
    };
    // The axis and arc pieces partly cancel, so a second pass bounds each
    // one absolutely against the size of their sum.
    let r = extrapolate_regularized(&spec, &etas, |inner| {
        let first = pieces(inner);
        let target = inner.tolerance(first.value);
        if !first.converged || first.est_error <= target {
            return first;
        }
        let tight = QuadratureSpec {
            rel_tol: f64::EPSILON,
            abs_tol: target / (windows.len() + 1) as f64,
            ..*inner
        };
        let second = pieces(&tight);
        QuadratureResult {
            evaluations: first.evaluations + second.evaluations,
            ..second
        }
    });
    if !r.converged {
        return Err(non_convergence(r));
    }
    let integral = r.value / scale * k_ref.powi(3) * a1 * a2;
    Ok(geom.phase_velocity * integral / (2.0 * PI * geom.coupling()))
}

/// |d|⁴ of a two-level dipole, undoing the transverse projection.
fn full_moment_fourth(dipole: &DipoleSpec) -> Result<(f64, &Transition)> {
    let t = dipole.single()?;
    let d2 = t.dipole_moment_sq_perp / dipole.isotropic_factor;
    Ok((d2 * d2, t))
}

/// Free-space non-retarded energy `−|d|⁴ / (48π²ε²E z⁶)`.
pub fn u_freespace_short(dipole: &DipoleSpec, permittivity: f64, z: f64) -> Result<f64> {
    require_positive("z", z)?;
    require_positive("permittivity", permittivity)?;
    let (d4, t) = full_moment_fourth(dipole)?;
    Ok(-d4 / (48.0 * PI * PI * permittivity * permittivity * t.energy * z.powi(6)))
}

/// Free-space Casimir–Polder energy
/// `−(23/64π³)(c/ε²)(4/9)|d|⁴/(E² z⁷)`.
pub fn u_freespace_cp(dipole: &DipoleSpec, permittivity: f64, z: f64) -> Result<f64> {
    require_positive("z", z)?;
    require_positive("permittivity", permittivity)?;
    let (d4, t) = full_moment_fourth(dipole)?;
    let c = t.phase_velocity();
    Ok(
        -(23.0 / (64.0 * PI.powi(3))) * (c / (permittivity * permittivity)) * (4.0 / 9.0) * d4
            / (t.energy * t.energy * z.powi(7)),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Short,
    Long,
}

/// Ratio of the line-mediated energy to the free-space energy of the chosen
/// regime, for two identical two-level dipoles.
pub fn enhancement_ratio(
    dipole: &DipoleSpec,
    geom: &TLGeometry,
    z: f64,
    regime: Regime,
) -> Result<f64> {
    let u = u_two_level(dipole, geom, z)?;
    let u_fs = match regime {
        Regime::Short => u_freespace_short(dipole, geom.permittivity, z)?,
        Regime::Long => u_freespace_cp(dipole, geom.permittivity, z)?,
    };
    Ok(u / u_fs)
}
