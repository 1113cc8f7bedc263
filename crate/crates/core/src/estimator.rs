//! Laboratory-unit predictions for superconducting qubits on a line.
//!
//! With `g = √(ω/(2εħ)) |d|/√(AL)` and `L = λ = 2πc/ω`, the energy prefactor
//! `π|d|⁴/(2ε²ħω A² λ²)` becomes `2πħ g⁴/ω³`, so `U/(F h) = g⁴/ω³` with g and
//! ω in rad/s. The dipole moment is taken as already transverse.

use std::f64::consts::PI;

use crate::error::{domain, require_positive, Result};
use crate::potential::f_two_level;

pub const HBAR: f64 = 1.054_571_817e-34;
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;

/// How a dephasing time T₂ maps to a rate in Hz.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DephasingConvention {
    /// `1/(2π T₂)`
    #[default]
    Angular,
    /// `1/T₂`
    Inverse,
}

pub fn dephasing_rate_from_time(t2_seconds: f64, convention: DephasingConvention) -> Result<f64> {
    require_positive("dephasing time", t2_seconds)?;
    Ok(match convention {
        DephasingConvention::Angular => 1.0 / (2.0 * PI * t2_seconds),
        DephasingConvention::Inverse => 1.0 / t2_seconds,
    })
}

/// Only `L = λ_e` is supported for the mode-volume length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CavityLengthConvention {
    #[default]
    LEqualsLambda,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircuitParams {
    /// Vacuum Rabi coupling g, rad/s.
    pub coupling_g: f64,
    /// ω_e, rad/s.
    pub transition_omega: f64,
    /// Hz.
    pub dephasing_rate: f64,
    pub cavity_length_convention: CavityLengthConvention,
}

impl CircuitParams {
    pub fn new(coupling_g: f64, transition_omega: f64, dephasing_rate: f64) -> Result<Self> {
        require_positive("coupling g", coupling_g)?;
        require_positive("transition omega", transition_omega)?;
        require_positive("dephasing rate", dephasing_rate)?;
        if coupling_g >= transition_omega {
            return domain(format!(
                "coupling g = {coupling_g} must be below the transition frequency {transition_omega}"
            ));
        }
        Ok(Self {
            coupling_g,
            transition_omega,
            dephasing_rate,
            cavity_length_convention: CavityLengthConvention::LEqualsLambda,
        })
    }

    /// Transition wavelength in metres for phase velocity `c`.
    pub fn wavelength(&self, phase_velocity: f64) -> f64 {
        2.0 * PI * phase_velocity / self.transition_omega
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftPrediction {
    pub z_over_lambda: f64,
    pub shift_hz: f64,
    pub prefactor_hz: f64,
    pub resolvable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict {
    /// shift / dephasing rate
    pub ratio: f64,
    pub resolvable: bool,
}

/// `U/(F h) = g⁴/ω³` in Hz.
pub fn prefactor_from_coupling(params: &CircuitParams) -> f64 {
    params.coupling_g.powi(4) / params.transition_omega.powi(3)
}

/// The same prefactor computed through explicit SI quantities: the dipole
/// moment is recovered from g for an arbitrary area A and permittivity ε,
/// then fed into the two-level energy.
pub fn prefactor_full_chain(
    params: &CircuitParams,
    area: f64,
    permittivity: f64,
    phase_velocity: f64,
) -> Result<f64> {
    require_positive("area", area)?;
    require_positive("permittivity", permittivity)?;
    require_positive("phase velocity", phase_velocity)?;
    let omega = params.transition_omega;
    let lambda = params.wavelength(phase_velocity);
    let d = params.coupling_g * (area * lambda * 2.0 * permittivity * HBAR / omega).sqrt();
    let energy = HBAR * omega;
    let u_over_f = PI * d.powi(4)
        / (2.0 * permittivity * permittivity * energy * area * area * lambda * lambda);
    Ok(u_over_f / (2.0 * PI * HBAR))
}

/// Prefactor for two different qubits: the geometric mean of their own.
pub fn pair_prefactor(params_1: &CircuitParams, params_2: &CircuitParams) -> f64 {
    (prefactor_from_coupling(params_1) * prefactor_from_coupling(params_2)).sqrt()
}

pub fn shift_at(params: &CircuitParams, z_over_lambda: f64) -> Result<ShiftPrediction> {
    let prefactor_hz = prefactor_from_coupling(params);
    let shift_hz = prefactor_hz * f_two_level(z_over_lambda)?;
    Ok(ShiftPrediction {
        z_over_lambda,
        shift_hz,
        prefactor_hz,
        resolvable: shift_hz > params.dephasing_rate,
    })
}

pub fn detectability(params: &CircuitParams, prediction: &ShiftPrediction) -> Verdict {
    let ratio = prediction.shift_hz / params.dephasing_rate;
    Verdict {
        ratio,
        resolvable: ratio > 1.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn params(ghz: f64, dephasing: f64) -> CircuitParams {
        CircuitParams::new(PI * 720e6, 2.0 * PI * ghz * 1e9, dephasing).unwrap()
    }

    #[test]
    fn prefactor_examples() {
        assert!(rel(prefactor_from_coupling(&params(5.0, 1e6)), 0.84e6) < 0.01);
        assert!(rel(prefactor_from_coupling(&params(2.0, 1e6)), 13.2e6) < 0.01);
        let p = params(5.0, 1e6);
        let p2 = CircuitParams::new(2.0 * p.coupling_g, p.transition_omega, 1e6).unwrap();
        assert!(
            rel(
                prefactor_from_coupling(&p2),
                16.0 * prefactor_from_coupling(&p)
            ) < 1e-14
        );
    }

    #[test]
    fn full_chain_reduces() {
        let p = params(5.0, 1e6);
        for (area, eps) in [
            (1e-8, VACUUM_PERMITTIVITY),
            (3e-12, 11.7 * VACUUM_PERMITTIVITY),
        ] {
            let full = prefactor_full_chain(&p, area, eps, SPEED_OF_LIGHT).unwrap();
            assert!(rel(full, prefactor_from_coupling(&p)) < 1e-10);
        }
    }

    #[test]
    fn shift_examples() {
        let p = params(5.0, 1e6);
        let shifts: Vec<f64> = [0.001, 0.01]
            .iter()
            .map(|&x| shift_at(&p, x).unwrap().shift_hz)
            .collect();
        assert!(rel(shifts[0], 2.47e6) < 0.05);
        assert!(rel(shifts[1], 1.8e6) < 0.05);
        let q = params(2.0, 1e6);
        assert!(rel(shift_at(&q, 0.01).unwrap().shift_hz, 28e6) < 0.05);
        assert!(rel(shift_at(&q, 2.0).unwrap().shift_hz, 6.62e3) < 0.05);
        let s = shift_at(&q, 0.3).unwrap();
        assert!(rel(s.shift_hz, s.prefactor_hz * f_two_level(0.3).unwrap()) < 1e-12);
        assert!(shift_at(&q, 0.0).is_err());
    }

    #[test]
    fn detectability_examples() {
        let p = params(5.0, 1e6);
        let s = ShiftPrediction {
            z_over_lambda: 0.01,
            shift_hz: 1.8e6,
            prefactor_hz: 0.0,
            resolvable: true,
        };
        let v = detectability(&p, &s);
        assert!(rel(v.ratio, 1.8) < 1e-12 && v.resolvable);
        let small = ShiftPrediction {
            shift_hz: 6.62e3,
            ..s
        };
        assert!(!detectability(&p, &small).resolvable);

        let rate = dephasing_rate_from_time(20e-6, DephasingConvention::Angular).unwrap();
        assert!(rel(rate, 7957.747) < 1e-6);
        let q = params(2.0, rate);
        let v = detectability(&q, &shift_at(&q, 0.01).unwrap());
        assert!(v.resolvable && v.ratio > 1e3);
        assert!(
            rel(
                dephasing_rate_from_time(20e-6, DephasingConvention::Inverse).unwrap(),
                5e4
            ) < 1e-12
        );
    }

    #[test]
    fn params_validation() {
        assert!(CircuitParams::new(2.0, 1.0, 1.0).is_err());
        assert!(CircuitParams::new(1.0, 2.0, 0.0).is_err());
        assert!(CircuitParams::new(-1.0, 2.0, 1.0).is_err());
        assert!(dephasing_rate_from_time(0.0, DephasingConvention::Angular).is_err());
    }

    #[test]
    fn pair_prefactor_identical_and_mixed() {
        let a = params(5.0, 1e6);
        let b = params(2.0, 1e6);
        assert!(rel(pair_prefactor(&a, &a), prefactor_from_coupling(&a)) < 1e-15);
        let m = pair_prefactor(&a, &b);
        assert!(m > prefactor_from_coupling(&a) && m < prefactor_from_coupling(&b));
    }
}
