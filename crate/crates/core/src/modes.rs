//! Coaxial line geometry and the higher transverse modes that compete with
//! the TEM mode at short distances.

use std::f64::consts::PI;

use crate::error::{domain, require_positive, Error, Result};
use crate::potential::f_two_level;
use crate::specfun::k0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoaxGeometry {
    pub inner_radius_a: f64,
    pub outer_radius_b: f64,
    pub dipole_radius_rho: f64,
}

impl CoaxGeometry {
    pub fn new(inner_radius_a: f64, outer_radius_b: f64, dipole_radius_rho: f64) -> Result<Self> {
        require_positive("inner radius", inner_radius_a)?;
        if !(outer_radius_b > inner_radius_a && outer_radius_b.is_finite()) {
            return domain(format!(
                "outer radius {outer_radius_b} must exceed inner radius {inner_radius_a}"
            ));
        }
        if !(dipole_radius_rho >= inner_radius_a && dipole_radius_rho < outer_radius_b) {
            return domain(format!(
                "dipole radius {dipole_radius_rho} must lie in [{inner_radius_a}, {outer_radius_b})"
            ));
        }
        Ok(Self {
            inner_radius_a,
            outer_radius_b,
            dipole_radius_rho,
        })
    }

    /// TEM effective area `A = 2π ln(b/a) ρ²`.
    pub fn effective_area(&self) -> f64 {
        2.0 * PI * (self.outer_radius_b / self.inner_radius_a).ln() * self.dipole_radius_rho.powi(2)
    }

    /// Engineering estimates of the lowest cutoffs: TE₁₁ at `2/(a + b)` and
    /// TM₀ₘ at `mπ/(b − a)` for `m = 1..=tm_count`. Approximate only.
    pub fn approximate_cutoffs(&self, tm_count: u32) -> Vec<ModeCutoff> {
        let (a, b) = (self.inner_radius_a, self.outer_radius_b);
        let mut out = vec![ModeCutoff {
            kind: ModeKind::TE,
            l: 1,
            m: 1,
            cutoff_wavenumber: 2.0 / (a + b),
        }];
        out.extend((1..=tm_count).map(|m| ModeCutoff {
            kind: ModeKind::TM,
            l: 0,
            m,
            cutoff_wavenumber: m as f64 * PI / (b - a),
        }));
        out
    }
}

/// TEM effective area of a coax, see [`CoaxGeometry::effective_area`].
pub fn coax_effective_area(geom: &CoaxGeometry) -> f64 {
    geom.effective_area()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeKind {
    TE,
    TM,
}

impl ModeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModeKind::TE => "TE",
            ModeKind::TM => "TM",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeCutoff {
    pub kind: ModeKind,
    pub l: u32,
    pub m: u32,
    pub cutoff_wavenumber: f64,
}

impl ModeCutoff {
    pub fn new(kind: ModeKind, l: u32, m: u32, cutoff_wavenumber: f64) -> Result<Self> {
        if m < 1 {
            return domain("mode index m must be >= 1");
        }
        require_positive("cutoff wavenumber", cutoff_wavenumber)?;
        Ok(Self {
            kind,
            l,
            m,
            cutoff_wavenumber,
        })
    }

    /// Whether `k_lm > π / d` for the given transverse dimension.
    pub fn respects_bound(&self, transverse_dimension: f64) -> bool {
        self.cutoff_wavenumber > PI / transverse_dimension
    }
}

/// Relative interaction strength of one evanescent mode: `K₀(kz)` for TE,
/// `e^{−kz}` for TM.
pub fn mode_envelope(cutoff: &ModeCutoff, z: f64) -> Result<f64> {
    require_positive("z", z)?;
    let x = cutoff.cutoff_wavenumber * z;
    match cutoff.kind {
        ModeKind::TE => Ok(k0(x)?.value),
        ModeKind::TM => Ok((-x).exp()),
    }
}

/// Smallest `z >= transverse_scale` on `z_grid` where the summed envelopes
/// drop below `threshold · F(z/λ_e)`.
pub fn tem_dominance_crossover(
    cutoffs: &[ModeCutoff],
    z_grid: &[f64],
    lambda_e: f64,
    transverse_scale: f64,
    threshold: f64,
) -> Result<f64> {
    if cutoffs.is_empty() {
        return domain("need at least one mode cutoff");
    }
    require_positive("lambda_e", lambda_e)?;
    require_positive("transverse scale", transverse_scale)?;
    require_positive("threshold", threshold)?;
    if z_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return domain("z grid must be strictly increasing");
    }
    for &z in z_grid.iter().filter(|&&z| z >= transverse_scale) {
        let mut sum = 0.0;
        for c in cutoffs {
            sum += mode_envelope(c, z)?;
        }
        if sum < threshold * f_two_level(z / lambda_e)? {
            return Ok(z);
        }
    }
    Err(Error::GridExhausted(format!(
        "higher modes still above {threshold} x F at the end of the grid (z = {:?})",
        z_grid.last()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tm(k: f64) -> ModeCutoff {
        ModeCutoff::new(ModeKind::TM, 0, 1, k).unwrap()
    }

    fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
            .collect()
    }

    #[test]
    fn coax_area_examples() {
        let g = CoaxGeometry::new(1.0, 2.0, 1.0).unwrap();
        let root = g.effective_area().sqrt();
        assert!((root - 2.1).abs() < 0.05, "{root}");
        let g2 = CoaxGeometry::new(2.0, 4.0, 2.0).unwrap();
        assert!((g2.effective_area() / g.effective_area() - 4.0).abs() < 1e-12);
        let thin = CoaxGeometry::new(1.0, 1.0 + 1e-9, 1.0).unwrap();
        assert!(thin.effective_area() < 1e-8);
    }

    #[test]
    fn coax_rejects_bad_geometry() {
        assert!(CoaxGeometry::new(1.0, 0.5, 0.7).is_err());
        assert!(CoaxGeometry::new(1.0, 2.0, 2.5).is_err());
        assert!(CoaxGeometry::new(0.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn envelope_examples() {
        assert!((mode_envelope(&tm(1.0), 1.0).unwrap() - (-1.0f64).exp()).abs() < 1e-15);
        let te = ModeCutoff::new(ModeKind::TE, 1, 1, 50.0).unwrap();
        assert!(mode_envelope(&te, 1.0).unwrap() < 1e-20);
        let a = 1.0;
        let k = 1.01 * PI / a;
        for kind in [ModeKind::TE, ModeKind::TM] {
            let c = ModeCutoff::new(kind, 0, 1, k).unwrap();
            assert!(mode_envelope(&c, 1.01 * a).unwrap() < (-PI).exp());
        }
        assert!((mode_envelope(&tm(PI), 1.0).unwrap() - (-PI).exp()).abs() < 1e-12 * (-PI).exp());
        assert!(mode_envelope(&tm(PI), 0.0).is_err());
    }

    #[test]
    fn approximate_cutoffs_and_bound() {
        let g = CoaxGeometry::new(1.0, 2.0, 1.5).unwrap();
        let c = g.approximate_cutoffs(2);
        assert_eq!(c.len(), 3);
        assert!((c[0].cutoff_wavenumber - 2.0 / 3.0).abs() < 1e-15);
        assert!((c[2].cutoff_wavenumber - 2.0 * PI).abs() < 1e-15);
        // the TE₁₁ estimate sits below π/a
        assert!(!c[0].respects_bound(1.0));
        assert!(c[2].respects_bound(1.0));
        assert!(ModeCutoff::new(ModeKind::TE, 1, 0, 1.0).is_err());
    }

    #[test]
    fn crossover_examples() {
        let a = 1.0;
        let lambda = 1e4 * a;
        let zs = grid(1e-2 * a, 1e2 * a, 4001);
        let z = tem_dominance_crossover(&[tm(PI / a)], &zs, lambda, a, 0.01).unwrap();
        assert!(z >= a && z < 3.0 * a, "{z}");
        let z_tight = tem_dominance_crossover(&[tm(PI / a)], &zs, lambda, a, 1e-12).unwrap();
        // e^{−πz/a} = 1e-12 F, F ≈ π here
        let want = (1e12 / PI).ln() / PI * a;
        assert!((z_tight - want).abs() < 0.01 * want, "{z_tight} vs {want}");
        assert!(matches!(
            tem_dominance_crossover(&[tm(PI / a)], &grid(1.0, 1.05, 5), lambda, a, 1e-12),
            Err(Error::GridExhausted(_))
        ));
        assert!(tem_dominance_crossover(&[], &zs, lambda, a, 0.01).is_err());
    }
}
