//! Integration engines for semi-infinite integrals.
//!
//! [`integrate_damped`] handles integrands that decay exponentially on
//! `(0, ∞)`: the integrand is sampled on a dyadic grid to locate its support
//! and estimate the exponential tail, the support is covered by dyadic
//! panels, and the panel with the largest error is bisected until the
//! requested tolerance is met.
//!
//! [`integrate_oscillatory_regularized`] evaluates conditionally convergent
//! integrals `∫₀^∞ f(k) dk` as the `η → 0` limit of `∫₀^∞ f(k) e^{−ηk} dk`,
//! extrapolating a decreasing `η` sequence with Neville's scheme.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum number of panel bisections.
    pub max_subdivisions: usize,
    /// Regulator `e^{−ηk}` applied by [`integrate_regulated`]; 0 disables it.
    pub regulator_eta: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_subdivisions: 200,
            regulator_eta: 0.0,
        }
    }
}

impl QuadratureSpec {
    /// Defaults with a bisection budget suited to integrands that oscillate
    /// over thousands of periods before the regulator damps them.
    pub fn oscillatory() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_subdivisions: 200_000,
            regulator_eta: 0.0,
        }
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_max_subdivisions(mut self, n: usize) -> Self {
        self.max_subdivisions = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return domain(format!("rel_tol must be > 0, got {}", self.rel_tol));
        }
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return domain(format!("abs_tol must be > 0, got {}", self.abs_tol));
        }
        if self.max_subdivisions < 1 {
            return domain("max_subdivisions must be >= 1");
        }
        if !(self.regulator_eta >= 0.0 && self.regulator_eta.is_finite()) {
            return domain(format!(
                "regulator_eta must be >= 0, got {}",
                self.regulator_eta
            ));
        }
        Ok(())
    }

    /// Absolute error target for a result of size `value`.
    pub fn tolerance(&self, value: f64) -> f64 {
        (self.rel_tol * value.abs()).max(self.abs_tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub est_error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl QuadratureResult {
    fn failed(evaluations: usize) -> Self {
        Self {
            value: f64::NAN,
            est_error: f64::INFINITY,
            evaluations,
            converged: false,
        }
    }

    /// Converts a non-converged result into an error.
    pub fn into_result(self) -> Result<f64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(crate::Error::NonConvergence {
                value: self.value,
                est_error: self.est_error,
            })
        }
    }
}

// 15-point Kronrod rule with embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let abs_half = half.abs();
    let value = res_k * half;
    res_abs *= abs_half;
    res_asc *= abs_half;
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    if !value.is_finite() || !err.is_finite() {
        return Panel {
            a,
            b,
            value: f64::NAN,
            error: f64::INFINITY,
        };
    }
    Panel {
        a,
        b,
        value,
        error: err,
    }
}

struct Adaptive {
    value: f64,
    error: f64,
    evaluations: usize,
    converged: bool,
}

/// Globally adaptive integration over the panels defined by `breaks`
/// (sorted, at least two entries). `extra_error` is added to the panel error
/// sum before comparing against the tolerance.
fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    breaks: &[f64],
    spec: &QuadratureSpec,
    extra_error: f64,
) -> Adaptive {
    let mut heap = BinaryHeap::new();
    let mut frozen_value = 0.0;
    let mut frozen_error = 0.0;
    let mut evaluations = 0;
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            heap.push(gk15(f, w[0], w[1]));
            evaluations += 15;
        }
    }
    let mut bisections = 0;
    let (mut value, mut error) = totals(&heap, frozen_value, frozen_error);
    loop {
        if bisections % 512 == 0 {
            // re-sum to keep the running totals free of drift
            (value, error) = totals(&heap, frozen_value, frozen_error);
        }
        let total_error = error + extra_error;
        // a panel hit a non-finite value; refining it will not help
        if (!value.is_finite() || !total_error.is_finite())
            && heap.iter().any(|p| !p.error.is_finite())
        {
            return Adaptive {
                value,
                error: f64::INFINITY,
                evaluations,
                converged: false,
            };
        }
        if total_error <= spec.tolerance(value) {
            (value, error) = totals(&heap, frozen_value, frozen_error);
            let total_error = error + extra_error;
            if total_error <= spec.tolerance(value) {
                return Adaptive {
                    value,
                    error: total_error,
                    evaluations,
                    converged: true,
                };
            }
        }
        if bisections >= spec.max_subdivisions {
            (value, error) = totals(&heap, frozen_value, frozen_error);
            return Adaptive {
                value,
                error: error + extra_error,
                evaluations,
                converged: false,
            };
        }
        let Some(worst) = heap.pop() else {
            return Adaptive {
                value,
                error: error + extra_error,
                evaluations,
                converged: false,
            };
        };
        let mid = 0.5 * (worst.a + worst.b);
        let width = worst.b - worst.a;
        if width <= 1e3 * f64::EPSILON * mid.abs().max(f64::MIN_POSITIVE) || mid <= worst.a {
            // cannot be refined further
            frozen_value += worst.value;
            frozen_error += worst.error;
            continue;
        }
        let left = gk15(f, worst.a, mid);
        let right = gk15(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        evaluations += 30;
        bisections += 1;
    }
}

fn totals(heap: &BinaryHeap<Panel>, frozen_value: f64, frozen_error: f64) -> (f64, f64) {
    heap.iter().fold((frozen_value, frozen_error), |(v, e), p| {
        (v + p.value, e + p.error)
    })
}

const SCAN_MIN_EXP: i32 = -60;
const SCAN_MAX_EXP: i32 = 90;

/// Integrates an exponentially decaying `f` over `(0, ∞)`.
///
/// If `spec.regulator_eta > 0` the integrand is additionally multiplied by
/// `e^{−η u}`.
pub fn integrate_damped<F: Fn(f64) -> f64>(f: F, spec: &QuadratureSpec) -> QuadratureResult {
    if spec.validate().is_err() {
        return QuadratureResult::failed(0);
    }
    let eta = spec.regulator_eta;
    let g = |u: f64| {
        if eta > 0.0 {
            f(u) * (-eta * u).exp()
        } else {
            f(u)
        }
    };

    // Dyadic scan of the contribution |f(u)|·u.
    let nodes: Vec<f64> = (SCAN_MIN_EXP..=SCAN_MAX_EXP)
        .map(|e| 2f64.powi(e))
        .collect();
    let mut samples = Vec::with_capacity(nodes.len());
    for &u in &nodes {
        let v = g(u);
        if !v.is_finite() {
            return QuadratureResult::failed(samples.len() + 1);
        }
        samples.push(v);
    }
    let mut evaluations = samples.len();
    let weight: Vec<f64> = samples
        .iter()
        .zip(&nodes)
        .map(|(v, u)| v.abs() * u)
        .collect();
    let peak = weight.iter().cloned().fold(0.0, f64::max);
    if peak == 0.0 {
        return QuadratureResult {
            value: 0.0,
            est_error: 0.0,
            evaluations,
            converged: true,
        };
    }
    // Independent of rel_tol, so that tightening it only continues the same
    // refinement path and can never raise the reported error.
    let threshold = 0.01 * spec.abs_tol.min(f64::EPSILON * peak);

    let first = weight.iter().position(|&w| w >= threshold).unwrap_or(0);
    // last index after which every sample stays below the threshold
    let last = weight
        .iter()
        .rposition(|&w| w >= threshold)
        .unwrap_or(first);
    if last + 1 >= nodes.len() {
        // still significant at the end of the scan: not exponentially damped
        return QuadratureResult::failed(evaluations);
    }
    let cut_idx = last + 1;
    let u_cut = nodes[cut_idx];

    // Exponential tail estimate ∫_U^∞ |f| ≈ |f(U)|/c with c from two samples.
    let f_cut = samples[cut_idx].abs();
    let f_next = samples[cut_idx + 1].abs();
    let tail = if f_cut == 0.0 {
        0.0
    } else if f_next > 0.0 && f_next < f_cut {
        let c = (f_cut / f_next).ln() / (nodes[cut_idx + 1] - u_cut);
        f_cut / c
    } else if f_next == 0.0 {
        f_cut * u_cut
    } else {
        return QuadratureResult::failed(evaluations);
    };

    let lo_idx = first.saturating_sub(1);
    let mut breaks = Vec::with_capacity(cut_idx - lo_idx + 2);
    breaks.push(0.0);
    breaks.extend_from_slice(&nodes[lo_idx..=cut_idx]);

    let run = adaptive(&g, &breaks, spec, tail);
    evaluations += run.evaluations;
    QuadratureResult {
        value: run.value,
        est_error: run.error,
        evaluations,
        converged: run.converged,
    }
}

/// Integrates `f(k) e^{−ηk}` over `(0, ∞)` with `η = spec.regulator_eta > 0`.
///
/// The range is truncated where the regulator has fallen below
/// `abs_tol·e^{−10}`; `points` are extra breakpoints (poles, nodes of an
/// oscillation) placed into the initial partition.
pub fn integrate_regulated<F: Fn(f64) -> f64>(
    f: F,
    spec: &QuadratureSpec,
    points: &[f64],
) -> QuadratureResult {
    if spec.validate().is_err() || spec.regulator_eta <= 0.0 {
        return QuadratureResult::failed(0);
    }
    let eta = spec.regulator_eta;
    let k_max = ((1.0 / spec.abs_tol).ln() + 10.0) / eta;
    const INITIAL_PANELS: usize = 64;
    let mut breaks: Vec<f64> = (0..=INITIAL_PANELS)
        .map(|i| k_max * i as f64 / INITIAL_PANELS as f64)
        .collect();
    breaks.extend(points.iter().copied().filter(|&p| p > 0.0 && p < k_max));
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let g = |k: f64| f(k) * (-eta * k).exp();
    let run = adaptive(&g, &breaks, spec, 0.0);
    QuadratureResult {
        value: run.value,
        est_error: run.error,
        evaluations: run.evaluations,
        converged: run.converged,
    }
}

/// Regularized value of a conditionally convergent `∫₀^∞ f(k) dk`.
///
/// `eta_sequence` must be strictly decreasing and positive; each damped
/// integral is evaluated with [`integrate_regulated`] and the sequence is
/// extrapolated to `η = 0`.
pub fn integrate_oscillatory_regularized<F: Fn(f64) -> f64>(
    f: F,
    spec: &QuadratureSpec,
    eta_sequence: &[f64],
) -> QuadratureResult {
    integrate_oscillatory_regularized_with_points(f, spec, eta_sequence, &[])
}

/// [`integrate_oscillatory_regularized`] with extra breakpoints.
pub fn integrate_oscillatory_regularized_with_points<F: Fn(f64) -> f64>(
    f: F,
    spec: &QuadratureSpec,
    eta_sequence: &[f64],
    points: &[f64],
) -> QuadratureResult {
    extrapolate_regularized(spec, eta_sequence, |inner| {
        integrate_regulated(&f, inner, points)
    })
}

/// Evaluates a family of regulated integrals and extrapolates to `η → 0`.
///
/// `eval` receives a spec whose `regulator_eta` is set to each entry of
/// `eta_sequence` in turn, with tolerances one decade tighter than `spec`.
pub fn extrapolate_regularized<E>(
    spec: &QuadratureSpec,
    eta_sequence: &[f64],
    mut eval: E,
) -> QuadratureResult
where
    E: FnMut(&QuadratureSpec) -> QuadratureResult,
{
    if spec.validate().is_err()
        || eta_sequence.len() < 2
        || eta_sequence.iter().any(|&e| !(e > 0.0 && e.is_finite()))
        || eta_sequence.windows(2).any(|w| w[1] >= w[0])
    {
        return QuadratureResult::failed(0);
    }
    let mut evaluations = 0;
    let mut values = Vec::with_capacity(eta_sequence.len());
    let mut quad_error: f64 = 0.0;
    for &eta in eta_sequence {
        let inner = QuadratureSpec {
            rel_tol: 0.1 * spec.rel_tol,
            abs_tol: 0.1 * spec.abs_tol,
            regulator_eta: eta,
            ..*spec
        };
        let r = eval(&inner);
        evaluations += r.evaluations;
        if !r.converged {
            return QuadratureResult {
                value: r.value,
                est_error: r.est_error,
                evaluations,
                converged: false,
            };
        }
        quad_error = quad_error.max(r.est_error);
        values.push(r.value);
    }

    let (value, diffs) = neville_at_zero(eta_sequence, &values);
    let n = diffs.len();
    let extrapolation_error = diffs[n - 1];
    // Neville weights on a geometric η grid stay O(1); a factor 4 covers them.
    let est_error = extrapolation_error + 4.0 * quad_error;
    let tol = spec.tolerance(value);
    let cauchy = n < 2 || diffs[n - 1] <= diffs[n - 2].max(tol);
    QuadratureResult {
        value,
        est_error,
        evaluations,
        converged: cauchy && est_error <= tol && value.is_finite(),
    }
}

/// Adaptive integration of `f` over the finite interval `[a, b]`.
pub fn integrate_interval<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> QuadratureResult {
    if spec.validate().is_err() || !(a.is_finite() && b.is_finite()) || b < a {
        return QuadratureResult::failed(0);
    }
    let run = adaptive(&f, &[a, b], spec, 0.0);
    QuadratureResult {
        value: run.value,
        est_error: run.error,
        evaluations: run.evaluations,
        converged: run.converged,
    }
}

/// Polynomial extrapolation of `(x_i, y_i)` to `x = 0`. Returns the final
/// diagonal entry and the successive diagonal differences.
fn neville_at_zero(xs: &[f64], ys: &[f64]) -> (f64, Vec<f64>) {
    let n = xs.len();
    let mut table = ys.to_vec();
    let mut diagonal = vec![ys[0]];
    for m in 1..n {
        // table[i] holds the order-(m−1) estimate built on xs[i-m+1..=i]
        for i in (m..n).rev() {
            let (xa, xb) = (xs[i - m], xs[i]);
            table[i] = (xa * table[i] - xb * table[i - 1]) / (xa - xb);
        }
        diagonal.push(table[m]);
    }
    let diffs = diagonal
        .windows(2)
        .map(|w| (w[1] - w[0]).abs())
        .collect::<Vec<_>>();
    (table[n - 1], diffs)
}
