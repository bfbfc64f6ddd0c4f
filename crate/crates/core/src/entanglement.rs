//! Beam-splitter entanglement test.
//!
//! A single-mode state is mixed with the vacuum on a beam splitter. The
//! output is entangled exactly when the input is nonclassical, and the
//! linear entropy `S = 1 − Tr ρ_a²` of the reduced state of mode `a`
//! quantifies how much. Two independent evaluations are provided:
//!
//! * the partial-trace path: [`split_state`] → [`reduce_a`] →
//!   [`linear_entropy_matrix`], `O(N³)`;
//! * the series path: [`linear_entropy_series`], the explicit quadruple sum
//!   over `(q, s, m, n)` in the recurrence amplitudes, `O(N⁴)`.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::{FockExpansion, LogAmplitude, SpectrumModel};
use crate::special::{ln_factorials, log_binomial};
use crate::states::{build_nonlinear_squeezed, solve_recurrence, RecurrenceTable};

/// Entropy change between `N` and `N + CONVERGENCE_STEP` levels above which
/// a result is flagged as not converged.
pub const CONVERGENCE_TOLERANCE: f64 = 1e-6;
pub const CONVERGENCE_STEP: usize = 10;

const CLAMP_SLACK: f64 = 1e-10;

/// Beam splitter with angle `θ ∈ [0, π]` and phase `φ`; transmission
/// `t = cos(θ/2)`, reflection `r = −e^{iφ} sin(θ/2)`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct BeamSplitterConfig {
    theta: f64,
    phi: f64,
}

impl Default for BeamSplitterConfig {
    fn default() -> Self {
        Self::balanced()
    }
}

impl BeamSplitterConfig {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) || !phi.is_finite() {
            return Err(Error::InvalidAngle(theta));
        }
        Ok(Self { theta, phi })
    }

    /// 50:50 splitter, `θ = π/2`, `φ = 0`.
    pub fn balanced() -> Self {
        Self {
            theta: std::f64::consts::FRAC_PI_2,
            phi: 0.0,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn t(&self) -> C64 {
        C64::new((0.5 * self.theta).cos(), 0.0)
    }

    pub fn r(&self) -> C64 {
        -C64::from_polar((0.5 * self.theta).sin(), self.phi)
    }

    /// `|t|²`, independent of `φ`.
    pub fn transmittance(&self) -> f64 {
        (0.5 * self.theta).cos().powi(2)
    }

    /// `|r|²`, independent of `φ`.
    pub fn reflectance(&self) -> f64 {
        (0.5 * self.theta).sin().powi(2)
    }
}

/// `B(|n⟩ ⊗ |0⟩) = Σ_q √C(n,q) t^q r^{n−q} |q⟩ ⊗ |n−q⟩`, as `(q, amplitude)`.
pub fn split_fock(n: usize, cfg: &BeamSplitterConfig) -> Vec<(usize, C64)> {
    let (t, r) = (cfg.t(), cfg.r());
    (0..=n)
        .map(|q| {
            let binom = (0.5 * log_binomial(n, q).expect("q <= n")).exp();
            (q, binom * t.powi(q as i32) * r.powi((n - q) as i32))
        })
        .collect()
}

/// Output amplitudes over `|q⟩_a ⊗ |m⟩_b`; rows index mode `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoModeState {
    amps: DMatrix<C64>,
}

impl TwoModeState {
    pub fn amps(&self) -> &DMatrix<C64> {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Sends `state ⊗ |0⟩` through the beam splitter.
pub fn split_state(state: &FockExpansion, cfg: &BeamSplitterConfig) -> TwoModeState {
    let levels = state.levels();
    let lf = ln_factorials(levels);
    let (t, r) = (cfg.t(), cfg.r());
    let t_pow: Vec<C64> = (0..=levels).map(|q| t.powi(q as i32)).collect();
    let r_pow: Vec<C64> = (0..=levels).map(|m| r.powi(m as i32)).collect();
    let mut amps = DMatrix::zeros(levels + 1, levels + 1);
    for (n, &c) in state.coeffs().iter().enumerate() {
        if c == C64::new(0.0, 0.0) {
            continue;
        }
        for q in 0..=n {
            let binom = (0.5 * (lf[n] - lf[q] - lf[n - q])).exp();
            amps[(q, n - q)] += c * binom * t_pow[q] * r_pow[n - q];
        }
    }
    TwoModeState { amps }
}

/// Reduced single-mode density matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<C64>,
}

impl DensityMatrix {
    /// Wraps a square matrix, checking hermiticity within `1e-12` and unit
    /// trace within `1e-10`.
    pub fn from_matrix(entries: DMatrix<C64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::InvalidArgument(
                "density matrix must be square".into(),
            ));
        }
        let rho = Self { entries };
        if rho.hermiticity_error() > 1e-12 {
            return Err(Error::InvalidArgument(
                "density matrix is not Hermitian".into(),
            ));
        }
        if (rho.trace() - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidArgument(format!(
                "trace is {} instead of 1",
                rho.trace()
            )));
        }
        Ok(rho)
    }

    pub fn diagonal(probabilities: &[f64]) -> Result<Self> {
        let d = probabilities.iter().map(|&p| C64::new(p, 0.0));
        Self::from_matrix(DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            probabilities.len(),
            d,
        )))
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.entries.diagonal().iter().map(|c| c.re).sum()
    }

    /// `Tr ρ² = Σ |ρ_qs|²` for Hermitian `ρ`.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.entries[(i, j)] - self.entries[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self
            .entries
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

/// `ρ_a[q][s] = Σ_m amps[q][m] conj(amps[s][m])`.
pub fn reduce_a(two_mode: &TwoModeState) -> DensityMatrix {
    let a = &two_mode.amps;
    let mut rho = a * a.adjoint();
    // exact hermiticity; the product is Hermitian only up to roundoff
    let n = rho.nrows();
    for i in 0..n {
        rho[(i, i)].im = 0.0;
        for j in i + 1..n {
            let v = 0.5 * (rho[(i, j)] + rho[(j, i)].conj());
            rho[(i, j)] = v;
            rho[(j, i)] = v.conj();
        }
    }
    DensityMatrix { entries: rho }
}

fn clamp_entropy(s: f64) -> f64 {
    if !(-CLAMP_SLACK..=1.0 + CLAMP_SLACK).contains(&s) {
        log::warn!("linear entropy {s} outside [0, 1] beyond roundoff; clamping");
    }
    s.clamp(0.0, 1.0)
}

/// `S = 1 − Tr ρ²`, clamped to `[0, 1]`.
pub fn linear_entropy_matrix(rho: &DensityMatrix) -> f64 {
    clamp_entropy(1.0 - rho.purity())
}

/// Partial-trace linear entropy of the beam-splitter output for `state ⊗ |0⟩`.
pub fn linear_entropy(state: &FockExpansion, cfg: &BeamSplitterConfig) -> f64 {
    linear_entropy_matrix(&reduce_a(&split_state(state, cfg)))
}

/// Series entropy together with the change observed when the truncation is
/// raised by [`CONVERGENCE_STEP`] levels.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct EntropyEstimate {
    pub value: f64,
    pub drift: f64,
    pub converged: bool,
}

/// Linear entropy from the quadruple series in the recurrence amplitudes,
/// with a truncation check at `N + 10`.
pub fn linear_entropy_series(table: &RecurrenceTable, cfg: &BeamSplitterConfig) -> EntropyEstimate {
    let value = linear_entropy_series_at(table, cfg);
    let wider = solve_recurrence(
        table.z(),
        table.gamma(),
        table.model(),
        table.levels() + CONVERGENCE_STEP,
    );
    let drift = (linear_entropy_series_at(&wider, cfg) - value).abs();
    EntropyEstimate {
        value,
        drift,
        converged: drift <= CONVERGENCE_TOLERANCE,
    }
}

/// The quadruple series at the table's own truncation level:
///
/// `S = 1 − N⁻⁴ Σ_{q,s,m,n} |t|^{2(q+s)} |r|^{2(m+n)}
///      I_{m+q} I*_{m+s} I_{n+s} I*_{n+q} / (q! s! m! n! f(m+q)! f(m+s)! f(n+s)! f(n+q)!)`.
///
/// The normalization is folded into the amplitudes first, and every term is
/// assembled from logarithms, so neither `N⁴` nor the raw products are ever
/// formed. Only `|t|²` and `|r|²` enter, so the result does not depend on `φ`.
pub fn linear_entropy_series_at(table: &RecurrenceTable, cfg: &BeamSplitterConfig) -> f64 {
    let levels = table.levels();
    let g = normalized_series_amplitudes(table);
    let lf = ln_factorials(levels);
    let weight = |ln_p: f64, k: usize| if k == 0 { 0.0 } else { k as f64 * ln_p - lf[k] };
    let (ln_t2, ln_r2) = (cfg.transmittance().ln(), cfg.reflectance().ln());
    let wt: Vec<f64> = (0..=levels).map(|k| weight(ln_t2, k)).collect();
    let wr: Vec<f64> = (0..=levels).map(|k| weight(ln_r2, k)).collect();

    let mut total = C64::new(0.0, 0.0);
    for q in 0..=levels {
        for s in 0..=levels {
            let base = wt[q] + wt[s];
            for m in 0..=levels - q.max(s) {
                let (a, b) = (g[m + q], g[m + s]);
                let w1 = base + wr[m] + a.ln_abs + b.ln_abs;
                let ph1 = a.phase * b.phase.conj();
                for n in 0..=levels - q.max(s) {
                    let (c, d) = (g[n + s], g[n + q]);
                    let w = w1 + wr[n] + c.ln_abs + d.ln_abs;
                    if w == f64::NEG_INFINITY {
                        continue;
                    }
                    total += ph1 * c.phase * d.phase.conj() * w.exp();
                }
            }
        }
    }
    clamp_entropy(1.0 - total.re)
}

/// `I_k / (f(k)! · N)` in log form, with `N² = Σ_k |I_k|² / e_k!`.
fn normalized_series_amplitudes(table: &RecurrenceTable) -> Vec<LogAmplitude> {
    let levels = table.levels();
    let lef = table.model().log_e_factorials(levels);
    let lff = table.model().log_f_factorials(levels);
    let amps: Vec<LogAmplitude> = (0..=levels).map(|k| table.log_amplitude(k)).collect();
    let ln_weights: Vec<f64> = amps
        .iter()
        .zip(&lef)
        .map(|(a, l)| 2.0 * a.ln_abs - l)
        .collect();
    let peak = ln_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ln_norm = 0.5
        * (peak
            + ln_weights
                .iter()
                .map(|w| (w - peak).exp())
                .sum::<f64>()
                .ln());
    amps.into_iter()
        .zip(lff)
        .map(|(mut a, l)| {
            a.ln_abs -= l + ln_norm;
            a
        })
        .collect()
}

/// One point of an entropy sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub model: SpectrumModel,
    pub z: f64,
    pub gamma: C64,
    pub entropy: f64,
    /// `|S(N + 10) − S(N)|`.
    pub drift: f64,
    pub converged: bool,
}

/// Partial-trace linear entropy of `|z, γ, f⟩ ⊗ |0⟩` over every
/// `(model, z)` pair, models outermost. Points are evaluated in parallel and
/// returned in grid order.
pub fn entropy_sweep(
    models: &[SpectrumModel],
    z_grid: &[f64],
    gamma: C64,
    cfg: &BeamSplitterConfig,
    levels: usize,
) -> Result<Vec<SweepRow>> {
    crate::states::check_squeezing(gamma)?;
    let points: Vec<(SpectrumModel, f64)> = models
        .iter()
        .flat_map(|m| z_grid.iter().map(move |&z| (*m, z)))
        .collect();
    points
        .into_par_iter()
        .map(|(model, z)| {
            let zc = C64::new(z, 0.0);
            let s = linear_entropy(&build_nonlinear_squeezed(zc, gamma, &model, levels)?, cfg);
            let wider = build_nonlinear_squeezed(zc, gamma, &model, levels + CONVERGENCE_STEP)?;
            let drift = (linear_entropy(&wider, cfg) - s).abs();
            Ok(SweepRow {
                model,
                z,
                gamma,
                entropy: s,
                drift,
                converged: drift <= CONVERGENCE_TOLERANCE,
            })
        })
        .collect()
}
