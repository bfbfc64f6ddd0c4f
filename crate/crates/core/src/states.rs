//! State builders: canonical and nonlinear coherent states, squeezed states
//! from the three-term recurrence, and the closed hypergeometric forms of
//! the recurrence solution.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{FockExpansion, LogAmplitude, ModelKind, SpectrumModel};
use crate::special::{
    gauss_2f1_terminating, hermite_sequence, ln_factorial, ln_factorials, log_pochhammer_real,
    HypergeometricSpec,
};

/// The recurrence mantissas are rescaled every this many steps.
const RESCALE_EVERY: usize = 10;

/// Solution `I(z, γ, n)`, `n = 0..=N`, of
/// `I_{n+1} = z I_n − γ n f²(n) I_{n−1}` with `I_0 = 1`, `I_1 = z`.
///
/// Entries are kept as `mantissa · exp(ln_scale)`. `ln_scale` is piecewise
/// constant and changes every few steps, so the table stays finite long
/// after `I_n` itself would overflow.
#[derive(Clone, Debug)]
pub struct RecurrenceTable {
    mantissa: Vec<C64>,
    ln_scale: Vec<f64>,
    z: C64,
    gamma: C64,
    model: SpectrumModel,
}

impl RecurrenceTable {
    pub fn levels(&self) -> usize {
        self.mantissa.len() - 1
    }

    pub fn z(&self) -> C64 {
        self.z
    }

    pub fn gamma(&self) -> C64 {
        self.gamma
    }

    pub fn model(&self) -> &SpectrumModel {
        &self.model
    }

    pub fn log_amplitude(&self, n: usize) -> LogAmplitude {
        let mut amp = LogAmplitude::from_complex(self.mantissa[n]);
        amp.ln_abs += self.ln_scale[n];
        amp
    }

    /// `I(z, γ, n)` as a plain complex number; overflows for large tables.
    pub fn value(&self, n: usize) -> C64 {
        self.mantissa[n] * self.ln_scale[n].exp()
    }

    /// `I_n / √(e_n!)`, the unnormalized Fock amplitude of the squeezed state.
    pub fn scaled_values(&self) -> Vec<C64> {
        let lef = self.model.log_e_factorials(self.levels());
        (0..=self.levels())
            .map(|n| self.log_amplitude(n).scaled(0.5 * lef[n]))
            .collect()
    }

    /// `ln max(|I_n|, |z I_{n−1}|, |γ e_{n−1} I_{n−2}|)`: the magnitude of
    /// the terms that produce `I_n`. Relative comparisons use it as the
    /// denominator so that an exact cancellation (`I_n = 0`) is judged
    /// against the size of what cancelled.
    pub fn ln_term_scale(&self, n: usize) -> f64 {
        let mut s = self.log_amplitude(n).ln_abs;
        if n >= 1 {
            s = s.max(self.z.norm().ln() + self.log_amplitude(n - 1).ln_abs);
        }
        if n >= 2 {
            let coupling = self.gamma.norm() * self.model.energy(n - 1);
            s = s.max(coupling.ln() + self.log_amplitude(n - 2).ln_abs);
        }
        s
    }

    /// Largest recurrence residual
    /// `|I_{n+1} − z I_n + γ n f²(n) I_{n−1}| / max(1, |I_{n+1}|)`.
    pub fn max_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for n in 1..self.levels() {
            let next = self.log_amplitude(n + 1);
            let cur = self.log_amplitude(n);
            let prev = self.log_amplitude(n - 1);
            // the largest of the three magnitudes sets a common scale
            let s = next.ln_abs.max(cur.ln_abs).max(prev.ln_abs).max(0.0);
            let coupling = self.gamma * (n as f64 * self.model.f_squared(n));
            let r = next.scaled(s) - self.z * cur.scaled(s) + coupling * prev.scaled(s);
            let floor = (-s).exp().max(next.scaled(s).norm());
            worst = worst.max(r.norm() / floor);
        }
        worst
    }
}

/// Forward iteration of the squeezed-state recurrence up to level `levels`.
pub fn solve_recurrence(
    z: C64,
    gamma: C64,
    model: &SpectrumModel,
    levels: usize,
) -> RecurrenceTable {
    solve_recurrence_seeded(z, gamma, model, levels, z)
}

/// Same as [`solve_recurrence`] with an arbitrary `I_1`; used by the
/// negative control in [`crate::verify`].
pub(crate) fn solve_recurrence_seeded(
    z: C64,
    gamma: C64,
    model: &SpectrumModel,
    levels: usize,
    first: C64,
) -> RecurrenceTable {
    let mut mantissa = Vec::with_capacity(levels + 1);
    let mut ln_scale = Vec::with_capacity(levels + 1);
    mantissa.push(C64::new(1.0, 0.0));
    ln_scale.push(0.0);
    if levels >= 1 {
        mantissa.push(first);
        ln_scale.push(0.0);
    }
    let (mut prev, mut cur, mut scale) = (C64::new(1.0, 0.0), first, 0.0);
    for n in 1..levels {
        let next = z * cur - gamma * (n as f64 * model.f_squared(n)) * prev;
        mantissa.push(next);
        ln_scale.push(scale);
        prev = cur;
        cur = next;
        if (n + 1) % RESCALE_EVERY == 0 {
            let s = prev.norm().max(cur.norm());
            if s > 0.0 && s.is_finite() {
                prev /= s;
                cur /= s;
                scale += s.ln();
            }
        }
    }
    RecurrenceTable {
        mantissa,
        ln_scale,
        z,
        gamma,
        model: *model,
    }
}

fn unit_phase(c: C64) -> C64 {
    let r = c.norm();
    if r == 0.0 {
        C64::new(0.0, 0.0)
    } else {
        c / r
    }
}

pub(crate) fn check_squeezing(gamma: C64) -> Result<()> {
    let g = gamma.norm();
    if g.is_nan() || g >= 1.0 {
        return Err(Error::SqueezingOutOfRange(g));
    }
    Ok(())
}

/// Normalized terms `zⁿ / √(e_n!)` for `n = 0..=levels`.
fn coherent_terms(z: C64, lef: &[f64]) -> Vec<LogAmplitude> {
    if z == C64::new(0.0, 0.0) {
        let mut terms = vec![LogAmplitude::ZERO; lef.len()];
        terms[0] = LogAmplitude::from_complex(C64::new(1.0, 0.0));
        return terms;
    }
    let (ln_z, phase) = (z.norm().ln(), unit_phase(z));
    lef.iter()
        .enumerate()
        .map(|(n, &l)| LogAmplitude {
            ln_abs: n as f64 * ln_z - 0.5 * l,
            phase: phase.powi(n as i32),
        })
        .collect()
}

/// Canonical coherent state `|z⟩` with amplitudes `zⁿ/√(n!)`.
pub fn build_coherent_canonical(z: C64, levels: usize) -> FockExpansion {
    let terms = coherent_terms(z, &ln_factorials(levels));
    FockExpansion::from_log_terms(&terms).expect("the vacuum term is always present")
}

/// Canonical squeezed state with amplitudes
/// `(γ/2)^{n/2} H_n(z/√(2γ)) / √(n!)`, for `0 < |γ| < 1`.
pub fn build_squeezed_canonical(z: C64, gamma: C64, levels: usize) -> Result<FockExpansion> {
    check_squeezing(gamma)?;
    if gamma == C64::new(0.0, 0.0) {
        return Err(Error::SqueezingOutOfRange(0.0));
    }
    let terms: Vec<LogAmplitude> = hermite_form(z, gamma, levels)
        .into_iter()
        .zip(ln_factorials(levels))
        .map(|(mut t, lf)| {
            t.ln_abs -= 0.5 * lf;
            t
        })
        .collect();
    FockExpansion::from_log_terms(&terms)
}

/// `(γ/2)^{n/2} H_n(z/√(2γ))` for `n = 0..=levels`: the harmonic solution of
/// the recurrence in Hermite form.
fn hermite_form(z: C64, gamma: C64, levels: usize) -> Vec<LogAmplitude> {
    let half = (gamma / 2.0).sqrt();
    let alpha = z / (2.0 * gamma).sqrt();
    let (ln_half, phase_half) = (half.norm().ln(), unit_phase(half));
    hermite_sequence(levels, alpha)
        .into_iter()
        .enumerate()
        .map(|(n, h)| {
            let mut t = LogAmplitude::from_complex(h);
            t.ln_abs += n as f64 * ln_half;
            t.phase *= phase_half.powi(n as i32);
            t
        })
        .collect()
}

/// Nonlinear coherent state `|z, f⟩` with amplitudes `zⁿ/√(e_n!)`.
pub fn build_nonlinear_coherent(z: C64, model: &SpectrumModel, levels: usize) -> FockExpansion {
    let terms = coherent_terms(z, &model.log_e_factorials(levels));
    FockExpansion::from_log_terms(&terms).expect("the vacuum term is always present")
}

/// Nonlinear squeezed state `|z, γ, f⟩` with amplitudes `I(z,γ,n)/√(e_n!)`
/// from the forward recurrence. `γ = 0` gives the nonlinear coherent state.
pub fn build_nonlinear_squeezed(
    z: C64,
    gamma: C64,
    model: &SpectrumModel,
    levels: usize,
) -> Result<FockExpansion> {
    check_squeezing(gamma)?;
    if gamma == C64::new(0.0, 0.0) {
        return Ok(build_nonlinear_coherent(z, model, levels));
    }
    let table = solve_recurrence(z, gamma, model, levels);
    squeezed_from_table(&table)
}

pub(crate) fn squeezed_from_table(table: &RecurrenceTable) -> Result<FockExpansion> {
    let lef = table.model().log_e_factorials(table.levels());
    let terms: Vec<LogAmplitude> = (0..=table.levels())
        .map(|n| {
            let mut t = table.log_amplitude(n);
            t.ln_abs -= 0.5 * lef[n];
            t
        })
        .collect();
    FockExpansion::from_log_terms(&terms)
}

fn nonzero_gamma(gamma: C64) -> Result<()> {
    if gamma == C64::new(0.0, 0.0) {
        Err(Error::ZeroSqueezing)
    } else {
        Ok(())
    }
}

/// `i^n (√γ)^n n! ₂F₁[−n, 1/2 + iz/(2√γ); 1; 2]` in log form.
pub fn closed_form_quadratic_log(z: C64, gamma: C64, n: usize) -> Result<LogAmplitude> {
    nonzero_gamma(gamma)?;
    let root = gamma.sqrt();
    let b = C64::new(0.5, 0.0) + C64::i() * z / (2.0 * root);
    let f = gauss_2f1_terminating(&HypergeometricSpec {
        n,
        b,
        c: C64::new(1.0, 0.0),
        x: C64::new(2.0, 0.0),
    })?;
    let mut out = LogAmplitude::from_complex(f);
    out.ln_abs += n as f64 * root.norm().ln() + ln_factorial(n);
    out.phase *= (C64::i() * unit_phase(root)).powi(n as i32);
    Ok(out)
}

/// Closed-form recurrence solution for `f(n) = √n`.
pub fn closed_form_quadratic(z: C64, gamma: C64, n: usize) -> Result<C64> {
    closed_form_quadratic_log(z, gamma, n).map(LogAmplitude::to_complex)
}

/// `i^n (√(γB))^n (1 + A/B)^{(n)} ₂F₁[−n, 1/2 + A/(2B) + iz/(2√(γB)); 1 + A/B; 2]`
/// in log form.
pub fn closed_form_linear_quadratic_log(
    z: C64,
    gamma: C64,
    a: f64,
    b: f64,
    n: usize,
) -> Result<LogAmplitude> {
    nonzero_gamma(gamma)?;
    SpectrumModel::linear_quadratic(a, b)?;
    let root = (gamma * b).sqrt();
    let c = 1.0 + a / b;
    let upper = C64::new(0.5 + a / (2.0 * b), 0.0) + C64::i() * z / (2.0 * root);
    let f = gauss_2f1_terminating(&HypergeometricSpec {
        n,
        b: upper,
        c: C64::new(c, 0.0),
        x: C64::new(2.0, 0.0),
    })?;
    let mut out = LogAmplitude::from_complex(f);
    out.ln_abs += n as f64 * root.norm().ln() + log_pochhammer_real(c, n);
    out.phase *= (C64::i() * unit_phase(root)).powi(n as i32);
    Ok(out)
}

/// Closed-form recurrence solution for `f(n) = √(A + B n)`.
pub fn closed_form_linear_quadratic(z: C64, gamma: C64, a: f64, b: f64, n: usize) -> Result<C64> {
    closed_form_linear_quadratic_log(z, gamma, a, b, n).map(LogAmplitude::to_complex)
}

/// Closed-form `I(z, γ, n)` for `n = 0..=levels` for any model: Hermite form
/// for the harmonic oscillator, hypergeometric forms otherwise.
pub fn closed_form_table(
    z: C64,
    gamma: C64,
    model: &SpectrumModel,
    levels: usize,
) -> Result<Vec<LogAmplitude>> {
    nonzero_gamma(gamma)?;
    match model.kind() {
        ModelKind::Harmonic => Ok(hermite_form(z, gamma, levels)),
        ModelKind::Quadratic => (0..=levels)
            .map(|n| closed_form_quadratic_log(z, gamma, n))
            .collect(),
        ModelKind::LinearQuadratic => (0..=levels)
            .map(|n| closed_form_linear_quadratic_log(z, gamma, model.a(), model.b(), n))
            .collect(),
    }
}
