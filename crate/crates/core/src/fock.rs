//! Truncated Fock-space representation and the deformation model `f(n)`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::DEFAULT_TAIL_TOLERANCE;

/// Which family of deformation functions a [`SpectrumModel`] belongs to.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    /// `f(n) = 1`, `e_n = n`.
    Harmonic,
    /// `f(n) = √n`, `e_n = n²`.
    Quadratic,
    /// `f(n) = √(A + B n)`, `e_n = A n + B n²`.
    LinearQuadratic,
}

/// Deformation function `f(n)` of the generalized ladder operators together
/// with the spectrum `e_n = f²(n)·n` of `A†A`.
///
/// Construction validates positivity, so `e_n > 0` for every `n ≥ 1`. `e_0`
/// is always zero.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct SpectrumModel {
    kind: ModelKind,
    a: f64,
    b: f64,
}

impl SpectrumModel {
    pub fn new(kind: ModelKind, a: f64, b: f64) -> Result<Self> {
        match kind {
            ModelKind::Harmonic => Ok(Self::harmonic()),
            ModelKind::Quadratic => Ok(Self::quadratic()),
            ModelKind::LinearQuadratic => Self::linear_quadratic(a, b),
        }
    }

    pub fn harmonic() -> Self {
        Self {
            kind: ModelKind::Harmonic,
            a: 0.0,
            b: 0.0,
        }
    }

    pub fn quadratic() -> Self {
        Self {
            kind: ModelKind::Quadratic,
            a: 0.0,
            b: 0.0,
        }
    }

    /// `f(n) = √(A + B n)`. Requires `B > 0` and `A + B > 0`, which is the
    /// same as `A + B n > 0` for every `n ≥ 1`.
    pub fn linear_quadratic(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidModel(format!(
                "non-finite parameters A={a}, B={b}"
            )));
        }
        if b == 0.0 {
            return Err(Error::InvalidModel(
                "B = 0 reduces to a rescaled harmonic oscillator".into(),
            ));
        }
        if b < 0.0 {
            return Err(Error::InvalidModel(format!(
                "B = {b} < 0 makes f²(n) = A + B n negative for large n"
            )));
        }
        if a + b <= 0.0 {
            return Err(Error::InvalidModel(format!(
                "A + B = {} must be positive so that f²(1) > 0",
                a + b
            )));
        }
        Ok(Self {
            kind: ModelKind::LinearQuadratic,
            a,
            b,
        })
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    /// `A` parameter; zero for the harmonic and quadratic models.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// `B` parameter; zero for the harmonic and quadratic models.
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Short label used in tables: `harmonic`, `quadratic` or `lq(A,B)`.
    pub fn label(&self) -> String {
        match self.kind {
            ModelKind::Harmonic => "harmonic".into(),
            ModelKind::Quadratic => "quadratic".into(),
            ModelKind::LinearQuadratic => format!("lq({},{})", self.a, self.b),
        }
    }

    pub fn f_squared(&self, n: usize) -> f64 {
        let n = n as f64;
        match self.kind {
            ModelKind::Harmonic => 1.0,
            ModelKind::Quadratic => n,
            ModelKind::LinearQuadratic => self.a + self.b * n,
        }
    }

    pub fn f(&self, n: usize) -> f64 {
        self.f_squared(n).sqrt()
    }

    /// Spectrum `e_n = n f²(n)`.
    pub fn energy(&self, n: usize) -> f64 {
        let nf = n as f64;
        match self.kind {
            ModelKind::Harmonic => nf,
            ModelKind::Quadratic => nf * nf,
            ModelKind::LinearQuadratic => self.a * nf + self.b * nf * nf,
        }
    }

    /// `ln(e_n!)` where `e_n! = e_1 e_2 … e_n` and `e_0! = 1`.
    pub fn log_e_factorial(&self, n: usize) -> f64 {
        (1..=n).map(|k| self.energy(k).ln()).sum()
    }

    /// `ln(f(n)!)` where `f(n)! = f(1) f(2) … f(n)` and `f(0)! = 1`.
    pub fn log_f_factorial(&self, n: usize) -> f64 {
        0.5 * (1..=n).map(|k| self.f_squared(k).ln()).sum::<f64>()
    }

    /// `ln(e_k!)` for `k = 0..=levels`.
    pub fn log_e_factorials(&self, levels: usize) -> Vec<f64> {
        cumulative_logs(levels, |k| self.energy(k).ln())
    }

    /// `ln(f(k)!)` for `k = 0..=levels`.
    pub fn log_f_factorials(&self, levels: usize) -> Vec<f64> {
        cumulative_logs(levels, |k| 0.5 * self.f_squared(k).ln())
    }
}

fn cumulative_logs(levels: usize, term: impl Fn(usize) -> f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(levels + 1);
    let mut acc = 0.0;
    out.push(acc);
    for k in 1..=levels {
        acc += term(k);
        out.push(acc);
    }
    out
}

/// A complex number stored as `phase · exp(ln_abs)`, with `|phase| = 1`, or
/// `phase = 0` and `ln_abs = -∞` for an exact zero.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct LogAmplitude {
    pub ln_abs: f64,
    pub phase: C64,
}

impl LogAmplitude {
    pub const ZERO: Self = Self {
        ln_abs: f64::NEG_INFINITY,
        phase: C64 { re: 0.0, im: 0.0 },
    };

    pub fn from_complex(c: C64) -> Self {
        let r = c.norm();
        if r == 0.0 {
            Self::ZERO
        } else {
            Self {
                ln_abs: r.ln(),
                phase: c / r,
            }
        }
    }

    pub fn to_complex(self) -> C64 {
        self.scaled(0.0)
    }

    /// `self / exp(ln_div)`, combined before exponentiating.
    pub fn scaled(self, ln_div: f64) -> C64 {
        if self.ln_abs == f64::NEG_INFINITY {
            C64::new(0.0, 0.0)
        } else {
            self.phase * (self.ln_abs - ln_div).exp()
        }
    }
}

/// Normalized, truncated amplitudes `c_0..c_N` of a single-mode state.
#[derive(Clone, Debug, PartialEq)]
pub struct FockExpansion {
    coeffs: Vec<C64>,
    tail_weight: f64,
}

impl FockExpansion {
    /// The number state `|n⟩` truncated at `levels`.
    pub fn basis(n: usize, levels: usize) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); levels.max(n) + 1];
        coeffs[n] = C64::new(1.0, 0.0);
        let tail_weight = if n == coeffs.len() - 1 { 1.0 } else { 0.0 };
        Self {
            coeffs,
            tail_weight,
        }
    }

    pub fn vacuum(levels: usize) -> Self {
        Self::basis(0, levels)
    }

    /// Normalizes terms given as log-magnitude and phase. The largest
    /// magnitude is factored out before exponentiating, so raw terms far
    /// outside double range are fine.
    pub fn from_log_terms(terms: &[LogAmplitude]) -> Result<Self> {
        let peak = terms
            .iter()
            .map(|t| t.ln_abs)
            .fold(f64::NEG_INFINITY, f64::max);
        if !peak.is_finite() {
            return Err(Error::EmptyState);
        }
        let raw: Vec<C64> = terms.iter().map(|t| t.scaled(peak)).collect();
        normalize(&raw)
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Highest retained level `N`.
    pub fn levels(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `|c_N|² / Σ|c_n|²` of the raw series this expansion was built from.
    pub fn tail_weight(&self) -> f64 {
        self.tail_weight
    }

    pub fn is_converged(&self) -> bool {
        self.is_converged_within(DEFAULT_TAIL_TOLERANCE)
    }

    pub fn is_converged_within(&self, tol: f64) -> bool {
        self.tail_weight <= tol
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.norm_sqr()).collect()
    }
}

/// Divides `raw` by its Euclidean norm and records the tail weight.
pub fn normalize(raw: &[C64]) -> Result<FockExpansion> {
    let peak = raw.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if raw.is_empty() || peak == 0.0 || !peak.is_finite() {
        return Err(Error::EmptyState);
    }
    let scaled: Vec<C64> = raw.iter().map(|c| c / peak).collect();
    let total: f64 = scaled.iter().map(|c| c.norm_sqr()).sum();
    let norm = total.sqrt();
    let tail_weight = scaled[scaled.len() - 1].norm_sqr() / total;
    Ok(FockExpansion {
        coeffs: scaled.into_iter().map(|c| c / norm).collect(),
        tail_weight,
    })
}

/// `⟨s1|s2⟩ = Σ conj(c1_n) c2_n`; the shorter expansion is zero-padded.
pub fn inner_product(s1: &FockExpansion, s2: &FockExpansion) -> C64 {
    s1.coeffs
        .iter()
        .zip(&s2.coeffs)
        .map(|(a, b)| a.conj() * b)
        .sum()
}
