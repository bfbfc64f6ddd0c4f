//! Quadrature moments, dispersions and position-space densities of a
//! single-mode state.

use num_complex::Complex64 as C64;

use crate::fock::FockExpansion;

/// Normalization of the quadratures `x = s (a + a†)`, `p = s (a − a†)/i`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum QuadratureConvention {
    /// `s = 1/2`: coherent-state variances are `1/4`.
    Half,
    /// `s = 1/√2`: coherent-state variances are `1/2`.
    #[default]
    Sqrt2,
}

impl QuadratureConvention {
    pub fn scale(self) -> f64 {
        match self {
            Self::Half => 0.5,
            Self::Sqrt2 => std::f64::consts::FRAC_1_SQRT_2,
        }
    }

    /// Variance of either quadrature in a coherent state.
    pub fn coherent_variance(self) -> f64 {
        self.scale() * self.scale()
    }

    /// Lower bound on `var_x · var_p`.
    pub fn minimal_product(self) -> f64 {
        self.coherent_variance() * self.coherent_variance()
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Half => "half",
            Self::Sqrt2 => "sqrt2",
        }
    }
}

/// `⟨a⟩`, `⟨a²⟩` and `⟨a†a⟩`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct LadderMoments {
    pub mean_a: C64,
    pub mean_a2: C64,
    pub mean_n: f64,
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct QuadratureReport {
    pub mean_x: f64,
    pub mean_p: f64,
    pub var_x: f64,
    pub var_p: f64,
    pub product: f64,
}

pub fn ladder_moments(state: &FockExpansion) -> LadderMoments {
    let c = state.coeffs();
    let mut mean_a = C64::new(0.0, 0.0);
    let mut mean_a2 = C64::new(0.0, 0.0);
    let mut mean_n = 0.0;
    for n in 1..c.len() {
        let nf = n as f64;
        mean_a += c[n - 1].conj() * c[n] * nf.sqrt();
        mean_n += nf * c[n].norm_sqr();
        if n >= 2 {
            mean_a2 += c[n - 2].conj() * c[n] * (nf * (nf - 1.0)).sqrt();
        }
    }
    LadderMoments {
        mean_a,
        mean_a2,
        mean_n,
    }
}

/// Means and variances of `x` and `p`, using `[a, a†] = 1` to write
/// `⟨x²⟩ = s² (2 Re⟨a²⟩ + 2⟨a†a⟩ + 1)` and `⟨p²⟩ = s² (2⟨a†a⟩ + 1 − 2 Re⟨a²⟩)`.
pub fn quadrature_report(
    state: &FockExpansion,
    convention: QuadratureConvention,
) -> QuadratureReport {
    let m = ladder_moments(state);
    let s = convention.scale();
    let s2 = s * s;
    let mean_x = 2.0 * s * m.mean_a.re;
    let mean_p = 2.0 * s * m.mean_a.im;
    let x2 = s2 * (2.0 * m.mean_a2.re + 2.0 * m.mean_n + 1.0);
    let p2 = s2 * (2.0 * m.mean_n + 1.0 - 2.0 * m.mean_a2.re);
    let var_x = (x2 - mean_x * mean_x).max(0.0);
    let var_p = (p2 - mean_p * mean_p).max(0.0);
    QuadratureReport {
        mean_x,
        mean_p,
        var_x,
        var_p,
        product: var_x * var_p,
    }
}

/// `ψ(x) = Σ c_n φ_n(x)` in the oscillator eigenfunction basis, using the
/// normalized recurrence `φ_{n+1} = x √(2/(n+1)) φ_n − √(n/(n+1)) φ_{n−1}`.
pub fn wavefunction(state: &FockExpansion, x: f64) -> C64 {
    let c = state.coeffs();
    let mut prev = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    let mut psi = c[0] * prev;
    if c.len() == 1 {
        return psi;
    }
    let mut cur = std::f64::consts::SQRT_2 * x * prev;
    psi += c[1] * cur;
    for n in 1..c.len() - 1 {
        let nf = n as f64;
        let next = x * (2.0 / (nf + 1.0)).sqrt() * cur - (nf / (nf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        psi += c[n + 1] * cur;
    }
    psi
}

/// `|ψ(x)|²` on the given grid.
pub fn position_density(state: &FockExpansion, x_grid: &[f64]) -> Vec<f64> {
    x_grid
        .iter()
        .map(|&x| wavefunction(state, x).norm_sqr())
        .collect()
}

/// Full width at half maximum of the main peak of `|ψ(x)|²`.
///
/// The peak is located on a grid of `samples` points over `[x_min, x_max]`
/// and refined by golden-section search; the two half-maximum crossings are
/// found by bisection. Returns `None` if the peak is not bracketed by the
/// window.
pub fn density_fwhm(state: &FockExpansion, x_min: f64, x_max: f64, samples: usize) -> Option<f64> {
    let density = |x: f64| wavefunction(state, x).norm_sqr();
    let samples = samples.max(3);
    let step = (x_max - x_min) / (samples - 1) as f64;
    let grid: Vec<f64> = (0..samples).map(|i| x_min + step * i as f64).collect();
    let values: Vec<f64> = grid.iter().map(|&x| density(x)).collect();
    let (peak_idx, _) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))?;
    let lo = grid[peak_idx.saturating_sub(1)];
    let hi = grid[(peak_idx + 1).min(samples - 1)];
    let peak_x = golden_max(&density, lo, hi);
    let half = 0.5 * density(peak_x).max(values[peak_idx]);

    let left = (0..peak_idx).rev().find(|&j| values[j] < half)?;
    let right = (peak_idx + 1..samples).find(|&j| values[j] < half)?;
    let x_left = bisect(&density, half, grid[left], grid[left + 1]);
    let x_right = bisect(&density, half, grid[right - 1], grid[right]);
    Some(x_right - x_left)
}

fn golden_max(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() < 1e-13 {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Root of `f(x) = level` in `[a, b]`, assuming a sign change.
fn bisect(f: &impl Fn(f64) -> f64, level: f64, mut a: f64, mut b: f64) -> f64 {
    let fa_below = f(a) < level;
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if (f(mid) < level) == fa_below {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}
