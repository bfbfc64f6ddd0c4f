//! Cross-path consistency suites bundled for the command-line `verify`
//! command. Each suite compares two independent evaluations of the same
//! quantity and reports the worst discrepancy against a fixed threshold.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64 as C64;

use crate::entanglement::{linear_entropy, linear_entropy_series_at, BeamSplitterConfig};
use crate::fock::SpectrumModel;
use crate::states::{
    build_coherent_canonical, build_nonlinear_coherent, build_nonlinear_squeezed,
    build_squeezed_canonical, closed_form_table, solve_recurrence, solve_recurrence_seeded,
    squeezed_from_table,
};

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    /// Truncation level whose entropy drift against [`REFERENCE_LEVELS`] is
    /// reported.
    pub levels: usize,
    /// Negative control: perturbs the `I_1` seed of the recurrence used by
    /// the closed-form suite, which must then fail.
    pub inject_fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            levels: crate::DEFAULT_LEVELS,
            inject_fault: false,
        }
    }
}

pub const REFERENCE_LEVELS: usize = 60;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub metric: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl CheckOutcome {
    fn new(name: &'static str, metric: f64, threshold: f64) -> Self {
        Self {
            name,
            metric,
            threshold,
            passed: metric <= threshold,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn run(opts: &VerifyOptions) -> VerifyReport {
    VerifyReport {
        checks: vec![
            closed_form_vs_recurrence(opts.inject_fault),
            hermite_vs_recurrence(),
            series_vs_partial_trace(),
            zero_squeezing_reduction(),
            normalization(),
            truncation_drift(opts.levels),
        ],
    }
}

/// `|a − b| / max(|a|, |b|, floor)`, zero when everything vanishes.
pub fn relative_difference(a: C64, b: C64, floor: f64) -> f64 {
    let scale = a.norm().max(b.norm()).max(floor);
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

fn closed_form_vs_recurrence(inject_fault: bool) -> CheckOutcome {
    let levels = 40;
    let models = [
        SpectrumModel::quadratic(),
        SpectrumModel::linear_quadratic(1.0, 1.0).unwrap(),
        SpectrumModel::linear_quadratic(2.0, 1.0).unwrap(),
        SpectrumModel::linear_quadratic(1.0, 2.0).unwrap(),
    ];
    let mut worst: f64 = 0.0;
    for model in &models {
        for z in [C64::new(0.5, 0.0), C64::new(1.0, 0.3), C64::new(2.0, 0.0)] {
            for gamma in [0.1, 0.5, 0.9] {
                let gamma = C64::new(gamma, 0.0);
                let first = if inject_fault { z * 1.001 } else { z };
                let table = solve_recurrence_seeded(z, gamma, model, levels, first);
                let closed = closed_form_table(z, gamma, model, levels).expect("gamma is nonzero");
                let lef = model.log_e_factorials(levels);
                for n in 0..=levels {
                    let a = table.log_amplitude(n).scaled(0.5 * lef[n]);
                    let b = closed[n].scaled(0.5 * lef[n]);
                    let floor = (table.ln_term_scale(n) - 0.5 * lef[n]).exp();
                    worst = worst.max(relative_difference(a, b, floor));
                }
            }
        }
    }
    CheckOutcome::new("closed form vs recurrence", worst, 1e-9)
}

fn hermite_vs_recurrence() -> CheckOutcome {
    let mut worst: f64 = 0.0;
    for z in [0.5, 1.0, 2.0] {
        for gamma in [0.1, 0.5, 0.9] {
            let (z, gamma) = (C64::new(z, 0.0), C64::new(gamma, 0.0));
            let a = build_squeezed_canonical(z, gamma, crate::DEFAULT_LEVELS).expect("|gamma| < 1");
            let b = build_nonlinear_squeezed(
                z,
                gamma,
                &SpectrumModel::harmonic(),
                crate::DEFAULT_LEVELS,
            )
            .expect("|gamma| < 1");
            for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
                worst = worst.max((x - y).norm());
            }
        }
    }
    CheckOutcome::new("hermite form vs harmonic recurrence", worst, 1e-9)
}

fn series_vs_partial_trace() -> CheckOutcome {
    let cases = [
        (
            SpectrumModel::harmonic(),
            C64::new(1.0, 0.0),
            0.5,
            FRAC_PI_2,
        ),
        (SpectrumModel::quadratic(), C64::new(1.5, -0.4), 0.7, 1.0),
        (SpectrumModel::quadratic(), C64::new(0.3, 0.0), 0.0, 2.5),
        (
            SpectrumModel::linear_quadratic(1.0, 2.0).unwrap(),
            C64::new(0.8, 0.8),
            0.5,
            FRAC_PI_2,
        ),
        (
            SpectrumModel::linear_quadratic(2.0, 1.0).unwrap(),
            C64::new(2.0, 0.0),
            0.3,
            0.4,
        ),
    ];
    let levels = 20;
    let mut worst: f64 = 0.0;
    for (model, z, gamma, theta) in cases {
        let cfg = BeamSplitterConfig::new(theta, 0.2).expect("theta in range");
        let table = solve_recurrence(z, C64::new(gamma, 0.0), &model, levels);
        let state = squeezed_from_table(&table).expect("nonzero vacuum term");
        let diff = (linear_entropy_series_at(&table, &cfg) - linear_entropy(&state, &cfg)).abs();
        worst = worst.max(diff);
    }
    CheckOutcome::new("series vs partial-trace entropy", worst, 1e-8)
}

fn zero_squeezing_reduction() -> CheckOutcome {
    let mut worst: f64 = 0.0;
    let z = C64::new(0.9, -0.3);
    let coherent = build_coherent_canonical(z, crate::DEFAULT_LEVELS);
    let nearly = build_nonlinear_squeezed(
        z,
        C64::new(1e-12, 0.0),
        &SpectrumModel::harmonic(),
        crate::DEFAULT_LEVELS,
    )
    .expect("|gamma| < 1");
    for (a, b) in coherent.coeffs().iter().zip(nearly.coeffs()) {
        worst = worst.max((a - b).norm());
    }
    for model in [SpectrumModel::harmonic(), SpectrumModel::quadratic()] {
        let t = solve_recurrence(z, C64::new(0.0, 0.0), &model, crate::DEFAULT_LEVELS);
        for n in 0..=t.levels() {
            worst = worst.max(relative_difference(t.value(n), z.powi(n as i32), 0.0));
        }
    }
    CheckOutcome::new("gamma -> 0 reduction", worst, 1e-9)
}

fn normalization() -> CheckOutcome {
    let z = C64::new(1.0, 0.5);
    let gamma = C64::new(0.5, 0.0);
    let lq = SpectrumModel::linear_quadratic(1.0, 2.0).unwrap();
    let states = [
        build_coherent_canonical(z, 40),
        build_squeezed_canonical(z, gamma, 40).expect("|gamma| < 1"),
        build_nonlinear_coherent(z, &SpectrumModel::quadratic(), 40),
        build_nonlinear_squeezed(z, gamma, &SpectrumModel::quadratic(), 40).expect("|gamma| < 1"),
        build_nonlinear_squeezed(z, gamma, &lq, 30).expect("|gamma| < 1"),
    ];
    let worst = states
        .iter()
        .map(|s| (s.norm_sqr() - 1.0).abs())
        .fold(0.0, f64::max);
    CheckOutcome::new("normalization", worst, 1e-12)
}

fn truncation_drift(levels: usize) -> CheckOutcome {
    let cfg = BeamSplitterConfig::balanced();
    let (z, gamma) = (C64::new(2.0, 0.0), C64::new(0.5, 0.0));
    let mut worst: f64 = 0.0;
    for model in [SpectrumModel::harmonic(), SpectrumModel::quadratic()] {
        let entropy = |n| {
            linear_entropy(
                &build_nonlinear_squeezed(z, gamma, &model, n).expect("|gamma| < 1"),
                &cfg,
            )
        };
        worst = worst.max((entropy(levels) - entropy(REFERENCE_LEVELS)).abs());
    }
    CheckOutcome::new("truncation drift vs 60 levels", worst, 1e-6)
}
