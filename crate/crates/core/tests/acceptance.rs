//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::ExitCode;

use nlcs_core::states::closed_form_table;
use nlcs_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn ensure(cond: bool, msg: String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg)
    }
}

fn squeezed(z: f64, gamma: f64, model: &SpectrumModel, levels: usize) -> FockExpansion {
    build_nonlinear_squeezed(re(z), re(gamma), model, levels).unwrap()
}

fn entropy(z: f64, gamma: f64, model: &SpectrumModel, levels: usize) -> f64 {
    linear_entropy(
        &squeezed(z, gamma, model, levels),
        &BeamSplitterConfig::balanced(),
    )
}

fn c1_coherent_separability() -> Outcome {
    let cfg = BeamSplitterConfig::balanced();
    let mut worst: f64 = 0.0;
    for z in [0.0, 0.5, 1.0, 2.0, 3.0] {
        let trace_path = linear_entropy(&build_coherent_canonical(re(z), 40), &cfg);
        let table = solve_recurrence(re(z), re(0.0), &SpectrumModel::harmonic(), 40);
        let series_path = linear_entropy_series_at(&table, &cfg);
        worst = worst.max(trace_path).max(series_path);
    }
    ensure(worst <= 1e-8, format!("max S = {worst:e} > 1e-8"))?;
    Ok(format!("max S = {worst:.3e}"))
}

fn random_model(rng: &mut ChaCha8Rng) -> SpectrumModel {
    match rng.gen_range(0..3) {
        0 => SpectrumModel::harmonic(),
        1 => SpectrumModel::quadratic(),
        _ => SpectrumModel::linear_quadratic(rng.gen_range(0.0..2.0), rng.gen_range(0.5..2.0))
            .unwrap(),
    }
}

fn c2_oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let model = random_model(&mut rng);
        let z = C64::from_polar(rng.gen_range(0.0..2.0), rng.gen_range(0.0..2.0 * PI));
        let gamma = C64::from_polar(rng.gen_range(0.0..0.9), rng.gen_range(0.0..2.0 * PI));
        let cfg =
            BeamSplitterConfig::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI)).unwrap();
        let table = solve_recurrence(z, gamma, &model, 25);
        let series = linear_entropy_series_at(&table, &cfg);
        let state = build_nonlinear_squeezed(z, gamma, &model, 25).unwrap();
        let trace = linear_entropy_matrix(&reduce_a(&split_state(&state, &cfg)));
        worst = worst.max((series - trace).abs());
    }
    ensure(worst <= 1e-8, format!("max |series - trace| = {worst:e}"))?;
    Ok(format!("50 instances, max |series - trace| = {worst:.3e}"))
}

fn c3_closed_form_vs_recurrence() -> Outcome {
    let levels = 40;
    let mut models = vec![SpectrumModel::quadratic()];
    for (a, b) in [(1.0, 1.0), (2.0, 1.0), (1.0, 2.0), (0.5, 0.5), (-0.5, 1.0)] {
        models.push(SpectrumModel::linear_quadratic(a, b).unwrap());
    }
    let zs = [
        re(0.5),
        C64::new(1.0, 0.3),
        re(2.0),
        re(3.0),
        C64::new(-0.4, 1.2),
    ];
    let gammas = [re(0.1), re(0.5), re(0.9), C64::new(0.3, 0.4)];
    let mut worst: (f64, String) = (0.0, String::new());
    for model in &models {
        let lef = model.log_e_factorials(levels);
        for &z in &zs {
            for &gamma in &gammas {
                let table = solve_recurrence(z, gamma, model, levels);
                let closed = closed_form_table(z, gamma, model, levels).unwrap();
                for n in 0..=levels {
                    let a = table.log_amplitude(n).scaled(0.5 * lef[n]);
                    let b = closed[n].scaled(0.5 * lef[n]);
                    let floor = (table.ln_term_scale(n) - 0.5 * lef[n]).exp();
                    let rel = (a - b).norm() / a.norm().max(b.norm()).max(floor);
                    if rel > worst.0 {
                        worst = (rel, format!("{} z={z} gamma={gamma} n={n}", model.label()));
                    }
                }
            }
        }
    }
    ensure(
        worst.0 <= 1e-9,
        format!("relative error {:e} at {}", worst.0, worst.1),
    )?;
    Ok(format!(
        "{} grid points, max relative error {:.3e}",
        models.len() * zs.len() * gammas.len(),
        worst.0
    ))
}

fn c4_canonical_squeezed_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for z in [0.5, 1.0, 2.0] {
        for gamma in [0.1, 0.5, 0.9] {
            let hermite = build_squeezed_canonical(re(z), re(gamma), 40).unwrap();
            let recurrence = squeezed(z, gamma, &SpectrumModel::harmonic(), 40);
            for (a, b) in hermite.coeffs().iter().zip(recurrence.coeffs()) {
                worst = worst.max((a - b).norm());
            }
        }
    }
    ensure(
        worst <= 1e-9,
        format!("max coefficient difference {worst:e}"),
    )?;
    Ok(format!("max coefficient difference {worst:.3e}"))
}

fn c5_dispersion_shape() -> Outcome {
    let conv = QuadratureConvention::Sqrt2;
    let zs: Vec<f64> = (0..20).map(|k| 3.0 * k as f64 / 19.0).collect();
    let mut worst_h: f64 = 0.0;
    for &z in &zs {
        let r = quadrature_report(&build_coherent_canonical(re(z), 40), conv);
        worst_h = worst_h
            .max((r.var_x - 0.5).abs())
            .max((r.var_p - 0.5).abs());
    }
    ensure(
        worst_h <= 1e-8,
        format!("harmonic variance off by {worst_h:e}"),
    )?;
    let q = SpectrumModel::quadratic();
    let reports: Vec<QuadratureReport> = zs
        .iter()
        .map(|&z| quadrature_report(&build_nonlinear_coherent(re(z), &q, 40), conv))
        .collect();
    for (k, w) in reports.windows(2).enumerate() {
        ensure(
            w[1].var_x < w[0].var_x,
            format!("var_x not decreasing at z = {}", zs[k + 1]),
        )?;
        ensure(
            w[1].var_p > w[0].var_p,
            format!("var_p not increasing at z = {}", zs[k + 1]),
        )?;
    }
    let min_product = reports
        .iter()
        .map(|r| r.product)
        .fold(f64::INFINITY, f64::min);
    ensure(
        min_product >= 0.25 - 1e-9,
        format!("product {min_product} below 1/4"),
    )?;
    let last = reports.last().unwrap();
    Ok(format!(
        "harmonic |var - 0.5| <= {worst_h:.1e}; quadratic var_x 0.5 -> {:.4}, var_p 0.5 -> {:.4}",
        last.var_x, last.var_p
    ))
}

fn c6_density_shape() -> Outcome {
    let fwhm = |s: &FockExpansion| density_fwhm(s, -8.0, 8.0, 1601).expect("peak inside window");
    let zs = [0.5, 1.0, 1.5, 2.0];
    let q = SpectrumModel::quadratic();
    let quad: Vec<f64> = zs
        .iter()
        .map(|&z| fwhm(&build_nonlinear_coherent(re(z), &q, 40)))
        .collect();
    for (k, w) in quad.windows(2).enumerate() {
        ensure(
            w[1] < w[0],
            format!("quadratic FWHM not decreasing at z = {}", zs[k + 1]),
        )?;
    }
    let harm: Vec<f64> = zs
        .iter()
        .map(|&z| fwhm(&build_coherent_canonical(re(z), 40)))
        .collect();
    let spread = harm.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b))
        - harm.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    ensure(spread <= 1e-6, format!("harmonic FWHM spread {spread:e}"))?;
    Ok(format!(
        "quadratic FWHM {:.4?}; harmonic spread {spread:.1e}",
        quad
    ))
}

fn c7_entropy_ordering() -> Outcome {
    let h = SpectrumModel::harmonic();
    let q = SpectrumModel::quadratic();
    let zs: Vec<f64> = (0..=30).map(|k| 0.1 * k as f64).collect();
    let rows = entropy_sweep(&[h, q], &zs, re(0.5), &BeamSplitterConfig::balanced(), 40)
        .map_err(|e| e.to_string())?;
    let (sh, sq) = rows.split_at(zs.len());
    // largest sampled z at which the quadratic curve is not above the harmonic one
    let z_star = zs
        .iter()
        .enumerate()
        .filter(|&(k, _)| sq[k].entropy <= sh[k].entropy)
        .map(|(_, &z)| z)
        .fold(0.0, f64::max);
    ensure(z_star <= 1.0, format!("S_Q <= S_H still at z = {z_star}"))?;
    ensure(
        sq[1].entropy < sh[1].entropy,
        format!(
            "no small-z crossover: S_Q({}) = {} >= S_H = {}",
            zs[1], sq[1].entropy, sh[1].entropy
        ),
    )?;
    let s_quad = entropy(2.0, 0.0, &q, 30);
    let mut lq_values = Vec::new();
    for (a, b) in [(1.0, 1.0), (2.0, 1.0), (1.0, 2.0)] {
        let s = entropy(
            2.0,
            0.0,
            &SpectrumModel::linear_quadratic(a, b).unwrap(),
            30,
        );
        ensure(s_quad > s, format!("S_Q = {s_quad} <= S_LQ({a},{b}) = {s}"))?;
        lq_values.push(s);
    }
    Ok(format!(
        "z* = {z_star:.1}; S_Q(0.1) = {:.4} < S_H = {:.4}; at z=2, gamma=0: S_Q = {s_quad:.4} > LQ {:.4?}",
        sq[1].entropy, sh[1].entropy, lq_values
    ))
}

fn c8_truncation_convergence() -> Outcome {
    let mut worst: f64 = 0.0;
    for model in [SpectrumModel::harmonic(), SpectrumModel::quadratic()] {
        worst = worst.max((entropy(2.0, 0.5, &model, 40) - entropy(2.0, 0.5, &model, 60)).abs());
    }
    ensure(worst <= 1e-6, format!("|S(40) - S(60)| = {worst:e}"))?;
    Ok(format!("max |S(40) - S(60)| = {worst:.3e}"))
}

/// `‖(A + γA†)c − z c‖` over levels `0..=N−2`, from the matrix elements
/// `⟨n−1|A|n⟩ = √n f(n)` and `⟨n+1|A†|n⟩ = √(n+1) f(n+1)`.
fn eigen_residual(state: &FockExpansion, model: &SpectrumModel, z: C64, gamma: C64) -> f64 {
    let c = state.coeffs();
    let top = c.len() - 1;
    let lower = |k: usize| (k as f64).sqrt() * model.f(k);
    (0..=top - 2)
        .map(|n| {
            let a_c = lower(n + 1) * c[n + 1];
            let adag_c = if n == 0 { re(0.0) } else { lower(n) * c[n - 1] };
            (a_c + gamma * adag_c - z * c[n]).norm_sqr()
        })
        .sum::<f64>()
        .sqrt()
}

fn c9_eigenvalue_residuals() -> Outcome {
    let models = [
        SpectrumModel::harmonic(),
        SpectrumModel::quadratic(),
        SpectrumModel::linear_quadratic(1.0, 1.0).unwrap(),
    ];
    let (z, gamma) = (re(1.0), re(0.5));
    let (mut worst_coh, mut worst_sq): (f64, f64) = (0.0, 0.0);
    for m in &models {
        worst_coh = worst_coh.max(eigen_residual(
            &build_nonlinear_coherent(z, m, 40),
            m,
            z,
            re(0.0),
        ));
        worst_sq = worst_sq.max(eigen_residual(&squeezed(1.0, 0.5, m, 40), m, z, gamma));
    }
    ensure(
        worst_coh <= 1e-6,
        format!("coherent residual {worst_coh:e}"),
    )?;
    ensure(worst_sq <= 1e-5, format!("squeezed residual {worst_sq:e}"))?;
    Ok(format!("coherent {worst_coh:.2e}, squeezed {worst_sq:.2e}"))
}

fn c10_phase_and_symmetry() -> Outcome {
    let q = SpectrumModel::quadratic();
    let table = solve_recurrence(re(1.0), re(0.0), &q, 30);
    let reference = linear_entropy_series_at(&table, &BeamSplitterConfig::new(1.0, 0.0).unwrap());
    for phi in [0.3, 1.0, PI, 4.4, -2.0] {
        let s = linear_entropy_series_at(&table, &BeamSplitterConfig::new(1.0, phi).unwrap());
        ensure(
            s == reference,
            format!("series entropy changed with phi = {phi}: {s} vs {reference}"),
        )?;
    }
    let state = build_nonlinear_coherent(re(1.0), &q, 40);
    let thetas: Vec<f64> = (0..=20).map(|k| PI * k as f64 / 20.0).collect();
    let values: Vec<f64> = thetas
        .iter()
        .map(|&t| linear_entropy(&state, &BeamSplitterConfig::new(t, 0.0).unwrap()))
        .collect();
    let s_half = linear_entropy(&state, &BeamSplitterConfig::new(FRAC_PI_2, 0.0).unwrap());
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    ensure(
        s_half >= max,
        format!("S(pi/2) = {s_half} < max over grid {max}"),
    )?;
    Ok(format!(
        "phi-invariant exactly; S(pi/2) = {s_half:.6} is the grid maximum"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 coherent separability", c1_coherent_separability),
        ("2 series vs partial-trace oracle", c2_oracle_equivalence),
        ("3 closed form vs recurrence", c3_closed_form_vs_recurrence),
        (
            "4 canonical squeezed identity",
            c4_canonical_squeezed_identity,
        ),
        ("5 dispersion shape", c5_dispersion_shape),
        ("6 position density shape", c6_density_shape),
        ("7 entropy ordering", c7_entropy_ordering),
        ("8 truncation convergence", c8_truncation_convergence),
        ("9 eigenvalue residuals", c9_eigenvalue_residuals),
        ("10 phase and symmetry", c10_phase_and_symmetry),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
