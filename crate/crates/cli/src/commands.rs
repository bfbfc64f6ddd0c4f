use nlcs_core::verify::{self, VerifyOptions};
use nlcs_core::{
    build_nonlinear_squeezed, entropy_sweep, linear_entropy_series_at, position_density,
    quadrature_report, solve_recurrence, FockExpansion, SpectrumModel, C64, DEFAULT_TAIL_TOLERANCE,
};

use crate::config::{model_name, model_spec, RunConfig};
use crate::output::{Cell, Table};
use crate::CliError;

/// Sweep points whose series-path entropy is recomputed as a spot check.
pub const SPOT_CHECK_EVERY: usize = 10;

/// Largest accepted gap between the series and partial-trace entropies.
pub const SPOT_CHECK_TOLERANCE: f64 = 1e-8;

fn model_cells(m: &SpectrumModel) -> [Cell; 3] {
    [
        Cell::Text(model_name(m).into()),
        Cell::Float(m.a()),
        Cell::Float(m.b()),
    ]
}

fn build(cfg: &RunConfig, model: &SpectrumModel, z: C64) -> Result<FockExpansion, CliError> {
    let state = build_nonlinear_squeezed(z, cfg.gamma, model, cfg.levels)?;
    if !state.is_converged() {
        log::warn!(
            "{} at z = {z}: tail weight {:e} exceeds {:e} at N = {}",
            model.label(),
            state.tail_weight(),
            DEFAULT_TAIL_TOLERANCE,
            cfg.levels
        );
    }
    Ok(state)
}

pub fn dispersion(cfg: &RunConfig) -> Result<Table, CliError> {
    let conv = cfg.convention.name();
    let columns = [
        "model".to_string(),
        "A".into(),
        "B".into(),
        "z".into(),
        format!("var_x_{conv}"),
        format!("var_p_{conv}"),
        format!("product_{conv}"),
        "converged".into(),
    ];
    let columns: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut table = Table::new(cfg.record(), &columns);
    for model in &cfg.models {
        for z in cfg.z_grid() {
            let state = build(cfg, model, C64::new(z, 0.0))?;
            let r = quadrature_report(&state, cfg.convention);
            let mut row = model_cells(model).to_vec();
            row.extend([
                Cell::Float(z),
                Cell::Float(r.var_x),
                Cell::Float(r.var_p),
                Cell::Float(r.product),
                Cell::Bool(state.is_converged()),
            ]);
            table.push(row);
        }
    }
    Ok(table)
}

pub fn density(cfg: &RunConfig) -> Result<Table, CliError> {
    let mut table = Table::new(cfg.record(), &["model", "A", "B", "z", "x", "density"]);
    let xs = cfg.x_grid();
    for model in &cfg.models {
        for z in cfg.z_grid() {
            let state = build(cfg, model, C64::new(z, 0.0))?;
            for (x, d) in xs.iter().zip(position_density(&state, &xs)) {
                let mut row = model_cells(model).to_vec();
                row.extend([Cell::Float(z), Cell::Float(*x), Cell::Float(d)]);
                table.push(row);
            }
        }
    }
    Ok(table)
}

pub fn entropy_sweep_table(cfg: &RunConfig) -> Result<Table, CliError> {
    let z_grid = cfg.z_grid();
    let rows = entropy_sweep(&cfg.models, &z_grid, cfg.gamma, &cfg.splitter, cfg.levels)?;
    let mut table = Table::new(
        cfg.record(),
        &[
            "model",
            "A",
            "B",
            "z",
            "gamma_re",
            "gamma_im",
            "entropy",
            "drift",
            "converged",
            "series_check",
        ],
    );
    for (i, row) in rows.iter().enumerate() {
        let point = i % z_grid.len();
        let check = if point.is_multiple_of(SPOT_CHECK_EVERY) {
            let t = solve_recurrence(C64::new(row.z, 0.0), row.gamma, &row.model, cfg.levels);
            let gap = (linear_entropy_series_at(&t, &cfg.splitter) - row.entropy).abs();
            log::info!(
                "series spot check {} z = {}: |dS| = {gap:e}",
                row.model.label(),
                row.z
            );
            if gap > SPOT_CHECK_TOLERANCE {
                log::warn!(
                    "series and partial-trace entropies differ by {gap:e} at {} z = {}",
                    row.model.label(),
                    row.z
                );
            }
            Cell::Float(gap)
        } else {
            Cell::Missing
        };
        if !row.converged {
            log::warn!(
                "{} z = {}: entropy drift {:e} at N + 10",
                row.model.label(),
                row.z,
                row.drift
            );
        }
        let mut cells = model_cells(&row.model).to_vec();
        cells.extend([
            Cell::Float(row.z),
            Cell::Float(row.gamma.re),
            Cell::Float(row.gamma.im),
            Cell::Float(row.entropy),
            Cell::Float(row.drift),
            Cell::Bool(row.converged),
            check,
        ]);
        table.push(cells);
    }
    Ok(table)
}

pub fn state_dump(cfg: &RunConfig, z: C64) -> Result<Table, CliError> {
    let model = &cfg.models[0];
    let state = build(cfg, model, z)?;
    let mut record = cfg.record();
    record.retain(|(k, _)| !k.starts_with("z_"));
    record.extend([
        ("z_re".to_string(), Cell::Float(z.re)),
        ("z_im".to_string(), Cell::Float(z.im)),
        ("model".to_string(), Cell::Text(model_spec(model))),
        ("tail_weight".to_string(), Cell::Float(state.tail_weight())),
        ("converged".to_string(), Cell::Bool(state.is_converged())),
    ]);
    let mut table = Table::new(record, &["n", "re", "im", "prob"]);
    for (n, c) in state.coeffs().iter().enumerate() {
        table.push(vec![
            Cell::Int(n as u64),
            Cell::Float(c.re),
            Cell::Float(c.im),
            Cell::Float(c.norm_sqr()),
        ]);
    }
    Ok(table)
}

pub fn verify_table(opts: &VerifyOptions) -> (Table, bool) {
    let report = verify::run(opts);
    let record = vec![
        ("command".to_string(), Cell::Text("verify".into())),
        ("levels".to_string(), Cell::Int(opts.levels as u64)),
        (
            "reference_levels".to_string(),
            Cell::Int(verify::REFERENCE_LEVELS as u64),
        ),
        ("inject_fault".to_string(), Cell::Bool(opts.inject_fault)),
    ];
    let mut table = Table::new(record, &["check", "metric", "threshold", "status"]);
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        table.push(vec![
            Cell::Text(c.name.into()),
            Cell::Float(c.metric),
            Cell::Float(c.threshold),
            Cell::Text(status.into()),
        ]);
    }
    (table, report.all_passed())
}
