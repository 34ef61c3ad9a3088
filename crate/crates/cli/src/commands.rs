use hadamard_core::fock::{verify_oracle, VerificationTable, VerifySettings};
use hadamard_core::noise::{lx_grid, monte_carlo_fidelity, order_scan, revival_length, scan_lx, OrderFit, ScanRow};
use hadamard_core::{compose, hadamard_loops, hadamard_minus_i, holonomy, surface_sigma, QubitGate};
use serde::Serialize;

use crate::config::{ExperimentConfig, Format};
use crate::output::{num, Artifact, Table};

pub struct Outcome {
    pub artifact: Artifact,
    pub default_format: Format,
    /// `None` when the command makes no pass/fail claim.
    pub verdict: Option<Verdict>,
}

pub struct Verdict {
    pub passed: bool,
    pub summary: String,
}

type CoreResult<T> = hadamard_core::Result<T>;

/// Row-major entries as `[re, im]` pairs.
fn entries(g: &QubitGate) -> [[[f64; 2]; 2]; 2] {
    g.entries().map(|row| row.map(|z| [z.re, z.im]))
}

#[derive(Serialize)]
struct GateReport {
    d_x: f64,
    d_y: f64,
    sigma_i: f64,
    sigma_ii: f64,
    gamma_i: [[[f64; 2]; 2]; 2],
    gamma_ii: [[[f64; 2]; 2]; 2],
    minus_i_h: [[[f64; 2]; 2]; 2],
    deviation: f64,
}

pub fn gate(cfg: &ExperimentConfig) -> CoreResult<Outcome> {
    let (c1, c2) = hadamard_loops(cfg.lx, cfg.ly, cfg.ax, cfg.ay)?;
    let (g1, g2) = (holonomy(&c1), holonomy(&c2));
    let h = compose(&g2, &g1);
    let report = GateReport {
        d_x: c1.d(),
        d_y: c2.d(),
        sigma_i: surface_sigma(&c1),
        sigma_ii: surface_sigma(&c2),
        gamma_i: entries(&g1),
        gamma_ii: entries(&g2),
        minus_i_h: entries(&h),
        deviation: h.max_diff(&hadamard_minus_i()),
    };

    let mut rows = vec![
        vec!["d_x".into(), num(report.d_x)],
        vec!["d_y".into(), num(report.d_y)],
        vec!["sigma_I".into(), num(report.sigma_i)],
        vec!["sigma_II".into(), num(report.sigma_ii)],
    ];
    for (name, g) in [("gamma_I", &g1), ("gamma_II", &g2), ("minus_i_H", &h)] {
        for (i, row) in g.entries().iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                rows.push(vec![format!("{name}_{i}{j}_re"), num(z.re)]);
                rows.push(vec![format!("{name}_{i}{j}_im"), num(z.im)]);
            }
        }
    }
    rows.push(vec!["deviation".into(), num(report.deviation)]);

    Ok(Outcome {
        artifact: Artifact::new("gate", report, Table { header: vec!["quantity", "value"], rows }),
        default_format: Format::Json,
        verdict: None,
    })
}

pub const FIDELITY_COLUMNS: [&str; 13] = [
    "sample_index",
    "seed",
    "l_x",
    "l_y",
    "eps",
    "msq",
    "delta_sigma_I",
    "delta_sigma_II",
    "f_exact_j0",
    "f_exact_j1",
    "f_analytic",
    "f_approx_cos",
    "f_approx_quartic",
];

pub fn fidelity(cfg: &ExperimentConfig) -> CoreResult<Outcome> {
    let run = monte_carlo_fidelity(cfg.lx, cfg.ly, &cfg.noise_spec(), cfg.samples, cfg.seed)?;
    let row = |index: String, seed: u64, fields: [f64; 8]| {
        let mut r = vec![index, seed.to_string(), num(cfg.lx), num(cfg.ly), num(cfg.eps)];
        r.extend(fields.iter().map(|v| num(*v)));
        r
    };
    let mut rows: Vec<Vec<String>> = run
        .reports
        .iter()
        .enumerate()
        .map(|(i, r)| {
            row(
                i.to_string(),
                r.metadata.seed.unwrap_or(cfg.seed),
                [
                    r.mean_square_error,
                    r.delta_sigma_i,
                    r.delta_sigma_ii,
                    r.f_exact_j0,
                    r.f_exact_j1,
                    r.f_analytic,
                    r.f_approx_cos,
                    r.f_approx_quartic,
                ],
            )
        })
        .collect();
    let n = run.reports.len() as f64;
    let mean = |f: fn(&hadamard_core::FidelityReport) -> f64| run.reports.iter().map(f).sum::<f64>() / n;
    rows.push(row(
        "mean".into(),
        cfg.seed,
        [
            mean(|r| r.mean_square_error),
            mean(|r| r.delta_sigma_i),
            mean(|r| r.delta_sigma_ii),
            mean(|r| r.f_exact_j0),
            mean(|r| r.f_exact_j1),
            mean(|r| r.f_analytic),
            mean(|r| r.f_approx_cos),
            mean(|r| r.f_approx_quartic),
        ],
    ));

    Ok(Outcome {
        artifact: Artifact::new("fidelity", &run, Table { header: FIDELITY_COLUMNS.to_vec(), rows }),
        default_format: Format::Csv,
        verdict: None,
    })
}

pub const SCAN_COLUMNS: [&str; 7] =
    ["l_x", "d_x", "msq", "mean_one_minus_f_exact", "f_approx_cos", "f_approx_quartic", "is_local_max"];

#[derive(Serialize)]
struct ScanReport {
    rows: Vec<ScanRow>,
    /// `l_x^(n)` for n = 1, 2, 3 at the scan's mean-square error.
    revival_lengths: Vec<f64>,
}

pub fn scan(cfg: &ExperimentConfig) -> CoreResult<Outcome> {
    let widths = lx_grid(cfg.lx_min, cfg.lx_max, cfg.points, cfg.spacing)?;
    let rows = scan_lx(&widths, cfg.ly, &cfg.noise_spec(), cfg.samples, cfg.seed)?;
    let msq = rows[0].msq;
    let revival_lengths =
        if msq > 0.0 { (1..=3).map(|n| revival_length(n, msq)).collect::<CoreResult<_>>()? } else { Vec::new() };
    let table_rows = rows
        .iter()
        .map(|r| {
            vec![
                num(r.l_x),
                num(r.d_x),
                num(r.msq),
                num(r.mean_one_minus_f_exact),
                num(r.f_approx_cos),
                num(r.f_approx_quartic),
                r.is_local_max.to_string(),
            ]
        })
        .collect();
    Ok(Outcome {
        artifact: Artifact::new(
            "scan-lx",
            ScanReport { rows, revival_lengths },
            Table { header: SCAN_COLUMNS.to_vec(), rows: table_rows },
        ),
        default_format: Format::Csv,
        verdict: None,
    })
}

#[derive(Serialize)]
struct OrderReport {
    #[serde(flatten)]
    fit: OrderFit,
    expect_slope: Option<f64>,
    tol: f64,
    passed: Option<bool>,
}

pub fn order_fit(cfg: &ExperimentConfig) -> CoreResult<Outcome> {
    let fit = order_scan(cfg.lx, cfg.ly, &cfg.noise_spec(), &cfg.eps_list, cfg.samples, cfg.seed)?;
    let verdict = cfg.expect_slope.map(|s| Verdict {
        passed: (fit.slope - s).abs() <= cfg.tol,
        summary: format!("slope {} vs expected {s} ± {}", fit.slope, cfg.tol),
    });
    let mut rows: Vec<Vec<String>> =
        fit.points.iter().map(|p| vec![num(p.eps), num(p.mean_deficit), num(p.mean_msq), p.used.to_string()]).collect();
    rows.push(vec!["slope".into(), num(fit.slope), String::new(), String::new()]);
    rows.push(vec!["intercept".into(), num(fit.intercept), String::new(), String::new()]);
    let report =
        OrderReport { fit, expect_slope: cfg.expect_slope, tol: cfg.tol, passed: verdict.as_ref().map(|v| v.passed) };
    Ok(Outcome {
        artifact: Artifact::new(
            "order-fit",
            report,
            Table { header: vec!["eps", "mean_one_minus_f", "mean_msq", "used"], rows },
        ),
        default_format: Format::Json,
        verdict,
    })
}

pub fn verify(cfg: &ExperimentConfig) -> CoreResult<Outcome> {
    let settings = VerifySettings {
        dim: cfg.nf,
        steps_per_edge: cfg.steps,
        fd_step: cfg.fd_step,
        ladder: cfg.ladder.clone(),
        points: cfg.oracle_points,
        seed: cfg.seed,
        l_x: cfg.lx,
        l_y: cfg.ly,
        eps: cfg.oracle_eps,
    };
    let table: VerificationTable = verify_oracle(&settings)?;
    let mut rows: Vec<Vec<String>> = table
        .checks
        .iter()
        .map(|c| vec![c.name.clone(), num(c.error), num(c.tolerance), c.passed.to_string()])
        .collect();
    for r in &table.ladder.rows {
        rows.push(vec![format!("ladder N_F={}", r.rung.dim), num(r.error), String::new(), String::new()]);
    }
    rows.push(vec![
        "ladder non-increasing".into(),
        String::new(),
        String::new(),
        table.ladder.non_increasing.to_string(),
    ]);
    let failed: Vec<&str> = table.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    let verdict = Verdict {
        passed: table.passed,
        summary: if table.passed {
            "all oracle checks passed".into()
        } else {
            let ladder = if table.ladder.non_increasing { "" } else { "; ladder errors grow" };
            format!("{} of {} oracle checks failed: {}{ladder}", failed.len(), table.checks.len(), failed.join(", "))
        },
    };
    Ok(Outcome {
        artifact: Artifact::new(
            "verify-oracle",
            &table,
            Table { header: vec!["check", "error", "tolerance", "passed"], rows },
        ),
        default_format: Format::Json,
        verdict: Some(verdict),
    })
}
