//! Library entry points behind the `discspace` subcommands. Each command
//! consumes an [`ExperimentConfig`] and produces [`ResultRow`]s; the binary
//! only parses arguments, dispatches, and writes the rows out.

use crate::checks::{run_all, CheckSettings};
use crate::config::ExperimentConfig;
use crate::corpus::{polynomial_corpus, unit_dirichlet};
use crate::error::{DiscError, Result};
use crate::func::{build_function, Func, PrimitivePair};
use crate::geometry::DiscPoint;
use crate::operators::{
    default_witness_points, dirichlet_deficiency, extremal_bloch, extremal_bmoa,
    extremal_witness_check, opnorm_exact_sg, sg_opnorm_estimate, tg_opnorm_estimate,
    ExtremalConfig, ExtremalRecord, SupSearchConfig, WitnessParam,
};
use crate::quad::{disc_rule, log_disc_rule, QuadratureRule};
use crate::report::ResultRow;
use crate::spaces::{
    bergman_norm, bloch_norm, bmoa_norm, dirichlet_norm, h2_norm, NormReport,
};

fn compact(doc: &serde_json::Value) -> String {
    serde_json::to_string(doc).unwrap_or_else(|_| "<unprintable>".into())
}

fn witness_str(report: &NormReport) -> Option<String> {
    report.witness.map(|w| format!("[{},{}]", w.re(), w.im()))
}

fn plain_rule(cfg: &ExperimentConfig) -> Result<QuadratureRule> {
    disc_rule(cfg.quadrature.n_r, cfg.quadrature.n_t)
}

fn log_rule(cfg: &ExperimentConfig) -> Result<QuadratureRule> {
    log_disc_rule(cfg.quadrature.n_r, cfg.quadrature.n_t)
}

fn require_g(cfg: &ExperimentConfig) -> Result<Func> {
    let doc = cfg
        .g
        .as_ref()
        .ok_or_else(|| DiscError::Config("missing \"g\" function document".into()))?;
    build_function(doc)
}

/// `discspace norm`: one row per input function with the NormReport fields.
pub fn cmd_norm(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    let space = cfg
        .space
        .as_deref()
        .ok_or_else(|| DiscError::Config("missing \"space\" selector".into()))?;
    if cfg.functions.is_empty() {
        return Err(DiscError::Config("no input functions given".into()));
    }
    let search = cfg.search_config();
    let bmoa_cfg = cfg.bmoa_config();
    let mut rows = Vec::new();
    for doc in &cfg.functions {
        let f = build_function(doc)?;
        let fp = PrimitivePair::of_func(&f);
        let report = match space {
            "bloch" => bloch_norm(&fp, &search),
            "dirichlet" => dirichlet_norm(&fp, &plain_rule(cfg)?)?,
            "bergman" => bergman_norm(&f, &plain_rule(cfg)?)?,
            "h2" => h2_norm(&fp, &log_rule(cfg)?)?,
            "bmoa" => bmoa_norm(&fp, &bmoa_cfg.default_a_grid(), &log_rule(cfg)?, &bmoa_cfg)?,
            other => {
                return Err(DiscError::Config(format!(
                    "unknown space {other:?}; expected bloch|dirichlet|bergman|h2|bmoa"
                )))
            }
        };
        let mut row = ResultRow::new(
            "norm",
            &compact(doc),
            &format!("{space}_norm"),
            report.value,
            &report.method.to_string(),
        )
        .with_est_error(report.est_error);
        if let Some(w) = witness_str(&report) {
            row = row.with_witness(w);
        }
        rows.push(row);
        rows.push(ResultRow::new(
            "norm",
            &compact(doc),
            &format!("{space}_seminorm"),
            report.seminorm,
            &report.method.to_string(),
        ));
    }
    Ok(rows)
}

fn witness_param_str(p: &WitnessParam) -> String {
    match p {
        WitnessParam::Point(a) => format!("f_a at a=[{},{}]", a.re(), a.im()),
        WitnessParam::Zeros(zs) => format!("blaschke with {} zeros", zs.len()),
        WitnessParam::Function(id) => id.clone(),
    }
}

/// `discspace opnorm`: exact norm, best witnessed lower bound, gap.
pub fn cmd_opnorm(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    let op = cfg
        .op
        .as_deref()
        .ok_or_else(|| DiscError::Config("missing \"op\" selector (Sg | Tg)".into()))?;
    let g = require_g(cfg)?;
    let g_doc = compact(cfg.g.as_ref().unwrap());
    let rule = plain_rule(cfg)?;
    let sup_cfg = SupSearchConfig::default();

    let angle = opnorm_exact_sg(&g, &sup_cfg).angle;
    let witnesses: Vec<DiscPoint> = match &cfg.witness_radii {
        Some(radii) => radii
            .iter()
            .map(|&r| {
                DiscPoint::new(r * angle.cos(), r * angle.sin()).map_err(|e| {
                    DiscError::Config(format!("witness radius {r} out of range: {e}"))
                })
            })
            .collect::<Result<_>>()?,
        None => default_witness_points(angle),
    };

    let est = match op {
        "Sg" | "sg" => sg_opnorm_estimate(&g, &witnesses, &rule, &sup_cfg)?,
        "Tg" | "tg" => tg_opnorm_estimate(&g, &witnesses, &rule, &sup_cfg)?,
        other => {
            return Err(DiscError::Config(format!(
                "unknown operator {other:?}; expected Sg | Tg"
            )))
        }
    };
    let mut rows = vec![
        ResultRow::new("opnorm", &g_doc, "exact", est.exact, "closed-form"),
        ResultRow::new("opnorm", &g_doc, "lower", est.lower, "quadrature")
            .with_witness(witness_param_str(&est.witness_param)),
        ResultRow::new("opnorm", &g_doc, "gap", est.gap, "quadrature"),
    ];
    if let Some(note) = est.note {
        rows[0].witness = Some(note);
    }
    Ok(rows)
}

fn extremal_rows(experiment: &str, g_doc: &str, n: usize, rec: &ExtremalRecord) -> Vec<ResultRow> {
    let zeros_desc = format!(
        "{} zeros, outermost |z|={}",
        rec.zeros.len(),
        rec.zeros.points().last().map(|p| p.abs()).unwrap_or(0.0)
    );
    vec![
        ResultRow::new(experiment, g_doc, &format!("L({n})"), rec.lower_bound, "grid-search")
            .with_witness(zeros_desc)
            .with_verdict(0.0, !rec.lower_bound.is_nan()),
        ResultRow::new(
            experiment,
            g_doc,
            &format!("norm_of_h({n})"),
            rec.norm_of_h,
            "grid-search",
        ),
        ResultRow::new(
            experiment,
            g_doc,
            &format!("raw_bound({n})"),
            rec.raw_bound,
            "grid-search",
        ),
    ]
}

/// `discspace extremal`: the L(N) convergence table (bloch, bmoa) or the
/// deficiency scan (dirichlet).
pub fn cmd_extremal(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    let space = cfg
        .space
        .as_deref()
        .ok_or_else(|| DiscError::Config("missing \"space\" selector".into()))?;
    let g = require_g(cfg)?;
    let g_doc = compact(cfg.g.as_ref().unwrap());
    let ext = ExtremalConfig {
        thin: (&cfg.thin).into(),
        search: cfg.search_config(),
        sup: SupSearchConfig::default(),
    };

    match space {
        "bloch" => {
            let schedule = cfg.schedule.clone().unwrap_or(vec![1, 2, 4, 8, 16, 20]);
            let mut rows = Vec::new();
            let mut last: Option<ExtremalRecord> = None;
            for &n in &schedule {
                let rec = extremal_bloch(&g, n, &ext)?;
                rows.extend(extremal_rows("extremal-bloch", &g_doc, n, &rec));
                last = Some(rec);
            }
            if let Some(rec) = last {
                let tol = cfg.witness_tol.unwrap_or(0.05);
                let b = crate::func::blaschke_from_zeros(&rec.zeros);
                let h = Func::shift(b.clone(), -b.eval(num_complex::Complex64::new(0.0, 0.0)));
                let hp = PrimitivePair::of_func(&h);
                let v = extremal_witness_check(&g, &hp, &rec.zeros, tol, &ext);
                rows.push(
                    ResultRow::new(
                        "extremal-bloch",
                        &g_doc,
                        "witness_check",
                        if v.accepted { 1.0 } else { 0.0 },
                        "grid-search",
                    )
                    .with_verdict(tol, v.accepted),
                );
            }
            Ok(rows)
        }
        "bmoa" => {
            let schedule = cfg.schedule.clone().unwrap_or(vec![1, 2, 4, 8, 15]);
            let bmoa_cfg = cfg.bmoa_config();
            let rule = log_rule(cfg)?;
            let mut rows = Vec::new();
            for &n in &schedule {
                let rec = extremal_bmoa(&g, n, &ext, &bmoa_cfg, &rule)?;
                rows.extend(extremal_rows("extremal-bmoa", &g_doc, n, &rec));
            }
            Ok(rows)
        }
        "dirichlet" => {
            let size = cfg.corpus_size.unwrap_or(200);
            let max_degree = cfg.max_degree.unwrap_or(10);
            let rule = plain_rule(cfg)?;
            let corpus = polynomial_corpus(cfg.seed(), size, max_degree);
            let mut rows = Vec::new();
            let mut min = f64::INFINITY;
            for (i, f) in corpus.iter().enumerate() {
                let unit = unit_dirichlet(f, &rule)?;
                let fp = PrimitivePair::of_func(&unit);
                let d = dirichlet_deficiency(&g, &fp, &rule, &ext.sup)?;
                min = min.min(d);
                rows.push(ResultRow::new(
                    "extremal-dirichlet",
                    &format!("corpus[{i}] deg {}", f.poly_coeffs().map(|c| c.len() - 1).unwrap_or(0)),
                    "deficiency",
                    d,
                    "quadrature",
                ));
            }
            rows.push(
                ResultRow::new(
                    "extremal-dirichlet",
                    &format!("seeded corpus, size {size}, seed {}", cfg.seed()),
                    "min_deficiency",
                    min,
                    "quadrature",
                )
                .with_verdict(1e-3, min > 1e-3),
            );
            Ok(rows)
        }
        other => Err(DiscError::Config(format!(
            "unknown extremal space {other:?}; expected bloch | bmoa | dirichlet"
        ))),
    }
}

/// `discspace check`: runs the identity/property suites. Returns the rows
/// and whether every suite passed.
pub fn cmd_check(cfg: &ExperimentConfig) -> Result<(Vec<ResultRow>, bool)> {
    let settings = CheckSettings {
        seed: cfg.seed(),
        n_r: cfg.quadrature.n_r,
        n_t: cfg.quadrature.n_t.min(128),
    };
    let reports = run_all(&settings)?;
    let all_passed = reports.iter().all(|r| r.passed);
    let rows = reports
        .iter()
        .map(|r| {
            ResultRow::new(
                "check",
                &format!("seed {}", settings.seed),
                &r.suite,
                r.worst_residual,
                "quadrature",
            )
            .with_verdict(r.tolerance, r.passed)
        })
        .collect();
    Ok((rows, all_passed))
}
