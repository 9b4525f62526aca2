//! Run configuration (plain-text key = value files) and check execution with
//! a JSON-serializable report.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::Domain;
use crate::posdef::{self, Verdict, Witness};
use crate::{curvature, divisibility, dsl, operator, points};

pub const MAX_ORDER: u32 = 12;
pub const DEFAULT_ORDER: u32 = 8;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Posdef,
    Curvature,
    Contraction,
    RowContraction,
    PolydiscContraction,
    Divisible,
    Reconstruct,
}

impl CheckKind {
    pub const ALL: [CheckKind; 7] = [
        CheckKind::Posdef,
        CheckKind::Curvature,
        CheckKind::Contraction,
        CheckKind::RowContraction,
        CheckKind::PolydiscContraction,
        CheckKind::Divisible,
        CheckKind::Reconstruct,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::Posdef => "posdef",
            CheckKind::Curvature => "curvature",
            CheckKind::Contraction => "contraction",
            CheckKind::RowContraction => "row_contraction",
            CheckKind::PolydiscContraction => "polydisc_contraction",
            CheckKind::Divisible => "divisible",
            CheckKind::Reconstruct => "reconstruct",
        }
    }

    fn from_name(s: &str) -> Result<CheckKind> {
        CheckKind::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown check `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub kernel: String,
    pub checks: Vec<CheckKind>,
    pub order: u32,
    pub t_grid: Vec<f64>,
    pub seed: u64,
    pub eps: f64,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            kernel: String::new(),
            checks: vec![CheckKind::Posdef],
            order: DEFAULT_ORDER,
            t_grid: divisibility::DEFAULT_T_GRID.to_vec(),
            seed: DEFAULT_SEED,
            eps: DEFAULT_EPS,
            format: OutputFormat::Text,
        }
    }
}

impl RunConfig {
    /// Parse the plain-text config format: `key = value` lines, `#` comments,
    /// the kernel DSL in (optional) double quotes.
    pub fn parse(text: &str) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!(
                    "line {}: expected `key = value`, got `{line}`",
                    lineno + 1
                )));
            };
            let key = key.trim();
            let value = value.trim();
            let bad = |what: &str| {
                Error::Config(format!("line {}: invalid {what}: `{value}`", lineno + 1))
            };
            match key {
                "kernel" => {
                    cfg.kernel = value.trim_matches('"').to_string();
                }
                "checks" => {
                    cfg.checks = value
                        .split(',')
                        .map(|s| CheckKind::from_name(s.trim()))
                        .collect::<Result<_>>()?;
                }
                "order" => cfg.order = value.parse().map_err(|_| bad("order"))?,
                "t_grid" => {
                    cfg.t_grid = value
                        .split(',')
                        .map(|s| s.trim().parse::<f64>().map_err(|_| bad("t_grid")))
                        .collect::<Result<_>>()?;
                }
                "seed" => cfg.seed = value.parse().map_err(|_| bad("seed"))?,
                "eps" | "tolerance" => cfg.eps = value.parse().map_err(|_| bad("eps"))?,
                "format" => {
                    cfg.format = match value {
                        "text" => OutputFormat::Text,
                        "json" => OutputFormat::Json,
                        _ => return Err(bad("format (text|json)")),
                    }
                }
                other => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.kernel.is_empty() {
            return Err(Error::Config("missing `kernel` entry".into()));
        }
        if self.order > MAX_ORDER {
            return Err(Error::Config(format!(
                "order {} exceeds the maximum {MAX_ORDER}",
                self.order
            )));
        }
        if self.t_grid.iter().any(|&t| t <= 0.0) {
            return Err(Error::Config("t_grid values must be > 0".into()));
        }
        if !(self.eps > 0.0) {
            return Err(Error::Config("eps must be > 0".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub verdict: String,
    pub witness: String,
    pub tolerance: f64,
    /// Whether the checked property holds (positive or degenerate verdict).
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpectedEntry {
    pub label: String,
    pub expected: f64,
    pub actual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl ExpectedEntry {
    pub fn new(label: impl Into<String>, expected: f64, actual: f64, tol: f64) -> ExpectedEntry {
        ExpectedEntry {
            label: label.into(),
            expected,
            actual,
            tol,
            pass: (expected - actual).abs() <= tol,
        }
    }

    /// Qualitative expectation: did a predicate come out as predicted?
    pub fn boolean(label: impl Into<String>, expected: bool, actual: bool) -> ExpectedEntry {
        ExpectedEntry::new(label, expected as u8 as f64, actual as u8 as f64, 0.5)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub checks: Vec<CheckEntry>,
    pub expected: Vec<ExpectedEntry>,
    pub seed: u64,
    /// Sample points used for Gram verdicts, for replayability.
    pub points: Vec<Vec<(f64, f64)>>,
    pub pass: bool,
}

impl ScenarioReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("scenario: {}\n", self.scenario));
        for c in &self.checks {
            out.push_str(&format!(
                "  check {:24} {:10} [{}]  witness: {}  (tol {:.3e})\n",
                c.name,
                c.verdict,
                if c.pass { "ok" } else { "FAIL" },
                c.witness,
                c.tolerance
            ));
        }
        for e in &self.expected {
            out.push_str(&format!(
                "  value {:32} expected {:>14.9} actual {:>14.9} [{}]\n",
                e.label,
                e.expected,
                e.actual,
                if e.pass { "ok" } else { "FAIL" }
            ));
        }
        out.push_str(&format!(
            "result: {}\n",
            if self.pass { "PASS" } else { "FAIL" }
        ));
        out
    }
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Positive => "positive",
        Verdict::Degenerate => "degenerate",
        Verdict::Indefinite => "indefinite",
    }
}

pub fn witness_str(w: &Witness) -> String {
    match w {
        Witness::Eigenvalue { value, dim } => format!("min eigenvalue {value:.6e} (dim {dim})"),
        Witness::DiagCoefficient { index, value } => {
            format!("coefficient {value:.6e} at index {index}")
        }
        Witness::SeriesCoefficient { row, col, value } => {
            format!("coefficient {value:.6e} at ({row:?},{col:?})")
        }
        Witness::None => "none".into(),
    }
}

fn entry_from(name: &str, v: &posdef::PosDefVerdict) -> CheckEntry {
    CheckEntry {
        name: name.to_string(),
        verdict: verdict_name(v.verdict).to_string(),
        witness: witness_str(&v.witness),
        tolerance: v.tolerance,
        pass: v.passes(),
    }
}

/// Execute the configured checks against the configured kernel.
pub fn run_checks(cfg: &RunConfig) -> Result<ScenarioReport> {
    cfg.validate()?;
    let kernel = dsl::parse_kernel_dsl(&cfg.kernel)?;
    let domain = kernel.domain()?;
    let m = domain.dim();
    let w0 = vec![C64::new(0.0, 0.0); m];
    let gram_pts = points::sample(&domain, cfg.seed, 8, 0.3);
    let curv_pts = points::sample(&domain, cfg.seed.wrapping_add(1), 8, 0.7);

    let mut checks = Vec::new();
    for &kind in &cfg.checks {
        match kind {
            CheckKind::Posdef => {
                let s = kernel.taylor_expand(&w0, cfg.order)?;
                let deltas = posdef::default_deltas(m, cfg.order);
                let v = posdef::posdef_function_check(&s, &deltas, &gram_pts, cfg.eps)?;
                checks.push(entry_from("posdef", &v));
            }
            CheckKind::Curvature => {
                let (v, _) = curvature::curvature_negativity(&kernel, &curv_pts, cfg.eps)?;
                checks.push(entry_from("curvature", &v));
                if domain == Domain::Disc {
                    // Pointwise comparison against the backward-shift bound.
                    let cmp = curvature::curvature_compare(
                        &kernel,
                        &crate::kernel::KernelSpec::SzegoDisc,
                        &curvature::CompareMode::Pointwise(curv_pts.clone()),
                        cfg.eps,
                    )?;
                    checks.push(entry_from("curvature_vs_szego", &cmp.verdict));
                }
            }
            CheckKind::Contraction => {
                let r = operator::contraction_test(&kernel, cfg.order, cfg.seed)?;
                checks.push(entry_from("contraction", &r.verdict));
            }
            CheckKind::RowContraction => {
                let r = operator::row_contraction_test(&kernel, cfg.order, cfg.seed)?;
                checks.push(entry_from("row_contraction", &r.verdict));
            }
            CheckKind::PolydiscContraction => {
                let r = operator::polydisc_contraction_test(&kernel, cfg.order, cfg.seed)?;
                checks.push(entry_from("polydisc_contraction", &r.verdict));
            }
            CheckKind::Divisible => {
                let r = divisibility::divisibility_check(
                    &kernel,
                    &cfg.t_grid,
                    &w0,
                    cfg.order,
                    cfg.eps,
                    cfg.seed,
                )?;
                let witness = match r.witness_t() {
                    Some(t) => format!("t = {t}"),
                    None => format!("divisible {}", r.certified),
                };
                let worst = r
                    .per_t
                    .iter()
                    .cloned()
                    .reduce(|a, b| a.combine(b))
                    .expect("nonempty grid");
                checks.push(CheckEntry {
                    name: "divisible".into(),
                    verdict: verdict_name(worst.verdict).to_string(),
                    witness,
                    tolerance: worst.tolerance,
                    pass: r.is_divisible(),
                });
            }
            CheckKind::Reconstruct => {
                let s = kernel.normalize_at(&w0, cfg.order)?;
                let l = s.log()?;
                let r = divisibility::reconstruct(&l, &cfg.t_grid, cfg.eps)?;
                let ok = r.diag_error <= 1e-9;
                checks.push(CheckEntry {
                    name: "reconstruct".into(),
                    verdict: if ok { "positive" } else { "indefinite" }.into(),
                    witness: format!("diagonal error {:.3e}", r.diag_error),
                    tolerance: 1e-9,
                    pass: ok,
                });
            }
        }
    }

    let pass = checks.iter().all(|c| c.pass);
    Ok(ScenarioReport {
        scenario: format!("check:{}", cfg.kernel),
        checks,
        expected: Vec::new(),
        seed: cfg.seed,
        points: gram_pts
            .iter()
            .map(|p| p.iter().map(|z| (z.re, z.im)).collect())
            .collect(),
        pass,
    })
}
