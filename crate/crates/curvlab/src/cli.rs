//! Command-line front end.
//!
//! Exit codes: 0 all checks pass, 1 a check fails, 2 invalid input.
//! `CURVLAB_SEED` overrides the default seed (a `seed =` line in a config
//! file still wins).

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::report::{OutputFormat, RunConfig, DEFAULT_SEED};
use crate::{curvature, dsl, report, scenario};

pub const SEED_ENV: &str = "CURVLAB_SEED";

#[derive(Parser)]
#[command(name = "curvlab", version, about = "Kernel positivity and curvature checks")]
pub struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks listed in a config file.
    Check {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run a named scenario with its fixed expected-value table.
    Scenario {
        /// One of: agler_counterexample, nondivisible_contraction,
        /// detball_logk, szego_baseline
        id: String,
        #[arg(long)]
        json: bool,
    },
    /// Expand a kernel into its Taylor series and dump the coefficients.
    Expand {
        #[arg(long)]
        kernel: String,
        #[arg(long, default_value_t = report::DEFAULT_ORDER)]
        order: u32,
        /// Expansion center, e.g. "0.1+0.2i" or "0.1,0.2i" for several
        /// variables.
        #[arg(long, default_value = "0")]
        center: String,
    },
    /// Print the curvature matrix of a kernel at a point.
    Curvature {
        #[arg(long)]
        kernel: String,
        #[arg(long)]
        at: String,
    },
}

fn env_seed() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .parse::<u64>()
            .map(Some)
            .map_err(|_| Error::Config(format!("{SEED_ENV} must be an unsigned integer"))),
        Err(_) => Ok(None),
    }
}

/// Parse one complex coordinate: "0.3", "0.2i", "0.1+0.2i", "-0.1-0.2i".
pub fn parse_complex(s: &str) -> Result<C64> {
    let s = s.trim();
    let bad = || Error::Config(format!("malformed complex number `{s}`"));
    if s.is_empty() {
        return Err(bad());
    }
    // Split into at most two signed terms.
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (i, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            let prev = s.chars().nth(i - 1).unwrap();
            if prev != 'e' && prev != 'E' {
                terms.push(std::mem::take(&mut cur));
                cur.push(ch);
                continue;
            }
        }
        cur.push(ch);
    }
    terms.push(cur);
    let (mut re, mut im) = (0.0, 0.0);
    for t in &terms {
        if let Some(body) = t.strip_suffix(['i', 'j']) {
            let x: f64 = match body {
                "" | "+" => 1.0,
                "-" => -1.0,
                _ => body.parse().map_err(|_| bad())?,
            };
            im += x;
        } else {
            re += t.parse::<f64>().map_err(|_| bad())?;
        }
    }
    Ok(C64::new(re, im))
}

/// Parse a point: comma-separated complex coordinates.
pub fn parse_point(s: &str) -> Result<Vec<C64>> {
    s.split(',').map(parse_complex).collect()
}

fn run_inner(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Command::Check { config } => {
            let text = std::fs::read_to_string(&config)?;
            let mut cfg = RunConfig::parse(&text)?;
            if let Some(seed) = env_seed()? {
                if !text.lines().any(|l| {
                    l.split('#').next().unwrap_or("").trim_start().starts_with("seed")
                }) {
                    cfg.seed = seed;
                }
            }
            let rep = report::run_checks(&cfg)?;
            match cfg.format {
                OutputFormat::Json => println!("{}", rep.to_json()),
                OutputFormat::Text => print!("{}", rep.render_text()),
            }
            Ok(rep.pass)
        }
        Command::Scenario { id, json } => {
            let seed = env_seed()?.unwrap_or(DEFAULT_SEED);
            let rep = scenario::run_scenario(&id, seed)?;
            if json {
                println!("{}", rep.to_json());
            } else {
                print!("{}", rep.render_text());
            }
            Ok(rep.pass)
        }
        Command::Expand {
            kernel,
            order,
            center,
        } => {
            if order > report::MAX_ORDER {
                return Err(Error::Config(format!(
                    "order {order} exceeds the maximum {}",
                    report::MAX_ORDER
                )));
            }
            let spec = dsl::parse_kernel_dsl(&kernel)?;
            let w0 = parse_point(&center)?;
            let m = spec.vars()?;
            if w0.len() != m {
                return Err(Error::Config(format!(
                    "center has {} coordinates, kernel has {m} variables",
                    w0.len()
                )));
            }
            let s = spec.taylor_expand(&w0, order)?;
            println!(
                "# {} at {center}, order {order}: {} coefficients",
                dsl::pretty_print(&spec)?,
                s.iter().count()
            );
            for ((i, j), &v) in s.iter() {
                println!("a[{i}][{j}] = {:+.12e} {:+.12e}i", v.re, v.im);
            }
            Ok(true)
        }
        Command::Curvature { kernel, at } => {
            let spec = dsl::parse_kernel_dsl(&kernel)?;
            let w = parse_point(&at)?;
            let m = spec.vars()?;
            if w.len() != m {
                return Err(Error::Config(format!(
                    "point has {} coordinates, kernel has {m} variables",
                    w.len()
                )));
            }
            let mat = curvature::curvature_matrix(&spec, &w)?;
            println!("# curvature of {} at {at}", dsl::pretty_print(&spec)?);
            for i in 0..m {
                let row: Vec<String> = (0..m)
                    .map(|j| {
                        let v = mat.get(i, j);
                        format!("{:+.12e}{:+.12e}i", v.re, v.im)
                    })
                    .collect();
                println!("{}", row.join("  "));
            }
            let (lo, hi) = mat.min_max_eigenvalues();
            println!("# eigenvalue range: [{lo:.12e}, {hi:.12e}]");
            Ok(true)
        }
    }
}

/// Entry point for the binary: returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Help/version requests are not errors.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match run_inner(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
