//! The command-line surface. `main` parses arguments into [`Cli`] and calls
//! [`run`]; everything else lives here so it can be driven from tests.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num::ToPrimitive;
use serde_json::json;

use crate::analytic::{asymptotic_fit, identity_grid};
use crate::enumerate::{survey, Enumerator};
use crate::error::{Error, Result};
use crate::groups::{group_invariants, FinAbGroup};
use crate::hnp::{biquadratic_extension, biquadratic_legendre_test, hasse_norm_test};

pub mod formats;
pub mod presets;
pub mod suites;

pub use formats::parse_extension_input;
pub use presets::run_preset;

#[derive(Parser, Debug)]
#[command(name = "abelian-hnp", version, about = "Abelian extensions of Q by discriminant and the Hasse norm principle")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Analytic,
    Identities,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List every G-extension with discriminant at most the bound.
    Enumerate {
        #[arg(long)]
        group: FinAbGroup,
        #[arg(long)]
        bound: String,
        #[arg(long)]
        conditions: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "jsonl")]
        format: Format,
        /// 0 uses every core.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Emit in search order as found instead of sorting by discriminant.
        #[arg(long)]
        stream: bool,
    },
    /// Count G-extensions with discriminant at most the bound.
    Count {
        #[arg(long)]
        group: FinAbGroup,
        #[arg(long)]
        bound: String,
        #[arg(long)]
        conditions: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// HNP and WA statistics at several bounds, as CSV.
    Survey {
        #[arg(long)]
        group: FinAbGroup,
        /// Comma-separated, e.g. `10^4,10^6`.
        #[arg(long)]
        bounds: String,
        #[arg(long)]
        conditions: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Report on one extension, read from a file or given as `Q(√a, √b)`.
    Test {
        #[arg(long, required_unless_present = "biquadratic")]
        group: Option<FinAbGroup>,
        #[arg(long, requires = "group")]
        components: Option<PathBuf>,
        /// `a,b` for `Q(√a, √b)`.
        #[arg(long, conflicts_with = "components", allow_hyphen_values = true)]
        biquadratic: Option<String>,
        #[arg(long)]
        verbose: bool,
    },
    /// Run a verification suite and print maximal deviations.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
    /// Least-squares exponent fit to counts read from CSV (`B,N,...`).
    Fit {
        #[arg(long)]
        group: FinAbGroup,
        #[arg(long)]
        counts: PathBuf,
    },
    /// Run a named experiment.
    Preset {
        name: String,
        #[arg(long, default_value = "preset-output")]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
}

/// Executes a command, writing results to `out`; returns the exit status.
pub fn run(cli: Cli, out: &mut (dyn Write + Send)) -> Result<i32> {
    match cli.command {
        Command::Enumerate { group, bound, conditions, format, threads, stream } => {
            let b = formats::parse_bound(&bound)?;
            let cond = formats::read_conditions(&group, conditions.as_deref())?;
            let e = Enumerator::new(&group, &b, &cond)?;
            let line = |x: &crate::enumerate::GExtensionQ| match format {
                Format::Jsonl => formats::extension_to_json(x).to_string(),
                Format::Csv => formats::extension_csv_line(x),
            };
            if format == Format::Csv {
                writeln!(out, "disc,primes")?;
            }
            if stream {
                let mut err = None;
                e.for_each_extension(|x| {
                    if err.is_none() {
                        err = writeln!(out, "{}", line(&x)).err();
                    }
                });
                if let Some(err) = err {
                    return Err(err.into());
                }
            } else {
                let mut all = e.collect(threads);
                all.sort();
                for x in &all {
                    writeln!(out, "{}", line(x))?;
                }
            }
            Ok(0)
        }
        Command::Count { group, bound, conditions, threads } => {
            let b = formats::parse_bound(&bound)?;
            let cond = formats::read_conditions(&group, conditions.as_deref())?;
            writeln!(out, "{}", Enumerator::new(&group, &b, &cond)?.count(threads))?;
            Ok(0)
        }
        Command::Survey { group, bounds, conditions, threads } => {
            let bs = formats::parse_bounds(&bounds)?;
            let cond = formats::read_conditions(&group, conditions.as_deref())?;
            let rows = survey(&group, &bs, &cond, threads)?;
            formats::write_survey_csv(out, &rows)?;
            Ok(0)
        }
        Command::Test { group, components, biquadratic, verbose } => {
            let (ext, legendre) = match (biquadratic, group, components) {
                (Some(ab), _, _) => {
                    let parts: Vec<i64> = ab
                        .split(',')
                        .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad pair {ab:?}"))))
                        .collect::<Result<_>>()?;
                    let [a, b] = parts[..] else {
                        return Err(Error::Parse(format!("expected a,b, got {ab:?}")));
                    };
                    (biquadratic_extension(a, b)?, Some(biquadratic_legendre_test(a, b)?))
                }
                (None, Some(g), Some(path)) => (formats::parse_extension_input(&g, &path)?, None),
                _ => return Err(Error::Parse("test needs --components or --biquadratic".into())),
            };
            let report = hasse_norm_test(&ext)?;
            let mut v = if verbose { report.to_json_verbose() } else { report.to_json() };
            if verbose {
                v["disc"] = json!(ext.discriminant().to_string());
            }
            if let Some(l) = legendre {
                v["legendre_criterion_fails"] = json!(l);
            }
            writeln!(out, "{v}")?;
            Ok(0)
        }
        Command::Verify { suite } => {
            let ok = match suite {
                Suite::Analytic => {
                    let r = identity_grid()?;
                    writeln!(out, "closed form max deviation {:.3e} ({} cases)", r.closed_form_deviation, r.closed_form_cases)?;
                    writeln!(out, "vanishing max modulus {:.3e} ({} cases)", r.vanishing_deviation, r.vanishing_cases)?;
                    writeln!(
                        out,
                        "leading coefficient max deviation {:.3e} ({} cases)",
                        r.leading_coefficient_deviation, r.leading_coefficient_cases
                    )?;
                    r.closed_form_deviation < 1e-9
                        && r.vanishing_deviation < 1e-12
                        && r.leading_coefficient_deviation < 1e-6
                }
                Suite::Identities => {
                    let mut ok = true;
                    for r in suites::standard_suites()? {
                        writeln!(out, "{}: {} cases, {} failures", r.name, r.cases, r.failures.len())?;
                        for f in &r.failures {
                            writeln!(out, "  {f}")?;
                        }
                        ok &= r.passed();
                    }
                    ok
                }
            };
            Ok(if ok { 0 } else { 1 })
        }
        Command::Fit { group, counts } => {
            let inv = group_invariants(&group)?;
            let pts: Vec<(f64, f64)> = formats::read_counts(&counts)?
                .iter()
                .map(|(b, n)| (b.to_f64().unwrap_or(f64::INFINITY), n.to_f64().unwrap_or(f64::INFINITY)))
                .collect();
            let fit = asymptotic_fit(&pts, inv.alpha as f64, inv.nu_over_q as f64)?;
            writeln!(
                out,
                "{}",
                json!({
                    "slope": fit.slope,
                    "expected_exponent": 1.0 / inv.alpha as f64,
                    "alpha": inv.alpha,
                    "nu": inv.nu_over_q,
                    "c_estimates": fit.c_estimates,
                })
            )?;
            Ok(0)
        }
        Command::Preset { name, out: dir, threads } => {
            Ok(if run_preset(&name, &dir, threads, out)? { 0 } else { 1 })
        }
    }
}
