//! Command-line front end. Reports go to stdout, diagnostics to stderr.
//! Exit codes: 0 success, 1 suite failure or golden mismatch, 2 usage or
//! input error, 3 resource limit.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rickart_core::classifier::{classify, FgAbelianGroupSpec};
use rickart_core::context::{AbelianContext, ModuleContext};
use rickart_core::probe::DEFAULT_MAX_MODULE_ORDER;
use rickart_core::rickart::abelian_profile;
use rickart_core::FiniteAbelianGroup;
use serde_json::json;

use crate::cache::LatticeCache;
use crate::corpus::COMPONENT_BOUND;
use crate::error::{HarnessError, HarnessResult};
use crate::eval::Evaluator;
use crate::probe::run_ring;
use crate::report::SuiteReport;
use crate::suites::run_check;
use crate::theorem::{Schema, TheoremId};

#[derive(Parser, Debug)]
#[command(name = "rickart-lab", version, about = "CS-Rickart properties of finite abelian groups and finite modules")]
struct Cli {
    /// Directory for the subgroup-lattice cache; suites read and fill it
    /// when given.
    #[arg(long, global = true, value_name = "PATH")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Every property of one finite abelian group, e.g. "Z2+Z16".
    Props {
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// The direct summands of a finite abelian group.
    Summands { spec: String },
    /// Closed-form classification of a finitely generated, torsion or
    /// injective abelian group, e.g. "Z+Z4", "Q", "Zp^inf(3)".
    Classify { spec: String },
    /// Run one theorem suite, golden set or probe.
    Check {
        theorem: String,
        /// Corpus bound (module order bound for the probe).
        #[arg(long)]
        max_order: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Run every theorem suite, golden set and the probe.
    CheckAll {
        /// Corpus bound for the suites.
        #[arg(long)]
        max_order: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Ring commands.
    Ring {
        name: String,
        #[command(subcommand)]
        action: RingAction,
    },
    /// Inspect, fill or clear the lattice cache.
    Cache {
        #[arg(long)]
        clear: bool,
        /// Fill the cache with every group of order at most N.
        #[arg(long, value_name = "N")]
        warm: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum RingAction {
    /// Evaluate the semisimplicity conditions on the small modules.
    Probe {
        #[arg(long, default_value_t = DEFAULT_MAX_MODULE_ORDER)]
        max_module_order: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Parse arguments, run, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn parse_group(spec: &str) -> HarnessResult<FiniteAbelianGroup> {
    Ok(FiniteAbelianGroup::parse(spec)?)
}

fn out(text: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{text}");
}

fn json_text<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serialisable")
}

fn print_report(r: &SuiteReport, as_json: bool) {
    if as_json {
        out(&r.to_json());
        eprintln!("{}: {} ms", r.theorem, r.elapsed_ms);
        return;
    }
    out(&r.summary_line());
    for f in &r.failures {
        out(&format!("  failure [{}] {}", f.clause, f.description));
        if let (Some(e), Some(o)) = (&f.expected, &f.observed) {
            out(&format!("    expected {e}"));
            out(&format!("    observed {o}"));
        }
    }
    for d in &r.discrepancies {
        out(&format!("  discrepancy {d}"));
    }
}

fn warm_cache(cache: Option<&LatticeCache>, bound: u64) -> HarnessResult<()> {
    if let Some(c) = cache {
        c.warm_up_to(bound.min(COMPONENT_BOUND))?;
    }
    Ok(())
}

fn dispatch(cli: Cli) -> HarnessResult<i32> {
    let cache = cli.cache_dir.as_deref().map(|d| LatticeCache::resolve(Some(d)));
    match cli.command {
        Command::Props { spec, json } => {
            let g = parse_group(&spec)?;
            let report = abelian_profile(&g)?;
            if json {
                out(&json_text(&report));
            } else {
                out(&report.object.to_string());
                for (id, v) in &report.properties {
                    out(&format!("  {:<26} {}", id.name(), v.value));
                }
            }
            Ok(0)
        }
        Command::Summands { spec } => {
            let g = parse_group(&spec)?;
            let ctx = AbelianContext::shared(&g);
            let fi = ctx.fully_invariant_summands()?;
            let list: Vec<_> = ctx
                .summands()?
                .iter()
                .map(|s| {
                    json!({
                        "generators": s,
                        "order": s.order(),
                        "type": s.iso_type().to_group().to_string(),
                        "fully_invariant": fi.contains(s),
                    })
                })
                .collect();
            out(&json_text(&json!({"object": g, "summands": list})));
            Ok(0)
        }
        Command::Classify { spec } => {
            let s = FgAbelianGroupSpec::parse(&spec)?;
            out(&json_text(&classify(&s)));
            Ok(0)
        }
        Command::Check { theorem, max_order, json } => {
            let id: TheoremId = theorem.parse()?;
            if let Schema::Suite(_) = id.schema() {
                warm_cache(cache.as_ref(), max_order.unwrap_or_else(|| id.default_bound()))?;
            }
            let report = run_check(id, max_order, &Evaluator::new())?;
            print_report(&report, json);
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::CheckAll { max_order, json } => {
            let eval = Evaluator::new();
            let mut reports = Vec::new();
            for &id in TheoremId::ALL {
                let bound = match id.schema() {
                    Schema::Suite(_) => {
                        let b = max_order.unwrap_or_else(|| id.default_bound());
                        warm_cache(cache.as_ref(), b)?;
                        Some(b)
                    }
                    _ => None,
                };
                let r = run_check(id, bound, &eval)?;
                if !json {
                    print_report(&r, false);
                }
                reports.push(r);
            }
            let passed = reports.iter().all(SuiteReport::passed);
            if json {
                out(&json_text(&reports));
            } else {
                let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.theorem.as_str()).collect();
                out(&format!(
                    "{} of {} passed{}",
                    reports.len() - failed.len(),
                    reports.len(),
                    if failed.is_empty() { String::new() } else { format!("; failed: {}", failed.join(", ")) }
                ));
            }
            Ok(if passed { 0 } else { 1 })
        }
        Command::Ring { name, action } => match action {
            RingAction::Probe { max_module_order, json } => {
                let report = run_ring(&name, max_module_order)?;
                print_report(&report, json);
                Ok(0)
            }
        },
        Command::Cache { clear, warm } => {
            let cache = cache.unwrap_or_else(|| LatticeCache::resolve(None));
            if clear {
                let n = cache.clear()?;
                out(&format!("removed {n} files from {}", cache.dir().display()));
            }
            if let Some(n) = warm {
                if n > COMPONENT_BOUND {
                    return Err(HarnessError::Usage(format!("--warm is limited to {COMPONENT_BOUND}")));
                }
                let count = cache.warm_up_to(n)?;
                eprintln!("warmed {count} lattices");
            }
            if !clear {
                out(&json_text(&json!({
                    "dir": cache.dir().display().to_string(),
                    "format": crate::cache::FORMAT,
                    "entries": cache.entries()?,
                })));
            }
            Ok(0)
        }
    }
}
