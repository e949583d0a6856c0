//! Command-line front end. Every path through [`run`] returns 0 (all trusted
//! entries hold), 1 (a trusted entry was violated or could not be evaluated,
//! or a suspect one under `--strict`) or 2 (bad input or configuration).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fuzz::{run_fuzz, FuzzConfig, RankMode};
use crate::inequalities::{check_sharpness, check_suite, registry, Arity, Ctx, EntrySet, Verdict};
use crate::instance::{Instance, InstanceFile};
use crate::instancegen::GenConfig;
use crate::linalg::TolerancePolicy;
use crate::radii::{crawford_a, dw_radius_a, joint_radius_a, omega_a, op_seminorm_a};
use crate::report::{format_float, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "semirad",
    version,
    about = "Radii of operators on semi-Hilbert spaces and checks of inequalities between them"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print enclosures of the A-quantities of T (and S) from an instance file.
    Compute {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        quantity: QuantityArg,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate registry entries on one instance.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        set: EntrySet,
        /// Absolute slack before a bound counts as violated.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
        /// Fail on violations of entries whose printed form is suspect.
        #[arg(long)]
        strict: bool,
    },
    /// Check the registry on generated instances.
    Fuzz {
        /// Inclusive range `lo..hi` or a comma list.
        #[arg(long, default_value = "2..5", value_parser = parse_dims)]
        dims: Dims,
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "full,deficient"
        )]
        ranks: Vec<RankMode>,
        /// Trials per dimension.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "all")]
        set: EntrySet,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        strict: bool,
    },
    /// Evaluate the target entries of a sharpness case on its witness.
    Sharpness {
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Rank of the generated weight; defaults to `dim`.
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantityArg {
    #[value(name = "norm_a")]
    NormA,
    #[value(name = "omega_a")]
    OmegaA,
    #[value(name = "crawford_a")]
    CrawfordA,
    Joint,
    Dw,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dims(pub Vec<usize>);

fn parse_dims(s: &str) -> std::result::Result<Dims, String> {
    let bad = |_| format!("expected `lo..hi` or a comma list of dimensions, got `{s}`");
    let dims = if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(bad)?;
        let hi: usize = hi.trim().trim_start_matches('=').parse().map_err(bad)?;
        (lo..=hi).collect()
    } else {
        s.split(',')
            .map(|d| d.trim().parse().map_err(bad))
            .collect::<std::result::Result<Vec<usize>, _>>()?
    };
    if dims.is_empty() {
        return Err(format!("empty dimension range `{s}`"));
    }
    Ok(Dims(dims))
}

/// Parses `args` (including the program name), runs the command and writes
/// the human or JSON report to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return EXIT_INPUT;
            }
            let _ = write!(out, "{text}");
            return EXIT_OK;
        }
    };
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let mut report = Report::new(echo);
    let start = Instant::now();
    let (json, res) = match &cli.command {
        Command::Compute {
            file,
            quantity,
            json,
        } => (*json, compute(&mut report, file, *quantity)),
        Command::Check {
            file,
            set,
            tol,
            json,
            strict,
        } => (*json, check(&mut report, file, *set, *tol, *strict)),
        Command::Fuzz {
            dims,
            ranks,
            trials,
            seed,
            set,
            json,
            strict,
        } => {
            let cfg = FuzzConfig {
                dims: dims.0.clone(),
                ranks: ranks.clone(),
                trials: *trials,
                seed: *seed,
                set: *set,
                tol: TolerancePolicy::default(),
            };
            (*json, fuzz(&mut report, &cfg, *strict))
        }
        Command::Sharpness {
            case,
            seed,
            dim,
            rank,
            json,
        } => {
            let cfg = GenConfig::new(*dim, rank.unwrap_or(*dim), *seed);
            (*json, sharpness(&mut report, case, &cfg))
        }
    };
    report.wall_time_s = start.elapsed().as_secs_f64();
    report.exit_code = match res {
        Ok(code) => code,
        Err(e) => {
            report.errors.push(e.to_string());
            EXIT_INPUT
        }
    };
    for w in &report.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    for e in &report.errors {
        let _ = writeln!(err, "error: {e}");
    }
    let _ = if json {
        write!(out, "{}", report.to_json())
    } else {
        write!(out, "{}", render_text(&report))
    };
    report.exit_code
}

fn load(path: &Path, report: &mut Report, tol: Option<f64>) -> Result<Instance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let file = InstanceFile::parse(&text)?;
    report.instance_digest = Some(file.digest());
    let mut inst = file.validate(TolerancePolicy::default())?;
    if let Some(atol) = tol {
        inst.tol.check_atol = atol;
        inst.tol.validate()?;
    }
    Ok(inst)
}

fn compute(report: &mut Report, file: &Path, q: QuantityArg) -> Result<i32> {
    let inst = load(file, report, None)?;
    let sp = inst.space()?;
    let t = sp.operator(inst.t.clone())?;
    let s = inst.s.clone().map(|m| sp.operator(m)).transpose()?;
    // rejects incompatible operators, whose A-quantities are infinite
    let ctx = Ctx::new(t, s)?;
    let (t, s) = (ctx.t(), ctx.s());
    let wants = |x: QuantityArg| q == x || q == QuantityArg::All;
    if wants(QuantityArg::NormA) {
        report.quantities.insert("norm_a".into(), op_seminorm_a(t)?);
    }
    if wants(QuantityArg::OmegaA) {
        report.quantities.insert("omega_a".into(), omega_a(t)?);
    }
    if wants(QuantityArg::CrawfordA) {
        report
            .quantities
            .insert("crawford_a".into(), crawford_a(t)?);
    }
    if wants(QuantityArg::Joint) {
        match s {
            Some(s) => {
                report
                    .quantities
                    .insert("joint".into(), joint_radius_a(t, s)?);
            }
            None if q == QuantityArg::Joint => {
                return Err(Error::InvalidConfig(
                    "the joint radius needs S in the instance".into(),
                ));
            }
            None => report
                .warnings
                .push("no S in the instance; joint radius skipped".into()),
        }
    }
    if wants(QuantityArg::Dw) {
        report.quantities.insert("dw".into(), dw_radius_a(t)?);
    }
    Ok(EXIT_OK)
}

fn check(
    report: &mut Report,
    file: &Path,
    set: EntrySet,
    tol: Option<f64>,
    strict: bool,
) -> Result<i32> {
    let inst = load(file, report, tol)?;
    let sp = inst.space()?;
    let t = sp.operator(inst.t.clone())?;
    let s = inst.s.clone().map(|m| sp.operator(m)).transpose()?;
    let mut ctx = Ctx::new(t, s)?;
    if ctx.s().is_none() {
        let skipped = registry()
            .iter()
            .filter(|e| set.contains(e.group) && e.arity == Arity::TS)
            .count();
        if skipped > 0 {
            report.warnings.push(format!(
                "no S in the instance; {skipped} entries on (T, S) are inapplicable"
            ));
        }
    }
    let mut failed = false;
    for res in check_suite(&mut ctx, set) {
        match res {
            Ok(o) => report.outcomes.push(o),
            Err(e) => {
                failed = true;
                report.errors.push(e.to_string());
            }
        }
    }
    report.count_verdicts();
    let violated = report
        .outcomes
        .iter()
        .any(|o| o.verdict == Verdict::Violated && (strict || o.status.is_trusted()));
    Ok(if violated || failed {
        EXIT_VIOLATED
    } else {
        EXIT_OK
    })
}

fn fuzz(report: &mut Report, cfg: &FuzzConfig, strict: bool) -> Result<i32> {
    report.seed = Some(cfg.seed);
    let summary = run_fuzz(cfg, |_| {})?;
    for agg in summary.entries.values().chain([&summary.refinement]) {
        for (key, n) in [
            ("holds", agg.holds),
            ("violated", agg.violated),
            ("inapplicable", agg.inapplicable),
            ("errors", agg.errors),
        ] {
            *report.counts.entry(key.to_string()).or_default() += n;
        }
    }
    let bad = summary.trusted_violations() > 0
        || !summary.errors.is_empty()
        || (strict && summary.suspect_violations() > 0);
    report.fuzz = Some(summary);
    Ok(if bad { EXIT_VIOLATED } else { EXIT_OK })
}

fn sharpness(report: &mut Report, case: &str, cfg: &GenConfig) -> Result<i32> {
    report.seed = Some(cfg.seed);
    report.sharpness = check_sharpness(case, cfg)?;
    let attained = report.sharpness.iter().all(|o| o.attained);
    Ok(if attained { EXIT_OK } else { EXIT_VIOLATED })
}

/// The serde name of a unit enum variant.
fn tag<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        _ => String::from("?"),
    }
}

fn render_text(r: &Report) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    if let Some(d) = &r.instance_digest {
        writeln!(s, "instance sha256 {d}").unwrap();
    }
    for (name, q) in &r.quantities {
        writeln!(
            s,
            "{name:<11} [{}, {}]  width {:.2e}  {} ({} evals)",
            format_float(q.lo),
            format_float(q.hi),
            q.width(),
            tag(&q.method),
            q.evals
        )
        .unwrap();
    }
    for o in &r.outcomes {
        writeln!(
            s,
            "{:<5} {:<18} {:<12} lhs {:>12.6e}  rhs {:>12.6e}  slack {:>10.3e}",
            o.entry_id,
            tag(&o.status),
            tag(&o.verdict),
            o.lhs,
            o.rhs,
            o.slack
        )
        .unwrap();
    }
    if let Some(f) = &r.fuzz {
        writeln!(s, "{} instances", f.instances).unwrap();
        writeln!(
            s,
            "{:<10} {:<18} {:>6} {:>8} {:>12} {:>6} {:>11}",
            "entry", "status", "holds", "violated", "inapplicable", "errors", "min slack"
        )
        .unwrap();
        for (id, a) in f
            .entries
            .iter()
            .chain([(&"refinement".to_string(), &f.refinement)])
        {
            let min = a.min_slack.map_or("-".to_string(), |m| format!("{m:.3e}"));
            writeln!(
                s,
                "{id:<10} {:<18} {:>6} {:>8} {:>12} {:>6} {min:>11}",
                tag(&a.status),
                a.holds,
                a.violated,
                a.inapplicable,
                a.errors
            )
            .unwrap();
        }
        for v in &f.violations {
            writeln!(
                s,
                "violation {} ({}) dim {} rank {} trial {}: slack {:.3e}",
                v.entry_id,
                tag(&v.status),
                v.trial.dim,
                v.trial.rank,
                v.trial.trial,
                v.slack
            )
            .unwrap();
        }
    }
    for o in &r.sharpness {
        let part = o
            .part
            .as_deref()
            .map(|p| format!(" [{p}]"))
            .unwrap_or_default();
        writeln!(
            s,
            "{} {}{part}: slack {:.3e} {}",
            o.case_id,
            o.entry_id,
            o.slack,
            if o.attained {
                "attained"
            } else {
                "not attained"
            }
        )
        .unwrap();
    }
    if !r.counts.is_empty() {
        let counts: Vec<String> = r.counts.iter().map(|(k, n)| format!("{k} {n}")).collect();
        writeln!(s, "{}", counts.join(", ")).unwrap();
    }
    writeln!(s, "exit {} after {:.2}s", r.exit_code, r.wall_time_s).unwrap();
    s
}
