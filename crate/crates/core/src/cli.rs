//! Command-line front end. Exit codes: 0 answered, 2 invalid input,
//! 3 capability cap, 4 failed verification.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::formulations::attach_objective;
use crate::instance::Instance;
use crate::oracle::enum_uab;
use crate::ratlp::{export_lp, lp_solve, parse_lp, LpModel, LpResult};
use crate::rational::{format_rational, from_usize, serde_rational, Rational};
use crate::reductions::{brute_gamma_vc, brute_vertex_cover, bpf_to_uab, min_gamma_cover, vc_gadget, BpfInstance, SimpleGraph};
use crate::report::RunReport;
use crate::stepfn::StepFunction;
use crate::verify::{converge, verify_instance, DEFAULT_SEED};

#[derive(Parser, Debug)]
#[command(name = "switchform", version, about = "Exact extended formulations for binary switching constraints")]
pub struct Cli {
    /// Record wall time in reports (makes them run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the LP for an instance and write it in text form.
    Build {
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve an LP file or instance exactly.
    Solve {
        /// `.lp` text or instance JSON.
        input: PathBuf,
        /// Step function JSON priced as `∫ c u`.
        #[arg(long)]
        objective: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare LP optima with brute-force minima on seeded objectives.
    Verify {
        instance: PathBuf,
        #[arg(long, default_value_t = 25)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Step function JSON to test for membership in the model.
        #[arg(long)]
        point: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Averaging distances against the `(T/N)·TV²` bound.
    Converge {
        function: PathBuf,
        /// Comma-separated grid sizes; all divisors when omitted.
        #[arg(long, value_delimiter = ',')]
        divisors: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a reduction instance.
    Reduce {
        #[arg(value_enum)]
        source_kind: SourceKind,
        source: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Check the equivalence by brute force on both sides.
        #[arg(long)]
        referee: bool,
        /// Where to write the referee report (default: standard error).
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SourceKind {
    Bpf,
    Vc,
}

/// `{"graph": {...}, "K": 1, "gamma": 3}`
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VcSource {
    graph: SimpleGraph,
    #[serde(rename = "K")]
    k_prime: usize,
    gamma: usize,
}

#[derive(Debug, Serialize)]
struct VcProvenance<'a> {
    source: &'static str,
    graph: &'a SimpleGraph,
    #[serde(rename = "K_prime")]
    k_prime: usize,
}

#[derive(Debug, Serialize)]
struct VcBundle<'a> {
    graph: &'a SimpleGraph,
    #[serde(rename = "K", with = "serde_rational")]
    k: Rational,
    gamma: usize,
    provenance: VcProvenance<'a>,
}

struct Io<'a> {
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Io<'_> {
    fn emit(&mut self, out: Option<&Path>, text: &str) -> Result<()> {
        match out {
            Some(path) => std::fs::write(path, text)?,
            None => self.stdout.write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn say(&mut self, text: &str) {
        let _ = writeln!(self.stderr, "{text}");
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn read_text(path: &Path) -> Result<String> {
    String::from_utf8(read(path)?).map_err(|_| Error::malformed(format!("{} is not UTF-8", path.display())))
}

/// Run with explicit argument list and streams; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let mut io = Io { stdout, stderr };
    match execute(cli, echo, &mut io) {
        Ok(code) => code,
        Err(e) => {
            io.say(&format!("error: {e}"));
            e.exit_code()
        }
    }
}

fn execute(cli: Cli, echo: Vec<String>, io: &mut Io<'_>) -> Result<i32> {
    let caps = Caps::from_env()?;
    let start = Instant::now();
    let finish = |mut report: RunReport| {
        if cli.timing {
            report.wall_time_ms = Some(start.elapsed().as_millis());
        }
        report.to_json()
    };
    match &cli.command {
        Command::Build { instance, out } => {
            let inst = Instance::from_json(&read_text(instance)?)?;
            io.emit(out.as_deref(), &export_lp(&inst.build()?))?;
            Ok(0)
        }
        Command::Solve { input, objective, out } => {
            let bytes = read(input)?;
            let text = String::from_utf8(bytes.clone()).map_err(|_| Error::malformed("input is not UTF-8"))?;
            let mut model = load_model(&text)?;
            if let Some(path) = objective {
                let c: StepFunction = serde_json::from_str(&read_text(path)?)?;
                model = attach_objective(&model, &c)?;
            }
            let mut report = RunReport::new(echo, &bytes);
            match lp_solve(&model)? {
                LpResult::Optimal { value, point } => {
                    report.row("objective", value, "optimal");
                    for (v, x) in model.vars.iter().zip(point) {
                        report.row(v.name.clone(), x, "point");
                    }
                }
                other => report.row("objective", Rational::zero(), other.status_label()),
            }
            io.emit(out.as_deref(), &finish(report))?;
            Ok(0)
        }
        Command::Verify { instance, trials, seed, point, out } => {
            let bytes = read(instance)?;
            let inst = Instance::from_json(std::str::from_utf8(&bytes).map_err(|_| Error::malformed("not UTF-8"))?)?;
            let point = point.as_ref().map(|p| read_text(p).and_then(|t| Ok(serde_json::from_str(&t)?))).transpose()?;
            let outcome = verify_instance(&inst, *trials, *seed, point.as_ref(), &caps)?;
            let mut report = RunReport::new(echo, &bytes);
            let m = &outcome.membership;
            report.check(
                "members_admitted",
                from_usize(m.members_admitted),
                m.members_admitted == m.members,
                "PASS",
                "FAIL",
            );
            if let Some(outsiders) = m.outsiders {
                let label = "outsiders_admitted";
                match outcome.claim {
                    crate::instance::HullClaim::Exact => {
                        report.check(label, from_usize(m.outsiders_admitted), m.outsiders_admitted == 0, "PASS", "FAIL")
                    }
                    crate::instance::HullClaim::Contains => report.row(label, from_usize(m.outsiders_admitted), "info"),
                }
                report.note(format!("{} class members, {outsiders} other binary points", m.members));
            }
            for t in &outcome.trials {
                let ok = t.status != crate::verify::TrialStatus::Mismatch && t.binary_vertex != Some(false);
                report.check(format!("trial{}.lp", t.index), t.lp_value.clone(), ok, t.status.label(), "mismatch");
                report.row(format!("trial{}.oracle", t.index), t.oracle_value.clone(), "oracle");
            }
            if let Some(admitted) = outcome.point_admitted {
                report.row("point", Rational::zero(), if admitted { "admitted" } else { "cut off" });
            }
            for f in &outcome.failures {
                report.note(f.clone());
            }
            let equal = outcome.trials.iter().filter(|t| t.status == crate::verify::TrialStatus::Equal).count();
            io.emit(out.as_deref(), &finish(report))?;
            let verdict = if outcome.passed() { "PASS" } else { "FAIL" };
            io.say(&format!("{verdict} {equal}/{} equal", outcome.trials.len()));
            if let Some(admitted) = outcome.point_admitted {
                io.say(if admitted { "point admitted" } else { "point cut off" });
            }
            Ok(if outcome.passed() { 0 } else { 4 })
        }
        Command::Converge { function, divisors, format, out } => {
            let bytes = read(function)?;
            let u: StepFunction = serde_json::from_slice(&bytes)?;
            let rows = converge(&u, divisors)?;
            let ok = rows.iter().all(|r| r.within_bound());
            let text = match format {
                Format::Csv => {
                    let mut csv = String::from("N,l2_dist_sq,bound,within_bound\n");
                    for r in &rows {
                        csv.push_str(&format!(
                            "{},{},{},{}\n",
                            r.cells,
                            format_rational(&r.dist_sq),
                            format_rational(&r.bound),
                            r.within_bound()
                        ));
                    }
                    csv
                }
                Format::Json => {
                    let mut report = RunReport::new(echo, &bytes);
                    for r in &rows {
                        report.check(format!("N={}", r.cells), r.dist_sq.clone(), r.within_bound(), "PASS", "FAIL");
                        report.row(format!("N={}.bound", r.cells), r.bound.clone(), "bound");
                    }
                    finish(report)
                }
            };
            io.emit(out.as_deref(), &text)?;
            if !ok {
                return Err(Error::Verification("averaging distance exceeds (T/N)·TV²".into()));
            }
            Ok(0)
        }
        Command::Reduce { source_kind, source, out, referee, report: report_path } => {
            let bytes = read(source)?;
            let mut report = RunReport::new(echo, &bytes);
            let agree = match source_kind {
                SourceKind::Bpf => {
                    let inst: BpfInstance = serde_json::from_slice(&bytes)?;
                    inst.validate()?;
                    let bundle = bpf_to_uab(&inst)?;
                    let mut text = serde_json::to_string_pretty(&bundle)?;
                    text.push('\n');
                    io.emit(out.as_deref(), &text)?;
                    if !referee {
                        return Ok(0);
                    }
                    let bpf = inst.brute_feasible(&caps)?.is_some();
                    let members =
                        enum_uab(&bundle.constraints(), bundle.horizon(), bundle.instance.cells(), &caps)?.len();
                    report.row("bpf_feasible", from_usize(usize::from(bpf)), if bpf { "feasible" } else { "infeasible" });
                    report.row("uab_members", from_usize(members), if members > 0 { "nonempty" } else { "empty" });
                    bpf == (members > 0)
                }
                SourceKind::Vc => {
                    let src: VcSource = serde_json::from_slice(&bytes)?;
                    let (graph, k) = vc_gadget(&src.graph, src.k_prime, src.gamma)?;
                    let bundle = VcBundle {
                        graph: &graph,
                        k: k.clone(),
                        gamma: src.gamma,
                        provenance: VcProvenance { source: "vc", graph: &src.graph, k_prime: src.k_prime },
                    };
                    let mut text = serde_json::to_string_pretty(&bundle)?;
                    text.push('\n');
                    io.emit(out.as_deref(), &text)?;
                    if !referee {
                        return Ok(0);
                    }
                    let vc = brute_vertex_cover(&src.graph, src.k_prime, &caps)?;
                    let gvc = brute_gamma_vc(&graph, &k, src.gamma, &caps)?;
                    let (min, _) = min_gamma_cover(&graph, src.gamma, &caps)?;
                    report.row("K", k, "threshold");
                    report.row("min_gamma_cover", min, if gvc { "within" } else { "above" });
                    report.row("vertex_cover", from_usize(src.k_prime), if vc { "feasible" } else { "infeasible" });
                    vc == gvc
                }
            };
            report.check("equivalence", Rational::zero(), agree, "PASS", "FAIL");
            let text = finish(report);
            match report_path {
                Some(path) => std::fs::write(path, &text)?,
                None => {
                    let _ = io.stderr.write_all(text.as_bytes());
                }
            }
            io.say(if agree { "referee: PASS" } else { "referee: FAIL" });
            if agree {
                Ok(0)
            } else {
                Err(Error::Verification("reduction referee disagrees".into()))
            }
        }
    }
}

/// Instance JSON (first non-blank byte `{`) or LP text.
fn load_model(text: &str) -> Result<LpModel> {
    if text.trim_start().starts_with('{') {
        Instance::from_json(text)?.build()
    } else {
        parse_lp(text)
    }
}
