//! `idtree`: measure, solve, and play identification games over binary
//! instance sets, and inspect predicate-disjunction classes.
//!
//! Exit codes: 0 success, 1 verification or game failure, 2 input error,
//! 3 exact-computation limit exceeded.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use idtree::lattice::{self, HasseDiagram};
use idtree::measures;
use idtree::solvers::{self, AdversaryOracle, AnswerOracle, FixedOracle, LearnerKind, PlayConfig};
use idtree::verify;
use idtree::{Error, InstanceSet, Limits};

#[derive(Parser)]
#[command(
    name = "idtree",
    version,
    about = "Minimum-height decision trees over binary instance sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeFormat {
    Text,
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Exact,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassAction {
    Hasse,
    Matrix,
    Etd,
    Learn,
}

#[derive(Subcommand)]
enum Command {
    /// Compute all measures and bound flags for a matrix file
    Measure {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long, default_value_t = 16)]
        etd_limit: usize,
        #[arg(long, default_value_t = 20)]
        den_limit: usize,
        #[arg(long, default_value_t = 24)]
        opt_limit: usize,
        /// When m exceeds the exact limit, report a sampled ETD lower bound
        /// from this many random hypotheses (plus MAJ(A) and every row)
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Construct a decision tree and print its depth
    Solve {
        input: PathBuf,
        #[arg(long, value_enum)]
        algorithm: Algorithm,
        #[arg(long, value_enum, default_value_t = TreeFormat::Text)]
        format: TreeFormat,
        #[arg(long, default_value_t = 24)]
        opt_limit: usize,
        #[arg(long, default_value_t = 20)]
        den_limit: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Play one learner-versus-oracle identification game
    Play {
        input: PathBuf,
        /// greedy | moshkov | epsilon | exact-tree
        #[arg(long)]
        learner: String,
        /// hidden=<row index, 1-based> | adversary
        #[arg(long)]
        oracle: String,
        /// Split threshold for the epsilon learner (default ln(E)/E)
        #[arg(long)]
        epsilon: Option<f64>,
        /// Use greedy polynomial specifying sets instead of exact ones
        #[arg(long)]
        greedy_spec: bool,
        #[arg(long, default_value_t = 16)]
        etd_limit: usize,
        #[arg(long, default_value_t = 20)]
        den_limit: usize,
        #[arg(long, default_value_t = 24)]
        opt_limit: usize,
        /// Hill-climbing restarts for the density witness fallback
        #[arg(long, default_value_t = 8)]
        effort: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build a predicate class and inspect its disjunction closure
    Class {
        /// Ray family over an n^m grid: --ray N M
        #[arg(long, num_args = 2, value_names = ["N", "M"])]
        ray: Option<Vec<usize>>,
        /// The eleven-predicate ray/diagonal family over {1,2,3}^2
        #[arg(long)]
        raysum: bool,
        /// Predicate spec file
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, value_enum)]
        action: ClassAction,
        /// Hidden element index (1-based) for --action learn
        #[arg(long)]
        hidden: Option<usize>,
        #[arg(long, default_value_t = 4096)]
        domain_limit: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the seeded verification suites
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 300)]
        cases: usize,
        /// Restrict to the named suites (repeatable)
        #[arg(long = "suite")]
        suites: Vec<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ExactLimitExceeded { .. }
            | Error::DomainTooLarge { .. }
            | Error::Overbudget { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_matrix(path: &PathBuf) -> Result<InstanceSet, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(InstanceSet::parse(&text)?)
}

fn emit(output: Option<&PathBuf>, content: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, content)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Measure {
            input,
            format,
            etd_limit,
            den_limit,
            opt_limit,
            sample,
            seed,
            output,
        } => {
            let a = read_matrix(&input)?;
            let limits = Limits {
                etd_exact_m_limit: etd_limit,
                den_exact_n_limit: den_limit,
                opt_exact_n_limit: opt_limit,
            };
            let mut report = measures::bounds_report(&a, &limits);
            if report.etd.is_none() {
                if let Some(k) = sample {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    report.etd_sampled = Some(measures::etd_sampled(&a, k, &mut rng));
                    report.notes.push(format!(
                        "etd_sampled is a lower bound from {k} random hypotheses (seed {seed})"
                    ));
                }
            }
            let rendered = match format {
                ReportFormat::Json => {
                    serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
                }
                ReportFormat::Text => render_report_text(&report),
            };
            emit(output.as_ref(), &rendered)?;
            Ok(if report.all_pass() { 0 } else { 1 })
        }

        Command::Solve {
            input,
            algorithm,
            format,
            opt_limit,
            den_limit,
            output,
        } => {
            let a = read_matrix(&input)?;
            let limits = Limits {
                opt_exact_n_limit: opt_limit,
                den_exact_n_limit: den_limit,
                ..Limits::default()
            };
            let (name, tree) = match algorithm {
                Algorithm::Exact => ("exact", solvers::opt_exact(&a, &limits)?.tree),
                Algorithm::Greedy => ("greedy", solvers::greedy_tree(&a)),
            };
            let den = measures::den_exact(&a, &limits)
                .ok()
                .map(|(f, _)| f.to_string());
            let rendered = match format {
                TreeFormat::Dot => tree.to_dot(),
                TreeFormat::Text => {
                    let mut s = format!(
                        "algorithm: {name}\ndepth: {}\nceil(log2 n): {}\n",
                        tree.depth(),
                        measures::ceil_log2(a.len())
                    );
                    if let Some(d) = &den {
                        s.push_str(&format!("den: {d}\n"));
                    }
                    s
                }
                TreeFormat::Json => {
                    let v = json!({
                        "algorithm": name,
                        "depth": tree.depth(),
                        "ceil_log2_n": measures::ceil_log2(a.len()),
                        "den": den,
                        "dot": tree.to_dot(),
                    });
                    serde_json::to_string_pretty(&v).expect("serializes") + "\n"
                }
            };
            emit(output.as_ref(), &rendered)?;
            Ok(0)
        }

        Command::Play {
            input,
            learner,
            oracle,
            epsilon,
            greedy_spec,
            etd_limit,
            den_limit,
            opt_limit,
            effort,
            seed,
            output,
        } => {
            let a = read_matrix(&input)?;
            let learner = LearnerKind::from_str(&learner)?;
            let limits = Limits {
                etd_exact_m_limit: etd_limit,
                den_exact_n_limit: den_limit,
                opt_exact_n_limit: opt_limit,
            };
            let mut oracle: Box<dyn AnswerOracle> = if oracle == "adversary" {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Box::new(AdversaryOracle::from_density(&a, &limits, effort, &mut rng))
            } else if let Some(row) = oracle.strip_prefix("hidden=") {
                let row: usize = row
                    .parse()
                    .map_err(|_| Failure::input(format!("bad row index in oracle {oracle:?}")))?;
                if row < 1 || row > a.len() {
                    return Err(Failure::input(format!(
                        "hidden row {row} out of range 1..={}",
                        a.len()
                    )));
                }
                Box::new(FixedOracle::new(a.row(row - 1).clone()))
            } else {
                return Err(Failure::input(format!(
                    "oracle must be \"hidden=<row>\" or \"adversary\", got {oracle:?}"
                )));
            };
            let cfg = PlayConfig {
                limits,
                epsilon,
                greedy_spec,
            };
            let transcript = solvers::play_game(&a, learner, oracle.as_mut(), &cfg)?;
            emit(output.as_ref(), &(transcript.to_json() + "\n"))?;
            Ok(0)
        }

        Command::Class {
            ray,
            raysum,
            spec,
            action,
            hidden,
            domain_limit,
            format,
            output,
        } => {
            let sources =
                usize::from(ray.is_some()) + usize::from(raysum) + usize::from(spec.is_some());
            if sources != 1 {
                return Err(Failure::input(
                    "choose exactly one of --ray N M, --raysum, --spec FILE",
                ));
            }
            let (domain, preds) = if let Some(nm) = ray {
                lattice::gen_ray(nm[0], nm[1], domain_limit)?
            } else if raysum {
                lattice::gen_ray_sum()
            } else {
                let path = spec.unwrap();
                let text = fs::read_to_string(&path)
                    .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
                lattice::parse_predicate_file(&text, domain_limit)?
            };
            let h = lattice::hasse_build(domain, preds)?;
            match action {
                ClassAction::Hasse => {
                    emit(output.as_ref(), &h.to_dot())?;
                    Ok(0)
                }
                ClassAction::Matrix => {
                    emit(output.as_ref(), &h.induced_matrix().render())?;
                    Ok(0)
                }
                ClassAction::Etd => {
                    emit(output.as_ref(), &render_class_etd(&h, format))?;
                    Ok(0)
                }
                ClassAction::Learn => {
                    let target = hidden.ok_or_else(|| {
                        Failure::input("--action learn needs --hidden <element index>")
                    })?;
                    if target < 1 || target > h.len() {
                        return Err(Failure::input(format!(
                            "hidden element {target} out of range 1..={}",
                            h.len()
                        )));
                    }
                    let mut oracle = FixedOracle::new(h.table(target - 1).clone());
                    let (found, t) = lattice::learn_disjunction(&h, &mut oracle)?;
                    let correct = found == target - 1;
                    let mut s = t.to_json();
                    s.push_str(&format!(
                        "\nidentified: {} ({})\ncorrect: {}\n",
                        found + 1,
                        h.element_label(found),
                        correct
                    ));
                    emit(output.as_ref(), &s)?;
                    Ok(u8::from(!correct))
                }
            }
        }

        Command::Verify {
            seed,
            cases,
            suites,
            output,
        } => {
            for s in &suites {
                if !verify::SUITE_NAMES.contains(&s.as_str()) {
                    return Err(Failure::input(format!(
                        "unknown suite {s:?}; known: {}",
                        verify::SUITE_NAMES.join(", ")
                    )));
                }
            }
            let only = (!suites.is_empty()).then_some(&suites[..]);
            let outcomes = verify::run_all(seed, cases, only);
            let text = verify::summary(seed, cases, &outcomes);
            emit(output.as_ref(), &text)?;
            Ok(u8::from(!outcomes.iter().all(|o| o.passed())))
        }
    }
}

fn render_report_text(report: &measures::MeasuresReport) -> String {
    let mut s = String::new();
    s.push_str(&format!("n: {}\nm: {}\n", report.n, report.m));
    s.push_str(&format!("mami: {}\nhs: {}\n", report.mami, report.hs));
    let show = |v: &Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
    s.push_str(&format!("etd: {}\n", show(&report.etd)));
    if let Some(e) = report.etd_sampled {
        s.push_str(&format!("etd sampled lower bound: {e}\n"));
    }
    s.push_str(&format!("setd: {}\n", show(&report.setd)));
    s.push_str(&format!(
        "den: {}\n",
        report.den.map_or("-".to_string(), |d| d.to_string())
    ));
    if let Some(w) = &report.den_witness {
        let w: Vec<String> = w.iter().map(|i| i.to_string()).collect();
        s.push_str(&format!("den witness rows: [{}]\n", w.join(", ")));
    }
    s.push_str(&format!("log2(n): {}\n", report.log2n));
    s.push_str(&format!("opt: {}\n", show(&report.opt)));
    for note in &report.notes {
        s.push_str(&format!("note: {note}\n"));
    }
    s.push_str("flags:\n");
    for f in &report.flags {
        s.push_str(&format!(
            "  {:<24} {} vs {}  {}\n",
            f.name,
            f.lhs,
            f.rhs,
            if f.pass { "pass" } else { "FAIL" }
        ));
    }
    s.push_str(&format!(
        "result: {}\n",
        if report.all_pass() { "PASS" } else { "FAIL" }
    ));
    s
}

fn render_class_etd(h: &HasseDiagram, format: ReportFormat) -> String {
    let rows: Vec<(String, usize, usize, usize, usize)> = (0..h.len())
        .map(|g| {
            let (de, hs) = h.etd_components(g);
            (h.element_label(g), h.deg(g), de, hs, de + hs)
        })
        .collect();
    let etd = rows.iter().map(|r| r.4).max().unwrap_or(0);
    let degree = h.degree();
    match format {
        ReportFormat::Json => {
            let v = json!({
                "elements": rows
                    .iter()
                    .map(|(label, deg, de, hs, sum)| {
                        json!({"label": label, "deg": deg, "de": de, "hs": hs, "sum": sum})
                    })
                    .collect::<Vec<_>>(),
                "etd": etd,
                "degree": degree,
            });
            serde_json::to_string_pretty(&v).expect("serializes") + "\n"
        }
        ReportFormat::Text => {
            let mut s = String::from("element                      deg  |De|  HS(As&~G)  sum\n");
            for (label, deg, de, hs, sum) in &rows {
                s.push_str(&format!(
                    "{label:<28} {deg:>3}  {de:>4}  {hs:>9}  {sum:>3}\n"
                ));
            }
            s.push_str(&format!("etd: {etd}\ndegree: {degree}\n"));
            s
        }
    }
}
