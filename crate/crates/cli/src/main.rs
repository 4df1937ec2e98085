use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use regz_cli::checks;
use regz_cli::input::{chain_label, glue_steps_inline, input_chain, input_matrix, input_symmetry, read_input, scalar, Bundle, InputError, InputFile};
use regz_cli::report::{exit_code, timed, CheckReport};
use regz_cli::suite;
use regz_core::gz::{chain_build, ChainData, Labelling};
use regz_core::hecke::HeckeSymmetry;
use regz_core::poisson::ClassicalR;
use regz_core::realg::{power_sum, NCPoly};
use regz_core::CoreError;
use serde_json::json;

const USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "regz", version, about = "Exact checks for Hecke symmetries and reflection equation algebras")]
struct Cli {
    /// Write JSON-line reports here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Stamp reports with wall time (makes output run-dependent).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SymArgs {
    /// Matrix, glue-spec or symmetry-bundle JSON file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Size of the standard symmetry used when no input is given.
    #[arg(long = "N", default_value_t = 2)]
    big_n: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Dj,
    Cg3,
    Glue,
}

#[derive(Clone, Copy, ValueEnum)]
enum LabellingArg {
    Literal,
    Module,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    Gl2,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a symmetry and print its bundle.
    BuildHecke {
        #[arg(long, value_enum, default_value = "dj")]
        family: Family,
        #[arg(long = "N", default_value_t = 2)]
        big_n: usize,
        /// Parameter of the Cremmer-Gervais family or the glueing parameter.
        #[arg(long, default_value = "1")]
        alpha: String,
        #[arg(long, default_value = "0")]
        beta: String,
        /// Glue blocks, e.g. `+q,+q,-1/q`.
        #[arg(long, default_value = "+q,+q")]
        blocks: String,
        /// Also write the bundle JSON to this file.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Classify a matrix: braid relation and Hecke or involutive condition.
    Validate {
        #[command(flatten)]
        sym: SymArgs,
        /// Residue points used to pre-screen the braid relation.
        #[arg(long, default_value_t = 4)]
        q_samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Skew-inverse residual and the braid property of C.
    SkewInverse {
        #[command(flatten)]
        sym: SymArgs,
    },
    /// Certify that p_1..p_k (or one generator) commute with every generator modulo the RE relations.
    Centrality {
        #[command(flatten)]
        sym: SymArgs,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        max_deg: usize,
        /// Test the generator `i,j` (1-based) instead of the power sums.
        #[arg(long)]
        generator: Option<String>,
    },
    /// Certify the Cayley-Hamilton identity of rank m.
    CayleyHamilton {
        #[command(flatten)]
        sym: SymArgs,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 2)]
        max_deg: usize,
    },
    /// Newton and Wronski identities for the spectral power sums.
    Newton {
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
    /// Central characters on the tensor-power submodules.
    Characters {
        #[arg(long = "N", default_value_t = 2)]
        big_n: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Certify the tensor-power module, its shifted form and classical limit.
    RepCheck {
        #[arg(long = "N", default_value_t = 2)]
        big_n: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Commuting level families and their joint spectrum on a glue chain.
    GzSpectrum {
        /// Glue-spec JSON file; overrides --blocks.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value = "+q,+q,+q")]
        blocks: String,
        #[arg(long, default_value = "q")]
        alpha: String,
        /// Shapes separated by `;`, parts by `,`.
        #[arg(long, default_value = "1;2;1,1;2,1")]
        shapes: String,
        #[arg(long, default_value_t = 2)]
        powers: usize,
        #[arg(long, value_enum, default_value = "both")]
        labelling: LabellingArg,
    },
    /// Genericity of an orbit point and cyclic invariance of the power sums.
    OrbitCheck {
        #[command(flatten)]
        sym: SymArgs,
        /// Comma-separated eigenvalue parameters.
        #[arg(long, default_value = "1,2")]
        mu: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Poisson brackets from a classical r-matrix.
    Poisson {
        #[command(flatten)]
        sym: SymArgs,
        #[arg(long, value_enum)]
        example: Option<Example>,
        #[arg(long, default_value = "0")]
        alpha: String,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Run the acceptance matrix.
    FullSuite {
        /// Comma-separated criterion ids; all when omitted.
        #[arg(long)]
        criteria: Option<String>,
    },
}

fn load(sym: &SymArgs) -> Result<(String, Option<InputFile>), InputError> {
    match &sym.input {
        Some(p) => Ok((p.display().to_string(), Some(read_input(p)?))),
        None if sym.big_n == 0 => Err(InputError("--N must be positive".into())),
        None => Ok((format!("dj N={}", sym.big_n), None)),
    }
}

fn symmetry(sym: &SymArgs) -> Result<(String, Result<HeckeSymmetry, CoreError>), InputError> {
    let (label, input) = load(sym)?;
    Ok(match input {
        Some(f) => (label, input_symmetry(&f)),
        None => (label, Ok(HeckeSymmetry::dj(sym.big_n))),
    })
}

fn list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, InputError> {
    s.split(',').map(|x| x.trim().parse().map_err(|_| InputError(format!("bad {what} {x:?}")))).collect()
}

fn usage(e: impl std::fmt::Display) -> InputError {
    InputError(e.to_string())
}

/// Run `f` on a valid symmetry, or report the construction failure.
fn with_symmetry(check: &str, sym: &SymArgs, f: impl FnOnce(&str, &HeckeSymmetry) -> Vec<CheckReport>) -> Result<Vec<CheckReport>, InputError> {
    let (label, s) = symmetry(sym)?;
    Ok(match s {
        Ok(s) => f(&label, &s),
        Err(e) => vec![CheckReport::new(check, label).fail(e.to_string())],
    })
}

fn run(cmd: &Command) -> Result<Vec<CheckReport>, InputError> {
    match cmd {
        Command::BuildHecke { family, big_n, alpha, beta, blocks, save } => {
            let (label, s) = match family {
                Family::Dj if *big_n == 0 => return Err(InputError("--N must be positive".into())),
                Family::Dj => (format!("dj N={big_n}"), Ok(HeckeSymmetry::dj(*big_n))),
                Family::Cg3 => {
                    (format!("cg3 alpha={alpha} beta={beta}"), HeckeSymmetry::cremmer_gervais3(&scalar(alpha)?, &scalar(beta)?))
                }
                Family::Glue => {
                    let steps = glue_steps_inline(blocks, alpha)?;
                    (format!("glue {}", chain_label(&steps)), chain_build(&steps).map(|c| c.top().clone()))
                }
            };
            if let (Some(path), Ok(s)) = (save, &s) {
                let text = serde_json::to_string_pretty(&Bundle::from_symmetry(s)).expect("bundle serializes");
                fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            }
            Ok(vec![checks::build_hecke(&label, &s)])
        }
        Command::Validate { sym, q_samples, seed } => {
            let (label, input) = load(sym)?;
            let m = match input {
                Some(f) => input_matrix(&f)?,
                None => HeckeSymmetry::dj(sym.big_n).r().clone(),
            };
            Ok(vec![checks::validate(&label, &m, *q_samples, *seed)])
        }
        Command::SkewInverse { sym } => {
            let (label, s) = symmetry(sym)?;
            Ok(vec![checks::skew_inverse(&label, &s)])
        }
        Command::Centrality { sym, k, max_deg, generator } => {
            let gen = match generator {
                Some(g) => {
                    let ij: Vec<usize> = list(g, "generator index")?;
                    match ij[..] {
                        [i, j] if i >= 1 && j >= 1 => Some((i, j)),
                        _ => return Err(InputError(format!("--generator expects i,j (1-based), got {g:?}"))),
                    }
                }
                None => None,
            };
            with_symmetry("centrality", sym, |label, s| match gen {
                Some((i, j)) if i > s.n() || j > s.n() => {
                    vec![CheckReport::new("centrality", label).fail(format!("generator l{i}{j} outside N={}", s.n()))]
                }
                Some((i, j)) => vec![checks::centrality(label, s, &NCPoly::gen(s.n(), i - 1, j - 1), &format!("l{i}{j}"), *max_deg)],
                None => (1..=*k).map(|k| checks::centrality(label, s, &power_sum(s, k), &format!("p{k}"), *max_deg)).collect(),
            })
        }
        Command::CayleyHamilton { sym, m, max_deg } => {
            with_symmetry("cayley-hamilton", sym, |label, s| vec![checks::cayley_hamilton(label, s, m.unwrap_or(s.n()), *max_deg)])
        }
        Command::Newton { m, k } => Ok(checks::newton(*m, *k)),
        Command::Characters { big_n, n, k } => {
            if *big_n == 0 || *n == 0 || *k == 0 {
                return Err(InputError("--N, --n and --k must be positive".into()));
            }
            Ok((1..=*n).flat_map(|n| checks::characters(*big_n, n, *k)).collect())
        }
        Command::RepCheck { big_n, n } => {
            if *big_n == 0 || *n == 0 {
                return Err(InputError("--N and --n must be positive".into()));
            }
            Ok(checks::rep_check(*big_n, *n))
        }
        Command::GzSpectrum { input, blocks, alpha, shapes, powers, labelling } => {
            let (label, chain): (String, ChainData) = match input {
                Some(p) => {
                    let f = read_input(p)?;
                    let c = input_chain(&f)?;
                    (chain_label(&c.steps), c)
                }
                None => {
                    let steps = glue_steps_inline(blocks, alpha)?;
                    (chain_label(&steps), chain_build(&steps).map_err(usage)?)
                }
            };
            let shapes: Vec<Vec<usize>> = shapes.split(';').map(|s| list(s, "shape part")).collect::<Result<_, _>>()?;
            let n_max = shapes.iter().map(|s| s.iter().sum::<usize>()).max().unwrap_or(1).max(1);
            let mut out: Vec<CheckReport> = (1..=n_max).map(|n| checks::gz_family(&label, &chain, n, *powers)).collect();
            let labellings = match labelling {
                LabellingArg::Literal => vec![Labelling::Literal],
                LabellingArg::Module => vec![Labelling::Module],
                LabellingArg::Both => vec![Labelling::Literal, Labelling::Module],
            };
            for shape in &shapes {
                for &l in &labellings {
                    out.push(checks::gz_joint(&label, &chain, shape, *powers, l));
                }
            }
            Ok(out)
        }
        Command::OrbitCheck { sym, mu, k } => {
            let mu = mu.split(',').map(|x| scalar(x.trim())).collect::<Result<Vec<_>, _>>()?;
            let mut out = vec![checks::orbit(&mu)];
            out.extend(with_symmetry("orbit.cyclic_invariance", sym, |label, s| (1..=*k).map(|k| checks::cyclic(label, s, k)).collect())?);
            Ok(out)
        }
        Command::Poisson { sym, example, alpha, k } => match example {
            Some(Example::Gl2) => Ok(checks::poisson(&format!("gl2 alpha={alpha}"), checks::gl2_example(&scalar(alpha)?), *k)),
            None => {
                let (label, s) = symmetry(sym)?;
                Ok(checks::poisson(&label, s.and_then(|s| ClassicalR::from_symmetry(&s)), *k))
            }
        },
        Command::FullSuite { criteria } => {
            let ids: Vec<u8> = match criteria {
                Some(c) => list(c, "criterion id")?,
                None => suite::CRITERIA.iter().map(|c| c.0).collect(),
            };
            if let Some(bad) = ids.iter().find(|&&i| !(1..=12).contains(&i)) {
                return Err(InputError(format!("criterion {bad} outside 1..=12")));
            }
            Ok(ids
                .iter()
                .flat_map(|&id| {
                    let c = suite::run(id);
                    let status = if c.checks_passed() { "pass" } else { "fail" };
                    let summary = CheckReport::new("criterion", format!("{} {}", c.id, c.title))
                        .detail("checks", c.reports.len())
                        .detail("not_passing", c.failing().map(|r| r.check.clone()).collect::<Vec<_>>());
                    let summary =
                        if status == "pass" { summary } else { summary.fail(json!({"criterion": c.id, "first": c.failing().next().map(|r| r.inputs.clone())})) };
                    c.reports.into_iter().chain([summary])
                })
                .collect())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    let reports = match std::panic::catch_unwind(|| timed(cli.timings, || run(&cli.command))) {
        Ok(Ok(r)) => r,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE);
        }
        Err(_) => return ExitCode::from(USAGE),
    };
    let text: String = reports.iter().map(|r| r.to_json_line() + "\n").collect();
    match &cli.out {
        Some(p) => {
            if let Err(e) = fs::write(p, &text) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(USAGE);
            }
        }
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
    }
    ExitCode::from(exit_code(&reports) as u8)
}
