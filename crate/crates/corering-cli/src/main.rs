//! Command-line driver: compute and verify generalized inverses, check
//! forward-order laws on given elements, classify elements or whole
//! carriers, and mine finite carriers for counterexamples.
//!
//! Exit codes (scripts branch on these):
//!   0  success; law/verification holds (or is vacuous); clean mine
//!   1  parse, spec, or carrier errors (including invalid weights)
//!   2  requested inverse does not exist (machine-readable reason)
//!   3  law counterexample / equivalence failure / verification failure
//!   4  mining budget exceeded (partial report written)

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use corering::carrier::{CarrierSpec, Involution, RingElement, ScalarDomain};
use corering::error::Error;
use corering::format::{element_to_json, parse_element_text};
use corering::geninv::{
    characterize_core, classify_element, compute_core, compute_drazin, compute_group, compute_mp,
    compute_one_three, compute_weighted_core, verify_inverse, InverseKind, InverseResult,
};
use corering::laws::{check_law, CheckMode, DirectProvider, LawId, LawStatus};
use corering::search::{
    classify_carrier, mine, report_to_csv, report_to_json, JobTask, MiningJob, MiningMode,
    MiningOutput,
};
use corering::Limits;

#[derive(Parser)]
#[command(
    name = "corering",
    version,
    about = "Exact generalized inverses and forward-order-law checking in *-rings"
)]
struct Cli {
    /// Optional JSON config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Enumeration bound for finite carriers.
    #[arg(long, global = true)]
    bound: Option<u64>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Write the primary report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Mp,
    OneThree,
    Group,
    Drazin,
    Core,
    WeightedCore,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InvolutionArg {
    Auto,
    Transpose,
    ConjugateTranspose,
    Identity,
}

impl InvolutionArg {
    fn resolve(self) -> Option<Involution> {
        match self {
            InvolutionArg::Auto => None,
            InvolutionArg::Transpose => Some(Involution::Transpose),
            InvolutionArg::ConjugateTranspose => Some(Involution::ConjugateTranspose),
            InvolutionArg::Identity => Some(Involution::Identity),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DomainArg {
    Q,
    Qi,
    Zn,
}

#[derive(Args)]
struct CarrierArgs {
    #[arg(long, value_enum)]
    domain: DomainArg,
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    modulus: Option<u64>,
    #[arg(long, value_enum, default_value = "auto")]
    involution: InvolutionArg,
}

impl CarrierArgs {
    fn build(&self) -> Result<CarrierSpec, Error> {
        let domain = match self.domain {
            DomainArg::Q => ScalarDomain::Rational,
            DomainArg::Qi => ScalarDomain::GaussianRational,
            DomainArg::Zn => ScalarDomain::IntegersModN,
        };
        let involution = self.involution.resolve().unwrap_or(match domain {
            ScalarDomain::Rational => Involution::Transpose,
            ScalarDomain::GaussianRational => Involution::ConjugateTranspose,
            ScalarDomain::IntegersModN => {
                if self.dim == 1 {
                    Involution::Identity
                } else {
                    Involution::Transpose
                }
            }
        });
        CarrierSpec::new(domain, self.dim, self.modulus, involution)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a generalized inverse of the input element.
    Compute {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Weight element file (weighted-core only).
        #[arg(long)]
        weight: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "auto")]
        involution: InvolutionArg,
        /// Element file, or `-` for stdin.
        input: PathBuf,
    },
    /// Verify the defining equations of an inverse kind for (a, x).
    Verify {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Claimed Drazin index (drazin only).
        #[arg(long)]
        index: Option<u32>,
        #[arg(long)]
        weight: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "auto")]
        involution: InvolutionArg,
        a: PathBuf,
        x: PathBuf,
    },
    /// Classify one element, or summarize a whole finite carrier.
    Classify {
        /// Element file; omit to classify a carrier given by flags.
        #[arg(long)]
        element: Option<PathBuf>,
        /// Also report the eight-way core characterization (element mode).
        #[arg(long)]
        characterize: bool,
        #[arg(long, value_enum)]
        domain: Option<DomainArg>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        modulus: Option<u64>,
        #[arg(long, value_enum, default_value = "auto")]
        involution: InvolutionArg,
    },
    /// Check one law on explicit elements; exit 3 on a counterexample.
    Law {
        /// Law id: lemma21, thm32, thm33, thm34, thm35, remark36,
        /// thm39, weighted, hybrid.
        #[arg(long)]
        id: String,
        /// Weight element file (weighted law only).
        #[arg(long)]
        weight: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "auto")]
        involution: InvolutionArg,
        /// Two element files (a, b) — or (a, x) for lemma21.
        inputs: Vec<PathBuf>,
    },
    /// Scan a finite carrier: run one law over every input tuple, or
    /// classify every element.
    Mine {
        #[command(flatten)]
        carrier: CarrierArgs,
        /// Law id to mine; use --classify for a distribution report.
        #[arg(long, conflicts_with = "classify")]
        law: Option<String>,
        #[arg(long)]
        classify: bool,
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        /// Seed for random mode (required there; no wall-clock default).
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<u64>,
        /// Comma-separated hypothesis indices to suppress.
        #[arg(long)]
        mask: Option<String>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        max_inputs: Option<u64>,
        #[arg(long)]
        time_limit_ms: Option<u64>,
    },
}

#[derive(Deserialize, Default)]
struct CliConfig {
    enumeration_bound: Option<u64>,
    worker_count: Option<usize>,
    output_format: Option<String>,
    seed: Option<u64>,
    report_path: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Keep clap's message but normalize the exit code: 2 is
            // reserved for inverse nonexistence.
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            let payload = json!({
                "error": error_tag(&err),
                "reason": err.to_string(),
            });
            println!("{payload}");
            ExitCode::from(error_exit_code(&err))
        }
    }
}

fn error_tag(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch { .. } => "dimension-mismatch",
        Error::NonCanonicalScalar(_) => "non-canonical-scalar",
        Error::ModulusOutOfRange => "modulus-out-of-range",
        Error::InvalidInvolution(_) => "invalid-involution",
        Error::SpecMismatch => "spec-mismatch",
        Error::InfiniteCarrier => "infinite-carrier",
        Error::CarrierTooLarge { .. } => "carrier-too-large",
        Error::NotCoreInvertible(_) => "not-core-invertible",
        Error::NotMpInvertible => "not-mp-invertible",
        Error::NoOneThreeInverse => "no-one-three-inverse",
        Error::NotGroupInvertible(_) => "not-group-invertible",
        Error::NotDrazinInvertible => "not-drazin-invertible",
        Error::NotWeightedCoreInvertible(_) => "not-weighted-core-invertible",
        Error::InvalidWeight(_) => "invalid-weight",
        Error::NotIdempotent => "not-idempotent",
        Error::Parse(_) => "parse-error",
    }
}

fn error_exit_code(e: &Error) -> u8 {
    match e {
        Error::NotCoreInvertible(_)
        | Error::NotMpInvertible
        | Error::NoOneThreeInverse
        | Error::NotGroupInvertible(_)
        | Error::NotDrazinInvertible
        | Error::NotWeightedCoreInvertible(_) => 2,
        _ => 1,
    }
}

fn read_input(path: &PathBuf) -> Result<String, Error> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

/// Element files hold either the text format or canonical JSON.
fn load_element(path: &PathBuf, involution: Option<Involution>) -> Result<RingElement, Error> {
    let content = read_input(path)?;
    let trimmed = content.trim_start();
    if trimmed.starts_with('{') {
        corering::format::element_from_json(trimmed)
    } else {
        parse_element_text(&content, involution)
    }
}

fn emit(cli_out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match cli_out {
        Some(path) => {
            fs::write(path, content).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let config: CliConfig = match &cli.config {
        Some(path) => serde_json::from_str(&read_input(path)?)
            .map_err(|e| Error::Parse(format!("config: {e}")))?,
        None => CliConfig::default(),
    };
    let mut limits = Limits::default();
    if let Some(bound) = cli.bound.or(config.enumeration_bound) {
        if bound == 0 {
            return Err(Error::Parse("bound must be >= 1".into()));
        }
        limits.enumeration_bound = bound;
    }
    let format = cli.format.or_else(|| {
        config.output_format.as_deref().and_then(|s| match s {
            "json" => Some(OutputFormat::Json),
            "text" => Some(OutputFormat::Text),
            "csv" => Some(OutputFormat::Csv),
            _ => None,
        })
    });
    let out_path = cli.out.clone().or(config.report_path);

    match cli.cmd {
        Cmd::Compute {
            kind,
            weight,
            involution,
            input,
        } => {
            let a = load_element(&input, involution.resolve())?;
            let result = match kind {
                KindArg::Mp => compute_mp(&a, &limits)?,
                KindArg::OneThree => compute_one_three(&a, &limits)?,
                KindArg::Group => compute_group(&a, &limits)?,
                KindArg::Drazin => compute_drazin(&a, &limits)?,
                KindArg::Core => compute_core(&a, &limits)?,
                KindArg::WeightedCore => {
                    let weight_path = weight.ok_or_else(|| {
                        Error::Parse("--weight is required for weighted-core".into())
                    })?;
                    let e = load_element(&weight_path, involution.resolve())?;
                    compute_weighted_core(&a, &e, &limits)?
                }
            };
            let rendered = render_inverse(&result, format);
            emit(&out_path, &rendered)?;
            Ok(0)
        }
        Cmd::Verify {
            kind,
            index,
            weight,
            involution,
            a,
            x,
        } => {
            let a = load_element(&a, involution.resolve())?;
            let x = load_element(&x, involution.resolve())?;
            let kind = match kind {
                KindArg::Mp => InverseKind::MoorePenrose,
                KindArg::OneThree => InverseKind::OneThree,
                KindArg::Group => InverseKind::Group,
                KindArg::Drazin => InverseKind::Drazin {
                    index: index.ok_or_else(|| {
                        Error::Parse("--index is required for drazin verification".into())
                    })?,
                },
                KindArg::Core => InverseKind::Core,
                KindArg::WeightedCore => {
                    let weight_path = weight.ok_or_else(|| {
                        Error::Parse("--weight is required for weighted-core".into())
                    })?;
                    InverseKind::weighted_core(load_element(&weight_path, involution.resolve())?)?
                }
            };
            let trace = verify_inverse(&a, &x, &kind)?;
            let passed = trace.passed();
            let rendered = match format {
                Some(OutputFormat::Text) => {
                    let mut s = String::new();
                    for row in &trace.rows {
                        s.push_str(&format!(
                            "{} {}: {} vs {}\n",
                            if row.equal { "ok " } else { "FAIL" },
                            row.equation,
                            row.left,
                            row.right
                        ));
                    }
                    s
                }
                _ => report_to_json(&trace),
            };
            emit(&out_path, &rendered)?;
            Ok(if passed { 0 } else { 3 })
        }
        Cmd::Classify {
            element,
            characterize,
            domain,
            dim,
            modulus,
            involution,
        } => match element {
            Some(path) => {
                let a = load_element(&path, involution.resolve())?;
                let class = classify_element(&a, &limits)?;
                let payload = if characterize {
                    json!({
                        "element": a,
                        "class": class,
                        "characterization": characterize_core(&a, &limits)?,
                    })
                } else {
                    json!({ "element": a, "class": class })
                };
                emit(&out_path, &report_to_json(&payload))?;
                Ok(0)
            }
            None => {
                let args = CarrierArgs {
                    domain: domain.ok_or_else(|| {
                        Error::Parse("classify needs --element or --domain/--dim".into())
                    })?,
                    dim: dim.ok_or_else(|| Error::Parse("missing --dim".into()))?,
                    modulus,
                    involution,
                };
                let spec = args.build()?;
                let report = classify_carrier(&spec, &limits)?;
                emit(&out_path, &report_to_json(&report))?;
                Ok(0)
            }
        },
        Cmd::Law {
            id,
            weight,
            involution,
            inputs,
        } => {
            let law = LawId::parse(&id)?;
            if inputs.len() != 2 {
                return Err(Error::Parse(format!(
                    "law takes exactly two element files, got {}",
                    inputs.len()
                )));
            }
            let a = load_element(&inputs[0], involution.resolve())?;
            let b = load_element(&inputs[1], involution.resolve())?;
            let mut elems = vec![a, b];
            if law == LawId::Thm310Weighted {
                let weight_path = weight.ok_or_else(|| {
                    Error::Parse("--weight is required for the weighted law".into())
                })?;
                elems.push(load_element(&weight_path, involution.resolve())?);
            }
            let provider = DirectProvider { limits: &limits };
            let verdict = check_law(law, &elems, CheckMode::Direct, &provider, &limits)?;
            emit(&out_path, &report_to_json(&verdict))?;
            Ok(match verdict.status {
                LawStatus::Counterexample | LawStatus::EquivalenceFails => 3,
                _ => 0,
            })
        }
        Cmd::Mine {
            carrier,
            law,
            classify,
            mode,
            seed,
            samples,
            mask,
            workers,
            max_inputs,
            time_limit_ms,
        } => {
            let spec = carrier.build()?;
            let task = if classify {
                JobTask::Classify
            } else {
                let law_name =
                    law.ok_or_else(|| Error::Parse("mine needs --law or --classify".into()))?;
                JobTask::Law {
                    law: LawId::parse(&law_name)?,
                }
            };
            let mode = match mode.as_str() {
                "exhaustive" => MiningMode::Exhaustive,
                "random" => MiningMode::Random {
                    seed: seed.or(config.seed).ok_or_else(|| {
                        Error::Parse("random mode requires an explicit --seed".into())
                    })?,
                    samples: samples
                        .ok_or_else(|| Error::Parse("random mode requires --samples".into()))?,
                },
                other => return Err(Error::Parse(format!("unknown mode `{other}`"))),
            };
            let hypothesis_mask = match mask {
                None => Vec::new(),
                Some(spec_str) => spec_str
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad mask index `{t}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            };
            let job = MiningJob {
                carrier: spec,
                task,
                mode,
                hypothesis_mask,
                max_inputs,
                time_limit_ms,
                workers: workers.or(config.worker_count).unwrap_or(1),
                limits: limits.clone(),
            };
            let output = mine(&job)?;
            let rendered = match (&output, format) {
                (MiningOutput::Law(rep), Some(OutputFormat::Csv)) => report_to_csv(rep),
                _ => report_to_json(&output),
            };
            emit(&out_path, &rendered)?;
            Ok(match &output {
                MiningOutput::Classify(_) => 0,
                MiningOutput::Law(rep) => {
                    if rep.totals.counterexamples > 0 {
                        3
                    } else if rep.partial {
                        4
                    } else {
                        0
                    }
                }
            })
        }
    }
}

fn render_inverse(result: &InverseResult, format: Option<OutputFormat>) -> String {
    match format {
        Some(OutputFormat::Text) => {
            let mut s = format!("{}\n", result.value);
            if let Some(k) = result.index {
                s.push_str(&format!("index: {k}\n"));
            }
            for row in &result.trace.rows {
                s.push_str(&format!(
                    "{} {}: {} vs {}\n",
                    if row.equal { "ok " } else { "FAIL" },
                    row.equation,
                    row.left,
                    row.right
                ));
            }
            s
        }
        _ => {
            // JSON: the result plus the canonical single-line element
            // form for scripting.
            let weight = match &result.kind {
                InverseKind::WeightedCore { weight } => Some(weight.clone()),
                _ => None,
            };
            let payload = json!({
                "kind": result.kind.name(),
                "weight": weight,
                "value": result.value,
                "value_canonical": element_to_json(&result.value),
                "index": result.index,
                "trace": result.trace,
            });
            report_to_json(&payload)
        }
    }
}
