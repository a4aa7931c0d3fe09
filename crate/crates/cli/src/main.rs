use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use revsynth::analysis::{
    ckswap_parity_formula, embedded_parity, independence_check, parity_vector, Independence,
};
use revsynth::format::{
    parse_netlist, parse_permutation, write_netlist, write_permutation, write_truth_table,
};
use revsynth::perm::{sample_permutation, SampleKind};
use revsynth::{
    even, fredkin, toffoli, verify_realizes, Backend, Circuit, Gate, Parity, Permutation,
    SynthesisReport,
};

/// Reversible circuit synthesis from permutation specifications.
#[derive(Parser)]
#[command(name = "revsynth", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a netlist for a permutation and verify it.
    Synth(SynthArgs),
    /// Check a netlist against a permutation.
    Verify {
        netlist: PathBuf,
        spec: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Parity-vector and embedding-parity checks.
    Analyze {
        #[command(subcommand)]
        what: Analysis,
    },
    /// Draw a random permutation.
    Sample {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Kind::Any)]
        kind: Kind,
        /// Write a truth table instead of the `perm` form.
        #[arg(long)]
        truth_table: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("backend").required(true))]
struct SynthArgs {
    spec: PathBuf,
    #[arg(long, group = "backend")]
    general: bool,
    #[arg(long, group = "backend")]
    even: bool,
    #[arg(long, group = "backend")]
    conservative: bool,
    /// Netlist destination; without it the netlist goes to stdout and the
    /// report to stderr.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Analysis {
    /// Per-weight-class parities of a conservative gate.
    ParityVector {
        #[arg(
            long,
            value_enum,
            conflicts_with = "spec",
            required_unless_present = "spec"
        )]
        gate: Option<NamedGate>,
        /// Controls for `--gate ckswap`.
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, required_unless_present = "spec")]
        m: Option<u32>,
        /// Permutation file of a conservative gate.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Print the closed form instead of counting class by class.
        #[arg(long)]
        formula: bool,
    },
    /// Whether C^kSWAP's parity vector lies outside the span of the smaller ones.
    Independence {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: u32,
    },
    /// Parity of small gates embedded in a wider register.
    EmbeddedParity {
        #[arg(long)]
        n: u32,
        /// Permutation file of the gate; random gates are drawn otherwise.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        gate_width: u32,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum NamedGate {
    Swap,
    Cswap,
    Ckswap,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Any,
    Even,
    Conservative,
}

/// Failures that map to exit status 1 rather than 2.
#[derive(Debug)]
struct VerificationFailed;

fn read_permutation(path: &Path) -> anyhow::Result<Permutation> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_permutation(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_netlist(path: &Path) -> anyhow::Result<Circuit> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_netlist(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_or_print(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(report: &SynthesisReport, json: bool) -> anyhow::Result<String> {
    Ok(if json {
        serde_json::to_string_pretty(report)? + "\n"
    } else {
        format!("{report}\n")
    })
}

fn synth(args: SynthArgs) -> anyhow::Result<ExitCode> {
    let p = read_permutation(&args.spec)?;
    let (backend, circuit) = if args.general {
        (Backend::General, toffoli::synth_general(&p))
    } else if args.even {
        (Backend::Even, even::synth_even(&p))
    } else {
        (Backend::Conservative, fredkin::synth_conservative(&p))
    };
    let circuit = circuit.with_context(|| format!("{backend} synthesis"))?;
    let mut report = verify_realizes(&circuit, &p)?;
    report.backend = Some(backend);
    let rendered = render(&report, args.json)?;
    if !report.verdict.passed() {
        eprint!("{rendered}");
        return Err(VerificationFailed.into());
    }
    write_or_print(args.out.as_deref(), &write_netlist(&circuit))?;
    if args.out.is_some() {
        print!("{rendered}");
    } else {
        eprint!("{rendered}");
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(netlist: &Path, spec: &Path, json: bool) -> anyhow::Result<ExitCode> {
    let c = read_netlist(netlist)?;
    let p = read_permutation(spec)?;
    let report = verify_realizes(&c, &p)?;
    print!("{}", render(&report, json)?);
    if report.verdict.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        Err(VerificationFailed.into())
    }
}

fn named_gate(gate: NamedGate, k: u32, m: u32) -> anyhow::Result<Permutation> {
    let k = match gate {
        NamedGate::Swap => 0,
        NamedGate::Cswap => 1,
        NamedGate::Ckswap => k,
    } as usize;
    if m as usize > revsynth::perm::MAX_WIDTH as usize || k + 2 > m as usize {
        bail!("C^{k}SWAP does not fit on {m} lines");
    }
    let controls: Vec<usize> = (0..k).collect();
    let g = Gate::ckswap(&controls, k, k + 1);
    Ok(Permutation::from_fn(m, |s| g.apply(s, m as usize))?)
}

fn analyze(what: Analysis) -> anyhow::Result<ExitCode> {
    match what {
        Analysis::ParityVector {
            gate,
            k,
            m,
            spec,
            formula,
        } => {
            let vector = match (gate, spec) {
                (Some(gate), _) => {
                    let m = m.context("--m is required with --gate")?;
                    if formula {
                        let k = match gate {
                            NamedGate::Swap => 0,
                            NamedGate::Cswap => 1,
                            NamedGate::Ckswap => k,
                        };
                        ckswap_parity_formula(k, m)?
                    } else {
                        parity_vector(&named_gate(gate, k, m)?)?
                    }
                }
                (None, Some(spec)) => parity_vector(&read_permutation(&spec)?)?,
                (None, None) => bail!("give --gate or --spec"),
            };
            println!("{vector}");
        }
        Analysis::Independence { k, m } => match independence_check(k, m)? {
            Independence::Independent { coordinate } => {
                println!("independent");
                println!("coordinate {coordinate}");
            }
            Independence::Dependent { coefficients } => {
                println!("dependent");
                let c: Vec<String> = coefficients.iter().map(u8::to_string).collect();
                println!("coefficients {}", c.join(" "));
            }
        },
        Analysis::EmbeddedParity {
            n,
            spec,
            gate_width,
            count,
            seed,
        } => {
            if let Some(spec) = spec {
                println!("{}", embedded_parity(&read_permutation(&spec)?, n)?);
                return Ok(ExitCode::SUCCESS);
            }
            let mut odd = 0;
            for i in 0..count {
                let g = sample_permutation(gate_width, SampleKind::Any, seed.wrapping_add(i))?;
                if embedded_parity(&g, n)? == Parity::Odd {
                    odd += 1;
                }
            }
            if odd == 0 {
                println!("all even");
            } else {
                println!("odd {odd} of {count}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Synth(args) => synth(args),
        Command::Verify {
            netlist,
            spec,
            json,
        } => verify(&netlist, &spec, json),
        Command::Analyze { what } => analyze(what),
        Command::Sample {
            n,
            seed,
            kind,
            truth_table,
            out,
        } => {
            let kind = match kind {
                Kind::Any => SampleKind::Any,
                Kind::Even => SampleKind::Even,
                Kind::Conservative => SampleKind::Conservative,
            };
            let p = sample_permutation(n, kind, seed)?;
            let text = if truth_table {
                write_truth_table(&p)
            } else {
                write_permutation(&p)
            };
            write_or_print(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) if e.is::<VerificationFailed>() => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for VerificationFailed {}
