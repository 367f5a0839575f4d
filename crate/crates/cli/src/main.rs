mod report;
mod spec;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use hecke_core::analysis::{analyze_pair, AnalysisOptions};
use hecke_core::axb::{
    hecke_witness_141, in_hp, prop142_witness, star_fuzz, star_solve, AxbElement, PrimeSet, FUZZ_BOUND,
};
use hecke_core::corpus::corpus_groups;
use hecke_core::{ArithError, Error, DEFAULT_MAX_ORDER};

use report::{render_corpus_text, render_text, to_json, AnalysisReport, CorpusClass, CorpusReport, CorpusRow, CorpusTotals};
use spec::GroupSpec;

#[derive(Parser)]
#[command(name = "hecke", version, about = "Exact Hecke algebras of finite group pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one pair (G, H) described by a JSON spec file.
    Analyze {
        spec: PathBuf,
        /// Also write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Run the O(|G|²) quantifier audits.
        #[arg(long)]
        audit_full: bool,
    },
    /// Sweep every builtin group up to an order and all of its subgroups.
    Corpus {
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        audit_full: bool,
    },
    /// The ax+b group over the rationals.
    Axb {
        #[command(subcommand)]
        command: AxbCommand,
    },
}

#[derive(Subcommand)]
enum AxbCommand {
    /// Triple showing that H_P is not subnormal.
    Prop142 {
        #[arg(long, value_parser = parse_primes)]
        primes: PrimeSet,
        #[arg(long)]
        p: i128,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Solve x⁻¹hxk = k'x⁻¹h'x, or fuzz the solver when h and k are omitted.
    Star {
        #[arg(long, value_parser = parse_primes, default_value = "2")]
        primes: PrimeSet,
        #[arg(long)]
        x: Option<AxbElement>,
        #[arg(long)]
        h: Option<AxbElement>,
        #[arg(long)]
        k: Option<AxbElement>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Sample the kernel of reduction mod q inside H_P ∩ H_P^{x⁻¹}.
    Hecke {
        #[arg(long, value_parser = parse_primes, default_value = "2")]
        primes: PrimeSet,
        #[arg(long)]
        x: AxbElement,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn parse_primes(s: &str) -> Result<PrimeSet, String> {
    let ps = s
        .split(',')
        .map(|t| t.trim().parse::<i128>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    PrimeSet::new(&ps).map_err(|e| e.to_string())
}

enum Failure {
    Error(Error),
    Contradiction(Vec<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Error(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::Arith(ArithError::Overflow) => 4,
        Error::Contradiction(_) => 5,
        _ => 3,
    }
}

fn max_order() -> Result<usize, Error> {
    match std::env::var("HECKE_MAX_ORDER") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("HECKE_MAX_ORDER={v:?} is not a number"))),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn write_json(path: Option<&Path>, json: &str) -> Result<(), Error> {
    if let Some(p) = path {
        std::fs::write(p, json).map_err(|e| Error::Parse(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn emit<T: Serialize>(value: &T, path: Option<&Path>) -> Result<(), Error> {
    let json = to_json(value);
    write_json(path, &json)?;
    print!("{}", render_text(&json));
    Ok(())
}

fn analyze(spec: &Path, json: Option<&Path>, audit_full: bool) -> Result<(), Failure> {
    let loaded = GroupSpec::read(spec)?.load(max_order()?)?;
    let opts = AnalysisOptions { audit_full, normal_subgroup: loaded.normal_subgroup.clone() };
    let a = analyze_pair(&loaded.group, &loaded.subgroup, &opts)?;
    let report = AnalysisReport::new(&loaded.description, &loaded.group, &a, audit_full);
    emit(&report, json)?;
    if report.contradictions.is_empty() {
        Ok(())
    } else {
        Err(Failure::Contradiction(report.contradictions))
    }
}

fn corpus(max: usize, json_out: Option<&Path>, audit_full: bool) -> Result<(), Failure> {
    let cap = max_order()?;
    if max > cap {
        return Err(Error::OrderCapExceeded { cap }.into());
    }
    let opts = AnalysisOptions { audit_full, normal_subgroup: None };
    let mut rows = Vec::new();
    let mut by_group = Vec::new();
    let mut contradictions = Vec::new();
    for c in corpus_groups(max)? {
        let name = c.family.to_string();
        let mut totals = CorpusTotals::default();
        for h in &c.subgroups {
            let a = analyze_pair(&c.group, h, &opts)?;
            contradictions.extend(a.contradictions().into_iter().map(|m| format!("{name} H={:?}: {m}", h.elements())));
            let row = CorpusRow::new(&name, &a);
            totals.add(&row);
            rows.push(row);
        }
        by_group.push(CorpusClass { group: name, totals });
    }
    let mut totals = CorpusTotals::default();
    rows.iter().for_each(|r| totals.add(r));
    let report = CorpusReport {
        schema: report::SCHEMA,
        toolkit_version: report::VERSION,
        max_order: max,
        totals,
        by_group,
        pairs: rows,
        contradictions: contradictions.clone(),
        note: report::CORPUS_NOTE,
    };
    let json = to_json(&report);
    write_json(json_out, &json)?;
    print!("{}", render_corpus_text(&json));
    if contradictions.is_empty() {
        Ok(())
    } else {
        Err(Failure::Contradiction(contradictions))
    }
}

#[derive(Serialize)]
struct AxbReport<T: Serialize> {
    schema: &'static str,
    toolkit_version: &'static str,
    command: &'static str,
    primes: Vec<String>,
    seed: Option<u64>,
    result: T,
}

fn axb_report<T: Serialize>(command: &'static str, primes: &PrimeSet, seed: Option<u64>, result: T) -> AxbReport<T> {
    AxbReport {
        schema: report::SCHEMA,
        toolkit_version: report::VERSION,
        command,
        primes: primes.primes().iter().map(|p| p.to_string()).collect(),
        seed,
        result,
    }
}

fn el(e: &AxbElement) -> [String; 2] {
    [e.b().to_string(), e.a().to_string()]
}

#[derive(Serialize)]
struct Prop142Out {
    x: [String; 2],
    h: [String; 2],
    k: [String; 2],
    result: [String; 2],
    result_in_hp: bool,
    certifies_not_subnormal: bool,
}

#[derive(Serialize)]
struct StarOut {
    x: [String; 2],
    h: [String; 2],
    k: [String; 2],
    h_prime: Option<[String; 2]>,
    k_prime: Option<[String; 2]>,
    identity_holds: bool,
    membership_holds: bool,
    message: Option<String>,
}

#[derive(Serialize)]
struct StarFuzzOut {
    samples: usize,
    passed: usize,
    bound: String,
    first_failure: Option<String>,
}

#[derive(Serialize)]
struct HeckeOut {
    x: [String; 2],
    q: String,
    index_bound: String,
    samples: usize,
    passed: usize,
    redrawn: usize,
    reduction_is_homomorphism: bool,
}

fn is_two(p: &PrimeSet) -> bool {
    p.primes() == [2]
}

fn axb(cmd: &AxbCommand) -> Result<(), Failure> {
    match cmd {
        AxbCommand::Prop142 { primes, p, json } => {
            let w = prop142_witness(primes, *p)?;
            let out = Prop142Out {
                x: el(&w.x),
                h: el(&w.h),
                k: el(&w.k),
                result: el(&w.result),
                result_in_hp: w.result_in_hp,
                certifies_not_subnormal: w.certifies(),
            };
            emit(&axb_report("prop142", primes, None, out), json.as_deref())?;
            if !w.certifies() {
                return Err(Failure::Contradiction(vec!["witness lands in H_P".into()]));
            }
            Ok(())
        }
        AxbCommand::Star { primes, x, h, k, seed, samples, json } => match (h, k) {
            (Some(h), Some(k)) => {
                let x = x.unwrap_or_else(AxbElement::identity);
                for (name, e) in [("h", h), ("k", k)] {
                    if !in_hp(e, primes) {
                        return Err(Error::Membership(format!("{name} = {e} is not in H_P")).into());
                    }
                }
                let (out, failure) = match star_solve(primes, &x, h, k) {
                    Ok(s) => (
                        StarOut {
                            x: el(&x),
                            h: el(h),
                            k: el(k),
                            h_prime: Some(el(&s.h_prime)),
                            k_prime: Some(el(&s.k_prime)),
                            identity_holds: s.identity_holds,
                            membership_holds: true,
                            message: None,
                        },
                        (!s.identity_holds).then(|| "identity x⁻¹hxk = k'x⁻¹h'x fails".to_string()),
                    ),
                    Err(Error::Membership(m)) => (
                        StarOut {
                            x: el(&x),
                            h: el(h),
                            k: el(k),
                            h_prime: None,
                            k_prime: None,
                            identity_holds: false,
                            membership_holds: false,
                            message: Some(m.clone()),
                        },
                        Some(m),
                    ),
                    Err(e) => return Err(e.into()),
                };
                emit(&axb_report("star", primes, None, out), json.as_deref())?;
                match failure {
                    None => Ok(()),
                    Some(m) if is_two(primes) => Err(Failure::Contradiction(vec![m])),
                    Some(m) => Err(Error::Membership(m).into()),
                }
            }
            (None, None) => {
                let r = star_fuzz(primes, *seed, *samples);
                let out = StarFuzzOut {
                    samples: r.samples,
                    passed: r.passed,
                    bound: FUZZ_BOUND.to_string(),
                    first_failure: r.failure.as_ref().map(|(i, m)| format!("sample {i}: {m}")),
                };
                emit(&axb_report("star", primes, Some(*seed), out), json.as_deref())?;
                match r.failure {
                    None => Ok(()),
                    Some((_, m)) if is_two(primes) => Err(Failure::Contradiction(vec![m])),
                    Some((_, m)) => Err(Error::Membership(m).into()),
                }
            }
            _ => Err(Error::Parse("give both --h and --k, or neither to fuzz".into()).into()),
        },
        AxbCommand::Hecke { primes, x, samples, seed, json } => {
            let r = hecke_witness_141(x, primes, *samples, *seed)?;
            let out = HeckeOut {
                x: el(x),
                q: r.q.to_string(),
                index_bound: r.index_bound.to_string(),
                samples: r.samples,
                passed: r.passed,
                redrawn: r.redrawn,
                reduction_is_homomorphism: r.reduction_is_homomorphism,
            };
            emit(&axb_report("hecke", primes, Some(*seed), out), json.as_deref())?;
            if r.holds() {
                Ok(())
            } else {
                Err(Failure::Contradiction(vec![format!("{} of {} kernel samples fail", r.samples - r.passed, r.samples)]))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Analyze { spec, json, audit_full } => analyze(spec, json.as_deref(), *audit_full),
        Command::Corpus { max_order, json, audit_full } => corpus(*max_order, json.as_deref(), *audit_full),
        Command::Axb { command } => axb(command),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Contradiction(ms)) => {
            for m in ms {
                eprintln!("contradiction: {m}");
            }
            ExitCode::from(5)
        }
    }
}
