use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use reeslab::complex::alexander_dual;
use reeslab::constructions::{
    build_delta_chi, build_i_chi, build_l, check_colouring, i_chi_vars, is_polymatroidal, is_weakly_polymatroidal,
    Colouring, OrderedIdeal,
};
use reeslab::corpus::CorpusConfig;
use reeslab::decomp::{is_vertex_decomposable, is_vertex_splittable};
use reeslab::error::Error;
use reeslab::io::{self as rio, ComplexRecord, GraphRecord, IdealRecord, Parsed};
use reeslab::monomial::{Monomial, MonomialIdeal};
use reeslab::normality::{
    analytic_spread, associated_primes, closure_membership, closure_membership_oracle, integral_closure_power,
    is_normal_up_to, persistence_check, strong_persistence_check, verify_ass_set, DEFAULT_BOX_LIMIT, DEFAULT_SMAX,
};
use reeslab::report::{self, digest, NegativeControl, VERSION};
use reeslab::{Graph, SimplicialComplex};

#[derive(Parser)]
#[command(name = "reeslab", version, about = "Exact monomial ideal and simplicial complex computations")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args, Clone)]
struct Flags {
    /// Largest power K checked
    #[arg(long, global = true, default_value_t = 3)]
    max_power: u32,
    /// Largest s tried by the power-membership oracle
    #[arg(long, global = true, default_value_t = DEFAULT_SMAX,
          value_parser = clap::value_parser!(u64).range(1..=u64::from(u32::MAX)))]
    smax: u64,
    /// Cap on lattice points enumerated per box
    #[arg(long, global = true, default_value_t = DEFAULT_BOX_LIMIT)]
    box_limit: u128,
    /// Variable order for wpm, one-based, e.g. 2,1,3
    #[arg(long, global = true, value_delimiter = ',')]
    order: Option<Vec<usize>>,
    /// Colouring file for check-colouring and build-chi
    #[arg(long, global = true)]
    partition: Option<PathBuf>,
    /// Corpus configuration file for verify-corpus
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
    /// Negative-control file for verify-corpus
    #[arg(long, global = true)]
    negative_controls: Option<PathBuf>,
    /// Worker threads
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Verb {
    /// Alexander dual of a squarefree ideal
    Dual { input: PathBuf },
    /// Polarization of an ideal
    Polarize { input: PathBuf },
    /// Cover ideal of a graph
    CoverIdeal { input: PathBuf },
    /// Edge ideal of a graph
    EdgeIdeal { input: PathBuf },
    /// Independence complex of a graph
    IndepComplex { input: PathBuf },
    /// Stanley-Reisner ideal of a complex
    SrIdeal { input: PathBuf },
    /// Vertex decomposability with a shedding tree
    Vd { input: PathBuf },
    /// Vertex splittability with a splitting tree
    Vsplit { input: PathBuf },
    /// Purity of a complex
    Pure { input: PathBuf },
    /// Weak polymatroidality under --order (natural order by default)
    Wpm { input: PathBuf },
    /// Polymatroidality
    Polymatroidal { input: PathBuf },
    /// The squarefree ideal L(I) obtained by polarizing pure powers
    BuildL { input: PathBuf },
    /// Validity of the colouring given by --partition
    CheckColouring { input: PathBuf },
    /// I_χ and Δ_χ for the colouring given by --partition
    BuildChi { input: PathBuf },
    /// Normality up to --max-power
    Normal { input: PathBuf },
    /// Closure membership of --point in the closure of I^k (k = --max-power),
    /// or the closure generators when no point is given
    Closure {
        input: PathBuf,
        /// Exponent vector, e.g. 1,1,0
        #[arg(long, value_delimiter = ',')]
        point: Option<Vec<u64>>,
    },
    /// Associated primes of S/I^k for k = --max-power
    Ass { input: PathBuf },
    /// Persistence of associated primes up to --max-power
    Persistence { input: PathBuf },
    /// Strong persistence up to --max-power
    StrongPersistence { input: PathBuf },
    /// Analytic spread of an equigenerated ideal
    Spread { input: PathBuf },
    /// Graph invariants
    Profile { input: PathBuf },
    /// Run every suite over the generated corpora
    VerifyCorpus,
}

/// Exit status of a single verb.
enum Status {
    Ok,
    Unexpected,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::ResourceLimit { .. }) { 3 } else { 2 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

struct Input {
    bytes: Vec<u8>,
    warnings: Vec<String>,
}

impl Input {
    fn read(path: &Path) -> Result<(Self, String), Failure> {
        let bytes = fs::read(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
        let text = String::from_utf8(bytes.clone()).map_err(|_| input_error(format!("{}: not UTF-8", path.display())))?;
        Ok((Input { bytes, warnings: vec![] }, text))
    }

    fn keep<T>(&mut self, parsed: Parsed<T>) -> T {
        self.warnings.extend(parsed.warnings);
        parsed.value
    }

    fn ideal(path: &Path) -> Result<(Self, MonomialIdeal), Failure> {
        let (mut input, text) = Self::read(path)?;
        let value = rio::parse_ideal(&text)?;
        let ideal = input.keep(value);
        Ok((input, ideal))
    }

    fn graph(path: &Path) -> Result<(Self, Graph), Failure> {
        let (mut input, text) = Self::read(path)?;
        let value = rio::parse_graph(&text)?;
        let g = input.keep(value);
        Ok((input, g))
    }

    fn complex(path: &Path) -> Result<(Self, SimplicialComplex), Failure> {
        let (mut input, text) = Self::read(path)?;
        let value = rio::parse_complex(&text)?;
        let c = input.keep(value);
        Ok((input, c))
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn ideal_value(i: &MonomialIdeal) -> Value {
    json!({ "ideal": IdealRecord::from(i), "text": i.to_string() })
}

fn complex_value(c: &SimplicialComplex) -> Value {
    json!({ "complex": ComplexRecord::from(c), "text": c.display() })
}

fn colouring(flags: &Flags, ideal: &MonomialIdeal) -> Result<(Colouring, Vec<u8>), Failure> {
    let path = flags
        .partition
        .as_ref()
        .ok_or_else(|| input_error("--partition is required"))?;
    let (input, text) = Input::read(path)?;
    Ok((rio::parse_colouring(&text, ideal.vars())?, input.bytes))
}

/// Verdict, payload and extra digest material.
type Outcome = (Status, Value, Vec<u8>);

fn decision(holds: bool, payload: Value) -> Outcome {
    (if holds { Status::Ok } else { Status::Unexpected }, payload, vec![])
}

fn plain(payload: Value) -> Outcome {
    (Status::Ok, payload, vec![])
}

fn dispatch(verb: &Verb, flags: &Flags) -> Result<(Input, Outcome), Failure> {
    let k = flags.max_power;
    Ok(match verb {
        Verb::Dual { input } => {
            let (inp, i) = Input::ideal(input)?;
            (inp, plain(ideal_value(&alexander_dual(&i)?)))
        }
        Verb::Polarize { input } => {
            let (inp, i) = Input::ideal(input)?;
            let p = i.polarize();
            let table: Vec<[usize; 2]> = p.table.iter().map(|&(v, j)| [v + 1, j]).collect();
            (inp, plain(json!({ "polarization": ideal_value(&p.ideal), "table": table })))
        }
        Verb::CoverIdeal { input } => {
            let (inp, g) = Input::graph(input)?;
            (inp, plain(ideal_value(&g.cover_ideal())))
        }
        Verb::EdgeIdeal { input } => {
            let (inp, g) = Input::graph(input)?;
            (inp, plain(ideal_value(&g.edge_ideal())))
        }
        Verb::IndepComplex { input } => {
            let (inp, g) = Input::graph(input)?;
            (inp, plain(complex_value(&g.independence_complex())))
        }
        Verb::SrIdeal { input } => {
            let (inp, c) = Input::complex(input)?;
            (inp, plain(ideal_value(&c.stanley_reisner_ideal()?)))
        }
        Verb::Vd { input } => {
            let (inp, c) = Input::complex(input)?;
            let d = is_vertex_decomposable(&c);
            (inp, decision(d.holds(), to_value(&d)))
        }
        Verb::Vsplit { input } => {
            let (inp, i) = Input::ideal(input)?;
            let d = is_vertex_splittable(&i);
            (inp, decision(d.holds(), to_value(&d)))
        }
        Verb::Pure { input } => {
            let (inp, c) = Input::complex(input)?;
            let pure = c.is_pure()?;
            (inp, decision(pure, json!({ "pure": pure, "dimension": c.dimension() })))
        }
        Verb::Wpm { input } => {
            let (inp, i) = Input::ideal(input)?;
            let oi = match &flags.order {
                Some(order) => {
                    if order.contains(&0) {
                        return Err(input_error("--order is one-based"));
                    }
                    OrderedIdeal::new(i, order.iter().map(|p| p - 1).collect())?
                }
                None => OrderedIdeal::natural(i),
            };
            let d = is_weakly_polymatroidal(&oi);
            (inp, decision(d.holds(), to_value(&d)))
        }
        Verb::Polymatroidal { input } => {
            let (inp, i) = Input::ideal(input)?;
            let d = is_polymatroidal(&i);
            (inp, decision(d.holds(), to_value(&d)))
        }
        Verb::BuildL { input } => {
            let (inp, i) = Input::ideal(input)?;
            (inp, plain(ideal_value(&build_l(&i)?)))
        }
        Verb::CheckColouring { input } => {
            let (inp, i) = Input::ideal(input)?;
            let (chi, extra) = colouring(flags, &i)?;
            let d = check_colouring(&i, &chi)?;
            let (s, v, _) = decision(d.holds(), to_value(&d));
            (inp, (s, v, extra))
        }
        Verb::BuildChi { input } => {
            let (inp, i) = Input::ideal(input)?;
            let (chi, extra) = colouring(flags, &i)?;
            let i_chi = build_i_chi(&i, &chi)?;
            let delta = build_delta_chi(&i, &chi)?;
            let payload = json!({
                "vars": i_chi_vars(&i, &chi),
                "i_chi": ideal_value(&i_chi),
                "delta_chi": complex_value(&delta),
            });
            (inp, (Status::Ok, payload, extra))
        }
        Verb::Normal { input } => {
            let (inp, i) = Input::ideal(input)?;
            let r = is_normal_up_to(&i, k, flags.box_limit)?;
            (inp, decision(r.is_normal(), to_value(&r)))
        }
        Verb::Closure { input, point } => {
            let (inp, i) = Input::ideal(input)?;
            match point {
                Some(p) => {
                    let b = Monomial::new(p.clone());
                    let d = closure_membership(&i, k, &b)?;
                    let oracle = closure_membership_oracle(&i, k, &b, flags.smax)?;
                    let payload = json!({ "k": k, "point": b, "decision": d, "oracle_s": oracle });
                    let mut extra = format!("{p:?}").into_bytes();
                    extra.extend(flags.smax.to_le_bytes());
                    (inp, (if d.holds() { Status::Ok } else { Status::Unexpected }, payload, extra))
                }
                None => {
                    let c = integral_closure_power(&i, k, flags.box_limit)?;
                    (inp, plain(json!({ "k": k, "closure": ideal_value(&c) })))
                }
            }
        }
        Verb::Ass { input } => {
            let (inp, i) = Input::ideal(input)?;
            let ass = associated_primes(&i, k, u64::from(k) + 1, flags.box_limit)?;
            let replayed = verify_ass_set(&i, &ass);
            (inp, plain(json!({ "ass": ass, "replayed": replayed })))
        }
        Verb::Persistence { input } => {
            let (inp, i) = Input::ideal(input)?;
            let d = persistence_check(&i, k, flags.box_limit)?;
            (inp, decision(d.holds(), to_value(&d)))
        }
        Verb::StrongPersistence { input } => {
            let (inp, i) = Input::ideal(input)?;
            let d = strong_persistence_check(&i, k)?;
            (inp, decision(d.holds(), to_value(&d)))
        }
        Verb::Spread { input } => {
            let (inp, i) = Input::ideal(input)?;
            (inp, plain(json!({ "analytic_spread": analytic_spread(&i)? })))
        }
        Verb::Profile { input } => {
            let (inp, g) = Input::graph(input)?;
            let chordality = g.chordality();
            (inp, plain(json!({ "profile": g.profile(), "chordality": chordality, "graph": GraphRecord::from(&g) })))
        }
        Verb::VerifyCorpus => unreachable!("handled separately"),
    })
}

fn verb_name(verb: &Verb) -> &'static str {
    match verb {
        Verb::Dual { .. } => "dual",
        Verb::Polarize { .. } => "polarize",
        Verb::CoverIdeal { .. } => "cover-ideal",
        Verb::EdgeIdeal { .. } => "edge-ideal",
        Verb::IndepComplex { .. } => "indep-complex",
        Verb::SrIdeal { .. } => "sr-ideal",
        Verb::Vd { .. } => "vd",
        Verb::Vsplit { .. } => "vsplit",
        Verb::Pure { .. } => "pure",
        Verb::Wpm { .. } => "wpm",
        Verb::Polymatroidal { .. } => "polymatroidal",
        Verb::BuildL { .. } => "build-l",
        Verb::CheckColouring { .. } => "check-colouring",
        Verb::BuildChi { .. } => "build-chi",
        Verb::Normal { .. } => "normal",
        Verb::Closure { .. } => "closure",
        Verb::Ass { .. } => "ass",
        Verb::Persistence { .. } => "persistence",
        Verb::StrongPersistence { .. } => "strong-persistence",
        Verb::Spread { .. } => "spread",
        Verb::Profile { .. } => "profile",
        Verb::VerifyCorpus => "verify-corpus",
    }
}

fn verify_corpus(flags: &Flags) -> Result<u8, Failure> {
    let mut cfg = match &flags.corpus {
        Some(p) => {
            let (_, text) = Input::read(p)?;
            serde_json::from_str::<CorpusConfig>(&text).map_err(|e| input_error(format!("{}: {e}", p.display())))?
        }
        None => CorpusConfig::default(),
    };
    cfg.max_power = flags.max_power;
    let controls: Vec<NegativeControl> = match &flags.negative_controls {
        Some(p) => {
            let (_, text) = Input::read(p)?;
            serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", p.display())))?
        }
        None => report::default_negative_controls(),
    };
    let report = report::run_verify_corpus(&cfg, &controls);
    let stdout = io::stdout();
    report
        .write_jsonl(stdout.lock())
        .map_err(|e| input_error(format!("writing report: {e}")))?;
    Ok(report.exit_code() as u8)
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    if let Some(t) = cli.flags.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| input_error(e.to_string()))?;
    }
    if let Verb::VerifyCorpus = cli.verb {
        return verify_corpus(&cli.flags);
    }
    let start = Instant::now();
    let (input, (status, payload, extra)) = dispatch(&cli.verb, &cli.flags)?;
    let name = verb_name(&cli.verb);
    let flags = format!("{} {}", cli.flags.max_power, cli.flags.box_limit);
    let order = format!("{:?}", cli.flags.order);
    for w in &input.warnings {
        eprintln!("warning: {w}");
    }
    let record = json!({
        "verb": name,
        "version": VERSION,
        "input_digest": digest(&[name.as_bytes(), &input.bytes, &extra, flags.as_bytes(), order.as_bytes()]),
        "verdict": match status { Status::Ok => "pass", Status::Unexpected => "fail" },
        "result": payload,
        "warnings": input.warnings,
        "timing_ms": start.elapsed().as_millis() as u64,
    });
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, &record).map_err(|e| input_error(e.to_string()))?;
    writeln!(out).map_err(|e| input_error(e.to_string()))?;
    Ok(match status {
        Status::Ok => 0,
        Status::Unexpected => 1,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
