//! `arcsmt`: batch front end. Results go to stdout as JSON lines, diagnostics
//! to stderr. Exit codes: 0 success, 1 falsification, 2 parse or usage error,
//! 3 input outside the invariant subring.

use std::io::{self, BufWriter, Read, Write};
use std::process::ExitCode;

use arcsmt::action::{check_invariance, generators};
use arcsmt::relations::{
    canonical_instances, gen_relation, instances, nilradical_experiment, verify_kernel, RelFamily, ALL_FAMILIES,
};
use arcsmt::smt::{coords_to_json, enumerate_standard, leading_of_word, parse_word, pi_inverse, straighten, Evaluator};
use arcsmt::tableau::layout;
use arcsmt::{Ambient, Error, Integer};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "arcsmt", version, about = "Straightening and relation checks for jets of SL_h quotients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Dims {
    /// Number of vectors.
    #[arg(long, default_value_t = 3)]
    p: u16,
    /// Number of covectors.
    #[arg(long, default_value_t = 3)]
    q: u16,
    /// Rank of the group.
    #[arg(long, default_value_t = 2)]
    h: u16,
}

impl Dims {
    fn ambient(self) -> Result<Ambient, Error> {
        Ambient::new(self.p, self.q, self.h)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the derived generators X, Y, Z expanded in the jet ring.
    Generators {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, default_value_t = 0)]
        max_weight: u32,
        /// Print structured terms instead of text.
        #[arg(long)]
        json_terms: bool,
    },
    /// Read words (one per line) from stdin and print their standard coordinates.
    Straighten {
        #[command(flatten)]
        dims: Dims,
    },
    /// Generate relation instances and check that they evaluate to zero.
    VerifyRelations {
        #[command(flatten)]
        dims: Dims,
        /// Comma-separated family names; an empty value selects none.
        #[arg(long, value_delimiter = ',')]
        families: Option<Vec<String>>,
        #[arg(long, default_value_t = 1)]
        n_max: u32,
        /// Check every instance instead of one per relabeling class.
        #[arg(long)]
        all_instances: bool,
        /// Test hook: perturb each relation before checking it.
        #[arg(long)]
        corrupt: bool,
    },
    /// Run the nilradical witness experiment.
    Nilradical {
        #[arg(long, default_value_t = 3)]
        h: u16,
        #[arg(long, default_value_t = 6)]
        p: u16,
        #[arg(long, default_value_t = 1)]
        q: u16,
    },
    /// List standard words with their certificate chains.
    EnumerateStandard {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, default_value_t = 0)]
        max_weight: u32,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Apply the current-algebra basis to every generator.
    Invariance {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, default_value_t = 1)]
        max_weight: u32,
        #[arg(long, default_value_t = 1)]
        m_max: u32,
    },
    /// Print the tableau of the leading monomial of each word read from stdin.
    Tableau {
        #[command(flatten)]
        dims: Dims,
    },
}

enum Failure {
    Falsified,
    Usage(String),
    NotInSubring(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotInSubring { .. } => Failure::NotInSubring(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Out<'a> = BufWriter<io::StdoutLock<'a>>;

fn emit(out: &mut Out, v: &Value) -> Result<(), Failure> {
    writeln!(out, "{v}")?;
    Ok(())
}

fn stdin_lines() -> Result<Vec<String>, Failure> {
    let mut s = String::new();
    io::stdin().read_to_string(&mut s)?;
    Ok(s.lines().map(str::trim).filter(|l| !l.is_empty()).map(String::from).collect())
}

fn run(cmd: Command, out: &mut Out) -> Result<(), Failure> {
    match cmd {
        Command::Generators { dims, max_weight, json_terms } => {
            let amb = dims.ambient()?;
            for g in generators::<Integer>(&amb, max_weight) {
                let poly =
                    if json_terms { arcsmt::diffring::bpoly_to_json(&g.poly) } else { json!(g.poly.to_string()) };
                emit(out, &json!({"generator": g.label, "poly": poly}))?;
            }
        }
        Command::Straighten { dims } => {
            let amb = dims.ambient()?;
            let mut ev = Evaluator::<Integer>::new(amb);
            let lines = stdin_lines()?;
            if lines.is_empty() {
                emit(out, &json!([]))?;
            }
            for line in lines {
                let w = parse_word(&line)?;
                if let Some(j) = w.iter().find(|j| !j.in_alphabet(amb.h as usize)) {
                    return Err(Failure::Usage(format!("symbol {j} is not in the alphabet for h = {}", amb.h)));
                }
                emit(out, &coords_to_json(&straighten(&mut ev, &w)?))?;
            }
        }
        Command::VerifyRelations { dims, families, n_max, all_instances, corrupt } => {
            let amb = dims.ambient()?;
            let fams: Vec<RelFamily> = match families {
                None => ALL_FAMILIES.to_vec(),
                Some(names) => names
                    .iter()
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| s.trim().parse())
                    .collect::<Result<_, Error>>()?,
            };
            let insts =
                if all_instances { instances(&amb, &fams, n_max) } else { canonical_instances(&amb, &fams, n_max) };
            let mut ev = Evaluator::<Integer>::new(amb);
            let mut failed = false;
            for inst in insts {
                let mut rel = gen_relation(&inst)?;
                if corrupt {
                    rel = rel.corrupted();
                }
                let ok = verify_kernel(&mut ev, &rel);
                failed |= !ok;
                let mut row = inst.to_json();
                row["verdict"] = json!(if ok { "pass" } else { "fail" });
                emit(out, &row)?;
            }
            if failed {
                return Err(Failure::Falsified);
            }
        }
        Command::Nilradical { h, p, q } => {
            let amb = Ambient::new(p, q, h)?;
            let r = nilradical_experiment(&amb)?;
            emit(
                out,
                &json!({
                    "f": r.witness.to_string(),
                    "qstar_is_zero": r.qstar_is_zero,
                    "in_classical_span": r.in_classical_span,
                    "in_full_span": r.in_full_span,
                    "classical_rank": r.classical_rank,
                    "full_rank": r.full_rank,
                    "dim": r.dim,
                }),
            )?;
        }
        Command::EnumerateStandard { dims, max_weight, max_degree } => {
            let amb = dims.ambient()?;
            for w in enumerate_standard(&amb, max_weight, max_degree) {
                let chain = pi_inverse(&w, amb.h as usize)?;
                emit(
                    out,
                    &json!({
                        "word": w.iter().map(|j| j.to_string()).collect::<Vec<_>>(),
                        "chain": chain.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                    }),
                )?;
            }
        }
        Command::Invariance { dims, max_weight, m_max } => {
            let amb = dims.ambient()?;
            let report = check_invariance(&amb, max_weight, m_max);
            for row in &report.rows {
                emit(out, row)?;
            }
            if !report.all_zero() {
                return Err(Failure::Falsified);
            }
        }
        Command::Tableau { dims } => {
            let amb = dims.ambient()?;
            let mut ev = Evaluator::<Integer>::new(amb);
            for line in stdin_lines()? {
                let w = parse_word(&line)?;
                let (m, c) = leading_of_word(&mut ev, &w)?;
                writeln!(out, "{} => coefficient {c}", line)?;
                write!(out, "{}", layout(&m, amb.h as usize))?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Falsified) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::NotInSubring(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
