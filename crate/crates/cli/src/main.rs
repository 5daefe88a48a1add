//! `abac`: build, minimize, evaluate and verify abelian complexity automata.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use abac_core::{
    balance_bound, build_dfao, evaluate_ac, explore, greedy_representation, output_range,
    verify_family, Automaton, ClosureTables, Dfa, Dfao, ExploreOptions, FamilyPattern,
    Substitution, WindowScanner,
};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

const EXIT_MISMATCH: u8 = 3;
const EXIT_MALFORMED: u8 = 4;

#[derive(Parser)]
#[command(name = "abac", version, about = "Automata for the abelian complexity of simple Parry words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Source {
    /// m-bonacci substitution on m letters
    #[arg(long, conflicts_with_all = ["alpha", "input"])]
    m: Option<usize>,
    /// Exponents of a simple Parry substitution, e.g. 2,1
    #[arg(long, value_delimiter = ',', conflicts_with = "input")]
    alpha: Option<Vec<u32>>,
    /// Automaton file (JSON) instead of building from a substitution
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the automaton here instead of only printing a summary
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the closure and build the (unreduced) automaton
    Build {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        #[arg(long)]
        minimize: bool,
    },
    /// Evaluate the abelian complexity at n or over a range
    Eval {
        #[command(flatten)]
        source: Source,
        /// Value of n (also accepted positionally)
        #[arg(long = "n")]
        n_flag: Option<u64>,
        n: Option<u64>,
        #[arg(long)]
        from: Option<u64>,
        #[arg(long)]
        to: Option<u64>,
        /// Print the sequence of visited states
        #[arg(long)]
        trace: bool,
        /// Evaluate on the minimized automaton
        #[arg(long)]
        minimize: bool,
    },
    /// Minimize an automaton (Moore refinement)
    Minimize {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        /// Only merge states with equal outputs and identical successors, repeatedly
        #[arg(long)]
        merge_identical: bool,
    },
    /// Automaton accepting the representations whose value is c
    Acceptor {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        value: u32,
        #[arg(long)]
        minimize: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Set of values taken by the automaton
    Range {
        #[command(flatten)]
        source: Source,
        /// Only states reachable by normal representations
        #[arg(long)]
        normal_only: bool,
    },
    /// Balance constant of the word, from the closure
    Balance {
        #[command(flatten)]
        source: Source,
        /// Also scan factors of length up to this bound
        #[arg(long)]
        oracle: Option<usize>,
    },
    /// Check that every member of a family head.cycle^j.tail (j >= min) has the given value
    VerifyFamily {
        #[command(flatten)]
        source: Source,
        /// head/cycle/tail/min, with e for the empty string
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        value: u32,
    },
    /// Compare the automaton with brute-force factor counting
    OracleCompare {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Convert an automaton file to JSON or DOT
    Export {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
}

fn explore_options() -> Result<ExploreOptions> {
    let mut opts = ExploreOptions::default();
    if let Ok(v) = std::env::var("ABAC_MAX_ITER") {
        opts.max_iterations = v.parse().with_context(|| format!("ABAC_MAX_ITER={v:?} is not a number"))?;
    }
    Ok(opts)
}

fn substitution(source: &Source) -> Result<Option<Substitution>> {
    Ok(match (&source.m, &source.alpha) {
        (Some(m), _) => Some(Substitution::m_bonacci(*m)?),
        (None, Some(alpha)) => Some(Substitution::simple_parry(alpha.clone())?),
        _ => None,
    })
}

fn closure(source: &Source) -> Result<(Substitution, ClosureTables)> {
    let s = substitution(source)?.ok_or_else(|| anyhow!("this command needs --m or --alpha"))?;
    let t = explore(&s, &explore_options()?)?;
    Ok((s, t))
}

fn read_automaton(path: &Path) -> Result<Automaton> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Automaton::from_json(&text).with_context(|| format!("in {}", path.display()))
}

/// The DFAO and its substitution, from a file or built from scratch.
fn dfao(source: &Source) -> Result<(Substitution, Dfao)> {
    if let Some(path) = &source.input {
        return match read_automaton(path)? {
            Automaton::Dfao(a) => Ok((Substitution::simple_parry(a.alpha().to_vec())?, a)),
            Automaton::Dfa(_) => bail!("{} holds a DFA, expected a DFAO", path.display()),
        };
    }
    let (s, t) = closure(source)?;
    Ok((s, build_dfao(&t)))
}

fn text_table(a: &Dfao) -> String {
    let mut out = String::from("state");
    for d in 0..a.radix() {
        out += &format!("\td{d}");
    }
    out += "\toutput\n";
    for q in 0..a.num_states() as u32 {
        out += &q.to_string();
        for d in 0..a.radix() as u8 {
            out += &format!("\t{}", a.next(q, d));
        }
        out += &format!("\t{}\n", a.output(q).map_or("-".to_string(), |o| o.to_string()));
    }
    out
}

fn render(a: &Automaton, format: Format) -> String {
    match (format, a) {
        (Format::Json, _) => a.to_json(),
        (Format::Dot, _) => a.to_dot(),
        (Format::Text, Automaton::Dfao(x)) => text_table(x),
        (Format::Text, Automaton::Dfa(x)) => {
            let mut out = String::new();
            for q in 0..x.num_states() as u32 {
                let next: Vec<String> = (0..x.radix() as u8).map(|d| x.next(q, d).to_string()).collect();
                out += &format!("{q}\t{}\t{}\n", next.join("\t"), if x.is_accepting(q) { "accept" } else { "-" });
            }
            out
        }
    }
}

fn emit(a: Automaton, output: &Output) -> Result<()> {
    let text = render(&a, output.format);
    match &output.out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None if output.format != Format::Json => {
            print!("{text}");
            Ok(())
        }
        None => Ok(()),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Build { source, output, minimize } => {
            let (_, t) = closure(&source)?;
            let mut a = build_dfao(&t);
            if minimize {
                a = a.minimize();
            }
            println!(
                "states={}, pairs={}, zsets={}",
                a.num_states(),
                t.catalog().len(),
                t.num_distinct_zsets()
            );
            emit(Automaton::Dfao(a), &output)?;
        }
        Command::Eval { source, n_flag, n, from, to, trace, minimize } => {
            let (s, mut a) = dfao(&source)?;
            if minimize {
                a = a.minimize();
            }
            let values: Vec<u64> = match (n_flag.or(n), from, to) {
                (Some(n), None, None) => vec![n],
                (None, Some(lo), Some(hi)) => (lo..=hi).collect(),
                (None, None, Some(hi)) => (1..=hi).collect(),
                _ => bail!("give either n or --from/--to"),
            };
            for n in values {
                let value = evaluate_ac(&a, &s, n)?;
                let rep = greedy_representation(&s, n);
                println!("n={n} rep={rep} value={value}");
                if trace {
                    let states: Vec<String> = a.trace(&rep)?.iter().map(|q| q.to_string()).collect();
                    println!("trace={}", states.join("->"));
                }
            }
        }
        Command::Minimize { source, output, merge_identical } => {
            let (_, a) = dfao(&source)?;
            let r = if merge_identical { a.merge_identical() } else { a.minimize() };
            println!("states={}", r.num_states());
            emit(Automaton::Dfao(r), &output)?;
        }
        Command::Acceptor { source, value, minimize, output } => {
            let (_, a) = dfao(&source)?;
            let mut acc: Dfa = a.value_acceptor(value);
            if minimize {
                acc = acc.minimize();
            }
            println!("value={value} states={}", acc.num_states());
            emit(Automaton::Dfa(acc), &output)?;
        }
        Command::Range { source, normal_only } => {
            let (s, a) = dfao(&source)?;
            let r = output_range(&a, &s, normal_only)?;
            let list: Vec<String> = r.iter().map(|v| v.to_string()).collect();
            println!("range={}", list.join(","));
        }
        Command::Balance { source, oracle } => {
            let (s, t) = closure(&source)?;
            println!("balance={}", balance_bound(&t));
            if let Some(n_max) = oracle {
                println!("oracle_balance={} n_max={n_max}", WindowScanner::new(&s).balance(n_max));
            }
        }
        Command::VerifyFamily { source, pattern, value } => {
            let (_, a) = dfao(&source)?;
            let p = FamilyPattern::parse(&pattern)?;
            let ok = verify_family(&a, &p, value)?;
            println!("family={pattern} value={value} verified={ok}");
            if !ok {
                return Ok(ExitCode::from(EXIT_MISMATCH));
            }
        }
        Command::OracleCompare { source, from, to } => {
            if from == 0 || to < from {
                bail!("need 1 <= from <= to");
            }
            let (s, a) = dfao(&source)?;
            let mut scan = WindowScanner::new(&s);
            let mut bad = 0u64;
            for n in from..=to {
                let got = evaluate_ac(&a, &s, n)? as usize;
                let expected = scan.complexity(n as usize);
                if got != expected {
                    bad += 1;
                    println!("MISMATCH n={n} automaton={got} oracle={expected}");
                }
            }
            let total = to - from + 1;
            if bad > 0 {
                println!("FAILED {}/{total}", total - bad);
                return Ok(ExitCode::from(EXIT_MISMATCH));
            }
            println!("OK {total}/{total}");
        }
        Command::Export { source, output } => {
            let a = match &source.input {
                Some(path) => read_automaton(path)?,
                None => Automaton::Dfao(dfao(&source)?.1),
            };
            if output.out.is_none() && output.format == Format::Json {
                print!("{}", a.to_json());
                println!();
            }
            emit(a, &output)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let malformed = e
                .chain()
                .any(|c| matches!(c.downcast_ref::<abac_core::Error>(), Some(abac_core::Error::Parse(_))));
            ExitCode::from(if malformed { EXIT_MALFORMED } else { 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use abac_core::DigitString;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn digits_parse_for_patterns() {
        assert!(FamilyPattern::parse("e/100/e/3").is_ok());
        assert_eq!("1011".parse::<DigitString>().unwrap().len(), 4);
    }
}
