//! `tableau`: check, export and prove from the command line.
//!
//! Exit status: 0 for a valid proof or a found countermodel, 1 for an
//! incomplete or invalid proof (or a failed grade), 2 for a parse error,
//! 3 for usage and I/O errors.

use std::io::{self, IsTerminal, Read};
use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tableau_core::checker::{CheckReport, Sequent, Verdict};
use tableau_core::formula::ParseError;
use tableau_core::prover::{prove, ProverResult};
use tableau_core::report::{to_pretty, CheckOptions, Expect, Outcome};
use tableau_core::script::serialize_proof;

const OK: u8 = 0;
const NOT_PROVED: u8 = 1;
const PARSE_ERROR: u8 = 2;
const USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "tableau", version, about = "Checker for Fitch-style signed tableau proofs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a proof and report the verdict
    Check {
        /// Proof file; standard input when absent or `-`
        file: Option<PathBuf>,
        /// Print the JSON report
        #[arg(long)]
        json: bool,
        /// Include the qtree source
        #[arg(long)]
        latex: bool,
        /// Require this verdict (valid or countermodel)
        #[arg(long)]
        expect: Option<Expect>,
        /// Require the proof to be of this sequent, e.g. "A->B, A |- B"
        #[arg(long)]
        sequent: Option<String>,
    },
    /// Print the proof tree as qtree LaTeX
    Latex { file: Option<PathBuf> },
    /// Prove or refute a propositional sequent
    Prove {
        #[arg(long)]
        sequent: String,
    },
    /// Run the HTTP service
    Serve {
        #[arg(long, default_value_t = 8601)]
        port: u16,
        #[arg(long, default_value_t = IpAddr::V4(Ipv4Addr::LOCALHOST))]
        bind: IpAddr,
        /// Allowed CORS origin; repeatable. Any origin when omitted
        #[arg(long = "cors-origin")]
        cors_origins: Vec<String>,
    },
}

struct Style {
    color: bool,
}

impl Style {
    fn from_env() -> Style {
        let never = std::env::var("ANITA_COLOR").is_ok_and(|v| v == "never");
        Style { color: !never && io::stdout().is_terminal() }
    }

    fn paint(&self, code: &str, text: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }
}

fn read_input(file: &Option<PathBuf>) -> Result<String, String> {
    match file {
        Some(path) if path.as_os_str() != "-" => {
            std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| format!("cannot read standard input: {e}"))?;
            Ok(s)
        }
    }
}

fn print_parse_error(e: &ParseError) {
    eprintln!("Parse error at line {}, column {}: {}", e.line, e.column, e.message);
}

fn human_report(report: &CheckReport, style: &Style) {
    match &report.verdict {
        Verdict::Valid => println!("{}", style.paint("32", "Valid.")),
        Verdict::CountermodelFound { model, branch } => {
            println!("{}", style.paint("33", &format!("Countermodel: {model}")));
            println!("The open branch ending at line {} is saturated.", branch.end);
        }
        Verdict::Incomplete { .. } => {
            println!("{}", style.paint("31", "Incomplete."));
            for b in &report.open_branches {
                let lines: Vec<String> = b.lines.iter().map(|n| n.to_string()).collect();
                let state = if b.saturated { "saturated" } else { "not saturated" };
                println!("Open branch {} ({state}): lines {}", b.leaf, lines.join(", "));
            }
        }
        Verdict::Invalid => {
            println!("{}", style.paint("31", "Invalid."));
            for d in &report.diagnostics {
                println!("{}", d);
            }
        }
    }
}

fn cmd_check(
    file: &Option<PathBuf>,
    json: bool,
    latex: bool,
    expect: Option<Expect>,
    sequent: Option<String>,
) -> Result<u8, String> {
    let expected_sequent =
        sequent.as_deref().map(Sequent::parse).transpose().map_err(|e| format!("bad --sequent: {e}"))?;
    let text = read_input(file)?;
    let opts = CheckOptions { expect, expected_sequent, latex };
    let outcome = Outcome::from_text(&text);
    if json {
        print!("{}", to_pretty(&outcome.to_json(&opts)));
    }
    let Outcome::Checked { report, .. } = &outcome else {
        if let Outcome::ParseError(e) = &outcome {
            print_parse_error(e);
        }
        return Ok(PARSE_ERROR);
    };
    if !json {
        let style = Style::from_env();
        human_report(report, &style);
        if opts.grading() {
            if outcome.grade_ok(&opts) {
                println!("Grade: ok");
            } else {
                let seq = report.sequent.as_ref().map_or("none".to_string(), |s| s.to_string());
                println!("Grade: failed (verdict {}, sequent {seq})", report.verdict.kind());
            }
        }
        if latex {
            print!("{}", outcome.latex().unwrap_or_default());
        }
    }
    let conclusive = matches!(report.verdict, Verdict::Valid | Verdict::CountermodelFound { .. });
    Ok(if conclusive && outcome.grade_ok(&opts) { OK } else { NOT_PROVED })
}

fn cmd_latex(file: &Option<PathBuf>) -> Result<u8, String> {
    let outcome = Outcome::from_text(&read_input(file)?);
    match (&outcome, outcome.latex()) {
        (_, Some(tex)) => {
            print!("{tex}");
            Ok(OK)
        }
        (Outcome::ParseError(e), None) => {
            print_parse_error(e);
            Ok(PARSE_ERROR)
        }
        _ => unreachable!("checked proofs always export"),
    }
}

fn cmd_prove(sequent: &str) -> Result<u8, String> {
    let seq = Sequent::parse(sequent).map_err(|e| format!("bad --sequent: {e}"))?;
    match prove(&seq).map_err(|e| e.to_string())? {
        ProverResult::Closed(script) => print!("{}", serialize_proof(&script)),
        ProverResult::Open(model) => println!("Countermodel: {model}"),
    }
    Ok(OK)
}

fn cmd_serve(port: u16, bind: IpAddr, cors_origins: Vec<String>) -> Result<u8, String> {
    let origins = cors_origins
        .iter()
        .map(|o| o.parse().map_err(|_| format!("bad --cors-origin '{o}'")))
        .collect::<Result<Vec<_>, _>>()?;
    let config = tableau_service::Config { cors_origins: origins };
    let runtime = tokio::runtime::Runtime::new().map_err(|e| e.to_string())?;
    runtime.block_on(async {
        let addr = SocketAddr::new(bind, port);
        let listener =
            tokio::net::TcpListener::bind(addr).await.map_err(|e| format!("cannot bind {addr}: {e}"))?;
        eprintln!("listening on http://{}", listener.local_addr().map_err(|e| e.to_string())?);
        tableau_service::serve(listener, config).await.map_err(|e| e.to_string())
    })?;
    Ok(OK)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    let result = match cli.command {
        Command::Check { file, json, latex, expect, sequent } => {
            cmd_check(&file, json, latex, expect, sequent)
        }
        Command::Latex { file } => cmd_latex(&file),
        Command::Prove { sequent } => cmd_prove(&sequent),
        Command::Serve { port, bind, cors_origins } => cmd_serve(port, bind, cors_origins),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("tableau: {message}");
            ExitCode::from(USAGE)
        }
    }
}
