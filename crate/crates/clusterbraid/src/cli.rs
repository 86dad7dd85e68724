//! Command dispatch. `run` returns the process exit code: 0 on success or
//! a verified claim, 1 for a refuted or undecided claim, 2 for bad input.

use std::io::{Read, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use clusterbraid_core::presentation::TriState;
use clusterbraid_core::Qp;

use crate::claims::{self, Settings};
use crate::export::{to_dot, GraphJson};
use crate::format::{parse_document, serialize_presentation, serialize_quiver};
use crate::ops::{self, Kind};
use crate::Error;

#[derive(Debug, Parser)]
#[command(name = "clusterbraid", version, about = "Quiver mutation, cluster exchange graphs and braid-group presentations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mutate the input at the given vertices, in order, and print the result.
    Mutate {
        /// 1-based vertex; repeat for a sequence.
        #[arg(short = 'k', required = true)]
        k: Vec<usize>,
        /// Quiver or triangulation document; standard input when absent or `-`.
        input: Option<PathBuf>,
    },
    /// Build the exchange graph and print vertex, edge and face counts.
    ExchangeGraph {
        input: Option<PathBuf>,
        /// Vertex cap (default: CLUSTERBRAID_MAX_VERTICES or 10000).
        #[arg(long)]
        max: Option<usize>,
        /// Also print the graph in DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Print a presentation in `gens:`/`rel:` form.
    Presentation {
        #[arg(value_enum)]
        kind: KindArg,
        input: Option<PathBuf>,
        /// Tietze-simplify before printing.
        #[arg(long)]
        simplify: bool,
        #[arg(long)]
        max: Option<usize>,
    },
    /// Run a named claim and print its verdict with the transcript.
    Verify {
        /// Claim name; omit with --list.
        #[arg(required_unless_present = "list")]
        claim: Option<String>,
        /// List the registered claims.
        #[arg(long)]
        list: bool,
    },
    /// Export the exchange graph.
    Export {
        #[arg(value_enum)]
        format: ExportFormat,
        input: Option<PathBuf>,
        #[arg(long)]
        max: Option<usize>,
    },
    /// Serve the explorer JSON API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        bind: IpAddr,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Br,
    At,
    Cbr,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Br => Kind::Br,
            KindArg::At => Kind::At,
            KindArg::Cbr => Kind::Cbr,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Dot,
    Json,
}

fn read_input(path: &Option<PathBuf>) -> Result<Qp, String> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| format!("cannot read standard input: {e}"))?;
            s
        }
    };
    parse_document(&text).map_err(|e| match path {
        Some(p) => format!("{}: {e}", p.display()),
        None => e.to_string(),
    })
}

fn cap(max: Option<usize>) -> usize {
    max.unwrap_or_else(ops::max_vertices)
}

pub fn run(cli: Cli, out: &mut impl Write, err: &mut impl Write) -> i32 {
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
    }
}

fn dispatch(cli: Cli, out: &mut impl Write) -> Result<i32, String> {
    let fail = |e: Error| e.to_string();
    let io = |e: std::io::Error| e.to_string();
    match cli.command {
        Command::Mutate { k, input } => {
            let qp = read_input(&input)?;
            let m = ops::mutate_sequence(&qp, &k).map_err(fail)?;
            write!(out, "{}", serialize_quiver(&m)).map_err(io)?;
        }
        Command::ExchangeGraph { input, max, dot } => {
            let g = ops::exchange_graph(&read_input(&input)?, cap(max)).map_err(fail)?;
            writeln!(out, "{}", ops::graph_summary(&g)).map_err(io)?;
            if dot {
                write!(out, "{}", to_dot(&GraphJson::from(&g))).map_err(io)?;
            }
        }
        Command::Presentation { kind, input, simplify, max } => {
            let p = ops::presentation(&read_input(&input)?, kind.into(), simplify, cap(max)).map_err(fail)?;
            write!(out, "{}", serialize_presentation(&p)).map_err(io)?;
        }
        Command::Verify { list: true, .. } => {
            for c in claims::CLAIMS {
                writeln!(out, "{:<26} {}", c.name, c.summary).map_err(io)?;
            }
        }
        Command::Verify { claim, .. } => {
            let name = claim.unwrap_or_default();
            let status = claims::verify(&name, &Settings::default()).map_err(fail)?;
            writeln!(out, "{name}: {}", status.label()).map_err(io)?;
            for line in status.transcript() {
                writeln!(out, "  {line}").map_err(io)?;
            }
            return Ok(if matches!(status, TriState::Verified(_)) { 0 } else { 1 });
        }
        Command::Export { format, input, max } => {
            let g = ops::exchange_graph(&read_input(&input)?, cap(max)).map_err(fail)?;
            let doc = GraphJson::from(&g);
            match format {
                ExportFormat::Dot => write!(out, "{}", to_dot(&doc)).map_err(io)?,
                ExportFormat::Json => {
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?).map_err(io)?
                }
            }
        }
        Command::Serve { port, bind } => {
            let addr = SocketAddr::new(bind, port);
            let runtime = tokio::runtime::Runtime::new().map_err(io)?;
            runtime.block_on(crate::serve::serve(addr, Settings::default())).map_err(io)?;
        }
    }
    Ok(0)
}
