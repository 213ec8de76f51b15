//! `mjzero`: deficiency analysis, discard advice, census and oracle checks
//! for three-suit Mahjong hands.
//!
//! Exit codes: 0 success, 2 bad input, 3 bad configuration.

mod render;

use std::net::SocketAddr;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mjzero::api::{self, AdviseRequest, AnalyzeRequest, ApiError, ErrorKind};
use mjzero::deficiency::CACHE_CAPACITY_ENV;
use mjzero::oracle;
use mjzero::policy::{Advisor, DEFAULT_HORIZON_CAP};
use mjzero::tiles::parse_hand;
use mjzero_service::{Config, DEFAULT_LISTEN};

#[derive(Parser, Debug)]
#[command(name = "mjzero", version, about = "Deficiency analysis and discard advice for three-suit Mahjong")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Entries kept in the deficiency memo table
    #[arg(long, global = true, env = CACHE_CAPACITY_ENV)]
    cache_capacity: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    /// `deficiency,count` lines; census only
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Pure,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Deficiency of a hand with a minimal-cost witness
    Analyze { hand: String },
    /// Rank the 14 possible discards
    Advise {
        hand: String,
        /// Available tiles as three groups of nine digits, e.g.
        /// (000000000)(000000000)(010110001); defaults to all unseen tiles
        #[arg(long)]
        kb: Option<String>,
        /// Number of draws to look ahead
        #[arg(long, default_value_t = 1)]
        depth: u32,
        /// Largest accepted depth
        #[arg(long, env = "MJZERO_HORIZON_CAP", default_value_t = DEFAULT_HORIZON_CAP)]
        cap: u32,
    },
    /// Count pure hands by deficiency
    Census {
        #[arg(long, value_enum, default_value_t = Suite::Pure)]
        suite: Suite,
    },
    /// Breadth-first distance to a complete hand, up to a depth
    Oracle {
        hand: String,
        #[arg(long, default_value_t = 3)]
        max_depth: u32,
    },
    /// Run the HTTP service
    Serve {
        #[arg(long, env = "MJZERO_LISTEN", default_value = DEFAULT_LISTEN)]
        listen: SocketAddr,
        #[arg(long, env = "MJZERO_HORIZON_CAP", default_value_t = DEFAULT_HORIZON_CAP)]
        horizon_cap: u32,
        /// Origin allowed by CORS; any origin when unset
        #[arg(long, env = "MJZERO_CORS_ORIGIN")]
        cors_origin: Option<String>,
    },
}

fn config_error(message: impl Into<String>) -> ApiError {
    ApiError::new(ErrorKind::Config, "config", message)
}

fn no_csv(format: Format) -> Result<(), ApiError> {
    if format == Format::Csv {
        return Err(ApiError::new(ErrorKind::Parse, "bad_format", "csv output is only available for census"));
    }
    Ok(())
}

fn json<T: serde::Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("responses serialize")
}

fn run(cli: Cli) -> Result<String, ApiError> {
    if let Some(n) = cli.cache_capacity {
        mjzero::deficiency::set_cache_capacity(n);
    }
    let format = cli.format;
    match cli.command {
        Command::Analyze { hand } => {
            no_csv(format)?;
            let r = api::analyze(&AnalyzeRequest { hand })?;
            Ok(match format {
                Format::Json => json(&r),
                _ => render::analysis(&r),
            })
        }
        Command::Advise { hand, kb, depth, cap } => {
            no_csv(format)?;
            let advisor = Advisor::new(cap).map_err(|e| config_error(format!("--cap: {e}")))?;
            let r = api::advise(&AdviseRequest { hand, kb, k: depth }, &advisor)?;
            Ok(match format {
                Format::Json => json(&r),
                _ => render::advice(&r),
            })
        }
        Command::Census { suite: Suite::Pure } => {
            let report = oracle::pure_census();
            Ok(match format {
                Format::Json => json(&serde_json::json!({
                    "schema": api::SCHEMA_VERSION,
                    "suite": "pure",
                    "total": report.total,
                    "by_deficiency": report.by_deficiency,
                })),
                Format::Csv => render::census_csv(&report),
                Format::Table => render::census(&report),
            })
        }
        Command::Oracle { hand, max_depth } => {
            no_csv(format)?;
            let h = parse_hand(&hand)?;
            let outcome = oracle::bfs_deficiency(&h, max_depth);
            Ok(match format {
                Format::Json => json(&serde_json::json!({
                    "schema": api::SCHEMA_VERSION,
                    "hand": h.to_string(),
                    "max_depth": max_depth,
                    "result": outcome,
                })),
                _ => render::outcome(outcome),
            })
        }
        Command::Serve {
            listen,
            horizon_cap,
            cors_origin,
        } => {
            let config = Config {
                listen,
                horizon_cap,
                cache_capacity: cli.cache_capacity,
                cors_origin,
            };
            // surface configuration errors before binding
            let _ = mjzero_service::router(&config)?;
            let runtime = tokio::runtime::Runtime::new().map_err(|e| config_error(e.to_string()))?;
            eprintln!("listening on {listen}");
            runtime
                .block_on(mjzero_service::serve(config))
                .map_err(|e| config_error(format!("{listen}: {e}")))?;
            Ok(String::new())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            if !out.is_empty() {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if format == Format::Json {
                println!("{}", json(&e));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.kind.exit_code() as u8)
        }
    }
}
