use std::process::ExitCode;

use clap::{Parser, Subcommand};
use normcalc::commands::{self, CableArgs};
use normcalc::format::{parse_half_list, parse_int_list, parse_matrix, render};
use normcalc::{search_bound_from_env, selftest, CliError};
use serde_json::{json, Value};

/// Alexander polynomials, Floer and Thurston polytopes of links.
///
/// PD arguments accept a JSON file, an inline code such as
/// `[[1,4,2,5],[3,6,4,1],[5,2,6,3]]`, or a bundled example name (see
/// `normcalc table`).
#[derive(Parser)]
#[command(name = "normcalc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multivariable Alexander polynomial and Euler polynomial.
    Alexander { pd: String },
    /// Floer norm y and Thurston norm x of a class.
    Norm {
        pd: String,
        /// Pairings with the meridians, e.g. `1,0`. Defaults to all ones.
        #[arg(long, allow_hyphen_values = true)]
        h: Option<String>,
    },
    /// Unit ball of the dual Thurston norm.
    DualPolytope {
        pd: String,
        /// Write an SVG picture (2-component links only).
        #[arg(long)]
        svg: Option<String>,
    },
    /// Norm changes and top grading under cabling.
    Cable {
        #[arg(long)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        /// Windings: q_i = p_i n_i + 1.
        #[arg(long, allow_hyphen_values = true)]
        n: Option<String>,
        /// Base link, as a PD argument.
        #[arg(long)]
        link: Option<String>,
        /// Linking matrix, rows separated by `;`, e.g. `0,1;1,0`.
        #[arg(long, allow_hyphen_values = true)]
        lk: Option<String>,
        /// Top grading of the base link, e.g. `1/2,1/2`.
        #[arg(long, allow_hyphen_values = true)]
        h0: Option<String>,
    },
    /// Validate a Heegaard diagram and report gradings.
    Heegaard {
        diagram: String,
        /// Generator index for a domain query.
        #[arg(long, requires = "to")]
        from: Option<usize>,
        #[arg(long, requires = "from")]
        to: Option<usize>,
        /// Coefficient bound for domain searches; overrides NORMCALC_SEARCH_BOUND.
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Bundled examples.
    Table,
    /// Run the acceptance checks.
    Selftest {
        #[arg(long)]
        json: bool,
    },
}

fn run(cmd: Command) -> Result<Value, CliError> {
    match cmd {
        Command::Alexander { pd } => commands::alexander(&pd),
        Command::Norm { pd, h } => {
            let h = h.map(|s| parse_int_list("h", &s)).transpose()?;
            commands::norm(&pd, h)
        }
        Command::DualPolytope { pd, svg } => commands::dual_polytope(&pd, svg.as_deref()),
        Command::Cable { p, q, n, link, lk, h0 } => commands::cable(CableArgs {
            p: parse_int_list("p", &p)?,
            q: q.map(|s| parse_int_list("q", &s)).transpose()?,
            n: n.map(|s| parse_int_list("n", &s)).transpose()?,
            link: link.as_deref(),
            lk: lk.map(|s| parse_matrix("lk", &s)).transpose()?,
            h0: h0.map(|s| parse_half_list("h0", &s)).transpose()?,
        }),
        Command::Heegaard { diagram, from, to, bound } => {
            let bound = match bound {
                Some(b) => b,
                None => search_bound_from_env()?,
            };
            commands::heegaard(&diagram, from.zip(to), bound)
        }
        Command::Table => commands::table(),
        Command::Selftest { .. } => unreachable!("handled in main"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Command::Selftest { json } = cli.command {
        let results = selftest::run();
        if json {
            print!("{}", render(&json!({"criteria": results, "passed": selftest::all_passed(&results)})));
        } else {
            print!("{}", selftest::render_text(&results));
        }
        return match selftest::into_result(&results) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => ExitCode::from(e.exit_code() as u8),
        };
    }
    match run(cli.command) {
        Ok(v) => {
            print!("{}", render(&v));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error ({}): {e}", e.kind());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
