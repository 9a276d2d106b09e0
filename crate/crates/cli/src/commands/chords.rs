use std::fmt::Write as _;

use clap::Subcommand;
use serde_json::json;

use topoglyph_core::chords::{
    crossing_distribution, read_bound, sawtooth_decode, sawtooth_encode, ChordDiagram, SawtoothCode,
};

use crate::{parse_list, versioned, CliError, Context, Output, SCHEMA_VERSION};

#[derive(Debug, Subcommand)]
pub enum ChordsCmd {
    /// C(n, k) for every k, by brute force; CSV unless --json.
    Table {
        #[arg(long)]
        n: usize,
        /// Refuse n above this value.
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// Number of chord diagrams on n chords with exactly k crossings.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// Crossing number of a diagram.
    Crossings {
        /// Chords as position pairs, e.g. "1-4,2-5,3-6".
        #[arg(long)]
        pairs: String,
    },
    /// Parenthesis string and kappa vector of a diagram.
    Encode {
        #[arg(long)]
        pairs: String,
    },
    /// The diagram with the given code.
    Decode {
        #[arg(long)]
        parens: String,
        /// Comma-separated kappa values, one per right endpoint.
        #[arg(long, default_value = "")]
        kappa: String,
    },
    /// Upper bound on diagrams with at most k crossings.
    ReadBound {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
}

fn parse_pairs(s: &str) -> Result<ChordDiagram, CliError> {
    let pairs = s
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (a, b) = p.split_once('-').ok_or_else(|| CliError::Input(format!("chord {p:?} is not a-b")))?;
            let parse =
                |x: &str| x.trim().parse::<u32>().map_err(|_| CliError::Input(format!("bad position in {p:?}")));
            Ok((parse(a)?, parse(b)?))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(ChordDiagram::new(pairs)?)
}

pub fn run(cmd: ChordsCmd, ctx: &Context) -> Result<Output, CliError> {
    let out = match cmd {
        ChordsCmd::Table { n, limit } => {
            let row = crossing_distribution(n, limit)?;
            if !ctx.json {
                let mut csv = format!("# schema_version {SCHEMA_VERSION}\nn,k,count\n");
                for (k, c) in row.iter().enumerate() {
                    writeln!(csv, "{n},{k},{c}").expect("string write");
                }
                return Ok(Output::Text(csv));
            }
            json!({ "n": n, "counts": row })
        }
        ChordsCmd::Count { n, k, limit } => {
            let row = crossing_distribution(n, limit)?;
            json!({ "n": n, "k": k, "count": row.get(k).map(|c| c.to_string()).unwrap_or_else(|| "0".into()) })
        }
        ChordsCmd::Crossings { pairs } => {
            let d = parse_pairs(&pairs)?;
            json!({ "diagram": d, "crossings": d.crossings() })
        }
        ChordsCmd::Encode { pairs } => {
            let d = parse_pairs(&pairs)?;
            json!({ "diagram": d, "code": sawtooth_encode(&d) })
        }
        ChordsCmd::Decode { parens, kappa } => {
            let code = SawtoothCode { parens, kappa: parse_list(&kappa)? };
            let d = sawtooth_decode(&code)?;
            json!({ "diagram": d, "crossings": d.crossings() })
        }
        ChordsCmd::ReadBound { n, k } => json!({ "n": n, "k": k, "bound": read_bound(n, k) }),
    };
    Ok(versioned(out))
}
