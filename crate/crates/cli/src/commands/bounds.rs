use std::path::PathBuf;

use clap::{Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use topoglyph_core::bounds::{
    adjacent_edge_pairs, alpha_d, arrangement_bound, catalan, corollary_constant, cross_moments, cross_variance,
    find_partition, inverse_ackermann, mullin_schellenberg, mullin_schellenberg_binomial_bound, nikiforov_bound,
    pattern_graph, tutte_maps, walsh_lehman_loopless, PatternKind,
};
use topoglyph_core::chords::read_bound;
use topoglyph_core::SimpleGraph;

use crate::{read_json, versioned, CliError, Context, Output};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Formula {
    /// Rooted planar maps with m edges.
    Tutte,
    /// Rooted loopless planar maps with m edges.
    WalshLehman,
    /// Rooted planar maps with m edges and n vertices.
    MullinSchellenberg,
    /// Binomial upper bound for the previous count.
    MsBinomial,
    /// Arrangements of n pseudochords with at most k crossings.
    Arrangement,
    /// Catalan number of n.
    Catalan,
    /// Chord diagrams on n chords with at most k crossings.
    Read,
    /// Upper bound on adjacent edge pairs for n vertices and m edges.
    Nikiforov,
    /// Inverse Ackermann function of m.
    Ackermann,
    /// The d-th level of the inverse Ackermann hierarchy at m.
    Alpha,
    /// Largest constant C over all n up to the given n.
    Corollary,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Pattern {
    Matching,
    Complete,
    Path,
    Cycle,
}

impl From<Pattern> for PatternKind {
    fn from(p: Pattern) -> Self {
        match p {
            Pattern::Matching => PatternKind::Matching,
            Pattern::Complete => PatternKind::Complete,
            Pattern::Path => PatternKind::Path,
            Pattern::Cycle => PatternKind::Cycle,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum BoundsCmd {
    /// Evaluates a closed form exactly.
    Eval {
        formula: Formula,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        d: Option<u32>,
    },
    /// Pairs of edges sharing an endpoint.
    AdjacentPairs {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Exact mean and variance of the edge count between two clusters.
    Variance {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        q: u32,
    },
    /// A random q-partition meeting the cut threshold on every pattern edge.
    Partition {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        q: u32,
        /// Expected number of pattern edges; checked against the pattern.
        #[arg(long)]
        r: Option<u64>,
        #[arg(long, value_enum, default_value_t = Pattern::Matching)]
        pattern: Pattern,
        #[arg(long, default_value_t = 100_000)]
        max_attempts: u64,
    },
}

fn need<T>(v: Option<T>, name: &str, formula: Formula) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("{formula:?} needs --{name}").to_lowercase()))
}

fn rational(r: &BigRational) -> Value {
    json!({ "exact": r.to_string(), "approx": r.to_f64() })
}

fn eval(f: Formula, m: Option<u64>, n: Option<u64>, k: Option<u64>, d: Option<u32>) -> Result<Value, CliError> {
    let count = |c: topoglyph_core::ExactCount| json!(c);
    Ok(match f {
        Formula::Tutte => count(tutte_maps(need(m, "m", f)?)),
        Formula::WalshLehman => count(walsh_lehman_loopless(need(m, "m", f)?)),
        Formula::MullinSchellenberg => count(mullin_schellenberg(need(m, "m", f)?, need(n, "n", f)?)?),
        Formula::MsBinomial => count(mullin_schellenberg_binomial_bound(need(m, "m", f)?, need(n, "n", f)?)?),
        Formula::Arrangement => count(arrangement_bound(need(n, "n", f)?, need(k, "k", f)?)?),
        Formula::Catalan => count(catalan(need(n, "n", f)?)),
        Formula::Read => count(read_bound(need(n, "n", f)?, need(k, "k", f)?)),
        Formula::Nikiforov => rational(&nikiforov_bound(need(n, "n", f)?, need(m, "m", f)?)?),
        Formula::Ackermann => json!(inverse_ackermann(need(m, "m", f)?)?),
        Formula::Alpha => json!(alpha_d(need(d, "d", f)?, need(m, "m", f)?)?),
        Formula::Corollary => rational(&corollary_constant(need(n, "n", f)?)),
    })
}

pub fn run(cmd: BoundsCmd, ctx: &Context) -> Result<Output, CliError> {
    let out = match cmd {
        BoundsCmd::Eval { formula, m, n, k, d } => {
            let value = eval(formula, m, n, k, d)?;
            json!({
                "formula": formula.to_possible_value().map(|p| p.get_name().to_owned()),
                "m": m, "n": n, "k": k, "d": d,
                "value": value,
            })
        }
        BoundsCmd::AdjacentPairs { graph } => {
            let g: SimpleGraph = read_json(&graph)?;
            json!({ "n": g.order(), "m": g.size(), "adjacent_pairs": adjacent_edge_pairs(&g) })
        }
        BoundsCmd::Variance { graph, q } => {
            let g: SimpleGraph = read_json(&graph)?;
            let (mean, second) = cross_moments(&g, q)?;
            let var = cross_variance(&g, q)?;
            json!({ "q": q, "mean": rational(&mean), "second_moment": rational(&second), "variance": rational(&var) })
        }
        BoundsCmd::Partition { graph, q, r, pattern, max_attempts } => {
            let g: SimpleGraph = read_json(&graph)?;
            let h = pattern_graph(pattern.into(), q)?;
            if let Some(r) = r {
                if r != h.size() as u64 {
                    return Err(CliError::Usage(format!("--r {r} but the pattern has {} edges", h.size())));
                }
            }
            let p = find_partition(&g, q, &h, ctx.seed, max_attempts)?;
            json!({ "seed": ctx.seed, "r": h.size(), "partition": p })
        }
    };
    Ok(versioned(out))
}
