use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Subcommand};
use serde_json::json;

use topoglyph_core::rotsys::{
    classify_quadruple, convex, crossing_pairs_complete, find_unavoidable, first_odd_quadruple, is_good,
    is_realizable4, signature, triple_type, twisted,
};
use topoglyph_core::search::{
    enumerate_good, extend_good, restriction, vc_dimension, Permutation, PermutationSet, SearchOptions,
};
use topoglyph_core::{CyclicPerm, Label, RotationSystem};

use crate::{parse_list, read_json, to_value, versioned, CliError, Context, Output};

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SystemArg {
    /// Rotations of labels 1..n separated by ';', e.g. "2,4,3;1,3,4;1,4,2;1,2,3".
    #[arg(long)]
    rows: Option<String>,
    /// JSON file with "ground" and "rotations".
    #[arg(long)]
    system: Option<PathBuf>,
}

impl SystemArg {
    fn load(&self) -> Result<RotationSystem, CliError> {
        match (&self.rows, &self.system) {
            (Some(rows), _) => parse_rows(rows),
            (None, Some(path)) => read_json(path),
            (None, None) => Err(CliError::Usage("give --rows or --system".into())),
        }
    }
}

fn parse_rows(s: &str) -> Result<RotationSystem, CliError> {
    let rows: Vec<Vec<Label>> = s.split(';').map(parse_list).collect::<Result<_, _>>()?;
    let refs: Vec<&[Label]> = rows.iter().map(Vec::as_slice).collect();
    Ok(RotationSystem::from_rows(&refs)?)
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Abort after exploring this many search nodes.
    #[arg(long)]
    node_budget: Option<u64>,
    /// Abort after this many seconds.
    #[arg(long)]
    time_budget: Option<f64>,
}

impl BudgetArgs {
    fn options(&self, ctx: &Context, witnesses: usize, max_n: usize) -> Result<SearchOptions, CliError> {
        let time_budget = match self.time_budget {
            Some(t) if !(t.is_finite() && t > 0.0) => {
                return Err(CliError::Usage("--time-budget must be positive".into()))
            }
            t => t.map(Duration::from_secs_f64),
        };
        Ok(SearchOptions {
            workers: ctx.workers,
            witnesses,
            max_n,
            node_budget: self.node_budget,
            time_budget,
            symmetry_reduction: false,
        })
    }
}

#[derive(Debug, Subcommand)]
pub enum RotsysCmd {
    /// Signs, realizability and drawing class of a 4-element system.
    Classify(SystemArg),
    /// Checks that every 4-element subsystem has even parity.
    IsGood(SystemArg),
    /// Crossing edge pairs determined by a good system.
    CrossingPairs(SystemArg),
    /// Subsystem induced by a set of labels.
    Restrict {
        #[command(flatten)]
        system: SystemArg,
        /// Comma-separated labels to keep.
        #[arg(long)]
        labels: String,
    },
    /// The convex system on n elements.
    Convex {
        #[arg(long)]
        n: u32,
    },
    /// The twisted system on n elements.
    Twisted {
        #[arg(long)]
        n: u32,
    },
    /// Type of a triple of labels relative to a base label.
    TripleType {
        #[command(flatten)]
        system: SystemArg,
        #[arg(long)]
        base: Label,
        /// Three increasing labels, comma-separated.
        #[arg(long)]
        triple: String,
    },
    /// Looks for a convex or twisted subsystem with m non-base labels.
    Unavoidable {
        #[command(flatten)]
        system: SystemArg,
        #[arg(long)]
        m: usize,
    },
    /// Counts good systems on n labeled elements.
    EnumerateGood {
        #[arg(long)]
        n: usize,
        /// Number of systems to list.
        #[arg(long, default_value_t = 0)]
        witnesses: usize,
        /// Count one system per relabeling class.
        #[arg(long)]
        symmetry: bool,
        /// Refuse n above this value.
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Rotations of a new element n+1 that extend a good system.
    Extend {
        #[command(flatten)]
        system: SystemArg,
        /// Report whether this rotation of the new element is admitted.
        #[arg(long)]
        forbid: Option<String>,
        /// Number of full extensions to list.
        #[arg(long, default_value_t = 0)]
        witnesses: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Pattern of a permutation at the given 1-based positions.
    Restriction {
        /// One-line notation, comma-separated.
        #[arg(long)]
        perm: String,
        #[arg(long)]
        positions: String,
    },
    /// VC-dimension of the n-permutations avoiding a pattern.
    VcDimension {
        #[arg(long)]
        n: usize,
        /// Pattern to avoid; all permutations when omitted.
        #[arg(long)]
        avoid: Option<String>,
    },
}

pub fn run(cmd: RotsysCmd, ctx: &Context) -> Result<Output, CliError> {
    let out = match cmd {
        RotsysCmd::Classify(s) => {
            let r = s.load()?;
            let sig = signature(&r)?;
            let class = classify_quadruple(&r)?;
            json!({
                "signature": sig.to_string(),
                "realizable": is_realizable4(&r)?,
                "tag": class.tag,
                "crossing_pair": class.crossing_pair,
            })
        }
        RotsysCmd::IsGood(s) => {
            let r = s.load()?;
            json!({ "good": is_good(&r)?, "odd_quadruple": first_odd_quadruple(&r) })
        }
        RotsysCmd::CrossingPairs(s) => {
            let pairs = crossing_pairs_complete(&s.load()?)?;
            json!({ "count": pairs.len(), "pairs": pairs })
        }
        RotsysCmd::Restrict { system, labels } => {
            let r = system.load()?.restrict(&parse_list::<Label>(&labels)?)?;
            json!({ "system": r })
        }
        RotsysCmd::Convex { n } => json!({ "system": convex(n)? }),
        RotsysCmd::Twisted { n } => json!({ "system": twisted(n)? }),
        RotsysCmd::TripleType { system, base, triple } => {
            let t: Vec<Label> = parse_list(&triple)?;
            let t: [Label; 3] = t.try_into().map_err(|_| CliError::Usage("--triple needs three labels".into()))?;
            let ty = triple_type(&system.load()?, base, t)?;
            json!({ "type": ty.to_string(), "convex": ty.is_convex() })
        }
        RotsysCmd::Unavoidable { system, m } => json!({ "result": find_unavoidable(&system.load()?, m)? }),
        RotsysCmd::EnumerateGood { n, witnesses, symmetry, max_n, budget } => {
            let mut opts = budget.options(ctx, witnesses, max_n)?;
            opts.symmetry_reduction = symmetry;
            let rep = enumerate_good(n, &opts)?;
            let mut v = to_value(&rep);
            v["n"] = n.into();
            v["labeled"] = (!symmetry).into();
            v
        }
        RotsysCmd::Extend { system, forbid, witnesses, budget } => {
            let r = system.load()?;
            let opts = budget.options(ctx, usize::MAX, r.size() + 1)?;
            let rep = extend_good(&r, &opts)?;
            let allowed: Vec<String> = rep.witnesses.iter().map(|x| x.rotation.to_string()).collect();
            let mut v = json!({
                "count": rep.count,
                "nodes_explored": rep.nodes_explored,
                "allowed": allowed,
                "witnesses": rep.witnesses.iter().take(witnesses).collect::<Vec<_>>(),
            });
            if let Some(f) = forbid {
                let rot = CyclicPerm::new(parse_list(&f)?)?;
                v["forbidden"] = rot.to_string().into();
                v["forbidden_admitted"] = rep.witnesses.iter().any(|x| x.rotation == rot).into();
            }
            v
        }
        RotsysCmd::Restriction { perm, positions } => {
            let pi = Permutation::new(parse_list(&perm)?)?;
            json!({ "pattern": restriction(&pi, &parse_list(&positions)?)? })
        }
        RotsysCmd::VcDimension { n, avoid } => {
            let set = match avoid {
                Some(p) => PermutationSet::avoiding(n, &Permutation::new(parse_list(&p)?)?)?,
                None => PermutationSet::all(n),
            };
            json!({ "n": n, "size": set.len(), "vc_dimension": vc_dimension(&set) })
        }
    };
    Ok(versioned(out))
}
