use std::path::PathBuf;

use clap::{Args, Subcommand};
use serde_json::json;

use topoglyph_core::arrangements::{decode, dual_quadrangulation, encode, enumerate_classes};
use topoglyph_core::{AlphaCode, Arrangement, PerimetricOrder};

use crate::{read_json, svg, to_value, versioned, write_file, CliError, Context, Output};

#[derive(Debug, Args)]
pub struct OrderArg {
    /// Endpoints around the disc, e.g. "a1,a2,b1,b2".
    #[arg(long)]
    order: String,
    /// Position of the cut that linearizes the order.
    #[arg(long, default_value_t = 0)]
    cut: usize,
}

impl OrderArg {
    fn load(&self) -> Result<PerimetricOrder, CliError> {
        Ok(PerimetricOrder::parse(&self.order, self.cut)?)
    }
}

#[derive(Debug, Args)]
pub struct ArrangementArg {
    /// Arrangement JSON file.
    #[arg(long, conflicts_with_all = ["order", "alpha"], required_unless_present = "order")]
    arrangement: Option<PathBuf>,
    #[arg(long, requires = "alpha")]
    order: Option<String>,
    #[arg(long, default_value_t = 0)]
    cut: usize,
    /// Bit lists per pseudochord separated by ';', e.g. "1;0".
    #[arg(long, requires = "order")]
    alpha: Option<String>,
}

impl ArrangementArg {
    fn load(&self) -> Result<Arrangement, CliError> {
        match (&self.arrangement, &self.order, &self.alpha) {
            (Some(path), _, _) => read_json(path),
            (None, Some(order), Some(alpha)) => {
                let order = PerimetricOrder::parse(order, self.cut)?;
                Ok(decode(&order, &AlphaCode::parse(&order.labels(), alpha)?)?)
            }
            _ => Err(CliError::Usage("give --arrangement, or --order with --alpha".into())),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum ArrCmd {
    /// Pairs of pseudochords whose endpoints interleave.
    CrossingPairs(OrderArg),
    /// Every isomorphism class with the given perimetric order.
    Enumerate {
        #[command(flatten)]
        order: OrderArg,
        /// Refuse orders with more pseudochords than this.
        #[arg(long, default_value_t = 6)]
        limit: usize,
    },
    /// The alpha code of an arrangement.
    Encode {
        #[arg(long)]
        arrangement: PathBuf,
    },
    /// The arrangement with a given order and alpha code.
    Decode {
        #[command(flatten)]
        order: OrderArg,
        #[arg(long)]
        alpha: String,
    },
    /// Dual quadrangulation with its structural checks.
    Dual {
        #[command(flatten)]
        input: ArrangementArg,
        /// Also write an SVG picture here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

pub fn run(cmd: ArrCmd, _ctx: &Context) -> Result<Output, CliError> {
    let out = match cmd {
        ArrCmd::CrossingPairs(o) => {
            let order = o.load()?;
            let pairs = order.crossing_pairs();
            json!({ "order": order, "count": pairs.len(), "pairs": pairs })
        }
        ArrCmd::Enumerate { order, limit } => {
            let order = order.load()?;
            let classes = enumerate_classes(&order, limit)?;
            let list: Vec<_> = classes
                .iter()
                .map(|a| json!({ "crossing_orders": a.crossing_orders(), "alpha": encode(a).to_string() }))
                .collect();
            json!({
                "order": order,
                "crossings": order.crossing_pairs().len(),
                "count": classes.len().to_string(),
                "classes": list,
            })
        }
        ArrCmd::Encode { arrangement } => {
            let a: Arrangement = read_json(&arrangement)?;
            let code = encode(&a);
            json!({ "alpha": code.to_string(), "bits": code.total_bits(), "code": code })
        }
        ArrCmd::Decode { order, alpha } => {
            let order = order.load()?;
            let a = decode(&order, &AlphaCode::parse(&order.labels(), &alpha)?)?;
            json!({ "arrangement": a, "crossings": a.crossings() })
        }
        ArrCmd::Dual { input, svg: path } => {
            let a = input.load()?;
            let dual = dual_quadrangulation(&a)?;
            if let Some(p) = path {
                write_file(&p, &svg::dual(&dual))?;
            }
            let external = dual.vertices.len() - (a.n() + a.crossings() + 1);
            json!({
                "arrangement": a,
                "external_vertices": external,
                "internal_vertices": dual.vertices.len() - external,
                "checks": dual.checks(),
                "dual": to_value(&dual),
            })
        }
    };
    Ok(versioned(out))
}
