use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Subcommand;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, ToPrimitive};
use serde_json::json;

use topoglyph_core::drawings::geometry::Point;
use topoglyph_core::drawings::{
    from_straight_line, is_isomorphic, k2n_family, spanning_tree, t_representation, weak_iso,
};
use topoglyph_core::{Drawing, Label};

use crate::{read_json, read_text, svg, to_value, versioned, write_file, CliError, Context, Output};

#[derive(Debug, Subcommand)]
pub enum DrawCmd {
    /// Checks every drawing invariant and reports the Euler counts.
    Validate { file: PathBuf },
    /// The abstract topological graph: graph plus crossing pairs.
    AtGraph { file: PathBuf },
    /// Isomorphism of two drawings of the same labeled graph.
    Iso { a: PathBuf, b: PathBuf },
    /// Equality of the crossing pairs of two drawings.
    WeakIso { a: PathBuf, b: PathBuf },
    /// Vertex sets of the topological components.
    Components { file: PathBuf },
    /// A spanning tree of the planarization.
    SpanningTree { file: PathBuf },
    /// The T-representation along a spanning tree.
    Trep { file: PathBuf },
    /// Straight-line drawing from a CSV of "v,label,x,y" and "e,u,w" rows.
    FromPoints {
        file: PathBuf,
        /// Also write an SVG picture here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// The AT-graphs of K_{2,n} sharing one rotation system.
    K2n {
        #[arg(long)]
        n: usize,
    },
}

fn load(path: &Path) -> Result<Drawing, CliError> {
    read_json(path)
}

fn parse_coordinate(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Input(format!("bad coordinate {s:?}"));
    if s.contains('/') {
        return BigRational::from_str(s).map_err(|_| bad());
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = BigInt::from_str(&format!("0{int}{frac}")).map_err(|_| bad())?;
    let value = BigRational::new(digits, BigInt::from(10).pow(frac.len() as u32));
    Ok(if neg { -value } else { value })
}

/// Reads vertices and edges; vertex labels must be exactly 1..=n.
fn read_points(path: &Path) -> Result<(Vec<Point>, Vec<[Label; 2]>), CliError> {
    let text = read_text(path)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let fields: Vec<&str> = row.iter().collect();
        let at = |msg: &str| CliError::Input(format!("{}: record {}: {msg}", path.display(), i + 1));
        let label = |s: &str| s.parse::<Label>().map_err(|_| at(&format!("bad label {s:?}")));
        match fields.as_slice() {
            ["v", v, x, y] => vertices.push((label(v)?, parse_coordinate(x)?, parse_coordinate(y)?)),
            ["e", u, w] => edges.push([label(u)?, label(w)?]),
            [""] => {}
            _ => return Err(at("expected \"v,label,x,y\" or \"e,u,w\"")),
        }
    }
    vertices.sort_by_key(|v| v.0);
    if !vertices.iter().map(|v| v.0).eq(1..=vertices.len() as Label) {
        return Err(CliError::Input("vertex labels must be 1..n, each once".into()));
    }
    Ok((vertices.into_iter().map(|(_, x, y)| (x, y)).collect(), edges))
}

pub fn run(cmd: DrawCmd, _ctx: &Context) -> Result<Output, CliError> {
    let out = match cmd {
        DrawCmd::Validate { file } => {
            let d = load(&file)?;
            if let Some(first) = d.diagnostics().into_iter().next() {
                return Err(topoglyph_core::DrawingError::Invalid(first).into());
            }
            let counts: Vec<_> =
                d.euler_counts()?.into_iter().map(|(v, e, f)| json!({ "v": v, "e": e, "f": f })).collect();
            json!({ "valid": true, "components": counts })
        }
        DrawCmd::AtGraph { file } => {
            let d = load(&file)?;
            d.validate()?;
            json!({ "at_graph": d.at_graph() })
        }
        DrawCmd::Iso { a, b } => json!({ "isomorphic": is_isomorphic(&load(&a)?, &load(&b)?)? }),
        DrawCmd::WeakIso { a, b } => json!({ "weakly_isomorphic": weak_iso(&load(&a)?, &load(&b)?)? }),
        DrawCmd::Components { file } => {
            let d = load(&file)?;
            d.validate()?;
            json!({ "components": d.topological_components() })
        }
        DrawCmd::SpanningTree { file } => {
            let tree = spanning_tree(&load(&file)?)?;
            json!({ "node_count": tree.node_count(), "tree": tree })
        }
        DrawCmd::Trep { file } => {
            let d = load(&file)?;
            let tree = spanning_tree(&d)?;
            let rep = t_representation(&d, &tree)?;
            let recovered = rep.reconstructed_pairs() == d.crossing_pairs();
            json!({ "representation": rep, "crossing_pairs_recovered": recovered })
        }
        DrawCmd::FromPoints { file, svg: path } => {
            let (points, edges) = read_points(&file)?;
            let d = from_straight_line(&points, &edges)?;
            if let Some(p) = path {
                let coords: Vec<(f64, f64)> =
                    points.iter().map(|(x, y)| (x.to_f64().unwrap_or(0.0), y.to_f64().unwrap_or(0.0))).collect();
                write_file(&p, &svg::straight_line(&coords, &edges))?;
            }
            json!({ "crossings": d.crossing_pairs().len(), "drawing": to_value(&d) })
        }
        DrawCmd::K2n { n } => {
            let family = k2n_family(n)?;
            json!({ "n": n, "count": family.len(), "members": family })
        }
    };
    Ok(versioned(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(parse_coordinate("3").unwrap(), r(3, 1));
        assert_eq!(parse_coordinate("-1.25").unwrap(), r(-5, 4));
        assert_eq!(parse_coordinate(".5").unwrap(), r(1, 2));
        assert_eq!(parse_coordinate("2/6").unwrap(), r(1, 3));
        assert!(parse_coordinate("1e3").is_err());
        assert!(parse_coordinate(".").is_err());
        assert!(parse_coordinate("").is_err());
    }
}
