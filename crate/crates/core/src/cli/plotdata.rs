use std::collections::BTreeMap;
use std::io::Read;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Two-column series derived from a sweep CSV.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    /// `(p1, avg_local_clustering)`.
    ClusteringByP1,
    /// `(m, avg_shortest_path)`.
    PathLengthByM,
    /// `(ln N, avg_shortest_path)`.
    PathLengthByLogN,
}

impl Figure {
    fn x_column(self) -> &'static str {
        match self {
            Figure::ClusteringByP1 => "p1",
            Figure::PathLengthByM => "m",
            Figure::PathLengthByLogN => "N",
        }
    }

    fn y_column(self) -> &'static str {
        match self {
            Figure::ClusteringByP1 => "avg_local_clustering",
            Figure::PathLengthByM | Figure::PathLengthByLogN => "avg_shortest_path",
        }
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" | "fig1" | "p1-clustering" => Ok(Figure::ClusteringByP1),
            "2" | "fig2" | "m-aspl" => Ok(Figure::PathLengthByM),
            "3" | "fig3" | "logn-aspl" => Ok(Figure::PathLengthByLogN),
            other => Err(Error::invalid(format!(
                "unknown figure {other:?}: expected 1, 2 or 3"
            ))),
        }
    }
}

/// Means over repetitions, one `(x, y)` point per distinct x, sorted by x.
/// Rows whose `status` column is present and not `ok` are skipped.
pub fn plot_series<R: Read>(input: R, figure: Figure) -> Result<Vec<(f64, f64)>> {
    let mut reader = csv::Reader::from_reader(input);
    let headers = reader.headers()?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::invalid(format!("sweep CSV is missing column {name:?}")))
    };
    let xi = column(figure.x_column())?;
    let yi = column(figure.y_column())?;
    let status = headers.iter().position(|h| h == "status");

    // Keyed by the bit pattern of x so equal values group exactly.
    let mut groups: BTreeMap<u64, (f64, f64, usize)> = BTreeMap::new();
    for (line, record) in reader.records().enumerate() {
        let record = record?;
        if status.is_some_and(|s| record.get(s) != Some("ok")) {
            continue;
        }
        let field = |i: usize, name: &str| -> Result<f64> {
            record
                .get(i)
                .and_then(|v| v.trim().parse::<f64>().ok())
                .ok_or_else(|| {
                    Error::invalid(format!("row {}: bad value in column {name:?}", line + 2))
                })
        };
        let mut x = field(xi, figure.x_column())?;
        if figure == Figure::PathLengthByLogN {
            x = x.ln();
        }
        let y = field(yi, figure.y_column())?;
        let slot = groups.entry(x.to_bits()).or_insert((x, 0.0, 0));
        slot.1 += y;
        slot.2 += 1;
    }
    let mut points: Vec<(f64, f64)> = groups
        .into_values()
        .map(|(x, sum, count)| (x, sum / count as f64))
        .collect();
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(points)
}
