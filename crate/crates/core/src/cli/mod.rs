//! Library side of the `walknet` command line: CSV formatting, sweep
//! execution and figure-series aggregation.

mod plotdata;
mod sweep;

pub use plotdata::{plot_series, Figure};
pub use sweep::{
    builtin_spec, cell_seed, run_cell, run_sweep, Cell, RunRecord, SweepSpec, BUILTIN_SPECS,
    SWEEP_COLUMNS,
};

use crate::metrics::NetworkMetrics;

/// Column order of `walknet measure` rows.
pub const MEASURE_COLUMNS: [&str; 8] = [
    "n_nodes",
    "n_edges",
    "avg_local_clustering",
    "transitivity",
    "avg_shortest_path",
    "gamma",
    "max_degree",
    "aspl_mode",
];

/// Formats a real with 6 significant digits, `.` as decimal separator and
/// always at least one fractional digit. Non-finite values print as `nan`/`inf`.
pub fn format_real(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let rounded: f64 = format!("{x:.5e}").parse().unwrap_or(x);
    let mut s = format!("{rounded}");
    if !s.contains('.') {
        s.push_str(".0");
    }
    s
}

pub fn format_gamma(gamma: Option<f64>) -> String {
    gamma.map_or_else(|| "nan".to_string(), format_real)
}

/// Fields of one `measure` row, in [`MEASURE_COLUMNS`] order.
pub fn measure_row(m: &NetworkMetrics) -> Vec<String> {
    vec![
        m.node_count.to_string(),
        m.edge_count.to_string(),
        format_real(m.avg_local_clustering),
        format_real(m.transitivity),
        format_real(m.avg_shortest_path),
        format_gamma(m.gamma),
        m.max_degree.to_string(),
        m.aspl_mode.to_string(),
    ]
}
