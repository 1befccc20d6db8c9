use std::collections::HashSet;
use std::io::Write;
use std::sync::mpsc;
use std::time::Instant;

use rayon::prelude::*;

use super::{format_gamma, format_real};
use crate::error::{Error, Result};
use crate::generator::{generate, GenParams, InitialGraphSpec};
use crate::metrics::{measure, AsplPolicy, NetworkMetrics};
use crate::sampling::{mix64, DistanceModel, RngSeed};

/// Sweep specs shipped with the crate, addressable as `builtin:<name>`.
pub const BUILTIN_SPECS: [(&str, &str); 4] = [
    ("table1", include_str!("../../sweeps/table1.sweep")),
    ("table2", include_str!("../../sweeps/table2.sweep")),
    ("table3", include_str!("../../sweeps/table3.sweep")),
    ("table4", include_str!("../../sweeps/table4.sweep")),
];

pub fn builtin_spec(name: &str) -> Option<&'static str> {
    BUILTIN_SPECS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
}

/// Column order of sweep CSV files.
pub const SWEEP_COLUMNS: [&str; 23] = [
    "cell",
    "rep",
    "p1",
    "m",
    "N",
    "N_full",
    "scale",
    "special_edges",
    "initial",
    "beta",
    "epsilon",
    "seed",
    "n_nodes",
    "n_edges",
    "avg_local_clustering",
    "transitivity",
    "avg_shortest_path",
    "gamma",
    "max_degree",
    "aspl_mode",
    "wall_time_s",
    "timestamp",
    "status",
];

/// A parameter grid plus the settings shared by all of its cells.
///
/// The text form is one `key = value` per line; grid keys (`p1`, `m`, `N`,
/// `special_edges`) take comma-separated lists. `#` starts a comment line.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub p1: Vec<f64>,
    pub marks: Vec<usize>,
    pub nodes: Vec<usize>,
    pub special_edges: Vec<bool>,
    pub initial: InitialGraphSpec,
    pub distance: DistanceModel,
    pub base_seed: u64,
    pub seeds_per_cell: usize,
    pub aspl: AsplPolicy,
}

fn parse_list<T, F>(key: &str, value: &str, parse: F) -> Result<Vec<T>>
where
    F: Fn(&str) -> Option<T>,
{
    let items: Vec<&str> = value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if items.is_empty() {
        return Err(Error::invalid(format!("sweep key {key}: empty grid")));
    }
    items
        .into_iter()
        .map(|s| {
            parse(s).ok_or_else(|| Error::invalid(format!("sweep key {key}: bad value {s:?}")))
        })
        .collect()
}

fn parse_one<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::invalid(format!("sweep key {key}: bad value {value:?}")))
}

impl SweepSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut p1 = None;
        let mut marks = None;
        let mut nodes = None;
        let mut special_edges = vec![true];
        let mut initial = InitialGraphSpec::default();
        let mut distance = DistanceModel::default();
        let mut base_seed = 0;
        let mut seeds_per_cell = 3;
        let mut aspl = AsplPolicy::Auto;
        let mut seen = HashSet::new();

        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::invalid(format!("sweep line {}: expected key = value", lineno + 1))
            })?;
            let key = key.trim();
            if !seen.insert(key.to_string()) {
                return Err(Error::invalid(format!("sweep key {key} given twice")));
            }
            match key {
                "p1" => p1 = Some(parse_list(key, value, |s| s.parse().ok())?),
                "m" => marks = Some(parse_list(key, value, |s| s.parse().ok())?),
                "N" => nodes = Some(parse_list(key, value, |s| s.parse().ok())?),
                "special_edges" => special_edges = parse_list(key, value, |s| s.parse().ok())?,
                "initial" => initial = value.trim().parse()?,
                "beta" => distance.beta = parse_one(key, value)?,
                "epsilon" => distance.epsilon = parse_one(key, value)?,
                "seed" => base_seed = parse_one(key, value)?,
                "seeds_per_cell" => seeds_per_cell = parse_one(key, value)?,
                "aspl" => aspl = value.trim().parse()?,
                other => return Err(Error::invalid(format!("unknown sweep key {other:?}"))),
            }
        }

        fn require<T>(v: Option<Vec<T>>, key: &str) -> Result<Vec<T>> {
            v.ok_or_else(|| Error::invalid(format!("sweep spec is missing the {key} grid")))
        }
        let spec = SweepSpec {
            p1: require(p1, "p1")?,
            marks: require(marks, "m")?,
            nodes: require(nodes, "N")?,
            special_edges,
            initial,
            distance,
            base_seed,
            seeds_per_cell,
            aspl,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p1.is_empty()
            || self.marks.is_empty()
            || self.nodes.is_empty()
            || self.special_edges.is_empty()
        {
            return Err(Error::invalid("sweep grid is empty"));
        }
        if self.seeds_per_cell == 0 {
            return Err(Error::invalid("seeds_per_cell must be at least 1"));
        }
        for &p1 in &self.p1 {
            crate::sampling::check_p1(p1)?;
        }
        if self.marks.contains(&0) || self.nodes.contains(&0) {
            return Err(Error::invalid("m and N grid values must be at least 1"));
        }
        self.distance.validate()
    }

    /// Every run of the grid: N, then m, then p1, then special_edges, then repetition.
    pub fn cells(&self, scale: usize) -> Vec<Cell> {
        let scale = scale.max(1);
        let mut cells = Vec::new();
        for &n_full in &self.nodes {
            for &m in &self.marks {
                for &p1 in &self.p1 {
                    for &special_edges in &self.special_edges {
                        for rep in 0..self.seeds_per_cell {
                            cells.push(Cell {
                                index: cells.len(),
                                rep,
                                p1,
                                m,
                                n: (n_full / scale).max(1),
                                n_full,
                                scale,
                                special_edges,
                                seed: cell_seed(self.base_seed, p1, m, n_full, special_edges, rep),
                            });
                        }
                    }
                }
            }
        }
        cells
    }

    pub fn gen_params(&self, cell: &Cell) -> GenParams {
        GenParams {
            initial: self.initial.clone(),
            nodes_to_add: cell.n,
            marks_per_walk: cell.m,
            p1: cell.p1,
            special_edges: cell.special_edges,
            distance: self.distance,
            seed: RngSeed(cell.seed),
        }
    }
}

/// Seed of one run, hashed from the base seed and the cell's own parameter
/// values, so growing the grid leaves existing cells' seeds unchanged.
pub fn cell_seed(base: u64, p1: f64, m: usize, n_full: usize, special: bool, rep: usize) -> u64 {
    [
        p1.to_bits(),
        m as u64,
        n_full as u64,
        special as u64,
        rep as u64,
    ]
    .into_iter()
    .fold(mix64(base), |h, v| mix64(h ^ v))
}

/// One run of a sweep grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub index: usize,
    pub rep: usize,
    pub p1: f64,
    pub m: usize,
    /// Nodes added in this run (after scaling).
    pub n: usize,
    /// N as written in the spec.
    pub n_full: usize,
    pub scale: usize,
    pub special_edges: bool,
    pub seed: u64,
}

/// Outcome of one sweep run.
#[derive(Clone, Debug)]
pub struct RunRecord {
    pub cell: Cell,
    pub params: GenParams,
    pub metrics: Option<NetworkMetrics>,
    pub wall_time_s: f64,
    pub timestamp: String,
    /// `ok`, or `error: <message>`.
    pub status: String,
}

impl RunRecord {
    pub fn is_ok(&self) -> bool {
        self.metrics.is_some()
    }

    /// Fields in [`SWEEP_COLUMNS`] order.
    pub fn row(&self) -> Vec<String> {
        let c = &self.cell;
        let mut row = vec![
            c.index.to_string(),
            c.rep.to_string(),
            format_real(c.p1),
            c.m.to_string(),
            c.n.to_string(),
            c.n_full.to_string(),
            c.scale.to_string(),
            c.special_edges.to_string(),
            self.params.initial.to_string(),
            format_real(self.params.distance.beta),
            format_real(self.params.distance.epsilon),
            c.seed.to_string(),
        ];
        match &self.metrics {
            Some(m) => row.extend([
                m.node_count.to_string(),
                m.edge_count.to_string(),
                format_real(m.avg_local_clustering),
                format_real(m.transitivity),
                format_real(m.avg_shortest_path),
                format_gamma(m.gamma),
                m.max_degree.to_string(),
                m.aspl_mode.to_string(),
            ]),
            None => row.extend(std::iter::repeat_n(String::new(), 8)),
        }
        row.extend([
            format_real(self.wall_time_s),
            self.timestamp.clone(),
            self.status.clone(),
        ]);
        row
    }
}

/// Generates and measures one cell. Failures are captured in the record.
pub fn run_cell(spec: &SweepSpec, cell: &Cell) -> RunRecord {
    let params = spec.gen_params(cell);
    let started = Instant::now();
    let outcome = generate(&params).and_then(|g| {
        let mode = spec
            .aspl
            .resolve(g.node_count(), RngSeed(cell.seed).derive(1).0);
        measure(&g, mode)
    });
    let wall_time_s = started.elapsed().as_secs_f64();
    let (metrics, status) = match outcome {
        Ok(m) => (Some(m), "ok".to_string()),
        Err(e) => (None, format!("error: {e}")),
    };
    RunRecord {
        cell: cell.clone(),
        params,
        metrics,
        wall_time_s,
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        status,
    }
}

/// Runs every cell on up to `jobs` worker threads and appends one CSV row per
/// run to `out` (header first) as results arrive. `progress` sees each record
/// with the number finished so far and the total.
pub fn run_sweep<W, P>(
    spec: &SweepSpec,
    scale: usize,
    jobs: usize,
    out: W,
    mut progress: P,
) -> Result<Vec<RunRecord>>
where
    W: Write,
    P: FnMut(&RunRecord, usize, usize),
{
    spec.validate()?;
    let cells = spec.cells(scale);
    let total = cells.len();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::invalid(format!("cannot start {jobs} workers: {e}")))?;

    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(SWEEP_COLUMNS)?;
    writer.flush().map_err(|e| Error::io("<sweep output>", e))?;

    let (tx, rx) = mpsc::channel::<RunRecord>();
    std::thread::scope(|scope| -> Result<Vec<RunRecord>> {
        let cells = &cells;
        scope.spawn(move || {
            pool.install(|| {
                cells.par_iter().for_each_with(tx, |tx, cell| {
                    // The receiver only disappears after a write error.
                    let _ = tx.send(run_cell(spec, cell));
                })
            })
        });
        let mut records = Vec::with_capacity(total);
        for record in rx {
            writer.write_record(record.row())?;
            writer.flush().map_err(|e| Error::io("<sweep output>", e))?;
            records.push(record);
            progress(records.last().unwrap(), records.len(), total);
        }
        Ok(records)
    })
}
