//! Benchmark harness: sweeps the cluster count, evaluates every enabled
//! validity index on the winning partition per c, and renders the results
//! as a table (TSV or Markdown) and an optional SVG scatter plot.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::classic::{
    cwb_separation, v_bcrit, v_cwb, v_fs, v_k, v_pc, v_pe, v_xb, BcritParams, CwbParams,
    PeConfig,
};
use crate::core::{DataSet, FcmConfig};
use crate::error::{Error, Result};
use crate::fcm::{self, FcmResult};
use crate::proximity::{v_proposed, MuGrid, WeightConfig, WeightMode};

/// The eight validity indexes the harness can evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexKind {
    Pc,
    Pe,
    Xb,
    Fs,
    K,
    Cwb,
    Bcrit,
    Proposed,
}

impl IndexKind {
    pub const ALL: [IndexKind; 8] = [
        IndexKind::Pc,
        IndexKind::Pe,
        IndexKind::Xb,
        IndexKind::Fs,
        IndexKind::K,
        IndexKind::Cwb,
        IndexKind::Bcrit,
        IndexKind::Proposed,
    ];

    pub fn column_name(&self) -> &'static str {
        match self {
            IndexKind::Pc => "v_pc",
            IndexKind::Pe => "v_pe",
            IndexKind::Xb => "v_xb",
            IndexKind::Fs => "v_fs",
            IndexKind::K => "v_k",
            IndexKind::Cwb => "v_cwb",
            IndexKind::Bcrit => "v_bcrit",
            IndexKind::Proposed => "v_proposed",
        }
    }

    /// Selection rule: maximize for the partition coefficient, minimize for
    /// every other index.
    pub fn maximize(&self) -> bool {
        matches!(self, IndexKind::Pc)
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.column_name())
    }
}

impl FromStr for IndexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "v_pc" => Ok(IndexKind::Pc),
            "v_pe" => Ok(IndexKind::Pe),
            "v_xb" => Ok(IndexKind::Xb),
            "v_fs" => Ok(IndexKind::Fs),
            "v_k" => Ok(IndexKind::K),
            "v_cwb" => Ok(IndexKind::Cwb),
            "v_bcrit" => Ok(IndexKind::Bcrit),
            "v_proposed" => Ok(IndexKind::Proposed),
            other => Err(Error::Config(format!(
                "unknown index '{other}' (expected v_pc, v_pe, v_xb, v_fs, v_k, \
                 v_cwb, v_bcrit, or v_proposed)"
            ))),
        }
    }
}

/// Full sweep configuration. `c_max` defaults to floor(sqrt(n)) and
/// `cwb` to a self-scaled weight (the separation term of a c = 2 partition
/// of the same data) when left unset.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub c_min: usize,
    pub c_max: Option<usize>,
    pub fcm: FcmConfig,
    pub grid: MuGrid,
    pub weight: WeightConfig,
    pub pe: PeConfig,
    pub cwb: Option<CwbParams>,
    pub bcrit: BcritParams,
    pub indexes: Vec<IndexKind>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            c_min: 2,
            c_max: None,
            fcm: FcmConfig::default(),
            grid: MuGrid::default(),
            weight: WeightConfig::default(),
            pe: PeConfig::default(),
            cwb: None,
            bcrit: BcritParams::default(),
            indexes: IndexKind::ALL.to_vec(),
        }
    }
}

/// One table cell: a score (possibly +inf for separation-zero cases) or a
/// solver failure marker.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Score(f64),
    Failed,
}

/// Solver metadata for the winning run at one c.
#[derive(Debug, Clone, PartialEq)]
pub struct RowMeta {
    pub final_jm: f64,
    pub iterations: usize,
    pub restart_index: usize,
    pub seed_used: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub c: usize,
    pub cells: Vec<Cell>,
    /// None when the solver failed at this c.
    pub meta: Option<RowMeta>,
}

/// Per-c, per-index score table with each index's selected c and a full
/// echo of every parameter that affects any score.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidityReport {
    pub dataset: String,
    pub indexes: Vec<IndexKind>,
    pub config_echo: Vec<(String, String)>,
    pub notes: Vec<String>,
    pub rows: Vec<ReportRow>,
    /// Selected c per index (same order as `indexes`); None when every row
    /// was failed or non-finite for that index.
    pub selections: Vec<Option<usize>>,
}

/// A report plus the winning solver results per c (None where the solver
/// failed), for callers that need the partitions themselves.
#[derive(Debug)]
pub struct SweepOutcome {
    pub report: ValidityReport,
    pub results: Vec<(usize, Option<FcmResult>)>,
}

/// Applies each index's selection rule to its column: the extreme finite
/// score wins, failed rows and non-finite scores are skipped, and ties go
/// to the lowest c.
fn select(rows: &[ReportRow], indexes: &[IndexKind]) -> Vec<Option<usize>> {
    indexes
        .iter()
        .enumerate()
        .map(|(k, index)| {
            let mut best: Option<(usize, f64)> = None;
            for row in rows {
                let score = match row.cells[k] {
                    Cell::Score(x) if x.is_finite() => x,
                    _ => continue,
                };
                let better = match best {
                    None => true,
                    Some((_, incumbent)) => {
                        if index.maximize() {
                            score > incumbent
                        } else {
                            score < incumbent
                        }
                    }
                };
                if better {
                    best = Some((row.c, score));
                }
            }
            best.map(|(c, _)| c)
        })
        .collect()
}

fn dedupe_indexes(indexes: &[IndexKind]) -> Vec<IndexKind> {
    let mut out = Vec::new();
    for &idx in indexes {
        if !out.contains(&idx) {
            out.push(idx);
        }
    }
    out
}

fn weight_mode_name(mode: WeightMode) -> &'static str {
    match mode {
        WeightMode::Ratio => "ratio",
        WeightMode::ConstantOne => "constant_one",
    }
}

/// Runs the full sweep and returns both the report and the per-c partitions.
pub fn sweep_full(data: &DataSet, cfg: &SweepConfig) -> Result<SweepOutcome> {
    cfg.fcm.validate()?;
    let n = data.n();
    let c_max = cfg.c_max.unwrap_or_else(|| (n as f64).sqrt().floor() as usize);
    if cfg.c_min < 2 || cfg.c_min > c_max || c_max > n - 1 {
        return Err(Error::Config(format!(
            "cluster range [{}, {c_max}] must satisfy 2 <= c_min <= c_max <= n-1 = {}",
            cfg.c_min,
            n - 1
        )));
    }
    let indexes = dedupe_indexes(&cfg.indexes);
    if indexes.is_empty() {
        return Err(Error::Config("at least one index must be enabled".into()));
    }

    let mut results: Vec<(usize, Option<FcmResult>)> = Vec::new();
    for c in cfg.c_min..=c_max {
        match fcm::run(data, c, &cfg.fcm) {
            Ok(res) => results.push((c, Some(res))),
            Err(Error::AllRestartsFailed { .. }) => results.push((c, None)),
            Err(e) => return Err(e),
        }
    }
    if results.iter().all(|(_, r)| r.is_none()) {
        return Err(Error::SolverFailedEverywhere);
    }

    // Resolve the cwb weight: explicit value, or self-scaled to the
    // separation term of a c = 2 partition of this data.
    let needs_cwb = indexes.contains(&IndexKind::Cwb);
    let (cwb_params, cwb_origin) = match (cfg.cwb, needs_cwb) {
        (Some(p), _) => (p, "explicit"),
        (None, false) => (CwbParams::new(1.0).expect("valid"), "unused"),
        (None, true) => {
            let reference = results
                .iter()
                .find(|(c, r)| *c == 2 && r.is_some())
                .and_then(|(_, r)| r.as_ref().cloned())
                .or_else(|| fcm::run(data, 2, &cfg.fcm).ok());
            match reference.and_then(|r| cwb_separation(&r.v).ok()) {
                Some(alpha) => (
                    CwbParams::new(alpha).expect("separation term is nonnegative"),
                    "self-scaled at c=2",
                ),
                None => (CwbParams::new(1.0).expect("valid"), "fallback"),
            }
        }
    };

    let mut rows = Vec::new();
    for (c, maybe_res) in &results {
        let Some(res) = maybe_res else {
            rows.push(ReportRow {
                c: *c,
                cells: vec![Cell::Failed; indexes.len()],
                meta: None,
            });
            continue;
        };
        let mut cells = Vec::with_capacity(indexes.len());
        for index in &indexes {
            let score = match index {
                IndexKind::Pc => Ok(v_pc(&res.u)),
                IndexKind::Pe => Ok(v_pe(&res.u, &cfg.pe)),
                IndexKind::Xb => v_xb(data, &res.u, &res.v),
                IndexKind::Fs => v_fs(data, &res.u, &res.v),
                IndexKind::K => v_k(data, &res.u, &res.v),
                IndexKind::Cwb => v_cwb(data, &res.u, &res.v, &cwb_params),
                IndexKind::Bcrit => v_bcrit(data, &res.u, &res.v, &cfg.bcrit),
                IndexKind::Proposed => Ok(v_proposed(&res.u, &cfg.grid, &cfg.weight)),
            };
            let cell = match score {
                Ok(x) => Cell::Score(x),
                Err(Error::IdenticalCentroids) => Cell::Score(f64::INFINITY),
                Err(e) => return Err(e),
            };
            cells.push(cell);
        }
        rows.push(ReportRow {
            c: *c,
            cells,
            meta: Some(RowMeta {
                final_jm: *res.jm_trace.last().expect("trace never empty"),
                iterations: res.iterations,
                restart_index: res.restart_index,
                seed_used: res.seed_used,
            }),
        });
    }

    let selections = select(&rows, &indexes);

    let mut config_echo = vec![
        ("dataset".into(), data.name().to_string()),
        ("n".into(), n.to_string()),
        ("d".into(), data.d().to_string()),
        ("c_min".into(), cfg.c_min.to_string()),
        ("c_max".into(), c_max.to_string()),
        ("m".into(), cfg.fcm.m.to_string()),
        ("epsilon".into(), cfg.fcm.epsilon.to_string()),
        ("max_iter".into(), cfg.fcm.max_iter.to_string()),
        ("restarts".into(), cfg.fcm.restarts.to_string()),
        ("seed".into(), cfg.fcm.seed.to_string()),
        ("mu_step".into(), cfg.grid.step().to_string()),
        (
            "omega_mode".into(),
            weight_mode_name(cfg.weight.mode()).to_string(),
        ),
        ("vague_floor".into(), cfg.weight.vague_floor().to_string()),
        (
            "crisp_ceiling".into(),
            cfg.weight.crisp_ceiling().to_string(),
        ),
        ("pe_log_base".into(), cfg.pe.log_base().to_string()),
        (
            "cwb_alpha".into(),
            format!("{} ({cwb_origin})", cwb_params.alpha()),
        ),
        ("bcrit_alpha".into(), cfg.bcrit.alpha().to_string()),
        (
            "indexes".into(),
            indexes
                .iter()
                .map(|i| i.column_name())
                .collect::<Vec<_>>()
                .join(","),
        ),
    ];
    config_echo.shrink_to_fit();

    let mut notes = Vec::new();
    if data.name() == "iris" {
        notes.push(
            "for this dataset c=3 is a commonly defended alternative to c=2".to_string(),
        );
    }

    Ok(SweepOutcome {
        report: ValidityReport {
            dataset: data.name().to_string(),
            indexes,
            config_echo,
            notes,
            rows,
            selections,
        },
        results,
    })
}

/// Runs the full sweep and returns just the report.
pub fn sweep(data: &DataSet, cfg: &SweepConfig) -> Result<ValidityReport> {
    sweep_full(data, cfg).map(|outcome| outcome.report)
}

/// Which c the scatter plot should show: the proximity index's selection
/// when available, otherwise the first enabled index with a selection,
/// otherwise the lowest non-failed c.
pub fn plot_cluster_count(report: &ValidityReport) -> Option<usize> {
    if let Some(k) = report
        .indexes
        .iter()
        .position(|i| *i == IndexKind::Proposed)
    {
        if let Some(c) = report.selections[k] {
            return Some(c);
        }
    }
    if let Some(c) = report.selections.iter().flatten().next() {
        return Some(*c);
    }
    report
        .rows
        .iter()
        .find(|row| row.meta.is_some())
        .map(|row| row.c)
}

/// Formats a score with 4 significant digits; +inf prints as "inf".
fn format_sig4(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0.000".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-4..=7).contains(&exp) {
        return format!("{:.3e}", x);
    }
    if exp >= 4 {
        let scale = 10f64.powi(exp - 3);
        return format!("{}", (x / scale).round() * scale);
    }
    let decimals = (3 - exp).max(0) as usize;
    format!("{:.*}", decimals, x)
}

/// Output format for `emit_table`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Tsv,
    Markdown,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tsv" => Ok(TableFormat::Tsv),
            "markdown" => Ok(TableFormat::Markdown),
            other => Err(Error::Config(format!(
                "unknown format '{other}' (expected tsv or markdown)"
            ))),
        }
    }
}

/// Renders the report: a config-echo header, optional notes, then one row
/// per c and one column per index. The selected cell per column is marked
/// (trailing '*' in TSV, bold in Markdown); failed rows print "FAILED".
pub fn emit_table(report: &ValidityReport, format: TableFormat) -> String {
    let mut out = String::new();
    for (key, value) in &report.config_echo {
        out.push_str(&format!("# {key} = {value}\n"));
    }
    for note in &report.notes {
        out.push_str(&format!("# note: {note}\n"));
    }
    match format {
        TableFormat::Tsv => {
            out.push('c');
            for index in &report.indexes {
                out.push('\t');
                out.push_str(index.column_name());
            }
            out.push('\n');
            for row in &report.rows {
                out.push_str(&row.c.to_string());
                for (k, cell) in row.cells.iter().enumerate() {
                    out.push('\t');
                    match cell {
                        Cell::Failed => out.push_str("FAILED"),
                        Cell::Score(x) => {
                            out.push_str(&format_sig4(*x));
                            if report.selections[k] == Some(row.c) {
                                out.push('*');
                            }
                        }
                    }
                }
                out.push('\n');
            }
        }
        TableFormat::Markdown => {
            out.push('\n');
            out.push_str("| c |");
            for index in &report.indexes {
                out.push_str(&format!(" {} |", index.column_name()));
            }
            out.push('\n');
            out.push_str("| --- |");
            for _ in &report.indexes {
                out.push_str(" --- |");
            }
            out.push('\n');
            for row in &report.rows {
                out.push_str(&format!("| {} |", row.c));
                for (k, cell) in row.cells.iter().enumerate() {
                    match cell {
                        Cell::Failed => out.push_str(" FAILED |"),
                        Cell::Score(x) => {
                            let text = format_sig4(*x);
                            if report.selections[k] == Some(row.c) {
                                out.push_str(&format!(" **{text}** |"));
                            } else {
                                out.push_str(&format!(" {text} |"));
                            }
                        }
                    }
                }
                out.push('\n');
            }
        }
    }
    out
}

const PALETTE: [&str; 12] = [
    "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4", "#46f0f0",
    "#f032e6", "#bcf60c", "#fabebe", "#008080", "#e6beff",
];

/// Renders the scatter plot as an SVG string: points colored by their
/// argmax cluster with top membership mapped to opacity, centroids drawn as
/// crosses. Returns the SVG plus a warning when the data has more than two
/// dimensions (only the first two are plotted).
pub fn render_plot(data: &DataSet, result: &FcmResult) -> Result<(String, Option<String>)> {
    if data.d() < 2 {
        return Err(Error::InvalidRequest(
            "plotting needs at least 2 dimensions".into(),
        ));
    }
    let warning = if data.d() > 2 {
        Some(format!(
            "dataset has {} dimensions; plotting the first two coordinates",
            data.d()
        ))
    } else {
        None
    };

    let (width, height, margin) = (640.0, 480.0, 50.0);
    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    let coords = |p: &[f64]| (p[0], p[1]);
    for p in data.points() {
        let (x, y) = coords(p);
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    for v in result.v.iter() {
        let (x, y) = coords(v);
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    let span_x = (max_x - min_x).max(1e-9);
    let span_y = (max_y - min_y).max(1e-9);
    let sx = |x: f64| margin + (x - min_x) / span_x * (width - 2.0 * margin);
    let sy = |y: f64| height - margin - (y - min_y) / span_y * (height - 2.0 * margin);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n"
    ));
    svg.push_str(&format!(
        "<rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>\n"
    ));
    for j in 0..data.n() {
        let (x, y) = coords(data.point(j));
        // Argmax membership decides color; ties go to the lowest cluster.
        let mut best = 0usize;
        let mut top = result.u.get(0, j);
        for i in 1..result.u.c() {
            let mu = result.u.get(i, j);
            if mu > top {
                top = mu;
                best = i;
            }
        }
        svg.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"{}\" fill-opacity=\"{:.4}\"/>\n",
            sx(x),
            sy(y),
            PALETTE[best % PALETTE.len()],
            top
        ));
    }
    for v in result.v.iter() {
        let (x, y) = coords(v);
        let (px, py) = (sx(x), sy(y));
        svg.push_str(&format!(
            "<path class=\"centroid\" d=\"M {:.2} {:.2} L {:.2} {:.2} M {:.2} {:.2} L {:.2} {:.2}\" \
             stroke=\"black\" stroke-width=\"2\" fill=\"none\"/>\n",
            px - 6.0,
            py,
            px + 6.0,
            py,
            px,
            py - 6.0,
            px,
            py + 6.0
        ));
    }
    svg.push_str("</svg>\n");
    Ok((svg, warning))
}

/// Writes the scatter plot to `path`; returns the dimensionality warning,
/// if any.
pub fn emit_plot(data: &DataSet, result: &FcmResult, path: &Path) -> Result<Option<String>> {
    let (svg, warning) = render_plot(data, result)?;
    std::fs::write(path, svg)?;
    Ok(warning)
}
