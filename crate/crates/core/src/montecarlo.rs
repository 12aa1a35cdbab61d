//! Deterministic Monte Carlo experiment runner.
//!
//! An experiment is a grid of cells (model variant × node count); each cell
//! draws `replications` independent graphs, computes the requested indices,
//! and aggregates mean and standard error into one [`SummaryRow`] per
//! (cell, index). Results are bit-identical across runs and worker counts
//! because every replication's seed is derived from the master seed by a
//! stable mixing function (never drawn sequentially from a shared stream)
//! and the reduction to mean/stderr uses a fixed-shape pairwise tree.

use crate::generators::{
    ba_m_for_density, rr_d_for_density, ws_k_for_density, GenError, ModelSpec, Seed,
};
use crate::indices::{pairwise_power_sum, Alpha, IndexError};
use crate::numeric::pairwise_sum;
use rayon::prelude::*;
use std::fmt;
use std::io::{self, BufRead, Write};

/// Which value sequence an index summarizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexKind {
    /// Degree index `DI_alpha` over the degree sequence.
    Degree,
    /// Clustering index `CI_alpha` over the local clustering coefficients.
    Clustering,
}

impl IndexKind {
    pub fn label(self) -> &'static str {
        match self {
            IndexKind::Degree => "DI",
            IndexKind::Clustering => "CI",
        }
    }

    fn parse(token: &str) -> Option<Self> {
        match token {
            "DI" | "di" => Some(IndexKind::Degree),
            "CI" | "ci" => Some(IndexKind::Clustering),
            _ => None,
        }
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One index to estimate: kind plus exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexSpec {
    pub kind: IndexKind,
    pub alpha: Alpha,
}

/// A model family to be resolved against the density target per node count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelTemplate {
    ErdosRenyi,
    WattsStrogatz,
    BarabasiAlbert,
    RandomRegular,
    TwoPhaseCliqueNull,
}

impl ModelTemplate {
    fn parse(token: &str) -> Option<Self> {
        match token {
            "er" => Some(ModelTemplate::ErdosRenyi),
            "ws" => Some(ModelTemplate::WattsStrogatz),
            "ba" => Some(ModelTemplate::BarabasiAlbert),
            "rr" => Some(ModelTemplate::RandomRegular),
            "two-phase" => Some(ModelTemplate::TwoPhaseCliqueNull),
            _ => None,
        }
    }

    fn token(self) -> &'static str {
        match self {
            ModelTemplate::ErdosRenyi => "er",
            ModelTemplate::WattsStrogatz => "ws",
            ModelTemplate::BarabasiAlbert => "ba",
            ModelTemplate::RandomRegular => "rr",
            ModelTemplate::TwoPhaseCliqueNull => "two-phase",
        }
    }
}

impl fmt::Display for ModelTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// A fully parsed and validated experiment description.
///
/// `indices` is the canonical cross product of the configured kinds and
/// exponents: degree before clustering, exponents ascending. Watts–Strogatz
/// entries expand into one variant per entry of `ws_betas`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub models: Vec<ModelTemplate>,
    pub node_grid: Vec<usize>,
    pub p_star: f64,
    pub indices: Vec<IndexSpec>,
    pub replications: usize,
    pub master_seed: Seed,
    pub ws_betas: Vec<f64>,
}

/// One aggregated result: a (model variant, node count, index) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub model: String,
    pub n: usize,
    pub p_star: f64,
    pub index: IndexKind,
    pub alpha: f64,
    pub replications: usize,
    pub mean: f64,
    /// Sample standard deviation (unbiased, `n-1`) divided by
    /// `sqrt(replications)`; 0 when only one replication was requested.
    pub stderr: f64,
    /// The master seed of the run (replication seeds derive from it).
    pub seed: u64,
}

/// Errors raised by experiment configuration, execution, and CSV I/O.
#[derive(Debug)]
pub enum McError {
    /// A configuration problem; `key` names the offending config key.
    Config { key: String, message: String },
    /// A grid cell could not be resolved to model parameters.
    Cell { model: String, n: usize, source: GenError },
    /// A generator failed inside a cell.
    Generation { model: String, n: usize, replication: usize, source: GenError },
    /// An index computation failed inside a cell.
    Index { model: String, n: usize, source: IndexError },
    /// `write_csv` called with no rows.
    EmptyRows,
    /// Replication count must be at least 1.
    InvalidReplications,
    /// Malformed CSV input; `line` is 1-based.
    Csv { line: usize, message: String },
    Io(io::Error),
}

impl fmt::Display for McError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            McError::Config { key, message } => {
                write!(f, "config key `{key}`: {message}")
            }
            McError::Cell { model, n, source } => {
                write!(f, "cannot resolve cell model={model} n={n}: {source}")
            }
            McError::Generation { model, n, replication, source } => {
                write!(
                    f,
                    "generation failed for model={model} n={n} replication={replication}: {source}"
                )
            }
            McError::Index { model, n, source } => {
                write!(f, "index computation failed for model={model} n={n}: {source}")
            }
            McError::EmptyRows => write!(f, "refusing to write a CSV with no rows"),
            McError::InvalidReplications => write!(f, "replications must be at least 1"),
            McError::Csv { line, message } => write!(f, "CSV parse error on line {line}: {message}"),
            McError::Io(err) => write!(f, "I/O error: {err}"),
        }
    }
}

impl std::error::Error for McError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            McError::Cell { source, .. } | McError::Generation { source, .. } => Some(source),
            McError::Index { source, .. } => Some(source),
            McError::Io(err) => Some(err),
            _ => None,
        }
    }
}

impl From<io::Error> for McError {
    fn from(err: io::Error) -> Self {
        McError::Io(err)
    }
}

/// One round of the splitmix64 avalanche: full 64-bit diffusion.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed for one replication of one cell.
///
/// The tuple `(master, model_label, n, replication)` is absorbed through
/// iterated splitmix64 avalanche rounds: one round per label byte (plus the
/// label length, so distinct labels never alias by prefix), one for `n`,
/// one for the replication. Identical inputs give identical output on
/// every platform; distinct tuples collide only with ~2^-64 probability.
pub fn derive_seed(master: Seed, model_label: &str, n: usize, replication: usize) -> Seed {
    let mut state = splitmix64(master.0);
    for &byte in model_label.as_bytes() {
        state = splitmix64(state ^ u64::from(byte));
    }
    state = splitmix64(state ^ model_label.len() as u64);
    state = splitmix64(state ^ n as u64);
    state = splitmix64(state ^ replication as u64);
    Seed(state)
}

/// Prints a real with 17 significant digits, enough for exact f64
/// round-tripping through text.
pub fn format_real(value: f64) -> String {
    format!("{value:.16e}")
}

fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let count = values.len() as f64;
    let mean = pairwise_sum(values) / count;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let squared_deviations: Vec<f64> =
        values.iter().map(|v| (v - mean) * (v - mean)).collect();
    let variance = pairwise_sum(&squared_deviations) / (count - 1.0);
    (mean, (variance / count).sqrt())
}

/// Runs all replications of one cell and aggregates one row per index.
///
/// Replications execute in parallel; determinism holds because each
/// replication seeds its own generator via [`derive_seed`] and the final
/// reduction is a fixed-shape pairwise sum over the replication-ordered
/// value vector. Each replication's graph is sampled once and shared by
/// all requested indices, so a cell's random draw does not depend on which
/// indices were requested.
fn cell_rows(
    spec: &ModelSpec,
    indices: &[IndexSpec],
    replications: usize,
    master: Seed,
    p_star: f64,
) -> Result<Vec<SummaryRow>, McError> {
    if replications == 0 {
        return Err(McError::InvalidReplications);
    }
    let label = spec.label();
    let n = spec.n();
    let needs_degree = indices.iter().any(|s| s.kind == IndexKind::Degree);
    let needs_clustering = indices.iter().any(|s| s.kind == IndexKind::Clustering);
    let per_replication: Vec<Vec<f64>> = (0..replications)
        .into_par_iter()
        .map(|replication| {
            let seed = derive_seed(master, &label, n, replication);
            let graph = spec.sample(seed).map_err(|source| McError::Generation {
                model: label.clone(),
                n,
                replication,
                source,
            })?;
            let degrees: Vec<f64> = if needs_degree {
                graph.degrees().into_iter().map(|d| d as f64).collect()
            } else {
                Vec::new()
            };
            let clusterings: Vec<f64> =
                if needs_clustering { graph.local_clusterings() } else { Vec::new() };
            indices
                .iter()
                .map(|index| {
                    let values = match index.kind {
                        IndexKind::Degree => &degrees,
                        IndexKind::Clustering => &clusterings,
                    };
                    pairwise_power_sum(values, index.alpha).map_err(|source| McError::Index {
                        model: label.clone(),
                        n,
                        source,
                    })
                })
                .collect::<Result<Vec<f64>, McError>>()
        })
        .collect::<Result<Vec<Vec<f64>>, McError>>()?;
    let rows = indices
        .iter()
        .enumerate()
        .map(|(position, index)| {
            let values: Vec<f64> =
                per_replication.iter().map(|row| row[position]).collect();
            let (mean, stderr) = mean_and_stderr(&values);
            SummaryRow {
                model: label.clone(),
                n,
                p_star,
                index: index.kind,
                alpha: index.alpha.value(),
                replications,
                mean,
                stderr,
                seed: master.0,
            }
        })
        .collect();
    Ok(rows)
}

/// Estimates one index on one resolved model by Monte Carlo.
///
/// The row's `p_star` column records the model's structural density target
/// (exact for regular-degree families, the edge probability for the
/// independent-edge families).
pub fn estimate_index(
    spec: &ModelSpec,
    index: IndexSpec,
    replications: usize,
    master: Seed,
) -> Result<SummaryRow, McError> {
    let p_star = density_target(spec);
    let mut rows = cell_rows(spec, &[index], replications, master, p_star)?;
    Ok(rows.pop().expect("one index yields one row"))
}

/// The density a model spec aims at: `p` for the independent-edge models,
/// the exact structural density for the lattice/attachment/regular models.
fn density_target(spec: &ModelSpec) -> f64 {
    match *spec {
        ModelSpec::ErdosRenyi { p, .. } | ModelSpec::TwoPhaseCliqueNull { p, .. } => p,
        ModelSpec::WattsStrogatz { n, k, .. } => k as f64 / (n as f64 - 1.0),
        ModelSpec::BarabasiAlbert { n, m } => {
            2.0 * (m * (n - m)) as f64 / (n as f64 * (n as f64 - 1.0))
        }
        ModelSpec::RandomRegular { n, d } => d as f64 / (n as f64 - 1.0),
    }
}

/// Resolves one (template, n) cell against the density target.
///
/// `Ok(None)` marks the one tolerated unreachable case: a
/// Barabási–Albert cell whose density quadratic has negative discriminant
/// (the caller logs and skips it). Everything else that fails is an error
/// naming the cell.
fn resolve_cell(
    template: ModelTemplate,
    beta: Option<f64>,
    n: usize,
    p_star: f64,
) -> Result<Option<ModelSpec>, McError> {
    let cell_error = |source: GenError| McError::Cell {
        model: template.token().to_string(),
        n,
        source,
    };
    match template {
        ModelTemplate::ErdosRenyi => Ok(Some(ModelSpec::ErdosRenyi { n, p: p_star })),
        ModelTemplate::TwoPhaseCliqueNull => {
            Ok(Some(ModelSpec::TwoPhaseCliqueNull { n, p: p_star }))
        }
        ModelTemplate::WattsStrogatz => {
            let k = ws_k_for_density(n, p_star).map_err(cell_error)?;
            let beta = beta.expect("watts-strogatz variants carry a beta");
            Ok(Some(ModelSpec::WattsStrogatz { n, k, beta }))
        }
        ModelTemplate::RandomRegular => {
            let d = rr_d_for_density(n, p_star).map_err(cell_error)?;
            Ok(Some(ModelSpec::RandomRegular { n, d }))
        }
        ModelTemplate::BarabasiAlbert => match ba_m_for_density(n, p_star) {
            Ok(m) => Ok(Some(ModelSpec::BarabasiAlbert { n, m })),
            Err(err @ GenError::DensityUnreachable { .. }) => {
                log::warn!("skipping cell model=ba n={n}: {err}");
                Ok(None)
            }
            Err(err) => Err(cell_error(err)),
        },
    }
}

/// Runs the full experiment grid.
///
/// Row order is deterministic: models in config order (Watts–Strogatz
/// expanding into one variant per beta, in `ws_betas` order), node counts
/// ascending, then indices in the canonical order of
/// [`ExperimentConfig::indices`]. Cells are evaluated sequentially while
/// replications within a cell run in parallel.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<SummaryRow>, McError> {
    config.validate()?;
    let mut variants: Vec<(ModelTemplate, Option<f64>)> = Vec::new();
    for &model in &config.models {
        match model {
            ModelTemplate::WattsStrogatz => {
                for &beta in &config.ws_betas {
                    variants.push((model, Some(beta)));
                }
            }
            _ => variants.push((model, None)),
        }
    }
    let mut rows = Vec::new();
    for &(template, beta) in &variants {
        for &n in &config.node_grid {
            let Some(spec) = resolve_cell(template, beta, n, config.p_star)? else {
                continue;
            };
            log::info!(
                "cell model={} n={n} replications={}",
                spec.label(),
                config.replications
            );
            rows.extend(cell_rows(
                &spec,
                &config.indices,
                config.replications,
                config.master_seed,
                config.p_star,
            )?);
        }
    }
    Ok(rows)
}

const CSV_HEADER: &str = "model,n,p_star,index,alpha,replications,mean,stderr,seed";

/// Writes rows as CSV: a header line, then one line per row, `\n`
/// separators, reals at 17 significant digits (exact round-trip).
pub fn write_csv<W: Write>(rows: &[SummaryRow], mut writer: W) -> Result<(), McError> {
    if rows.is_empty() {
        return Err(McError::EmptyRows);
    }
    writeln!(writer, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(
            writer,
            "{},{},{},{},{},{},{},{},{}",
            row.model,
            row.n,
            format_real(row.p_star),
            row.index.label(),
            format_real(row.alpha),
            row.replications,
            format_real(row.mean),
            format_real(row.stderr),
            row.seed
        )?;
    }
    Ok(())
}

/// Parses CSV produced by [`write_csv`] back into rows (bit-exact).
pub fn read_csv<R: BufRead>(reader: R) -> Result<Vec<SummaryRow>, McError> {
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or(McError::Csv { line: 1, message: "missing header".to_string() })??;
    if header != CSV_HEADER {
        return Err(McError::Csv {
            line: 1,
            message: format!("expected header `{CSV_HEADER}`, found `{header}`"),
        });
    }
    let mut rows = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line = line?;
        let line_no = idx + 2;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 9 {
            return Err(McError::Csv {
                line: line_no,
                message: format!("expected 9 fields, found {}", fields.len()),
            });
        }
        let bad = |what: &str| McError::Csv {
            line: line_no,
            message: format!("invalid {what}"),
        };
        rows.push(SummaryRow {
            model: fields[0].to_string(),
            n: fields[1].parse().map_err(|_| bad("node count"))?,
            p_star: fields[2].parse().map_err(|_| bad("p_star"))?,
            index: IndexKind::parse(fields[3])
                .ok_or_else(|| bad("index kind"))?,
            alpha: fields[4].parse().map_err(|_| bad("alpha"))?,
            replications: fields[5].parse().map_err(|_| bad("replications"))?,
            mean: fields[6].parse().map_err(|_| bad("mean"))?,
            stderr: fields[7].parse().map_err(|_| bad("stderr"))?,
            seed: fields[8].parse().map_err(|_| bad("seed"))?,
        });
    }
    Ok(rows)
}

impl ExperimentConfig {
    /// Parses the line-oriented `key = value` config format.
    ///
    /// Keys: `models`, `node_grid`, `p_star`, `indices`, `alphas`,
    /// `replications`, `seed` (all required) and `ws_betas` (optional,
    /// default `0.1, 0.3, 0.5, 0.7, 0.9`). List values are comma-separated.
    /// Blank lines and lines starting with `#` are ignored. Unknown or
    /// duplicate keys are errors.
    pub fn parse(text: &str) -> Result<Self, McError> {
        let config_error = |key: &str, message: String| McError::Config {
            key: key.to_string(),
            message,
        };
        let mut models: Option<Vec<ModelTemplate>> = None;
        let mut node_grid: Option<Vec<usize>> = None;
        let mut p_star: Option<f64> = None;
        let mut kinds: Option<Vec<IndexKind>> = None;
        let mut alphas: Option<Vec<f64>> = None;
        let mut replications: Option<usize> = None;
        let mut seed: Option<u64> = None;
        let mut ws_betas: Option<Vec<f64>> = None;

        for raw_line in text.lines() {
            let line = raw_line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(config_error(line, "expected `key = value`".to_string()));
            };
            let key = key.trim();
            let value = value.trim();
            let list = || value.split(',').map(str::trim).collect::<Vec<&str>>();
            macro_rules! set_once {
                ($slot:ident, $parsed:expr) => {{
                    if $slot.is_some() {
                        return Err(config_error(key, "duplicate key".to_string()));
                    }
                    $slot = Some($parsed);
                }};
            }
            match key {
                "models" => {
                    let mut parsed = Vec::new();
                    for token in list() {
                        let model = ModelTemplate::parse(token).ok_or_else(|| {
                            config_error(
                                key,
                                format!(
                                    "unknown model `{token}` (expected er, ws, ba, rr, two-phase)"
                                ),
                            )
                        })?;
                        if parsed.contains(&model) {
                            return Err(config_error(key, format!("duplicate model `{token}`")));
                        }
                        parsed.push(model);
                    }
                    set_once!(models, parsed);
                }
                "node_grid" => {
                    let mut parsed = Vec::new();
                    for token in list() {
                        parsed.push(token.parse::<usize>().map_err(|_| {
                            config_error(key, format!("invalid node count `{token}`"))
                        })?);
                    }
                    set_once!(node_grid, parsed);
                }
                "p_star" => {
                    let parsed = value
                        .parse::<f64>()
                        .map_err(|_| config_error(key, format!("invalid real `{value}`")))?;
                    set_once!(p_star, parsed);
                }
                "indices" => {
                    let mut parsed = Vec::new();
                    for token in list() {
                        let kind = IndexKind::parse(token).ok_or_else(|| {
                            config_error(key, format!("unknown index `{token}` (expected DI, CI)"))
                        })?;
                        if !parsed.contains(&kind) {
                            parsed.push(kind);
                        }
                    }
                    set_once!(kinds, parsed);
                }
                "alphas" => {
                    let mut parsed = Vec::new();
                    for token in list() {
                        let alpha = token.parse::<f64>().map_err(|_| {
                            config_error(key, format!("invalid real `{token}`"))
                        })?;
                        if alpha != 1.0 && alpha != 2.0 {
                            return Err(config_error(
                                key,
                                format!("experiment alphas must be 1 or 2, got `{token}`"),
                            ));
                        }
                        if !parsed.contains(&alpha) {
                            parsed.push(alpha);
                        }
                    }
                    set_once!(alphas, parsed);
                }
                "replications" => {
                    let parsed = value
                        .parse::<usize>()
                        .map_err(|_| config_error(key, format!("invalid integer `{value}`")))?;
                    set_once!(replications, parsed);
                }
                "seed" => {
                    let parsed = value
                        .parse::<u64>()
                        .map_err(|_| config_error(key, format!("invalid seed `{value}`")))?;
                    set_once!(seed, parsed);
                }
                "ws_betas" => {
                    let mut parsed = Vec::new();
                    for token in list() {
                        parsed.push(token.parse::<f64>().map_err(|_| {
                            config_error(key, format!("invalid real `{token}`"))
                        })?);
                    }
                    set_once!(ws_betas, parsed);
                }
                other => {
                    return Err(config_error(other, "unknown key".to_string()));
                }
            }
        }

        let missing = |key: &str| config_error(key, "missing required key".to_string());
        let kinds = kinds.ok_or_else(|| missing("indices"))?;
        let alphas = {
            let mut a = alphas.ok_or_else(|| missing("alphas"))?;
            a.sort_by(f64::total_cmp);
            a
        };
        // Canonical index order: degree before clustering, alpha ascending.
        let mut indices = Vec::new();
        for kind in [IndexKind::Degree, IndexKind::Clustering] {
            if kinds.contains(&kind) {
                for &alpha in &alphas {
                    indices.push(IndexSpec {
                        kind,
                        alpha: Alpha::new(alpha).expect("validated above"),
                    });
                }
            }
        }
        let config = ExperimentConfig {
            models: models.ok_or_else(|| missing("models"))?,
            node_grid: node_grid.ok_or_else(|| missing("node_grid"))?,
            p_star: p_star.ok_or_else(|| missing("p_star"))?,
            indices,
            replications: replications.ok_or_else(|| missing("replications"))?,
            master_seed: Seed(seed.ok_or_else(|| missing("seed"))?),
            ws_betas: ws_betas.unwrap_or_else(|| vec![0.1, 0.3, 0.5, 0.7, 0.9]),
        };
        config.validate()?;
        Ok(config)
    }

    /// Checks the structural invariants of the config.
    pub fn validate(&self) -> Result<(), McError> {
        let config_error = |key: &str, message: String| McError::Config {
            key: key.to_string(),
            message,
        };
        if self.models.is_empty() {
            return Err(config_error("models", "at least one model required".to_string()));
        }
        if self.node_grid.is_empty() {
            return Err(config_error("node_grid", "at least one node count required".to_string()));
        }
        for window in self.node_grid.windows(2) {
            if window[0] >= window[1] {
                return Err(config_error(
                    "node_grid",
                    format!("must be strictly ascending, got {} before {}", window[0], window[1]),
                ));
            }
        }
        if let Some(&small) = self.node_grid.iter().find(|&&n| n < 3) {
            return Err(config_error(
                "node_grid",
                format!("node counts must be at least 3, got {small}"),
            ));
        }
        if !(self.p_star.is_finite() && 0.0 < self.p_star && self.p_star < 1.0) {
            return Err(config_error(
                "p_star",
                format!("must lie strictly within (0, 1), got {}", self.p_star),
            ));
        }
        if self.indices.is_empty() {
            return Err(config_error("indices", "at least one index required".to_string()));
        }
        if self.replications < 1 {
            return Err(config_error("replications", "must be at least 1".to_string()));
        }
        if self.models.contains(&ModelTemplate::WattsStrogatz) && self.ws_betas.is_empty() {
            return Err(config_error(
                "ws_betas",
                "watts-strogatz requested but no betas given".to_string(),
            ));
        }
        for &beta in &self.ws_betas {
            if !(beta.is_finite() && (0.0..=1.0).contains(&beta)) {
                return Err(config_error(
                    "ws_betas",
                    format!("betas must lie in [0, 1], got {beta}"),
                ));
            }
        }
        Ok(())
    }
}
