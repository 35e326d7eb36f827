//! Config-driven Monte Carlo experiments.
//!
//! An [`ExperimentConfig`] names a model, a triple, a list of dimensions and
//! the statistics to collect. [`run`] draws `trials_per_dim` independent
//! samples per dimension and aggregates each statistic into a mean and a
//! standard error. Trial `i` at dimension `d` always uses the stream
//! `(mix_seed(seed, d), i)`, and results are folded in trial order, so a
//! report depends only on the config.
//!
//! Configs are JSON documents; files ending in `.toml` are read as TOML with
//! the same schema.
//!
//! ```
//! use bplab::experiment::{run, ExperimentConfig};
//!
//! let cfg = ExperimentConfig::from_json_str(r#"{
//!     "model": "hermitian",
//!     "triple": {"preset": "dirac", "a": 2},
//!     "dims": [3, 5],
//!     "trials_per_dim": 2,
//!     "seed": 1,
//!     "outputs": {"moments": {"kmax": 3}}
//! }"#).unwrap();
//! let report = run(&cfg).unwrap();
//! let m3 = report.rows.iter().find(|r| r.dim == 5 && r.stat_name == "m3").unwrap();
//! assert_eq!((m3.mean, m3.stderr), (8.0, 0.0));
//! ```

use std::fmt;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::hermitian::{projection_sum, sample_p, SampleOptions};
use crate::levy::{is_symmetric, TripleSpec};
use crate::nonhermitian::{sample_l, symmetrized_singular_law, SYMMETRY_TOL};
use crate::rng::mix_seed;
use crate::spectra::{self, cauchy_sup_distance, empirical_moments, esd, EmpiricalDistribution, GridSpec, ReferenceLaw};
use crate::stats::mean_stderr;
use crate::{Error, LevyTriple, Result, RngStream};

/// Which matrix family to sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Hermitian,
    Nonhermitian,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Hermitian => "hermitian",
            Model::Nonhermitian => "nonhermitian",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HistogramOutput {
    pub bins: usize,
    /// Fixed range; the pooled sample range when absent.
    pub range: Option<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CauchyDistanceOutput {
    pub target: ReferenceLaw,
    pub grid: GridSpec,
}

/// Requested statistics.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outputs {
    pub moments: Option<usize>,
    pub histogram: Option<HistogramOutput>,
    pub cauchy_distance: Option<CauchyDistanceOutput>,
}

/// A validated experiment description.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub model: Model,
    pub triple: TripleSpec,
    pub dims: Vec<usize>,
    pub trials_per_dim: usize,
    pub seed: u64,
    pub inner_cut: Option<f64>,
    pub outputs: Outputs,
    source: Value,
}

fn obj<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::config(path, "expected an object"))
}

fn req<'a>(o: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    o.get(key).ok_or_else(|| Error::config(join(path, key), "missing field"))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn positive_int(v: &Value, path: &str) -> Result<usize> {
    match v.as_u64() {
        Some(n) if n >= 1 => Ok(n as usize),
        _ => Err(Error::config(path, "expected a positive integer")),
    }
}

fn finite(v: &Value, path: &str) -> Result<f64> {
    v.as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::config(path, "expected a finite number"))
}

fn num_or(o: &Map<String, Value>, key: &str, path: &str, default: f64) -> Result<f64> {
    match o.get(key) {
        Some(v) => finite(v, &join(path, key)),
        None => Ok(default),
    }
}

fn parse_law(o: &Map<String, Value>, path: &str) -> Result<ReferenceLaw> {
    let name = req(o, "law", path)?
        .as_str()
        .ok_or_else(|| Error::config(join(path, "law"), "expected a string"))?;
    let num = |key: &str| finite(req(o, key, path)?, &join(path, key));
    let law = match name {
        "semicircle" => ReferenceLaw::semicircle(num_or(o, "m", path, 0.0)?, num("r")?),
        "cauchy" => ReferenceLaw::cauchy(num("a")?),
        "marchenko_pastur" => ReferenceLaw::marchenko_pastur(num("lambda")?),
        "dirac" => ReferenceLaw::dirac(num("a")?),
        other => return Err(Error::config(join(path, "law"), format!("unknown law `{other}`"))),
    };
    law.map_err(|e| Error::config(path, e.to_string()))
}

/// Closed-form image of a preset triple.
pub fn preset_image(spec: &TripleSpec) -> Option<ReferenceLaw> {
    match *spec {
        TripleSpec::Gaussian { mean, var } if var == 0.0 => ReferenceLaw::dirac(mean).ok(),
        TripleSpec::Gaussian { mean, var } => ReferenceLaw::semicircle(mean, var.sqrt()).ok(),
        TripleSpec::Poisson { lambda } => ReferenceLaw::marchenko_pastur(lambda).ok(),
        TripleSpec::Cauchy { a, .. } => ReferenceLaw::cauchy(a).ok(),
        TripleSpec::Dirac { a } => ReferenceLaw::dirac(a).ok(),
        _ => None,
    }
}

fn parse_grid(v: Option<&Value>, path: &str) -> Result<GridSpec> {
    let mut g = GridSpec::default();
    if let Some(v) = v {
        let o = obj(v, path)?;
        g.real_range = num_or(o, "range", path, g.real_range)?;
        g.real_step = num_or(o, "step", path, g.real_step)?;
        if let Some(levels) = o.get("levels") {
            let p = join(path, "levels");
            let arr = levels.as_array().ok_or_else(|| Error::config(&p, "expected an array"))?;
            g.imaginary_levels = arr
                .iter()
                .enumerate()
                .map(|(i, x)| finite(x, &format!("{p}[{i}]")))
                .collect::<Result<_>>()?;
        }
        g.validate().map_err(|e| Error::config(path, e.to_string()))?;
    }
    Ok(g)
}

fn parse_outputs(v: &Value, path: &str) -> Result<Outputs> {
    let o = obj(v, path)?;
    let mut out = Outputs::default();
    for key in o.keys() {
        if !matches!(key.as_str(), "moments" | "histogram" | "cauchy_distance") {
            return Err(Error::config(join(path, key), "unknown output"));
        }
    }
    if let Some(m) = o.get("moments") {
        let p = join(path, "moments");
        out.moments = Some(positive_int(req(obj(m, &p)?, "kmax", &p)?, &join(&p, "kmax"))?);
    }
    if let Some(h) = o.get("histogram") {
        let p = join(path, "histogram");
        let ho = obj(h, &p)?;
        let bins = positive_int(req(ho, "bins", &p)?, &join(&p, "bins"))?;
        let range = match ho.get("range") {
            None => None,
            Some(r) => {
                let rp = join(&p, "range");
                match r.as_array().map(|a| a.as_slice()) {
                    Some([lo, hi]) => {
                        let (lo, hi) = (finite(lo, &rp)?, finite(hi, &rp)?);
                        if lo >= hi {
                            return Err(Error::config(rp, "range must be increasing"));
                        }
                        Some((lo, hi))
                    }
                    _ => return Err(Error::config(rp, "expected [lo, hi]")),
                }
            }
        };
        out.histogram = Some(HistogramOutput { bins, range });
    }
    if let Some(c) = o.get("cauchy_distance") {
        let p = join(path, "cauchy_distance");
        let co = obj(c, &p)?;
        let tp = join(&p, "target");
        let to = obj(req(co, "target", &p)?, &tp)?;
        let target = if to.contains_key("law") {
            parse_law(to, &tp)?
        } else {
            let spec = TripleSpec::from_json(&to["triple"], &join(&tp, "triple")).or_else(|e| {
                if to.contains_key("triple") {
                    Err(e)
                } else {
                    Err(Error::config(&tp, "expected `law` or `triple`"))
                }
            })?;
            preset_image(&spec)
                .ok_or_else(|| Error::config(join(&tp, "triple"), "only gaussian, poisson, cauchy and dirac presets have a closed-form target"))?
        };
        out.cauchy_distance = Some(CauchyDistanceOutput {
            target,
            grid: parse_grid(co.get("grid"), &join(&p, "grid"))?,
        });
    }
    if out.moments.is_none() && out.histogram.is_none() && out.cauchy_distance.is_none() {
        return Err(Error::config(path, "request at least one output"));
    }
    Ok(out)
}

impl ExperimentConfig {
    /// Validates a config document.
    pub fn from_value(v: Value) -> Result<Self> {
        let o = obj(&v, "")?;
        for key in o.keys() {
            if !matches!(
                key.as_str(),
                "model" | "triple" | "dims" | "trials_per_dim" | "seed" | "inner_cut" | "outputs"
            ) {
                return Err(Error::config(key.as_str(), "unknown field"));
            }
        }
        let model = match req(o, "model", "")?.as_str() {
            Some("hermitian") => Model::Hermitian,
            Some("nonhermitian") => Model::Nonhermitian,
            _ => return Err(Error::config("model", "expected `hermitian` or `nonhermitian`")),
        };
        let triple = TripleSpec::from_json(req(o, "triple", "")?, "triple")?;
        let t = triple.to_triple().map_err(|e| Error::config("triple", e.to_string()))?;
        if model == Model::Nonhermitian && !is_symmetric(&t, SYMMETRY_TOL) {
            return Err(Error::config("triple", "the nonhermitian model needs a symmetric triple"));
        }
        let dims_v = req(o, "dims", "")?
            .as_array()
            .ok_or_else(|| Error::config("dims", "expected an array"))?;
        if dims_v.is_empty() {
            return Err(Error::config("dims", "must be nonempty"));
        }
        let dims = dims_v
            .iter()
            .enumerate()
            .map(|(i, d)| positive_int(d, &format!("dims[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        if dims.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::config("dims", "must be strictly ascending"));
        }
        let trials_per_dim = positive_int(req(o, "trials_per_dim", "")?, "trials_per_dim")?;
        let seed = req(o, "seed", "")?
            .as_u64()
            .ok_or_else(|| Error::config("seed", "expected an unsigned 64-bit integer"))?;
        let inner_cut = match o.get("inner_cut") {
            None | Some(Value::Null) => None,
            Some(c) => {
                let c = finite(c, "inner_cut")?;
                if c <= 0.0 {
                    return Err(Error::config("inner_cut", "must be positive"));
                }
                Some(c)
            }
        };
        let outputs = parse_outputs(req(o, "outputs", "")?, "outputs")?;
        Ok(Self {
            model,
            triple,
            dims,
            trials_per_dim,
            seed,
            inner_cut,
            outputs,
            source: v,
        })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::config("", format!("invalid JSON: {e}")))?;
        Self::from_value(v)
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let t: toml::Value = text.parse().map_err(|e: toml::de::Error| Error::config("", format!("invalid TOML: {e}")))?;
        let v = serde_json::to_value(t).map_err(|e| Error::config("", e.to_string()))?;
        Self::from_value(v)
    }

    /// Reads a config file; `.toml` files are parsed as TOML, anything else
    /// as JSON.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(path.display().to_string(), format!("cannot read config: {e}")))?;
        if path.extension().is_some_and(|e| e == "toml") {
            Self::from_toml_str(&text)
        } else {
            Self::from_json_str(&text)
        }
    }

    /// The config as given.
    pub fn source(&self) -> &Value {
        &self.source
    }
}

/// Aggregate of one statistic at one dimension.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatRow {
    pub dim: usize,
    pub trial_count: usize,
    pub stat_name: String,
    pub mean: f64,
    pub stderr: f64,
}

/// Histogram of the pooled law at one dimension.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HistogramRow {
    pub dim: usize,
    pub bin_center: f64,
    pub mass: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub rows: Vec<StatRow>,
    pub histograms: Vec<HistogramRow>,
    pub metadata: Value,
}

impl Report {
    /// Rows as CSV with header `dim,trial_count,stat_name,mean,stderr`.
    pub fn stats_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r).map_err(csv_err)?;
        }
        into_string(w)
    }

    pub fn histogram_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.histograms {
            w.serialize(r).map_err(csv_err)?;
        }
        into_string(w)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Writes `stats.csv`, `report.json` and, when present, `histogram.csv`
    /// into `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("stats.csv"), self.stats_csv()?)?;
        if !self.histograms.is_empty() {
            std::fs::write(dir.join("histogram.csv"), self.histogram_csv()?)?;
        }
        std::fs::write(dir.join("report.json"), self.to_json() + "\n")?;
        Ok(())
    }

    /// Looks up a row.
    pub fn get(&self, dim: usize, stat_name: &str) -> Option<&StatRow> {
        self.rows.iter().find(|r| r.dim == dim && r.stat_name == stat_name)
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Numerical(format!("csv: {e}"))
}

fn into_string(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Numerical(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Number of worker threads: `BPLAB_THREADS` if set, otherwise the available
/// parallelism.
pub fn worker_count() -> usize {
    std::env::var("BPLAB_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs `f(i)` for `i in 0..n` on the worker pool and returns the results in
/// index order.
pub fn par_trials<T: Send>(n: usize, f: impl Fn(usize) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count())
        .build()
        .map_err(|e| Error::Numerical(format!("thread pool: {e}")))?;
    pool.install(|| (0..n).into_par_iter().map(f).collect())
}

struct TrialOut {
    law: EmpiricalDistribution,
    stats: Vec<f64>,
}

fn stat_names(outputs: &Outputs) -> Vec<String> {
    let mut names: Vec<String> = (1..=outputs.moments.unwrap_or(0)).map(|k| format!("m{k}")).collect();
    if outputs.cauchy_distance.is_some() {
        names.push("cauchy_distance".into());
    }
    names
}

fn trial_stats(law: &EmpiricalDistribution, outputs: &Outputs) -> Result<Vec<f64>> {
    let mut s = Vec::new();
    if let Some(k) = outputs.moments {
        s.extend_from_slice(empirical_moments(law, k)?.values());
    }
    if let Some(c) = &outputs.cauchy_distance {
        s.push(cauchy_sup_distance(law, &c.target, &c.grid)?);
    }
    Ok(s)
}

fn aggregate(dim: usize, names: &[String], trials: &[TrialOut], outputs: &Outputs, report: &mut Report) -> Result<()> {
    for (j, name) in names.iter().enumerate() {
        let xs: Vec<f64> = trials.iter().map(|t| t.stats[j]).collect();
        let (mean, stderr) = mean_stderr(&xs);
        report.rows.push(StatRow {
            dim,
            trial_count: xs.len(),
            stat_name: name.clone(),
            mean,
            stderr,
        });
    }
    if let Some(h) = &outputs.histogram {
        let laws: Vec<EmpiricalDistribution> = trials.iter().map(|t| t.law.clone()).collect();
        let pooled = EmpiricalDistribution::pool(&laws)?;
        let bins = match h.range {
            Some((lo, hi)) => spectra::histogram_range(&pooled, h.bins, lo, hi)?,
            None => spectra::histogram(&pooled, h.bins)?,
        };
        report.histograms.extend(bins.into_iter().map(|(c, m)| HistogramRow {
            dim,
            bin_center: c,
            mass: m,
        }));
    }
    Ok(())
}

fn sample_law(model: Model, t: &LevyTriple, d: usize, rng: &mut RngStream, opts: &SampleOptions) -> Result<EmpiricalDistribution> {
    match model {
        Model::Hermitian => esd(&sample_p(t, d, rng, opts)?),
        Model::Nonhermitian => symmetrized_singular_law(&sample_l(t, d, rng, opts)?),
    }
}

/// Runs an experiment.
pub fn run(cfg: &ExperimentConfig) -> Result<Report> {
    let t = cfg.triple.to_triple()?;
    let opts = SampleOptions { inner_cut: cfg.inner_cut };
    let names = stat_names(&cfg.outputs);
    let mut report = Report {
        rows: Vec::new(),
        histograms: Vec::new(),
        metadata: json!({
            "config": cfg.source,
            "seed": cfg.seed,
            "version": env!("CARGO_PKG_VERSION"),
        }),
    };
    for &d in &cfg.dims {
        let dim_seed = mix_seed(cfg.seed, d as u64);
        let trials = par_trials(cfg.trials_per_dim, |i| {
            let mut rng = RngStream::new(dim_seed, i as u64);
            let law = sample_law(cfg.model, &t, d, &mut rng, &opts)?;
            let stats = trial_stats(&law, &cfg.outputs)?;
            Ok(TrialOut { law, stats })
        })?;
        aggregate(d, &names, &trials, &cfg.outputs, &mut report)?;
    }
    Ok(report)
}

/// Spectral moments of `Σ_{k=1}^{d'} u_k u_k*` over independent uniform unit
/// vectors in dimension `d`, next to the Marchenko-Pastur(`d'/d`) moments.
///
/// Rows are `m1..m{kmax}` with the reference values in rows named
/// `ref_m1..`. `d_prime = 0` gives the zero matrix.
pub fn projection_experiment(d: usize, d_prime: usize, trials: usize, seed: u64, kmax: usize) -> Result<Report> {
    if d == 0 || trials == 0 || kmax == 0 {
        return Err(Error::invalid("d, trials and kmax must be >= 1"));
    }
    let dim_seed = mix_seed(seed, d as u64);
    let weights = vec![1.0; d_prime];
    let outs = par_trials(trials, |i| {
        let mut rng = RngStream::new(dim_seed, i as u64);
        let m = projection_sum(&weights, d, &mut rng)?;
        let law = esd(&m)?;
        Ok(empirical_moments(&law, kmax)?.values().to_vec())
    })?;
    let reference = spectra::reference_moments(&ReferenceLaw::marchenko_pastur(d_prime as f64 / d as f64)?, kmax)?;
    let mut rows = Vec::new();
    for k in 0..kmax {
        let xs: Vec<f64> = outs.iter().map(|o| o[k]).collect();
        let (mean, stderr) = mean_stderr(&xs);
        rows.push(StatRow {
            dim: d,
            trial_count: trials,
            stat_name: format!("m{}", k + 1),
            mean,
            stderr,
        });
    }
    for k in 0..kmax {
        rows.push(StatRow {
            dim: d,
            trial_count: trials,
            stat_name: format!("ref_m{}", k + 1),
            mean: reference.values()[k],
            stderr: 0.0,
        });
    }
    Ok(Report {
        rows,
        histograms: Vec::new(),
        metadata: json!({
            "projection": {"d": d, "d_prime": d_prime, "trials": trials, "kmax": kmax},
            "seed": seed,
            "version": env!("CARGO_PKG_VERSION"),
        }),
    })
}
