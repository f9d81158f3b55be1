//! Shared plumbing for the subcommands: config-file loading, option
//! resolution (flags beat config file beats defaults), dataset
//! construction, and report serialization.

use clap::Args;
use monig_core::data::{
    gen_tabular_replica, load_csv_multimodal, split, standardize, DatasetSchema, MultimodalDataset,
    NoiseTarget, Split,
};
use monig_core::error::{MonigError, Result};
use monig_core::metrics::{mae, rmse, ueir};
use monig_core::model::{BaselineRegressor, MultimodalRegressor, TrainConfig};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// Optional JSON config file; every field can be overridden by a flag.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FileConfig {
    pub iterations: Option<usize>,
    pub batch_size: Option<usize>,
    pub learning_rate: Option<f64>,
    pub lambda: Option<f64>,
    pub seed: Option<u64>,
    pub pseudo: Option<bool>,
    pub hidden: Option<Vec<usize>>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(p) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(p)
            .map_err(|e| MonigError::Config(format!("config file {}: {e}", p.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| MonigError::Config(format!("config file {}: {e}", p.display())))
    }
}

/// Seed precedence: flag, then config file, then the MONIG_SEED
/// environment variable, then 0.
pub fn resolve_seed(flag: Option<u64>, file: Option<u64>) -> Result<u64> {
    if let Some(s) = flag.or(file) {
        return Ok(s);
    }
    match std::env::var("MONIG_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| MonigError::Config(format!("MONIG_SEED is not a valid seed: {v:?}"))),
        Err(_) => Ok(0),
    }
}

/// Training hyperparameter flags shared by `synth`, `train`, `ablate`.
#[derive(Debug, Args)]
pub struct TrainOpts {
    /// JSON config file; flags override its fields
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub iterations: Option<usize>,
    #[arg(long)]
    pub batch_size: Option<usize>,
    #[arg(long)]
    pub learning_rate: Option<f64>,
    /// Evidence regularizer weight
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Seed; falls back to MONIG_SEED, then 0
    #[arg(long)]
    pub seed: Option<u64>,
    /// Enable or disable the pseudo-modality branch
    #[arg(long)]
    pub pseudo: Option<bool>,
    /// Hidden layer widths, comma separated
    #[arg(long, value_delimiter = ',')]
    pub hidden: Option<Vec<usize>>,
}

impl TrainOpts {
    /// Merges flags over the config file over the given defaults.
    pub fn resolve(
        &self,
        defaults: TrainConfig,
        default_hidden: &[usize],
    ) -> Result<(TrainConfig, Vec<usize>)> {
        let file = FileConfig::load(self.config.as_deref())?;
        let cfg = TrainConfig {
            iterations: self.iterations.or(file.iterations).unwrap_or(defaults.iterations),
            batch_size: self.batch_size.or(file.batch_size).unwrap_or(defaults.batch_size),
            learning_rate: self
                .learning_rate
                .or(file.learning_rate)
                .unwrap_or(defaults.learning_rate),
            lambda: self.lambda.or(file.lambda).unwrap_or(defaults.lambda),
            seed: resolve_seed(self.seed, file.seed)?,
            use_pseudo: self.pseudo.or(file.pseudo).unwrap_or(defaults.use_pseudo),
            regularizer_delta_grad: defaults.regularizer_delta_grad,
        };
        cfg.validate()?;
        let hidden = self
            .hidden
            .clone()
            .or(file.hidden)
            .unwrap_or_else(|| default_hidden.to_vec());
        if hidden.is_empty() {
            return Err(MonigError::Config("hidden must list at least one width".into()));
        }
        Ok((cfg, hidden))
    }
}

/// Resolved hyperparameters, embedded in every report for provenance.
#[derive(Debug, Clone, Serialize)]
pub struct ResolvedConfig {
    pub iterations: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
    pub lambda: f64,
    pub seed: u64,
    pub pseudo: bool,
    pub hidden: Vec<usize>,
    pub data: DataDesc,
}

impl ResolvedConfig {
    pub fn new(cfg: &TrainConfig, hidden: &[usize], data: DataDesc) -> Self {
        ResolvedConfig {
            iterations: cfg.iterations,
            batch_size: cfg.batch_size,
            learning_rate: cfg.learning_rate,
            lambda: cfg.lambda,
            seed: cfg.seed,
            pseudo: cfg.use_pseudo,
            hidden: hidden.to_vec(),
            data,
        }
    }
}

/// Where the dataset came from.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum DataDesc {
    SyntheticCubic {
        n_train: usize,
        n_modalities: usize,
    },
    Replica {
        n_train: usize,
        n_val: usize,
        n_test: usize,
        data_seed: u64,
    },
    Csv {
        rows: usize,
        split_counts: [usize; 3],
        data_seed: u64,
    },
}

/// Dataset selection flags shared by `train`, `eval`, `ood`, `ablate`.
#[derive(Debug, Args)]
pub struct DataOpts {
    /// Train-split size of the built-in two-modality tabular task;
    /// validation is a quarter of this, test is half
    #[arg(long, default_value_t = 2000)]
    pub replica_train: usize,
    /// Seed for data generation and splitting
    #[arg(long, default_value_t = 7)]
    pub data_seed: u64,
    /// CSV dataset (overrides the built-in task); needs --schema
    #[arg(long, requires = "schema")]
    pub data: Option<PathBuf>,
    /// JSON column schema for --data
    #[arg(long, requires = "data")]
    pub schema: Option<PathBuf>,
    /// Absolute train,val,test sizes for --data (default 70/15/15%)
    #[arg(long, value_delimiter = ',')]
    pub split_counts: Option<Vec<usize>>,
}

impl DataOpts {
    /// Builds the standardized dataset and its provenance record.
    pub fn build(&self) -> Result<(MultimodalDataset, DataDesc)> {
        if let (Some(data), Some(schema)) = (&self.data, &self.schema) {
            let schema = DatasetSchema::from_file(schema)?;
            let raw = load_csv_multimodal(data, &schema)?;
            let n = raw.n_samples();
            let counts = match &self.split_counts {
                Some(c) => {
                    if c.len() != 3 {
                        return Err(MonigError::Config(
                            "--split-counts needs exactly three sizes".into(),
                        ));
                    }
                    [c[0], c[1], c[2]]
                }
                None => {
                    let train = (n as f64 * 0.7).round() as usize;
                    let val = (n as f64 * 0.15).round() as usize;
                    [train, val, n - train - val]
                }
            };
            let ds = standardize(&split(&raw, counts, self.data_seed)?)?;
            return Ok((
                ds,
                DataDesc::Csv {
                    rows: n,
                    split_counts: counts,
                    data_seed: self.data_seed,
                },
            ));
        }
        let n_train = self.replica_train;
        let n_val = (n_train / 4).max(1);
        let n_test = (n_train / 2).max(1);
        let raw = gen_tabular_replica(n_train + n_val + n_test, self.data_seed)?;
        let ds = standardize(&split(
            &raw,
            [n_train, n_val, n_test],
            self.data_seed.wrapping_add(1),
        )?)?;
        Ok((
            ds,
            DataDesc::Replica {
                n_train,
                n_val,
                n_test,
                data_seed: self.data_seed,
            },
        ))
    }
}

/// Test-split evaluation summary. Uncertainty fields are absent for
/// models without an evidential head.
#[derive(Debug, Clone, Serialize)]
pub struct EvalSection {
    pub rmse: f64,
    pub mae: f64,
    pub sample_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_au: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_eu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ueir_au: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ueir_eu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_branch_mean_au: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_branch_mean_eu: Option<Vec<f64>>,
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

pub fn eval_monig(model: &MultimodalRegressor, ds: &MultimodalDataset) -> Result<EvalSection> {
    let idx = ds.indices_of(Split::Test);
    let preds = model.predict_split(ds, Split::Test)?;
    let targets: Vec<f64> = idx.iter().map(|&i| ds.targets[i]).collect();
    let point: Vec<f64> = preds.iter().map(|p| p.prediction).collect();
    let errors: Vec<f64> = point.iter().zip(&targets).map(|(p, t)| (p - t).abs()).collect();
    let au: Vec<f64> = preds.iter().map(|p| p.aleatoric).collect();
    let eu: Vec<f64> = preds.iter().map(|p| p.epistemic).collect();
    let n_branches = model.n_branches();
    let mut branch_au = vec![0.0; n_branches];
    let mut branch_eu = vec![0.0; n_branches];
    for p in &preds {
        for b in 0..n_branches {
            branch_au[b] += p.per_branch_aleatoric[b];
            branch_eu[b] += p.per_branch_epistemic[b];
        }
    }
    let n = preds.len() as f64;
    branch_au.iter_mut().for_each(|v| *v /= n);
    branch_eu.iter_mut().for_each(|v| *v /= n);
    Ok(EvalSection {
        rmse: rmse(&point, &targets)?,
        mae: mae(&point, &targets)?,
        sample_count: preds.len(),
        mean_au: Some(mean(&au)),
        mean_eu: Some(mean(&eu)),
        ueir_au: Some(ueir(&errors, &au)?),
        ueir_eu: Some(ueir(&errors, &eu)?),
        per_branch_mean_au: Some(branch_au),
        per_branch_mean_eu: Some(branch_eu),
    })
}

pub fn eval_baseline(model: &BaselineRegressor, ds: &MultimodalDataset) -> Result<EvalSection> {
    let idx = ds.indices_of(Split::Test);
    let targets: Vec<f64> = idx.iter().map(|&i| ds.targets[i]).collect();
    let mut point = Vec::with_capacity(idx.len());
    let mut au = Vec::new();
    let mut eu = Vec::new();
    for &i in &idx {
        let (pred, nig) = model.predict(&ds.sample(i))?;
        point.push(pred);
        if let Some(p) = nig {
            au.push(p.aleatoric());
            eu.push(p.epistemic());
        }
    }
    let evidential = !au.is_empty();
    let errors: Vec<f64> = point.iter().zip(&targets).map(|(p, t)| (p - t).abs()).collect();
    Ok(EvalSection {
        rmse: rmse(&point, &targets)?,
        mae: mae(&point, &targets)?,
        sample_count: idx.len(),
        mean_au: evidential.then(|| mean(&au)),
        mean_eu: evidential.then(|| mean(&eu)),
        ueir_au: if evidential { Some(ueir(&errors, &au)?) } else { None },
        ueir_eu: if evidential { Some(ueir(&errors, &eu)?) } else { None },
        per_branch_mean_au: None,
        per_branch_mean_eu: None,
    })
}

/// Parses a noise-target name: `modK` (1-based), `random`, or `all`.
pub fn parse_noise_target(s: &str) -> Result<NoiseTarget> {
    match s {
        "random" => Ok(NoiseTarget::RandomPerSample),
        "all" => Ok(NoiseTarget::All),
        _ => {
            let idx: usize = s
                .strip_prefix("mod")
                .and_then(|k| k.parse().ok())
                .filter(|&k| k >= 1)
                .ok_or_else(|| {
                    MonigError::Config(format!(
                        "unknown noise target {s:?}; expected modK, random, or all"
                    ))
                })?;
            Ok(NoiseTarget::Fixed(idx - 1))
        }
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub fn ensure_dir(path: &Path) -> Result<()> {
    std::fs::create_dir_all(path)?;
    Ok(())
}
