//! Dataset handling: synthetic generation, CSV ingestion, splitting,
//! standardization, batching, and OOD noise injection.
//!
//! Datasets are immutable after construction in the sense that every
//! transform returns a new value; standardization stats are computed
//! from the train split only.

use crate::error::{MonigError, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Row-major feature matrix for one modality.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Val,
    Test,
}

/// Per-feature train-split standardization stats for one modality.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeatureStats {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

/// Per-modality feature matrices with shared targets and split labels.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MultimodalDataset {
    pub modality_names: Vec<String>,
    pub modalities: Vec<Matrix>,
    pub targets: Vec<f64>,
    pub splits: Vec<Split>,
    /// Present after [`standardize`]; computed on train rows only.
    pub stats: Option<Vec<FeatureStats>>,
    /// Latent scalar input of synthetic tasks (before input noise).
    #[serde(default)]
    pub latent_x: Option<Vec<f64>>,
}

impl MultimodalDataset {
    pub fn n_samples(&self) -> usize {
        self.targets.len()
    }

    pub fn n_modalities(&self) -> usize {
        self.modalities.len()
    }

    pub fn modality_dims(&self) -> Vec<usize> {
        self.modalities.iter().map(|m| m.cols).collect()
    }

    pub fn indices_of(&self, split: Split) -> Vec<usize> {
        (0..self.n_samples())
            .filter(|&i| self.splits[i] == split)
            .collect()
    }

    /// Per-modality feature vectors of one sample.
    pub fn sample(&self, i: usize) -> Vec<&[f64]> {
        self.modalities.iter().map(|m| m.row(i)).collect()
    }

    fn check_consistency(&self) -> Result<()> {
        let n = self.n_samples();
        for m in &self.modalities {
            if m.rows != n {
                return Err(MonigError::Schema(format!(
                    "modality has {} rows, targets have {}",
                    m.rows, n
                )));
            }
        }
        if self.splits.len() != n {
            return Err(MonigError::Schema("split labels length mismatch".into()));
        }
        Ok(())
    }
}

/// Target noise scale of the synthetic cubic task: σ = 3 outside
/// (−2, 2), σ = 3 + 0.8·(2 − |x|) inside.
pub fn cubic_noise_std(x: f64) -> f64 {
    if x.abs() < 2.0 {
        3.0 + 0.8 * (2.0 - x.abs())
    } else {
        3.0
    }
}

/// Synthetic cubic task y = x³ + ε with per-modality inputs
/// xₘ = x + noise of std 0.01. Train/val x uniform on [−4, 4]; the test
/// is a regular grid over [−7, 7].
pub fn gen_synthetic_cubic(
    n_train: usize,
    n_modalities: usize,
    seed: u64,
    with_noise: bool,
) -> Result<MultimodalDataset> {
    if n_train == 0 || n_modalities == 0 {
        return Err(MonigError::Config(
            "n_train and n_modalities must be at least 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let input_noise = Normal::new(0.0, 0.01).unwrap();
    let n_val = (n_train / 4).max(1);
    let n_grid = 281; // step 0.05 over [−7, 7]

    let n = n_train + n_val + n_grid;
    let mut modalities: Vec<Matrix> = (0..n_modalities).map(|_| Matrix::new(n, 1)).collect();
    let mut targets = Vec::with_capacity(n);
    let mut splits = Vec::with_capacity(n);
    let mut latent = Vec::with_capacity(n);

    for i in 0..n_train + n_val {
        let x: f64 = rng.random_range(-4.0..4.0);
        latent.push(x);
        let eps = if with_noise {
            Normal::new(0.0, cubic_noise_std(x)).unwrap().sample(&mut rng)
        } else {
            0.0
        };
        targets.push(x.powi(3) + eps);
        splits.push(if i < n_train { Split::Train } else { Split::Val });
        for m in modalities.iter_mut() {
            m.row_mut(i)[0] = if with_noise {
                x + input_noise.sample(&mut rng)
            } else {
                x
            };
        }
    }
    for g in 0..n_grid {
        let x = -7.0 + 14.0 * g as f64 / (n_grid - 1) as f64;
        let i = n_train + n_val + g;
        latent.push(x);
        targets.push(x.powi(3));
        splits.push(Split::Test);
        for m in modalities.iter_mut() {
            m.row_mut(i)[0] = x;
        }
    }

    Ok(MultimodalDataset {
        modality_names: (0..n_modalities).map(|m| format!("mod{}", m + 1)).collect(),
        modalities,
        targets,
        splits,
        stats: None,
        latent_x: Some(latent),
    })
}

/// Desk-scale two-modality tabular task: both modalities are noisy
/// views of a shared latent, the target a smooth function of the
/// latent with latent-dependent noise scale (so target noise is
/// predictable from the inputs).
pub fn gen_tabular_replica(n: usize, seed: u64) -> Result<MultimodalDataset> {
    if n == 0 {
        return Err(MonigError::Config("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let latent_dim = 4;
    let d1 = 8;
    let d2 = 8;
    let normal = Normal::new(0.0, 1.0).unwrap();
    let obs_noise = Normal::new(0.0, 0.05).unwrap();

    // fixed mixing matrices, drawn once from the same stream
    let mix1: Vec<f64> = (0..d1 * latent_dim).map(|_| normal.sample(&mut rng)).collect();
    let mix2: Vec<f64> = (0..d2 * latent_dim).map(|_| normal.sample(&mut rng)).collect();
    let w_target: Vec<f64> = (0..latent_dim).map(|_| normal.sample(&mut rng)).collect();

    let mut m1 = Matrix::new(n, d1);
    let mut m2 = Matrix::new(n, d2);
    let mut targets = Vec::with_capacity(n);
    for i in 0..n {
        let z: Vec<f64> = (0..latent_dim).map(|_| normal.sample(&mut rng)).collect();
        for j in 0..d1 {
            let lin: f64 = (0..latent_dim).map(|k| mix1[j * latent_dim + k] * z[k]).sum();
            m1.row_mut(i)[j] = lin + obs_noise.sample(&mut rng);
        }
        for j in 0..d2 {
            let lin: f64 = (0..latent_dim).map(|k| mix2[j * latent_dim + k] * z[k]).sum();
            m2.row_mut(i)[j] = lin.tanh() + obs_noise.sample(&mut rng);
        }
        let lin: f64 = w_target.iter().zip(&z).map(|(w, zi)| w * zi).sum();
        let noise_std = 0.05 + 0.25 * z[2].abs();
        targets.push(lin + 0.5 * (z[0] * z[1]).sin() + noise_std * normal.sample(&mut rng));
    }

    Ok(MultimodalDataset {
        modality_names: vec!["mod1".into(), "mod2".into()],
        modalities: vec![m1, m2],
        targets,
        splits: vec![Split::Train; n],
        stats: None,
        latent_x: None,
    })
}

/// Column schema mapping CSV columns to modalities and the target.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetSchema {
    pub modalities: Vec<ModalitySchema>,
    pub target_column: usize,
    #[serde(default)]
    pub id_column: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModalitySchema {
    pub name: String,
    /// Half-open [start, end) column range.
    pub columns: [usize; 2],
}

impl DatasetSchema {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let schema: DatasetSchema = serde_json::from_str(&text)?;
        schema.validate()?;
        Ok(schema)
    }

    pub fn validate(&self) -> Result<()> {
        if self.modalities.is_empty() {
            return Err(MonigError::Schema("schema declares no modalities".into()));
        }
        for m in &self.modalities {
            if m.columns[1] <= m.columns[0] {
                return Err(MonigError::Schema(format!(
                    "modality {} has empty column range",
                    m.name
                )));
            }
        }
        Ok(())
    }
}

/// Load a single CSV (one header row, numeric cells) under `schema`.
pub fn load_csv_multimodal(path: &Path, schema: &DatasetSchema) -> Result<MultimodalDataset> {
    schema.validate()?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)?;

    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| MonigError::Parse {
            row: row_idx + 1,
            col: 0,
            reason: e.to_string(),
        })?;
        let mut row = Vec::with_capacity(record.len());
        for (col_idx, cell) in record.iter().enumerate() {
            let v: f64 = cell.trim().parse().map_err(|_| MonigError::Parse {
                row: row_idx + 1,
                col: col_idx,
                reason: if cell.trim().is_empty() {
                    "missing value".into()
                } else {
                    format!("not a number: {cell:?}")
                },
            })?;
            if !v.is_finite() {
                return Err(MonigError::Parse {
                    row: row_idx + 1,
                    col: col_idx,
                    reason: "non-finite value".into(),
                });
            }
            row.push(v);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(MonigError::Schema("CSV contains no data rows".into()));
    }

    let n = rows.len();
    let width = rows[0].len();
    for (i, r) in rows.iter().enumerate() {
        if r.len() != width {
            return Err(MonigError::Parse {
                row: i + 1,
                col: 0,
                reason: format!("expected {} columns, got {}", width, r.len()),
            });
        }
    }
    let max_col = schema
        .modalities
        .iter()
        .map(|m| m.columns[1])
        .max()
        .unwrap()
        .max(schema.target_column + 1);
    if max_col > width {
        return Err(MonigError::Schema(format!(
            "schema references column {} but CSV has {} columns",
            max_col - 1,
            width
        )));
    }

    let mut modalities = Vec::new();
    for m in &schema.modalities {
        let cols = m.columns[1] - m.columns[0];
        let mut mat = Matrix::new(n, cols);
        for i in 0..n {
            mat.row_mut(i).copy_from_slice(&rows[i][m.columns[0]..m.columns[1]]);
        }
        modalities.push(mat);
    }
    let targets: Vec<f64> = rows.iter().map(|r| r[schema.target_column]).collect();

    Ok(MultimodalDataset {
        modality_names: schema.modalities.iter().map(|m| m.name.clone()).collect(),
        modalities,
        targets,
        splits: vec![Split::Train; n],
        stats: None,
        latent_x: None,
    })
}

/// Seeded shuffle then partition into train/val/test of the given sizes.
pub fn split(dataset: &MultimodalDataset, counts: [usize; 3], seed: u64) -> Result<MultimodalDataset> {
    dataset.check_consistency()?;
    let n = dataset.n_samples();
    let total = counts[0] + counts[1] + counts[2];
    if total > n {
        return Err(MonigError::Split(format!(
            "split counts sum to {total} but dataset has {n} samples"
        )));
    }
    if counts[0] == 0 {
        return Err(MonigError::Split("train split must be non-empty".into()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);

    let mut out = dataset.clone();
    // leftover samples (if counts undershoot) stay in the test split
    for (rank, &i) in order.iter().enumerate() {
        out.splits[i] = if rank < counts[0] {
            Split::Train
        } else if rank < counts[0] + counts[1] {
            Split::Val
        } else {
            Split::Test
        };
    }
    Ok(out)
}

/// Z-score every feature by train-split stats. Targets are left in
/// original units. Zero-variance features map to 0.
pub fn standardize(dataset: &MultimodalDataset) -> Result<MultimodalDataset> {
    dataset.check_consistency()?;
    let train_idx = dataset.indices_of(Split::Train);
    if train_idx.is_empty() {
        return Err(MonigError::Split("standardize requires a train split".into()));
    }
    let mut out = dataset.clone();
    let mut all_stats = Vec::new();
    for mat in &mut out.modalities {
        let cols = mat.cols;
        let mut mean = vec![0.0; cols];
        let mut std = vec![0.0; cols];
        for &i in &train_idx {
            for (j, v) in mat.row(i).iter().enumerate() {
                mean[j] += v;
            }
        }
        for m in &mut mean {
            *m /= train_idx.len() as f64;
        }
        for &i in &train_idx {
            for (j, v) in mat.row(i).iter().enumerate() {
                std[j] += (v - mean[j]).powi(2);
            }
        }
        for (s, m) in std.iter_mut().zip(&mean) {
            *s = (*s / train_idx.len() as f64).sqrt();
            // constant features: treat rounding-level spread as zero
            if *s <= 1e-12 * m.abs().max(1.0) {
                *s = 0.0;
            }
        }
        for i in 0..mat.rows {
            for j in 0..cols {
                let v = &mut mat.row_mut(i)[j];
                *v = if std[j] > 0.0 { (*v - mean[j]) / std[j] } else { 0.0 };
            }
        }
        all_stats.push(FeatureStats { mean, std });
    }
    out.stats = Some(all_stats);
    Ok(out)
}

/// Z-score the targets by train-split mean and std. Returns the scaled
/// dataset and the (mean, std) pair for mapping predictions back:
/// y = δ·std + mean, variance-scale uncertainties by std².
pub fn standardize_targets(dataset: &MultimodalDataset) -> Result<(MultimodalDataset, f64, f64)> {
    dataset.check_consistency()?;
    let train_idx = dataset.indices_of(Split::Train);
    if train_idx.is_empty() {
        return Err(MonigError::Split("standardize requires a train split".into()));
    }
    let n = train_idx.len() as f64;
    let mean = train_idx.iter().map(|&i| dataset.targets[i]).sum::<f64>() / n;
    let var = train_idx
        .iter()
        .map(|&i| (dataset.targets[i] - mean).powi(2))
        .sum::<f64>()
        / n;
    let std = var.sqrt();
    if std <= 1e-12 * mean.abs().max(1.0) {
        return Err(MonigError::Split("targets are constant on the train split".into()));
    }
    let mut out = dataset.clone();
    for t in out.targets.iter_mut() {
        *t = (*t - mean) / std;
    }
    Ok((out, mean, std))
}

/// Inverse of [`standardize`] for one modality's feature vector.
pub fn destandardize(stats: &FeatureStats, row: &[f64]) -> Vec<f64> {
    row.iter()
        .enumerate()
        .map(|(j, v)| {
            if stats.std[j] > 0.0 {
                v * stats.std[j] + stats.mean[j]
            } else {
                stats.mean[j]
            }
        })
        .collect()
}

/// Which modalities receive injected noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseTarget {
    /// One fixed modality (by index).
    Fixed(usize),
    /// One modality drawn uniformly per corrupted sample.
    RandomPerSample,
    All,
}

/// Additive Gaussian corruption spec: `epsilon` is a variance.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub epsilon: f64,
    pub target: NoiseTarget,
    /// Fraction of test samples affected, in [0, 1].
    pub fraction: f64,
}

impl NoiseSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon.is_finite() && self.epsilon >= 0.0) {
            return Err(MonigError::Config(format!(
                "epsilon must be non-negative, got {}",
                self.epsilon
            )));
        }
        if !(0.0..=1.0).contains(&self.fraction) {
            return Err(MonigError::Config(format!(
                "fraction must lie in [0,1], got {}",
                self.fraction
            )));
        }
        Ok(())
    }
}

/// Corrupt ⌊fraction·n_test⌋ test samples with additive N(0, ε) noise on
/// the targeted modality features. Returns the corrupted dataset and a
/// binary OOD label (1 = corrupted) per test sample, in test-index order.
pub fn inject_noise(
    dataset: &MultimodalDataset,
    spec: &NoiseSpec,
    seed: u64,
) -> Result<(MultimodalDataset, Vec<bool>)> {
    spec.validate()?;
    let test_idx = dataset.indices_of(Split::Test);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_corrupt = (spec.fraction * test_idx.len() as f64).floor() as usize;
    let mut order: Vec<usize> = (0..test_idx.len()).collect();
    order.shuffle(&mut rng);
    let mut is_ood = vec![false; test_idx.len()];
    for &k in order.iter().take(n_corrupt) {
        is_ood[k] = true;
    }

    let mut out = dataset.clone();
    let std = spec.epsilon.sqrt();
    let noise = Normal::new(0.0, 1.0).unwrap();
    let n_mod = dataset.n_modalities();
    for (k, &i) in test_idx.iter().enumerate() {
        if !is_ood[k] {
            continue;
        }
        let targets: Vec<usize> = match spec.target {
            NoiseTarget::Fixed(m) => {
                if m >= n_mod {
                    return Err(MonigError::Config(format!(
                        "noise target modality {m} out of range"
                    )));
                }
                vec![m]
            }
            NoiseTarget::RandomPerSample => vec![rng.random_range(0..n_mod)],
            NoiseTarget::All => (0..n_mod).collect(),
        };
        for m in targets {
            for v in out.modalities[m].row_mut(i) {
                *v += std * noise.sample(&mut rng);
            }
        }
    }
    Ok((out, is_ood))
}
