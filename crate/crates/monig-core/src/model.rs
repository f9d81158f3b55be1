//! The full multimodal regressor: per-modality branches, an optional
//! pseudo-modality branch over concatenated hidden features, evidential
//! heads, MoNIG fusion, the multi-task loss, the training loop, and the
//! single-head baselines used for comparison.

use crate::autodiff::{
    evidential_head_eval, gaussian_head_eval, init_evidential_head, init_gaussian_head, init_mlp,
    mlp_eval, mlp_forward, AdamState, HeadParams, MlpParams, MlpSpec, ParamStore, Tape,
};
use crate::data::{MultimodalDataset, Split};
use crate::error::{MonigError, Result};
use crate::loss::LossConfig;
use crate::nig::{monig_fuse, NigParams};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Training hyperparameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrainConfig {
    pub iterations: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
    pub lambda: f64,
    pub seed: u64,
    pub use_pseudo: bool,
    pub regularizer_delta_grad: bool,
}

impl TrainConfig {
    /// Synthetic-task defaults: lr 5e-3, batch 128, λ 0.6, and 60 epochs
    /// of the 800-point training set (420 minibatch steps).
    pub fn synthetic() -> Self {
        TrainConfig {
            iterations: 420,
            batch_size: 128,
            learning_rate: 5e-3,
            lambda: 0.6,
            seed: 0,
            use_pseudo: true,
            regularizer_delta_grad: true,
        }
    }

    /// Tabular-task defaults: lr 1e-3, 400 iterations, batch 128, λ 0.05.
    pub fn tabular() -> Self {
        TrainConfig {
            iterations: 400,
            batch_size: 128,
            learning_rate: 1e-3,
            lambda: 0.05,
            seed: 0,
            use_pseudo: true,
            regularizer_delta_grad: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.batch_size == 0 {
            return Err(MonigError::Config("batch_size must be positive".into()));
        }
        if !(self.lambda.is_finite() && self.lambda >= 0.0) {
            return Err(MonigError::Config("lambda must be non-negative".into()));
        }
        Ok(())
    }

    pub fn loss_config(&self) -> LossConfig {
        LossConfig {
            lambda: self.lambda,
            regularizer_delta_grad: self.regularizer_delta_grad,
        }
    }
}

/// Fused prediction with decomposed uncertainties and the per-branch
/// NIGs that produced it (modalities first, pseudo last).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvidentialPrediction {
    pub fused: NigParams,
    pub per_branch: Vec<NigParams>,
    pub prediction: f64,
    pub aleatoric: f64,
    pub epistemic: f64,
    pub per_branch_aleatoric: Vec<f64>,
    pub per_branch_epistemic: Vec<f64>,
}

/// Decision-fusion ablation strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionFusionMode {
    Average,
    AuWeighted,
    EuWeighted,
}

/// Inverse-uncertainty weighted mean of branch δ values.
pub fn decision_fusion_baseline(per_branch: &[NigParams], mode: DecisionFusionMode) -> Result<f64> {
    if per_branch.is_empty() {
        return Err(MonigError::EmptyInput("decision fusion needs branches"));
    }
    match mode {
        DecisionFusionMode::Average => {
            Ok(per_branch.iter().map(|p| p.delta).sum::<f64>() / per_branch.len() as f64)
        }
        DecisionFusionMode::AuWeighted | DecisionFusionMode::EuWeighted => {
            let weights: Vec<f64> = per_branch
                .iter()
                .map(|p| {
                    let u = if mode == DecisionFusionMode::AuWeighted {
                        p.aleatoric()
                    } else {
                        p.epistemic()
                    };
                    1.0 / u
                })
                .collect();
            let total: f64 = weights.iter().sum();
            Ok(per_branch
                .iter()
                .zip(&weights)
                .map(|(p, w)| w * p.delta)
                .sum::<f64>()
                / total)
        }
    }
}

/// The MoNIG multimodal regressor.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MultimodalRegressor {
    pub store: ParamStore,
    pub branch_specs: Vec<MlpSpec>,
    pub branches: Vec<MlpParams>,
    pub pseudo_spec: Option<MlpSpec>,
    pub pseudo: Option<MlpParams>,
    /// Evidential heads: one per modality, plus one for the pseudo
    /// branch when enabled (last).
    pub heads: Vec<HeadParams>,
    pub use_pseudo: bool,
    pub seed: u64,
}

impl MultimodalRegressor {
    /// Builds branch networks of the given hidden sizes for each
    /// modality; the pseudo branch takes the concatenated last hidden
    /// layers of all branches.
    pub fn new(
        modality_dims: &[usize],
        hidden_dims: &[usize],
        use_pseudo: bool,
        seed: u64,
    ) -> Result<Self> {
        if modality_dims.is_empty() {
            return Err(MonigError::Config("at least one modality required".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut store = ParamStore::default();
        let mut branch_specs = Vec::new();
        let mut branches = Vec::new();
        for &dim in modality_dims {
            let spec = MlpSpec::new(dim, hidden_dims.to_vec())?;
            branches.push(init_mlp(&mut store, &spec, &mut rng));
            branch_specs.push(spec);
        }
        let mut heads = Vec::new();
        for spec in &branch_specs {
            heads.push(init_evidential_head(&mut store, spec.output_dim(), &mut rng));
        }
        let (pseudo_spec, pseudo) = if use_pseudo {
            let concat_dim: usize = branch_specs.iter().map(|s| s.output_dim()).sum();
            let spec = MlpSpec::new(concat_dim, hidden_dims.to_vec())?;
            let params = init_mlp(&mut store, &spec, &mut rng);
            heads.push(init_evidential_head(&mut store, spec.output_dim(), &mut rng));
            (Some(spec), Some(params))
        } else {
            (None, None)
        };
        Ok(MultimodalRegressor {
            store,
            branch_specs,
            branches,
            pseudo_spec,
            pseudo,
            heads,
            use_pseudo,
            seed,
        })
    }

    pub fn n_modalities(&self) -> usize {
        self.branches.len()
    }

    pub fn n_branches(&self) -> usize {
        self.branches.len() + usize::from(self.use_pseudo)
    }

    fn check_sample(&self, sample: &[&[f64]]) -> Result<()> {
        if sample.len() != self.n_modalities() {
            return Err(MonigError::ShapeMismatch {
                context: "modality count",
                expected: self.n_modalities(),
                got: sample.len(),
            });
        }
        for (x, spec) in sample.iter().zip(&self.branch_specs) {
            if x.len() != spec.input_dim {
                return Err(MonigError::ShapeMismatch {
                    context: "modality input",
                    expected: spec.input_dim,
                    got: x.len(),
                });
            }
        }
        Ok(())
    }

    /// Per-branch NIGs and the MoNIG fusion for one sample (no tape).
    pub fn forward_all(&self, sample: &[&[f64]]) -> Result<EvidentialPrediction> {
        self.check_sample(sample)?;
        let mut hidden = Vec::with_capacity(self.n_modalities());
        let mut per_branch = Vec::with_capacity(self.n_branches());
        for (m, (spec, params)) in self.branch_specs.iter().zip(&self.branches).enumerate() {
            let h = mlp_eval(&self.store, spec, params, sample[m])?;
            per_branch.push(evidential_head_eval(&self.store, &self.heads[m], &h));
            hidden.push(h);
        }
        if self.use_pseudo {
            let concat: Vec<f64> = hidden.concat();
            let spec = self.pseudo_spec.as_ref().unwrap();
            let params = self.pseudo.as_ref().unwrap();
            let h = mlp_eval(&self.store, spec, params, &concat)?;
            per_branch.push(evidential_head_eval(
                &self.store,
                self.heads.last().unwrap(),
                &h,
            ));
        }
        let fused = monig_fuse(&per_branch)?;
        Ok(EvidentialPrediction {
            prediction: fused.point_prediction(),
            aleatoric: fused.aleatoric(),
            epistemic: fused.epistemic(),
            per_branch_aleatoric: per_branch.iter().map(|p| p.aleatoric()).collect(),
            per_branch_epistemic: per_branch.iter().map(|p| p.epistemic()).collect(),
            fused,
            per_branch,
        })
    }

    /// Records the multi-task loss for one batch on a fresh tape.
    /// Returns the tape and the scalar loss node.
    pub fn record_batch_loss(
        &self,
        dataset: &MultimodalDataset,
        batch: &[usize],
        cfg: &LossConfig,
    ) -> Result<(Tape, crate::autodiff::NodeId)> {
        if batch.is_empty() {
            return Err(MonigError::EmptyInput("batch must be non-empty"));
        }
        let mut tape = Tape::new();
        let mut per_sample = Vec::with_capacity(batch.len());
        for &i in batch {
            let y = dataset.targets[i];
            let mut hidden_nodes = Vec::new();
            let mut branch_nigs = Vec::new();
            for (m, (spec, params)) in self.branch_specs.iter().zip(&self.branches).enumerate() {
                let x = tape.input(dataset.modalities[m].row(i).to_vec());
                let h = mlp_forward(&mut tape, &self.store, spec, params, x)?;
                let raw = tape.linear(&self.store, self.heads[m].w, self.heads[m].b, h)?;
                branch_nigs.push(tape.nig_head(raw)?);
                hidden_nodes.push(h);
            }
            if self.use_pseudo {
                let concat = tape.concat(&hidden_nodes);
                let spec = self.pseudo_spec.as_ref().unwrap();
                let params = self.pseudo.as_ref().unwrap();
                let h = mlp_forward(&mut tape, &self.store, spec, params, concat)?;
                let head = self.heads.last().unwrap();
                let raw = tape.linear(&self.store, head.w, head.b, h)?;
                branch_nigs.push(tape.nig_head(raw)?);
            }
            let fused = tape.monig_fuse(&branch_nigs)?;

            let mut terms = Vec::with_capacity(branch_nigs.len() + 1);
            for &nig in branch_nigs.iter().chain(std::iter::once(&fused)) {
                let nll = tape.nig_nll(y, nig);
                let reg = tape.evidence_reg(y, nig, cfg.regularizer_delta_grad);
                terms.push(tape.add_scaled(nll, reg, cfg.lambda));
            }
            per_sample.push(tape.sum_scalars(&terms));
        }
        let loss = tape.mean_scalars(&per_sample);
        Ok((tape, loss))
    }

    /// Batch-mean multi-task loss value.
    pub fn total_loss(
        &self,
        dataset: &MultimodalDataset,
        batch: &[usize],
        cfg: &LossConfig,
    ) -> Result<f64> {
        let (tape, loss) = self.record_batch_loss(dataset, batch, cfg)?;
        Ok(tape.scalar(loss))
    }

    pub fn predict_split(
        &self,
        dataset: &MultimodalDataset,
        split: Split,
    ) -> Result<Vec<EvidentialPrediction>> {
        dataset
            .indices_of(split)
            .iter()
            .map(|&i| self.forward_all(&dataset.sample(i)))
            .collect()
    }
}

/// Per-iteration train loss and per-epoch validation RMSE.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct LossTrajectory {
    pub train: Vec<f64>,
    pub val_rmse: Vec<f64>,
}

fn split_rmse_generic(preds: &[f64], targets: &[f64]) -> f64 {
    let n = preds.len() as f64;
    (preds
        .iter()
        .zip(targets)
        .map(|(p, t)| (p - t).powi(2))
        .sum::<f64>()
        / n)
        .sqrt()
}

/// Shuffled mini-batch Adam over the train split for `cfg.iterations`
/// steps. Keeps the best-validation-RMSE parameters when a validation
/// split exists. Deterministic under `cfg.seed`.
pub fn train(
    model: &mut MultimodalRegressor,
    dataset: &MultimodalDataset,
    cfg: &TrainConfig,
) -> Result<LossTrajectory> {
    cfg.validate()?;
    let train_idx = dataset.indices_of(Split::Train);
    if train_idx.is_empty() {
        return Err(MonigError::Config("dataset has no train split".into()));
    }
    if dataset.n_modalities() != model.n_modalities() {
        return Err(MonigError::Config(format!(
            "model expects {} modalities, dataset has {}",
            model.n_modalities(),
            dataset.n_modalities()
        )));
    }
    for (mat, spec) in dataset.modalities.iter().zip(&model.branch_specs) {
        if mat.cols != spec.input_dim {
            return Err(MonigError::Config(format!(
                "modality dim {} does not match model input dim {}",
                mat.cols, spec.input_dim
            )));
        }
    }
    let val_idx = dataset.indices_of(Split::Val);
    let loss_cfg = cfg.loss_config();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(0x5eed));
    let mut adam = AdamState::new(cfg.learning_rate, &model.store);
    let mut trajectory = LossTrajectory::default();

    let mut best: Option<(f64, ParamStore)> = None;
    let mut order = train_idx.clone();
    order.shuffle(&mut rng);
    let mut cursor = 0usize;
    let steps_per_epoch = train_idx.len().div_ceil(cfg.batch_size).max(1);

    let eval_val = |model: &MultimodalRegressor,
                        trajectory: &mut LossTrajectory,
                        best: &mut Option<(f64, ParamStore)>|
     -> Result<()> {
        if val_idx.is_empty() {
            return Ok(());
        }
        let preds: Vec<f64> = val_idx
            .iter()
            .map(|&i| Ok(model.forward_all(&dataset.sample(i))?.prediction))
            .collect::<Result<_>>()?;
        let targets: Vec<f64> = val_idx.iter().map(|&i| dataset.targets[i]).collect();
        let rmse = split_rmse_generic(&preds, &targets);
        trajectory.val_rmse.push(rmse);
        if best.as_ref().map_or(true, |(b, _)| rmse < *b) {
            *best = Some((rmse, model.store.clone()));
        }
        Ok(())
    };

    for step in 0..cfg.iterations {
        if cursor >= order.len() {
            order.shuffle(&mut rng);
            cursor = 0;
        }
        let end = (cursor + cfg.batch_size).min(order.len());
        let batch: Vec<usize> = order[cursor..end].to_vec();
        cursor = end;

        let (mut tape, loss) = model.record_batch_loss(dataset, &batch, &loss_cfg)?;
        trajectory.train.push(tape.scalar(loss));
        model.store.zero_grad();
        tape.backward(loss, &mut model.store)?;
        tape.release();
        adam.step(&mut model.store);

        if (step + 1) % steps_per_epoch == 0 {
            eval_val(model, &mut trajectory, &mut best)?;
        }
    }
    if cfg.iterations > 0 && cfg.iterations % steps_per_epoch != 0 {
        eval_val(model, &mut trajectory, &mut best)?;
    }
    if let Some((_, store)) = best {
        model.store = store;
    }
    Ok(trajectory)
}

/// Which single-head baseline to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaselineKind {
    /// Gaussian head over data-level concatenated features.
    GaussianDf,
    /// Gaussian head over concatenated per-branch hidden features.
    GaussianIf,
    /// Evidential head over data-level concatenated features.
    EvdDf,
    /// Evidential head over concatenated per-branch hidden features.
    EvdIf,
}

impl BaselineKind {
    pub fn is_evidential(self) -> bool {
        matches!(self, BaselineKind::EvdDf | BaselineKind::EvdIf)
    }

    fn is_intermediate(self) -> bool {
        matches!(self, BaselineKind::GaussianIf | BaselineKind::EvdIf)
    }
}

/// Single-prediction baseline: feature concatenation (data level or
/// intermediate level) into one head.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BaselineRegressor {
    pub kind: BaselineKind,
    pub store: ParamStore,
    /// Per-modality encoders (intermediate fusion only).
    pub branch_specs: Vec<MlpSpec>,
    pub branches: Vec<MlpParams>,
    /// Trunk over the (raw or hidden) concatenation.
    pub trunk_spec: MlpSpec,
    pub trunk: MlpParams,
    pub head: HeadParams,
    pub seed: u64,
}

impl BaselineRegressor {
    pub fn new(
        kind: BaselineKind,
        modality_dims: &[usize],
        hidden_dims: &[usize],
        seed: u64,
    ) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut store = ParamStore::default();
        let mut branch_specs = Vec::new();
        let mut branches = Vec::new();
        let trunk_input = if kind.is_intermediate() {
            for &dim in modality_dims {
                let spec = MlpSpec::new(dim, hidden_dims.to_vec())?;
                branches.push(init_mlp(&mut store, &spec, &mut rng));
                branch_specs.push(spec);
            }
            branch_specs.iter().map(|s| s.output_dim()).sum()
        } else {
            modality_dims.iter().sum()
        };
        let trunk_spec = MlpSpec::new(trunk_input, hidden_dims.to_vec())?;
        let trunk = init_mlp(&mut store, &trunk_spec, &mut rng);
        let head = if kind.is_evidential() {
            init_evidential_head(&mut store, trunk_spec.output_dim(), &mut rng)
        } else {
            init_gaussian_head(&mut store, trunk_spec.output_dim(), &mut rng)
        };
        Ok(BaselineRegressor {
            kind,
            store,
            branch_specs,
            branches,
            trunk_spec,
            trunk,
            head,
            seed,
        })
    }

    fn trunk_input(&self, sample: &[&[f64]]) -> Result<Vec<f64>> {
        if self.kind.is_intermediate() {
            let mut h = Vec::new();
            for (m, (spec, params)) in self.branch_specs.iter().zip(&self.branches).enumerate() {
                h.extend(mlp_eval(&self.store, spec, params, sample[m])?);
            }
            Ok(h)
        } else {
            Ok(sample.concat())
        }
    }

    /// Point prediction and, for evidential heads, the NIG.
    pub fn predict(&self, sample: &[&[f64]]) -> Result<(f64, Option<NigParams>)> {
        let x = self.trunk_input(sample)?;
        let h = mlp_eval(&self.store, &self.trunk_spec, &self.trunk, &x)?;
        if self.kind.is_evidential() {
            let p = evidential_head_eval(&self.store, &self.head, &h);
            Ok((p.point_prediction(), Some(p)))
        } else {
            let (mean, _var) = gaussian_head_eval(&self.store, &self.head, &h);
            Ok((mean, None))
        }
    }

    fn record_loss(
        &self,
        dataset: &MultimodalDataset,
        batch: &[usize],
        cfg: &LossConfig,
    ) -> Result<(Tape, crate::autodiff::NodeId)> {
        let mut tape = Tape::new();
        let mut per_sample = Vec::with_capacity(batch.len());
        for &i in batch {
            let y = dataset.targets[i];
            let trunk_in = if self.kind.is_intermediate() {
                let mut parts = Vec::new();
                for (m, (spec, params)) in self.branch_specs.iter().zip(&self.branches).enumerate()
                {
                    let x = tape.input(dataset.modalities[m].row(i).to_vec());
                    parts.push(mlp_forward(&mut tape, &self.store, spec, params, x)?);
                }
                tape.concat(&parts)
            } else {
                let concat: Vec<f64> = dataset
                    .modalities
                    .iter()
                    .flat_map(|m| m.row(i).iter().copied())
                    .collect();
                tape.input(concat)
            };
            let h = mlp_forward(&mut tape, &self.store, &self.trunk_spec, &self.trunk, trunk_in)?;
            let raw = tape.linear(&self.store, self.head.w, self.head.b, h)?;
            let loss = if self.kind.is_evidential() {
                let nig = tape.nig_head(raw)?;
                let nll = tape.nig_nll(y, nig);
                let reg = tape.evidence_reg(y, nig, cfg.regularizer_delta_grad);
                tape.add_scaled(nll, reg, cfg.lambda)
            } else {
                let head = tape.gaussian_head(raw)?;
                tape.gaussian_nll(y, head)
            };
            per_sample.push(loss);
        }
        let loss = tape.mean_scalars(&per_sample);
        Ok((tape, loss))
    }
}

/// Mini-batch Adam training of a baseline, mirroring [`train`].
pub fn train_baseline(
    model: &mut BaselineRegressor,
    dataset: &MultimodalDataset,
    cfg: &TrainConfig,
) -> Result<LossTrajectory> {
    cfg.validate()?;
    let train_idx = dataset.indices_of(Split::Train);
    if train_idx.is_empty() {
        return Err(MonigError::Config("dataset has no train split".into()));
    }
    let val_idx = dataset.indices_of(Split::Val);
    let loss_cfg = cfg.loss_config();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(0x5eed));
    let mut adam = AdamState::new(cfg.learning_rate, &model.store);
    let mut trajectory = LossTrajectory::default();
    let mut best: Option<(f64, ParamStore)> = None;
    let mut order = train_idx.clone();
    order.shuffle(&mut rng);
    let mut cursor = 0usize;
    let steps_per_epoch = train_idx.len().div_ceil(cfg.batch_size).max(1);

    for step in 0..cfg.iterations {
        if cursor >= order.len() {
            order.shuffle(&mut rng);
            cursor = 0;
        }
        let end = (cursor + cfg.batch_size).min(order.len());
        let batch: Vec<usize> = order[cursor..end].to_vec();
        cursor = end;

        let (mut tape, loss) = model.record_loss(dataset, &batch, &loss_cfg)?;
        trajectory.train.push(tape.scalar(loss));
        model.store.zero_grad();
        tape.backward(loss, &mut model.store)?;
        tape.release();
        adam.step(&mut model.store);

        let epoch_end = (step + 1) % steps_per_epoch == 0 || step + 1 == cfg.iterations;
        if epoch_end && !val_idx.is_empty() {
            let preds: Vec<f64> = val_idx
                .iter()
                .map(|&i| Ok(model.predict(&dataset.sample(i))?.0))
                .collect::<Result<_>>()?;
            let targets: Vec<f64> = val_idx.iter().map(|&i| dataset.targets[i]).collect();
            let rmse = split_rmse_generic(&preds, &targets);
            trajectory.val_rmse.push(rmse);
            if best.as_ref().map_or(true, |(b, _)| rmse < *b) {
                best = Some((rmse, model.store.clone()));
            }
        }
    }
    if let Some((_, store)) = best {
        model.store = store;
    }
    Ok(trajectory)
}

/// Versioned checkpoint for [`MultimodalRegressor`].
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Checkpoint {
    pub format_version: u32,
    pub seed: u64,
    pub modality_dims: Vec<usize>,
    pub hidden_dims: Vec<usize>,
    pub use_pseudo: bool,
    /// Flat row-major f64 arrays, one per tensor, in store order.
    pub tensors: Vec<Vec<f64>>,
}

impl Checkpoint {
    pub fn from_model(model: &MultimodalRegressor) -> Self {
        Checkpoint {
            format_version: 1,
            seed: model.seed,
            modality_dims: model.branch_specs.iter().map(|s| s.input_dim).collect(),
            hidden_dims: model.branch_specs[0].hidden_dims.clone(),
            use_pseudo: model.use_pseudo,
            tensors: model
                .store
                .tensors
                .iter()
                .map(|t| t.values.clone())
                .collect(),
        }
    }

    pub fn into_model(self) -> Result<MultimodalRegressor> {
        if self.format_version != 1 {
            return Err(MonigError::Config(format!(
                "unsupported checkpoint format_version {}",
                self.format_version
            )));
        }
        let mut model = MultimodalRegressor::new(
            &self.modality_dims,
            &self.hidden_dims,
            self.use_pseudo,
            self.seed,
        )?;
        if model.store.tensors.len() != self.tensors.len() {
            return Err(MonigError::Config(format!(
                "checkpoint carries {} tensors, model expects {}",
                self.tensors.len(),
                model.store.tensors.len()
            )));
        }
        for (t, vals) in model.store.tensors.iter_mut().zip(self.tensors) {
            if t.values.len() != vals.len() {
                return Err(MonigError::Config("checkpoint tensor size mismatch".into()));
            }
            t.values = vals;
        }
        Ok(model)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string(self)?)?;
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}
