//! One function per subcommand.

use crate::common::{
    ensure_dir, eval_baseline, eval_monig, parse_noise_target, write_json, DataDesc, DataOpts,
    EvalSection, ResolvedConfig, TrainOpts,
};
use clap::{Args, ValueEnum};
use monig_core::data::{
    gen_synthetic_cubic, inject_noise, standardize_targets, NoiseSpec, NoiseTarget, Split,
};
use monig_core::error::{MonigError, Result};
use monig_core::metrics::{auroc, rmse, ueir};
use monig_core::model::{
    decision_fusion_baseline, train, train_baseline, BaselineKind, BaselineRegressor, Checkpoint,
    DecisionFusionMode, MultimodalRegressor, TrainConfig,
};
use monig_core::{monig_fuse, NigParams};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Monig,
    EvdIf,
    EvdDf,
    GaussianIf,
    GaussianDf,
}

impl ModelKind {
    fn name(self) -> &'static str {
        match self {
            ModelKind::Monig => "monig",
            ModelKind::EvdIf => "evd-if",
            ModelKind::EvdDf => "evd-df",
            ModelKind::GaussianIf => "gaussian-if",
            ModelKind::GaussianDf => "gaussian-df",
        }
    }

    fn baseline(self) -> Option<BaselineKind> {
        match self {
            ModelKind::Monig => None,
            ModelKind::EvdIf => Some(BaselineKind::EvdIf),
            ModelKind::EvdDf => Some(BaselineKind::EvdDf),
            ModelKind::GaussianIf => Some(BaselineKind::GaussianIf),
            ModelKind::GaussianDf => Some(BaselineKind::GaussianDf),
        }
    }
}

// ---------------------------------------------------------------- synth

/// Train on the synthetic cubic task and dump the test-grid curves.
#[derive(Debug, Args)]
pub struct SynthArgs {
    #[command(flatten)]
    pub train: TrainOpts,
    /// Training set size
    #[arg(long, default_value_t = 800)]
    pub n_train: usize,
    /// Number of (identically generated) input modalities
    #[arg(long, default_value_t = 2)]
    pub modalities: usize,
    #[arg(long, short)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Serialize)]
struct SynthReport {
    config: ResolvedConfig,
    rmse: f64,
    mean_au_in: f64,
    mean_au_out: f64,
    mean_eu_interpolation: f64,
    mean_eu_extrapolation: f64,
    final_train_loss: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    best_val_rmse: Option<f64>,
}

pub fn synth(args: &SynthArgs) -> Result<()> {
    let (cfg, hidden) = args.train.resolve(TrainConfig::synthetic(), &[100, 100, 100, 100])?;
    let raw = gen_synthetic_cubic(args.n_train, args.modalities, cfg.seed, true)?;
    // train in standardized target space, report in original units
    let (ds, t_mean, t_std) = standardize_targets(&raw)?;
    let mut model =
        MultimodalRegressor::new(&ds.modality_dims(), &hidden, cfg.use_pseudo, cfg.seed)?;
    let traj = train(&mut model, &ds, &cfg)?;

    ensure_dir(&args.out_dir)?;
    let idx = ds.indices_of(Split::Test);
    let latent = ds.latent_x.as_ref().expect("synthetic task carries latent x");
    let mut preds = model.predict_split(&ds, Split::Test)?;
    for p in preds.iter_mut() {
        p.prediction = p.prediction * t_std + t_mean;
        p.aleatoric *= t_std * t_std;
        p.epistemic *= t_std * t_std;
        for b in p.per_branch.iter_mut() {
            b.delta = b.delta * t_std + t_mean;
        }
    }

    let mut w = csv::Writer::from_path(args.out_dir.join("predictions.csv"))?;
    let mut header = vec!["x".to_string(), "y_true".into(), "fused_delta".into()];
    for name in &ds.modality_names {
        header.push(format!("{name}_delta"));
    }
    if model.use_pseudo {
        header.push("pseudo_delta".into());
    }
    header.push("aleatoric".into());
    header.push("epistemic".into());
    w.write_record(&header)?;
    for (k, &i) in idx.iter().enumerate() {
        let p = &preds[k];
        let mut row = vec![
            latent[i].to_string(),
            raw.targets[i].to_string(),
            p.prediction.to_string(),
        ];
        for b in &p.per_branch {
            row.push(b.delta.to_string());
        }
        row.push(p.aleatoric.to_string());
        row.push(p.epistemic.to_string());
        w.write_record(&row)?;
    }
    w.flush()?;

    // region means over the test grid: high-noise core, in-range rim,
    // and the extrapolation band
    let region = |lo: f64, hi: f64, f: &dyn Fn(usize) -> f64| -> f64 {
        let vals: Vec<f64> = idx
            .iter()
            .enumerate()
            .filter(|(_, &i)| {
                let a = latent[i].abs();
                a >= lo && a <= hi
            })
            .map(|(k, _)| f(k))
            .collect();
        vals.iter().sum::<f64>() / vals.len() as f64
    };
    let in_range: Vec<(f64, f64)> = idx
        .iter()
        .enumerate()
        .filter(|(_, &i)| latent[i].abs() <= 4.0)
        .map(|(k, &i)| (preds[k].prediction, raw.targets[i]))
        .collect();
    let (p_in, t_in): (Vec<f64>, Vec<f64>) = in_range.into_iter().unzip();

    let report = SynthReport {
        config: ResolvedConfig::new(
            &cfg,
            &hidden,
            DataDesc::SyntheticCubic {
                n_train: args.n_train,
                n_modalities: args.modalities,
            },
        ),
        rmse: rmse(&p_in, &t_in)?,
        mean_au_in: region(0.0, 2.0, &|k| preds[k].aleatoric),
        mean_au_out: region(2.0, 4.0, &|k| preds[k].aleatoric),
        mean_eu_interpolation: region(2.0, 4.0, &|k| preds[k].epistemic),
        mean_eu_extrapolation: region(5.0, 7.0, &|k| preds[k].epistemic),
        final_train_loss: *traj.train.last().unwrap(),
        best_val_rmse: traj
            .val_rmse
            .iter()
            .map(|r| r * t_std)
            .min_by(|a, b| a.partial_cmp(b).unwrap()),
    };
    write_json(&args.out_dir.join("report.json"), &report)
}

// ---------------------------------------------------------------- train

/// Train MoNIG or a baseline on tabular data and evaluate the test split.
#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long, value_enum, default_value_t = ModelKind::Monig)]
    pub model: ModelKind,
    #[command(flatten)]
    pub train: TrainOpts,
    #[command(flatten)]
    pub data: DataOpts,
    #[arg(long, short)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Serialize)]
struct TrainReport {
    config: ResolvedConfig,
    model: &'static str,
    final_train_loss: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    best_val_rmse: Option<f64>,
    eval: EvalSection,
}

const TABULAR_HIDDEN: [usize; 3] = [32, 32, 32];

pub fn train_cmd(args: &TrainArgs) -> Result<()> {
    let (cfg, hidden) = args.train.resolve(TrainConfig::tabular(), &TABULAR_HIDDEN)?;
    let (ds, desc) = args.data.build()?;
    ensure_dir(&args.out_dir)?;

    let (traj, eval) = match args.model.baseline() {
        None => {
            let mut model =
                MultimodalRegressor::new(&ds.modality_dims(), &hidden, cfg.use_pseudo, cfg.seed)?;
            let traj = train(&mut model, &ds, &cfg)?;
            Checkpoint::from_model(&model).save(&args.out_dir.join("checkpoint.json"))?;
            let eval = eval_monig(&model, &ds)?;
            (traj, eval)
        }
        Some(kind) => {
            let mut model =
                BaselineRegressor::new(kind, &ds.modality_dims(), &hidden, cfg.seed)?;
            let traj = train_baseline(&mut model, &ds, &cfg)?;
            write_json(&args.out_dir.join("model.json"), &model)?;
            let eval = eval_baseline(&model, &ds)?;
            (traj, eval)
        }
    };

    let report = TrainReport {
        config: ResolvedConfig::new(&cfg, &hidden, desc),
        model: args.model.name(),
        final_train_loss: *traj.train.last().unwrap(),
        best_val_rmse: traj
            .val_rmse
            .iter()
            .cloned()
            .min_by(|a, b| a.partial_cmp(b).unwrap()),
        eval,
    };
    write_json(&args.out_dir.join("report.json"), &report)
}

// ----------------------------------------------------------------- eval

/// Evaluate a saved MoNIG checkpoint on the test split.
#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub checkpoint: PathBuf,
    #[command(flatten)]
    pub data: DataOpts,
    #[arg(long, short)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Serialize)]
struct EvalOnlyReport {
    data: DataDesc,
    eval: EvalSection,
}

pub fn eval_cmd(args: &EvalArgs) -> Result<()> {
    let model = Checkpoint::load(&args.checkpoint)?.into_model()?;
    let (ds, desc) = args.data.build()?;
    ensure_dir(&args.out_dir)?;

    let idx = ds.indices_of(Split::Test);
    let preds = model.predict_split(&ds, Split::Test)?;
    let mut w = csv::Writer::from_path(args.out_dir.join("predictions.csv"))?;
    w.write_record(["index", "y_true", "prediction", "aleatoric", "epistemic"])?;
    for (k, &i) in idx.iter().enumerate() {
        let p = &preds[k];
        w.write_record(&[
            i.to_string(),
            ds.targets[i].to_string(),
            p.prediction.to_string(),
            p.aleatoric.to_string(),
            p.epistemic.to_string(),
        ])?;
    }
    w.flush()?;

    let report = EvalOnlyReport {
        data: desc,
        eval: eval_monig(&model, &ds)?,
    };
    write_json(&args.out_dir.join("report.json"), &report)
}

// ------------------------------------------------------------------ ood

/// Score OOD detection: corrupt part of the test split with additive
/// noise and report AUROC of each uncertainty against the corruption
/// labels, over a target x epsilon grid.
#[derive(Debug, Args)]
pub struct OodArgs {
    #[arg(long)]
    pub checkpoint: PathBuf,
    #[command(flatten)]
    pub data: DataOpts,
    /// Noise variances to sweep
    #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.5])]
    pub epsilons: Vec<f64>,
    /// Targets to sweep: modK (1-based), random, all
    #[arg(long, value_delimiter = ',', default_values_t = ["mod1".to_string(), "mod2".to_string(), "random".to_string(), "all".to_string()])]
    pub targets: Vec<String>,
    /// Fraction of test samples corrupted
    #[arg(long, default_value_t = 0.5)]
    pub fraction: f64,
    /// Noise seed; falls back to MONIG_SEED, then 0
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, short)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Serialize)]
struct OodRow {
    target: String,
    epsilon: f64,
    auroc_au: f64,
    auroc_eu: f64,
    rmse: f64,
}

#[derive(Debug, Serialize)]
struct OodReport {
    data: DataDesc,
    fraction: f64,
    seed: u64,
    rows: Vec<OodRow>,
}

pub fn ood_cmd(args: &OodArgs) -> Result<()> {
    let model = Checkpoint::load(&args.checkpoint)?.into_model()?;
    let (ds, desc) = args.data.build()?;
    let seed = crate::common::resolve_seed(args.seed, None)?;
    let targets: Vec<(String, NoiseTarget)> = args
        .targets
        .iter()
        .map(|s| Ok((s.clone(), parse_noise_target(s)?)))
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    let mut cell = 0u64;
    for (name, target) in &targets {
        for &epsilon in &args.epsilons {
            let spec = NoiseSpec {
                epsilon,
                target: *target,
                fraction: args.fraction,
            };
            let (noisy, is_ood) = inject_noise(&ds, &spec, seed.wrapping_add(cell))?;
            cell += 1;
            let preds = model.predict_split(&noisy, Split::Test)?;
            let au: Vec<f64> = preds.iter().map(|p| p.aleatoric).collect();
            let eu: Vec<f64> = preds.iter().map(|p| p.epistemic).collect();
            let point: Vec<f64> = preds.iter().map(|p| p.prediction).collect();
            let idx = noisy.indices_of(Split::Test);
            let targets_y: Vec<f64> = idx.iter().map(|&i| noisy.targets[i]).collect();
            rows.push(OodRow {
                target: name.clone(),
                epsilon,
                auroc_au: auroc(&au, &is_ood)?,
                auroc_eu: auroc(&eu, &is_ood)?,
                rmse: rmse(&point, &targets_y)?,
            });
        }
    }

    ensure_dir(&args.out_dir)?;
    let report = OodReport {
        data: desc,
        fraction: args.fraction,
        seed,
        rows,
    };
    write_json(&args.out_dir.join("ood_report.json"), &report)
}

// --------------------------------------------------------------- ablate

/// Multi-seed comparison of MoNIG against ablated variants: robustness
/// under corruption vs evidential feature concatenation, decision-level
/// fusion rules, and uncertainty-error consistency.
#[derive(Debug, Args)]
pub struct AblateArgs {
    #[command(flatten)]
    pub train: TrainOpts,
    #[command(flatten)]
    pub data: DataOpts,
    /// Number of training seeds (base seed, base+1, ...)
    #[arg(long, default_value_t = 5)]
    pub n_seeds: u64,
    /// Corruption variances for the robustness table
    #[arg(long, value_delimiter = ',', default_values_t = [0.05, 0.1])]
    pub epsilons: Vec<f64>,
    /// Fraction of test samples corrupted
    #[arg(long, default_value_t = 1.0)]
    pub fraction: f64,
    #[arg(long, short)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Serialize)]
struct RobustnessRun {
    seed: u64,
    monig_rmse: f64,
    evd_df_rmse: f64,
}

#[derive(Debug, Serialize)]
struct RobustnessRow {
    epsilon: f64,
    runs: Vec<RobustnessRun>,
    monig_wins: usize,
}

#[derive(Debug, Serialize)]
struct DecisionFusionRow {
    seed: u64,
    average: f64,
    au_weighted: f64,
    eu_weighted: f64,
    monig: f64,
}

#[derive(Debug, Serialize)]
struct UeirRow {
    seed: u64,
    monig_ueir_au: f64,
    monig_ueir_eu: f64,
    evd_df_ueir_au: f64,
    evd_df_ueir_eu: f64,
}

#[derive(Debug, Serialize)]
struct AblationReport {
    config: ResolvedConfig,
    n_seeds: u64,
    fraction: f64,
    robustness: Vec<RobustnessRow>,
    decision_fusion: Vec<DecisionFusionRow>,
    ueir: Vec<UeirRow>,
}

pub fn ablate_cmd(args: &AblateArgs) -> Result<()> {
    let (base_cfg, hidden) = args.train.resolve(TrainConfig::tabular(), &TABULAR_HIDDEN)?;
    let (ds, desc) = args.data.build()?;
    let idx = ds.indices_of(Split::Test);
    let targets: Vec<f64> = idx.iter().map(|&i| ds.targets[i]).collect();

    let mut robustness: Vec<RobustnessRow> = args
        .epsilons
        .iter()
        .map(|&epsilon| RobustnessRow {
            epsilon,
            runs: Vec::new(),
            monig_wins: 0,
        })
        .collect();
    let mut decision_fusion = Vec::new();
    let mut ueir_rows = Vec::new();

    for s in 0..args.n_seeds {
        let mut cfg = base_cfg.clone();
        cfg.seed = base_cfg.seed.wrapping_add(s);

        let mut monig =
            MultimodalRegressor::new(&ds.modality_dims(), &hidden, cfg.use_pseudo, cfg.seed)?;
        train(&mut monig, &ds, &cfg)?;
        let mut evd = BaselineRegressor::new(BaselineKind::EvdDf, &ds.modality_dims(), &hidden, cfg.seed)?;
        train_baseline(&mut evd, &ds, &cfg)?;

        // clean test: decision-fusion rules and UEIR
        let preds = monig.predict_split(&ds, Split::Test)?;
        let fusion_rmse = |mode: Option<DecisionFusionMode>| -> Result<f64> {
            let point: Vec<f64> = preds
                .iter()
                .map(|p| match mode {
                    Some(m) => decision_fusion_baseline(&p.per_branch, m),
                    None => Ok(p.prediction),
                })
                .collect::<Result<_>>()?;
            rmse(&point, &targets)
        };
        decision_fusion.push(DecisionFusionRow {
            seed: cfg.seed,
            average: fusion_rmse(Some(DecisionFusionMode::Average))?,
            au_weighted: fusion_rmse(Some(DecisionFusionMode::AuWeighted))?,
            eu_weighted: fusion_rmse(Some(DecisionFusionMode::EuWeighted))?,
            monig: fusion_rmse(None)?,
        });

        let errors: Vec<f64> = preds
            .iter()
            .zip(&targets)
            .map(|(p, t)| (p.prediction - t).abs())
            .collect();
        let au: Vec<f64> = preds.iter().map(|p| p.aleatoric).collect();
        let eu: Vec<f64> = preds.iter().map(|p| p.epistemic).collect();
        let mut evd_point = Vec::with_capacity(idx.len());
        let mut evd_au = Vec::with_capacity(idx.len());
        let mut evd_eu = Vec::with_capacity(idx.len());
        for &i in &idx {
            let (pred, nig) = evd.predict(&ds.sample(i))?;
            let nig = nig.expect("evidential baseline yields a NIG");
            evd_point.push(pred);
            evd_au.push(nig.aleatoric());
            evd_eu.push(nig.epistemic());
        }
        let evd_errors: Vec<f64> = evd_point
            .iter()
            .zip(&targets)
            .map(|(p, t)| (p - t).abs())
            .collect();
        ueir_rows.push(UeirRow {
            seed: cfg.seed,
            monig_ueir_au: ueir(&errors, &au)?,
            monig_ueir_eu: ueir(&errors, &eu)?,
            evd_df_ueir_au: ueir(&evd_errors, &evd_au)?,
            evd_df_ueir_eu: ueir(&evd_errors, &evd_eu)?,
        });

        // corrupted test: RMSE head to head
        for row in robustness.iter_mut() {
            let spec = NoiseSpec {
                epsilon: row.epsilon,
                target: NoiseTarget::RandomPerSample,
                fraction: args.fraction,
            };
            let (noisy, _) = inject_noise(&ds, &spec, cfg.seed.wrapping_add(0x0d))?;
            let m_point: Vec<f64> = monig
                .predict_split(&noisy, Split::Test)?
                .iter()
                .map(|p| p.prediction)
                .collect();
            let mut e_point = Vec::with_capacity(idx.len());
            for &i in &idx {
                e_point.push(evd.predict(&noisy.sample(i))?.0);
            }
            let run = RobustnessRun {
                seed: cfg.seed,
                monig_rmse: rmse(&m_point, &targets)?,
                evd_df_rmse: rmse(&e_point, &targets)?,
            };
            if run.monig_rmse < run.evd_df_rmse {
                row.monig_wins += 1;
            }
            row.runs.push(run);
        }
    }

    ensure_dir(&args.out_dir)?;
    let report = AblationReport {
        config: ResolvedConfig::new(&base_cfg, &hidden, desc),
        n_seeds: args.n_seeds,
        fraction: args.fraction,
        robustness,
        decision_fusion,
        ueir: ueir_rows,
    };
    write_json(&args.out_dir.join("ablation_report.json"), &report)
}

// ----------------------------------------------------------------- fuse

/// Fuse NIG parameters from a CSV (columns delta,gamma,alpha,beta) in
/// one shot and print the result.
#[derive(Debug, Args)]
pub struct FuseArgs {
    /// Input CSV with a delta,gamma,alpha,beta header
    #[arg(long, short)]
    pub input: PathBuf,
    /// Write the JSON result here instead of stdout
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
struct NigRow {
    delta: f64,
    gamma: f64,
    alpha: f64,
    beta: f64,
}

#[derive(Debug, Serialize)]
struct FuseReport {
    inputs: usize,
    branches: Vec<NigParams>,
    fused: NigParams,
    prediction: f64,
    aleatoric: f64,
    epistemic: f64,
}

pub fn fuse_cmd(args: &FuseArgs) -> Result<()> {
    let mut reader = csv::Reader::from_path(&args.input)?;
    let mut branches = Vec::new();
    for (row, record) in reader.deserialize::<NigRow>().enumerate() {
        let r = record.map_err(|e| MonigError::Parse {
            row: row + 2,
            col: 0,
            reason: e.to_string(),
        })?;
        branches.push(NigParams::new(r.delta, r.gamma, r.alpha, r.beta)?);
    }
    let fused = monig_fuse(&branches)?;
    let report = FuseReport {
        inputs: branches.len(),
        branches,
        prediction: fused.point_prediction(),
        aleatoric: fused.aleatoric(),
        epistemic: fused.epistemic(),
        fused,
    };
    match &args.out {
        Some(path) => write_json(path, &report),
        None => {
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(())
        }
    }
}
