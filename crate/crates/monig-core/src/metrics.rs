//! Scoring: RMSE/MAE, rank-based AUROC for OOD detection, the
//! uncertainty-error inconsistency rate (UEIR), and uncertainty-trend
//! curves over noise levels and train-set sizes.

use crate::data::{gen_synthetic_cubic, inject_noise, MultimodalDataset, NoiseSpec, Split};
use crate::error::{MonigError, Result};
use crate::model::{train, MultimodalRegressor, TrainConfig};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Pair-enumeration cap for [`ueir`]; larger inputs are subsampled with
/// a fixed seed.
pub const UEIR_EXACT_CAP: usize = 5000;

/// Evaluation summary serialized with these exact field names.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvalReport {
    pub rmse: f64,
    pub mae: f64,
    pub auroc_au: Option<f64>,
    pub auroc_eu: Option<f64>,
    pub ueir_au: f64,
    pub ueir_eu: f64,
    pub per_branch_mean_au: Vec<f64>,
    pub per_branch_mean_eu: Vec<f64>,
    pub sample_count: usize,
}

fn check_lengths(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(MonigError::LengthMismatch { left: a, right: b });
    }
    if a == 0 {
        return Err(MonigError::EmptyInput("metric needs at least one sample"));
    }
    Ok(())
}

pub fn rmse(pred: &[f64], target: &[f64]) -> Result<f64> {
    check_lengths(pred.len(), target.len())?;
    let n = pred.len() as f64;
    Ok((pred
        .iter()
        .zip(target)
        .map(|(p, t)| (p - t).powi(2))
        .sum::<f64>()
        / n)
        .sqrt())
}

pub fn mae(pred: &[f64], target: &[f64]) -> Result<f64> {
    check_lengths(pred.len(), target.len())?;
    let n = pred.len() as f64;
    Ok(pred.iter().zip(target).map(|(p, t)| (p - t).abs()).sum::<f64>() / n)
}

/// AUROC by the Mann-Whitney rank statistic with midranks for ties:
/// the probability a random positive outscores a random negative.
pub fn auroc(scores: &[f64], labels: &[bool]) -> Result<f64> {
    check_lengths(scores.len(), labels.len())?;
    let n_pos = labels.iter().filter(|&&l| l).count();
    let n_neg = labels.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(MonigError::SingleClass);
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].partial_cmp(&scores[b]).unwrap());

    // midranks over tie groups (1-based ranks)
    let mut rank_sum_pos = 0.0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && scores[order[j + 1]] == scores[order[i]] {
            j += 1;
        }
        let midrank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            if labels[k] {
                rank_sum_pos += midrank;
            }
        }
        i = j + 1;
    }
    let u = rank_sum_pos - n_pos as f64 * (n_pos as f64 + 1.0) / 2.0;
    Ok(u / (n_pos as f64 * n_neg as f64))
}

/// Uncertainty-error inconsistency rate: the percentage of unordered
/// sample pairs whose error ordering and uncertainty ordering strictly
/// oppose. Ties in either quantity count as consistent. Above
/// [`UEIR_EXACT_CAP`] samples a seeded subsample is scored.
pub fn ueir(errors: &[f64], uncertainties: &[f64]) -> Result<f64> {
    check_lengths(errors.len(), uncertainties.len())?;
    if errors.len() < 2 {
        return Err(MonigError::EmptyInput("ueir needs at least two samples"));
    }
    let idx: Vec<usize> = if errors.len() > UEIR_EXACT_CAP {
        let mut all: Vec<usize> = (0..errors.len()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(0x0eu64);
        all.shuffle(&mut rng);
        all.truncate(UEIR_EXACT_CAP);
        all
    } else {
        (0..errors.len()).collect()
    };
    let n = idx.len();
    let mut opposed = 0usize;
    for a in 0..n {
        for b in a + 1..n {
            let de = errors[idx[a]] - errors[idx[b]];
            let du = uncertainties[idx[a]] - uncertainties[idx[b]];
            if de * du < 0.0 {
                opposed += 1;
            }
        }
    }
    let pairs = n * (n - 1) / 2;
    Ok(100.0 * opposed as f64 / pairs as f64)
}

/// One row of the uncertainty-vs-noise table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NoiseCurveRow {
    pub epsilon: f64,
    pub mean_au: f64,
    pub mean_eu: f64,
}

/// Mean fused AU/EU over the test split, per noise level; ε = 0 equals
/// the clean-test means.
pub fn uncertainty_noise_curve(
    model: &MultimodalRegressor,
    dataset: &MultimodalDataset,
    noise_template: &NoiseSpec,
    epsilons: &[f64],
    seed: u64,
) -> Result<Vec<NoiseCurveRow>> {
    let mut rows = Vec::with_capacity(epsilons.len());
    for &epsilon in epsilons {
        let spec = NoiseSpec {
            epsilon,
            ..*noise_template
        };
        let (noisy, _) = inject_noise(dataset, &spec, seed)?;
        let preds = model.predict_split(&noisy, Split::Test)?;
        let n = preds.len() as f64;
        rows.push(NoiseCurveRow {
            epsilon,
            mean_au: preds.iter().map(|p| p.aleatoric).sum::<f64>() / n,
            mean_eu: preds.iter().map(|p| p.epistemic).sum::<f64>() / n,
        });
    }
    Ok(rows)
}

/// One row of the epistemic-vs-train-size table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrainSizeRow {
    pub fraction: f64,
    pub mean_eu: f64,
}

/// Retrains on the synthetic cubic task per train fraction (fixed seed
/// offsets) and reports the test-split mean fused EU. Output sorted by
/// ascending fraction.
pub fn epistemic_vs_trainsize(
    fractions: &[f64],
    base_train: usize,
    hidden_dims: &[usize],
    cfg: &TrainConfig,
) -> Result<Vec<TrainSizeRow>> {
    let mut sorted: Vec<f64> = fractions.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut rows = Vec::with_capacity(sorted.len());
    for (k, &fraction) in sorted.iter().enumerate() {
        let n = ((base_train as f64) * fraction).round().max(1.0) as usize;
        let ds = gen_synthetic_cubic(n, 2, cfg.seed.wrapping_add(k as u64), true)?;
        let mut model =
            MultimodalRegressor::new(&ds.modality_dims(), hidden_dims, cfg.use_pseudo, cfg.seed)?;
        train(&mut model, &ds, cfg)?;
        let preds = model.predict_split(&ds, Split::Test)?;
        rows.push(TrainSizeRow {
            fraction,
            mean_eu: preds.iter().map(|p| p.epistemic).sum::<f64>() / preds.len() as f64,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn rmse_cases() {
        assert_eq!(rmse(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        assert_relative_eq!(
            rmse(&[0.0, 0.0], &[3.0, 4.0]).unwrap(),
            12.5_f64.sqrt(),
            max_relative = 1e-12
        );
        assert!(rmse(&[1.0], &[1.0, 2.0]).is_err());
        assert!(rmse(&[], &[]).is_err());
    }

    #[test]
    fn rmse_dominates_mae() {
        let p = [0.3, -1.2, 2.2, 0.0];
        let t = [0.0, 1.0, 2.0, -0.5];
        let r = rmse(&p, &t).unwrap();
        let m = mae(&p, &t).unwrap();
        assert!(r >= m && m >= 0.0);
    }

    #[test]
    fn auroc_separated_and_ties() {
        let perfect = auroc(&[0.9, 0.8, 0.1, 0.2], &[true, true, false, false]).unwrap();
        assert_eq!(perfect, 1.0);
        let coin = auroc(&[0.5, 0.5, 0.5, 0.5], &[true, false, true, false]).unwrap();
        assert_eq!(coin, 0.5);
        assert!(matches!(
            auroc(&[0.1, 0.2], &[true, true]).unwrap_err(),
            MonigError::SingleClass
        ));
    }

    #[test]
    fn auroc_enumerated_pairs() {
        // pairs: (0.9,0.8)+, (0.9,0.1)+, (0.7,0.8)−, (0.7,0.1)+ → 3/4
        let v = auroc(&[0.9, 0.8, 0.7, 0.1], &[true, false, true, false]).unwrap();
        assert_abs_diff_eq!(v, 0.75);
    }

    #[test]
    fn auroc_flip_identity_and_monotone_invariance() {
        let scores = [0.1, 0.9, 0.4, 0.7, 0.2];
        let labels = [false, true, false, true, true];
        let flipped: Vec<bool> = labels.iter().map(|&l| !l).collect();
        let a = auroc(&scores, &labels).unwrap();
        let b = auroc(&scores, &flipped).unwrap();
        assert_abs_diff_eq!(a + b, 1.0, epsilon = 1e-12);
        let transformed: Vec<f64> = scores.iter().map(|s| (3.0 * s).exp()).collect();
        assert_abs_diff_eq!(auroc(&transformed, &labels).unwrap(), a, epsilon = 1e-12);
    }

    #[test]
    fn ueir_cases() {
        // monotone → 0%
        assert_eq!(ueir(&[1.0, 2.0, 3.0], &[0.1, 0.2, 0.3]).unwrap(), 0.0);
        // errors [1,2,3], uncertainties [3,1,2]: pairs (1,2) opposed,
        // (1,3) opposed, (2,3) consistent → 2/3
        assert_relative_eq!(
            ueir(&[1.0, 2.0, 3.0], &[3.0, 1.0, 2.0]).unwrap(),
            200.0 / 3.0,
            max_relative = 1e-12
        );
        // ties count consistent
        assert_eq!(ueir(&[1.0, 2.0], &[5.0, 5.0]).unwrap(), 0.0);
        assert!(ueir(&[1.0], &[1.0]).is_err());
    }

    #[test]
    fn ueir_monotone_transform_invariance() {
        let e = [0.5, 1.5, 0.2, 2.5, 1.0];
        let u = [1.0, 0.3, 0.6, 2.0, 1.4];
        let base = ueir(&e, &u).unwrap();
        let e2: Vec<f64> = e.iter().map(|x| x.powi(3)).collect();
        let u2: Vec<f64> = u.iter().map(|x| x.exp()).collect();
        assert_abs_diff_eq!(ueir(&e2, &u2).unwrap(), base, epsilon = 1e-12);
    }
}
