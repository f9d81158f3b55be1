//! End-to-end acceptance suite. Each test prints one pass/fail line;
//! run with `cargo test --test acceptance -- --nocapture` to see them.

use monig_core::data::{
    gen_synthetic_cubic, gen_tabular_replica, inject_noise, split, standardize,
    standardize_targets, MultimodalDataset, NoiseSpec, NoiseTarget, Split,
};
use monig_core::loss::{
    branch_loss, branch_loss_grad, evidence_regularizer, evidence_regularizer_grad, nig_nll,
    nig_nll_grad, LossConfig,
};
use monig_core::metrics::{auroc, rmse, ueir};
use monig_core::model::{
    train, train_baseline, BaselineKind, BaselineRegressor, MultimodalRegressor, TrainConfig,
};
use monig_core::nig::{nig_sum, NigParams};
use monig_core::special::ln_gamma;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;
use std::time::Instant;

fn random_nig(rng: &mut ChaCha8Rng) -> NigParams {
    NigParams::new(
        rng.random_range(-20.0..20.0),
        rng.random_range(0.05..10.0),
        rng.random_range(1.05..10.0),
        rng.random_range(0.05..10.0),
    )
    .unwrap()
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

// ------------------------------------------------------------ criterion 1

#[test]
fn acceptance_1_algebra_laws() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..10_000 {
        let a = random_nig(&mut rng);
        let b = random_nig(&mut rng);
        let ab = nig_sum(&a, &b).unwrap();
        let ba = nig_sum(&b, &a).unwrap();
        assert_eq!(ab.delta, ba.delta);
        assert_eq!(ab.gamma, ba.gamma);
        assert_eq!(ab.alpha, ba.alpha);
        assert!(rel_close(ab.beta, ba.beta, 1e-15));
    }
    for _ in 0..10_000 {
        let a = random_nig(&mut rng);
        let b = random_nig(&mut rng);
        let c = random_nig(&mut rng);
        let l = nig_sum(&nig_sum(&a, &b).unwrap(), &c).unwrap();
        let r = nig_sum(&a, &nig_sum(&b, &c).unwrap()).unwrap();
        assert!(rel_close(l.delta, r.delta, 1e-9));
        assert!(rel_close(l.gamma, r.gamma, 1e-9));
        assert!(rel_close(l.alpha, r.alpha, 1e-9));
        assert!(rel_close(l.beta, r.beta, 1e-9));
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 5.0, "took {secs:.1}s, limit 5s");
    println!("ACCEPTANCE 1 algebra laws: pass ({secs:.2}s)");
}

// ------------------------------------------------------------ criterion 2

fn gaussian_density(y: f64, mean: f64, variance: f64) -> f64 {
    (-(y - mean).powi(2) / (2.0 * variance)).exp() / (2.0 * std::f64::consts::PI * variance).sqrt()
}

fn nig_density(mu: f64, sigma2: f64, p: &NigParams) -> f64 {
    let ln = p.alpha * p.beta.ln() - ln_gamma(p.alpha) + 0.5 * p.gamma.ln()
        - 0.5 * (2.0 * std::f64::consts::PI * sigma2).ln()
        - (p.alpha + 1.0) * sigma2.ln()
        - (2.0 * p.beta + p.gamma * (p.delta - mu).powi(2)) / (2.0 * sigma2);
    ln.exp()
}

fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + k as f64 * h);
    }
    acc * h / 3.0
}

fn marginal_by_quadrature(y: f64, p: &NigParams) -> f64 {
    let outer = |u: f64| -> f64 {
        let sigma2: f64 = u.exp();
        let width = sigma2.sqrt() * (1.0 + 1.0 / p.gamma.sqrt());
        let lo = y.min(p.delta) - 12.0 * width;
        let hi = y.max(p.delta) + 12.0 * width;
        let inner = simpson(
            |mu| gaussian_density(y, mu, sigma2) * nig_density(mu, sigma2, p),
            lo,
            hi,
            240,
        );
        inner * sigma2
    };
    simpson(outer, -16.0, 18.0, 1400)
}

#[test]
fn acceptance_2_marginal_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for _ in 0..50 {
        let p = NigParams::new(
            rng.random_range(-2.0..2.0),
            rng.random_range(0.3..3.0),
            rng.random_range(1.2..4.0),
            rng.random_range(0.3..3.0),
        )
        .unwrap();
        let t = p.marginal_student_t();
        for k in -5..=5 {
            let y = k as f64;
            let nll = nig_nll(y, &p).unwrap();
            assert!(
                (nll + t.ln_density(y)).abs() < 1e-10,
                "nll vs student-t at y={y}, p={p:?}"
            );
        }
        // quadrature on a coarser y set; each cell integrates 340k points
        for y in [-5.0, -2.0, 0.0, 2.0, 5.0] {
            let quad = marginal_by_quadrature(y, &p);
            let direct = (-nig_nll(y, &p).unwrap()).exp();
            let rel = (quad - direct).abs() / direct;
            assert!(rel < 1e-4, "quadrature at y={y}, p={p:?}: rel {rel:.2e}");
        }
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 30.0, "took {secs:.1}s, limit 30s");
    println!("ACCEPTANCE 2 marginal oracle: pass ({secs:.2}s)");
}

// ------------------------------------------------------------ criterion 3

fn grad_ok(analytic: f64, fd: f64) -> bool {
    (analytic - fd).abs() <= 1e-6 * fd.abs().max(1.0)
}

#[test]
fn acceptance_3_gradient_suite() {
    let start = Instant::now();
    let h = 1e-6;
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(300 + seed);

        // loss components against central differences in NIG space
        for _ in 0..20 {
            let p = random_nig(&mut rng);
            let y: f64 = rng.random_range(-5.0..5.0);
            let cfg = LossConfig {
                lambda: rng.random_range(0.0..1.0),
                regularizer_delta_grad: true,
            };
            let nudge = |i: usize, d: f64| {
                let mut q = p;
                match i {
                    0 => q.delta += d,
                    1 => q.gamma += d,
                    2 => q.alpha += d,
                    _ => q.beta += d,
                }
                q
            };
            let g_nll = nig_nll_grad(y, &p);
            let g_reg = evidence_regularizer_grad(y, &p, true);
            let g_branch = branch_loss_grad(y, &p, &cfg);
            for i in 0..4 {
                let up = nudge(i, h);
                let dn = nudge(i, -h);
                let fd_nll =
                    (nig_nll(y, &up).unwrap() - nig_nll(y, &dn).unwrap()) / (2.0 * h);
                let fd_reg =
                    (evidence_regularizer(y, &up) - evidence_regularizer(y, &dn)) / (2.0 * h);
                let fd_branch =
                    (branch_loss(y, &up, &cfg).unwrap() - branch_loss(y, &dn, &cfg).unwrap())
                        / (2.0 * h);
                assert!(grad_ok(g_nll[i], fd_nll), "nll param {i}: {} vs {}", g_nll[i], fd_nll);
                assert!(grad_ok(g_reg[i], fd_reg), "reg param {i}: {} vs {}", g_reg[i], fd_reg);
                assert!(
                    grad_ok(g_branch[i], fd_branch),
                    "branch param {i}: {} vs {}",
                    g_branch[i],
                    fd_branch
                );
            }
        }

        // total multi-branch loss through a 2-modality network
        let ds = gen_synthetic_cubic(8, 2, 400 + seed, true).unwrap();
        let (ds, _, _) = standardize_targets(&ds).unwrap();
        let mut model = MultimodalRegressor::new(&[1, 1], &[4, 4], true, seed).unwrap();
        for lambda in [0.0, 0.6] {
            let cfg = LossConfig {
                lambda,
                regularizer_delta_grad: true,
            };
            let batch = vec![0, 1, 2, 3];
            let (mut tape, loss) = model.record_batch_loss(&ds, &batch, &cfg).unwrap();
            model.store.zero_grad();
            tape.backward(loss, &mut model.store).unwrap();
            for ti in 0..model.store.tensors.len() {
                for j in 0..model.store.tensors[ti].values.len() {
                    let orig = model.store.tensors[ti].values[j];
                    model.store.tensors[ti].values[j] = orig + h;
                    let up = model.total_loss(&ds, &batch, &cfg).unwrap();
                    model.store.tensors[ti].values[j] = orig - h;
                    let dn = model.total_loss(&ds, &batch, &cfg).unwrap();
                    model.store.tensors[ti].values[j] = orig;
                    let fd = (up - dn) / (2.0 * h);
                    let g = model.store.tensors[ti].grad[j];
                    assert!(
                        grad_ok(g, fd),
                        "seed {seed} λ={lambda} tensor {ti} elem {j}: {g} vs {fd}"
                    );
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 60.0, "took {secs:.1}s, limit 1min");
    println!("ACCEPTANCE 3 gradient suite: pass ({secs:.2}s)");
}

// ------------------------------------------------------------ criterion 4

#[test]
fn acceptance_4_synthetic_trends() {
    let start = Instant::now();
    let cfg = TrainConfig {
        seed: 2,
        ..TrainConfig::synthetic()
    };
    let raw = gen_synthetic_cubic(800, 2, cfg.seed, true).unwrap();
    let (ds, _, _) = standardize_targets(&raw).unwrap();
    let mut model =
        MultimodalRegressor::new(&[1, 1], &[100, 100, 100, 100], true, cfg.seed).unwrap();
    train(&mut model, &ds, &cfg).unwrap();

    let idx = ds.indices_of(Split::Test);
    let latent = ds.latent_x.as_ref().unwrap();
    let preds = model.predict_split(&ds, Split::Test).unwrap();
    let region_mean = |lo: f64, hi: f64, f: &dyn Fn(usize) -> f64| -> f64 {
        let v: Vec<f64> = idx
            .iter()
            .enumerate()
            .filter(|(_, &i)| latent[i].abs() >= lo && latent[i].abs() <= hi)
            .map(|(k, _)| f(k))
            .collect();
        v.iter().sum::<f64>() / v.len() as f64
    };

    let au_in = region_mean(0.0, 2.0, &|k| preds[k].aleatoric);
    let au_out = region_mean(2.0, 4.0, &|k| preds[k].aleatoric);
    assert!(au_in > au_out, "AU in {au_in:.3} not above AU out {au_out:.3}");

    let eu_interp = region_mean(2.0, 4.0, &|k| preds[k].epistemic);
    let eu_extrap = region_mean(5.0, 7.0, &|k| preds[k].epistemic);
    assert!(
        eu_extrap >= 2.0 * eu_interp,
        "EU extrapolation {eu_extrap:.3} below 2x interpolation {eu_interp:.3}"
    );

    // fused curve against x³ on the in-range grid (scaled targets are a
    // common monotone map, so the RMSE ratio is unit-free)
    let in_range: Vec<usize> = (0..idx.len()).filter(|&k| latent[idx[k]].abs() <= 4.0).collect();
    let targets: Vec<f64> = in_range.iter().map(|&k| ds.targets[idx[k]]).collect();
    let fused: Vec<f64> = in_range.iter().map(|&k| preds[k].prediction).collect();
    let fused_rmse = rmse(&fused, &targets).unwrap();
    let n_branches = preds[0].per_branch.len();
    let best_branch = (0..n_branches)
        .map(|b| {
            let point: Vec<f64> = in_range.iter().map(|&k| preds[k].per_branch[b].delta).collect();
            rmse(&point, &targets).unwrap()
        })
        .fold(f64::INFINITY, f64::min);
    assert!(
        fused_rmse <= 1.5 * best_branch,
        "fused RMSE {fused_rmse:.3} above 1.5x best branch {best_branch:.3}"
    );

    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 120.0, "took {secs:.1}s, limit 2min");
    println!(
        "ACCEPTANCE 4 synthetic trends: pass (AU ratio {:.2}, EU x{:.2}, RMSE ratio {:.2}, {secs:.1}s)",
        au_in / au_out,
        eu_extrap / eu_interp,
        fused_rmse / best_branch
    );
}

// ----------------------------------------------- shared replica training

fn replica_dataset() -> MultimodalDataset {
    let raw = gen_tabular_replica(3500, 7).unwrap();
    standardize(&split(&raw, [2000, 500, 1000], 8).unwrap()).unwrap()
}

struct SeedRun {
    monig: MultimodalRegressor,
    evd: BaselineRegressor,
}

fn replica_runs() -> &'static (MultimodalDataset, Vec<SeedRun>) {
    static RUNS: OnceLock<(MultimodalDataset, Vec<SeedRun>)> = OnceLock::new();
    RUNS.get_or_init(|| {
        let ds = replica_dataset();
        let runs = (0..5u64)
            .map(|seed| {
                let cfg = TrainConfig {
                    seed,
                    ..TrainConfig::tabular()
                };
                let mut monig =
                    MultimodalRegressor::new(&ds.modality_dims(), &[32, 32, 32], true, seed)
                        .unwrap();
                train(&mut monig, &ds, &cfg).unwrap();
                let mut evd = BaselineRegressor::new(
                    BaselineKind::EvdDf,
                    &ds.modality_dims(),
                    &[32, 32, 32],
                    seed,
                )
                .unwrap();
                train_baseline(&mut evd, &ds, &cfg).unwrap();
                SeedRun { monig, evd }
            })
            .collect();
        (ds, runs)
    })
}

// ------------------------------------------------------------ criterion 5

#[test]
fn acceptance_5_ood_trend() {
    let start = Instant::now();
    let ds = replica_dataset();
    let cfg = TrainConfig::tabular();
    let mut model = MultimodalRegressor::new(&ds.modality_dims(), &[32, 32, 32], true, 0).unwrap();
    train(&mut model, &ds, &cfg).unwrap();

    let auroc_au_at = |epsilon: f64, seed: u64| -> f64 {
        let spec = NoiseSpec {
            epsilon,
            target: NoiseTarget::All,
            fraction: 0.5,
        };
        let (noisy, labels) = inject_noise(&ds, &spec, seed).unwrap();
        let au: Vec<f64> = model
            .predict_split(&noisy, Split::Test)
            .unwrap()
            .iter()
            .map(|p| p.aleatoric)
            .collect();
        auroc(&au, &labels).unwrap()
    };
    let low = auroc_au_at(0.1, 11);
    let high = auroc_au_at(0.5, 12);
    assert!(high >= 0.70, "AUROC(AU) at eps 0.5 is {high:.3}, needs >= 0.70");
    assert!(high > low, "AUROC not increasing: {low:.3} -> {high:.3}");
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 120.0, "took {secs:.1}s, limit 2min");
    println!("ACCEPTANCE 5 OOD trend: pass (AUROC {low:.3} -> {high:.3}, {secs:.1}s)");
}

// ------------------------------------------------------------ criterion 6

#[test]
fn acceptance_6_robustness() {
    let start = Instant::now();
    let (ds, runs) = replica_runs();
    let idx = ds.indices_of(Split::Test);
    let targets: Vec<f64> = idx.iter().map(|&i| ds.targets[i]).collect();
    for epsilon in [0.05, 0.1] {
        let mut wins = 0;
        for (s, run) in runs.iter().enumerate() {
            let spec = NoiseSpec {
                epsilon,
                target: NoiseTarget::RandomPerSample,
                fraction: 1.0,
            };
            let (noisy, _) = inject_noise(ds, &spec, 600 + s as u64).unwrap();
            let monig_point: Vec<f64> = run
                .monig
                .predict_split(&noisy, Split::Test)
                .unwrap()
                .iter()
                .map(|p| p.prediction)
                .collect();
            let evd_point: Vec<f64> = idx
                .iter()
                .map(|&i| run.evd.predict(&noisy.sample(i)).unwrap().0)
                .collect();
            if rmse(&monig_point, &targets).unwrap() < rmse(&evd_point, &targets).unwrap() {
                wins += 1;
            }
        }
        assert!(wins >= 4, "MoNIG beat EVD-concat in only {wins}/5 seeds at eps {epsilon}");
        println!("ACCEPTANCE 6 robustness: eps {epsilon}: {wins}/5 wins");
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 300.0, "took {secs:.1}s, limit 5min");
    println!("ACCEPTANCE 6 robustness: pass ({secs:.1}s)");
}

// ------------------------------------------------------------ criterion 7

#[test]
fn acceptance_7_ueir() {
    let start = Instant::now();
    let (ds, runs) = replica_runs();
    let idx = ds.indices_of(Split::Test);
    let targets: Vec<f64> = idx.iter().map(|&i| ds.targets[i]).collect();
    let mut below_random = 0;
    let mut beats_evd = 0;
    for run in runs {
        let preds = run.monig.predict_split(ds, Split::Test).unwrap();
        let errors: Vec<f64> = preds
            .iter()
            .zip(&targets)
            .map(|(p, t)| (p.prediction - t).abs())
            .collect();
        let eu: Vec<f64> = preds.iter().map(|p| p.epistemic).collect();
        let monig_ueir = ueir(&errors, &eu).unwrap();

        let mut evd_point = Vec::with_capacity(idx.len());
        let mut evd_eu = Vec::with_capacity(idx.len());
        for &i in &idx {
            let (pred, nig) = run.evd.predict(&ds.sample(i)).unwrap();
            evd_point.push(pred);
            evd_eu.push(nig.unwrap().epistemic());
        }
        let evd_errors: Vec<f64> = evd_point
            .iter()
            .zip(&targets)
            .map(|(p, t)| (p - t).abs())
            .collect();
        let evd_ueir = ueir(&evd_errors, &evd_eu).unwrap();
        if monig_ueir < 50.0 {
            below_random += 1;
        }
        if monig_ueir <= evd_ueir {
            beats_evd += 1;
        }
        println!("ACCEPTANCE 7 UEIR(EU): monig {monig_ueir:.2} vs evd {evd_ueir:.2}");
    }
    assert!(below_random >= 4, "UEIR below 50% in only {below_random}/5 seeds");
    assert!(beats_evd >= 4, "UEIR beat EVD-concat in only {beats_evd}/5 seeds");
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 60.0, "took {secs:.1}s, limit 1min");
    println!("ACCEPTANCE 7 UEIR: pass ({below_random}/5 below random, {beats_evd}/5 vs EVD, {secs:.1}s)");
}

// ------------------------------------------------------------ criterion 8

/// Full-scale UCI runs; skipped unless the datasets were downloaded to
/// data/uci/ (see README for the expected layout).
#[test]
fn acceptance_8_uci_full_scale() {
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/uci");
    let superconduct = root.join("superconduct/train.csv");
    let ct = root.join("slice_localization_data.csv");
    if !superconduct.exists() && !ct.exists() {
        println!("ACCEPTANCE 8 UCI full scale: skip (no data under data/uci/)");
        return;
    }
    if superconduct.exists() {
        let r = run_uci(&superconduct, None, 2);
        assert!(r <= 12.7, "superconductivity RMSE {r:.2} above 12.7");
        println!("ACCEPTANCE 8 UCI superconductivity: pass (RMSE {r:.2})");
    }
    if ct.exists() {
        let r = run_uci(&ct, Some(0), 2);
        assert!(r <= 1.6, "CT slices RMSE {r:.2} above 1.6");
        println!("ACCEPTANCE 8 UCI CT slices: pass (RMSE {r:.2})");
    }
}

/// Loads a headered CSV whose last column is the target, splits the
/// remaining features into `n_modalities` contiguous blocks, trains
/// MoNIG, and returns the test RMSE in original target units.
fn run_uci(path: &std::path::Path, id_column: Option<usize>, n_modalities: usize) -> f64 {
    let mut reader = csv::Reader::from_path(path).unwrap();
    let width = reader.headers().unwrap().len();
    let keep: Vec<usize> = (0..width).filter(|c| Some(*c) != id_column).collect();
    let n_features = keep.len() - 1;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for record in reader.records() {
        let record = record.unwrap();
        rows.push(keep.iter().map(|&c| record[c].parse().unwrap()).collect());
    }
    let n = rows.len();
    let block = n_features / n_modalities;
    let mut modalities = Vec::new();
    let mut names = Vec::new();
    for m in 0..n_modalities {
        let lo = m * block;
        let hi = if m + 1 == n_modalities { n_features } else { lo + block };
        let mut mat = monig_core::data::Matrix::new(n, hi - lo);
        for (i, row) in rows.iter().enumerate() {
            mat.row_mut(i).copy_from_slice(&row[lo..hi]);
        }
        modalities.push(mat);
        names.push(format!("mod{}", m + 1));
    }
    let ds = MultimodalDataset {
        modality_names: names,
        modalities,
        targets: rows.iter().map(|r| r[n_features]).collect(),
        splits: vec![Split::Train; n],
        stats: None,
        latent_x: None,
    };
    let n_train = (n as f64 * 0.7).round() as usize;
    let n_val = (n as f64 * 0.15).round() as usize;
    let ds = split(&ds, [n_train, n_val, n - n_train - n_val], 7).unwrap();
    let ds = standardize(&ds).unwrap();
    let (scaled, _, t_std) = standardize_targets(&ds).unwrap();
    let cfg = TrainConfig {
        iterations: 6000,
        ..TrainConfig::tabular()
    };
    let mut model =
        MultimodalRegressor::new(&scaled.modality_dims(), &[64; 6], true, cfg.seed).unwrap();
    train(&mut model, &scaled, &cfg).unwrap();
    let idx = scaled.indices_of(Split::Test);
    let point: Vec<f64> = model
        .predict_split(&scaled, Split::Test)
        .unwrap()
        .iter()
        .map(|p| p.prediction)
        .collect();
    let targets: Vec<f64> = idx.iter().map(|&i| scaled.targets[i]).collect();
    rmse(&point, &targets).unwrap() * t_std
}

// ------------------------------------------------------------ criterion 9

#[test]
fn acceptance_9_cli_determinism() {
    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_monig");
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| {
        let status = std::process::Command::new(bin).args(args).status().unwrap();
        assert!(status.success(), "command failed: {args:?}");
    };
    let read = |name: &str| std::fs::read(dir.path().join(name)).unwrap();

    for pass in ["a", "b"] {
        run(&[
            "synth",
            "--n-train",
            "120",
            "--iterations",
            "15",
            "--hidden",
            "16,16",
            "--seed",
            "5",
            "-o",
            dir.path().join(format!("synth_{pass}")).to_str().unwrap(),
        ]);
        run(&[
            "train",
            "--replica-train",
            "300",
            "--iterations",
            "40",
            "--hidden",
            "16,16",
            "--seed",
            "5",
            "-o",
            dir.path().join(format!("train_{pass}")).to_str().unwrap(),
        ]);
    }
    assert_eq!(read("synth_a/report.json"), read("synth_b/report.json"));
    assert_eq!(read("synth_a/predictions.csv"), read("synth_b/predictions.csv"));
    assert_eq!(read("train_a/report.json"), read("train_b/report.json"));
    assert_eq!(read("train_a/checkpoint.json"), read("train_b/checkpoint.json"));

    run(&[
        "ood",
        "--checkpoint",
        dir.path().join("train_a/checkpoint.json").to_str().unwrap(),
        "--replica-train",
        "300",
        "--seed",
        "5",
        "-o",
        dir.path().join("ood_a").to_str().unwrap(),
    ]);
    run(&[
        "ood",
        "--checkpoint",
        dir.path().join("train_b/checkpoint.json").to_str().unwrap(),
        "--replica-train",
        "300",
        "--seed",
        "5",
        "-o",
        dir.path().join("ood_b").to_str().unwrap(),
    ]);
    assert_eq!(read("ood_a/ood_report.json"), read("ood_b/ood_report.json"));

    let secs = start.elapsed().as_secs_f64();
    println!("ACCEPTANCE 9 CLI determinism: pass ({secs:.1}s)");
}
