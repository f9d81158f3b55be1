//! Scalar training losses and their analytic gradients: evidential NLL,
//! evidence penalty, per-branch combined loss, and the Gaussian baseline.
//!
//! The NLL is
//!   ½log(π/γ) − α·log Ω + (α+½)·log((y−δ)²γ + Ω) + log Ψ,
//! with Ω = 2β(1+γ) and Ψ = Γ(α)/Γ(α+½).

use crate::error::{MonigError, Result};
use crate::nig::NigParams;
use crate::special::{digamma, ln_gamma};
use serde::{Deserialize, Serialize};

/// Configuration for the per-branch combined loss.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LossConfig {
    /// Coefficient λ ≥ 0 on the evidence penalty.
    pub lambda: f64,
    /// Whether the penalty's gradient flows into δ (subgradient of |y−δ|).
    pub regularizer_delta_grad: bool,
}

impl Default for LossConfig {
    fn default() -> Self {
        LossConfig {
            lambda: 0.6,
            regularizer_delta_grad: true,
        }
    }
}

impl LossConfig {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(MonigError::domain(format!(
                "lambda must be non-negative, got {lambda}"
            )));
        }
        Ok(LossConfig {
            lambda,
            ..Default::default()
        })
    }
}

/// Evidential negative log likelihood of target `y` under `p`.
pub fn nig_nll(y: f64, p: &NigParams) -> Result<f64> {
    p.validate()?;
    if !y.is_finite() {
        return Err(MonigError::domain("target must be finite"));
    }
    Ok(nig_nll_unchecked(y, p))
}

pub(crate) fn nig_nll_unchecked(y: f64, p: &NigParams) -> f64 {
    let omega = 2.0 * p.beta * (1.0 + p.gamma);
    let s = (y - p.delta).powi(2) * p.gamma + omega;
    0.5 * (std::f64::consts::PI / p.gamma).ln() - p.alpha * omega.ln()
        + (p.alpha + 0.5) * s.ln()
        + ln_gamma(p.alpha)
        - ln_gamma(p.alpha + 0.5)
}

/// Analytic gradient of [`nig_nll`] w.r.t. (δ, γ, α, β).
pub fn nig_nll_grad(y: f64, p: &NigParams) -> [f64; 4] {
    let r = y - p.delta;
    let omega = 2.0 * p.beta * (1.0 + p.gamma);
    let s = r * r * p.gamma + omega;
    let a_half = p.alpha + 0.5;
    let d_delta = a_half * (-2.0 * r * p.gamma) / s;
    let d_gamma = -0.5 / p.gamma - p.alpha * (2.0 * p.beta) / omega + a_half * (r * r + 2.0 * p.beta) / s;
    let d_alpha = -omega.ln() + s.ln() + digamma(p.alpha) - digamma(p.alpha + 0.5);
    let d_beta = -p.alpha / p.beta + a_half * 2.0 * (1.0 + p.gamma) / s;
    [d_delta, d_gamma, d_alpha, d_beta]
}

/// Evidence penalty |y−δ|·(γ+2α). Zero iff y = δ.
pub fn evidence_regularizer(y: f64, p: &NigParams) -> f64 {
    (y - p.delta).abs() * (p.gamma + 2.0 * p.alpha)
}

/// Gradient of the evidence penalty w.r.t. (δ, γ, α, β).
/// At y = δ the δ-subgradient is 0; `delta_grad` disables δ flow entirely.
pub fn evidence_regularizer_grad(y: f64, p: &NigParams, delta_grad: bool) -> [f64; 4] {
    let r = y - p.delta;
    let evidence = p.gamma + 2.0 * p.alpha;
    let sign = if r > 0.0 {
        1.0
    } else if r < 0.0 {
        -1.0
    } else {
        0.0
    };
    let d_delta = if delta_grad { -sign * evidence } else { 0.0 };
    [d_delta, r.abs(), 2.0 * r.abs(), 0.0]
}

/// Per-branch loss: NLL + λ·penalty.
pub fn branch_loss(y: f64, p: &NigParams, cfg: &LossConfig) -> Result<f64> {
    Ok(nig_nll(y, p)? + cfg.lambda * evidence_regularizer(y, p))
}

pub fn branch_loss_grad(y: f64, p: &NigParams, cfg: &LossConfig) -> [f64; 4] {
    let nll = nig_nll_grad(y, p);
    let reg = evidence_regularizer_grad(y, p, cfg.regularizer_delta_grad);
    [
        nll[0] + cfg.lambda * reg[0],
        nll[1] + cfg.lambda * reg[1],
        nll[2] + cfg.lambda * reg[2],
        nll[3] + cfg.lambda * reg[3],
    ]
}

/// Gaussian negative log likelihood, the "GS" baseline head loss.
pub fn gaussian_nll(y: f64, mean: f64, variance: f64) -> Result<f64> {
    if !(variance.is_finite() && variance > 0.0) {
        return Err(MonigError::domain(format!(
            "variance must be positive, got {variance}"
        )));
    }
    Ok(0.5 * (2.0 * std::f64::consts::PI * variance).ln() + (y - mean).powi(2) / (2.0 * variance))
}

/// Gradient of [`gaussian_nll`] w.r.t. (mean, variance).
pub fn gaussian_nll_grad(y: f64, mean: f64, variance: f64) -> [f64; 2] {
    let r = y - mean;
    [-r / variance, 0.5 / variance - r * r / (2.0 * variance * variance)]
}
