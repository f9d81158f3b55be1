//! Closed-form calculus on Normal-Inverse-Gamma (NIG) distributions:
//! validation, pairwise summation, mixture folding, uncertainty
//! decomposition, and the Student-t marginal.
//!
//! All operations are pure; values are freely `Send + Sync`.

use crate::error::{MonigError, Result};
use crate::special::ln_gamma;
use serde::{Deserialize, Serialize};

/// The four evidential parameters of one NIG distribution.
///
/// `delta` is the location (target units), `gamma` the virtual
/// observation count for the mean, `alpha` the inverse-gamma shape,
/// `beta` the inverse-gamma scale (target units squared).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NigParams {
    pub delta: f64,
    pub gamma: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// The Student-t marginal of a NIG: St(y; location, scale, dof) where
/// `scale` is the squared scale Σ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StudentTParams {
    pub location: f64,
    pub scale: f64,
    pub dof: f64,
}

impl NigParams {
    pub fn new(delta: f64, gamma: f64, alpha: f64, beta: f64) -> Result<Self> {
        let p = NigParams {
            delta,
            gamma,
            alpha,
            beta,
        };
        p.validate()?;
        Ok(p)
    }

    /// Checks δ finite, γ > 0, α > 1, β > 0, all finite.
    pub fn validate(&self) -> Result<()> {
        if !self.delta.is_finite() {
            return Err(MonigError::domain(format!(
                "delta must be finite, got {}",
                self.delta
            )));
        }
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return Err(MonigError::domain(format!(
                "gamma must be finite and positive, got {}",
                self.gamma
            )));
        }
        if !(self.alpha.is_finite() && self.alpha > 1.0) {
            return Err(MonigError::domain(format!(
                "alpha must exceed 1, got {}",
                self.alpha
            )));
        }
        if !(self.beta.is_finite() && self.beta > 0.0) {
            return Err(MonigError::domain(format!(
                "beta must be finite and positive, got {}",
                self.beta
            )));
        }
        Ok(())
    }

    /// Predictive mean: δ.
    pub fn point_prediction(&self) -> f64 {
        self.delta
    }

    /// Aleatoric uncertainty E[σ²] = β/(α−1).
    pub fn aleatoric(&self) -> f64 {
        self.beta / (self.alpha - 1.0)
    }

    /// Epistemic uncertainty Var[μ] = β/(γ(α−1)).
    pub fn epistemic(&self) -> f64 {
        self.beta / (self.gamma * (self.alpha - 1.0))
    }

    /// Marginal predictive distribution: St(y; δ, β(1+γ)/(γα), 2α).
    pub fn marginal_student_t(&self) -> StudentTParams {
        StudentTParams {
            location: self.delta,
            scale: self.beta * (1.0 + self.gamma) / (self.gamma * self.alpha),
            dof: 2.0 * self.alpha,
        }
    }
}

impl StudentTParams {
    /// Log density of the Student-t with squared scale Σ.
    pub fn ln_density(&self, y: f64) -> f64 {
        let nu = self.dof;
        let z2 = (y - self.location).powi(2) / self.scale;
        ln_gamma(0.5 * (nu + 1.0))
            - ln_gamma(0.5 * nu)
            - 0.5 * (nu * std::f64::consts::PI * self.scale).ln()
            - 0.5 * (nu + 1.0) * (1.0 + z2 / nu).ln()
    }

    pub fn density(&self, y: f64) -> f64 {
        self.ln_density(y).exp()
    }
}

/// Pairwise NIG summation:
/// δ = (γ₁+γ₂)⁻¹(γ₁δ₁+γ₂δ₂), γ = γ₁+γ₂, α = α₁+α₂+½,
/// β = β₁+β₂+½γ₁(δ₁−δ)²+½γ₂(δ₂−δ)².
pub fn nig_sum(a: &NigParams, b: &NigParams) -> Result<NigParams> {
    a.validate()?;
    b.validate()?;
    let gamma = a.gamma + b.gamma;
    let delta = (a.gamma * a.delta + b.gamma * b.delta) / gamma;
    let alpha = a.alpha + b.alpha + 0.5;
    let beta = a.beta
        + b.beta
        + 0.5 * a.gamma * (a.delta - delta).powi(2)
        + 0.5 * b.gamma * (b.delta - delta).powi(2);
    Ok(NigParams {
        delta,
        gamma,
        alpha,
        beta,
    })
}

/// Left fold of [`nig_sum`] over the branches, in input order.
/// A single-element list returns its element unchanged.
pub fn monig_fuse(branches: &[NigParams]) -> Result<NigParams> {
    let (first, rest) = branches
        .split_first()
        .ok_or(MonigError::EmptyInput("monig_fuse needs at least one NIG"))?;
    first.validate()?;
    let mut acc = *first;
    for b in rest {
        acc = nig_sum(&acc, b)?;
    }
    Ok(acc)
}

/// Decision-fusion baseline: weighted mean of branch δ values.
/// Uniform weights when `weights` is `None`; weights must be
/// non-negative and are normalized internally.
pub fn naive_average_fuse(branches: &[NigParams], weights: Option<&[f64]>) -> Result<f64> {
    if branches.is_empty() {
        return Err(MonigError::EmptyInput("naive_average_fuse needs branches"));
    }
    match weights {
        None => Ok(branches.iter().map(|p| p.delta).sum::<f64>() / branches.len() as f64),
        Some(w) => {
            if w.len() != branches.len() {
                return Err(MonigError::LengthMismatch {
                    left: branches.len(),
                    right: w.len(),
                });
            }
            for (i, &wi) in w.iter().enumerate() {
                if wi < 0.0 || !wi.is_finite() {
                    return Err(MonigError::NegativeWeight(i));
                }
            }
            let total: f64 = w.iter().sum();
            if total <= 0.0 {
                return Err(MonigError::domain("weights sum to zero"));
            }
            Ok(branches
                .iter()
                .zip(w)
                .map(|(p, &wi)| wi * p.delta)
                .sum::<f64>()
                / total)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn nig(d: f64, g: f64, a: f64, b: f64) -> NigParams {
        NigParams::new(d, g, a, b).unwrap()
    }

    #[test]
    fn validate_accepts_and_rejects() {
        assert!(NigParams::new(0.0, 1.0, 2.0, 1.0).is_ok());
        let err = NigParams::new(0.0, 1.0, 1.0, 1.0).unwrap_err();
        assert!(err.to_string().contains("alpha"));
        let err = NigParams::new(0.0, -1.0, 2.0, 1.0).unwrap_err();
        assert!(err.to_string().contains("gamma"));
        assert!(NigParams::new(f64::NAN, 1.0, 2.0, 1.0).is_err());
        assert!(NigParams::new(0.0, 1.0, 2.0, f64::INFINITY).is_err());
    }

    #[test]
    fn self_fusion() {
        let p = nig(1.0, 1.0, 2.0, 1.0);
        let s = nig_sum(&p, &p).unwrap();
        assert_eq!(s.delta, 1.0);
        assert_eq!(s.gamma, 2.0);
        assert_eq!(s.alpha, 4.5);
        assert_eq!(s.beta, 2.0);
    }

    #[test]
    fn hand_evaluated_sum() {
        let a = nig(1.0, 2.0, 2.0, 1.0);
        let b = nig(3.0, 1.0, 1.5, 0.5);
        let s = nig_sum(&a, &b).unwrap();
        assert_relative_eq!(s.delta, 5.0 / 3.0, max_relative = 1e-14);
        assert_eq!(s.gamma, 3.0);
        assert_eq!(s.alpha, 4.0);
        // β = 1.5 + ½·2·(1−5/3)² + ½·1·(3−5/3)² = 1.5 + 4/9 + 8/9
        assert_relative_eq!(s.beta, 1.5 + 4.0 / 9.0 + 8.0 / 9.0, max_relative = 1e-14);
    }

    #[test]
    fn commutative_pair() {
        let a = nig(1.0, 2.0, 2.0, 1.0);
        let b = nig(3.0, 1.0, 1.5, 0.5);
        let ab = nig_sum(&a, &b).unwrap();
        let ba = nig_sum(&b, &a).unwrap();
        assert_eq!(ab.gamma, ba.gamma);
        assert_eq!(ab.alpha, ba.alpha);
        assert_relative_eq!(ab.delta, ba.delta, max_relative = 1e-15);
        assert_relative_eq!(ab.beta, ba.beta, max_relative = 1e-15);
    }

    #[test]
    fn fuse_single_is_identity() {
        let p = nig(0.0, 1.0, 2.0, 1.0);
        assert_eq!(monig_fuse(&[p]).unwrap(), p);
        assert!(matches!(
            monig_fuse(&[]).unwrap_err(),
            MonigError::EmptyInput(_)
        ));
    }

    #[test]
    fn fuse_matches_sequential_pairwise() {
        let a = nig(1.0, 2.0, 2.0, 1.0);
        let b = nig(3.0, 1.0, 1.5, 0.5);
        let c = nig(2.0, 1.0, 1.1, 0.2);
        let fused = monig_fuse(&[a, b, c]).unwrap();
        let manual = nig_sum(&nig_sum(&a, &b).unwrap(), &c).unwrap();
        assert_eq!(fused, manual);
        // fold-left vs fold-right within 1e-9 relative
        let right = nig_sum(&a, &nig_sum(&b, &c).unwrap()).unwrap();
        assert_relative_eq!(fused.delta, right.delta, max_relative = 1e-9);
        assert_relative_eq!(fused.gamma, right.gamma, max_relative = 1e-9);
        assert_relative_eq!(fused.alpha, right.alpha, max_relative = 1e-9);
        assert_relative_eq!(fused.beta, right.beta, max_relative = 1e-9);
    }

    #[test]
    fn point_prediction_is_delta() {
        assert_eq!(nig(5.0, 1.0, 2.0, 1.0).point_prediction(), 5.0);
        let p = nig(1.0, 1.0, 2.0, 1.0);
        assert_eq!(nig_sum(&p, &p).unwrap().point_prediction(), 1.0);
    }

    #[test]
    fn uncertainty_decomposition() {
        let p = nig(0.0, 1.0, 2.0, 1.0);
        assert_eq!(p.aleatoric(), 1.0);
        assert_eq!(p.epistemic(), 1.0);
        let p = nig(5.0, 2.0, 3.0, 4.0);
        assert_eq!(p.aleatoric(), 2.0);
        assert_eq!(p.epistemic(), 1.0);
    }

    #[test]
    fn marginal_student_t_parameters() {
        let p = nig(0.0, 1.0, 1.5, 1.0);
        let t = p.marginal_student_t();
        assert_eq!(t.location, 0.0);
        assert_relative_eq!(t.scale, 4.0 / 3.0, max_relative = 1e-15);
        assert_eq!(t.dof, 3.0);
    }

    #[test]
    fn naive_average_cases() {
        let a = nig(1.0, 1.0, 2.0, 1.0);
        let b = nig(3.0, 1.0, 2.0, 1.0);
        assert_abs_diff_eq!(naive_average_fuse(&[a, b], None).unwrap(), 2.0);
        assert_abs_diff_eq!(
            naive_average_fuse(&[a, b], Some(&[1.0, 0.0])).unwrap(),
            1.0
        );
        let c = nig(2.0, 1.0, 2.0, 1.0);
        let d = nig(6.0, 1.0, 2.0, 1.0);
        assert_abs_diff_eq!(naive_average_fuse(&[a, c, d], None).unwrap(), 3.0);
        assert!(matches!(
            naive_average_fuse(&[a, b], Some(&[1.0, -0.5])).unwrap_err(),
            MonigError::NegativeWeight(1)
        ));
        assert!(naive_average_fuse(&[], None).is_err());
    }
}
