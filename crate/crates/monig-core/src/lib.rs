//! Trustworthy multimodal evidential regression.
//!
//! Per-modality branches predict Normal-Inverse-Gamma (NIG) evidential
//! distributions which are fused in closed form by the mixture-of-NIG
//! summation operator, giving point predictions with decomposed
//! aleatoric/epistemic uncertainty.

pub mod autodiff;
pub mod data;
pub mod error;
pub mod loss;
pub mod metrics;
pub mod model;
pub mod nig;
pub mod special;

pub use error::{MonigError, Result};
pub use nig::{monig_fuse, naive_average_fuse, nig_sum, NigParams, StudentTParams};
