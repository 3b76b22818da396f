//! Metrics of how much the synthetic data reveals about the real records.

mod att_discl;
mod dcr;
mod eps_risk;
mod hit_rate;
mod mia_risk;
mod nnaa_loss;
mod nndr;

pub use att_discl::{att_discl, AttDisclOptions};
pub use dcr::dcr;
pub use eps_risk::{entropy_weights, eps_risk};
pub use hit_rate::{hit_rate, HitRateOptions};
pub use mia_risk::{mia_risk, MiaRiskOptions};
pub use nnaa_loss::{nnaa_privacy_loss, NnaaLossOptions};
pub use nndr::{distance_ratio, nndr};
