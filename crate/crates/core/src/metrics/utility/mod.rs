//! Metrics of how closely the synthetic data resembles the real data.

mod auroc_diff;
mod cio;
mod cls_acc;
mod corr_diff;
mod dwm;
mod h_dist;
mod mi_diff;
mod nnaa;
mod p_mse;
mod pca;

pub use auroc_diff::{auroc_diff, AurocDiffOptions};
pub use cio::{cio, interval_overlap, CioOptions};
pub use cls_acc::{cls_acc, ClsAccOptions};
pub use corr_diff::{corr_diff, CorrDiffOptions};
pub use dwm::dwm;
pub use h_dist::h_dist;
pub use ks_test::{ks_test, KsTestOptions};
pub use mi_diff::mi_diff;
pub use nnaa::{adversarial_accuracy, nnaa, NnaaOptions};
pub use p_mse::{p_mse, PMseOptions};
pub use pca::pca;
