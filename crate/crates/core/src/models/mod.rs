//! Concrete relaxation models.

pub mod broadwell;
mod jinxin;
mod semilinear;

pub use jinxin::{jinxin_nonlinear_model, DerivativeBounds, JinXinNonlinear, JINXIN_DEFAULT_ETA};
pub use semilinear::{semilinear_model, Semilinear};
