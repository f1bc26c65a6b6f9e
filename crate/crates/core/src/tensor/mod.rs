//! Tensor modules over vector fields: the homomorphisms into Weyl (x)
//! U(gl) (x) U(k), module descriptors, weight windows, the differential
//! and the simplicity classifiers.

pub mod classify;
pub mod descriptor;
pub mod pi;
pub mod second;
pub mod window;

pub use descriptor::{Factor, KDescriptor, PKey};
pub use window::{check_diff, diff_apply, DiffReport, TensorWindow, WindowSpec, DEFAULT_BUDGET};
