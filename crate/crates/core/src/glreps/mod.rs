//! Finite-dimensional representations of gl(m|n) (and of the reductive
//! part `k`): standard modules, Kac modules and their simple tops, and
//! fundamental modules cut out of Weyl-superalgebra modules.

mod action;
mod kac;
mod module;
pub mod ugl;

pub use kac::{kac_module, maximal_submodule, maximal_submodule_sweep, simple_top, KacModule};
pub use module::{
    gl0_character, gl0_generators, gl0_natural_even, gl_natural, gl_trivial, k_character, k_natural, k_trivial,
    str_module, FinModule, Generator, GlModule, KModule,
};
pub use action::{act_gl_word, fundamental_module, FundamentalDescriptor, GlAction, KAsGl};
