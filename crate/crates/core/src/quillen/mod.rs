//! The Quillen category `A_p(G)`, the Green-Leary categories `A_n(G)`,
//! coends of finite-set functors over them, and `Rep(-, G)` as a presheaf.

mod category;
mod coend;
mod functor;
mod rep;

pub use category::{build_green_leary_category, build_quillen_category, CategoryInstance, Morphism};
pub use coend::{coend_evaluate, coend_presheaf, Coend, CoendLevel};
pub use functor::FiniteSetFunctor;
pub(crate) use category::vector_index;
pub use rep::{compare_gl_beta, gl_colimit_presheaf, quillen_comparison, rep_presheaf, Comparison, RepPresheaf};
