//! Finite `G`-complexes and the combinatorial models of their Borel
//! constructions.

mod complex;
mod fx;
pub mod named;
mod yn;

pub use complex::{components_modulo, pi0, GComplex, GComplexFile, Subcomplex};
pub use fx::{fx_functor, FxFunctor};
pub use yn::{hkr_rank, hurewicz_model_check, yn_mod_g, yn_set, HurewiczCheck, YnElement, YnOrbits, YnSet};
