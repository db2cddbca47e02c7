//! Finite models of the variety side of unstable algebras.
//!
//! The crate works entirely with finite data:
//!
//! * [`group`]: finite groups given by permutation generators or a Cayley
//!   table, elementary abelian subgroups, homomorphisms out of `F_p^n` and
//!   their conjugacy classes.
//! * [`linalg`] and [`presheaf`]: matrices over `F_p`, set-valued presheaves
//!   on the category of `F_p`-vector spaces of dimension at most `d`, the
//!   quotient functors `beta_n`, and the restriction/induction pair
//!   between presheaves and right `End(F_p^d)`-sets.
//! * [`quillen`]: the Quillen category of elementary abelian `p`-subgroups,
//!   the Green-Leary categories, coends of finite-set functors over them and
//!   the presheaf `Rep(-, G)`.
//! * [`equivariant`]: finite one-dimensional `G`-complexes, fixed points,
//!   the functor `E -> pi_0(X^E)/C_G(E)`, the pair set `Y_n` and orbit ranks.
//!
//! Every quotient-type operation returns a [`QuotientWitness`], and every
//! enumeration is guarded by an explicit [`Caps`] budget.

pub mod battery;
pub mod caps;
pub mod equivariant;
pub mod error;
pub mod group;
pub mod linalg;
pub mod presheaf;
pub mod quillen;
pub mod quotient;

pub use caps::Caps;

pub use error::{Error, Result};
pub use group::{ElemAbSubgroup, FiniteGroup, GroupHom};
pub use linalg::FpMatrix;
pub use presheaf::{EndMSet, FinitePresheaf, PresheafMap};

pub use equivariant::{GComplex, YnElement};
pub use quillen::{CategoryInstance, FiniteSetFunctor};
pub use quotient::{QuotientWitness, UnionFind};
