//! Affine type `A_n^{(1)}` Kirillov-Reshetikhin crystals in the polytope model.
//!
//! Elements of `B^{r,s}` are integer grids bounded by staircase sums
//! ([`pattern`]). On top of them the crate provides the classical and affine
//! Kashiwara operators ([`kashiwara`]), tensor products ([`tensor`]), the
//! combinatorial R-matrix ([`rmatrix`]), local and global energy
//! ([`energy`]), perfectness and ground-state paths ([`perfect`]) and a
//! Nakajima monomial realization used as a cross-check ([`nakajima`]).
//! Each closed formula comes with a brute-force counterpart; [`verify`]
//! runs them against each other.

pub mod crystal;
pub mod energy;
pub mod error;
pub mod graph;
pub mod kashiwara;
pub mod nakajima;
pub mod pattern;
pub mod perfect;
pub mod regularity;
pub mod rmatrix;
pub mod tensor;
pub mod verify;
pub mod weight;

pub use crystal::{Crystal, KRCrystal};
pub use error::{Error, Result};
pub use graph::{build_graph, CrystalGraph};
pub use kashiwara::{PivotIndices, PivotSign};
pub use pattern::{enumerate_crystal, validate_pattern, KRParams, KRPattern};
pub use tensor::{TensorCrystal, TensorElement};
pub use weight::{affine_weight, classical_weight, AffineWeight};
