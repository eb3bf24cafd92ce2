//! Exact computations in higher-level q-deformed Fock space representations of
//! quantum affine algebras.
//!
//! The underlying object is the semi-infinite q-wedge space built from the tensor
//! module V(n) ⊗ C[z,z⁻¹] ⊗ V(l).  It carries two commuting quantum affine algebra
//! actions (an sl_n one of level l and an sl_l one of level n) plus a Heisenberg
//! algebra, a bar involution, and two distinguished canonical bases.  Everything
//! here is exact: coefficients live in Z[q, q⁻¹] with arbitrary-precision integers,
//! and all basis manipulations are performed symbolically.
//!
//! Module map:
//! - [`laurent`]: the coefficient ring Z[q, q⁻¹].
//! - [`combinatorics`]: partitions, charged multipartitions, the two abacus
//!   labelings of wedge monomials, node statistics, the cylindrical predicate.
//! - [`wedge`]: finite q-wedges and the straightening (normal form) engine.
//! - [`fock`]: Fock space vectors, the combinatorial Chevalley action, the wedge
//!   level oracle for the same action, and the Heisenberg operators.
//! - [`involution`]: the bar involution and its transition matrices.
//! - [`canonical`]: the two canonical bases and their transition matrices.
//! - [`hecke`]: the extended affine Weyl group, its Hecke algebra, and the
//!   parabolic Kazhdan-Lusztig route to the same transition matrices.

pub mod canonical;
pub mod combinatorics;
pub mod error;
pub mod fock;
pub mod hecke;
pub mod involution;
pub mod laurent;
pub mod wedge;

pub use error::Error;
pub use laurent::LaurentPoly;
