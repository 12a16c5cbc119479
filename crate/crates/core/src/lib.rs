//! Finite Hilbert algebras with supremum.
//!
//! This crate constructs finite algebras `⟨A, →, ∨, 1⟩` from explicit
//! operation tables, validates the Hilbert and join-semilattice laws
//! exhaustively, enumerates and classifies deductive systems, builds the
//! finitely generated free algebras of the chain-generated varieties, and
//! evaluates the exact counting identities for their irreducible
//! deductive systems against brute-force oracles.
//!
//! The main entry points:
//!
//! - [`FiniteAlgebra`]: chains, powers, products, subalgebras, quotients,
//!   the derived order, generated subalgebras and the Thomas-term
//!   valuedness.
//! - [`laws`]: exhaustive law validation with least-witness reports.
//! - [`dedsys`]: deductive-system enumeration, irreducibility and
//!   primeness classification, canonical chain epimorphisms.
//! - [`free`]: the free algebra on `r` generators realized as valuation
//!   tuples, its generator filters and their chain-power decomposition.
//! - [`counting`]: exact surjection combinatorics, the assignment
//!   enumeration oracle and the alternating cardinality bound.
//! - [`report`]: assembled count tables with JSON/CSV/text output.

pub mod algebra;
pub mod counting;
pub mod dedsys;
pub mod error;
pub mod free;
pub mod guard;
pub mod hom;
pub mod json;
pub mod laws;
pub mod report;
pub mod set;

pub use algebra::{product, Element, FiniteAlgebra, Subalgebra};
pub use error::{CoreError, Result};
pub use guard::SizeGuard;
pub use hom::Homomorphism;
pub use set::ElementSet;
