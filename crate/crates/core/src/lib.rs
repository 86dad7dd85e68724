//! Combinatorial core for quivers with potential, cluster exchange graphs and
//! the braid-type groups attached to them.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of immutable values; IO, file formats and the command line live in
//! the companion `clusterbraid` crate.
//!
//! * [`qp`]: quivers, potentials, Fomin–Zelevinsky and Derksen–Weyman–Zelevinsky
//!   mutation, reduction, normal forms and Dynkin recognition.
//! * [`presentation`]: finitely presented groups, relation builders and the
//!   bounded verification engines (abelianization, Knuth–Bendix completion,
//!   Todd–Coxeter enumeration, Tietze simplification, homomorphism checks).
//! * [`exchange`]: seeds, the doubled cluster exchange graph with its faces,
//!   the point group presentation, twist loops and the conjugation formula.
//! * [`surface`]: triangulated marked surfaces, flips and their quivers with
//!   potential.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod exchange;
pub mod lattice;
pub mod presentation;
pub mod qp;
pub mod surface;

pub use exchange::{ExchangeGraph, Face, FaceKind, PointGroup, Seed};
pub use presentation::{Letter, Presentation, TriState, Word};
pub use qp::{Arrow, DynkinType, Potential, Qp, Quiver};
pub use surface::{MarkedSurface, Triangulation};
