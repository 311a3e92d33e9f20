//! Restricted Lie algebras over small finite fields.
//!
//! The crate covers exact arithmetic in GF(p^m) ([`gfp`]), structure-constant Lie
//! algebras ([`liealg`]), p-mappings and p-envelopes ([`pstruct`]), reduced
//! enveloping algebras u(L,S) ([`uenv`]), modules and induction ([`repmod`]) and
//! classification of irreducible modules with a fixed character ([`classify`]).

pub mod gfp;
pub mod liealg;
pub mod pstruct;
pub mod uenv;
pub mod repmod;
pub mod classify;
pub mod io;

pub use gfp::{Fe, Field, Matrix, Subspace};
pub use liealg::LieAlgebra;
pub use pstruct::PMapping;
