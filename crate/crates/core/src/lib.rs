//! Exact computations of interval neighborhoods of 2-term presilting complexes
//! over finite-dimensional algebras presented by quivers with relations.

pub mod algebra;
pub mod qlinalg;
pub mod repmod;
pub mod cpx2;
pub mod cones;
pub mod siltfan;
pub mod reduction;
pub mod interval;
pub mod cli;
