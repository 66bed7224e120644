//! Normal natural-deduction refutations of Hamiltonian paths, their
//! translation into purely implicational minimal logic, and horizontal
//! compression of the result into dag-like proofs.

pub mod formula;
pub mod graph;
pub mod encoding;
pub mod kernel;
pub mod builder;
pub mod statman;
pub mod dag;
pub mod io;
pub mod gen;
pub mod pipeline;
