//! Exact Chevalley–Eilenberg and Leibniz (Loday) homology of Lie algebras
//! given by rational structure constants.

pub mod cli;
pub mod complexes;
pub mod homology;
pub mod io;
pub mod lemma1;
pub mod lie;
pub mod linalg;
