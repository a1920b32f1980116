//! Exact-arithmetic engine for the numbers game with a cutoff on Dynkin,
//! extended Dynkin, and general Coxeter graphs.
//!
//! The crate plays and solves the game three ways: a brute-force oracle
//! over the game graph ([`oracle`]), root-theoretic classifiers with
//! certificates ([`classify`]), and witness extraction for winning
//! configurations ([`minuscule`]). All arithmetic is exact rational.

pub mod classify;
pub mod game;
pub mod graph;
pub mod io;
pub mod minuscule;
pub mod oracle;
pub mod rat;
pub mod roots;

pub use game::{fire, legal_moves, play, Configuration, FiringTrace, PlayOutcome, Strategy};
pub use graph::{
    build_family, build_general, CartanMatrix, CoxeterGraph, Family, GraphKind, VertexId,
};
pub use rat::{parse_rat, Rat};
pub use roots::{positive_roots, Root, RootSet};
