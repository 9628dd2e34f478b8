//! Structured argumentation workbench: ASPIC+ and DeLP engines over a shared
//! rule language, Dung semantics, and the bridges between them.

pub mod af;
pub mod aspic;
pub mod cli;
pub mod correspondence;
pub mod delp;
pub mod delp_gr;
pub mod error;
pub mod fixtures;
pub mod game;
pub mod ordering;
pub mod parse;
pub mod postulates;
pub mod program;
pub mod random;
