//! Computations behind fixed-point properties of Thompson-like groups:
//! exact piecewise-linear maps, tree-pair and braided diagrams, the
//! Lodha–Moore transducers, finitely generated abelian groups and
//! Reidemeister numbers, and a handful of worked case studies.

pub mod abelian;
pub mod braid;
pub mod braided;
pub mod case_studies;
pub mod character_action;
pub mod exact;
pub mod finite_group;
pub mod lodha_moore;
pub mod pl;
pub mod report;
pub mod sigma;
pub mod thompson;
pub mod tree;

use std::fmt;

/// A malformed literal, with the byte offset where parsing failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError { pos, msg: msg.into() }
    }

    /// Shifts the reported position, for literals embedded in a larger input.
    pub fn offset(mut self, by: usize) -> Self {
        self.pos += by;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}
