use thiserror::Error;

use crate::rational::{format_rational, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed rational {0:?} (expected -?[0-9]+(/[1-9][0-9]*)?)")]
    Rational(String),
    #[error("malformed Picard class {0:?}: expected 9 comma-separated rationals")]
    Class(String),
    #[error("malformed binary form {0:?}: expected `deg:c0,c1,...,cd`")]
    Form(String),
    #[error("malformed linear expression {0:?}")]
    Expression(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConeError {
    #[error("class is not ample")]
    NotAmple,
    #[error("class is not pseudo-effective")]
    NotPseudoEffective,
    #[error("linear program failed: {0}")]
    Lp(String),
    #[error("UNCLASSIFIABLE: {0}")]
    Unclassifiable(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlphaError {
    #[error("lambda = {} outside the admissible range {range}", format_rational(.lambda))]
    LambdaOutOfRange { lambda: Q, range: &'static str },
    #[error("alpha(S) = {} must lie in (0, 1]", format_rational(.0))]
    AlphaSOutOfRange(Q),
    #[error("|C \u{2229} C~| must be 1, 2 or 3, got {0}")]
    Intersections(u32),
    #[error("degree {0} is not a del Pezzo degree (1..=9)")]
    Degree(u32),
    #[error("inconsistent flags for degree {degree}: {reason}")]
    Flags { degree: u32, reason: String },
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("expected a form of degree {expected}, got degree {found}")]
    Degree { expected: usize, found: usize },
    #[error("the discriminant 4a^3 + 27b^2 vanishes identically")]
    ZeroDiscriminant,
    #[error("surface is singular")]
    NotSmooth,
    #[error("zero form has no finite root count")]
    ZeroForm,
    #[error("NOT_A_SECTION: g^2 - q^3 - a q - b = {0}")]
    NotASection(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProverError {
    #[error("certificate has {found} multipliers for {expected} constraints")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown lemma id {0:?}")]
    UnknownLemma(String),
    #[error("lemma {lemma} has no constraint tagged {tag:?}")]
    UnknownTag { lemma: String, tag: String },
    #[error("probe failure: {lemma} stays infeasible without {tag:?}")]
    ProbeStillInfeasible { lemma: String, tag: String },
    #[error("lambda {0} outside [0, 1)")]
    LambdaOutOfRange(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
