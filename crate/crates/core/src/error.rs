use thiserror::Error;

use crate::algebra::Triple;
use crate::polynomial::ParamName;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("an algebra needs at least one generator (n = 0)")]
    NoGenerators,
    #[error("relation ({i},{j}) has an index outside 1..={n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("no value assigned to {0}")]
    MissingVariable(ParamName),
    #[error("substitution rules are cyclic: {0} occurs in a right-hand side")]
    CyclicRules(ParamName),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error(
        "{0} is out of scope: its relation is not in R, so the parameter is identically zero and cannot be set"
    )]
    OutOfScope(ParamName),
    #[error("{0} is assigned more than once")]
    Duplicate(ParamName),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstraintError {
    #[error("{0} is not a length-two path of the relation graph")]
    NotAnOverlap(Triple),
    #[error("index r = {r} is outside 1..={n}")]
    IndexOutOfRange { r: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExistenceError {
    #[error("the relation set is empty, so no filtration parameters exist")]
    NoRelations,
}

/// One problem found while reading input, located by a JSON path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputIssue {
    pub path: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{}", format_issues(.0))]
    Invalid(Vec<InputIssue>),
}

impl InputError {
    pub fn issues(&self) -> &[InputIssue] {
        match self {
            InputError::Json(_) => &[],
            InputError::Invalid(issues) => issues,
        }
    }
}

fn format_issues(issues: &[InputIssue]) -> String {
    issues
        .iter()
        .map(|i| format!("{}: {}", i.path, i.message))
        .collect::<Vec<_>>()
        .join("; ")
}
