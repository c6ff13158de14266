use std::fmt;

use thiserror::Error;

use crate::term::{Level, Mor, MorType, Obj};

/// Position of a token in a source text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SourceSpan {
    /// 1-based line.
    pub line: usize,
    /// 1-based column, counted in characters.
    pub column: usize,
    /// Byte offsets `start..end` into the source.
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn join(self, other: SourceSpan) -> SourceSpan {
        SourceSpan {
            end: other.end.max(self.end),
            ..self
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TypeError {
    #[error("undeclared name `{0}`")]
    UndeclaredName(String),
    #[error("cannot compose: codomain `{left_cod}` does not match domain `{right_dom}`")]
    CompositionMismatch { left_cod: Obj, right_dom: Obj },
    #[error("{what} needs a {needed} category, signature is {level}")]
    LevelViolation {
        what: String,
        needed: Level,
        level: Level,
    },
    #[error("`{0}` is not declared iso")]
    NotAnIso(String),
    #[error("`{0}` is not invertible")]
    NotInvertible(Mor),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("`{0}` is a reserved word")]
    ReservedName(String),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("{span}: syntax error: {message}")]
    Syntax { message: String, span: SourceSpan },
    #[error("{span}: unknown category level `{level}`")]
    UnknownLevel { level: String, span: SourceSpan },
    #[error("{span}: {source}")]
    Type {
        #[source]
        source: TypeError,
        span: SourceSpan,
    },
    #[error("rule `{rule}` is ill-typed: lhs is {lhs}, rhs is {rhs}")]
    IllTypedRule {
        rule: String,
        lhs: MorType,
        rhs: MorType,
    },
    #[error("rule `{rule}`: metavariable `{var}` in rhs is not bound by the lhs")]
    FreeMetavarInRhs { rule: String, var: String },
}

impl ParseError {
    pub fn span(&self) -> Option<SourceSpan> {
        match self {
            ParseError::Syntax { span, .. }
            | ParseError::UnknownLevel { span, .. }
            | ParseError::Type { span, .. } => Some(*span),
            _ => None,
        }
    }

    /// The underlying typing error, if any.
    pub fn type_error(&self) -> Option<&TypeError> {
        match self {
            ParseError::Type { source, .. } => Some(source),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TacticError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("no composition chain has `{first}` immediately followed by `{second}`")]
    NotAdjacent { first: Box<Mor>, second: Box<Mor> },
    #[error("rule `{0}` does not match anywhere in the term")]
    NoMatch(String),
    #[error("rule `{0}` only matches with conflicting metavariable bindings")]
    InconsistentBinding(String),
    #[error("boundary types differ: {left} vs {right}")]
    TypeMismatch { left: Box<MorType>, right: Box<MorType> },
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("backend has no data for `{0}`")]
    MissingBackendData(String),
    #[error("relation for `{0}` is not a bijection, cannot invert")]
    NotBijective(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("line {line}: {message}")]
    Backend { line: usize, message: String },
}

/// Any error the library can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Tactic(#[from] TacticError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub fn span(&self) -> Option<SourceSpan> {
        match self {
            Error::Parse(e) => e.span(),
            _ => None,
        }
    }
}
