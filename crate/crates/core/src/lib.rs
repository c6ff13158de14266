//! Typed terms for monoidal categories.
//!
//! Morphisms are explicit trees ([`term::Mor`]) over a [`term::Signature`].
//! On top of them the crate provides
//!
//! * [`parse`]: signature, expression and rule file formats;
//! * [`coherence`]: a canonical layered normal form deciding equality up
//!   to associators, unitors and identity sliding;
//! * [`tactics`]: foliation, partnering, rewriting modulo associativity
//!   of composition, isomorphism cancellation and simplification;
//! * [`semantics`]: complex matrices and finite relations as concrete
//!   models, plus coherence checks against them;
//! * [`render`]: string diagrams with explicit parenthesization, as SVG
//!   or TikZ;
//! * [`cli`]: the `moncat` command line and REPL.

pub mod cli;
pub mod coherence;
pub mod error;
pub mod parse;
pub mod render;
pub mod semantics;
pub mod tactics;
pub mod term;

pub use error::{Error, EvalError, ParseError, SourceSpan, TacticError, TypeError};
pub use term::{typecheck, Level, Mor, MorType, Obj, Signature};
