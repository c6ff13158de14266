//! Proof tactics over morphism terms.

mod chains;
mod foliate;
mod simplify;

pub use chains::{assoc_rw, partner};
pub use foliate::{foliate, is_stack, weak_foliate, StackKind};
pub use simplify::{cancel_isos, cat_easy, cat_simpl, right_assoc_all, EasyOutcome, TraceStep};
