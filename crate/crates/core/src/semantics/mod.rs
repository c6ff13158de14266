//! Concrete models used as ground truth: complex matrices and finite
//! relations.

mod laws;
mod matrix;
mod relation;

pub use laws::{check_coherence, CoherenceReport, Law, LawResult};
pub use matrix::{
    braid_matrix, eval_matrix, mat_equiv, max_deviation, parse_matrix, CMatrix, MatrixInstance,
    DEFAULT_TOLERANCE,
};
pub use relation::{eval_rel, RelInstance, Relation};

use crate::error::EvalError;
use crate::term::{BackendBlock, Mor, Obj};

/// A model in which terms can be evaluated and compared.
pub trait Backend: Sync {
    type Value: Clone + Send;

    fn name(&self) -> &'static str;

    fn eval(&self, term: &Mor) -> Result<Self::Value, EvalError>;

    /// Distance between two values; infinite when their shapes differ.
    fn deviation(&self, a: &Self::Value, b: &Self::Value) -> f64;

    fn tolerance(&self) -> f64;

    /// Carrier size of an object, if the model knows all of its factors.
    fn size(&self, obj: &Obj) -> Option<usize>;

    fn equiv(&self, a: &Self::Value, b: &Self::Value) -> bool {
        self.deviation(a, b) <= self.tolerance()
    }

    /// Evaluates both terms and returns the deviation between them.
    fn compare(&self, t1: &Mor, t2: &Mor) -> Result<f64, EvalError> {
        Ok(self.deviation(&self.eval(t1)?, &self.eval(t2)?))
    }
}

/// Splits backend lines `key [name] = value`.
fn block_entries(block: &BackendBlock) -> Result<Vec<(usize, String, String, String)>, EvalError> {
    block
        .lines
        .iter()
        .map(|(line, text)| {
            let (head, value) = text.split_once('=').ok_or_else(|| EvalError::Backend {
                line: *line,
                message: format!("expected `key name = value`, found `{text}`"),
            })?;
            let mut words = head.split_whitespace();
            let key = words.next().unwrap_or_default().to_string();
            let name = words.next().unwrap_or_default().to_string();
            if words.next().is_some() {
                return Err(EvalError::Backend {
                    line: *line,
                    message: format!("unexpected text before `=` in `{text}`"),
                });
            }
            Ok((*line, key, name, value.trim().to_string()))
        })
        .collect()
}
