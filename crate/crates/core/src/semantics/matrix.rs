use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{block_entries, Backend};
use crate::error::EvalError;
use crate::term::{Mor, Obj, Signature};

pub type CMatrix = DMatrix<Complex64>;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Finite-dimensional complex vector spaces. A morphism `A -> B` is a
/// `dim(B) x dim(A)` matrix, so `f ; g` evaluates to `⟦g⟧·⟦f⟧`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixInstance {
    pub dims: BTreeMap<String, usize>,
    pub mats: BTreeMap<String, CMatrix>,
    pub inv_mats: BTreeMap<String, CMatrix>,
    pub tolerance: f64,
}

impl Default for MatrixInstance {
    fn default() -> Self {
        MatrixInstance {
            dims: BTreeMap::new(),
            mats: BTreeMap::new(),
            inv_mats: BTreeMap::new(),
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

/// The commutation matrix sending `e_i ⊗ e_j` to `e_j ⊗ e_i`.
pub fn braid_matrix(m: usize, n: usize) -> CMatrix {
    let mut k = CMatrix::zeros(m * n, m * n);
    for i in 0..m {
        for j in 0..n {
            k[(j * m + i, i * n + j)] = Complex64::new(1.0, 0.0);
        }
    }
    k
}

/// Largest entrywise distance, or infinity when the shapes differ.
pub fn max_deviation(a: &CMatrix, b: &CMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn mat_equiv(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
    max_deviation(a, b) <= tol
}

impl MatrixInstance {
    pub fn dim(&self, obj: &Obj) -> Result<usize, EvalError> {
        obj.wires().iter().try_fold(1, |acc, w| {
            self.dims
                .get(w)
                .map(|d| acc * d)
                .ok_or_else(|| EvalError::MissingBackendData(w.clone()))
        })
    }

    /// Reads the `backend matrix` block of a signature and validates it.
    pub fn from_signature(sig: &Signature) -> Result<MatrixInstance, EvalError> {
        let block = sig
            .backend("matrix")
            .ok_or_else(|| EvalError::MissingBackendData("backend matrix".into()))?;
        let mut inst = MatrixInstance::default();
        for (line, key, name, value) in block_entries(block)? {
            let bad = |message: String| EvalError::Backend { line, message };
            match key.as_str() {
                "dim" => {
                    if !sig.has_object(&name) {
                        return Err(bad(format!("unknown object `{name}`")));
                    }
                    let d: usize = value
                        .parse()
                        .ok()
                        .filter(|d| *d > 0)
                        .ok_or_else(|| bad(format!("dimension must be a positive integer, found `{value}`")))?;
                    inst.dims.insert(name, d);
                }
                "mat" | "inv" => {
                    if sig.morphism(&name).is_none() {
                        return Err(bad(format!("unknown morphism `{name}`")));
                    }
                    let m = parse_matrix(&value).map_err(bad)?;
                    let table = if key == "mat" { &mut inst.mats } else { &mut inst.inv_mats };
                    table.insert(name, m);
                }
                "tolerance" => {
                    inst.tolerance = value
                        .parse()
                        .ok()
                        .filter(|t: &f64| *t >= 0.0)
                        .ok_or_else(|| bad(format!("bad tolerance `{value}`")))?;
                }
                other => return Err(bad(format!("unknown matrix entry `{other}`"))),
            }
        }
        inst.validate(sig)?;
        Ok(inst)
    }

    /// Checks every matrix against its declared type and every supplied
    /// inverse against its generator.
    pub fn validate(&self, sig: &Signature) -> Result<(), EvalError> {
        for (name, m) in &self.mats {
            let decl = sig
                .morphism(name)
                .ok_or_else(|| EvalError::MissingBackendData(name.clone()))?;
            let (rows, cols) = (self.dim(&decl.cod)?, self.dim(&decl.dom)?);
            if m.shape() != (rows, cols) {
                return Err(EvalError::Shape(format!(
                    "`{name}` is {}x{}, its type needs {rows}x{cols}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        for (name, inv) in &self.inv_mats {
            let m = self
                .mats
                .get(name)
                .ok_or_else(|| EvalError::MissingBackendData(name.clone()))?;
            if inv.shape() != (m.ncols(), m.nrows()) {
                return Err(EvalError::Shape(format!("inverse of `{name}` has the wrong shape")));
            }
            let left = m * inv;
            let right = inv * m;
            let id_l = CMatrix::identity(left.nrows(), left.ncols());
            let id_r = CMatrix::identity(right.nrows(), right.ncols());
            if !mat_equiv(&left, &id_l, self.tolerance) || !mat_equiv(&right, &id_r, self.tolerance) {
                return Err(EvalError::Shape(format!("supplied inverse of `{name}` is not an inverse")));
            }
        }
        Ok(())
    }
}

/// Evaluates a well-typed term.
pub fn eval_matrix(term: &Mor, inst: &MatrixInstance) -> Result<CMatrix, EvalError> {
    let ident = |obj: &Obj| inst.dim(obj).map(|d| CMatrix::identity(d, d));
    match term {
        Mor::Gen(g) => inst
            .mats
            .get(g)
            .cloned()
            .ok_or_else(|| EvalError::MissingBackendData(g.clone())),
        Mor::Inv(g) => inst
            .inv_mats
            .get(g)
            .cloned()
            .ok_or_else(|| EvalError::MissingBackendData(format!("inv({g})"))),
        Mor::Id(a) | Mor::LUnit(a) | Mor::LUnitInv(a) | Mor::RUnit(a) | Mor::RUnitInv(a) => ident(a),
        Mor::Assoc(a, b, c) | Mor::AssocInv(a, b, c) => {
            let d = inst.dim(a)? * inst.dim(b)? * inst.dim(c)?;
            Ok(CMatrix::identity(d, d))
        }
        Mor::Braid(a, b) => Ok(braid_matrix(inst.dim(a)?, inst.dim(b)?)),
        Mor::BraidInv(a, b) => Ok(braid_matrix(inst.dim(b)?, inst.dim(a)?)),
        Mor::Comp(f, g) => {
            let (mf, mg) = (eval_matrix(f, inst)?, eval_matrix(g, inst)?);
            if mg.ncols() != mf.nrows() {
                return Err(EvalError::Shape(format!(
                    "cannot compose {}x{} after {}x{}",
                    mg.nrows(),
                    mg.ncols(),
                    mf.nrows(),
                    mf.ncols()
                )));
            }
            Ok(mg * mf)
        }
        Mor::Tensor(f, g) => Ok(eval_matrix(f, inst)?.kronecker(&eval_matrix(g, inst)?)),
    }
}

impl Backend for MatrixInstance {
    type Value = CMatrix;

    fn name(&self) -> &'static str {
        "matrix"
    }

    fn eval(&self, term: &Mor) -> Result<CMatrix, EvalError> {
        eval_matrix(term, self)
    }

    fn deviation(&self, a: &CMatrix, b: &CMatrix) -> f64 {
        max_deviation(a, b)
    }

    fn tolerance(&self) -> f64 {
        self.tolerance
    }

    fn size(&self, obj: &Obj) -> Option<usize> {
        self.dim(obj).ok()
    }
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    compact
        .parse::<Complex64>()
        .map_err(|_| format!("bad complex number `{}`", text.trim()))
}

/// Parses `[[a, b], [c, d]]`; entries are complex literals like `0.5-2i`.
pub fn parse_matrix(text: &str) -> Result<CMatrix, String> {
    let body = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| "matrix must be written as [[...], ...]".to_string())?;
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    let mut rest = body.trim();
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('[')
            .ok_or_else(|| format!("expected `[` at `{rest}`"))?;
        let close = open.find(']').ok_or_else(|| "unclosed row".to_string())?;
        let row = &open[..close];
        let entries = if row.trim().is_empty() {
            Vec::new()
        } else {
            row.split(',').map(parse_complex).collect::<Result<Vec<_>, _>>()?
        };
        rows.push(entries);
        rest = open[close + 1..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    let ncols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != ncols) {
        return Err("rows have different lengths".into());
    }
    Ok(CMatrix::from_fn(rows.len(), ncols, |i, j| rows[i][j]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn complex_literals() {
        let m = parse_matrix("[[1, 0.5+2i], [-i, 3 - 1.5i]]").unwrap();
        assert_eq!(m.shape(), (2, 2));
        assert_eq!(m[(0, 1)], c(0.5, 2.0));
        assert_eq!(m[(1, 0)], c(0.0, -1.0));
        assert_eq!(m[(1, 1)], c(3.0, -1.5));
        assert!(parse_matrix("[[1, 2], [3]]").is_err());
        assert!(parse_matrix("[[1, x]]").is_err());
    }

    #[test]
    fn small_commutation_matrix() {
        let k = braid_matrix(2, 2);
        let ones: Vec<_> = (0..4)
            .flat_map(|r| (0..4).map(move |c| (r, c)))
            .filter(|&(r, c)| k[(r, c)] != c_zero())
            .collect();
        assert_eq!(ones, vec![(0, 0), (1, 2), (2, 1), (3, 3)]);
        assert_eq!(braid_matrix(1, 3), CMatrix::identity(3, 3));
    }

    fn c_zero() -> Complex64 {
        c(0.0, 0.0)
    }

    #[test]
    fn equivalence_tolerance() {
        let a = CMatrix::identity(2, 2);
        let mut b = a.clone();
        b[(0, 1)] = c(1e-12, 0.0);
        assert!(mat_equiv(&a, &b, 1e-9));
        assert!(!mat_equiv(&a, &b, 0.0));
        assert!(!mat_equiv(&a, &CMatrix::identity(2, 3), 1.0));
    }
}
