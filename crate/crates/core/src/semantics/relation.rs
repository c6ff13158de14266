use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{block_entries, Backend};
use crate::error::EvalError;
use crate::term::{Mor, Obj, Signature};

/// A relation between the carriers `0..dom` and `0..cod`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub dom: usize,
    pub cod: usize,
    pub pairs: BTreeSet<(usize, usize)>,
}

impl Relation {
    pub fn new(dom: usize, cod: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Relation {
        Relation {
            dom,
            cod,
            pairs: pairs.into_iter().collect(),
        }
    }

    pub fn identity(n: usize) -> Relation {
        Relation::new(n, n, (0..n).map(|i| (i, i)))
    }

    /// `(x, y) ↦ (y, x)` on `a × b`, tuples numbered row-major.
    pub fn braid(a: usize, b: usize) -> Relation {
        Relation::new(
            a * b,
            a * b,
            (0..a).flat_map(|x| (0..b).map(move |y| (x * b + y, y * a + x))),
        )
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &Relation) -> Relation {
        let mut succ: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(y, z) in &next.pairs {
            succ.entry(y).or_default().push(z);
        }
        let pairs = self
            .pairs
            .iter()
            .flat_map(|&(x, y)| succ.get(&y).into_iter().flatten().map(move |&z| (x, z)));
        Relation::new(self.dom, next.cod, pairs)
    }

    pub fn product(&self, other: &Relation) -> Relation {
        let pairs = self.pairs.iter().flat_map(|&(x1, y1)| {
            other
                .pairs
                .iter()
                .map(move |&(x2, y2)| (x1 * other.dom + x2, y1 * other.cod + y2))
        });
        Relation::new(self.dom * other.dom, self.cod * other.cod, pairs)
    }

    pub fn converse(&self) -> Relation {
        Relation::new(self.cod, self.dom, self.pairs.iter().map(|&(x, y)| (y, x)))
    }

    pub fn is_bijection(&self) -> bool {
        let mut image = vec![0usize; self.dom];
        let mut preimage = vec![0usize; self.cod];
        for &(x, y) in &self.pairs {
            image[x] += 1;
            preimage[y] += 1;
        }
        image.iter().chain(&preimage).all(|&n| n == 1)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, y)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({x},{y})")?;
        }
        f.write_str("}")
    }
}

/// Finite sets and relations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelInstance {
    pub sizes: BTreeMap<String, usize>,
    /// Optional element names for object generators.
    pub elements: BTreeMap<String, Vec<String>>,
    pub rels: BTreeMap<String, Relation>,
}

impl RelInstance {
    pub fn size(&self, obj: &Obj) -> Result<usize, EvalError> {
        obj.wires().iter().try_fold(1, |acc, w| {
            self.sizes
                .get(w)
                .map(|d| acc * d)
                .ok_or_else(|| EvalError::MissingBackendData(w.clone()))
        })
    }

    /// Element `i` of `obj`, by name when `obj` is a named generator.
    pub fn element(&self, obj: &Obj, i: usize) -> String {
        match obj {
            Obj::Gen(n) => self
                .elements
                .get(n)
                .and_then(|names| names.get(i))
                .cloned()
                .unwrap_or_else(|| i.to_string()),
            _ => i.to_string(),
        }
    }

    /// Renders a relation of type `dom -> cod` using element names.
    pub fn describe(&self, rel: &Relation, dom: &Obj, cod: &Obj) -> String {
        let pairs: Vec<String> = rel
            .pairs
            .iter()
            .map(|&(x, y)| format!("({},{})", self.element(dom, x), self.element(cod, y)))
            .collect();
        format!("{{{}}}", pairs.join(", "))
    }

    fn index(&self, obj: &Obj, token: &str) -> Result<usize, String> {
        let size = self.size(obj).map_err(|e| e.to_string())?;
        let i = match token.parse::<usize>() {
            Ok(i) => i,
            Err(_) => match obj {
                Obj::Gen(n) => self
                    .elements
                    .get(n)
                    .and_then(|names| names.iter().position(|e| e == token))
                    .ok_or_else(|| format!("`{token}` is not an element of {obj}"))?,
                _ => return Err(format!("`{token}` is not an index")),
            },
        };
        if i >= size {
            return Err(format!("index {i} out of bounds for {obj} of size {size}"));
        }
        Ok(i)
    }

    /// Reads the `backend rel` block of a signature.
    ///
    /// ```text
    /// size A = 3
    /// elements People = alice bob carol
    /// rel parent = {(alice,carol)}
    /// ```
    pub fn from_signature(sig: &Signature) -> Result<RelInstance, EvalError> {
        let block = sig
            .backend("rel")
            .ok_or_else(|| EvalError::MissingBackendData("backend rel".into()))?;
        let mut inst = RelInstance::default();
        let mut pending = Vec::new();
        for (line, key, name, value) in block_entries(block)? {
            let bad = |message: String| EvalError::Backend { line, message };
            match key.as_str() {
                "size" | "elements" => {
                    if !sig.has_object(&name) {
                        return Err(bad(format!("unknown object `{name}`")));
                    }
                    let size = if key == "size" {
                        value
                            .parse::<usize>()
                            .ok()
                            .filter(|d| *d > 0)
                            .ok_or_else(|| bad(format!("size must be a positive integer, found `{value}`")))?
                    } else {
                        let names: Vec<String> = value.split_whitespace().map(str::to_string).collect();
                        let n = names.len();
                        inst.elements.insert(name.clone(), names);
                        n
                    };
                    if inst.sizes.get(&name).is_some_and(|&s| s != size) {
                        return Err(bad(format!("conflicting sizes for `{name}`")));
                    }
                    inst.sizes.insert(name, size);
                }
                "rel" => pending.push((line, name, value)),
                other => return Err(bad(format!("unknown relation entry `{other}`"))),
            }
        }
        for (line, name, value) in pending {
            let bad = |message: String| EvalError::Backend { line, message };
            let decl = sig
                .morphism(&name)
                .ok_or_else(|| bad(format!("unknown morphism `{name}`")))?;
            let mut rel = Relation::new(
                inst.size(&decl.dom).map_err(|e| bad(e.to_string()))?,
                inst.size(&decl.cod).map_err(|e| bad(e.to_string()))?,
                [],
            );
            for (x, y) in parse_pairs(&value).map_err(bad)? {
                rel.pairs.insert((
                    inst.index(&decl.dom, &x).map_err(bad)?,
                    inst.index(&decl.cod, &y).map_err(bad)?,
                ));
            }
            inst.rels.insert(name, rel);
        }
        Ok(inst)
    }
}

fn parse_pairs(text: &str) -> Result<Vec<(String, String)>, String> {
    let body = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| "relation must be written as {(x,y), ...}".to_string())?;
    let mut out = Vec::new();
    let mut rest = body.trim();
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| format!("expected `(` at `{rest}`"))?;
        let close = open.find(')').ok_or_else(|| "unclosed pair".to_string())?;
        let (x, y) = open[..close]
            .split_once(',')
            .ok_or_else(|| format!("expected a pair, found `({})`", &open[..close]))?;
        out.push((x.trim().to_string(), y.trim().to_string()));
        rest = open[close + 1..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    Ok(out)
}

/// Evaluates a well-typed term. `inv(g)` is the converse of `g`, which must
/// be a bijection.
pub fn eval_rel(term: &Mor, inst: &RelInstance) -> Result<Relation, EvalError> {
    let ident = |obj: &Obj| inst.size(obj).map(Relation::identity);
    match term {
        Mor::Gen(g) => inst
            .rels
            .get(g)
            .cloned()
            .ok_or_else(|| EvalError::MissingBackendData(g.clone())),
        Mor::Inv(g) => {
            let r = inst
                .rels
                .get(g)
                .ok_or_else(|| EvalError::MissingBackendData(g.clone()))?;
            if !r.is_bijection() {
                return Err(EvalError::NotBijective(g.clone()));
            }
            Ok(r.converse())
        }
        Mor::Id(a) | Mor::LUnit(a) | Mor::LUnitInv(a) | Mor::RUnit(a) | Mor::RUnitInv(a) => ident(a),
        Mor::Assoc(a, b, c) | Mor::AssocInv(a, b, c) => {
            Ok(Relation::identity(inst.size(a)? * inst.size(b)? * inst.size(c)?))
        }
        Mor::Braid(a, b) => Ok(Relation::braid(inst.size(a)?, inst.size(b)?)),
        Mor::BraidInv(a, b) => Ok(Relation::braid(inst.size(b)?, inst.size(a)?)),
        Mor::Comp(f, g) => {
            let (rf, rg) = (eval_rel(f, inst)?, eval_rel(g, inst)?);
            if rf.cod != rg.dom {
                return Err(EvalError::Shape(format!(
                    "cannot compose relations on {} and {} elements",
                    rf.cod, rg.dom
                )));
            }
            Ok(rf.then(&rg))
        }
        Mor::Tensor(f, g) => Ok(eval_rel(f, inst)?.product(&eval_rel(g, inst)?)),
    }
}

impl Backend for RelInstance {
    type Value = Relation;

    fn name(&self) -> &'static str {
        "rel"
    }

    fn eval(&self, term: &Mor) -> Result<Relation, EvalError> {
        eval_rel(term, self)
    }

    /// Number of pairs in the symmetric difference.
    fn deviation(&self, a: &Relation, b: &Relation) -> f64 {
        if (a.dom, a.cod) != (b.dom, b.cod) {
            return f64::INFINITY;
        }
        a.pairs.symmetric_difference(&b.pairs).count() as f64
    }

    fn tolerance(&self) -> f64 {
        0.0
    }

    fn size(&self, obj: &Obj) -> Option<usize> {
        RelInstance::size(self, obj).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_and_product() {
        let parent = Relation::new(3, 3, [(0, 2)]);
        let brother = Relation::new(3, 3, [(2, 1)]);
        assert_eq!(parent.then(&brother).pairs, BTreeSet::from([(0, 1)]));
        let p = Relation::identity(2).product(&Relation::new(2, 3, [(1, 2)]));
        assert_eq!(p.pairs, BTreeSet::from([(1, 2), (3, 5)]));
    }

    #[test]
    fn braid_swaps_components() {
        let b = Relation::braid(2, 2);
        assert_eq!(b.pairs, BTreeSet::from([(0, 0), (1, 2), (2, 1), (3, 3)]));
        assert_eq!(Relation::braid(2, 3).then(&Relation::braid(3, 2)), Relation::identity(6));
    }

    #[test]
    fn bijections() {
        assert!(Relation::new(2, 2, [(0, 1), (1, 0)]).is_bijection());
        assert!(!Relation::new(2, 2, [(0, 1), (1, 1)]).is_bijection());
        assert!(!Relation::new(2, 2, [(0, 1)]).is_bijection());
    }

    #[test]
    fn pair_literals() {
        assert_eq!(
            parse_pairs("{(0, 1), (alice,bob)}").unwrap(),
            vec![("0".into(), "1".into()), ("alice".into(), "bob".into())]
        );
        assert!(parse_pairs("{}").unwrap().is_empty());
        assert!(parse_pairs("{(0)}").is_err());
    }
}
