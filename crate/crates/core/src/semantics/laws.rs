use std::fmt;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Backend;
use crate::term::{typecheck, Level, Mor, MorDecl, Obj, Signature};

/// Sampled objects are resampled until the carrier sizes involved in one
/// law multiply to at most this.
const MAX_SIZE: usize = 64;
const MAX_GEN_SIZE: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Law {
    Triangle,
    Pentagon,
    HexagonForward,
    HexagonBackward,
    Symmetry,
    LeftUnitorNaturality,
    RightUnitorNaturality,
    Interchange,
    BraidNaturality,
    IsoInverses,
}

impl Law {
    pub const ALL: [Law; 10] = [
        Law::Triangle,
        Law::Pentagon,
        Law::HexagonForward,
        Law::HexagonBackward,
        Law::Symmetry,
        Law::LeftUnitorNaturality,
        Law::RightUnitorNaturality,
        Law::Interchange,
        Law::BraidNaturality,
        Law::IsoInverses,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::Triangle => "triangle",
            Law::Pentagon => "pentagon",
            Law::HexagonForward => "hexagon",
            Law::HexagonBackward => "hexagon (inverse)",
            Law::Symmetry => "symmetry",
            Law::LeftUnitorNaturality => "left unitor naturality",
            Law::RightUnitorNaturality => "right unitor naturality",
            Law::Interchange => "interchange",
            Law::BraidNaturality => "braid naturality",
            Law::IsoInverses => "inverses",
        }
    }

    fn level(self) -> Level {
        match self {
            Law::Triangle
            | Law::Pentagon
            | Law::LeftUnitorNaturality
            | Law::RightUnitorNaturality
            | Law::Interchange => Level::Monoidal,
            Law::HexagonForward | Law::HexagonBackward | Law::BraidNaturality => Level::Braided,
            Law::Symmetry => Level::Symmetric,
            Law::IsoInverses => Level::Plain,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LawResult {
    pub law: Law,
    pub samples: usize,
    pub max_deviation: f64,
    pub passed: bool,
    /// First failing instance, printed as `lhs == rhs`, or an evaluation error.
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoherenceReport {
    pub backend: &'static str,
    pub results: Vec<LawResult>,
}

impl CoherenceReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn get(&self, law: Law) -> Option<&LawResult> {
        self.results.iter().find(|r| r.law == law)
    }

    pub fn max_deviation(&self) -> f64 {
        self.results.iter().map(|r| r.max_deviation).fold(0.0, f64::max)
    }
}

impl fmt::Display for CoherenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            writeln!(
                f,
                "{:<24} {}  samples={:<3} max_dev={:.3e}",
                r.law.name(),
                if r.passed { "pass" } else { "FAIL" },
                r.samples,
                r.max_deviation
            )?;
            if let Some(why) = &r.failure {
                writeln!(f, "    {why}")?;
            }
        }
        Ok(())
    }
}

struct Sampler<'a, B> {
    backend: &'a B,
    rng: ChaCha8Rng,
    objects: Vec<Obj>,
    gens: Vec<&'a MorDecl>,
}

impl<B: Backend> Sampler<'_, B> {
    fn size(&self, o: &Obj) -> usize {
        self.backend.size(o).unwrap_or(usize::MAX)
    }

    fn object(&mut self) -> Obj {
        if self.objects.is_empty() || self.rng.random_bool(0.15) {
            return Obj::Unit;
        }
        let a = self.objects.choose(&mut self.rng).unwrap().clone();
        if self.rng.random_bool(0.25) {
            let b = self.objects.choose(&mut self.rng).unwrap().clone();
            Obj::tensor(a, b)
        } else {
            a
        }
    }

    fn objects<const N: usize>(&mut self) -> [Obj; N] {
        for _ in 0..32 {
            let objs: [Obj; N] = std::array::from_fn(|_| self.object());
            let total = objs
                .iter()
                .try_fold(1usize, |acc, o| acc.checked_mul(self.size(o)));
            if total.is_some_and(|t| t <= MAX_SIZE) {
                return objs;
            }
        }
        std::array::from_fn(|_| Obj::Unit)
    }

    fn gen(&mut self) -> Option<&MorDecl> {
        self.gens.choose(&mut self.rng).copied()
    }

    /// A generator out of `obj`, or its identity.
    fn after(&mut self, obj: &Obj) -> Mor {
        let fits: Vec<&MorDecl> = self.gens.iter().copied().filter(|d| &d.dom == obj).collect();
        match fits.choose(&mut self.rng) {
            Some(d) if self.rng.random_bool(0.8) => Mor::gen(d.name.clone()),
            _ => Mor::id(obj.clone()),
        }
    }

    fn instances(&mut self, law: Law, samples: usize) -> Vec<(Mor, Mor)> {
        use Mor::*;
        let id = |o: &Obj| Mor::id(o.clone());
        let t = |a: &Obj, b: &Obj| Obj::tensor(a.clone(), b.clone());
        let c = |o: &Obj| o.clone();
        let mut out = Vec::new();
        if law == Law::IsoInverses {
            for d in self.gens.clone() {
                if d.iso {
                    let (g, gi) = (Mor::gen(d.name.clone()), Inv(d.name.clone()));
                    out.push((Mor::comp(g.clone(), gi.clone()), id(&d.dom)));
                    out.push((Mor::comp(gi, g), id(&d.cod)));
                }
            }
        }
        for _ in 0..samples {
            let pair = match law {
                Law::Triangle => {
                    let [a, b] = self.objects();
                    (
                        Mor::comp(Assoc(c(&a), Obj::Unit, c(&b)), Mor::tensor(id(&a), LUnit(c(&b)))),
                        Mor::tensor(RUnit(c(&a)), id(&b)),
                    )
                }
                Law::Pentagon => {
                    let [a, b, cc, d] = self.objects();
                    (
                        Mor::comp(
                            Assoc(t(&a, &b), c(&cc), c(&d)),
                            Assoc(c(&a), c(&b), t(&cc, &d)),
                        ),
                        Mor::tensor(Assoc(c(&a), c(&b), c(&cc)), id(&d))
                            .then(Assoc(c(&a), t(&b, &cc), c(&d)))
                            .then(Mor::tensor(id(&a), Assoc(c(&b), c(&cc), c(&d)))),
                    )
                }
                Law::HexagonForward => {
                    let [a, b, cc] = self.objects();
                    (
                        Assoc(c(&a), c(&b), c(&cc))
                            .then(Braid(c(&a), t(&b, &cc)))
                            .then(Assoc(c(&b), c(&cc), c(&a))),
                        Mor::tensor(Braid(c(&a), c(&b)), id(&cc))
                            .then(Assoc(c(&b), c(&a), c(&cc)))
                            .then(Mor::tensor(id(&b), Braid(c(&a), c(&cc)))),
                    )
                }
                Law::HexagonBackward => {
                    let [a, b, cc] = self.objects();
                    (
                        AssocInv(c(&a), c(&b), c(&cc))
                            .then(Braid(t(&a, &b), c(&cc)))
                            .then(AssocInv(c(&cc), c(&a), c(&b))),
                        Mor::tensor(id(&a), Braid(c(&b), c(&cc)))
                            .then(AssocInv(c(&a), c(&cc), c(&b)))
                            .then(Mor::tensor(Braid(c(&a), c(&cc)), id(&b))),
                    )
                }
                Law::Symmetry => {
                    let [a, b] = self.objects();
                    (Mor::comp(Braid(c(&a), c(&b)), Braid(c(&b), c(&a))), id(&t(&a, &b)))
                }
                Law::LeftUnitorNaturality | Law::RightUnitorNaturality => {
                    let Some(d) = self.gen().cloned() else { break };
                    let f = Mor::gen(d.name.clone());
                    if law == Law::LeftUnitorNaturality {
                        (
                            Mor::comp(Mor::tensor(id(&Obj::Unit), f.clone()), LUnit(c(&d.cod))),
                            Mor::comp(LUnit(c(&d.dom)), f),
                        )
                    } else {
                        (
                            Mor::comp(Mor::tensor(f.clone(), id(&Obj::Unit)), RUnit(c(&d.cod))),
                            Mor::comp(RUnit(c(&d.dom)), f),
                        )
                    }
                }
                Law::Interchange => {
                    let (Some(d1), Some(d2)) = (self.gen().cloned(), self.gen().cloned()) else { break };
                    let (f, h) = (Mor::gen(d1.name.clone()), Mor::gen(d2.name.clone()));
                    let g = self.after(&d1.cod);
                    let k = self.after(&d2.cod);
                    (
                        Mor::tensor(Mor::comp(f.clone(), g.clone()), Mor::comp(h.clone(), k.clone())),
                        Mor::comp(Mor::tensor(f, h), Mor::tensor(g, k)),
                    )
                }
                Law::BraidNaturality => {
                    let (Some(d1), Some(d2)) = (self.gen().cloned(), self.gen().cloned()) else { break };
                    let (f, g) = (Mor::gen(d1.name.clone()), Mor::gen(d2.name.clone()));
                    (
                        Mor::comp(Mor::tensor(f.clone(), g.clone()), Braid(c(&d1.cod), c(&d2.cod))),
                        Mor::comp(Braid(c(&d1.dom), c(&d2.dom)), Mor::tensor(g, f)),
                    )
                }
                Law::IsoInverses => {
                    let [a, b, cc] = self.objects();
                    match self.rng.random_range(0..4) {
                        0 => (
                            Mor::comp(Assoc(c(&a), c(&b), c(&cc)), AssocInv(c(&a), c(&b), c(&cc))),
                            id(&t(&t(&a, &b), &cc)),
                        ),
                        1 => (Mor::comp(LUnitInv(c(&a)), LUnit(c(&a))), id(&a)),
                        2 => (Mor::comp(RUnit(c(&a)).inverse().unwrap(), RUnit(c(&a))), id(&a)),
                        _ => (
                            Mor::comp(Braid(c(&a), c(&b)), BraidInv(c(&a), c(&b))),
                            id(&t(&a, &b)),
                        ),
                    }
                }
            };
            out.push(pair);
        }
        out
    }
}

/// Evaluates both sides of the coherence and naturality laws on randomly
/// chosen objects and generators and reports the worst deviation per law.
///
/// Only laws available at the signature's level are checked. Structural
/// inverse samples are included only from the monoidal level up.
pub fn check_coherence<B: Backend>(backend: &B, sig: &Signature, seed: u64, samples: usize) -> CoherenceReport {
    let objects: Vec<Obj> = sig
        .objects()
        .map(Obj::gen)
        .filter(|o| backend.size(o).is_some())
        .collect();
    let gens: Vec<&MorDecl> = sig
        .morphisms()
        .filter(|d| {
            backend.eval(&Mor::gen(d.name.clone())).is_ok()
                && [&d.dom, &d.cod]
                    .iter()
                    .all(|o| backend.size(o).is_some_and(|s| s <= MAX_GEN_SIZE))
        })
        .collect();
    let mut sampler = Sampler {
        backend,
        rng: ChaCha8Rng::seed_from_u64(seed),
        objects,
        gens,
    };
    let mut results = Vec::new();
    for law in Law::ALL {
        if sig.level < law.level() {
            continue;
        }
        let n = if law == Law::IsoInverses && sig.level == Level::Plain {
            0
        } else {
            samples
        };
        let pairs = sampler.instances(law, n);
        let mut result = LawResult {
            law,
            samples: pairs.len(),
            max_deviation: 0.0,
            passed: true,
            failure: None,
        };
        for (lhs, rhs) in &pairs {
            debug_assert_eq!(typecheck(lhs, sig).ok(), typecheck(rhs, sig).ok());
            match backend.compare(lhs, rhs) {
                Ok(dev) => {
                    result.max_deviation = result.max_deviation.max(dev);
                    if dev > backend.tolerance() && result.passed {
                        result.passed = false;
                        result.failure = Some(format!("{lhs} == {rhs}"));
                    }
                }
                Err(e) => {
                    result.max_deviation = f64::INFINITY;
                    if result.passed {
                        result.passed = false;
                        result.failure = Some(e.to_string());
                    }
                }
            }
        }
        results.push(result);
    }
    CoherenceReport {
        backend: backend.name(),
        results,
    }
}
