//! Checks the coherence laws in randomly seeded matrix and relation models
//! read from a signature file.

use moncat::parse::parse_signature;
use moncat::semantics::{check_coherence, MatrixInstance, RelInstance};

fn main() {
    let sig = parse_signature(include_str!("../data/worked.sig")).unwrap();
    let matrices = MatrixInstance::from_signature(&sig).unwrap();
    let relations = RelInstance::from_signature(&sig).unwrap();
    for seed in [1, 2] {
        let m = check_coherence(&matrices, &sig, seed, 20);
        let r = check_coherence(&relations, &sig, seed, 20);
        println!("seed {seed}, matrices\n{m}seed {seed}, relations\n{r}");
        assert!(m.all_passed() && r.all_passed());
    }
}
