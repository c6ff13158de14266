//! Strong and weak foliation of `(f ; g) * h`.

use moncat::parse::{parse_expr, parse_signature};
use moncat::tactics::{foliate, weak_foliate};

fn main() {
    let sig = parse_signature(include_str!("../data/worked.sig")).unwrap();
    let t = parse_expr("(f ; g) * h", &sig).unwrap();
    println!("term:         {t}");
    println!("foliate:      {}", foliate(&t, &sig).unwrap());
    println!("weak_foliate: {}", weak_foliate(&t, &sig).unwrap());
}
