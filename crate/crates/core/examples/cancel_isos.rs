//! Cancelling isomorphisms and the `cat_easy` proof pipeline.

use moncat::parse::{parse_expr, parse_signature};
use moncat::tactics::{cancel_isos, cat_easy, cat_simpl};

const SIG: &str = "
object A B C
mor g : A -> B
iso f : B -> C
iso w : A * B -> B * A
";

fn main() {
    let sig = parse_signature(SIG).unwrap();
    for text in ["g ; f ; inv(f)", "(id[A] * g) ; w ; inv(w) ; id[A * B]"] {
        let t = parse_expr(text, &sig).unwrap();
        println!("{text}");
        println!("  cancel_isos: {}", cancel_isos(&t, &sig).unwrap());
        println!("  cat_simpl:   {}", cat_simpl(&t, &sig).unwrap());
    }

    let lhs = parse_expr("g ; (f ; inv(f))", &sig).unwrap();
    let rhs = parse_expr("id[A] ; g", &sig).unwrap();
    let outcome = cat_easy(&lhs, &rhs, &sig).unwrap();
    for step in outcome.trace() {
        println!("{step}");
    }
    println!("proved: {}", outcome.is_proved());
}
