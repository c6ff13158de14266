//! Evaluating terms as complex matrices.

use moncat::parse::{parse_expr, parse_signature};
use moncat::semantics::{braid_matrix, eval_matrix, max_deviation, Backend, MatrixInstance};

fn main() {
    let sig = parse_signature(include_str!("../data/worked.sig")).unwrap();
    let inst = MatrixInstance::from_signature(&sig).unwrap();

    let lhs = parse_expr("(f ; g) * h", &sig).unwrap();
    let rhs = parse_expr("(f * h) ; (g * id[M])", &sig).unwrap();
    let (a, b) = (eval_matrix(&lhs, &inst).unwrap(), eval_matrix(&rhs, &inst).unwrap());
    println!("[[{lhs}]] ={a}");
    println!("deviation from [[{rhs}]]: {:e}", max_deviation(&a, &b));

    println!("u ; inv(u) ={}", eval_matrix(&parse_expr("u ; inv(u)", &sig).unwrap(), &inst).unwrap());
    println!("K(2,3) ={}", braid_matrix(2, 3));
    println!("g vs k within tolerance: {}", inst.compare(&parse_expr("g", &sig).unwrap(), &parse_expr("k", &sig).unwrap()).unwrap() <= inst.tolerance());
}
