//! The uncle relation as the composite `parent ; brother`.

use moncat::parse::{parse_expr, parse_signature};
use moncat::semantics::{eval_rel, RelInstance};
use moncat::Obj;

fn main() {
    let sig = parse_signature(include_str!("../data/family.sig")).unwrap();
    let inst = RelInstance::from_signature(&sig).unwrap();
    let people = Obj::gen("People");
    for text in ["parent", "brother", "parent ; brother", "brother ; parent", "braid[People,People]"] {
        let t = parse_expr(text, &sig).unwrap();
        let r = eval_rel(&t, &inst).unwrap();
        let (dom, cod) = match text {
            "braid[People,People]" => {
                let pp = Obj::tensor(people.clone(), people.clone());
                (pp.clone(), pp)
            }
            _ => (people.clone(), people.clone()),
        };
        println!("{text:<22} {}", inst.describe(&r, &dom, &cod));
    }
}
