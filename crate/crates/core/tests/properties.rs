mod common;

use common::*;
use moncat::coherence::{monoidal_eq, normal_form};
use moncat::parse::{parse_expr, print_expr};
use moncat::semantics::{eval_matrix, eval_rel, Relation};
use moncat::tactics::{cancel_isos, cat_easy, cat_simpl, foliate, is_stack, right_assoc_all, weak_foliate, StackKind};
use moncat::{typecheck, Mor};
use proptest::prelude::*;
use rand::Rng;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(128)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>()) {
        let sig = mixed_sig();
        let (_, t) = equal_pair(&mut rng(seed), &sig, 12);
        let text = print_expr(&t);
        prop_assert_eq!(parse_expr(&text, &sig).unwrap(), t);
    }

    #[test]
    fn structural_inverse_evaluates_to_identity(seed in any::<u64>()) {
        let sig = mixed_sig();
        let mut r = rng(seed);
        let (t, _) = structural_pair(&mut r, 8);
        let round = Mor::comp(t.clone(), t.inverse().unwrap());
        let m = eval_matrix(&round, &random_matrix_instance(&mut r, &sig, 3)).unwrap();
        prop_assert!(m.is_square());
        prop_assert!(max_abs_diff(&m, &moncat::semantics::CMatrix::identity(m.nrows(), m.nrows())) <= 1e-12);
        let rel = eval_rel(&round, &random_rel_instance(&mut r, &sig, 3)).unwrap();
        prop_assert_eq!(rel.clone(), Relation::identity(rel.dom));
    }

    #[test]
    fn normal_form_ignores_mutations(seed in any::<u64>()) {
        let sig = mixed_sig();
        let (t1, t2) = equal_pair(&mut rng(seed), &sig, 12);
        let d = monoidal_eq(&t1, &t2, &sig).unwrap();
        // mutations never touch generators, so the box count is stable
        let (n1, n2) = (normal_form(&t1, &sig).unwrap(), normal_form(&t2, &sig).unwrap());
        prop_assert_eq!(n1.box_count(), n2.box_count());
        prop_assert_eq!(d.is_equal(), n1 == n2);
    }

    #[test]
    fn monoidal_eq_is_symmetric(seed in any::<u64>()) {
        let sig = mixed_sig();
        let mut r = rng(seed);
        let t1 = random_term(&mut r, &sig, 8);
        let dom = typecheck(&t1, &sig).unwrap().dom;
        let t2 = term_from(&mut r, &sig, &dom, 8);
        match (monoidal_eq(&t1, &t2, &sig), monoidal_eq(&t2, &t1, &sig)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a.is_equal(), b.is_equal()),
            (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
        }
        prop_assert!(monoidal_eq(&t1, &t1, &sig).unwrap().is_equal());
    }

    #[test]
    fn foliations_are_stacks(seed in any::<u64>()) {
        let sig = mixed_sig();
        let (_, t) = equal_pair(&mut rng(seed), &sig, 12);
        let ty = typecheck(&t, &sig).unwrap();
        for (out, kind) in [(foliate(&t, &sig).unwrap(), StackKind::Strong), (weak_foliate(&t, &sig).unwrap(), StackKind::Weak)] {
            prop_assert_eq!(typecheck(&out, &sig).unwrap(), ty.clone());
            for stack in out.chain() {
                prop_assert!(is_stack(stack, kind), "{} is not a {:?} stack", stack, kind);
            }
            let again = match kind {
                StackKind::Strong => foliate(&out, &sig).unwrap(),
                StackKind::Weak => weak_foliate(&out, &sig).unwrap(),
            };
            prop_assert_eq!(again, out);
        }
    }

    #[test]
    fn simplification_is_idempotent_and_shrinks(seed in any::<u64>()) {
        let sig = mixed_sig();
        let (_, t) = equal_pair(&mut rng(seed), &sig, 12);
        let once = cat_simpl(&t, &sig).unwrap();
        prop_assert!(once.size() <= t.size());
        prop_assert_eq!(cat_simpl(&once, &sig).unwrap(), once.clone());
        let c = cancel_isos(&t, &sig).unwrap();
        prop_assert_eq!(cancel_isos(&c, &sig).unwrap(), c);
        let ra = right_assoc_all(&t);
        prop_assert_eq!(right_assoc_all(&ra), ra.clone());
        prop_assert_eq!(ra.atoms(), t.atoms());
    }

    #[test]
    fn cat_easy_is_sound(seed in any::<u64>()) {
        let sig = mixed_sig();
        let mut r = rng(seed);
        let (t1, t2) = equal_pair(&mut r, &sig, 12);
        let t2 = if r.random_bool(0.3) { perturb(&t2).unwrap_or(t2) } else { t2 };
        let outcome = cat_easy(&t1, &t2, &sig).unwrap();
        if outcome.is_proved() {
            let m = random_matrix_instance(&mut r, &sig, 3);
            let dev = max_abs_diff(&eval_matrix(&t1, &m).unwrap(), &eval_matrix(&t2, &m).unwrap());
            prop_assert!(dev <= 1e-9);
            let rel = random_rel_instance(&mut r, &sig, 3);
            prop_assert_eq!(eval_rel(&t1, &rel).unwrap(), eval_rel(&t2, &rel).unwrap());
        }
        prop_assert_eq!(outcome.trace().last().map(|s| s.tactic == "reflexivity"), Some(outcome.is_proved()));
    }

    #[test]
    fn relation_category_laws(seed in any::<u64>(), a in 1usize..5, b in 1usize..5, c in 1usize..5, d in 1usize..5) {
        let mut r = rng(seed);
        let (f, g, h) = (random_relation(&mut r, a, b), random_relation(&mut r, b, c), random_relation(&mut r, c, d));
        prop_assert_eq!(f.then(&g).then(&h), f.then(&g.then(&h)));
        prop_assert_eq!(f.then(&g).pairs, brute_compose(&f, &g));
        prop_assert_eq!(Relation::identity(a).then(&f), f.clone());
        prop_assert_eq!(f.converse().converse(), f.clone());
        let (k, l) = (random_relation(&mut r, d, a), random_relation(&mut r, a, c));
        // interchange for the cartesian product
        prop_assert_eq!(f.product(&k).then(&g.product(&l)), f.then(&g).product(&k.then(&l)));
        prop_assert_eq!(Relation::braid(a, b).then(&Relation::braid(b, a)), Relation::identity(a * b));
    }
}
