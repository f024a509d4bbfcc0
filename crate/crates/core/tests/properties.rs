//! Property tests for the structural invariants: grammar round-trips,
//! discipline monotonicity, substitution bookkeeping, reduction strategy
//! agreement, and the lazy-set invariants of the tree models.

use lambdacomb::algebra::{check_axiom, interpret, ApplicativeStructure, AxiomVerdict, CheckMode};
use lambdacomb::gen;
use lambdacomb::models::tree::NamedSet;
use lambdacomb::models::{tree_model, IntAdd, TermModel, Variant};
use lambdacomb::rewrite::{equal, normalize, normalize_lo, redexes, step, EqVerdict, Strategy};
use lambdacomb::syntax::{
    alpha_eq, free_var_sequence, parse, pretty, rabs, rapp, substitute, validate, var, Discipline,
    Term,
};
use proptest::prelude::*;

fn disciplines() -> Vec<Discipline> {
    vec![
        Discipline::planar(),
        Discipline::linear(),
        Discipline::planar_tensor(),
        Discipline::biplanar(),
        Discipline::planar().with_constants(["c1", "c2"]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_pretty_roundtrip(seed in any::<u64>(), pick in 0usize..5) {
        let d = disciplines().swap_remove(pick);
        let mut rng = gen::rng_from_seed(seed);
        let t = gen::closed_term(&d, 5, &mut rng);
        let printed = pretty(&t);
        let back = parse(&printed, &d).unwrap();
        prop_assert!(alpha_eq(&t, &back), "roundtrip failed: {printed}");
    }

    #[test]
    fn validate_monotone_in_discipline(seed in any::<u64>()) {
        // A planar-valid pure lambda term is linear- and ordinary-valid.
        let planar = Discipline::planar();
        let mut rng = gen::rng_from_seed(seed);
        let t = gen::closed_term(&planar, 5, &mut rng);
        prop_assert!(validate(&t, &planar).ok());
        prop_assert!(validate(&t, &Discipline::linear()).ok());
        prop_assert!(validate(&t, &Discipline::ordinary()).ok());
    }

    #[test]
    fn substitution_deletes_occurrences(seed in any::<u64>()) {
        let mut rng = gen::rng_from_seed(seed);
        let scope = vec!["x".to_string(), "y".to_string()];
        let t = gen::ordinary_open_term(&scope, 4, &mut rng);
        let closed = gen::closed_term(&Discipline::ordinary(), 3, &mut rng);
        let r = substitute(&t, "x", &closed);
        let before: Vec<_> = free_var_sequence(&t).into_iter().filter(|n| n != "x").collect();
        prop_assert_eq!(free_var_sequence(&r), before);
    }

    #[test]
    fn steps_preserve_discipline(seed in any::<u64>(), pick in 0usize..4) {
        let d = disciplines().swap_remove(pick);
        let mut rng = gen::rng_from_seed(seed);
        let mut t = gen::closed_term(&d, 5, &mut rng);
        let mut budget = 200;
        while let Some(next) = step(&t, &d, Strategy::LeftmostOutermost) {
            prop_assert!(validate(&next, &d).ok(), "invalid after step: {}", pretty(&next));
            t = next;
            budget -= 1;
            if budget == 0 { break; }
        }
    }

    #[test]
    fn random_strategies_confluent(seed in any::<u64>()) {
        let d = Discipline::planar_tensor().with_eta(true);
        let mut rng = gen::rng_from_seed(seed);
        let t = gen::closed_term(&d, 5, &mut rng);
        let a = normalize(&t, &d, 10_000, Strategy::LeftmostOutermost);
        let b = normalize(&t, &d, 10_000, Strategy::Random(seed ^ 0xabc));
        prop_assert!(a.is_normal() && b.is_normal());
        prop_assert!(alpha_eq(a.term(), b.term()), "strategies disagree on {}", pretty(&t));
    }

    #[test]
    fn equality_is_congruent_on_contexts(seed in any::<u64>()) {
        // Wrap two equal planar terms in a random one-hole context.
        let d = Discipline::planar().with_constants(["c1"]);
        let mut rng = gen::rng_from_seed(seed);
        let base = gen::closed_term(&d, 4, &mut rng);
        let t1 = rapp(rabs("h", var("h")), base.clone());
        let t2 = base;
        prop_assert_eq!(equal(&t1, &t2, &d, 100_000), EqVerdict::Equal);
        let wrap = |t: Term| rabs("k", rapp(var("k"), t));
        prop_assert_eq!(
            equal(&wrap(t1), &wrap(t2), &d, 100_000),
            EqVerdict::Equal
        );
    }

    #[test]
    fn term_model_application_matches_normalization(seed in any::<u64>()) {
        let m = TermModel::planar();
        let d = Discipline::planar();
        let mut rng = gen::rng_from_seed(seed);
        let f = gen::closed_normal_term(&d, 4, &mut rng).unwrap();
        let a = gen::closed_normal_term(&d, 4, &mut rng).unwrap();
        let via_model = m.rapp(&f, &a).unwrap();
        let direct = normalize_lo(&rapp(f, a), &d, 1_000_000).into_normal().unwrap();
        prop_assert!(alpha_eq(&via_model, &direct));
    }

    #[test]
    fn tree_enumeration_monotone(seed in any::<u64>()) {
        let m = tree_model(IntAdd, Variant::T, 6);
        let rng = gen::rng_from_seed(seed);
        let x = m.sample(seed, 1).remove(0);
        let sets = [
            m.named(NamedSet::I),
            m.named(NamedSet::ITimes),
            m.dot(&x),
            m.app_r(&m.named(NamedSet::B), &x),
        ];
        for s in &sets {
            for bound in 1..=5usize {
                let small = m.enumerate(s, bound);
                let large = m.enumerate(s, bound + 1);
                for t in &small {
                    prop_assert!(large.contains(t), "enumeration not monotone");
                }
                // Every member lies in the carrier.
                for t in &small {
                    prop_assert!(m.in_carrier(t));
                }
            }
        }
        let _ = rng;
    }

    #[test]
    fn tree_application_soundness(seed in any::<u64>()) {
        // For finite sets both directions of the application comprehension
        // are exact.
        let m = tree_model(IntAdd, Variant::T, 6);
        let sets = m.sample(seed, 2);
        let (f, a) = (&sets[0], &sets[1]);
        let app = m.app_r(f, a);
        for t2 in m.enumerate(&app, 6) {
            let witness = m.enumerate(a, 6).into_iter().any(|t1| {
                m.member(f, &lambdacomb::models::tree::rimp(t2.clone(), t1))
            });
            prop_assert!(witness, "member without witness");
        }
        for t1 in m.enumerate(a, 4) {
            for tf in m.enumerate(f, 6) {
                if let lambdacomb::models::TreeType::RImp(t2, arg) = &tf {
                    if **arg == t1 {
                        prop_assert!(m.member(&app, t2), "witnessed member missing");
                    }
                }
            }
        }
    }
}

/// FreshConstants soundness: a Holds verdict is re-checked on 100 random
/// closed instantiations.
#[test]
fn fresh_constants_verdicts_generalize() {
    let m = TermModel::planar();
    let ax = lambdacomb::algebra::ax_b();
    let rep = check_axiom(&m, &ax, CheckMode::FreshConstants).unwrap();
    assert!(matches!(rep.verdict, AxiomVerdict::Holds));
    let mut rng = gen::rng_from_seed(4242);
    let d = Discipline::planar();
    for _ in 0..100 {
        let env: std::collections::BTreeMap<String, Term> = ax
            .vars
            .iter()
            .map(|v| {
                (
                    v.clone(),
                    gen::closed_normal_term(&d, 4, &mut rng).unwrap(),
                )
            })
            .collect();
        let lhs = interpret(&m, &ax.lhs, &[], &env).unwrap().unwrap();
        let rhs = interpret(&m, &ax.rhs, &[], &env).unwrap().unwrap();
        assert!(
            matches!(m.eq(&lhs, &rhs), EqVerdict::Equal),
            "closed instantiation breaks a fresh-constant verdict"
        );
    }
}

/// Normal forms really are normal: no enabled redex remains.
#[test]
fn normal_outcomes_have_no_redex() {
    let d = Discipline::planar_tensor().with_eta(true);
    let mut rng = gen::rng_from_seed(99);
    for _ in 0..200 {
        let t = gen::closed_term(&d, 5, &mut rng);
        let nf = normalize_lo(&t, &d, 100_000).into_normal().unwrap();
        assert!(redexes(&nf, &d).is_empty());
    }
}
