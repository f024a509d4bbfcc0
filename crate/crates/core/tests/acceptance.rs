//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Every tolerance and bound is pinned here; all randomness is
//! seed-reproducible.

use lambdacomb::algebra::{
    check_axiom, classify, ApplicativeStructure, AxiomVerdict, CheckMode, ClassName,
};
use lambdacomb::assemblies::{
    check_morphism, closed_structure_suite, tensor_assembly, Assembly, MorphismSpec,
};
use lambdacomb::compile::{
    abstract_in, capp, compile_tensor, computational_eq, derive_c_from_t, expand,
    left_inverse, Basis, CombTerm,
};
use lambdacomb::gen;
use lambdacomb::models::tree::{leaf, rimp, NamedSet};
use lambdacomb::models::{te_adjoint_pair, tree_model, FiniteMagma, IntAdd, TermModel, Variant};
use lambdacomb::rewrite::{equal, normalize, normalize_lo, EqVerdict, Strategy};
use lambdacomb::syntax::{alpha_eq, parse, pretty, rapp, Discipline, Term};
use lambdacomb::algebra::Extensible;

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "acceptance {criterion}: {} {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{criterion} failed: {detail}");
}

/// Criterion 1: bracket-abstraction soundness for the five procedures on
/// 1000 random polynomials each (depth <= 8), exact alpha-equality.
#[test]
fn criterion_1_abstraction_soundness() {
    let start = std::time::Instant::now();
    let consts = vec!["c1".to_string(), "c2".to_string()];
    for (basis, seed) in [
        (Basis::SK, 101u64),
        (Basis::BCI, 102),
        (Basis::BIDot, 103),
        // The bi-planar basis is checked through both abstractions.
        (Basis::BiBDI, 104),
    ] {
        let mut rng = gen::rng_from_seed(seed);
        let mut kept = 0usize;
        let mut attempts = 0usize;
        while kept < 1000 {
            attempts += 1;
            assert!(attempts < 20_000, "generator starved for {basis:?}");
            let depth = 1 + (attempts % 8);
            let m = gen::polynomial_with_var(basis, &consts, depth, &mut rng);
            let d = basis
                .expansion_discipline()
                .with_constants(["a", "c1", "c2"])
                .with_eta(false);
            let subst = subst_var(&m, "x", &CombTerm::Const("a".into()));
            let rhs_term = expand(&subst, &[]).unwrap();
            // The ordinary calculus admits diverging instances; keep the
            // normalizing ones (deterministic, seed-reproducible filter).
            let rhs_nf = match normalize_lo(&rhs_term, &d, 30_000).into_normal() {
                Some(t) => t,
                None => continue,
            };
            let abs = abstract_in(basis, &m, "x").expect("abstraction");
            assert!(
                !abs.var_sequence().contains(&"x".to_string()),
                "variable bookkeeping broken"
            );
            let lhs_term = expand(&capp(abs, CombTerm::Const("a".into())), &[]).unwrap();
            let lhs_nf = normalize_lo(&lhs_term, &d, 1_000_000)
                .into_normal()
                .expect("lhs normalizes once rhs does");
            assert!(
                alpha_eq(&lhs_nf, &rhs_nf),
                "{basis:?} oracle mismatch on {m}: {} vs {}",
                pretty(&lhs_nf),
                pretty(&rhs_nf)
            );
            kept += 1;
        }
    }
    // The left abstraction, on mirrored polynomials.
    {
        let mut rng = gen::rng_from_seed(105);
        let d = Discipline::biplanar().with_constants(["a", "c1", "c2"]);
        let mut kept = 0;
        while kept < 1000 {
            let depth = 1 + (kept % 8);
            let m = mirror_poly(&gen::polynomial_with_var(Basis::BiBDI, &consts, depth, &mut rng));
            let abs = lambdacomb::compile::abstract_left(&m, "x").expect("left abstraction");
            let subst = subst_var(&m, "x", &CombTerm::Const("a".into()));
            let lhs = lambdacomb::compile::clapp(CombTerm::Const("a".into()), abs);
            let lt = expand(&lhs, &[]).unwrap();
            let rt = expand(&subst, &[]).unwrap();
            assert_eq!(
                equal(&lt, &rt, &d, 1_000_000),
                EqVerdict::Equal,
                "left abstraction oracle mismatch on {m}"
            );
            kept += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report(
        "criterion 1 (abstraction soundness, 5 x 1000)",
        secs < 60.0,
        &format!("({secs:.1}s)"),
    );
}

fn subst_var(m: &CombTerm, x: &str, s: &CombTerm) -> CombTerm {
    use lambdacomb::compile::{clapp, unary};
    match m {
        CombTerm::Var(y) if y == x => s.clone(),
        CombTerm::Var(_) | CombTerm::Sym(_) | CombTerm::Hole(_) | CombTerm::Const(_) => m.clone(),
        CombTerm::UnaryOp(op, t) => unary(*op, subst_var(t, x, s)),
        CombTerm::App(f, a) => capp(subst_var(f, x, s), subst_var(a, x, s)),
        CombTerm::LApp(n, g) => clapp(subst_var(n, x, s), subst_var(g, x, s)),
    }
}

/// Left-right mirror of a bi-planar polynomial: the mirrored variable is
/// leftmost whenever the original was rightmost.
fn mirror_poly(m: &CombTerm) -> CombTerm {
    use lambdacomb::compile::{clapp, unary, CombSym, UnarySym};
    match m {
        CombTerm::Var(_) | CombTerm::Hole(_) | CombTerm::Const(_) => m.clone(),
        CombTerm::Sym(s) => lambdacomb::compile::sym(match s {
            CombSym::BRight => CombSym::BLeft,
            CombSym::BLeft => CombSym::BRight,
            CombSym::DRight => CombSym::DLeft,
            CombSym::DLeft => CombSym::DRight,
            CombSym::IRight => CombSym::ILeft,
            CombSym::ILeft => CombSym::IRight,
            other => *other,
        }),
        CombTerm::UnaryOp(op, t) => unary(
            match op {
                UnarySym::DagRight => UnarySym::DagLeft,
                UnarySym::DagLeft => UnarySym::DagRight,
                other => *other,
            },
            mirror_poly(t),
        ),
        CombTerm::App(f, a) => clapp(mirror_poly(a), mirror_poly(f)),
        CombTerm::LApp(n, g) => capp(mirror_poly(g), mirror_poly(n)),
    }
}

/// Criterion 2: the tensor translation is beta-eta-faithful on 300 random
/// closed terms (depth <= 7).
#[test]
fn criterion_2_tensor_translation() {
    let d = Discipline::planar_tensor().with_eta(true);
    let mut rng = gen::rng_from_seed(202);
    let mut kept = 0;
    while kept < 300 {
        let depth = 2 + (kept % 6);
        let m = gen::closed_term(&d, depth, &mut rng);
        let ct = compile_tensor(&m).expect("translation");
        let ex = expand(&ct, &[]).unwrap();
        assert_eq!(
            equal(&ex, &m, &d, 1_000_000),
            EqVerdict::Equal,
            "translation not faithful for {}",
            pretty(&m)
        );
        kept += 1;
    }
    report("criterion 2 (tensor translation, 300 terms)", true, "");
}

/// Criterion 3: the named representatives pass their axioms in their term
/// models.
#[test]
fn criterion_3_representatives() {
    use lambdacomb::algebra::{ax_b, ax_dot, ax_i, ax_itimes, ax_lp};
    let fresh = CheckMode::FreshConstants;

    // B, I, dot in the planar model with fresh constants.
    let lp = TermModel::planar();
    for ax in [ax_b(), ax_i(), ax_dot()] {
        let rep = check_axiom(&lp, &ax, fresh).unwrap();
        assert!(rep.holds(), "planar {}: {:?}", ax.name, rep.verdict);
    }
    // IX under beta alone holds on the constant-free planar model; fresh
    // constants would leave the model, so this check samples closed terms.
    let rep = check_axiom(&lp, &ax_itimes(), CheckMode::Sampled { n: 100, seed: 33 }).unwrap();
    assert!(rep.holds(), "planar IX sampled: {:?}", rep.verdict);

    // IX in the three-constant beta-eta model with fresh constants.
    let lpc_eta = TermModel::planar_const_eta();
    let rep = check_axiom(&lpc_eta, &ax_itimes(), fresh).unwrap();
    assert!(rep.holds(), "beta-eta IX: {:?}", rep.verdict);

    // L, P, IX in the tensor model.
    let lot = TermModel::planar_tensor();
    for ax in [ax_lp(), ax_itimes()] {
        let rep = check_axiom(&lot, &ax, fresh).unwrap();
        assert!(rep.holds(), "tensor {}: {:?}", ax.name, rep.verdict);
    }

    // The full bi-planar set.
    let lb = TermModel::biplanar();
    for ax in ClassName::BiBDI.axioms() {
        let rep = check_axiom(&lb, &ax, fresh).unwrap();
        assert!(rep.holds(), "bi-planar {}: {:?}", ax.name, rep.verdict);
    }
    report("criterion 3 (named representatives)", true, "");
}

/// Criterion 4: derived-combinator coherence.
#[test]
fn criterion_4_derived_combinators() {
    let fresh = CheckMode::FreshConstants;

    // Linear model with B, C, I: the whole planar side of the hierarchy
    // follows canonically (including the dot law via C I a).
    let lin = TermModel::linear();
    let candidates: std::collections::BTreeMap<String, Term> = ["B", "C", "I"]
        .iter()
        .map(|n| (n.to_string(), lin.distinguished(n).unwrap()))
        .collect();
    let cls = classify(&lin, &candidates, fresh);
    for want in [
        ClassName::BCI,
        ClassName::BiBDI,
        ClassName::BIILP,
        ClassName::BIIDot,
        ClassName::BIDot,
        ClassName::BIIDotCirc,
    ] {
        assert!(
            cls.classes.contains(&want),
            "linear model missing {want:?}: passing {:?}, reports {:?}",
            cls.classes,
            cls.reports
                .iter()
                .filter(|r| !r.holds())
                .collect::<Vec<_>>()
        );
    }
    assert!(!cls.classes.contains(&ClassName::SK));

    // Bi-planar model with the six bi symbols: all six BIILP derivations.
    let lb = TermModel::biplanar();
    let candidates: std::collections::BTreeMap<String, Term> =
        ["B>", "B<", "D>", "D<", "I>", "I<"]
            .iter()
            .map(|n| (n.to_string(), lb.distinguished(n).unwrap()))
            .collect();
    let cls = classify(&lb, &candidates, fresh);
    for want in [
        ClassName::BiBDI,
        ClassName::BIILP,
        ClassName::BIIDot,
        ClassName::BIDot,
        ClassName::BIIDotCirc,
    ] {
        assert!(
            cls.classes.contains(&want),
            "bi-planar model missing {want:?}: {:?}",
            cls.classes
        );
    }

    // SK model: the full chain.
    let sk = TermModel::ordinary();
    let candidates: std::collections::BTreeMap<String, Term> = ["S", "K"]
        .iter()
        .map(|n| (n.to_string(), sk.distinguished(n).unwrap()))
        .collect();
    let cls = classify(&sk, &candidates, fresh);
    assert_eq!(
        cls.classes.len(),
        ClassName::all().len(),
        "SK model should pass the whole hierarchy: {:?}",
        cls.classes
    );

    // Planar model with only B, I, IX, dot: BCI is not among the passing
    // classes (candidate-relative, not a non-existence proof).
    let lp = TermModel::planar();
    let candidates: std::collections::BTreeMap<String, Term> = ["B", "I", "IX"]
        .iter()
        .map(|n| (n.to_string(), lp.distinguished(n).unwrap()))
        .collect();
    let cls = classify(&lp, &candidates, CheckMode::Sampled { n: 40, seed: 7 });
    assert!(!cls.classes.contains(&ClassName::BCI));
    assert!(cls.classes.contains(&ClassName::BIDot));

    // derive_c_from_t with T = \x.\y.y x satisfies the C axiom in the
    // linear model, with fresh constants.
    let t_rep = lin
        .element(&parse("\\a.\\b.b a", lin.discipline()).unwrap())
        .unwrap();
    let c_term = expand(&derive_c_from_t(&CombTerm::Hole(0)), &[t_rep]).unwrap();
    let mut lin2 = TermModel::linear();
    lin2.install("C", lin2.element(&c_term).unwrap());
    let rep = check_axiom(&lin2, &lambdacomb::algebra::ax_c(), fresh).unwrap();
    assert!(rep.holds(), "derived C: {:?}", rep.verdict);

    // With T = I the axiom fails.
    let bad = expand(
        &derive_c_from_t(&CombTerm::Hole(0)),
        &[lin.distinguished("I").unwrap()],
    )
    .unwrap();
    let mut lin3 = TermModel::linear();
    lin3.install("C", lin3.element(&bad).unwrap());
    let rep = check_axiom(&lin3, &lambdacomb::algebra::ax_c(), fresh).unwrap();
    assert!(matches!(rep.verdict, AxiomVerdict::FailsAt(_)));

    report("criterion 4 (derived-combinator coherence)", true, "");
}

/// Criterion 5: tree model over the integers at bound 7.
#[test]
fn criterion_5_tree_model() {
    let start = std::time::Instant::now();
    let m = tree_model(IntAdd, Variant::T, 7);
    let mut rng = gen::rng_from_seed(505);

    // Membership agrees with enumeration on 10,000 random trees across a
    // family of set expressions.
    let fin = |m: &lambdacomb::models::TreeModel<IntAdd>, ts: Vec<_>| m.finite(ts).unwrap();
    let x0 = fin(&m, vec![rimp(leaf(1), leaf(0)), leaf(0)]);
    let x1 = fin(&m, vec![leaf(1)]);
    let sets = vec![
        m.named(NamedSet::B),
        m.named(NamedSet::I),
        m.named(NamedSet::ITimes),
        m.named(NamedSet::LEnc),
        m.named(NamedSet::PEnc),
        m.dot(&x1),
        m.app_r(&m.named(NamedSet::I), &x0),
        m.app_r(&m.named(NamedSet::B), &x0),
        m.app_r(&m.dot(&x1), &x0),
        m.app_r(&m.app_r(&m.named(NamedSet::B), &x0), &x1),
    ];
    let mut checked = 0usize;
    for set in &sets {
        let en = m.enumerate(set, 7);
        for t in &en {
            assert!(m.member(set, t), "enumerated non-member");
        }
        for _ in 0..1000 {
            let t = m.random_tree(7, &mut rng);
            let member = m.member(set, &t);
            let listed = en.contains(&t);
            assert_eq!(member, listed, "membership/enumeration disagree");
            checked += 1;
        }
    }
    assert!(checked >= 10_000);

    // Combinator laws as bounded set agreement on 100 random operand sets.
    let pool = m.sample(99, 300);
    let b = m.named(NamedSet::B);
    let i = m.named(NamedSet::I);
    let ix = m.named(NamedSet::ITimes);
    let l = m.named(NamedSet::LEnc);
    let p = m.named(NamedSet::PEnc);
    for k in 0..100 {
        let x = &pool[3 * k];
        let y = &pool[3 * k + 1];
        let z = &pool[3 * k + 2];
        // B x y z = x (y z)
        let lhs = m.app_r(&m.app_r(&m.app_r(&b, x), y), z);
        let rhs = m.app_r(x, &m.app_r(y, z));
        assert!(m.agree_to_bound(&lhs, &rhs, 7), "B law fails at sample {k}");
        // I x = x
        assert!(m.agree_to_bound(&m.app_r(&i, x), x, 7), "I law fails");
        // IX x I = x
        let lhs = m.app_r(&m.app_r(&ix, x), &i);
        assert!(m.agree_to_bound(&lhs, x, 7), "IX law fails at {k}");
        // (dot x) y = y x
        let lhs = m.app_r(&m.dot(x), y);
        let rhs = m.app_r(y, x);
        assert!(m.agree_to_bound(&lhs, &rhs, 7), "dot law fails at {k}");
        // L x (P y z) = x y z with the sets internal to the variant
        let lhs = m.app_r(&m.app_r(&l, x), &m.app_r(&m.app_r(&p, y), z));
        let rhs = m.app_r(&m.app_r(x, y), z);
        assert!(m.agree_to_bound(&lhs, &rhs, 7), "LP law fails at {k}");
    }
    let secs = start.elapsed().as_secs_f64();
    report(
        "criterion 5 (tree model laws and enumeration)",
        secs < 120.0,
        &format!("({secs:.1}s)"),
    );
}

/// Criterion 6: the exchange-model adjoint pair at bound 6.
#[test]
fn criterion_6_te_adjoint_pair() {
    let pair = te_adjoint_pair(IntAdd, 6);
    let t = &pair.t;
    let te = &pair.te;
    let t_samples = t.sample(606, 100);
    let te_samples = te.sample(607, 100);

    // Condition instances, 100 each.
    let gamma_spec: MorphismSpec<'_, _, _> = MorphismSpec {
        relation: Box::new(|a: &lambdacomb::models::TreeSet<IntAdd>| vec![pair.gamma(a)]),
        realizer: pair.gamma_realizer.clone(),
    };
    let delta_spec: MorphismSpec<'_, _, _> = MorphismSpec {
        relation: Box::new(|b: &lambdacomb::models::TreeSet<IntAdd>| vec![pair.delta(b)]),
        realizer: pair.delta_realizer.clone(),
    };
    for k in 0..100 {
        let a = &t_samples[k];
        let a2 = &t_samples[(k * 7 + 3) % 100];
        let rep = check_morphism(t, te, &gamma_spec, &[a.clone(), a2.clone()]);
        assert!(rep.ok(), "gamma condition fails at {k}: {:?}", rep.failures);
        let b = &te_samples[k];
        let b2 = &te_samples[(k * 5 + 1) % 100];
        let rep = check_morphism(te, t, &delta_spec, &[b.clone(), b2.clone()]);
        assert!(rep.ok(), "delta condition fails at {k}: {:?}", rep.failures);
        // counit: delta(gamma a) sent back to a.
        let dg = pair.delta(&pair.gamma(a));
        let back = t.rapp(&pair.counit_realizer, &dg).unwrap();
        assert!(
            matches!(t.eq(&back, a), EqVerdict::Equal),
            "counit fails at {k}"
        );
        // unit: b sent into gamma(delta b).
        let fwd = te.rapp(&pair.unit_realizer, b).unwrap();
        let gd = pair.gamma(&pair.delta(b));
        assert!(
            matches!(te.eq(&fwd, &gd), EqVerdict::Equal),
            "unit fails at {k}"
        );
    }
    report("criterion 6 (adjoint pair conditions, 4 x 100)", true, "");
}

/// Criterion 7: CPS soundness on the three computational axioms.
#[test]
fn criterion_7_cps_soundness() {
    let mut unknown = 0usize;
    let mut total = 0usize;
    let fuel = 1_000_000;

    // (βV) (\x.M) V = M[V/x]
    let mut rng = gen::rng_from_seed(707);
    for _ in 0..200 {
        let scope = vec!["x".to_string(), "y".to_string()];
        let m = gen::ordinary_open_term(&scope, 4, &mut rng);
        let v = gen::cbv_value(&["y".to_string()], 2, &mut rng);
        let lhs = rapp(lambdacomb::syntax::rabs("x", m.clone()), v.clone());
        let rhs = lambdacomb::syntax::substitute(&m, "x", &v);
        match computational_eq(&lhs, &rhs, fuel) {
            EqVerdict::Equal => {}
            EqVerdict::NotEqual => panic!("beta-V instance NotEqual: {}", pretty(&lhs)),
            EqVerdict::Unknown => unknown += 1,
        }
        total += 1;
    }
    // (ηV) \x.V x = V for x not free in V
    for _ in 0..200 {
        let v = gen::cbv_value(&["y".to_string(), "z".to_string()], 3, &mut rng);
        let lhs = lambdacomb::syntax::rabs("x", rapp(v.clone(), lambdacomb::syntax::var("x")));
        match computational_eq(&lhs, &v, fuel) {
            EqVerdict::Equal => {}
            EqVerdict::NotEqual => panic!("eta-V instance NotEqual: {}", pretty(&lhs)),
            EqVerdict::Unknown => unknown += 1,
        }
        total += 1;
    }
    // (βΩ) (\x.E[x]) M = E[M] for an evaluation context E
    for k in 0..200 {
        let vars = vec!["y".to_string()];
        let depth = 1 + k % 3;
        let e_of_x = gen::plug_eval_context(lambdacomb::syntax::var("x"), &vars, depth, &mut rng);
        let m = gen::ordinary_open_term(&vars, 3, &mut rng);
        let lhs = rapp(lambdacomb::syntax::rabs("x", e_of_x.clone()), m.clone());
        let rhs = lambdacomb::syntax::substitute(&e_of_x, "x", &m);
        match computational_eq(&lhs, &rhs, fuel) {
            EqVerdict::Equal => {}
            EqVerdict::NotEqual => panic!("beta-Omega instance NotEqual: {}", pretty(&lhs)),
            EqVerdict::Unknown => unknown += 1,
        }
        total += 1;
    }
    let rate = unknown as f64 / total as f64;
    report(
        "criterion 7 (CPS soundness, 3 x 200)",
        rate <= 0.05,
        &format!("(unknown rate {:.1}%)", rate * 100.0),
    );
}

/// Criterion 8: the left-inverse construction on 100 random closed planar
/// normal forms.
#[test]
fn criterion_8_left_inverse() {
    let d = Discipline::planar();
    let mut rng = gen::rng_from_seed(808);
    let idt = parse("\\x.x", &d).unwrap();
    let mut kept = 0;
    while kept < 100 {
        let m = match gen::closed_normal_term(&d, 4 + kept % 3, &mut rng) {
            Some(t) => t,
            None => continue,
        };
        let n = left_inverse(&m).expect("construction total on normal forms");
        let nm = rapp(n, m.clone());
        assert_eq!(
            equal(&nm, &idt, &d, 1_000_000),
            EqVerdict::Equal,
            "left inverse fails for {}",
            pretty(&m)
        );
        kept += 1;
    }
    report("criterion 8 (left inverse, 100 normal forms)", true, "");
}

/// Criterion 9: three reduction strategies agree on 1000 planar and 1000
/// bi-planar terms, within 10^4 steps.
#[test]
fn criterion_9_confluence_sn() {
    for (d, seed) in [
        (Discipline::planar(), 909u64),
        (Discipline::biplanar(), 910),
    ] {
        let mut rng = gen::rng_from_seed(seed);
        for k in 0..1000 {
            let t = gen::closed_term(&d, 3 + k % 5, &mut rng);
            let n1 = normalize(&t, &d, 10_000, Strategy::LeftmostOutermost);
            let n2 = normalize(&t, &d, 10_000, Strategy::RightmostInnermost);
            let n3 = normalize(&t, &d, 10_000, Strategy::Random(seed ^ k as u64));
            assert!(
                n1.is_normal() && n2.is_normal() && n3.is_normal(),
                "strategy exceeded budget on {}",
                pretty(&t)
            );
            assert!(
                alpha_eq(n1.term(), n2.term()) && alpha_eq(n1.term(), n3.term()),
                "strategies disagree on {}",
                pretty(&t)
            );
        }
    }
    report("criterion 9 (confluence and termination, 2 x 1000)", true, "");
}

fn suite_fixture(
    m: &TermModel,
) -> (Assembly<Term>, Assembly<Term>, Assembly<Term>, Vec<Term>) {
    let i = m.distinguished("I").unwrap();
    let b = m.distinguished("B").unwrap();
    let x = Assembly::new(vec![
        ("x0".to_string(), vec![i.clone()]),
        ("x1".to_string(), vec![b.clone()]),
    ])
    .unwrap();
    let y = Assembly::new(vec![
        ("y0".to_string(), vec![i.clone()]),
        ("y1".to_string(), vec![b.clone()]),
    ])
    .unwrap();
    let z = Assembly::new(vec![
        ("z0".to_string(), vec![i.clone()]),
        ("z1".to_string(), vec![b.clone()]),
        ("z2".to_string(), vec![b.clone()]),
    ])
    .unwrap();
    let family = m
        .element(&parse("\\q.q (\\a.a) (\\b.b) (\\c.c)", m.discipline()).unwrap())
        .unwrap();
    let mut universe = vec![i, b, family];
    for name in ["IX", "L", "P", "I>", "I<", "D>", "D<", "B>", "B<"] {
        if let Some(e) = m.distinguished(name) {
            universe.push(e);
        }
    }
    (x, y, z, universe)
}

/// Criterion 10: the closed-structure suite on the three term models, the
/// composition law, and a non-modest tensor of modest assemblies.
#[test]
fn criterion_10_assembly_suite() {
    for (name, m, min_items) in [
        ("planar", TermModel::planar(), 7usize),
        ("planar-tensor", TermModel::planar_tensor(), 12),
        ("bi-planar", TermModel::biplanar(), 17),
    ] {
        let (x, y, z, universe) = suite_fixture(&m);
        let rep = closed_structure_suite(&m, &x, &y, &z, &universe);
        assert!(
            rep.ok(),
            "{name} suite: {:?}",
            rep.items.iter().filter(|i| !i.pass).collect::<Vec<_>>()
        );
        assert!(
            rep.items.len() >= min_items,
            "{name} suite ran {} items",
            rep.items.len()
        );
    }

    // Non-modest tensor of modest assemblies over the collapsing magma.
    let mut magma = FiniteMagma::new(vec![vec![Some(0); 3]; 3]).unwrap();
    magma.install("P", 0);
    magma.install("L", 0);
    let x = Assembly::new(vec![("a".to_string(), vec![1]), ("b".to_string(), vec![2])]).unwrap();
    assert!(x.is_modest(&magma));
    let t = tensor_assembly(&magma, &x, &x).unwrap();
    assert!(!t.is_modest(&magma));
    // The very L/P law still holds exhaustively on this magma.
    let rep = check_axiom(
        &magma,
        &lambdacomb::algebra::ax_lp(),
        CheckMode::Sampled { n: 200, seed: 1 },
    )
    .unwrap();
    assert!(rep.holds());

    report("criterion 10 (assembly suite over three models)", true, "");
}
