//! Reduction, normalization, and equality.
//!
//! The enabled rules are a function of the discipline: plain beta for the
//! pure calculi, beta plus let-beta for the tensor calculus, and the two
//! directed beta rules for the bi-planar calculus. When the discipline's
//! `eta` flag is set, eta and let-eta are oriented as contractions and fire
//! only on terms with no beta redex, so equality is decided on
//! beta-then-eta-contracted forms.
//!
//! For the linear, planar, tensor and bi-planar disciplines every rule
//! strictly shrinks the term, so normalization terminates under any strategy;
//! the ordinary calculus is fuel-bounded.

use crate::syntax::{
    alpha_eq, free_vars, lapp, letpair, rapp, substitute, tensor, Discipline, Path, Term,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionRule {
    Beta,
    LBeta,
    LetBeta,
    EtaContract,
    LetEtaContract,
}

impl ReductionRule {
    pub fn name(self) -> &'static str {
        match self {
            ReductionRule::Beta => "beta",
            ReductionRule::LBeta => "left-beta",
            ReductionRule::LetBeta => "let-beta",
            ReductionRule::EtaContract => "eta",
            ReductionRule::LetEtaContract => "let-eta",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    LeftmostOutermost,
    RightmostInnermost,
    Random(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalizeOutcome {
    Normal(Term, u64),
    FuelExhausted(Term, u64),
}

impl NormalizeOutcome {
    pub fn term(&self) -> &Term {
        match self {
            NormalizeOutcome::Normal(t, _) | NormalizeOutcome::FuelExhausted(t, _) => t,
        }
    }

    pub fn steps(&self) -> u64 {
        match self {
            NormalizeOutcome::Normal(_, s) | NormalizeOutcome::FuelExhausted(_, s) => *s,
        }
    }

    pub fn is_normal(&self) -> bool {
        matches!(self, NormalizeOutcome::Normal(_, _))
    }

    pub fn into_normal(self) -> Option<Term> {
        match self {
            NormalizeOutcome::Normal(t, _) => Some(t),
            NormalizeOutcome::FuelExhausted(_, _) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqVerdict {
    Equal,
    NotEqual,
    Unknown,
}

pub const DEFAULT_FUEL: u64 = 1_000_000;

fn rule_matches(t: &Term, d: &Discipline, beta_only: bool) -> Option<ReductionRule> {
    match t {
        Term::RApp(f, _) => {
            if matches!(**f, Term::RAbs(_, _)) {
                return Some(ReductionRule::Beta);
            }
            None
        }
        Term::LApp(_, m) if d.left_ops => {
            if matches!(**m, Term::LAbs(_, _)) {
                return Some(ReductionRule::LBeta);
            }
            None
        }
        Term::LetPair(_, _, s, _) if d.tensor => {
            if matches!(**s, Term::Tensor(_, _)) {
                return Some(ReductionRule::LetBeta);
            }
            if !beta_only && d.eta {
                if let Term::LetPair(x, y, _, b) = t {
                    if let Term::Tensor(l, r) = &**b {
                        if **l == Term::Var(x.clone()) && **r == Term::Var(y.clone()) {
                            return Some(ReductionRule::LetEtaContract);
                        }
                    }
                }
            }
            None
        }
        Term::RAbs(x, b) if !beta_only && d.eta => {
            if let Term::RApp(m, a) = &**b {
                if **a == Term::Var(x.clone()) && !free_vars(m).contains(x) {
                    return Some(ReductionRule::EtaContract);
                }
            }
            None
        }
        _ => None,
    }
}

fn collect_redexes(
    t: &Term,
    d: &Discipline,
    beta_only: bool,
    path: &mut Path,
    out: &mut Vec<(Path, ReductionRule)>,
) {
    if let Some(rule) = rule_matches(t, d, beta_only) {
        out.push((path.clone(), rule));
    }
    let child = |c: &Term, i: u8, path: &mut Path, out: &mut Vec<(Path, ReductionRule)>| {
        path.push(i);
        collect_redexes(c, d, beta_only, path, out);
        path.pop();
    };
    match t {
        Term::Var(_) | Term::Const(_) => {}
        Term::RApp(a, b) | Term::LApp(a, b) | Term::Tensor(a, b) => {
            child(a, 0, path, out);
            child(b, 1, path, out);
        }
        Term::RAbs(_, b) | Term::LAbs(_, b) => child(b, 0, path, out),
        Term::LetPair(_, _, s, b) => {
            child(s, 0, path, out);
            child(b, 1, path, out);
        }
    }
}

/// Enabled redexes of `t`. Beta-family redexes take priority: eta redexes
/// are listed only when no beta redex remains.
pub fn redexes(t: &Term, d: &Discipline) -> Vec<(Path, ReductionRule)> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    collect_redexes(t, d, true, &mut path, &mut out);
    if out.is_empty() && d.eta {
        collect_redexes(t, d, false, &mut path, &mut out);
        out.retain(|(_, r)| {
            matches!(
                r,
                ReductionRule::EtaContract | ReductionRule::LetEtaContract
            )
        });
    }
    out
}

fn contract_at(t: &Term, path: &[u8], rule: ReductionRule) -> Term {
    if let Some((&i, rest)) = path.split_first() {
        return match (t, i) {
            (Term::RApp(f, a), 0) => rapp(contract_at(f, rest, rule), (**a).clone()),
            (Term::RApp(f, a), 1) => rapp((**f).clone(), contract_at(a, rest, rule)),
            (Term::LApp(n, m), 0) => lapp(contract_at(n, rest, rule), (**m).clone()),
            (Term::LApp(n, m), 1) => lapp((**n).clone(), contract_at(m, rest, rule)),
            (Term::Tensor(l, r), 0) => tensor(contract_at(l, rest, rule), (**r).clone()),
            (Term::Tensor(l, r), 1) => tensor((**l).clone(), contract_at(r, rest, rule)),
            (Term::RAbs(x, b), 0) => Term::RAbs(x.clone(), Box::new(contract_at(b, rest, rule))),
            (Term::LAbs(x, b), 0) => Term::LAbs(x.clone(), Box::new(contract_at(b, rest, rule))),
            (Term::LetPair(x, y, s, b), 0) => {
                letpair(x, y, contract_at(s, rest, rule), (**b).clone())
            }
            (Term::LetPair(x, y, s, b), 1) => {
                letpair(x, y, (**s).clone(), contract_at(b, rest, rule))
            }
            _ => panic!("bad redex path"),
        };
    }
    match (t, rule) {
        (Term::RApp(f, a), ReductionRule::Beta) => match &**f {
            Term::RAbs(x, b) => substitute(b, x, a),
            _ => panic!("beta redex expected"),
        },
        (Term::LApp(n, m), ReductionRule::LBeta) => match &**m {
            Term::LAbs(x, b) => substitute(b, x, n),
            _ => panic!("left-beta redex expected"),
        },
        (Term::LetPair(x, y, s, b), ReductionRule::LetBeta) => match &**s {
            Term::Tensor(l, r) => {
                // Simultaneous substitution: a free occurrence of the second
                // binder's name inside the first component must not be hit
                // by the second pass.
                let mut avoid = free_vars(l);
                avoid.extend(free_vars(r));
                avoid.extend(free_vars(b));
                avoid.insert(x.clone());
                avoid.insert(y.clone());
                let y_tmp = crate::syntax::fresh_name("yy", &avoid);
                let b1 = substitute(b, y, &Term::Var(y_tmp.clone()));
                let b2 = substitute(&b1, x, l);
                substitute(&b2, &y_tmp, r)
            }
            _ => panic!("let-beta redex expected"),
        },
        (Term::RAbs(_, b), ReductionRule::EtaContract) => match &**b {
            Term::RApp(m, _) => (**m).clone(),
            _ => panic!("eta redex expected"),
        },
        (Term::LetPair(_, _, s, _), ReductionRule::LetEtaContract) => (**s).clone(),
        _ => panic!("rule does not match redex"),
    }
}

fn pick<'a>(
    redexes: &'a [(Path, ReductionRule)],
    strategy: Strategy,
    rng: &mut Option<ChaCha8Rng>,
) -> &'a (Path, ReductionRule) {
    match strategy {
        Strategy::LeftmostOutermost => redexes.iter().min_by(|a, b| a.0.cmp(&b.0)).unwrap(),
        Strategy::RightmostInnermost => redexes.iter().max_by(|a, b| a.0.cmp(&b.0)).unwrap(),
        Strategy::Random(seed) => {
            let rng = rng.get_or_insert_with(|| ChaCha8Rng::seed_from_u64(seed));
            &redexes[rng.gen_range(0..redexes.len())]
        }
    }
}

/// One reduction step, or `None` when `t` is normal for the discipline.
pub fn step(t: &Term, d: &Discipline, strategy: Strategy) -> Option<Term> {
    step_traced(t, d, strategy).map(|(t, _, _)| t)
}

/// One reduction step together with the contracted position and rule.
pub fn step_traced(
    t: &Term,
    d: &Discipline,
    strategy: Strategy,
) -> Option<(Term, Path, ReductionRule)> {
    let rs = redexes(t, d);
    if rs.is_empty() {
        return None;
    }
    let mut rng = None;
    let (path, rule) = pick(&rs, strategy, &mut rng).clone();
    Some((contract_at(t, &path, rule), path, rule))
}

/// Reduces to normal form under the given strategy, spending at most `fuel`
/// steps.
pub fn normalize(t: &Term, d: &Discipline, fuel: u64, strategy: Strategy) -> NormalizeOutcome {
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut cur = t.clone();
    let mut steps = 0u64;
    loop {
        let rs = redexes(&cur, d);
        if rs.is_empty() {
            return NormalizeOutcome::Normal(cur, steps);
        }
        if steps >= fuel {
            return NormalizeOutcome::FuelExhausted(cur, steps);
        }
        let (path, rule) = pick(&rs, strategy, &mut rng).clone();
        cur = contract_at(&cur, &path, rule);
        steps += 1;
    }
}

/// Normalization trace: each entry is (step index, rule, redex path).
pub fn trace(
    t: &Term,
    d: &Discipline,
    fuel: u64,
    strategy: Strategy,
) -> (NormalizeOutcome, Vec<(u64, ReductionRule, Path)>) {
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut cur = t.clone();
    let mut steps = 0u64;
    let mut log = Vec::new();
    loop {
        let rs = redexes(&cur, d);
        if rs.is_empty() {
            return (NormalizeOutcome::Normal(cur, steps), log);
        }
        if steps >= fuel {
            return (NormalizeOutcome::FuelExhausted(cur, steps), log);
        }
        let (path, rule) = pick(&rs, strategy, &mut rng).clone();
        log.push((steps, rule, path.clone()));
        cur = contract_at(&cur, &path, rule);
        steps += 1;
    }
}

pub fn normalize_lo(t: &Term, d: &Discipline, fuel: u64) -> NormalizeOutcome {
    normalize(t, d, fuel, Strategy::LeftmostOutermost)
}

/// Decides equality by comparing normal forms.
///
/// Complete for the strongly normalizing disciplines; `Unknown` only when
/// fuel ran out (ordinary calculus).
pub fn equal(t1: &Term, t2: &Term, d: &Discipline, fuel: u64) -> EqVerdict {
    let n1 = normalize_lo(t1, d, fuel);
    let n2 = normalize_lo(t2, d, fuel);
    match (n1, n2) {
        (NormalizeOutcome::Normal(a, _), NormalizeOutcome::Normal(b, _)) => {
            if alpha_eq(&a, &b) {
                EqVerdict::Equal
            } else {
                EqVerdict::NotEqual
            }
        }
        _ => EqVerdict::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{cst, parse, pretty, rabs, rapp, validate, var};

    #[test]
    fn beta_step() {
        let d = Discipline::planar();
        let t = parse("(\\x.x) (\\y.y)", &d).unwrap();
        let s = step(&t, &d, Strategy::LeftmostOutermost).unwrap();
        assert!(alpha_eq(&s, &parse("\\y.y", &d).unwrap()));
    }

    #[test]
    fn biplanar_right_beta() {
        let d = Discipline::biplanar().with_constants(["c"]);
        let t = parse("(\\>x.x) #c", &d).unwrap();
        let s = step(&t, &d, Strategy::LeftmostOutermost).unwrap();
        assert_eq!(s, cst("c"));
    }

    #[test]
    fn biplanar_left_beta() {
        let d = Discipline::biplanar().with_constants(["c"]);
        let t = parse("#c <@ \\<x.x", &d).unwrap();
        let s = step(&t, &d, Strategy::LeftmostOutermost).unwrap();
        assert_eq!(s, cst("c"));
    }

    #[test]
    fn let_beta() {
        let d = Discipline::planar_tensor().with_constants(["c1", "c2"]);
        let t = parse("let a*b = #c1 * #c2 in a b", &d).unwrap();
        let s = step(&t, &d, Strategy::LeftmostOutermost).unwrap();
        assert!(alpha_eq(&s, &parse("#c1 #c2", &d).unwrap()));
    }

    #[test]
    fn normalize_itimes_computation() {
        // (\x.\y.\z.x (y z)) M (\v.v) reduces back to M for closed planar M.
        let d = Discipline::planar();
        let m = parse("\\u.u (\\w.w)", &d).unwrap();
        let t = rapp(
            rapp(parse("\\x.\\y.\\z.x (y z)", &d).unwrap(), m.clone()),
            parse("\\v.v", &d).unwrap(),
        );
        let n = normalize_lo(&t, &d, 1000);
        assert!(n.is_normal());
        assert!(alpha_eq(n.term(), &m), "got {}", pretty(n.term()));
    }

    #[test]
    fn omega_exhausts_fuel() {
        let d = Discipline::ordinary();
        let omega = parse("(\\x.x x) (\\x.x x)", &d).unwrap();
        let n = normalize_lo(&omega, &d, 100);
        assert!(!n.is_normal());
        assert_eq!(n.steps(), 100);
    }

    #[test]
    fn normal_form_zero_steps() {
        let d = Discipline::planar();
        let t = parse("\\x.x", &d).unwrap();
        let n = normalize_lo(&t, &d, 10);
        assert_eq!(n, NormalizeOutcome::Normal(t, 0));
    }

    #[test]
    fn eta_decides_equality() {
        let d = Discipline::planar().with_constants(["c"]);
        let lhs = parse("\\z.#c z", &d).unwrap();
        let rhs = parse("#c", &d).unwrap();
        assert_eq!(equal(&lhs, &rhs, &d, 100), EqVerdict::NotEqual);
        let d_eta = d.with_eta(true);
        assert_eq!(equal(&lhs, &rhs, &d_eta, 100), EqVerdict::Equal);
    }

    #[test]
    fn let_eta_contract() {
        let d = Discipline::planar_tensor().with_eta(true);
        let t = parse("\\u.let a*b = u in a * b", &d).unwrap();
        let n = normalize_lo(&t, &d, 100).into_normal().unwrap();
        assert!(alpha_eq(&n, &parse("\\u.u", &d).unwrap()));
    }

    #[test]
    fn tensor_itimes_needs_eta() {
        // (\x.\y.\z.x (y z)) ((\u.u) * (\v.v)) (\w.w) is beta-eta-equal to
        // the pair but not beta-equal to it.
        let d = Discipline::planar_tensor();
        let pair = parse("(\\u.u) * (\\v.v)", &d).unwrap();
        let t = rapp(
            rapp(parse("\\x.\\y.\\z.x (y z)", &d).unwrap(), pair.clone()),
            parse("\\w.w", &d).unwrap(),
        );
        assert_eq!(equal(&t, &pair, &d, 1000), EqVerdict::NotEqual);
        let d_eta = d.with_eta(true);
        assert_eq!(equal(&t, &pair, &d_eta, 1000), EqVerdict::Equal);
    }

    #[test]
    fn discipline_preserved_by_steps() {
        let d = Discipline::planar();
        let mut t = parse("(\\x.\\y.\\z.x (y z)) (\\u.u (\\w.w)) (\\v.v)", &d).unwrap();
        assert!(validate(&t, &d).ok());
        while let Some(next) = step(&t, &d, Strategy::LeftmostOutermost) {
            assert!(validate(&next, &d).ok(), "invalid after step: {}", pretty(&next));
            t = next;
        }
    }

    #[test]
    fn strategies_agree_on_planar_normal_forms() {
        let d = Discipline::planar();
        let t = parse(
            "(\\x.\\y.\\z.x (y z)) ((\\a.a) (\\b.b (\\c.c))) (\\v.v)",
            &d,
        )
        .unwrap();
        let n1 = normalize(&t, &d, 10_000, Strategy::LeftmostOutermost);
        let n2 = normalize(&t, &d, 10_000, Strategy::RightmostInnermost);
        let n3 = normalize(&t, &d, 10_000, Strategy::Random(7));
        assert!(alpha_eq(n1.term(), n2.term()));
        assert!(alpha_eq(n1.term(), n3.term()));
    }

    #[test]
    fn expanded_combinator_equality() {
        // B c1 (B c2 I) c3 = c1 (c2 c3) with B, I read as their
        // representatives.
        let d = Discipline::planar().with_constants(["c1", "c2", "c3"]);
        let b = parse("\\x.\\y.\\z.x (y z)", &d).unwrap();
        let i = parse("\\w.w", &d).unwrap();
        let lhs = rapp(
            rapp(
                rapp(b.clone(), cst("c1")),
                rapp(rapp(b, cst("c2")), i),
            ),
            cst("c3"),
        );
        let rhs = parse("#c1 (#c2 #c3)", &d).unwrap();
        assert_eq!(equal(&lhs, &rhs, &d, 1000), EqVerdict::Equal);
    }

    #[test]
    fn congruence_on_contexts() {
        let d = Discipline::planar().with_constants(["c"]);
        let t1 = parse("(\\x.x) #c", &d).unwrap();
        let t2 = parse("#c", &d).unwrap();
        assert_eq!(equal(&t1, &t2, &d, 100), EqVerdict::Equal);
        let c1 = rabs("y", rapp(var("y"), t1));
        let c2 = rabs("y", rapp(var("y"), t2));
        assert_eq!(equal(&c1, &c2, &d, 100), EqVerdict::Equal);
    }
}
