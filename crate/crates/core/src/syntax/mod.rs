//! Abstract syntax, structural disciplines, and the concrete grammar.
//!
//! One term type serves every calculus in the workbench. Which constructors
//! and which variable usage patterns are legal is decided by a [`Discipline`]:
//! a profile of structural rules (exchange / contraction / weakening), plus
//! flags for tensor pairs and for the left application and abstraction of the
//! bi-planar calculus.

mod parser;
mod print;

pub use parser::{parse, ParseError};
pub use print::pretty;

use std::collections::BTreeSet;
use std::fmt;

pub type Name = String;

/// Untyped terms for all supported calculi.
///
/// `LApp(n, m)` is the left application `n <@ m`: the argument `n` is fed
/// into the function `m` from the left. Its free-variable sequence is the
/// sequence of `n` followed by that of `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Name),
    Const(Name),
    RApp(Box<Term>, Box<Term>),
    LApp(Box<Term>, Box<Term>),
    RAbs(Name, Box<Term>),
    LAbs(Name, Box<Term>),
    Tensor(Box<Term>, Box<Term>),
    LetPair(Name, Name, Box<Term>, Box<Term>),
}

pub fn var(x: &str) -> Term {
    Term::Var(x.to_string())
}
pub fn cst(c: &str) -> Term {
    Term::Const(c.to_string())
}
pub fn rapp(f: Term, a: Term) -> Term {
    Term::RApp(Box::new(f), Box::new(a))
}
pub fn lapp(a: Term, f: Term) -> Term {
    Term::LApp(Box::new(a), Box::new(f))
}
pub fn rabs(x: &str, b: Term) -> Term {
    Term::RAbs(x.to_string(), Box::new(b))
}
pub fn labs(x: &str, b: Term) -> Term {
    Term::LAbs(x.to_string(), Box::new(b))
}
pub fn tensor(l: Term, r: Term) -> Term {
    Term::Tensor(Box::new(l), Box::new(r))
}
pub fn letpair(x: &str, y: &str, s: Term, b: Term) -> Term {
    Term::LetPair(x.to_string(), y.to_string(), Box::new(s), Box::new(b))
}

/// Chain of right applications, left associated.
pub fn rapps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
    args.into_iter().fold(f, rapp)
}

impl Term {
    pub fn is_closed(&self) -> bool {
        free_var_sequence(self).is_empty()
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 1,
            Term::RApp(a, b) | Term::LApp(a, b) | Term::Tensor(a, b) => 1 + a.size() + b.size(),
            Term::RAbs(_, b) | Term::LAbs(_, b) => 1 + b.size(),
            Term::LetPair(_, _, s, b) => 1 + s.size() + b.size(),
        }
    }

    /// Number of abstraction and let-pair binders in the term.
    pub fn binder_count(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 0,
            Term::RApp(a, b) | Term::LApp(a, b) | Term::Tensor(a, b) => {
                a.binder_count() + b.binder_count()
            }
            Term::RAbs(_, b) | Term::LAbs(_, b) => 1 + b.binder_count(),
            Term::LetPair(_, _, s, b) => 2 + s.binder_count() + b.binder_count(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", pretty(self))
    }
}

/// Structural-rule profile selecting a calculus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discipline {
    pub weakening: bool,
    pub contraction: bool,
    pub exchange: bool,
    pub tensor: bool,
    pub left_ops: bool,
    pub constants: BTreeSet<Name>,
    pub eta: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DisciplineError {
    #[error("left applications and tensor pairs cannot be combined in one discipline")]
    LeftOpsWithTensor,
}

impl Discipline {
    /// All structural rules: the ordinary lambda calculus.
    pub fn ordinary() -> Discipline {
        Discipline {
            weakening: true,
            contraction: true,
            exchange: true,
            tensor: false,
            left_ops: false,
            constants: BTreeSet::new(),
            eta: false,
        }
    }

    /// Exchange only: the linear lambda calculus.
    pub fn linear() -> Discipline {
        Discipline {
            exchange: true,
            ..Discipline::planar()
        }
    }

    /// No structural rules: the planar lambda calculus.
    pub fn planar() -> Discipline {
        Discipline {
            weakening: false,
            contraction: false,
            exchange: false,
            tensor: false,
            left_ops: false,
            constants: BTreeSet::new(),
            eta: false,
        }
    }

    /// Planar terms with tensor pairs and let-pair elimination.
    pub fn planar_tensor() -> Discipline {
        Discipline {
            tensor: true,
            ..Discipline::planar()
        }
    }

    /// Planar terms with both right and left application/abstraction.
    pub fn biplanar() -> Discipline {
        Discipline {
            left_ops: true,
            ..Discipline::planar()
        }
    }

    pub fn custom(
        weakening: bool,
        contraction: bool,
        exchange: bool,
        tensor: bool,
        left_ops: bool,
    ) -> Result<Discipline, DisciplineError> {
        if tensor && left_ops {
            return Err(DisciplineError::LeftOpsWithTensor);
        }
        Ok(Discipline {
            weakening,
            contraction,
            exchange,
            tensor,
            left_ops,
            constants: BTreeSet::new(),
            eta: false,
        })
    }

    pub fn with_constants<I: IntoIterator<Item = S>, S: Into<Name>>(mut self, cs: I) -> Discipline {
        self.constants = cs.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_eta(mut self, eta: bool) -> Discipline {
        self.eta = eta;
        self
    }
}

/// Path from the root of a term to a subterm, as child indices.
pub type Path = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<(Path, String)>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Left-to-right sequence of free-variable occurrences.
///
/// Mirrors the contexts of the construction rules: right application and
/// tensor concatenate in order, left application puts the argument's context
/// first, and a let-pair puts the body's remaining context before the
/// scrutinee's.
pub fn free_var_sequence(t: &Term) -> Vec<Name> {
    let mut out = Vec::new();
    let mut bound: Vec<Name> = Vec::new();
    fvs(t, &mut bound, &mut out);
    out
}

fn fvs(t: &Term, bound: &mut Vec<Name>, out: &mut Vec<Name>) {
    match t {
        Term::Var(x) => {
            if !bound.iter().any(|b| b == x) {
                out.push(x.clone());
            }
        }
        Term::Const(_) => {}
        Term::RApp(f, a) => {
            fvs(f, bound, out);
            fvs(a, bound, out);
        }
        Term::LApp(n, m) => {
            fvs(n, bound, out);
            fvs(m, bound, out);
        }
        Term::Tensor(l, r) => {
            fvs(l, bound, out);
            fvs(r, bound, out);
        }
        Term::RAbs(x, b) | Term::LAbs(x, b) => {
            bound.push(x.clone());
            fvs(b, bound, out);
            bound.pop();
        }
        Term::LetPair(x, y, s, b) => {
            bound.push(x.clone());
            bound.push(y.clone());
            fvs(b, bound, out);
            bound.pop();
            bound.pop();
            fvs(s, bound, out);
        }
    }
}

/// Set of free variables.
pub fn free_vars(t: &Term) -> BTreeSet<Name> {
    free_var_sequence(t).into_iter().collect()
}

/// Sequence of free occurrences of one binder inside a body, as positions in
/// the body's full free-variable sequence.
fn occurrence_positions(seq: &[Name], x: &str) -> Vec<usize> {
    seq.iter()
        .enumerate()
        .filter(|(_, n)| n.as_str() == x)
        .map(|(i, _)| i)
        .collect()
}

/// Checks a term against a discipline.
///
/// Scoping is always checked. Under disciplines without contraction or
/// weakening, each binder must be used exactly once; without exchange, a
/// right abstraction must bind the rightmost free variable of its body, a
/// left abstraction the leftmost, and a let-pair the two rightmost in order.
pub fn validate(t: &Term, d: &Discipline) -> ValidationReport {
    let mut violations = Vec::new();
    let mut path = Vec::new();
    check(t, d, &mut path, &mut violations);
    ValidationReport { violations }
}

fn check(t: &Term, d: &Discipline, path: &mut Path, out: &mut Vec<(Path, String)>) {
    match t {
        Term::Var(_) => {}
        Term::Const(c) => {
            if !d.constants.contains(c) {
                out.push((path.clone(), format!("undeclared constant #{c}")));
            }
        }
        Term::RApp(f, a) => {
            descend(f, d, path, 0, out);
            descend(a, d, path, 1, out);
        }
        Term::LApp(n, m) => {
            if !d.left_ops {
                out.push((path.clone(), "left application not enabled".into()));
            }
            descend(n, d, path, 0, out);
            descend(m, d, path, 1, out);
        }
        Term::Tensor(l, r) => {
            if !d.tensor {
                out.push((path.clone(), "tensor not enabled".into()));
            }
            descend(l, d, path, 0, out);
            descend(r, d, path, 1, out);
        }
        Term::RAbs(x, b) => {
            check_binder(b, x, BinderKind::Right, d, path, out);
            descend(b, d, path, 0, out);
        }
        Term::LAbs(x, b) => {
            if !d.left_ops {
                out.push((path.clone(), "left abstraction not enabled".into()));
            }
            check_binder(b, x, BinderKind::Left, d, path, out);
            descend(b, d, path, 0, out);
        }
        Term::LetPair(x, y, s, b) => {
            if !d.tensor {
                out.push((path.clone(), "let-pair not enabled".into()));
            }
            if x == y {
                out.push((path.clone(), format!("duplicate let-pair binder {x}")));
            }
            let seq = free_var_sequence(b);
            let px = occurrence_positions(&seq, x);
            let py = occurrence_positions(&seq, y);
            usage_check(&px, x, d, path, out);
            usage_check(&py, y, d, path, out);
            if !d.exchange && px.len() == 1 && py.len() == 1 {
                // Body context must end with x, y in that order.
                if py[0] != seq.len() - 1 || px[0] + 1 != py[0] {
                    out.push((
                        path.clone(),
                        format!("let-pair must bind the two rightmost free variables ({x}, {y})"),
                    ));
                }
            }
            descend(s, d, path, 0, out);
            descend(b, d, path, 1, out);
        }
    }
}

enum BinderKind {
    Right,
    Left,
}

fn check_binder(
    body: &Term,
    x: &str,
    kind: BinderKind,
    d: &Discipline,
    path: &Path,
    out: &mut Vec<(Path, String)>,
) {
    let seq = free_var_sequence(body);
    let ps = occurrence_positions(&seq, x);
    usage_check(&ps, x, d, path, out);
    if !d.exchange && ps.len() == 1 {
        match kind {
            BinderKind::Right => {
                if ps[0] != seq.len() - 1 {
                    out.push((
                        path.clone(),
                        format!("abstraction must bind the rightmost free variable ({x})"),
                    ));
                }
            }
            BinderKind::Left => {
                if ps[0] != 0 {
                    out.push((
                        path.clone(),
                        format!("left abstraction must bind the leftmost free variable ({x})"),
                    ));
                }
            }
        }
    }
}

fn usage_check(ps: &[usize], x: &str, d: &Discipline, path: &Path, out: &mut Vec<(Path, String)>) {
    if ps.is_empty() && !d.weakening {
        out.push((path.clone(), format!("unused binder {x}")));
    }
    if ps.len() > 1 && !d.contraction {
        out.push((path.clone(), format!("binder {x} used {} times", ps.len())));
    }
}

fn descend(t: &Term, d: &Discipline, path: &mut Path, idx: u8, out: &mut Vec<(Path, String)>) {
    path.push(idx);
    check(t, d, path, out);
    path.pop();
}

/// Picks a name of the shape `base`, `base1`, `base2`, ... avoiding `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<Name>) -> Name {
    let stem: String = base.chars().take_while(|c| !c.is_ascii_digit()).collect();
    let stem = if stem.is_empty() { "x".to_string() } else { stem };
    if !avoid.contains(base) {
        return base.to_string();
    }
    for i in 1u64.. {
        let cand = format!("{stem}{i}");
        if !avoid.contains(&cand) {
            return cand;
        }
    }
    unreachable!()
}

/// Capture-avoiding substitution of `s` for free occurrences of `x`.
pub fn substitute(t: &Term, x: &str, s: &Term) -> Term {
    let fv_s = free_vars(s);
    subst(t, x, s, &fv_s)
}

fn subst(t: &Term, x: &str, s: &Term, fv_s: &BTreeSet<Name>) -> Term {
    match t {
        Term::Var(y) => {
            if y == x {
                s.clone()
            } else {
                t.clone()
            }
        }
        Term::Const(_) => t.clone(),
        Term::RApp(f, a) => rapp(subst(f, x, s, fv_s), subst(a, x, s, fv_s)),
        Term::LApp(n, m) => lapp(subst(n, x, s, fv_s), subst(m, x, s, fv_s)),
        Term::Tensor(l, r) => tensor(subst(l, x, s, fv_s), subst(r, x, s, fv_s)),
        Term::RAbs(y, b) => {
            if y == x {
                return t.clone();
            }
            let (y2, b2) = rebind(y, b, x, fv_s);
            Term::RAbs(y2.clone(), Box::new(subst(&b2, x, s, fv_s)))
        }
        Term::LAbs(y, b) => {
            if y == x {
                return t.clone();
            }
            let (y2, b2) = rebind(y, b, x, fv_s);
            Term::LAbs(y2.clone(), Box::new(subst(&b2, x, s, fv_s)))
        }
        Term::LetPair(p, q, scrut, body) => {
            let scrut2 = subst(scrut, x, s, fv_s);
            if p == x || q == x {
                // x is shadowed in the body
                return Term::LetPair(p.clone(), q.clone(), Box::new(scrut2), body.clone());
            }
            let mut p2 = p.clone();
            let mut q2 = q.clone();
            let mut body2 = (**body).clone();
            if fv_s.contains(p) && free_vars(body).contains(x) {
                let mut avoid: BTreeSet<Name> = free_vars(&body2);
                avoid.extend(fv_s.iter().cloned());
                avoid.insert(q2.clone());
                p2 = fresh_name(p, &avoid);
                body2 = substitute(&body2, p, &Term::Var(p2.clone()));
            }
            if fv_s.contains(&q2) && free_vars(&body2).contains(x) {
                let mut avoid: BTreeSet<Name> = free_vars(&body2);
                avoid.extend(fv_s.iter().cloned());
                avoid.insert(p2.clone());
                q2 = fresh_name(q, &avoid);
                body2 = substitute(&body2, q, &Term::Var(q2.clone()));
            }
            Term::LetPair(p2, q2, Box::new(scrut2), Box::new(subst(&body2, x, s, fv_s)))
        }
    }
}

fn rebind(y: &str, b: &Term, x: &str, fv_s: &BTreeSet<Name>) -> (Name, Term) {
    debug_assert_ne!(y, x, "shadowed binders are handled by the caller");
    if fv_s.contains(y) && free_vars(b).contains(x) {
        let mut avoid: BTreeSet<Name> = free_vars(b);
        avoid.extend(fv_s.iter().cloned());
        let y2 = fresh_name(y, &avoid);
        let b2 = substitute(b, y, &Term::Var(y2.clone()));
        (y2, b2)
    } else {
        (y.to_string(), (*b).clone())
    }
}

/// Alpha-equality.
pub fn alpha_eq(t1: &Term, t2: &Term) -> bool {
    let mut env1: Vec<Name> = Vec::new();
    let mut env2: Vec<Name> = Vec::new();
    aeq(t1, t2, &mut env1, &mut env2)
}

fn lookup(env: &[Name], x: &str) -> Option<usize> {
    env.iter().rposition(|n| n == x)
}

fn aeq(t1: &Term, t2: &Term, e1: &mut Vec<Name>, e2: &mut Vec<Name>) -> bool {
    match (t1, t2) {
        (Term::Var(x), Term::Var(y)) => match (lookup(e1, x), lookup(e2, y)) {
            (Some(i), Some(j)) => i == j,
            (None, None) => x == y,
            _ => false,
        },
        (Term::Const(a), Term::Const(b)) => a == b,
        (Term::RApp(f1, a1), Term::RApp(f2, a2)) => {
            aeq(f1, f2, e1, e2) && aeq(a1, a2, e1, e2)
        }
        (Term::LApp(n1, m1), Term::LApp(n2, m2)) => {
            aeq(n1, n2, e1, e2) && aeq(m1, m2, e1, e2)
        }
        (Term::Tensor(l1, r1), Term::Tensor(l2, r2)) => {
            aeq(l1, l2, e1, e2) && aeq(r1, r2, e1, e2)
        }
        (Term::RAbs(x, b1), Term::RAbs(y, b2)) | (Term::LAbs(x, b1), Term::LAbs(y, b2)) => {
            e1.push(x.clone());
            e2.push(y.clone());
            let r = aeq(b1, b2, e1, e2);
            e1.pop();
            e2.pop();
            r
        }
        (Term::LetPair(x1, y1, s1, b1), Term::LetPair(x2, y2, s2, b2)) => {
            if !aeq(s1, s2, e1, e2) {
                return false;
            }
            e1.push(x1.clone());
            e1.push(y1.clone());
            e2.push(x2.clone());
            e2.push(y2.clone());
            let r = aeq(b1, b2, e1, e2);
            e1.truncate(e1.len() - 2);
            e2.truncate(e2.len() - 2);
            r
        }
        _ => false,
    }
}

/// Renames binders so that all binder names in the term are pairwise distinct
/// and disjoint from the free variables.
pub fn freshen(t: &Term) -> Term {
    let mut used: BTreeSet<Name> = free_vars(t);
    fresh_walk(t, &mut used)
}

fn fresh_walk(t: &Term, used: &mut BTreeSet<Name>) -> Term {
    match t {
        Term::Var(_) | Term::Const(_) => t.clone(),
        Term::RApp(f, a) => rapp(fresh_walk(f, used), fresh_walk(a, used)),
        Term::LApp(n, m) => lapp(fresh_walk(n, used), fresh_walk(m, used)),
        Term::Tensor(l, r) => tensor(fresh_walk(l, used), fresh_walk(r, used)),
        Term::RAbs(x, b) => {
            let (x2, b2) = fresh_binder(x, b, used);
            Term::RAbs(x2, Box::new(fresh_walk(&b2, used)))
        }
        Term::LAbs(x, b) => {
            let (x2, b2) = fresh_binder(x, b, used);
            Term::LAbs(x2, Box::new(fresh_walk(&b2, used)))
        }
        Term::LetPair(x, y, s, b) => {
            let s2 = fresh_walk(s, used);
            let (x2, b1) = fresh_binder(x, b, used);
            let tmp = Term::RAbs("_".into(), Box::new(b1));
            let b1 = match tmp {
                Term::RAbs(_, b) => *b,
                _ => unreachable!(),
            };
            let (y2, b2) = fresh_binder(y, &b1, used);
            Term::LetPair(x2, y2, Box::new(s2), Box::new(fresh_walk(&b2, used)))
        }
    }
}

fn fresh_binder(x: &str, b: &Term, used: &mut BTreeSet<Name>) -> (Name, Term) {
    if used.contains(x) {
        let x2 = fresh_name(x, used);
        used.insert(x2.clone());
        (x2.clone(), substitute(b, x, &Term::Var(x2)))
    } else {
        used.insert(x.to_string());
        (x.to_string(), b.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn planar() -> Discipline {
        Discipline::planar()
    }

    #[test]
    fn parse_identity() {
        let t = parse("\\x.x", &planar()).unwrap();
        assert_eq!(t, rabs("x", var("x")));
    }

    #[test]
    fn parse_b_representative() {
        let t = parse("\\x.\\y.\\z. x (y z)", &planar()).unwrap();
        let b = rabs("x", rabs("y", rabs("z", rapp(var("x"), rapp(var("y"), var("z"))))));
        assert_eq!(t, b);
        assert!(validate(&t, &planar()).ok());
    }

    #[test]
    fn parse_biplanar_left_app() {
        let d = Discipline::biplanar();
        let t = parse("\\>x. \\<y. (x <@ y)", &d).unwrap();
        assert_eq!(t, rabs("x", labs("y", lapp(var("x"), var("y")))));
    }

    #[test]
    fn validate_rightmost_binding() {
        let d = planar();
        let ok = parse("\\x.\\y.x y", &d).unwrap();
        assert!(validate(&ok, &d).ok());
        let bad = parse("\\x.\\y.y x", &d).unwrap();
        let rep = validate(&bad, &d);
        assert!(!rep.ok());
        // The violation is at the inner abstraction.
        assert_eq!(rep.violations[0].0, vec![0]);
        assert!(validate(&bad, &Discipline::linear()).ok());
    }

    #[test]
    fn fv_sequence_order() {
        let d = Discipline::ordinary();
        let t = parse("x y", &d).unwrap();
        assert_eq!(free_var_sequence(&t), vec!["x".to_string(), "y".to_string()]);

        let t = parse("let a*b = z in a b", &Discipline::planar_tensor()).unwrap();
        assert_eq!(free_var_sequence(&t), vec!["z".to_string()]);

        let t = parse("(y <@ x)", &Discipline::biplanar()).unwrap();
        assert_eq!(free_var_sequence(&t), vec!["y".to_string(), "x".to_string()]);
    }

    #[test]
    fn letpair_positional_check() {
        let d = Discipline::planar_tensor();
        let good = parse("\\u.let a*b = u in a b", &d).unwrap();
        assert!(validate(&good, &d).ok());
        let bad = parse("\\u.let a*b = u in b a", &d).unwrap();
        assert!(!validate(&bad, &d).ok());
    }

    #[test]
    fn substitution_examples() {
        let d = Discipline::ordinary();
        let t = parse("x y", &d).unwrap();
        let s = parse("\\z.z", &d).unwrap();
        assert_eq!(substitute(&t, "x", &s), rapp(rabs("z", var("z")), var("y")));

        // Capture avoidance: (\y.x y)[x := y] renames the binder.
        let t = parse("\\y.x y", &d).unwrap();
        let r = substitute(&t, "x", &var("y"));
        assert!(alpha_eq(&r, &parse("\\w.y w", &d).unwrap()));
        // And the free y stays free.
        assert_eq!(free_var_sequence(&r), vec!["y".to_string()]);

        // M = x: substitution is the identity on the variable itself.
        assert_eq!(substitute(&var("x"), "x", &s), s);
    }

    #[test]
    fn alpha_examples() {
        let d = Discipline::ordinary();
        let a = parse("\\x.x", &d).unwrap();
        let b = parse("\\y.y", &d).unwrap();
        assert!(alpha_eq(&a, &b));
        let a = parse("\\x.\\y.x y", &d).unwrap();
        let b = parse("\\y.\\x.y x", &d).unwrap();
        assert!(alpha_eq(&a, &b));
        let c = parse("\\x.\\y.y x", &d).unwrap();
        assert!(!alpha_eq(&a, &c));
    }

    #[test]
    fn roundtrip_examples() {
        let cases = [
            ("\\x.x", Discipline::planar()),
            ("\\x.\\y.\\z. x (y z)", Discipline::planar()),
            ("\\>x. \\<y. (x <@ y)", Discipline::biplanar()),
            ("\\u.let a*b = u in a b", Discipline::planar_tensor()),
            ("\\u.(\\v.v) * u", Discipline::planar_tensor()),
        ];
        for (src, d) in cases {
            let t = parse(src, &d).unwrap();
            let t2 = parse(&pretty(&t), &d).unwrap();
            assert!(alpha_eq(&t, &t2), "roundtrip failed for {src}: {}", pretty(&t));
        }
    }

    #[test]
    fn constants_checked() {
        let d = Discipline::planar().with_constants(["c"]);
        assert!(parse("#c", &d).is_ok());
        assert!(parse("#d", &d).is_err());
        let t = cst("d");
        assert!(!validate(&t, &d).ok());
    }

    #[test]
    fn substitute_commutes_with_fv_sequence() {
        let d = Discipline::ordinary();
        let t = parse("x (\\y.y x) z", &d).unwrap();
        let closed = parse("\\w.w", &d).unwrap();
        let r = substitute(&t, "x", &closed);
        let before: Vec<_> = free_var_sequence(&t)
            .into_iter()
            .filter(|n| n != "x")
            .collect();
        assert_eq!(free_var_sequence(&r), before);
    }

    #[test]
    fn discipline_flag_invariant() {
        assert!(Discipline::custom(false, false, false, true, true).is_err());
    }
}
