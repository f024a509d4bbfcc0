//! Translations between calculi and combinatory bases.
//!
//! Combinatory expressions ([`CombTerm`]) are polynomials: applicative
//! expressions over a basis signature, structure elements (holes), term
//! constants, and variables. Bracket abstraction eliminates a variable from a
//! polynomial; one procedure per basis. [`compile_tensor`] translates closed
//! planar tensor terms to the B/I/I×/L/P basis, [`cps_translate`] is the
//! call-by-value CPS translation, and [`left_inverse`] builds, for a closed
//! constant-free planar term `M`, a term `N` with `N M` beta-equal to the
//! identity.

use crate::rewrite::{equal, EqVerdict};
use crate::syntax::{
    self, free_vars, labs, lapp, rabs, rapp, substitute, validate, Discipline, Name, Term,
};
use std::fmt;

/// Nullary basis symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CombSym {
    S,
    K,
    B,
    C,
    I,
    ITimes,
    L,
    P,
    BRight,
    BLeft,
    DRight,
    DLeft,
    IRight,
    ILeft,
    /// The pre-applied identity `•I` of the circle basis.
    IDot,
}

impl CombSym {
    pub fn name(self) -> &'static str {
        match self {
            CombSym::S => "S",
            CombSym::K => "K",
            CombSym::B => "B",
            CombSym::C => "C",
            CombSym::I => "I",
            CombSym::ITimes => "IX",
            CombSym::L => "L",
            CombSym::P => "P",
            CombSym::BRight => "B>",
            CombSym::BLeft => "B<",
            CombSym::DRight => "D>",
            CombSym::DLeft => "D<",
            CombSym::IRight => "I>",
            CombSym::ILeft => "I<",
            CombSym::IDot => "Idot",
        }
    }

    pub fn from_name(s: &str) -> Option<CombSym> {
        Some(match s {
            "S" => CombSym::S,
            "K" => CombSym::K,
            "B" => CombSym::B,
            "C" => CombSym::C,
            "I" => CombSym::I,
            "IX" => CombSym::ITimes,
            "L" => CombSym::L,
            "P" => CombSym::P,
            "B>" => CombSym::BRight,
            "B<" => CombSym::BLeft,
            "D>" => CombSym::DRight,
            "D<" => CombSym::DLeft,
            "I>" => CombSym::IRight,
            "I<" => CombSym::ILeft,
            "Idot" => CombSym::IDot,
            _ => return None,
        })
    }
}

/// Unary operation symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnarySym {
    /// `(•a) x = x a`
    Dot,
    /// `(†>a) x = x <@ a`
    DagRight,
    /// `x <@ (†<a) = a x`
    DagLeft,
    /// `(a°) x y = x (a y)`
    Circ,
}

impl UnarySym {
    pub fn name(self) -> &'static str {
        match self {
            UnarySym::Dot => "dot",
            UnarySym::DagRight => "dagr",
            UnarySym::DagLeft => "dagl",
            UnarySym::Circ => "circ",
        }
    }

    pub fn from_name(s: &str) -> Option<UnarySym> {
        Some(match s {
            "dot" => UnarySym::Dot,
            "dagr" => UnarySym::DagRight,
            "dagl" => UnarySym::DagLeft,
            "circ" => UnarySym::Circ,
        _ => return None,
        })
    }
}

/// Named combinator signatures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    SK,
    BCI,
    BIDot,
    BIIDot,
    BIILP,
    BiBDI,
    BIIDotCirc,
}

impl Basis {
    pub fn symbols(self) -> &'static [CombSym] {
        use CombSym::*;
        match self {
            Basis::SK => &[S, K],
            Basis::BCI => &[B, C, I],
            Basis::BIDot => &[B, I],
            Basis::BIIDot => &[B, I, ITimes],
            Basis::BIILP => &[B, I, ITimes, L, P],
            Basis::BiBDI => &[BRight, BLeft, DRight, DLeft, IRight, ILeft],
            Basis::BIIDotCirc => &[B, I, IDot],
        }
    }

    pub fn unaries(self) -> &'static [UnarySym] {
        use UnarySym::*;
        match self {
            Basis::SK | Basis::BCI => &[],
            Basis::BIDot | Basis::BIIDot | Basis::BIILP => &[Dot],
            Basis::BiBDI => &[DagRight, DagLeft],
            Basis::BIIDotCirc => &[Circ],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Basis::SK => "sk",
            Basis::BCI => "bci",
            Basis::BIDot => "bidot",
            Basis::BIIDot => "biidot",
            Basis::BIILP => "biilp",
            Basis::BiBDI => "bibdi",
            Basis::BIIDotCirc => "biidotcirc",
        }
    }

    pub fn from_name(s: &str) -> Option<Basis> {
        Some(match s {
            "sk" => Basis::SK,
            "bci" => Basis::BCI,
            "bidot" => Basis::BIDot,
            "biidot" => Basis::BIIDot,
            "biilp" => Basis::BIILP,
            "bibdi" => Basis::BiBDI,
            "biidotcirc" => Basis::BIIDotCirc,
            _ => return None,
        })
    }

    /// Discipline in which this basis' lambda representatives live.
    pub fn expansion_discipline(self) -> Discipline {
        match self {
            Basis::SK => Discipline::ordinary(),
            Basis::BCI => Discipline::linear(),
            Basis::BIDot | Basis::BIIDot | Basis::BIIDotCirc => Discipline::planar(),
            Basis::BIILP => Discipline::planar_tensor().with_eta(true),
            Basis::BiBDI => Discipline::biplanar(),
        }
    }
}

/// Applicative expression over a basis.
///
/// `Hole(i)` is a reference to the `i`-th element of a caller-supplied
/// environment of structure elements; `Const` is an inert term constant.
/// `Var` appears only in intermediate polynomial stages. `LApp(n, m)` feeds
/// `n` into `m` from the left and occurs only over the bi-planar basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CombTerm {
    Sym(CombSym),
    UnaryOp(UnarySym, Box<CombTerm>),
    App(Box<CombTerm>, Box<CombTerm>),
    LApp(Box<CombTerm>, Box<CombTerm>),
    Hole(usize),
    Const(Name),
    Var(Name),
}

pub fn sym(s: CombSym) -> CombTerm {
    CombTerm::Sym(s)
}
pub fn capp(f: CombTerm, a: CombTerm) -> CombTerm {
    CombTerm::App(Box::new(f), Box::new(a))
}
pub fn clapp(n: CombTerm, m: CombTerm) -> CombTerm {
    CombTerm::LApp(Box::new(n), Box::new(m))
}
pub fn cvar(x: &str) -> CombTerm {
    CombTerm::Var(x.to_string())
}
pub fn unary(op: UnarySym, t: CombTerm) -> CombTerm {
    CombTerm::UnaryOp(op, Box::new(t))
}
pub fn capps(f: CombTerm, args: impl IntoIterator<Item = CombTerm>) -> CombTerm {
    args.into_iter().fold(f, capp)
}

impl CombTerm {
    /// Left-to-right variable occurrence sequence.
    pub fn var_sequence(&self) -> Vec<Name> {
        let mut out = Vec::new();
        self.vs(&mut out);
        out
    }

    fn vs(&self, out: &mut Vec<Name>) {
        match self {
            CombTerm::Var(x) => out.push(x.clone()),
            CombTerm::Sym(_) | CombTerm::Hole(_) | CombTerm::Const(_) => {}
            CombTerm::UnaryOp(_, t) => t.vs(out),
            CombTerm::App(f, a) => {
                f.vs(out);
                a.vs(out);
            }
            CombTerm::LApp(n, m) => {
                n.vs(out);
                m.vs(out);
            }
        }
    }

    pub fn is_var_free(&self) -> bool {
        self.var_sequence().is_empty()
    }

    fn count_var(&self, x: &str) -> usize {
        self.var_sequence().iter().filter(|v| v.as_str() == x).count()
    }
}

impl fmt::Display for CombTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &CombTerm, parens: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                CombTerm::Sym(s) => write!(f, "{}", s.name()),
                CombTerm::Var(x) => write!(f, "{x}"),
                CombTerm::Const(c) => write!(f, "#{c}"),
                CombTerm::Hole(i) => write!(f, "?{i}"),
                CombTerm::UnaryOp(op, t) => {
                    write!(f, "[{} ", op.name())?;
                    go(t, false, f)?;
                    write!(f, "]")
                }
                CombTerm::App(g, a) => {
                    if parens {
                        write!(f, "(")?;
                    }
                    go(g, false, f)?;
                    write!(f, " ")?;
                    go(a, true, f)?;
                    if parens {
                        write!(f, ")")?;
                    }
                    Ok(())
                }
                CombTerm::LApp(n, m) => {
                    write!(f, "(")?;
                    go(n, false, f)?;
                    write!(f, " <@ ")?;
                    go(m, true, f)?;
                    write!(f, ")")
                }
            }
        }
        go(self, false, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompileError {
    #[error("variable {0} occurs {1} times, expected exactly once")]
    NotExactlyOnce(Name, usize),
    #[error("variable {0} is not the rightmost variable")]
    NotRightmost(Name),
    #[error("variable {0} is not the leftmost variable")]
    NotLeftmost(Name),
    #[error("operand must be variable-free for the pre-application clause")]
    OpenOperand,
    #[error("variable under a unary operation cannot be abstracted")]
    VarUnderUnary,
    #[error("left application is not part of this basis")]
    LeftAppInBasis,
    #[error("input term is not closed")]
    NotClosed,
    #[error("input term is invalid for the discipline: {0}")]
    Invalid(String),
    #[error("constants are not allowed here")]
    ConstantPresent,
}

fn ensure_once(m: &CombTerm, x: &str) -> Result<(), CompileError> {
    let n = m.count_var(x);
    if n != 1 {
        return Err(CompileError::NotExactlyOnce(x.to_string(), n));
    }
    Ok(())
}

/// SK abstraction: `(λ*x.M) a ≃ M[a/x]` over a partial combinatory algebra.
pub fn abstract_sk(m: &CombTerm, x: &str) -> Result<CombTerm, CompileError> {
    Ok(match m {
        CombTerm::Var(y) if y == x => capp(capp(sym(CombSym::S), sym(CombSym::K)), sym(CombSym::K)),
        CombTerm::Var(_) | CombTerm::Sym(_) | CombTerm::Hole(_) | CombTerm::Const(_) => {
            capp(sym(CombSym::K), m.clone())
        }
        CombTerm::UnaryOp(_, t) => {
            if t.count_var(x) > 0 {
                return Err(CompileError::VarUnderUnary);
            }
            capp(sym(CombSym::K), m.clone())
        }
        CombTerm::App(f, a) => capp(
            capp(sym(CombSym::S), abstract_sk(f, x)?),
            abstract_sk(a, x)?,
        ),
        CombTerm::LApp(_, _) => return Err(CompileError::LeftAppInBasis),
    })
}

/// Linear abstraction over B, C, I: `x` must occur exactly once.
pub fn abstract_bci(m: &CombTerm, x: &str) -> Result<CombTerm, CompileError> {
    ensure_once(m, x)?;
    abstract_bci_at(m, x)
}

fn abstract_bci_at(m: &CombTerm, x: &str) -> Result<CombTerm, CompileError> {
    match m {
        CombTerm::Var(y) if y == x => Ok(sym(CombSym::I)),
        CombTerm::App(f, a) => {
            if f.count_var(x) == 1 {
                Ok(capp(
                    capp(sym(CombSym::C), abstract_bci_at(f, x)?),
                    (**a).clone(),
                ))
            } else if a.count_var(x) == 1 {
                Ok(capp(
                    capp(sym(CombSym::B), (**f).clone()),
                    abstract_bci_at(a, x)?,
                ))
            } else {
                Err(CompileError::NotExactlyOnce(x.to_string(), 0))
            }
        }
        CombTerm::UnaryOp(_, _) => Err(CompileError::VarUnderUnary),
        CombTerm::LApp(_, _) => Err(CompileError::LeftAppInBasis),
        _ => Err(CompileError::NotExactlyOnce(x.to_string(), 0)),
    }
}

/// Planar abstraction over B, I and the pre-application `•`. `x` must occur
/// exactly once and be the rightmost variable of `m`.
pub fn abstract_planar(m: &CombTerm, x: &str) -> Result<CombTerm, CompileError> {
    ensure_once(m, x)?;
    match m.var_sequence().last() {
        Some(last) if last == x => {}
        _ => return Err(CompileError::NotRightmost(x.to_string())),
    }
    abstract_planar_at(m, x)
}

fn abstract_planar_at(m: &CombTerm, x: &str) -> Result<CombTerm, CompileError> {
    match m {
        CombTerm::Var(y) if y == x => Ok(sym(CombSym::I)),
        CombTerm::App(f, a) => {
            if a.count_var(x) == 1 {
                Ok(capp(
                    capp(sym(CombSym::B), (**f).clone()),
                    abstract_planar_at(a, x)?,
                ))
            } else if f.count_var(x) == 1 {
                if !a.is_var_free() {
                    return Err(CompileError::OpenOperand);
                }
                Ok(capp(
                    capp(sym(CombSym::B), unary(UnarySym::Dot, (**a).clone())),
                    abstract_planar_at(f, x)?,
                ))
            } else {
                Err(CompileError::NotExactlyOnce(x.to_string(), 0))
            }
        }
        CombTerm::UnaryOp(_, _) => Err(CompileError::VarUnderUnary),
        CombTerm::LApp(_, _) => Err(CompileError::LeftAppInBasis),
        _ => Err(CompileError::NotExactlyOnce(x.to_string(), 0)),
    }
}

/// Right abstraction over the bi-planar basis: `(λ*>x.M) a = M[a/x]` under
/// right application. `x` must occur exactly once and be rightmost.
pub fn abstract_right(m: &CombTerm, x: &str) -> Result<CombTerm, CompileError> {
    ensure_once(m, x)?;
    match m.var_sequence().last() {
        Some(last) if last == x => {}
        _ => return Err(CompileError::NotRightmost(x.to_string())),
    }
    abstract_right_at(m, x)
}

fn abstract_right_at(m: &CombTerm, x: &str) -> Result<CombTerm, CompileError> {
    use CombSym::*;
    match m {
        CombTerm::Var(y) if y == x => Ok(sym(IRight)),
        CombTerm::App(f, a) => {
            if a.count_var(x) == 1 {
                Ok(capp(capp(sym(BRight), (**f).clone()), abstract_right_at(a, x)?))
            } else if f.count_var(x) == 1 {
                if !a.is_var_free() {
                    return Err(CompileError::OpenOperand);
                }
                let feeder = unary(
                    UnarySym::DagRight,
                    capp(capp(sym(DRight), sym(ILeft)), (**a).clone()),
                );
                Ok(capp(capp(sym(BRight), feeder), abstract_right_at(f, x)?))
            } else {
                Err(CompileError::NotExactlyOnce(x.to_string(), 0))
            }
        }
        CombTerm::LApp(n, g) => {
            if g.count_var(x) == 1 {
                Ok(clapp(
                    (**n).clone(),
                    clapp(abstract_right_at(g, x)?, sym(DLeft)),
                ))
            } else if n.count_var(x) == 1 {
                if !g.is_var_free() {
                    return Err(CompileError::OpenOperand);
                }
                Ok(capp(
                    capp(sym(BRight), unary(UnarySym::DagRight, (**g).clone())),
                    abstract_right_at(n, x)?,
                ))
            } else {
                Err(CompileError::NotExactlyOnce(x.to_string(), 0))
            }
        }
        CombTerm::UnaryOp(_, _) => Err(CompileError::VarUnderUnary),
        _ => Err(CompileError::NotExactlyOnce(x.to_string(), 0)),
    }
}

/// Left abstraction over the bi-planar basis: `a <@ (λ*<y.N) = N[a/y]`.
/// `y` must occur exactly once and be leftmost.
pub fn abstract_left(m: &CombTerm, y: &str) -> Result<CombTerm, CompileError> {
    ensure_once(m, y)?;
    match m.var_sequence().first() {
        Some(first) if first == y => {}
        _ => return Err(CompileError::NotLeftmost(y.to_string())),
    }
    abstract_left_at(m, y)
}

fn abstract_left_at(m: &CombTerm, y: &str) -> Result<CombTerm, CompileError> {
    use CombSym::*;
    match m {
        CombTerm::Var(z) if z == y => Ok(sym(ILeft)),
        CombTerm::LApp(n, g) => {
            if n.count_var(y) == 1 {
                Ok(clapp(
                    abstract_left_at(n, y)?,
                    clapp((**g).clone(), sym(BLeft)),
                ))
            } else if g.count_var(y) == 1 {
                if !n.is_var_free() {
                    return Err(CompileError::OpenOperand);
                }
                let feeder = unary(
                    UnarySym::DagLeft,
                    clapp((**n).clone(), clapp(sym(IRight), sym(DLeft))),
                );
                Ok(clapp(abstract_left_at(g, y)?, clapp(feeder, sym(BLeft))))
            } else {
                Err(CompileError::NotExactlyOnce(y.to_string(), 0))
            }
        }
        CombTerm::App(f, a) => {
            if f.count_var(y) == 1 {
                Ok(capp(capp(sym(DRight), abstract_left_at(f, y)?), (**a).clone()))
            } else if a.count_var(y) == 1 {
                if !f.is_var_free() {
                    return Err(CompileError::OpenOperand);
                }
                Ok(clapp(
                    abstract_left_at(a, y)?,
                    clapp(unary(UnarySym::DagLeft, (**f).clone()), sym(BLeft)),
                ))
            } else {
                Err(CompileError::NotExactlyOnce(y.to_string(), 0))
            }
        }
        CombTerm::UnaryOp(_, _) => Err(CompileError::VarUnderUnary),
        _ => Err(CompileError::NotExactlyOnce(y.to_string(), 0)),
    }
}

/// Abstraction dispatch by basis (the right abstraction for BiBDI).
pub fn abstract_in(basis: Basis, m: &CombTerm, x: &str) -> Result<CombTerm, CompileError> {
    match basis {
        Basis::SK => abstract_sk(m, x),
        Basis::BCI => abstract_bci(m, x),
        Basis::BIDot | Basis::BIIDot | Basis::BIILP | Basis::BIIDotCirc => abstract_planar(m, x),
        Basis::BiBDI => abstract_right(m, x),
    }
}

/// Translation of a closed planar tensor term to the B/I/I×/L/P basis.
///
/// Reading each basis symbol as its lambda representative yields a term
/// beta-eta-equal to the input.
pub fn compile_tensor(m: &Term) -> Result<CombTerm, CompileError> {
    let d = Discipline::planar_tensor().with_constants(constants_of(m));
    let rep = validate(m, &d);
    if !rep.ok() {
        return Err(CompileError::Invalid(format!("{:?}", rep.violations[0])));
    }
    if !m.is_closed() {
        return Err(CompileError::NotClosed);
    }
    tr(m)
}

fn constants_of(t: &Term) -> Vec<Name> {
    fn go(t: &Term, out: &mut Vec<Name>) {
        match t {
            Term::Const(c) => out.push(c.clone()),
            Term::Var(_) => {}
            Term::RApp(a, b) | Term::LApp(a, b) | Term::Tensor(a, b) => {
                go(a, out);
                go(b, out);
            }
            Term::RAbs(_, b) | Term::LAbs(_, b) => go(b, out),
            Term::LetPair(_, _, s, b) => {
                go(s, out);
                go(b, out);
            }
        }
    }
    let mut v = Vec::new();
    go(t, &mut v);
    v
}

fn tr(t: &Term) -> Result<CombTerm, CompileError> {
    use CombSym::*;
    Ok(match t {
        Term::Var(x) => cvar(x),
        Term::Const(c) => CombTerm::Const(c.clone()),
        Term::RApp(f, a) => capp(tr(f)?, tr(a)?),
        Term::Tensor(l, r) => capp(capp(sym(P), tr(l)?), tr(r)?),
        Term::LetPair(x, y, s, b) => {
            let body = tr_abs(x, &syntax::rabs(y, (**b).clone()))?;
            capp(capp(sym(L), body), tr(s)?)
        }
        Term::RAbs(x, b) => tr_abs(x, b)?,
        Term::LApp(_, _) | Term::LAbs(_, _) => {
            return Err(CompileError::Invalid("left constructs in tensor term".into()))
        }
    })
}

fn tr_abs(x: &str, body: &Term) -> Result<CombTerm, CompileError> {
    use CombSym::*;
    let in_left = |t: &Term| free_vars(t).contains(x);
    Ok(match body {
        Term::Var(y) if y == x => sym(I),
        Term::RApp(f, a) => {
            if in_left(a) {
                capp(capp(sym(B), tr(f)?), tr_abs(x, a)?)
            } else if in_left(f) {
                capp(
                    capp(sym(B), unary(UnarySym::Dot, tr(a)?)),
                    tr_abs(x, f)?,
                )
            } else {
                return Err(CompileError::NotExactlyOnce(x.to_string(), 0));
            }
        }
        Term::Tensor(l, r) => {
            if in_left(r) {
                capp(capp(sym(B), capp(sym(P), tr(l)?)), tr_abs(x, r)?)
            } else if in_left(l) {
                capp(
                    capp(sym(B), unary(UnarySym::Dot, tr(r)?)),
                    capp(capp(sym(B), sym(P)), tr_abs(x, l)?),
                )
            } else {
                return Err(CompileError::NotExactlyOnce(x.to_string(), 0));
            }
        }
        Term::LetPair(y, z, s, b) => {
            if in_left(s) {
                let inner = tr_abs(y, &syntax::rabs(z, (**b).clone()))?;
                capp(capp(sym(B), capp(sym(L), inner)), tr_abs(x, s)?)
            } else {
                let inner = tr_abs(
                    x,
                    &syntax::rabs(y, syntax::rabs(z, (**b).clone())),
                )?;
                capp(
                    capp(sym(B), unary(UnarySym::Dot, tr(s)?)),
                    capp(capp(sym(B), sym(L)), inner),
                )
            }
        }
        Term::RAbs(y, inner) => {
            let translated = tr_abs(y, inner)?;
            abstract_planar(&translated, x)?
        }
        Term::Var(_) => return Err(CompileError::NotExactlyOnce(x.to_string(), 0)),
        _ => return Err(CompileError::Invalid("unsupported shape".into())),
    })
}

/// The element `B (B (T (B B T)) B) T`, which satisfies the C-combinator
/// axiom whenever `T x y = y x`.
pub fn derive_c_from_t(t: &CombTerm) -> CombTerm {
    use CombSym::*;
    let bbt = capp(capp(sym(B), sym(B)), t.clone());
    let inner = capp(t.clone(), bbt);
    let x = capp(capp(sym(B), inner), sym(B));
    capp(capp(sym(B), x), t.clone())
}

/// Lambda representative of a basis symbol.
pub fn representative(s: CombSym) -> Term {
    use syntax::var;
    match s {
        CombSym::S => rabs(
            "x",
            rabs(
                "y",
                rabs(
                    "z",
                    rapp(rapp(var("x"), var("z")), rapp(var("y"), var("z"))),
                ),
            ),
        ),
        CombSym::K => rabs("x", rabs("y", var("x"))),
        CombSym::B | CombSym::ITimes => rabs(
            "x",
            rabs("y", rabs("z", rapp(var("x"), rapp(var("y"), var("z"))))),
        ),
        CombSym::C => rabs(
            "x",
            rabs("y", rabs("z", rapp(rapp(var("x"), var("z")), var("y")))),
        ),
        CombSym::I => rabs("x", var("x")),
        CombSym::L => rabs(
            "t",
            rabs(
                "u",
                syntax::letpair(
                    "x",
                    "y",
                    var("u"),
                    rapp(rapp(var("t"), var("x")), var("y")),
                ),
            ),
        ),
        CombSym::P => rabs("x", rabs("y", syntax::tensor(var("x"), var("y")))),
        CombSym::BRight => rabs(
            "x",
            rabs("y", rabs("z", rapp(var("x"), rapp(var("y"), var("z"))))),
        ),
        CombSym::BLeft => labs(
            "x",
            labs("y", labs("z", lapp(lapp(var("z"), var("y")), var("x")))),
        ),
        CombSym::DRight => rabs(
            "y",
            rabs("x", labs("z", rapp(lapp(var("z"), var("y")), var("x")))),
        ),
        CombSym::DLeft => labs(
            "y",
            labs("x", rabs("z", lapp(var("x"), rapp(var("y"), var("z"))))),
        ),
        CombSym::IRight => rabs("x", var("x")),
        CombSym::ILeft => labs("x", var("x")),
        CombSym::IDot => rabs("w", rapp(var("w"), rabs("v", var("v")))),
    }
}

/// Expands a combinatory expression into a lambda term, reading each symbol
/// as its representative. Holes are filled from `holes`.
pub fn expand(ct: &CombTerm, holes: &[Term]) -> Result<Term, CompileError> {
    use syntax::var;
    Ok(match ct {
        CombTerm::Sym(s) => representative(*s),
        CombTerm::Var(x) => var(x),
        CombTerm::Const(c) => Term::Const(c.clone()),
        CombTerm::Hole(i) => holes
            .get(*i)
            .cloned()
            .ok_or(CompileError::Invalid(format!("unbound hole ?{i}")))?,
        CombTerm::App(f, a) => rapp(expand(f, holes)?, expand(a, holes)?),
        CombTerm::LApp(n, m) => lapp(expand(n, holes)?, expand(m, holes)?),
        CombTerm::UnaryOp(op, t) => {
            let inner = expand(t, holes)?;
            let fv = free_vars(&inner);
            let pick = |base: &str| syntax::fresh_name(base, &fv);
            match op {
                UnarySym::Dot => {
                    let x = pick("u");
                    rabs(&x, rapp(var(&x), inner))
                }
                UnarySym::Circ => {
                    let x = pick("u");
                    let y = pick("v");
                    rabs(&x, rabs(&y, rapp(var(&x), rapp(inner, var(&y)))))
                }
                UnarySym::DagRight => {
                    let x = pick("u");
                    rabs(&x, lapp(var(&x), inner))
                }
                UnarySym::DagLeft => {
                    let x = pick("u");
                    labs(&x, rapp(inner, var(&x)))
                }
            }
        }
    })
}

/// Call-by-value CPS translation for ordinary terms.
pub fn cps_translate(m: &Term) -> Term {
    let mut used = all_names(m);
    cps(m, &mut used)
}

fn all_names(t: &Term) -> std::collections::BTreeSet<Name> {
    let mut s = free_vars(t);
    fn binders(t: &Term, s: &mut std::collections::BTreeSet<Name>) {
        match t {
            Term::Var(_) | Term::Const(_) => {}
            Term::RApp(a, b) | Term::LApp(a, b) | Term::Tensor(a, b) => {
                binders(a, s);
                binders(b, s);
            }
            Term::RAbs(x, b) | Term::LAbs(x, b) => {
                s.insert(x.clone());
                binders(b, s);
            }
            Term::LetPair(x, y, sc, b) => {
                s.insert(x.clone());
                s.insert(y.clone());
                binders(sc, s);
                binders(b, s);
            }
        }
    }
    binders(t, &mut s);
    s
}

fn cps(m: &Term, used: &mut std::collections::BTreeSet<Name>) -> Term {
    use syntax::var;
    let fresh = |base: &str, used: &mut std::collections::BTreeSet<Name>| {
        let n = syntax::fresh_name(base, used);
        used.insert(n.clone());
        n
    };
    match m {
        Term::Var(_) | Term::Const(_) => {
            let k = fresh("k", used);
            rabs(&k, rapp(var(&k), m.clone()))
        }
        Term::RAbs(x, b) => {
            let k = fresh("k", used);
            let body = cps(b, used);
            rabs(&k, rapp(var(&k), rabs(x, body)))
        }
        Term::RApp(f, a) => {
            let k = fresh("k", used);
            let fv = fresh("f", used);
            let xv = fresh("v", used);
            let cf = cps(f, used);
            let ca = cps(a, used);
            rabs(
                &k,
                rapp(
                    cf,
                    rabs(
                        &fv,
                        rapp(
                            ca,
                            rabs(&xv, rapp(rapp(var(&fv), var(&xv)), var(&k))),
                        ),
                    ),
                ),
            )
        }
        _ => panic!("CPS translation is defined for ordinary terms only"),
    }
}

/// Equality in the computational lambda calculus, decided through the CPS
/// translation: `M =c N` iff the CPS images are beta-eta-equal.
pub fn computational_eq(m: &Term, n: &Term, fuel: u64) -> EqVerdict {
    let d = Discipline::ordinary()
        .with_constants(constants_of(m).into_iter().chain(constants_of(n)))
        .with_eta(true);
    equal(&cps_translate(m), &cps_translate(n), &d, fuel)
}

/// For a closed constant-free planar term `M`, returns `N` with
/// `N M` beta-equal to the identity.
pub fn left_inverse(m: &Term) -> Result<Term, CompileError> {
    if !constants_of(m).is_empty() {
        return Err(CompileError::ConstantPresent);
    }
    let d = Discipline::planar();
    if !m.is_closed() {
        return Err(CompileError::NotClosed);
    }
    let rep = validate(m, &d);
    if !rep.ok() {
        return Err(CompileError::Invalid(format!("{:?}", rep.violations[0])));
    }
    let nf = crate::rewrite::normalize_lo(m, &d, crate::rewrite::DEFAULT_FUEL)
        .into_normal()
        .expect("planar normalization terminates");
    Ok(left_inv_normal(&nf))
}

fn left_inv_normal(m: &Term) -> Term {
    use syntax::var;
    // Peel binders: m = \x.\y1...\ym. x P1 ... Pn
    let mut binders: Vec<Name> = Vec::new();
    let mut body = m;
    while let Term::RAbs(x, b) = body {
        binders.push(x.clone());
        body = b;
    }
    // Spine of the body.
    let mut args: Vec<&Term> = Vec::new();
    let mut head = body;
    while let Term::RApp(f, a) = head {
        args.push(a);
        head = f;
    }
    args.reverse();
    debug_assert!(matches!(head, Term::Var(h) if *h == binders[0]));
    let outer = binders.len() - 1; // m in the construction
    if args.is_empty() {
        return rabs("x", var("x"));
    }
    let id = rabs("z", var("z"));
    let d = Discipline::planar();
    let mut rs = Vec::new();
    for p in &args {
        let mut q: Term = (**p).clone();
        for y in &binders[1..] {
            q = substitute(&q, y, &id);
        }
        let qn = crate::rewrite::normalize_lo(&q, &d, crate::rewrite::DEFAULT_FUEL)
            .into_normal()
            .expect("planar normalization terminates");
        rs.push(left_inv_normal(&qn));
    }
    // N' = \w1...\wn.(R1 w1)...(Rn wn)
    let ws: Vec<String> = (1..=rs.len()).map(|i| format!("w{i}")).collect();
    let mut spine: Option<Term> = None;
    for (r, w) in rs.into_iter().zip(&ws) {
        let piece = rapp(r, var(w));
        spine = Some(match spine {
            None => piece,
            Some(acc) => rapp(acc, piece),
        });
    }
    let mut nprime = spine.unwrap();
    for w in ws.iter().rev() {
        nprime = rabs(w, nprime);
    }
    // N = \u.u N' (\z.z) ... (\z.z)   with one identity per outer binder
    let mut app = rapp(var("u"), nprime);
    for _ in 0..outer {
        app = rapp(app, rabs("z", var("z")));
    }
    rabs("u", app)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{equal, normalize_lo, EqVerdict, DEFAULT_FUEL};
    use crate::syntax::{alpha_eq, parse, pretty};
    use CombSym::*;

    fn holes() -> Vec<Term> {
        vec![]
    }

    /// Oracle: expanding `(λ*x.M) #a` and `M[#a/x]` into lambda terms of the
    /// basis' discipline must give alpha-equal normal forms.
    fn abstraction_oracle(basis: Basis, m: &CombTerm, x: &str) {
        let abs = abstract_in(basis, m, x).expect("abstraction");
        assert!(
            !abs.var_sequence().contains(&x.to_string()),
            "abstracted variable still free"
        );
        let mut d = basis.expansion_discipline().with_constants(["a", "c"]);
        d.eta = false;
        let lhs = capp(abs, CombTerm::Const("a".into()));
        let subst = subst_var(m, x, &CombTerm::Const("a".into()));
        let lt = expand(&lhs, &holes()).unwrap();
        let rt = expand(&subst, &holes()).unwrap();
        let ln = normalize_lo(&lt, &d, DEFAULT_FUEL).into_normal().unwrap();
        let rn = normalize_lo(&rt, &d, DEFAULT_FUEL).into_normal().unwrap();
        assert!(
            alpha_eq(&ln, &rn),
            "oracle mismatch: {} vs {}",
            pretty(&ln),
            pretty(&rn)
        );
    }

    fn subst_var(m: &CombTerm, x: &str, s: &CombTerm) -> CombTerm {
        match m {
            CombTerm::Var(y) if y == x => s.clone(),
            CombTerm::Var(_) | CombTerm::Sym(_) | CombTerm::Hole(_) | CombTerm::Const(_) => {
                m.clone()
            }
            CombTerm::UnaryOp(op, t) => unary(*op, subst_var(t, x, s)),
            CombTerm::App(f, a) => capp(subst_var(f, x, s), subst_var(a, x, s)),
            CombTerm::LApp(n, g) => clapp(subst_var(n, x, s), subst_var(g, x, s)),
        }
    }

    #[test]
    fn sk_clauses() {
        let r = abstract_sk(&cvar("x"), "x").unwrap();
        assert_eq!(r, capp(capp(sym(S), sym(K)), sym(K)));
        let r = abstract_sk(&cvar("y"), "x").unwrap();
        assert_eq!(r, capp(sym(K), cvar("y")));
        let xx = capp(cvar("x"), cvar("x"));
        let r = abstract_sk(&xx, "x").unwrap();
        let skk = capp(capp(sym(S), sym(K)), sym(K));
        assert_eq!(r, capp(capp(sym(S), skk.clone()), skk));
        abstraction_oracle(Basis::SK, &xx, "x");
    }

    #[test]
    fn bci_clauses() {
        assert_eq!(abstract_bci(&cvar("x"), "x").unwrap(), sym(I));
        let xy = capp(cvar("x"), cvar("y"));
        let r = abstract_bci(&xy, "x").unwrap();
        assert_eq!(r, capp(capp(sym(C), sym(I)), cvar("y")));
        let yx = capp(cvar("y"), cvar("x"));
        let r = abstract_bci(&yx, "x").unwrap();
        assert_eq!(r, capp(capp(sym(B), cvar("y")), sym(I)));
        // Oracles with the remaining variable made a constant.
        abstraction_oracle(Basis::BCI, &subst_var(&xy, "y", &CombTerm::Const("c".into())), "x");
        abstraction_oracle(Basis::BCI, &subst_var(&yx, "y", &CombTerm::Const("c".into())), "x");
        assert!(abstract_bci(&capp(cvar("x"), cvar("x")), "x").is_err());
    }

    #[test]
    fn planar_clauses() {
        assert_eq!(abstract_planar(&cvar("x"), "x").unwrap(), sym(I));
        let xn = capp(cvar("x"), sym(I));
        let r = abstract_planar(&xn, "x").unwrap();
        assert_eq!(
            r,
            capp(capp(sym(B), unary(UnarySym::Dot, sym(I))), sym(I))
        );
        abstraction_oracle(Basis::BIDot, &xn, "x");
        let cx = capp(CombTerm::Const("c".into()), cvar("x"));
        let r = abstract_planar(&cx, "x").unwrap();
        assert_eq!(r, capp(capp(sym(B), CombTerm::Const("c".into())), sym(I)));
        abstraction_oracle(Basis::BIDot, &cx, "x");
        // Rightmost violation.
        assert!(abstract_planar(&capp(cvar("x"), cvar("y")), "x").is_err());
    }

    #[test]
    fn right_abstraction_clauses() {
        assert_eq!(abstract_right(&cvar("x"), "x").unwrap(), sym(IRight));
        // \*>x. (N <@ x) for closed N: N <@ (λ*x.x <@ D<)
        let n = sym(ILeft);
        let m = clapp(n.clone(), cvar("x"));
        let r = abstract_right(&m, "x").unwrap();
        assert_eq!(r, clapp(n, clapp(sym(IRight), sym(DLeft))));
        abstraction_oracle(Basis::BiBDI, &m, "x");
        // Right application cases.
        let m = capp(CombTerm::Const("c".into()), cvar("x"));
        abstraction_oracle(Basis::BiBDI, &m, "x");
        let m = capp(cvar("x"), sym(ILeft));
        abstraction_oracle(Basis::BiBDI, &m, "x");
        let m = clapp(cvar("x"), sym(IRight));
        abstraction_oracle(Basis::BiBDI, &m, "x");
    }

    #[test]
    fn left_abstraction_clauses() {
        assert_eq!(abstract_left(&cvar("y"), "y").unwrap(), sym(ILeft));
        // \*<y.(y c) : mirror-image clause, oracle a <@ result = a c
        let m = capp(cvar("y"), CombTerm::Const("c".into()));
        let r = abstract_left(&m, "y").unwrap();
        assert_eq!(
            r,
            capp(capp(sym(DRight), sym(ILeft)), CombTerm::Const("c".into()))
        );
        let d = Discipline::biplanar().with_constants(["a", "c"]);
        let lhs = expand(&clapp(CombTerm::Const("a".into()), r), &holes()).unwrap();
        let rhs = parse("#a #c", &d).unwrap();
        assert_eq!(equal(&lhs, &rhs, &d, 1000), EqVerdict::Equal);
        // Remaining clause shapes, oracle-checked from the left.
        for m in [
            clapp(cvar("y"), CombTerm::Const("c".into())),
            clapp(cvar("y"), sym(BLeft)),
            capp(capp(sym(DRight), sym(ILeft)), cvar("y")),
        ] {
            let abs = abstract_left(&m, "y").unwrap();
            let lhs = clapp(CombTerm::Const("a".into()), abs);
            let rhs = subst_var(&m, "y", &CombTerm::Const("a".into()));
            let d = Discipline::biplanar().with_constants(["a", "c"]);
            let lt = expand(&lhs, &holes()).unwrap();
            let rt = expand(&rhs, &holes()).unwrap();
            assert_eq!(equal(&lt, &rt, &d, 10_000), EqVerdict::Equal);
        }
    }

    #[test]
    fn tensor_translation_basic() {
        let d = Discipline::planar_tensor().with_constants(["c1", "c2"]);
        let id = parse("\\x.x", &d).unwrap();
        assert_eq!(compile_tensor(&id).unwrap(), sym(I));
        let pair = parse("#c1 * #c2", &d).unwrap();
        assert_eq!(
            compile_tensor(&pair).unwrap(),
            capp(
                capp(sym(P), CombTerm::Const("c1".into())),
                CombTerm::Const("c2".into())
            )
        );
    }

    #[test]
    fn tensor_translation_pair_lambda() {
        // T = <[\x.\y.x*y]>, then T c1 c2 is beta-eta-equal to c1 * c2.
        let d = Discipline::planar_tensor()
            .with_constants(["c1", "c2"])
            .with_eta(true);
        let m = parse("\\x.\\y. x * y", &d).unwrap();
        let t = compile_tensor(&m).unwrap();
        let expanded = expand(
            &capp(
                capp(t, CombTerm::Const("c1".into())),
                CombTerm::Const("c2".into()),
            ),
            &holes(),
        )
        .unwrap();
        let want = parse("#c1 * #c2", &d).unwrap();
        assert_eq!(equal(&expanded, &want, &d, 10_000), EqVerdict::Equal);
    }

    #[test]
    fn tensor_translation_roundtrip_examples() {
        let d = Discipline::planar_tensor().with_eta(true);
        for src in [
            "\\x.x",
            "\\x.\\y.x y",
            "\\x.\\y.x * y",
            "\\u.let a*b = u in a b",
            "\\u.let a*b = u in a * b",
            "\\t.\\u.let x*y = u in t x y",
            "\\u.(\\v.v) * u",
            "\\u.let a*b = u (\\w.w) in a (\\q.q) b",
        ] {
            let m = parse(src, &d).unwrap();
            let ct = compile_tensor(&m).unwrap();
            let ex = expand(&ct, &holes()).unwrap();
            assert_eq!(
                equal(&ex, &m, &d, 100_000),
                EqVerdict::Equal,
                "roundtrip failed for {src}: {ct}"
            );
        }
    }

    #[test]
    fn c_from_t_shape_and_axiom() {
        let t = CombTerm::Hole(0);
        let c = derive_c_from_t(&t);
        assert_eq!(format!("{c}"), "B (B (?0 (B B ?0)) B) ?0");
        // With T = \x.\y.y x the derived term satisfies C x y z = x z y.
        let d = Discipline::linear().with_constants(["x", "y", "z"]);
        let t_rep = parse("\\a.\\b.b a", &d).unwrap();
        let ce = expand(&c, &[t_rep]).unwrap();
        let lhs = rapp(rapp(rapp(ce.clone(), syntax::cst("x")), syntax::cst("y")), syntax::cst("z"));
        let rhs = parse("#x #z #y", &d).unwrap();
        assert_eq!(equal(&lhs, &rhs, &d, 10_000), EqVerdict::Equal);
        // With T = I the axiom fails.
        let bad = expand(&derive_c_from_t(&CombTerm::Hole(0)), &[parse("\\a.a", &d).unwrap()])
            .unwrap();
        let lhs = rapp(rapp(rapp(bad, syntax::cst("x")), syntax::cst("y")), syntax::cst("z"));
        assert_eq!(equal(&lhs, &rhs, &d, 10_000), EqVerdict::NotEqual);
    }

    #[test]
    fn cps_clauses() {
        let d = Discipline::ordinary();
        let x = parse("x", &d).unwrap();
        assert!(alpha_eq(&cps_translate(&x), &parse("\\k.k x", &d).unwrap()));
        let idt = parse("\\x.x", &d).unwrap();
        assert!(alpha_eq(
            &cps_translate(&idt),
            &parse("\\k.k (\\x.\\k1.k1 x)", &d).unwrap()
        ));
    }

    #[test]
    fn cps_beta_omega_instance() {
        let d = Discipline::ordinary();
        let lhs = parse("(\\x.x) y", &d).unwrap();
        let rhs = parse("y", &d).unwrap();
        assert_eq!(computational_eq(&lhs, &rhs, DEFAULT_FUEL), EqVerdict::Equal);
        // (βΩ) with E = [-] and a non-value argument.
        let lhs = parse("(\\x.x) (y y)", &d).unwrap();
        let rhs = parse("y y", &d).unwrap();
        assert_eq!(computational_eq(&lhs, &rhs, DEFAULT_FUEL), EqVerdict::Equal);
    }

    #[test]
    fn cps_value_axioms() {
        let d = Discipline::ordinary();
        // (βV) with a value argument.
        let lhs = parse("(\\x.x x) (\\y.y)", &d).unwrap();
        let rhs = parse("(\\y.y) (\\y.y)", &d).unwrap();
        assert_eq!(computational_eq(&lhs, &rhs, DEFAULT_FUEL), EqVerdict::Equal);
        // (ηV) with a variable.
        let lhs = parse("\\x.v x", &d).unwrap();
        let rhs = parse("v", &d).unwrap();
        assert_eq!(computational_eq(&lhs, &rhs, DEFAULT_FUEL), EqVerdict::Equal);
        // Unequal pair stays unequal.
        let lhs = parse("\\x.\\y.x", &d).unwrap();
        let rhs = parse("\\x.\\y.y", &d).unwrap();
        assert_eq!(
            computational_eq(&lhs, &rhs, DEFAULT_FUEL),
            EqVerdict::NotEqual
        );
    }

    #[test]
    fn left_inverse_examples() {
        let d = Discipline::planar();
        for src in ["\\x.x", "\\x.x (\\y.y)", "\\x.\\y.x y"] {
            let m = parse(src, &d).unwrap();
            let n = left_inverse(&m).unwrap();
            let nm = rapp(n, m);
            let idt = parse("\\x.x", &d).unwrap();
            assert_eq!(
                equal(&nm, &idt, &d, 100_000),
                EqVerdict::Equal,
                "left inverse failed for {src}"
            );
        }
        assert!(alpha_eq(
            &left_inverse(&parse("\\x.x", &d).unwrap()).unwrap(),
            &parse("\\x.x", &d).unwrap()
        ));
    }
}
