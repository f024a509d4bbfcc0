//! Applicative structures, axiom checking, and hierarchy classification.
//!
//! An [`ApplicativeStructure`] is a carrier with a possibly-partial right
//! application, optionally a left application, distinguished elements keyed
//! by symbol name, and unary operations. Axioms are equations between
//! combinatory expressions with variables; they are checked either by
//! instantiating variables with fresh constants (term models, where a pass
//! is universally valid) or on sampled tuples (evidence for a pass, proof
//! for a failure).
//!
//! Classification is candidate-relative: it proves membership by witnesses
//! and refutes specific candidates, never non-membership.

use crate::compile::{
    abstract_bci, abstract_left, abstract_right, abstract_sk, capp, clapp, cvar, sym, unary,
    Basis, CombSym, CombTerm, UnarySym,
};
use crate::rewrite::EqVerdict;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

pub type UnaryFn<E> = Arc<dyn Fn(&E) -> Option<E> + Send + Sync>;

/// An abstract carrier with application(s), distinguished elements, and
/// unary operations.
pub trait ApplicativeStructure {
    type Elem: Clone;

    /// Right application `f · a`; `None` when undefined.
    fn rapp(&self, f: &Self::Elem, a: &Self::Elem) -> Option<Self::Elem>;

    /// Left application `a <@ f`; only bi-structures have one.
    fn lapp(&self, _a: &Self::Elem, _f: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    fn has_lapp(&self) -> bool {
        false
    }

    fn is_total(&self) -> bool;

    /// Distinguished element for a symbol name such as `"B"` or `"I<"`.
    fn distinguished(&self, name: &str) -> Option<Self::Elem>;

    /// Unary operation such as `"dot"` applied to an element.
    fn unary(&self, _op: &str, _e: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// Inert constant carrier, where supported (term models).
    fn constant(&self, _name: &str) -> Option<Self::Elem> {
        None
    }

    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> EqVerdict;

    /// Deterministic pseudo-random elements.
    fn sample(&self, seed: u64, n: usize) -> Vec<Self::Elem>;

    /// Fresh inert constants, where supported (term models).
    fn fresh_constants(&self, _n: usize) -> Option<Vec<Self::Elem>> {
        None
    }

    fn show(&self, e: &Self::Elem) -> String;
}

/// Structures that accept installed elements and unary operations.
pub trait Extensible: ApplicativeStructure {
    fn install(&mut self, name: &str, e: Self::Elem);
    fn install_unary(&mut self, op: &str, f: UnaryFn<Self::Elem>) -> Result<(), AlgebraError>;
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("missing distinguished element {0}")]
    MissingSymbol(String),
    #[error("missing unary operation {0}")]
    MissingUnary(String),
    #[error("left application is not available in this structure")]
    NoLeftApplication,
    #[error("unbound variable {0}")]
    UnboundVar(String),
    #[error("unbound hole ?{0}")]
    UnboundHole(usize),
    #[error("constants are not supported by this structure")]
    NoConstants,
    #[error("fresh constants are not supported by this structure")]
    NoFreshConstants,
    #[error("unary operation {0} already installed")]
    DuplicateUnary(String),
    #[error("{0}")]
    Other(String),
}

/// Evaluates a combinatory expression in a structure. `Ok(None)` means the
/// expression is undefined (a partial application failed); errors report
/// missing ingredients.
pub fn interpret<S: ApplicativeStructure + ?Sized>(
    s: &S,
    ct: &CombTerm,
    holes: &[S::Elem],
    env: &BTreeMap<String, S::Elem>,
) -> Result<Option<S::Elem>, AlgebraError> {
    Ok(match ct {
        CombTerm::Sym(c) => Some(
            s.distinguished(c.name())
                .ok_or_else(|| AlgebraError::MissingSymbol(c.name().into()))?,
        ),
        CombTerm::Var(x) => Some(
            env.get(x)
                .cloned()
                .ok_or_else(|| AlgebraError::UnboundVar(x.clone()))?,
        ),
        CombTerm::Hole(i) => Some(
            holes
                .get(*i)
                .cloned()
                .ok_or(AlgebraError::UnboundHole(*i))?,
        ),
        CombTerm::Const(c) => Some(s.constant(c).ok_or(AlgebraError::NoConstants)?),
        CombTerm::UnaryOp(op, t) => match interpret(s, t, holes, env)? {
            None => None,
            Some(v) => Some(
                s.unary(op.name(), &v)
                    .ok_or_else(|| AlgebraError::MissingUnary(op.name().into()))?,
            ),
        },
        CombTerm::App(f, a) => match (interpret(s, f, holes, env)?, interpret(s, a, holes, env)?) {
            (Some(fv), Some(av)) => s.rapp(&fv, &av),
            _ => None,
        },
        CombTerm::LApp(n, m) => {
            if !s.has_lapp() {
                return Err(AlgebraError::NoLeftApplication);
            }
            match (interpret(s, n, holes, env)?, interpret(s, m, holes, env)?) {
                (Some(nv), Some(mv)) => s.lapp(&nv, &mv),
                _ => None,
            }
        }
    })
}

/// An equation between combinatory expressions, universally quantified over
/// `vars`. Equality is Kleene equality: both sides undefined counts as equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axiom {
    pub name: String,
    pub lhs: CombTerm,
    pub rhs: CombTerm,
    pub vars: Vec<String>,
}

impl Axiom {
    pub fn new(name: &str, vars: &[&str], lhs: CombTerm, rhs: CombTerm) -> Axiom {
        Axiom {
            name: name.to_string(),
            vars: vars.iter().map(|s| s.to_string()).collect(),
            lhs,
            rhs,
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axiom {}: {} = {}", self.name, self.lhs, self.rhs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// Instantiate variables with fresh inert constants; a pass is
    /// universally valid by substitutivity.
    FreshConstants,
    /// Check on sampled tuples; a pass is evidence, a failure is a proof.
    Sampled { n: usize, seed: u64 },
}

pub const DEFAULT_SAMPLES: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomVerdict {
    Holds,
    FailsAt(String),
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: String,
    pub mode: CheckMode,
    pub verdict: AxiomVerdict,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        matches!(self.verdict, AxiomVerdict::Holds)
    }
}

fn check_instance<S: ApplicativeStructure + ?Sized>(
    s: &S,
    ax: &Axiom,
    env: &BTreeMap<String, S::Elem>,
) -> Result<AxiomVerdict, AlgebraError> {
    let lhs = interpret(s, &ax.lhs, &[], env)?;
    let rhs = interpret(s, &ax.rhs, &[], env)?;
    let describe = |env: &BTreeMap<String, S::Elem>| {
        let binds: Vec<String> = env
            .iter()
            .map(|(k, v)| format!("{k} := {}", s.show(v)))
            .collect();
        let side = |v: &Option<S::Elem>| match v {
            None => "undefined".to_string(),
            Some(e) => s.show(e),
        };
        format!(
            "{}; lhs = {}, rhs = {}",
            binds.join(", "),
            side(&lhs),
            side(&rhs)
        )
    };
    Ok(match (&lhs, &rhs) {
        (None, None) => AxiomVerdict::Holds,
        (Some(a), Some(b)) => match s.eq(a, b) {
            EqVerdict::Equal => AxiomVerdict::Holds,
            EqVerdict::NotEqual => AxiomVerdict::FailsAt(describe(env)),
            EqVerdict::Unknown => AxiomVerdict::Unknown(describe(env)),
        },
        _ => AxiomVerdict::FailsAt(describe(env)),
    })
}

/// Checks one axiom in the given mode.
pub fn check_axiom<S: ApplicativeStructure + ?Sized>(
    s: &S,
    ax: &Axiom,
    mode: CheckMode,
) -> Result<AxiomReport, AlgebraError> {
    let verdict = match mode {
        CheckMode::FreshConstants => {
            let consts = s
                .fresh_constants(ax.vars.len())
                .ok_or(AlgebraError::NoFreshConstants)?;
            let env: BTreeMap<String, S::Elem> = ax.vars.iter().cloned().zip(consts).collect();
            check_instance(s, ax, &env)?
        }
        CheckMode::Sampled { n, seed } => {
            use rand::Rng;
            use rand_chacha::rand_core::SeedableRng;
            let pool = s.sample(seed, (4 * ax.vars.len()).max(8));
            if pool.is_empty() {
                return Err(AlgebraError::Other("empty sample pool".into()));
            }
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
            let mut unknown = None;
            let mut verdict = AxiomVerdict::Holds;
            for _ in 0..n {
                let env: BTreeMap<String, S::Elem> = ax
                    .vars
                    .iter()
                    .map(|v| (v.clone(), pool[rng.gen_range(0..pool.len())].clone()))
                    .collect();
                match check_instance(s, ax, &env)? {
                    AxiomVerdict::Holds => {}
                    f @ AxiomVerdict::FailsAt(_) => {
                        verdict = f;
                        break;
                    }
                    u @ AxiomVerdict::Unknown(_) => unknown = Some(u),
                }
            }
            if matches!(verdict, AxiomVerdict::Holds) {
                if let Some(u) = unknown {
                    verdict = u;
                }
            }
            verdict
        }
    };
    Ok(AxiomReport {
        axiom: ax.name.clone(),
        mode,
        verdict,
    })
}

// Standard axiom constructors.

pub fn ax_s() -> Axiom {
    let x = cvar("x");
    let y = cvar("y");
    let z = cvar("z");
    Axiom::new(
        "S",
        &["x", "y", "z"],
        capp(capp(capp(sym(CombSym::S), x.clone()), y.clone()), z.clone()),
        capp(capp(x, z.clone()), capp(y, z)),
    )
}

pub fn ax_k() -> Axiom {
    Axiom::new(
        "K",
        &["x", "y"],
        capp(capp(sym(CombSym::K), cvar("x")), cvar("y")),
        cvar("x"),
    )
}

pub fn ax_b() -> Axiom {
    Axiom::new(
        "B",
        &["x", "y", "z"],
        capp(capp(capp(sym(CombSym::B), cvar("x")), cvar("y")), cvar("z")),
        capp(cvar("x"), capp(cvar("y"), cvar("z"))),
    )
}

pub fn ax_c() -> Axiom {
    Axiom::new(
        "C",
        &["x", "y", "z"],
        capp(capp(capp(sym(CombSym::C), cvar("x")), cvar("y")), cvar("z")),
        capp(capp(cvar("x"), cvar("z")), cvar("y")),
    )
}

pub fn ax_i() -> Axiom {
    Axiom::new("I", &["x"], capp(sym(CombSym::I), cvar("x")), cvar("x"))
}

pub fn ax_itimes() -> Axiom {
    Axiom::new(
        "IX",
        &["x"],
        capp(capp(sym(CombSym::ITimes), cvar("x")), sym(CombSym::I)),
        cvar("x"),
    )
}

pub fn ax_dot() -> Axiom {
    Axiom::new(
        "dot",
        &["a", "x"],
        capp(unary(UnarySym::Dot, cvar("a")), cvar("x")),
        capp(cvar("x"), cvar("a")),
    )
}

pub fn ax_lp() -> Axiom {
    Axiom::new(
        "LP",
        &["x", "y", "z"],
        capp(
            capp(sym(CombSym::L), cvar("x")),
            capp(capp(sym(CombSym::P), cvar("y")), cvar("z")),
        ),
        capp(capp(cvar("x"), cvar("y")), cvar("z")),
    )
}

pub fn ax_bright() -> Axiom {
    Axiom::new(
        "B>",
        &["x", "y", "z"],
        capp(
            capp(capp(sym(CombSym::BRight), cvar("x")), cvar("y")),
            cvar("z"),
        ),
        capp(cvar("x"), capp(cvar("y"), cvar("z"))),
    )
}

pub fn ax_bleft() -> Axiom {
    Axiom::new(
        "B<",
        &["x", "y", "z"],
        clapp(
            cvar("z"),
            clapp(cvar("y"), clapp(cvar("x"), sym(CombSym::BLeft))),
        ),
        clapp(clapp(cvar("z"), cvar("y")), cvar("x")),
    )
}

pub fn ax_dright() -> Axiom {
    Axiom::new(
        "D>",
        &["x", "y", "z"],
        clapp(
            cvar("x"),
            capp(capp(sym(CombSym::DRight), cvar("y")), cvar("z")),
        ),
        capp(clapp(cvar("x"), cvar("y")), cvar("z")),
    )
}

pub fn ax_dleft() -> Axiom {
    Axiom::new(
        "D<",
        &["x", "y", "z"],
        capp(
            clapp(cvar("z"), clapp(cvar("y"), sym(CombSym::DLeft))),
            cvar("x"),
        ),
        clapp(cvar("z"), capp(cvar("y"), cvar("x"))),
    )
}

pub fn ax_iright() -> Axiom {
    Axiom::new(
        "I>",
        &["x"],
        capp(sym(CombSym::IRight), cvar("x")),
        cvar("x"),
    )
}

pub fn ax_ileft() -> Axiom {
    Axiom::new(
        "I<",
        &["x"],
        clapp(cvar("x"), sym(CombSym::ILeft)),
        cvar("x"),
    )
}

pub fn ax_dagr() -> Axiom {
    Axiom::new(
        "dagr",
        &["a", "x"],
        capp(unary(UnarySym::DagRight, cvar("a")), cvar("x")),
        clapp(cvar("x"), cvar("a")),
    )
}

pub fn ax_dagl() -> Axiom {
    Axiom::new(
        "dagl",
        &["a", "x"],
        clapp(cvar("x"), unary(UnarySym::DagLeft, cvar("a"))),
        capp(cvar("a"), cvar("x")),
    )
}

pub fn ax_idot() -> Axiom {
    Axiom::new(
        "Idot",
        &["x"],
        capp(sym(CombSym::IDot), cvar("x")),
        capp(cvar("x"), sym(CombSym::I)),
    )
}

pub fn ax_circ() -> Axiom {
    Axiom::new(
        "circ",
        &["a", "x", "y"],
        capp(capp(unary(UnarySym::Circ, cvar("a")), cvar("x")), cvar("y")),
        capp(cvar("x"), capp(cvar("a"), cvar("y"))),
    )
}

/// The classes of the hierarchy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassName {
    SK,
    BCI,
    BiBDI,
    BIILP,
    BIIDot,
    BIDot,
    BIIDotCirc,
}

impl ClassName {
    pub fn all() -> &'static [ClassName] {
        &[
            ClassName::SK,
            ClassName::BCI,
            ClassName::BiBDI,
            ClassName::BIILP,
            ClassName::BIIDot,
            ClassName::BIDot,
            ClassName::BIIDotCirc,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassName::SK => "SK",
            ClassName::BCI => "BCI",
            ClassName::BiBDI => "bi-BDI",
            ClassName::BIILP => "BIILP",
            ClassName::BIIDot => "BII-dot",
            ClassName::BIDot => "BI-dot",
            ClassName::BIIDotCirc => "BII-dot-circ",
        }
    }

    pub fn axioms(self) -> Vec<Axiom> {
        match self {
            ClassName::SK => vec![ax_s(), ax_k()],
            ClassName::BCI => vec![ax_b(), ax_c(), ax_i()],
            ClassName::BiBDI => vec![
                ax_bright(),
                ax_bleft(),
                ax_dright(),
                ax_dleft(),
                ax_iright(),
                ax_ileft(),
                ax_dagr(),
                ax_dagl(),
            ],
            ClassName::BIILP => vec![ax_b(), ax_i(), ax_dot(), ax_itimes(), ax_lp()],
            ClassName::BIIDot => vec![ax_b(), ax_i(), ax_dot(), ax_itimes()],
            ClassName::BIDot => vec![ax_b(), ax_i(), ax_dot()],
            ClassName::BIIDotCirc => vec![ax_b(), ax_i(), ax_idot(), ax_circ()],
        }
    }

    pub fn basis(self) -> Basis {
        match self {
            ClassName::SK => Basis::SK,
            ClassName::BCI => Basis::BCI,
            ClassName::BiBDI => Basis::BiBDI,
            ClassName::BIILP => Basis::BIILP,
            ClassName::BIIDot => Basis::BIIDot,
            ClassName::BIDot => Basis::BIDot,
            ClassName::BIIDotCirc => Basis::BIIDotCirc,
        }
    }
}

/// A structure together with candidate distinguished elements and derived
/// unary operations layered on top; used by classification.
pub struct Overlay<'a, S: ApplicativeStructure> {
    base: &'a S,
    syms: BTreeMap<String, S::Elem>,
    /// Unary operations given as templates with `Hole(0)` for the argument.
    unary_templates: BTreeMap<String, CombTerm>,
    /// Treat `a <@ f` as `f a` (the canonical left application of a
    /// structure whose BCI axioms pass).
    pub flipped_lapp: bool,
}

impl<'a, S: ApplicativeStructure> Overlay<'a, S> {
    pub fn new(base: &'a S, candidates: &BTreeMap<String, S::Elem>) -> Self {
        Overlay {
            base,
            syms: candidates.clone(),
            unary_templates: BTreeMap::new(),
            flipped_lapp: false,
        }
    }

    pub fn set(&mut self, name: &str, e: S::Elem) {
        self.syms.insert(name.to_string(), e);
    }

    pub fn set_unary_template(&mut self, op: &str, template: CombTerm) {
        self.unary_templates.insert(op.to_string(), template);
    }

    fn has(&self, name: &str) -> bool {
        self.distinguished(name).is_some()
    }

    fn has_unary(&self, op: &str, probe: &S::Elem) -> bool {
        self.unary_templates.contains_key(op) || self.base.unary(op, probe).is_some()
    }
}

impl<'a, S: ApplicativeStructure> ApplicativeStructure for Overlay<'a, S> {
    type Elem = S::Elem;

    fn rapp(&self, f: &S::Elem, a: &S::Elem) -> Option<S::Elem> {
        self.base.rapp(f, a)
    }

    fn lapp(&self, a: &S::Elem, f: &S::Elem) -> Option<S::Elem> {
        if self.base.has_lapp() {
            self.base.lapp(a, f)
        } else if self.flipped_lapp {
            self.base.rapp(f, a)
        } else {
            None
        }
    }

    fn has_lapp(&self) -> bool {
        self.base.has_lapp() || self.flipped_lapp
    }

    fn is_total(&self) -> bool {
        self.base.is_total()
    }

    fn distinguished(&self, name: &str) -> Option<S::Elem> {
        self.syms
            .get(name)
            .cloned()
            .or_else(|| self.base.distinguished(name))
    }

    fn unary(&self, op: &str, e: &S::Elem) -> Option<S::Elem> {
        if let Some(v) = self.base.unary(op, e) {
            return Some(v);
        }
        let template = self.unary_templates.get(op)?;
        interpret(self, template, std::slice::from_ref(e), &BTreeMap::new())
            .ok()
            .flatten()
    }

    fn constant(&self, name: &str) -> Option<S::Elem> {
        self.base.constant(name)
    }

    fn eq(&self, a: &S::Elem, b: &S::Elem) -> EqVerdict {
        self.base.eq(a, b)
    }

    fn sample(&self, seed: u64, n: usize) -> Vec<S::Elem> {
        self.base.sample(seed, n)
    }

    fn fresh_constants(&self, n: usize) -> Option<Vec<S::Elem>> {
        self.base.fresh_constants(n)
    }

    fn show(&self, e: &S::Elem) -> String {
        self.base.show(e)
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub classes: BTreeSet<ClassName>,
    pub reports: Vec<AxiomReport>,
    pub notes: Vec<String>,
}

fn axioms_pass<S: ApplicativeStructure>(
    s: &Overlay<'_, S>,
    class: ClassName,
    mode: CheckMode,
    reports: &mut Vec<AxiomReport>,
) -> bool {
    let mut all = true;
    for ax in class.axioms() {
        match check_axiom(s, &ax, mode) {
            Ok(rep) => {
                let ok = rep.holds();
                reports.push(AxiomReport {
                    axiom: format!("{}::{}", class.name(), rep.axiom),
                    ..rep
                });
                all &= ok;
            }
            Err(e) => {
                reports.push(AxiomReport {
                    axiom: format!("{}::{}", class.name(), ax.name),
                    mode,
                    verdict: AxiomVerdict::Unknown(format!("not applicable: {e}")),
                });
                all = false;
            }
        }
    }
    all
}

fn interp_closed<S: ApplicativeStructure>(s: &Overlay<'_, S>, ct: &CombTerm) -> Option<S::Elem> {
    interpret(s, ct, &[], &BTreeMap::new()).ok().flatten()
}

/// Classifies a structure against the hierarchy, given candidate
/// distinguished elements. Missing candidates for weaker classes are filled
/// in canonically from stronger ones (for example `•a := C I a` once the BCI
/// axioms pass). The result is the set of classes whose axioms all pass; it
/// is never a non-membership proof.
pub fn classify<S: ApplicativeStructure>(
    s: &S,
    candidates: &BTreeMap<String, S::Elem>,
    mode: CheckMode,
) -> Classification {
    let mut ov = Overlay::new(s, candidates);
    let mut reports = Vec::new();
    let mut notes = Vec::new();

    // Derivation cascade, strongest class first; two passes reach a fixpoint.
    for _ in 0..2 {
        derive_from_sk(&mut ov, mode, &mut notes);
        derive_from_bci(s, &mut ov, mode, &mut notes);
        derive_from_bibdi(&mut ov, mode, &mut notes);
        derive_from_bidot(&mut ov, mode, &mut notes);
    }

    let mut classes = BTreeSet::new();
    for &class in ClassName::all() {
        if axioms_pass(&ov, class, mode, &mut reports) {
            classes.insert(class);
        }
    }
    Classification {
        classes,
        reports,
        notes,
    }
}

fn derive_from_sk<S: ApplicativeStructure>(
    ov: &mut Overlay<'_, S>,
    mode: CheckMode,
    notes: &mut Vec<String>,
) {
    if !(ov.has("S") && ov.has("K")) || !axioms_pass(ov, ClassName::SK, mode, &mut Vec::new()) {
        return;
    }
    let b_poly = capp(cvar("x"), capp(cvar("y"), cvar("z")));
    let c_poly = capp(capp(cvar("x"), cvar("z")), cvar("y"));
    let i_poly = cvar("x");
    for (name, poly, vars) in [
        ("B", b_poly, vec!["x", "y", "z"]),
        ("C", c_poly, vec!["x", "y", "z"]),
        ("I", i_poly, vec!["x"]),
    ] {
        if ov.has(name) {
            continue;
        }
        let mut t = poly;
        let mut ok = true;
        for v in vars.iter().rev() {
            match abstract_sk(&t, v) {
                Ok(next) => t = next,
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            if let Some(e) = interp_closed(ov, &t) {
                ov.set(name, e);
                notes.push(format!("derived {name} from S, K"));
            }
        }
    }
}

fn derive_from_bci<S: ApplicativeStructure>(
    base: &S,
    ov: &mut Overlay<'_, S>,
    mode: CheckMode,
    notes: &mut Vec<String>,
) {
    if !(ov.has("B") && ov.has("C") && ov.has("I"))
        || !axioms_pass(ov, ClassName::BCI, mode, &mut Vec::new())
    {
        return;
    }
    let ci = capp(sym(CombSym::C), sym(CombSym::I));
    for name in ["IX", "L"] {
        if !ov.has(name) {
            if let Some(e) = interp_closed(ov, &ci) {
                ov.set(name, e);
                notes.push(format!("derived {name} := C I from BCI"));
            }
        }
    }
    if !ov.has("P") {
        // P := λ*x.λ*y.λ*t. t x y
        let poly = capp(capp(cvar("t"), cvar("x")), cvar("y"));
        let ct = abstract_bci(&poly, "t")
            .and_then(|t| abstract_bci(&t, "y"))
            .and_then(|t| abstract_bci(&t, "x"));
        if let Ok(ct) = ct {
            if let Some(e) = interp_closed(ov, &ct) {
                ov.set("P", e);
                notes.push("derived P from BCI".into());
            }
        }
    }
    let probe = ov.distinguished("I").unwrap();
    if !ov.has_unary("dot", &probe) {
        ov.set_unary_template("dot", capp(ci, CombTerm::Hole(0)));
        notes.push("derived dot a := C I a from BCI".into());
    }
    for (bi, src) in [
        ("B>", "B"),
        ("B<", "B"),
        ("D>", "C"),
        ("D<", "C"),
        ("I>", "I"),
        ("I<", "I"),
    ] {
        if !ov.has(bi) {
            let e = ov.distinguished(src).unwrap();
            ov.set(bi, e);
        }
    }
    for dag in ["dagr", "dagl"] {
        if !ov.has_unary(dag, &probe) {
            ov.set_unary_template(dag, CombTerm::Hole(0));
        }
    }
    if !base.has_lapp() && !ov.flipped_lapp {
        ov.flipped_lapp = true;
        notes.push("left application taken as flipped right application".into());
    }
}

fn derive_from_bibdi<S: ApplicativeStructure>(
    ov: &mut Overlay<'_, S>,
    mode: CheckMode,
    notes: &mut Vec<String>,
) {
    if !["B>", "B<", "D>", "D<", "I>", "I<"].iter().all(|n| ov.has(n))
        || !ov.has_lapp()
        || !axioms_pass(ov, ClassName::BiBDI, mode, &mut Vec::new())
    {
        return;
    }
    let derive_r = |poly: &CombTerm, vars: &[&str]| -> Option<CombTerm> {
        let mut t = poly.clone();
        for v in vars.iter().rev() {
            t = abstract_right(&t, v).ok()?;
        }
        Some(t)
    };
    for (name, src) in [("B", "B>"), ("I", "I>")] {
        if !ov.has(name) {
            let e = ov.distinguished(src).unwrap();
            ov.set(name, e);
            notes.push(format!("took {name} := {src} from bi-BDI"));
        }
    }
    if !ov.has("IX") {
        // λ*>x.λ*>y. x <@ (y I<)
        let poly = clapp(cvar("x"), capp(cvar("y"), sym(CombSym::ILeft)));
        if let Some(ct) = derive_r(&poly, &["x", "y"]) {
            if let Some(e) = interp_closed(ov, &ct) {
                ov.set("IX", e);
                notes.push("derived IX from bi-BDI".into());
            }
        }
    }
    if !ov.has("L") {
        let poly = clapp(cvar("x"), cvar("y"));
        if let Some(ct) = derive_r(&poly, &["x", "y"]) {
            if let Some(e) = interp_closed(ov, &ct) {
                ov.set("L", e);
                notes.push("derived L from bi-BDI".into());
            }
        }
    }
    if !ov.has("P") {
        // λ*>x.λ*>y.λ*<t. t x y
        let poly = capp(capp(cvar("t"), cvar("x")), cvar("y"));
        let ct = abstract_left(&poly, "t")
            .ok()
            .and_then(|t| derive_r(&t, &["x", "y"]));
        if let Some(ct) = ct {
            if let Some(e) = interp_closed(ov, &ct) {
                ov.set("P", e);
                notes.push("derived P from bi-BDI".into());
            }
        }
    }
    let probe = ov.distinguished("I>").unwrap();
    if !ov.has_unary("dot", &probe) {
        // dot a := dagr(λ*<w. w a)
        if let Ok(inner) = abstract_left(&capp(cvar("w"), CombTerm::Hole(0)), "w") {
            ov.set_unary_template("dot", unary(UnarySym::DagRight, inner));
            notes.push("derived dot from bi-BDI".into());
        }
    }
}

fn derive_from_bidot<S: ApplicativeStructure>(
    ov: &mut Overlay<'_, S>,
    mode: CheckMode,
    notes: &mut Vec<String>,
) {
    if !(ov.has("B") && ov.has("I")) || !axioms_pass(ov, ClassName::BIDot, mode, &mut Vec::new()) {
        return;
    }
    let probe = ov.distinguished("I").unwrap();
    if !ov.has_unary("circ", &probe) && ov.has_unary("dot", &probe) {
        let t = capp(
            capp(sym(CombSym::B), unary(UnarySym::Dot, CombTerm::Hole(0))),
            sym(CombSym::B),
        );
        ov.set_unary_template("circ", t);
        notes.push("derived circ a := B (dot a) B".into());
    }
    if !ov.has("Idot") {
        if let Some(e) = ov.unary("dot", &probe) {
            ov.set("Idot", e);
            notes.push("derived Idot := dot I".into());
        }
    }
}

// ---------------------------------------------------------------------------
// Axiom file parsing: `axiom NAME: LHS = RHS`, uppercase-initial identifiers
// are basis symbols, lowercase are variables, `[op t]` applies a unary
// operation, `<@` is left application.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("axiom parse error: {0}")]
pub struct AxiomParseError(pub String);

pub fn parse_axioms(text: &str) -> Result<Vec<Axiom>, AxiomParseError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split("--").next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let rest = line
            .strip_prefix("axiom")
            .ok_or_else(|| AxiomParseError(format!("line {}: expected 'axiom'", lineno + 1)))?;
        let (name, eqn) = rest
            .split_once(':')
            .ok_or_else(|| AxiomParseError(format!("line {}: expected ':'", lineno + 1)))?;
        let (lhs, rhs) = eqn
            .split_once('=')
            .ok_or_else(|| AxiomParseError(format!("line {}: expected '='", lineno + 1)))?;
        let lhs =
            parse_comb(lhs).map_err(|e| AxiomParseError(format!("line {}: {}", lineno + 1, e)))?;
        let rhs =
            parse_comb(rhs).map_err(|e| AxiomParseError(format!("line {}: {}", lineno + 1, e)))?;
        let mut vars: Vec<String> = lhs.var_sequence();
        vars.extend(rhs.var_sequence());
        let mut seen = BTreeSet::new();
        vars.retain(|v| seen.insert(v.clone()));
        out.push(Axiom {
            name: name.trim().to_string(),
            lhs,
            rhs,
            vars,
        });
    }
    Ok(out)
}

/// Parses a combinatory expression (the axiom-file syntax).
pub fn parse_comb(src: &str) -> Result<CombTerm, String> {
    let toks = comb_tokens(src)?;
    let mut pos = 0usize;
    let t = comb_expr(&toks, &mut pos)?;
    if pos != toks.len() {
        return Err("trailing input".into());
    }
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum CTok {
    Word(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    LArrow,
    Hash(String),
    Hole(usize),
}

fn comb_tokens(src: &str) -> Result<Vec<CTok>, String> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        match c {
            '(' => {
                out.push(CTok::LParen);
                i += 1;
            }
            ')' => {
                out.push(CTok::RParen);
                i += 1;
            }
            '[' => {
                out.push(CTok::LBracket);
                i += 1;
            }
            ']' => {
                out.push(CTok::RBracket);
                i += 1;
            }
            '<' if bytes.get(i + 1) == Some(&b'@') => {
                out.push(CTok::LArrow);
                i += 2;
            }
            '#' => {
                let start = i + 1;
                let mut j = start;
                while j < bytes.len() && (bytes[j] as char).is_ascii_alphanumeric() {
                    j += 1;
                }
                if j == start {
                    return Err("expected constant name after #".into());
                }
                out.push(CTok::Hash(src[start..j].to_string()));
                i = j;
            }
            '?' => {
                let start = i + 1;
                let mut j = start;
                while j < bytes.len() && (bytes[j] as char).is_ascii_digit() {
                    j += 1;
                }
                if j == start {
                    return Err("expected hole index after ?".into());
                }
                out.push(CTok::Hole(src[start..j].parse().unwrap()));
                i = j;
            }
            c if c.is_ascii_alphanumeric() => {
                let start = i;
                let mut j = i + 1;
                if (c.is_ascii_uppercase())
                    && j < bytes.len()
                    && (bytes[j] == b'>' || bytes[j] == b'<')
                {
                    j += 1;
                } else {
                    while j < bytes.len() {
                        let ch = bytes[j] as char;
                        if ch.is_ascii_alphanumeric() || ch == '_' {
                            j += 1;
                        } else {
                            break;
                        }
                    }
                }
                out.push(CTok::Word(src[start..j].to_string()));
                i = j;
            }
            _ => return Err(format!("unexpected character {c:?}")),
        }
    }
    Ok(out)
}

fn comb_expr(toks: &[CTok], pos: &mut usize) -> Result<CombTerm, String> {
    let mut t = comb_app(toks, pos)?;
    while toks.get(*pos) == Some(&CTok::LArrow) {
        *pos += 1;
        let rhs = comb_app(toks, pos)?;
        t = clapp(t, rhs);
    }
    Ok(t)
}

fn comb_app(toks: &[CTok], pos: &mut usize) -> Result<CombTerm, String> {
    let mut t = comb_atom(toks, pos)?;
    loop {
        match toks.get(*pos) {
            Some(CTok::Word(_) | CTok::LParen | CTok::LBracket | CTok::Hash(_) | CTok::Hole(_)) => {
                let a = comb_atom(toks, pos)?;
                t = capp(t, a);
            }
            _ => return Ok(t),
        }
    }
}

fn comb_atom(toks: &[CTok], pos: &mut usize) -> Result<CombTerm, String> {
    match toks.get(*pos) {
        Some(CTok::Word(w)) => {
            *pos += 1;
            if w.chars().next().unwrap().is_ascii_uppercase() {
                CombSym::from_name(w)
                    .map(sym)
                    .ok_or_else(|| format!("unknown symbol {w}"))
            } else {
                Ok(cvar(w))
            }
        }
        Some(CTok::Hash(c)) => {
            *pos += 1;
            Ok(CombTerm::Const(c.clone()))
        }
        Some(CTok::Hole(i)) => {
            *pos += 1;
            Ok(CombTerm::Hole(*i))
        }
        Some(CTok::LParen) => {
            *pos += 1;
            let t = comb_expr(toks, pos)?;
            if toks.get(*pos) != Some(&CTok::RParen) {
                return Err("expected ')'".into());
            }
            *pos += 1;
            Ok(t)
        }
        Some(CTok::LBracket) => {
            *pos += 1;
            let op = match toks.get(*pos) {
                Some(CTok::Word(w)) => {
                    UnarySym::from_name(w).ok_or_else(|| format!("unknown unary operation {w}"))?
                }
                _ => return Err("expected unary operation name".into()),
            };
            *pos += 1;
            let t = comb_expr(toks, pos)?;
            if toks.get(*pos) != Some(&CTok::RBracket) {
                return Err("expected ']'".into());
            }
            *pos += 1;
            Ok(unary(op, t))
        }
        _ => Err("expected an expression".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_axiom_file() {
        let axs = parse_axioms(
            "-- composition\naxiom B: B x y z = x (y z)\naxiom dot: [dot a] x = x a\n",
        )
        .unwrap();
        assert_eq!(axs.len(), 2);
        assert_eq!(axs[0], ax_b());
        assert_eq!(axs[1], ax_dot());
    }

    #[test]
    fn parse_bi_symbols() {
        let t = parse_comb("x <@ (D> y z)").unwrap();
        assert_eq!(t, ax_dright().lhs);
        let t = parse_comb("z <@ (y <@ (x <@ B<))").unwrap();
        assert_eq!(t, ax_bleft().lhs);
    }
}
