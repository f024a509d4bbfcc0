//! Term models: closed discipline-valid terms modulo beta(-eta) equality.
//!
//! Elements are kept in normal form, so equality is alpha-comparison. For
//! the strongly normalizing disciplines every operation is total; the
//! ordinary calculus is fuel-bounded, and applications that run out of fuel
//! are reported as undefined.

use crate::algebra::{AlgebraError, ApplicativeStructure, Extensible, UnaryFn};
use crate::compile::{representative, CombSym};
use crate::rewrite::{normalize_lo, EqVerdict, DEFAULT_FUEL};
use crate::syntax::{
    alpha_eq, free_vars, labs, lapp, pretty, rabs, rapp, validate, Discipline, Term,
};
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

pub struct TermModel {
    discipline: Discipline,
    fuel: u64,
    fresh_counter: AtomicU64,
    installed: BTreeMap<String, Term>,
    installed_unary: BTreeMap<String, UnaryFn<Term>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TermModelError {
    #[error("term is not closed")]
    NotClosed,
    #[error("term is invalid for the model discipline: {0}")]
    Invalid(String),
    #[error("normalization ran out of fuel")]
    FuelExhausted,
}

impl TermModel {
    pub fn new(discipline: Discipline) -> TermModel {
        TermModel {
            discipline,
            fuel: DEFAULT_FUEL,
            fresh_counter: AtomicU64::new(0),
            installed: BTreeMap::new(),
            installed_unary: BTreeMap::new(),
        }
    }

    pub fn with_fuel(mut self, fuel: u64) -> TermModel {
        self.fuel = fuel;
        self
    }

    /// The planar term model (beta only).
    pub fn planar() -> TermModel {
        TermModel::new(Discipline::planar())
    }

    /// The planar term model with one inert constant.
    pub fn planar_const() -> TermModel {
        TermModel::new(Discipline::planar().with_constants(["c"]))
    }

    /// The planar term model with three constants modulo beta-eta.
    pub fn planar_const_eta() -> TermModel {
        TermModel::new(
            Discipline::planar()
                .with_constants(["c1", "c2", "c3"])
                .with_eta(true),
        )
    }

    /// The planar tensor term model modulo beta-eta.
    pub fn planar_tensor() -> TermModel {
        TermModel::new(Discipline::planar_tensor().with_eta(true))
    }

    /// The bi-planar term model (beta only).
    pub fn biplanar() -> TermModel {
        TermModel::new(Discipline::biplanar())
    }

    pub fn linear() -> TermModel {
        TermModel::new(Discipline::linear())
    }

    pub fn ordinary() -> TermModel {
        TermModel::new(Discipline::ordinary())
    }

    pub fn discipline(&self) -> &Discipline {
        &self.discipline
    }

    /// Admits a closed valid term as an element (normalizing it).
    pub fn element(&self, t: &Term) -> Result<Term, TermModelError> {
        if !t.is_closed() {
            return Err(TermModelError::NotClosed);
        }
        let mut d = self.discipline.clone();
        // Accept ad-hoc inert constants beyond the declared set.
        d.constants.extend(constants_in(t));
        let rep = validate(t, &d);
        if !rep.ok() {
            return Err(TermModelError::Invalid(format!("{:?}", rep.violations[0])));
        }
        normalize_lo(t, &self.discipline, self.fuel)
            .into_normal()
            .ok_or(TermModelError::FuelExhausted)
    }
}

fn constants_in(t: &Term) -> Vec<String> {
    match t {
        Term::Const(c) => vec![c.clone()],
        Term::Var(_) => vec![],
        Term::RApp(a, b) | Term::LApp(a, b) | Term::Tensor(a, b) => {
            let mut v = constants_in(a);
            v.extend(constants_in(b));
            v
        }
        Term::RAbs(_, b) | Term::LAbs(_, b) => constants_in(b),
        Term::LetPair(_, _, s, b) => {
            let mut v = constants_in(s);
            v.extend(constants_in(b));
            v
        }
    }
}

impl ApplicativeStructure for TermModel {
    type Elem = Term;

    fn rapp(&self, f: &Term, a: &Term) -> Option<Term> {
        normalize_lo(&rapp(f.clone(), a.clone()), &self.discipline, self.fuel).into_normal()
    }

    fn lapp(&self, a: &Term, f: &Term) -> Option<Term> {
        if !self.discipline.left_ops {
            return None;
        }
        normalize_lo(&lapp(a.clone(), f.clone()), &self.discipline, self.fuel).into_normal()
    }

    fn has_lapp(&self) -> bool {
        self.discipline.left_ops
    }

    fn is_total(&self) -> bool {
        // Total for the strongly normalizing disciplines.
        !(self.discipline.contraction && self.discipline.weakening)
    }

    fn distinguished(&self, name: &str) -> Option<Term> {
        use crate::syntax::var;
        if let Some(t) = self.installed.get(name) {
            return Some(t.clone());
        }
        // In the bi-planar model the one-sided representatives of IX, L and P
        // fail their axioms on left abstractions; the two-sided terms from
        // the bi-BDI derivations are the right elements.
        if self.discipline.left_ops {
            let two_sided = match name {
                // \>x.\>y. x <@ (y (\<w.w))
                "IX" => Some(rabs(
                    "x",
                    rabs(
                        "y",
                        lapp(var("x"), rapp(var("y"), labs("w", var("w")))),
                    ),
                )),
                // \>x.\>y. x <@ y
                "L" => Some(rabs("x", rabs("y", lapp(var("x"), var("y"))))),
                // \>x.\>y.\<t. t x y
                "P" => Some(rabs(
                    "x",
                    rabs(
                        "y",
                        labs("t", rapp(rapp(var("t"), var("x")), var("y"))),
                    ),
                )),
                _ => None,
            };
            if let Some(rep) = two_sided {
                return normalize_lo(&rep, &self.discipline, self.fuel).into_normal();
            }
        }
        let d = &self.discipline;
        // Which representative satisfies an axiom depends on the equality of
        // the model, not only on which terms are well-formed in it.
        match name {
            "IX" if !d.eta => {
                if d.exchange {
                    // \a.\w.w a works under beta alone.
                    return Some(rabs("a", rabs("w", rapp(var("w"), var("a")))));
                }
                if d.tensor || !d.constants.is_empty() {
                    // Under beta alone no candidate survives pairs or
                    // inert constants.
                    return None;
                }
                // Constant-free planar model: every closed normal form is an
                // abstraction, so the composition representative qualifies.
            }
            "L" | "P" if !d.tensor => {
                if d.exchange {
                    return if name == "L" {
                        Some(rabs("a", rabs("w", rapp(var("w"), var("a")))))
                    } else {
                        Some(rabs(
                            "a",
                            rabs(
                                "b",
                                rabs("t", rapp(rapp(var("t"), var("a")), var("b"))),
                            ),
                        ))
                    };
                }
                return None;
            }
            _ => {}
        }
        let s = CombSym::from_name(name)?;
        let rep = representative(s);
        if !validate(&rep, &self.discipline).ok() {
            return None;
        }
        normalize_lo(&rep, &self.discipline, self.fuel).into_normal()
    }

    fn unary(&self, op: &str, e: &Term) -> Option<Term> {
        use crate::syntax::var;
        if let Some(f) = self.installed_unary.get(op) {
            return f(e);
        }
        let fv = free_vars(e);
        let u = crate::syntax::fresh_name("u", &fv);
        let raw = match op {
            // •a = λu.u a
            "dot" => rabs(&u, rapp(var(&u), e.clone())),
            // a° = λu.λv.u (a v)
            "circ" => {
                let v = crate::syntax::fresh_name("v", &fv);
                rabs(&u, rabs(&v, rapp(var(&u), rapp(e.clone(), var(&v)))))
            }
            // dagr(a) = λ>u. u <@ a
            "dagr" if self.discipline.left_ops => rabs(&u, lapp(var(&u), e.clone())),
            // dagl(a) = λ<u. a u
            "dagl" if self.discipline.left_ops => labs(&u, rapp(e.clone(), var(&u))),
            _ => return None,
        };
        normalize_lo(&raw, &self.discipline, self.fuel).into_normal()
    }

    fn constant(&self, name: &str) -> Option<Term> {
        // Any constant symbol is an inert element of the (conservatively
        // extended) term model.
        Some(Term::Const(name.to_string()))
    }

    fn eq(&self, a: &Term, b: &Term) -> EqVerdict {
        if alpha_eq(a, b) {
            EqVerdict::Equal
        } else {
            EqVerdict::NotEqual
        }
    }

    fn sample(&self, seed: u64, n: usize) -> Vec<Term> {
        let mut rng = crate::gen::rng_from_seed(seed);
        let mut out = Vec::new();
        let mut guard = 0;
        while out.len() < n && guard < 50 * n + 100 {
            guard += 1;
            if let Some(t) = crate::gen::closed_normal_term(&self.discipline, 5, &mut rng) {
                out.push(t);
            }
        }
        out
    }

    fn fresh_constants(&self, n: usize) -> Option<Vec<Term>> {
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let k = self.fresh_counter.fetch_add(1, Ordering::Relaxed);
            out.push(Term::Const(format!("fc{k}")));
        }
        Some(out)
    }

    fn show(&self, e: &Term) -> String {
        pretty(e)
    }
}

impl Extensible for TermModel {
    fn install(&mut self, name: &str, e: Term) {
        self.installed.insert(name.to_string(), e);
    }

    fn install_unary(&mut self, op: &str, f: UnaryFn<Term>) -> Result<(), AlgebraError> {
        if self.installed_unary.contains_key(op) {
            return Err(AlgebraError::DuplicateUnary(op.to_string()));
        }
        self.installed_unary.insert(op.to_string(), f);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_axiom, AxiomVerdict, CheckMode};

    #[test]
    fn planar_model_b_axiom_fresh() {
        let m = TermModel::planar();
        let rep = check_axiom(&m, &crate::algebra::ax_b(), CheckMode::FreshConstants).unwrap();
        assert!(rep.holds(), "{:?}", rep.verdict);
    }

    #[test]
    fn planar_model_dot_axiom_fresh() {
        let m = TermModel::planar();
        let rep = check_axiom(&m, &crate::algebra::ax_dot(), CheckMode::FreshConstants).unwrap();
        assert!(rep.holds(), "{:?}", rep.verdict);
    }

    #[test]
    fn itimes_with_constant_fails_beta_but_holds_eta() {
        // With an inert constant the composition candidate for IX fails
        // under beta alone and holds under beta-eta: the engine behind the
        // separation of the planar models with and without constants.
        let mut beta = TermModel::planar_const();
        assert!(beta.distinguished("IX").is_none());
        let candidate = crate::compile::representative(crate::compile::CombSym::ITimes);
        let candidate = beta.element(&candidate).unwrap();
        crate::algebra::Extensible::install(&mut beta, "IX", candidate);
        let rep = check_axiom(&beta, &crate::algebra::ax_itimes(), CheckMode::FreshConstants)
            .unwrap();
        assert!(matches!(rep.verdict, AxiomVerdict::FailsAt(_)));

        let eta = TermModel::planar_const_eta();
        let rep =
            check_axiom(&eta, &crate::algebra::ax_itimes(), CheckMode::FreshConstants).unwrap();
        assert!(rep.holds(), "{:?}", rep.verdict);
    }

    #[test]
    fn itimes_sampled_on_pure_planar_model() {
        // On closed planar terms the IX axiom holds under plain beta.
        let m = TermModel::planar();
        let rep = check_axiom(
            &m,
            &crate::algebra::ax_itimes(),
            CheckMode::Sampled { n: 60, seed: 3 },
        )
        .unwrap();
        assert!(rep.holds(), "{:?}", rep.verdict);
    }

    #[test]
    fn tensor_model_lp_axiom() {
        let m = TermModel::planar_tensor();
        for ax in [crate::algebra::ax_lp(), crate::algebra::ax_itimes()] {
            let rep = check_axiom(&m, &ax, CheckMode::FreshConstants).unwrap();
            assert!(rep.holds(), "{}: {:?}", ax.name, rep.verdict);
        }
    }

    #[test]
    fn biplanar_model_axioms() {
        let m = TermModel::biplanar();
        for ax in crate::algebra::ClassName::BiBDI.axioms() {
            let rep = check_axiom(&m, &ax, CheckMode::FreshConstants).unwrap();
            assert!(rep.holds(), "{}: {:?}", ax.name, rep.verdict);
        }
    }

    #[test]
    fn linear_model_has_c_but_planar_does_not() {
        let lin = TermModel::linear();
        assert!(lin.distinguished("C").is_some());
        let pla = TermModel::planar();
        assert!(pla.distinguished("C").is_none());
        assert!(pla.distinguished("S").is_none());
    }
}
