//! Seeded random generation of discipline-valid terms and basis polynomials.
//!
//! Generation is driven by the construction rules: a term is built for a
//! given context (the exact free-variable sequence it must have), so every
//! generated term validates by construction. All generators are
//! deterministic in the seed.

use crate::compile::{capp, clapp, cvar, sym, unary, Basis, CombTerm, UnarySym};
use crate::syntax::{Discipline, Name, Term};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random closed term of the discipline with roughly `depth` nesting.
pub fn closed_term(d: &Discipline, depth: usize, rng: &mut ChaCha8Rng) -> Term {
    if d.exchange && d.contraction && d.weakening {
        closed_ordinary(d, depth, rng)
    } else {
        let mut fresh = NameGen::new();
        gen_ctx(&[], depth, d, rng, &mut fresh)
    }
}

struct NameGen {
    next: usize,
}

impl NameGen {
    fn new() -> Self {
        NameGen { next: 0 }
    }

    fn fresh(&mut self) -> Name {
        let n = self.next;
        self.next += 1;
        format!("v{n}")
    }
}

/// Generates a term whose free-variable sequence is exactly `ctx`.
fn gen_ctx(
    ctx: &[Name],
    budget: usize,
    d: &Discipline,
    rng: &mut ChaCha8Rng,
    fresh: &mut NameGen,
) -> Term {
    let consts: Vec<&Name> = d.constants.iter().collect();
    if budget == 0 {
        return base_case(ctx, d, rng, fresh, &consts);
    }
    // Candidate moves; weights tuned for small interesting terms.
    #[derive(Clone, Copy)]
    enum Move {
        Var,
        Const,
        RAbs,
        LAbs,
        RApp,
        LApp,
        Tensor,
        LetPair,
    }
    let mut moves: Vec<Move> = Vec::new();
    if ctx.len() == 1 {
        moves.push(Move::Var);
    }
    if ctx.is_empty() && !consts.is_empty() {
        moves.push(Move::Const);
    }
    moves.push(Move::RAbs);
    moves.push(Move::RAbs);
    if d.left_ops {
        moves.push(Move::LAbs);
        moves.push(Move::LAbs);
    }
    if ctx.len() >= 2 || budget > 1 {
        moves.push(Move::RApp);
        if d.left_ops {
            moves.push(Move::LApp);
        }
        if d.tensor {
            moves.push(Move::Tensor);
            moves.push(Move::LetPair);
        }
    }
    match *moves.choose(rng).unwrap() {
        Move::Var | Move::Const => base_case(ctx, d, rng, fresh, &consts),
        Move::RAbs => {
            let x = fresh.fresh();
            let mut inner: Vec<Name> = ctx.to_vec();
            if d.exchange {
                let pos = rng.gen_range(0..=inner.len());
                inner.insert(pos, x.clone());
            } else {
                inner.push(x.clone());
            }
            Term::RAbs(x, Box::new(gen_ctx(&inner, budget - 1, d, rng, fresh)))
        }
        Move::LAbs => {
            let x = fresh.fresh();
            let mut inner = vec![x.clone()];
            inner.extend_from_slice(ctx);
            Term::LAbs(x, Box::new(gen_ctx(&inner, budget - 1, d, rng, fresh)))
        }
        Move::RApp => {
            let (l, r) = split_ctx(ctx, d, rng);
            Term::RApp(
                Box::new(gen_ctx(&l, budget - 1, d, rng, fresh)),
                Box::new(gen_ctx(&r, budget - 1, d, rng, fresh)),
            )
        }
        Move::LApp => {
            let (l, r) = split_ctx(ctx, d, rng);
            Term::LApp(
                Box::new(gen_ctx(&l, budget - 1, d, rng, fresh)),
                Box::new(gen_ctx(&r, budget - 1, d, rng, fresh)),
            )
        }
        Move::Tensor => {
            let (l, r) = split_ctx(ctx, d, rng);
            Term::Tensor(
                Box::new(gen_ctx(&l, budget - 1, d, rng, fresh)),
                Box::new(gen_ctx(&r, budget - 1, d, rng, fresh)),
            )
        }
        Move::LetPair => {
            // seq(let x*y = M in N) = (seq(N) minus x,y) ++ seq(M)
            let (body_ctx, scrut_ctx) = split_ctx(ctx, d, rng);
            let x = fresh.fresh();
            let y = fresh.fresh();
            let mut inner = body_ctx.clone();
            inner.push(x.clone());
            inner.push(y.clone());
            Term::LetPair(
                x,
                y,
                Box::new(gen_ctx(&scrut_ctx, budget - 1, d, rng, fresh)),
                Box::new(gen_ctx(&inner, budget - 1, d, rng, fresh)),
            )
        }
    }
}

fn base_case(
    ctx: &[Name],
    d: &Discipline,
    rng: &mut ChaCha8Rng,
    fresh: &mut NameGen,
    consts: &[&Name],
) -> Term {
    match ctx.len() {
        0 => {
            if !consts.is_empty() && rng.gen_bool(0.5) {
                Term::Const((*consts.choose(rng).unwrap()).clone())
            } else if d.left_ops && rng.gen_bool(0.5) {
                let x = fresh.fresh();
                Term::LAbs(x.clone(), Box::new(Term::Var(x)))
            } else {
                let x = fresh.fresh();
                Term::RAbs(x.clone(), Box::new(Term::Var(x)))
            }
        }
        1 => Term::Var(ctx[0].clone()),
        _ => {
            // Must split; peel one variable off an application.
            let cut = if d.exchange {
                rng.gen_range(1..ctx.len())
            } else {
                ctx.len() - 1
            };
            let (l, r) = (&ctx[..cut], &ctx[cut..]);
            Term::RApp(
                Box::new(base_case(l, d, rng, fresh, consts)),
                Box::new(base_case(r, d, rng, fresh, consts)),
            )
        }
    }
}

fn split_ctx(ctx: &[Name], d: &Discipline, rng: &mut ChaCha8Rng) -> (Vec<Name>, Vec<Name>) {
    if d.exchange {
        let mut shuffled = ctx.to_vec();
        shuffled.shuffle(rng);
        let cut = rng.gen_range(0..=shuffled.len());
        (shuffled[..cut].to_vec(), shuffled[cut..].to_vec())
    } else {
        let cut = rng.gen_range(0..=ctx.len());
        (ctx[..cut].to_vec(), ctx[cut..].to_vec())
    }
}

fn closed_ordinary(d: &Discipline, depth: usize, rng: &mut ChaCha8Rng) -> Term {
    fn go(
        scope: &[Name],
        budget: usize,
        d: &Discipline,
        rng: &mut ChaCha8Rng,
        fresh: &mut NameGen,
    ) -> Term {
        let consts: Vec<&Name> = d.constants.iter().collect();
        if budget == 0 || (rng.gen_bool(0.3) && !scope.is_empty()) {
            if !scope.is_empty() && (consts.is_empty() || rng.gen_bool(0.8)) {
                return Term::Var(scope.choose(rng).unwrap().clone());
            }
            if !consts.is_empty() {
                return Term::Const((*consts.choose(rng).unwrap()).clone());
            }
            let x = fresh.fresh();
            return Term::RAbs(x.clone(), Box::new(Term::Var(x)));
        }
        if scope.is_empty() || rng.gen_bool(0.5) {
            let x = fresh.fresh();
            let mut inner = scope.to_vec();
            inner.push(x.clone());
            Term::RAbs(x, Box::new(go(&inner, budget - 1, d, rng, fresh)))
        } else {
            Term::RApp(
                Box::new(go(scope, budget - 1, d, rng, fresh)),
                Box::new(go(scope, budget - 1, d, rng, fresh)),
            )
        }
    }
    let mut fresh = NameGen::new();
    go(&[], depth, d, rng, &mut fresh)
}

/// Random closed normal form: generate, then normalize.
pub fn closed_normal_term(d: &Discipline, depth: usize, rng: &mut ChaCha8Rng) -> Option<Term> {
    let t = closed_term(d, depth, rng);
    crate::rewrite::normalize_lo(&t, d, 20_000).into_normal()
}

/// A random polynomial over the basis in which the variable `x` occurs
/// exactly once and, for the ordered bases, rightmost. Closed leaf material
/// is drawn from the basis symbols and the supplied constants.
pub fn polynomial_with_var(
    basis: Basis,
    consts: &[Name],
    depth: usize,
    rng: &mut ChaCha8Rng,
) -> CombTerm {
    let var = cvar("x");
    grow_poly(basis, var, consts, depth, rng)
}

fn grow_poly(
    basis: Basis,
    spine: CombTerm,
    consts: &[Name],
    depth: usize,
    rng: &mut ChaCha8Rng,
) -> CombTerm {
    if depth == 0 {
        return spine;
    }
    // The unordered SK basis also supports contraction of the variable.
    if matches!(basis, Basis::SK) && rng.gen_bool(0.15) {
        let dup = capp(spine.clone(), spine);
        return grow_poly(basis, dup, consts, depth - 1, rng);
    }
    let closed = closed_poly(basis, consts, depth.saturating_sub(1).min(2), rng);
    let has_lapp = matches!(basis, Basis::BiBDI);
    let next = match rng.gen_range(0..if has_lapp { 4 } else { 2 }) {
        // x somewhere in the function side, closed argument
        0 => capp(spine, closed),
        // x in the argument side, open head allowed
        1 => capp(closed, spine),
        // bi-planar: left applications on either side
        2 => clapp(spine, closed),
        _ => clapp(closed, spine),
    };
    grow_poly(basis, next, consts, depth - 1, rng)
}

/// A random variable-free polynomial over the basis.
pub fn closed_poly(
    basis: Basis,
    consts: &[Name],
    depth: usize,
    rng: &mut ChaCha8Rng,
) -> CombTerm {
    if depth == 0 || rng.gen_bool(0.4) {
        return atom(basis, consts, rng);
    }
    let a = closed_poly(basis, consts, depth - 1, rng);
    let b = closed_poly(basis, consts, depth - 1, rng);
    if matches!(basis, Basis::BiBDI) && rng.gen_bool(0.3) {
        clapp(a, b)
    } else {
        capp(a, b)
    }
}

fn atom(basis: Basis, consts: &[Name], rng: &mut ChaCha8Rng) -> CombTerm {
    let syms = basis.symbols();
    let n_syms = syms.len();
    let n = n_syms + consts.len();
    let k = rng.gen_range(0..n.max(1));
    let base = if k < n_syms {
        sym(syms[k])
    } else {
        CombTerm::Const(consts[k - n_syms].clone())
    };
    // Occasionally wrap a closed atom in a unary operation of the basis.
    if !basis.unaries().is_empty() && rng.gen_bool(0.2) {
        let ops = basis.unaries();
        let op = ops[rng.gen_range(0..ops.len())];
        if op == UnarySym::Circ {
            // circle of an atom stays closed and well-formed
            return unary(op, base);
        }
        return unary(op, base);
    }
    base
}

/// Values of the computational calculus: variables and abstractions.
pub fn cbv_value(vars: &[Name], depth: usize, rng: &mut ChaCha8Rng) -> Term {
    if rng.gen_bool(0.4) && !vars.is_empty() {
        Term::Var(vars.choose(rng).unwrap().clone())
    } else {
        let mut fresh = NameGen::new();
        let x = format!("b{}", rng.gen_range(0..1000));
        let body = {
            let mut scope: Vec<Name> = vars.to_vec();
            scope.push(x.clone());
            ordinary_open(&scope, depth, rng, &mut fresh)
        };
        Term::RAbs(x, Box::new(body))
    }
}

/// Open ordinary term over the given scope.
pub fn ordinary_open_term(scope: &[Name], depth: usize, rng: &mut ChaCha8Rng) -> Term {
    let mut fresh = NameGen::new();
    ordinary_open(scope, depth, rng, &mut fresh)
}

fn ordinary_open(
    scope: &[Name],
    budget: usize,
    rng: &mut ChaCha8Rng,
    fresh: &mut NameGen,
) -> Term {
    if budget == 0 || (!scope.is_empty() && rng.gen_bool(0.35)) {
        if scope.is_empty() {
            let x = fresh.fresh();
            return Term::RAbs(x.clone(), Box::new(Term::Var(x)));
        }
        return Term::Var(scope.choose(rng).unwrap().clone());
    }
    if rng.gen_bool(0.45) {
        let x = fresh.fresh();
        let mut inner = scope.to_vec();
        inner.push(x.clone());
        Term::RAbs(x, Box::new(ordinary_open(&inner, budget - 1, rng, fresh)))
    } else {
        Term::RApp(
            Box::new(ordinary_open(scope, budget - 1, rng, fresh)),
            Box::new(ordinary_open(scope, budget - 1, rng, fresh)),
        )
    }
}

/// An evaluation context `E ::= [] | E M | V E` plugged with the given term.
pub fn plug_eval_context(hole: Term, vars: &[Name], depth: usize, rng: &mut ChaCha8Rng) -> Term {
    let mut t = hole;
    for _ in 0..depth {
        if rng.gen_bool(0.5) {
            let m = ordinary_open_term(vars, 2, rng);
            t = Term::RApp(Box::new(t), Box::new(m));
        } else {
            let v = cbv_value(vars, 2, rng);
            t = Term::RApp(Box::new(v), Box::new(t));
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::validate;

    #[test]
    fn generated_terms_validate() {
        for (name, d) in [
            ("planar", Discipline::planar()),
            ("linear", Discipline::linear()),
            ("planar-tensor", Discipline::planar_tensor()),
            ("biplanar", Discipline::biplanar()),
            ("ordinary", Discipline::ordinary()),
            (
                "planar+c",
                Discipline::planar().with_constants(["c1", "c2"]),
            ),
        ] {
            let mut rng = rng_from_seed(11);
            for i in 0..200 {
                let t = closed_term(&d, 5, &mut rng);
                let rep = validate(&t, &d);
                assert!(
                    rep.ok(),
                    "{name} term {i} invalid: {} ({:?})",
                    t,
                    rep.violations
                );
                assert!(t.is_closed());
            }
        }
    }

    #[test]
    fn generated_polynomials_are_abstractable() {
        use crate::compile::abstract_in;
        for basis in [Basis::SK, Basis::BCI, Basis::BIDot, Basis::BiBDI] {
            let mut rng = rng_from_seed(5);
            for _ in 0..100 {
                let p = polynomial_with_var(basis, &["c".into()], 4, &mut rng);
                assert!(abstract_in(basis, &p, "x").is_ok(), "{basis:?}: {p}");
            }
        }
    }
}
