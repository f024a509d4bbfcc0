//! Printer inverse to the parser: `parse(pretty(t))` is alpha-equal to `t`.

use super::Term;

// Precedence levels, loosest to tightest: tensor < left app < right app.
const P_TERM: u8 = 0;
const P_TENS: u8 = 1;
const P_LAPP: u8 = 2;
const P_APP: u8 = 3;
const P_ATOM: u8 = 4;

pub fn pretty(t: &Term) -> String {
    let mut s = String::new();
    go(t, P_TERM, &mut s);
    s
}

fn go(t: &Term, prec: u8, out: &mut String) {
    match t {
        Term::Var(x) => out.push_str(x),
        Term::Const(c) => {
            out.push('#');
            out.push_str(c);
        }
        Term::RAbs(x, b) => wrap(prec > P_TERM, out, |out| {
            out.push('\\');
            out.push_str(x);
            out.push('.');
            go(b, P_TERM, out);
        }),
        Term::LAbs(x, b) => wrap(prec > P_TERM, out, |out| {
            out.push_str("\\<");
            out.push_str(x);
            out.push('.');
            go(b, P_TERM, out);
        }),
        Term::LetPair(x, y, s, b) => wrap(prec > P_TERM, out, |out| {
            out.push_str("let ");
            out.push_str(x);
            out.push('*');
            out.push_str(y);
            out.push_str(" = ");
            go(s, P_TERM, out);
            out.push_str(" in ");
            go(b, P_TERM, out);
        }),
        Term::Tensor(l, r) => wrap(prec > P_TENS, out, |out| {
            go(l, P_TENS, out);
            out.push_str(" * ");
            go(r, P_LAPP, out);
        }),
        Term::LApp(n, m) => wrap(prec > P_LAPP, out, |out| {
            go(n, P_LAPP, out);
            out.push_str(" <@ ");
            go(m, P_APP, out);
        }),
        Term::RApp(f, a) => wrap(prec > P_APP, out, |out| {
            go(f, P_APP, out);
            out.push(' ');
            go(a, P_ATOM, out);
        }),
    }
}

fn wrap(parens: bool, out: &mut String, body: impl FnOnce(&mut String)) {
    if parens {
        out.push('(');
        body(out);
        out.push(')');
    } else {
        body(out);
    }
}
