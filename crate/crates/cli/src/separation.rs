//! The separation refutation suite.
//!
//! Each scripted check takes a candidate combinator for a model where the
//! corresponding class membership provably fails, and refutes the candidate
//! by normalization, showing the distinct normal forms. These are candidate
//! refutations on named instances, never non-existence proofs.

use crate::report::{Report, Verdict};
use lambdacomb::models::TermModel;
use lambdacomb::rewrite::{equal, normalize_lo, EqVerdict};
use lambdacomb::syntax::{cst, parse, pretty, rapp, rapps, Term};
use serde::Deserialize;

pub const DEFAULT_CANDIDATES: &str = include_str!("../data/candidates.json");

#[derive(Debug, Default, Deserialize)]
pub struct Candidates {
    /// Candidates for the unit-eliminator in the one-constant planar model
    /// under beta.
    #[serde(default)]
    pub itimes_planar_const: Vec<String>,
    /// Candidate pairing/unpairing pairs in the three-constant beta-eta
    /// planar model.
    #[serde(default)]
    pub lp_planar_const_eta: Vec<(String, String)>,
    /// Candidate exchange combinators in the bi-planar model.
    #[serde(default)]
    pub c_biplanar: Vec<String>,
    /// Candidate argument-flip combinators in the bi-planar model.
    #[serde(default)]
    pub t_biplanar: Vec<String>,
}

pub fn run(candidates: &Candidates, fuel: u64, report: &mut Report) {
    report.note(
        "each verdict refutes one named candidate by normalization; \
         absence of a combinator is not proved here",
    );

    // Unit eliminator in the one-constant planar model: IX c (\x.x) must be
    // beta-equal to c, and never is.
    let lpc = TermModel::planar_const();
    for (k, src) in candidates.itimes_planar_const.iter().enumerate() {
        let name = format!("itimes-planar-const[{k}]");
        let cand = match parse(src, lpc.discipline()) {
            Ok(t) => match lpc.element(&t) {
                Ok(t) => t,
                Err(e) => {
                    report.push(Verdict::new(name, "fail").with_detail(format!("bad candidate: {e}")));
                    continue;
                }
            },
            Err(e) => {
                report.push(Verdict::new(name, "fail").with_detail(format!("bad candidate: {e}")));
                continue;
            }
        };
        let idt = parse("\\x.x", lpc.discipline()).unwrap();
        let lhs = rapps(cand, [cst("c"), idt]);
        let lnf = normalize_lo(&lhs, lpc.discipline(), fuel);
        let rnf = cst("c");
        let refuted = !lambdacomb::syntax::alpha_eq(lnf.term(), &rnf);
        report.push(
            Verdict::new(name, if refuted { "refuted" } else { "unexpected-pass" }).with_witness(
                format!("{} vs {}", pretty(lnf.term()), pretty(&rnf)),
            ),
        );
    }

    // Pairing candidates in the three-constant beta-eta model: the check is
    // L c1 (P c2 c3) against c1 c2 c3.
    let lpce = TermModel::planar_const_eta();
    for (k, (lsrc, psrc)) in candidates.lp_planar_const_eta.iter().enumerate() {
        let name = format!("lp-planar-const-eta[{k}]");
        let parsed = parse(lsrc, lpce.discipline())
            .and_then(|l| parse(psrc, lpce.discipline()).map(|p| (l, p)));
        let (l, p) = match parsed {
            Ok(pair) => pair,
            Err(e) => {
                report.push(Verdict::new(name, "fail").with_detail(format!("bad candidate: {e}")));
                continue;
            }
        };
        let lhs = rapp(
            rapp(l, cst("c1")),
            rapp(rapp(p, cst("c2")), cst("c3")),
        );
        let rhs = rapps(cst("c1"), [cst("c2"), cst("c3")]);
        let verdict = equal(&lhs, &rhs, lpce.discipline(), fuel);
        let lnf = normalize_lo(&lhs, lpce.discipline(), fuel);
        let rnf = normalize_lo(&rhs, lpce.discipline(), fuel);
        report.push(
            Verdict::new(
                name,
                match verdict {
                    EqVerdict::NotEqual => "refuted",
                    EqVerdict::Equal => "unexpected-pass",
                    EqVerdict::Unknown => "unknown",
                },
            )
            .with_witness(format!("{} vs {}", pretty(lnf.term()), pretty(rnf.term()))),
        );
    }

    // Exchange candidates in the bi-planar model: C M N L = M L N. The
    // instances are chosen so that no shipped candidate collapses them.
    let lb = TermModel::biplanar();
    let m_t = parse("\\>x.\\>y.x y", lb.discipline()).unwrap();
    let n_t = parse("\\>x.\\>y.\\>z.x (y z)", lb.discipline()).unwrap();
    let l_t = parse("\\>x.x", lb.discipline()).unwrap();
    for (k, src) in candidates.c_biplanar.iter().enumerate() {
        let name = format!("c-biplanar[{k}]");
        let cand = match parse(src, lb.discipline()) {
            Ok(t) => t,
            Err(e) => {
                report.push(Verdict::new(name, "fail").with_detail(format!("bad candidate: {e}")));
                continue;
            }
        };
        let lhs = rapps(cand, [m_t.clone(), n_t.clone(), l_t.clone()]);
        let rhs = rapps(m_t.clone(), [l_t.clone(), n_t.clone()]);
        push_refutation(report, name, &lhs, &rhs, &lb, fuel);
    }

    // Argument-flip candidates in the bi-planar model: T M N = N M.
    for (k, src) in candidates.t_biplanar.iter().enumerate() {
        let name = format!("t-biplanar[{k}]");
        let cand = match parse(src, lb.discipline()) {
            Ok(t) => t,
            Err(e) => {
                report.push(Verdict::new(name, "fail").with_detail(format!("bad candidate: {e}")));
                continue;
            }
        };
        let lhs = rapps(cand, [m_t.clone(), n_t.clone()]);
        let rhs = rapp(n_t.clone(), m_t.clone());
        push_refutation(report, name, &lhs, &rhs, &lb, fuel);
    }
}

fn push_refutation(
    report: &mut Report,
    name: String,
    lhs: &Term,
    rhs: &Term,
    model: &TermModel,
    fuel: u64,
) {
    let verdict = equal(lhs, rhs, model.discipline(), fuel);
    let lnf = normalize_lo(lhs, model.discipline(), fuel);
    let rnf = normalize_lo(rhs, model.discipline(), fuel);
    report.push(
        Verdict::new(
            name,
            match verdict {
                EqVerdict::NotEqual => "refuted",
                EqVerdict::Equal => "unexpected-pass",
                EqVerdict::Unknown => "unknown",
            },
        )
        .with_witness(format!("{} vs {}", pretty(lnf.term()), pretty(rnf.term()))),
    );
}
