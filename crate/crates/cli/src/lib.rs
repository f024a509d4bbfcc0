//! Command implementations for the workbench CLI.
//!
//! Exit codes: 0 pass/equal, 1 fail/not-equal, 2 unknown, 3 usage error.

pub mod report;
pub mod separation;

use clap::{Parser, Subcommand, ValueEnum};
use lambdacomb::algebra::{
    check_axiom, classify, parse_axioms, parse_comb, ApplicativeStructure, AxiomVerdict,
    CheckMode, ClassName,
};
use lambdacomb::assemblies::{
    check_map, closed_structure_suite, load_assembly_file, Assembly,
};
use lambdacomb::compile::{
    abstract_in, compile_tensor, computational_eq, cps_translate, expand, left_inverse, Basis,
};
use lambdacomb::models::tree::{parse_set_expr, parse_tree, show_tree, FreeGroup2, OrderedGroup};
use lambdacomb::models::{te_adjoint_pair, te_model, tree_model, IntAdd, TermModel, TreeModel, Variant};
use lambdacomb::rewrite::{equal, trace, EqVerdict, NormalizeOutcome, Strategy, DEFAULT_FUEL};
use lambdacomb::syntax::{parse, pretty, validate, Discipline, Term};
use report::{Report, Verdict};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "lambdacomb",
    about = "Workbench for substructural lambda calculi, combinatory bases, and realizability models",
    disable_help_subcommand = true
)]
pub struct Cli {
    /// Structural discipline for term arguments.
    #[arg(long, global = true, value_enum, default_value = "planar")]
    pub discipline: DisciplineArg,

    /// Inert constants, comma separated (used as #name).
    #[arg(long, global = true, value_delimiter = ',')]
    pub constants: Vec<String>,

    /// Decide equality up to eta as well as beta.
    #[arg(long, global = true)]
    pub eta: bool,

    /// Step budget for normalization.
    #[arg(long, global = true)]
    pub fuel: Option<u64>,

    /// Seed for sampled checks (default: WORKBENCH_SEED or 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Size bound for tree-set enumeration and agreement.
    #[arg(long, global = true)]
    pub bound: Option<usize>,

    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,

    /// Print one line per reduction step.
    #[arg(long, global = true)]
    pub trace: bool,

    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum DisciplineArg {
    Ordinary,
    Linear,
    Planar,
    PlanarTensor,
    Biplanar,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BasisArg {
    Sk,
    Bci,
    Bidot,
    Biidot,
    Biilp,
    Bibdi,
    Biidotcirc,
}

impl BasisArg {
    fn to_basis(self) -> Basis {
        match self {
            BasisArg::Sk => Basis::SK,
            BasisArg::Bci => Basis::BCI,
            BasisArg::Bidot => Basis::BIDot,
            BasisArg::Biidot => Basis::BIIDot,
            BasisArg::Biilp => Basis::BIILP,
            BasisArg::Bibdi => Basis::BiBDI,
            BasisArg::Biidotcirc => Basis::BIIDotCirc,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Parse a term and validate it against the discipline.
    Parse { term: String },
    /// Reduce a term to normal form.
    Normalize { term: String },
    /// Decide equality of two terms.
    Eq { left: String, right: String },
    /// Bracket abstraction of a variable from a combinatory polynomial.
    Abstract {
        #[arg(long, value_enum)]
        basis: BasisArg,
        #[arg(long, default_value = "x")]
        var: String,
        poly: String,
    },
    /// Translate a closed planar tensor term to the B/I/IX/L/P basis.
    CompileTensor { term: String },
    /// Call-by-value CPS translation of an ordinary term.
    Cps { term: String },
    /// Equality in the computational calculus, via CPS images.
    Ceq { left: String, right: String },
    /// Left inverse of a closed constant-free planar term.
    LeftInverse { term: String },
    /// Classify a model against the combinator class hierarchy.
    Classify {
        #[arg(long, default_value = "planar")]
        model: String,
        /// fresh | sampled
        #[arg(long)]
        mode: Option<String>,
    },
    /// Check axioms from a declarative file against a model.
    Axioms {
        #[arg(long, default_value = "planar")]
        model: String,
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        mode: Option<String>,
    },
    /// Evaluate tree-set expressions: membership or bounded enumeration.
    TreeEval {
        /// z | free2
        #[arg(long, default_value = "z")]
        group: String,
        /// t | tp | tpp | te
        #[arg(long, default_value = "t")]
        variant: String,
        expr: String,
        #[arg(long)]
        member: Option<String>,
        #[arg(long = "enum")]
        enumerate: Option<usize>,
    },
    /// Run the closed-structure suite on built-in fixtures or a file.
    AssemblySuite {
        #[arg(long, default_value = "planar-tensor")]
        model: String,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Run the candidate refutation suite.
    SeparationSuite {
        #[arg(long)]
        candidates: Option<PathBuf>,
        /// Run the adjoint-pair sample checks of the tree models too.
        #[arg(long)]
        with_tree_pair: bool,
    },
}

pub fn default_seed(cli: &Cli) -> u64 {
    cli.seed.or_else(|| {
        std::env::var("WORKBENCH_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(0)
}

fn cli_discipline(cli: &Cli) -> Discipline {
    let base = match cli.discipline {
        DisciplineArg::Ordinary => Discipline::ordinary(),
        DisciplineArg::Linear => Discipline::linear(),
        DisciplineArg::Planar => Discipline::planar(),
        DisciplineArg::PlanarTensor => Discipline::planar_tensor(),
        DisciplineArg::Biplanar => Discipline::biplanar(),
    };
    base.with_constants(cli.constants.iter().cloned())
        .with_eta(cli.eta)
}

/// Known model names for `classify`, `axioms`, and `assembly-suite`.
fn term_model_by_name(name: &str) -> Option<TermModel> {
    Some(match name {
        "planar" => TermModel::planar(),
        "planar-const" => TermModel::planar_const(),
        "planar-const-eta" => TermModel::planar_const_eta(),
        "planar-tensor" => TermModel::planar_tensor(),
        "biplanar" => TermModel::biplanar(),
        "linear" => TermModel::linear(),
        "ordinary" => TermModel::ordinary(),
        _ => return None,
    })
}

fn default_candidate_symbols(name: &str) -> &'static [&'static str] {
    match name {
        "ordinary" => &["S", "K"],
        "linear" => &["B", "C", "I"],
        "planar" => &["B", "I", "IX"],
        "planar-const" => &["B", "I"],
        "planar-const-eta" => &["B", "I", "IX"],
        "planar-tensor" => &["B", "I", "IX", "L", "P"],
        "biplanar" => &["B>", "B<", "D>", "D<", "I>", "I<"],
        _ => &[],
    }
}

pub fn run(cli: &Cli) -> i32 {
    let fuel = cli.fuel.unwrap_or(DEFAULT_FUEL);
    let seed = default_seed(cli);
    let bound = cli.bound.unwrap_or(7);
    let started = std::time::Instant::now();
    let code = match &cli.cmd {
        Cmd::Parse { term } => cmd_parse(cli, term),
        Cmd::Normalize { term } => cmd_normalize(cli, term, fuel, seed),
        Cmd::Eq { left, right } => cmd_eq(cli, left, right, fuel, seed),
        Cmd::Abstract { basis, var, poly } => cmd_abstract(cli, *basis, var, poly, seed),
        Cmd::CompileTensor { term } => cmd_compile_tensor(cli, term, seed),
        Cmd::Cps { term } => cmd_cps(cli, term, seed),
        Cmd::Ceq { left, right } => cmd_ceq(cli, left, right, fuel, seed),
        Cmd::LeftInverse { term } => cmd_left_inverse(cli, term, fuel, seed),
        Cmd::Classify { model, mode } => cmd_classify(cli, model, mode.as_deref(), seed),
        Cmd::Axioms { model, file, mode } => cmd_axioms(cli, model, file, mode.as_deref(), seed),
        Cmd::TreeEval {
            group,
            variant,
            expr,
            member,
            enumerate,
        } => cmd_tree_eval(cli, group, variant, expr, member.as_deref(), *enumerate, bound, seed),
        Cmd::AssemblySuite { model, file } => cmd_assembly_suite(cli, model, file.as_ref(), seed),
        Cmd::SeparationSuite {
            candidates,
            with_tree_pair,
        } => cmd_separation(cli, candidates.as_ref(), *with_tree_pair, fuel, bound, seed),
    };
    if !cli.json {
        eprintln!("wall time: {:.1} ms", started.elapsed().as_secs_f64() * 1e3);
    }
    code
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    3
}

fn parse_term_arg(cli: &Cli, src: &str) -> Result<(Term, Discipline), String> {
    let d = cli_discipline(cli);
    parse(src, &d).map(|t| (t, d)).map_err(|e| e.to_string())
}

fn cmd_parse(cli: &Cli, src: &str) -> i32 {
    let mut rep = Report::new("parse", &[src], 0);
    let d = cli_discipline(cli);
    match parse(src, &d) {
        Err(e) => rep.push(Verdict::new("parse", "fail").with_detail(e.to_string())),
        Ok(t) => {
            let v = validate(&t, &d);
            if v.ok() {
                rep.push(Verdict::new("parse", "pass").with_detail(pretty(&t)));
            } else {
                let (path, msg) = &v.violations[0];
                rep.push(
                    Verdict::new("parse", "fail")
                        .with_witness(format!("at {path:?}: {msg}"))
                        .with_detail(pretty(&t)),
                );
            }
        }
    }
    rep.emit(cli.json);
    rep.exit_code()
}

fn path_str(p: &[u8]) -> String {
    if p.is_empty() {
        "root".to_string()
    } else {
        p.iter()
            .map(u8::to_string)
            .collect::<Vec<_>>()
            .join(".")
    }
}

fn cmd_normalize(cli: &Cli, src: &str, fuel: u64, seed: u64) -> i32 {
    let (t, d) = match parse_term_arg(cli, src) {
        Ok(x) => x,
        Err(e) => return usage_error(&e),
    };
    let mut rep = Report::new("normalize", &[src], seed);
    rep.bound("fuel", fuel);
    let (out, log) = trace(&t, &d, fuel, Strategy::LeftmostOutermost);
    if cli.trace {
        for (i, rule, path) in &log {
            println!("step {i}: {} at {}", rule.name(), path_str(path));
        }
    }
    match out {
        NormalizeOutcome::Normal(nf, steps) => {
            rep.push(
                Verdict::new("normalize", "pass")
                    .with_detail(format!("{} ({steps} steps)", pretty(&nf))),
            );
        }
        NormalizeOutcome::FuelExhausted(partial, steps) => {
            rep.push(
                Verdict::new("normalize", "unknown")
                    .with_detail(format!("fuel exhausted after {steps} steps: {}", pretty(&partial))),
            );
        }
    }
    rep.emit(cli.json);
    rep.exit_code()
}

fn eq_verdict_name(v: EqVerdict) -> &'static str {
    match v {
        EqVerdict::Equal => "equal",
        EqVerdict::NotEqual => "not-equal",
        EqVerdict::Unknown => "unknown",
    }
}

fn cmd_eq(cli: &Cli, l: &str, r: &str, fuel: u64, seed: u64) -> i32 {
    let (lt, d) = match parse_term_arg(cli, l) {
        Ok(x) => x,
        Err(e) => return usage_error(&e),
    };
    let rt = match parse(r, &d) {
        Ok(t) => t,
        Err(e) => return usage_error(&e.to_string()),
    };
    let mut rep = Report::new("eq", &[l, r], seed);
    rep.bound("fuel", fuel);
    if cli.trace {
        for (side, t) in [("left", &lt), ("right", &rt)] {
            let (_, log) = trace(t, &d, fuel, Strategy::LeftmostOutermost);
            for (i, rule, path) in &log {
                println!("{side} step {i}: {} at {}", rule.name(), path_str(path));
            }
        }
    }
    let v = equal(&lt, &rt, &d, fuel);
    rep.push(Verdict::new("eq", eq_verdict_name(v)));
    rep.emit(cli.json);
    rep.exit_code()
}

fn cmd_abstract(cli: &Cli, basis: BasisArg, var: &str, poly: &str, seed: u64) -> i32 {
    let ct = match parse_comb(poly) {
        Ok(t) => t,
        Err(e) => return usage_error(&e),
    };
    let mut rep = Report::new("abstract", &[poly, var], seed);
    match abstract_in(basis.to_basis(), &ct, var) {
        Ok(out) => rep.push(Verdict::new("abstract", "pass").with_detail(out.to_string())),
        Err(e) => rep.push(Verdict::new("abstract", "fail").with_detail(e.to_string())),
    }
    rep.emit(cli.json);
    rep.exit_code()
}

fn cmd_compile_tensor(cli: &Cli, src: &str, seed: u64) -> i32 {
    let d = Discipline::planar_tensor()
        .with_constants(cli.constants.iter().cloned())
        .with_eta(true);
    let t = match parse(src, &d) {
        Ok(t) => t,
        Err(e) => return usage_error(&e.to_string()),
    };
    let mut rep = Report::new("compile-tensor", &[src], seed);
    match compile_tensor(&t) {
        Ok(ct) => rep.push(Verdict::new("compile-tensor", "pass").with_detail(ct.to_string())),
        Err(e) => rep.push(Verdict::new("compile-tensor", "fail").with_detail(e.to_string())),
    }
    rep.emit(cli.json);
    rep.exit_code()
}

fn cmd_cps(cli: &Cli, src: &str, seed: u64) -> i32 {
    let d = Discipline::ordinary().with_constants(cli.constants.iter().cloned());
    let t = match parse(src, &d) {
        Ok(t) => t,
        Err(e) => return usage_error(&e.to_string()),
    };
    let mut rep = Report::new("cps", &[src], seed);
    rep.push(Verdict::new("cps", "pass").with_detail(pretty(&cps_translate(&t))));
    rep.emit(cli.json);
    rep.exit_code()
}

fn cmd_ceq(cli: &Cli, l: &str, r: &str, fuel: u64, seed: u64) -> i32 {
    let d = Discipline::ordinary().with_constants(cli.constants.iter().cloned());
    let (lt, rt) = match (parse(l, &d), parse(r, &d)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return usage_error(&e.to_string()),
    };
    let mut rep = Report::new("ceq", &[l, r], seed);
    rep.bound("fuel", fuel);
    let v = computational_eq(&lt, &rt, fuel);
    rep.push(Verdict::new("ceq", eq_verdict_name(v)));
    rep.emit(cli.json);
    rep.exit_code()
}

fn cmd_left_inverse(cli: &Cli, src: &str, fuel: u64, seed: u64) -> i32 {
    let d = Discipline::planar();
    let t = match parse(src, &d) {
        Ok(t) => t,
        Err(e) => return usage_error(&e.to_string()),
    };
    let mut rep = Report::new("left-inverse", &[src], seed);
    rep.bound("fuel", fuel);
    match left_inverse(&t) {
        Err(e) => rep.push(Verdict::new("left-inverse", "fail").with_detail(e.to_string())),
        Ok(n) => {
            let idt = parse("\\x.x", &d).unwrap();
            let nm = lambdacomb::syntax::rapp(n.clone(), t);
            let v = equal(&nm, &idt, &d, fuel);
            rep.push(
                Verdict::new(
                    "left-inverse",
                    if v == EqVerdict::Equal { "pass" } else { "fail" },
                )
                .with_detail(pretty(&n)),
            );
        }
    }
    rep.emit(cli.json);
    rep.exit_code()
}

fn check_mode(mode: Option<&str>, default_fresh: bool, seed: u64) -> Result<CheckMode, String> {
    let sampled = CheckMode::Sampled {
        n: lambdacomb::algebra::DEFAULT_SAMPLES,
        seed,
    };
    match mode {
        None => Ok(if default_fresh {
            CheckMode::FreshConstants
        } else {
            sampled
        }),
        Some("fresh") => Ok(CheckMode::FreshConstants),
        Some("sampled") => Ok(sampled),
        Some(other) => Err(format!("unknown mode {other} (use fresh|sampled)")),
    }
}

fn cmd_classify(cli: &Cli, model: &str, mode: Option<&str>, seed: u64) -> i32 {
    let mut rep = Report::new("classify", &[model], seed);
    let classification = if let Some(m) = term_model_by_name(model) {
        // Fresh constants leave the constant-free planar model (that is the
        // point of the separation results), so its axiom instances are
        // sampled over closed terms instead.
        let mode = match check_mode(mode, model != "planar", seed) {
            Ok(m) => m,
            Err(e) => return usage_error(&e),
        };
        let candidates: std::collections::BTreeMap<String, Term> = default_candidate_symbols(model)
            .iter()
            .filter_map(|n| m.distinguished(n).map(|e| (n.to_string(), e)))
            .collect();
        if model == "planar" {
            rep.note(
                "no pairing candidates are tried for the constant-free planar model; \
                 classification is candidate-relative and never a non-existence proof",
            );
        }
        classify(&m, &candidates, mode)
    } else if let Some((tm, names)) = tree_model_by_name(model, cli.bound.unwrap_or(5)) {
        let mode = match check_mode(mode, false, seed) {
            Ok(CheckMode::FreshConstants) => {
                return usage_error("tree models support sampled mode only")
            }
            Ok(m) => m,
            Err(e) => return usage_error(&e),
        };
        let candidates: std::collections::BTreeMap<String, _> = names
            .iter()
            .filter_map(|n| tm.distinguished(n).map(|e| (n.to_string(), e)))
            .collect();
        classify(&tm, &candidates, mode)
    } else {
        return usage_error(&format!("unknown model {model}"));
    };
    for class in ClassName::all() {
        let passing = classification.classes.contains(class);
        rep.push(Verdict::new(
            format!("class {}", class.name()),
            if passing { "pass" } else { "fail" },
        ));
    }
    for r in &classification.reports {
        if let AxiomVerdict::FailsAt(w) = &r.verdict {
            rep.push(
                Verdict::new(format!("axiom {}", r.axiom), "fail").with_witness(w.clone()),
            );
        }
    }
    for n in &classification.notes {
        rep.note(n.clone());
    }
    rep.emit(cli.json);
    // Informational command: usage is the only error path.
    0
}

fn tree_model_by_name(name: &str, bound: usize) -> Option<(TreeModel<IntAdd>, Vec<&'static str>)> {
    match name {
        "tree-z" => Some((
            tree_model(IntAdd, Variant::T, bound),
            vec!["B", "I", "IX", "L", "P", "B>", "B<", "D>", "D<", "I>", "I<"],
        )),
        "tree-z-prime" => Some((
            tree_model(IntAdd, Variant::TPrime, bound),
            vec!["B", "I", "IX", "L", "P"],
        )),
        "tree-z-dprime" => Some((
            tree_model(IntAdd, Variant::TDoublePrime, bound),
            vec!["B", "I", "IX", "B>", "B<", "D>", "D<", "I>", "I<"],
        )),
        "te-z" => Some((te_model(IntAdd, bound), vec!["B", "C", "I"])),
        _ => None,
    }
}

fn cmd_axioms(cli: &Cli, model: &str, file: &PathBuf, mode: Option<&str>, seed: u64) -> i32 {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return usage_error(&format!("cannot read {}: {e}", file.display())),
    };
    let axioms = match parse_axioms(&text) {
        Ok(a) => a,
        Err(e) => return usage_error(&e.to_string()),
    };
    let mut rep = Report::new("axioms", &[model, &text], seed);
    let run_all = |s: &dyn Fn(&lambdacomb::algebra::Axiom) -> Result<lambdacomb::algebra::AxiomReport, lambdacomb::algebra::AlgebraError>,
                   rep: &mut Report| {
        for ax in &axioms {
            match s(ax) {
                Ok(r) => {
                    let verdict = match &r.verdict {
                        AxiomVerdict::Holds => "pass".to_string(),
                        AxiomVerdict::FailsAt(_) => "fail".to_string(),
                        AxiomVerdict::Unknown(_) => "unknown".to_string(),
                    };
                    let mut v = Verdict::new(format!("axiom {}", ax.name), verdict);
                    match &r.verdict {
                        AxiomVerdict::FailsAt(w) | AxiomVerdict::Unknown(w) => {
                            v = v.with_witness(w.clone());
                        }
                        AxiomVerdict::Holds => {}
                    }
                    rep.push(v);
                }
                Err(e) => {
                    rep.push(
                        Verdict::new(format!("axiom {}", ax.name), "fail")
                            .with_detail(e.to_string()),
                    );
                }
            }
        }
    };
    if let Some(m) = term_model_by_name(model) {
        let mode = match check_mode(mode, true, seed) {
            Ok(x) => x,
            Err(e) => return usage_error(&e),
        };
        run_all(&|ax| check_axiom(&m, ax, mode), &mut rep);
    } else if let Some((tm, _)) = tree_model_by_name(model, cli.bound.unwrap_or(5)) {
        let mode = match check_mode(mode, false, seed) {
            Ok(x) => x,
            Err(e) => return usage_error(&e),
        };
        run_all(&|ax| check_axiom(&tm, ax, mode), &mut rep);
    } else {
        return usage_error(&format!("unknown model {model}"));
    }
    rep.emit(cli.json);
    rep.exit_code()
}

#[allow(clippy::too_many_arguments)]
fn cmd_tree_eval(
    cli: &Cli,
    group: &str,
    variant: &str,
    expr: &str,
    member: Option<&str>,
    enumerate: Option<usize>,
    bound: usize,
    seed: u64,
) -> i32 {
    match group {
        "z" => tree_eval_in(cli, IntAdd, variant, expr, member, enumerate, bound, seed),
        "free2" => tree_eval_in(cli, FreeGroup2, variant, expr, member, enumerate, bound, seed),
        other => usage_error(&format!("unknown group {other} (use z|free2)")),
    }
}

#[allow(clippy::too_many_arguments)]
fn tree_eval_in<G: OrderedGroup>(
    cli: &Cli,
    group: G,
    variant: &str,
    expr: &str,
    member: Option<&str>,
    enumerate: Option<usize>,
    bound: usize,
    seed: u64,
) -> i32 {
    let model = match variant {
        "t" => tree_model(group.clone(), Variant::T, bound),
        "tp" => tree_model(group.clone(), Variant::TPrime, bound),
        "tpp" => tree_model(group.clone(), Variant::TDoublePrime, bound),
        "te" => te_model(group.clone(), bound),
        other => return usage_error(&format!("unknown variant {other} (use t|tp|tpp|te)")),
    };
    let set = match parse_set_expr(&model, expr) {
        Ok(s) => s,
        Err(e) => return usage_error(&e),
    };
    let mut rep = Report::new("tree-eval", &[expr, member.unwrap_or("")], seed);
    rep.bound("bound", bound as u64);
    match (member, enumerate) {
        (Some(tsrc), _) => {
            let t = match parse_tree(&group, tsrc) {
                Ok(t) => t,
                Err(e) => return usage_error(&e),
            };
            let inside = model.member(&set, &t);
            rep.push(Verdict::new(
                "member",
                if inside { "pass" } else { "fail" },
            ).with_witness(show_tree(&group, &t)));
        }
        (None, n) => {
            let n = n.unwrap_or(bound);
            let members = model.enumerate(&set, n);
            let listed: Vec<String> = members.iter().map(|t| show_tree(&group, t)).collect();
            rep.push(
                Verdict::new("enumerate", "pass")
                    .with_detail(format!("{} members: {}", listed.len(), listed.join(", "))),
            );
        }
    }
    rep.emit(cli.json);
    rep.exit_code()
}

fn suite_fixture(m: &TermModel) -> (Assembly<Term>, Assembly<Term>, Assembly<Term>, Vec<Term>) {
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

fn cmd_assembly_suite(cli: &Cli, model: &str, file: Option<&PathBuf>, seed: u64) -> i32 {
    let m = match term_model_by_name(model) {
        Some(m) => m,
        None => return usage_error(&format!("unknown model {model}")),
    };
    let mut rep = Report::new("assembly-suite", &[model], seed);
    match file {
        None => {
            let (x, y, z, universe) = suite_fixture(&m);
            let suite = closed_structure_suite(&m, &x, &y, &z, &universe);
            for item in suite.items {
                let mut v = Verdict::new(item.name, if item.pass { "pass" } else { "fail" });
                if !item.detail.is_empty() {
                    v = v.with_detail(item.detail);
                }
                rep.push(v);
            }
        }
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return usage_error(&format!("cannot read {}: {e}", path.display())),
            };
            let loaded = match load_assembly_file(&m, &text) {
                Ok(l) => l,
                Err(e) => return usage_error(&e.to_string()),
            };
            for (name, asm) in &loaded.assemblies {
                rep.push(
                    Verdict::new(format!("assembly {name}"), "pass").with_detail(format!(
                        "{} points, modest: {}",
                        asm.len(),
                        asm.is_modest(&m)
                    )),
                );
            }
            for (name, map) in &loaded.maps {
                match check_map(&m, map) {
                    Ok(r) if r.ok() => rep.push(Verdict::new(format!("map {name}"), "pass")),
                    Ok(r) => rep.push(
                        Verdict::new(format!("map {name}"), "fail")
                            .with_witness(r.failures[0].clone()),
                    ),
                    Err(e) => rep.push(
                        Verdict::new(format!("map {name}"), "fail").with_detail(e.to_string()),
                    ),
                }
            }
        }
    }
    rep.emit(cli.json);
    rep.exit_code()
}

fn cmd_separation(
    cli: &Cli,
    candidates: Option<&PathBuf>,
    with_tree_pair: bool,
    fuel: u64,
    bound: usize,
    seed: u64,
) -> i32 {
    let text = match candidates {
        None => separation::DEFAULT_CANDIDATES.to_string(),
        Some(p) => match std::fs::read_to_string(p) {
            Ok(t) => t,
            Err(e) => return usage_error(&format!("cannot read {}: {e}", p.display())),
        },
    };
    let cands: separation::Candidates = match serde_json::from_str(&text) {
        Ok(c) => c,
        Err(e) => return usage_error(&format!("bad candidates file: {e}")),
    };
    let mut rep = Report::new("separation-suite", &[&text], seed);
    rep.bound("fuel", fuel);
    rep.bound("bound", bound as u64);
    separation::run(&cands, fuel, &mut rep);
    if with_tree_pair {
        tree_pair_checks(bound, seed, &mut rep);
    }
    rep.emit(cli.json);
    rep.exit_code()
}

/// Sampled adjoint-pair conditions between the tree model and its exchange
/// model.
fn tree_pair_checks(bound: usize, seed: u64, rep: &mut Report) {
    let pair = te_adjoint_pair(IntAdd, bound.min(6));
    let t_samples = pair.t.sample(seed, 20);
    let te_samples = pair.te.sample(seed ^ 1, 20);
    let mut ok = [true; 4];
    for k in 0..20 {
        let a = &t_samples[k];
        let a2 = &t_samples[(k * 7 + 3) % 20];
        let spec = lambdacomb::assemblies::MorphismSpec {
            relation: Box::new(|m: &lambdacomb::models::TreeSet<IntAdd>| vec![pair.gamma(m)]),
            realizer: pair.gamma_realizer.clone(),
        };
        ok[0] &= lambdacomb::assemblies::check_morphism(
            &pair.t,
            &pair.te,
            &spec,
            &[a.clone(), a2.clone()],
        )
        .ok();
        let dspec = lambdacomb::assemblies::MorphismSpec {
            relation: Box::new(|m: &lambdacomb::models::TreeSet<IntAdd>| vec![pair.delta(m)]),
            realizer: pair.delta_realizer.clone(),
        };
        let b = &te_samples[k];
        let b2 = &te_samples[(k * 5 + 1) % 20];
        ok[1] &= lambdacomb::assemblies::check_morphism(
            &pair.te,
            &pair.t,
            &dspec,
            &[b.clone(), b2.clone()],
        )
        .ok();
        let dg = pair.delta(&pair.gamma(a));
        let back = pair.t.rapp(&pair.counit_realizer, &dg).unwrap();
        ok[2] &= matches!(pair.t.eq(&back, a), EqVerdict::Equal);
        let fwd = pair.te.rapp(&pair.unit_realizer, b).unwrap();
        let gd = pair.gamma(&pair.delta(b));
        ok[3] &= matches!(pair.te.eq(&fwd, &gd), EqVerdict::Equal);
    }
    for (name, pass) in [
        ("tree-pair gamma", ok[0]),
        ("tree-pair delta", ok[1]),
        ("tree-pair counit", ok[2]),
        ("tree-pair unit", ok[3]),
    ] {
        rep.push(Verdict::new(name, if pass { "pass" } else { "fail" }));
    }
}

/// Expansion helper used by docs and tests: a combinatory expression as a
/// lambda term of its basis discipline.
pub fn expand_to_term(basis: Basis, src: &str) -> Result<String, String> {
    let ct = parse_comb(src)?;
    let t = expand(&ct, &[]).map_err(|e| e.to_string())?;
    let _ = basis;
    Ok(pretty(&t))
}
