//! End-to-end checks of the binary: the separation refutations (the shipped
//! candidates file must refute every candidate), the exit-code contract, and
//! report determinism.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lambdacomb"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn binary")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).to_string()
}

/// Acceptance criterion 11: every candidate in the shipped file is refuted
/// by normalization, with the expected normal forms shown.
#[test]
fn criterion_11_separation_refutations() {
    let out = run(&["separation-suite", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let verdicts = v["verdicts"].as_array().unwrap();
    assert!(verdicts.len() >= 9, "expected all shipped candidates to run");
    for item in verdicts {
        assert_eq!(
            item["verdict"], "refuted",
            "unexpected verdict in {item}"
        );
        assert!(item["witness"].as_str().unwrap().contains(" vs "));
    }
    // The engine of the first refutation is the pair of distinct normal
    // forms \z.#c z and #c.
    assert!(text.contains("\\z.#c z vs #c"));
    println!("acceptance criterion 11 (separation refutations): PASS");
}

/// An empty candidates file passes vacuously.
#[test]
fn empty_candidates_vacuous_pass() {
    let dir = std::env::temp_dir().join("lambdacomb-test-empty.json");
    std::fs::write(&dir, "{}").unwrap();
    let out = run(&["separation-suite", "--candidates", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

/// Exit-code contract: 0 pass/equal, 1 fail/not-equal, 2 unknown, 3 usage.
#[test]
fn exit_code_contract() {
    let cases: Vec<(Vec<&str>, i32)> = vec![
        // The composition representative check: exit 0.
        (
            vec![
                "eq",
                "--discipline",
                "planar",
                "(\\x.\\y.\\z.x (y z)) (\\u.u (\\w.w)) (\\v.v)",
                "\\u.u (\\w.w)",
            ],
            0,
        ),
        // A beta-Omega instance through the CPS translation: exit 0.
        (vec!["ceq", "(\\x.x) (y y)", "y y"], 0),
        // Distinct normal forms: exit 1.
        (vec!["eq", "\\x.\\y.x y", "\\x.x"], 1),
        // Fuel exhaustion: exit 2.
        (
            vec![
                "normalize",
                "--discipline",
                "ordinary",
                "--fuel",
                "10",
                "(\\x.x x) (\\x.x x)",
            ],
            2,
        ),
        // Unknown flag: exit 3.
        (vec!["normalize", "--no-such-flag", "x"], 3),
        // Unknown subcommand: exit 3.
        (vec!["frobnicate"], 3),
        // Syntax error in a term argument: exit 3.
        (vec!["eq", "(((", "x"], 3),
        // Validation failure reported by parse: exit 1.
        (vec!["parse", "--discipline", "planar", "\\x.\\y.y x"], 1),
    ];
    for (args, want) in cases {
        let out = run(&args);
        assert_eq!(
            out.status.code(),
            Some(want),
            "args {args:?}: stdout {} stderr {}",
            stdout(&out),
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

/// Identical invocations with identical seeds produce byte-identical JSON.
#[test]
fn report_determinism() {
    for args in [
        vec!["separation-suite", "--json", "--seed", "7"],
        vec!["classify", "--model", "planar", "--json", "--seed", "7"],
        vec![
            "assembly-suite",
            "--model",
            "planar-tensor",
            "--json",
            "--seed",
            "7",
        ],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), b.status.code());
        assert_eq!(stdout(&a), stdout(&b), "nondeterministic report for {args:?}");
    }
}

/// The seed can come from the environment.
#[test]
fn env_seed_is_used() {
    let out = bin()
        .args(["separation-suite", "--json"])
        .env("WORKBENCH_SEED", "99")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["seed"], 99);
}

/// The packaged axiom and assembly files load and pass.
#[test]
fn packaged_data_files_work() {
    let root = env!("CARGO_MANIFEST_DIR");
    let axioms = format!("{root}/data/axioms-example.txt");
    let out = run(&["axioms", "--model", "planar-tensor", "--file", &axioms]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let asm = format!("{root}/data/assemblies-example.txt");
    let out = run(&[
        "assembly-suite",
        "--model",
        "planar",
        "--file",
        &asm,
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

/// Built-in suite fixtures pass over the three models, and the tree-pair
/// checks run.
#[test]
fn builtin_suites_pass() {
    for model in ["planar", "planar-tensor", "biplanar"] {
        let out = run(&["assembly-suite", "--model", model]);
        assert_eq!(out.status.code(), Some(0), "{model}: {}", stdout(&out));
    }
    let out = run(&["separation-suite", "--with-tree-pair", "--bound", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}
