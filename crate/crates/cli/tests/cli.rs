use std::path::PathBuf;
use std::process::{Command, Output};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use relnerve_cli::random::{random_cat_diagram, random_sset_diagram, run_battery, Battery, Bounds};
use relnerve_cli::spec::{DiagramSpec, Parsed};

fn spec_file(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("specs")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relnerve"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 report")
}

#[test]
fn thomason_on_the_span_of_sets() {
    let o = run(&[
        "compare",
        "--thomason",
        "--max-degree",
        "1",
        "--input",
        &spec_file("span.cat"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("groth-report v1\ncommand: compare thomason\n"));
    for side in ["hocolim", "groth-classic"] {
        assert!(
            text.contains(&format!("side={side} homology degree=0 betti=1 torsion=[]")),
            "{text}"
        );
        assert!(
            text.contains(&format!("side={side} homology degree=1 betti=1 torsion=[]")),
            "{text}"
        );
    }
    assert!(text.ends_with("verdict=PASS\n"));
}

#[test]
fn sample_specs_pass() {
    let cases: &[&[&str]] = &[
        &["compare", "--homology", "--input", "span.sset"],
        &["verify", "c4-iso", "--input", "constant_point.sset"],
        &["verify", "identities", "--input", "span.cat"],
        &["verify", "fibers", "--input", "span.sset"],
        &["verify", "iota", "--input", "span.sset"],
        &["verify", "fibration", "--input", "span.cat"],
        &["build", "localize", "--input", "marked_interval.sset"],
        &["build", "groth-classic", "--input", "span.cat"],
        &["compare", "--pi0", "--input", "span.sset"],
    ];
    for args in cases {
        let args: Vec<String> = args
            .iter()
            .map(|a| {
                if a.contains('.') {
                    spec_file(a)
                } else {
                    a.to_string()
                }
            })
            .collect();
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = run(&refs);
        assert_eq!(o.status.code(), Some(0), "{args:?}\n{}", stdout(&o));
    }
}

#[test]
fn malformed_input_exits_2_with_a_line_number() {
    let o = run(&[
        "verify",
        "identities",
        "--input",
        &spec_file("corrupt_composition.cat"),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 8"), "{err}");
    let o = run(&[
        "verify",
        "identities",
        "--input",
        "/nonexistent/diagram.cat",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bound_violations_exit_3() {
    let o = run(&["random-suite", "--count", "1", "--max-objects", "9"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["compare", "--thomason", "--input", &spec_file("span.sset")]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&[
        "verify",
        "fibration",
        "--ncap",
        "7",
        "--input",
        &spec_file("span.cat"),
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn random_suite_is_deterministic_and_writes_to_out() {
    let dir = std::env::temp_dir().join(format!("relnerve-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.txt");
    let o = run(&[
        "random-suite",
        "--seed",
        "0",
        "--count",
        "10",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&out).unwrap();
    let again = stdout(&run(&["random-suite", "--seed", "0", "--count", "10"]));
    assert_eq!(written, again);
    assert!(written.ends_with("verdict=PASS\n"));
    let other = stdout(&run(&["random-suite", "--seed", "1", "--count", "10"]));
    assert_ne!(written, other);
    std::fs::remove_dir_all(&dir).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_diagrams_pass_the_full_battery(seed in any::<u64>(), cat in any::<bool>()) {
        let bounds = Bounds { cap: 3, ..Bounds::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let diagram = if cat {
            Parsed::Cat(random_cat_diagram(&mut rng, &bounds))
        } else {
            Parsed::SSet(random_sset_diagram(&mut rng, &bounds))
        };
        let spec = DiagramSpec { cap: bounds.cap, diagram };
        let r = run_battery(&spec, Battery::full()).unwrap();
        prop_assert!(r.passed(), "{}", r.render());
    }
}
