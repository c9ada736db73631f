use std::fs;
use std::path::{Path, PathBuf};

use qfca::io::{context_to_json, parse_context, parse_context_file, parse_lattice_document};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("commands");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = qfca_cli::run(
        std::iter::once("qfca").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn validate_accepts_lukasiewicz_file() {
    let (code, out, _) = run(&["validate", &fixture("ql3.json")]);
    assert_eq!(code, 0);
    assert_eq!(out, "ok: quantale with 3 elements\n");
}

#[test]
fn validate_reports_nondivisible_witness() {
    let (code, out, _) = run(&["validate", "--require-divisible", &fixture("nm5.json")]);
    assert_eq!(code, 1);
    assert!(out.contains("not divisible: witness (3/4, 1/4)"), "{out}");
}

#[test]
fn validate_prints_transitivity_witness() {
    let (code, out, _) = run(&["validate", &fixture("broken_category.json")]);
    assert_eq!(code, 1);
    assert!(out.contains("transitivity fails at (a, b, c)"), "{out}");
}

#[test]
fn fuzzy_context_within_bounds_is_accepted() {
    let (code, out, _) = run(&["validate", "--kind", "context", &fixture("half.json")]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn degree_above_membership_is_rejected() {
    let (code, out, _) = run(&["validate", &fixture("half_out_of_hom.json")]);
    assert_eq!(code, 1);
    assert!(out.contains("exceeds the meet of the memberships"), "{out}");
    assert!(parse_context_file(Path::new(&fixture("half_out_of_hom.json"))).is_err());
}

#[test]
fn crisp_context_parses_over_two() {
    let ctx = parse_context_file(Path::new(&fixture("ctx1.json"))).unwrap();
    assert_eq!(ctx.quantale().len(), 2);
    assert_eq!(ctx.objects().len(), 2);
}

#[test]
fn context_files_round_trip() {
    for name in ["ctx1.json", "half.json", "half_1x1.json"] {
        let ctx = parse_context_file(Path::new(&fixture(name))).unwrap();
        let text = context_to_json(&ctx);
        assert_eq!(context_to_json(&parse_context(&text, None).unwrap()), text);
    }
}

#[test]
fn concepts_writes_lattice_document() {
    let path = scratch("ctx1-kan.json");
    let file = path.display().to_string();
    let (code, out, _) = run(&[
        "concepts",
        &fixture("ctx1.json"),
        "--mode",
        "kan",
        "--out",
        &file,
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("3 concepts (kan, generated)"), "{out}");
    let doc = parse_lattice_document(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc.kind, "kan");
    let (code, out, _) = run(&["validate", &file]);
    assert_eq!(
        (code, out.as_str()),
        (0, "ok: kan lattice document with 4 concepts\n")
    );
}

#[test]
fn brute_force_over_cap_suggests_generated() {
    let (code, _, err) = run(&[
        "--cap",
        "2",
        "concepts",
        &fixture("half.json"),
        "--algorithm",
        "brute",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("use --algorithm generated"), "{err}");
}

#[test]
fn generated_run_skips_cross_check_over_cap() {
    let (code, out, _) = run(&["--cap", "2", "concepts", &fixture("half.json")]);
    assert_eq!(code, 0);
    assert!(
        out.contains("skipped: brute force exceeds the cap"),
        "{out}"
    );
}

#[test]
fn non_divisible_context_is_refused() {
    let path = scratch("nm5-context.json");
    fs::write(
        &path,
        r#"{"schema": "qfca/context/v1", "quantale": {"builtin": "nilpotent-minimum:5"},
            "objects": ["x"], "attributes": ["y"], "incidence": [["1/2"]]}"#,
    )
    .unwrap();
    let (code, _, err) = run(&["concepts", &path.display().to_string()]);
    assert_eq!(code, 1);
    assert!(err.contains("divisible"), "{err}");
}

#[test]
fn macneille_embeds_every_object() {
    let (code, out, err) = run(&["macneille", &fixture("antichain2.json")]);
    assert_eq!(code, 0);
    assert_eq!(err, "4 cuts\n");
    let doc = parse_lattice_document(&out).unwrap();
    assert_eq!(doc.kind, "macneille");
    assert_eq!(doc.embedding.map(|e| e.len()), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["concepts"]).0, 2);
    assert_eq!(run(&["validate", "/no/such/file.json"]).0, 2);
    assert_eq!(run(&["laws", "--only", "no-such-law"]).0, 2);
    assert_eq!(
        run(&["validate", "--require-divisible", &fixture("chain2.json")]).0,
        2
    );
}

#[test]
fn laws_list_names_every_law() {
    let (code, out, _) = run(&["laws", "--list"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), qfca_cli::laws::registry().len());
}

#[test]
fn failing_law_carries_replayable_seed() {
    let (code, out, _) = run(&["laws", "--seed", "3", "--inject-mutant"]);
    assert_eq!(code, 1);
    assert!(
        out.lines()
            .any(|l| l.starts_with("FAIL residuation seed=3")),
        "{out}"
    );
    let (again, replay, _) = run(&["laws", "--seed", "3", "--inject-mutant"]);
    assert_eq!((again, replay), (code, out));
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, err) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage: qfca"));
    assert!(err.is_empty());
}
