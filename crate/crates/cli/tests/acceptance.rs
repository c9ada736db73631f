//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails or overruns its time budget.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{self, Command};
use std::time::{Duration, Instant};

use serde_json::Value;

use qfca::quantaloid::{build_lukasiewicz_chain, build_nilpotent_minimum};

type Outcome = Result<String, String>;

struct Env {
    fixtures: PathBuf,
    scratch: PathBuf,
}

impl Env {
    fn fixture(&self, name: &str) -> String {
        self.fixtures.join(name).display().to_string()
    }
}

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    check: fn(&Env) -> Outcome,
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qfca").chain(args.iter().copied());
    let code = qfca_cli::run(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).expect("utf-8 output"),
        stderr: String::from_utf8(err).expect("utf-8 output"),
    }
}

fn binary(args: &[&str]) -> Run {
    let output = Command::new(env!("CARGO_BIN_EXE_qfca"))
        .args(args)
        .env_remove("QFCA_CAP")
        .output()
        .expect("the qfca binary runs");
    Run {
        code: output.status.code().unwrap_or(-1),
        stdout: String::from_utf8(output.stdout).expect("utf-8 output"),
        stderr: String::from_utf8(output.stderr).expect("utf-8 output"),
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Run one registered law through the command line and return its report line.
fn law(id: &str) -> Outcome {
    let run = cli(&["laws", "--only", id]);
    let line = run
        .stdout
        .lines()
        .find(|l| l.contains(&format!(" {id} ")))
        .unwrap_or_default()
        .to_string();
    ensure(run.code == 0 && line.starts_with("PASS"), || {
        format!(
            "law {id} exited {}:\n{}{}",
            run.code, run.stdout, run.stderr
        )
    })?;
    Ok(line.trim_start_matches("PASS ").to_string())
}

fn lattice_json(run: &Run) -> Result<Value, String> {
    serde_json::from_str(&run.stdout).map_err(|e| format!("lattice document does not parse: {e}"))
}

/// Exact rational value of a degree label such as `0`, `1` or `3/4`.
fn rational(label: &str) -> (i64, i64) {
    match label.split_once('/') {
        Some((p, q)) => (
            p.parse().expect("numerator"),
            q.parse().expect("denominator"),
        ),
        None => (label.parse().expect("integer degree"), 1),
    }
}

fn same_value(a: (i64, i64), b: (i64, i64)) -> bool {
    a.0 * b.1 == b.0 * a.1
}

// ------------------------------------------------------------------ oracles

type Relation = Vec<Vec<bool>>;
type ConceptSet = BTreeSet<(Vec<bool>, Vec<bool>)>;

fn subset(mask: usize, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}

/// Classical formal concepts by scanning every object subset.
fn classical_concepts(rel: &Relation, nb: usize) -> ConceptSet {
    let na = rel.len();
    let mut out = BTreeSet::new();
    for mask in 0..1usize << na {
        let extent = subset(mask, na);
        let intent: Vec<bool> = (0..nb)
            .map(|y| (0..na).all(|x| !extent[x] || rel[x][y]))
            .collect();
        let closed: Vec<bool> = (0..na)
            .map(|x| (0..nb).all(|y| !intent[y] || rel[x][y]))
            .collect();
        if closed == extent {
            out.insert((extent, intent));
        }
    }
    out
}

/// Property-oriented concepts: `Y` is the set of attributes whose holders all lie
/// in `X`, and `X` is the set of objects holding some attribute of `Y`.
fn property_oriented_concepts(rel: &Relation, nb: usize) -> ConceptSet {
    let na = rel.len();
    let mut out = BTreeSet::new();
    for mask in 0..1usize << na {
        let extent = subset(mask, na);
        let necessity: Vec<bool> = (0..nb)
            .map(|y| (0..na).all(|x| !rel[x][y] || extent[x]))
            .collect();
        let possibility: Vec<bool> = (0..na)
            .map(|x| (0..nb).any(|y| necessity[y] && rel[x][y]))
            .collect();
        if possibility == extent {
            out.insert((extent, necessity));
        }
    }
    out
}

/// Number of Dedekind cuts `X = lower(upper(X))` of a preorder.
fn classical_cut_count(le: &Relation) -> usize {
    let n = le.len();
    let mut cuts = BTreeSet::new();
    for mask in 0..1usize << n {
        let x = subset(mask, n);
        let upper: Vec<bool> = (0..n).map(|u| (0..n).all(|a| !x[a] || le[a][u])).collect();
        let lower: Vec<bool> = (0..n)
            .map(|l| (0..n).all(|u| !upper[u] || le[l][u]))
            .collect();
        cuts.insert(lower);
    }
    cuts.len()
}

fn crisp_concepts_from_cli(doc: &Value) -> ConceptSet {
    let bits = |v: &Value| -> Vec<bool> {
        v.as_array()
            .expect("degree vector")
            .iter()
            .map(|d| d.as_str() == Some("1"))
            .collect()
    };
    doc["concepts"]
        .as_array()
        .expect("concept list")
        .iter()
        .filter(|c| c["type"] == "1")
        .map(|c| (bits(&c["extent"]), bits(&c["intent"])))
        .collect()
}

fn context_json(rel: &Relation, nb: usize) -> String {
    let objects: Vec<String> = (0..rel.len()).map(|x| format!("o{x}")).collect();
    let attributes: Vec<String> = (0..nb).map(|y| format!("p{y}")).collect();
    let pairs: Vec<(String, String)> = (0..rel.len())
        .flat_map(|x| (0..nb).map(move |y| (x, y)))
        .filter(|&(x, y)| rel[x][y])
        .map(|(x, y)| (objects[x].clone(), attributes[y].clone()))
        .collect();
    serde_json::json!({
        "schema": "qfca/context/v1",
        "quantale": {"builtin": "boolean"},
        "objects": objects,
        "attributes": attributes,
        "pairs": pairs,
    })
    .to_string()
}

fn category_json(le: &Relation) -> String {
    let objects: Vec<Value> = (0..le.len())
        .map(|x| serde_json::json!({"label": format!("e{x}"), "type": "*"}))
        .collect();
    let hom: Vec<Vec<&str>> = le
        .iter()
        .map(|row| row.iter().map(|&b| if b { "1" } else { "0" }).collect())
        .collect();
    serde_json::json!({
        "schema": "qfca/category/v1",
        "quantaloid": {"quantale": {"builtin": "boolean"}, "construction": "single"},
        "objects": objects,
        "hom": hom,
    })
    .to_string()
}

fn relations(na: usize, nb: usize) -> impl Iterator<Item = Relation> {
    (0..1usize << (na * nb)).map(move |mask| {
        (0..na)
            .map(|x| (0..nb).map(|y| mask >> (x * nb + y) & 1 == 1).collect())
            .collect()
    })
}

fn preorders(n: usize) -> Vec<Relation> {
    relations(n, n)
        .filter(|r| {
            (0..n).all(|x| r[x][x])
                && (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| !(r[x][y] && r[y][z]) || r[x][z])))
        })
        .collect()
}

// ---------------------------------------------------------------- criteria

fn residuation(_: &Env) -> Outcome {
    let line = law("residuation")?;
    for n in 2..=6 {
        let q = build_lukasiewicz_chain(n).map_err(|e| e.to_string())?;
        for a in 0..q.len() {
            for b in 0..q.len() {
                let (ra, rb) = (rational(q.label(a)), rational(q.label(b)));
                let d = ra.1 * rb.1;
                let tensor = ((ra.0 * rb.1 + rb.0 * ra.1 - d).max(0), d);
                let implication = ((d - ra.0 * rb.1 + rb.0 * ra.1).min(d), d);
                ensure(
                    same_value(rational(q.label(q.tensor(a, b))), tensor),
                    || {
                        format!(
                            "Lukasiewicz {n}: {} & {} is not max(0, a + b - 1)",
                            q.label(a),
                            q.label(b)
                        )
                    },
                )?;
                ensure(
                    same_value(rational(q.label(q.right_div(a, b))), implication),
                    || {
                        format!(
                            "Lukasiewicz {n}: {} \\ {} is not min(1, 1 - a + b)",
                            q.label(a),
                            q.label(b)
                        )
                    },
                )?;
                ensure(
                    same_value(rational(q.label(q.left_div(b, a))), implication),
                    || {
                        format!(
                            "Lukasiewicz {n}: {} / {} is not min(1, 1 - a + b)",
                            q.label(b),
                            q.label(a)
                        )
                    },
                )?;
            }
        }
    }
    Ok(format!("{line}; Lukasiewicz arithmetic n = 2..6 agrees"))
}

fn divisible_builders(env: &Env) -> Outcome {
    let line = law("divisible-builders")?;
    let q = build_nilpotent_minimum(5).map_err(|e| e.to_string())?;
    let quarter = |a: usize| {
        let (p, d) = rational(q.label(a));
        p * 4 / d
    };
    let nm = |a: i64, b: i64| if a + b > 4 { a.min(b) } else { 0 };
    for a in 0..q.len() {
        for b in 0..q.len() {
            ensure(
                quarter(q.tensor(a, b)) == nm(quarter(a), quarter(b)),
                || {
                    format!(
                        "nilpotent minimum: {} & {} disagrees with the formula",
                        q.label(a),
                        q.label(b)
                    )
                },
            )?;
        }
    }
    ensure((0..=4).all(|c| nm(3, c) != 1), || {
        "1/4 is reachable from 3/4".into()
    })?;
    let run = cli(&["validate", "--require-divisible", &env.fixture("nm5.json")]);
    ensure(
        run.code == 1 && run.stdout.contains("witness (3/4, 1/4)"),
        || format!("validate exited {} with:\n{}", run.code, run.stdout),
    )?;
    let run = cli(&["validate", "--require-divisible", &env.fixture("ql3.json")]);
    ensure(run.code == 0, || {
        format!("Lukasiewicz 3-chain rejected:\n{}", run.stdout)
    })?;
    Ok(format!("{line}; CLI reports witness (3/4, 1/4)"))
}

fn yoneda(_: &Env) -> Outcome {
    law("yoneda")
}

fn adjunction_homs(_: &Env) -> Outcome {
    law("adjunction-homs")
}

fn image_operators(_: &Env) -> Outcome {
    law("image-operators")
}

fn enumeration_agreement(env: &Env) -> Outcome {
    let line = law("enumeration-agreement")?;
    let ctx1 = env.fixture("ctx1.json");
    for (mode, want) in [("isbell", "2 concepts (isbell"), ("kan", "3 concepts (kan")] {
        let run = cli(&["concepts", &ctx1, "--mode", mode]);
        ensure(run.code == 0 && run.stderr.starts_with(want), || {
            format!(
                "CTX1 {mode}: exit {}, summary {}",
                run.code,
                run.stderr.trim()
            )
        })?;
    }
    let path = env.scratch.join("crisp.json");
    let file = path.display().to_string();
    let mut contexts = 0;
    for na in 1..=3 {
        for nb in 1..=3 {
            for rel in relations(na, nb) {
                fs::write(&path, context_json(&rel, nb)).map_err(|e| e.to_string())?;
                for (mode, oracle) in [
                    ("isbell", classical_concepts(&rel, nb)),
                    ("kan", property_oriented_concepts(&rel, nb)),
                ] {
                    for algorithm in ["brute", "generated"] {
                        let run =
                            cli(&["concepts", &file, "--mode", mode, "--algorithm", algorithm]);
                        ensure(run.code == 0, || {
                            format!("concepts failed on {rel:?}: {}", run.stderr)
                        })?;
                        let got = crisp_concepts_from_cli(&lattice_json(&run)?);
                        ensure(got == oracle, || {
                            format!("{mode}/{algorithm} on {rel:?}: got {got:?}, oracle {oracle:?}")
                        })?;
                    }
                }
                contexts += 1;
            }
        }
    }
    let run = cli(&["concepts", &env.fixture("half_1x1.json")]);
    let doc = lattice_json(&run)?;
    ensure(
        doc["cross_check"]
            .as_str()
            .is_some_and(|s| s.starts_with("brute force agrees")),
        || {
            format!(
                "half-uniform 1x1 context: cross-check {}",
                doc["cross_check"]
            )
        },
    )?;
    Ok(format!(
        "{line}; {contexts} crisp contexts match the classical and property-oriented oracles"
    ))
}

fn lattice_completeness(env: &Env) -> Outcome {
    let line = law("lattice-completeness")?;
    let runs = [
        cli(&["concepts", &env.fixture("ctx1.json"), "--mode", "isbell"]),
        cli(&["concepts", &env.fixture("ctx1.json"), "--mode", "kan"]),
        cli(&["concepts", &env.fixture("half.json"), "--mode", "isbell"]),
        cli(&["concepts", &env.fixture("half.json"), "--mode", "kan"]),
        cli(&["macneille", &env.fixture("chain2.json")]),
        cli(&["macneille", &env.fixture("antichain2.json")]),
        cli(&["macneille", &env.fixture("empty.json")]),
    ];
    for run in &runs {
        let c = &lattice_json(run)?["completeness"];
        ensure(
            c["checked"] == true
                && c["complete"] == true
                && c["co_complete"] == true
                && c["formulas_agree"] == true,
            || format!("completeness record {c}"),
        )?;
    }
    Ok(format!(
        "{line}; {} fixture documents record completeness",
        runs.len()
    ))
}

fn dense_factorization(_: &Env) -> Outcome {
    law("dense-factorization")
}

fn girard_duality(_: &Env) -> Outcome {
    law("girard-duality")
}

fn functoriality(_: &Env) -> Outcome {
    law("functoriality")
}

fn macneille(env: &Env) -> Outcome {
    let line = law("macneille")?;
    for (file, want) in [
        ("chain2.json", "2 cuts"),
        ("antichain2.json", "4 cuts"),
        ("empty.json", "1 cut"),
    ] {
        let run = cli(&["macneille", &env.fixture(file)]);
        ensure(run.code == 0 && run.stderr.trim() == want, || {
            format!("{file}: exit {}, summary {}", run.code, run.stderr.trim())
        })?;
    }
    let path = env.scratch.join("preorder.json");
    let file = path.display().to_string();
    let mut checked = 0;
    for n in 0..=3 {
        for le in preorders(n) {
            fs::write(&path, category_json(&le)).map_err(|e| e.to_string())?;
            let run = cli(&["macneille", &file]);
            let got = lattice_json(&run)?["concepts"]
                .as_array()
                .map_or(0, Vec::len);
            let want = classical_cut_count(&le);
            ensure(got == want, || {
                format!("preorder {le:?}: {got} cuts, oracle {want}")
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{line}; cut counts of {checked} preorders match the oracle"
    ))
}

fn closure_reconstruction(_: &Env) -> Outcome {
    law("closure-reconstruction")
}

fn determinism(env: &Env) -> Outcome {
    let first = binary(&["laws", "--seed", "7"]);
    let second = binary(&["laws", "--seed", "7"]);
    ensure(first.code == 0 && second.code == 0, || {
        format!("laws --seed 7 exited {} and {}", first.code, second.code)
    })?;
    ensure(first.stdout == second.stdout, || {
        "law reports differ between runs".into()
    })?;
    let in_process = cli(&["laws", "--seed", "7"]);
    ensure(in_process.stdout == first.stdout, || {
        "in-process report differs from the binary".into()
    })?;
    for file in ["half.json", "ctx1.json"] {
        for mode in ["isbell", "kan"] {
            let a = binary(&["concepts", &env.fixture(file), "--mode", mode]);
            let b = binary(&["concepts", &env.fixture(file), "--mode", mode]);
            ensure(
                a.code == 0 && a.stdout == b.stdout && a.stderr == b.stderr,
                || format!("concepts {file} --mode {mode} is not byte-stable"),
            )?;
        }
    }
    let mutant = binary(&["laws", "--inject-mutant", "--only", "residuation"]);
    let witness = mutant
        .stdout
        .lines()
        .find(|l| l.trim_start().starts_with("counterexample:"))
        .unwrap_or_default()
        .trim()
        .to_string();
    ensure(
        mutant.code == 1 && mutant.stdout.contains("FAIL residuation") && witness.contains("QL3"),
        || format!("mutant run exited {}:\n{}", mutant.code, mutant.stdout),
    )?;
    Ok(format!(
        "reports and lattice documents byte-stable; mutant {witness}"
    ))
}

fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion {
            id: 1,
            title: "residuation adjointness",
            limit: secs(2),
            check: residuation,
        },
        Criterion {
            id: 2,
            title: "divisible-quantale quantaloids",
            limit: secs(2),
            check: divisible_builders,
        },
        Criterion {
            id: 3,
            title: "Yoneda lemma",
            limit: secs(5),
            check: yoneda,
        },
        Criterion {
            id: 4,
            title: "Isbell and Kan hom equalities",
            limit: secs(5),
            check: adjunction_homs,
        },
        Criterion {
            id: 5,
            title: "image operators as Kan adjunctions",
            limit: secs(3),
            check: image_operators,
        },
        Criterion {
            id: 6,
            title: "concept-lattice oracle agreement",
            limit: secs(10),
            check: enumeration_agreement,
        },
        Criterion {
            id: 7,
            title: "completeness of outputs",
            limit: secs(5),
            check: lattice_completeness,
        },
        Criterion {
            id: 8,
            title: "dense factorization",
            limit: secs(5),
            check: dense_factorization,
        },
        Criterion {
            id: 9,
            title: "Girard duality",
            limit: secs(5),
            check: girard_duality,
        },
        Criterion {
            id: 10,
            title: "functoriality of concept lattices",
            limit: secs(5),
            check: functoriality,
        },
        Criterion {
            id: 11,
            title: "MacNeille completion",
            limit: secs(5),
            check: macneille,
        },
        Criterion {
            id: 12,
            title: "closure reconstruction",
            limit: secs(5),
            check: closure_reconstruction,
        },
        Criterion {
            id: 13,
            title: "CLI determinism and mutant detection",
            limit: secs(20),
            check: determinism,
        },
    ]
}

fn scratch_dir() -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(format!("acceptance-{}", process::id()));
    fs::create_dir_all(&dir).expect("scratch directory");
    dir
}

fn main() {
    let env = Env {
        fixtures: Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures"),
        scratch: scratch_dir(),
    };
    let total_budget = Duration::from_secs(60);
    let started = Instant::now();
    let mut failures = 0;
    let all = criteria();
    for c in &all {
        let t0 = Instant::now();
        let outcome = (c.check)(&env);
        let elapsed = t0.elapsed();
        let timing = format!("{:.2} s of {} s", elapsed.as_secs_f64(), c.limit.as_secs());
        let verdict = match outcome {
            Ok(detail) if elapsed <= c.limit => Ok(detail),
            Ok(detail) => Err(format!("over budget; {detail}")),
            Err(e) => Err(e),
        };
        match verdict {
            Ok(detail) => println!(
                "PASS criterion {:>2} {} ({timing}): {detail}",
                c.id, c.title
            ),
            Err(e) => {
                failures += 1;
                println!("FAIL criterion {:>2} {} ({timing}): {e}", c.id, c.title);
            }
        }
    }
    let elapsed = started.elapsed();
    if elapsed > total_budget {
        failures += 1;
        println!(
            "FAIL total time {:.2} s exceeds {} s",
            elapsed.as_secs_f64(),
            total_budget.as_secs()
        );
    }
    let _ = fs::remove_dir_all(&env.scratch);
    println!(
        "{} of {} criteria passed in {:.2} s",
        all.len() - failures.min(all.len()),
        all.len(),
        elapsed.as_secs_f64()
    );
    if failures > 0 {
        process::exit(1);
    }
}
