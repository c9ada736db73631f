use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use qfca::adjunction::{concept_lattice, macneille_completion};
use qfca::enriched::CategoryViolation;
use qfca::io::{
    lattice_document, parse_category, parse_context, parse_distributor, parse_infomorphism,
    parse_lattice_document, parse_quantale_unchecked, parse_quantaloid, to_json, DocumentKind,
    EmbeddingDoc,
};
use qfca::{ConceptKind, ConceptLattice, EnumerationAlgorithm, Error, QCategory, QuantaleSpec};

use crate::laws::{self, brute_space, LawConfig};
use crate::{Algorithm, Cli, Command, DocKind, Mode};

/// Largest brute-force space for which the generated lattice is cross-checked.
pub const CROSS_CHECK_LIMIT: u128 = 10_000;

/// How many violations `validate` prints before summarising the rest.
const SHOWN_VIOLATIONS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommandError {
    Usage(String),
    Failure(String),
}

impl From<std::io::Error> for CommandError {
    fn from(e: std::io::Error) -> Self {
        CommandError::Failure(format!("write failed: {e}"))
    }
}

type CmdResult = Result<Outcome, CommandError>;

pub fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match &cli.command {
        Command::Validate {
            file,
            kind,
            require_divisible,
        } => validate(file, *kind, *require_divisible, out),
        Command::Concepts {
            context,
            mode,
            algorithm,
            out: path,
        } => concepts(
            context,
            *mode,
            *algorithm,
            path.as_deref(),
            cli.cap,
            out,
            err,
        ),
        Command::Macneille {
            category,
            out: path,
        } => macneille(category, path.as_deref(), cli.cap, out, err),
        Command::Laws {
            seed,
            profile,
            only,
            list,
            inject_mutant,
        } => {
            if *list {
                for law in laws::registry() {
                    writeln!(out, "{:<24} {}", law.id, law.summary)?;
                }
                return Ok(Outcome::Ok);
            }
            let cfg = LawConfig {
                seed: *seed,
                profile: *profile,
                mutant: *inject_mutant,
                cap: cli.cap,
            };
            run_laws(&cfg, only, out)
        }
    }
}

fn read(path: &Path) -> Result<String, CommandError> {
    fs::read_to_string(path)
        .map_err(|e| CommandError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn base_dir(path: &Path) -> Option<&Path> {
    path.parent().filter(|p| !p.as_os_str().is_empty())
}

fn detect(text: &str) -> Result<DocKind, Error> {
    Ok(match DocumentKind::detect(text)? {
        DocumentKind::Quantale => DocKind::Quantale,
        DocumentKind::Quantaloid => DocKind::Quantaloid,
        DocumentKind::Category => DocKind::Category,
        DocumentKind::Distributor => DocKind::Distributor,
        DocumentKind::Context => DocKind::Context,
        DocumentKind::Infomorphism => DocKind::Infomorphism,
        DocumentKind::Lattice => DocKind::Lattice,
    })
}

fn category_violation(a: &QCategory, v: &CategoryViolation) -> String {
    let q = a.quantaloid();
    let label = |x: usize, y: usize| q.arrow_label(a.hom(x, y)).to_string();
    match *v {
        CategoryViolation::Unit { x } => format!(
            "unit law fails at {}: the identity of {} is not below A({0}, {0}) = {}",
            a.label(x),
            q.objects()[a.ty(x)],
            label(x, x)
        ),
        CategoryViolation::Transitivity { x, y, z } => {
            let composite = q.comp_idx(a.ty(x), a.ty(y), a.ty(z), a.h(y, z), a.h(x, y));
            format!(
                "transitivity fails at ({}, {}, {}): A({1}, {2}) . A({0}, {1}) = {} is not below A({0}, {2}) = {}",
                a.label(x),
                a.label(y),
                a.label(z),
                q.hom(a.ty(x), a.ty(z)).label(composite),
                label(x, z)
            )
        }
    }
}

fn category_problems(a: &QCategory, name: &str) -> Vec<String> {
    a.validate()
        .iter()
        .map(|v| format!("{name}: {}", category_violation(a, v)))
        .collect()
}

fn divisibility(q: &QuantaleSpec) -> Option<String> {
    q.check_divisible()
        .err()
        .map(|(a, b)| format!("not divisible: witness ({}, {})", q.label(a), q.label(b)))
}

fn plural(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("1 {noun}")
    } else {
        format!("{n} {noun}s")
    }
}

fn report(summary: &str, problems: &[String], out: &mut dyn Write) -> CmdResult {
    if problems.is_empty() {
        writeln!(out, "ok: {summary}")?;
        return Ok(Outcome::Ok);
    }
    writeln!(out, "invalid: {summary}: {} violation(s)", problems.len())?;
    for p in problems.iter().take(SHOWN_VIOLATIONS) {
        writeln!(out, "  - {p}")?;
    }
    if problems.len() > SHOWN_VIOLATIONS {
        writeln!(out, "  ... and {} more", problems.len() - SHOWN_VIOLATIONS)?;
    }
    Ok(Outcome::Failed)
}

fn validate(
    path: &Path,
    kind: Option<DocKind>,
    require_divisible: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let text = read(path)?;
    let base = base_dir(path);
    let invalid = |e: Error, out: &mut dyn Write| -> CmdResult {
        writeln!(out, "invalid: {e}")?;
        Ok(Outcome::Failed)
    };
    let kind = match kind {
        Some(k) => k,
        None => match detect(&text) {
            Ok(k) => k,
            Err(e) => return invalid(e, out),
        },
    };
    if require_divisible && !matches!(kind, DocKind::Quantale | DocKind::Context) {
        return Err(CommandError::Usage(
            "--require-divisible applies to quantale and context documents".into(),
        ));
    }
    let mut problems = Vec::new();
    let summary = match kind {
        DocKind::Quantale => {
            let q = match parse_quantale_unchecked(&text) {
                Ok(q) => q,
                Err(e) => return invalid(e, out),
            };
            problems.extend(q.validate().iter().map(|v| v.to_string()));
            if require_divisible && problems.is_empty() {
                problems.extend(divisibility(&q));
            }
            format!("quantale with {}", plural(q.len(), "element"))
        }
        DocKind::Quantaloid => {
            let q = match parse_quantaloid(&text, base) {
                Ok(q) => q,
                Err(e) => return invalid(e, out),
            };
            problems.extend(q.validate().iter().map(|v| v.to_string()));
            format!("quantaloid with {}", plural(q.n(), "object"))
        }
        DocKind::Category => {
            let a = match parse_category(&text, base) {
                Ok(a) => a,
                Err(e) => return invalid(e, out),
            };
            problems.extend(category_problems(&a, "category"));
            format!("category with {}", plural(a.n(), "object"))
        }
        DocKind::Distributor => {
            let phi = match parse_distributor(&text, base) {
                Ok(p) => p,
                Err(e) => return invalid(e, out),
            };
            problems.extend(category_problems(&phi.dom, "domain"));
            problems.extend(category_problems(&phi.cod, "codomain"));
            problems.extend(phi.validate().iter().map(|v| v.to_string()));
            format!(
                "distributor from {} to {}",
                plural(phi.dom.n(), "object"),
                plural(phi.cod.n(), "object")
            )
        }
        DocKind::Context => {
            let ctx = match parse_context(&text, base) {
                Ok(c) => c,
                Err(e) => return invalid(e, out),
            };
            if require_divisible {
                problems.extend(divisibility(ctx.quantale()));
            }
            format!(
                "context with {} and {} over a {}-element quantale",
                plural(ctx.objects().len(), "object"),
                plural(ctx.attributes().len(), "attribute"),
                ctx.quantale().len()
            )
        }
        DocKind::Infomorphism => {
            let info = match parse_infomorphism(&text, base) {
                Ok(i) => i,
                Err(e) => return invalid(e, out),
            };
            for (name, f) in [("f", &info.f), ("g", &info.g)] {
                let rep = f.validate();
                if !rep.is_valid() {
                    problems.push(format!("{name} is not a functor: {rep:?}"));
                }
            }
            for (x, y1) in info.validate() {
                problems.push(format!(
                    "source({}, g {}) differs from target(f {}, {})",
                    info.source.dom.label(x),
                    info.target.cod.label(y1),
                    info.source.dom.label(x),
                    info.target.cod.label(y1)
                ));
            }
            "infomorphism".to_string()
        }
        DocKind::Lattice => {
            let doc = match parse_lattice_document(&text) {
                Ok(d) => d,
                Err(e) => return invalid(e, out),
            };
            format!(
                "{} lattice document with {}",
                doc.kind,
                plural(doc.concepts.len(), "concept")
            )
        }
    };
    report(&summary, &problems, out)
}

fn concept_kind(mode: Mode) -> ConceptKind {
    match mode {
        Mode::Isbell => ConceptKind::Isbell,
        Mode::Kan => ConceptKind::Kan,
    }
}

fn enumeration(algorithm: Algorithm) -> EnumerationAlgorithm {
    match algorithm {
        Algorithm::Brute => EnumerationAlgorithm::Brute,
        Algorithm::Generated => EnumerationAlgorithm::Generated,
    }
}

fn failure(e: Error) -> CommandError {
    match e {
        Error::PresheafSpaceTooLarge { bound, cap } => CommandError::Failure(format!(
            "presheaf space too large: {bound} candidates exceed the cap of {cap}; use --algorithm generated or raise --cap"
        )),
        other => CommandError::Failure(other.to_string()),
    }
}

/// The one-line summary: concepts of positive degree, then the count for each degree.
pub fn concept_summary(lattice: &ConceptLattice, mode: Mode, algorithm: Algorithm) -> String {
    let q = lattice.phi.dom.quantaloid();
    let mut by_type = String::new();
    for (ty, n) in lattice.counts_by_type().into_iter().enumerate() {
        if n > 0 {
            if !by_type.is_empty() {
                by_type.push_str(", ");
            }
            let _ = write!(by_type, "{}: {n}", q.objects()[ty]);
        }
    }
    let mode = match mode {
        Mode::Isbell => "isbell",
        Mode::Kan => "kan",
    };
    let algorithm = match algorithm {
        Algorithm::Brute => "brute",
        Algorithm::Generated => "generated",
    };
    format!(
        "{} ({mode}, {algorithm}); by degree: {by_type}",
        plural(laws::positive_count(lattice), "concept")
    )
}

fn emit(
    json: &str,
    summary: &str,
    path: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CommandError> {
    match path {
        Some(p) => {
            fs::write(p, json)
                .map_err(|e| CommandError::Usage(format!("cannot write {}: {e}", p.display())))?;
            writeln!(out, "{summary}")?;
        }
        None => {
            out.write_all(json.as_bytes())?;
            writeln!(err, "{summary}")?;
        }
    }
    Ok(())
}

fn concepts(
    path: &Path,
    mode: Mode,
    algorithm: Algorithm,
    out_path: Option<&Path>,
    cap: u128,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let text = read(path)?;
    let ctx = parse_context(&text, base_dir(path)).map_err(failure)?;
    let lifted = ctx.lift().map_err(failure)?;
    let kind = concept_kind(mode);
    let algo = enumeration(algorithm);
    let lattice = concept_lattice(&lifted.phi, kind, algo, cap).map_err(failure)?;
    let mut outcome = Outcome::Ok;
    let mut doc = lattice_document(&lattice, algo, cap);
    if algo == EnumerationAlgorithm::Generated && brute_space(&lifted.phi) <= CROSS_CHECK_LIMIT {
        match concept_lattice(&lifted.phi, kind, EnumerationAlgorithm::Brute, cap) {
            Ok(brute) if brute.concepts() == lattice.concepts() => {
                doc.cross_check = Some(format!("brute force agrees on {} concepts", brute.len()));
            }
            Ok(brute) => {
                doc.cross_check = Some(format!(
                    "brute force disagrees: {} concepts against {}",
                    brute.len(),
                    lattice.len()
                ));
                outcome = Outcome::Failed;
            }
            Err(Error::PresheafSpaceTooLarge { .. }) => {
                doc.cross_check = Some("skipped: brute force exceeds the cap".into());
            }
            Err(e) => return Err(failure(e)),
        }
    }
    let mut summary = concept_summary(&lattice, mode, algorithm);
    if outcome == Outcome::Failed {
        summary.push_str("; brute-force cross-check FAILED");
    }
    emit(&to_json(&doc), &summary, out_path, out, err)?;
    Ok(outcome)
}

fn macneille(
    path: &Path,
    out_path: Option<&Path>,
    cap: u128,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let text = read(path)?;
    let a = parse_category(&text, base_dir(path)).map_err(failure)?;
    let problems = category_problems(&a, "category");
    if !problems.is_empty() {
        return report(
            &format!("category with {}", plural(a.n(), "object")),
            &problems,
            out,
        );
    }
    let a = Arc::new(a);
    let (lattice, embedding) = macneille_completion(&a);
    let mut doc = lattice_document(&lattice, EnumerationAlgorithm::Generated, cap);
    doc.kind = "macneille".into();
    doc.embedding = Some(
        (0..a.n())
            .map(|x| EmbeddingDoc {
                object: a.label(x).to_string(),
                concept: lattice.category().label(embedding.apply(x)).to_string(),
            })
            .collect(),
    );
    let summary = plural(lattice.len(), "cut");
    emit(&to_json(&doc), &summary, out_path, out, err)?;
    Ok(Outcome::Ok)
}

fn run_laws(cfg: &LawConfig, only: &[String], out: &mut dyn Write) -> CmdResult {
    let registry = laws::registry();
    for id in only {
        if !registry.iter().any(|l| l.id == id) {
            return Err(CommandError::Usage(format!(
                "unknown law `{id}`; see `qfca laws --list`"
            )));
        }
    }
    writeln!(
        out,
        "laws: seed={} profile={} mutant={}",
        cfg.seed,
        cfg.profile,
        if cfg.mutant { "on" } else { "off" }
    )?;
    let mut total = 0;
    let mut failed = 0;
    for law in registry
        .iter()
        .filter(|l| only.is_empty() || only.iter().any(|o| o == l.id))
    {
        let rep = law.run(cfg);
        total += 1;
        if !rep.passed() {
            failed += 1;
        }
        writeln!(out, "{rep}")?;
    }
    writeln!(out, "{} of {total} laws passed", total - failed)?;
    Ok(if failed == 0 {
        Outcome::Ok
    } else {
        Outcome::Failed
    })
}
