//! The registry of executable laws run by `qfca laws`.
//!
//! Every law draws its instances from seeded generators. Instance `k` of a run with
//! seed `s` uses the generator seeded with [`instance_seed`]`(s, k)`, so a reported
//! counterexample can be replayed with `--only <law> --seed <s>`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use qfca::adjunction::{
    concept_functor_image, concept_lattice, dense_factorization, girard_duality_check, isbell_down,
    isbell_up, kan_dag, kan_lower, kan_star, macneille_completion, state_property_system_check,
};
use qfca::completion::{is_complete, ClosureSpace};
use qfca::context::FuzzyContext;
use qfca::distributor::{
    co_direct_image, co_inverse_image, compose_infomorphisms, copresheaf_hom, direct_image,
    enumerate_weights, graph_cograph, inverse_image, presheaf_hom, space_bound, yoneda_weight,
};
use qfca::enriched::{find_isomorphism, functor_adjoint_check};
use qfca::fixtures::{antichain2, boolean, chain2, ctx1, lukasiewicz, two};
use qfca::quantaloid::{
    build_boolean_algebra, build_lukasiewicz_chain, build_nilpotent_minimum,
    find_dualizing_families, girard_structure, quantaloid_from_divisible_quantale, DualizingFamily,
    GirardReport,
};
use qfca::random::{
    random_category, random_closure, random_context, random_distributor, random_functor,
    random_infomorphism_chain, random_weight, rng,
};
use qfca::{
    ConceptKind, EnumerationAlgorithm, Error, Infomorphism, PresheafCategory, QCategory,
    QDistributor, Quantaloid, Variance,
};

/// How large the generated instances may get.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Profile {
    Small,
    Medium,
}

impl Profile {
    /// The largest number of objects in a generated category.
    pub fn max_objects(self) -> usize {
        match self {
            Profile::Small => 2,
            Profile::Medium => 3,
        }
    }

    /// The largest crisp context scanned exhaustively.
    pub fn crisp_bound(self) -> usize {
        match self {
            Profile::Small => 2,
            Profile::Medium => 3,
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Small => "small",
            Profile::Medium => "medium",
        })
    }
}

#[derive(Clone, Debug)]
pub struct LawConfig {
    pub seed: u64,
    pub profile: Profile,
    /// Replace the Łukasiewicz 3-chain in the residuation law with a copy whose
    /// composition table has one corrupted entry.
    pub mutant: bool,
    pub cap: u128,
}

impl LawConfig {
    pub fn new(seed: u64, profile: Profile) -> Self {
        LawConfig {
            seed,
            profile,
            mutant: false,
            cap: qfca::DEFAULT_CAP,
        }
    }
}

/// The verdict of one law: how many instances were checked and the first failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub id: &'static str,
    pub seed: u64,
    pub instances: usize,
    pub counterexample: Option<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(
                f,
                "PASS {} seed={} instances={}",
                self.id, self.seed, self.instances
            ),
            Some(c) => write!(
                f,
                "FAIL {} seed={} instances={}\n  counterexample: {}",
                self.id, self.seed, self.instances, c
            ),
        }
    }
}

pub struct Law {
    pub id: &'static str,
    pub summary: &'static str,
    check: fn(&LawConfig, &mut Tally) -> Result<(), Error>,
}

impl Law {
    pub fn run(&self, cfg: &LawConfig) -> LawReport {
        let mut tally = Tally::default();
        if let Err(e) = (self.check)(cfg, &mut tally) {
            tally.fail(|| format!("error: {e}"));
        }
        LawReport {
            id: self.id,
            seed: cfg.seed,
            instances: tally.instances,
            counterexample: tally.failure,
        }
    }
}

#[derive(Default)]
struct Tally {
    instances: usize,
    failure: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    fn fail(&mut self, witness: impl FnOnce() -> String) {
        if self.failure.is_none() {
            self.failure = Some(witness());
        }
    }
}

/// The seed of instance `k` in a run seeded with `seed`.
pub fn instance_seed(seed: u64, k: u64) -> u64 {
    let mut z = seed.wrapping_add(k.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn instance(cfg: &LawConfig, k: usize) -> (u64, ChaCha8Rng) {
    let s = instance_seed(cfg.seed, k as u64);
    (s, rng(s))
}

pub fn registry() -> Vec<Law> {
    vec![
        Law {
            id: "residuation",
            summary: "g . f <= h iff g <= h / f iff f <= g \\ h on every composable triple",
            check: residuation,
        },
        Law {
            id: "divisible-builders",
            summary:
                "divisible quantales yield valid quantaloids; the nilpotent minimum is rejected",
            check: divisible_builders,
        },
        Law {
            id: "yoneda",
            summary: "PA(Y a, mu) = mu(a) and P'A(lam, Y' a) = lam(a)",
            check: yoneda,
        },
        Law {
            id: "adjunction-homs",
            summary: "hom equalities of the Isbell and Kan adjunctions",
            check: adjunction_homs,
        },
        Law {
            id: "image-operators",
            summary: "Kan transforms of graphs and cographs are the four image functors",
            check: image_operators,
        },
        Law {
            id: "enumeration-agreement",
            summary: "generated and brute-force concept enumeration agree",
            check: enumeration_agreement,
        },
        Law {
            id: "lattice-completeness",
            summary: "concept and MacNeille lattices are complete with the closed formulas",
            check: lattice_completeness,
        },
        Law {
            id: "dense-factorization",
            summary: "phi = X(F-, G-) with F sup-dense and G inf-dense",
            check: dense_factorization_law,
        },
        Law {
            id: "girard-duality",
            summary: "Kan concepts of phi match Isbell concepts of its negation",
            check: girard_duality,
        },
        Law {
            id: "functoriality",
            summary: "infomorphisms act functorially on concept lattices by adjoint pairs",
            check: functoriality,
        },
        Law {
            id: "macneille",
            summary: "MacNeille completion counts, idempotence and fixed complete categories",
            check: macneille,
        },
        Law {
            id: "closure-reconstruction",
            summary: "closure spaces are recovered from their contexts",
            check: closure_reconstruction,
        },
    ]
}

pub fn find_law(id: &str) -> Option<Law> {
    registry().into_iter().find(|l| l.id == id)
}

pub fn run_all(cfg: &LawConfig) -> Vec<LawReport> {
    registry().iter().map(|l| l.run(cfg)).collect()
}

fn arrow(q: &Quantaloid, x: usize, y: usize, i: usize) -> String {
    format!(
        "{} : {} -> {}",
        q.hom(x, y).label(i),
        q.objects()[x],
        q.objects()[y]
    )
}

fn weight_text(a: &QCategory, v: Variance, w: &qfca::Weight) -> String {
    let q = a.quantaloid();
    let parts: Vec<&str> = (0..a.n())
        .map(|x| match v {
            Variance::Contra => q.hom(a.ty(x), w.ty).label(w.w[x]),
            Variance::Co => q.hom(w.ty, a.ty(x)).label(w.w[x]),
        })
        .collect();
    format!("[{}] of type {}", parts.join(", "), q.objects()[w.ty])
}

/// The Łukasiewicz 3-chain quantaloid with `0 . 1` on the top object set to `1`.
pub fn corrupted_ql3() -> Quantaloid {
    let q = lukasiewicz(3);
    let one = q.object("1").expect("top object");
    let h = q.hom(one, one);
    let (bot, top) = (
        h.index_of("0").expect("bottom"),
        h.index_of("1").expect("top"),
    );
    q.with_patched_compose(
        qfca::Arrow::new(one, one, bot),
        qfca::Arrow::new(one, one, top),
        top,
    )
    .expect("patch is in range")
}

fn residuation(cfg: &LawConfig, t: &mut Tally) -> Result<(), Error> {
    let ql3 = if cfg.mutant {
        Arc::new(corrupted_ql3())
    } else {
        lukasiewicz(3)
    };
    let ambients = [
        ("2", two()),
        ("QL3", ql3),
        ("QL5", lukasiewicz(5)),
        ("B4", boolean(2)),
    ];
    for (name, q) in ambients {
        let n = q.n();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (hxy, hyz, hxz) = (q.hom(x, y), q.hom(y, z), q.hom(x, z));
                    for f in 0..hxy.len() {
                        for g in 0..hyz.len() {
                            let gf = q.comp_idx(x, y, z, g, f);
                            for h in 0..hxz.len() {
                                let a = hxz.leq(gf, h);
                                let b = hyz.leq(g, q.lres_idx(x, y, z, h, f));
                                let c = hxy.leq(f, q.rres_idx(x, y, z, g, h));
                                t.check(a == b && b == c, || {
                                    format!(
                                        "{name}: g = {}, f = {}, h = {}: (g . f <= h) = {a}, (g <= h / f) = {b}, (f <= g \\ h) = {c}",
                                        arrow(&q, y, z, g),
                                        arrow(&q, x, y, f),
                                        arrow(&q, x, z, h)
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn divisible_builders(_cfg: &LawConfig, t: &mut Tally) -> Result<(), Error> {
    for n in 2..=6 {
        let q = quantaloid_from_divisible_quantale(&build_lukasiewicz_chain(n)?)?;
        let v = q.validate();
        t.check(v.is_empty(), || format!("Łukasiewicz {n}-chain: {}", v[0]));
    }
    for k in 1..=3 {
        let q = quantaloid_from_divisible_quantale(&build_boolean_algebra(k)?)?;
        let v = q.validate();
        t.check(v.is_empty(), || {
            format!("Boolean algebra with {k} atoms: {}", v[0])
        });
    }
    let nm = build_nilpotent_minimum(5)?;
    match nm.check_divisible() {
        Ok(()) => t.check(false, || {
            "nilpotent minimum 5-chain reported divisible".into()
        }),
        Err((a, b)) => {
            let got = (nm.label(a), nm.label(b));
            t.check(got == ("3/4", "1/4"), || {
                format!(
                    "nilpotent minimum witness is ({}, {}), expected (3/4, 1/4)",
                    got.0, got.1
                )
            });
        }
    }
    let rejected = matches!(
        quantaloid_from_divisible_quantale(&nm),
        Err(Error::NotDivisible { .. })
    );
    t.check(rejected, || {
        "the quantaloid builder accepted the nilpotent minimum".into()
    });
    Ok(())
}

fn yoneda(cfg: &LawConfig, t: &mut Tally) -> Result<(), Error> {
    for k in 0..20 {
        let (s, mut r) = instance(cfg, k);
        let q = if k % 2 == 0 { two() } else { lukasiewicz(3) };
        let n = r.gen_range(1..=cfg.profile.max_objects());
        let a = random_category(&q, n, &mut r);
        for ty in 0..q.n() {
            for mu in enumerate_weights(&a, Variance::Contra, ty, cfg.cap)? {
                for x in 0..a.n() {
                    let got = presheaf_hom(&a, &yoneda_weight(&a, Variance::Contra, x), &mu);
                    t.check(got == mu.w[x], || {
                        format!(
                            "instance seed {s}: PA(Y {}, {}) != mu({})",
                            a.label(x),
                            weight_text(&a, Variance::Contra, &mu),
                            a.label(x)
                        )
                    });
                }
            }
            for lam in enumerate_weights(&a, Variance::Co, ty, cfg.cap)? {
                for x in 0..a.n() {
                    let got = copresheaf_hom(&a, &lam, &yoneda_weight(&a, Variance::Co, x));
                    t.check(got == lam.w[x], || {
                        format!(
                            "instance seed {s}: P'A({}, Y' {}) != lam({})",
                            weight_text(&a, Variance::Co, &lam),
                            a.label(x),
                            a.label(x)
                        )
                    });
                }
            }
        }
    }
    Ok(())
}

fn adjunction_homs(cfg: &LawConfig, t: &mut Tally) -> Result<(), Error> {
    let ambients = [two(), lukasiewicz(3), boolean(2)];
    for k in 0..200 {
        let (s, mut r) = instance(cfg, k);
        let q = &ambients[k % ambients.len()];
        let m = cfg.profile.max_objects();
        let a = Arc::new(random_category(q, r.gen_range(1..=m), &mut r));
        let b = Arc::new(random_category(q, r.gen_range(1..=m), &mut r));
        let phi = random_distributor(&a, &b, &mut r);
        let mu = random_weight(&a, Variance::Contra, r.gen_range(0..q.n()), &mut r);
        let lam = random_weight(&b, Variance::Co, r.gen_range(0..q.n()), &mut r);
        let left = copresheaf_hom(&b, &isbell_up(&phi, &mu), &lam);
        let right = presheaf_hom(&a, &mu, &isbell_down(&phi, &lam));
        t.check(left == right, || {
            format!("instance seed {s}: Isbell hom equality fails")
        });
        let nu = random_weight(&b, Variance::Contra, r.gen_range(0..q.n()), &mut r);
        let left = presheaf_hom(&a, &kan_star(&phi, &nu), &mu);
        let right = presheaf_hom(&b, &nu, &kan_lower(&phi, &mu));
        t.check(left == right, || {
            format!("instance seed {s}: Kan hom equality fails")
        });
    }
    Ok(())
}

fn image_operators(cfg: &LawConfig, t: &mut Tally) -> Result<(), Error> {
    let ambients = [two(), lukasiewicz(3)];
    let mut k = 0;
    let mut found = 0;
    while found < 50 {
        let (s, mut r) = instance(cfg, k);
        k += 1;
        let q = &ambients[found % ambients.len()];
        let m = cfg.profile.max_objects().min(2);
        let a = Arc::new(random_category(q, r.gen_range(1..=m), &mut r));
        let b = Arc::new(random_category(q, r.gen_range(1..=m), &mut r));
        let Some(f) = random_functor(&a, &b, &mut r) else {
            continue;
        };
        found += 1;
        let (graph, cograph) = graph_cograph(&f);
        for ty in 0..q.n() {
            for mu in enumerate_weights(&a, Variance::Contra, ty, cfg.cap)? {
                t.check(kan_star(&cograph, &mu) == direct_image(&f, &mu), || {
                    format!(
                        "instance seed {s}: cograph transform differs from the direct image at {}",
                        weight_text(&a, Variance::Contra, &mu)
                    )
                });
            }
            for lam in enumerate_weights(&b, Variance::Contra, ty, cfg.cap)? {
                t.check(kan_star(&graph, &lam) == inverse_image(&f, &lam), || {
                    format!(
                        "instance seed {s}: graph transform differs from the inverse image at {}",
                        weight_text(&b, Variance::Contra, &lam)
                    )
                });
            }
            for lam in enumerate_weights(&b, Variance::Co, ty, cfg.cap)? {
                t.check(kan_dag(&cograph, &lam) == co_inverse_image(&f, &lam), || {
                    format!("instance seed {s}: cograph dual transform differs from the co-inverse image at {}", weight_text(&b, Variance::Co, &lam))
                });
            }
            for mu in enumerate_weights(&a, Variance::Co, ty, cfg.cap)? {
                t.check(kan_dag(&graph, &mu) == co_direct_image(&f, &mu), || {
                    format!("instance seed {s}: graph dual transform differs from the co-direct image at {}", weight_text(&a, Variance::Co, &mu))
                });
            }
        }
    }
    Ok(())
}

/// The number of candidate presheaves scanned by brute-force enumeration.
pub fn brute_space(phi: &QDistributor) -> u128 {
    let a = &phi.dom;
    (0..a.quantaloid().n())
        .map(|ty| space_bound(a, Variance::Contra, ty))
        .fold(0u128, |acc, s| acc.saturating_add(s))
}

fn agree(phi: &QDistributor, cap: u128) -> Result<Option<ConceptKind>, Error> {
    for kind in [ConceptKind::Isbell, ConceptKind::Kan] {
        let brute = concept_lattice(phi, kind, EnumerationAlgorithm::Brute, cap)?;
        let generated = concept_lattice(phi, kind, EnumerationAlgorithm::Generated, cap)?;
        if brute.concepts() != generated.concepts() {
            return Ok(Some(kind));
        }
    }
    Ok(None)
}

/// Every crisp context on `na` objects and `nb` attributes, in a fixed order.
pub fn crisp_contexts(na: usize, nb: usize) -> impl Iterator<Item = FuzzyContext> {
    let objects: Vec<String> = (1..=na).map(|i| i.to_string()).collect();
    let attributes: Vec<String> = (0..nb)
        .map(|j| ((b'a' + j as u8) as char).to_string())
        .collect();
    (0u32..1 << (na * nb)).map(move |bits| {
        let pairs: Vec<(usize, usize)> = (0..na * nb)
            .filter(|&i| bits >> i & 1 == 1)
            .map(|i| (i / nb, i % nb))
            .collect();
        FuzzyContext::crisp(objects.clone(), attributes.clone(), &pairs)
    })
}

/// Concept counts by type, leaving out the bottom degree.
pub fn positive_count(lattice: &qfca::ConceptLattice) -> usize {
    let q = lattice.phi.dom.quantaloid();
    lattice
        .concepts()
        .iter()
        .filter(|c| q.objects()[c.ty] != "0")
        .count()
}

fn enumeration_agreement(cfg: &LawConfig, t: &mut Tally) -> Result<(), Error> {
    let lifted = ctx1().lift()?;
    let gen = EnumerationAlgorithm::Generated;
    let m = concept_lattice(&lifted.phi, ConceptKind::Isbell, gen, cfg.cap)?;
    let k = concept_lattice(&lifted.phi, ConceptKind::Kan, gen, cfg.cap)?;
    let counts = (positive_count(&m), positive_count(&k));
    t.check(counts == (2, 3), || {
        format!(
            "CTX1 gives {} Isbell and {} Kan concepts, expected 2 and 3",
            counts.0, counts.1
        )
    });

    let bound = cfg.profile.crisp_bound();
    for na in 0..=bound {
        for nb in 0..=bound {
            for ctx in crisp_contexts(na, nb) {
                let lifted = ctx.lift()?;
                if let Some(kind) = agree(&lifted.phi, cfg.cap)? {
                    t.fail(|| {
                        format!(
                            "crisp {na} x {nb} context {:?}: {kind:?} enumerations differ",
                            ctx.incidence()
                        )
                    });
                }
                t.instances += 1;
            }
        }
    }

    let ql3 = build_lukasiewicz_chain(3)?;
    let q = Arc::new(quantaloid_from_divisible_quantale(&ql3)?);
    let mut k = 0;
    let mut found = 0;
    while found < 30 {
        let (s, mut r) = instance(cfg, k);
        k += 1;
        let m = cfg.profile.max_objects();
        let ctx = random_context(&ql3, r.gen_range(1..=m), r.gen_range(1..=m), &mut r);
        let lifted = ctx.lift_into(Arc::clone(&q))?;
        if brute_space(&lifted.phi) > 10_000 {
            continue;
        }
        found += 1;
        let differs = agree(&lifted.phi, cfg.cap)?;
        t.check(differs.is_none(), || {
            format!(
                "instance seed {s}: {:?} enumerations differ on a fuzzy context",
                differs.unwrap()
            )
        });
    }
    Ok(())
}

fn complete_report(lattice: &QCategory, cap: u128) -> Result<bool, Error> {
    let r = is_complete(lattice, cap)?;
    Ok(r.complete && r.co_complete && r.formulas_agree)
}

/// Like `complete_report`, but `None` when the lattice is too large to check within the cap.
fn complete_within_cap(lattice: &QCategory, cap: u128) -> Result<Option<bool>, Error> {
    match complete_report(lattice, cap) {
        Ok(ok) => Ok(Some(ok)),
        Err(Error::PresheafSpaceTooLarge { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn lattice_completeness(cfg: &LawConfig, t: &mut Tally) -> Result<(), Error> {
    let gen = EnumerationAlgorithm::Generated;
    let mut phis = vec![("CTX1".to_string(), ctx1().lift()?.phi)];
    let ql3 = build_lukasiewicz_chain(3)?;
    for k in 0..10 {
        let (s, mut r) = instance(cfg, k);
        let ctx = random_context(&ql3, r.gen_range(1..=2), r.gen_range(1..=2), &mut r);
        phis.push((
            format!("fuzzy context with instance seed {s}"),
            ctx.lift()?.phi,
        ));
    }
    for (name, phi) in &phis {
        for kind in [ConceptKind::Isbell, ConceptKind::Kan] {
            let l = concept_lattice(phi, kind, gen, cfg.cap)?;
            if let Some(ok) = complete_within_cap(l.category(), cfg.cap)? {
                t.check(ok, || {
                    format!("{name}: {kind:?} lattice fails the completeness check")
                });
            }
        }
    }
    let mut checked = 0;
    for k in 10..60 {
        if checked == 10 {
            break;
        }
        let (s, mut r) = instance(cfg, k);
        let q = if k % 2 == 0 { two() } else { lukasiewicz(3) };
        let a = Arc::new(random_category(&q, r.gen_range(0..=2), &mut r));
        let (m, _) = macneille_completion(&a);
        if let Some(ok) = complete_within_cap(m.category(), cfg.cap)? {
            checked += 1;
            t.check(ok, || {
                format!("instance seed {s}: MacNeille lattice fails the completeness check")
            });
        }
    }
    for a in [chain2(), antichain2(), QCategory::empty(two())] {
        let (m, _) = macneille_completion(&Arc::new(a));
        t.check(complete_report(m.category(), cfg.cap)?, || {
            "fixture MacNeille lattice fails the completeness check".into()
        });
    }
    Ok(())
}

fn dense_factorization_law(cfg: &LawConfig, t: &mut Tally) -> Result<(), Error> {
    let d = dense_factorization(&ctx1().lift()?.phi, cfg.cap)?;
    t.check(d.holds(), || "CTX1 does not factor densely".into());
    let ql3 = build_lukasiewicz_chain(3)?;
    let q = Arc::new(quantaloid_from_divisible_quantale(&ql3)?);
    for k in 0..20 {
        let (s, mut r) = instance(cfg, k);
        let m = cfg.profile.max_objects();
        let ctx = random_context(&ql3, r.gen_range(1..=m), r.gen_range(1..=m), &mut r);
        let d = dense_factorization(&ctx.lift_into(Arc::clone(&q))?.phi, cfg.cap)?;
        t.check(d.holds(), || {
            format!(
                "instance seed {s}: factorizes = {}, F sup-dense = {}, G inf-dense = {}",
                d.factorizes, d.f_sup_dense, d.g_inf_dense
            )
        });
    }
    Ok(())
}

fn girard_two() -> Result<GirardReport, Error> {
    let q = two();
    let d = DualizingFamily(vec![q.hom(0, 0).bottom()]);
    girard_structure(&q, &d)
}

fn girard_duality(cfg: &LawConfig, t: &mut Tally) -> Result<(), Error> {
    let b4 = boolean(2);
    let structures = [
        (two(), vec![girard_two()?]),
        (
            Arc::clone(&b4),
            find_dualizing_families(&b4)
                .iter()
                .map(|d| girard_structure(&b4, d))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    ];
    for k in 0..50 {
        let (s, mut r) = instance(cfg, k);
        let (q, gs) = &structures[k % 2];
        let m = cfg.profile.max_objects().min(2);
        let a = Arc::new(random_category(q, r.gen_range(1..=m), &mut r));
        let b = Arc::new(random_category(q, r.gen_range(1..=m), &mut r));
        let phi = random_distributor(&a, &b, &mut r);
        for g in gs {
            let rep = girard_duality_check(&phi, g, cfg.cap)?;
            t.check(rep.holds() && rep.iso.is_some(), || {
                format!(
                    "instance seed {s}: star identity = {}, lower identity = {}, isomorphism found = {}",
                    rep.star_identity,
                    rep.lower_identity,
                    rep.iso.is_some()
                )
            });
        }
    }
    Ok(())
}

fn identity_map(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn compose_maps(first: &[usize], second: &[usize]) -> Vec<usize> {
    first.iter().map(|&i| second[i]).collect()
}

fn functoriality(cfg: &LawConfig, t: &mut Tally) -> Result<(), Error> {
    let ambients = [two(), lukasiewicz(3)];
    for k in 0..30 {
        let (s, mut r) = instance(cfg, k);
        let q = &ambients[k % 2];
        let chain = random_infomorphism_chain(q, 2, &mut r);
        let (i, j) = (&chain[0], &chain[1]);
        let ji = compose_infomorphisms(j, i)?;
        for kind in [ConceptKind::Isbell, ConceptKind::Kan] {
            let id = concept_functor_image(&Infomorphism::identity(&i.source), kind)?;
            let n = id.source.len();
            t.check(
                id.lower.map == identity_map(n) && id.upper.map == identity_map(n),
                || format!("instance seed {s}: {kind:?} image of an identity is not the identity"),
            );
            let (fi, fj, fji) = (
                concept_functor_image(i, kind)?,
                concept_functor_image(j, kind)?,
                concept_functor_image(&ji, kind)?,
            );
            for img in [&fi, &fj, &fji] {
                t.check(functor_adjoint_check(&img.lower, &img.upper)?, || {
                    format!("instance seed {s}: {kind:?} image pair is not adjoint")
                });
            }
            let (lower, upper) = match kind {
                ConceptKind::Isbell => (
                    compose_maps(&fi.lower.map, &fj.lower.map),
                    compose_maps(&fj.upper.map, &fi.upper.map),
                ),
                ConceptKind::Kan => (
                    compose_maps(&fj.lower.map, &fi.lower.map),
                    compose_maps(&fi.upper.map, &fj.upper.map),
                ),
            };
            t.check(fji.lower.map == lower && fji.upper.map == upper, || {
                format!("instance seed {s}: {kind:?} image of a composite is not the composite of images")
            });
        }
    }
    Ok(())
}

fn macneille(cfg: &LawConfig, t: &mut Tally) -> Result<(), Error> {
    let fixtures = [
        ("chain", chain2(), 2),
        ("antichain", antichain2(), 4),
        ("empty", QCategory::empty(two()), 1),
    ];
    for (name, a, want) in fixtures {
        let (m, _) = macneille_completion(&Arc::new(a));
        t.check(m.len() == want, || {
            format!(
                "MacNeille completion of the {name} has {} cuts, expected {want}",
                m.len()
            )
        });
    }
    for k in 0..20 {
        let (s, mut r) = instance(cfg, k);
        let q = if k % 2 == 0 { two() } else { lukasiewicz(3) };
        let a = Arc::new(random_category(
            &q,
            r.gen_range(0..=cfg.profile.max_objects()),
            &mut r,
        ));
        let (m, _) = macneille_completion(&a);
        let (mm, _) = macneille_completion(m.category());
        t.check(
            find_isomorphism(m.category(), mm.category()).is_some(),
            || format!("instance seed {s}: M(M(A)) is not isomorphic to M(A)"),
        );
        let ma = m.category();
        t.check(
            ma.is_skeletal() && find_isomorphism(mm.category(), ma).is_some(),
            || format!("instance seed {s}: the skeletal complete M(A) is not fixed by completion"),
        );
        if a.is_skeletal() && is_complete(&a, cfg.cap)?.complete {
            t.check(find_isomorphism(m.category(), &a).is_some(), || {
                format!("instance seed {s}: a skeletal complete A is not its own completion")
            });
        }
    }
    Ok(())
}

fn closure_reconstruction(cfg: &LawConfig, t: &mut Tally) -> Result<(), Error> {
    for k in 0..20 {
        let (s, mut r) = instance(cfg, k);
        let q = if k % 2 == 0 { two() } else { lukasiewicz(3) };
        let a = Arc::new(random_category(&q, r.gen_range(1..=2), &mut r));
        let pa = Arc::new(PresheafCategory::build(a, Variance::Contra, cfg.cap)?);
        let space = ClosureSpace::new(random_closure(&pa, &mut r)?);
        t.check(space.op.check().is_empty(), || {
            format!("instance seed {s}: generated operator is not a closure")
        });
        t.check(space.reconstruction_holds(), || {
            format!("instance seed {s}: reconstruction fails")
        });
        let sps = state_property_system_check(&space.context(), cfg.cap)?;
        t.check(sps.holds(), || {
            format!("instance seed {s}: the closed presheaves do not form a state property system")
        });
    }
    Ok(())
}
