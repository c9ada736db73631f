//! Isbell and Kan adjunctions of a distributor, their concept lattices, MacNeille
//! completion, Girard duality, density and functoriality along infomorphisms.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::completion::{inf, sup};
use crate::distributor::{
    bottom_weight, co_direct_image, cotensor_presheaf, direct_image, enumerate_weights,
    inverse_image, join_weights, meet_weights, presheaf_hom, tensor_presheaf, top_weight,
    Infomorphism, QDistributor, Variance, Weight,
};
use crate::enriched::{QCategory, QFunctor};
use crate::quantaloid::GirardReport;
use crate::{Error, Result};

/// `φ↑(μ) = φ ↙ μ`, a copresheaf on the codomain of type `tμ`.
pub fn isbell_up(phi: &QDistributor, mu: &Weight) -> Weight {
    let (a, b) = (&phi.dom, &phi.cod);
    let q = a.quantaloid();
    Weight {
        ty: mu.ty,
        w: (0..b.n())
            .map(|y| {
                let ty = b.ty(y);
                q.hom(mu.ty, ty).meet_all(
                    (0..a.n()).map(|x| q.lres_idx(a.ty(x), mu.ty, ty, phi.get(x, y), mu.w[x])),
                )
            })
            .collect(),
    }
}

/// `φ↓(λ) = λ ↘ φ`, a presheaf on the domain of type `tλ`.
pub fn isbell_down(phi: &QDistributor, lam: &Weight) -> Weight {
    let (a, b) = (&phi.dom, &phi.cod);
    let q = a.quantaloid();
    Weight {
        ty: lam.ty,
        w: (0..a.n())
            .map(|x| {
                let tx = a.ty(x);
                q.hom(tx, lam.ty).meet_all(
                    (0..b.n()).map(|y| q.rres_idx(tx, lam.ty, b.ty(y), lam.w[y], phi.get(x, y))),
                )
            })
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsbellDirection {
    Up,
    Down,
}

pub fn isbell_transform(phi: &QDistributor, dir: IsbellDirection, w: &Weight) -> Weight {
    match dir {
        IsbellDirection::Up => isbell_up(phi, w),
        IsbellDirection::Down => isbell_down(phi, w),
    }
}

/// `φ*(λ) = λ . φ` for a presheaf `λ` on the codomain.
pub fn kan_star(phi: &QDistributor, lam: &Weight) -> Weight {
    let (a, b) = (&phi.dom, &phi.cod);
    let q = a.quantaloid();
    Weight {
        ty: lam.ty,
        w: (0..a.n())
            .map(|x| {
                let tx = a.ty(x);
                q.hom(tx, lam.ty).join_all(
                    (0..b.n()).map(|y| q.comp_idx(tx, b.ty(y), lam.ty, lam.w[y], phi.get(x, y))),
                )
            })
            .collect(),
    }
}

/// `φ_*(μ) = μ ↙ φ` for a presheaf `μ` on the domain.
pub fn kan_lower(phi: &QDistributor, mu: &Weight) -> Weight {
    let (a, b) = (&phi.dom, &phi.cod);
    let q = a.quantaloid();
    Weight {
        ty: mu.ty,
        w: (0..b.n())
            .map(|y| {
                let ty = b.ty(y);
                q.hom(ty, mu.ty).meet_all(
                    (0..a.n()).map(|x| q.lres_idx(a.ty(x), ty, mu.ty, mu.w[x], phi.get(x, y))),
                )
            })
            .collect(),
    }
}

/// `φ^†(μ) = φ . μ` for a copresheaf `μ` on the domain.
pub fn kan_dag(phi: &QDistributor, mu: &Weight) -> Weight {
    let (a, b) = (&phi.dom, &phi.cod);
    let q = a.quantaloid();
    Weight {
        ty: mu.ty,
        w: (0..b.n())
            .map(|y| {
                let ty = b.ty(y);
                q.hom(mu.ty, ty).join_all(
                    (0..a.n()).map(|x| q.comp_idx(mu.ty, a.ty(x), ty, phi.get(x, y), mu.w[x])),
                )
            })
            .collect(),
    }
}

/// `φ_†(λ) = φ ↘ λ` for a copresheaf `λ` on the codomain.
pub fn kan_lower_dag(phi: &QDistributor, lam: &Weight) -> Weight {
    let (a, b) = (&phi.dom, &phi.cod);
    let q = a.quantaloid();
    Weight {
        ty: lam.ty,
        w: (0..a.n())
            .map(|x| {
                let tx = a.ty(x);
                q.hom(lam.ty, tx).meet_all(
                    (0..b.n()).map(|y| q.rres_idx(lam.ty, tx, b.ty(y), phi.get(x, y), lam.w[y])),
                )
            })
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KanKind {
    Star,
    Lower,
    Dag,
    LowerDag,
}

pub fn kan_transform(phi: &QDistributor, kind: KanKind, w: &Weight) -> Weight {
    match kind {
        KanKind::Star => kan_star(phi, w),
        KanKind::Lower => kan_lower(phi, w),
        KanKind::Dag => kan_dag(phi, w),
        KanKind::LowerDag => kan_lower_dag(phi, w),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConceptKind {
    Isbell,
    Kan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnumerationAlgorithm {
    Brute,
    Generated,
}

/// How a concept was first reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// The column `φ(-, y)` of an attribute.
    Column(usize),
    /// The empty meet (Isbell) or empty join (Kan) of a type.
    Extremal,
    /// Closing generators under meets and cotensors (Isbell) or joins and tensors (Kan).
    Closure,
    /// Exhaustive scan of the presheaf space.
    Scan,
}

/// A fixed pair of the Isbell or Kan adjunction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConceptPair {
    pub kind: ConceptKind,
    /// Presheaf on the domain.
    pub mu: Weight,
    /// Copresheaf (Isbell) or presheaf (Kan) on the codomain.
    pub lam: Weight,
    pub ty: usize,
}

/// The concepts of a distributor ordered by `PA(μ1, μ2)`, as an enriched category.
#[derive(Clone, Debug)]
pub struct ConceptLattice {
    pub kind: ConceptKind,
    pub phi: QDistributor,
    concepts: Vec<ConceptPair>,
    provenance: Vec<Provenance>,
    cat: Arc<QCategory>,
    by_mu: HashMap<Weight, usize>,
    by_lam: HashMap<Weight, usize>,
}

impl ConceptLattice {
    fn assemble(
        kind: ConceptKind,
        phi: &QDistributor,
        mut found: Vec<(Weight, Provenance)>,
    ) -> Self {
        found.sort_by(|a, b| a.0.cmp(&b.0));
        let a = &phi.dom;
        let q = a.quantaloid();
        let concepts: Vec<ConceptPair> = found
            .iter()
            .map(|(mu, _)| ConceptPair {
                kind,
                lam: match kind {
                    ConceptKind::Isbell => isbell_up(phi, mu),
                    ConceptKind::Kan => kan_lower(phi, mu),
                },
                ty: mu.ty,
                mu: mu.clone(),
            })
            .collect();
        let provenance = found.into_iter().map(|(_, p)| p).collect();
        let n = concepts.len();
        let mut hom = Vec::with_capacity(n * n);
        for c1 in &concepts {
            for c2 in &concepts {
                hom.push(presheaf_hom(a, &c1.mu, &c2.mu));
            }
        }
        let labels = (0..n).map(|i| format!("c{i}")).collect();
        let types = concepts.iter().map(|c| c.ty).collect();
        let cat =
            QCategory::new(Arc::clone(q), labels, types, hom).expect("concept homs are well typed");
        let by_mu = concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.mu.clone(), i))
            .collect();
        let by_lam = concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.lam.clone(), i))
            .collect();
        ConceptLattice {
            kind,
            phi: phi.clone(),
            concepts,
            provenance,
            cat: Arc::new(cat),
            by_mu,
            by_lam,
        }
    }

    pub fn concepts(&self) -> &[ConceptPair] {
        &self.concepts
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    /// The lattice as an enriched category with `hom = PA(μ1, μ2)`.
    pub fn category(&self) -> &Arc<QCategory> {
        &self.cat
    }

    pub fn index_of_mu(&self, mu: &Weight) -> Option<usize> {
        self.by_mu.get(mu).copied()
    }

    pub fn index_of_lam(&self, lam: &Weight) -> Option<usize> {
        self.by_lam.get(lam).copied()
    }

    /// Concept counts per type object, indexed by object.
    pub fn counts_by_type(&self) -> Vec<usize> {
        let mut out = vec![0; self.phi.dom.quantaloid().n()];
        for c in &self.concepts {
            out[c.ty] += 1;
        }
        out
    }

    /// Whether the hom computed on the codomain side agrees with `PA(μ1, μ2)` everywhere.
    pub fn codomain_homs_agree(&self) -> bool {
        let b = &self.phi.cod;
        let n = self.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let (c1, c2) = (&self.concepts[i], &self.concepts[j]);
                let other = match self.kind {
                    ConceptKind::Isbell => crate::distributor::copresheaf_hom(b, &c1.lam, &c2.lam),
                    ConceptKind::Kan => presheaf_hom(b, &c1.lam, &c2.lam),
                };
                other == self.cat.h(i, j)
            })
        })
    }
}

fn brute_concepts(
    phi: &QDistributor,
    kind: ConceptKind,
    cap: u128,
) -> Result<Vec<(Weight, Provenance)>> {
    let a = &phi.dom;
    let mut out = Vec::new();
    for ty in 0..a.quantaloid().n() {
        for mu in enumerate_weights(a, Variance::Contra, ty, cap)? {
            let back = match kind {
                ConceptKind::Isbell => isbell_down(phi, &isbell_up(phi, &mu)),
                ConceptKind::Kan => kan_star(phi, &kan_lower(phi, &mu)),
            };
            if back == mu {
                out.push((mu, Provenance::Scan));
            }
        }
    }
    Ok(out)
}

fn generated_concepts(phi: &QDistributor, kind: ConceptKind) -> Vec<(Weight, Provenance)> {
    let a = &phi.dom;
    let q = a.quantaloid();
    let mut seen: HashMap<Weight, usize> = HashMap::new();
    let mut found: Vec<(Weight, Provenance)> = Vec::new();
    let mut by_type: Vec<Vec<usize>> = vec![Vec::new(); q.n()];
    let mut queue = VecDeque::new();
    let push = |w: Weight,
                p: Provenance,
                seen: &mut HashMap<Weight, usize>,
                found: &mut Vec<(Weight, Provenance)>,
                by_type: &mut Vec<Vec<usize>>,
                queue: &mut VecDeque<usize>| {
        if seen.contains_key(&w) {
            return;
        }
        let i = found.len();
        seen.insert(w.clone(), i);
        by_type[w.ty].push(i);
        found.push((w, p));
        queue.push_back(i);
    };
    for y in 0..phi.cod.n() {
        push(
            phi.col(y),
            Provenance::Column(y),
            &mut seen,
            &mut found,
            &mut by_type,
            &mut queue,
        );
    }
    for ty in 0..q.n() {
        let w = match kind {
            ConceptKind::Isbell => top_weight(a, Variance::Contra, ty),
            ConceptKind::Kan => bottom_weight(a, Variance::Contra, ty),
        };
        push(
            w,
            Provenance::Extremal,
            &mut seen,
            &mut found,
            &mut by_type,
            &mut queue,
        );
    }
    while let Some(i) = queue.pop_front() {
        let w = found[i].0.clone();
        let same: Vec<usize> = by_type[w.ty].clone();
        for j in same {
            let other = &found[j].0;
            let combined = match kind {
                ConceptKind::Isbell => meet_weights(a, Variance::Contra, &w, other),
                ConceptKind::Kan => join_weights(a, Variance::Contra, &w, other),
            };
            push(
                combined,
                Provenance::Closure,
                &mut seen,
                &mut found,
                &mut by_type,
                &mut queue,
            );
        }
        for z in 0..q.n() {
            match kind {
                ConceptKind::Isbell => {
                    for f in 0..q.hom(z, w.ty).len() {
                        let c = cotensor_presheaf(a, f, z, &w);
                        push(
                            c,
                            Provenance::Closure,
                            &mut seen,
                            &mut found,
                            &mut by_type,
                            &mut queue,
                        );
                    }
                }
                ConceptKind::Kan => {
                    for f in 0..q.hom(w.ty, z).len() {
                        let t = tensor_presheaf(a, f, z, &w);
                        push(
                            t,
                            Provenance::Closure,
                            &mut seen,
                            &mut found,
                            &mut by_type,
                            &mut queue,
                        );
                    }
                }
            }
        }
    }
    found
}

/// The Isbell (`μ = φ↓φ↑μ`) or Kan (`μ = φ*φ_*μ`) concepts of `φ`, sorted by `μ`.
///
/// `Brute` scans every presheaf on the domain and is bounded by `cap`. `Generated`
/// closes the columns of `φ` under meets and cotensors (Isbell) or joins and tensors
/// (Kan) inside the presheaf category of the domain.
pub fn concept_lattice(
    phi: &QDistributor,
    kind: ConceptKind,
    algorithm: EnumerationAlgorithm,
    cap: u128,
) -> Result<ConceptLattice> {
    let found = match algorithm {
        EnumerationAlgorithm::Brute => brute_concepts(phi, kind, cap)?,
        EnumerationAlgorithm::Generated => generated_concepts(phi, kind),
    };
    Ok(ConceptLattice::assemble(kind, phi, found))
}

/// The MacNeille completion: Isbell concepts of the identity distributor, with the
/// embedding `x ↦ (Y x, Y† x)`.
pub fn macneille_completion(a: &Arc<QCategory>) -> (ConceptLattice, QFunctor) {
    let id = QDistributor::identity(Arc::clone(a));
    let lattice = ConceptLattice::assemble(
        ConceptKind::Isbell,
        &id,
        generated_concepts(&id, ConceptKind::Isbell),
    );
    let map = (0..a.n())
        .map(|x| {
            lattice
                .index_of_mu(&id.col(x))
                .expect("representables are cuts")
        })
        .collect();
    let embedding = QFunctor {
        dom: Arc::clone(a),
        cod: Arc::clone(lattice.category()),
        map,
    };
    (lattice, embedding)
}

fn require_girard(g: &GirardReport, phi: &QDistributor) -> Result<()> {
    if g.belongs_to(phi.dom.quantaloid()) {
        Ok(())
    } else {
        Err(Error::NotGirard)
    }
}

/// `(¬φ)(y, x) = ¬φ(x, y)`, a distributor `B ⇸ A`.
pub fn negate_distributor(phi: &QDistributor, g: &GirardReport) -> Result<QDistributor> {
    require_girard(g, phi)?;
    let (a, b) = (&phi.dom, &phi.cod);
    QDistributor::from_fn(Arc::clone(b), Arc::clone(a), |y, x| {
        g.neg_idx(a.ty(x), b.ty(y), phi.get(x, y))
    })
}

/// Pointwise negation of a weight on `a`: presheaves become copresheaves and back.
pub fn negate_weight(g: &GirardReport, a: &QCategory, v: Variance, w: &Weight) -> Weight {
    Weight {
        ty: w.ty,
        w: (0..a.n())
            .map(|x| match v {
                Variance::Contra => g.neg_idx(a.ty(x), w.ty, w.w[x]),
                Variance::Co => g.neg_idx(w.ty, a.ty(x), w.w[x]),
            })
            .collect(),
    }
}

/// Result of comparing the Kan adjunction of `φ` with the Isbell adjunction of `¬φ`.
#[derive(Clone, Debug)]
pub struct DualityReport {
    /// `φ* = ¬ . (¬φ)↑` on every presheaf of the codomain.
    pub star_identity: bool,
    /// `φ_* = (¬φ)↓ . ¬` on every presheaf of the domain.
    pub lower_identity: bool,
    pub kan: ConceptLattice,
    pub isbell_of_negation: ConceptLattice,
    /// `iso[i]` is the concept of `M(¬φ)` matched with concept `i` of `K(φ)` by
    /// `(μ, λ) ↦ (λ, ¬μ)`, when that map is a hom-preserving bijection.
    pub iso: Option<Vec<usize>>,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.star_identity && self.lower_identity && self.iso.is_some()
    }
}

pub fn girard_duality_check(
    phi: &QDistributor,
    g: &GirardReport,
    cap: u128,
) -> Result<DualityReport> {
    let neg = negate_distributor(phi, g)?;
    let (a, b) = (&phi.dom, &phi.cod);
    let q = a.quantaloid();
    let mut star_identity = true;
    let mut lower_identity = true;
    for ty in 0..q.n() {
        for lam in enumerate_weights(b, Variance::Contra, ty, cap)? {
            let via = negate_weight(g, a, Variance::Co, &isbell_up(&neg, &lam));
            if kan_star(phi, &lam) != via {
                star_identity = false;
            }
        }
        for mu in enumerate_weights(a, Variance::Contra, ty, cap)? {
            let via = isbell_down(&neg, &negate_weight(g, a, Variance::Contra, &mu));
            if kan_lower(phi, &mu) != via {
                lower_identity = false;
            }
        }
    }
    let kan = concept_lattice(phi, ConceptKind::Kan, EnumerationAlgorithm::Generated, cap)?;
    let isbell_of_negation = concept_lattice(
        &neg,
        ConceptKind::Isbell,
        EnumerationAlgorithm::Generated,
        cap,
    )?;
    let iso = if kan.len() == isbell_of_negation.len() {
        let mut map = Vec::with_capacity(kan.len());
        let mut ok = true;
        for c in kan.concepts() {
            match isbell_of_negation.index_of_mu(&c.lam) {
                Some(j)
                    if isbell_of_negation.concepts()[j].lam
                        == negate_weight(g, a, Variance::Contra, &c.mu) =>
                {
                    map.push(j)
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        let (kc, mc) = (kan.category(), isbell_of_negation.category());
        if ok {
            ok = (0..kan.len()).all(|i| (0..kan.len()).all(|j| kc.h(i, j) == mc.h(map[i], map[j])));
        }
        ok.then_some(map)
    } else {
        None
    };
    Ok(DualityReport {
        star_identity,
        lower_identity,
        kan,
        isbell_of_negation,
        iso,
    })
}

/// The adjoint pair a valid infomorphism induces between concept lattices.
///
/// For `Isbell` (covariant in `F`): `lower: M(φ) -> M(ψ)` sends `μ` to the closure of
/// `F^→(μ)`, `upper: M(ψ) -> M(φ)` is `F^←`. For `Kan` (contravariant, through `G`):
/// `lower: K(ψ) -> K(φ)` sends `λ'` to the closure of `G^→(λ')`, `upper: K(φ) -> K(ψ)`
/// is `G^←`.
#[derive(Clone, Debug)]
pub struct ConceptFunctorImage {
    pub source: ConceptLattice,
    pub target: ConceptLattice,
    pub lower: QFunctor,
    pub upper: QFunctor,
}

pub fn concept_functor_image(i: &Infomorphism, kind: ConceptKind) -> Result<ConceptFunctorImage> {
    if !i.is_valid() {
        return Err(Error::InvalidInfomorphism(
            "components fail the functor laws or the defining equation".into(),
        ));
    }
    let gen = EnumerationAlgorithm::Generated;
    let source = concept_lattice(&i.source, kind, gen, 0)?;
    let target = concept_lattice(&i.target, kind, gen, 0)?;
    let missing = || Error::Type("image is not a concept".into());
    let (lower_map, upper_map, lower_dom, lower_cod) = match kind {
        ConceptKind::Isbell => {
            let psi = &i.target;
            let lower = source
                .concepts()
                .iter()
                .map(|c| {
                    let img = direct_image(&i.f, &c.mu);
                    target
                        .index_of_mu(&isbell_down(psi, &isbell_up(psi, &img)))
                        .ok_or_else(missing)
                })
                .collect::<Result<Vec<_>>>()?;
            let upper = target
                .concepts()
                .iter()
                .map(|c| {
                    let pre = inverse_image(&i.f, &c.mu);
                    source.index_of_mu(&pre).ok_or_else(missing)
                })
                .collect::<Result<Vec<_>>>()?;
            (lower, upper, &source, &target)
        }
        ConceptKind::Kan => {
            let phi = &i.source;
            let lower = target
                .concepts()
                .iter()
                .map(|c| {
                    let img = direct_image(&i.g, &c.lam);
                    source
                        .index_of_lam(&kan_lower(phi, &kan_star(phi, &img)))
                        .ok_or_else(missing)
                })
                .collect::<Result<Vec<_>>>()?;
            let upper = source
                .concepts()
                .iter()
                .map(|c| {
                    let pre = inverse_image(&i.g, &c.lam);
                    target.index_of_lam(&pre).ok_or_else(missing)
                })
                .collect::<Result<Vec<_>>>()?;
            (lower, upper, &target, &source)
        }
    };
    let lower = QFunctor::new(
        Arc::clone(lower_dom.category()),
        Arc::clone(lower_cod.category()),
        lower_map,
    )?;
    let upper = QFunctor::new(
        Arc::clone(lower_cod.category()),
        Arc::clone(lower_dom.category()),
        upper_map,
    )?;
    Ok(ConceptFunctorImage {
        source,
        target,
        lower,
        upper,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityDirection {
    Sup,
    Inf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub dense: bool,
    /// Objects of the codomain not reached.
    pub missed: Vec<usize>,
}

/// Whether every object of the codomain is `sup F^→(μ)` (or `inf F^⇒(λ)`) for some weight.
pub fn density_check(f: &QFunctor, dir: DensityDirection, cap: u128) -> Result<DensityReport> {
    let (a, x) = (&f.dom, &f.cod);
    let mut hit = vec![false; x.n()];
    for ty in 0..a.quantaloid().n() {
        let var = match dir {
            DensityDirection::Sup => Variance::Contra,
            DensityDirection::Inf => Variance::Co,
        };
        for w in enumerate_weights(a, var, ty, cap)? {
            let reached = match dir {
                DensityDirection::Sup => sup(x, &direct_image(f, &w)),
                DensityDirection::Inf => inf(x, &co_direct_image(f, &w)),
            };
            if let Some(r) = reached {
                for (y, h) in hit.iter_mut().enumerate() {
                    if x.iso(y, r) {
                        *h = true;
                    }
                }
            }
        }
    }
    let missed: Vec<usize> = (0..x.n()).filter(|&y| !hit[y]).collect();
    Ok(DensityReport {
        dense: missed.is_empty(),
        missed,
    })
}

/// `F a = (φ↓(φ(a, -)), φ(a, -))` and `G b = (φ(-, b), φ↑(φ(-, b)))` into `M(φ)`.
#[derive(Clone, Debug)]
pub struct DenseFactorization {
    pub lattice: ConceptLattice,
    pub f: QFunctor,
    pub g: QFunctor,
    /// `φ(x, y) = X(Fx, Gy)` everywhere.
    pub factorizes: bool,
    pub f_sup_dense: bool,
    pub g_inf_dense: bool,
}

impl DenseFactorization {
    pub fn holds(&self) -> bool {
        self.factorizes && self.f_sup_dense && self.g_inf_dense
    }
}

pub fn dense_factorization(phi: &QDistributor, cap: u128) -> Result<DenseFactorization> {
    let lattice = concept_lattice(
        phi,
        ConceptKind::Isbell,
        EnumerationAlgorithm::Generated,
        cap,
    )?;
    let missing = || Error::Type("factor image is not a concept".into());
    let fmap = (0..phi.dom.n())
        .map(|a| {
            lattice
                .index_of_mu(&isbell_down(phi, &phi.row(a)))
                .ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    let gmap = (0..phi.cod.n())
        .map(|b| lattice.index_of_mu(&phi.col(b)).ok_or_else(missing))
        .collect::<Result<Vec<_>>>()?;
    let x = Arc::clone(lattice.category());
    let f = QFunctor::new(Arc::clone(&phi.dom), Arc::clone(&x), fmap)?;
    let g = QFunctor::new(Arc::clone(&phi.cod), Arc::clone(&x), gmap)?;
    let factorizes = (0..phi.dom.n())
        .all(|a| (0..phi.cod.n()).all(|b| phi.get(a, b) == x.h(f.apply(a), g.apply(b))));
    let f_sup_dense = density_check(&f, DensityDirection::Sup, cap)?.dense;
    let g_inf_dense = density_check(&g, DensityDirection::Inf, cap)?.dense;
    Ok(DenseFactorization {
        lattice,
        f,
        g,
        factorizes,
        f_sup_dense,
        g_inf_dense,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatePropertyReport {
    /// A copresheaf on `B` where `φ(-, inf λ) = λ ↘ φ` fails (or `inf λ` is missing).
    pub inf_failure: Option<Weight>,
    /// A pair `(y, y')` where `B(y, y') = φ(-, y') ↙ φ(-, y)` fails.
    pub hom_failure: Option<(usize, usize)>,
}

impl StatePropertyReport {
    pub fn holds(&self) -> bool {
        self.inf_failure.is_none() && self.hom_failure.is_none()
    }
}

/// Checks both state property system axioms for `φ: A ⇸ B`.
pub fn state_property_system_check(phi: &QDistributor, cap: u128) -> Result<StatePropertyReport> {
    let (a, b) = (&phi.dom, &phi.cod);
    let mut inf_failure = None;
    'outer: for ty in 0..b.quantaloid().n() {
        for lam in enumerate_weights(b, Variance::Co, ty, cap)? {
            let ok = match inf(b, &lam) {
                Some(m) => phi.col(m) == isbell_down(phi, &lam),
                None => false,
            };
            if !ok {
                inf_failure = Some(lam);
                break 'outer;
            }
        }
    }
    let mut hom_failure = None;
    'pairs: for y in 0..b.n() {
        for y1 in 0..b.n() {
            if b.h(y, y1) != presheaf_hom(a, &phi.col(y), &phi.col(y1)) {
                hom_failure = Some((y, y1));
                break 'pairs;
            }
        }
    }
    Ok(StatePropertyReport {
        inf_failure,
        hom_failure,
    })
}

#[cfg(test)]
mod tests;
