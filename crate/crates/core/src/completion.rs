//! Tensors and cotensors, suprema and infima, weighted (co)limits, completeness,
//! closure operators and spaces, continuity and pointwise Kan extensions.

use std::fmt;
use std::sync::Arc;

use crate::adjunction::{isbell_down, isbell_up};
use crate::distributor::{
    direct_image, enumerate_weights, graph_cograph, inverse_image, top_weight, PresheafCategory,
    QDistributor, Variance, Weight,
};
use crate::enriched::{type_preserving_maps, QCategory, QFunctor};
use crate::quantaloid::Arrow;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorSide {
    Tensor,
    Cotensor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremum {
    Sup,
    Inf,
}

/// `f ⊗ x` for `f: tx -> Z`: the least object `a` of type `Z` with `A(a, -) = A(x, -) ↙ f`.
pub fn tensor(a: &QCategory, f: Arrow, x: usize) -> Option<usize> {
    assert_eq!(f.dom, a.ty(x), "tensor needs f: tx -> Z");
    let q = a.quantaloid();
    let (tx, z) = (a.ty(x), f.cod);
    let row: Vec<usize> = (0..a.n())
        .map(|y| q.lres_idx(tx, z, a.ty(y), a.h(x, y), f.idx))
        .collect();
    a.find_by_row(z, &row)
}

/// `f ⇒ x` for `f: Z -> tx`: the least object `b` of type `Z` with `A(-, b) = f ↘ A(-, x)`.
pub fn cotensor(a: &QCategory, f: Arrow, x: usize) -> Option<usize> {
    assert_eq!(f.cod, a.ty(x), "cotensor needs f: Z -> tx");
    let q = a.quantaloid();
    let (tx, z) = (a.ty(x), f.dom);
    let col: Vec<usize> = (0..a.n())
        .map(|y| q.rres_idx(a.ty(y), z, tx, f.idx, a.h(y, x)))
        .collect();
    a.find_by_col(z, &col)
}

pub fn tensor_cotensor(a: &QCategory, side: TensorSide, f: Arrow, x: usize) -> Option<usize> {
    match side {
        TensorSide::Tensor => tensor(a, f, x),
        TensorSide::Cotensor => cotensor(a, f, x),
    }
}

/// `ub μ = A ↙ μ`, a copresheaf of type `tμ`.
pub fn upper_bounds(a: &QCategory, mu: &Weight) -> Weight {
    isbell_up(&QDistributor::identity(Arc::new(a.clone())), mu)
}

/// `lb λ = λ ↘ A`, a presheaf of type `tλ`.
pub fn lower_bounds(a: &QCategory, lam: &Weight) -> Weight {
    isbell_down(&QDistributor::identity(Arc::new(a.clone())), lam)
}

fn ub_row(a: &QCategory, mu: &Weight) -> Vec<usize> {
    let q = a.quantaloid();
    (0..a.n())
        .map(|y| {
            let ty = a.ty(y);
            q.hom(mu.ty, ty)
                .meet_all((0..a.n()).map(|x| q.lres_idx(a.ty(x), mu.ty, ty, a.h(x, y), mu.w[x])))
        })
        .collect()
}

fn lb_col(a: &QCategory, lam: &Weight) -> Vec<usize> {
    let q = a.quantaloid();
    (0..a.n())
        .map(|x| {
            let tx = a.ty(x);
            q.hom(tx, lam.ty)
                .meet_all((0..a.n()).map(|y| q.rres_idx(tx, lam.ty, a.ty(y), lam.w[y], a.h(x, y))))
        })
        .collect()
}

/// The supremum of a presheaf: the least object `a` with `A(a, -) = A ↙ μ`.
pub fn sup(a: &QCategory, mu: &Weight) -> Option<usize> {
    a.find_by_row(mu.ty, &ub_row(a, mu))
}

/// The infimum of a copresheaf: the least object `b` with `A(-, b) = λ ↘ A`.
pub fn inf(a: &QCategory, lam: &Weight) -> Option<usize> {
    a.find_by_col(lam.ty, &lb_col(a, lam))
}

pub fn sup_inf(a: &QCategory, side: Extremum, w: &Weight) -> Option<usize> {
    match side {
        Extremum::Sup => sup(a, w),
        Extremum::Inf => inf(a, w),
    }
}

/// `colim_μ F`: the least `b` with `B(b, -) = F_♮ ↙ μ`.
pub fn colimit(f: &QFunctor, mu: &Weight) -> Option<usize> {
    let (a, b) = (&f.dom, &f.cod);
    let q = a.quantaloid();
    let row: Vec<usize> = (0..b.n())
        .map(|y| {
            let ty = b.ty(y);
            q.hom(mu.ty, ty).meet_all(
                (0..a.n()).map(|x| q.lres_idx(a.ty(x), mu.ty, ty, b.h(f.apply(x), y), mu.w[x])),
            )
        })
        .collect();
    b.find_by_row(mu.ty, &row)
}

/// `lim_λ F`: the least `b` with `B(-, b) = λ ↘ F^♮`.
pub fn limit(f: &QFunctor, lam: &Weight) -> Option<usize> {
    let (a, b) = (&f.dom, &f.cod);
    let q = a.quantaloid();
    let col: Vec<usize> = (0..b.n())
        .map(|y| {
            let ty = b.ty(y);
            q.hom(ty, lam.ty).meet_all(
                (0..a.n()).map(|x| q.rres_idx(ty, lam.ty, a.ty(x), lam.w[x], b.h(y, f.apply(x)))),
            )
        })
        .collect();
    b.find_by_col(lam.ty, &col)
}

pub fn weighted_colimit_limit(f: &QFunctor, side: Extremum, w: &Weight) -> Option<usize> {
    match side {
        Extremum::Sup => colimit(f, w),
        Extremum::Inf => limit(f, w),
    }
}

/// Outcome of a completeness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessReport {
    /// Every presheaf has a supremum.
    pub complete: bool,
    /// The first presheaf without a supremum.
    pub witness: Option<Weight>,
    /// Every copresheaf has an infimum.
    pub co_complete: bool,
    /// When complete: every supremum equals the underlying join of the tensors
    /// `μ(a) ⊗ a`, and every infimum the underlying meet of the cotensors `λ(a) ⇒ a`.
    pub formulas_agree: bool,
    pub presheaves: usize,
    pub copresheaves: usize,
}

impl CompletenessReport {
    /// The independent characterisations agree.
    pub fn is_consistent(&self) -> bool {
        self.complete == self.co_complete && (!self.complete || self.formulas_agree)
    }
}

/// Whether every presheaf on `a` has a supremum, cross-checked against infima of
/// copresheaves and the closed formulas.
pub fn is_complete(a: &QCategory, cap: u128) -> Result<CompletenessReport> {
    let q = a.quantaloid();
    let mut presheaves = Vec::new();
    let mut copresheaves = Vec::new();
    for ty in 0..q.n() {
        presheaves.extend(enumerate_weights(a, Variance::Contra, ty, cap)?);
        copresheaves.extend(enumerate_weights(a, Variance::Co, ty, cap)?);
    }
    let witness = presheaves.iter().find(|mu| sup(a, mu).is_none()).cloned();
    let complete = witness.is_none();
    let co_complete = copresheaves.iter().all(|lam| inf(a, lam).is_some());
    let mut formulas_agree = true;
    if complete && co_complete {
        for mu in &presheaves {
            let parts: Option<Vec<usize>> = (0..a.n())
                .map(|x| tensor(a, Arrow::new(a.ty(x), mu.ty, mu.w[x]), x))
                .collect();
            let formula = parts.and_then(|p| a.underlying_join(mu.ty, &p));
            match (formula, sup(a, mu)) {
                (Some(s1), Some(s2)) if a.iso(s1, s2) => {}
                _ => formulas_agree = false,
            }
        }
        for lam in &copresheaves {
            let parts: Option<Vec<usize>> = (0..a.n())
                .map(|x| cotensor(a, Arrow::new(lam.ty, a.ty(x), lam.w[x]), x))
                .collect();
            let formula = parts.and_then(|p| a.underlying_meet(lam.ty, &p));
            match (formula, inf(a, lam)) {
                (Some(s1), Some(s2)) if a.iso(s1, s2) => {}
                _ => formulas_agree = false,
            }
        }
    }
    Ok(CompletenessReport {
        complete,
        witness,
        co_complete,
        formulas_agree,
        presheaves: presheaves.len(),
        copresheaves: copresheaves.len(),
    })
}

/// An endo-map on an enumerated presheaf category, checked by [`ClosureOperator::check`].
#[derive(Clone, Debug)]
pub struct ClosureOperator {
    pub base: Arc<PresheafCategory>,
    pub map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureViolation {
    NotTypePreserving { mu: usize },
    NotMonotone { mu: usize, lam: usize },
    NotInflationary { mu: usize },
    NotIdempotent { mu: usize },
}

impl fmt::Display for ClosureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotTypePreserving { mu } => write!(f, "changes the type of #{mu}"),
            Self::NotMonotone { mu, lam } => write!(f, "hom inequality fails at (#{mu}, #{lam})"),
            Self::NotInflationary { mu } => write!(f, "#{mu} is not below its closure"),
            Self::NotIdempotent { mu } => write!(f, "closing #{mu} twice differs from once"),
        }
    }
}

impl ClosureOperator {
    pub fn from_fn(base: Arc<PresheafCategory>, f: impl Fn(&Weight) -> Weight) -> Result<Self> {
        let map = base
            .weights()
            .iter()
            .map(|w| {
                base.get(&f(w))
                    .ok_or_else(|| Error::Type("closure image is not a presheaf".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClosureOperator { base, map })
    }

    /// The discrete closure.
    pub fn identity(base: Arc<PresheafCategory>) -> Self {
        let map = (0..base.len()).collect();
        ClosureOperator { base, map }
    }

    /// The trivial closure: every presheaf goes to the top presheaf of its type.
    pub fn trivial(base: Arc<PresheafCategory>) -> Self {
        let a = Arc::clone(base.base());
        Self::from_fn(base, |w| top_weight(&a, Variance::Contra, w.ty))
            .expect("top presheaves are enumerated")
    }

    /// `φ↓ . φ↑` for a distributor out of the base category.
    pub fn isbell(base: Arc<PresheafCategory>, phi: &QDistributor) -> Result<Self> {
        Self::from_fn(base, |mu| isbell_down(phi, &isbell_up(phi, mu)))
    }

    /// The closure whose fixed points are `system`: each presheaf goes to the least
    /// member of `system` above it in the underlying order.
    pub fn from_closure_system(base: Arc<PresheafCategory>, system: &[usize]) -> Result<Self> {
        let cat = Arc::clone(base.category());
        let map = (0..base.len())
            .map(|mu| {
                let above: Vec<usize> = system.iter().copied().filter(|&l| cat.le(mu, l)).collect();
                above
                    .iter()
                    .copied()
                    .find(|&l| above.iter().all(|&m| cat.le(l, m)))
                    .ok_or_else(|| {
                        Error::Unsupported("the given set is not closed under meets".into())
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClosureOperator { base, map })
    }

    pub fn apply(&self, mu: usize) -> usize {
        self.map[mu]
    }

    pub fn check(&self) -> Vec<ClosureViolation> {
        let cat = self.base.category();
        let q = cat.quantaloid();
        let mut out = Vec::new();
        for mu in 0..cat.n() {
            let c = self.map[mu];
            if cat.ty(c) != cat.ty(mu) {
                out.push(ClosureViolation::NotTypePreserving { mu });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for mu in 0..cat.n() {
            for lam in 0..cat.n() {
                let lat = q.hom(cat.ty(mu), cat.ty(lam));
                if !lat.leq(cat.h(mu, lam), cat.h(self.map[mu], self.map[lam])) {
                    out.push(ClosureViolation::NotMonotone { mu, lam });
                }
            }
            if !cat.le(mu, self.map[mu]) {
                out.push(ClosureViolation::NotInflationary { mu });
            }
            if self.map[self.map[mu]] != self.map[mu] {
                out.push(ClosureViolation::NotIdempotent { mu });
            }
        }
        out
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.map.len()).filter(|&m| self.map[m] == m).collect()
    }

    /// The full subcategory of closed presheaves.
    pub fn fixed_subcategory(&self) -> QCategory {
        self.base.category().full_subcategory(&self.fixed_points())
    }
}

/// Fixed points of `C` as a full subcategory, for callers that want the spec name.
pub fn closure_fixed_points(c: &ClosureOperator) -> QCategory {
    c.fixed_subcategory()
}

/// A category with a closure operator on its presheaf category.
#[derive(Clone, Debug)]
pub struct ClosureSpace {
    pub op: ClosureOperator,
}

impl ClosureSpace {
    pub fn new(op: ClosureOperator) -> Self {
        ClosureSpace { op }
    }

    pub fn base(&self) -> &Arc<QCategory> {
        self.op.base.base()
    }

    /// `ζ_C: A ⇸ C(PA)` with `ζ_C(x, μ) = μ(x)`.
    pub fn context(&self) -> QDistributor {
        let fixed = self.op.fixed_points();
        let target = Arc::new(self.op.fixed_subcategory());
        let weights = self.op.base.weights();
        QDistributor::from_fn(Arc::clone(self.base()), target, |x, j| {
            weights[fixed[j]].w[x]
        })
        .expect("closed presheaves are well typed")
    }

    /// Whether `C = ζ_C↓ . ζ_C↑` on every presheaf.
    pub fn reconstruction_holds(&self) -> bool {
        let zeta = self.context();
        let weights = self.op.base.weights();
        (0..weights.len())
            .all(|m| isbell_down(&zeta, &isbell_up(&zeta, &weights[m])) == weights[self.op.map[m]])
    }
}

pub fn closure_to_context(space: &ClosureSpace) -> QDistributor {
    space.context()
}

/// Both formulations of continuity for `F: (A, C) -> (B, D)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContinuityReport {
    /// `F^→ . C <= D . F^→` pointwise in the underlying order of `PB`.
    pub inequality: bool,
    /// `F^←(λ)` is `C`-closed for every `D`-closed `λ`.
    pub preimages_closed: bool,
}

impl ContinuityReport {
    pub fn holds(&self) -> bool {
        self.inequality
    }

    pub fn is_consistent(&self) -> bool {
        self.inequality == self.preimages_closed
    }
}

pub fn continuity_check(
    f: &QFunctor,
    c: &ClosureOperator,
    d: &ClosureOperator,
) -> Result<ContinuityReport> {
    let (pa, pb) = (&c.base, &d.base);
    if !crate::distributor::same_category(pa.base(), &f.dom)
        || !crate::distributor::same_category(pb.base(), &f.cod)
    {
        return Err(Error::CategoryMismatch(
            "closure operators do not live on the functor's presheaf categories".into(),
        ));
    }
    let pbc = pb.category();
    let find = |w: &Weight| {
        pb.get(w)
            .ok_or_else(|| Error::Type("image presheaf is not enumerated".into()))
    };
    let mut inequality = true;
    for mu in 0..pa.len() {
        let left = find(&direct_image(f, pa.weight(c.apply(mu))))?;
        let right = d.apply(find(&direct_image(f, pa.weight(mu)))?);
        if !pbc.le(left, right) {
            inequality = false;
            break;
        }
    }
    let mut preimages_closed = true;
    for lam in d.fixed_points() {
        let pre = inverse_image(f, pb.weight(lam));
        let idx = pa
            .get(&pre)
            .ok_or_else(|| Error::Type("preimage presheaf is not enumerated".into()))?;
        if c.apply(idx) != idx {
            preimages_closed = false;
            break;
        }
    }
    Ok(ContinuityReport {
        inequality,
        preimages_closed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KanDirection {
    Left,
    Right,
}

/// A pointwise Kan extension, or the first object where the needed (co)limit is missing.
#[derive(Clone, Debug)]
pub enum KanExtension {
    Functor(QFunctor),
    Absent { object: usize },
}

/// `Lan_K F (c) = colim_{K_♮(-, c)} F` or `Ran_K F (c) = lim_{K^♮(c, -)} F`.
pub fn kan_extension_pointwise(
    f: &QFunctor,
    k: &QFunctor,
    dir: KanDirection,
) -> Result<KanExtension> {
    if !crate::distributor::same_category(&f.dom, &k.dom) {
        return Err(Error::CategoryMismatch(
            "F and K must share their domain".into(),
        ));
    }
    let c = &k.cod;
    let (graph, cograph) = graph_cograph(k);
    let mut map = Vec::with_capacity(c.n());
    for obj in 0..c.n() {
        let found = match dir {
            KanDirection::Left => colimit(f, &graph.col(obj)),
            KanDirection::Right => limit(f, &cograph.row(obj)),
        };
        match found {
            Some(b) => map.push(b),
            None => return Ok(KanExtension::Absent { object: obj }),
        }
    }
    Ok(KanExtension::Functor(QFunctor::new(
        Arc::clone(c),
        Arc::clone(&f.cod),
        map,
    )?))
}

/// Checks the universal property against every functor `S: C -> B`:
/// `Lan ≤ S ⟺ F ≤ S . K`, or `S ≤ Ran ⟺ S . K ≤ F`.
pub fn kan_universal_property(
    ext: &QFunctor,
    f: &QFunctor,
    k: &QFunctor,
    dir: KanDirection,
) -> Result<bool> {
    for m in type_preserving_maps(&k.cod, &f.cod) {
        let s = QFunctor::new(Arc::clone(&k.cod), Arc::clone(&f.cod), m)?;
        if !s.validate().is_valid() {
            continue;
        }
        let sk = k.then(&s)?;
        let ok = match dir {
            KanDirection::Left => ext.le(&s) == f.le(&sk),
            KanDirection::Right => s.le(ext) == sk.le(f),
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
