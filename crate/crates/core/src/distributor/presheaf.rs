use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::enriched::{QCategory, QFunctor};
use crate::{Error, Result};

/// A weight vector on a category: a presheaf (`w[a]: ta -> ty`) or a copresheaf
/// (`w[a]: ty -> ta`), depending on the [`Variance`] it is used with.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub ty: usize,
    pub w: Vec<usize>,
}

pub type Presheaf = Weight;
pub type Copresheaf = Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    /// Presheaves `A ⇸ *_X`.
    Contra,
    /// Copresheaves `*_X ⇸ A`.
    Co,
}

#[inline]
fn slot(a: &QCategory, v: Variance, ty: usize, x: usize) -> (usize, usize) {
    match v {
        Variance::Contra => (a.ty(x), ty),
        Variance::Co => (ty, a.ty(x)),
    }
}

/// Whether the pair `(x, x1)` satisfies the action constraint for entries `wx`, `wx1`.
#[inline]
fn compatible(
    a: &QCategory,
    v: Variance,
    ty: usize,
    x: usize,
    x1: usize,
    wx: usize,
    wx1: usize,
) -> bool {
    let q = a.quantaloid();
    let (tx, tx1) = (a.ty(x), a.ty(x1));
    match v {
        Variance::Contra => q
            .hom(tx, ty)
            .leq(q.comp_idx(tx, tx1, ty, wx1, a.h(x, x1)), wx),
        Variance::Co => q
            .hom(ty, tx1)
            .leq(q.comp_idx(ty, tx, tx1, a.h(x, x1), wx), wx1),
    }
}

pub fn is_weight(a: &QCategory, v: Variance, w: &Weight) -> bool {
    let q = a.quantaloid();
    if w.ty >= q.n() || w.w.len() != a.n() {
        return false;
    }
    for x in 0..a.n() {
        let (s, t) = slot(a, v, w.ty, x);
        if w.w[x] >= q.hom(s, t).len() {
            return false;
        }
    }
    (0..a.n()).all(|x| (0..a.n()).all(|x1| compatible(a, v, w.ty, x, x1, w.w[x], w.w[x1])))
}

/// The number of candidate vectors of type `ty`: the product of slot sizes.
pub fn space_bound(a: &QCategory, v: Variance, ty: usize) -> u128 {
    let q = a.quantaloid();
    (0..a.n()).fold(1u128, |acc, x| {
        let (s, t) = slot(a, v, ty, x);
        acc.saturating_mul(q.hom(s, t).len() as u128)
    })
}

/// Every weight of type `ty`, in lexicographic order of the index vectors.
pub fn enumerate_weights(a: &QCategory, v: Variance, ty: usize, cap: u128) -> Result<Vec<Weight>> {
    let bound = space_bound(a, v, ty);
    if bound > cap {
        return Err(Error::PresheafSpaceTooLarge { bound, cap });
    }
    let q = a.quantaloid();
    let n = a.n();
    let sizes: Vec<usize> = (0..n)
        .map(|x| {
            let (s, t) = slot(a, v, ty, x);
            q.hom(s, t).len()
        })
        .collect();
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(n);
    fn go(
        a: &QCategory,
        v: Variance,
        ty: usize,
        sizes: &[usize],
        cur: &mut Vec<usize>,
        out: &mut Vec<Weight>,
    ) {
        let k = cur.len();
        if k == sizes.len() {
            out.push(Weight { ty, w: cur.clone() });
            return;
        }
        for c in 0..sizes[k] {
            let ok = compatible(a, v, ty, k, k, c, c)
                && (0..k).all(|j| {
                    compatible(a, v, ty, j, k, cur[j], c) && compatible(a, v, ty, k, j, c, cur[j])
                });
            if ok {
                cur.push(c);
                go(a, v, ty, sizes, cur, out);
                cur.pop();
            }
        }
    }
    go(a, v, ty, &sizes, &mut cur, &mut out);
    Ok(out)
}

/// `PA(μ, λ) = λ ↙ μ`, an arrow `tμ -> tλ`.
pub fn presheaf_hom(a: &QCategory, mu: &Weight, lam: &Weight) -> usize {
    let q = a.quantaloid();
    q.hom(mu.ty, lam.ty)
        .meet_all((0..a.n()).map(|x| q.lres_idx(a.ty(x), mu.ty, lam.ty, lam.w[x], mu.w[x])))
}

/// `P†A(μ, λ) = λ ↘ μ`, an arrow `tμ -> tλ`.
pub fn copresheaf_hom(a: &QCategory, mu: &Weight, lam: &Weight) -> usize {
    let q = a.quantaloid();
    q.hom(mu.ty, lam.ty)
        .meet_all((0..a.n()).map(|x| q.rres_idx(mu.ty, lam.ty, a.ty(x), lam.w[x], mu.w[x])))
}

pub fn weight_hom(a: &QCategory, v: Variance, mu: &Weight, lam: &Weight) -> usize {
    match v {
        Variance::Contra => presheaf_hom(a, mu, lam),
        Variance::Co => copresheaf_hom(a, mu, lam),
    }
}

/// `A(-, x)` (contravariant) or `A(x, -)` (covariant).
pub fn yoneda_weight(a: &QCategory, v: Variance, x: usize) -> Weight {
    Weight {
        ty: a.ty(x),
        w: match v {
            Variance::Contra => a.col(x),
            Variance::Co => a.row(x),
        },
    }
}

pub fn top_weight(a: &QCategory, v: Variance, ty: usize) -> Weight {
    let q = a.quantaloid();
    Weight {
        ty,
        w: (0..a.n())
            .map(|x| {
                let (s, t) = slot(a, v, ty, x);
                q.hom(s, t).top()
            })
            .collect(),
    }
}

pub fn bottom_weight(a: &QCategory, v: Variance, ty: usize) -> Weight {
    let q = a.quantaloid();
    Weight {
        ty,
        w: (0..a.n())
            .map(|x| {
                let (s, t) = slot(a, v, ty, x);
                q.hom(s, t).bottom()
            })
            .collect(),
    }
}

pub fn meet_weights(a: &QCategory, v: Variance, x: &Weight, y: &Weight) -> Weight {
    debug_assert_eq!(x.ty, y.ty);
    let q = a.quantaloid();
    Weight {
        ty: x.ty,
        w: (0..a.n())
            .map(|i| {
                let (s, t) = slot(a, v, x.ty, i);
                q.hom(s, t).meet(x.w[i], y.w[i])
            })
            .collect(),
    }
}

pub fn join_weights(a: &QCategory, v: Variance, x: &Weight, y: &Weight) -> Weight {
    debug_assert_eq!(x.ty, y.ty);
    let q = a.quantaloid();
    Weight {
        ty: x.ty,
        w: (0..a.n())
            .map(|i| {
                let (s, t) = slot(a, v, x.ty, i);
                q.hom(s, t).join(x.w[i], y.w[i])
            })
            .collect(),
    }
}

/// `f . μ` for a presheaf `μ` and `f: tμ -> z`: the tensor in `PA`.
pub fn tensor_presheaf(a: &QCategory, f: usize, z: usize, mu: &Weight) -> Weight {
    let q = a.quantaloid();
    Weight {
        ty: z,
        w: (0..a.n())
            .map(|x| q.comp_idx(a.ty(x), mu.ty, z, f, mu.w[x]))
            .collect(),
    }
}

/// `f ↘ μ` for a presheaf `μ` and `f: z -> tμ`: the cotensor in `PA`.
pub fn cotensor_presheaf(a: &QCategory, f: usize, z: usize, mu: &Weight) -> Weight {
    let q = a.quantaloid();
    Weight {
        ty: z,
        w: (0..a.n())
            .map(|x| q.rres_idx(a.ty(x), z, mu.ty, f, mu.w[x]))
            .collect(),
    }
}

/// `F^→(μ) = μ . F^♮`, a presheaf on the codomain.
pub fn direct_image(f: &QFunctor, mu: &Weight) -> Weight {
    let (a, b) = (&f.dom, &f.cod);
    let q = a.quantaloid();
    Weight {
        ty: mu.ty,
        w: (0..b.n())
            .map(|y| {
                let ty = b.ty(y);
                q.hom(ty, mu.ty).join_all(
                    (0..a.n()).map(|x| q.comp_idx(ty, a.ty(x), mu.ty, mu.w[x], b.h(y, f.apply(x)))),
                )
            })
            .collect(),
    }
}

/// `F^←(λ) = λ . F_♮`, pointwise `λ(Fx)`.
pub fn inverse_image(f: &QFunctor, lam: &Weight) -> Weight {
    Weight {
        ty: lam.ty,
        w: (0..f.dom.n()).map(|x| lam.w[f.apply(x)]).collect(),
    }
}

/// `F^⇒(μ) = F_♮ . μ` for a copresheaf `μ` on the domain.
pub fn co_direct_image(f: &QFunctor, mu: &Weight) -> Weight {
    let (a, b) = (&f.dom, &f.cod);
    let q = a.quantaloid();
    Weight {
        ty: mu.ty,
        w: (0..b.n())
            .map(|y| {
                let ty = b.ty(y);
                q.hom(mu.ty, ty).join_all(
                    (0..a.n()).map(|x| q.comp_idx(mu.ty, a.ty(x), ty, b.h(f.apply(x), y), mu.w[x])),
                )
            })
            .collect(),
    }
}

/// `F^⇐(λ) = F^♮ . λ`, pointwise `λ(Fx)`.
pub fn co_inverse_image(f: &QFunctor, lam: &Weight) -> Weight {
    inverse_image(f, lam)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImageKind {
    /// `F^→ : PA -> PB`.
    Direct,
    /// `F^← : PB -> PA`.
    Inverse,
    /// `F^⇒ : P†A -> P†B`.
    CoDirect,
    /// `F^⇐ : P†B -> P†A`.
    CoInverse,
}

/// The enumerated presheaf (or copresheaf) category of a base category.
#[derive(Clone, Debug)]
pub struct PresheafCategory {
    base: Arc<QCategory>,
    variance: Variance,
    weights: Vec<Weight>,
    index: HashMap<Weight, usize>,
    cat: Arc<QCategory>,
}

pub(crate) fn render_weight(a: &QCategory, v: Variance, w: &Weight) -> String {
    let q = a.quantaloid();
    let parts: Vec<&str> = (0..a.n())
        .map(|x| {
            let (s, t) = slot(a, v, w.ty, x);
            q.hom(s, t).label(w.w[x])
        })
        .collect();
    format!("[{}]:{}", parts.join(","), q.objects()[w.ty])
}

impl PresheafCategory {
    /// Enumerate every weight of every type, bounded by `cap` per type.
    pub fn build(base: Arc<QCategory>, variance: Variance, cap: u128) -> Result<Self> {
        let mut weights = Vec::new();
        for ty in 0..base.quantaloid().n() {
            weights.extend(enumerate_weights(&base, variance, ty, cap)?);
        }
        Ok(Self::from_weights(base, variance, weights))
    }

    /// The full subcategory of the presheaf category on the given weights.
    pub fn from_weights(base: Arc<QCategory>, variance: Variance, weights: Vec<Weight>) -> Self {
        let n = weights.len();
        let mut hom = Vec::with_capacity(n * n);
        for mu in &weights {
            for lam in &weights {
                hom.push(weight_hom(&base, variance, mu, lam));
            }
        }
        let labels = weights
            .iter()
            .map(|w| render_weight(&base, variance, w))
            .collect();
        let types = weights.iter().map(|w| w.ty).collect();
        let cat = QCategory::new(Arc::clone(base.quantaloid()), labels, types, hom)
            .expect("presheaf homs are well typed");
        let index = weights
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        PresheafCategory {
            base,
            variance,
            weights,
            index,
            cat: Arc::new(cat),
        }
    }

    pub fn base(&self) -> &Arc<QCategory> {
        &self.base
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn category(&self) -> &Arc<QCategory> {
        &self.cat
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &Weight {
        &self.weights[i]
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn get(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// The Yoneda embedding `x ↦ A(-, x)` (or `x ↦ A(x, -)` for copresheaves).
    pub fn yoneda(&self) -> QFunctor {
        let map = (0..self.base.n())
            .map(|x| {
                self.get(&yoneda_weight(&self.base, self.variance, x))
                    .expect("representables are enumerated")
            })
            .collect();
        QFunctor {
            dom: Arc::clone(&self.base),
            cod: Arc::clone(&self.cat),
            map,
        }
    }

    /// A functor between weight categories induced by a map on weights.
    pub fn functor_to(
        &self,
        target: &PresheafCategory,
        f: impl Fn(&Weight) -> Weight,
    ) -> Result<QFunctor> {
        let map = self
            .weights
            .iter()
            .map(|w| {
                let image = f(w);
                target.get(&image).ok_or_else(|| {
                    Error::Type(format!(
                        "image {} is not an object of the target",
                        render_weight(&target.base, target.variance, &image)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        QFunctor::new(Arc::clone(&self.cat), Arc::clone(&target.cat), map)
    }
}

/// One of the four image functors of `f`, between enumerated weight categories.
/// `source` and `target` must be the weight categories the chosen kind maps between.
pub fn image_functor(
    f: &QFunctor,
    kind: ImageKind,
    source: &PresheafCategory,
    target: &PresheafCategory,
) -> Result<QFunctor> {
    let (from, to, var) = match kind {
        ImageKind::Direct => (&f.dom, &f.cod, Variance::Contra),
        ImageKind::Inverse => (&f.cod, &f.dom, Variance::Contra),
        ImageKind::CoDirect => (&f.dom, &f.cod, Variance::Co),
        ImageKind::CoInverse => (&f.cod, &f.dom, Variance::Co),
    };
    if !super::same_category(source.base(), from)
        || !super::same_category(target.base(), to)
        || source.variance() != var
        || target.variance() != var
    {
        return Err(Error::CategoryMismatch(
            "weight categories do not match the requested image functor".into(),
        ));
    }
    match kind {
        ImageKind::Direct => source.functor_to(target, |w| direct_image(f, w)),
        ImageKind::Inverse => source.functor_to(target, |w| inverse_image(f, w)),
        ImageKind::CoDirect => source.functor_to(target, |w| co_direct_image(f, w)),
        ImageKind::CoInverse => source.functor_to(target, |w| co_inverse_image(f, w)),
    }
}
