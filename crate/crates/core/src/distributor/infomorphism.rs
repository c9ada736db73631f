use std::sync::Arc;

use super::{same_category, PresheafCategory, QDistributor, Variance};
use crate::enriched::QFunctor;
use crate::{Error, Result};

/// A pair `F: A -> A'`, `G: B' -> B` from `φ: A ⇸ B` to `ψ: A' ⇸ B'` with
/// `φ(x, G y') = ψ(F x, y')`.
#[derive(Clone, Debug)]
pub struct Infomorphism {
    pub source: QDistributor,
    pub target: QDistributor,
    pub f: QFunctor,
    pub g: QFunctor,
}

impl Infomorphism {
    pub fn new(
        source: QDistributor,
        target: QDistributor,
        f: QFunctor,
        g: QFunctor,
    ) -> Result<Self> {
        let fits = same_category(&f.dom, &source.dom)
            && same_category(&f.cod, &target.dom)
            && same_category(&g.dom, &target.cod)
            && same_category(&g.cod, &source.cod);
        if !fits {
            return Err(Error::CategoryMismatch(
                "functors do not connect the feet of the two distributors".into(),
            ));
        }
        Ok(Infomorphism {
            source,
            target,
            f,
            g,
        })
    }

    pub fn identity(phi: &QDistributor) -> Self {
        Infomorphism {
            source: phi.clone(),
            target: phi.clone(),
            f: QFunctor::identity(Arc::clone(&phi.dom)),
            g: QFunctor::identity(Arc::clone(&phi.cod)),
        }
    }

    /// Every pair `(x, y')` where `φ(x, G y') != ψ(F x, y')`.
    pub fn validate(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.source.dom.n() {
            for y1 in 0..self.target.cod.n() {
                if self.source.get(x, self.g.apply(y1)) != self.target.get(self.f.apply(x), y1) {
                    out.push((x, y1));
                }
            }
        }
        out
    }

    /// Functor validity of both components together with the defining equation.
    pub fn is_valid(&self) -> bool {
        self.f.validate().is_valid() && self.g.validate().is_valid() && self.validate().is_empty()
    }
}

/// `j . i = (F' . F, G . G')` for `i: φ -> ψ` and `j: ψ -> χ`.
pub fn compose_infomorphisms(j: &Infomorphism, i: &Infomorphism) -> Result<Infomorphism> {
    if i.target != j.source {
        return Err(Error::CategoryMismatch(
            "infomorphisms are not composable".into(),
        ));
    }
    Ok(Infomorphism {
        source: i.source.clone(),
        target: j.target.clone(),
        f: i.f.then(&j.f)?,
        g: j.g.then(&i.g)?,
    })
}

/// `(F, F^←)` from `(Y_A)_♮: A ⇸ PA` to `(Y_B)_♮: B ⇸ PB`.
pub fn yoneda_infomorphism(
    f: &QFunctor,
    pa: &PresheafCategory,
    pb: &PresheafCategory,
) -> Result<Infomorphism> {
    if pa.variance() != Variance::Contra || pb.variance() != Variance::Contra {
        return Err(Error::CategoryMismatch(
            "Yoneda infomorphisms use presheaf categories".into(),
        ));
    }
    let ya = pa.yoneda();
    let yb = pb.yoneda();
    let (source, _) = super::graph_cograph(&ya);
    let (target, _) = super::graph_cograph(&yb);
    let g = super::image_functor(f, super::ImageKind::Inverse, pb, pa)?;
    Infomorphism::new(source, target, f.clone(), g)
}
