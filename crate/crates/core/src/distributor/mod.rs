//! Distributors between enriched categories, presheaf categories, image functors and
//! infomorphisms.

mod infomorphism;
mod presheaf;

use std::fmt;
use std::sync::Arc;

pub use infomorphism::{compose_infomorphisms, yoneda_infomorphism, Infomorphism};
pub use presheaf::{
    bottom_weight, co_direct_image, co_inverse_image, copresheaf_hom, cotensor_presheaf,
    direct_image, enumerate_weights, image_functor, inverse_image, is_weight, join_weights,
    meet_weights, presheaf_hom, space_bound, tensor_presheaf, top_weight, weight_hom,
    yoneda_weight, Copresheaf, ImageKind, Presheaf, PresheafCategory, Variance, Weight,
};

use crate::enriched::{QCategory, QFunctor};
use crate::quantaloid::{Arrow, Side};
use crate::{Error, Result};

/// A distributor `dom ⇸ cod`: `m[x * |cod| + y]` indexes an arrow `tx -> ty`.
#[derive(Clone, Debug, PartialEq)]
pub struct QDistributor {
    pub dom: Arc<QCategory>,
    pub cod: Arc<QCategory>,
    m: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistributorViolation {
    /// `B(y', y) . φ(x, y') <= φ(x, y)` fails.
    LeftAction { x: usize, y1: usize, y: usize },
    /// `φ(x', y) . A(x, x') <= φ(x, y)` fails.
    RightAction { x: usize, x1: usize, y: usize },
}

impl fmt::Display for DistributorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LeftAction { x, y1, y } => write!(
                f,
                "codomain action fails: B(#{y1}, #{y}) . phi(#{x}, #{y1}) is not below phi(#{x}, #{y})"
            ),
            Self::RightAction { x, x1, y } => write!(
                f,
                "domain action fails: phi(#{x1}, #{y}) . A(#{x}, #{x1}) is not below phi(#{x}, #{y})"
            ),
        }
    }
}

pub(crate) fn same_category(a: &Arc<QCategory>, b: &Arc<QCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn check_same(a: &Arc<QCategory>, b: &Arc<QCategory>, what: &str) -> Result<()> {
    if same_category(a, b) {
        Ok(())
    } else {
        Err(Error::CategoryMismatch(what.to_string()))
    }
}

impl QDistributor {
    pub fn new(dom: Arc<QCategory>, cod: Arc<QCategory>, m: Vec<usize>) -> Result<Self> {
        if !(Arc::ptr_eq(dom.quantaloid(), cod.quantaloid())
            || dom.quantaloid() == cod.quantaloid())
        {
            return Err(Error::CategoryMismatch(
                "distributor between categories over different quantaloids".into(),
            ));
        }
        let (n, k) = (dom.n(), cod.n());
        if m.len() != n * k {
            return Err(Error::Structure {
                table: "distributor".into(),
                reason: format!("{} entries, expected {}", m.len(), n * k),
            });
        }
        let q = dom.quantaloid();
        for x in 0..n {
            for y in 0..k {
                if m[x * k + y] >= q.hom(dom.ty(x), cod.ty(y)).len() {
                    return Err(Error::Type(format!(
                        "entry ({}, {}) is not an arrow {} -> {}",
                        dom.label(x),
                        cod.label(y),
                        q.objects()[dom.ty(x)],
                        q.objects()[cod.ty(y)]
                    )));
                }
            }
        }
        Ok(QDistributor { dom, cod, m })
    }

    /// Build from arrow labels, one row per object of `dom`.
    pub fn from_labels(
        dom: Arc<QCategory>,
        cod: Arc<QCategory>,
        rows: &[Vec<String>],
    ) -> Result<Self> {
        if rows.len() != dom.n() || rows.iter().any(|r| r.len() != cod.n()) {
            return Err(Error::Structure {
                table: "distributor".into(),
                reason: "matrix shape does not match the categories".into(),
            });
        }
        let q = Arc::clone(dom.quantaloid());
        let mut m = Vec::with_capacity(dom.n() * cod.n());
        for (x, row) in rows.iter().enumerate() {
            for (y, entry) in row.iter().enumerate() {
                let h = q.hom(dom.ty(x), cod.ty(y));
                m.push(h.index_of(entry).ok_or_else(|| {
                    Error::Type(format!(
                        "entry ({}, {}) = {} is not an arrow {} -> {}",
                        dom.label(x),
                        cod.label(y),
                        entry,
                        q.objects()[dom.ty(x)],
                        q.objects()[cod.ty(y)]
                    ))
                })?);
            }
        }
        Self::new(dom, cod, m)
    }

    pub fn from_fn(
        dom: Arc<QCategory>,
        cod: Arc<QCategory>,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let k = cod.n();
        let m = (0..dom.n() * k).map(|c| f(c / k, c % k)).collect();
        Self::new(dom, cod, m)
    }

    /// The hom of `a`, as a distributor `a ⇸ a`.
    pub fn identity(a: Arc<QCategory>) -> Self {
        let m = a.hom_matrix().to_vec();
        QDistributor {
            dom: Arc::clone(&a),
            cod: a,
            m,
        }
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.m[x * self.cod.n() + y]
    }

    pub fn arrow(&self, x: usize, y: usize) -> Arrow {
        Arrow::new(self.dom.ty(x), self.cod.ty(y), self.get(x, y))
    }

    pub fn matrix(&self) -> &[usize] {
        &self.m
    }

    /// `φ(x, -)` as a copresheaf on the codomain, of type `tx`.
    pub fn row(&self, x: usize) -> Weight {
        Weight {
            ty: self.dom.ty(x),
            w: (0..self.cod.n()).map(|y| self.get(x, y)).collect(),
        }
    }

    /// `φ(-, y)` as a presheaf on the domain, of type `ty`.
    pub fn col(&self, y: usize) -> Weight {
        Weight {
            ty: self.cod.ty(y),
            w: (0..self.dom.n()).map(|x| self.get(x, y)).collect(),
        }
    }

    pub fn validate(&self) -> Vec<DistributorViolation> {
        let (a, b) = (&self.dom, &self.cod);
        let q = a.quantaloid();
        let mut out = Vec::new();
        for x in 0..a.n() {
            for y in 0..b.n() {
                let (tx, ty) = (a.ty(x), b.ty(y));
                let lat = q.hom(tx, ty);
                for y1 in 0..b.n() {
                    let c = q.comp_idx(tx, b.ty(y1), ty, b.h(y1, y), self.get(x, y1));
                    if !lat.leq(c, self.get(x, y)) {
                        out.push(DistributorViolation::LeftAction { x, y1, y });
                    }
                }
                for x1 in 0..a.n() {
                    let c = q.comp_idx(tx, a.ty(x1), ty, self.get(x1, y), a.h(x, x1));
                    if !lat.leq(c, self.get(x, y)) {
                        out.push(DistributorViolation::RightAction { x, x1, y });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Pointwise order.
    pub fn le(&self, other: &QDistributor) -> bool {
        let q = self.dom.quantaloid();
        (0..self.dom.n()).all(|x| {
            (0..self.cod.n()).all(|y| {
                q.hom(self.dom.ty(x), self.cod.ty(y))
                    .leq(self.get(x, y), other.get(x, y))
            })
        })
    }

    fn pointwise(&self, other: &QDistributor, meet: bool) -> Result<QDistributor> {
        check_same(
            &self.dom,
            &other.dom,
            "pointwise operation on different domains",
        )?;
        check_same(
            &self.cod,
            &other.cod,
            "pointwise operation on different codomains",
        )?;
        let q = Arc::clone(self.dom.quantaloid());
        QDistributor::from_fn(Arc::clone(&self.dom), Arc::clone(&self.cod), |x, y| {
            let lat = q.hom(self.dom.ty(x), self.cod.ty(y));
            if meet {
                lat.meet(self.get(x, y), other.get(x, y))
            } else {
                lat.join(self.get(x, y), other.get(x, y))
            }
        })
    }

    pub fn join(&self, other: &QDistributor) -> Result<QDistributor> {
        self.pointwise(other, false)
    }

    pub fn meet(&self, other: &QDistributor) -> Result<QDistributor> {
        self.pointwise(other, true)
    }
}

/// `ψ . φ` for `φ: A ⇸ B` and `ψ: B ⇸ C`.
pub fn compose_distributors(psi: &QDistributor, phi: &QDistributor) -> Result<QDistributor> {
    check_same(&phi.cod, &psi.dom, "composite needs cod(phi) = dom(psi)")?;
    let (a, b, c) = (&phi.dom, &phi.cod, &psi.cod);
    let q = Arc::clone(a.quantaloid());
    QDistributor::from_fn(Arc::clone(a), Arc::clone(c), |x, z| {
        let (tx, tz) = (a.ty(x), c.ty(z));
        q.hom(tx, tz)
            .join_all((0..b.n()).map(|y| q.comp_idx(tx, b.ty(y), tz, psi.get(y, z), phi.get(x, y))))
    })
}

/// Left: `η ↙ φ : B ⇸ C` for `η: A ⇸ C`, `φ: A ⇸ B`.
/// Right: `ψ ↘ η : A ⇸ B` for `ψ: B ⇸ C`, `η: A ⇸ C`.
pub fn dist_residual(
    side: Side,
    first: &QDistributor,
    second: &QDistributor,
) -> Result<QDistributor> {
    match side {
        Side::Left => {
            let (eta, phi) = (first, second);
            check_same(&eta.dom, &phi.dom, "left implication needs a common domain")?;
            let (a, b, c) = (&phi.dom, &phi.cod, &eta.cod);
            let q = Arc::clone(a.quantaloid());
            QDistributor::from_fn(Arc::clone(b), Arc::clone(c), |y, z| {
                let (ty, tz) = (b.ty(y), c.ty(z));
                q.hom(ty, tz).meet_all(
                    (0..a.n()).map(|x| q.lres_idx(a.ty(x), ty, tz, eta.get(x, z), phi.get(x, y))),
                )
            })
        }
        Side::Right => {
            let (psi, eta) = (first, second);
            check_same(
                &psi.cod,
                &eta.cod,
                "right implication needs a common codomain",
            )?;
            let (a, b, c) = (&eta.dom, &psi.dom, &psi.cod);
            let q = Arc::clone(a.quantaloid());
            QDistributor::from_fn(Arc::clone(a), Arc::clone(b), |x, y| {
                let (tx, ty) = (a.ty(x), b.ty(y));
                q.hom(tx, ty).meet_all(
                    (0..c.n()).map(|z| q.rres_idx(tx, ty, c.ty(z), psi.get(y, z), eta.get(x, z))),
                )
            })
        }
    }
}

/// The graph `F_♮(x, y) = B(Fx, y)` and cograph `F^♮(y, x) = B(y, Fx)`.
pub fn graph_cograph(f: &QFunctor) -> (QDistributor, QDistributor) {
    let (a, b) = (&f.dom, &f.cod);
    let graph = QDistributor::from_fn(Arc::clone(a), Arc::clone(b), |x, y| b.h(f.apply(x), y))
        .expect("graph is well typed");
    let cograph = QDistributor::from_fn(Arc::clone(b), Arc::clone(a), |y, x| b.h(y, f.apply(x)))
        .expect("cograph is well typed");
    (graph, cograph)
}

/// Whether `A <= ψ . φ` and `φ . ψ <= B` for `φ: A ⇸ B`, `ψ: B ⇸ A`.
pub fn dist_adjoint_check(phi: &QDistributor, psi: &QDistributor) -> Result<bool> {
    check_same(
        &phi.dom,
        &psi.cod,
        "adjoint pair needs phi: A -> B and psi: B -> A",
    )?;
    check_same(
        &phi.cod,
        &psi.dom,
        "adjoint pair needs phi: A -> B and psi: B -> A",
    )?;
    let unit = compose_distributors(psi, phi)?;
    let counit = compose_distributors(phi, psi)?;
    Ok(QDistributor::identity(Arc::clone(&phi.dom)).le(&unit)
        && counit.le(&QDistributor::identity(Arc::clone(&phi.cod))))
}
