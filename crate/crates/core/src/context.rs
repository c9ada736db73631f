//! Fuzzy formal contexts over a divisible quantale and their lift to distributors
//! between discrete categories of the induced quantaloid.

use std::sync::Arc;

use crate::distributor::QDistributor;
use crate::enriched::{QCategory, QTypedSet};
use crate::quantaloid::{
    build_boolean_algebra, quantaloid_from_divisible_quantale, QuantaleSpec, Quantaloid,
};
use crate::{Error, Result};

/// A fuzzy set: labels with membership degrees (quantale element indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzySet {
    pub labels: Vec<String>,
    pub degrees: Vec<usize>,
}

impl FuzzySet {
    pub fn new(labels: Vec<String>, degrees: Vec<usize>) -> Result<Self> {
        if labels.len() != degrees.len() {
            return Err(Error::InvalidSize(format!(
                "{} labels but {} degrees",
                labels.len(),
                degrees.len()
            )));
        }
        Ok(FuzzySet { labels, degrees })
    }

    /// Every element with the same degree.
    pub fn uniform(labels: Vec<String>, degree: usize) -> Self {
        let degrees = vec![degree; labels.len()];
        FuzzySet { labels, degrees }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// `(A, B, φ)` with `φ(x, y) <= A x ∧ B y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzyContext {
    quantale: QuantaleSpec,
    objects: FuzzySet,
    attributes: FuzzySet,
    incidence: Vec<usize>,
}

/// A context lifted to a distributor between discrete categories.
#[derive(Clone, Debug)]
pub struct LiftedContext {
    pub quantaloid: Arc<Quantaloid>,
    pub objects: Arc<QCategory>,
    pub attributes: Arc<QCategory>,
    pub phi: QDistributor,
}

impl FuzzyContext {
    /// `incidence[x * |B| + y]` is the degree `φ(x, y)`.
    pub fn new(
        quantale: QuantaleSpec,
        objects: FuzzySet,
        attributes: FuzzySet,
        incidence: Vec<usize>,
    ) -> Result<Self> {
        let (na, nb) = (objects.len(), attributes.len());
        if incidence.len() != na * nb {
            return Err(Error::InvalidSize(format!(
                "incidence has {} entries, expected {na} x {nb}",
                incidence.len()
            )));
        }
        let n = quantale.len();
        let bad = objects
            .degrees
            .iter()
            .chain(&attributes.degrees)
            .chain(&incidence)
            .any(|&d| d >= n);
        if bad {
            return Err(Error::InvalidSize(
                "degree is not an element of the quantale".into(),
            ));
        }
        for x in 0..na {
            for y in 0..nb {
                let d = incidence[x * nb + y];
                let bound = quantale.meet(objects.degrees[x], attributes.degrees[y]);
                if !quantale.leq(d, bound) {
                    return Err(Error::DegreeOutOfHom {
                        object: objects.labels[x].clone(),
                        attribute: attributes.labels[y].clone(),
                        degree: quantale.label(d).into(),
                    });
                }
            }
        }
        Ok(FuzzyContext {
            quantale,
            objects,
            attributes,
            incidence,
        })
    }

    /// A crisp context over the two-element Boolean algebra with full memberships.
    pub fn crisp(objects: Vec<String>, attributes: Vec<String>, pairs: &[(usize, usize)]) -> Self {
        let q = build_boolean_algebra(1).expect("2 is a quantale");
        let top = q.lattice().top();
        let (na, nb) = (objects.len(), attributes.len());
        let mut incidence = vec![q.lattice().bottom(); na * nb];
        for &(x, y) in pairs {
            incidence[x * nb + y] = top;
        }
        FuzzyContext::new(
            q,
            FuzzySet::uniform(objects, top),
            FuzzySet::uniform(attributes, top),
            incidence,
        )
        .expect("crisp data respects the membership bound")
    }

    pub fn quantale(&self) -> &QuantaleSpec {
        &self.quantale
    }

    pub fn objects(&self) -> &FuzzySet {
        &self.objects
    }

    pub fn attributes(&self) -> &FuzzySet {
        &self.attributes
    }

    pub fn incidence(&self) -> &[usize] {
        &self.incidence
    }

    pub fn degree(&self, x: usize, y: usize) -> usize {
        self.incidence[x * self.attributes.len() + y]
    }

    /// Whether every degree is the bottom or top of a Boolean two-element quantale.
    pub fn is_crisp(&self) -> bool {
        self.quantale.len() == 2
    }

    /// Build the quantaloid of the quantale and lift both fuzzy sets to discrete categories.
    pub fn lift(&self) -> Result<LiftedContext> {
        let q = Arc::new(quantaloid_from_divisible_quantale(&self.quantale)?);
        self.lift_into(q)
    }

    /// Lift over an already built quantaloid of this context's quantale.
    pub fn lift_into(&self, q: Arc<Quantaloid>) -> Result<LiftedContext> {
        let objects = Arc::new(QCategory::discrete(
            Arc::clone(&q),
            &QTypedSet::new(
                &q,
                self.objects.labels.clone(),
                self.objects.degrees.clone(),
            )?,
        ));
        let attributes = Arc::new(QCategory::discrete(
            Arc::clone(&q),
            &QTypedSet::new(
                &q,
                self.attributes.labels.clone(),
                self.attributes.degrees.clone(),
            )?,
        ));
        let nb = self.attributes.len();
        let phi = QDistributor::from_fn(Arc::clone(&objects), Arc::clone(&attributes), |x, y| {
            let (tx, ty) = (self.objects.degrees[x], self.attributes.degrees[y]);
            q.hom(tx, ty)
                .index_of(self.quantale.label(self.incidence[x * nb + y]))
                .expect("degree lies below the meet of the memberships")
        })?;
        Ok(LiftedContext {
            quantaloid: q,
            objects,
            attributes,
            phi,
        })
    }
}
