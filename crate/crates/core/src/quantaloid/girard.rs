use std::sync::Arc;

use crate::quantaloid::{Arrow, Quantaloid};
use crate::{Error, Result};

/// One endo-arrow `d_X` per object, given by its index in `hom(X, X)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualizingFamily(pub Vec<usize>);

/// A dualizing family that passed the cyclic and dualizing checks, bundled with its
/// quantaloid so that negation can be evaluated.
#[derive(Clone, Debug)]
pub struct GirardReport {
    q: Arc<Quantaloid>,
    family: DualizingFamily,
}

impl GirardReport {
    pub fn quantaloid(&self) -> &Arc<Quantaloid> {
        &self.q
    }

    pub fn family(&self) -> &DualizingFamily {
        &self.family
    }

    pub fn dual(&self, x: usize) -> Arrow {
        Arrow::new(x, x, self.family.0[x])
    }

    /// `¬f = d_X ↙ f : Y -> X` for `f: X -> Y`.
    pub fn neg(&self, f: Arrow) -> Arrow {
        Arrow::new(f.cod, f.dom, self.neg_idx(f.dom, f.cod, f.idx))
    }

    /// Negation on indices: `f: x -> y` goes to an index in `hom(y, x)`.
    #[inline]
    pub fn neg_idx(&self, x: usize, y: usize, f: usize) -> usize {
        self.q.lres_idx(x, y, x, self.family.0[x], f)
    }

    /// Whether `other` is the same quantaloid this report was validated against.
    pub fn belongs_to(&self, other: &Quantaloid) -> bool {
        std::ptr::eq(Arc::as_ptr(&self.q), other) || *self.q == *other
    }
}

fn pair_failure(q: &Quantaloid, d: &[usize], x: usize, y: usize) -> Option<Error> {
    for f in 0..q.hom(x, y).len() {
        let neg = q.lres_idx(x, y, x, d[x], f);
        if neg != q.rres_idx(y, x, y, f, d[y]) {
            return Some(Error::NotCyclic(describe(q, Arrow::new(x, y, f))));
        }
        let back_right = q.rres_idx(x, y, x, neg, d[x]);
        let back_left = q.lres_idx(y, x, y, d[y], neg);
        if back_right != f || back_left != f {
            return Some(Error::NotDualizing(describe(q, Arrow::new(x, y, f))));
        }
    }
    None
}

fn first_failure(q: &Quantaloid, d: &[usize]) -> Option<Error> {
    let n = q.n();
    (0..n).find_map(|x| (0..n).find_map(|y| pair_failure(q, d, x, y)))
}

fn describe(q: &Quantaloid, a: Arrow) -> String {
    format!(
        "{} : {} -> {}",
        q.arrow_label(a),
        q.objects()[a.dom],
        q.objects()[a.cod]
    )
}

/// Verifies that `d` is a cyclic dualizing family, returning the negation it induces.
pub fn girard_structure(q: &Arc<Quantaloid>, d: &DualizingFamily) -> Result<GirardReport> {
    let n = q.n();
    if d.0.len() != n {
        return Err(Error::Structure {
            table: "dualizing family".into(),
            reason: format!("{} arrows, expected one per object ({n})", d.0.len()),
        });
    }
    for (x, &a) in d.0.iter().enumerate() {
        if a >= q.hom(x, x).len() {
            return Err(Error::Structure {
                table: "dualizing family".into(),
                reason: format!("arrow for {} out of range", q.objects()[x]),
            });
        }
    }
    if let Some(e) = first_failure(q, &d.0) {
        return Err(e);
    }
    if q.units_are_top() {
        assert!(
            (0..n).all(|x| d.0[x] == q.hom(x, x).bottom()),
            "a dualizing family with top units must consist of bottoms"
        );
    }
    Ok(GirardReport {
        q: Arc::clone(q),
        family: d.clone(),
    })
}

/// Every cyclic dualizing family, in lexicographic order of the index vectors.
pub fn find_dualizing_families(q: &Quantaloid) -> Vec<DualizingFamily> {
    fn extend(q: &Quantaloid, cur: &mut Vec<usize>, out: &mut Vec<DualizingFamily>) {
        let x = cur.len();
        if x == q.n() {
            out.push(DualizingFamily(cur.clone()));
            return;
        }
        for d in 0..q.hom(x, x).len() {
            cur.push(d);
            if (0..=x).all(|y| {
                pair_failure(q, cur, x, y).is_none() && pair_failure(q, cur, y, x).is_none()
            }) {
                extend(q, cur, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(q, &mut Vec::new(), &mut out);
    out
}
