//! Typed sets, enriched categories and functors, underlying preorders and adjoint functors.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::quantaloid::{Arrow, Quantaloid};
use crate::{Error, Result};

/// A finite set whose elements carry a type: an object of the ambient quantaloid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QTypedSet {
    pub labels: Vec<String>,
    pub types: Vec<usize>,
}

impl QTypedSet {
    pub fn new(q: &Quantaloid, labels: Vec<String>, types: Vec<usize>) -> Result<Self> {
        if labels.len() != types.len() {
            return Err(Error::Structure {
                table: "typed set".into(),
                reason: "labels and types differ in length".into(),
            });
        }
        if let Some(&t) = types.iter().find(|&&t| t >= q.n()) {
            return Err(Error::Type(format!(
                "type {t} is not an object of the quantaloid"
            )));
        }
        Ok(QTypedSet { labels, types })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

type RowKey = (usize, Vec<usize>);

/// A category enriched in a finite quantaloid, stored as a dense hom matrix of arrow indices.
pub struct QCategory {
    q: Arc<Quantaloid>,
    labels: Vec<String>,
    types: Vec<usize>,
    hom: Vec<usize>,
    rows: OnceLock<HashMap<RowKey, usize>>,
    cols: OnceLock<HashMap<RowKey, usize>>,
}

impl Clone for QCategory {
    fn clone(&self) -> Self {
        QCategory {
            q: Arc::clone(&self.q),
            labels: self.labels.clone(),
            types: self.types.clone(),
            hom: self.hom.clone(),
            rows: OnceLock::new(),
            cols: OnceLock::new(),
        }
    }
}

impl PartialEq for QCategory {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.q, &other.q) || self.q == other.q)
            && self.labels == other.labels
            && self.types == other.types
            && self.hom == other.hom
    }
}

impl fmt::Debug for QCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QCategory")
            .field("labels", &self.labels)
            .field("types", &self.types)
            .field("hom", &self.hom)
            .finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CategoryViolation {
    /// `1_{tx} <= A(x, x)` fails.
    Unit { x: usize },
    /// `A(y, z) . A(x, y) <= A(x, z)` fails.
    Transitivity { x: usize, y: usize, z: usize },
}

impl fmt::Display for CategoryViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Unit { x } => write!(f, "unit law fails at object #{x}"),
            Self::Transitivity { x, y, z } => {
                write!(f, "transitivity fails at objects (#{x}, #{y}, #{z})")
            }
        }
    }
}

impl QCategory {
    /// `hom[x * n + y]` is an index into `hom(tx, ty)`.
    pub fn new(
        q: Arc<Quantaloid>,
        labels: Vec<String>,
        types: Vec<usize>,
        hom: Vec<usize>,
    ) -> Result<Self> {
        let n = labels.len();
        if types.len() != n || hom.len() != n * n {
            return Err(Error::Structure {
                table: "category".into(),
                reason: format!(
                    "{} labels, {} types and {} hom entries do not fit together",
                    n,
                    types.len(),
                    hom.len()
                ),
            });
        }
        for (x, &t) in types.iter().enumerate() {
            if t >= q.n() {
                return Err(Error::Type(format!(
                    "object {} has type {t}, not an object of the quantaloid",
                    labels[x]
                )));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if hom[x * n + y] >= q.hom(types[x], types[y]).len() {
                    return Err(Error::Type(format!(
                        "hom({}, {}) is not an arrow {} -> {}",
                        labels[x],
                        labels[y],
                        q.objects()[types[x]],
                        q.objects()[types[y]]
                    )));
                }
            }
        }
        Ok(QCategory {
            q,
            labels,
            types,
            hom,
            rows: OnceLock::new(),
            cols: OnceLock::new(),
        })
    }

    /// Build from arrow labels; a label that is not an arrow `tx -> ty` is a type error.
    pub fn from_labels(
        q: Arc<Quantaloid>,
        labels: Vec<String>,
        types: Vec<usize>,
        hom: &[Vec<String>],
    ) -> Result<Self> {
        let n = labels.len();
        if hom.len() != n || hom.iter().any(|r| r.len() != n) {
            return Err(Error::Structure {
                table: "category".into(),
                reason: "hom matrix is not square".into(),
            });
        }
        if let Some(&t) = types.iter().find(|&&t| t >= q.n()) {
            return Err(Error::Type(format!(
                "type {t} is not an object of the quantaloid"
            )));
        }
        let mut idx = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let h = q.hom(types[x], types[y]);
                let i = h.index_of(&hom[x][y]).ok_or_else(|| {
                    Error::Type(format!(
                        "hom({}, {}) = {} is not an arrow {} -> {}",
                        labels[x],
                        labels[y],
                        hom[x][y],
                        q.objects()[types[x]],
                        q.objects()[types[y]]
                    ))
                })?;
                idx.push(i);
            }
        }
        Self::new(q, labels, types, idx)
    }

    /// Identity arrows on the diagonal, bottoms elsewhere.
    pub fn discrete(q: Arc<Quantaloid>, s: &QTypedSet) -> Self {
        let n = s.len();
        let mut hom = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                hom.push(if x == y {
                    q.unit_idx(s.types[x])
                } else {
                    q.hom(s.types[x], s.types[y]).bottom()
                });
            }
        }
        Self::new(q, s.labels.clone(), s.types.clone(), hom).expect("discrete data is well typed")
    }

    /// The one-object category on type `x`.
    pub fn singleton(q: Arc<Quantaloid>, x: usize) -> Self {
        let label = format!("*{}", q.objects()[x]);
        let s = QTypedSet {
            labels: vec![label],
            types: vec![x],
        };
        Self::discrete(q, &s)
    }

    pub fn empty(q: Arc<Quantaloid>) -> Self {
        Self::new(q, Vec::new(), Vec::new(), Vec::new()).expect("empty category")
    }

    pub fn quantaloid(&self) -> &Arc<Quantaloid> {
        &self.q
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn types(&self) -> &[usize] {
        &self.types
    }

    #[inline]
    pub fn ty(&self, x: usize) -> usize {
        self.types[x]
    }

    /// Index of `A(x, y)` inside `hom(tx, ty)`.
    #[inline]
    pub fn h(&self, x: usize, y: usize) -> usize {
        self.hom[x * self.labels.len() + y]
    }

    pub fn hom(&self, x: usize, y: usize) -> Arrow {
        Arrow::new(self.types[x], self.types[y], self.h(x, y))
    }

    pub fn hom_matrix(&self) -> &[usize] {
        &self.hom
    }

    pub fn typed_set(&self) -> QTypedSet {
        QTypedSet {
            labels: self.labels.clone(),
            types: self.types.clone(),
        }
    }

    pub fn validate(&self) -> Vec<CategoryViolation> {
        let q = &self.q;
        let n = self.n();
        let mut out = Vec::new();
        for x in 0..n {
            let t = self.ty(x);
            if !q.hom(t, t).leq(q.unit_idx(t), self.h(x, x)) {
                out.push(CategoryViolation::Unit { x });
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (tx, ty, tz) = (self.ty(x), self.ty(y), self.ty(z));
                    let c = q.comp_idx(tx, ty, tz, self.h(y, z), self.h(x, y));
                    if !q.hom(tx, tz).leq(c, self.h(x, z)) {
                        out.push(CategoryViolation::Transitivity { x, y, z });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// The underlying preorder: `x <= y` iff `tx = ty` and `1_{tx} <= A(x, y)`.
    #[inline]
    pub fn le(&self, x: usize, y: usize) -> bool {
        let t = self.ty(x);
        t == self.ty(y) && self.q.hom(t, t).leq(self.q.unit_idx(t), self.h(x, y))
    }

    #[inline]
    pub fn iso(&self, x: usize, y: usize) -> bool {
        self.le(x, y) && self.le(y, x)
    }

    /// The underlying preorder as a dense matrix, and whether it is antisymmetric.
    pub fn underlying_preorder(&self) -> (Vec<bool>, bool) {
        let n = self.n();
        let rel: Vec<bool> = (0..n * n).map(|k| self.le(k / n, k % n)).collect();
        let skeletal = (0..n).all(|x| (x + 1..n).all(|y| !(rel[x * n + y] && rel[y * n + x])));
        (rel, skeletal)
    }

    pub fn is_skeletal(&self) -> bool {
        self.underlying_preorder().1
    }

    pub fn row(&self, x: usize) -> Vec<usize> {
        let n = self.n();
        self.hom[x * n..(x + 1) * n].to_vec()
    }

    pub fn col(&self, y: usize) -> Vec<usize> {
        (0..self.n()).map(|x| self.h(x, y)).collect()
    }

    fn index(&self, rows: bool) -> HashMap<RowKey, usize> {
        let mut m = HashMap::new();
        for x in 0..self.n() {
            let key = (self.ty(x), if rows { self.row(x) } else { self.col(x) });
            m.entry(key).or_insert(x);
        }
        m
    }

    /// The least object `a` of type `ty` with `A(a, -) = row`.
    pub fn find_by_row(&self, ty: usize, row: &[usize]) -> Option<usize> {
        self.rows
            .get_or_init(|| self.index(true))
            .get(&(ty, row.to_vec()))
            .copied()
    }

    /// The least object `b` of type `ty` with `A(-, b) = col`.
    pub fn find_by_col(&self, ty: usize, col: &[usize]) -> Option<usize> {
        self.cols
            .get_or_init(|| self.index(false))
            .get(&(ty, col.to_vec()))
            .copied()
    }

    /// The full subcategory on `keep`, in the given order.
    pub fn full_subcategory(&self, keep: &[usize]) -> QCategory {
        let labels = keep.iter().map(|&x| self.labels[x].clone()).collect();
        let types = keep.iter().map(|&x| self.types[x]).collect();
        let mut hom = Vec::with_capacity(keep.len() * keep.len());
        for &x in keep {
            for &y in keep {
                hom.push(self.h(x, y));
            }
        }
        QCategory::new(Arc::clone(&self.q), labels, types, hom).expect("subcategory is well typed")
    }

    /// Least upper bound of `xs` among objects of type `ty` in the underlying preorder,
    /// taking the least index among isomorphic candidates.
    pub fn underlying_join(&self, ty: usize, xs: &[usize]) -> Option<usize> {
        let ubs: Vec<usize> = (0..self.n())
            .filter(|&u| self.ty(u) == ty && xs.iter().all(|&x| self.le(x, u)))
            .collect();
        ubs.iter()
            .copied()
            .find(|&u| ubs.iter().all(|&v| self.le(u, v)))
    }

    /// Greatest lower bound of `xs` among objects of type `ty`.
    pub fn underlying_meet(&self, ty: usize, xs: &[usize]) -> Option<usize> {
        let lbs: Vec<usize> = (0..self.n())
            .filter(|&l| self.ty(l) == ty && xs.iter().all(|&x| self.le(l, x)))
            .collect();
        lbs.iter()
            .copied()
            .find(|&l| lbs.iter().all(|&v| self.le(v, l)))
    }
}

/// A type-preserving map between enriched categories; [`QFunctor::validate`] checks the
/// hom inequality.
#[derive(Clone, Debug, PartialEq)]
pub struct QFunctor {
    pub dom: Arc<QCategory>,
    pub cod: Arc<QCategory>,
    pub map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorViolation {
    Type { x: usize },
    Hom { x: usize, y: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorReport {
    pub violations: Vec<FunctorViolation>,
    pub fully_faithful: bool,
}

impl FunctorReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn same_ambient(a: &QCategory, b: &QCategory) -> Result<()> {
    if Arc::ptr_eq(a.quantaloid(), b.quantaloid()) || a.quantaloid() == b.quantaloid() {
        Ok(())
    } else {
        Err(Error::CategoryMismatch(
            "categories are enriched in different quantaloids".into(),
        ))
    }
}

impl QFunctor {
    pub fn new(dom: Arc<QCategory>, cod: Arc<QCategory>, map: Vec<usize>) -> Result<Self> {
        same_ambient(&dom, &cod)?;
        if map.len() != dom.n() || map.iter().any(|&y| y >= cod.n()) {
            return Err(Error::Structure {
                table: "functor".into(),
                reason: "object map does not fit the categories".into(),
            });
        }
        Ok(QFunctor { dom, cod, map })
    }

    pub fn identity(a: Arc<QCategory>) -> Self {
        let map = (0..a.n()).collect();
        QFunctor {
            dom: Arc::clone(&a),
            cod: a,
            map,
        }
    }

    /// `other . self`.
    pub fn then(&self, other: &QFunctor) -> Result<QFunctor> {
        if *self.cod != *other.dom {
            return Err(Error::CategoryMismatch(
                "functors are not composable".into(),
            ));
        }
        Ok(QFunctor {
            dom: Arc::clone(&self.dom),
            cod: Arc::clone(&other.cod),
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        })
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_type_preserving(&self) -> bool {
        (0..self.dom.n()).all(|x| self.dom.ty(x) == self.cod.ty(self.map[x]))
    }

    pub fn validate(&self) -> FunctorReport {
        let (a, b) = (&self.dom, &self.cod);
        let q = a.quantaloid();
        let mut violations = Vec::new();
        let mut fully_faithful = true;
        for x in 0..a.n() {
            if a.ty(x) != b.ty(self.map[x]) {
                violations.push(FunctorViolation::Type { x });
            }
        }
        if !violations.is_empty() {
            return FunctorReport {
                violations,
                fully_faithful: false,
            };
        }
        for x in 0..a.n() {
            for y in 0..a.n() {
                let (fx, fy) = (self.map[x], self.map[y]);
                let lat = q.hom(a.ty(x), a.ty(y));
                if !lat.leq(a.h(x, y), b.h(fx, fy)) {
                    violations.push(FunctorViolation::Hom { x, y });
                }
                if a.h(x, y) != b.h(fx, fy) {
                    fully_faithful = false;
                }
            }
        }
        FunctorReport {
            violations,
            fully_faithful,
        }
    }

    /// `F <= G` iff `1_{tx} <= B(Fx, Gx)` for every `x`.
    pub fn le(&self, other: &QFunctor) -> bool {
        (0..self.dom.n()).all(|x| self.cod.le(self.map[x], other.map[x]))
    }

    /// `F ≅ G` in the pointwise underlying order.
    pub fn iso(&self, other: &QFunctor) -> bool {
        self.le(other) && other.le(self)
    }
}

/// Whether `B(Fx, y) = A(x, Gy)` for all `x`, `y`.
pub fn functor_adjoint_check(f: &QFunctor, g: &QFunctor) -> Result<bool> {
    same_ambient(&f.dom, &g.dom)?;
    if *f.dom != *g.cod || *f.cod != *g.dom {
        return Err(Error::CategoryMismatch(
            "an adjoint pair needs F: A -> B and G: B -> A".into(),
        ));
    }
    if !f.is_type_preserving() || !g.is_type_preserving() {
        return Ok(false);
    }
    let (a, b) = (&f.dom, &f.cod);
    Ok((0..a.n()).all(|x| (0..b.n()).all(|y| b.h(f.map[x], y) == a.h(x, g.map[y]))))
}

/// Every type-preserving map `dom -> cod`, in lexicographic order.
pub fn type_preserving_maps(dom: &QCategory, cod: &QCategory) -> Vec<Vec<usize>> {
    let choices: Vec<Vec<usize>> = (0..dom.n())
        .map(|x| (0..cod.n()).filter(|&y| cod.ty(y) == dom.ty(x)).collect())
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(dom.n());
    fn go(choices: &[Vec<usize>], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == choices.len() {
            out.push(cur.clone());
            return;
        }
        for &y in &choices[cur.len()] {
            cur.push(y);
            go(choices, cur, out);
            cur.pop();
        }
    }
    go(&choices, &mut cur, &mut out);
    out
}

/// All right adjoints of `f` among type-preserving maps.
pub fn find_right_adjoints(f: &QFunctor) -> Vec<QFunctor> {
    type_preserving_maps(&f.cod, &f.dom)
        .into_iter()
        .map(|m| QFunctor {
            dom: Arc::clone(&f.cod),
            cod: Arc::clone(&f.dom),
            map: m,
        })
        .filter(|g| functor_adjoint_check(f, g).unwrap_or(false))
        .collect()
}

/// A bijection `a -> b` preserving types and homs exactly, if one exists.
pub fn find_isomorphism(a: &QCategory, b: &QCategory) -> Option<Vec<usize>> {
    if a.n() != b.n() {
        return None;
    }
    let n = a.n();
    let sig = |c: &QCategory, x: usize| {
        let mut r = c.row(x);
        r.sort_unstable();
        let mut k = c.col(x);
        k.sort_unstable();
        (c.ty(x), c.h(x, x), r, k)
    };
    let sa: Vec<_> = (0..n).map(|x| sig(a, x)).collect();
    let sb: Vec<_> = (0..n).map(|x| sig(b, x)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        x: usize,
        a: &QCategory,
        b: &QCategory,
        sa: &[(usize, usize, Vec<usize>, Vec<usize>)],
        sb: &[(usize, usize, Vec<usize>, Vec<usize>)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if x == a.n() {
            return true;
        }
        for y in 0..b.n() {
            if used[y] || sa[x] != sb[y] {
                continue;
            }
            let ok = (0..x).all(|p| a.h(p, x) == b.h(map[p], y) && a.h(x, p) == b.h(y, map[p]));
            if !ok {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if go(x + 1, a, b, sa, sb, map, used) {
                return true;
            }
            used[y] = false;
        }
        false
    }
    if go(0, a, b, &sa, &sb, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}
