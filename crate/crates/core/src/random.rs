//! Seeded generators for small random instances.
//!
//! Every generator draws from a caller-supplied [`ChaCha8Rng`], so a seed fixes the
//! whole instance.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::completion::ClosureOperator;
use crate::context::{FuzzyContext, FuzzySet};
use crate::distributor::{
    cotensor_presheaf, meet_weights, top_weight, Infomorphism, PresheafCategory, QDistributor,
    Variance, Weight,
};
use crate::enriched::{type_preserving_maps, QCategory, QFunctor, QTypedSet};
use crate::quantaloid::{QuantaleSpec, Quantaloid};
use crate::Result;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pick_arrow(q: &Quantaloid, x: usize, y: usize, rng: &mut ChaCha8Rng) -> usize {
    let h = q.hom(x, y);
    if rng.gen_bool(0.35) {
        h.bottom()
    } else {
        rng.gen_range(0..h.len())
    }
}

pub fn random_typed_set(q: &Quantaloid, n: usize, prefix: &str, rng: &mut ChaCha8Rng) -> QTypedSet {
    QTypedSet {
        labels: (0..n).map(|i| format!("{prefix}{i}")).collect(),
        types: (0..n).map(|_| rng.gen_range(0..q.n())).collect(),
    }
}

/// A random category on `n` objects: random homs above the units, closed under
/// composition.
pub fn random_category(q: &Arc<Quantaloid>, n: usize, rng: &mut ChaCha8Rng) -> QCategory {
    let s = random_typed_set(q, n, "x", rng);
    random_category_on(q, &s, rng)
}

pub fn random_category_on(q: &Arc<Quantaloid>, s: &QTypedSet, rng: &mut ChaCha8Rng) -> QCategory {
    let n = s.len();
    let t = &s.types;
    let mut hom = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let r = pick_arrow(q, t[x], t[y], rng);
            hom[x * n + y] = if x == y {
                q.hom(t[x], t[x]).join(r, q.unit_idx(t[x]))
            } else {
                r
            };
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let c = q.comp_idx(t[x], t[y], t[z], hom[y * n + z], hom[x * n + y]);
                    let j = q.hom(t[x], t[z]).join(hom[x * n + z], c);
                    if j != hom[x * n + z] {
                        hom[x * n + z] = j;
                        changed = true;
                    }
                }
            }
        }
    }
    QCategory::new(Arc::clone(q), s.labels.clone(), s.types.clone(), hom)
        .expect("generated homs are well typed")
}

/// A random distributor: a random matrix closed under both actions.
pub fn random_distributor(
    a: &Arc<QCategory>,
    b: &Arc<QCategory>,
    rng: &mut ChaCha8Rng,
) -> QDistributor {
    let q = Arc::clone(a.quantaloid());
    let (na, nb) = (a.n(), b.n());
    let mut m: Vec<usize> = (0..na * nb)
        .map(|c| pick_arrow(&q, a.ty(c / nb), b.ty(c % nb), rng))
        .collect();
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..na {
            for y in 0..nb {
                let (tx, ty) = (a.ty(x), b.ty(y));
                let h = q.hom(tx, ty);
                let mut v = m[x * nb + y];
                for y1 in 0..nb {
                    v = h.join(v, q.comp_idx(tx, b.ty(y1), ty, b.h(y1, y), m[x * nb + y1]));
                }
                for x1 in 0..na {
                    v = h.join(v, q.comp_idx(tx, a.ty(x1), ty, m[x1 * nb + y], a.h(x, x1)));
                }
                if v != m[x * nb + y] {
                    m[x * nb + y] = v;
                    changed = true;
                }
            }
        }
    }
    QDistributor::new(Arc::clone(a), Arc::clone(b), m).expect("generated matrix is well typed")
}

/// A random presheaf or copresheaf of type `ty`, closed under the action of `a`.
pub fn random_weight(a: &QCategory, v: Variance, ty: usize, rng: &mut ChaCha8Rng) -> Weight {
    let q = a.quantaloid();
    let slot = |x: usize| match v {
        Variance::Contra => (a.ty(x), ty),
        Variance::Co => (ty, a.ty(x)),
    };
    let mut w: Vec<usize> = (0..a.n())
        .map(|x| {
            let (s, t) = slot(x);
            pick_arrow(q, s, t, rng)
        })
        .collect();
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..a.n() {
            let (s, t) = slot(x);
            let mut val = w[x];
            for (x1, &w1) in w.iter().enumerate() {
                let c = match v {
                    Variance::Contra => q.comp_idx(a.ty(x), a.ty(x1), ty, w1, a.h(x, x1)),
                    Variance::Co => q.comp_idx(ty, a.ty(x1), a.ty(x), a.h(x1, x), w1),
                };
                val = q.hom(s, t).join(val, c);
            }
            if val != w[x] {
                w[x] = val;
                changed = true;
            }
        }
    }
    Weight { ty, w }
}

/// A uniformly chosen valid functor between two small categories, if one exists.
pub fn random_functor(
    a: &Arc<QCategory>,
    b: &Arc<QCategory>,
    rng: &mut ChaCha8Rng,
) -> Option<QFunctor> {
    let valid: Vec<QFunctor> = type_preserving_maps(a, b)
        .into_iter()
        .filter_map(|map| QFunctor::new(Arc::clone(a), Arc::clone(b), map).ok())
        .filter(|f| f.validate().is_valid())
        .collect();
    valid.choose(rng).cloned()
}

/// A random fuzzy context with memberships and degrees drawn from `q`.
pub fn random_context(
    q: &QuantaleSpec,
    na: usize,
    nb: usize,
    rng: &mut ChaCha8Rng,
) -> FuzzyContext {
    let n = q.len();
    let lattice = q.lattice();
    let degrees = |k: usize, rng: &mut ChaCha8Rng| -> Vec<usize> {
        (0..k)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    lattice.top()
                } else {
                    rng.gen_range(0..n)
                }
            })
            .collect()
    };
    let da = degrees(na, rng);
    let db = degrees(nb, rng);
    let mut incidence = Vec::with_capacity(na * nb);
    for &ax in &da {
        for &by in &db {
            let bound = q.meet(ax, by);
            let below: Vec<usize> = (0..n).filter(|&e| q.leq(e, bound)).collect();
            incidence.push(*below.choose(rng).expect("bottom lies below every bound"));
        }
    }
    FuzzyContext::new(
        q.clone(),
        FuzzySet::new((0..na).map(|i| format!("o{i}")).collect(), da).expect("sizes agree"),
        FuzzySet::new((0..nb).map(|i| format!("p{i}")).collect(), db).expect("sizes agree"),
        incidence,
    )
    .expect("degrees respect the membership bound")
}

/// A random closure operator on an enumerated presheaf category.
///
/// Half the time this is the Isbell closure of a random distributor out of the base,
/// otherwise it is generated from a few random presheaves closed under meets and
/// cotensors.
pub fn random_closure(
    base: &Arc<PresheafCategory>,
    rng: &mut ChaCha8Rng,
) -> Result<ClosureOperator> {
    let a = Arc::clone(base.base());
    let q = Arc::clone(a.quantaloid());
    if rng.gen_bool(0.5) {
        let k = rng.gen_range(1..=3);
        let b = Arc::new(random_category(&q, k, rng));
        let phi = random_distributor(&a, &b, rng);
        return ClosureOperator::isbell(Arc::clone(base), &phi);
    }
    let mut system: Vec<Weight> = (0..q.n())
        .map(|ty| top_weight(&a, Variance::Contra, ty))
        .collect();
    let picks = rng.gen_range(1..=3).min(base.len());
    for w in base.weights().choose_multiple(rng, picks) {
        system.push(w.clone());
    }
    let mut i = 0;
    while i < system.len() {
        let w = system[i].clone();
        let mut fresh = Vec::new();
        for other in &system {
            if other.ty == w.ty {
                fresh.push(meet_weights(&a, Variance::Contra, &w, other));
            }
        }
        for z in 0..q.n() {
            for f in 0..q.hom(z, w.ty).len() {
                fresh.push(cotensor_presheaf(&a, f, z, &w));
            }
        }
        for f in fresh {
            if !system.contains(&f) {
                system.push(f);
            }
        }
        i += 1;
    }
    let idx: Vec<usize> = system
        .iter()
        .map(|w| base.get(w).expect("closure system members are presheaves"))
        .collect();
    ClosureOperator::from_closure_system(Arc::clone(base), &idx)
}

/// The category on `s` whose homs are pulled back from `u` along `proj`.
fn pullback_category(u: &QCategory, proj: &[usize], prefix: &str) -> QCategory {
    let n = proj.len();
    let labels = (0..n).map(|i| format!("{prefix}{i}")).collect();
    let types = proj.iter().map(|&p| u.ty(p)).collect();
    let hom = (0..n * n).map(|c| u.h(proj[c / n], proj[c % n])).collect();
    QCategory::new(Arc::clone(u.quantaloid()), labels, types, hom)
        .expect("pulled back homs are well typed")
}

fn random_projection(k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..k).collect();
    for _ in 0..rng.gen_range(0..=1) {
        p.push(rng.gen_range(0..k));
    }
    p.shuffle(rng);
    p
}

fn section(proj_from: &[usize], proj_to: &[usize], rng: &mut ChaCha8Rng) -> Vec<usize> {
    proj_from
        .iter()
        .map(|&u| {
            let fibre: Vec<usize> = (0..proj_to.len()).filter(|&i| proj_to[i] == u).collect();
            *fibre.choose(rng).expect("projections are surjective")
        })
        .collect()
}

/// `len` composable infomorphisms between contexts pulled back from one random
/// distributor `ω: U ⇸ V` along surjections onto `U` and `V`.
pub fn random_infomorphism_chain(
    q: &Arc<Quantaloid>,
    len: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Infomorphism> {
    let u = Arc::new(random_category(q, rng.gen_range(1..=2), rng));
    let v = Arc::new(random_category(q, rng.gen_range(1..=2), rng));
    let omega = random_distributor(&u, &v, rng);
    let contexts: Vec<(Vec<usize>, Vec<usize>, QDistributor)> = (0..=len)
        .map(|i| {
            let p = random_projection(u.n(), rng);
            let r = random_projection(v.n(), rng);
            let a = Arc::new(pullback_category(&u, &p, &format!("a{i}_")));
            let b = Arc::new(pullback_category(&v, &r, &format!("b{i}_")));
            let phi = QDistributor::from_fn(a, b, |x, y| omega.get(p[x], r[y]))
                .expect("pulled back matrix is well typed");
            (p, r, phi)
        })
        .collect();
    contexts
        .windows(2)
        .map(|w| {
            let (p0, r0, phi) = &w[0];
            let (p1, r1, psi) = &w[1];
            let fmap = section(p0, p1, rng);
            let gmap = section(r1, r0, rng);
            let f = QFunctor::new(Arc::clone(&phi.dom), Arc::clone(&psi.dom), fmap)
                .expect("sections preserve types");
            let g = QFunctor::new(Arc::clone(&psi.cod), Arc::clone(&phi.cod), gmap)
                .expect("sections preserve types");
            Infomorphism::new(phi.clone(), psi.clone(), f, g).expect("feet match")
        })
        .collect()
}
