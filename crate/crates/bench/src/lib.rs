//! Seeded workloads shared by the benchmarks.

use std::sync::Arc;

use qfca::context::FuzzyContext;
use qfca::fixtures::poset;
use qfca::quantaloid::build_lukasiewicz_chain;
use qfca::random::{random_context, rng};
use qfca::{QCategory, QDistributor};

/// A random fuzzy context over the Łukasiewicz chain with `levels` elements, lifted to a distributor.
pub fn fuzzy_incidence(
    levels: usize,
    objects: usize,
    attributes: usize,
    seed: u64,
) -> QDistributor {
    let q = build_lukasiewicz_chain(levels).expect("Lukasiewicz chains are divisible");
    let ctx = random_context(&q, objects, attributes, &mut rng(seed));
    ctx.lift().expect("Lukasiewicz chains are divisible").phi
}

/// The crisp context whose incidence is `x <= y` on `0..n`.
pub fn staircase(n: usize) -> FuzzyContext {
    let labels = |p: &str| (0..n).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x..n).map(move |y| (x, y))).collect();
    FuzzyContext::crisp(labels("o"), labels("p"), &pairs)
}

/// The chain `0 < 1 < ... < n - 1` as a category over `2`.
pub fn chain(n: usize) -> Arc<QCategory> {
    let rows: Vec<Vec<bool>> = (0..n).map(|x| (0..n).map(|y| x <= y).collect()).collect();
    let refs: Vec<&[bool]> = rows.iter().map(Vec::as_slice).collect();
    let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    Arc::new(poset(&names, &refs))
}
