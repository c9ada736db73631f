//! Small named instances shared by tests, benchmarks and the law harness.

use std::sync::Arc;

use crate::context::FuzzyContext;
use crate::distributor::QDistributor;
use crate::enriched::{QCategory, QTypedSet};
use crate::quantaloid::{
    build_boolean, build_boolean_algebra, build_lukasiewicz_chain,
    quantaloid_from_divisible_quantale, Quantaloid,
};

/// The two-element Boolean algebra as a one-object quantaloid.
pub fn two() -> Arc<Quantaloid> {
    Arc::new(build_boolean())
}

/// The quantaloid of the Łukasiewicz `n`-chain.
pub fn lukasiewicz(n: usize) -> Arc<Quantaloid> {
    Arc::new(
        quantaloid_from_divisible_quantale(&build_lukasiewicz_chain(n).expect("n >= 2"))
            .expect("Łukasiewicz chains are divisible"),
    )
}

/// The quantaloid of the Boolean algebra with `k` atoms.
pub fn boolean(k: usize) -> Arc<Quantaloid> {
    Arc::new(
        quantaloid_from_divisible_quantale(&build_boolean_algebra(k).expect("1 <= k <= 6"))
            .expect("Boolean algebras are divisible"),
    )
}

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// The crisp context with objects `1, 2`, attributes `a, b` and incidence
/// `{(1, a), (1, b), (2, b)}`.
pub fn ctx1() -> FuzzyContext {
    FuzzyContext::crisp(
        labels(&["1", "2"]),
        labels(&["a", "b"]),
        &[(0, 0), (0, 1), (1, 1)],
    )
}

/// The incidence of [`ctx1`] as a distributor over the one-object quantaloid `2`.
pub fn ctx1_over_two() -> QDistributor {
    let q = two();
    let a = Arc::new(QCategory::discrete(
        Arc::clone(&q),
        &QTypedSet::new(&q, labels(&["1", "2"]), vec![0, 0]).expect("well typed"),
    ));
    let b = Arc::new(QCategory::discrete(
        Arc::clone(&q),
        &QTypedSet::new(&q, labels(&["a", "b"]), vec![0, 0]).expect("well typed"),
    ));
    let rows = [["1", "1"], ["0", "1"]];
    QDistributor::from_labels(a, b, &rows.map(|r| r.map(String::from).to_vec()))
        .expect("well typed")
}

/// A category over `2` given by a relation `le[x][y]`.
pub fn poset(names: &[&str], le: &[&[bool]]) -> QCategory {
    let q = two();
    let n = names.len();
    let hom: Vec<Vec<String>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| if le[x][y] { "1" } else { "0" }.to_string())
                .collect()
        })
        .collect();
    QCategory::from_labels(q, labels(names), vec![0; n], &hom).expect("well typed")
}

/// The chain `x < y` over `2`.
pub fn chain2() -> QCategory {
    poset(&["x", "y"], &[&[true, true], &[false, true]])
}

/// Two incomparable objects over `2`.
pub fn antichain2() -> QCategory {
    poset(&["x", "y"], &[&[true, false], &[false, true]])
}
