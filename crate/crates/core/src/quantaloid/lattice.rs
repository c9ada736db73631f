use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Error;

/// A finite complete lattice on indices `0..len`, given by its order relation.
///
/// Binary joins and meets are tabulated at construction, so every lookup is O(1).
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteLattice {
    labels: Vec<String>,
    leq: Vec<bool>,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("labels", &self.labels)
            .field("bottom", &self.bottom)
            .field("top", &self.top)
            .finish()
    }
}

impl FiniteLattice {
    /// Build from labels and a dense `n * n` order matrix (`leq[a * n + b]` means `a <= b`).
    pub fn from_matrix(name: &str, labels: Vec<String>, leq: Vec<bool>) -> Result<Self, Error> {
        let n = labels.len();
        let bad = |reason: String| Error::NotALattice {
            table: name.to_string(),
            reason,
        };
        if n == 0 {
            return Err(bad("no elements".into()));
        }
        if leq.len() != n * n {
            return Err(Error::Structure {
                table: name.to_string(),
                reason: format!("order matrix has {} cells, expected {}", leq.len(), n * n),
            });
        }
        let le = |a: usize, b: usize| leq[a * n + b];
        for a in 0..n {
            if !le(a, a) {
                return Err(bad(format!("not reflexive at {}", labels[a])));
            }
            for b in 0..n {
                if a != b && le(a, b) && le(b, a) {
                    return Err(bad(format!(
                        "not antisymmetric: {} and {}",
                        labels[a], labels[b]
                    )));
                }
                for c in 0..n {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        return Err(bad(format!(
                            "not transitive: {} <= {} <= {}",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let least = |cands: &[usize]| -> Option<usize> {
            cands
                .iter()
                .copied()
                .find(|&c| cands.iter().all(|&d| le(c, d)))
        };
        let greatest = |cands: &[usize]| -> Option<usize> {
            cands
                .iter()
                .copied()
                .find(|&c| cands.iter().all(|&d| le(d, c)))
        };
        let all: Vec<usize> = (0..n).collect();
        let bottom = least(&all).ok_or_else(|| bad("no bottom element".into()))?;
        let top = greatest(&all).ok_or_else(|| bad("no top element".into()))?;
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let ub: Vec<usize> = (0..n).filter(|&c| le(a, c) && le(b, c)).collect();
                join[a * n + b] = least(&ub)
                    .ok_or_else(|| bad(format!("{} and {} have no join", labels[a], labels[b])))?;
                let lb: Vec<usize> = (0..n).filter(|&c| le(c, a) && le(c, b)).collect();
                meet[a * n + b] = greatest(&lb)
                    .ok_or_else(|| bad(format!("{} and {} have no meet", labels[a], labels[b])))?;
            }
        }
        Ok(FiniteLattice {
            labels,
            leq,
            join,
            meet,
            bottom,
            top,
        })
    }

    /// Build from labels and a list of `(a, b)` pairs meaning `a <= b`; the reflexive
    /// transitive closure is taken.
    pub fn from_pairs(
        name: &str,
        labels: Vec<String>,
        pairs: &[(usize, usize)],
    ) -> Result<Self, Error> {
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::Structure {
                    table: name.to_string(),
                    reason: format!("order pair ({a}, {b}) out of range"),
                });
            }
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_matrix(name, labels, leq)
    }

    /// A chain `0 < 1 < ... < n-1`.
    pub fn chain(labels: Vec<String>) -> Self {
        let n = labels.len();
        let leq = (0..n * n).map(|k| k / n <= k % n).collect();
        Self::from_matrix("chain", labels, leq).expect("a chain is a lattice")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.labels.len() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.labels.len() + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.labels.len() + b]
    }

    #[inline]
    pub fn bottom(&self) -> usize {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> usize {
        self.top
    }

    pub fn join_all<I: IntoIterator<Item = usize>>(&self, it: I) -> usize {
        it.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, it: I) -> usize {
        it.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// The induced suborder on `keep`, kept in the given order. Fails if it is not a lattice.
    pub fn sub(&self, name: &str, keep: &[usize]) -> Result<Self, Error> {
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let m = keep.len();
        let mut leq = vec![false; m * m];
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                leq[i * m + j] = self.leq(a, b);
            }
        }
        Self::from_matrix(name, labels, leq)
    }

    /// Every strict pair `a < b`.
    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}
