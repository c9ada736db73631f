use std::fmt;

use crate::quantaloid::FiniteLattice;
use crate::{Error, Result};

/// A finite unital quantale: a complete lattice with an associative, unital,
/// join-preserving multiplication `a & b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuantaleSpec {
    lattice: FiniteLattice,
    tensor: Vec<usize>,
    unit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuantaleViolation {
    Associativity(usize, usize, usize),
    LeftUnit(usize),
    RightUnit(usize),
    JoinLeft(usize, usize, usize),
    JoinRight(usize, usize, usize),
    BottomLeft(usize),
    BottomRight(usize),
}

impl fmt::Display for QuantaleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Associativity(a, b, c) => write!(f, "associativity fails at ({a}, {b}, {c})"),
            Self::LeftUnit(a) => write!(f, "left unit law fails at {a}"),
            Self::RightUnit(a) => write!(f, "right unit law fails at {a}"),
            Self::JoinLeft(a, b, c) => {
                write!(f, "(a v b) & c != (a & c) v (b & c) at ({a}, {b}, {c})")
            }
            Self::JoinRight(a, b, c) => {
                write!(f, "a & (b v c) != (a & b) v (a & c) at ({a}, {b}, {c})")
            }
            Self::BottomLeft(a) => write!(f, "bottom & {a} is not bottom"),
            Self::BottomRight(a) => write!(f, "{a} & bottom is not bottom"),
        }
    }
}

fn reduced(k: usize, d: usize) -> String {
    if k == 0 {
        return "0".into();
    }
    if k == d {
        return "1".into();
    }
    let g = gcd(k, d);
    format!("{}/{}", k / g, d / g)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Parse `"k/n"`, `"0"` or `"1"` into a reduced fraction.
pub fn parse_fraction(s: &str) -> Option<(u64, u64)> {
    let s = s.trim();
    let (k, d) = match s.split_once('/') {
        Some((k, d)) => (k.trim().parse::<u64>().ok()?, d.trim().parse::<u64>().ok()?),
        None => (s.parse::<u64>().ok()?, 1),
    };
    if d == 0 {
        return None;
    }
    let g = gcd(k as usize, d as usize).max(1) as u64;
    Some((k / g, d / g))
}

impl QuantaleSpec {
    /// Assemble a quantale from a lattice, a multiplication table (`tensor[a * n + b] = a & b`)
    /// and a unit. Structural problems are errors; algebraic laws are checked by [`validate`].
    ///
    /// [`validate`]: QuantaleSpec::validate
    pub fn new(lattice: FiniteLattice, tensor: Vec<usize>, unit: usize) -> Result<Self> {
        let n = lattice.len();
        if tensor.len() != n * n {
            return Err(Error::Structure {
                table: "tensor".into(),
                reason: format!("{} entries, expected {}", tensor.len(), n * n),
            });
        }
        if let Some(&bad) = tensor.iter().find(|&&t| t >= n) {
            return Err(Error::Structure {
                table: "tensor".into(),
                reason: format!("entry {bad} out of range"),
            });
        }
        if unit >= n {
            return Err(Error::Structure {
                table: "unit".into(),
                reason: format!("unit {unit} out of range"),
            });
        }
        Ok(QuantaleSpec {
            lattice,
            tensor,
            unit,
        })
    }

    /// Like [`QuantaleSpec::new`] but rejects tables that break a quantale law.
    pub fn checked(lattice: FiniteLattice, tensor: Vec<usize>, unit: usize) -> Result<Self> {
        let q = Self::new(lattice, tensor, unit)?;
        if let Some(v) = q.validate().first() {
            return Err(Error::InvalidQuantale(v.to_string()));
        }
        Ok(q)
    }

    /// Build from a commutative operation on a chain `0 < 1 < ... < n-1`.
    pub fn chain_with(labels: Vec<String>, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = labels.len();
        let lattice = FiniteLattice::chain(labels);
        let tensor = (0..n * n).map(|k| op(k / n, k % n)).collect();
        Self::checked(lattice, tensor, n - 1)
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn label(&self, a: usize) -> &str {
        self.lattice.label(a)
    }

    pub fn labels(&self) -> &[String] {
        self.lattice.labels()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    /// Look up an element by label, falling back to comparing exact fractions.
    pub fn element(&self, label: &str) -> Option<usize> {
        if let Some(i) = self.lattice.index_of(label) {
            return Some(i);
        }
        let want = parse_fraction(label)?;
        self.labels()
            .iter()
            .position(|l| parse_fraction(l) == Some(want))
    }

    #[inline]
    pub fn tensor(&self, a: usize, b: usize) -> usize {
        self.tensor[a * self.len() + b]
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.lattice.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.lattice.meet(a, b)
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.lattice.join(a, b)
    }

    /// `b / a`: the largest `x` with `x & a <= b`.
    pub fn left_div(&self, b: usize, a: usize) -> usize {
        self.lattice
            .join_all((0..self.len()).filter(|&x| self.leq(self.tensor(x, a), b)))
    }

    /// `a \ b`: the largest `y` with `a & y <= b`.
    pub fn right_div(&self, a: usize, b: usize) -> usize {
        self.lattice
            .join_all((0..self.len()).filter(|&y| self.leq(self.tensor(a, y), b)))
    }

    pub fn validate(&self) -> Vec<QuantaleViolation> {
        let n = self.len();
        let l = &self.lattice;
        let mut out = Vec::new();
        for a in 0..n {
            if self.tensor(self.unit, a) != a {
                out.push(QuantaleViolation::LeftUnit(a));
            }
            if self.tensor(a, self.unit) != a {
                out.push(QuantaleViolation::RightUnit(a));
            }
            if self.tensor(l.bottom(), a) != l.bottom() {
                out.push(QuantaleViolation::BottomLeft(a));
            }
            if self.tensor(a, l.bottom()) != l.bottom() {
                out.push(QuantaleViolation::BottomRight(a));
            }
            for b in 0..n {
                for c in 0..n {
                    if self.tensor(self.tensor(a, b), c) != self.tensor(a, self.tensor(b, c)) {
                        out.push(QuantaleViolation::Associativity(a, b, c));
                    }
                    if self.tensor(l.join(a, b), c) != l.join(self.tensor(a, c), self.tensor(b, c))
                    {
                        out.push(QuantaleViolation::JoinLeft(a, b, c));
                    }
                    if self.tensor(a, l.join(b, c)) != l.join(self.tensor(a, b), self.tensor(a, c))
                    {
                        out.push(QuantaleViolation::JoinRight(a, b, c));
                    }
                }
            }
        }
        out
    }

    /// Checks `(b / a) & a = a ∧ b = a & (a \ b)` for every pair.
    ///
    /// Pairs are scanned with `a` running from the last element down and `b` upwards;
    /// the first failing pair is returned as the witness.
    pub fn check_divisible(&self) -> std::result::Result<(), (usize, usize)> {
        let n = self.len();
        for a in (0..n).rev() {
            for b in 0..n {
                let m = self.meet(a, b);
                if self.tensor(self.left_div(b, a), a) != m
                    || self.tensor(a, self.right_div(a, b)) != m
                {
                    return Err((a, b));
                }
            }
        }
        Ok(())
    }

    pub fn is_divisible(&self) -> bool {
        self.check_divisible().is_ok()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| self.tensor(a, b) == self.tensor(b, a)))
    }
}

fn chain_labels(n: usize) -> Vec<String> {
    (0..n).map(|k| reduced(k, n - 1)).collect()
}

/// Łukasiewicz t-norm on the chain `0, 1/(n-1), ..., 1`, on integer numerators.
pub fn build_lukasiewicz_chain(n: usize) -> Result<QuantaleSpec> {
    if n < 2 {
        return Err(Error::InvalidSize(format!(
            "a Łukasiewicz chain needs at least 2 elements, got {n}"
        )));
    }
    let top = n - 1;
    QuantaleSpec::chain_with(chain_labels(n), |a, b| (a + b).saturating_sub(top))
}

/// Minimum t-norm on an `n`-chain (a frame).
pub fn build_godel_chain(n: usize) -> Result<QuantaleSpec> {
    if n < 2 {
        return Err(Error::InvalidSize(format!(
            "a chain needs at least 2 elements, got {n}"
        )));
    }
    QuantaleSpec::chain_with(chain_labels(n), |a, b| a.min(b))
}

/// Nilpotent minimum on an `n`-chain: `a & b = 0` when `a + b <= 1`, else `min(a, b)`.
pub fn build_nilpotent_minimum(n: usize) -> Result<QuantaleSpec> {
    if n < 2 {
        return Err(Error::InvalidSize(format!(
            "a chain needs at least 2 elements, got {n}"
        )));
    }
    let top = n - 1;
    QuantaleSpec::chain_with(
        chain_labels(n),
        |a, b| if a + b <= top { 0 } else { a.min(b) },
    )
}

/// The Boolean algebra of subsets of a `k`-element set, with meet as multiplication.
///
/// Elements are bitmasks in increasing numeric order, labelled by their members
/// (`"0"` for the empty set, `"1"` for the full set when `k = 1`).
pub fn build_boolean_algebra(k: usize) -> Result<QuantaleSpec> {
    if k == 0 || k > 6 {
        return Err(Error::InvalidSize(format!(
            "Boolean algebras are built on 1 to 6 atoms, got {k}"
        )));
    }
    let n = 1usize << k;
    let names: Vec<char> = "abcdef".chars().collect();
    let labels: Vec<String> = (0..n)
        .map(|m| {
            if k == 1 {
                m.to_string()
            } else if m == 0 {
                "0".into()
            } else {
                (0..k)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| names[i])
                    .collect()
            }
        })
        .collect();
    let leq = (0..n * n).map(|c| (c / n) & !(c % n) == 0).collect();
    let lattice = FiniteLattice::from_matrix("boolean", labels, leq)?;
    let tensor = (0..n * n).map(|c| (c / n) & (c % n)).collect();
    QuantaleSpec::checked(lattice, tensor, n - 1)
}
