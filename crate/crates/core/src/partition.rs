//! Integer partitions, dominance, interlacing and one-box moves.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers (trailing zeros are
/// dropped). Indexed accessors are 1-based and read absent parts as 0.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from parts, dropping trailing zeros.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotAPartition(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_i` for `i >= 1`; zero past the last part.
    pub fn part(&self, i: usize) -> u32 {
        assert!(i >= 1, "partition parts are 1-indexed");
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn in_lambda(&self, n: usize) -> bool {
        self.parts.len() <= n
    }

    /// The first `len` parts, zero-padded.
    pub fn padded(&self, len: usize) -> Vec<u32> {
        (1..=len).map(|i| self.part(i)).collect()
    }

    /// `λ ± e_i` if the result is still a partition.
    pub fn add_box(&self, i: usize) -> Option<Partition> {
        assert!(i >= 1);
        if i > 1 && self.part(i - 1) == self.part(i) {
            return None;
        }
        let mut parts = self.padded(i.max(self.length()));
        parts[i - 1] += 1;
        Some(Partition { parts })
    }

    pub fn remove_box(&self, i: usize) -> Option<Partition> {
        assert!(i >= 1);
        if self.part(i) == 0 || self.part(i) == self.part(i + 1) {
            return None;
        }
        let mut parts = self.parts.clone();
        parts[i - 1] -= 1;
        Partition::new(parts).ok()
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        let body: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `|λ|`.
pub fn weight(p: &Partition) -> u64 {
    p.weight()
}

/// Dominance order: every partial sum of `p` is at least that of `r`.
pub fn dominates(p: &Partition, r: &Partition) -> bool {
    let len = p.length().max(r.length());
    let (mut sp, mut sr) = (0u64, 0u64);
    for i in 1..=len {
        sp += p.part(i) as u64;
        sr += r.part(i) as u64;
        if sp < sr {
            return false;
        }
    }
    true
}

/// `μ ⪯ λ`, i.e. `λ_1 >= μ_1 >= λ_2 >= μ_2 >= ...`.
pub fn interlaces(mu: &Partition, lam: &Partition) -> bool {
    let len = mu.length().max(lam.length());
    (1..=len).all(|i| lam.part(i) >= mu.part(i) && mu.part(i) >= lam.part(i + 1))
}

/// Positional interlacing for Gelfand-Tsetlin levels: `x` has `k` or `k-1`
/// slots when `y` has `k`, and `y_i >= x_i >= y_{i+1}` for every slot of `x`.
pub fn interlaces_positional(x: &[u32], y: &[u32]) -> bool {
    if x.len() > y.len() || x.len() + 1 < y.len() {
        return false;
    }
    let at = |v: &[u32], i: usize| v.get(i).copied().unwrap_or(0);
    (0..x.len()).all(|i| at(y, i) >= x[i] && x[i] >= at(y, i + 1))
}

/// All `λ ∈ Λ_n` with `λ = p ± e_i`, additions first, each by increasing `i`.
pub fn one_box_neighbors(p: &Partition, n: usize) -> Result<Vec<Partition>> {
    if !p.in_lambda(n) {
        return Err(Error::NotInLambda {
            partition: p.parts().to_vec(),
            n,
        });
    }
    let mut out = Vec::new();
    for i in 1..=n {
        if let Some(q) = p.add_box(i) {
            out.push(q);
        }
    }
    for i in 1..=n {
        if let Some(q) = p.remove_box(i) {
            out.push(q);
        }
    }
    Ok(out)
}

/// Every `λ ∈ Λ_n` with `λ_1 <= max_first_part`, in lexicographic order of
/// the part sequence (so `∅ < (1) < (1,1) < (2)`).
pub fn enumerate_lambda_n(n: usize, max_first_part: u32) -> Vec<Partition> {
    fn rec(n: usize, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        out.push(Partition {
            parts: prefix.clone(),
        });
        if prefix.len() == n {
            return;
        }
        for next in 1..=cap {
            prefix.push(next);
            rec(n, next, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_first_part, &mut Vec::new(), &mut out);
    out
}
