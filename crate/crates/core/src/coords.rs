use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A nonempty set of coordinate indices of `R^n`, naming the coordinate
/// subspace spanned by the corresponding basis vectors.
///
/// Indices are stored 0-based and sorted; text forms are 1-based (`"1,3"`).
/// Ordering is by size, then lexicographically by indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoordSet {
    n: usize,
    indices: Vec<usize>,
}

impl CoordSet {
    pub fn new(n: usize, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if indices.is_empty() {
            return Err(Error::InvalidCover("empty coordinate set".into()));
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidCover(format!(
                "index {} out of range for n = {n}",
                bad + 1
            )));
        }
        Ok(CoordSet { n, indices })
    }

    pub fn from_one_based(n: usize, indices: &[usize]) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::InvalidCover("indices are 1-based".into()));
        }
        Self::new(n, indices.iter().map(|i| i - 1).collect())
    }

    pub fn full(n: usize) -> Self {
        CoordSet {
            n,
            indices: (0..n).collect(),
        }
    }

    pub fn singleton(n: usize, i: usize) -> Self {
        assert!(i < n);
        CoordSet { n, indices: vec![i] }
    }

    /// `[n] \ {i}`; requires `n >= 2`.
    pub fn all_but(n: usize, i: usize) -> Self {
        assert!(n >= 2 && i < n);
        CoordSet {
            n,
            indices: (0..n).filter(|&j| j != i).collect(),
        }
    }

    pub fn from_mask(n: usize, mask: u64) -> Self {
        let indices: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        assert!(!indices.is_empty(), "empty mask");
        CoordSet { n, indices }
    }

    pub fn mask(&self) -> u64 {
        self.indices.iter().fold(0u64, |m, &i| m | 1 << i)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_full(&self) -> bool {
        self.indices.len() == self.n
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// Relabels coordinates: index `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let idx = self.indices.iter().map(|&i| perm[i]).collect();
        CoordSet::new(self.n, idx).expect("permutation keeps indices in range")
    }

    /// All `2^n - 1` nonempty subsets in canonical order.
    pub fn all_nonempty(n: usize) -> Vec<CoordSet> {
        let mut v: Vec<CoordSet> = (1..(1u64 << n)).map(|m| CoordSet::from_mask(n, m)).collect();
        v.sort();
        v
    }

    /// Parses a 1-based comma-separated list such as `"1,3"`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let idx = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad index {t:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_one_based(n, &idx)
    }
}

impl Ord for CoordSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices
            .len()
            .cmp(&other.indices.len())
            .then_with(|| self.indices.cmp(&other.indices))
            .then_with(|| self.n.cmp(&other.n))
    }
}

impl PartialOrd for CoordSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CoordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.indices.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        Ok(())
    }
}
