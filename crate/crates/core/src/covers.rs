//! Uniform covers of `[n]` and weighted coordinate covers.
//!
//! A [`Cover`] is a multiset of nonempty coordinate sets; it is `s`-uniform
//! when every index lies in exactly `s` parts. A [`WeightedCover`] attaches a
//! positive rational weight to each part, and is valid when the weights of the
//! parts containing each index sum to the same `s`.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coords::CoordSet;
use crate::error::{Error, Result};
use crate::lp::{LinearProgram, Relation};
use crate::rational::{self, int, Rational};

/// Default cap on the number of covers an enumeration may produce.
pub const DEFAULT_ENUMERATION_BUDGET: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cover {
    n: usize,
    parts: Vec<CoordSet>,
}

impl Cover {
    /// Builds a cover; parts are stored in canonical order.
    pub fn new(n: usize, mut parts: Vec<CoordSet>) -> Result<Self> {
        if n == 0 || parts.is_empty() {
            return Err(Error::InvalidCover("a cover needs n >= 1 and at least one part".into()));
        }
        if let Some(p) = parts.iter().find(|p| p.ambient_dim() != n) {
            return Err(Error::InvalidCover(format!(
                "part {p} lives in dimension {}, expected {n}",
                p.ambient_dim()
            )));
        }
        parts.sort();
        Ok(Cover { n, parts })
    }

    /// Parses `"1,2;1,3;2,3"`. Without `n`, the largest index is used.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self> {
        let raw: Vec<Vec<usize>> = text
            .split(';')
            .filter(|t| !t.trim().is_empty())
            .map(|part| {
                part.split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad index {t:?} in cover {text:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let n = match n {
            Some(n) => n,
            None => raw.iter().flatten().copied().max().unwrap_or(0),
        };
        let parts = raw
            .iter()
            .map(|idx| CoordSet::from_one_based(n, idx))
            .collect::<Result<Vec<_>>>()?;
        Cover::new(n, parts)
    }

    /// The singleton partition `{1}, ..., {n}`.
    pub fn singletons(n: usize) -> Self {
        Cover::new(n, (0..n).map(|i| CoordSet::singleton(n, i)).collect()).expect("valid")
    }

    /// `[n] \ {i}` for every `i`, the `(n-1)`-uniform cover behind Loomis–Whitney and Meyer.
    pub fn complements(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidCover("complement cover needs n >= 2".into()));
        }
        Cover::new(n, (0..n).map(|i| CoordSet::all_but(n, i)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[CoordSet] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// How many parts contain each index.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.n];
        for p in &self.parts {
            for &i in p.indices() {
                m[i] += 1;
            }
        }
        m
    }

    /// `Some(s)` iff every index lies in exactly `s >= 1` parts.
    pub fn uniformity(&self) -> Option<usize> {
        let m = self.multiplicities();
        let s = m[0];
        (s >= 1 && m.iter().all(|&x| x == s)).then_some(s)
    }

    /// Multiset union.
    pub fn concat(&self, other: &Cover) -> Result<Cover> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let mut parts = self.parts.clone();
        parts.extend(other.parts.iter().cloned());
        Cover::new(self.n, parts)
    }

    pub fn permuted(&self, perm: &[usize]) -> Cover {
        Cover::new(self.n, self.parts.iter().map(|p| p.permuted(perm)).collect()).expect("valid")
    }

    fn groups(&self) -> Vec<(u64, usize)> {
        let mut g: Vec<(u64, usize)> = Vec::new();
        for p in &self.parts {
            let m = p.mask();
            match g.last_mut() {
                Some((mask, c)) if *mask == m => *c += 1,
                _ => g.push((m, 1)),
            }
        }
        g
    }

    /// `true` iff no nonempty proper sub-multiset of the parts is itself a uniform cover.
    pub fn is_irreducible(&self) -> Result<bool> {
        if self.uniformity().is_none() {
            return Err(Error::NotUniform);
        }
        let groups = self.groups();
        Ok(find_uniform_sub(&groups, self.n, None, SubSearch::AnyProper).is_none())
    }

    /// Splits a uniform cover into irreducible uniform covers.
    pub fn decompose(&self) -> Result<Vec<Cover>> {
        if self.uniformity().is_none() {
            return Err(Error::NotUniform);
        }
        let mut rest = self.groups();
        let mut out = Vec::new();
        while rest.iter().any(|&(_, c)| c > 0) {
            let pick = find_uniform_sub(&rest, self.n, None, SubSearch::Smallest)
                .expect("a uniform multiset contains a uniform sub-multiset");
            let mut parts = Vec::new();
            for (g, &take) in rest.iter_mut().zip(&pick) {
                for _ in 0..take {
                    parts.push(CoordSet::from_mask(self.n, g.0));
                }
                g.1 -= take;
            }
            out.push(Cover::new(self.n, parts)?);
        }
        out.sort();
        Ok(out)
    }
}

impl fmt::Display for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SubSearch {
    /// Any nonempty proper uniform sub-multiset.
    AnyProper,
    /// A nonempty uniform sub-multiset (possibly everything) of minimum size.
    Smallest,
}

/// Searches sub-multisets of `groups` (distinct masks with multiplicities).
/// With `must`, only sub-multisets using group `must` at least once count.
/// Returns the chosen multiplicity per group.
fn find_uniform_sub(groups: &[(u64, usize)], n: usize, must: Option<usize>, mode: SubSearch) -> Option<Vec<usize>> {
    let total: usize = groups.iter().map(|g| g.1).sum();
    // remaining[g][j]: copies of index j available in groups g.. end
    let mut remaining = vec![vec![0usize; n]; groups.len() + 1];
    for g in (0..groups.len()).rev() {
        remaining[g] = remaining[g + 1].clone();
        for (j, r) in remaining[g].iter_mut().enumerate() {
            if groups[g].0 >> j & 1 == 1 {
                *r += groups[g].1;
            }
        }
    }
    struct Search<'a> {
        groups: &'a [(u64, usize)],
        remaining: Vec<Vec<usize>>,
        n: usize,
        must: Option<usize>,
        mode: SubSearch,
        total: usize,
        best: Option<(usize, Vec<usize>)>,
    }
    impl Search<'_> {
        fn rec(&mut self, g: usize, counts: &mut [usize], chosen: &mut Vec<usize>, size: usize) -> bool {
            let hi = counts.iter().copied().max().unwrap_or(0);
            let lo = (0..self.n).map(|j| counts[j] + self.remaining[g][j]).min().unwrap_or(0);
            if hi > lo {
                return false;
            }
            if let Some((b, _)) = &self.best {
                if size >= *b {
                    return false;
                }
            }
            if g == self.groups.len() {
                let ok = size > 0
                    && counts.iter().all(|&c| c == counts[0] && c >= 1)
                    && (self.mode == SubSearch::Smallest || size < self.total);
                if ok {
                    self.best = Some((size, chosen.clone()));
                    return self.mode == SubSearch::AnyProper;
                }
                return false;
            }
            let (mask, mult) = self.groups[g];
            let min_take = usize::from(self.must == Some(g));
            for take in min_take..=mult {
                for j in 0..self.n {
                    if mask >> j & 1 == 1 {
                        counts[j] += take;
                    }
                }
                chosen.push(take);
                let done = self.rec(g + 1, counts, chosen, size + take);
                chosen.pop();
                for j in 0..self.n {
                    if mask >> j & 1 == 1 {
                        counts[j] -= take;
                    }
                }
                if done {
                    return true;
                }
            }
            false
        }
    }
    let mut s = Search {
        groups,
        remaining,
        n,
        must,
        mode,
        total,
        best: None,
    };
    s.rec(0, &mut vec![0; n], &mut Vec::new(), 0);
    s.best.map(|(_, v)| v)
}

/// Streams every multiset of at most `max_parts` nonempty subsets of `[n]`
/// that is an `s`-uniform cover, once each, in canonical order.
pub fn enumerate_uniform_covers(n: usize, s: usize, max_parts: usize) -> UniformCovers {
    UniformCovers::new(n, s, max_parts, DEFAULT_ENUMERATION_BUDGET)
}

/// Depth-first enumerator behind [`enumerate_uniform_covers`].
///
/// Yields `Err(BudgetExceeded)` once (then stops) if more than `budget`
/// covers exist.
pub struct UniformCovers {
    n: usize,
    s: usize,
    max_parts: usize,
    budget: usize,
    subsets: Vec<CoordSet>,
    masks: Vec<u64>,
    chosen: Vec<usize>,
    counts: Vec<usize>,
    cursor: usize,
    emitted: usize,
    done: bool,
}

impl UniformCovers {
    pub fn new(n: usize, s: usize, max_parts: usize, budget: usize) -> Self {
        let subsets = if (1..=20).contains(&n) {
            CoordSet::all_nonempty(n)
        } else {
            Vec::new()
        };
        let masks = subsets.iter().map(CoordSet::mask).collect();
        UniformCovers {
            n,
            s,
            max_parts,
            budget,
            subsets,
            masks,
            chosen: Vec::new(),
            counts: vec![0; n],
            cursor: 0,
            emitted: 0,
            done: n == 0 || n > 20 || s == 0 || max_parts == 0,
        }
    }

    fn apply(&mut self, k: usize, add: bool) {
        let m = self.masks[k];
        for j in 0..self.n {
            if m >> j & 1 == 1 {
                if add {
                    self.counts[j] += 1;
                } else {
                    self.counts[j] -= 1;
                }
            }
        }
    }

    fn fits(&self, k: usize) -> bool {
        let m = self.masks[k];
        let slots_after = self.max_parts - self.chosen.len() - 1;
        (0..self.n).all(|j| {
            let c = self.counts[j] + (m >> j & 1) as usize;
            c <= self.s && self.s - c <= slots_after
        })
    }
}

impl Iterator for UniformCovers {
    type Item = Result<Cover>;

    fn next(&mut self) -> Option<Self::Item> {
        while !self.done {
            let candidate = if self.chosen.len() < self.max_parts {
                (self.cursor..self.subsets.len()).find(|&k| self.fits(k))
            } else {
                None
            };
            match candidate {
                Some(k) => {
                    self.chosen.push(k);
                    self.apply(k, true);
                    self.cursor = k;
                    if self.counts.iter().all(|&c| c == self.s) {
                        let parts = self.chosen.iter().map(|&i| self.subsets[i].clone()).collect();
                        // Any extension overshoots, so this is a leaf.
                        self.chosen.pop();
                        self.apply(k, false);
                        self.cursor = k + 1;
                        if self.emitted == self.budget {
                            self.done = true;
                            return Some(Err(Error::BudgetExceeded(self.budget)));
                        }
                        self.emitted += 1;
                        return Some(Cover::new(self.n, parts));
                    }
                }
                None => match self.chosen.pop() {
                    Some(k) => {
                        self.apply(k, false);
                        self.cursor = k + 1;
                    }
                    None => self.done = true,
                },
            }
        }
        None
    }
}

/// Bounds for [`enumerate_irreducible_with`].
#[derive(Clone, Copy, Debug)]
pub struct IrreducibleBounds {
    /// Largest uniformity searched.
    pub max_uniformity: usize,
    pub budget: usize,
}

impl IrreducibleBounds {
    /// Uniformity up to `n`.
    pub fn for_dim(n: usize) -> Self {
        IrreducibleBounds {
            max_uniformity: n.max(1),
            budget: DEFAULT_ENUMERATION_BUDGET,
        }
    }
}

/// Irreducible uniform covers of `[n]` with uniformity at most `n`, sorted
/// canonically.
///
/// The set of irreducible covers is finite but no general bound on their
/// uniformity is known here; the cap is a search budget. For `n <= 4` raising
/// it adds nothing (checked up to `n + 2`), while `[5]` already has
/// irreducible covers with `s = 5`.
pub fn enumerate_irreducible(n: usize) -> Result<Vec<Cover>> {
    enumerate_irreducible_with(n, IrreducibleBounds::for_dim(n))
}

/// Irreducible uniform covers of `[n]` with uniformity at most
/// `bounds.max_uniformity`.
///
/// Branches are cut as soon as the partial multiset contains a uniform
/// sub-multiset, since every completion of it would then be reducible.
pub fn enumerate_irreducible_with(n: usize, bounds: IrreducibleBounds) -> Result<Vec<Cover>> {
    if n == 0 || n > 20 {
        return Err(Error::InvalidCover(format!("unsupported n = {n}")));
    }
    let subsets = CoordSet::all_nonempty(n);
    let masks: Vec<u64> = subsets.iter().map(CoordSet::mask).collect();
    let mut out = Vec::new();

    struct Dfs<'a> {
        n: usize,
        cap: usize,
        budget: usize,
        masks: &'a [u64],
        subsets: &'a [CoordSet],
        out: &'a mut Vec<Cover>,
    }
    impl Dfs<'_> {
        fn groups(&self, chosen: &[usize]) -> (Vec<(u64, usize)>, usize) {
            let mut g: Vec<(u64, usize)> = Vec::new();
            let mut last_group = 0;
            for (pos, &k) in chosen.iter().enumerate() {
                match g.last_mut() {
                    Some((m, c)) if *m == self.masks[k] => *c += 1,
                    _ => g.push((self.masks[k], 1)),
                }
                if pos + 1 == chosen.len() {
                    last_group = g.len() - 1;
                }
            }
            (g, last_group)
        }

        fn rec(&mut self, start: usize, chosen: &mut Vec<usize>, counts: &mut [usize]) -> Result<()> {
            for k in start..self.masks.len() {
                let m = self.masks[k];
                if (0..self.n).any(|j| m >> j & 1 == 1 && counts[j] + 1 > self.cap) {
                    continue;
                }
                chosen.push(k);
                for j in 0..self.n {
                    counts[j] += (m >> j & 1) as usize;
                }
                let uniform = counts.iter().all(|&c| c == counts[0]);
                let (groups, last) = self.groups(chosen);
                let sub = find_uniform_sub(&groups, self.n, Some(last), SubSearch::AnyProper);
                if sub.is_none() {
                    if uniform {
                        if self.out.len() == self.budget {
                            return Err(Error::BudgetExceeded(self.budget));
                        }
                        let parts = chosen.iter().map(|&i| self.subsets[i].clone()).collect();
                        self.out.push(Cover::new(self.n, parts)?);
                    } else {
                        self.rec(k, chosen, counts)?;
                    }
                }
                for j in 0..self.n {
                    counts[j] -= (m >> j & 1) as usize;
                }
                chosen.pop();
            }
            Ok(())
        }
    }
    let mut dfs = Dfs {
        n,
        cap: bounds.max_uniformity,
        budget: bounds.budget,
        masks: &masks,
        subsets: &subsets,
        out: &mut out,
    };
    dfs.rec(0, &mut Vec::new(), &mut vec![0; n])?;
    out.sort();
    Ok(out)
}

/// Coordinate parts with positive weights `c_i` and level `s`, meant to
/// satisfy `s I_n = sum c_i P_i` for the coordinate projections `P_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedCover {
    n: usize,
    parts: Vec<CoordSet>,
    weights: Vec<Rational>,
    s: Rational,
}

impl WeightedCover {
    /// Stores the data as given; use [`WeightedCover::verify`] to check it.
    pub fn new(n: usize, parts: Vec<CoordSet>, weights: Vec<Rational>, s: Rational) -> Result<Self> {
        if parts.is_empty() || parts.len() != weights.len() {
            return Err(Error::WeightsInvalid(format!(
                "{} parts but {} weights",
                parts.len(),
                weights.len()
            )));
        }
        if let Some(p) = parts.iter().find(|p| p.ambient_dim() != n) {
            return Err(Error::InvalidCover(format!("part {p} is not a subset of [{n}]")));
        }
        Ok(WeightedCover { n, parts, weights, s })
    }

    /// All weights 1 with the cover's uniformity as level.
    pub fn from_cover(cover: &Cover) -> Result<Self> {
        let s = cover.uniformity().ok_or(Error::NotUniform)?;
        WeightedCover::new(
            cover.n(),
            cover.parts().to_vec(),
            vec![int(1); cover.len()],
            int(s as i64),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[CoordSet] {
        &self.parts
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn s(&self) -> &Rational {
        &self.s
    }

    /// Per-index weight sums.
    pub fn coordinate_sums(&self) -> Vec<Rational> {
        let mut sums = vec![Rational::zero(); self.n];
        for (p, c) in self.parts.iter().zip(&self.weights) {
            for &i in p.indices() {
                sums[i] += c;
            }
        }
        sums
    }

    /// `n s = sum c_i |sigma_i|`, the trace of both sides of the identity.
    pub fn trace_identity_holds(&self) -> bool {
        let lhs = int(self.n as i64) * &self.s;
        let rhs = self
            .parts
            .iter()
            .zip(&self.weights)
            .fold(Rational::zero(), |acc, (p, c)| acc + c * int(p.len() as i64));
        lhs == rhs
    }

    /// Checks positivity and the exact per-index sums; `Err` explains the failure.
    pub fn check(&self) -> Result<()> {
        if !self.s.is_positive() {
            return Err(Error::WeightsInvalid("s must be positive".into()));
        }
        if let Some((i, c)) = self.weights.iter().enumerate().find(|(_, c)| !c.is_positive()) {
            return Err(Error::WeightsInvalid(format!(
                "weight {} of part {} is not positive",
                rational::format_rational(c),
                self.parts[i]
            )));
        }
        for (j, sum) in self.coordinate_sums().iter().enumerate() {
            if sum != &self.s {
                return Err(Error::WeightsInvalid(format!(
                    "index {} has weight sum {} instead of {}",
                    j + 1,
                    rational::format_rational(sum),
                    rational::format_rational(&self.s)
                )));
            }
        }
        debug_assert!(self.trace_identity_holds());
        if !self.trace_identity_holds() {
            return Err(Error::WeightsInvalid("trace identity fails".into()));
        }
        Ok(())
    }

    pub fn verify(&self) -> bool {
        self.check().is_ok()
    }

    /// Same parts with weights `c_i / s` and level 1.
    pub fn normalized(&self) -> WeightedCover {
        WeightedCover {
            n: self.n,
            parts: self.parts.clone(),
            weights: self.weights.iter().map(|c| c / &self.s).collect(),
            s: int(1),
        }
    }

    pub fn permuted(&self, perm: &[usize]) -> WeightedCover {
        WeightedCover {
            n: self.n,
            parts: self.parts.iter().map(|p| p.permuted(perm)).collect(),
            weights: self.weights.clone(),
            s: self.s.clone(),
        }
    }
}

/// Convenience wrapper for [`WeightedCover::verify`].
pub fn verify_weighted(wc: &WeightedCover) -> bool {
    wc.verify()
}

/// Exact positive weights with per-index sums `s`, if any exist.
///
/// Among all solutions this returns the one maximizing the smallest weight;
/// remaining ties are broken by making the weight vector lexicographically
/// smallest.
pub fn solve_weights(parts: &[CoordSet], s: &Rational) -> Option<Vec<Rational>> {
    let n = parts.first()?.ambient_dim();
    if !s.is_positive() || parts.iter().any(|p| p.ambient_dim() != n) {
        return None;
    }
    let r = parts.len();
    // Variables: c_0..c_{r-1}, then t (free).
    let mut lp = LinearProgram::<Rational>::new(r + 1);
    lp.free[r] = true;
    for j in 0..n {
        let mut row: Vec<Rational> = parts
            .iter()
            .map(|p| if p.contains(j) { int(1) } else { int(0) })
            .collect();
        row.push(int(0));
        lp.add(row, Relation::Eq, s.clone());
    }
    for i in 0..r {
        let mut row = vec![int(0); r + 1];
        row[i] = int(1);
        row[r] = int(-1);
        lp.add(row, Relation::Ge, int(0));
    }
    lp.objective[r] = int(1);
    let (_, best_min) = lp.maximize(0.0).optimal()?;
    if !best_min.is_positive() {
        return None;
    }
    // Fix the max-min level, then minimize c_0, c_1, ... in turn.
    let mut lp2 = LinearProgram::<Rational>::new(r);
    for c in lp.constraints.iter().take(n) {
        lp2.add(c.coeffs[..r].to_vec(), Relation::Eq, c.rhs.clone());
    }
    for i in 0..r {
        let mut row = vec![int(0); r];
        row[i] = int(1);
        lp2.add(row, Relation::Ge, best_min.clone());
    }
    let mut weights = vec![Rational::zero(); r];
    for i in 0..r {
        let mut obj = vec![int(0); r];
        obj[i] = int(-1);
        lp2.objective = obj;
        let (x, _) = lp2.maximize(0.0).optimal()?;
        weights[i] = x[i].clone();
        let mut row = vec![int(0); r];
        row[i] = int(1);
        lp2.add(row, Relation::Eq, x[i].clone());
        if i + 1 == r {
            weights = x;
        }
    }
    Some(weights)
}

/// `{"parts": [[1,2],[1,3]], "weights": ["1","1"], "s": "2"}` with optional `"n"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightedCoverJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub parts: Vec<Vec<usize>>,
    #[serde(with = "rational::serde_rational_vec")]
    pub weights: Vec<Rational>,
    #[serde(with = "rational::serde_rational")]
    pub s: Rational,
}

impl TryFrom<WeightedCoverJson> for WeightedCover {
    type Error = Error;

    fn try_from(j: WeightedCoverJson) -> Result<Self> {
        let n = j
            .n
            .or_else(|| j.parts.iter().flatten().copied().max())
            .ok_or_else(|| Error::Parse("weighted cover without parts".into()))?;
        let parts = j
            .parts
            .iter()
            .map(|p| CoordSet::from_one_based(n, p))
            .collect::<Result<Vec<_>>>()?;
        WeightedCover::new(n, parts, j.weights, j.s)
    }
}

impl From<&WeightedCover> for WeightedCoverJson {
    fn from(w: &WeightedCover) -> Self {
        WeightedCoverJson {
            n: Some(w.n),
            parts: w
                .parts
                .iter()
                .map(|p| p.indices().iter().map(|i| i + 1).collect())
                .collect(),
            weights: w.weights.clone(),
            s: w.s.clone(),
        }
    }
}

impl WeightedCover {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let j: WeightedCoverJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        WeightedCover::try_from(j)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&WeightedCoverJson::from(self)).expect("serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn cover(text: &str, n: usize) -> Cover {
        Cover::parse(text, Some(n)).unwrap()
    }

    #[test]
    fn uniformity_examples() {
        assert_eq!(cover("1,2;1,3;2,3", 3).uniformity(), Some(2));
        assert_eq!(cover("1;2;3", 3).uniformity(), Some(1));
        assert_eq!(cover("1,2;1", 2).uniformity(), None);
        assert_eq!(cover("1,2", 3).uniformity(), None);
    }

    #[test]
    fn parse_and_display() {
        let c = Cover::parse("2,3;1,2; 1,3", None).unwrap();
        assert_eq!(c.n(), 3);
        assert_eq!(c.to_string(), "1,2;1,3;2,3");
        assert!(Cover::parse("1,x", None).is_err());
        assert!(Cover::parse("", None).is_err());
    }

    #[test]
    fn small_enumerations() {
        let got: Vec<String> = enumerate_uniform_covers(2, 1, 2)
            .map(|c| c.unwrap().to_string())
            .collect();
        assert_eq!(got, ["1;2", "1,2"]);
        let got: Vec<String> = enumerate_uniform_covers(2, 2, 3)
            .map(|c| c.unwrap().to_string())
            .collect();
        assert_eq!(got, ["1;2;1,2", "1,2;1,2"]);
        let got: Vec<String> = enumerate_uniform_covers(1, 1, 5)
            .map(|c| c.unwrap().to_string())
            .collect();
        assert_eq!(got, ["1"]);
    }

    #[test]
    fn budget_is_enforced() {
        let items: Vec<_> = UniformCovers::new(3, 2, 6, 3).collect();
        assert_eq!(items.len(), 4);
        assert!(items[..3].iter().all(Result::is_ok));
        assert_eq!(items[3], Err(Error::BudgetExceeded(3)));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(!cover("1;2;1,2", 2).is_irreducible().unwrap());
        assert!(cover("1,2;1,3;2,3", 3).is_irreducible().unwrap());
        assert!(cover("1,2,3", 3).is_irreducible().unwrap());
        assert_eq!(cover("1,2;1", 2).is_irreducible(), Err(Error::NotUniform));
    }

    #[test]
    fn irreducible_lists() {
        let one: Vec<String> = enumerate_irreducible(1).unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(one, ["1"]);
        let two: Vec<String> = enumerate_irreducible(2).unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(two, ["1;2", "1,2"]);
        let three = enumerate_irreducible(3).unwrap();
        assert!(three.contains(&cover("1,2;1,3;2,3", 3)));
    }

    #[test]
    fn decomposition() {
        let c = cover("1;2;1,2;1,2;1;2", 2);
        let parts = c.decompose().unwrap();
        let s: usize = parts.iter().map(|p| p.uniformity().unwrap()).sum();
        assert_eq!(s, c.uniformity().unwrap());
        assert!(parts.iter().all(|p| p.is_irreducible().unwrap()));
        assert_eq!(parts.len(), 4);
    }

    #[test]
    fn weighted_examples() {
        let p = |t: &str, n| CoordSet::parse(n, t).unwrap();
        let wc = WeightedCover::new(3, vec![p("1,2", 3), p("1,3", 3), p("2,3", 3)], vec![int(1); 3], int(2)).unwrap();
        assert!(wc.verify());
        let bad = WeightedCover::new(2, vec![p("1", 2), p("2", 2)], vec![int(1), int(2)], int(1)).unwrap();
        assert!(!bad.verify());
        let half = WeightedCover::new(2, vec![p("1", 2), p("1,2", 2), p("2", 2)], vec![rat(1, 2); 3], int(1)).unwrap();
        assert!(half.verify());
        assert!(half.trace_identity_holds());
    }

    #[test]
    fn weight_solving() {
        let p = |t: &str, n| CoordSet::parse(n, t).unwrap();
        assert_eq!(
            solve_weights(&[p("1,2", 3), p("1,3", 3), p("2,3", 3)], &int(2)),
            Some(vec![int(1); 3])
        );
        assert_eq!(solve_weights(&[p("1", 2), p("2", 2)], &int(1)), Some(vec![int(1); 2]));
        assert_eq!(
            solve_weights(&[p("1", 2), p("1,2", 2), p("2", 2)], &int(1)),
            Some(vec![rat(1, 2); 3])
        );
        // Index 2 uncovered.
        assert_eq!(solve_weights(&[p("1", 2)], &int(1)), None);
        // Only solution has a zero weight: {1},{1,2} with s = 1 forces c({1}) = 0.
        assert_eq!(solve_weights(&[p("1", 2), p("1,2", 2)], &int(1)), None);
    }

    #[test]
    fn weighted_json() {
        let wc = WeightedCover::from_json_str(r#"{"parts": [[1,2],[1,3],[2,3]], "weights": ["1","1","1"], "s": "2"}"#).unwrap();
        assert!(wc.verify());
        let back = WeightedCover::from_json_str(&wc.to_json_string()).unwrap();
        assert_eq!(back, wc);
    }
}
