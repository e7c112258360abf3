//! Incremental double description over integers.
//!
//! Computes the extreme rays of a pointed cone `{y : A y >= 0}` whose
//! constraint matrix has full column rank. Rays are kept as primitive integer
//! vectors, and adjacency is decided by the combinatorial zero-set test.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::field::rref;
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn new(bits: usize) -> Self {
        ZeroSet(vec![0; bits.div_ceil(64).max(1)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn intersect(&self, other: &Self) -> Self {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn is_subset_of(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
}

#[derive(Debug, PartialEq, Eq)]
pub(crate) struct RankDeficient(pub usize);

fn eval(row: &[BigInt], ray: &[BigInt]) -> BigInt {
    row.iter().zip(ray).map(|(a, b)| a * b).sum()
}

/// Greedily picks row indices forming a basis of the row space.
fn basis_rows(rows: &[Vec<BigInt>], d: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut current: Vec<Vec<Rational>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if chosen.len() == d {
            break;
        }
        let mut trial = current.clone();
        trial.push(row.iter().map(|x| Rational::from_integer(x.clone())).collect());
        let mut m = trial.clone();
        if rref(&mut m, 0.0).len() == trial.len() {
            current = trial;
            chosen.push(i);
        }
    }
    chosen
}

pub(crate) fn extreme_rays(rows: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>, RankDeficient> {
    let d = rows.first().map_or(0, Vec::len);
    let basis = basis_rows(rows, d);
    if basis.len() < d {
        return Err(RankDeficient(basis.len()));
    }
    let m = rows.len();

    // Initial simplicial cone: columns of the inverse of the basis submatrix.
    let mut aug: Vec<Vec<Rational>> = basis
        .iter()
        .enumerate()
        .map(|(k, &i)| {
            let mut r: Vec<Rational> = rows[i]
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect();
            r.extend((0..d).map(|j| {
                if j == k {
                    Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    rref(&mut aug, 0.0);
    let mut rays: Vec<Vec<BigInt>> = Vec::with_capacity(d);
    let mut zeros: Vec<ZeroSet> = Vec::with_capacity(d);
    for k in 0..d {
        let col: Vec<Rational> = aug.iter().map(|r| r[d + k].clone()).collect();
        rays.push(rational::primitive_integer_vector(&col));
        let mut z = ZeroSet::new(m);
        for (kk, &i) in basis.iter().enumerate() {
            if kk != k {
                z.insert(i);
            }
        }
        zeros.push(z);
    }

    let mut in_basis = vec![false; m];
    for &i in &basis {
        in_basis[i] = true;
    }
    for (i, row) in rows.iter().enumerate() {
        if in_basis[i] {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| eval(row, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();

        let mut new_rays = Vec::new();
        let mut new_zeros = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = zeros[p].intersect(&zeros[q]);
                if (common.count() as usize) + 2 < d {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .filter(|&k| k != p && k != q)
                    .all(|k| !common.is_subset_of(&zeros[k]));
                if !adjacent {
                    continue;
                }
                let a_p = &vals[p];
                let a_q = -&vals[q];
                let ray: Vec<BigInt> = rays[p]
                    .iter()
                    .zip(&rays[q])
                    .map(|(x, y)| &a_q * x + a_p * y)
                    .collect();
                let mut z = common;
                z.insert(i);
                new_rays.push(rational::primitive(ray));
                new_zeros.push(z);
            }
        }

        let mut kept_rays = Vec::with_capacity(rays.len() + new_rays.len());
        let mut kept_zeros = Vec::with_capacity(rays.len() + new_rays.len());
        for (k, (ray, mut z)) in rays.into_iter().zip(zeros).enumerate() {
            if vals[k].is_negative() {
                continue;
            }
            if vals[k].is_zero() {
                z.insert(i);
            }
            kept_rays.push(ray);
            kept_zeros.push(z);
        }
        kept_rays.extend(new_rays);
        kept_zeros.extend(new_zeros);
        rays = kept_rays;
        zeros = kept_zeros;
    }
    Ok(rays)
}
