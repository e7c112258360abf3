//! Scalar abstraction shared by the exact (rational) and floating-point paths,
//! plus the small amount of dense linear algebra both need.
//!
//! Every routine takes a `tol` argument. Rationals ignore it; floats treat
//! values with `|x| <= tol` as zero.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};

pub trait Field:
    Clone
    + PartialOrd
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_usize(v: usize) -> Self;
    fn is_zero_tol(&self, tol: f64) -> bool;
    fn abs_val(&self) -> Self;
    fn to_f64(&self) -> f64;

    fn is_pos_tol(&self, tol: f64) -> bool {
        !self.is_zero_tol(tol) && *self > Self::zero()
    }

    fn is_neg_tol(&self, tol: f64) -> bool {
        !self.is_zero_tol(tol) && *self < Self::zero()
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_usize(v: usize) -> Self {
        Rational::from_integer(v.into())
    }
    fn is_zero_tol(&self, _tol: f64) -> bool {
        Zero::is_zero(self)
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
    fn to_f64(&self) -> f64 {
        rational::to_f64(self)
    }
}

impl Field for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_usize(v: usize) -> Self {
        v as f64
    }
    fn is_zero_tol(&self, tol: f64) -> bool {
        self.abs() <= tol
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

pub fn dot<S: Field>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn sub_vec<S: Field>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

/// Row-reduces `m` in place to reduced row echelon form; returns pivot columns.
pub fn rref<S: Field>(m: &mut [Vec<S>], tol: f64) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Partial pivoting by magnitude; for rationals any nonzero pivot works.
        let mut best: Option<usize> = None;
        for i in r..rows {
            if m[i][c].is_zero_tol(tol) {
                continue;
            }
            match best {
                None => best = Some(i),
                Some(b) if m[i][c].abs_val() > m[b][c].abs_val() => best = Some(i),
                _ => {}
            }
        }
        let Some(p) = best else { continue };
        m.swap(r, p);
        let inv = S::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero_tol(tol) {
                continue;
            }
            let f = m[i][c].clone();
            for j in 0..cols {
                let v = m[r][j].clone();
                m[i][j] = m[i][j].clone() - f.clone() * v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<S: Field>(rows: &[Vec<S>], tol: f64) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, tol).len()
}

/// Dimension of the affine hull of the given points (-1 mapped to 0 for an empty set).
pub fn affine_rank<S: Field>(points: &[&[S]], tol: f64) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = points[0];
    let diffs: Vec<Vec<S>> = points[1..].iter().map(|p| sub_vec(p, base)).collect();
    rank(&diffs, tol)
}

pub fn determinant<S: Field>(mut m: Vec<Vec<S>>, tol: f64) -> S {
    let n = m.len();
    let mut det = S::one();
    for c in 0..n {
        let mut best: Option<usize> = None;
        for i in c..n {
            if m[i][c].is_zero_tol(tol) {
                continue;
            }
            match best {
                None => best = Some(i),
                Some(b) if m[i][c].abs_val() > m[b][c].abs_val() => best = Some(i),
                _ => {}
            }
        }
        let Some(p) = best else { return S::zero() };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let piv = m[c][c].clone();
        det = det * piv.clone();
        for i in (c + 1)..n {
            if m[i][c].is_zero_tol(tol) {
                continue;
            }
            let f = m[i][c].clone() / piv.clone();
            for j in c..n {
                let v = m[c][j].clone();
                m[i][j] = m[i][j].clone() - f.clone() * v;
            }
        }
    }
    det
}

/// Solves the square system `a x = b`; `None` if `a` is singular.
pub fn solve<S: Field>(a: &[Vec<S>], b: &[S], tol: f64) -> Option<Vec<S>> {
    let n = a.len();
    let mut aug: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, tol);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n].clone()).collect())
}

/// A basis of the right null space of `m` (`cols` columns).
pub fn nullspace<S: Field>(m: &[Vec<S>], cols: usize, tol: f64) -> Vec<Vec<S>> {
    let mut r = m.to_vec();
    let pivots = rref(&mut r, tol);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); cols];
            v[f] = S::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[row][f].clone();
            }
            v
        })
        .collect()
}
