//! Volume by a cone-over-facets fan from the vertex centroid, with each facet
//! triangulated recursively by pulling a vertex.
//!
//! The routine only needs vertex coordinates and, for every facet, the set of
//! vertices lying on it. Lower-dimensional faces are recovered as maximal
//! intersections of a face with the facets.

use std::collections::HashSet;

use crate::field::{affine_rank, determinant, sub_vec, Field};

/// Which vertex of a face is pulled when triangulating it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ApexRule {
    #[default]
    First,
    Last,
}

struct Fan<'a, S> {
    points: &'a [Vec<S>],
    facets: &'a [Vec<usize>],
    rule: ApexRule,
    tol: f64,
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

impl<S: Field> Fan<'_, S> {
    fn face_dim(&self, face: &[usize]) -> usize {
        let refs: Vec<&[S]> = face.iter().map(|&i| self.points[i].as_slice()).collect();
        affine_rank(&refs, self.tol)
    }

    fn subfaces(&self, face: &[usize], k: usize) -> Vec<Vec<usize>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in self.facets {
            let inter = intersect_sorted(face, g);
            if inter.len() < k || inter.len() == face.len() {
                continue;
            }
            if !seen.insert(inter.clone()) {
                continue;
            }
            if self.face_dim(&inter) + 1 == k {
                out.push(inter);
            }
        }
        out
    }

    /// Simplices (as vertex index lists of length k + 1) covering a k-face.
    fn triangulate(&self, face: &[usize], k: usize) -> Vec<Vec<usize>> {
        if face.len() == k + 1 {
            return vec![face.to_vec()];
        }
        let apex = match self.rule {
            ApexRule::First => face[0],
            ApexRule::Last => face[face.len() - 1],
        };
        let mut out = Vec::new();
        for sub in self.subfaces(face, k) {
            if sub.binary_search(&apex).is_ok() {
                continue;
            }
            for mut simplex in self.triangulate(&sub, k - 1) {
                simplex.push(apex);
                out.push(simplex);
            }
        }
        out
    }
}

/// Volume of a full-dimensional polytope given by its vertices and facet
/// incidences (sorted vertex index lists).
pub(crate) fn fan_volume<S: Field>(
    points: &[Vec<S>],
    facets: &[Vec<usize>],
    dim: usize,
    rule: ApexRule,
    tol: f64,
) -> S {
    if dim == 0 || points.is_empty() {
        return S::zero();
    }
    let count = S::from_usize(points.len());
    let centroid: Vec<S> = (0..dim)
        .map(|j| points.iter().fold(S::zero(), |acc, p| acc + p[j].clone()) / count.clone())
        .collect();
    let fan = Fan {
        points,
        facets,
        rule,
        tol,
    };
    let mut total = S::zero();
    for facet in facets {
        for simplex in fan.triangulate(facet, dim - 1) {
            let m: Vec<Vec<S>> = simplex
                .iter()
                .map(|&i| sub_vec(&points[i], &centroid))
                .collect();
            total = total + determinant(m, tol).abs_val();
        }
    }
    let fact = (1..=dim).fold(S::one(), |acc, k| acc * S::from_usize(k));
    total / fact
}
