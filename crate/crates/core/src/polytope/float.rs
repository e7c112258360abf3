//! Floating-point polytopes for sections and projections along subspaces that
//! are not coordinate subspaces.
//!
//! Vertex and facet enumeration are brute force over `d`-subsets, which is
//! adequate for the low dimensions (`d <= 3`) and small inputs this path sees.

use crate::error::{Error, Result};
use crate::field::{affine_rank, dot, nullspace, rank, solve};
use crate::polytope::volume::{fan_volume, ApexRule};
use crate::polytope::Polytope;
use crate::rational;

/// Absolute tolerance on halfspace residuals.
pub const DEFAULT_FLOAT_TOL: f64 = 1e-9;

/// Deviation from orthonormality tolerated in a section basis.
pub const BASIS_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct FloatPolytope {
    dim: usize,
    vertices: Vec<Vec<f64>>,
    /// Unit normals `a` with offsets `b`: `<a, x> <= b`.
    halfspaces: Vec<(Vec<f64>, f64)>,
    incidence: Vec<Vec<usize>>,
    affine_dim: usize,
    tol: f64,
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::with_capacity(k), &mut out);
    out
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

fn unit(a: &[f64], b: f64) -> Option<(Vec<f64>, f64)> {
    let norm = dot(a, a).sqrt();
    if norm == 0.0 {
        return None;
    }
    Some((a.iter().map(|x| x / norm).collect(), b / norm))
}

fn tight_sets(vertices: &[Vec<f64>], halfspaces: &[(Vec<f64>, f64)], tol: f64) -> Vec<Vec<usize>> {
    halfspaces
        .iter()
        .map(|(a, b)| {
            (0..vertices.len())
                .filter(|&i| (b - dot(a, &vertices[i])).abs() <= tol)
                .collect()
        })
        .collect()
}

impl FloatPolytope {
    /// Intersection of halfspaces `<a, x> <= b` in `R^dim`.
    pub fn from_halfspaces(dim: usize, halfspaces: &[(Vec<f64>, f64)], tol: f64) -> Result<Self> {
        let mut hs = Vec::with_capacity(halfspaces.len());
        for (a, b) in halfspaces {
            if a.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: a.len(),
                });
            }
            match unit(a, *b) {
                Some(h) => hs.push(h),
                None if *b < -tol => return Err(Error::EmptyPolytope),
                None => {}
            }
        }
        let mut vertices: Vec<Vec<f64>> = Vec::new();
        for combo in combinations(hs.len(), dim) {
            let a: Vec<Vec<f64>> = combo.iter().map(|&i| hs[i].0.clone()).collect();
            let b: Vec<f64> = combo.iter().map(|&i| hs[i].1).collect();
            let Some(x) = solve(&a, &b, 1e-12) else { continue };
            if hs.iter().all(|(a, b)| dot(a, &x) <= b + tol)
                && !vertices.iter().any(|v| close(v, &x, 10.0 * tol))
            {
                vertices.push(x);
            }
        }
        if vertices.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        let refs: Vec<&[f64]> = vertices.iter().map(Vec::as_slice).collect();
        let affine_dim = affine_rank(&refs, 10.0 * tol);
        let mut seen = std::collections::HashSet::new();
        let mut facets = Vec::new();
        if affine_dim == dim {
            for (h, tight) in hs.iter().zip(tight_sets(&vertices, &hs, 10.0 * tol)) {
                if tight.len() < dim || !seen.insert(tight.clone()) {
                    continue;
                }
                let pts: Vec<&[f64]> = tight.iter().map(|&i| vertices[i].as_slice()).collect();
                if affine_rank(&pts, 10.0 * tol) + 1 == dim {
                    facets.push(h.clone());
                }
            }
        }
        let incidence = tight_sets(&vertices, &facets, 10.0 * tol);
        Ok(FloatPolytope {
            dim,
            vertices,
            halfspaces: facets,
            incidence,
            affine_dim,
            tol,
        })
    }

    /// Convex hull of a finite point set in `R^dim`.
    pub fn from_points(dim: usize, points: &[Vec<f64>], tol: f64) -> Result<Self> {
        let mut pts: Vec<Vec<f64>> = Vec::new();
        for p in points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
            if !pts.iter().any(|q| close(q, p, tol)) {
                pts.push(p.clone());
            }
        }
        if pts.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        let refs: Vec<&[f64]> = pts.iter().map(Vec::as_slice).collect();
        let affine_dim = affine_rank(&refs, tol);
        if affine_dim < dim {
            return Ok(FloatPolytope {
                dim,
                vertices: pts,
                halfspaces: Vec::new(),
                incidence: Vec::new(),
                affine_dim,
                tol,
            });
        }
        let mut facets: Vec<(Vec<f64>, f64)> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for combo in combinations(pts.len(), dim) {
            let rows: Vec<Vec<f64>> = combo
                .iter()
                .map(|&i| {
                    let mut r = pts[i].clone();
                    r.push(-1.0);
                    r
                })
                .collect();
            let ns = nullspace(&rows, dim + 1, 1e-12);
            if ns.len() != 1 {
                continue;
            }
            let v = &ns[0];
            let Some((mut a, mut b)) = unit(&v[..dim], v[dim]) else { continue };
            let res: Vec<f64> = pts.iter().map(|p| dot(&a, p) - b).collect();
            if res.iter().all(|&r| r <= tol) {
            } else if res.iter().all(|&r| r >= -tol) {
                a.iter_mut().for_each(|x| *x = -*x);
                b = -b;
            } else {
                continue;
            }
            let tight: Vec<usize> = (0..pts.len()).filter(|&i| res[i].abs() <= tol).collect();
            if !seen.insert(tight.clone()) {
                continue;
            }
            let tp: Vec<&[f64]> = tight.iter().map(|&i| pts[i].as_slice()).collect();
            if affine_rank(&tp, tol) + 1 == dim {
                facets.push((a, b));
            }
        }
        // Drop non-extreme points.
        let inc = tight_sets(&pts, &facets, tol);
        let mut tight_for: Vec<Vec<usize>> = vec![Vec::new(); pts.len()];
        for (f, vs) in inc.iter().enumerate() {
            for &v in vs {
                tight_for[v].push(f);
            }
        }
        let vertices: Vec<Vec<f64>> = (0..pts.len())
            .filter(|&i| {
                let normals: Vec<Vec<f64>> = tight_for[i].iter().map(|&f| facets[f].0.clone()).collect();
                rank(&normals, 1e-9) == dim
            })
            .map(|i| pts[i].clone())
            .collect();
        let incidence = tight_sets(&vertices, &facets, tol);
        Ok(FloatPolytope {
            dim,
            vertices,
            halfspaces: facets,
            incidence,
            affine_dim,
            tol,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn halfspaces(&self) -> &[(Vec<f64>, f64)] {
        &self.halfspaces
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    /// Always `false`: values on this path are rounded.
    pub fn exact(&self) -> bool {
        false
    }

    pub fn volume(&self) -> f64 {
        if self.affine_dim < self.dim {
            return 0.0;
        }
        fan_volume(&self.vertices, &self.incidence, self.dim, ApexRule::First, 10.0 * self.tol)
    }
}

fn check_basis(basis: &[Vec<f64>], n: usize) -> Result<()> {
    let mut deviation: f64 = 0.0;
    for (i, r) in basis.iter().enumerate() {
        if r.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.len(),
            });
        }
        for (j, s) in basis.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            deviation = deviation.max((dot(r, s) - target).abs());
        }
    }
    if basis.is_empty() || basis.len() > n || deviation > BASIS_TOL {
        return Err(Error::IllConditionedBasis { deviation });
    }
    Ok(())
}

/// `{y in R^d : basis^T y in P}` for a basis with orthonormal rows (`d x n`).
pub fn general_section(p: &Polytope, basis: &[Vec<f64>]) -> Result<FloatPolytope> {
    general_section_with_tol(p, basis, DEFAULT_FLOAT_TOL)
}

pub fn general_section_with_tol(p: &Polytope, basis: &[Vec<f64>], tol: f64) -> Result<FloatPolytope> {
    check_basis(basis, p.dim())?;
    let full = p.complete()?;
    let hs: Vec<(Vec<f64>, f64)> = full
        .halfspaces()
        .expect("complete")
        .iter()
        .map(|h| {
            let a: Vec<f64> = h.normal.iter().map(rational::to_f64).collect();
            let ba: Vec<f64> = basis.iter().map(|row| dot(row, &a)).collect();
            (ba, rational::to_f64(&h.offset))
        })
        .collect();
    FloatPolytope::from_halfspaces(basis.len(), &hs, tol).map_err(|e| match e {
        Error::EmptyPolytope => Error::EmptySection,
        e => e,
    })
}

/// Orthogonal projection of `P` onto the row space of `basis`, in its coordinates.
pub fn general_projection(p: &Polytope, basis: &[Vec<f64>]) -> Result<FloatPolytope> {
    check_basis(basis, p.dim())?;
    let pts: Vec<Vec<f64>> = p
        .float_vertices()?
        .iter()
        .map(|v| basis.iter().map(|row| dot(row, v)).collect())
        .collect();
    FloatPolytope::from_points(basis.len(), &pts, DEFAULT_FLOAT_TOL)
}
