//! Exact convex polytopes over the rationals.
//!
//! A [`Polytope`] carries a vertex representation, a halfspace representation,
//! or both. Converting fills in the missing one with the double description
//! method and prunes redundancy: after conversion the vertex list contains only
//! extreme points and the halfspace list only facets, each stored as a
//! primitive integer inequality.

mod dd;
pub mod float;
pub mod json;
mod volume;

use std::borrow::Cow;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub use float::{general_section, FloatPolytope};
pub use volume::ApexRule;

use crate::coords::CoordSet;
use crate::error::{Error, Result};
use crate::field::{affine_rank, dot, rank};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::rational::{self, int, Rational};

pub type Point = Vec<Rational>;

/// Default cap on the ambient dimension for representation conversion.
pub const DEFAULT_DIMENSION_CAP: usize = 10;

/// The inequality `<normal, x> <= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Halfspace {
    #[serde(rename = "a", with = "rational::serde_rational_vec")]
    pub normal: Vec<Rational>,
    #[serde(rename = "b", with = "rational::serde_rational")]
    pub offset: Rational,
}

impl Halfspace {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Self {
        Halfspace { normal, offset }
    }

    /// `offset - <normal, x>`; non-negative iff `x` satisfies the inequality.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        &self.offset - dot(&self.normal, x)
    }

    /// The same inequality scaled to coprime integer coefficients.
    pub fn normalized(&self) -> Self {
        let mut all = self.normal.clone();
        all.push(self.offset.clone());
        let ints = rational::primitive_integer_vector(&all);
        let mut v: Vec<Rational> = ints.into_iter().map(Rational::from_integer).collect();
        let offset = v.pop().expect("nonempty");
        Halfspace { normal: v, offset }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    Vertices,
    Halfspaces,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepState {
    Vertices,
    Halfspaces,
    Both,
}

#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    vertices: Option<Vec<Point>>,
    halfspaces: Option<Vec<Halfspace>>,
    /// Present once both representations are known: affine dimension and,
    /// for each halfspace, the sorted indices of vertices tight on it.
    structure: Option<Structure>,
}

#[derive(Clone, Debug)]
struct Structure {
    affine_dim: usize,
    incidence: Vec<Vec<usize>>,
}

fn check_len(dim: usize, len: usize) -> Result<()> {
    if dim != len {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: len,
        });
    }
    Ok(())
}

impl Polytope {
    pub fn from_vertices(dim: usize, vertices: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        if vertices.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        for v in &vertices {
            check_len(dim, v.len())?;
        }
        let mut vertices = vertices;
        vertices.sort();
        vertices.dedup();
        Ok(Polytope {
            dim,
            vertices: Some(vertices),
            halfspaces: None,
            structure: None,
        })
    }

    pub fn from_halfspaces(dim: usize, halfspaces: Vec<Halfspace>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        let mut kept = Vec::with_capacity(halfspaces.len());
        for h in halfspaces {
            check_len(dim, h.normal.len())?;
            if h.normal.iter().all(Zero::is_zero) {
                if h.offset.is_negative() {
                    return Err(Error::EmptyPolytope);
                }
                continue;
            }
            kept.push(h);
        }
        Ok(Polytope {
            dim,
            vertices: None,
            halfspaces: Some(kept),
            structure: None,
        })
    }

    /// Both representations at once; they are checked against each other.
    pub fn from_both(dim: usize, vertices: Vec<Point>, halfspaces: Vec<Halfspace>) -> Result<Self> {
        let from_v = Polytope::from_vertices(dim, vertices)?;
        let from_h = Polytope::from_halfspaces(dim, halfspaces)?;
        let given_h = from_h.halfspaces.clone().unwrap_or_default();
        for v in from_v.vertices.as_deref().unwrap_or_default() {
            if let Some(h) = given_h.iter().find(|h| h.slack(v).is_negative()) {
                return Err(Error::InconsistentRepresentation(format!(
                    "vertex {} violates halfspace {}",
                    fmt_point(v),
                    fmt_halfspace(h)
                )));
            }
        }
        let cv = from_v.convert(Representation::Halfspaces)?;
        let ch = from_h.convert(Representation::Vertices)?;
        let mut a = cv.vertices.clone().unwrap_or_default();
        let mut b = ch.vertices.clone().unwrap_or_default();
        a.sort();
        b.sort();
        if a != b {
            return Err(Error::InconsistentRepresentation(
                "vertex set differs from the vertices of the halfspace intersection".into(),
            ));
        }
        Ok(cv)
    }

    /// `conv{±e_1, ..., ±e_n}`.
    pub fn cross_polytope(n: usize) -> Self {
        Self::scaled_cross_polytope(&vec![int(1); n])
    }

    /// `conv{±λ_1 e_1, ..., ±λ_n e_n}`.
    pub fn scaled_cross_polytope(lambdas: &[Rational]) -> Self {
        let n = lambdas.len();
        let mut verts = Vec::with_capacity(2 * n);
        for (i, l) in lambdas.iter().enumerate() {
            for sign in [1, -1] {
                let mut v = vec![int(0); n];
                v[i] = l * int(sign);
                verts.push(v);
            }
        }
        Polytope::from_vertices(n, verts).expect("valid cross-polytope")
    }

    /// The box `prod [lo_i, hi_i]` in halfspace form.
    pub fn coordinate_box(lo: &[Rational], hi: &[Rational]) -> Result<Self> {
        check_len(lo.len(), hi.len())?;
        let n = lo.len();
        if lo.iter().zip(hi).any(|(l, h)| l >= h) {
            return Err(Error::FullDimRequired { dim: n, affine_dim: 0 });
        }
        let mut hs = Vec::with_capacity(2 * n);
        for i in 0..n {
            let mut a = vec![int(0); n];
            a[i] = int(1);
            hs.push(Halfspace::new(a.clone(), hi[i].clone()));
            a[i] = int(-1);
            hs.push(Halfspace::new(a, -lo[i].clone()));
        }
        Polytope::from_halfspaces(n, hs)
    }

    /// `[-1, 1]^n`.
    pub fn cube(n: usize) -> Self {
        Self::coordinate_box(&vec![int(-1); n], &vec![int(1); n]).expect("valid cube")
    }

    /// `conv{0, e_1, ..., e_n}`.
    pub fn standard_simplex(n: usize) -> Self {
        let mut verts = vec![vec![int(0); n]];
        for i in 0..n {
            let mut v = vec![int(0); n];
            v[i] = int(1);
            verts.push(v);
        }
        Polytope::from_vertices(n, verts).expect("valid simplex")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> Option<&[Point]> {
        self.vertices.as_deref()
    }

    pub fn halfspaces(&self) -> Option<&[Halfspace]> {
        self.halfspaces.as_deref()
    }

    pub fn rep_state(&self) -> RepState {
        match (&self.vertices, &self.halfspaces) {
            (Some(_), Some(_)) => RepState::Both,
            (Some(_), None) => RepState::Vertices,
            _ => RepState::Halfspaces,
        }
    }

    /// Affine dimension, known once both representations are present.
    pub fn affine_dim(&self) -> Option<usize> {
        self.structure.as_ref().map(|s| s.affine_dim)
    }

    pub fn is_full_dimensional(&self) -> Option<bool> {
        self.affine_dim().map(|d| d == self.dim)
    }

    /// For each halfspace, the sorted indices of the vertices on its boundary.
    pub fn incidence(&self) -> Option<&[Vec<usize>]> {
        self.structure.as_ref().map(|s| s.incidence.as_slice())
    }

    /// Adds the `target` representation (and whichever is missing), with
    /// redundancy removed. Errors on lower-dimensional bodies.
    pub fn convert(&self, target: Representation) -> Result<Polytope> {
        self.convert_with_cap(target, DEFAULT_DIMENSION_CAP)
    }

    pub fn convert_with_cap(&self, _target: Representation, cap: usize) -> Result<Polytope> {
        if self.dim > cap {
            return Err(Error::DimensionTooLarge { dim: self.dim, cap });
        }
        let p = self.completed(false)?;
        Ok(p)
    }

    /// Borrowed if already complete, converted otherwise.
    pub fn complete(&self) -> Result<Cow<'_, Polytope>> {
        if self.structure.is_some() {
            Ok(Cow::Borrowed(self))
        } else {
            Ok(Cow::Owned(self.convert(Representation::Vertices)?))
        }
    }

    fn completed(&self, allow_degenerate: bool) -> Result<Polytope> {
        if let Some(s) = &self.structure {
            if s.affine_dim < self.dim && !allow_degenerate {
                return Err(Error::FullDimRequired {
                    dim: self.dim,
                    affine_dim: s.affine_dim,
                });
            }
            return Ok(self.clone());
        }
        match (&self.vertices, &self.halfspaces) {
            (Some(v), _) => complete_from_vertices(self.dim, v),
            (None, Some(h)) => complete_from_halfspaces(self.dim, h, allow_degenerate),
            (None, None) => Err(Error::MissingRepresentation),
        }
    }

    /// Exact volume in `R^dim`; 0 for the lower-dimensional sets produced by
    /// degenerate coordinate sections.
    pub fn volume(&self) -> Result<Rational> {
        self.volume_with(ApexRule::First)
    }

    /// Volume with an explicit choice of pulled vertex during triangulation.
    pub fn volume_with(&self, rule: ApexRule) -> Result<Rational> {
        let p = self.complete()?;
        let s = p.structure.as_ref().expect("complete");
        if s.affine_dim < p.dim {
            return Ok(int(0));
        }
        let verts = p.vertices.as_deref().expect("complete");
        Ok(volume::fan_volume(verts, &s.incidence, p.dim, rule, 0.0))
    }

    /// `{x in P : x_j = 0 for j not in sigma}` in the coordinates of `sigma`.
    ///
    /// Sections without interior come back as lower-dimensional polytopes of
    /// volume 0; an empty section is [`Error::EmptySection`].
    pub fn coordinate_section(&self, sigma: &CoordSet) -> Result<Polytope> {
        check_len(self.dim, sigma.ambient_dim())?;
        let p = self.complete()?;
        if sigma.is_full() {
            return Ok(p.into_owned());
        }
        let idx = sigma.indices();
        let mut hs = Vec::new();
        for h in p.halfspaces.as_deref().expect("complete") {
            let a: Vec<Rational> = idx.iter().map(|&j| h.normal[j].clone()).collect();
            if a.iter().all(Zero::is_zero) {
                if h.offset.is_negative() {
                    return Err(Error::EmptySection);
                }
                continue;
            }
            hs.push(Halfspace::new(a, h.offset.clone()));
        }
        let section = Polytope::from_halfspaces(idx.len(), hs)?;
        section.completed(true).map_err(|e| match e {
            Error::EmptyPolytope => Error::EmptySection,
            e => e,
        })
    }

    /// Orthogonal projection onto the coordinate subspace of `sigma`.
    pub fn coordinate_projection(&self, sigma: &CoordSet) -> Result<Polytope> {
        check_len(self.dim, sigma.ambient_dim())?;
        let p = self.complete()?;
        if sigma.is_full() {
            return Ok(p.into_owned());
        }
        let idx = sigma.indices();
        let verts: Vec<Point> = p
            .vertices
            .as_deref()
            .expect("complete")
            .iter()
            .map(|v| idx.iter().map(|&j| v[j].clone()).collect())
            .collect();
        Polytope::from_vertices(idx.len(), verts)?.completed(false)
    }

    /// `true` iff every facet inequality has a strictly positive offset.
    pub fn has_zero_interior(&self) -> Result<bool> {
        let hs = match &self.halfspaces {
            Some(h) => Cow::Borrowed(h.as_slice()),
            None => Cow::Owned(self.complete()?.halfspaces.clone().expect("complete")),
        };
        Ok(hs.iter().all(|h| h.offset.is_positive()))
    }

    /// `min{t > 0 : y in tP}`, the gauge of `P` at `y`.
    pub fn minkowski_functional(&self, y: &[Rational]) -> Result<Rational> {
        check_len(self.dim, y.len())?;
        if !self.has_zero_interior()? {
            return Err(Error::ZeroNotInterior);
        }
        let p = self.complete()?;
        let best = p
            .halfspaces
            .as_deref()
            .expect("complete")
            .iter()
            .map(|h| dot(&h.normal, y) / &h.offset)
            .fold(int(0), |m, v| if v > m { v } else { m });
        Ok(best)
    }

    /// Exact membership through the halfspace representation.
    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        check_len(self.dim, x.len())?;
        let p = self.complete()?;
        Ok(p
            .halfspaces
            .as_deref()
            .expect("complete")
            .iter()
            .all(|h| !h.slack(x).is_negative()))
    }

    /// `max_{v in P} <u, v>`.
    pub fn support(&self, u: &[Rational]) -> Result<Rational> {
        check_len(self.dim, u.len())?;
        let p = self.complete()?;
        let verts = p.vertices.as_deref().expect("complete");
        Ok(verts
            .iter()
            .map(|v| dot(u, v))
            .max()
            .expect("nonempty vertex list"))
    }

    /// Boundedness of the halfspace representation, by maximizing `±x_j`.
    pub fn is_bounded(&self) -> Result<bool> {
        match &self.halfspaces {
            Some(h) => halfspaces_bounded(self.dim, h),
            None => Ok(true),
        }
    }

    /// Image under the linear map `x -> m x` (vertex representation).
    pub fn linear_image(&self, m: &[Vec<Rational>]) -> Result<Polytope> {
        check_len(self.dim, m.len())?;
        let p = self.complete()?;
        let verts = p
            .vertices
            .as_deref()
            .expect("complete")
            .iter()
            .map(|v| m.iter().map(|row| dot(row, v)).collect())
            .collect();
        Polytope::from_vertices(self.dim, verts)
    }

    pub fn translate(&self, t: &[Rational]) -> Result<Polytope> {
        check_len(self.dim, t.len())?;
        let p = self.complete()?;
        let verts = p
            .vertices
            .as_deref()
            .expect("complete")
            .iter()
            .map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect())
            .collect();
        Polytope::from_vertices(self.dim, verts)?.completed(false)
    }

    pub fn scale(&self, t: &Rational) -> Result<Polytope> {
        let m: Vec<Vec<Rational>> = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| if i == j { t.clone() } else { int(0) })
                    .collect()
            })
            .collect();
        self.linear_image(&m)?.completed(false)
    }

    /// Relabels coordinates: coordinate `i` of the input becomes `perm[i]`.
    pub fn permute_coords(&self, perm: &[usize]) -> Result<Polytope> {
        check_len(self.dim, perm.len())?;
        let p = self.complete()?;
        let verts = p
            .vertices
            .as_deref()
            .expect("complete")
            .iter()
            .map(|v| {
                let mut w = vec![int(0); self.dim];
                for (i, x) in v.iter().enumerate() {
                    w[perm[i]] = x.clone();
                }
                w
            })
            .collect();
        Polytope::from_vertices(self.dim, verts)?.completed(false)
    }

    /// Vertex coordinates as floats (converting if needed).
    pub fn float_vertices(&self) -> Result<Vec<Vec<f64>>> {
        let p = self.complete()?;
        Ok(p.vertices
            .as_deref()
            .expect("complete")
            .iter()
            .map(|v| v.iter().map(rational::to_f64).collect())
            .collect())
    }
}

fn fmt_point(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(rational::format_rational).collect();
    format!("({})", parts.join(", "))
}

fn fmt_halfspace(h: &Halfspace) -> String {
    format!("{} . x <= {}", fmt_point(&h.normal), rational::format_rational(&h.offset))
}

fn to_int_row(v: &[Rational]) -> Vec<BigInt> {
    rational::primitive_integer_vector(v)
}

fn incidence_of(vertices: &[Point], halfspaces: &[Halfspace]) -> Vec<Vec<usize>> {
    halfspaces
        .iter()
        .map(|h| {
            (0..vertices.len())
                .filter(|&i| h.slack(&vertices[i]).is_zero())
                .collect()
        })
        .collect()
}

fn complete_from_vertices(dim: usize, input: &[Point]) -> Result<Polytope> {
    let rows: Vec<Vec<BigInt>> = input
        .iter()
        .map(|v| {
            let mut r = vec![int(1)];
            r.extend(v.iter().cloned());
            to_int_row(&r)
        })
        .collect();
    let rays = dd::extreme_rays(&rows).map_err(|dd::RankDeficient(r)| Error::FullDimRequired {
        dim,
        affine_dim: r.saturating_sub(1),
    })?;
    let mut halfspaces: Vec<Halfspace> = rays
        .into_iter()
        .map(|y| {
            let b = Rational::from_integer(y[0].clone());
            let a = y[1..].iter().map(|x| Rational::from_integer(-x)).collect();
            Halfspace::new(a, b)
        })
        .collect();
    halfspaces.sort_by(|a, b| (&a.normal, &a.offset).cmp(&(&b.normal, &b.offset)));

    // Keep only extreme input points: tight facet normals must span R^dim.
    let incidence = incidence_of(input, &halfspaces);
    let mut tight_for: Vec<Vec<usize>> = vec![Vec::new(); input.len()];
    for (f, verts) in incidence.iter().enumerate() {
        for &v in verts {
            tight_for[v].push(f);
        }
    }
    let vertices: Vec<Point> = input
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            let normals: Vec<Vec<Rational>> = tight_for[*i]
                .iter()
                .map(|&f| halfspaces[f].normal.clone())
                .collect();
            rank(&normals, 0.0) == dim
        })
        .map(|(_, v)| v.clone())
        .collect();
    let incidence = incidence_of(&vertices, &halfspaces);
    Ok(Polytope {
        dim,
        vertices: Some(vertices),
        halfspaces: Some(halfspaces),
        structure: Some(Structure {
            affine_dim: dim,
            incidence,
        }),
    })
}

fn halfspaces_bounded(dim: usize, hs: &[Halfspace]) -> Result<bool> {
    let mut lp = LinearProgram::<Rational>::new(dim);
    lp.free = vec![true; dim];
    for h in hs {
        lp.add(h.normal.clone(), Relation::Le, h.offset.clone());
    }
    if lp.feasible_point(0.0).is_none() {
        return Err(Error::EmptyPolytope);
    }
    for j in 0..dim {
        for sign in [1, -1] {
            let mut obj = vec![int(0); dim];
            obj[j] = int(sign);
            lp.objective = obj;
            if lp.maximize(0.0) == LpOutcome::Unbounded {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn complete_from_halfspaces(dim: usize, hs: &[Halfspace], allow_degenerate: bool) -> Result<Polytope> {
    if !halfspaces_bounded(dim, hs)? {
        return Err(Error::UnboundedPolytope);
    }
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(hs.len() + 1);
    let mut homog = vec![int(1)];
    homog.extend(std::iter::repeat_with(|| int(0)).take(dim));
    rows.push(to_int_row(&homog));
    for h in hs {
        let mut r = vec![h.offset.clone()];
        r.extend(h.normal.iter().map(|x| -x));
        rows.push(to_int_row(&r));
    }
    let rays = dd::extreme_rays(&rows).map_err(|_| Error::UnboundedPolytope)?;
    let mut vertices = Vec::with_capacity(rays.len());
    for y in rays {
        if y[0].is_zero() {
            return Err(Error::UnboundedPolytope);
        }
        let x0 = Rational::from_integer(y[0].clone());
        vertices.push(
            y[1..]
                .iter()
                .map(|x| Rational::from_integer(x.clone()) / &x0)
                .collect::<Point>(),
        );
    }
    if vertices.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    vertices.sort();
    let refs: Vec<&[Rational]> = vertices.iter().map(Vec::as_slice).collect();
    let affine_dim = affine_rank(&refs, 0.0);
    if affine_dim < dim {
        if !allow_degenerate {
            return Err(Error::FullDimRequired { dim, affine_dim });
        }
        let halfspaces: Vec<Halfspace> = hs.iter().map(Halfspace::normalized).collect();
        let incidence = incidence_of(&vertices, &halfspaces);
        return Ok(Polytope {
            dim,
            vertices: Some(vertices),
            halfspaces: Some(halfspaces),
            structure: Some(Structure {
                affine_dim,
                incidence,
            }),
        });
    }
    // Facets: inequalities tight on an affinely (dim-1)-dimensional vertex set.
    let mut seen = std::collections::HashSet::new();
    let mut halfspaces = Vec::new();
    for h in hs {
        let tight: Vec<usize> = (0..vertices.len())
            .filter(|&i| h.slack(&vertices[i]).is_zero())
            .collect();
        if tight.len() < dim || !seen.insert(tight.clone()) {
            continue;
        }
        let pts: Vec<&[Rational]> = tight.iter().map(|&i| vertices[i].as_slice()).collect();
        if affine_rank(&pts, 0.0) + 1 == dim {
            halfspaces.push(h.normalized());
        }
    }
    halfspaces.sort_by(|a, b| (&a.normal, &a.offset).cmp(&(&b.normal, &b.offset)));
    let incidence = incidence_of(&vertices, &halfspaces);
    Ok(Polytope {
        dim,
        vertices: Some(vertices),
        halfspaces: Some(halfspaces),
        structure: Some(Structure {
            affine_dim,
            incidence,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn pt(v: &[i64]) -> Point {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn basic_volumes() {
        assert_eq!(Polytope::cross_polytope(2).volume().unwrap(), int(2));
        assert_eq!(Polytope::cross_polytope(3).volume().unwrap(), rat(4, 3));
        assert_eq!(Polytope::cube(3).volume().unwrap(), int(8));
        assert_eq!(Polytope::standard_simplex(3).volume().unwrap(), rat(1, 6));
        assert_eq!(Polytope::cross_polytope(5).volume().unwrap(), rat(32, 120));
    }

    #[test]
    fn conversion_of_cross_polytope_and_cube() {
        let h = Polytope::cross_polytope(2).convert(Representation::Halfspaces).unwrap();
        let mut got: Vec<(Vec<Rational>, Rational)> = h
            .halfspaces()
            .unwrap()
            .iter()
            .map(|h| (h.normal.clone(), h.offset.clone()))
            .collect();
        got.sort();
        let mut want = Vec::new();
        for a in [-1, 1] {
            for b in [-1, 1] {
                want.push((pt(&[a, b]), int(1)));
            }
        }
        want.sort();
        assert_eq!(got, want);

        let v = Polytope::cube(4).convert(Representation::Vertices).unwrap();
        assert_eq!(v.vertices().unwrap().len(), 16);
    }

    #[test]
    fn interior_points_are_pruned() {
        let p = Polytope::from_vertices(
            2,
            vec![pt(&[0, 0]), pt(&[2, 0]), pt(&[0, 2]), pt(&[1, 1]), pt(&[1, 0]), pt(&[0, 1])],
        )
        .unwrap();
        let c = p.convert(Representation::Halfspaces).unwrap();
        assert_eq!(c.vertices().unwrap().len(), 3);
        assert_eq!(c.halfspaces().unwrap().len(), 3);
        assert_eq!(c.volume().unwrap(), int(2));
    }

    #[test]
    fn redundant_halfspaces_are_pruned() {
        let mut hs = Polytope::cube(2).halfspaces().unwrap().to_vec();
        hs.push(Halfspace::new(pt(&[1, 1]), int(5)));
        hs.push(Halfspace::new(pt(&[2, 0]), int(2)));
        let c = Polytope::from_halfspaces(2, hs).unwrap().convert(Representation::Vertices).unwrap();
        assert_eq!(c.halfspaces().unwrap().len(), 4);
    }

    #[test]
    fn error_paths() {
        let unbounded = Polytope::from_halfspaces(2, vec![Halfspace::new(pt(&[1, 0]), int(1))]).unwrap();
        assert_eq!(unbounded.volume(), Err(Error::UnboundedPolytope));
        assert_eq!(unbounded.is_bounded(), Ok(false));
        let empty = Polytope::from_halfspaces(
            1,
            vec![Halfspace::new(pt(&[1]), int(-1)), Halfspace::new(pt(&[-1]), int(-1))],
        )
        .unwrap();
        assert_eq!(empty.volume(), Err(Error::EmptyPolytope));
        let flat = Polytope::from_vertices(2, vec![pt(&[0, 0]), pt(&[1, 1]), pt(&[2, 2])]).unwrap();
        assert!(matches!(flat.volume(), Err(Error::FullDimRequired { affine_dim: 1, .. })));
        let big = Polytope::cube(11);
        assert_eq!(
            big.convert(Representation::Vertices).unwrap_err(),
            Error::DimensionTooLarge { dim: 11, cap: 10 }
        );
    }

    #[test]
    fn sections_and_projections() {
        let cube = Polytope::cube(3);
        let s = CoordSet::parse(3, "1,2").unwrap();
        assert_eq!(cube.coordinate_section(&s).unwrap().volume().unwrap(), int(4));
        assert_eq!(cube.coordinate_projection(&s).unwrap().volume().unwrap(), int(4));
        let b = Polytope::cross_polytope(3);
        let s13 = CoordSet::parse(3, "1,3").unwrap();
        assert_eq!(b.coordinate_section(&s13).unwrap().volume().unwrap(), int(2));
        assert_eq!(b.coordinate_projection(&s13).unwrap().volume().unwrap(), int(2));
    }

    #[test]
    fn degenerate_and_empty_sections() {
        // Simplex conv{0, e1, e2}: section with x2 = 0 is the segment [0,1].
        let simplex = Polytope::standard_simplex(2);
        let s1 = CoordSet::parse(2, "1").unwrap();
        assert_eq!(simplex.coordinate_section(&s1).unwrap().volume().unwrap(), int(1));
        // conv{(0,0,0), (1,0,0), (0,1,1), (0,1,-1)}... simpler: triangle touching the x1-axis in one point.
        let tri = Polytope::from_vertices(2, vec![pt(&[0, 0]), pt(&[1, 1]), pt(&[-1, 1])]).unwrap();
        let sec = tri.coordinate_section(&s1).unwrap();
        assert_eq!(sec.affine_dim(), Some(0));
        assert_eq!(sec.volume().unwrap(), int(0));
        let shifted = Polytope::from_vertices(2, vec![pt(&[0, 1]), pt(&[1, 2]), pt(&[-1, 2])]).unwrap();
        assert_eq!(shifted.coordinate_section(&s1).unwrap_err(), Error::EmptySection);
    }

    #[test]
    fn gauge_and_interior() {
        let b = Polytope::cross_polytope(3);
        assert_eq!(b.minkowski_functional(&pt(&[1, 0, 0])).unwrap(), int(1));
        assert_eq!(b.minkowski_functional(&pt(&[0, 0, 0])).unwrap(), int(0));
        let c = Polytope::cube(2);
        assert_eq!(c.minkowski_functional(&pt(&[1, 1])).unwrap(), int(1));
        assert_eq!(c.minkowski_functional(&[rat(1, 2), rat(-1, 3)]).unwrap(), rat(1, 2));
        assert!(b.has_zero_interior().unwrap());
        assert!(!Polytope::standard_simplex(2).has_zero_interior().unwrap());
        let moved = c.translate(&pt(&[3, 0])).unwrap();
        assert!(!moved.has_zero_interior().unwrap());
        assert_eq!(moved.minkowski_functional(&pt(&[1, 0])), Err(Error::ZeroNotInterior));
    }

    #[test]
    fn consistent_dual_representation_is_accepted() {
        let c = Polytope::cube(2).convert(Representation::Vertices).unwrap();
        let ok = Polytope::from_both(2, c.vertices().unwrap().to_vec(), c.halfspaces().unwrap().to_vec());
        assert!(ok.is_ok());
        let mut verts = c.vertices().unwrap().to_vec();
        verts.pop();
        let bad = Polytope::from_both(2, verts, c.halfspaces().unwrap().to_vec());
        assert!(matches!(bad, Err(Error::InconsistentRepresentation(_))));
    }
}
