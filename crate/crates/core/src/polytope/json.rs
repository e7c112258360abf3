//! JSON form of a polytope:
//! `{"dim": n, "vertices": [["p/q", ...], ...]}` and/or
//! `{"halfspaces": [{"a": ["p/q", ...], "b": "p/q"}, ...]}`.

use serde::{Deserialize, Serialize};

use super::{Halfspace, Point, Polytope};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(transparent)]
struct RationalVec(#[serde(with = "rational::serde_rational_vec")] Vec<Rational>);

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<RationalVec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    halfspaces: Option<Vec<Halfspace>>,
}

impl TryFrom<PolytopeJson> for Polytope {
    type Error = Error;

    fn try_from(j: PolytopeJson) -> Result<Polytope> {
        let inferred = j
            .vertices
            .as_ref()
            .and_then(|v| v.first().map(|p| p.0.len()))
            .or_else(|| j.halfspaces.as_ref().and_then(|h| h.first().map(|h| h.normal.len())));
        let dim = j
            .dim
            .or(inferred)
            .ok_or_else(|| Error::Parse("cannot determine dimension".into()))?;
        let verts: Option<Vec<Point>> = j.vertices.map(|v| v.into_iter().map(|p| p.0).collect());
        match (verts, j.halfspaces) {
            (Some(v), Some(h)) => Polytope::from_both(dim, v, h),
            (Some(v), None) => Polytope::from_vertices(dim, v),
            (None, Some(h)) => Polytope::from_halfspaces(dim, h),
            (None, None) => Err(Error::MissingRepresentation),
        }
    }
}

impl From<&Polytope> for PolytopeJson {
    fn from(p: &Polytope) -> Self {
        PolytopeJson {
            dim: Some(p.dim()),
            vertices: p
                .vertices()
                .map(|v| v.iter().map(|x| RationalVec(x.clone())).collect()),
            halfspaces: p.halfspaces().map(<[Halfspace]>::to_vec),
        }
    }
}

impl Serialize for Polytope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolytopeJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polytope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolytopeJson::deserialize(d)?;
        Polytope::try_from(j).map_err(serde::de::Error::custom)
    }
}

impl Polytope {
    pub fn from_json_str(text: &str) -> Result<Polytope> {
        let j: PolytopeJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Polytope::try_from(j)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("polytope serializes")
    }
}
