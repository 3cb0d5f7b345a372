//! Point clouds and exact nearest-neighbor queries.

mod kdtree;

pub use kdtree::SpatialIndex;

use std::hash::{Hash, Hasher};

use crate::{Error, Mat3, Result, Vec3};

/// An ordered, non-empty list of finite 3D positions.
///
/// Index `i` always refers to the same point; nothing in the crate reorders
/// a cloud in place.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<Vec3>,
}

impl PointCloud {
    pub fn new(points: Vec<Vec3>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyCloud);
        }
        if let Some(index) = points
            .iter()
            .position(|p| !p.iter().all(|c| c.is_finite()))
        {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { points })
    }

    pub fn from_rows(rows: &[[f64; 3]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| Vec3::new(r[0], r[1], r[2])).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec3] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Vec3 {
        &self.points[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vec3> {
        self.points.iter()
    }

    pub fn into_points(self) -> Vec<Vec3> {
        self.points
    }

    pub fn to_rows(&self) -> Vec<[f64; 3]> {
        self.points.iter().map(|p| [p.x, p.y, p.z]).collect()
    }

    /// `R·p + t` for every point.
    pub fn transformed(&self, rotation: &Mat3, translation: &Vec3) -> PointCloud {
        PointCloud {
            points: self
                .points
                .iter()
                .map(|p| rotation * p + translation)
                .collect(),
        }
    }

    /// Adds a per-point offset. `offsets` must have one row per point.
    pub fn displaced(&self, offsets: &[Vec3]) -> Result<PointCloud> {
        if offsets.len() != self.len() {
            return Err(Error::SizeMismatch {
                left: self.len(),
                right: offsets.len(),
            });
        }
        PointCloud::new(
            self.points
                .iter()
                .zip(offsets)
                .map(|(p, f)| p + f)
                .collect(),
        )
    }

    /// Hash over the exact bit patterns of every coordinate.
    pub(crate) fn fingerprint(&self) -> u64 {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.points.len().hash(&mut h);
        for p in &self.points {
            for c in p.iter() {
                c.to_bits().hash(&mut h);
            }
        }
        h.finish()
    }
}

impl std::ops::Index<usize> for PointCloud {
    type Output = Vec3;

    fn index(&self, i: usize) -> &Vec3 {
        &self.points[i]
    }
}

impl<'a> IntoIterator for &'a PointCloud {
    type Item = &'a Vec3;
    type IntoIter = std::slice::Iter<'a, Vec3>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// The `k` nearest points of a query, sorted by ascending distance with ties
/// broken by smaller point index.
#[derive(Debug, Clone, PartialEq)]
pub struct Neighborhood {
    pub indices: Vec<usize>,
    pub distances: Vec<f64>,
}

impl Neighborhood {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Builds an exact spatial index over `cloud`.
pub fn build_index(cloud: &PointCloud) -> SpatialIndex {
    SpatialIndex::new(cloud)
}
