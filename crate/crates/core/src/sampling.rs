//! Training and testing point sets on the unit square.
//!
//! All structured grids are tensor products of a 1-D coordinate sequence, so
//! `K` always yields exactly `K²` points. The random grid draws `K²` points
//! independently from a seeded ChaCha8 stream.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mlp::Point;

/// Per-axis resolution of the fixed test grid.
pub const TEST_GRID_RESOLUTION: usize = 21;

/// Name of the generator behind [`GridKind::Random`], recorded in experiment metadata.
pub const RANDOM_GRID_RNG: &str = "chacha8";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridKind {
    /// Equispaced, endpoints included.
    Uniform,
    /// Cosine-clustered towards both edges of each axis.
    BoundaryDense,
    /// Clustered towards the middle of each axis.
    InteriorDense,
    /// Independent uniform draws.
    Random,
}

impl GridKind {
    pub const ALL: [GridKind; 4] = [
        GridKind::Uniform,
        GridKind::BoundaryDense,
        GridKind::InteriorDense,
        GridKind::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GridKind::Uniform => "uniform",
            GridKind::BoundaryDense => "boundary-dense",
            GridKind::InteriorDense => "interior-dense",
            GridKind::Random => "random",
        }
    }
}

impl fmt::Display for GridKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GridKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown grid kind {s:?}")))
    }
}

/// Recipe for a point set of `resolution²` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSpec {
    pub kind: GridKind,
    pub resolution: usize,
    /// Only consulted by [`GridKind::Random`].
    pub seed: u64,
}

impl GridSpec {
    pub fn new(kind: GridKind, resolution: usize, seed: u64) -> Self {
        Self { kind, resolution, seed }
    }

    pub fn uniform(resolution: usize) -> Self {
        Self::new(GridKind::Uniform, resolution, 0)
    }

    /// Number of points the spec generates.
    pub fn size(&self) -> usize {
        self.resolution * self.resolution
    }
}

/// An ordered collection of points, optionally tagged with the recipe that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<Point>,
    spec: Option<GridSpec>,
}

impl PointSet {
    /// Wraps an arbitrary list of points (no generating recipe).
    pub fn from_points(points: Vec<Point>) -> Self {
        Self { points, spec: None }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn spec(&self) -> Option<&GridSpec> {
        self.spec.as_ref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// The 1-D coordinate sequence of a structured grid kind.
///
/// Returns `None` for [`GridKind::Random`], which has no tensor structure.
pub fn axis_coordinates(kind: GridKind, resolution: usize) -> Option<Vec<f64>> {
    let last = (resolution - 1) as f64;
    let map: fn(f64) -> f64 = match kind {
        GridKind::Uniform => |t| t,
        GridKind::BoundaryDense => |t| (1.0 - (PI * t).cos()) / 2.0,
        GridKind::InteriorDense => |t| (1.0 - 2.0 * t).acos() / PI,
        GridKind::Random => return None,
    };
    Some(
        (0..resolution)
            .map(|i| {
                // Pin the endpoints exactly; acos/cos round-trips are not exact.
                if i == 0 {
                    0.0
                } else if i == resolution - 1 {
                    1.0
                } else {
                    map(i as f64 / last).clamp(0.0, 1.0)
                }
            })
            .collect(),
    )
}

/// Generates the point set described by `spec`.
///
/// Structured grids are emitted with `x1` varying slowest.
pub fn generate(spec: GridSpec) -> Result<PointSet> {
    if spec.resolution < 2 {
        return Err(Error::InvalidArgument(format!(
            "grid resolution must be at least 2, got {}",
            spec.resolution
        )));
    }
    let points = match axis_coordinates(spec.kind, spec.resolution) {
        Some(axis) => axis
            .iter()
            .flat_map(|&x1| axis.iter().map(move |&x2| Point::xy(x1, x2)))
            .collect::<Result<Vec<_>>>()?,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            (0..spec.size())
                .map(|_| {
                    let x1 = rng.gen_range(0.0..=1.0);
                    let x2 = rng.gen_range(0.0..=1.0);
                    Point::xy(x1, x2)
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(PointSet {
        points,
        spec: Some(spec),
    })
}

/// The fixed 21×21 uniform evaluation grid (441 points, boundary included).
pub fn test_grid() -> PointSet {
    generate(GridSpec::uniform(TEST_GRID_RESOLUTION)).expect("fixed resolution is valid")
}
