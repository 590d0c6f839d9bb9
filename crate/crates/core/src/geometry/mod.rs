//! Planar five-point configurations and the distance geometry around them.
//!
//! Labels are 1-based throughout (`1..=5`) so that index names in code match
//! the usual `q_1 .. q_5` naming of the bodies.

mod chain;
mod sign_type;
mod symmetric;

pub use chain::{cyclic_from_angles, interior_angle, ChainAngles, Closure};
pub use sign_type::{
    classify_sign_type, sign_type_windows, Degeneracy, SignType, SignTypeWindow,
};
pub use symmetric::{
    symmetric_coords, symmetric_quantities, Branch, SymmetricQuantities, SymmetricShape,
    Y4_MAX,
};

use nalgebra::Matrix5;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative distance below which two points count as coincident.
pub const COLLISION_TOL: f64 = 1e-12;

/// Relative spread of the five cycle edges tolerated by the equilateral test.
pub const EQUILATERAL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }

    pub fn wedge(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// Five labeled points in the plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanarConfiguration {
    pub points: [Point2; 5],
}

fn check_label(i: usize) -> Result<usize> {
    if (1..=5).contains(&i) {
        Ok(i - 1)
    } else {
        Err(Error::InvalidArgument(format!("label {i} outside 1..=5")))
    }
}

impl PlanarConfiguration {
    pub fn new(points: [Point2; 5]) -> Self {
        PlanarConfiguration { points }
    }

    /// Configuration with `q1 = (-1/2, 0)` and `q2 = (1/2, 0)`.
    pub fn normalized(q3: Point2, q4: Point2, q5: Point2) -> Self {
        PlanarConfiguration {
            points: [Point2::new(-0.5, 0.0), Point2::new(0.5, 0.0), q3, q4, q5],
        }
    }

    pub fn point(&self, label: usize) -> Result<Point2> {
        Ok(self.points[check_label(label)?])
    }

    /// Largest distance from the centroid, used as the length scale.
    pub fn scale(&self) -> f64 {
        let cx = self.points.iter().map(|p| p.x).sum::<f64>() / 5.0;
        let cy = self.points.iter().map(|p| p.y).sum::<f64>() / 5.0;
        self.points
            .iter()
            .map(|p| (p.x - cx).hypot(p.y - cy))
            .fold(0.0, f64::max)
    }

    /// Image under the similarity sending `q1`, `q2` to `(∓1/2, 0)`.
    pub fn normalize(&self) -> Result<Self> {
        let (p1, p2) = (self.points[0], self.points[1]);
        let e = p2.sub(p1);
        let len = e.norm();
        if len <= COLLISION_TOL * self.scale().max(f64::MIN_POSITIVE) {
            return Err(Error::Collision(1, 2));
        }
        let (c, s) = (e.x / len, e.y / len);
        let mid = Point2::new(0.5 * (p1.x + p2.x), 0.5 * (p1.y + p2.y));
        let map = |p: Point2| {
            let d = p.sub(mid);
            Point2::new((c * d.x + s * d.y) / len, (-s * d.x + c * d.y) / len)
        };
        Ok(PlanarConfiguration {
            points: self.points.map(map),
        })
    }

    /// Uniform scaling about the origin.
    pub fn scaled(&self, factor: f64) -> Self {
        PlanarConfiguration {
            points: self
                .points
                .map(|p| Point2::new(p.x * factor, p.y * factor)),
        }
    }

    /// Relabels so that the new point `i` is the old point `perm[i-1]`.
    pub fn relabeled(&self, perm: [usize; 5]) -> Result<Self> {
        let mut pts = self.points;
        for (slot, &src) in pts.iter_mut().zip(perm.iter()) {
            *slot = self.points[check_label(src)?];
        }
        Ok(PlanarConfiguration { points: pts })
    }

    /// All ten oriented areas `Δ_{i,j,k}` with `i < j < k` are nonzero and
    /// share one sign.
    pub fn is_strictly_convex(&self) -> bool {
        let mut sign = 0.0;
        for i in 1..=5 {
            for j in i + 1..=5 {
                for k in j + 1..=5 {
                    let a = oriented_area(self, i, j, k).expect("valid labels");
                    if a == 0.0 {
                        return false;
                    }
                    if sign == 0.0 {
                        sign = a.signum();
                    } else if a.signum() != sign {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Oriented area `Δ_{i,j,k} = (q_i - q_j) ∧ (q_i - q_k)`.
pub fn oriented_area(config: &PlanarConfiguration, i: usize, j: usize, k: usize) -> Result<f64> {
    let (a, b, c) = (check_label(i)?, check_label(j)?, check_label(k)?);
    if a == b || b == c || a == c {
        return Err(Error::InvalidArgument(format!(
            "oriented area needs distinct labels, got ({i}, {j}, {k})"
        )));
    }
    let p = config.points;
    Ok(p[a].sub(p[b]).wedge(p[a].sub(p[c])))
}

/// Symmetric 5×5 table of mutual distances.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceTable(pub [[f64; 5]; 5]);

impl DistanceTable {
    /// `r_{i,j}` for 1-based labels.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[i - 1][j - 1]
    }

    /// Table of an equilateral cyclic pentagon with the given classes.
    pub fn from_classes(d: &DistanceVector) -> Self {
        let mut t = [[0.0; 5]; 5];
        for i in 1..=5 {
            for j in 1..=5 {
                if i != j {
                    t[i - 1][j - 1] = d.get(i, j);
                }
            }
        }
        DistanceTable(t)
    }

    pub fn min_off_diagonal(&self) -> f64 {
        let mut m = f64::INFINITY;
        for i in 0..5 {
            for j in i + 1..5 {
                m = m.min(self.0[i][j]);
            }
        }
        m
    }
}

/// The six distance classes of an equilateral cyclic pentagon, ordered
/// `(r12, r13, r14, r24, r25, r35)`; `r12` is the common edge length.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceVector(pub [f64; 6]);

impl DistanceVector {
    pub const LABELS: [&'static str; 6] = ["r12", "r13", "r14", "r24", "r25", "r35"];

    pub fn new(values: [f64; 6]) -> Result<Self> {
        if values.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidArgument(format!(
                "distance classes must be positive, got {values:?}"
            )));
        }
        Ok(DistanceVector(values))
    }

    /// Class index (0..6) of the unordered pair `{i, j}`.
    pub fn class_of(i: usize, j: usize) -> usize {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        match (a, b) {
            (1, 2) | (2, 3) | (3, 4) | (4, 5) | (1, 5) => 0,
            (1, 3) => 1,
            (1, 4) => 2,
            (2, 4) => 3,
            (2, 5) => 4,
            (3, 5) => 5,
            _ => panic!("no distance class for pair ({i}, {j})"),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[Self::class_of(i, j)]
    }

    pub fn edge(&self) -> f64 {
        self.0[0]
    }

    pub fn diagonals(&self) -> [f64; 5] {
        [self.0[1], self.0[2], self.0[3], self.0[4], self.0[5]]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MutualDistances {
    pub table: DistanceTable,
    /// Present when the five cycle edges agree to [`EQUILATERAL_TOL`].
    pub classes: Option<DistanceVector>,
    /// `(max edge - min edge) / mean edge`.
    pub edge_spread: f64,
}

impl MutualDistances {
    pub fn is_equilateral(&self) -> bool {
        self.classes.is_some()
    }
}

pub const CYCLE_EDGES: [(usize, usize); 5] = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)];

pub fn mutual_distances(config: &PlanarConfiguration) -> Result<MutualDistances> {
    let scale = config.scale();
    let mut t = [[0.0; 5]; 5];
    for i in 0..5 {
        for j in i + 1..5 {
            let d = config.points[i].sub(config.points[j]).norm();
            if !(d > COLLISION_TOL * scale) {
                return Err(Error::Collision(i + 1, j + 1));
            }
            t[i][j] = d;
            t[j][i] = d;
        }
    }
    let table = DistanceTable(t);
    let edges = CYCLE_EDGES.map(|(i, j)| table.get(i, j));
    let emax = edges.iter().cloned().fold(f64::MIN, f64::max);
    let emin = edges.iter().cloned().fold(f64::MAX, f64::min);
    let mean = edges.iter().sum::<f64>() / 5.0;
    let edge_spread = (emax - emin) / mean;
    let classes = (edge_spread <= EQUILATERAL_TOL).then(|| {
        DistanceVector([
            mean,
            table.get(1, 3),
            table.get(1, 4),
            table.get(2, 4),
            table.get(2, 5),
            table.get(3, 5),
        ])
    });
    Ok(MutualDistances {
        table,
        classes,
        edge_spread,
    })
}

/// Cayley-Menger determinant of four points from their six distances,
/// ordered `(d_ij, d_ik, d_il, d_jk, d_jl, d_kl)`. Vanishes for coplanar
/// points; equals `288 V²` for a tetrahedron of volume `V`.
pub fn cayley_menger(d: [f64; 6]) -> f64 {
    let [ij, ik, il, jk, jl, kl] = d.map(|x| x * x);
    Matrix5::new(
        0.0, 1.0, 1.0, 1.0, 1.0, //
        1.0, 0.0, ij, ik, il, //
        1.0, ij, 0.0, jk, jl, //
        1.0, ik, jk, 0.0, kl, //
        1.0, il, jl, kl, 0.0,
    )
    .determinant()
}

/// Cayley-Menger determinant of the four labeled points of a table.
pub fn cayley_menger_of(table: &DistanceTable, [i, j, k, l]: [usize; 4]) -> f64 {
    cayley_menger([
        table.get(i, j),
        table.get(i, k),
        table.get(i, l),
        table.get(j, k),
        table.get(j, l),
        table.get(k, l),
    ])
}

/// The five four-point subsets of `{1..5}`.
pub const FOUR_POINT_SUBSETS: [[usize; 4]; 5] = [
    [1, 2, 3, 4],
    [1, 2, 3, 5],
    [1, 2, 4, 5],
    [1, 3, 4, 5],
    [2, 3, 4, 5],
];
