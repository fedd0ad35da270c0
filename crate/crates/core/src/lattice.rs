//! Integer-lattice primitives: points, squared radii, discrete discs and
//! their digital boundaries, and exact convex hulls.
//!
//! Every radius is carried as its square so that all distance comparisons
//! stay in integer arithmetic.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};

/// A point of the square lattice Z².
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    /// Squared Euclidean norm.
    pub fn norm2(self) -> u64 {
        (self.x * self.x + self.y * self.y) as u64
    }

    /// Squared Euclidean distance to `other`.
    pub fn dist2(self, other: Point) -> u64 {
        (self - other).norm2()
    }

    pub fn l1(self) -> u64 {
        self.x.unsigned_abs() + self.y.unsigned_abs()
    }

    pub fn linf(self) -> u64 {
        self.x.unsigned_abs().max(self.y.unsigned_abs())
    }

    /// The eight Moore neighbours, clockwise from the right.
    pub fn moore_neighbours(self) -> [Point; 8] {
        let Point { x, y } = self;
        [
            Point::new(x + 1, y),
            Point::new(x + 1, y - 1),
            Point::new(x, y - 1),
            Point::new(x - 1, y - 1),
            Point::new(x - 1, y),
            Point::new(x - 1, y + 1),
            Point::new(x, y + 1),
            Point::new(x + 1, y + 1),
        ]
    }

    /// The four von Neumann neighbours.
    pub fn von_neumann_neighbours(self) -> [Point; 4] {
        let Point { x, y } = self;
        [
            Point::new(x + 1, y),
            Point::new(x, y - 1),
            Point::new(x - 1, y),
            Point::new(x, y + 1),
        ]
    }

    /// The eight images of this point under the symmetries of the square.
    pub fn dihedral_images(self) -> [Point; 8] {
        let Point { x, y } = self;
        [
            Point::new(x, y),
            Point::new(-x, y),
            Point::new(x, -y),
            Point::new(-x, -y),
            Point::new(y, x),
            Point::new(-y, x),
            Point::new(y, -x),
            Point::new(-y, -x),
        ]
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point::new(x, y)
    }
}

/// A squared radius `r²` that is a sum of two squares, i.e. one that yields
/// a distinct discrete disc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SquaredRadius(u64);

impl SquaredRadius {
    /// The degenerate radius: a single-point disc.
    pub const ZERO: SquaredRadius = SquaredRadius(0);

    pub fn new(r2: u64) -> Result<Self> {
        if is_representable(r2) {
            Ok(SquaredRadius(r2))
        } else {
            Err(Error::NotRepresentable(r2))
        }
    }

    /// `r²`.
    pub fn get(self) -> u64 {
        self.0
    }

    /// `r' = ⌊r⌋`, computed with an exact integer square root.
    pub fn floor_radius(self) -> u64 {
        self.0.isqrt()
    }

    /// `r` as a float, for reporting only.
    pub fn radius(self) -> f64 {
        (self.0 as f64).sqrt()
    }

    pub fn contains(self, p: Point) -> bool {
        p.norm2() <= self.0
    }
}

impl fmt::Display for SquaredRadius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<u64> for SquaredRadius {
    type Error = Error;
    fn try_from(r2: u64) -> Result<Self> {
        SquaredRadius::new(r2)
    }
}

/// True iff `n = a² + b²` for some non-negative integers `a`, `b`.
pub fn is_representable(n: u64) -> bool {
    let mut a = 0u64;
    while a * a <= n {
        let rest = n - a * a;
        let b = rest.isqrt();
        if b * b == rest {
            return true;
        }
        a += 1;
    }
    false
}

/// All representable `n` with `1 ≤ n ≤ limit`, ascending.
pub fn distinct_radii(limit: u64) -> Vec<SquaredRadius> {
    (1..=limit)
        .filter(|&n| is_representable(n))
        .map(SquaredRadius)
        .collect()
}

/// Closest representable values strictly below and above `n`.
pub fn nearest_representable(n: u64) -> (Option<SquaredRadius>, SquaredRadius) {
    let below = (0..n).rev().find(|&m| is_representable(m)).map(SquaredRadius);
    let above = (n + 1..).find(|&m| is_representable(m)).map(SquaredRadius).unwrap();
    (below, above)
}

/// The discrete disc `ζ^{r²} = {(x, y) : x² + y² ≤ r²}` centred at the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteDisc {
    pub r2: SquaredRadius,
    /// Sorted by `(x, y)`.
    pub points: Vec<Point>,
}

impl DiscreteDisc {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.r2.contains(p)
    }
}

/// The digital boundary of a discrete disc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteCircle {
    pub r2: SquaredRadius,
    /// Sorted by `(x, y)`.
    pub boundary: Vec<Point>,
}

pub fn disc_points(r2: SquaredRadius) -> DiscreteDisc {
    let r = r2.floor_radius() as i64;
    let mut points = Vec::new();
    for x in -r..=r {
        for y in -r..=r {
            let p = Point::new(x, y);
            if r2.contains(p) {
                points.push(p);
            }
        }
    }
    DiscreteDisc { r2, points }
}

/// Disc points that touch the complement through an edge-adjacent
/// neighbour. This is the 8-connected contour that the chain code traces.
pub fn circle_points(r2: SquaredRadius) -> DiscreteCircle {
    let disc = disc_points(r2);
    let boundary = disc
        .points
        .iter()
        .copied()
        .filter(|p| p.von_neumann_neighbours().iter().any(|&q| !r2.contains(q)))
        .collect();
    DiscreteCircle { r2, boundary }
}

fn cross(o: Point, a: Point, b: Point) -> i64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Convex hull vertices in counter-clockwise order, starting from the
/// lexicographically smallest vertex. Collinear points are dropped.
pub fn convex_hull(points: &[Point]) -> Result<Vec<Point>> {
    let pts: Vec<Point> = points.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if pts.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if pts.len() < 3 {
        return Ok(pts);
    }
    let mut hull: Vec<Point> = Vec::with_capacity(pts.len() + 1);
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    Ok(hull)
}

/// A finite axis-aligned rectangle of lattice points. Cells are stored
/// row-major from the bottom row (`min.y`) upwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    pub min: Point,
    pub width: u32,
    pub height: u32,
}

impl Window {
    pub fn new(min: Point, width: u32, height: u32) -> Self {
        Window { min, width, height }
    }

    /// The square `[c - half, c + half]²`.
    pub fn centred(centre: Point, half: u64) -> Self {
        let h = half as i64;
        let side = 2 * half as u32 + 1;
        Window::new(Point::new(centre.x - h, centre.y - h), side, side)
    }

    /// Smallest window containing both.
    pub fn union(&self, other: &Window) -> Window {
        let min = Point::new(self.min.x.min(other.min.x), self.min.y.min(other.min.y));
        let max_a = self.max();
        let max_b = other.max();
        let max = Point::new(max_a.x.max(max_b.x), max_a.y.max(max_b.y));
        Window::new(min, (max.x - min.x + 1) as u32, (max.y - min.y + 1) as u32)
    }

    /// The top-right corner.
    pub fn max(&self) -> Point {
        Point::new(self.min.x + self.width as i64 - 1, self.min.y + self.height as i64 - 1)
    }

    pub fn corners(&self) -> [Point; 4] {
        let max = self.max();
        [
            self.min,
            Point::new(max.x, self.min.y),
            max,
            Point::new(self.min.x, max.y),
        ]
    }

    pub fn len(&self) -> usize {
        self.width as usize * self.height as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, p: Point) -> bool {
        let max = self.max();
        p.x >= self.min.x && p.y >= self.min.y && p.x <= max.x && p.y <= max.y
    }

    /// True if `p` lies on the outermost ring of cells.
    pub fn on_border(&self, p: Point) -> bool {
        let max = self.max();
        self.contains(p) && (p.x == self.min.x || p.y == self.min.y || p.x == max.x || p.y == max.y)
    }

    pub fn contains_window(&self, other: &Window) -> bool {
        self.contains(other.min) && self.contains(other.max())
    }

    pub fn index(&self, p: Point) -> Option<usize> {
        self.contains(p)
            .then(|| (p.y - self.min.y) as usize * self.width as usize + (p.x - self.min.x) as usize)
    }

    pub fn point(&self, index: usize) -> Point {
        let w = self.width as usize;
        Point::new(self.min.x + (index % w) as i64, self.min.y + (index / w) as i64)
    }

    /// All points, in storage order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }
}
