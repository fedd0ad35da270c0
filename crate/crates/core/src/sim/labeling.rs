//! Labellings of the lattice by broadcasting sequences.
//!
//! `R_1` is the disc of the first radius around the origin and
//! `R_j = R_{j-1} ∪ (F_{j-1} ⊕ ζ^{r_j})`, where `F_{j-1}` is the set of cells
//! first reached at step `j - 1`: only the newest cells transmit. A point
//! first reached at step `k` lies at A-distance `k` and gets label
//! `(k - 1) mod m`, so all of `R_1`, the origin included, is labelled `0`.

use std::collections::{BTreeSet, HashSet};

use crate::chaincode::{octant_from_rows, OctantCode};
use crate::composition::BroadcastSequence;
use crate::error::{Error, Result};
use crate::lattice::{convex_hull, disc_points, Point, SquaredRadius, Window};

/// Integer ring indices over a window, reduced modulo `modulus` on demand.
///
/// For a broadcasting sequence the ring of `p` is its A-distance minus one
/// (zero at the origin); for a banded line family it is the band index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    window: Window,
    modulus: u32,
    origin: Option<Point>,
    rings: Vec<Option<i64>>,
}

impl Labeling {
    pub fn from_rings(window: Window, modulus: u32, origin: Option<Point>, rings: Vec<Option<i64>>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        assert_eq!(rings.len(), window.len(), "one ring entry per window cell");
        Ok(Labeling {
            window,
            modulus,
            origin,
            rings,
        })
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn origin(&self) -> Option<Point> {
        self.origin
    }

    pub fn rings(&self) -> &[Option<i64>] {
        &self.rings
    }

    pub fn ring(&self, p: Point) -> Option<i64> {
        self.window.index(p).and_then(|i| self.rings[i])
    }

    pub fn label(&self, p: Point) -> Option<u32> {
        self.ring(p).map(|k| k.rem_euclid(self.modulus as i64) as u32)
    }

    /// A-distance from the origin, for sequence labellings.
    pub fn steps(&self, p: Point) -> Option<u64> {
        let origin = self.origin?;
        let ring = self.ring(p)?;
        Some(if p == origin { 0 } else { ring as u64 + 1 })
    }

    /// Labelled points with A-distance at most `k`.
    pub fn region(&self, k: u64) -> Vec<Point> {
        self.window
            .points()
            .filter(|&p| self.steps(p).is_some_and(|d| d <= k))
            .collect()
    }

    /// Restriction to a sub-window.
    pub fn crop(&self, window: Window) -> Result<Labeling> {
        if !self.window.contains_window(&window) {
            return Err(Error::WindowMismatch);
        }
        let rings = window.points().map(|p| self.ring(p)).collect();
        Labeling::from_rings(window, self.modulus, self.origin, rings)
    }

    /// `x,y,step,label` rows for every labelled cell, bottom row first.
    /// `step` is the A-distance for sequence labellings and the ring index
    /// otherwise.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,step,label\n");
        for p in self.window.points() {
            let Some(ring) = self.ring(p) else { continue };
            let step = match self.steps(p) {
                Some(s) => s as i64,
                None => ring,
            };
            out.push_str(&format!("{},{},{},{}\n", p.x, p.y, step, self.label(p).unwrap()));
        }
        out
    }
}

/// Frontier expansion on a window that is known to contain everything
/// reached within `k` steps.
fn expand(seq: &BroadcastSequence, origin: Point, k: usize, window: Window) -> Vec<Option<u64>> {
    let mut dist = vec![None; window.len()];
    dist[window.index(origin).expect("origin inside window")] = Some(0);
    let mut frontier = vec![origin];
    for (j, r2) in seq.steps(k).enumerate() {
        let offsets = disc_points(r2).points;
        let mut next = Vec::new();
        for &p in &frontier {
            for &o in &offsets {
                let q = p + o;
                let i = window.index(q).expect("window contains the reach of every step");
                if dist[i].is_none() {
                    dist[i] = Some(j as u64 + 1);
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    dist
}

fn rings_from_steps(dist: Vec<Option<u64>>) -> Vec<Option<i64>> {
    dist.into_iter().map(|d| d.map(|d| d.max(1) as i64 - 1)).collect()
}

/// Labels everything within `k ≥ 1` steps of `origin`. Cells beyond step
/// `k` stay unlabelled. The window has to contain the whole of `R_k`.
pub fn propagate_sequence(
    seq: &BroadcastSequence,
    origin: Point,
    k: usize,
    modulus: u32,
    window: Window,
) -> Result<Labeling> {
    if modulus == 0 {
        return Err(Error::ZeroModulus);
    }
    let needed = Window::centred(origin, seq.reach(k));
    if !window.contains_window(&needed) {
        return Err(Error::WindowTooSmall { steps: k as u32 });
    }
    let rings = rings_from_steps(expand(seq, origin, k, window));
    Labeling::from_rings(window, modulus, Some(origin), rings)
}

/// Vertices of `H(ζ^{r_1}) ⊕ … ⊕ H(ζ^{r_k})`, the polygon whose lattice
/// points are exactly `R_k` around the origin.
pub fn reach_polygon(seq: &BroadcastSequence, k: usize) -> Vec<Point> {
    seq.steps(k)
        .fold(vec![Point::ORIGIN], |poly, r2| grow_polygon(&poly, r2))
}

/// `poly ⊕ H(ζ^{r²})`.
fn grow_polygon(poly: &[Point], r2: SquaredRadius) -> Vec<Point> {
    let hull = convex_hull(&disc_points(r2).points).expect("discs are non-empty");
    let sums: Vec<Point> = poly.iter().flat_map(|&a| hull.iter().map(move |&b| a + b)).collect();
    convex_hull(&sums).expect("sums are non-empty")
}

/// True if `p` lies in the convex polygon with counter-clockwise vertices
/// `poly` (boundary included).
pub fn polygon_contains(poly: &[Point], p: Point) -> bool {
    match poly.len() {
        0 => false,
        1 => poly[0] == p,
        _ => (0..poly.len()).all(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
            (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) >= 0
        }),
    }
}

/// Smallest `k` such that `R_k` around `origin` covers the whole window.
pub fn steps_to_cover(seq: &BroadcastSequence, origin: Point, window: Window) -> usize {
    let corners = window.corners().map(|c| c - origin);
    let mut poly = vec![Point::ORIGIN];
    let mut k = 0;
    while !corners.iter().all(|&c| polygon_contains(&poly, c)) {
        k += 1;
        poly = grow_polygon(&poly, seq.radius(k));
    }
    k
}

/// Labels every cell of `window`, which need not contain `origin`.
///
/// The expansion runs on a padded window large enough that no path to a
/// window cell is cut off, then is cropped back.
pub fn label_window(seq: &BroadcastSequence, origin: Point, modulus: u32, window: Window) -> Result<Labeling> {
    let k = steps_to_cover(seq, origin, window).max(1);
    let padded = window.union(&Window::centred(origin, seq.reach(k)));
    propagate_sequence(seq, origin, k, modulus, padded)?.crop(window)
}

/// Length of the shortest A-path from `p` to `q`.
pub fn a_distance(p: Point, q: Point, seq: &BroadcastSequence) -> u64 {
    let mut seen: HashSet<Point> = HashSet::from([p]);
    let mut frontier = vec![p];
    let mut k = 0;
    while !seen.contains(&q) {
        k += 1;
        let offsets = disc_points(seq.radius(k)).points;
        let mut next = Vec::new();
        for &a in &frontier {
            for &o in &offsets {
                if seen.insert(a + o) {
                    next.push(a + o);
                }
            }
        }
        frontier = next;
    }
    k as u64
}

/// One step of an M-neighbour sequence: `M = 1` adds von Neumann
/// neighbours, `M = 2` adds Moore neighbours.
pub fn m_neighbour_step(region: &BTreeSet<Point>, m: u8) -> Result<BTreeSet<Point>> {
    if !(1..=2).contains(&m) {
        return Err(Error::InvalidNeighbourhood(m));
    }
    let mut out = region.clone();
    for &p in region {
        if m == 1 {
            out.extend(p.von_neumann_neighbours());
        } else {
            out.extend(p.moore_neighbours());
        }
    }
    Ok(out)
}

/// Octant-1 chain code of the boundary of `R_k`.
pub fn hull_octant_code(labeling: &Labeling, k: u64) -> Result<OctantCode> {
    let origin = labeling.origin().ok_or(Error::WindowMismatch)?;
    let window = labeling.window();
    let region = labeling.region(k);
    if region.iter().any(|&p| window.on_border(p)) {
        return Err(Error::WindowTooSmall { steps: k as u32 });
    }
    let top = region
        .iter()
        .filter(|p| p.x == origin.x)
        .map(|p| p.y - origin.y)
        .max()
        .unwrap_or(0) as u64;
    let mut rows = vec![0u64; top as usize + 1];
    for p in &region {
        let (x, y) = (p.x - origin.x, p.y - origin.y);
        if x >= 0 && y >= 0 && (y as u64) <= top {
            rows[y as usize] = rows[y as usize].max(x as u64);
        }
    }
    Ok(octant_from_rows(top, |y| rows[y as usize]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::compose_sequence;
    use crate::lattice::distinct_radii;

    fn seq(s: &str) -> BroadcastSequence {
        s.parse().unwrap()
    }

    #[test]
    fn first_ring_is_labelled_zero() {
        let window = Window::centred(Point::ORIGIN, 3);
        let lab = propagate_sequence(&seq("1"), Point::ORIGIN, 1, 4, window).unwrap();
        assert_eq!(lab.region(1).len(), 5);
        assert_eq!(lab.label(Point::ORIGIN), Some(0));
        assert_eq!(lab.label(Point::new(0, 1)), Some(0));
        assert_eq!(lab.label(Point::new(1, 1)), None);
        assert_eq!(lab.steps(Point::new(0, 1)), Some(1));
    }

    #[test]
    fn chebyshev_rings() {
        let window = Window::centred(Point::ORIGIN, 4);
        let lab = propagate_sequence(&seq("2"), Point::ORIGIN, 3, 4, window).unwrap();
        for p in window.points() {
            let d = p.linf();
            if d <= 3 {
                assert_eq!(lab.label(p), Some((d.max(1) - 1) as u32), "{p}");
            } else {
                assert_eq!(lab.label(p), None);
            }
        }
    }

    #[test]
    fn window_must_hold_the_reach() {
        let window = Window::centred(Point::ORIGIN, 5);
        assert_eq!(
            propagate_sequence(&seq("9"), Point::ORIGIN, 2, 4, window),
            Err(Error::WindowTooSmall { steps: 2 })
        );
        assert!(propagate_sequence(&seq("9"), Point::ORIGIN, 1, 4, window).is_ok());
        assert_eq!(
            propagate_sequence(&seq("9"), Point::ORIGIN, 1, 0, window),
            Err(Error::ZeroModulus)
        );
    }

    #[test]
    fn reach_matches_polygon() {
        // The frontier expansion and the sum of hull polygons agree.
        for s in ["1", "2", "5", "9", "16,26", "45", "2,5", "13,1,8", "50"] {
            let seq = seq(s);
            let k = 6;
            let window = Window::centred(Point::ORIGIN, seq.reach(k) + 1);
            let lab = propagate_sequence(&seq, Point::ORIGIN, k, 4, window).unwrap();
            for j in 1..=k {
                let poly = reach_polygon(&seq, j);
                for p in window.points() {
                    let inside = lab.steps(p).is_some_and(|d| d <= j as u64);
                    assert_eq!(inside, polygon_contains(&poly, p), "{s}: step {j}, {p}");
                }
            }
        }
    }

    #[test]
    fn hull_code_matches_composition() {
        for r in distinct_radii(200) {
            let seq = BroadcastSequence::constant(r).unwrap();
            let k = 4;
            let window = Window::centred(Point::ORIGIN, seq.reach(k) + 1);
            let lab = propagate_sequence(&seq, Point::ORIGIN, k, 4, window).unwrap();
            for j in 1..=k {
                let sim = hull_octant_code(&lab, j as u64).unwrap();
                assert_eq!(sim, compose_sequence(&seq, j).code, "r2 = {r}, k = {j}");
            }
        }
    }

    #[test]
    fn hull_code_examples() {
        let s = seq("9");
        let window = Window::centred(Point::ORIGIN, 8);
        let lab = propagate_sequence(&s, Point::ORIGIN, 2, 4, window).unwrap();
        assert_eq!(hull_octant_code(&lab, 2).unwrap().to_string(), "1010");
        let s = seq("45");
        let window = Window::centred(Point::ORIGIN, 7);
        let lab = propagate_sequence(&s, Point::ORIGIN, 1, 4, window).unwrap();
        assert_eq!(hull_octant_code(&lab, 1).unwrap().to_string(), "0001");
        let tight = Window::centred(Point::ORIGIN, 6);
        let lab = propagate_sequence(&s, Point::ORIGIN, 1, 4, tight).unwrap();
        assert_eq!(hull_octant_code(&lab, 1), Err(Error::WindowTooSmall { steps: 1 }));
    }

    #[test]
    fn distances() {
        let p = Point::new(2, -1);
        assert_eq!(a_distance(p, p, &seq("1")), 0);
        for q in [Point::new(5, 3), Point::new(-4, 0), Point::new(2, 6)] {
            assert_eq!(a_distance(p, q, &seq("1")), (q - p).l1());
            assert_eq!(a_distance(p, q, &seq("2")), (q - p).linf());
        }
    }

    #[test]
    fn labelled_window_is_exact() {
        // Labels from a window far from the origin match a big direct run.
        let s = seq("16,26");
        let sub = Window::new(Point::new(20, -7), 9, 6);
        let lab = label_window(&s, Point::ORIGIN, 5, sub).unwrap();
        let k = steps_to_cover(&s, Point::ORIGIN, sub);
        let big = Window::centred(Point::ORIGIN, s.reach(k + 2));
        let full = propagate_sequence(&s, Point::ORIGIN, k + 2, 5, big).unwrap();
        for p in sub.points() {
            assert_eq!(lab.label(p), full.label(p), "{p}");
            assert!(lab.label(p).is_some());
        }
    }

    #[test]
    fn m_neighbour_steps() {
        let origin = BTreeSet::from([Point::ORIGIN]);
        assert_eq!(m_neighbour_step(&origin, 1).unwrap().len(), 5);
        assert_eq!(m_neighbour_step(&origin, 2).unwrap().len(), 9);
        assert_eq!(m_neighbour_step(&origin, 3), Err(Error::InvalidNeighbourhood(3)));
        assert_eq!(
            m_neighbour_step(&BTreeSet::new(), 0),
            Err(Error::InvalidNeighbourhood(0))
        );
    }

    #[test]
    fn m_neighbours_match_radius_one_and_two() {
        for (m, r) in [(1u8, 1u64), (2, 2)] {
            let s = BroadcastSequence::constant(SquaredRadius::new(r).unwrap()).unwrap();
            let window = Window::centred(Point::ORIGIN, 12);
            let lab = propagate_sequence(&s, Point::ORIGIN, 10, 4, window).unwrap();
            let mut region = BTreeSet::from([Point::ORIGIN]);
            for k in 1..=10 {
                region = m_neighbour_step(&region, m).unwrap();
                let expected: BTreeSet<Point> = lab.region(k).into_iter().collect();
                assert_eq!(region, expected, "M = {m}, k = {k}");
            }
        }
    }

    #[test]
    fn csv_export() {
        let window = Window::centred(Point::ORIGIN, 1);
        let lab = propagate_sequence(&seq("1"), Point::ORIGIN, 1, 4, window).unwrap();
        let csv = lab.to_csv();
        assert!(csv.starts_with("x,y,step,label\n0,-1,1,0\n"));
        assert_eq!(csv.lines().count(), 6);
    }
}
