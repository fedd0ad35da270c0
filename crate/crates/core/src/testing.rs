//! Brute-force oracles shared by the unit tests.

use std::collections::HashSet;

use crate::lattice::{disc_points, Point, SquaredRadius};

pub fn disc_set(r2: u64) -> HashSet<Point> {
    disc_points(SquaredRadius::new(r2).unwrap())
        .points
        .into_iter()
        .collect()
}

pub fn sumset_of_discs(a: u64, b: u64) -> HashSet<Point> {
    let (da, db) = (disc_set(a), disc_set(b));
    da.iter().flat_map(|&p| db.iter().map(move |&q| p + q)).collect()
}

/// Walks the octant-1 part of a region's digital boundary from the top of
/// the `x = 0` column, preferring horizontal steps, until the diagonal.
pub fn octant_trace_of_region(region: &HashSet<Point>) -> (String, Point) {
    let on_boundary = |p: Point| region.contains(&p) && p.von_neumann_neighbours().iter().any(|q| !region.contains(q));
    let top = (0..)
        .take_while(|&y| region.contains(&Point::new(0, y)))
        .last()
        .unwrap();
    let mut p = Point::new(0, top);
    let mut word = String::new();
    loop {
        let right = Point::new(p.x + 1, p.y);
        let down = Point::new(p.x + 1, p.y - 1);
        if right.x <= right.y && on_boundary(right) {
            word.push('0');
            p = right;
        } else if down.x <= down.y && on_boundary(down) {
            word.push('1');
            p = down;
        } else {
            return (word, p);
        }
    }
}
