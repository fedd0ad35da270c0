//! Brute-force oracles for the integration tests. Nothing here calls the
//! library's geometry; points are plain integer pairs.

#![allow(dead_code)]

use std::collections::HashSet;

pub type P = (i64, i64);

pub fn disc(r2: u64) -> HashSet<P> {
    let r = (r2 as f64).sqrt() as i64 + 1;
    let mut out = HashSet::new();
    for x in -r..=r {
        for y in -r..=r {
            if (x * x + y * y) as u64 <= r2 {
                out.insert((x, y));
            }
        }
    }
    out
}

pub fn sumset(a: &HashSet<P>, b: &HashSet<P>) -> HashSet<P> {
    a.iter()
        .flat_map(|&(x, y)| b.iter().map(move |&(u, v)| (x + u, y + v)))
        .collect()
}

pub fn sumset_of_discs(radii: &[u64]) -> HashSet<P> {
    radii
        .iter()
        .fold(HashSet::from([(0, 0)]), |acc, &r2| sumset(&acc, &disc(r2)))
}

/// Follows the boundary of a symmetric region through the first octant,
/// from the top of the `x = 0` column to the diagonal. Boundary cells have
/// a 4-neighbour outside. Returns the word and whether the walk ended on
/// the diagonal.
pub fn octant_trace(region: &HashSet<P>) -> (String, bool) {
    let boundary = |p: P| {
        region.contains(&p)
            && [(1, 0), (-1, 0), (0, 1), (0, -1)]
                .iter()
                .any(|&(dx, dy)| !region.contains(&(p.0 + dx, p.1 + dy)))
    };
    let mut top = 0;
    while region.contains(&(0, top + 1)) {
        top += 1;
    }
    let (mut p, mut word) = ((0, top), String::new());
    loop {
        let right = (p.0 + 1, p.1);
        let down = (p.0 + 1, p.1 - 1);
        if right.0 <= right.1 && boundary(right) {
            word.push('0');
            p = right;
        } else if down.0 <= down.1 && boundary(down) {
            word.push('1');
            p = down;
        } else {
            return (word, p.0 == p.1);
        }
    }
}

pub fn representable(n: u64) -> bool {
    let r = (n as f64).sqrt() as u64 + 1;
    (0..=r).any(|x| (0..=x).any(|y| x * x + y * y == n))
}

pub fn radii_up_to(n: u64) -> Vec<u64> {
    (1..=n).filter(|&m| representable(m)).collect()
}
