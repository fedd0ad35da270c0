//! `L^p` gauges and the astroid approximation experiment.
//!
//! Two broadcasting sequences from one origin, `A = (2)` and `B = (b)`,
//! give every point a pair of A-distances. The level `|d_A − d_B|` grows
//! fastest along the axes and slowest along the diagonals, so the region
//! below level `k` is a four-cusped star resembling an astroid
//! `x^{2/3} + y^{2/3} = r^{2/3}` rotated by 45°.
//!
//! The moiré columns are measured on that region `{level < k}`:
//!
//! * area: the number of lattice points in it,
//! * min: its extent along an axis (the inner, concave part of the star),
//! * radius: its extent along a diagonal, given as the shared coordinate
//!   `t` of the furthest point `(t, t)`.
//!
//! The astroid columns use the closed forms `(3/8)πr²` and `r/2` with the
//! astroid radius set to the moiré radius.

use std::fmt::Write as _;

use num_rational::Ratio;
use num_traits::ToPrimitive;

use crate::composition::BroadcastSequence;
use crate::error::{Error, Result};
use crate::lattice::{Point, SquaredRadius, Window};
use crate::sim::label_window;

pub type Rational = Ratio<i64>;

/// `(|x|^p + |y|^p)^{1/p}` for `p > 0`.
pub fn lp_norm(p: Point, exponent: Rational) -> Result<f64> {
    let e = exponent
        .to_f64()
        .filter(|&e| e > 0.0)
        .ok_or(Error::NonPositiveExponent)?;
    let sum = (p.x.abs() as f64).powf(e) + (p.y.abs() as f64).powf(e);
    Ok(sum.powf(1.0 / e))
}

/// The astroid of radius `r`: the `L^{2/3}` ball `{q : ‖q‖_{2/3} ≤ r}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AstroidSpec {
    pub radius: Rational,
}

impl AstroidSpec {
    pub const EXPONENT: (i64, i64) = (2, 3);

    pub fn contains(&self, p: Point) -> bool {
        let norm = lp_norm(p, Rational::new(Self::EXPONENT.0, Self::EXPONENT.1)).expect("exponent is positive");
        norm <= self.radius.to_f64().unwrap() + 1e-9
    }

    pub fn area(&self) -> u64 {
        astroid_area(self.radius)
    }

    pub fn min(&self) -> Rational {
        astroid_min(self.radius)
    }
}

/// `(3/8)πr²`, rounded half up.
pub fn astroid_area(r: Rational) -> u64 {
    let r = r.to_f64().unwrap();
    (3.0 / 8.0 * std::f64::consts::PI * r * r + 0.5).floor() as u64
}

/// The min column of the tables: half the radius.
pub fn astroid_min(r: Rational) -> Rational {
    r / 2
}

/// Levels `|d_A(p) − d_B(p)|` over a window, both distances measured from
/// the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSets {
    pub window: Window,
    levels: Vec<u64>,
}

/// The points of one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSet {
    pub k: u64,
    pub points: Vec<Point>,
}

impl LevelSets {
    pub fn level(&self, p: Point) -> Option<u64> {
        self.window.index(p).map(|i| self.levels[i])
    }

    pub fn levels(&self) -> &[u64] {
        &self.levels
    }

    pub fn set(&self, k: u64) -> LevelSet {
        let points = self
            .window
            .points()
            .zip(&self.levels)
            .filter(|&(_, &l)| l == k)
            .map(|(p, _)| p)
            .collect();
        LevelSet { k, points }
    }

    /// Points with level strictly below `k`.
    pub fn below(&self, k: u64) -> Vec<Point> {
        self.window
            .points()
            .zip(&self.levels)
            .filter(|&(_, &l)| l < k)
            .map(|(p, _)| p)
            .collect()
    }
}

/// Computes the levels over `window`. Distances are exact for every
/// window cell, whatever the window size.
pub fn level_sets(a: SquaredRadius, b: SquaredRadius, window: Window) -> Result<LevelSets> {
    let (sa, sb) = (BroadcastSequence::constant(a)?, BroadcastSequence::constant(b)?);
    let la = label_window(&sa, Point::ORIGIN, 1, window)?;
    let lb = label_window(&sb, Point::ORIGIN, 1, window)?;
    let levels = window
        .points()
        .map(|p| {
            let (da, db) = (la.steps(p).unwrap(), lb.steps(p).unwrap());
            da.abs_diff(db)
        })
        .collect();
    Ok(LevelSets { window, levels })
}

/// The first `kmax + 1` level sets over a window.
pub fn level_set_list(a: SquaredRadius, b: SquaredRadius, kmax: u64, window: Window) -> Result<Vec<LevelSet>> {
    let sets = level_sets(a, b, window)?;
    Ok((0..=kmax).map(|k| sets.set(k)).collect())
}

/// One row of the comparison table.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxRow {
    pub astroid_radius: i64,
    pub astroid_min: Rational,
    pub astroid_area: u64,
    pub moire_radius: i64,
    pub moire_min: i64,
    pub moire_area: u64,
    pub b: u64,
    pub k: u64,
    /// Moiré area minus astroid area.
    pub complement: i64,
}

const MAX_HALF_WIDTH: u64 = 1024;

/// Measures the region below level `k` for sources `A = a` and `B = b`.
///
/// The window starts small and doubles until the region no longer touches
/// its border.
pub fn approx_experiment(b: SquaredRadius, k: u64, a: SquaredRadius) -> Result<ApproxRow> {
    if k == 0 {
        return Err(Error::EmptyLevelSet { k: 0 });
    }
    if a == b {
        return Err(Error::UnboundedLevelSet { k: k as u32 });
    }
    let mut half = 4 * k + 4;
    let region = loop {
        let window = Window::centred(Point::ORIGIN, half);
        let region = level_sets(a, b, window)?.below(k);
        if region.iter().all(|&p| !window.on_border(p)) {
            break region;
        }
        half *= 2;
        if half > MAX_HALF_WIDTH {
            return Err(Error::UnboundedLevelSet { k: k as u32 });
        }
    };
    let moire_area = region.len() as u64;
    let moire_min = region.iter().filter(|p| p.y == 0).map(|p| p.x.abs()).max().unwrap_or(0);
    let moire_radius = region
        .iter()
        .filter(|p| p.x == p.y)
        .map(|p| p.x.abs())
        .max()
        .unwrap_or(0);
    let r = Rational::from_integer(moire_radius);
    let astroid_area = astroid_area(r);
    Ok(ApproxRow {
        astroid_radius: moire_radius,
        astroid_min: astroid_min(r),
        astroid_area,
        moire_radius,
        moire_min,
        moire_area,
        b: b.get(),
        k,
        complement: moire_area as i64 - astroid_area as i64,
    })
}

/// A row as printed in the published experiment tables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PaperRow {
    pub astroid_radius: i64,
    pub astroid_min: f64,
    pub astroid_area: u64,
    pub moire_radius: i64,
    pub moire_min: i64,
    pub moire_area: u64,
    pub b: u64,
    pub k: u64,
    pub complement: i64,
}

const fn row(v: (i64, f64, u64, i64, i64, u64, u64, u64, i64)) -> PaperRow {
    PaperRow {
        astroid_radius: v.0,
        astroid_min: v.1,
        astroid_area: v.2,
        moire_radius: v.3,
        moire_min: v.4,
        moire_area: v.5,
        b: v.6,
        k: v.7,
        complement: v.8,
    }
}

/// First published table: several `B`, best `k` for each.
pub const PAPER_TABLE_1: [PaperRow; 10] = [
    row((17, 8.5, 340, 17, 11, 461, 5, 5, 121)),
    row((17, 8.5, 340, 17, 13, 753, 9, 8, 413)),
    row((17, 8.5, 340, 17, 13, 873, 10, 9, 533)),
    row((18, 9.0, 382, 18, 16, 1121, 13, 11, 739)),
    row((18, 9.0, 382, 18, 14, 1033, 16, 11, 651)),
    row((18, 9.0, 382, 18, 14, 1001, 17, 11, 619)),
    row((17, 8.5, 340, 17, 15, 1041, 37, 13, 701)),
    row((17, 8.5, 340, 17, 16, 1141, 45, 14, 801)),
    row((17, 8.5, 340, 17, 16, 1093, 61, 14, 753)),
    row((17, 8.5, 340, 17, 16, 1181, 82, 15, 841)),
];

/// Second published table: `B = 5`, `k = 1..=10`.
pub const PAPER_TABLE_2: [PaperRow; 10] = [
    row((2, 1.0, 5, 2, 1, 13, 5, 1, 8)),
    row((5, 2.5, 30, 5, 3, 65, 5, 2, 35)),
    row((8, 4.0, 75, 8, 5, 157, 5, 3, 82)),
    row((11, 5.59, 143, 11, 7, 289, 5, 4, 146)),
    row((18, 9.0, 382, 18, 9, 461, 5, 5, 79)),
    row((21, 10.5, 520, 21, 11, 673, 5, 6, 153)),
    row((24, 12.0, 679, 24, 13, 925, 5, 7, 246)),
    row((27, 13.5, 859, 27, 15, 1217, 5, 8, 358)),
    row((30, 15.0, 1060, 30, 17, 1549, 5, 9, 489)),
    row((33, 16.5, 1283, 33, 19, 1921, 5, 10, 628)),
];

/// Both published tables in order.
pub fn paper_rows() -> impl Iterator<Item = &'static PaperRow> {
    PAPER_TABLE_1.iter().chain(PAPER_TABLE_2.iter())
}

/// Names of the columns in which `ours` differs from `paper`.
pub fn mismatched_columns(ours: &ApproxRow, paper: &PaperRow) -> Vec<&'static str> {
    let mut out = Vec::new();
    let min = ours.astroid_min.to_f64().unwrap();
    let checks = [
        (ours.astroid_radius == paper.astroid_radius, "astroid radius"),
        ((min - paper.astroid_min).abs() < 1e-9, "astroid min"),
        (ours.astroid_area == paper.astroid_area, "astroid area"),
        (ours.moire_radius == paper.moire_radius, "moire radius"),
        (ours.moire_min == paper.moire_min, "moire min"),
        (ours.moire_area == paper.moire_area, "moire area"),
        (ours.complement == paper.complement, "complement"),
    ];
    for (ok, name) in checks {
        if !ok {
            out.push(name);
        }
    }
    out
}

pub const CSV_HEADER: &str = "Radius,Min,Area,Radius,Min,Area,B,k,Complement,Paper";

fn format_half(r: Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{:.1}", r.to_f64().unwrap())
    }
}

fn csv_line(out: &mut String, row: &ApproxRow, flag: &str) {
    let _ = writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{}",
        row.astroid_radius,
        format_half(row.astroid_min),
        row.astroid_area,
        row.moire_radius,
        row.moire_min,
        row.moire_area,
        row.b,
        row.k,
        row.complement,
        flag
    );
}

fn flag_for(row: &ApproxRow, candidates: &[&PaperRow]) -> String {
    let best = candidates
        .iter()
        .map(|p| mismatched_columns(row, p))
        .min_by_key(Vec::len);
    match best {
        None => "-".to_string(),
        Some(cols) if cols.is_empty() => "match".to_string(),
        Some(cols) => format!("mismatch: {}", cols.join("; ")),
    }
}

/// CSV for the given `(B, k)` pairs with `A = 2`. The last column compares
/// each row with any published row for the same `(B, k)`.
pub fn table_report(pairs: &[(SquaredRadius, u64)]) -> Result<String> {
    let a = SquaredRadius::new(2)?;
    let mut out = format!("{CSV_HEADER}\n");
    for &(b, k) in pairs {
        let row = approx_experiment(b, k, a)?;
        let candidates: Vec<&PaperRow> = paper_rows().filter(|p| p.b == b.get() && p.k == k).collect();
        csv_line(&mut out, &row, &flag_for(&row, &candidates));
    }
    Ok(out)
}

/// Per-column agreement with the published tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperComparison {
    pub rows: usize,
    pub exact_rows: usize,
    /// `(column, matching rows)` in table order.
    pub columns: Vec<(&'static str, usize)>,
    /// Rows whose computed complement lies within 5% of the published one.
    pub complement_within_5pct: usize,
}

impl PaperComparison {
    pub fn summary(&self) -> String {
        let cols: Vec<String> = self
            .columns
            .iter()
            .map(|(c, n)| format!("{c} {n}/{}", self.rows))
            .collect();
        format!(
            "{} of {} rows match exactly; {}; complement within 5%: {}/{}",
            self.exact_rows,
            self.rows,
            cols.join(", "),
            self.complement_within_5pct,
            self.rows
        )
    }
}

/// Recomputes every published row and reports the comparison.
pub fn paper_tables_report() -> Result<(String, PaperComparison)> {
    let a = SquaredRadius::new(2)?;
    let mut out = format!("{CSV_HEADER}\n");
    let names = [
        "astroid radius",
        "astroid min",
        "astroid area",
        "moire radius",
        "moire min",
        "moire area",
        "complement",
    ];
    let mut column_hits = [0usize; 7];
    let (mut exact, mut within) = (0, 0);
    let mut rows = 0;
    for paper in paper_rows() {
        let row = approx_experiment(SquaredRadius::new(paper.b)?, paper.k, a)?;
        let missed = mismatched_columns(&row, paper);
        for (hit, name) in column_hits.iter_mut().zip(names) {
            if !missed.contains(&name) {
                *hit += 1;
            }
        }
        exact += missed.is_empty() as usize;
        let tolerance = 0.05 * paper.complement.abs() as f64;
        within += ((row.complement - paper.complement).abs() as f64 <= tolerance) as usize;
        rows += 1;
        csv_line(&mut out, &row, &flag_for(&row, &[paper]));
    }
    let comparison = PaperComparison {
        rows,
        exact_rows: exact,
        columns: names.iter().copied().zip(column_hits).collect(),
        complement_within_5pct: within,
    };
    Ok((out, comparison))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r2(n: u64) -> SquaredRadius {
        SquaredRadius::new(n).unwrap()
    }

    fn z(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn norms() {
        assert!((lp_norm(Point::new(3, 4), z(2)).unwrap() - 5.0).abs() < 1e-12);
        assert!((lp_norm(Point::new(7, 0), Rational::new(2, 3)).unwrap() - 7.0).abs() < 1e-9);
        assert_eq!(lp_norm(Point::new(1, 1), z(0)), Err(Error::NonPositiveExponent));
        // (x, x) lies on the astroid of radius r when x = r / 2^{3/2}.
        let r = 16.0f64;
        let x = r / 2f64.powf(1.5);
        let norm = (2.0 * x.powf(2.0 / 3.0)).powf(1.5);
        assert!((norm - r).abs() < 1e-9);
        let spec = AstroidSpec { radius: z(8) };
        assert!(spec.contains(Point::new(8, 0)));
        assert!(spec.contains(Point::new(2, 2)));
        assert!(!spec.contains(Point::new(4, 4)));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(astroid_area(z(17)), 340);
        assert_eq!(astroid_area(z(18)), 382);
        assert_eq!(astroid_area(z(2)), 5);
        assert_eq!(astroid_min(z(17)), Rational::new(17, 2));
        assert_eq!(astroid_min(z(18)), z(9));
        assert_eq!(astroid_min(z(11)), Rational::new(11, 2));
    }

    #[test]
    fn equal_sources_have_level_zero() {
        let sets = level_sets(r2(5), r2(5), Window::centred(Point::ORIGIN, 6)).unwrap();
        assert!(sets.levels().iter().all(|&l| l == 0));
        assert_eq!(
            approx_experiment(r2(5), 1, r2(5)),
            Err(Error::UnboundedLevelSet { k: 1 })
        );
        assert_eq!(approx_experiment(r2(5), 0, r2(2)), Err(Error::EmptyLevelSet { k: 0 }));
    }

    #[test]
    fn levels_partition_the_window() {
        let window = Window::centred(Point::ORIGIN, 12);
        let sets = level_set_list(r2(2), r2(5), 20, window).unwrap();
        let total: usize = sets.iter().map(|s| s.points.len()).sum();
        assert_eq!(total, window.len());
        assert_eq!(sets[0].points.iter().filter(|p| **p == Point::ORIGIN).count(), 1);
    }

    #[test]
    fn area_grows_with_k() {
        let areas: Vec<u64> = (1..=6)
            .map(|k| approx_experiment(r2(5), k, r2(2)).unwrap().moire_area)
            .collect();
        assert!(areas.windows(2).all(|w| w[0] < w[1]), "{areas:?}");
    }

    #[test]
    fn moire_areas_for_b5() {
        for k in 1..=10u64 {
            let row = approx_experiment(r2(5), k, r2(2)).unwrap();
            let k = k as i64;
            assert_eq!(row.moire_area as i64, 20 * k * k - 8 * k + 1, "k = {k}");
            assert_eq!(row.complement, row.moire_area as i64 - row.astroid_area as i64);
        }
    }

    #[test]
    fn report_formatting() {
        assert_eq!(table_report(&[]).unwrap(), format!("{CSV_HEADER}\n"));
        let csv = table_report(&[(r2(5), 1)]).unwrap();
        let line = csv.lines().nth(1).unwrap();
        assert_eq!(line, "2,1,5,2,1,13,5,1,8,match");
        let csv = table_report(&[(r2(2), 3), (r2(8), 1)]);
        assert!(csv.is_err());
    }
}
