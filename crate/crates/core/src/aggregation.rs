//! Aggregation of two labellings into a pattern.
//!
//! Every cell carries a label from each of two sources; a symmetric table
//! maps the unordered pair to an output symbol. With periodic labellings
//! the result shows moiré-like fringes whose gradients have closed forms.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::Signed;

use crate::composition::BroadcastSequence;
use crate::error::{Error, Result};
use crate::lattice::{Point, Window};
use crate::pgm::{grey_levels, GreyImage};
use crate::sim::{label_window, Labeling};

/// A symmetric `m × m` table from label pairs to symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AggregationTable {
    /// Distinct symbols, in declaration order.
    symbols: Vec<char>,
    /// Row-major indices into `symbols`.
    cells: Vec<u8>,
    modulus: u32,
}

impl AggregationTable {
    /// Builds a table from its rows. Symbols are ordered by first
    /// appearance unless `symbols` gives an explicit order.
    pub fn new(rows: &[Vec<char>], symbols: Option<&[char]>) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::ZeroModulus);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != m {
                return Err(Error::RaggedTable {
                    row,
                    expected: m,
                    found: r.len(),
                });
            }
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, &cell) in row.iter().enumerate().skip(i + 1) {
                if cell != rows[j][i] {
                    return Err(Error::AsymmetricTable { i, j });
                }
            }
        }
        let mut order: Vec<char> = symbols.map(<[char]>::to_vec).unwrap_or_default();
        let explicit = symbols.is_some();
        let mut cells = Vec::with_capacity(m * m);
        for &c in rows.iter().flatten() {
            let idx = match order.iter().position(|&s| s == c) {
                Some(i) => i,
                None if explicit => return Err(Error::InvalidSymbol(c)),
                None => {
                    order.push(c);
                    order.len() - 1
                }
            };
            cells.push(idx as u8);
        }
        Ok(AggregationTable {
            symbols: order,
            cells,
            modulus: m as u32,
        })
    }

    pub fn builtin(table: BuiltinTable) -> Self {
        let rows: Vec<Vec<char>> = match table {
            BuiltinTable::Moire => ["abcb", "babc", "cbab", "bcba"]
                .iter()
                .map(|r| r.chars().collect())
                .collect(),
            BuiltinTable::AntiMoire => (0..4)
                .map(|i| (0..4).map(|j| ['a', 'b', 'c', 'd'][(i + j) % 4]).collect())
                .collect(),
            BuiltinTable::AntiMoireMod2 => ["abba", "bbaa", "baab", "aabb"]
                .iter()
                .map(|r| r.chars().collect())
                .collect(),
        };
        AggregationTable::new(&rows, None).expect("built-in tables are symmetric")
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    /// Index into [`symbols`](Self::symbols) for the pair `(i, j)`.
    pub fn index(&self, i: u32, j: u32) -> u8 {
        self.cells[i as usize * self.modulus as usize + j as usize]
    }

    pub fn get(&self, i: u32, j: u32) -> char {
        self.symbols[self.index(i, j) as usize]
    }
}

/// The tables used for moiré and anti-moiré patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuiltinTable {
    /// Symbol depends on the cyclic distance between the labels.
    Moire,
    /// Symbol of `(i + j) mod 4`.
    AntiMoire,
    /// Two-symbol variant of the anti-moiré table.
    AntiMoireMod2,
}

impl FromStr for BuiltinTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "moire" => Ok(BuiltinTable::Moire),
            "antimoire" => Ok(BuiltinTable::AntiMoire),
            "antimoire_mod2" => Ok(BuiltinTable::AntiMoireMod2),
            other => Err(Error::UnknownTable(other.to_string())),
        }
    }
}

impl fmt::Display for BuiltinTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BuiltinTable::Moire => "moire",
            BuiltinTable::AntiMoire => "antimoire",
            BuiltinTable::AntiMoireMod2 => "antimoire_mod2",
        })
    }
}

/// A rectangle of output symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternField {
    pub window: Window,
    pub symbols: Vec<char>,
    /// Indices into `symbols`, in window storage order.
    pub cells: Vec<u8>,
}

impl PatternField {
    pub fn symbol(&self, p: Point) -> Option<char> {
        self.window.index(p).map(|i| self.symbols[self.cells[i] as usize])
    }

    /// Greymap with the top row at the largest `y`; symbols get evenly
    /// spaced levels in declaration order.
    pub fn to_image(&self) -> GreyImage {
        let levels = grey_levels(self.symbols.len());
        let (w, h) = (self.window.width as usize, self.window.height as usize);
        let mut pixels = Vec::with_capacity(w * h);
        for row in (0..h).rev() {
            pixels.extend(self.cells[row * w..(row + 1) * w].iter().map(|&c| levels[c as usize]));
        }
        GreyImage::new(self.window.width, self.window.height, 255, pixels)
    }

    /// `x,y,symbol` rows, bottom row first.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,symbol\n");
        for (i, &c) in self.cells.iter().enumerate() {
            let p = self.window.point(i);
            out.push_str(&format!("{},{},{}\n", p.x, p.y, self.symbols[c as usize]));
        }
        out
    }
}

/// Applies `table` pointwise to two labellings of the same window.
pub fn aggregate_field(a: &Labeling, b: &Labeling, table: &AggregationTable) -> Result<PatternField> {
    if a.window() != b.window() {
        return Err(Error::WindowMismatch);
    }
    for lab in [a, b] {
        if lab.modulus() != table.modulus() {
            return Err(Error::ModulusMismatch {
                table: table.modulus(),
                labelling: lab.modulus(),
            });
        }
    }
    let window = a.window();
    let cells = window
        .points()
        .map(|p| match (a.label(p), b.label(p)) {
            (Some(i), Some(j)) => Ok(table.index(i, j)),
            _ => Err(Error::Unlabelled { x: p.x, y: p.y }),
        })
        .collect::<Result<Vec<u8>>>()?;
    Ok(PatternField {
        window,
        symbols: table.symbols().to_vec(),
        cells,
    })
}

pub type Rational = Ratio<i64>;

/// The parallel lines `y = m x + c + k w`, `k ∈ Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineFamily {
    pub gradient: Rational,
    pub offset: Rational,
    pub width: Rational,
}

impl LineFamily {
    pub fn new(gradient: Rational, offset: Rational, width: Rational) -> Result<Self> {
        if width <= Rational::from_integer(0) {
            return Err(Error::NonPositiveWidth);
        }
        Ok(LineFamily {
            gradient,
            offset,
            width,
        })
    }

    /// Index `k` of the half-open band `m x + c + k w ≤ y < m x + c + (k+1) w`.
    pub fn band(&self, p: Point) -> i64 {
        let t = (Rational::from_integer(p.y) - self.gradient * p.x - self.offset) / self.width;
        t.floor().to_integer()
    }
}

/// Labels every cell of `window` by its band index.
pub fn banded_labeling(family: &LineFamily, window: Window, modulus: u32) -> Result<Labeling> {
    let rings = window.points().map(|p| Some(family.band(p))).collect();
    Labeling::from_rings(window, modulus, None, rings)
}

/// Gradient `(w0 m1 − w1 m0) / (w0 − w1)` of the moiré fringes of two line
/// families.
pub fn moire_gradient(m0: Rational, w0: Rational, m1: Rational, w1: Rational) -> Result<Rational> {
    check_widths(w0, w1)?;
    if w0 == w1 {
        return Err(Error::DegenerateFringe);
    }
    Ok((w0 * m1 - w1 * m0) / (w0 - w1))
}

/// Gradient `(w0 m1 + w1 m0) / (w0 + w1)` of the anti-moiré fringes.
pub fn antimoire_gradient(m0: Rational, w0: Rational, m1: Rational, w1: Rational) -> Result<Rational> {
    check_widths(w0, w1)?;
    Ok((w0 * m1 + w1 * m0) / (w0 + w1))
}

/// Spacing `w0 w1 / |w0 − w1|` of moiré fringes between parallel families.
pub fn moire_fringe_width(w0: Rational, w1: Rational) -> Result<Rational> {
    check_widths(w0, w1)?;
    if w0 == w1 {
        return Err(Error::DegenerateFringe);
    }
    Ok(w0 * w1 / (w0 - w1).abs())
}

/// Spacing `w0 w1 / (w0 + w1)` of anti-moiré fringes between parallel
/// families.
pub fn antimoire_fringe_width(w0: Rational, w1: Rational) -> Result<Rational> {
    check_widths(w0, w1)?;
    Ok(w0 * w1 / (w0 + w1))
}

fn check_widths(w0: Rational, w1: Rational) -> Result<()> {
    if w0 <= Rational::from_integer(0) || w1 <= Rational::from_integer(0) {
        return Err(Error::NonPositiveWidth);
    }
    Ok(())
}

/// Which combination of ring indices is constant along a fringe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FringeKind {
    /// Fringes follow constant `k0 − k1`.
    Moire,
    /// Fringes follow constant `k0 + k1`.
    AntiMoire,
}

/// Measures the fringe gradient of two rasterised labellings.
///
/// The fringe index `k0 ∓ k1` is fitted by a least-squares plane
/// `αx + βy + γ` over the central 60% of the window; fringes are its level
/// lines, of gradient `−α/β`.
pub fn fit_fringe_gradient(a: &Labeling, b: &Labeling, kind: FringeKind) -> Result<f64> {
    if a.window() != b.window() {
        return Err(Error::WindowMismatch);
    }
    let w = a.window();
    let (x0, x1) = (w.width as i64 / 5, w.width as i64 * 4 / 5);
    let (y0, y1) = (w.height as i64 / 5, w.height as i64 * 4 / 5);
    // Centred coordinates keep the normal equations well conditioned.
    let (cx, cy) = ((x0 + x1) as f64 / 2.0, (y0 + y1) as f64 / 2.0);
    let mut s = [[0f64; 3]; 3];
    let mut t = [0f64; 3];
    for dy in y0..y1 {
        for dx in x0..x1 {
            let p = Point::new(w.min.x + dx, w.min.y + dy);
            let (Some(ka), Some(kb)) = (a.ring(p), b.ring(p)) else {
                return Err(Error::Unlabelled { x: p.x, y: p.y });
            };
            let z = match kind {
                FringeKind::Moire => ka - kb,
                FringeKind::AntiMoire => ka + kb,
            } as f64;
            let v = [dx as f64 - cx, dy as f64 - cy, 1.0];
            for i in 0..3 {
                for j in 0..3 {
                    s[i][j] += v[i] * v[j];
                }
                t[i] += v[i] * z;
            }
        }
    }
    let [alpha, beta, _] = solve3(s, t).ok_or(Error::DegenerateFringe)?;
    if beta.abs() < 1e-12 {
        return Err(Error::DegenerateFringe);
    }
    Ok(-alpha / beta)
}

/// Cramer's rule for a 3×3 system.
fn solve3(m: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let det = |m: &[[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(&m);
    if d.abs() < 1e-9 {
        return None;
    }
    let mut out = [0f64; 3];
    for (k, o) in out.iter_mut().enumerate() {
        let mut mk = m;
        for i in 0..3 {
            mk[i][k] = b[i];
        }
        *o = det(&mk) / d;
    }
    Some(out)
}

/// Two broadcasting sources on a square array, combined by a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub array_size: u32,
    pub centre1: Point,
    pub centre2: Point,
    pub seq1: BroadcastSequence,
    pub seq2: BroadcastSequence,
    pub table: AggregationTable,
}

impl Scenario {
    /// The array `[0, size)²`.
    pub fn window(&self) -> Window {
        Window::new(Point::ORIGIN, self.array_size, self.array_size)
    }
}

/// Parses the key-value scenario format:
///
/// ```text
/// # comments start with '#'
/// array_size = 300
/// centre1 = 100, 150
/// centre2 = 200, 150
/// radius1 = 8          # squared radius, or a sequence such as 16,26
/// radius2 = 8
/// labels = 0,1,2,3,4,5,6
/// row = a a a a a a a  # one line per table row ...
/// table = moire        # ... or a built-in table
/// symbols = a b        # optional grey-level order
/// ```
///
/// `modulus = m` may replace `labels`. Keys may also be separated from
/// values by `:`.
impl FromStr for Scenario {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut array_size = None;
        let (mut centre1, mut centre2) = (None, None);
        let (mut seq1, mut seq2) = (None, None);
        let mut modulus: Option<(usize, u32)> = None;
        let mut builtin: Option<(usize, BuiltinTable)> = None;
        let mut rows: Vec<Vec<char>> = Vec::new();
        let mut symbols: Option<Vec<char>> = None;

        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let err = |message: String| Error::Scenario { line: line_no, message };
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let Some(sep) = line.find(['=', ':']) else {
                return Err(err(format!("expected `key = value`, got {line:?}")));
            };
            let (key, value) = (line[..sep].trim().to_ascii_lowercase(), line[sep + 1..].trim());
            let in_line = |e: Error| match e {
                Error::Scenario { message, .. } => err(message),
                other => err(other.to_string()),
            };
            match key.as_str() {
                "array_size" => {
                    let size: u32 = value.parse().map_err(|_| err(format!("bad array size {value:?}")))?;
                    if size == 0 {
                        return Err(err("array size must be positive".into()));
                    }
                    array_size = Some(size);
                }
                "centre1" | "center1" => {
                    centre1 = Some(parse_point(value).ok_or_else(|| err(format!("bad point {value:?}")))?)
                }
                "centre2" | "center2" => {
                    centre2 = Some(parse_point(value).ok_or_else(|| err(format!("bad point {value:?}")))?)
                }
                "radius1" => seq1 = Some(value.parse::<BroadcastSequence>().map_err(in_line)?),
                "radius2" => seq2 = Some(value.parse::<BroadcastSequence>().map_err(in_line)?),
                "labels" => {
                    let labels: Vec<&str> = value.trim_matches(['(', ')']).split(',').map(str::trim).collect();
                    let expected: Vec<String> = (0..labels.len()).map(|i| i.to_string()).collect();
                    if labels != expected {
                        return Err(err("labels must be 0,1,...,m-1".into()));
                    }
                    modulus = Some((line_no, labels.len() as u32));
                }
                "modulus" => {
                    let m: u32 = value.parse().map_err(|_| err(format!("bad modulus {value:?}")))?;
                    modulus = Some((line_no, m));
                }
                "table" => builtin = Some((line_no, value.parse().map_err(in_line)?)),
                "row" => rows.push(value.split_whitespace().flat_map(str::chars).collect()),
                "symbols" => symbols = Some(value.split([',', ' ']).flat_map(str::chars).collect()),
                other => return Err(err(format!("unknown key {other:?}"))),
            }
        }

        let missing = |what: &str| Error::ScenarioMissing(what.to_string());
        let table = match (builtin, rows.is_empty()) {
            (Some((line, _)), false) => {
                return Err(Error::Scenario {
                    line,
                    message: "give either `table` or `row` lines, not both".into(),
                })
            }
            (Some((_, b)), true) => {
                let t = AggregationTable::builtin(b);
                match symbols {
                    Some(order) => {
                        let rows: Vec<Vec<char>> = (0..t.modulus())
                            .map(|i| (0..t.modulus()).map(|j| t.get(i, j)).collect())
                            .collect();
                        AggregationTable::new(&rows, Some(&order))?
                    }
                    None => t,
                }
            }
            (None, false) => AggregationTable::new(&rows, symbols.as_deref())?,
            (None, true) => return Err(missing("table")),
        };
        if let Some((line, m)) = modulus {
            if m != table.modulus() {
                let e = Error::ModulusMismatch {
                    table: table.modulus(),
                    labelling: m,
                };
                return Err(Error::Scenario {
                    line,
                    message: e.to_string(),
                });
            }
        }
        Ok(Scenario {
            array_size: array_size.ok_or_else(|| missing("array_size"))?,
            centre1: centre1.ok_or_else(|| missing("centre1"))?,
            centre2: centre2.ok_or_else(|| missing("centre2"))?,
            seq1: seq1.ok_or_else(|| missing("radius1"))?,
            seq2: seq2.ok_or_else(|| missing("radius2"))?,
            table,
        })
    }
}

fn parse_point(s: &str) -> Option<Point> {
    let (x, y) = s.trim_matches(['(', ')']).split_once(',')?;
    Some(Point::new(x.trim().parse().ok()?, y.trim().parse().ok()?))
}

/// Labels the scenario's array from both centres and aggregates the labels.
pub fn custom_pattern(scenario: &Scenario) -> Result<PatternField> {
    let window = scenario.window();
    let m = scenario.table.modulus();
    let a = label_window(&scenario.seq1, scenario.centre1, m, window)?;
    let b = label_window(&scenario.seq2, scenario.centre2, m, window)?;
    aggregate_field(&a, &b, &scenario.table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::propagate_sequence;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn z(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn builtin_entries() {
        let moire = AggregationTable::builtin(BuiltinTable::Moire);
        assert_eq!((moire.get(0, 0), moire.get(0, 2), moire.get(1, 2)), ('a', 'c', 'b'));
        let anti = AggregationTable::builtin(BuiltinTable::AntiMoire);
        assert_eq!((anti.get(1, 3), anti.get(2, 3)), ('a', 'b'));
        let mod2 = AggregationTable::builtin(BuiltinTable::AntiMoireMod2);
        assert_eq!((mod2.get(0, 3), mod2.get(1, 1)), ('a', 'b'));
    }

    #[test]
    fn moire_depends_on_cyclic_distance() {
        let moire = AggregationTable::builtin(BuiltinTable::Moire);
        let anti = AggregationTable::builtin(BuiltinTable::AntiMoire);
        for i in 0..4u32 {
            for j in 0..4u32 {
                let d = i.abs_diff(j).min(4 - i.abs_diff(j));
                assert_eq!(moire.get(i, j), ['a', 'b', 'c'][d as usize]);
                assert_eq!(anti.get(i, j), ['a', 'b', 'c', 'd'][((i + j) % 4) as usize]);
            }
        }
    }

    #[test]
    fn table_validation() {
        let rows = |rs: &[&str]| rs.iter().map(|r| r.chars().collect::<Vec<_>>()).collect::<Vec<_>>();
        assert_eq!(
            AggregationTable::new(&rows(&["ab", "ca"]), None),
            Err(Error::AsymmetricTable { i: 0, j: 1 })
        );
        assert_eq!(
            AggregationTable::new(&rows(&["ab", "b"]), None),
            Err(Error::RaggedTable {
                row: 1,
                expected: 2,
                found: 1
            })
        );
        let t = AggregationTable::new(&rows(&["ba", "ab"]), Some(&['a', 'b'])).unwrap();
        assert_eq!(t.symbols(), &['a', 'b']);
        assert_eq!(t.index(0, 0), 1);
        assert_eq!(
            AggregationTable::new(&rows(&["ba", "ab"]), Some(&['a'])),
            Err(Error::InvalidSymbol('b'))
        );
    }

    #[test]
    fn identical_labellings_give_the_diagonal() {
        let window = Window::centred(Point::ORIGIN, 10);
        let seq: BroadcastSequence = "5".parse().unwrap();
        let a = label_window(&seq, Point::ORIGIN, 4, window).unwrap();
        let field = aggregate_field(&a, &a, &AggregationTable::builtin(BuiltinTable::Moire)).unwrap();
        assert!(window.points().all(|p| field.symbol(p) == Some('a')));
    }

    #[test]
    fn aggregation_is_symmetric() {
        let window = Window::new(Point::new(-6, -4), 13, 9);
        let a = label_window(&"2".parse().unwrap(), Point::ORIGIN, 4, window).unwrap();
        let b = label_window(&"5".parse().unwrap(), Point::new(2, 1), 4, window).unwrap();
        for name in [
            BuiltinTable::Moire,
            BuiltinTable::AntiMoire,
            BuiltinTable::AntiMoireMod2,
        ] {
            let t = AggregationTable::builtin(name);
            assert_eq!(
                aggregate_field(&a, &b, &t).unwrap(),
                aggregate_field(&b, &a, &t).unwrap()
            );
        }
    }

    #[test]
    fn aggregation_errors() {
        let w = Window::centred(Point::ORIGIN, 4);
        let a = label_window(&"2".parse().unwrap(), Point::ORIGIN, 4, w).unwrap();
        let b = label_window(&"2".parse().unwrap(), Point::ORIGIN, 3, w).unwrap();
        let t = AggregationTable::builtin(BuiltinTable::Moire);
        assert_eq!(
            aggregate_field(&a, &b, &t),
            Err(Error::ModulusMismatch { table: 4, labelling: 3 })
        );
        let c = label_window(
            &"2".parse().unwrap(),
            Point::ORIGIN,
            4,
            Window::centred(Point::ORIGIN, 3),
        )
        .unwrap();
        assert_eq!(aggregate_field(&a, &c, &t), Err(Error::WindowMismatch));
        let partial = propagate_sequence(&"1".parse().unwrap(), Point::ORIGIN, 1, 4, w).unwrap();
        assert!(matches!(
            aggregate_field(&a, &partial, &t),
            Err(Error::Unlabelled { .. })
        ));
    }

    #[test]
    fn bands() {
        let w = Window::new(Point::new(-5, -5), 11, 11);
        let flat = LineFamily::new(z(0), z(0), z(1)).unwrap();
        let wide = LineFamily::new(z(0), z(0), z(2)).unwrap();
        let tilted = LineFamily::new(q(1, 2), z(0), z(3)).unwrap();
        for p in w.points() {
            assert_eq!(flat.band(p), p.y);
            assert_eq!(wide.band(p), p.y.div_euclid(2));
            assert_eq!(tilted.band(p), (2 * p.y - p.x).div_euclid(6));
        }
        // Points on a band's upper line belong to the next band.
        assert_eq!(wide.band(Point::new(0, 2)), 1);
        let lab = banded_labeling(&wide, w, 4).unwrap();
        assert_eq!(lab.label(Point::new(0, -1)), Some(3));
        assert_eq!(LineFamily::new(z(0), z(0), z(0)), Err(Error::NonPositiveWidth));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(moire_gradient(q(1, 3), z(2), q(1, 3), z(5)).unwrap(), q(1, 3));
        assert_eq!(moire_gradient(z(0), z(2), z(1), z(1)).unwrap(), z(2));
        assert_eq!(moire_gradient(z(0), z(2), z(1), z(2)), Err(Error::DegenerateFringe));
        assert_eq!(antimoire_gradient(q(2, 5), z(2), q(2, 5), z(7)).unwrap(), q(2, 5));
        assert_eq!(antimoire_gradient(z(0), z(1), z(1), z(1)).unwrap(), q(1, 2));
        assert_eq!(antimoire_gradient(z(1), z(3), z(0), z(2)).unwrap(), q(2, 5));
        assert_eq!(moire_fringe_width(z(1), z(5)).unwrap(), q(5, 4));
        assert_eq!(moire_fringe_width(z(7), z(1)).unwrap(), q(7, 6));
        assert_eq!(antimoire_fringe_width(z(1), z(1)).unwrap(), q(1, 2));
    }

    #[test]
    fn raster_fit_examples() {
        let w = Window::new(Point::ORIGIN, 200, 200);
        let diag = ((w.width.pow(2) + w.height.pow(2)) as f64).sqrt();
        let cases = [
            (FringeKind::Moire, (z(0), z(2)), (z(1), z(1))),
            (FringeKind::AntiMoire, (z(0), z(1)), (z(1), z(1))),
            (FringeKind::AntiMoire, (z(1), z(3)), (z(0), z(2))),
        ];
        for (kind, (m0, w0), (m1, w1)) in cases {
            let a = banded_labeling(&LineFamily::new(m0, z(0), w0).unwrap(), w, 4).unwrap();
            let b = banded_labeling(&LineFamily::new(m1, z(0), w1).unwrap(), w, 4).unwrap();
            let fit = fit_fringe_gradient(&a, &b, kind).unwrap();
            let exact = match kind {
                FringeKind::Moire => moire_gradient(m0, w0, m1, w1),
                FringeKind::AntiMoire => antimoire_gradient(m0, w0, m1, w1),
            }
            .unwrap();
            let exact = *exact.numer() as f64 / *exact.denom() as f64;
            assert!((fit - exact).abs() <= 1.0 / diag, "{kind:?}: {fit} vs {exact}");
        }
    }

    #[test]
    fn scenario_parsing() {
        let text = "# disc motif\narray_size = 30\ncentre1 = (10, 15)\ncentre2: 20,15\nradius1 = 8\nradius2 = 16,26\nlabels = (0,1,2)\nrow = a b a\nrow = b c b\nrow = a b a\n";
        let s: Scenario = text.parse().unwrap();
        assert_eq!(s.array_size, 30);
        assert_eq!(s.centre2, Point::new(20, 15));
        assert_eq!(s.seq2.period(), 2);
        assert_eq!(s.table.symbols(), &['a', 'b', 'c']);

        let builtin: Scenario =
            "array_size=8\ncentre1=1,1\ncentre2=6,6\nradius1=1\nradius2=2\ntable=antimoire\nsymbols=d c b a\n"
                .parse()
                .unwrap();
        assert_eq!(builtin.table.symbols(), &['d', 'c', 'b', 'a']);
        assert_eq!(builtin.table.get(1, 3), 'a');
    }

    #[test]
    fn scenario_errors() {
        let base = "array_size = 10\ncentre1 = 1,1\ncentre2 = 5,5\nradius1 = 2\nradius2 = 2\n";
        let err = format!("{base}row = a b\nrow = c a\n").parse::<Scenario>().unwrap_err();
        assert_eq!(
            err.to_string(),
            "aggregation table must be symmetric (entry (0, 1) differs from (1, 0))"
        );
        let err = format!("{base}modulus = 3\ntable = moire\n")
            .parse::<Scenario>()
            .unwrap_err();
        assert!(matches!(err, Error::Scenario { line: 6, .. }), "{err}");
        let err = "array_size = 10\nbogus = 1\n".parse::<Scenario>().unwrap_err();
        assert!(matches!(err, Error::Scenario { line: 2, .. }));
        let err = format!("{base}radius2 = 3\ntable = moire\n")
            .parse::<Scenario>()
            .unwrap_err();
        assert_eq!(err.to_string(), "scenario line 6: 3 is not a sum of two squares");
        let err = "array_size = 10\ntable = moire\n".parse::<Scenario>().unwrap_err();
        assert_eq!(err.to_string(), "scenario is missing `centre1`");
    }

    #[test]
    fn small_pattern_is_deterministic() {
        let text = "array_size = 40\ncentre1 = 12,20\ncentre2 = 28,20\nradius1 = 8\nradius2 = 8\ntable = moire\n";
        let s: Scenario = text.parse().unwrap();
        let a = custom_pattern(&s).unwrap();
        let b = custom_pattern(&s).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.cells.len(), 1600);
        // Both centres sit in ring 0 of their own source and the other's
        // labels differ by the cyclic distance of the rings.
        assert_eq!(a.symbol(Point::new(20, 20)), Some('a'));
        let img = a.to_image();
        assert_eq!((img.width, img.height), (40, 40));
        assert!(a.to_csv().starts_with("x,y,symbol\n0,0,"));
    }
}
