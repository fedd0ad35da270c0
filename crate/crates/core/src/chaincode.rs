//! Freeman chain codes, with emphasis on the first-octant codes of
//! discrete circles.
//!
//! Directions are numbered clockwise starting from `+x`:
//!
//! ```text
//!   5 6 7
//!   4 . 0
//!   3 2 1
//! ```
//!
//! so `0 = (1, 0)`, `1 = (1, -1)`, `2 = (0, -1)` and so on. A first-octant
//! code starts at the top of the circle, `(0, r')`, and walks clockwise
//! until it reaches the diagonal `x = y`; it only ever uses `0` and `1`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::lattice::{Point, SquaredRadius};

/// An exact gradient `#1 / length`, always in lowest terms.
pub type Gradient = Ratio<u64>;

/// Displacement of a direction symbol.
///
/// # Panics
///
/// Panics if `symbol > 7`.
pub fn direction(symbol: u8) -> Point {
    const TABLE: [(i64, i64); 8] = [(1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0), (-1, 1), (0, 1), (1, 1)];
    let (x, y) = TABLE[symbol as usize];
    Point::new(x, y)
}

/// Inverse of [`direction`] for unit steps.
pub fn symbol_of(step: Point) -> Option<u8> {
    (0..8).find(|&s| direction(s) == step)
}

/// A word over the eight direction symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ChainCode {
    word: Vec<u8>,
}

impl ChainCode {
    pub fn new(word: Vec<u8>) -> Result<Self> {
        if let Some(&s) = word.iter().find(|&&s| s > 7) {
            return Err(Error::InvalidSymbol(char::from(b'0' + s.min(9))));
        }
        Ok(ChainCode { word })
    }

    pub fn empty() -> Self {
        ChainCode::default()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// True if the word only uses the first-octant symbols `0` and `1`.
    pub fn is_octant_form(&self) -> bool {
        self.word.iter().all(|&s| s <= 1)
    }

    pub fn count(&self, symbol: u8) -> usize {
        self.word.iter().filter(|&&s| s == symbol).count()
    }

    fn from_symbols_unchecked(word: Vec<u8>) -> Self {
        ChainCode { word }
    }
}

impl fmt::Display for ChainCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.word {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for ChainCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let word = s
            .trim()
            .chars()
            .map(|c| match c {
                '0'..='7' => Ok(c as u8 - b'0'),
                _ => Err(Error::InvalidSymbol(c)),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(ChainCode { word })
    }
}

/// How a first-octant trace meets the diagonal.
///
/// Two circles can share an octant word yet end differently: `ζ^45` and
/// `ζ^34` are both `0001`, but the first stops at `(4, 5)`, just above the
/// diagonal, and the second at `(4, 4)`. Composition and full-circle
/// reconstruction need to know which.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum OctantEnd {
    /// The trace stops on a diagonal point `(x, x)`.
    #[default]
    OnDiagonal,
    /// The trace stops at `(x, x + 1)`; the next boundary step is the `1`
    /// that crosses the diagonal.
    Straddle,
}

impl OctantEnd {
    /// Distance `y - x` of the end point from the diagonal.
    pub fn gap(self) -> u64 {
        match self {
            OctantEnd::OnDiagonal => 0,
            OctantEnd::Straddle => 1,
        }
    }
}

/// A first-octant chain code: a word over `{0, 1}` plus its end type.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OctantCode {
    code: ChainCode,
    end: OctantEnd,
}

impl OctantCode {
    pub fn new(code: ChainCode, end: OctantEnd) -> Result<Self> {
        if let Some(&symbol) = code.word.iter().find(|&&s| s > 1) {
            return Err(Error::NotOctantSymbol { symbol });
        }
        Ok(OctantCode { code, end })
    }

    pub fn code(&self) -> &ChainCode {
        &self.code
    }

    pub fn symbols(&self) -> &[u8] {
        &self.code.word
    }

    pub fn end(&self) -> OctantEnd {
        self.end
    }

    pub fn len(&self) -> usize {
        self.code.len()
    }

    pub fn is_empty(&self) -> bool {
        self.code.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.code.count(1)
    }

    /// Height `Y` of the topmost row of the traced region: the trace starts
    /// at `(0, Y)`.
    pub fn top(&self) -> u64 {
        (self.len() + self.ones()) as u64 + self.end.gap()
    }

    pub fn start(&self) -> Point {
        Point::new(0, self.top() as i64)
    }

    /// The points visited by the octant trace.
    pub fn trace(&self) -> Vec<Point> {
        trace(&self.code, self.start())
    }

    pub fn gradient(&self) -> Result<Gradient> {
        gradient(self)
    }
}

impl fmt::Display for OctantCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.code.fmt(f)
    }
}

/// Parses a plain `{0,1}` word. The end type cannot be recovered from the
/// word alone and defaults to [`OctantEnd::OnDiagonal`].
impl FromStr for OctantCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OctantCode::new(s.parse()?, OctantEnd::OnDiagonal)
    }
}

impl TryFrom<ChainCode> for OctantCode {
    type Error = Error;

    fn try_from(code: ChainCode) -> Result<Self> {
        OctantCode::new(code, OctantEnd::OnDiagonal)
    }
}

/// Extracts the octant code of a region from its row profile.
///
/// `row_max(y)` must return the largest `x` in row `y` for every
/// `0 ≤ y ≤ top`. The region is assumed to be symmetric about the diagonal
/// and row-convex, as discs and their sums are.
pub(crate) fn octant_from_rows(top: u64, row_max: impl Fn(u64) -> u64) -> OctantCode {
    let mut y = top;
    let mut x = row_max(top).min(top);
    let mut word = vec![0u8; x as usize];
    while y > 0 && x < y - 1 {
        word.push(1);
        x += 1;
        y -= 1;
        let target = row_max(y).min(y);
        debug_assert!(target >= x, "row profile is not convex");
        word.extend(std::iter::repeat_n(0, target.saturating_sub(x) as usize));
        x = x.max(target);
    }
    let end = if y == x {
        OctantEnd::OnDiagonal
    } else {
        OctantEnd::Straddle
    };
    OctantCode {
        code: ChainCode::from_symbols_unchecked(word),
        end,
    }
}

/// The first-octant code of `ζ^{r²}`.
///
/// Row `y = r' - i` of the boundary contributes the chain-code segment
/// `s_i`, made of the abscissae `x > 0` with
/// `r² − (r' − i + 1)² < x² ≤ r² − (r' − i)²`. Segment `s_0` is the run of
/// zeros along the top row; every later segment is a `1` followed by zeros.
/// Generation stops at the diagonal.
pub fn first_octant_code(r2: SquaredRadius) -> OctantCode {
    let n = r2.get();
    let top = r2.floor_radius();
    octant_from_rows(top, |y| (n - y * y).isqrt())
}

/// Kind of a [`ChainCodeSegment`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentKind {
    /// `0^len`; only ever the first segment.
    LeadingZeros,
    /// `1 0^{len-1}`.
    OneThenZeros,
}

/// A chain-code segment: the word `0^len` or `1 0^{len-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChainCodeSegment {
    pub kind: SegmentKind,
    pub length: u32,
}

impl ChainCodeSegment {
    pub fn render(&self) -> String {
        match self.kind {
            SegmentKind::LeadingZeros => "0".repeat(self.length as usize),
            SegmentKind::OneThenZeros => format!("1{}", "0".repeat(self.length as usize - 1)),
        }
    }
}

impl fmt::Display for ChainCodeSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SegmentKind::LeadingZeros => write!(f, "0^{}", self.length),
            SegmentKind::OneThenZeros => write!(f, "10^{}", self.length - 1),
        }
    }
}

/// Splits an octant word into its leading zeros and `1 0*` segments.
pub fn segments(code: &OctantCode) -> Vec<ChainCodeSegment> {
    let word = code.symbols();
    let lead = word.iter().take_while(|&&s| s == 0).count();
    let mut out = Vec::new();
    if lead > 0 {
        out.push(ChainCodeSegment {
            kind: SegmentKind::LeadingZeros,
            length: lead as u32,
        });
    }
    for &s in &word[lead..] {
        if s == 1 {
            out.push(ChainCodeSegment {
                kind: SegmentKind::OneThenZeros,
                length: 1,
            });
        } else {
            out.last_mut().expect("word after leading zeros starts with 1").length += 1;
        }
    }
    out
}

/// `#1(u) / |u|` for a non-empty octant word.
pub fn gradient(code: &OctantCode) -> Result<Gradient> {
    word_gradient(code.symbols())
}

fn word_gradient(word: &[u8]) -> Result<Gradient> {
    if word.is_empty() {
        return Err(Error::GradientUndefined);
    }
    let ones = word.iter().filter(|&&s| s == 1).count() as u64;
    Ok(Ratio::new(ones, word.len() as u64))
}

/// Shape of the primitive period of a line segment, described by the zero
/// runs that follow each `1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentForm {
    /// `0`: the horizontal run at the top of the circle.
    Flat,
    /// `1 0^n`.
    Run { n: u32 },
    /// `(1 0^n)(1 0^{n+1})^m`.
    OneThenLonger { n: u32, m: u32 },
    /// `(1 0^n)^m (1 0^{n+1})`.
    ManyThenLonger { n: u32, m: u32 },
}

impl SegmentForm {
    /// Classifies a primitive period, or returns `None` if it has none of
    /// the admissible shapes.
    pub fn classify(period: &[u8]) -> Option<SegmentForm> {
        if period == [0] {
            return Some(SegmentForm::Flat);
        }
        if period.first() != Some(&1) {
            return None;
        }
        let runs: Vec<u32> = period
            .split(|&s| s == 1)
            .skip(1)
            .map(|zeros| zeros.len() as u32)
            .collect();
        let n = runs[0];
        if runs.len() == 1 {
            return Some(SegmentForm::Run { n });
        }
        let m = runs.len() as u32 - 1;
        if runs[1..].iter().all(|&r| r == n + 1) {
            return Some(SegmentForm::OneThenLonger { n, m });
        }
        let (last, init) = runs.split_last().unwrap();
        if *last == n + 1 && init.iter().all(|&r| r == n) {
            return Some(SegmentForm::ManyThenLonger { n, m });
        }
        None
    }

    /// The `n` of the form: the shortest zero run after a `1`.
    pub fn base_run(self) -> u32 {
        match self {
            SegmentForm::Flat => 0,
            SegmentForm::Run { n } | SegmentForm::OneThenLonger { n, .. } | SegmentForm::ManyThenLonger { n, .. } => n,
        }
    }
}

/// A maximal straight piece of an octant code: a primitive period repeated
/// `repetitions` times.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LineSegment {
    pub period: ChainCode,
    pub repetitions: u32,
    pub gradient: Gradient,
    /// `None` if the period has none of the three circle forms. Large discs
    /// have such edges; the first is `1110110` on `ζ^6697`.
    pub form: Option<SegmentForm>,
}

impl LineSegment {
    pub fn word(&self) -> Vec<u8> {
        self.period.symbols().repeat(self.repetitions as usize)
    }

    pub fn len(&self) -> usize {
        self.period.len() * self.repetitions as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ones(&self) -> usize {
        self.period.count(1) * self.repetitions as usize
    }
}

impl fmt::Display for LineSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{} g={}", self.period, self.repetitions, self.gradient)
    }
}

/// A word-level line segment before form checking.
struct HullEdge {
    start: usize,
    end: usize,
    gradient: Gradient,
    period: usize,
    periodic: bool,
}

/// Cuts a `{0,1}` word at the vertices of the upper convex hull of its
/// trace. Each piece is a straight edge; gradients strictly increase.
fn hull_edges(word: &[u8]) -> Vec<HullEdge> {
    let mut pts = Vec::with_capacity(word.len() + 1);
    let mut y = 0i64;
    pts.push((0i64, 0i64));
    for (i, &s) in word.iter().enumerate() {
        y -= s as i64;
        pts.push((i as i64 + 1, y));
    }
    let mut hull: Vec<usize> = Vec::new();
    for i in 0..pts.len() {
        while hull.len() >= 2 {
            let (o, a, b) = (pts[hull[hull.len() - 2]], pts[hull[hull.len() - 1]], pts[i]);
            let cross = (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
            if cross >= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    hull.windows(2)
        .map(|w| {
            let (start, end) = (w[0], w[1]);
            let sub = &word[start..end];
            let gradient = word_gradient(sub).expect("hull edges are non-empty");
            let period = *gradient.denom() as usize;
            let periodic = sub.chunks(period).all(|c| c == &sub[..period]);
            HullEdge {
                start,
                end,
                gradient,
                period,
                periodic,
            }
        })
        .collect()
}

/// The line segments of an octant code, in order of strictly increasing
/// gradient.
///
/// Every edge of the code's convex hull must be an exact repetition of its
/// period. The form and segment-length conditions of
/// [`validate_octant_code`] are not required, since compositions of discs
/// may violate them.
pub fn line_segments(code: &OctantCode) -> Result<Vec<LineSegment>> {
    let word = code.symbols();
    hull_edges(word)
        .into_iter()
        .map(|e| {
            if !e.periodic {
                return Err(Error::NotOctantCode(code.to_string()));
            }
            let period = &word[e.start..e.start + e.period];
            Ok(LineSegment {
                period: ChainCode::from_symbols_unchecked(period.to_vec()),
                repetitions: ((e.end - e.start) / e.period) as u32,
                gradient: e.gradient,
                form: SegmentForm::classify(period),
            })
        })
        .collect()
}

/// Gradients of the edges of the octant's polygon side: those of the line
/// segments, plus `1` when the end straddles the diagonal, since the edge
/// crossing the diagonal then runs at 45°.
pub fn gradient_set(code: &OctantCode) -> Result<BTreeSet<Gradient>> {
    let mut set: BTreeSet<Gradient> = line_segments(code)?.iter().map(|s| s.gradient).collect();
    if code.end() == OctantEnd::Straddle {
        set.insert(Gradient::from_integer(1));
    }
    Ok(set)
}

/// True if `g` has one of the reduced forms `1/n`, `a/(a(n+1) - 1)` or
/// `a/(an + 1)` for some `n ≥ 1`. Gradient `0` is the flat run at the top
/// of the circle and is accepted as well.
pub fn expressible_gradient(g: Gradient) -> bool {
    let (a, b) = (*g.numer(), *g.denom());
    if a == 0 || a == 1 {
        return true;
    }
    if a > b {
        return false;
    }
    let one_then_longer = (b + 1) % a == 0 && (b + 1) / a >= 2;
    let many_then_longer = (b - 1) % a == 0 && (b - 1) / a >= 1;
    one_then_longer || many_then_longer
}

/// One failed check reported by [`validate_octant_code`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A symbol other than `0` or `1`.
    Alphabet { position: usize, symbol: u8 },
    /// Adjacent `1 0*` segments with lengths `earlier`, `later` breaking
    /// `⌊(earlier − 1)/2⌋ − 1 ≤ later ≤ earlier + 1`. `index` is the
    /// position of the later segment in [`segments`].
    SegmentLength { index: usize, earlier: u32, later: u32 },
    /// Three consecutive segments of lengths `L`, `L + 1`, `L + 2`,
    /// starting at segment `index`.
    IncreasingRuns { index: usize, length: u32 },
    /// A straight piece `word[start..end]` that is not a repeated period.
    NonPeriodic { start: usize, end: usize },
    /// A straight piece whose period has none of the admissible forms.
    InvalidForm { start: usize, end: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Alphabet { position, symbol } => {
                write!(f, "symbol {symbol} at position {position} is outside {{0,1}}")
            }
            Violation::SegmentLength { index, earlier, later } => write!(
                f,
                "segment {index} has length {later} after a segment of length {earlier}"
            ),
            Violation::IncreasingRuns { index, length } => write!(
                f,
                "segments {index}..{} have lengths {length}, {}, {}",
                index + 3,
                length + 1,
                length + 2
            ),
            Violation::NonPeriodic { start, end } => {
                write!(f, "straight piece {start}..{end} is not periodic")
            }
            Violation::InvalidForm { start, end } => {
                write!(f, "straight piece {start}..{end} has an inadmissible period")
            }
        }
    }
}

/// Outcome of [`validate_octant_code`]; valid iff there are no violations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks a word against the properties every first-octant circle code
/// has. Violations are returned as data.
pub fn validate_octant_code(code: &ChainCode) -> ValidationReport {
    let mut violations: Vec<Violation> = code
        .symbols()
        .iter()
        .enumerate()
        .filter(|&(_, &s)| s > 1)
        .map(|(position, &symbol)| Violation::Alphabet { position, symbol })
        .collect();
    if !violations.is_empty() {
        return ValidationReport { violations };
    }
    let octant = OctantCode {
        code: code.clone(),
        end: OctantEnd::OnDiagonal,
    };

    let segs = segments(&octant);
    let first_one = segs
        .iter()
        .position(|s| s.kind == SegmentKind::OneThenZeros)
        .unwrap_or(segs.len());
    let ones: Vec<(usize, u32)> = segs.iter().map(|s| s.length).enumerate().skip(first_one).collect();
    for pair in ones.windows(2) {
        let ((_, earlier), (index, later)) = (pair[0], pair[1]);
        let lower = (earlier as i64 - 1) / 2 - 1;
        if (later as i64) < lower || later > earlier + 1 {
            violations.push(Violation::SegmentLength { index, earlier, later });
        }
    }
    for triple in ones.windows(3) {
        let (index, length) = triple[0];
        if triple[1].1 == length + 1 && triple[2].1 == length + 2 {
            violations.push(Violation::IncreasingRuns { index, length });
        }
    }

    let word = code.symbols();
    for e in hull_edges(word) {
        let (start, end) = (e.start, e.end);
        if !e.periodic {
            violations.push(Violation::NonPeriodic { start, end });
        } else if SegmentForm::classify(&word[start..start + e.period]).is_none() {
            violations.push(Violation::InvalidForm { start, end });
        }
    }
    ValidationReport { violations }
}

/// Maps an octant-1 code to octant `n` (1-based, numbered clockwise from
/// the top of the circle). Odd octants keep the word order and map
/// `0 → n−1`, `1 → n`; even octants are traversed in reverse and map
/// `0 → n`, `1 → n−1` (mod 8).
pub fn octant_map(code: &OctantCode, n: u8) -> Result<ChainCode> {
    if !(1..=8).contains(&n) {
        return Err(Error::InvalidOctant(n));
    }
    let word = code.symbols();
    let mapped = if n % 2 == 1 {
        word.iter().map(|&s| (n - 1 + s) % 8).collect()
    } else {
        word.iter().rev().map(|&s| (n + 8 - s) % 8).collect()
    };
    Ok(ChainCode::from_symbols_unchecked(mapped))
}

/// Assembles the closed clockwise tour of a circle from its octant code,
/// starting at `code.start()`. A straddling end adds one diagonal step at
/// each of the four diagonals.
pub fn full_circle_from_octant(code: &OctantCode) -> ChainCode {
    let mut word = Vec::with_capacity(8 * code.len() + 4);
    for n in 1..=8u8 {
        if n % 2 == 0 && code.end() == OctantEnd::Straddle {
            word.push(n - 1);
        }
        word.extend(octant_map(code, n).expect("octant index in range").word);
    }
    ChainCode::from_symbols_unchecked(word)
}

/// The closed clockwise chain code of the whole circle, starting at
/// `(0, r')`. Empty for `r² = 0`.
pub fn full_circle_code(r2: SquaredRadius) -> ChainCode {
    full_circle_from_octant(&first_octant_code(r2))
}

/// The `|code| + 1` points visited by following `code` from `start`.
pub fn trace(code: &ChainCode, start: Point) -> Vec<Point> {
    let mut pts = Vec::with_capacity(code.len() + 1);
    let mut p = start;
    pts.push(p);
    for &s in code.symbols() {
        p = p + direction(s);
        pts.push(p);
    }
    pts
}
