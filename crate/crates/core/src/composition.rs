//! Composition of disc chain codes.
//!
//! Composing two discs means taking their sumset
//! `{p + q : p ∈ ζ^a, q ∈ ζ^b}`. On octant codes this becomes a merge of
//! line segments by increasing gradient, with one subtlety: the gradient-1
//! tail and the end type have to be combined in half steps, because a
//! straddling end contributes half a diagonal step to each octant.

use std::fmt;
use std::str::FromStr;

use crate::chaincode::{
    first_octant_code, line_segments, octant_from_rows, ChainCode, Gradient, LineSegment, OctantCode, OctantEnd,
};
use crate::error::{Error, Result};
use crate::lattice::SquaredRadius;

/// Where a line segment of a composed code came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    /// Index of the input the segment was taken from.
    pub source: usize,
    pub segment: LineSegment,
}

/// A composed octant code together with the input segments it was built
/// from, in emitted order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionResult {
    pub code: OctantCode,
    pub provenance: Vec<Provenance>,
}

impl CompositionResult {
    /// CSV rows `segment,gradient,source`, with a header line.
    pub fn provenance_csv(&self) -> String {
        let mut out = String::from("segment,gradient,source\n");
        for p in &self.provenance {
            let word: String = p.segment.word().iter().map(|s| char::from(b'0' + s)).collect();
            out.push_str(&format!("{word},{},{}\n", p.segment.gradient, p.source));
        }
        out
    }
}

/// A periodic broadcasting sequence of squared radii `(r_1, ..., r_l)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BroadcastSequence {
    radii: Vec<SquaredRadius>,
}

impl BroadcastSequence {
    /// Radii must be non-empty and at least 1: a zero radius never spreads.
    pub fn new(radii: Vec<SquaredRadius>) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::EmptySequence);
        }
        if radii.iter().any(|r| r.get() == 0) {
            return Err(Error::ZeroRadius);
        }
        Ok(BroadcastSequence { radii })
    }

    pub fn constant(r2: SquaredRadius) -> Result<Self> {
        BroadcastSequence::new(vec![r2])
    }

    pub fn radii(&self) -> &[SquaredRadius] {
        &self.radii
    }

    pub fn period(&self) -> usize {
        self.radii.len()
    }

    /// Radius used at step `j ≥ 1`.
    pub fn radius(&self, j: usize) -> SquaredRadius {
        assert!(j >= 1, "steps are numbered from 1");
        self.radii[(j - 1) % self.radii.len()]
    }

    /// Radii of the first `k` steps.
    pub fn steps(&self, k: usize) -> impl Iterator<Item = SquaredRadius> + '_ {
        (1..=k).map(|j| self.radius(j))
    }

    /// `Σ_{j ≤ k} ⌊r_j⌋`: how far step `k` can reach along an axis.
    pub fn reach(&self, k: usize) -> u64 {
        self.steps(k).map(SquaredRadius::floor_radius).sum()
    }
}

impl fmt::Display for BroadcastSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.radii.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses a comma-separated list such as `16,26`.
impl FromStr for BroadcastSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let radii = s
            .split(',')
            .map(|part| {
                let part = part.trim();
                let n: u64 = part
                    .parse()
                    .map_err(|_| Error::InvalidSymbol(part.chars().find(|c| !c.is_ascii_digit()).unwrap_or(' ')))?;
                SquaredRadius::new(n)
            })
            .collect::<Result<Vec<_>>>()?;
        BroadcastSequence::new(radii)
    }
}

/// Row profile of the quadrant `x, y ≥ 0` of the region an octant code
/// bounds: `rows[y]` is the largest `x` in row `y`.
fn quadrant_rows(code: &OctantCode) -> Vec<u64> {
    let pts = code.trace();
    let top = code.top() as usize;
    let end = *pts.last().expect("trace is never empty");
    let (xe, ye) = (end.x as usize, end.y as usize);

    let mut row_max = vec![0u64; top + 1];
    let mut col_top = vec![0u64; xe + 1];
    let mut seen_col = vec![false; xe + 1];
    for p in &pts {
        let (x, y) = (p.x as usize, p.y as usize);
        row_max[y] = row_max[y].max(x as u64);
        if !seen_col[x] {
            seen_col[x] = true;
            col_top[x] = y as u64;
        }
    }
    // Below the end row the profile is the mirror image of the column tops.
    row_max[..ye].copy_from_slice(&col_top[..ye]);
    if code.end() == OctantEnd::OnDiagonal {
        row_max[ye] = col_top[xe];
    }
    row_max
}

/// Composes two octant codes by brute force over their row profiles: row
/// `k` from the top of `u ∘ v` is the best split `max_n X_u(n) + X_v(k − n)`.
/// Quadratic in the code lengths; kept as a cross-check for
/// [`compose_linear`].
pub fn compose_naive(u: &OctantCode, v: &OctantCode) -> Result<CompositionResult> {
    let provenance = merged_provenance(&[u, v])?;
    let (ru, rv) = (quadrant_rows(u), quadrant_rows(v));
    let (yu, yv) = (ru.len() - 1, rv.len() - 1);
    let top = yu + yv;
    let mut rows = vec![0u64; top + 1];
    for k in 0..=top {
        let best = (k.saturating_sub(yv)..=k.min(yu))
            .map(|n| ru[yu - n] + rv[yv - (k - n)])
            .max()
            .expect("split range is non-empty");
        rows[top - k] = best;
    }
    let code = octant_from_rows(top as u64, |y| rows[y as usize]);
    Ok(CompositionResult { code, provenance })
}

/// Composes two octant codes by merging their line segments in order of
/// increasing gradient. Runs in time linear in `|u| + |v|`.
pub fn compose_linear(u: &OctantCode, v: &OctantCode) -> Result<CompositionResult> {
    compose_many(&[u, v])
}

/// Composes any number of octant codes at once; equivalent to a left fold
/// of [`compose_linear`].
///
/// Segments of equal gradient are fused, earlier inputs first. Every
/// gradient-1 segment contributes two half steps per `1` and a straddling
/// end contributes one; the total `T` yields `⌊T/2⌋` trailing ones and a
/// straddling end iff `T` is odd.
pub fn compose_many(inputs: &[&OctantCode]) -> Result<CompositionResult> {
    let provenance = merged_provenance(inputs)?;
    let mut half_steps = 0u64;
    for input in inputs {
        half_steps += input.end().gap();
    }
    let mut word: Vec<u8> = Vec::new();
    for p in &provenance {
        if p.segment.gradient == Gradient::from_integer(1) {
            half_steps += 2 * p.segment.ones() as u64;
        } else {
            word.extend(p.segment.word());
        }
    }
    word.extend(std::iter::repeat_n(1, (half_steps / 2) as usize));
    let end = if half_steps % 2 == 1 {
        OctantEnd::Straddle
    } else {
        OctantEnd::OnDiagonal
    };
    let code = OctantCode::new(ChainCode::new(word)?, end)?;
    Ok(CompositionResult { code, provenance })
}

/// All input line segments, stably sorted by gradient.
fn merged_provenance(inputs: &[&OctantCode]) -> Result<Vec<Provenance>> {
    let mut all = Vec::new();
    for (source, input) in inputs.iter().enumerate() {
        for segment in line_segments(input)? {
            all.push(Provenance { source, segment });
        }
    }
    all.sort_by_key(|p| p.segment.gradient);
    Ok(all)
}

/// The code of `ζ^{r_1} ∘ … ∘ ζ^{r_k}` for the first `k` steps of `seq`.
/// `k = 0` gives the single-point disc.
pub fn compose_sequence(seq: &BroadcastSequence, k: usize) -> CompositionResult {
    let codes: Vec<OctantCode> = seq.steps(k).map(first_octant_code).collect();
    let refs: Vec<&OctantCode> = codes.iter().collect();
    compose_many(&refs).expect("circle codes always have valid line segments")
}

/// If one code is the other with every line segment repeated `k` times,
/// returns `k ≥ 1` (larger over smaller, whichever argument is larger).
pub fn similar(u: &OctantCode, v: &OctantCode) -> Option<u64> {
    let (su, sv) = (line_segments(u).ok()?, line_segments(v).ok()?);
    if su.len() != sv.len() {
        return None;
    }
    if su.is_empty() {
        return Some(1);
    }
    let (small, large) = if u.len() <= v.len() { (&su, &sv) } else { (&sv, &su) };
    let mut k = None;
    for (a, b) in small.iter().zip(large.iter()) {
        if a.period != b.period || b.repetitions % a.repetitions != 0 {
            return None;
        }
        let q = (b.repetitions / a.repetitions) as u64;
        if *k.get_or_insert(q) != q {
            return None;
        }
    }
    k
}

/// A multiset of radii whose composition is similar to a target code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Radii with non-zero counts, in the order they were supplied.
    pub counts: Vec<(SquaredRadius, u32)>,
    /// The composition equals the target with every segment repeated `k`
    /// times.
    pub k: u64,
}

/// Searches for counts `c_i ≤ bound` such that `⊙ (ζ^{r_i})^{c_i}` is the
/// target `p` scaled by some `k ≥ 1`.
///
/// Every count vector in `[0, bound]^n` is tried, so the cost grows as
/// `(bound + 1)^n`. Among solutions the smallest `k` wins, then the
/// smallest total count, then the first in enumeration order.
pub fn decompose_similar(p: &OctantCode, radii: &[SquaredRadius], bound: u32) -> Option<Decomposition> {
    let codes: Vec<OctantCode> = radii.iter().map(|&r| first_octant_code(r)).collect();
    let mut counts = vec![0u32; radii.len()];
    let mut best: Option<(u64, u32, Vec<u32>)> = None;
    // Advance the odometer; stop after wrapping around.
    while let Some(i) = counts.iter().position(|&c| c < bound) {
        counts[i] += 1;
        for c in &mut counts[..i] {
            *c = 0;
        }

        let total: u32 = counts.iter().sum();
        let mut inputs = Vec::with_capacity(total as usize);
        for (code, &c) in codes.iter().zip(&counts) {
            inputs.extend(std::iter::repeat_n(code, c as usize));
        }
        let composed = compose_many(&inputs).ok()?.code;
        if composed.len() < p.len() {
            continue;
        }
        if let Some(k) = similar(p, &composed) {
            let better = match &best {
                None => true,
                Some((bk, bt, _)) => (k, total) < (*bk, *bt),
            };
            if better {
                best = Some((k, total, counts.clone()));
            }
        }
    }
    best.map(|(k, _, counts)| Decomposition {
        counts: radii.iter().copied().zip(counts).filter(|&(_, c)| c > 0).collect(),
        k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::distinct_radii;
    use crate::testing::{octant_trace_of_region, sumset_of_discs};

    fn r2(n: u64) -> SquaredRadius {
        SquaredRadius::new(n).unwrap()
    }

    fn oc(s: &str) -> OctantCode {
        s.parse().unwrap()
    }

    fn code(n: u64) -> OctantCode {
        first_octant_code(r2(n))
    }

    #[test]
    fn paper_example() {
        let (u, v) = (code(45), code(9));
        assert_eq!(compose_naive(&u, &v).unwrap().code.to_string(), "000101");
        assert_eq!(compose_linear(&u, &v).unwrap().code.to_string(), "000101");
        assert_eq!(compose_linear(&v, &u).unwrap().code.to_string(), "000101");
        assert_eq!(
            compose_linear(&oc("0001"), &oc("10")).unwrap().code.to_string(),
            "000101"
        );
        assert_eq!(
            compose_naive(&oc("0001"), &oc("10")).unwrap().code.to_string(),
            "000101"
        );
    }

    #[test]
    fn small_examples() {
        let empty = first_octant_code(SquaredRadius::ZERO);
        let u = code(45);
        assert_eq!(compose_linear(&u, &empty).unwrap().code, u);
        assert_eq!(compose_naive(&u, &empty).unwrap().code, u);
        assert_eq!(compose_naive(&code(9), &code(9)).unwrap().code.to_string(), "1010");
        assert_eq!(
            compose_linear(&oc("000101"), &oc("0")).unwrap().code.to_string(),
            "0000101"
        );
    }

    #[test]
    fn end_parity_matters() {
        // Two straddling ends meet on the diagonal with one extra `1`.
        let u = code(45);
        let w = compose_linear(&u, &u).unwrap().code;
        assert_eq!(w.to_string(), "000000111");
        assert_eq!(w.end(), OctantEnd::OnDiagonal);
        let (word, end) = octant_trace_of_region(&sumset_of_discs(45, 45));
        assert_eq!((w.to_string(), w.trace().last().copied()), (word, Some(end)));
    }

    #[test]
    fn matches_minkowski_oracle() {
        let radii = distinct_radii(50);
        for &a in &radii {
            for &b in &radii {
                let (word, end) = octant_trace_of_region(&sumset_of_discs(a.get(), b.get()));
                let lin = compose_linear(&first_octant_code(a), &first_octant_code(b))
                    .unwrap()
                    .code;
                let naive = compose_naive(&first_octant_code(a), &first_octant_code(b))
                    .unwrap()
                    .code;
                assert_eq!(lin.to_string(), word, "{a} ∘ {b}");
                assert_eq!(lin.trace().last(), Some(&end), "{a} ∘ {b}");
                assert_eq!(naive, lin, "{a} ∘ {b}");
            }
        }
    }

    #[test]
    fn provenance_order() {
        let res = compose_linear(&code(45), &code(9)).unwrap();
        let got: Vec<(usize, String)> = res
            .provenance
            .iter()
            .map(|p| (p.source, p.segment.to_string()))
            .collect();
        assert_eq!(
            got,
            vec![(0, "0^3 g=0".into()), (1, "10^1 g=1/2".into()), (0, "1^1 g=1".into())]
        );
        assert_eq!(
            res.provenance_csv(),
            "segment,gradient,source\n000,0,0\n10,1/2,1\n1,1,0\n"
        );
    }

    #[test]
    fn equal_gradients_are_fused_stably() {
        let res = compose_linear(&oc("0010"), &oc("10")).unwrap();
        assert_eq!(res.code.to_string(), "001010");
        let sources: Vec<usize> = res.provenance.iter().map(|p| p.source).collect();
        assert_eq!(sources, vec![0, 0, 1]);
    }

    #[test]
    fn sequence_examples() {
        let seq = |s: &str| s.parse::<BroadcastSequence>().unwrap();
        assert_eq!(compose_sequence(&seq("9"), 3).code.to_string(), "101010");
        assert_eq!(compose_sequence(&seq("45"), 1).code.to_string(), "0001");
        let both = compose_linear(&code(16), &code(26)).unwrap().code;
        assert_eq!(compose_sequence(&seq("16,26"), 2).code, both);
        assert!(compose_sequence(&seq("9"), 0).code.is_empty());
    }

    #[test]
    fn sequence_parsing() {
        let seq: BroadcastSequence = "16, 26".parse().unwrap();
        assert_eq!(seq.period(), 2);
        assert_eq!(seq.radius(3), r2(16));
        assert_eq!(seq.reach(3), 4 + 5 + 4);
        assert_eq!(seq.to_string(), "16,26");
        assert_eq!("3".parse::<BroadcastSequence>(), Err(Error::NotRepresentable(3)));
        assert_eq!("0".parse::<BroadcastSequence>(), Err(Error::ZeroRadius));
        assert_eq!(BroadcastSequence::new(vec![]), Err(Error::EmptySequence));
        assert!("x".parse::<BroadcastSequence>().is_err());
    }

    #[test]
    fn similarity_examples() {
        assert_eq!(similar(&oc("000101"), &oc("000000101011")), Some(2));
        assert_eq!(similar(&oc("10"), &oc("0001")), None);
        assert_eq!(similar(&oc("1010"), &oc("10")), Some(2));
        assert_eq!(similar(&oc("10"), &oc("10")), Some(1));
        assert_eq!(similar(&oc("0010"), &oc("000100")), None);
    }

    #[test]
    fn decomposition_examples() {
        let found = decompose_similar(&oc("000101"), &[r2(45), r2(9)], 3).unwrap();
        assert_eq!(
            found,
            Decomposition {
                counts: vec![(r2(45), 1), (r2(9), 1)],
                k: 1
            }
        );
        assert_eq!(decompose_similar(&oc("10"), &[r2(45)], 5), None);
        let found = decompose_similar(&oc("10101010"), &[r2(9)], 8).unwrap();
        assert_eq!(
            found,
            Decomposition {
                counts: vec![(r2(9), 4)],
                k: 1
            }
        );
        let found = decompose_similar(&oc("10101010"), &[r2(9)], 3);
        assert_eq!(found, None);
    }

    #[test]
    fn decomposition_prefers_small_scale() {
        // "000101" scaled by two is reachable with counts (2, 2); scale one
        // wins.
        let found = decompose_similar(&oc("000101"), &[r2(9), r2(45)], 4).unwrap();
        assert_eq!(found.k, 1);
        assert_eq!(found.counts, vec![(r2(9), 1), (r2(45), 1)]);
    }
}
