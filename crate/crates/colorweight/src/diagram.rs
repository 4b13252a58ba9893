//! Chord and Jacobi diagrams on an oriented circle.
//!
//! A chord diagram of order `n` pairs up `2n` points on an oriented circle;
//! it records which double points of a singular knot are equal. A Jacobi
//! diagram also allows internal trivalent vertices, each carrying a cyclic
//! order of its three half-edge slots (the vertex orientation). The STU
//! relation rewrites an internal vertex attached to the circle into the
//! difference of two diagrams with one more circle point, so every Jacobi
//! diagram resolves to a signed integer combination of chord diagrams.
//!
//! This module owns the combinatorics: parsing and canonical forms, the
//! surgery operations consumed by the weight recurrence (crossing chords,
//! chord removal, the six derived diagrams of a crossing pair), connected
//! sums, enumeration of diagrams up to rotation, four-term relation
//! quadruples, and STU resolution.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::Rational;

/// Errors from diagram parsing, validation, or surgery.
#[derive(Debug, Error)]
pub enum DiagramError {
    /// A chord label did not appear exactly twice.
    #[error("label `{label}` appears {count} time(s); each chord label must appear exactly twice")]
    LabelCount {
        /// The offending label.
        label: String,
        /// How many times it appeared.
        count: usize,
    },
    /// A chord required to cross the pivot does not.
    #[error("chord ({0}, {1}) does not cross the pivot chord")]
    NotCrossing(usize, usize),
    /// A chord referenced by endpoints is not present.
    #[error("no chord with endpoints ({0}, {1}) in the diagram")]
    NoSuchChord(usize, usize),
    /// STU resolution found internal vertices with no path to the circle.
    #[error("internal vertices remain but none has an edge to the circle")]
    DisconnectedInternal,
    /// A Jacobi endpoint is out of range, unused, or used more than once.
    #[error("invalid endpoint {endpoint}: {reason}")]
    InvalidEndpoint {
        /// Human-readable endpoint name, e.g. `circle 3` or `vertex "v1" slot 2`.
        endpoint: String,
        /// What is wrong with it.
        reason: String,
    },
    /// Structural problem not tied to a single endpoint.
    #[error("invalid Jacobi diagram: {0}")]
    InvalidJacobi(String),
    /// A vertex id was not found.
    #[error("no vertex with id `{0}`")]
    NoSuchVertex(String),
    /// JSON input did not match the documented shape.
    #[error("invalid diagram JSON: {0}")]
    Json(String),
}

/// A chord diagram: a fixed-point-free involution on circle positions
/// `0..2n`, traversed in orientation order.
///
/// Equality is positional; use [`ChordDiagram::canonical_form`] to compare
/// diagrams up to rotation of the circle.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordDiagram {
    /// `pairing[p]` is the partner position of `p`.
    pairing: Vec<usize>,
}

impl ChordDiagram {
    /// The order-0 (empty) diagram.
    pub fn empty() -> Self {
        ChordDiagram::default()
    }

    /// Build from an explicit involution (`pairing[p]` = partner of `p`).
    pub fn from_pairing(pairing: Vec<usize>) -> Result<Self, DiagramError> {
        let m = pairing.len();
        for (p, &q) in pairing.iter().enumerate() {
            if q >= m || q == p || pairing[q] != p {
                return Err(DiagramError::InvalidJacobi(format!(
                    "pairing is not a fixed-point-free involution at position {p}"
                )));
            }
        }
        Ok(ChordDiagram { pairing })
    }

    /// Build from chords given as position pairs on `2n` points.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self, DiagramError> {
        let m = pairs.len() * 2;
        let mut pairing = vec![usize::MAX; m];
        for &(p, q) in pairs {
            if p >= m || q >= m || p == q || pairing[p] != usize::MAX || pairing[q] != usize::MAX {
                return Err(DiagramError::InvalidJacobi(format!(
                    "chord ({p}, {q}) is out of range or reuses a position"
                )));
            }
            pairing[p] = q;
            pairing[q] = p;
        }
        Ok(ChordDiagram { pairing })
    }

    /// Parse the chord text format: whitespace-separated labels, each
    /// appearing exactly twice, read in circle orientation from the cut.
    /// When the input contains no whitespace every character is a label
    /// (compact form, e.g. `1212`). Empty input is the order-0 diagram.
    pub fn parse(code: &str) -> Result<Self, DiagramError> {
        let trimmed = code.trim();
        let tokens: Vec<String> = if trimmed.is_empty() {
            Vec::new()
        } else if trimmed.chars().any(char::is_whitespace) {
            trimmed.split_whitespace().map(str::to_string).collect()
        } else {
            trimmed.chars().map(|ch| ch.to_string()).collect()
        };
        let mut first_seen: BTreeMap<&str, usize> = BTreeMap::new();
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        let mut pairing = vec![usize::MAX; tokens.len()];
        for (p, tok) in tokens.iter().enumerate() {
            *counts.entry(tok).or_insert(0) += 1;
            match first_seen.get(tok.as_str()) {
                None => {
                    first_seen.insert(tok, p);
                }
                Some(&q) => {
                    pairing[p] = q;
                    pairing[q] = p;
                }
            }
        }
        for (label, &count) in &counts {
            if count != 2 {
                return Err(DiagramError::LabelCount {
                    label: (*label).to_string(),
                    count,
                });
            }
        }
        Ok(ChordDiagram { pairing })
    }

    /// Number of chords.
    pub fn order(&self) -> usize {
        self.pairing.len() / 2
    }

    /// Number of circle positions (`2n`).
    pub fn positions(&self) -> usize {
        self.pairing.len()
    }

    /// Partner of position `p`.
    pub fn partner(&self, p: usize) -> usize {
        self.pairing[p]
    }

    /// The chord through position `p` as a `(first, second)` position pair.
    pub fn chord_at(&self, p: usize) -> (usize, usize) {
        let q = self.pairing[p];
        (p.min(q), p.max(q))
    }

    /// All chords as `(first, second)` pairs, sorted by first endpoint.
    pub fn chords(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.order());
        for p in 0..self.pairing.len() {
            if self.pairing[p] > p {
                out.push((p, self.pairing[p]));
            }
        }
        out
    }

    /// Whether the chord `(first, second)` is present.
    pub fn has_chord(&self, chord: (usize, usize)) -> bool {
        chord.0 < self.pairing.len() && self.pairing[chord.0] == chord.1
    }

    /// Label sequence with chords numbered from 1 by first occurrence,
    /// starting the traversal at rotation offset `r`.
    fn label_sequence_from(&self, r: usize) -> Vec<usize> {
        let m = self.pairing.len();
        let mut labels = vec![0usize; m];
        let mut next = 0usize;
        let mut seq = Vec::with_capacity(m);
        for i in 0..m {
            let p = (i + r) % m;
            let q = self.pairing[p];
            let q_index = (q + m - r) % m;
            let label = if q_index < i {
                labels[q_index]
            } else {
                next += 1;
                next
            };
            labels[i] = label;
            seq.push(label);
        }
        seq
    }

    fn from_label_sequence(seq: &[usize]) -> Self {
        let mut first: BTreeMap<usize, usize> = BTreeMap::new();
        let mut pairing = vec![usize::MAX; seq.len()];
        for (p, &label) in seq.iter().enumerate() {
            match first.remove(&label) {
                None => {
                    first.insert(label, p);
                }
                Some(q) => {
                    pairing[p] = q;
                    pairing[q] = p;
                }
            }
        }
        ChordDiagram { pairing }
    }

    /// The diagram read from a cut rotated forward by `r` positions
    /// (new position `i` is old position `(i + r) mod 2n`).
    pub fn rotated(&self, r: usize) -> ChordDiagram {
        let m = self.pairing.len();
        if m == 0 {
            return self.clone();
        }
        let mut pairing = vec![0usize; m];
        for i in 0..m {
            pairing[i] = (self.pairing[(i + r) % m] + m - r % m) % m;
        }
        ChordDiagram { pairing }
    }

    /// The mirror image: circle orientation reversed.
    pub fn reflected(&self) -> ChordDiagram {
        let m = self.pairing.len();
        let mut pairing = vec![0usize; m];
        for i in 0..m {
            pairing[i] = m - 1 - self.pairing[m - 1 - i];
        }
        ChordDiagram { pairing }
    }

    /// Canonical representative of the rotation orbit: the rotation whose
    /// first-occurrence label sequence is lexicographically minimal, with
    /// labels renumbered from 1.
    pub fn canonical_form(&self) -> ChordDiagram {
        let m = self.pairing.len();
        if m == 0 {
            return self.clone();
        }
        let mut best: Option<Vec<usize>> = None;
        for r in 0..m {
            let seq = self.label_sequence_from(r);
            if best.as_ref().map_or(true, |b| seq < *b) {
                best = Some(seq);
            }
        }
        ChordDiagram::from_label_sequence(&best.unwrap())
    }

    /// The label-sequence text form, e.g. `1 2 1 2`.
    pub fn code(&self) -> String {
        self.label_sequence_from(0)
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Chords crossing `a`: one endpoint strictly inside the arc from `a`'s
    /// first endpoint to its second (the "left" arc), the other outside.
    /// Ordered by the position of the left-arc endpoint.
    pub fn crossing_chords(&self, a: (usize, usize)) -> Result<Vec<(usize, usize)>, DiagramError> {
        if !self.has_chord(a) {
            return Err(DiagramError::NoSuchChord(a.0, a.1));
        }
        let mut crossing = Vec::new();
        for p in a.0 + 1..a.1 {
            let q = self.pairing[p];
            if q < a.0 || q > a.1 {
                crossing.push((p.min(q), p.max(q)));
            }
        }
        // Already in circle order of the left-arc endpoint: that endpoint is
        // the loop variable p.
        Ok(crossing)
    }

    /// Delete the given chords and re-densify positions, preserving circular
    /// order.
    pub fn remove_chords(&self, chords: &[(usize, usize)]) -> Result<ChordDiagram, DiagramError> {
        let m = self.pairing.len();
        let mut keep = vec![true; m];
        for &ch in chords {
            if !self.has_chord(ch) {
                return Err(DiagramError::NoSuchChord(ch.0, ch.1));
            }
            keep[ch.0] = false;
            keep[ch.1] = false;
        }
        let kept: Vec<usize> = (0..m).filter(|&p| keep[p]).collect();
        let mut dense = vec![usize::MAX; m];
        for (i, &p) in kept.iter().enumerate() {
            dense[p] = i;
        }
        let mut pairing = vec![0usize; kept.len()];
        for &p in &kept {
            pairing[dense[p]] = dense[self.pairing[p]];
        }
        Ok(ChordDiagram { pairing })
    }

    /// Connected sum: splice `other`'s arc into this diagram at the position-0
    /// boundary. The label sequence is this diagram's followed by `other`'s.
    pub fn connected_sum(&self, other: &ChordDiagram) -> ChordDiagram {
        let shift = self.pairing.len();
        let mut pairing = self.pairing.clone();
        pairing.extend(other.pairing.iter().map(|&q| q + shift));
        ChordDiagram { pairing }
    }

    /// Whether the diagram is not a connected sum of two nonempty diagrams:
    /// no contiguous circle interval contains a proper nonempty subset of the
    /// chords with both endpoints inside.
    pub fn is_indecomposable(&self) -> bool {
        let m = self.pairing.len();
        let n = self.order();
        if n <= 1 {
            return true;
        }
        for start in 0..m {
            for len in 2..m {
                let inside = |p: usize| -> bool { (p + m - start) % m < len };
                let mut complete = 0usize;
                let mut split = false;
                for p in 0..m {
                    if inside(p) {
                        if inside(self.pairing[p]) {
                            complete += 1;
                        } else {
                            split = true;
                            break;
                        }
                    }
                }
                if !split {
                    let inside_chords = complete / 2;
                    if inside_chords > 0 && inside_chords < n {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

/// The six diagrams the weight recurrence derives from a crossing pair
/// `(b_i, b_j)` of a pivot chord `a`.
///
/// With `l`/`r` denoting each chord's endpoint on the left/right arc of `a`
/// (left = the arc from `a`'s first endpoint to its second in orientation
/// order), the new chords are: `par` joins `l_i–l_j` and `r_i–r_j`, `cross`
/// joins `l_i–r_j` and `r_i–l_j`, and the four singles keep one new chord
/// each (`lr` = `l_i–r_j`, `rl` = `r_i–l_j`, `ll` = `l_i–l_j`,
/// `rr` = `r_i–r_j`); unused endpoint slots are deleted. Swapping the
/// left/right convention exchanges `lr↔rl` and `ll↔rr` and fixes `par` and
/// `cross`, so the combinations consumed by the recurrence do not depend on
/// the convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedDiagrams {
    /// Both endpoints pairs joined side-to-same-side.
    pub par: ChordDiagram,
    /// Both endpoint pairs joined side-to-opposite-side.
    pub cross: ChordDiagram,
    /// Single chord `l_i–r_j`.
    pub lr: ChordDiagram,
    /// Single chord `r_i–l_j`.
    pub rl: ChordDiagram,
    /// Single chord `l_i–l_j`.
    pub ll: ChordDiagram,
    /// Single chord `r_i–r_j`.
    pub rr: ChordDiagram,
}

impl ChordDiagram {
    /// Construct the six derived diagrams for pivot `a` and crossing chords
    /// `bi`, `bj`.
    pub fn derived_diagrams(
        &self,
        a: (usize, usize),
        bi: (usize, usize),
        bj: (usize, usize),
    ) -> Result<DerivedDiagrams, DiagramError> {
        self.derived_with_sides(a, bi, bj, true)
    }

    /// As [`ChordDiagram::derived_diagrams`] with a switchable left/right
    /// convention (used to test that the recurrence combinations are
    /// convention-independent).
    pub(crate) fn derived_with_sides(
        &self,
        a: (usize, usize),
        bi: (usize, usize),
        bj: (usize, usize),
        left_is_inner_arc: bool,
    ) -> Result<DerivedDiagrams, DiagramError> {
        if !self.has_chord(a) {
            return Err(DiagramError::NoSuchChord(a.0, a.1));
        }
        let split = |b: (usize, usize)| -> Result<(usize, usize), DiagramError> {
            if !self.has_chord(b) {
                return Err(DiagramError::NoSuchChord(b.0, b.1));
            }
            let inner = (a.0 < b.0 && b.0 < a.1, a.0 < b.1 && b.1 < a.1);
            let (l, r) = match inner {
                (true, false) => (b.0, b.1),
                (false, true) => (b.1, b.0),
                _ => return Err(DiagramError::NotCrossing(b.0, b.1)),
            };
            Ok(if left_is_inner_arc { (l, r) } else { (r, l) })
        };
        let (li, ri) = split(bi)?;
        let (lj, rj) = split(bj)?;
        if bi == bj {
            return Err(DiagramError::InvalidJacobi(
                "the two crossing chords must be distinct".into(),
            ));
        }

        let spectators: Vec<(usize, usize)> = self
            .chords()
            .into_iter()
            .filter(|&ch| ch != a && ch != bi && ch != bj)
            .collect();
        let build = |new_chords: &[(usize, usize)]| -> ChordDiagram {
            let mut all = spectators.clone();
            all.extend_from_slice(new_chords);
            let mut used: Vec<usize> = all.iter().flat_map(|&(p, q)| [p, q]).collect();
            used.sort_unstable();
            let dense = |p: usize| used.binary_search(&p).unwrap();
            let pairs: Vec<(usize, usize)> =
                all.iter().map(|&(p, q)| (dense(p), dense(q))).collect();
            ChordDiagram::from_pairs(&pairs).expect("derived endpoints are distinct")
        };

        Ok(DerivedDiagrams {
            par: build(&[(li, lj), (ri, rj)]),
            cross: build(&[(li, rj), (ri, lj)]),
            lr: build(&[(li, rj)]),
            rl: build(&[(ri, lj)]),
            ll: build(&[(li, lj)]),
            rr: build(&[(ri, rj)]),
        })
    }
}

/// Enumerate all canonical chord diagrams of order `n` (fixed-point-free
/// involutions on `2n` points up to rotation), sorted.
pub fn enumerate_canonical(n: usize) -> Vec<ChordDiagram> {
    let mut out = std::collections::BTreeSet::new();
    let points: Vec<usize> = (0..2 * n).collect();
    for matching in perfect_matchings(&points) {
        let d = ChordDiagram::from_pairs(&matching).expect("matching is a pairing");
        out.insert(d.canonical_form());
    }
    out.into_iter().collect()
}

/// All perfect matchings on the given (distinct) points.
pub(crate) fn perfect_matchings(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if points.is_empty() {
        return vec![Vec::new()];
    }
    let first = points[0];
    let mut out = Vec::new();
    for i in 1..points.len() {
        let mate = points[i];
        let rest: Vec<usize> = points[1..]
            .iter()
            .copied()
            .filter(|&p| p != mate)
            .collect();
        for mut sub in perfect_matchings(&rest) {
            sub.push((first, mate));
            out.push(sub);
        }
    }
    out
}

/// Enumerate four-term relation quadruples `(D1, D2, D3, D4)` of order `n`
/// with signs `(+, -, -, +)`: every weight system sends
/// `w(D1) - w(D2) - w(D3) + w(D4)` to zero.
///
/// Each quadruple arises from a one-vertex Jacobi diagram on `2n - 1` circle
/// points (three legs meeting at an oriented internal vertex plus `n - 2`
/// spectator chords) resolved at two different legs: both resolutions
/// represent the same element, and each resolution is a two-term difference,
/// which is exactly the four-term relation with the local configurations
/// given by doubling the resolved leg's circle point.
pub fn four_term_quadruples(n: usize) -> Vec<[ChordDiagram; 4]> {
    assert!(n >= 2, "four-term relations need at least two chords");
    let points = 2 * n - 1;
    let mut out = Vec::new();
    for p1 in 0..points {
        for p2 in p1 + 1..points {
            for p3 in p2 + 1..points {
                let legs = [p1, p2, p3];
                let rest: Vec<usize> =
                    (0..points).filter(|p| !legs.contains(p)).collect();
                for matching in perfect_matchings(&rest) {
                    let resolutions: Vec<[ChordDiagram; 2]> = (0..3)
                        .map(|s| resolve_tripod_leg(&legs, s, &matching))
                        .collect();
                    for (x, y) in [(0, 1), (0, 2), (1, 2)] {
                        out.push([
                            resolutions[x][0].clone(),
                            resolutions[x][1].clone(),
                            resolutions[y][0].clone(),
                            resolutions[y][1].clone(),
                        ]);
                    }
                }
            }
        }
    }
    out
}

/// Resolve a one-vertex diagram (legs at `legs[0..3]` in circle order, slot
/// order matching circle order) at leg `s`, returning the `(+, -)` pair.
fn resolve_tripod_leg(
    legs: &[usize; 3],
    s: usize,
    spectators: &[(usize, usize)],
) -> [ChordDiagram; 2] {
    let p = legs[s];
    // Doubling p: p stays, a new point appears at p + 1, later points shift.
    let map = |q: usize| if q > p { q + 1 } else { q };
    let (p_first, p_second) = (p, p + 1);
    let prev = map(legs[(s + 2) % 3]);
    let next = map(legs[(s + 1) % 3]);
    let base: Vec<(usize, usize)> = spectators
        .iter()
        .map(|&(u, v)| (map(u), map(v)))
        .collect();
    let build = |extra: [(usize, usize); 2]| -> ChordDiagram {
        let mut pairs = base.clone();
        pairs.extend_from_slice(&extra);
        ChordDiagram::from_pairs(&pairs).expect("resolution endpoints are distinct")
    };
    [
        build([(p_first, prev), (p_second, next)]),
        build([(p_first, next), (p_second, prev)]),
    ]
}

/// A formal linear combination of canonical chord diagrams with exact
/// rational coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagramSum {
    terms: BTreeMap<ChordDiagram, Rational>,
}

impl DiagramSum {
    /// The empty (zero) sum.
    pub fn new() -> Self {
        DiagramSum::default()
    }

    /// A single diagram with coefficient one.
    pub fn from_diagram(d: &ChordDiagram) -> Self {
        let mut sum = DiagramSum::new();
        sum.add_term(d, Rational::one());
        sum
    }

    /// Add `coeff · d`, canonicalizing `d` and pruning cancellations.
    pub fn add_term(&mut self, d: &ChordDiagram, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let key = d.canonical_form();
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Add another sum, scaled by `coeff`.
    pub fn add_scaled(&mut self, other: &DiagramSum, coeff: &Rational) {
        for (d, q) in &other.terms {
            self.add_term(d, q * coeff);
        }
    }

    /// Whether the sum has no terms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Iterate over `(canonical diagram, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&ChordDiagram, &Rational)> {
        self.terms.iter()
    }

    /// Apply a diagram-level map linearly.
    pub fn map_diagrams<F>(&self, mut f: F) -> DiagramSum
    where
        F: FnMut(&ChordDiagram) -> DiagramSum,
    {
        let mut out = DiagramSum::new();
        for (d, q) in &self.terms {
            out.add_scaled(&f(d), q);
        }
        out
    }

    /// Multi-line signed rendering, one `coeff * "code"` per term.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(d, q)| {
                let sign = if q >= &Rational::zero() { "+" } else { "" };
                format!("{sign}{q} * \"{d}\"")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// One end of a Jacobi-diagram edge: a circle position or a vertex slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum End {
    /// Circle position (univalent endpoint).
    Circle(usize),
    /// Slot `slot` (0..3, counterclockwise) of internal vertex `vertex`
    /// (index into the diagram's vertex list).
    Slot {
        /// Vertex index.
        vertex: usize,
        /// Slot within the vertex's cyclic orientation.
        slot: u8,
    },
}

/// Strategy for choosing which circle-adjacent internal vertex to resolve
/// first; the evaluated weight does not depend on it (tested), only
/// intermediate dumps do.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResolveStrategy {
    /// Resolve the edge at the smallest circle position (default).
    SmallestLeg,
    /// Resolve the edge at the largest circle position.
    LargestLeg,
}

/// A Jacobi diagram: `legs` univalent endpoints on the oriented circle plus
/// internal trivalent vertices. Each internal vertex has three slots whose
/// order encodes its orientation (counterclockwise, matching the circle).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiDiagram {
    legs: usize,
    vertex_ids: Vec<String>,
    edges: Vec<(End, End)>,
}

impl JacobiDiagram {
    /// Build and validate a Jacobi diagram.
    pub fn new(
        legs: usize,
        vertex_ids: Vec<String>,
        edges: Vec<(End, End)>,
    ) -> Result<Self, DiagramError> {
        let j = JacobiDiagram {
            legs,
            vertex_ids,
            edges,
        };
        j.validate()?;
        Ok(j)
    }

    /// View a chord diagram as a Jacobi diagram without internal vertices.
    pub fn from_chord(d: &ChordDiagram) -> Self {
        let edges = d
            .chords()
            .into_iter()
            .map(|(p, q)| (End::Circle(p), End::Circle(q)))
            .collect();
        JacobiDiagram {
            legs: d.positions(),
            vertex_ids: Vec::new(),
            edges,
        }
    }

    /// Number of circle endpoints.
    pub fn legs(&self) -> usize {
        self.legs
    }

    /// Number of internal (trivalent) vertices.
    pub fn internal_count(&self) -> usize {
        self.vertex_ids.len()
    }

    /// Internal vertex ids in index order.
    pub fn vertex_ids(&self) -> &[String] {
        &self.vertex_ids
    }

    /// Diagram order: half the total vertex count (univalent plus trivalent).
    pub fn order(&self) -> usize {
        (self.legs + self.vertex_ids.len()) / 2
    }

    fn endpoint_name(&self, end: End) -> String {
        match end {
            End::Circle(p) => format!("circle {p}"),
            End::Slot { vertex, slot } => {
                let id = self
                    .vertex_ids
                    .get(vertex)
                    .map(String::as_str)
                    .unwrap_or("<out of range>");
                format!("vertex \"{id}\" slot {slot}")
            }
        }
    }

    fn validate(&self) -> Result<(), DiagramError> {
        {
            let mut seen = std::collections::BTreeSet::new();
            for id in &self.vertex_ids {
                if !seen.insert(id) {
                    return Err(DiagramError::InvalidJacobi(format!(
                        "duplicate vertex id `{id}`"
                    )));
                }
            }
        }
        if (self.legs + self.vertex_ids.len()) % 2 != 0 {
            return Err(DiagramError::InvalidJacobi(format!(
                "total vertex count {} must be even",
                self.legs + self.vertex_ids.len()
            )));
        }
        let mut circle_uses = vec![0usize; self.legs];
        let mut slot_uses = vec![[0usize; 3]; self.vertex_ids.len()];
        for &(x, y) in &self.edges {
            for end in [x, y] {
                match end {
                    End::Circle(p) => {
                        if p >= self.legs {
                            return Err(DiagramError::InvalidEndpoint {
                                endpoint: self.endpoint_name(end),
                                reason: format!("position out of range 0..{}", self.legs),
                            });
                        }
                        circle_uses[p] += 1;
                    }
                    End::Slot { vertex, slot } => {
                        if vertex >= self.vertex_ids.len() || slot > 2 {
                            return Err(DiagramError::InvalidEndpoint {
                                endpoint: self.endpoint_name(end),
                                reason: "unknown vertex or slot out of range 0..3".into(),
                            });
                        }
                        slot_uses[vertex][slot as usize] += 1;
                    }
                }
            }
        }
        for (p, &uses) in circle_uses.iter().enumerate() {
            if uses != 1 {
                return Err(DiagramError::InvalidEndpoint {
                    endpoint: format!("circle {p}"),
                    reason: format!("used {uses} time(s); must be exactly once"),
                });
            }
        }
        for (v, slots) in slot_uses.iter().enumerate() {
            for (s, &uses) in slots.iter().enumerate() {
                if uses != 1 {
                    return Err(DiagramError::InvalidEndpoint {
                        endpoint: format!("vertex \"{}\" slot {s}", self.vertex_ids[v]),
                        reason: format!("used {uses} time(s); must be exactly once"),
                    });
                }
            }
        }
        Ok(())
    }

    /// Parse the JSON shape
    /// `{"legs": L, "vertices": [{"id": "v1"}, ...], "edges": [[end, end], ...]}`
    /// where an end is `{"circle": i}` or `{"vertex": "v1", "slot": s}`.
    pub fn from_json(v: &serde_json::Value) -> Result<Self, DiagramError> {
        let legs = v
            .get("legs")
            .and_then(|l| l.as_u64())
            .ok_or_else(|| DiagramError::Json("missing numeric \"legs\" field".into()))?
            as usize;
        let mut vertex_ids = Vec::new();
        if let Some(vs) = v.get("vertices") {
            let vs = vs
                .as_array()
                .ok_or_else(|| DiagramError::Json("\"vertices\" must be an array".into()))?;
            for item in vs {
                let id = item
                    .get("id")
                    .and_then(|i| i.as_str())
                    .ok_or_else(|| {
                        DiagramError::Json("each vertex needs a string \"id\"".into())
                    })?;
                vertex_ids.push(id.to_string());
            }
        }
        let index_of = |id: &str| -> Result<usize, DiagramError> {
            vertex_ids
                .iter()
                .position(|v| v == id)
                .ok_or_else(|| DiagramError::NoSuchVertex(id.to_string()))
        };
        let parse_end = |e: &serde_json::Value| -> Result<End, DiagramError> {
            if let Some(p) = e.get("circle") {
                let p = p
                    .as_u64()
                    .ok_or_else(|| DiagramError::Json("\"circle\" must be a position".into()))?;
                return Ok(End::Circle(p as usize));
            }
            if let Some(id) = e.get("vertex") {
                let id = id
                    .as_str()
                    .ok_or_else(|| DiagramError::Json("\"vertex\" must be an id string".into()))?;
                let slot = e
                    .get("slot")
                    .and_then(|s| s.as_u64())
                    .ok_or_else(|| DiagramError::Json("vertex end needs a \"slot\"".into()))?;
                if slot > 2 {
                    return Err(DiagramError::InvalidEndpoint {
                        endpoint: format!("vertex \"{id}\" slot {slot}"),
                        reason: "slot out of range 0..3".into(),
                    });
                }
                return Ok(End::Slot {
                    vertex: index_of(id)?,
                    slot: slot as u8,
                });
            }
            Err(DiagramError::Json(
                "edge end must be {\"circle\": i} or {\"vertex\": id, \"slot\": s}".into(),
            ))
        };
        let edges_json = v
            .get("edges")
            .and_then(|e| e.as_array())
            .ok_or_else(|| DiagramError::Json("missing \"edges\" array".into()))?;
        let mut edges = Vec::new();
        for pair in edges_json {
            let pair = pair
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| DiagramError::Json("each edge must be a two-element array".into()))?;
            edges.push((parse_end(&pair[0])?, parse_end(&pair[1])?));
        }
        JacobiDiagram::new(legs, vertex_ids, edges)
    }

    /// Render to the JSON shape accepted by [`JacobiDiagram::from_json`].
    pub fn to_json(&self) -> serde_json::Value {
        let end_json = |end: &End| match *end {
            End::Circle(p) => serde_json::json!({ "circle": p }),
            End::Slot { vertex, slot } => serde_json::json!({
                "vertex": self.vertex_ids[vertex],
                "slot": slot,
            }),
        };
        serde_json::json!({
            "legs": self.legs,
            "vertices": self
                .vertex_ids
                .iter()
                .map(|id| serde_json::json!({ "id": id }))
                .collect::<Vec<_>>(),
            "edges": self
                .edges
                .iter()
                .map(|(x, y)| serde_json::json!([end_json(x), end_json(y)]))
                .collect::<Vec<_>>(),
        })
    }

    /// Transpose two slots of an internal vertex (slots 1 and 2), reversing
    /// its orientation. Under any weight system this negates the value.
    pub fn vertex_flip(&self, id: &str) -> Result<JacobiDiagram, DiagramError> {
        let target = self
            .vertex_ids
            .iter()
            .position(|v| v == id)
            .ok_or_else(|| DiagramError::NoSuchVertex(id.to_string()))?;
        let swap = |end: End| match end {
            End::Slot { vertex, slot } if vertex == target && slot > 0 => End::Slot {
                vertex,
                slot: 3 - slot,
            },
            other => other,
        };
        Ok(JacobiDiagram {
            legs: self.legs,
            vertex_ids: self.vertex_ids.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(x, y)| (swap(x), swap(y)))
                .collect(),
        })
    }

    /// The chord diagram this Jacobi diagram is, assuming no internal
    /// vertices.
    fn to_chord(&self) -> ChordDiagram {
        debug_assert!(self.vertex_ids.is_empty());
        let pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(x, y)| match (x, y) {
                (End::Circle(p), End::Circle(q)) => (p, q),
                _ => unreachable!("no internal vertices remain"),
            })
            .collect();
        ChordDiagram::from_pairs(&pairs).expect("validated diagram pairs positions exactly once")
    }

    /// One STU rewriting step at the chosen circle-adjacent vertex, returning
    /// the `(+, -)` pair of diagrams with one fewer internal vertex.
    ///
    /// At a vertex with slots `(s, s+1, s+2)` whose slot `s` edge reaches the
    /// circle at position `p`, the point `p` is doubled into `(p, p+1)`; the
    /// plus term reattaches slot `s+2`'s far end at `p` and slot `s+1`'s far
    /// end at `p+1`, and the minus term swaps the two.
    fn resolve_once(
        &self,
        strategy: ResolveStrategy,
    ) -> Result<(JacobiDiagram, JacobiDiagram), DiagramError> {
        // Pick the resolution site: a (circle position, vertex, slot) triple.
        let mut site: Option<(usize, usize, u8)> = None;
        for &(x, y) in &self.edges {
            for (end, other) in [(x, y), (y, x)] {
                if let (End::Circle(p), End::Slot { vertex, slot }) = (end, other) {
                    let better = match site {
                        None => true,
                        Some((best, _, _)) => match strategy {
                            ResolveStrategy::SmallestLeg => p < best,
                            ResolveStrategy::LargestLeg => p > best,
                        },
                    };
                    if better {
                        site = Some((p, vertex, slot));
                    }
                }
            }
        }
        let (p, v, s) = site.ok_or(DiagramError::DisconnectedInternal)?;

        // Far ends of the other two slots, in cyclic order after s.
        let far_end = |slot: u8| -> End {
            let this = End::Slot { vertex: v, slot };
            for &(x, y) in &self.edges {
                if x == this {
                    return y;
                }
                if y == this {
                    return x;
                }
            }
            unreachable!("validated diagram uses every slot")
        };
        let e1 = far_end((s + 1) % 3);
        let e2 = far_end((s + 2) % 3);

        // Rebuild with vertex v deleted and circle point p doubled.
        let map_end = |end: End| -> End {
            match end {
                End::Circle(q) if q > p => End::Circle(q + 1),
                End::Circle(q) => End::Circle(q),
                End::Slot { vertex, slot } => End::Slot {
                    vertex: if vertex > v { vertex - 1 } else { vertex },
                    slot,
                },
            }
        };
        let kept: Vec<(End, End)> = self
            .edges
            .iter()
            .filter(|&&(x, y)| {
                let touches_v = |end: End| matches!(end, End::Slot { vertex, .. } if vertex == v);
                !touches_v(x) && !touches_v(y)
            })
            .map(|&(x, y)| (map_end(x), map_end(y)))
            .collect();
        let mut vertex_ids = self.vertex_ids.clone();
        vertex_ids.remove(v);

        let self_loop = e1 == (End::Slot { vertex: v, slot: (s + 2) % 3 });
        let make = |first_gets: End, second_gets: End| -> JacobiDiagram {
            let mut edges = kept.clone();
            if self_loop {
                // Slots s+1 and s+2 were joined to each other; the loop
                // becomes a short chord between the doubled points.
                edges.push((End::Circle(p), End::Circle(p + 1)));
            } else {
                edges.push((End::Circle(p), map_end(first_gets)));
                edges.push((End::Circle(p + 1), map_end(second_gets)));
            }
            JacobiDiagram {
                legs: self.legs + 1,
                vertex_ids: vertex_ids.clone(),
                edges,
            }
        };
        Ok((make(e2, e1), make(e1, e2)))
    }

    /// Resolve all internal vertices via STU, returning a signed integer
    /// combination of chord diagrams. Uses the default
    /// [`ResolveStrategy::SmallestLeg`] site order.
    pub fn stu_resolve(&self) -> Result<DiagramSum, DiagramError> {
        self.stu_resolve_with(ResolveStrategy::SmallestLeg)
    }

    /// Resolve with an explicit site-selection strategy.
    pub fn stu_resolve_with(
        &self,
        strategy: ResolveStrategy,
    ) -> Result<DiagramSum, DiagramError> {
        let mut out = DiagramSum::new();
        let mut stack = vec![(self.clone(), Rational::one())];
        while let Some((j, coeff)) = stack.pop() {
            if j.internal_count() == 0 {
                out.add_term(&j.to_chord(), coeff);
            } else {
                let (plus, minus) = j.resolve_once(strategy)?;
                stack.push((plus, coeff.clone()));
                stack.push((minus, -coeff));
            }
        }
        Ok(out)
    }
}

/// Constructors for the standard diagrams used in the documentation tables
/// and the verification suites.
pub mod catalog {
    use super::{ChordDiagram, End, JacobiDiagram};

    fn vid(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("v{i}")).collect()
    }

    fn slot(vertex: usize, slot: u8) -> End {
        End::Slot { vertex, slot }
    }

    /// Three legs meeting at one internal vertex (slot order = circle order).
    pub fn tripod() -> JacobiDiagram {
        JacobiDiagram::new(
            3,
            vid(1),
            vec![
                (slot(0, 0), End::Circle(0)),
                (slot(0, 1), End::Circle(1)),
                (slot(0, 2), End::Circle(2)),
            ],
        )
        .expect("tripod is well-formed")
    }

    /// Two legs joined by a doubled internal edge (a theta shape hanging on
    /// the circle).
    pub fn theta_on_circle() -> JacobiDiagram {
        JacobiDiagram::new(
            2,
            vec!["v_top".into(), "v_bot".into()],
            vec![
                (slot(0, 0), End::Circle(0)),
                (slot(1, 0), End::Circle(1)),
                (slot(0, 1), slot(1, 2)),
                (slot(0, 2), slot(1, 1)),
            ],
        )
        .expect("theta is well-formed")
    }

    /// Four legs joined pairwise through a single internal edge (an H shape).
    pub fn h_diagram() -> JacobiDiagram {
        JacobiDiagram::new(
            4,
            vid(2),
            vec![
                (slot(0, 0), slot(1, 1)),
                (slot(0, 1), End::Circle(1)),
                (slot(0, 2), End::Circle(2)),
                (slot(1, 0), End::Circle(0)),
                (slot(1, 2), End::Circle(3)),
            ],
        )
        .expect("h-diagram is well-formed")
    }

    /// The H-shape with one extra spectator chord enclosing its first two
    /// legs (legs at circle order: chord, A, B, chord, C, D).
    pub fn h_with_spectator() -> JacobiDiagram {
        JacobiDiagram::new(
            6,
            vid(2),
            vec![
                (slot(0, 0), slot(1, 1)),
                (slot(0, 1), End::Circle(2)),
                (slot(0, 2), End::Circle(4)),
                (slot(1, 0), End::Circle(1)),
                (slot(1, 2), End::Circle(5)),
                (End::Circle(0), End::Circle(3)),
            ],
        )
        .expect("spectator variant is well-formed")
    }

    /// Wheel with `k` spokes: `k` legs, `k` internal vertices in a cycle.
    /// Vertex `i` has slots (leg `i`, hub edge forward, hub edge backward).
    pub fn wheel(k: usize) -> JacobiDiagram {
        assert!(k >= 2, "a wheel needs at least two spokes");
        let mut edges = Vec::new();
        for i in 0..k {
            edges.push((slot(i, 0), End::Circle(i)));
            edges.push((slot(i, 1), slot((i + 1) % k, 2)));
        }
        JacobiDiagram::new(k, vid(k), edges).expect("wheel is well-formed")
    }

    /// Comb with `n` teeth: a path of `n` internal vertices whose ends attach
    /// to the circle, each vertex dropping one leg between the endpoints
    /// (circle order: left end, teeth 1..n, right end). Each vertex `i` has
    /// slots (toward the left end, tooth leg, toward the right end).
    pub fn teeth(n: usize) -> JacobiDiagram {
        assert!(n >= 1, "the comb needs at least one tooth");
        let mut edges = vec![(slot(0, 0), End::Circle(0))];
        for i in 0..n {
            edges.push((slot(i, 1), End::Circle(i + 1)));
            if i + 1 < n {
                edges.push((slot(i, 2), slot(i + 1, 0)));
            }
        }
        edges.push((slot(n - 1, 2), End::Circle(n + 1)));
        JacobiDiagram::new(n + 2, vid(n), edges).expect("comb is well-formed")
    }

    /// The comb with an extra chord crossing its baseline once (circle order:
    /// left end, chord, teeth 1..n, right end, chord).
    pub fn teeth_with_chord(n: usize) -> JacobiDiagram {
        assert!(n >= 1, "the comb needs at least one tooth");
        let mut edges = vec![
            (slot(0, 0), End::Circle(0)),
            (End::Circle(1), End::Circle(n + 3)),
        ];
        for i in 0..n {
            edges.push((slot(i, 1), End::Circle(i + 2)));
            if i + 1 < n {
                edges.push((slot(i, 2), slot(i + 1, 0)));
            }
        }
        edges.push((slot(n - 1, 2), End::Circle(n + 2)));
        JacobiDiagram::new(n + 4, vid(n), edges).expect("comb variant is well-formed")
    }

    /// The chord-diagram ladder family: code `V 1 2 .. n V n .. 2 1` — one
    /// chord `V` crossed by `n` mutually nested chords.
    pub fn ladder(n: usize) -> ChordDiagram {
        let mut pairs = vec![(0, n + 1)];
        for i in 1..=n {
            pairs.push((i, 2 * n + 2 - i));
        }
        ChordDiagram::from_pairs(&pairs).expect("ladder pairs positions exactly once")
    }
}
