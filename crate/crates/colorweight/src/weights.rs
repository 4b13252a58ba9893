//! The universal weight system of the minimal color Lie algebra.
//!
//! A chord diagram of order `n` evaluates to an element of the center of the
//! enveloping algebra: a polynomial in the Casimir `c` and the second central
//! generator `y`, with coefficients in `ℤ[ε]/(ε² − 1)`. This module computes
//! that polynomial by a recurrence that trades a pivot chord `a` for diagrams
//! with fewer chords: writing `k` for the number of chords crossing `a`,
//!
//! ```text
//! w(D) = (c − εk)·w(D_a)
//!      + ε(c − y)·Σ_i w(D_{a,i})
//!      + ε·Σ_{i<j} ( w(par) − w(cross) )
//!      + ε(c − y)·Σ_{i<j} ( w(lr) + w(rl) − w(ll) − w(rr) ),
//! ```
//!
//! where `D_a` deletes the pivot, `D_{a,i}` deletes the pivot and its `i`-th
//! crossing chord, and the six diagrams under the pair sums reconnect two
//! crossing chords as in [`crate::diagram::DerivedDiagrams`]. Every diagram
//! on the right has fewer chords, so the recurrence terminates; results are
//! memoized by canonical form.
//!
//! Jacobi diagrams evaluate through the STU resolution, and both routes are
//! cross-checked against the enveloping-algebra walk of [`crate::envelope`]
//! by [`check_oracle_agreement`].
//!
//! Deframing: `s` deletes one chord in all ways, `θ` adds an isolated chord,
//! and `φ = Σ_{k=0}^n (−1)^k/k! · θᵏ sᵏ` projects onto the kernel of `s`
//! modulo the four-term relations (see [`in_four_term_span`] for why the
//! quotient is needed). Evaluating a weight after `φ` is the same as
//! substituting `c = 0` ([`check_deframing`]), which gives the deframed
//! weight a recurrence of its own ([`WeightSystem::deframed_recurrence`]).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::diagram::{
    catalog, enumerate_canonical, four_term_quadruples, ChordDiagram, DiagramError, DiagramSum,
    End, JacobiDiagram, ResolveStrategy,
};
use crate::envelope;
use crate::poly::{factorial, CenterPoly, EpsCoeff, Rational};
use crate::report::CheckReport;

/// Errors from weight evaluation.
#[derive(Debug, Error)]
pub enum WeightError {
    /// A rational combination of weights did not land back in `ℤ[ε]`.
    #[error("coefficient {coeff} of c^{dc} y^{dy} is not integral")]
    NonIntegralResult {
        /// The offending rational coefficient, rendered as `a + b*e`.
        coeff: String,
        /// Casimir exponent of the monomial.
        dc: u32,
        /// `y` exponent of the monomial.
        dy: u32,
    },
    /// Underlying diagram manipulation failed.
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Environment variable holding the approximate cache cap in bytes.
pub const CACHE_BYTES_VAR: &str = "COLORWEIGHT_CACHE_BYTES";

/// Memoized evaluator for the universal weight system.
///
/// The cache is keyed by canonical (rotation-reduced) diagrams, which is
/// sound because the recurrence value is independent of the pivot choice and
/// hence of the rotation presenting the diagram (checked in tests). Its
/// approximate memory use is capped by [`CACHE_BYTES_VAR`]; once the cap is
/// reached, further results are recomputed instead of stored, which affects
/// speed but never values.
pub struct WeightSystem {
    cache: HashMap<ChordDiagram, CenterPoly>,
    deframed: HashMap<ChordDiagram, CenterPoly>,
    used_bytes: usize,
    limit_bytes: Option<usize>,
}

impl WeightSystem {
    /// An evaluator whose cache cap is read from [`CACHE_BYTES_VAR`]
    /// (unset or unparsable means unlimited).
    pub fn new() -> Self {
        let limit = std::env::var(CACHE_BYTES_VAR)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok());
        WeightSystem::with_cache_limit(limit)
    }

    /// An evaluator with an explicit cache cap (`None` = unlimited).
    pub fn with_cache_limit(limit_bytes: Option<usize>) -> Self {
        WeightSystem {
            cache: HashMap::new(),
            deframed: HashMap::new(),
            used_bytes: 0,
            limit_bytes,
        }
    }

    /// Number of memoized framed weights (diagnostic).
    pub fn cached_entries(&self) -> usize {
        self.cache.len()
    }

    /// Evaluate the universal weight by the pivot recurrence.
    pub fn weight_recurrence(&mut self, d: &ChordDiagram) -> CenterPoly {
        if d.order() == 0 {
            return CenterPoly::one();
        }
        let canon = d.canonical_form();
        if let Some(hit) = self.cache.get(&canon) {
            return hit.clone();
        }
        let a = pivot(&canon);
        let value = self.recurrence_step(&canon, a);
        self.store(canon, value.clone());
        value
    }

    /// One unrolling of the recurrence at an explicit pivot chord `a`
    /// (recursive calls go back through the cache). The result does not
    /// depend on the pivot; exposing the choice lets tests check that.
    pub fn recurrence_step(
        &mut self,
        d: &ChordDiagram,
        a: (usize, usize),
    ) -> CenterPoly {
        let crossing = d.crossing_chords(a).expect("pivot is a chord of d");
        let k = crossing.len();
        let d_a = d.remove_chords(&[a]).expect("pivot is a chord of d");
        let head = CenterPoly::c() - CenterPoly::constant(EpsCoeff::eps_int(k as i64));
        let mut total = &head * &self.weight_recurrence(&d_a);
        if k == 0 {
            return total;
        }
        let eps = CenterPoly::eps();
        let eps_c_minus_y = &eps * &(CenterPoly::c() - CenterPoly::y());
        let mut singles = CenterPoly::zero();
        for &b in &crossing {
            let d_ab = d.remove_chords(&[a, b]).expect("crossing chord of d");
            singles += &self.weight_recurrence(&d_ab);
        }
        total += &(&eps_c_minus_y * &singles);
        let mut pair_main = CenterPoly::zero();
        let mut pair_tail = CenterPoly::zero();
        for i in 0..k {
            for j in (i + 1)..k {
                let der = d
                    .derived_diagrams(a, crossing[i], crossing[j])
                    .expect("both chords cross the pivot");
                pair_main += &self.weight_recurrence(&der.par);
                pair_main -= &self.weight_recurrence(&der.cross);
                pair_tail += &self.weight_recurrence(&der.lr);
                pair_tail += &self.weight_recurrence(&der.rl);
                pair_tail -= &self.weight_recurrence(&der.ll);
                pair_tail -= &self.weight_recurrence(&der.rr);
            }
        }
        total += &(&eps * &pair_main);
        total += &(&eps_c_minus_y * &pair_tail);
        total
    }

    /// Evaluate a Jacobi diagram: resolve every internal vertex by STU, then
    /// sum the chord-diagram weights.
    pub fn weight_jacobi(&mut self, j: &JacobiDiagram) -> Result<CenterPoly, WeightError> {
        let sum = j.stu_resolve()?;
        self.weight_sum(&sum)
    }

    /// Linear extension of the weight to a formal sum of diagrams.
    ///
    /// The rational coefficients exist for the deframing projector `φ`; every
    /// combination this library produces evaluates back into `ℤ[ε]`, and a
    /// surviving denominator signals misuse, so it is an error.
    pub fn weight_sum(&mut self, s: &DiagramSum) -> Result<CenterPoly, WeightError> {
        let mut acc: BTreeMap<(u32, u32), (Rational, Rational)> = BTreeMap::new();
        for (d, q) in s.terms() {
            let w = self.weight_recurrence(d);
            for (&(dc, dy), k) in w.iter() {
                let slot = acc
                    .entry((dc, dy))
                    .or_insert_with(|| (Rational::zero(), Rational::zero()));
                slot.0 += q * &Rational::from_integer(k.a.clone());
                slot.1 += q * &Rational::from_integer(k.b.clone());
            }
        }
        let mut out = CenterPoly::zero();
        for ((dc, dy), (pa, pb)) in acc {
            if !pa.is_integer() || !pb.is_integer() {
                return Err(WeightError::NonIntegralResult {
                    coeff: format!("{pa} + {pb}*e"),
                    dc,
                    dy,
                });
            }
            out.add_term(dc, dy, &EpsCoeff::new(pa.to_integer(), pb.to_integer()));
        }
        Ok(out)
    }

    /// The deframed weight: the framed weight with `c` set to zero.
    pub fn deframed_weight(&mut self, d: &ChordDiagram) -> CenterPoly {
        self.weight_recurrence(d).substitute_c_zero()
    }

    /// Evaluate the deframed weight by its own recurrence.
    ///
    /// Substituting `c = 0` into the framed recurrence only changes the head
    /// factor `(c − εk)` to `−εk`, because every other occurrence of `c`
    /// appears in `ε(c − y)`, whose substitution is `−εy`:
    ///
    /// ```text
    /// w̄(D) = −ε( k·w̄(D_a) + y·Σ_i w̄(D_{a,i})
    ///            − Σ_{i<j}( w̄(par) − w̄(cross) )
    ///            + y·Σ_{i<j}( w̄(lr) + w̄(rl) − w̄(ll) − w̄(rr) ) ).
    /// ```
    ///
    /// Equality with [`WeightSystem::deframed_weight`] is part of
    /// [`check_deframing`].
    pub fn deframed_recurrence(&mut self, d: &ChordDiagram) -> CenterPoly {
        if d.order() == 0 {
            return CenterPoly::one();
        }
        let canon = d.canonical_form();
        if let Some(hit) = self.deframed.get(&canon) {
            return hit.clone();
        }
        let a = pivot(&canon);
        let crossing = canon.crossing_chords(a).expect("pivot is a chord of d");
        let k = crossing.len();
        let d_a = canon.remove_chords(&[a]).expect("pivot is a chord of d");
        let y = CenterPoly::y();
        let mut bracket = self
            .deframed_recurrence(&d_a)
            .scale(&EpsCoeff::int(k as i64));
        let mut singles = CenterPoly::zero();
        for &b in &crossing {
            let d_ab = canon.remove_chords(&[a, b]).expect("crossing chord of d");
            singles += &self.deframed_recurrence(&d_ab);
        }
        bracket += &(&y * &singles);
        let mut pair_main = CenterPoly::zero();
        let mut pair_tail = CenterPoly::zero();
        for i in 0..k {
            for j in (i + 1)..k {
                let der = canon
                    .derived_diagrams(a, crossing[i], crossing[j])
                    .expect("both chords cross the pivot");
                pair_main += &self.deframed_recurrence(&der.par);
                pair_main -= &self.deframed_recurrence(&der.cross);
                pair_tail += &self.deframed_recurrence(&der.lr);
                pair_tail += &self.deframed_recurrence(&der.rl);
                pair_tail -= &self.deframed_recurrence(&der.ll);
                pair_tail -= &self.deframed_recurrence(&der.rr);
            }
        }
        bracket -= &pair_main;
        bracket += &(&y * &pair_tail);
        let value = -(&CenterPoly::eps() * &bracket);
        self.deframed.insert(canon, value.clone());
        value
    }

    fn store(&mut self, key: ChordDiagram, value: CenterPoly) {
        let cost = entry_cost(&key, &value);
        if let Some(limit) = self.limit_bytes {
            if self.used_bytes.saturating_add(cost) > limit {
                return;
            }
        }
        self.used_bytes += cost;
        self.cache.insert(key, value);
    }
}

impl Default for WeightSystem {
    fn default() -> Self {
        WeightSystem::new()
    }
}

/// Approximate heap cost of one cache entry (pairing vector plus terms); the
/// cap only needs to be an order-of-magnitude guard, not an exact audit.
fn entry_cost(d: &ChordDiagram, value: &CenterPoly) -> usize {
    96 + 8 * d.positions() + 96 * value.iter().count()
}

/// The pivot: a chord with the fewest crossings, ties broken by the smaller
/// first endpoint. Fewer crossings means smaller pair sums (`O(k²)` terms).
fn pivot(d: &ChordDiagram) -> (usize, usize) {
    let mut best: Option<((usize, usize), usize)> = None;
    for a in d.chords() {
        let k = d
            .crossing_chords(a)
            .expect("chords() yields chords of d")
            .len();
        if best.map_or(true, |(_, bk)| k < bk) {
            best = Some((a, k));
        }
    }
    best.expect("pivot exists for non-empty diagrams").0
}

/// The chord-deletion sum `s(D) = Σ_a (D − a)` over the chords of `D`; the
/// empty diagram maps to the empty sum.
pub fn s_map(d: &ChordDiagram) -> DiagramSum {
    let mut out = DiagramSum::new();
    for a in d.chords() {
        let removed = d.remove_chords(&[a]).expect("chord of d");
        out.add_term(&removed, Rational::one());
    }
    out
}

/// Connected sum with the single-chord diagram: `θ` adds an isolated chord.
pub fn theta_map(d: &ChordDiagram) -> ChordDiagram {
    let single = ChordDiagram::from_pairs(&[(0, 1)]).expect("single chord");
    d.connected_sum(&single)
}

/// `s` extended linearly to formal sums.
fn s_on_sum(sum: &DiagramSum) -> DiagramSum {
    sum.map_diagrams(s_map)
}

/// `θ` extended linearly to formal sums.
fn theta_on_sum(sum: &DiagramSum) -> DiagramSum {
    sum.map_diagrams(|d| DiagramSum::from_diagram(&theta_map(d)))
}

/// The deframing projector `φ(D) = Σ_{k=0}^{n} (−1)^k/k! · θᵏ(sᵏ(D))`.
///
/// The `k = 0` identity term is required: dropping it breaks both the
/// projection property `φ² = φ` and the equality of `w∘φ` with the `c = 0`
/// substitution, so its presence is pinned down by [`check_deframing`].
pub fn phi_map(d: &ChordDiagram) -> DiagramSum {
    let n = d.order();
    let mut out = DiagramSum::new();
    let mut layer = DiagramSum::from_diagram(d);
    for k in 0..=n {
        let numer = if k % 2 == 0 { 1 } else { -1 };
        let coeff = Rational::new(numer.into(), factorial(k as u32));
        let mut lifted = layer.clone();
        for _ in 0..k {
            lifted = theta_on_sum(&lifted);
        }
        out.add_scaled(&lifted, &coeff);
        if k < n {
            layer = s_on_sum(&layer);
        }
    }
    out
}

/// Whether a homogeneous formal sum lies in the rational span of the
/// four-term relation vectors at its order, decided by exact Gaussian
/// elimination.
///
/// This is the right notion of "zero" for identities that commute a deletion
/// past a splice. [`theta_map`] splices its chord at one boundary point, and
/// two splices of the same chord into one rotation class can land in
/// different classes ("1 1 2 2 3 3" versus "1 1 2 3 3 2"); only modulo the
/// four-term relations is the splice point invisible. Operator identities
/// such as `s∘φ = 0` therefore hold in that quotient, not term-by-term on
/// class sums, and [`check_deframing`] tests them through this membership
/// check.
pub fn in_four_term_span(sum: &DiagramSum) -> bool {
    if sum.is_empty() {
        return true;
    }
    let orders: BTreeSet<usize> = sum.terms().map(|(d, _)| d.order()).collect();
    if orders.len() != 1 {
        return false;
    }
    let order = *orders.iter().next().expect("one order");
    if order < 2 {
        return false;
    }

    type Row = BTreeMap<ChordDiagram, Rational>;
    // Reduce the leading term against the pivot rows (each normalized to a
    // unit leading coefficient) until no pivot matches; the leading key
    // strictly increases, so this terminates.
    fn reduce(mut row: Row, pivots: &BTreeMap<ChordDiagram, Row>) -> Row {
        while let Some(lead) = row.keys().next().cloned() {
            let Some(pivot) = pivots.get(&lead) else {
                break;
            };
            let factor = row[&lead].clone();
            for (d, q) in pivot {
                *row.entry(d.clone()).or_insert_with(Rational::zero) -= &factor * q;
            }
            row.retain(|_, q| !q.is_zero());
        }
        row
    }

    let mut pivots: BTreeMap<ChordDiagram, Row> = BTreeMap::new();
    for [d1, d2, d3, d4] in four_term_quadruples(order) {
        let mut relation = DiagramSum::new();
        relation.add_term(&d1, Rational::one());
        relation.add_term(&d2, -Rational::one());
        relation.add_term(&d3, -Rational::one());
        relation.add_term(&d4, Rational::one());
        let row: Row = relation
            .terms()
            .map(|(d, q)| (d.clone(), q.clone()))
            .collect();
        let reduced = reduce(row, &pivots);
        if let Some((lead, head)) = reduced.iter().next().map(|(d, q)| (d.clone(), q.clone())) {
            let unit: Row = reduced.into_iter().map(|(d, q)| (d, q / &head)).collect();
            pivots.insert(lead, unit);
        }
    }

    let target: Row = sum.terms().map(|(d, q)| (d.clone(), q.clone())).collect();
    reduce(target, &pivots).is_empty()
}

/// Closed form for the [`catalog::ladder`] family:
/// `w = c^{n+1} − (cⁿ − (c−ε)ⁿ)·y`.
pub fn closed_form_ladder(n: usize) -> CenterPoly {
    let c = CenterPoly::c();
    let c_minus_eps = CenterPoly::c() - CenterPoly::eps();
    let mut c_pow = CenterPoly::one();
    let mut shifted_pow = CenterPoly::one();
    for _ in 0..n {
        c_pow = &c_pow * &c;
        shifted_pow = &shifted_pow * &c_minus_eps;
    }
    let head = &c_pow * &c;
    head - &(&(c_pow - &shifted_pow) * &CenterPoly::y())
}

/// Closed form for the [`catalog::teeth`] family: `εⁿ·y` for the bare comb
/// and `εⁿ·(c − ε)·y` when the extra baseline chord is present (`ε² = 1`).
pub fn closed_form_teeth(n: usize, with_extra_chord: bool) -> CenterPoly {
    let eps_n = if n % 2 == 0 {
        CenterPoly::one()
    } else {
        CenterPoly::eps()
    };
    if with_extra_chord {
        &eps_n * &(&(CenterPoly::c() - CenterPoly::eps()) * &CenterPoly::y())
    } else {
        &eps_n * &CenterPoly::y()
    }
}

// ---------------------------------------------------------------------------
// Context harness for the reduction relations.
//
// Each reduction identity compares a small Jacobi diagram against chord
// diagrams on a shared circle layout. The layout is a walk of named points
// interleaved with dotted regions; spectator chords drop their endpoints into
// the regions. Walks are per-term: a term only keeps the named points its
// chords or legs reference, while regions (and the spectators inside them)
// are always kept in order.
// ---------------------------------------------------------------------------

/// One stop on a context walk.
#[derive(Clone, Copy)]
enum Mark {
    /// A named point, kept only when the term references it.
    Point(u8),
    /// A dotted region, filled from the spectator placement.
    Region(usize),
}

/// Spectator placement: for each region, the endpoint ids dropped there in
/// circular order. Endpoint ids pair up as chords `(0,1)`, `(2,3)`, …
type Placement = Vec<Vec<usize>>;

/// Positions of named points and spectator endpoints along a walk.
fn walk_positions(
    walk: &[Mark],
    referenced: &BTreeSet<u8>,
    placement: &Placement,
) -> (BTreeMap<u8, usize>, BTreeMap<usize, usize>, usize) {
    let mut pos_of_point = BTreeMap::new();
    let mut pos_of_end = BTreeMap::new();
    let mut next = 0usize;
    for &m in walk {
        match m {
            Mark::Point(p) if referenced.contains(&p) => {
                pos_of_point.insert(p, next);
                next += 1;
            }
            Mark::Point(_) => {}
            Mark::Region(r) => {
                for &e in &placement[r] {
                    pos_of_end.insert(e, next);
                    next += 1;
                }
            }
        }
    }
    (pos_of_point, pos_of_end, next)
}

/// Chord diagram for one right-hand-side term: the named chords plus the
/// spectators of the placement.
fn context_chords(walk: &[Mark], named: &[(u8, u8)], placement: &Placement) -> ChordDiagram {
    let referenced: BTreeSet<u8> = named.iter().flat_map(|&(p, q)| [p, q]).collect();
    let (pos_of_point, pos_of_end, _) = walk_positions(walk, &referenced, placement);
    let mut pairs: Vec<(usize, usize)> = named
        .iter()
        .map(|&(p, q)| (pos_of_point[&p], pos_of_point[&q]))
        .collect();
    let spectators = placement.iter().map(Vec::len).sum::<usize>() / 2;
    for i in 0..spectators {
        pairs.push((pos_of_end[&(2 * i)], pos_of_end[&(2 * i + 1)]));
    }
    ChordDiagram::from_pairs(&pairs).expect("assembled endpoints are distinct")
}

/// Jacobi diagram for a left-hand side: `legs` maps named points to vertex
/// slots, `bridges` joins vertex slots, spectators become circle chords.
fn context_jacobi(
    walk: &[Mark],
    legs: &[(u8, usize, u8)],
    bridges: &[((usize, u8), (usize, u8))],
    vertices: usize,
    placement: &Placement,
) -> JacobiDiagram {
    let referenced: BTreeSet<u8> = legs.iter().map(|&(p, _, _)| p).collect();
    let (pos_of_point, pos_of_end, total) = walk_positions(walk, &referenced, placement);
    let mut edges: Vec<(End, End)> = legs
        .iter()
        .map(|&(p, vertex, slot)| {
            (End::Slot { vertex, slot }, End::Circle(pos_of_point[&p]))
        })
        .collect();
    for &((v1, s1), (v2, s2)) in bridges {
        edges.push((
            End::Slot {
                vertex: v1,
                slot: s1,
            },
            End::Slot {
                vertex: v2,
                slot: s2,
            },
        ));
    }
    let spectators = placement.iter().map(Vec::len).sum::<usize>() / 2;
    for i in 0..spectators {
        edges.push((
            End::Circle(pos_of_end[&(2 * i)]),
            End::Circle(pos_of_end[&(2 * i + 1)]),
        ));
    }
    let ids = (1..=vertices).map(|i| format!("v{i}")).collect();
    JacobiDiagram::new(total, ids, edges).expect("assembled diagram is well-formed")
}

/// Spectator placements with up to `max_spectators` chords spread over
/// `regions` dotted regions: none, one chord in every inequivalent position,
/// and a representative family of two-chord patterns (nested, crossing, and
/// sequential within a region; split, parallel, and interleaved across
/// regions).
fn spectator_placements(regions: usize, max_spectators: usize) -> Vec<Placement> {
    let empty = vec![Vec::new(); regions];
    let mut out = vec![empty.clone()];
    if max_spectators >= 1 {
        for r in 0..regions {
            let mut p = empty.clone();
            p[r] = vec![0, 1];
            out.push(p);
        }
        for r1 in 0..regions {
            for r2 in (r1 + 1)..regions {
                let mut p = empty.clone();
                p[r1] = vec![0];
                p[r2] = vec![1];
                out.push(p);
            }
        }
    }
    if max_spectators >= 2 {
        for pattern in [[0usize, 2, 3, 1], [0, 2, 1, 3], [0, 1, 2, 3]] {
            let mut p = empty.clone();
            p[0] = pattern.to_vec();
            out.push(p);
        }
        if regions >= 2 {
            let mut split = empty.clone();
            split[0] = vec![0, 1];
            split[1] = vec![2, 3];
            out.push(split);
            let mut interleaved = empty.clone();
            interleaved[0] = vec![0, 2];
            interleaved[1] = vec![1, 3];
            out.push(interleaved);
            let mut parallel = empty.clone();
            parallel[0] = vec![0, 2];
            parallel[1] = vec![3, 1];
            out.push(parallel);
        }
        if regions >= 4 {
            let mut spread_crossing = empty.clone();
            for (r, e) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
                spread_crossing[r] = vec![e];
            }
            out.push(spread_crossing);
            let mut spread_disjoint = empty.clone();
            for (r, e) in [(0, 0), (1, 1), (2, 2), (3, 3)] {
                spread_disjoint[r] = vec![e];
            }
            out.push(spread_disjoint);
        }
    }
    out
}

/// Check the three reduction relations that trade an internal vertex for
/// chords, each in every spectator context of [`spectator_placements`]:
///
/// * a tripod whose far leg faces its two adjacent legs reduces to
///   `ε·(single chord) − ε(c−y)·(no chord)`;
/// * a bridge between two parallel chords (an H against the circle) reduces
///   to `ε·(parallel − crossing) + ε(c−y)·(the four single-chord terms)`;
/// * a bridge between two crossing chords reduces the same way with the
///   roles of the chord pairs exchanged.
pub fn prop_reduction_checks() -> CheckReport {
    let mut report = CheckReport::new("reduction-relations");
    let mut ws = WeightSystem::new();
    let eps = CenterPoly::eps();
    let eps_cy = &eps * &(CenterPoly::c() - CenterPoly::y());

    // Tripod: walk (T, ·, B₁, B₂, ·); the reduced terms live on (T, ·, B, ·).
    {
        let lhs_walk = [
            Mark::Point(0),
            Mark::Region(0),
            Mark::Point(1),
            Mark::Point(2),
            Mark::Region(1),
        ];
        let rhs_walk = [
            Mark::Point(0),
            Mark::Region(0),
            Mark::Point(1),
            Mark::Region(1),
        ];
        let placements = spectator_placements(2, 2);
        let mut failures = Vec::new();
        for (idx, pl) in placements.iter().enumerate() {
            let jacobi = context_jacobi(
                &lhs_walk,
                &[(0, 0, 0), (1, 0, 1), (2, 0, 2)],
                &[],
                1,
                pl,
            );
            let lhs = ws
                .weight_jacobi(&jacobi)
                .expect("STU resolution of the tripod context is integral");
            let joined = ws.weight_recurrence(&context_chords(&rhs_walk, &[(0, 1)], pl));
            let erased = ws.weight_recurrence(&context_chords(&rhs_walk, &[], pl));
            let rhs = (&eps * &joined) - &(&eps_cy * &erased);
            if lhs != rhs {
                failures.push(format!("placement {idx}: {lhs} ≠ {rhs}"));
            }
        }
        report.record(
            "tripod against a far leg reduces to a chord",
            placements.len(),
            failures,
        );
    }

    // Both bridge relations share the walk (A, ·, B, ·, C, ·, D, ·).
    let walk = [
        Mark::Point(0),
        Mark::Region(0),
        Mark::Point(1),
        Mark::Region(1),
        Mark::Point(2),
        Mark::Region(2),
        Mark::Point(3),
        Mark::Region(3),
    ];
    let placements = spectator_placements(4, 2);

    // Bridge between parallel chords: legs B, C on one vertex and A, D on
    // the other.
    {
        let mut failures = Vec::new();
        for (idx, pl) in placements.iter().enumerate() {
            let jacobi = context_jacobi(
                &walk,
                &[(1, 0, 0), (2, 0, 1), (0, 1, 0), (3, 1, 2)],
                &[((0, 2), (1, 1))],
                2,
                pl,
            );
            let lhs = ws
                .weight_jacobi(&jacobi)
                .expect("STU resolution of the bridge context is integral");
            let pair_parallel =
                ws.weight_recurrence(&context_chords(&walk, &[(0, 1), (2, 3)], pl));
            let pair_crossing =
                ws.weight_recurrence(&context_chords(&walk, &[(0, 2), (1, 3)], pl));
            let single_ac = ws.weight_recurrence(&context_chords(&walk, &[(0, 2)], pl));
            let single_bd = ws.weight_recurrence(&context_chords(&walk, &[(1, 3)], pl));
            let single_ab = ws.weight_recurrence(&context_chords(&walk, &[(0, 1)], pl));
            let single_cd = ws.weight_recurrence(&context_chords(&walk, &[(2, 3)], pl));
            let rhs = (&eps * &(pair_parallel - &pair_crossing))
                + &(&eps_cy * &(single_ac + &single_bd - &single_ab - &single_cd));
            if lhs != rhs {
                failures.push(format!("placement {idx}: {lhs} ≠ {rhs}"));
            }
        }
        report.record(
            "bridge between parallel chords reduces to chord pairs",
            placements.len(),
            failures,
        );
    }

    // Bridge between crossing chords: legs A, C on one vertex and B, D on
    // the other, bridge in the middle slots.
    {
        let mut failures = Vec::new();
        for (idx, pl) in placements.iter().enumerate() {
            let jacobi = context_jacobi(
                &walk,
                &[(0, 0, 0), (2, 0, 2), (1, 1, 0), (3, 1, 2)],
                &[((0, 1), (1, 1))],
                2,
                pl,
            );
            let lhs = ws
                .weight_jacobi(&jacobi)
                .expect("STU resolution of the crossed-bridge context is integral");
            let pair_outer = ws.weight_recurrence(&context_chords(&walk, &[(0, 3), (1, 2)], pl));
            let pair_parallel =
                ws.weight_recurrence(&context_chords(&walk, &[(0, 1), (2, 3)], pl));
            let single_cd = ws.weight_recurrence(&context_chords(&walk, &[(2, 3)], pl));
            let single_ab = ws.weight_recurrence(&context_chords(&walk, &[(0, 1)], pl));
            let single_bc = ws.weight_recurrence(&context_chords(&walk, &[(1, 2)], pl));
            let single_da = ws.weight_recurrence(&context_chords(&walk, &[(0, 3)], pl));
            let rhs = (&eps * &(pair_outer - &pair_parallel))
                + &(&eps_cy * &(single_cd + &single_ab - &single_bc - &single_da));
            if lhs != rhs {
                failures.push(format!("placement {idx}: {lhs} ≠ {rhs}"));
            }
        }
        report.record(
            "bridge between crossing chords reduces to chord pairs",
            placements.len(),
            failures,
        );
    }

    report
}

/// Verify the four-term relation through order `max_order`: for every
/// quadruple from [`four_term_quadruples`], `w(D₁) − w(D₂) − w(D₃) + w(D₄)`
/// is the zero polynomial.
pub fn check_four_term(max_order: usize) -> CheckReport {
    let mut report = CheckReport::new("four-term");
    let mut ws = WeightSystem::new();
    for n in 2..=max_order {
        let quads = four_term_quadruples(n);
        let mut failures = Vec::new();
        for (idx, [d1, d2, d3, d4]) in quads.iter().enumerate() {
            let total = ws.weight_recurrence(d1) - &ws.weight_recurrence(d2)
                - &ws.weight_recurrence(d3)
                + &ws.weight_recurrence(d4);
            if !total.is_zero() {
                failures.push(format!("quadruple {idx}: {total}"));
            }
        }
        report.record(
            format!("four-term alternating sum vanishes at order {n}"),
            quads.len(),
            failures,
        );
    }
    report
}

/// Named Jacobi corpus used by the STU checks.
fn jacobi_corpus() -> Vec<(&'static str, JacobiDiagram)> {
    vec![
        ("tripod", catalog::tripod()),
        ("theta on the circle", catalog::theta_on_circle()),
        ("h", catalog::h_diagram()),
        ("h with spectator", catalog::h_with_spectator()),
        ("wheel 3", catalog::wheel(3)),
        ("wheel 4", catalog::wheel(4)),
        ("comb 1", catalog::teeth(1)),
        ("comb 2", catalog::teeth(2)),
        ("comb 3", catalog::teeth(3)),
        ("comb 2 with chord", catalog::teeth_with_chord(2)),
    ]
}

/// Verify that STU resolution is well-behaved at the weight level: the
/// resolution order does not change the evaluated weight, and flipping the
/// cyclic orientation of any internal vertex negates it.
pub fn check_stu_independence() -> CheckReport {
    let mut report = CheckReport::new("stu-resolution");
    let mut ws = WeightSystem::new();
    let corpus = jacobi_corpus();
    {
        let mut failures = Vec::new();
        for (name, j) in &corpus {
            let small = j
                .stu_resolve_with(ResolveStrategy::SmallestLeg)
                .expect("corpus diagrams resolve");
            let large = j
                .stu_resolve_with(ResolveStrategy::LargestLeg)
                .expect("corpus diagrams resolve");
            let ws_small = ws.weight_sum(&small).expect("weights stay integral");
            let ws_large = ws.weight_sum(&large).expect("weights stay integral");
            if ws_small != ws_large {
                failures.push(format!("{name}: {ws_small} ≠ {ws_large}"));
            }
        }
        report.record(
            "resolution site order does not change the weight",
            corpus.len(),
            failures,
        );
    }
    {
        let mut failures = Vec::new();
        let mut instances = 0usize;
        for (name, j) in &corpus {
            let value = ws.weight_jacobi(j).expect("weights stay integral");
            for id in j.vertex_ids().to_vec() {
                instances += 1;
                let flipped = j.vertex_flip(&id).expect("vertex id from the diagram");
                let flipped_value =
                    ws.weight_jacobi(&flipped).expect("weights stay integral");
                if flipped_value != -value.clone() {
                    failures.push(format!(
                        "{name}, vertex {id}: {flipped_value} ≠ −({value})"
                    ));
                }
            }
        }
        report.record(
            "flipping one vertex orientation negates the weight",
            instances,
            failures,
        );
    }
    report
}

/// Verify the deframing story on all canonical diagrams:
///
/// * `w∘φ` equals the `c = 0` substitution (orders ≤ `substitution_order`);
/// * the chord-deletion sum differentiates with respect to `c`
///   (orders ≤ `derivative_order`);
/// * the deframed recurrence reproduces the substituted weight;
/// * `s∘φ = 0` as formal sums and `φ² = φ` at the weight level;
/// * `θ` multiplies the weight by `c`, and `φ` kills the single chord.
pub fn check_deframing(substitution_order: usize, derivative_order: usize) -> CheckReport {
    let mut report = CheckReport::new("deframing");
    let mut ws = WeightSystem::new();

    {
        let mut failures = Vec::new();
        let mut instances = 0usize;
        for n in 1..=substitution_order {
            for d in enumerate_canonical(n) {
                instances += 1;
                let projected = ws
                    .weight_sum(&phi_map(&d))
                    .expect("projector output evaluates integrally");
                let substituted = ws.deframed_weight(&d);
                if projected != substituted {
                    failures.push(format!("\"{d}\": {projected} ≠ {substituted}"));
                }
            }
        }
        report.record(
            "evaluating after the projector equals substituting c = 0",
            instances,
            failures,
        );
    }

    {
        let mut failures = Vec::new();
        let mut instances = 0usize;
        for n in 1..=derivative_order {
            for d in enumerate_canonical(n) {
                instances += 1;
                let derivative = ws.weight_recurrence(&d).d_dc();
                let deleted = ws
                    .weight_sum(&s_map(&d))
                    .expect("deletion sum evaluates integrally");
                if derivative != deleted {
                    failures.push(format!("\"{d}\": {derivative} ≠ {deleted}"));
                }
            }
        }
        report.record(
            "the chord-deletion sum differentiates the weight in c",
            instances,
            failures,
        );
    }

    {
        let mut failures = Vec::new();
        let mut instances = 0usize;
        for n in 1..=substitution_order {
            for d in enumerate_canonical(n) {
                instances += 1;
                let direct = ws.deframed_recurrence(&d);
                let substituted = ws.deframed_weight(&d);
                if direct != substituted {
                    failures.push(format!("\"{d}\": {direct} ≠ {substituted}"));
                }
            }
        }
        report.record(
            "the deframed recurrence reproduces the substituted weight",
            instances,
            failures,
        );
    }

    {
        let mut failures = Vec::new();
        let mut instances = 0usize;
        for n in 1..=substitution_order {
            for d in enumerate_canonical(n) {
                instances += 1;
                let image = s_on_sum(&phi_map(&d));
                if !in_four_term_span(&image) {
                    failures.push(format!("\"{d}\": s(φ(D)) = {}", image.render()));
                }
            }
        }
        report.record(
            "the chord-deletion sum kills projector output modulo four-term relations",
            instances,
            failures,
        );
    }

    {
        let mut failures = Vec::new();
        let mut instances = 0usize;
        for n in 1..=substitution_order {
            for d in enumerate_canonical(n) {
                instances += 1;
                let once = phi_map(&d);
                let twice = once.map_diagrams(|x| phi_map(x));
                let w_once = ws.weight_sum(&once).expect("projector output is integral");
                let w_twice = ws.weight_sum(&twice).expect("projector output is integral");
                if w_once != w_twice {
                    failures.push(format!("\"{d}\": {w_twice} ≠ {w_once}"));
                }
            }
        }
        report.record(
            "the projector is idempotent at the weight level",
            instances,
            failures,
        );
    }

    {
        let mut failures = Vec::new();
        let mut instances = 0usize;
        for n in 0..=substitution_order.saturating_sub(1) {
            let mut diagrams = if n == 0 {
                vec![ChordDiagram::empty()]
            } else {
                enumerate_canonical(n)
            };
            for d in diagrams.drain(..) {
                instances += 1;
                let with_chord = ws.weight_recurrence(&theta_map(&d));
                let scaled = &CenterPoly::c() * &ws.weight_recurrence(&d);
                if with_chord != scaled {
                    failures.push(format!("\"{d}\": {with_chord} ≠ {scaled}"));
                }
            }
        }
        report.record(
            "adding an isolated chord multiplies the weight by c",
            instances,
            failures,
        );
    }

    {
        let single = ChordDiagram::parse("1 1").expect("single chord parses");
        let image = phi_map(&single);
        let failures = if image.is_empty() {
            Vec::new()
        } else {
            vec![format!("φ(\"1 1\") = {}", image.render())]
        };
        report.record("the projector kills the single chord", 1, failures);
    }

    report
}

/// Compare the recurrence against the enveloping-algebra walk on every
/// canonical diagram through `max_order`.
pub fn check_oracle_agreement(max_order: usize) -> CheckReport {
    let mut report = CheckReport::new("oracle-vs-recurrence");
    let mut ws = WeightSystem::new();
    for n in 1..=max_order {
        let all = enumerate_canonical(n);
        let mut failures = Vec::new();
        for d in &all {
            let walked = envelope::oracle_weight(d, 0);
            match envelope::express_in_center(&walked, n as u32) {
                Ok(expressed) => {
                    let recurred = ws.weight_recurrence(d);
                    if expressed != recurred {
                        failures.push(format!("\"{d}\": {expressed} ≠ {recurred}"));
                    }
                }
                Err(e) => failures.push(format!("\"{d}\": {e}")),
            }
        }
        report.record(
            format!("enveloping-algebra walk matches the recurrence at order {n}"),
            all.len(),
            failures,
        );
    }
    report
}

/// Scan whether the enveloping-algebra walk gives the same central value for
/// every cut position. This is a survey, not an assumption: the library never
/// relies on it, and callers should treat failures as findings.
pub fn check_cut_scan(max_order: usize) -> CheckReport {
    let mut report = CheckReport::new("cut-positions");
    for n in 1..=max_order {
        let all = enumerate_canonical(n);
        let mut failures = Vec::new();
        for d in &all {
            let reference =
                envelope::express_in_center(&envelope::oracle_weight(d, 0), n as u32).ok();
            for cut in 1..d.positions() {
                let other =
                    envelope::express_in_center(&envelope::oracle_weight(d, cut), n as u32).ok();
                if other != reference {
                    failures.push(format!("\"{d}\" at cut {cut}"));
                }
            }
        }
        report.record(
            format!("cut position leaves the central value unchanged at order {n}"),
            all.len(),
            failures,
        );
    }
    report
}

/// Scan whether weights are invariant under reflecting the circle. The
/// library never assumes this (canonical forms quotient rotations only);
/// the scan documents it empirically.
pub fn check_reflection(max_order: usize) -> CheckReport {
    let mut report = CheckReport::new("reflection");
    let mut ws = WeightSystem::new();
    for n in 1..=max_order {
        let all = enumerate_canonical(n);
        let mut failures = Vec::new();
        for d in &all {
            let forward = ws.weight_recurrence(d);
            let mirrored = ws.weight_recurrence(&d.reflected());
            if forward != mirrored {
                failures.push(format!("\"{d}\": {forward} ≠ {mirrored}"));
            }
        }
        report.record(
            format!("reflection leaves the weight unchanged at order {n}"),
            all.len(),
            failures,
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(code: &str) -> ChordDiagram {
        ChordDiagram::parse(code).expect("test diagram must parse")
    }

    fn cp(text: &str) -> CenterPoly {
        CenterPoly::parse(text).expect("test polynomial must parse")
    }

    fn w(code: &str) -> CenterPoly {
        WeightSystem::new().weight_recurrence(&d(code))
    }

    #[test]
    fn order_one_and_two_table() {
        assert_eq!(w("1 1"), cp("c"));
        assert_eq!(w("1 1 2 2"), cp("c^2"));
        assert_eq!(w("1 2 1 2"), cp("c^2 - e*y"));
    }

    #[test]
    fn order_three_table() {
        assert_eq!(w("1 1 2 2 3 3"), cp("c^3"));
        assert_eq!(w("1 2 2 1 3 3"), cp("c^3"));
        assert_eq!(w("1 2 1 2 3 3"), cp("c^3 - e*c*y"));
        assert_eq!(w("1 2 1 3 2 3"), cp("c^3 - 2*e*c*y + y"));
        assert_eq!(w("1 2 3 1 2 3"), cp("c^3 - 3*e*c*y + 2*y"));
    }

    #[test]
    fn order_four_indecomposable_table() {
        let table = [
            ("1 2 3 4 1 4 3 2", "c^4 - 3*e*c^2*y + 3*c*y - e*y"),
            ("1 2 1 3 2 4 3 4", "c^4 - 3*e*c^2*y + 2*c*y - e*y + y^2"),
            ("1 2 3 1 4 2 4 3", "c^4 - 4*e*c^2*y + 4*c*y - 2*e*y + y^2"),
            ("1 2 3 1 4 3 2 4", "c^4 - 4*e*c^2*y + 4*c*y - 4*e*y + 4*y^2"),
            ("1 2 3 4 1 3 2 4", "c^4 - 5*e*c^2*y + 6*c*y - 5*e*y + 4*y^2"),
            ("1 2 3 4 1 2 3 4", "c^4 - 6*e*c^2*y + 8*c*y - 7*e*y + 5*y^2"),
        ];
        let mut ws = WeightSystem::new();
        for (code, expected) in table {
            assert_eq!(ws.weight_recurrence(&d(code)), cp(expected), "{code}");
        }
        for code in table.map(|(code, _)| code) {
            assert!(d(code).is_indecomposable(), "{code}");
        }
    }

    #[test]
    fn jacobi_table_values() {
        let mut ws = WeightSystem::new();
        let mut expect = |j: &JacobiDiagram, text: &str| {
            assert_eq!(
                ws.weight_jacobi(j).expect("table diagrams are integral"),
                cp(text)
            );
        };
        expect(&catalog::tripod(), "e*y");
        expect(&catalog::theta_on_circle(), "2*e*y");
        expect(&catalog::h_diagram(), "y");
        expect(&catalog::h_with_spectator(), "c*y - 2*e*y + 2*y^2");
    }

    #[test]
    fn wheel_values() {
        let mut ws = WeightSystem::new();
        let spokes = [
            (3usize, "y"),
            (4, "2*y^2"),
            (5, "3*e*y^2 - y"),
        ];
        for (k, text) in spokes {
            assert_eq!(
                ws.weight_jacobi(&catalog::wheel(k))
                    .expect("wheels are integral"),
                cp(text),
                "wheel {k}"
            );
        }
    }

    #[test]
    fn ladder_matches_its_closed_form() {
        let mut ws = WeightSystem::new();
        for n in 0..=5 {
            assert_eq!(
                ws.weight_recurrence(&catalog::ladder(n)),
                closed_form_ladder(n),
                "ladder {n}"
            );
        }
        assert_eq!(closed_form_ladder(1), cp("c^2 - e*y"));
        assert_eq!(closed_form_ladder(3), cp("c^4 - 3*e*c^2*y + 3*c*y - e*y"));
    }

    #[test]
    fn comb_matches_its_closed_form() {
        let mut ws = WeightSystem::new();
        for n in 1..=4 {
            assert_eq!(
                ws.weight_jacobi(&catalog::teeth(n))
                    .expect("combs are integral"),
                closed_form_teeth(n, false),
                "comb {n}"
            );
            assert_eq!(
                ws.weight_jacobi(&catalog::teeth_with_chord(n))
                    .expect("combs are integral"),
                closed_form_teeth(n, true),
                "comb {n} with chord"
            );
        }
        assert_eq!(closed_form_teeth(1, false), cp("e*y"));
        assert_eq!(closed_form_teeth(2, false), cp("y"));
    }

    #[test]
    fn comb_recurrences_hold() {
        // Adding a tooth satisfies w(Dₙ) = c·w(Dₙ₋₁) − w(D′ₙ₋₁) and
        // w(D′ₙ) = (ε−c)·w(D′ₙ₋₁) − c(ε−c)·w(Dₙ₋₁).
        let eps_minus_c = CenterPoly::eps() - CenterPoly::c();
        for n in 2..=6 {
            let bare = closed_form_teeth(n, false);
            let chord = closed_form_teeth(n, true);
            let prev_bare = closed_form_teeth(n - 1, false);
            let prev_chord = closed_form_teeth(n - 1, true);
            assert_eq!(bare, (&CenterPoly::c() * &prev_bare) - &prev_chord, "{n}");
            assert_eq!(
                chord,
                (&eps_minus_c * &prev_chord) - &(&(&CenterPoly::c() * &eps_minus_c) * &prev_bare),
                "{n}"
            );
        }
    }

    #[test]
    fn recurrence_is_pivot_independent() {
        let mut ws = WeightSystem::new();
        for n in 1..=4 {
            for diagram in enumerate_canonical(n) {
                let reference = ws.weight_recurrence(&diagram);
                for a in diagram.chords() {
                    assert_eq!(
                        ws.recurrence_step(&diagram, a),
                        reference,
                        "\"{diagram}\" pivot {a:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn weight_respects_rotation() {
        let mut ws = WeightSystem::new();
        let diagram = d("1 2 3 1 4 3 2 4");
        let reference = ws.weight_recurrence(&diagram);
        for r in 1..diagram.positions() {
            assert_eq!(ws.weight_recurrence(&diagram.rotated(r)), reference, "{r}");
        }
    }

    #[test]
    fn connected_sums_multiply() {
        let mut ws = WeightSystem::new();
        let mut pieces = Vec::new();
        for n in 1..=3 {
            pieces.extend(enumerate_canonical(n));
        }
        for d1 in &pieces {
            for d2 in &pieces {
                let product = &ws.weight_recurrence(d1) * &ws.weight_recurrence(d2);
                assert_eq!(
                    ws.weight_recurrence(&d1.connected_sum(d2)),
                    product,
                    "\"{d1}\" # \"{d2}\""
                );
            }
        }
    }

    #[test]
    fn four_term_vanishes() {
        let report = check_four_term(4);
        assert!(report.passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn deletion_sum_examples() {
        assert!(s_map(&ChordDiagram::empty()).is_empty());
        let single = s_map(&d("1 1"));
        assert_eq!(single.len(), 1);
        assert_eq!(
            single.terms().next().map(|(x, q)| (x.clone(), q.clone())),
            Some((ChordDiagram::empty(), Rational::one()))
        );
        let crossing = s_map(&d("1 2 1 2"));
        assert_eq!(crossing.len(), 1);
        assert_eq!(
            crossing.terms().next().map(|(x, q)| (x.code(), q.clone())),
            Some(("1 1".to_string(), Rational::from_integer(2.into())))
        );
    }

    #[test]
    fn isolated_chord_examples() {
        assert_eq!(theta_map(&ChordDiagram::empty()).code(), "1 1");
        assert_eq!(theta_map(&d("1 2 1 2")).order(), 3);
        let mut ws = WeightSystem::new();
        let diagram = d("1 2 1 3 2 3");
        assert_eq!(
            ws.weight_recurrence(&theta_map(&diagram)),
            &CenterPoly::c() * &ws.weight_recurrence(&diagram)
        );
    }

    #[test]
    fn projector_examples() {
        assert!(phi_map(&d("1 1")).is_empty());
        // φ("1 2 1 2") = D − 2·θ("1 1") + θ²(∅) = D − 2·("1 1"#"1 1") + ("1 1"#"1 1"):
        // the two k ≥ 1 layers partially cancel.
        let image = phi_map(&d("1 2 1 2"));
        let mut ws = WeightSystem::new();
        assert_eq!(
            ws.weight_sum(&image).expect("projector output is integral"),
            cp("-e*y")
        );
    }

    #[test]
    fn deframed_weight_examples() {
        let mut ws = WeightSystem::new();
        assert_eq!(ws.deframed_weight(&d("1 1")), CenterPoly::zero());
        assert_eq!(ws.deframed_weight(&d("1 2 1 2")), cp("-e*y"));
        assert_eq!(
            ws.deframed_weight(&d("1 2 3 4 1 2 3 4")),
            cp("-7*e*y + 5*y^2")
        );
    }

    #[test]
    fn deframed_recurrence_examples() {
        let mut ws = WeightSystem::new();
        assert_eq!(ws.deframed_recurrence(&d("1 1")), CenterPoly::zero());
        assert_eq!(ws.deframed_recurrence(&d("1 2 1 2")), cp("-e*y"));
        assert_eq!(
            ws.deframed_recurrence(&d("1 2 3 4 1 2 3 4")),
            cp("-7*e*y + 5*y^2")
        );
    }

    #[test]
    fn deframing_suite_passes() {
        let report = check_deframing(4, 5);
        assert!(report.passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn four_term_span_membership() {
        // A relation vector itself lies in the span; a lone diagram does not.
        let [d1, d2, d3, d4] = four_term_quadruples(3)[0].clone();
        let mut relation = DiagramSum::new();
        relation.add_term(&d1, Rational::one());
        relation.add_term(&d2, -Rational::one());
        relation.add_term(&d3, -Rational::one());
        relation.add_term(&d4, Rational::one());
        assert!(in_four_term_span(&relation));
        assert!(!in_four_term_span(&DiagramSum::from_diagram(&d("1 2 1 2"))));
        // Splicing three isolated chords in two different ways gives distinct
        // classes that agree modulo the relations.
        let mut residue = DiagramSum::new();
        residue.add_term(&d("1 1 2 2 3 3"), Rational::one());
        residue.add_term(&d("1 1 2 3 3 2"), -Rational::one());
        assert!(in_four_term_span(&residue));
        // Inhomogeneous or low-order nonzero sums are never in the span.
        let mut mixed = DiagramSum::new();
        mixed.add_term(&d("1 1"), Rational::one());
        mixed.add_term(&d("1 1 2 2"), Rational::one());
        assert!(!in_four_term_span(&mixed));
        assert!(!in_four_term_span(&DiagramSum::from_diagram(&d("1 1"))));
        assert!(in_four_term_span(&DiagramSum::new()));
    }

    #[test]
    fn reduction_relations_hold() {
        let report = prop_reduction_checks();
        assert!(report.passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn stu_checks_pass() {
        let report = check_stu_independence();
        assert!(report.passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn oracle_agreement_holds_at_low_order() {
        let report = check_oracle_agreement(3);
        assert!(report.passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn scans_come_back_clean_at_low_order() {
        assert!(check_cut_scan(3).passed());
        assert!(check_reflection(3).passed());
    }

    #[test]
    fn non_integral_sums_are_rejected() {
        let mut sum = DiagramSum::new();
        sum.add_term(&d("1 1"), Rational::new(1.into(), 2.into()));
        let mut ws = WeightSystem::new();
        match ws.weight_sum(&sum) {
            Err(WeightError::NonIntegralResult { dc: 1, dy: 0, .. }) => {}
            other => panic!("expected a non-integral rejection, got {other:?}"),
        }
    }

    #[test]
    fn cache_cap_disables_storage_but_not_answers() {
        let mut capped = WeightSystem::with_cache_limit(Some(0));
        let mut free = WeightSystem::new();
        let diagram = d("1 2 1 3 2 3");
        assert_eq!(
            capped.weight_recurrence(&diagram),
            free.weight_recurrence(&diagram)
        );
        assert_eq!(capped.cached_entries(), 0);
        assert!(free.cached_entries() > 0);
    }
}
