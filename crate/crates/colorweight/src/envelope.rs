//! The universal enveloping algebra of the minimal doubly graded algebra,
//! and the brute-force weight oracle.
//!
//! Elements are kept in the normal form `H^h Q1^{q1} Q2^{q2} Q3^{q3}` with
//! the generator order `H < Q1 < Q2 < Q3`. Out-of-order products are
//! rewritten by `X_b X_a = eps(b, a) X_a X_b + [[X_b, X_a]]`, concretely
//!
//! ```text
//! Q2 Q1 = -Q1 Q2 + Q3      Q3 Q1 = -Q1 Q3 + Q2      Q3 Q2 = -Q2 Q3 + e*Q1
//! ```
//!
//! with `H` commuting freely. The rewriting is confluent (tested, not
//! assumed: a naive strategy-parameterized reducer cross-checks the memoized
//! fast path).
//!
//! The oracle evaluates a chord diagram directly from the definition of the
//! universal weight: cut the circle, read off one generator per chord
//! endpoint, sum over all assignments of generators to chords with the
//! inverse-form diagonal `(1, e, 1, 1)` as per-chord weights and a `-1`
//! crossing phase for every interleaving pair of chords whose generators
//! anticommute. The result is a central element of the enveloping algebra;
//! [`express_in_center`] writes it as an exact polynomial in the Casimir `c`
//! and the reduced Casimir `y = c - H^2`, giving a second, independent route
//! to every weight the recurrence computes.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::colorlie::{CommutingFactor, Degree};
use crate::diagram::ChordDiagram;
use crate::poly::{CenterPoly, EpsCoeff};
use crate::report::CheckReport;

/// Errors from writing an element in central coordinates.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnvelopeError {
    /// The element does not commute with every generator.
    #[error("element is not central")]
    NotCentral,
    /// The element is central but not a polynomial in `c` and `y` within the
    /// requested order bound.
    #[error("element is not in the span of c^a y^b with a + b <= {0}")]
    NotInSpan(u32),
}

/// A word in the generators, by index: `0 = H`, `1 = Q1`, `2 = Q2`, `3 = Q3`.
pub type GeneratorWord = Vec<u8>;

/// The degree of generator `mu`.
fn generator_degree(mu: u8) -> Degree {
    match mu {
        0 => Degree(0, 0),
        1 => Degree(1, 0),
        2 => Degree(0, 1),
        3 => Degree(1, 1),
        _ => panic!("generator index {mu} out of range"),
    }
}

/// A normally ordered monomial `H^h Q1^{q1} Q2^{q2} Q3^{q3}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalMonomial {
    /// Exponent of `H`.
    pub h: u32,
    /// Exponent of `Q1`.
    pub q1: u32,
    /// Exponent of `Q2`.
    pub q2: u32,
    /// Exponent of `Q3`.
    pub q3: u32,
}

impl NormalMonomial {
    /// The empty monomial `1`.
    pub fn one() -> Self {
        NormalMonomial::default()
    }

    /// Total degree `h + q1 + q2 + q3`.
    pub fn total_degree(&self) -> u32 {
        self.h + self.q1 + self.q2 + self.q3
    }
}

/// An element of the enveloping algebra in normal form: a finite sum of
/// normally ordered monomials with sign coefficients. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnvelopeElement {
    terms: std::collections::BTreeMap<NormalMonomial, EpsCoeff>,
}

impl EnvelopeElement {
    /// The zero element.
    pub fn zero() -> Self {
        EnvelopeElement::default()
    }

    /// The unit element.
    pub fn one() -> Self {
        EnvelopeElement::monomial(NormalMonomial::one(), EpsCoeff::one())
    }

    /// A single scaled monomial.
    pub fn monomial(m: NormalMonomial, coeff: EpsCoeff) -> Self {
        let mut out = EnvelopeElement::zero();
        out.add_term(m, coeff);
        out
    }

    /// The generator `mu` as an element.
    pub fn generator(mu: u8) -> Self {
        let mut m = NormalMonomial::one();
        match mu {
            0 => m.h = 1,
            1 => m.q1 = 1,
            2 => m.q2 = 1,
            3 => m.q3 = 1,
            _ => panic!("generator index {mu} out of range"),
        }
        EnvelopeElement::monomial(m, EpsCoeff::one())
    }

    /// Whether this is the zero element.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of a monomial (zero when absent).
    pub fn coeff(&self, m: &NormalMonomial) -> EpsCoeff {
        self.terms.get(m).cloned().unwrap_or_else(EpsCoeff::zero)
    }

    /// Iterate monomial/coefficient pairs in ascending monomial order.
    pub fn iter(&self) -> impl Iterator<Item = (&NormalMonomial, &EpsCoeff)> {
        self.terms.iter()
    }

    /// Number of stored monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Whether no monomials are stored (alias of [`EnvelopeElement::is_zero`]).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `coeff * m`, pruning a vanishing sum.
    pub fn add_term(&mut self, m: NormalMonomial, coeff: EpsCoeff) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(EpsCoeff::zero);
        *entry += &coeff;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Every term scaled by a coefficient.
    pub fn scale(&self, k: &EpsCoeff) -> EnvelopeElement {
        let mut out = EnvelopeElement::zero();
        if k.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.add_term(*m, c * k);
        }
        out
    }

    /// The largest monomial in lexicographic `(h, q1, q2, q3)` order.
    pub fn leading(&self) -> Option<(&NormalMonomial, &EpsCoeff)> {
        self.terms.iter().next_back()
    }

    fn add_scaled(&mut self, other: &EnvelopeElement, k: &EpsCoeff) {
        for (m, c) in &other.terms {
            self.add_term(*m, c * k);
        }
    }
}

impl Add for EnvelopeElement {
    type Output = EnvelopeElement;
    fn add(mut self, rhs: EnvelopeElement) -> EnvelopeElement {
        self.add_scaled(&rhs, &EpsCoeff::one());
        self
    }
}

impl AddAssign<&EnvelopeElement> for EnvelopeElement {
    fn add_assign(&mut self, rhs: &EnvelopeElement) {
        self.add_scaled(rhs, &EpsCoeff::one());
    }
}

impl Sub for EnvelopeElement {
    type Output = EnvelopeElement;
    fn sub(mut self, rhs: EnvelopeElement) -> EnvelopeElement {
        self.add_scaled(&rhs, &-EpsCoeff::one());
        self
    }
}

impl SubAssign<&EnvelopeElement> for EnvelopeElement {
    fn sub_assign(&mut self, rhs: &EnvelopeElement) {
        self.add_scaled(rhs, &-EpsCoeff::one());
    }
}

impl Neg for EnvelopeElement {
    type Output = EnvelopeElement;
    fn neg(self) -> EnvelopeElement {
        self.scale(&-EpsCoeff::one())
    }
}

impl fmt::Display for EnvelopeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let render_monomial = |m: &NormalMonomial| -> String {
            let mut parts = Vec::new();
            for (name, exp) in [("H", m.h), ("Q1", m.q1), ("Q2", m.q2), ("Q3", m.q3)] {
                match exp {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{exp}")),
                }
            }
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join(" ")
            }
        };
        let mut first = true;
        // Highest monomial first, mirroring the polynomial renderer.
        for (m, k) in self.terms.iter().rev() {
            let (negative, magnitude) = k.sign_split();
            if first {
                if negative {
                    f.write_str("-")?;
                }
                first = false;
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if *m == NormalMonomial::one() {
                f.write_str(&magnitude.render_standalone())?;
            } else {
                f.write_str(&magnitude.render_prefix())?;
                f.write_str(&render_monomial(m))?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Normal ordering.

/// Append a single generator to a monomial with the `H` power stripped,
/// memoized globally. Keys never include the `H` exponent: `H` is central,
/// so it passes through every rewrite untouched.
fn append_reduced(q1: u32, q2: u32, q3: u32, g: u8) -> Arc<EnvelopeElement> {
    // Cheap cases that need no rewriting and no cache traffic.
    if g == 3 || (g == 2 && q3 == 0) || (g == 1 && q2 == 0 && q3 == 0) {
        let mut m = NormalMonomial {
            h: 0,
            q1,
            q2,
            q3,
        };
        match g {
            1 => m.q1 += 1,
            2 => m.q2 += 1,
            3 => m.q3 += 1,
            _ => unreachable!(),
        }
        return Arc::new(EnvelopeElement::monomial(m, EpsCoeff::one()));
    }

    static MEMO: OnceLock<Mutex<HashMap<(u32, u32, u32, u8), Arc<EnvelopeElement>>>> =
        OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = memo.lock().unwrap().get(&(q1, q2, q3, g)) {
        return Arc::clone(hit);
    }

    let reduced = |dq3: u32| NormalMonomial {
        h: 0,
        q1,
        q2,
        q3: q3 - dq3,
    };
    let result = match g {
        // m Q3 Q2 = -(m Q2) Q3 + e (m Q1)
        2 => {
            let m = reduced(1);
            let with_q2 = append_generator(
                &EnvelopeElement::monomial(m, EpsCoeff::one()),
                2,
            );
            let with_q3 = append_generator(&with_q2, 3);
            let with_q1 = append_generator(
                &EnvelopeElement::monomial(m, EpsCoeff::one()),
                1,
            );
            with_q1.scale(&EpsCoeff::eps()) - with_q3
        }
        1 if q3 > 0 => {
            // m Q3 Q1 = -(m Q1) Q3 + (m Q2)
            let m = reduced(1);
            let with_q1 = append_generator(
                &EnvelopeElement::monomial(m, EpsCoeff::one()),
                1,
            );
            let with_q3 = append_generator(&with_q1, 3);
            let with_q2 = append_generator(
                &EnvelopeElement::monomial(m, EpsCoeff::one()),
                2,
            );
            with_q2 - with_q3
        }
        1 => {
            // q3 = 0, q2 > 0: m Q2 Q1 = -(m Q1) Q2 + (m Q3)
            let m = NormalMonomial {
                h: 0,
                q1,
                q2: q2 - 1,
                q3,
            };
            let with_q1 = append_generator(
                &EnvelopeElement::monomial(m, EpsCoeff::one()),
                1,
            );
            let with_q2 = append_generator(&with_q1, 2);
            let with_q3 = append_generator(
                &EnvelopeElement::monomial(m, EpsCoeff::one()),
                3,
            );
            with_q3 - with_q2
        }
        _ => unreachable!("cheap cases handled above"),
    };
    let result = Arc::new(result);
    memo.lock()
        .unwrap()
        .insert((q1, q2, q3, g), Arc::clone(&result));
    result
}

/// Right-multiply an element by a single generator, renormalizing.
pub fn append_generator(x: &EnvelopeElement, g: u8) -> EnvelopeElement {
    let mut out = EnvelopeElement::zero();
    for (m, k) in x.iter() {
        if g == 0 {
            out.add_term(
                NormalMonomial {
                    h: m.h + 1,
                    ..*m
                },
                k.clone(),
            );
            continue;
        }
        let appended = append_reduced(m.q1, m.q2, m.q3, g);
        for (am, ak) in appended.iter() {
            out.add_term(
                NormalMonomial {
                    h: m.h + am.h,
                    ..*am
                },
                ak * k,
            );
        }
    }
    out
}

/// Normal-order a generator word.
pub fn normal_order(word: &[u8]) -> EnvelopeElement {
    let mut out = EnvelopeElement::one();
    for &g in word {
        out = append_generator(&out, g);
    }
    out
}

/// Which out-of-order pair a naive reduction rewrites first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReduceStrategy {
    /// Always rewrite the leftmost inversion.
    Leftmost,
    /// Always rewrite the rightmost inversion.
    Rightmost,
}

/// Normal-order by literal worklist rewriting, choosing inversions by the
/// given strategy. Exponentially slower than [`normal_order`]; exists to
/// test confluence of the rewriting system, not for production use.
pub fn normal_order_by_rewriting(word: &[u8], strategy: ReduceStrategy) -> EnvelopeElement {
    let mut out = EnvelopeElement::zero();
    let mut worklist: Vec<(Vec<u8>, EpsCoeff)> = vec![(word.to_vec(), EpsCoeff::one())];
    while let Some((w, k)) = worklist.pop() {
        let inversions: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&i| w[i] > w[i + 1])
            .collect();
        let Some(&i) = (match strategy {
            ReduceStrategy::Leftmost => inversions.first(),
            ReduceStrategy::Rightmost => inversions.last(),
        }) else {
            // Sorted: count exponents.
            let mut m = NormalMonomial::one();
            for &g in &w {
                match g {
                    0 => m.h += 1,
                    1 => m.q1 += 1,
                    2 => m.q2 += 1,
                    3 => m.q3 += 1,
                    _ => unreachable!(),
                }
            }
            out.add_term(m, k);
            continue;
        };
        let (b, a) = (w[i], w[i + 1]);
        // X_b X_a -> eps(b, a) X_a X_b + sum_c f[b][a][c] X_c.
        let phase = CommutingFactor::GradedLie.phase(generator_degree(b), generator_degree(a));
        let mut swapped = w.clone();
        swapped.swap(i, i + 1);
        worklist.push((swapped, &k * &EpsCoeff::int(phase)));
        let contraction: Option<(u8, EpsCoeff)> = match (b, a) {
            (2, 1) => Some((3, EpsCoeff::one())),
            (3, 1) => Some((2, EpsCoeff::one())),
            (3, 2) => Some((1, EpsCoeff::eps())),
            _ => None,
        };
        if let Some((c, f)) = contraction {
            let mut contracted = Vec::with_capacity(w.len() - 1);
            contracted.extend_from_slice(&w[..i]);
            contracted.push(c);
            contracted.extend_from_slice(&w[i + 2..]);
            worklist.push((contracted, &k * &f));
        }
    }
    out
}

/// Product of two normal-form elements.
pub fn multiply(x: &EnvelopeElement, y: &EnvelopeElement) -> EnvelopeElement {
    let mut out = EnvelopeElement::zero();
    for (my, ky) in y.iter() {
        // x * H^h M = (x with h added) * M, because H is central.
        let mut partial = EnvelopeElement::zero();
        for (mx, kx) in x.iter() {
            partial.add_term(
                NormalMonomial {
                    h: mx.h + my.h,
                    ..*mx
                },
                kx * ky,
            );
        }
        for (g, count) in [(1u8, my.q1), (2, my.q2), (3, my.q3)] {
            for _ in 0..count {
                partial = append_generator(&partial, g);
            }
        }
        out += &partial;
    }
    out
}

/// Whether an element commutes with all four generators.
pub fn is_central(x: &EnvelopeElement) -> bool {
    (0u8..4).all(|g| {
        let gen = EnvelopeElement::generator(g);
        multiply(x, &gen) == multiply(&gen, x)
    })
}

// ---------------------------------------------------------------------------
// Central coordinates.

/// The Casimir `c = H^2 + e*Q1^2 + Q2^2 + Q3^2` as an element.
fn casimir_element() -> EnvelopeElement {
    let mut out = EnvelopeElement::zero();
    out.add_term(
        NormalMonomial {
            h: 2,
            ..NormalMonomial::one()
        },
        EpsCoeff::one(),
    );
    out += &reduced_casimir_element();
    out
}

/// The reduced Casimir `y = c - H^2 = e*Q1^2 + Q2^2 + Q3^2`.
fn reduced_casimir_element() -> EnvelopeElement {
    let mut out = EnvelopeElement::zero();
    out.add_term(
        NormalMonomial {
            q1: 2,
            ..NormalMonomial::one()
        },
        EpsCoeff::eps(),
    );
    out.add_term(
        NormalMonomial {
            q2: 2,
            ..NormalMonomial::one()
        },
        EpsCoeff::one(),
    );
    out.add_term(
        NormalMonomial {
            q3: 2,
            ..NormalMonomial::one()
        },
        EpsCoeff::one(),
    );
    out
}

/// Power tables for `c` and `y`, grown on demand within one computation.
struct CenterPowers {
    c: Vec<EnvelopeElement>,
    y: Vec<EnvelopeElement>,
}

impl CenterPowers {
    fn new() -> Self {
        CenterPowers {
            c: vec![EnvelopeElement::one()],
            y: vec![EnvelopeElement::one()],
        }
    }

    fn product(&mut self, deg_c: u32, deg_y: u32) -> EnvelopeElement {
        while self.c.len() <= deg_c as usize {
            let next = multiply(self.c.last().unwrap(), &casimir_element());
            self.c.push(next);
        }
        while self.y.len() <= deg_y as usize {
            let next = multiply(self.y.last().unwrap(), &reduced_casimir_element());
            self.y.push(next);
        }
        multiply(&self.c[deg_c as usize], &self.y[deg_y as usize])
    }
}

/// Expand a central polynomial into the enveloping algebra by substituting
/// the Casimir for `c` and the reduced Casimir for `y`.
pub fn expand_center(p: &CenterPoly) -> EnvelopeElement {
    let mut powers = CenterPowers::new();
    let mut out = EnvelopeElement::zero();
    for ((deg_c, deg_y), coeff) in p.iter() {
        let term = powers.product(*deg_c, *deg_y).scale(coeff);
        out += &term;
    }
    out
}

/// Write a central element as an exact polynomial in `c` and `y` with total
/// degree at most `max_order`.
///
/// The candidate monomials are triangular in the lexicographic monomial
/// order — the leading normal-form monomial of `c^a y^b` is
/// `e^b * H^{2a} Q1^{2b}` — so the system is solved by peeling leading terms.
pub fn express_in_center(
    x: &EnvelopeElement,
    max_order: u32,
) -> Result<CenterPoly, EnvelopeError> {
    if !is_central(x) {
        return Err(EnvelopeError::NotCentral);
    }
    let mut powers = CenterPowers::new();
    let mut rest = x.clone();
    let mut out = CenterPoly::zero();
    while let Some((&m, coeff)) = rest.leading() {
        if m.q2 != 0 || m.q3 != 0 || m.h % 2 != 0 || m.q1 % 2 != 0 {
            return Err(EnvelopeError::NotInSpan(max_order));
        }
        let (a, b) = (m.h / 2, m.q1 / 2);
        if a + b > max_order {
            return Err(EnvelopeError::NotInSpan(max_order));
        }
        // Leading coefficient of c^a y^b is e^b; divide by it (e^2 = 1).
        let mut z = coeff.clone();
        if b % 2 == 1 {
            z = &z * &EpsCoeff::eps();
        }
        out += &CenterPoly::monomial(a, b, z.clone());
        let expansion = powers.product(a, b).scale(&z);
        rest -= &expansion;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// The oracle.

/// Per-chord weight: the diagonal of the inverse bilinear form.
fn chord_weight(mu: u8) -> EpsCoeff {
    if mu == 1 {
        EpsCoeff::eps()
    } else {
        EpsCoeff::one()
    }
}

/// Evaluate a chord diagram to a central element of the enveloping algebra
/// straight from the definition of the universal weight.
///
/// The circle is cut just before position `cut` and read once around. Every
/// chord is independently assigned one of the four generators; a term
/// contributes the normally ordered product of the generators read along the
/// cut circle, weighted by the inverse-form diagonal for each chord and by a
/// crossing phase for every interleaving pair of chords whose generators
/// anticommute. All `4^n` assignments share normal-ordered prefixes through
/// a depth-first traversal, but the sum is still exponential in the order —
/// callers should prefer the recurrence beyond order 8.
pub fn oracle_weight(d: &ChordDiagram, cut: usize) -> EnvelopeElement {
    let n = d.order();
    if n == 0 {
        return EnvelopeElement::one();
    }
    let total = 2 * n;
    assert!(cut < total, "cut position {cut} out of range for order {n}");
    let seq: Vec<usize> = (0..total).map(|i| (cut + i) % total).collect();
    let mut seq_index = vec![0usize; total];
    for (i, &p) in seq.iter().enumerate() {
        seq_index[p] = i;
    }

    struct Dfs<'a> {
        d: &'a ChordDiagram,
        seq: &'a [usize],
        seq_index: &'a [usize],
        acc: EnvelopeElement,
    }

    impl Dfs<'_> {
        // `open` holds (closing sequence index, generator) for chords whose
        // first endpoint has been read, ordered by opening time.
        fn walk(&mut self, at: usize, open: &mut Vec<(usize, u8)>, prefix: EnvelopeElement) {
            if at == self.seq.len() {
                self.acc += &prefix;
                return;
            }
            let p = self.seq[at];
            let q = self.d.partner(p);
            let q_at = self.seq_index[q];
            if q_at > at {
                // First endpoint: branch over generator assignments.
                for mu in 0u8..4 {
                    let scaled = prefix.scale(&chord_weight(mu));
                    let extended = append_generator(&scaled, mu);
                    open.push((q_at, mu));
                    self.walk(at + 1, open, extended);
                    open.pop();
                }
            } else {
                // Second endpoint: every chord still open that was opened
                // later crosses this one exactly once.
                let idx = open
                    .iter()
                    .position(|&(close, _)| close == at)
                    .expect("open chord for closing endpoint");
                let (_, mu) = open[idx];
                let mut sign = 1i64;
                for &(_, nu) in &open[idx + 1..] {
                    sign *= CommutingFactor::GradedLie
                        .phase(generator_degree(mu), generator_degree(nu));
                }
                let extended = append_generator(&prefix.scale(&EpsCoeff::int(sign)), mu);
                let entry = open.remove(idx);
                self.walk(at + 1, open, extended);
                open.insert(idx, entry);
            }
        }
    }

    let mut dfs = Dfs {
        d,
        seq: &seq,
        seq_index: &seq_index,
        acc: EnvelopeElement::zero(),
    };
    dfs.walk(0, &mut Vec::new(), EnvelopeElement::one());
    dfs.acc
}

// ---------------------------------------------------------------------------
// The four bridge/crossing tensor relations.

/// One circle-walk item: a named template endpoint or a context region that
/// spectator chords may occupy.
enum WalkItem {
    Point(&'static str),
    Region(usize),
}

use WalkItem::{Point, Region};

/// A named chord list over walk points and spectator tokens.
type NamedChords = Vec<(&'static str, &'static str)>;

/// Region contents: spectator endpoint tokens per region, in circle order.
type Placement = [Vec<&'static str>; 4];

/// Assemble a chord diagram from a circle walk, a set of named template
/// chords, and spectator tokens in the regions. Walk points not referenced
/// by any chord are skipped (they are not endpoints of anything).
fn assemble(walk: &[WalkItem], chords: &NamedChords, placement: &Placement) -> ChordDiagram {
    let referenced = |name: &str| chords.iter().any(|&(a, b)| a == name || b == name);
    let mut positions: Vec<&str> = Vec::new();
    for item in walk {
        match item {
            Point(name) => {
                if referenced(name) {
                    positions.push(name);
                }
            }
            Region(r) => positions.extend(placement[*r].iter().copied()),
        }
    }
    let locate = |name: &str, skip: usize| -> usize {
        positions
            .iter()
            .enumerate()
            .filter(|(_, &p)| p == name)
            .map(|(i, _)| i)
            .nth(skip)
            .expect("endpoint present in walk")
    };
    let mut pairs: Vec<(usize, usize)> = chords
        .iter()
        .map(|&(a, b)| (locate(a, 0), locate(b, 0)))
        .collect();
    // Spectator tokens appear exactly twice each; pair first with second.
    let mut seen: Vec<&str> = Vec::new();
    for token in placement.iter().flatten() {
        if !seen.contains(token) {
            seen.push(token);
            pairs.push((locate(token, 0), locate(token, 1)));
        }
    }
    ChordDiagram::from_pairs(&pairs).expect("assembled endpoints are a perfect matching")
}

struct TensorRelation {
    name: &'static str,
    walk: Vec<WalkItem>,
    /// T1 - T2 - T3 + T4.
    t_terms: [NamedChords; 4],
    /// Signed two-chord terms, multiplied by `e`.
    lambda: Vec<(i64, NamedChords)>,
    /// Signed one-chord terms, multiplied by `e (c - y)`.
    gamma: Vec<(i64, NamedChords)>,
}

fn plain_walk() -> Vec<WalkItem> {
    vec![
        Point("A"),
        Region(0),
        Point("B"),
        Region(1),
        Point("C"),
        Region(2),
        Point("D"),
        Region(3),
    ]
}

fn bridge_lambda() -> Vec<(i64, NamedChords)> {
    vec![
        (1, vec![("B", "C"), ("A", "D")]),
        (-1, vec![("A", "C"), ("B", "D")]),
    ]
}

fn bridge_gamma() -> Vec<(i64, NamedChords)> {
    vec![
        (1, vec![("A", "C")]),
        (1, vec![("B", "D")]),
        (-1, vec![("B", "C")]),
        (-1, vec![("A", "D")]),
    ]
}

fn tensor_relations() -> Vec<TensorRelation> {
    let b_c_satellites = || {
        vec![
            Point("A"),
            Region(0),
            Point("B-"),
            Point("B+"),
            Region(1),
            Point("C-"),
            Point("C+"),
            Region(2),
            Point("D"),
            Region(3),
        ]
    };
    vec![
        TensorRelation {
            name: "adjacent bridges",
            walk: b_c_satellites(),
            t_terms: [
                vec![("A", "B+"), ("B-", "C+"), ("C-", "D")],
                vec![("A", "B+"), ("B-", "C-"), ("C+", "D")],
                vec![("A", "B-"), ("B+", "C+"), ("C-", "D")],
                vec![("A", "B-"), ("B+", "C-"), ("C+", "D")],
            ],
            lambda: bridge_lambda(),
            gamma: bridge_gamma(),
        },
        TensorRelation {
            name: "crossed bridges",
            walk: b_c_satellites(),
            t_terms: [
                vec![("A", "C-"), ("B-", "C+"), ("B+", "D")],
                vec![("A", "C-"), ("B+", "C+"), ("B-", "D")],
                vec![("A", "C+"), ("B-", "C-"), ("B+", "D")],
                vec![("A", "C+"), ("B+", "C-"), ("B-", "D")],
            ],
            lambda: vec![
                (1, vec![("B", "C"), ("A", "D")]),
                (-1, vec![("A", "B"), ("C", "D")]),
            ],
            gamma: vec![
                (1, vec![("A", "B")]),
                (1, vec![("C", "D")]),
                (-1, vec![("B", "C")]),
                (-1, vec![("A", "D")]),
            ],
        },
        TensorRelation {
            name: "split ends",
            walk: vec![
                Point("A-"),
                Point("A+"),
                Region(0),
                Point("B"),
                Region(1),
                Point("C-"),
                Point("C+"),
                Region(2),
                Point("D"),
                Region(3),
            ],
            t_terms: [
                vec![("A+", "C+"), ("A-", "B"), ("C-", "D")],
                vec![("A-", "C+"), ("A+", "B"), ("C-", "D")],
                vec![("A+", "C-"), ("A-", "B"), ("C+", "D")],
                vec![("A-", "C-"), ("A+", "B"), ("C+", "D")],
            ],
            lambda: bridge_lambda(),
            gamma: bridge_gamma(),
        },
        TensorRelation {
            name: "long bridge",
            walk: vec![
                Point("A"),
                Region(0),
                Point("B-"),
                Point("B+"),
                Region(1),
                Point("C"),
                Region(2),
                Point("D-"),
                Point("D+"),
                Region(3),
            ],
            t_terms: [
                vec![("B-", "D-"), ("A", "B+"), ("C", "D+")],
                vec![("B+", "D-"), ("A", "B-"), ("C", "D+")],
                vec![("B-", "D+"), ("A", "B+"), ("C", "D-")],
                vec![("B+", "D+"), ("A", "B-"), ("C", "D-")],
            ],
            lambda: bridge_lambda(),
            gamma: bridge_gamma(),
        },
    ]
}

/// Spectator-chord contexts: region contents for a given spectator count.
fn spectator_placements(spectators: usize) -> Vec<Placement> {
    match spectators {
        0 => vec![Default::default()],
        1 => {
            let mut out = Vec::new();
            for r1 in 0..4 {
                for r2 in r1..4 {
                    let mut placement: Placement = Default::default();
                    if r1 == r2 {
                        placement[r1] = vec!["s", "s"];
                    } else {
                        placement[r1] = vec!["s"];
                        placement[r2] = vec!["s"];
                    }
                    out.push(placement);
                }
            }
            out
        }
        2 => vec![
            [vec!["s", "t"], vec!["t", "s"], vec![], vec![]],
            [vec!["s", "t"], vec!["s", "t"], vec![], vec![]],
            [vec!["s", "s"], vec![], vec!["t", "t"], vec![]],
            [vec!["s"], vec!["s"], vec!["t"], vec!["t"]],
            [vec!["s"], vec!["t"], vec!["s"], vec!["t"]],
            [vec![], vec![], vec![], vec!["s", "t", "s", "t"]],
        ],
        _ => Vec::new(),
    }
}

/// Verify the four tensor relations that reduce a pair of adjacent internal
/// vertices to chords, with the surrounding circle carrying up to
/// `max_spectators` extra chords through the context regions. Both sides of
/// every instance are evaluated by the oracle (the central factor `c - y`
/// acting as multiplication by `H^2`) and compared as elements.
pub fn check_tensor_relations(max_spectators: usize) -> CheckReport {
    let mut report = CheckReport::new("tensor-relations");
    let h_squared = normal_order(&[0, 0]);
    for relation in tensor_relations() {
        let mut instances = 0usize;
        let mut failures = Vec::new();
        for spectators in 0..=max_spectators {
            for (which, placement) in spectator_placements(spectators).iter().enumerate() {
                instances += 1;
                let mut lhs = EnvelopeElement::zero();
                for (term, sign) in relation.t_terms.iter().zip([1i64, -1, -1, 1]) {
                    let d = assemble(&relation.walk, term, placement);
                    lhs.add_scaled(&oracle_weight(&d, 0), &EpsCoeff::int(sign));
                }
                let walk = plain_walk();
                let mut lambda = EnvelopeElement::zero();
                for (sign, term) in &relation.lambda {
                    let d = assemble(&walk, term, placement);
                    lambda.add_scaled(&oracle_weight(&d, 0), &EpsCoeff::int(*sign));
                }
                let mut gamma = EnvelopeElement::zero();
                for (sign, term) in &relation.gamma {
                    let d = assemble(&walk, term, placement);
                    gamma.add_scaled(&oracle_weight(&d, 0), &EpsCoeff::int(*sign));
                }
                let rhs = lambda.scale(&EpsCoeff::eps())
                    + multiply(&h_squared, &gamma).scale(&EpsCoeff::eps());
                if lhs != rhs {
                    failures.push(format!(
                        "{} with {} spectator chord(s), context {}",
                        relation.name, spectators, which
                    ));
                }
            }
        }
        report.record(relation.name, instances, failures);
    }
    report
}
