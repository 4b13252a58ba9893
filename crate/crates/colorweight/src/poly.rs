//! Exact coefficient arithmetic for weight-system values.
//!
//! Weights of chord diagrams taken in the minimal doubly graded Lie algebra
//! land in the commutative ring `Z[e]/(e^2 - 1)[c, y]`: polynomials in the
//! two central generators `c` (the Casimir) and `y = c - H^2`, with
//! coefficients `a + b*e` where the sign parameter `e` squares to one.
//! Keeping `e` symbolic lets a single computation cover both sign choices;
//! evaluation at `e = +1` or `e = -1` specializes to the two underlying
//! algebras.
//!
//! Everything here is exact: arbitrary-precision integers for coefficients
//! and exact rationals (used by the deframing series `(-1)^k / k!`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// `k!` as an exact integer, for series coefficients.
pub fn factorial(k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= BigInt::from(i);
    }
    acc
}

/// Errors from parsing polynomial text or JSON.
#[derive(Debug, Error)]
pub enum PolyParseError {
    /// The text form does not match the rendering grammar.
    #[error("invalid polynomial text at byte {at}: {reason}")]
    Text {
        /// Byte offset of the offending token.
        at: usize,
        /// What went wrong.
        reason: String,
    },
    /// The JSON form does not match `{"terms":[{"c":..,"y":..,"a":..,"b":..}]}`.
    #[error("invalid polynomial JSON: {0}")]
    Json(String),
}

/// Sign choice for evaluating the symbolic parameter `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EpsSign {
    /// Substitute `e = +1`.
    Plus,
    /// Substitute `e = -1`.
    Minus,
}

impl EpsSign {
    /// The substituted integer value.
    pub fn value(self) -> i64 {
        match self {
            EpsSign::Plus => 1,
            EpsSign::Minus => -1,
        }
    }
}

/// An element `a + b*e` of `Z[e]/(e^2 - 1)` with exact integer parts.
///
/// Zero is uniquely `(0, 0)`; products reduce `e^2` to `1` immediately, so
/// no representative ever carries a square of `e`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpsCoeff {
    /// Integer part.
    pub a: BigInt,
    /// Coefficient of `e`.
    pub b: BigInt,
}

impl EpsCoeff {
    /// Build `a + b*e` from the two integer parts.
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        EpsCoeff {
            a: a.into(),
            b: b.into(),
        }
    }

    /// The pure integer `k`.
    pub fn int(k: impl Into<BigInt>) -> Self {
        EpsCoeff::new(k, 0)
    }

    /// The pure multiple `k*e`.
    pub fn eps_int(k: impl Into<BigInt>) -> Self {
        EpsCoeff::new(0, k)
    }

    /// The ring zero.
    pub fn zero() -> Self {
        EpsCoeff::default()
    }

    /// The ring one.
    pub fn one() -> Self {
        EpsCoeff::int(1)
    }

    /// The generator `e`.
    pub fn eps() -> Self {
        EpsCoeff::eps_int(1)
    }

    /// Whether this is the zero element.
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Whether this is the ring one.
    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// Substitute a concrete sign for `e`, collapsing to `a + b*sign`.
    pub fn eval(&self, sign: EpsSign) -> BigInt {
        match sign {
            EpsSign::Plus => &self.a + &self.b,
            EpsSign::Minus => &self.a - &self.b,
        }
    }

    /// Split into a display sign and magnitude.
    ///
    /// Pure integers and pure `e`-multiples pull a leading minus out so terms
    /// render as `- 3*y` rather than `+ -3*y`; mixed coefficients always
    /// render in parentheses and never carry an outer sign.
    pub(crate) fn sign_split(&self) -> (bool, EpsCoeff) {
        if self.b.is_zero() && self.a.is_negative() {
            (true, EpsCoeff::new(-&self.a, BigInt::zero()))
        } else if self.a.is_zero() && self.b.is_negative() {
            (true, EpsCoeff::new(BigInt::zero(), -&self.b))
        } else {
            (false, self.clone())
        }
    }

    /// Render the coefficient standalone: `k`, `k*e`, or `(a+b*e)`.
    pub(crate) fn render_standalone(&self) -> String {
        if self.b.is_zero() {
            self.a.to_string()
        } else if self.a.is_zero() {
            if self.b.is_one() {
                "e".to_string()
            } else if (-&self.b).is_one() {
                "-e".to_string()
            } else {
                format!("{}*e", self.b)
            }
        } else {
            let eps_part = if self.b.is_one() {
                "+e".to_string()
            } else if (-&self.b).is_one() {
                "-e".to_string()
            } else if self.b.is_negative() {
                format!("{}*e", self.b)
            } else {
                format!("+{}*e", self.b)
            };
            format!("({}{})", self.a, eps_part)
        }
    }

    /// Render as a multiplier prefix for a monomial (empty for one).
    pub(crate) fn render_prefix(&self) -> String {
        if self.is_one() {
            String::new()
        } else {
            format!("{}*", self.render_standalone())
        }
    }
}

impl fmt::Display for EpsCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_standalone())
    }
}

impl Add for EpsCoeff {
    type Output = EpsCoeff;
    fn add(self, rhs: EpsCoeff) -> EpsCoeff {
        EpsCoeff::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl<'a> Add<&'a EpsCoeff> for EpsCoeff {
    type Output = EpsCoeff;
    fn add(self, rhs: &'a EpsCoeff) -> EpsCoeff {
        EpsCoeff::new(self.a + &rhs.a, self.b + &rhs.b)
    }
}

impl AddAssign<&EpsCoeff> for EpsCoeff {
    fn add_assign(&mut self, rhs: &EpsCoeff) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl Sub for EpsCoeff {
    type Output = EpsCoeff;
    fn sub(self, rhs: EpsCoeff) -> EpsCoeff {
        EpsCoeff::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl SubAssign<&EpsCoeff> for EpsCoeff {
    fn sub_assign(&mut self, rhs: &EpsCoeff) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl Neg for EpsCoeff {
    type Output = EpsCoeff;
    fn neg(self) -> EpsCoeff {
        EpsCoeff::new(-self.a, -self.b)
    }
}

impl Neg for &EpsCoeff {
    type Output = EpsCoeff;
    fn neg(self) -> EpsCoeff {
        EpsCoeff::new(-&self.a, -&self.b)
    }
}

impl Mul for EpsCoeff {
    type Output = EpsCoeff;
    fn mul(self, rhs: EpsCoeff) -> EpsCoeff {
        (&self).mul(&rhs)
    }
}

impl Mul for &EpsCoeff {
    type Output = EpsCoeff;
    // (a1 + b1 e)(a2 + b2 e) = (a1 a2 + b1 b2) + (a1 b2 + b1 a2) e, using e^2 = 1.
    fn mul(self, rhs: &EpsCoeff) -> EpsCoeff {
        EpsCoeff::new(
            &self.a * &rhs.a + &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

/// A polynomial in the central variables `c` and `y` with [`EpsCoeff`]
/// coefficients.
///
/// Terms are keyed by the exponent pair `(deg_c, deg_y)`; zero coefficients
/// are never stored, so structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CenterPoly {
    terms: BTreeMap<(u32, u32), EpsCoeff>,
}

impl CenterPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        CenterPoly::default()
    }

    /// The constant polynomial one.
    pub fn one() -> Self {
        CenterPoly::constant(EpsCoeff::one())
    }

    /// The variable `c`.
    pub fn c() -> Self {
        CenterPoly::monomial(1, 0, EpsCoeff::one())
    }

    /// The variable `y`.
    pub fn y() -> Self {
        CenterPoly::monomial(0, 1, EpsCoeff::one())
    }

    /// The constant `e`.
    pub fn eps() -> Self {
        CenterPoly::constant(EpsCoeff::eps())
    }

    /// A constant polynomial.
    pub fn constant(k: EpsCoeff) -> Self {
        CenterPoly::monomial(0, 0, k)
    }

    /// The constant integer polynomial `k`.
    pub fn int(k: i64) -> Self {
        CenterPoly::constant(EpsCoeff::int(k))
    }

    /// The single term `k * c^dc * y^dy`.
    pub fn monomial(dc: u32, dy: u32, k: EpsCoeff) -> Self {
        let mut terms = BTreeMap::new();
        if !k.is_zero() {
            terms.insert((dc, dy), k);
        }
        CenterPoly { terms }
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate over `((deg_c, deg_y), coefficient)` pairs in key order.
    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &EpsCoeff)> {
        self.terms.iter()
    }

    /// The coefficient of `c^dc * y^dy` (zero if absent).
    pub fn coeff(&self, dc: u32, dy: u32) -> EpsCoeff {
        self.terms.get(&(dc, dy)).cloned().unwrap_or_default()
    }

    /// Largest total degree `deg_c + deg_y` over all terms (zero polynomial
    /// reports 0).
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(dc, dy)| dc + dy).max().unwrap_or(0)
    }

    /// Add a single term in place, pruning the slot if it cancels to zero.
    pub fn add_term(&mut self, dc: u32, dy: u32, k: &EpsCoeff) {
        if k.is_zero() {
            return;
        }
        let slot = self.terms.entry((dc, dy)).or_default();
        *slot += k;
        if slot.is_zero() {
            self.terms.remove(&(dc, dy));
        }
    }

    /// Multiply every coefficient by `k`.
    pub fn scale(&self, k: &EpsCoeff) -> CenterPoly {
        if k.is_zero() {
            return CenterPoly::zero();
        }
        let mut out = CenterPoly::zero();
        for (&(dc, dy), coeff) in &self.terms {
            out.add_term(dc, dy, &(coeff * k));
        }
        out
    }

    /// Substitute `c = 0`: drop every term of positive `c`-degree.
    pub fn substitute_c_zero(&self) -> CenterPoly {
        let mut out = CenterPoly::zero();
        for (&(dc, dy), coeff) in &self.terms {
            if dc == 0 {
                out.add_term(0, dy, coeff);
            }
        }
        out
    }

    /// Formal partial derivative in `c`, treating `y` as independent.
    pub fn d_dc(&self) -> CenterPoly {
        let mut out = CenterPoly::zero();
        for (&(dc, dy), coeff) in &self.terms {
            if dc > 0 {
                out.add_term(dc - 1, dy, &(coeff * &EpsCoeff::int(i64::from(dc))));
            }
        }
        out
    }

    /// Substitute a concrete sign for `e`; the result has pure integer
    /// coefficients (every `b` part is zero).
    pub fn eval_eps(&self, sign: EpsSign) -> CenterPoly {
        let mut out = CenterPoly::zero();
        for (&(dc, dy), coeff) in &self.terms {
            out.add_term(dc, dy, &EpsCoeff::int(coeff.eval(sign)));
        }
        out
    }

    /// Terms in display order: total degree descending, then `c`-degree
    /// descending.
    fn display_order(&self) -> Vec<(&(u32, u32), &EpsCoeff)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|((ac, ay), _), ((bc, by), _)| {
            (bc + by, bc).cmp(&(ac + ay, ac))
        });
        terms
    }

    /// Render to the fixed text grammar, e.g. `c^2 - e*y`.
    pub fn render(&self) -> String {
        let terms = self.display_order();
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&(dc, dy), coeff)) in terms.into_iter().enumerate() {
            let (negative, magnitude) = coeff.sign_split();
            let mono = render_monomial(dc, dy);
            let body = if mono.is_empty() {
                magnitude.render_standalone()
            } else {
                format!("{}{}", magnitude.render_prefix(), mono)
            };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&body);
        }
        out
    }

    /// Render to the fixed JSON shape
    /// `{"terms":[{"c":..,"y":..,"a":..,"b":..}, ...]}` with terms in display
    /// order.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .display_order()
            .into_iter()
            .map(|(&(dc, dy), coeff)| {
                serde_json::json!({
                    "c": dc,
                    "y": dy,
                    "a": bigint_to_json(&coeff.a),
                    "b": bigint_to_json(&coeff.b),
                })
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }

    /// Parse the JSON shape produced by [`CenterPoly::to_json`].
    pub fn from_json(v: &serde_json::Value) -> Result<Self, PolyParseError> {
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| PolyParseError::Json("missing \"terms\" array".into()))?;
        let mut out = CenterPoly::zero();
        for term in terms {
            let dc = json_u32(term, "c")?;
            let dy = json_u32(term, "y")?;
            let a = json_bigint(term, "a")?;
            let b = json_bigint(term, "b")?;
            out.add_term(dc, dy, &EpsCoeff::new(a, b));
        }
        Ok(out)
    }

    /// Parse the text grammar produced by [`CenterPoly::render`].
    ///
    /// Accepts a slight superset: whitespace is free, factors may repeat
    /// (`c*c`), and parenthesized subexpressions multiply like any factor.
    pub fn parse(text: &str) -> Result<Self, PolyParseError> {
        let mut parser = PolyParser {
            bytes: text.as_bytes(),
            pos: 0,
        };
        let poly = parser.parse_expr()?;
        parser.skip_ws();
        if parser.pos != parser.bytes.len() {
            return Err(PolyParseError::Text {
                at: parser.pos,
                reason: "trailing input".into(),
            });
        }
        Ok(poly)
    }
}

fn render_monomial(dc: u32, dy: u32) -> String {
    let mut parts = Vec::new();
    if dc == 1 {
        parts.push("c".to_string());
    } else if dc > 1 {
        parts.push(format!("c^{dc}"));
    }
    if dy == 1 {
        parts.push("y".to_string());
    } else if dy > 1 {
        parts.push(format!("y^{dy}"));
    }
    parts.join("*")
}

fn bigint_to_json(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(small) => serde_json::Value::from(small),
        None => serde_json::Value::from(n.to_string()),
    }
}

fn json_u32(term: &serde_json::Value, key: &str) -> Result<u32, PolyParseError> {
    term.get(key)
        .and_then(|v| v.as_u64())
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| PolyParseError::Json(format!("field \"{key}\" must be a small non-negative integer")))
}

fn json_bigint(term: &serde_json::Value, key: &str) -> Result<BigInt, PolyParseError> {
    let v = term
        .get(key)
        .ok_or_else(|| PolyParseError::Json(format!("missing field \"{key}\"")))?;
    if let Some(n) = v.as_i64() {
        return Ok(BigInt::from(n));
    }
    if let Some(s) = v.as_str() {
        return s
            .parse::<BigInt>()
            .map_err(|e| PolyParseError::Json(format!("field \"{key}\": {e}")));
    }
    Err(PolyParseError::Json(format!(
        "field \"{key}\" must be an integer or integer string"
    )))
}

struct PolyParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl PolyParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error(&self, reason: &str) -> PolyParseError {
        PolyParseError::Text {
            at: self.pos,
            reason: reason.into(),
        }
    }

    // expr := ['-'] term (('+'|'-') term)*
    fn parse_expr(&mut self) -> Result<CenterPoly, PolyParseError> {
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        }
        let mut acc = self.parse_term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.parse_term()?;
                    acc = acc + t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.parse_term()?;
                    acc = acc - t;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor ('*' factor)*
    fn parse_term(&mut self) -> Result<CenterPoly, PolyParseError> {
        let mut acc = self.parse_factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.parse_factor()?;
            acc = acc * f;
        }
        Ok(acc)
    }

    // factor := integer | 'e' | 'c' ['^' integer] | 'y' ['^' integer] | '(' expr ')'
    fn parse_factor(&mut self) -> Result<CenterPoly, PolyParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'e') => {
                self.pos += 1;
                Ok(CenterPoly::eps())
            }
            Some(v @ (b'c' | b'y')) => {
                self.pos += 1;
                let exp = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.parse_uint()?
                } else {
                    1
                };
                Ok(if v == b'c' {
                    CenterPoly::monomial(exp, 0, EpsCoeff::one())
                } else {
                    CenterPoly::monomial(0, exp, EpsCoeff::one())
                })
            }
            Some(d) if d.is_ascii_digit() => {
                let n = self.parse_bigint()?;
                Ok(CenterPoly::constant(EpsCoeff::new(n, 0)))
            }
            _ => Err(self.error("expected a factor (number, `e`, `c`, `y`, or `(`)")),
        }
    }

    fn parse_uint(&mut self) -> Result<u32, PolyParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an exponent"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse::<u32>()
            .map_err(|e| self.error(&format!("bad exponent: {e}")))
    }

    fn parse_bigint(&mut self) -> Result<BigInt, PolyParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse::<BigInt>()
            .map_err(|e| self.error(&format!("bad integer: {e}")))
    }
}

impl fmt::Display for CenterPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for CenterPoly {
    type Output = CenterPoly;
    fn add(mut self, rhs: CenterPoly) -> CenterPoly {
        for (&(dc, dy), coeff) in &rhs.terms {
            self.add_term(dc, dy, coeff);
        }
        self
    }
}

impl<'a> Add<&'a CenterPoly> for CenterPoly {
    type Output = CenterPoly;
    fn add(mut self, rhs: &'a CenterPoly) -> CenterPoly {
        for (&(dc, dy), coeff) in &rhs.terms {
            self.add_term(dc, dy, coeff);
        }
        self
    }
}

impl AddAssign<&CenterPoly> for CenterPoly {
    fn add_assign(&mut self, rhs: &CenterPoly) {
        for (&(dc, dy), coeff) in &rhs.terms {
            self.add_term(dc, dy, coeff);
        }
    }
}

impl Sub for CenterPoly {
    type Output = CenterPoly;
    fn sub(mut self, rhs: CenterPoly) -> CenterPoly {
        for (&(dc, dy), coeff) in &rhs.terms {
            self.add_term(dc, dy, &-coeff);
        }
        self
    }
}

impl<'a> Sub<&'a CenterPoly> for CenterPoly {
    type Output = CenterPoly;
    fn sub(mut self, rhs: &'a CenterPoly) -> CenterPoly {
        for (&(dc, dy), coeff) in &rhs.terms {
            self.add_term(dc, dy, &-coeff);
        }
        self
    }
}

impl SubAssign<&CenterPoly> for CenterPoly {
    fn sub_assign(&mut self, rhs: &CenterPoly) {
        for (&(dc, dy), coeff) in &rhs.terms {
            self.add_term(dc, dy, &-coeff);
        }
    }
}

impl Neg for CenterPoly {
    type Output = CenterPoly;
    fn neg(self) -> CenterPoly {
        let mut out = CenterPoly::zero();
        for (&(dc, dy), coeff) in &self.terms {
            out.add_term(dc, dy, &-coeff);
        }
        out
    }
}

impl Mul for CenterPoly {
    type Output = CenterPoly;
    fn mul(self, rhs: CenterPoly) -> CenterPoly {
        (&self).mul(&rhs)
    }
}

impl Mul for &CenterPoly {
    type Output = CenterPoly;
    fn mul(self, rhs: &CenterPoly) -> CenterPoly {
        let mut out = CenterPoly::zero();
        for (&(lc, ly), lk) in &self.terms {
            for (&(rc, ry), rk) in &rhs.terms {
                out.add_term(lc + rc, ly + ry, &(lk * rk));
            }
        }
        out
    }
}

impl<'a> Mul<&'a CenterPoly> for CenterPoly {
    type Output = CenterPoly;
    fn mul(self, rhs: &'a CenterPoly) -> CenterPoly {
        (&self).mul(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(text: &str) -> CenterPoly {
        CenterPoly::parse(text).expect("test polynomial must parse")
    }

    #[test]
    fn eps_squares_to_one() {
        assert_eq!(EpsCoeff::eps() * EpsCoeff::eps(), EpsCoeff::one());
    }

    #[test]
    fn add_disjoint_support() {
        let p = cp("c^2") + cp("-e*y");
        assert_eq!(p.coeff(2, 0), EpsCoeff::one());
        assert_eq!(p.coeff(0, 1), EpsCoeff::eps_int(-1));
        assert_eq!(p.iter().count(), 2);
    }

    #[test]
    fn add_zero_is_identity() {
        let p = cp("c^2 - e*y");
        assert_eq!(p.clone() + CenterPoly::zero(), p);
    }

    #[test]
    fn add_cancels_and_prunes() {
        assert_eq!(cp("c^2 - e*y") + cp("e*y"), cp("c^2"));
    }

    #[test]
    fn mul_c_by_order_two_value() {
        assert_eq!(CenterPoly::c() * cp("c^2 - e*y"), cp("c^3 - e*c*y"));
    }

    #[test]
    fn mul_square_of_c_minus_eps() {
        let p = cp("c - e");
        assert_eq!(p.clone() * p, cp("c^2 - 2*e*c + 1"));
    }

    #[test]
    fn substitute_c_zero_examples() {
        assert_eq!(cp("c^2 - e*y").substitute_c_zero(), cp("-e*y"));
        assert_eq!(cp("c^3").substitute_c_zero(), CenterPoly::zero());
        assert_eq!(
            cp("c^4 - 6*e*c^2*y + 8*c*y - 7*e*y + 5*y^2").substitute_c_zero(),
            cp("-7*e*y + 5*y^2")
        );
    }

    #[test]
    fn d_dc_examples() {
        assert_eq!(cp("c^2 - e*y").d_dc(), cp("2*c"));
        assert_eq!(cp("y^2").d_dc(), CenterPoly::zero());
        assert_eq!(cp("c^3 - 2*e*c*y + y").d_dc(), cp("3*c^2 - 2*e*y"));
    }

    #[test]
    fn eval_eps_examples() {
        assert_eq!(cp("c^2 - e*y").eval_eps(EpsSign::Plus), cp("c^2 - y"));
        assert_eq!(cp("c^2 - e*y").eval_eps(EpsSign::Minus), cp("c^2 + y"));
        assert_eq!(cp("3*e*y^2 - y").eval_eps(EpsSign::Minus), cp("-3*y^2 - y"));
    }

    #[test]
    fn render_golden_strings() {
        assert_eq!(cp("c^2 - e*y").render(), "c^2 - e*y");
        assert_eq!(cp("c^3 - 3*e*c*y + 2*y").render(), "c^3 - 3*e*c*y + 2*y");
        assert_eq!(CenterPoly::zero().render(), "0");
        assert_eq!(CenterPoly::one().render(), "1");
        assert_eq!((-CenterPoly::eps()).render(), "-e");
        assert_eq!(cp("(1+e)*c").render(), "(1+e)*c");
        assert_eq!(cp("(2-e)*c*y - e").render(), "(2-e)*c*y - e");
    }

    #[test]
    fn render_orders_terms_graded_lex() {
        // Total degree descending, then c-degree descending.
        let p = cp("y + c + y^2 + c*y + c^2");
        assert_eq!(p.render(), "c^2 + c*y + y^2 + c + y");
    }

    #[test]
    fn parse_round_trip() {
        for text in [
            "c^4 - 6*e*c^2*y + 8*c*y - 7*e*y + 5*y^2",
            "3*e*y^2 - y",
            "(1+e)*c - (3-2*e)*y",
            "0",
            "-e",
            "1",
        ] {
            let p = cp(text);
            assert_eq!(CenterPoly::parse(&p.render()).unwrap(), p);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(CenterPoly::parse("c^").is_err());
        assert!(CenterPoly::parse("c + ").is_err());
        assert!(CenterPoly::parse("(1+e").is_err());
        assert!(CenterPoly::parse("c c").is_err());
    }

    #[test]
    fn json_shape_and_round_trip() {
        let p = cp("c^2 - e*y");
        let v = p.to_json();
        assert_eq!(
            v,
            serde_json::json!({
                "terms": [
                    {"c": 2, "y": 0, "a": 1, "b": 0},
                    {"c": 0, "y": 1, "a": 0, "b": -1},
                ]
            })
        );
        assert_eq!(CenterPoly::from_json(&v).unwrap(), p);
    }

    #[test]
    fn json_big_coefficients_round_trip() {
        let huge = BigInt::parse_bytes(b"123456789012345678901234567890", 10).unwrap();
        let p = CenterPoly::monomial(1, 1, EpsCoeff::new(huge, -1));
        assert_eq!(CenterPoly::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn factorial_small_values() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(1), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
    }

    #[test]
    fn total_degree_reports_max() {
        assert_eq!(cp("c^2*y + y^2").total_degree(), 3);
        assert_eq!(CenterPoly::zero().total_degree(), 0);
    }
}
