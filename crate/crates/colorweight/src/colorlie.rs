//! Doubly graded color Lie algebras and the invariant-form machinery.
//!
//! A `Z2 x Z2`-graded color Lie algebra assigns every homogeneous element a
//! degree in `Z2 x Z2` and twists (anti)commutativity by a commuting factor
//! `eps(a, b) = (-1)^{a.b}`, a bicharacter on the grading group. Two pairings
//! are supported: the color pairing `a.b = a1*b2 - a2*b1` (under which all
//! three odd degrees mutually anticommute but each commutes with itself) and
//! the superalgebra pairing `a1*b1 + a2*b2`.
//!
//! The minimal nontrivial instance has basis `H, Q1, Q2, Q3` of degrees
//! `(0,0), (1,0), (0,1), (1,1)` with `H` central, `{Q1, Q2} = Q3`,
//! `{Q2, Q3} = e*Q1`, `{Q3, Q1} = Q2`, where the sign `e` squares to one.
//! Everything the rest of the crate needs from the algebra — structure
//! constants, the commuting factor, the invariant bilinear form
//! `diag(1, e, 1, 1)` and its inverse (whence the Casimir
//! `H^2 + e*Q1^2 + Q2^2 + Q3^2`) — is constructed and *verified* here:
//! axiom checkers validate the color-Lie and braided (S-Lie) identities, and
//! the form is derived from a concrete four-dimensional graded representation
//! by graded traces rather than postulated.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::{EpsCoeff, Rational};
use crate::report::CheckReport;

/// Errors from form construction and algebra validation.
#[derive(Debug, Error)]
pub enum ColorLieError {
    /// The bilinear form is absent or singular (at either sign of `e`).
    #[error("bilinear form is missing or degenerate")]
    DegenerateForm,
    /// The chosen matrix `M` does not graded-commute with the representation.
    #[error("matrix M does not commute with the representation of `{0}`")]
    MNotCentral(String),
    /// A trace was not divisible by the requested denominator.
    #[error("trace of a product is not divisible by the scale denominator {0}")]
    NonIntegerScale(u32),
    /// A trace carried a square-root component and cannot be a form entry.
    #[error("trace for entry ({0}, {1}) is not in the sign-coefficient ring")]
    NonScalarTrace(usize, usize),
    /// A matrix entry sits outside the block allowed by its degree.
    #[error("matrix entry ({0}, {1}) violates the degree block structure")]
    DegreeBlock(usize, usize),
    /// Dimension mismatch between operands.
    #[error("dimension mismatch between graded operands")]
    Dimension,
    /// Algebra description JSON did not match the documented shape.
    #[error("invalid algebra JSON: {0}")]
    Json(String),
}

/// A `Z2 x Z2` degree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree(pub u8, pub u8);

impl Degree {
    /// The trivial degree `(0, 0)`.
    pub fn zero() -> Self {
        Degree(0, 0)
    }

    /// Componentwise sum mod 2.
    pub fn plus(self, other: Degree) -> Degree {
        Degree((self.0 + other.0) % 2, (self.1 + other.1) % 2)
    }

    /// Whether this is the trivial degree.
    pub fn is_zero(self) -> bool {
        self.0 == 0 && self.1 == 0
    }
}

/// The bicharacter fixing commutation phases between homogeneous degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommutingFactor {
    /// Pairing `a.b = a1*b2 - a2*b1`: distinct nonzero degrees anticommute,
    /// every degree commutes with itself.
    GradedLie,
    /// Pairing `a.b = a1*b1 + a2*b2`: the superalgebra convention.
    GradedSuperlie,
}

impl CommutingFactor {
    /// The integer pairing `a.b` (sign exponent).
    pub fn pairing(self, a: Degree, b: Degree) -> i64 {
        let (a1, a2, b1, b2) = (
            i64::from(a.0),
            i64::from(a.1),
            i64::from(b.0),
            i64::from(b.1),
        );
        match self {
            CommutingFactor::GradedLie => a1 * b2 - a2 * b1,
            CommutingFactor::GradedSuperlie => a1 * b1 + a2 * b2,
        }
    }

    /// The commutation phase `eps(a, b) = (-1)^{a.b}` as `+1` or `-1`.
    pub fn phase(self, a: Degree, b: Degree) -> i64 {
        if self.pairing(a, b).rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

/// A finite-dimensional `Z2 x Z2`-graded algebra presented by basis,
/// structure constants over the sign-coefficient ring, a commuting factor,
/// and an optional invariant bilinear form.
///
/// The color-Lie axioms are checked by [`check_color_axioms`], never assumed,
/// so deliberately broken variants can serve as negative fixtures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorLieAlgebra {
    factor: CommutingFactor,
    basis: Vec<(String, Degree)>,
    /// `f[mu][nu][rho]` = coefficient of basis `rho` in the bracket of
    /// `mu` with `nu`.
    f: Vec<Vec<Vec<EpsCoeff>>>,
    bilinear: Option<Vec<Vec<EpsCoeff>>>,
}

impl ColorLieAlgebra {
    /// A new algebra with all brackets zero.
    pub fn new(factor: CommutingFactor, basis: Vec<(String, Degree)>) -> Self {
        let dim = basis.len();
        ColorLieAlgebra {
            factor,
            basis,
            f: vec![vec![vec![EpsCoeff::zero(); dim]; dim]; dim],
            bilinear: None,
        }
    }

    /// Number of basis elements.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Name of basis element `i`.
    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].0
    }

    /// Degree of basis element `i`.
    pub fn degree(&self, i: usize) -> Degree {
        self.basis[i].1
    }

    /// The commuting factor.
    pub fn factor(&self) -> CommutingFactor {
        self.factor
    }

    /// Commutation phase between basis elements `i` and `j`.
    pub fn phase(&self, i: usize, j: usize) -> i64 {
        self.factor.phase(self.degree(i), self.degree(j))
    }

    /// Set one structure constant `f[mu][nu][rho]`.
    pub fn set_bracket_coeff(&mut self, mu: usize, nu: usize, rho: usize, coeff: EpsCoeff) {
        self.f[mu][nu][rho] = coeff;
    }

    /// The structure constant `f[mu][nu][rho]`.
    pub fn bracket_coeff(&self, mu: usize, nu: usize, rho: usize) -> &EpsCoeff {
        &self.f[mu][nu][rho]
    }

    /// Bracket of basis elements as a coefficient vector over the basis.
    pub fn bracket(&self, mu: usize, nu: usize) -> Vec<EpsCoeff> {
        self.f[mu][nu].clone()
    }

    /// Install a bilinear form matrix.
    pub fn set_bilinear(&mut self, b: Vec<Vec<EpsCoeff>>) {
        self.bilinear = Some(b);
    }

    /// The bilinear form, if present.
    pub fn bilinear(&self) -> Option<&Vec<Vec<EpsCoeff>>> {
        self.bilinear.as_ref()
    }

    /// Fixture JSON: `{"factor": "graded_lie", "basis": [["H", [0, 0]], ...],
    /// "f": [[mu, nu, rho, [a, b]], ...], "bilinear": [[[a, b], ...], ...]}`
    /// (`bilinear` optional; coefficients are `a + b*e` integer pairs).
    pub fn from_json(v: &serde_json::Value) -> Result<Self, ColorLieError> {
        let factor = match v.get("factor").and_then(|f| f.as_str()) {
            Some("graded_lie") => CommutingFactor::GradedLie,
            Some("graded_superlie") => CommutingFactor::GradedSuperlie,
            _ => {
                return Err(ColorLieError::Json(
                    "\"factor\" must be \"graded_lie\" or \"graded_superlie\"".into(),
                ))
            }
        };
        let coeff_of = |v: &serde_json::Value| -> Result<EpsCoeff, ColorLieError> {
            let pair = v
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| ColorLieError::Json("coefficient must be [a, b]".into()))?;
            let part = |x: &serde_json::Value| {
                x.as_i64()
                    .ok_or_else(|| ColorLieError::Json("coefficient parts must be integers".into()))
            };
            Ok(EpsCoeff::new(part(&pair[0])?, part(&pair[1])?))
        };
        let basis_json = v
            .get("basis")
            .and_then(|b| b.as_array())
            .ok_or_else(|| ColorLieError::Json("missing \"basis\" array".into()))?;
        let mut basis = Vec::new();
        for item in basis_json {
            let entry = item
                .as_array()
                .filter(|e| e.len() == 2)
                .ok_or_else(|| ColorLieError::Json("basis entries are [name, [d1, d2]]".into()))?;
            let name = entry[0]
                .as_str()
                .ok_or_else(|| ColorLieError::Json("basis name must be a string".into()))?;
            let deg = entry[1]
                .as_array()
                .filter(|d| d.len() == 2)
                .ok_or_else(|| ColorLieError::Json("degree must be [d1, d2]".into()))?;
            let comp = |x: &serde_json::Value| {
                x.as_u64()
                    .filter(|&v| v <= 1)
                    .map(|v| v as u8)
                    .ok_or_else(|| ColorLieError::Json("degree components must be 0 or 1".into()))
            };
            basis.push((name.to_string(), Degree(comp(&deg[0])?, comp(&deg[1])?)));
        }
        let mut algebra = ColorLieAlgebra::new(factor, basis);
        if let Some(entries) = v.get("f") {
            let entries = entries
                .as_array()
                .ok_or_else(|| ColorLieError::Json("\"f\" must be an array".into()))?;
            for entry in entries {
                let entry = entry
                    .as_array()
                    .filter(|e| e.len() == 4)
                    .ok_or_else(|| {
                        ColorLieError::Json("f entries are [mu, nu, rho, [a, b]]".into())
                    })?;
                let idx = |x: &serde_json::Value| -> Result<usize, ColorLieError> {
                    x.as_u64()
                        .map(|v| v as usize)
                        .filter(|&v| v < algebra.dim())
                        .ok_or_else(|| ColorLieError::Json("f index out of range".into()))
                };
                algebra.set_bracket_coeff(
                    idx(&entry[0])?,
                    idx(&entry[1])?,
                    idx(&entry[2])?,
                    coeff_of(&entry[3])?,
                );
            }
        }
        if let Some(b) = v.get("bilinear") {
            let rows = b
                .as_array()
                .ok_or_else(|| ColorLieError::Json("\"bilinear\" must be a matrix".into()))?;
            let mut matrix = Vec::new();
            for row in rows {
                let row = row
                    .as_array()
                    .ok_or_else(|| ColorLieError::Json("\"bilinear\" rows must be arrays".into()))?;
                matrix.push(row.iter().map(coeff_of).collect::<Result<Vec<_>, _>>()?);
            }
            if matrix.len() != algebra.dim()
                || matrix.iter().any(|row| row.len() != algebra.dim())
            {
                return Err(ColorLieError::Json("\"bilinear\" must be square".into()));
            }
            algebra.set_bilinear(matrix);
        }
        Ok(algebra)
    }

    /// Render to the fixture JSON shape accepted by
    /// [`ColorLieAlgebra::from_json`].
    pub fn to_json(&self) -> serde_json::Value {
        let coeff_json = |k: &EpsCoeff| serde_json::json!([int_to_i64(&k.a), int_to_i64(&k.b)]);
        let mut f_entries = Vec::new();
        for mu in 0..self.dim() {
            for nu in 0..self.dim() {
                for rho in 0..self.dim() {
                    let k = &self.f[mu][nu][rho];
                    if !k.is_zero() {
                        f_entries.push(serde_json::json!([mu, nu, rho, coeff_json(k)]));
                    }
                }
            }
        }
        let mut out = serde_json::json!({
            "factor": match self.factor {
                CommutingFactor::GradedLie => "graded_lie",
                CommutingFactor::GradedSuperlie => "graded_superlie",
            },
            "basis": self
                .basis
                .iter()
                .map(|(name, d)| serde_json::json!([name, [d.0, d.1]]))
                .collect::<Vec<_>>(),
            "f": f_entries,
        });
        if let Some(b) = &self.bilinear {
            out["bilinear"] = serde_json::Value::from(
                b.iter()
                    .map(|row| {
                        serde_json::Value::from(row.iter().map(coeff_json).collect::<Vec<_>>())
                    })
                    .collect::<Vec<_>>(),
            );
        }
        out
    }
}

fn int_to_i64(n: &BigInt) -> i64 {
    use num_traits::ToPrimitive;
    n.to_i64().expect("fixture coefficients are small")
}

/// The minimal doubly graded algebra: central `H` plus three odd generators
/// with `{Q1, Q2} = Q3`, `{Q2, Q3} = e*Q1`, `{Q3, Q1} = Q2`, carrying the
/// invariant form `diag(1, e, 1, 1)`.
pub fn a1_epsilon() -> ColorLieAlgebra {
    let mut g = ColorLieAlgebra::new(
        CommutingFactor::GradedLie,
        vec![
            ("H".into(), Degree(0, 0)),
            ("Q1".into(), Degree(1, 0)),
            ("Q2".into(), Degree(0, 1)),
            ("Q3".into(), Degree(1, 1)),
        ],
    );
    let one = EpsCoeff::one;
    let eps = EpsCoeff::eps;
    g.set_bracket_coeff(1, 2, 3, one());
    g.set_bracket_coeff(2, 1, 3, one());
    g.set_bracket_coeff(2, 3, 1, eps());
    g.set_bracket_coeff(3, 2, 1, eps());
    g.set_bracket_coeff(3, 1, 2, one());
    g.set_bracket_coeff(1, 3, 2, one());
    g.set_bilinear(vec![
        vec![one(), EpsCoeff::zero(), EpsCoeff::zero(), EpsCoeff::zero()],
        vec![EpsCoeff::zero(), eps(), EpsCoeff::zero(), EpsCoeff::zero()],
        vec![EpsCoeff::zero(), EpsCoeff::zero(), one(), EpsCoeff::zero()],
        vec![EpsCoeff::zero(), EpsCoeff::zero(), EpsCoeff::zero(), one()],
    ]);
    g
}

fn phase_coeff(sign: i64) -> EpsCoeff {
    EpsCoeff::int(sign)
}

/// Check the color-Lie axioms — degree compatibility of the structure
/// constants, twisted antisymmetry, and the twisted Jacobi identity — over
/// all basis tuples.
pub fn check_color_axioms(g: &ColorLieAlgebra) -> CheckReport {
    let dim = g.dim();
    let mut report = CheckReport::new("color-axioms");

    let mut failures = Vec::new();
    let mut instances = 0usize;
    for mu in 0..dim {
        for nu in 0..dim {
            for rho in 0..dim {
                instances += 1;
                if !g.bracket_coeff(mu, nu, rho).is_zero()
                    && g.degree(rho) != g.degree(mu).plus(g.degree(nu))
                {
                    failures.push(format!(
                        "bracket of {} and {} hits {} outside the degree sum",
                        g.name(mu),
                        g.name(nu),
                        g.name(rho)
                    ));
                }
            }
        }
    }
    report.record("degree-compatibility", instances, failures);

    let mut failures = Vec::new();
    let mut instances = 0usize;
    for mu in 0..dim {
        for nu in 0..dim {
            for rho in 0..dim {
                instances += 1;
                let lhs = g.bracket_coeff(mu, nu, rho).clone();
                let rhs = -&(g.bracket_coeff(nu, mu, rho) * &phase_coeff(g.phase(mu, nu)));
                if lhs != rhs {
                    failures.push(format!(
                        "antisymmetry fails on ({}, {}) at {}",
                        g.name(mu),
                        g.name(nu),
                        g.name(rho)
                    ));
                }
            }
        }
    }
    report.record("epsilon-antisymmetry", instances, failures);

    // eps(z, x) [X, [Y, Z]] + eps(x, y) [Y, [Z, X]] + eps(y, z) [Z, [X, Y]] = 0.
    let mut failures = Vec::new();
    let mut instances = 0usize;
    for x in 0..dim {
        for y in 0..dim {
            for z in 0..dim {
                instances += 1;
                let mut total = vec![EpsCoeff::zero(); dim];
                for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                    let sign = phase_coeff(g.phase(c, a));
                    for sigma in 0..dim {
                        let inner = g.bracket_coeff(b, c, sigma);
                        if inner.is_zero() {
                            continue;
                        }
                        for rho in 0..dim {
                            let outer = g.bracket_coeff(a, sigma, rho);
                            if outer.is_zero() {
                                continue;
                            }
                            total[rho] += &(&(inner * outer) * &sign);
                        }
                    }
                }
                if total.iter().any(|k| !k.is_zero()) {
                    failures.push(format!(
                        "twisted Jacobi fails on ({}, {}, {})",
                        g.name(x),
                        g.name(y),
                        g.name(z)
                    ));
                }
            }
        }
    }
    report.record("epsilon-jacobi", instances, failures);

    report
}

// ---------------------------------------------------------------------------
// Braided (S-Lie) axioms, checked componentwise on tensor powers.

type Tensor1 = Vec<EpsCoeff>;
type Tensor2 = Vec<EpsCoeff>; // dim * dim, index i * dim + j
type Tensor3 = Vec<EpsCoeff>; // dim^3, index (i * dim + j) * dim + k

struct SLieOps<'a> {
    g: &'a ColorLieAlgebra,
    dim: usize,
}

impl SLieOps<'_> {
    fn phase(&self, i: usize, j: usize) -> EpsCoeff {
        phase_coeff(self.g.phase(i, j))
    }

    fn s_pair(&self, t: &Tensor2) -> Tensor2 {
        let d = self.dim;
        let mut out = vec![EpsCoeff::zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                let k = &t[i * d + j];
                if !k.is_zero() {
                    out[j * d + i] += &(k * &self.phase(i, j));
                }
            }
        }
        out
    }

    fn f_pair(&self, t: &Tensor2) -> Tensor1 {
        let d = self.dim;
        let mut out = vec![EpsCoeff::zero(); d];
        for i in 0..d {
            for j in 0..d {
                let k = &t[i * d + j];
                if k.is_zero() {
                    continue;
                }
                for rho in 0..d {
                    let f = self.g.bracket_coeff(i, j, rho);
                    if !f.is_zero() {
                        out[rho] += &(k * f);
                    }
                }
            }
        }
        out
    }

    fn s12(&self, t: &Tensor3) -> Tensor3 {
        let d = self.dim;
        let mut out = vec![EpsCoeff::zero(); d * d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let v = &t[(i * d + j) * d + k];
                    if !v.is_zero() {
                        out[(j * d + i) * d + k] += &(v * &self.phase(i, j));
                    }
                }
            }
        }
        out
    }

    fn s23(&self, t: &Tensor3) -> Tensor3 {
        let d = self.dim;
        let mut out = vec![EpsCoeff::zero(); d * d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let v = &t[(i * d + j) * d + k];
                    if !v.is_zero() {
                        out[(i * d + k) * d + j] += &(v * &self.phase(j, k));
                    }
                }
            }
        }
        out
    }

    fn f12(&self, t: &Tensor3) -> Tensor2 {
        let d = self.dim;
        let mut out = vec![EpsCoeff::zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let v = &t[(i * d + j) * d + k];
                    if v.is_zero() {
                        continue;
                    }
                    for rho in 0..d {
                        let f = self.g.bracket_coeff(i, j, rho);
                        if !f.is_zero() {
                            out[rho * d + k] += &(v * f);
                        }
                    }
                }
            }
        }
        out
    }

    fn f23(&self, t: &Tensor3) -> Tensor2 {
        let d = self.dim;
        let mut out = vec![EpsCoeff::zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let v = &t[(i * d + j) * d + k];
                    if v.is_zero() {
                        continue;
                    }
                    for rho in 0..d {
                        let f = self.g.bracket_coeff(j, k, rho);
                        if !f.is_zero() {
                            out[i * d + rho] += &(v * f);
                        }
                    }
                }
            }
        }
        out
    }

    fn basis2(&self, i: usize, j: usize) -> Tensor2 {
        let mut t = vec![EpsCoeff::zero(); self.dim * self.dim];
        t[i * self.dim + j] = EpsCoeff::one();
        t
    }

    fn basis3(&self, i: usize, j: usize, k: usize) -> Tensor3 {
        let mut t = vec![EpsCoeff::zero(); self.dim * self.dim * self.dim];
        t[(i * self.dim + j) * self.dim + k] = EpsCoeff::one();
        t
    }
}

fn sub_tensors(a: &[EpsCoeff], b: &[EpsCoeff]) -> Vec<EpsCoeff> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() - y.clone())
        .collect()
}

fn tensor_is_zero(t: &[EpsCoeff]) -> bool {
    t.iter().all(EpsCoeff::is_zero)
}

/// Check the six braided-bracket identities, with the braiding instantiated
/// as `S(X ⊗ Y) = eps(x, y) Y ⊗ X` and `f` the bracket: the involution and
/// braid relations for `S`, the two rules for carrying `f` past a strand, the
/// twisted antisymmetry `f S = -f`, and the operator Jacobi identity
/// `f f12 = f f23 - f f23 S12`. All checks run componentwise on basis
/// tensors.
pub fn check_s_lie_axioms(g: &ColorLieAlgebra) -> CheckReport {
    let dim = g.dim();
    let ops = SLieOps { g, dim };
    let mut report = CheckReport::new("s-lie-axioms");

    let mut failures = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            let t = ops.basis2(i, j);
            if sub_tensors(&ops.s_pair(&ops.s_pair(&t)), &t) != vec![EpsCoeff::zero(); dim * dim]
            {
                failures.push(format!("S^2 != id at ({}, {})", g.name(i), g.name(j)));
            }
        }
    }
    report.record("involution S^2 = id", dim * dim, failures);

    let mut failures = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let t = ops.basis3(i, j, k);
                let lhs = ops.s12(&ops.s23(&ops.s12(&t)));
                let rhs = ops.s23(&ops.s12(&ops.s23(&t)));
                if !tensor_is_zero(&sub_tensors(&lhs, &rhs)) {
                    failures.push(format!(
                        "braid relation fails at ({}, {}, {})",
                        g.name(i),
                        g.name(j),
                        g.name(k)
                    ));
                }
            }
        }
    }
    report.record("braid S12 S23 S12 = S23 S12 S23", dim * dim * dim, failures);

    let mut failures_3 = Vec::new();
    let mut failures_4 = Vec::new();
    let mut failures_6 = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let t = ops.basis3(i, j, k);
                let name = || format!("({}, {}, {})", g.name(i), g.name(j), g.name(k));

                let lhs = ops.s_pair(&ops.f12(&t));
                let rhs = ops.f23(&ops.s12(&ops.s23(&t)));
                if !tensor_is_zero(&sub_tensors(&lhs, &rhs)) {
                    failures_3.push(format!("S f12 != f23 S12 S23 at {}", name()));
                }

                let lhs = ops.s_pair(&ops.f23(&t));
                let rhs = ops.f12(&ops.s23(&ops.s12(&t)));
                if !tensor_is_zero(&sub_tensors(&lhs, &rhs)) {
                    failures_4.push(format!("S f23 != f12 S23 S12 at {}", name()));
                }

                let lhs = ops.f_pair(&ops.f12(&t));
                let mut rhs = ops.f_pair(&ops.f23(&t));
                let correction = ops.f_pair(&ops.f23(&ops.s12(&t)));
                rhs = sub_tensors(&rhs, &correction);
                if !tensor_is_zero(&sub_tensors(&lhs, &rhs)) {
                    failures_6.push(format!("f f12 != f f23 - f f23 S12 at {}", name()));
                }
            }
        }
    }
    let cube = dim * dim * dim;
    report.record("S carries f past a strand (left)", cube, failures_3);
    report.record("S carries f past a strand (right)", cube, failures_4);

    let mut failures = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            let t = ops.basis2(i, j);
            let lhs = ops.f_pair(&ops.s_pair(&t));
            let rhs: Vec<EpsCoeff> = ops.f_pair(&t).into_iter().map(|k| -k).collect();
            if !tensor_is_zero(&sub_tensors(&lhs, &rhs)) {
                failures.push(format!("f S != -f at ({}, {})", g.name(i), g.name(j)));
            }
        }
    }
    report.record("antisymmetry f S = -f", dim * dim, failures);
    report.record("operator Jacobi f f12 = f f23 - f f23 S12", cube, failures_6);

    report
}

// ---------------------------------------------------------------------------
// Rational sign-coefficients and form inversion.

/// An element `a + b*e` with exact rational parts; needed for inverse forms,
/// whose entries are not integral in general.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsRational {
    /// Rational part.
    pub a: Rational,
    /// Coefficient of `e`.
    pub b: Rational,
}

impl EpsRational {
    /// Zero.
    pub fn zero() -> Self {
        EpsRational {
            a: Rational::zero(),
            b: Rational::zero(),
        }
    }

    /// Recombine the two evaluations `u = a + b` (at `e = +1`) and
    /// `v = a - b` (at `e = -1`).
    pub fn from_evaluations(u: Rational, v: Rational) -> Self {
        let two = Rational::from_integer(2.into());
        EpsRational {
            a: (&u + &v) / &two,
            b: (u - v) / two,
        }
    }

    /// Whether this is zero.
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact conversion to integer parts, if both are integers.
    pub fn to_eps_coeff(&self) -> Option<EpsCoeff> {
        if self.a.is_integer() && self.b.is_integer() {
            Some(EpsCoeff::new(self.a.to_integer(), self.b.to_integer()))
        } else {
            None
        }
    }
}

fn eval_coeff(k: &EpsCoeff, plus: bool) -> Rational {
    let v = if plus { &k.a + &k.b } else { &k.a - &k.b };
    Rational::from_integer(v)
}

/// Gauss-Jordan inverse of a square rational matrix; `None` when singular.
fn invert_rational(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &scale;
            inv[col][j] = &inv[col][j] / &scale;
        }
        for row in 0..n {
            if row != col && !a[row][col].is_zero() {
                let factor = a[row][col].clone();
                for j in 0..n {
                    let sub_a = &a[col][j] * &factor;
                    let sub_i = &inv[col][j] * &factor;
                    a[row][j] -= sub_a;
                    inv[row][j] -= sub_i;
                }
            }
        }
    }
    Some(inv)
}

/// The inverse of the algebra's bilinear form, exactly, as `a + b*e` rational
/// entries; errors when the form is missing or singular at either sign.
pub fn inverse_form(g: &ColorLieAlgebra) -> Result<Vec<Vec<EpsRational>>, ColorLieError> {
    let b = g.bilinear().ok_or(ColorLieError::DegenerateForm)?;
    let dim = g.dim();
    let eval = |plus: bool| -> Vec<Vec<Rational>> {
        (0..dim)
            .map(|i| (0..dim).map(|j| eval_coeff(&b[i][j], plus)).collect())
            .collect()
    };
    let plus = invert_rational(&eval(true)).ok_or(ColorLieError::DegenerateForm)?;
    let minus = invert_rational(&eval(false)).ok_or(ColorLieError::DegenerateForm)?;
    Ok((0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| EpsRational::from_evaluations(plus[i][j].clone(), minus[i][j].clone()))
                .collect()
        })
        .collect())
}

/// The Casimir element as index pairs with coefficients:
/// `sum C^{ab} X_a X_b` where `C` is the inverse bilinear form.
pub fn casimir(g: &ColorLieAlgebra) -> Result<Vec<((usize, usize), EpsRational)>, ColorLieError> {
    let c = inverse_form(g)?;
    let mut out = Vec::new();
    for (a, row) in c.iter().enumerate() {
        for (b, coeff) in row.iter().enumerate() {
            if !coeff.is_zero() {
                out.push(((a, b), coeff.clone()));
            }
        }
    }
    Ok(out)
}

/// The structure constants with the last index raised by the inverse form:
/// `sum_a f[i][j][a] C[a][k]`.
pub fn raised_structure_constants(
    g: &ColorLieAlgebra,
) -> Result<Vec<Vec<Vec<EpsRational>>>, ColorLieError> {
    let c = inverse_form(g)?;
    let dim = g.dim();
    let mut out = vec![vec![vec![EpsRational::zero(); dim]; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let mut plus = Rational::zero();
                let mut minus = Rational::zero();
                for a in 0..dim {
                    let f = g.bracket_coeff(i, j, a);
                    if f.is_zero() {
                        continue;
                    }
                    plus += eval_coeff(f, true) * (&c[a][k].a + &c[a][k].b);
                    minus += eval_coeff(f, false) * (&c[a][k].a - &c[a][k].b);
                }
                out[i][j][k] = EpsRational::from_evaluations(plus, minus);
            }
        }
    }
    Ok(out)
}

impl Add for &EpsRational {
    type Output = EpsRational;
    fn add(self, rhs: &EpsRational) -> EpsRational {
        EpsRational {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &EpsRational {
    type Output = EpsRational;
    fn sub(self, rhs: &EpsRational) -> EpsRational {
        EpsRational {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Mul for &EpsRational {
    type Output = EpsRational;
    fn mul(self, rhs: &EpsRational) -> EpsRational {
        EpsRational {
            a: &self.a * &rhs.a + &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

/// Cross-checks on data derived from the algebra: contracting two raised
/// structure constants over their middle index yields the exchange tensor
/// `δ_{ik}δ_{jℓ} − (−1)^{k̂·ℓ̂} δ_{iℓ}δ_{jk}` (on nonzero-degree indices —
/// a bracket with a central generator vanishes, so charged indices carry the
/// whole identity), and the invariant form rebuilt from the standard
/// four-dimensional representation with the identity twist reproduces the
/// stored form.
pub fn check_derived_data(g: &ColorLieAlgebra) -> Result<CheckReport, ColorLieError> {
    let mut report = CheckReport::new("derived-data");
    let raised = raised_structure_constants(g)?;
    let dim = g.dim();

    let charged: Vec<usize> = (0..dim).filter(|&i| !g.degree(i).is_zero()).collect();
    let mut failures = Vec::new();
    let mut instances = 0usize;
    for &i in &charged {
        for &j in &charged {
            for &k in &charged {
                for &l in &charged {
                    instances += 1;
                    let mut lhs = EpsRational::zero();
                    for a in 0..dim {
                        lhs = &lhs + &(&raised[i][a][j] * &raised[a][k][l]);
                    }
                    let mut rhs = EpsRational::zero();
                    if i == k && j == l {
                        rhs.a += Rational::one();
                    }
                    if i == l && j == k {
                        rhs.a -= Rational::from_integer(g.phase(k, l).into());
                    }
                    if lhs != rhs {
                        failures.push(format!(
                            "indices ({}, {}, {}, {})",
                            g.name(i),
                            g.name(j),
                            g.name(k),
                            g.name(l)
                        ));
                    }
                }
            }
        }
    }
    report.record(
        "raised-constant contraction yields the exchange tensor",
        instances,
        failures,
    );

    let mut failures = Vec::new();
    let rep = standard_representation();
    let twist = GradedMatrix::identity(rep[0].space_degrees().to_vec());
    match build_bilinear_form(g, &rep, &twist, &RepScalar::eps(), 2) {
        Ok(built) => match g.bilinear() {
            Some(stored) if *stored == built => {}
            Some(_) => failures.push("rebuilt form differs from the stored form".into()),
            None => failures.push("the algebra stores no form to compare against".into()),
        },
        Err(e) => failures.push(format!("construction failed: {e}")),
    }
    report.record(
        "the identity-twist trace form reproduces the stored form",
        1,
        failures,
    );

    Ok(report)
}

/// Check the compatibility conditions between the bilinear form, the bracket,
/// and the braiding: invariance `B f12 = B f23`, the strand exchange
/// `B12 S23 = B23 S12`, and the two identities tying the inverse form to `S`
/// and `f`.
pub fn check_casimir_conditions(g: &ColorLieAlgebra) -> Result<CheckReport, ColorLieError> {
    let b = g.bilinear().ok_or(ColorLieError::DegenerateForm)?;
    let c = inverse_form(g)?;
    let dim = g.dim();
    let mut report = CheckReport::new("casimir-conditions");

    // B(f(x, y), z) = B(x, f(y, z)).
    let mut failures = Vec::new();
    for x in 0..dim {
        for y in 0..dim {
            for z in 0..dim {
                let mut lhs = EpsCoeff::zero();
                let mut rhs = EpsCoeff::zero();
                for d in 0..dim {
                    lhs += &(g.bracket_coeff(x, y, d) * &b[d][z]);
                    rhs += &(&b[x][d] * g.bracket_coeff(y, z, d));
                }
                if lhs != rhs {
                    failures.push(format!(
                        "invariance fails on ({}, {}, {})",
                        g.name(x),
                        g.name(y),
                        g.name(z)
                    ));
                }
            }
        }
    }
    report.record("invariance B f12 = B f23", dim * dim * dim, failures);

    // B12 S23 = B23 S12 componentwise: eps(y, z) B[x][z] X_y vs
    // eps(x, y) B[x][z] X_y.
    let mut failures = Vec::new();
    for x in 0..dim {
        for y in 0..dim {
            for z in 0..dim {
                let lhs = &b[x][z] * &phase_coeff(g.phase(y, z));
                let rhs = &b[x][z] * &phase_coeff(g.phase(x, y));
                if lhs != rhs {
                    failures.push(format!(
                        "strand exchange fails on ({}, {}, {})",
                        g.name(x),
                        g.name(y),
                        g.name(z)
                    ));
                }
            }
        }
    }
    report.record("strand exchange B12 S23 = B23 S12", dim * dim * dim, failures);

    // sum_k S[j][k -> m][n] C[k][l] = sum_k C[m][k] S[k][j -> n][l], which for
    // the flip braiding reduces to: [n = j] eps(j, m) C[m][l] =
    // [n = j] eps(l, j) C[m][l].
    let mut failures = Vec::new();
    let mut instances = 0usize;
    for j in 0..dim {
        for m in 0..dim {
            for n in 0..dim {
                for l in 0..dim {
                    instances += 1;
                    let lhs = if n == j && m < dim {
                        scale_rational(&c[m][l], g.phase(j, m))
                    } else {
                        EpsRational::zero()
                    };
                    let rhs = if n == j {
                        scale_rational(&c[m][l], g.phase(l, j))
                    } else {
                        EpsRational::zero()
                    };
                    if lhs != rhs {
                        failures.push(format!(
                            "inverse-form braiding identity fails at ({}, {}, {}, {})",
                            g.name(j),
                            g.name(m),
                            g.name(n),
                            g.name(l)
                        ));
                    }
                }
            }
        }
    }
    report.record("inverse form vs braiding", instances, failures);

    // sum_k C[m][k] f[k][j][n] = sum_k f[j][k][m'] C[k][n] pattern:
    // sum_k C[m][k] f[k][j][n] = sum_k f[j][k][m] C[k][n].
    let mut failures = Vec::new();
    for m in 0..dim {
        for j in 0..dim {
            for n in 0..dim {
                let mut lhs_p = Rational::zero();
                let mut lhs_m = Rational::zero();
                let mut rhs_p = Rational::zero();
                let mut rhs_m = Rational::zero();
                for k in 0..dim {
                    let f_l = g.bracket_coeff(k, j, n);
                    lhs_p += (&c[m][k].a + &c[m][k].b) * eval_coeff(f_l, true);
                    lhs_m += (&c[m][k].a - &c[m][k].b) * eval_coeff(f_l, false);
                    let f_r = g.bracket_coeff(j, k, m);
                    rhs_p += eval_coeff(f_r, true) * (&c[k][n].a + &c[k][n].b);
                    rhs_m += eval_coeff(f_r, false) * (&c[k][n].a - &c[k][n].b);
                }
                if lhs_p != rhs_p || lhs_m != rhs_m {
                    failures.push(format!(
                        "inverse-form bracket identity fails at ({}, {}, {})",
                        g.name(m),
                        g.name(j),
                        g.name(n)
                    ));
                }
            }
        }
    }
    report.record("inverse form vs bracket", dim * dim * dim, failures);

    Ok(report)
}

fn scale_rational(x: &EpsRational, sign: i64) -> EpsRational {
    let s = Rational::from_integer(sign.into());
    EpsRational {
        a: &x.a * &s,
        b: &x.b * &s,
    }
}

// ---------------------------------------------------------------------------
// The scalar ring with an exact square root of 2e, and graded matrices.

/// An element `a + b*e + c*s + d*e*s` of the ring extending the sign
/// coefficients by a formal `s` with `s^2 = 2e` (an exact square root of
/// `2e`, needed by the graded representation).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RepScalar {
    /// Constant part.
    pub a: BigInt,
    /// Coefficient of `e`.
    pub b: BigInt,
    /// Coefficient of `s`.
    pub c: BigInt,
    /// Coefficient of `e*s`.
    pub d: BigInt,
}

impl RepScalar {
    /// Zero.
    pub fn zero() -> Self {
        RepScalar::default()
    }

    /// One.
    pub fn one() -> Self {
        RepScalar::from_int(1)
    }

    /// The pure integer `k`.
    pub fn from_int(k: i64) -> Self {
        RepScalar {
            a: BigInt::from(k),
            ..RepScalar::default()
        }
    }

    /// The sign generator `e`.
    pub fn eps() -> Self {
        RepScalar {
            b: BigInt::one(),
            ..RepScalar::default()
        }
    }

    /// The square root generator `s` (with `s^2 = 2e`).
    pub fn s() -> Self {
        RepScalar {
            c: BigInt::one(),
            ..RepScalar::default()
        }
    }

    /// Embed a sign coefficient.
    pub fn from_eps(k: &EpsCoeff) -> Self {
        RepScalar {
            a: k.a.clone(),
            b: k.b.clone(),
            ..RepScalar::default()
        }
    }

    /// Whether this is zero.
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// Exact conversion to a sign coefficient (no `s` components).
    pub fn to_eps(&self) -> Option<EpsCoeff> {
        if self.c.is_zero() && self.d.is_zero() {
            Some(EpsCoeff::new(self.a.clone(), self.b.clone()))
        } else {
            None
        }
    }

    /// Exact division by a positive integer, if every part is divisible.
    pub fn div_exact(&self, denom: u32) -> Option<RepScalar> {
        let d = BigInt::from(denom);
        let div = |x: &BigInt| -> Option<BigInt> {
            let (q, r) = x.div_rem(&d);
            r.is_zero().then_some(q)
        };
        Some(RepScalar {
            a: div(&self.a)?,
            b: div(&self.b)?,
            c: div(&self.c)?,
            d: div(&self.d)?,
        })
    }
}

impl fmt::Display for RepScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.a.is_zero() {
            parts.push(self.a.to_string());
        }
        if !self.b.is_zero() {
            parts.push(format!("{}*e", self.b));
        }
        if !self.c.is_zero() {
            parts.push(format!("{}*s", self.c));
        }
        if !self.d.is_zero() {
            parts.push(format!("{}*e*s", self.d));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

impl Add for RepScalar {
    type Output = RepScalar;
    fn add(self, rhs: RepScalar) -> RepScalar {
        RepScalar {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            c: self.c + rhs.c,
            d: self.d + rhs.d,
        }
    }
}

impl Sub for RepScalar {
    type Output = RepScalar;
    fn sub(self, rhs: RepScalar) -> RepScalar {
        RepScalar {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
            c: self.c - rhs.c,
            d: self.d - rhs.d,
        }
    }
}

impl Neg for RepScalar {
    type Output = RepScalar;
    fn neg(self) -> RepScalar {
        RepScalar {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }
}

impl Mul for &RepScalar {
    type Output = RepScalar;
    // Basis products: e*e = 1, s*s = 2e, s*(e*s) = 2, (e*s)*(e*s) = 2e.
    fn mul(self, rhs: &RepScalar) -> RepScalar {
        let two = BigInt::from(2);
        RepScalar {
            a: &self.a * &rhs.a
                + &self.b * &rhs.b
                + (&self.c * &rhs.d + &self.d * &rhs.c) * &two,
            b: &self.a * &rhs.b
                + &self.b * &rhs.a
                + (&self.c * &rhs.c + &self.d * &rhs.d) * &two,
            c: &self.a * &rhs.c + &self.c * &rhs.a + &self.b * &rhs.d + &self.d * &rhs.b,
            d: &self.a * &rhs.d + &self.d * &rhs.a + &self.b * &rhs.c + &self.c * &rhs.b,
        }
    }
}

impl Mul for RepScalar {
    type Output = RepScalar;
    fn mul(self, rhs: RepScalar) -> RepScalar {
        (&self).mul(&rhs)
    }
}

/// A homogeneous linear map on a graded vector space: entry `(i, j)` may be
/// nonzero only when `deg_i + deg_j` equals the matrix degree (blocks off the
/// allowed pattern are identically zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    degrees: Vec<Degree>,
    degree: Degree,
    entries: Vec<Vec<RepScalar>>,
}

impl GradedMatrix {
    /// Build and validate the block structure.
    pub fn new(
        degrees: Vec<Degree>,
        degree: Degree,
        entries: Vec<Vec<RepScalar>>,
    ) -> Result<Self, ColorLieError> {
        let n = degrees.len();
        if entries.len() != n || entries.iter().any(|row| row.len() != n) {
            return Err(ColorLieError::Dimension);
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() && degrees[i].plus(degrees[j]) != degree {
                    return Err(ColorLieError::DegreeBlock(i, j));
                }
            }
        }
        Ok(GradedMatrix {
            degrees,
            degree,
            entries,
        })
    }

    /// The identity map (degree `(0, 0)`).
    pub fn identity(degrees: Vec<Degree>) -> Self {
        let n = degrees.len();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            RepScalar::one()
                        } else {
                            RepScalar::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        GradedMatrix {
            degrees,
            degree: Degree::zero(),
            entries,
        }
    }

    /// Vector-space dimension.
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    /// The map's degree.
    pub fn degree(&self) -> Degree {
        self.degree
    }

    /// Per-index degrees of the underlying space.
    pub fn space_degrees(&self) -> &[Degree] {
        &self.degrees
    }

    /// Entry at `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> &RepScalar {
        &self.entries[row][col]
    }

    /// Matrix product; degrees add.
    pub fn mul(&self, rhs: &GradedMatrix) -> Result<GradedMatrix, ColorLieError> {
        if self.degrees != rhs.degrees {
            return Err(ColorLieError::Dimension);
        }
        let n = self.dim();
        let mut entries = vec![vec![RepScalar::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if rhs.entries[k][j].is_zero() {
                        continue;
                    }
                    let add = &self.entries[i][k] * &rhs.entries[k][j];
                    let slot = entries[i][j].clone() + add;
                    entries[i][j] = slot;
                }
            }
        }
        GradedMatrix::new(self.degrees.clone(), self.degree.plus(rhs.degree), entries)
    }

    /// Entrywise sum; degrees must match.
    pub fn add(&self, rhs: &GradedMatrix) -> Result<GradedMatrix, ColorLieError> {
        if self.degrees != rhs.degrees || self.degree != rhs.degree {
            return Err(ColorLieError::Dimension);
        }
        let n = self.dim();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.entries[i][j].clone() + rhs.entries[i][j].clone())
                    .collect()
            })
            .collect();
        GradedMatrix::new(self.degrees.clone(), self.degree, entries)
    }

    /// Scale every entry.
    pub fn scale(&self, k: &RepScalar) -> GradedMatrix {
        let n = self.dim();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| k * &self.entries[i][j]).collect())
            .collect();
        GradedMatrix {
            degrees: self.degrees.clone(),
            degree: self.degree,
            entries,
        }
    }

    /// Graded commutator `A B - eps(deg A, deg B) B A` under the given
    /// commuting factor.
    pub fn graded_bracket(
        &self,
        rhs: &GradedMatrix,
        factor: CommutingFactor,
    ) -> Result<GradedMatrix, ColorLieError> {
        let sign = factor.phase(self.degree, rhs.degree);
        let ab = self.mul(rhs)?;
        let ba = rhs.mul(self)?.scale(&RepScalar::from_int(-sign));
        ab.add(&ba)
    }

    /// Whether every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(RepScalar::is_zero)
    }
}

/// Graded trace: the diagonal sum. The block invariant makes the diagonal
/// identically zero unless the matrix has degree `(0, 0)`, so no degree
/// bookkeeping is needed at the call site.
pub fn graded_trace(m: &GradedMatrix) -> RepScalar {
    let mut out = RepScalar::zero();
    for i in 0..m.dim() {
        out = out + m.entry(i, i).clone();
    }
    out
}

/// The four-dimensional graded representation of the minimal algebra on a
/// space with basis degrees `(0,0), (1,0), (0,1), (1,1)`:
/// `H` acts as `diag(s, 0, 0, 0)` with `s^2 = 2e`, each `Q_k` swaps the two
/// basis vectors whose degrees differ by `deg Q_k`, picking up `e` on the way
/// that lowers in the fixed order. Returns the images of `H, Q1, Q2, Q3`.
pub fn standard_representation() -> Vec<GradedMatrix> {
    let degrees = vec![Degree(0, 0), Degree(1, 0), Degree(0, 1), Degree(1, 1)];
    let zero = RepScalar::zero;
    let mut rho_h = vec![vec![zero(); 4]; 4];
    rho_h[0][0] = RepScalar::s();
    let mut rho_q1 = vec![vec![zero(); 4]; 4];
    rho_q1[3][2] = RepScalar::one();
    rho_q1[2][3] = RepScalar::one();
    let mut rho_q2 = vec![vec![zero(); 4]; 4];
    rho_q2[3][1] = RepScalar::one();
    rho_q2[1][3] = RepScalar::eps();
    let mut rho_q3 = vec![vec![zero(); 4]; 4];
    rho_q3[2][1] = RepScalar::one();
    rho_q3[1][2] = RepScalar::eps();
    vec![
        GradedMatrix::new(degrees.clone(), Degree(0, 0), rho_h).expect("H block structure"),
        GradedMatrix::new(degrees.clone(), Degree(1, 0), rho_q1).expect("Q1 block structure"),
        GradedMatrix::new(degrees.clone(), Degree(0, 1), rho_q2).expect("Q2 block structure"),
        GradedMatrix::new(degrees, Degree(1, 1), rho_q3).expect("Q3 block structure"),
    ]
}

/// Build an invariant bilinear form from a representation:
/// `B[a][b] = (numer / denom) * graded_trace(rho(X_a) M rho(X_b))`.
///
/// Preconditions: `M` graded-commutes with every `rho(X_a)`; each scaled
/// trace must divide exactly by `denom` and carry no square-root component.
pub fn build_bilinear_form(
    g: &ColorLieAlgebra,
    rep: &[GradedMatrix],
    m: &GradedMatrix,
    numer: &RepScalar,
    denom: u32,
) -> Result<Vec<Vec<EpsCoeff>>, ColorLieError> {
    for (i, rho) in rep.iter().enumerate() {
        let bracket = m.graded_bracket(rho, g.factor())?;
        if !bracket.is_zero() {
            return Err(ColorLieError::MNotCentral(g.name(i).to_string()));
        }
    }
    let dim = rep.len();
    let mut out = vec![vec![EpsCoeff::zero(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            let product = rep[a].mul(m)?.mul(&rep[b])?;
            let scaled = numer * &graded_trace(&product);
            let divided = scaled
                .div_exact(denom)
                .ok_or(ColorLieError::NonIntegerScale(denom))?;
            out[a][b] = divided
                .to_eps()
                .ok_or(ColorLieError::NonScalarTrace(a, b))?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> ColorLieAlgebra {
        a1_epsilon()
    }

    #[test]
    fn bracket_relations() {
        let g = a1();
        // {Q1, Q2} = Q3
        let mut expected = vec![EpsCoeff::zero(); 4];
        expected[3] = EpsCoeff::one();
        assert_eq!(g.bracket(1, 2), expected);
        // [H, Q2] = 0
        assert_eq!(g.bracket(0, 2), vec![EpsCoeff::zero(); 4]);
        // {Q2, Q3} = e*Q1
        let mut expected = vec![EpsCoeff::zero(); 4];
        expected[1] = EpsCoeff::eps();
        assert_eq!(g.bracket(2, 3), expected);
    }

    #[test]
    fn commutation_phases() {
        let g = a1();
        assert_eq!(g.phase(1, 2), -1);
        assert_eq!(g.phase(1, 3), -1);
        assert_eq!(g.phase(2, 3), -1);
        assert_eq!(g.phase(1, 1), 1);
        assert_eq!(g.phase(0, 3), 1);
    }

    #[test]
    fn commuting_factor_bicharacter_identities() {
        for factor in [CommutingFactor::GradedLie, CommutingFactor::GradedSuperlie] {
            let all: Vec<Degree> = (0..2)
                .flat_map(|i| (0..2).map(move |j| Degree(i, j)))
                .collect();
            for &x in &all {
                for &y in &all {
                    assert_eq!(factor.phase(x, y) * factor.phase(y, x), 1);
                    for &z in &all {
                        assert_eq!(
                            factor.phase(x, y.plus(z)),
                            factor.phase(x, y) * factor.phase(x, z)
                        );
                        assert_eq!(
                            factor.phase(x.plus(y), z),
                            factor.phase(x, z) * factor.phase(y, z)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn color_axioms_pass_for_minimal_algebra() {
        let report = check_color_axioms(&a1());
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn color_axioms_pass_for_abelian_algebra() {
        let g = ColorLieAlgebra::new(
            CommutingFactor::GradedLie,
            vec![("X".into(), Degree(1, 0)), ("Y".into(), Degree(0, 1))],
        );
        assert!(check_color_axioms(&g).passed());
    }

    #[test]
    fn broken_structure_constant_fails_axioms() {
        let mut g = a1();
        // Replace the e coefficient in one direction only: both twisted
        // antisymmetry and the twisted Jacobi identity break. (The bracket of
        // Q2 with the now-mismatched double bracket no longer cancels.)
        g.set_bracket_coeff(2, 3, 1, EpsCoeff::one());
        let report = check_color_axioms(&g);
        let anti = report
            .checks
            .iter()
            .find(|c| c.identity.contains("antisymmetry"))
            .unwrap();
        assert!(!anti.passed());
        assert!(anti.failures.iter().any(|f| f.contains("Q2") && f.contains("Q3")));
        let jacobi = report
            .checks
            .iter()
            .find(|c| c.identity.contains("jacobi"))
            .unwrap();
        assert!(!jacobi.passed(), "{report}");
        // Degree compatibility is untouched by a coefficient change.
        let degree = report
            .checks
            .iter()
            .find(|c| c.identity.contains("degree"))
            .unwrap();
        assert!(degree.passed());
    }

    #[test]
    fn s_lie_axioms_pass_for_minimal_algebra() {
        let report = check_s_lie_axioms(&a1());
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn s_lie_axioms_pass_for_plain_lie_algebra() {
        // Trivially graded one-dimensional abelian algebra.
        let g = ColorLieAlgebra::new(
            CommutingFactor::GradedLie,
            vec![("X".into(), Degree(0, 0))],
        );
        assert!(check_s_lie_axioms(&g).passed());
    }

    #[test]
    fn s_flip_antisymmetry_example() {
        // f(S(Q1 ⊗ Q2)) = -f(Q1 ⊗ Q2) = -Q3, via eps((1,0), (0,1)) = -1.
        let g = a1();
        let ops = SLieOps { g: &g, dim: 4 };
        let t = ops.basis2(1, 2);
        let lhs = ops.f_pair(&ops.s_pair(&t));
        let mut expected = vec![EpsCoeff::zero(); 4];
        expected[3] = -EpsCoeff::one();
        assert_eq!(lhs, expected);
    }

    #[test]
    fn casimir_conditions_pass_for_minimal_algebra() {
        let report = check_casimir_conditions(&a1()).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn casimir_conditions_fail_for_unit_form() {
        let mut g = a1();
        let e = |i: usize, j: usize| {
            if i == j {
                EpsCoeff::one()
            } else {
                EpsCoeff::zero()
            }
        };
        g.set_bilinear((0..4).map(|i| (0..4).map(|j| e(i, j)).collect()).collect());
        let report = check_casimir_conditions(&g).unwrap();
        let invariance = report
            .checks
            .iter()
            .find(|c| c.identity.contains("invariance"))
            .unwrap();
        assert!(!invariance.passed());
        assert!(invariance.failures.iter().any(|f| f.contains("Q1")));
    }

    #[test]
    fn casimir_conditions_pass_for_abelian_any_symmetric_form() {
        let mut g = ColorLieAlgebra::new(
            CommutingFactor::GradedLie,
            vec![("X".into(), Degree(0, 0)), ("Y".into(), Degree(0, 0))],
        );
        g.set_bilinear(vec![
            vec![EpsCoeff::int(2), EpsCoeff::one()],
            vec![EpsCoeff::one(), EpsCoeff::int(3)],
        ]);
        assert!(check_casimir_conditions(&g).unwrap().passed());
    }

    #[test]
    fn casimir_element_of_minimal_algebra() {
        let g = a1();
        let cas = casimir(&g).unwrap();
        let as_eps: Vec<((usize, usize), EpsCoeff)> = cas
            .into_iter()
            .map(|(idx, k)| (idx, k.to_eps_coeff().expect("integral inverse form")))
            .collect();
        assert_eq!(
            as_eps,
            vec![
                ((0, 0), EpsCoeff::one()),
                ((1, 1), EpsCoeff::eps()),
                ((2, 2), EpsCoeff::one()),
                ((3, 3), EpsCoeff::one()),
            ]
        );
    }

    #[test]
    fn casimir_errors_on_degenerate_form() {
        let mut g = a1();
        g.set_bilinear(vec![vec![EpsCoeff::zero(); 4]; 4]);
        assert!(matches!(casimir(&g), Err(ColorLieError::DegenerateForm)));
        let mut g = a1();
        g.bilinear = None;
        assert!(matches!(casimir(&g), Err(ColorLieError::DegenerateForm)));
    }

    #[test]
    fn casimir_of_abelian_unit_form_is_sum_of_squares() {
        let mut g = ColorLieAlgebra::new(
            CommutingFactor::GradedLie,
            vec![("X".into(), Degree(0, 0)), ("Y".into(), Degree(0, 0))],
        );
        g.set_bilinear(vec![
            vec![EpsCoeff::one(), EpsCoeff::zero()],
            vec![EpsCoeff::zero(), EpsCoeff::one()],
        ]);
        let cas: Vec<_> = casimir(&g)
            .unwrap()
            .into_iter()
            .map(|(idx, k)| (idx, k.to_eps_coeff().unwrap()))
            .collect();
        assert_eq!(
            cas,
            vec![((0, 0), EpsCoeff::one()), ((1, 1), EpsCoeff::one())]
        );
    }

    #[test]
    fn raised_constants_are_permutation_indicators() {
        let g = a1();
        let raised = raised_structure_constants(&g).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let expected = {
                        let mut idx = [i, j, k];
                        idx.sort_unstable();
                        if idx == [1, 2, 3] {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    };
                    assert_eq!(raised[i][j][k].a, expected, "at ({i}, {j}, {k})");
                    assert!(raised[i][j][k].b.is_zero(), "at ({i}, {j}, {k})");
                }
            }
        }
    }

    #[test]
    fn derived_data_checks_pass() {
        let report = check_derived_data(&a1()).unwrap();
        assert!(report.passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn raised_constants_contraction_identity() {
        let g = a1();
        let raised = raised_structure_constants(&g).unwrap();
        let ft = |i: usize, j: usize, k: usize| raised[i][j][k].a.clone();
        for i in 1..4 {
            for j in 1..4 {
                for k in 1..4 {
                    for l in 1..4 {
                        let mut lhs = Rational::zero();
                        for a in 0..4 {
                            lhs += ft(i, a, j) * ft(a, k, l);
                        }
                        let mut rhs = Rational::zero();
                        if i == k && j == l {
                            rhs += Rational::one();
                        }
                        if i == l && j == k {
                            rhs -= Rational::from_integer(g.phase(k, l).into());
                        }
                        assert_eq!(lhs, rhs, "contraction at ({i}, {j}, {k}, {l})");
                    }
                }
            }
        }
    }

    #[test]
    fn graded_trace_of_identity_and_odd_matrices() {
        let rep = standard_representation();
        let id = GradedMatrix::identity(rep[0].space_degrees().to_vec());
        assert_eq!(graded_trace(&id), RepScalar::from_int(4));
        assert_eq!(graded_trace(&rep[1]), RepScalar::zero());
        assert_eq!(graded_trace(&rep[2]), RepScalar::zero());
        assert_eq!(graded_trace(&rep[3]), RepScalar::zero());
    }

    #[test]
    fn graded_trace_is_cyclic_on_representation_products() {
        let rep = standard_representation();
        for x in &rep {
            for y in &rep {
                let xy = x.mul(y).unwrap();
                let yx = y.mul(x).unwrap();
                assert_eq!(graded_trace(&xy), graded_trace(&yx));
                for z in &rep {
                    let xyz = xy.mul(z).unwrap();
                    let zxy = z.mul(&xy).unwrap();
                    assert_eq!(graded_trace(&xyz), graded_trace(&zxy));
                }
            }
        }
    }

    #[test]
    fn representation_is_a_homomorphism() {
        let g = a1();
        let rep = standard_representation();
        for i in 0..4 {
            for j in 0..4 {
                let lhs = rep[i].graded_bracket(&rep[j], g.factor()).unwrap();
                // rho of the bracket, as a matrix.
                let mut rhs = GradedMatrix::new(
                    rep[0].space_degrees().to_vec(),
                    g.degree(i).plus(g.degree(j)),
                    vec![vec![RepScalar::zero(); 4]; 4],
                )
                .unwrap();
                for rho in 0..4 {
                    let k = g.bracket_coeff(i, j, rho);
                    if !k.is_zero() {
                        rhs = rhs.add(&rep[rho].scale(&RepScalar::from_eps(k))).unwrap();
                    }
                }
                assert_eq!(lhs, rhs, "bracket image mismatch at ({i}, {j})");
            }
        }
    }

    #[test]
    fn squared_central_image() {
        let rep = standard_representation();
        let h2 = rep[0].mul(&rep[0]).unwrap();
        let mut expected = vec![vec![RepScalar::zero(); 4]; 4];
        expected[0][0] = RepScalar::eps() * RepScalar::from_int(2);
        let expected =
            GradedMatrix::new(rep[0].space_degrees().to_vec(), Degree(0, 0), expected).unwrap();
        assert_eq!(h2, expected);
    }

    #[test]
    fn anticommutators_reproduce_brackets() {
        let rep = standard_representation();
        let anti = |x: &GradedMatrix, y: &GradedMatrix| {
            x.mul(y).unwrap().add(&y.mul(x).unwrap()).unwrap()
        };
        assert_eq!(anti(&rep[1], &rep[2]), rep[3]);
        assert_eq!(anti(&rep[3], &rep[1]), rep[2]);
        assert_eq!(
            anti(&rep[2], &rep[3]),
            rep[1].scale(&RepScalar::eps())
        );
    }

    #[test]
    fn bilinear_form_from_representation() {
        let g = a1();
        let rep = standard_representation();
        let m = GradedMatrix::identity(rep[0].space_degrees().to_vec());
        let b = build_bilinear_form(&g, &rep, &m, &RepScalar::eps(), 2).unwrap();
        let expected = a1().bilinear().unwrap().clone();
        assert_eq!(b, expected);
    }

    #[test]
    fn bilinear_form_vanishes_off_degree_zero_pairs() {
        let g = a1();
        let rep = standard_representation();
        let m = GradedMatrix::identity(rep[0].space_degrees().to_vec());
        let b = build_bilinear_form(&g, &rep, &m, &RepScalar::eps(), 2).unwrap();
        for a in 0..4 {
            for c in 0..4 {
                if !g.degree(a).plus(g.degree(c)).is_zero() {
                    assert!(b[a][c].is_zero(), "entry ({a}, {c}) should vanish");
                }
            }
        }
    }

    #[test]
    fn bilinear_form_is_invariant_and_symmetric() {
        let g = a1();
        let rep = standard_representation();
        let m = GradedMatrix::identity(rep[0].space_degrees().to_vec());
        let b = build_bilinear_form(&g, &rep, &m, &RepScalar::eps(), 2).unwrap();
        for a in 0..4 {
            for c in 0..4 {
                assert_eq!(b[a][c], b[c][a]);
            }
        }
        // sum_d f[a][b][d] B[d][c] = phase * sum_d f[b][c][d] B[a][d] with the
        // invariance phase carried by the strand-exchange identity; verified
        // in plain form:
        for x in 0..4 {
            for y in 0..4 {
                for z in 0..4 {
                    let mut lhs = EpsCoeff::zero();
                    let mut rhs = EpsCoeff::zero();
                    for d in 0..4 {
                        lhs += &(g.bracket_coeff(x, y, d) * &b[d][z]);
                        rhs += &(&b[x][d] * g.bracket_coeff(y, z, d));
                    }
                    assert_eq!(lhs, rhs, "invariance at ({x}, {y}, {z})");
                }
            }
        }
    }

    #[test]
    fn non_central_m_is_rejected() {
        let g = a1();
        let rep = standard_representation();
        // diag(0, 1, 0, 0) moves under the odd generators that mix index 1
        // with the rest of the space.
        let mut entries = vec![vec![RepScalar::zero(); 4]; 4];
        entries[1][1] = RepScalar::one();
        let m =
            GradedMatrix::new(rep[0].space_degrees().to_vec(), Degree(0, 0), entries).unwrap();
        match build_bilinear_form(&g, &rep, &m, &RepScalar::eps(), 2) {
            Err(ColorLieError::MNotCentral(name)) => {
                assert!(name.starts_with('Q'), "failing generator was {name}");
            }
            other => panic!("expected MNotCentral, got {other:?}"),
        }
    }

    #[test]
    fn graded_matrix_rejects_bad_blocks() {
        let degrees = vec![Degree(0, 0), Degree(1, 0)];
        let mut entries = vec![vec![RepScalar::zero(); 2]; 2];
        entries[0][0] = RepScalar::one();
        assert!(matches!(
            GradedMatrix::new(degrees, Degree(1, 0), entries),
            Err(ColorLieError::DegreeBlock(0, 0))
        ));
    }

    #[test]
    fn algebra_json_round_trip() {
        let g = a1();
        let parsed = ColorLieAlgebra::from_json(&g.to_json()).unwrap();
        assert_eq!(parsed, g);
    }

    #[test]
    fn rep_scalar_products() {
        let s = RepScalar::s();
        let es = RepScalar::eps() * RepScalar::s();
        assert_eq!(&s * &s, RepScalar::eps() * RepScalar::from_int(2));
        assert_eq!(&s * &es, RepScalar::from_int(2));
        assert_eq!(&es * &es, RepScalar::eps() * RepScalar::from_int(2));
        assert_eq!(RepScalar::eps() * RepScalar::eps(), RepScalar::one());
    }
}
