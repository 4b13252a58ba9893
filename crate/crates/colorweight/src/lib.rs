//! Universal weight systems of chord and Jacobi diagrams from a minimal
//! doubly graded color Lie algebra.
//!
//! A chord diagram records the pairing of a knot's double points along its
//! parameterizing circle; weight systems turn such diagrams into numbers (here:
//! exact polynomials) subject to the four-term relation, and their values
//! determine Vassiliev invariants up to lower-order terms. This crate evaluates
//! the universal weight system attached to the smallest nontrivial
//! `Z2 x Z2`-graded Lie algebra: a four-dimensional algebra spanned by a
//! central even element `H` and three pairwise anticommuting odd elements
//! `Q1, Q2, Q3`, with a sign parameter `e` (`e^2 = 1`) in the structure
//! constants. Weights land in the polynomial ring over the two central
//! generators: the Casimir `c` and `y = c - H^2`.
//!
//! Two independent evaluation paths are implemented and cross-validated:
//!
//! * a closed recurrence that removes one chord at a time, expressing the
//!   weight through diagrams of lower order ([`weights`]), and
//! * a brute-force oracle that cuts the circle open, sums the `4^n` basis
//!   labelings of the chords, and normal-orders the resulting word in the
//!   universal enveloping algebra ([`envelope`]).
//!
//! Supporting modules: exact coefficients and center polynomials ([`poly`]),
//! diagram combinatorics with STU resolution and four-term quadruples
//! ([`diagram`]), and the algebra axioms, graded representation, and invariant
//! bilinear form machinery ([`colorlie`]).

pub mod colorlie;
pub mod diagram;
pub mod envelope;
pub mod poly;
pub mod report;
pub mod weights;
