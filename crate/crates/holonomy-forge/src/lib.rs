//! Exact-arithmetic verification toolkit for the algebra underlying compact
//! manifolds with exceptional holonomy.
//!
//! The library covers five areas, each in its own module:
//!
//! * [`forms`] — exterior algebra over ℝⁿ with rational coefficients, the
//!   Euclidean Hodge star, pullbacks, and the canonical G2 / Spin(7) / SU(m)
//!   structure forms together with the cross identities relating them.
//! * [`orbifold`] — finite groups of affine isometries of the torus
//!   Tⁿ = ℝⁿ/ℤⁿ: group closure, structure preservation, fixed loci via Smith
//!   normal form, and orbit classification of the singular set.
//! * [`resolution`] — local models of quotient singularities, crepant
//!   resolution data for the exceptional sets, and Betti-number bookkeeping
//!   for the resolved manifolds.
//! * [`estimates`] — a symbolic order-of-growth calculus in powers of a small
//!   parameter t, used to check that the torsion-decay data of a glued
//!   structure meets the hypotheses of the deformation theorem and that the
//!   inductive estimate system closes.
//! * [`spin7`] — the quaternionic order-8 subgroup of Spin(7), its two
//!   complex frames, and exact verification of a Calabi–Yau 4-orbifold in a
//!   weighted projective space (singular points, antiholomorphic involution,
//!   canonical-bundle degree test, holonomy outcome rule).
//!
//! All arithmetic is exact: rational numbers everywhere, extended by the 12th
//! root of unity where complex constants are needed. Every value is immutable
//! after construction and every operation is pure, so the whole API is safe
//! to use from multiple threads.

pub mod assets;
pub mod estimates;
pub mod findings;
pub mod forms;
pub mod io;
pub mod mat;
pub mod orbifold;
pub mod rat;
pub mod resolution;
pub mod snf;
pub mod spin7;

pub use rat::Rational;
