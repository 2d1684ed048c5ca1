//! Exact arithmetic for the three metrical geometries of the plane.
//!
//! The affine plane over a field of characteristic other than two carries
//! three natural quadratic forms. Each induces its own notion of
//! *quadrance* (squared separation), *spread* (squared inclination between
//! lines), perpendicularity, and conic theory:
//!
//! * **blue**: `Q(a, b) = a^2 + b^2`, the familiar Euclidean form;
//! * **red**:  `Q(a, b) = a^2 - b^2`, the hyperbolic form;
//! * **green**: `Q(a, b) = 2ab`, the hyperbolic form in null coordinates.
//!
//! Working with all three at once is surprisingly fruitful: the theorems of
//! rational trigonometry hold verbatim in each, and the three interact
//! through identities such as `Q_blue^2 = Q_red^2 + Q_green^2`. This crate
//! computes in that setting exactly, with no floating point anywhere in the
//! mathematical core.
//!
//! ## Modules
//!
//! * [`field`] — the scalar tower: arbitrary-precision rationals, odd prime
//!   fields, and dynamically built quadratic extensions `K(√d)` of either,
//!   nested to any depth, with canonical forms and exact square roots.
//! * [`metric`] — points, lines, and the color-indexed quadrance, spread,
//!   perpendicularity, and altitude constructions.
//! * [`trig`] — triangles and the laws relating their quadrances and
//!   spreads, uniformly across the three colors.
//! * [`conics`] — conics as symmetric matrices: pole/polar duality,
//!   tangency, focus/directrix constructions, and the chromatic conic
//!   analyses (grammolas, quadrolas, and the three-fold structure of
//!   parabolas).
//! * [`explorer`] — a deterministic randomized checker that hunts for
//!   counterexamples to the laws over any supported field and produces
//!   replayable reports.
//!
//! ## Exactness
//!
//! Every operation is exact. Equality of scalars is structural equality of
//! canonical forms, so two computations of the same quantity agree to the
//! bit. When a construction genuinely leaves the current field (say, a line
//! meeting a conic where the relevant discriminant has no square root), the
//! crate extends the field by exactly the square root required and reports
//! the tower it built.

#![forbid(unsafe_code)]
#![warn(missing_docs)]
#![deny(clippy::float_arithmetic)]

pub mod conics;
pub mod explorer;
pub mod field;
pub mod metric;
pub mod trig;

pub use field::{Field, FieldElement, FieldError};
pub use metric::{Color, Line, Point, Vec2};
