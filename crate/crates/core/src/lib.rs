//! Weber class invariants at CM points, exactly.
//!
//! This crate evaluates the Weber modular functions at CM points of
//! admissible discriminants (D = 1 mod 8, 3 not dividing D) to arbitrary
//! precision, assembles the exact minimal polynomials of the class
//! invariants, and verifies that the prime factorizations of their
//! discriminants and resultants match the closed-form valuation predictions
//! built from ideal-counting functions and local Whittaker values.
//!
//! The pipeline has two independent halves that the CLI compares:
//!
//! * numeric-exact: eta products -> class invariants -> integer minimal
//!   polynomials -> exact discriminants/resultants -> factorization;
//! * arithmetic: class groups and ideal counts -> per-prime predicted
//!   valuations.
//!
//! See the book under `book/` for a guided tour.

pub mod arith;
pub mod bigfloat;
pub mod classpoly;
pub mod localdensity;
pub mod predictions;
pub mod webereval;
pub mod quadorders;

pub use arith::FactorizationMap;
pub use quadorders::{ClassGroup, Discriminant, QuadClass};
