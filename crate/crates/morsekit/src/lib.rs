//! Discrete Morse theory toolkit.
//!
//! Simplicial complexes with facet/cofacet incidence, discrete gradients and
//! their validation, collapsibility and erasability of 2-complexes, a
//! logarithmic-factor approximation for Morse matchings, a compiler from
//! monotone circuits to 2-complexes whose optimal matchings encode minimum
//! satisfying weight, and random complex models with probabilistic gradient
//! constructions.

pub mod approx;
pub mod circuit;
pub mod collapse;
pub mod complex;
pub mod erase;
pub mod experiment;
pub mod gadget;
pub mod gradient;
pub mod homology;
pub mod random;
pub mod reduction;

pub use complex::{ComplexBuilder, PointedComplex, Simplex, SimplicialComplex, Vertex};
pub use gradient::{DiscreteGradient, GradientViolation, MorseVector};
