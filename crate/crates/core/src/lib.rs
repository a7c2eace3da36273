//! Exact computations with commutative differential graded algebras over the
//! rationals: cohomology, cup products, Poincaré pairings, triple Massey
//! products with their indeterminacy, and minimal models.

pub mod algebra;
pub mod cli;
pub mod cohomology;
pub mod linalg;
pub mod massey;
pub mod minimal;
pub mod model_io;
pub mod scenarios;

pub use algebra::{Algebra, Dga, Element, Monomial, Rational};
pub use cohomology::Cohomology;
