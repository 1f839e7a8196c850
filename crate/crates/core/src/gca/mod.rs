//! Free graded-commutative algebras over the rationals: normalized monomials
//! with Koszul signs, elements, derivations, algebra maps and module maps.

pub mod algebra;
pub mod derivation;
pub mod element;
pub mod generator;
pub mod module_map;
pub mod monomial;
pub mod morphism;

pub use algebra::FreeGca;
pub use derivation::Derivation;
pub use element::{rational, Element};
pub use generator::{Generator, Provenance};
pub use module_map::ModuleMorphism;
pub use monomial::Monomial;
pub use morphism::AlgebraMorphism;
