//! Word calculus, growth and entropy of weighted free products `A * B`,
//! together with the systole, diastole and volume bounds that entropy and
//! diameter control.
//!
//! Numeric code is generic over the scalar type (`f32`, `f64`); letter
//! lengths may also be exact rationals, which is what lattice counting uses.
//! The aliases below fix the common choices.

pub mod bounds;
pub mod classify;
pub mod entropy;
pub mod error;
pub mod factors;
pub mod growth;
pub mod scenarios;
pub mod solver;
pub mod words;

pub use classify::SubgroupClass;
pub use error::{Error, Result};
pub use factors::{CayleyTable, FactorElement, FactorKind, FactorSpec, Length, LengthAssignment, Side};
pub use growth::{GrowthTable, PoincareEvaluation, WeightedFreeProduct, WeightedGenSet};
pub use words::{CyclicDecomposition, FreeProduct, ReducedWord};

/// Exact letter length.
pub type Rational = num_rational::Rational64;

pub type EntropySolutionF64 = entropy::EntropySolution<f64>;
pub type CriticalExponentF64 = entropy::CriticalExponent<f64>;
pub type Ex55 = scenarios::Ex55Result<f64>;
pub type Ex54 = scenarios::Ex54Result<f64>;
pub type RealWeighted = WeightedFreeProduct<f64>;
pub type RationalWeighted = WeightedFreeProduct<Rational>;
