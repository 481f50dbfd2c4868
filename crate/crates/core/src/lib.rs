//! Difference-driven enumeration of Pythagorean triples and n-tuples.
//!
//! Every solution of `a² + b² = c²` with a fixed leg `a` is pinned down by the
//! gap `Δ = c − b`: `Δ` divides `a²`, `Δ < a`, and `Δ` has the same parity as
//! `a²/Δ`. The same idea completes a list of legs `a_1..a_{n−2}` into an n-tuple
//! using `k = Σ a_i²` in place of `a²` and `Δ² < k` as the bound.
//!
//! Modules:
//! - [`numeric`]: exact integers, factorization and bounded divisor enumeration.
//! - [`triple`]: triples with a given leg, primitivity prediction and forecasts.
//! - [`tuple`]: n-tuple completions of a list of legs.
//! - [`chain`]: arbitrarily long tuples grown from a single seed.
//! - [`verify`]: differential sweeps against brute-force oracles.

pub mod chain;
pub mod corpus;
mod error;
pub mod numeric;
pub mod par;
pub mod triple;
pub mod tuple;
pub mod verify;

pub use error::{DeltaViolation, Error, Result};
pub use numeric::{FactorBudget, Factorization, Natural, ParityRule};
pub use par::Execution;

/// Primitivity of a solution: primitive iff the gcd of all its entries is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Classification {
    Primitive,
    NonPrimitive,
}

impl Classification {
    pub fn from_gcd(gcd: &Natural) -> Self {
        if num_traits::One::is_one(gcd) {
            Classification::Primitive
        } else {
            Classification::NonPrimitive
        }
    }

    pub fn is_primitive(self) -> bool {
        self == Classification::Primitive
    }
}

/// Which classes an enumeration keeps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ClassFilter {
    #[default]
    All,
    PrimitiveOnly,
    NonPrimitiveOnly,
}

impl ClassFilter {
    pub fn admits(self, class: Classification) -> bool {
        match self {
            ClassFilter::All => true,
            ClassFilter::PrimitiveOnly => class == Classification::Primitive,
            ClassFilter::NonPrimitiveOnly => class == Classification::NonPrimitive,
        }
    }
}
