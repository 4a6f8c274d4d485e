//! Concrete base domains: ℤ and quadratic orders, their primes,
//! localizations, and explicit valuations.

mod module;
mod order;
mod primes;
mod valuation;

pub use module::{saturate, ModuleError, ModuleValue, Space};
pub use order::{Domain, DomainKind, OrderDomain};
pub use primes::{PrimeError, PrimeIdeal, PrimeSummary};
pub use valuation::{in_extension, is_star_valuation_overring, ExtQ, Valuation, ValuationSummary};
