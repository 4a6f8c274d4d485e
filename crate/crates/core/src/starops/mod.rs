//! Semistar operations over a fixed base domain: construction, certified
//! evaluation, quasi-ideal tests and comparison.

mod apply;
mod axioms;
mod certified;
mod eab;
mod op;
mod quasi;

pub use axioms::{check_axioms, AxiomReport};
pub use certified::{Budget, CertifiedValue, Mode};
pub use eab::{default_eab_pool, eab_approx};
pub use op::{Flags, KnownQMax, OpError, OpKind, PolyExtension, SemistarOp, DEFAULT_POOL_NORM};
pub use quasi::{compare, qmax, quasi_ideal_test, value_subset, Comparison, Order, QMaxReport, Tri};
