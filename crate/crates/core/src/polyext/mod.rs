//! Finitely generated D[X]-ideals through degree slices, content ideals,
//! and operations on D[X] built from semistar operations of D.

mod content;
mod integral;
mod localize;
mod operator;
mod polyideal;
mod probes;
mod qmax;
mod triangle;

pub use content::{content, content_power_sum_check, dedekind_mertens_check, interleave};
pub use localize::{b_wedge, maximal_domain, spectral_primes, CurlyStable, Nagata, PolyIdentity, PolyRing, PolyTrivial, WedgeOverring};
pub use operator::{PolyBudget, PolyOperator, SliceValue};
pub use polyideal::{content_of, multiples_span, poly_module, PolyIdeal, Slice};
pub use triangle::{contraction_op, Contraction, OverTag, Triangle};
pub use integral::{b_membership_certificate, candidate_valuations, BCertificate};
pub use qmax::{classify_poly_qmax, pair_closes, PolyPrime, PolyQmaxEntry};
pub use probes::{
    eab_extension_check, extend_certified, family, finite_type_failure_probe, irreducible_list, strict_extension_check,
    strict_family_probe, EabCheck, FamilyMember, FamilyProbe, FiniteTypeProbe, LocalRing, RatFunc, StrictReport, StrictVerdict,
};
