//! Semistar operations on finitely generated fractional ideals over ℤ and
//! quadratic orders, together with their extensions to polynomial rings.

pub mod exactnum;
pub mod lattice;
pub mod domain;
pub mod starops;
pub mod polyext;
pub mod harness;
