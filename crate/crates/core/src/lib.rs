//! Exact Bernoulli and Euler numbers, Bernoulli polynomials over the
//! rationals, and machine-checked inequalities about them.
//!
//! Everything that can be decided in exact rational arithmetic is: zero
//! counts come from Sturm chains and monotonicity from Wronskian sign
//! certificates. Quantities involving `pi`, `sin` or `cot` are enclosed in
//! rational intervals whose precision is raised until a comparison is
//! decided.

pub mod bernoulli;
pub mod certify;
#[cfg(feature = "cli")]
pub mod cli;
pub mod enclosure;
pub mod exact;
pub mod inequalities;
mod par;
pub mod roots;
