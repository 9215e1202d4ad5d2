//! Exact verification of q-binomial sum identities, positivity and
//! divisibility claims, with the q = 1 integer layer as a cross-check.

pub mod check;
pub mod exact;
pub mod qcore;
pub mod sums;
pub mod andrews;
pub mod schmidt;
pub mod numeric;
pub mod conjectures;

pub use check::{CheckResult, Outcome, Param, Witness};
pub use exact::{LaurentPoly, NotDivisible, Rational};
pub use qcore::{qbinom, qfac, QBinomTable};
pub use sums::{alt_sum, normalized_sum, SumSpec};
