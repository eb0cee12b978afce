//! Exponentials and logarithms built from exact rational arithmetic.
//!
//! Every irrational quantity is returned as an [`Interval`] with rational
//! endpoints that is guaranteed to contain the true value. Nothing in the
//! crate uses floating point.

pub mod crosscheck;
pub mod error;
pub mod euler;
pub mod exact;
pub mod figures;
pub mod inequalities;
pub mod lcg;
pub mod logarithm;
pub mod powers;
pub mod quadrature;
pub mod verdict;

pub use error::{Error, Result};
pub use euler::{compute_e, exp_pow, exp_series, EulerEnclosure};
pub use exact::{nth_root, to_decimal, Interval, Precision, Rational};
pub use logarithm::{ln_enclosure, log_enclosure, LnEnclosure};
pub use powers::{pow_interval_base, pow_rat, PosRational};
pub use quadrature::ln_integral;
pub use verdict::Verdict;
