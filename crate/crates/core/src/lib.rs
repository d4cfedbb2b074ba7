//! Exact arithmetic for the r-fold binomial transform of k-Lucas and
//! k-Fibonacci sequences.
//!
//! The crate computes terms of the transformed sequences from their order-2
//! recurrence, checks them against the literal binomial-sum definition, and
//! verifies the closed-form companions (Binet formula in `Q(√(k²+4))`,
//! partial sums, rational generating function, Lucas/Fibonacci relation)
//! with exact integer equality.
//!
//! ```
//! use ibt_core::{iterated_lucas_spec, TransformParams};
//!
//! let params = TransformParams::new(1, 1).unwrap();
//! let spec = iterated_lucas_spec(&params);
//! assert_eq!(spec.terms(5), [2, 3, 7, 18, 47].map(Into::into));
//! ```

pub mod cli;
mod error;
pub mod identities;
pub mod quadfield;
pub mod recurrences;
pub mod series;
pub mod transform;

pub use error::{Error, Result};
pub use identities::{
    lucas_from_fibonacci, sum_closed_form, sum_direct, verify_grid, Grid, IdentityId,
    VerificationReport,
};
pub use quadfield::{binet_term, char_roots, QuadElement, Rational};
pub use recurrences::{k_fibonacci_spec, k_lucas_spec, Modulus, SequenceSpec};
pub use series::{gf_expand, PowerSeries};
pub use transform::{
    binomial_transform, iterate_transform, iterated_fibonacci_spec, iterated_lucas_spec,
    lemma_step, TransformParams,
};
