//! Littlewood–Paley frames, smoothness-space norms and almost-diagonal operators
//! on finite metric-measure spaces carrying a nonnegative self-adjoint operator.
//!
//! The crate is organised bottom-up:
//!
//! * [`space`]: models, doubling measurement, maximal nets, counting lemmas.
//! * [`calculus`]: spectral functional calculus, cutoffs, localization.
//! * [`frames`]: primal and dual frames, band-limited approximants, compact frames.
//! * [`seqspace`]: function and sequence norms, maximal operator, Hardy sums.
//! * [`addiag`]: decay weights, almost-diagonal norms, composition, inversion.
//! * [`molecules`]: molecule and atom validators, Gram matrices, decompositions.
//! * [`multiplier`]: Mihlin symbols and multiplier boundedness.
//! * [`harness`]: configuration, suite catalogue and report writing.

// `!(x > 0.0)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod addiag;
pub mod calculus;
pub mod error;
pub mod frames;
pub mod harness;
pub mod linalg;
pub mod molecules;
pub mod multiplier;
pub mod seqspace;
pub mod space;

pub use error::{Error, Result};
