//! Index valuations, Newton polygons and monogeneity certificates for pure
//! number fields `Q(m^(1/n))`.
//!
//! The crate computes `ν_p((Z_K : Z[α]))` for `α` a root of `x^n - m` through
//! `φ`-Newton polygons (first order and a restricted second order), decides
//! integral closedness of `Z[α]`, and issues verified common-index-divisor
//! certificates of non-monogeneity. An independent p-maximal order
//! computation ([`oracle`]) serves as ground truth.

pub mod arith;
pub mod error;
pub mod newton;
pub mod oracle;
pub mod ore;
pub mod poly;
pub mod pure;
pub mod report;
pub mod second_order;

pub use arith::{Prime, Valuation};
pub use error::{Error, Result};
pub use poly::IntPoly;
