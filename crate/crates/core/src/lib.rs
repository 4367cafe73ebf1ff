//! Exact arithmetic-progression sums of the coefficients of Borwein-type polynomials
//!
//! ```text
//! prod_{j=1}^{n} prod_{k=1}^{p-1} (1 - q^{pj-k})^s = sum_i a_i q^i
//! ```
//!
//! together with the machinery used to bound them: the shifted Laurent form, alternating
//! subset counts over the exponent set `D`, characters of `Z/2pnZ`, the distinct-coordinate
//! sieve, and certified root-of-unity arithmetic.
//!
//! Sums `S_{d,b} = sum_{i ≡ b (mod d)} a_i` are available three ways (dense expansion,
//! cyclic fold, and the character formula), and every comparison against a bound is decided
//! in exact integer arithmetic.
//!
//! ```
//! use borwein::{borwein::BorweinParams, progsum};
//!
//! let params = BorweinParams::new(3, 1, 1).unwrap();
//! let sums = progsum::progression_sums(&params, 6).unwrap();
//! assert_eq!(sums, [1, -1, -1, 1, 0, 0].map(num_bigint::BigInt::from));
//! ```

pub mod ball;
pub mod borwein;
pub mod charsieve;
pub mod cli;
pub mod error;
pub mod polyarith;
pub mod progsum;

pub use crate::borwein::BorweinParams;
pub use crate::error::{Error, Result};
pub use crate::polyarith::{CyclicPoly, DensePoly, LaurentPoly};
