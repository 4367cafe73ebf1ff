//! Characters of `Z/2pnZ`, the distinct-coordinate sieve, cycle-index polynomials, character
//! sums over the exponent set, and the character formula for the alternating subset count
//! `N_D(b)`.
//!
//! Exact quantities stay in [`BigRational`](num_rational::BigRational) or
//! [`BigInt`](num_bigint::BigInt). Quantities that need roots of unity are evaluated in
//! certified [`ComplexBall`](crate::ball::ComplexBall)s and, when the answer is known to be an
//! integer, rounded only after the enclosure proves the rounding.

mod formula;
mod sieve;
mod subsets;
mod sums;
mod zpoly;

pub use formula::{
    lemma_d_product, n_d_char_formula, n_d_char_formula_all, n_d_main_term, order_p_factor,
    LemmaDProduct, MainTermND, OrderPFactor,
};
pub use sieve::{
    distinct_side, li_wan_check, li_wan_symmetric, permutation_side, permutation_side_exhaustive,
    set_partitions, SieveInstance, MAX_SIEVE_M,
};
pub use subsets::{
    n_d_alternating, n_d_alternating_all_brute, n_d_alternating_all_fold, n_d_alternating_brute,
    n_d_alternating_fold, n_d_subsets_brute, MAX_SUBSET_BITS,
};
pub use sums::{s_m_chi_brute, s_m_chi_closed, MAX_BRUTE_D, MAX_BRUTE_M};
pub use zpoly::{
    binom_product_coeff, binom_series_coeff, cycle_types, generalized_binomial, periodic_t,
    power_sum_t, z_m, z_m_by_cycle_types, z_series, CycleType,
};

use num_integer::Integer;

use crate::ball::{ComplexBall, RootTable};
use crate::borwein::BorweinParams;
use crate::error::{Error, Result};

/// Extra fractional bits carried internally beyond the requested working precision.
pub(crate) const GUARD_BITS: u32 = 32;

/// Working precision and rounding tolerance for certified complex evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrecisionPolicy {
    bits: u32,
    residual_tol: f64,
}

impl PrecisionPolicy {
    pub const MAX_TOL: f64 = 1.0 / (1u64 << 20) as f64;

    pub fn new(bits: u32, residual_tol: f64) -> Result<Self> {
        if bits < 64 {
            return Err(Error::InvalidArgument(format!("precision {bits} bits is below 64")));
        }
        if !(residual_tol > 0.0 && residual_tol <= Self::MAX_TOL) {
            return Err(Error::InvalidArgument(format!(
                "residual tolerance {residual_tol:e} must lie in (0, 2^-20]"
            )));
        }
        Ok(PrecisionPolicy { bits, residual_tol })
    }

    /// `max(128, ceil(sn log2 p) + 64)` bits, tolerance `2^-20`.
    pub fn for_params(params: &BorweinParams) -> Self {
        let mag = (params.sn() as f64 * (params.p() as f64).log2()).ceil() as u32;
        PrecisionPolicy {
            bits: (mag + 64).max(128),
            residual_tol: Self::MAX_TOL,
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn residual_tol(&self) -> f64 {
        self.residual_tol
    }

    pub fn with_bits(self, bits: u32) -> Result<Self> {
        Self::new(bits, self.residual_tol)
    }

    pub fn with_tol(self, tol: f64) -> Result<Self> {
        Self::new(self.bits, tol)
    }

    /// Precisions tried in order: the base, then doubled up to four times the base.
    pub fn escalation(&self) -> [u32; 3] {
        [self.bits, self.bits * 2, self.bits * 4]
    }

    /// Runs `eval` at increasing precision until its reported residual is below the
    /// tolerance.
    pub(crate) fn certify<T>(&self, mut eval: impl FnMut(u32) -> (T, f64)) -> Result<T> {
        let mut last = (0, f64::INFINITY);
        for bits in self.escalation() {
            let (value, residual) = eval(bits + GUARD_BITS);
            if residual < self.residual_tol {
                return Ok(value);
            }
            last = (bits, residual);
        }
        Err(Error::PrecisionExhausted {
            bits: last.0,
            residual: last.1,
        })
    }
}

/// The character `x -> exp(2 pi i t x / g)` of `Z/gZ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    group_order: u64,
    index: u64,
}

impl Character {
    pub fn new(group_order: u64, index: u64) -> Result<Self> {
        if group_order == 0 {
            return Err(Error::InvalidArgument("group order must be positive".into()));
        }
        Ok(Character {
            group_order,
            index: index % group_order,
        })
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// Least `o >= 1` with `o t ≡ 0 (mod g)`.
    pub fn order(&self) -> u64 {
        self.group_order / self.index.gcd(&self.group_order)
    }

    /// Exponent `e` with `chi(x) = exp(2 pi i e / g)`.
    pub fn exponent_at(&self, x: i64) -> i64 {
        let g = self.group_order as i128;
        ((self.index as i128 * x as i128).rem_euclid(g)) as i64
    }

    pub fn value(&self, x: i64, roots: &RootTable) -> ComplexBall {
        debug_assert_eq!(roots.order(), self.group_order);
        roots.get(self.exponent_at(x)).clone()
    }

    /// `chi^k`.
    pub fn pow(&self, k: u64) -> Character {
        Character {
            group_order: self.group_order,
            index: ((self.index as u128 * k as u128) % self.group_order as u128) as u64,
        }
    }
}

/// All characters of `Z/gZ`, sorted by index.
pub fn characters(group_order: u64) -> Vec<Character> {
    (0..group_order)
        .map(|index| Character { group_order, index })
        .collect()
}
