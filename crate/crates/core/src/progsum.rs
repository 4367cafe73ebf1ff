//! Coefficient sums over arithmetic progressions, their main terms, and the bounds they are
//! compared against.
//!
//! Every verdict is exact: bounds of the form `p^{e/2}` are compared by squaring, so no
//! floating point enters a pass/fail decision.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed, Zero};

use crate::borwein::{borwein_poly, is_prime, shift_data, BorweinParams};
use crate::charsieve::{n_d_char_formula_all, PrecisionPolicy};
use crate::error::{Error, Result};
use crate::polyarith::{reduce_cyclic, CyclicPoly};

/// `p - 1` if `p | b`, else `-1`.
pub fn v_of(b: i64, p: u64) -> i64 {
    if b.rem_euclid(p as i64) == 0 {
        p as i64 - 1
    } else {
        -1
    }
}

fn check_modulus(d: u64) -> Result<usize> {
    if d == 0 {
        return Err(Error::InvalidArgument("modulus d must be positive".into()));
    }
    Ok(d as usize)
}

/// All `S_{d,b}`, `0 <= b < d`, by folding each factor `1 - q^m` into the ring modulo
/// `q^d - 1`. The dense product is never formed.
pub fn progression_sums(params: &BorweinParams, d: u64) -> Result<Vec<BigInt>> {
    let d = check_modulus(d)?;
    let mut acc = CyclicPoly::one(d);
    let p = params.p();
    for j in 1..=params.n() {
        for k in 1..p {
            for _ in 0..params.s() {
                acc.mul_one_minus_monomial((p * j - k) as i64);
            }
        }
    }
    Ok(acc.into_coeffs())
}

pub fn progression_sum(params: &BorweinParams, d: u64, b: i64) -> Result<BigInt> {
    let sums = progression_sums(params, d)?;
    Ok(sums[b.rem_euclid(d as i64) as usize].clone())
}

/// All `S_{d,b}` from the full dense expansion.
pub fn progression_sums_dense(params: &BorweinParams, d: u64) -> Result<Vec<BigInt>> {
    let d = check_modulus(d)?;
    Ok(reduce_cyclic(&borwein_poly(params), d).into_coeffs())
}

/// All `S_{2pn,b}` through the shifted Laurent product: `S_{2pn,b} = sign N_D(b - e)`, with
/// `N_D` taken from the character formula.
pub fn progression_sums_via_characters(
    params: &BorweinParams,
    policy: &PrecisionPolicy,
) -> Result<Vec<BigInt>> {
    let nd = n_d_char_formula_all(params, policy)?;
    let g = nd.len() as i64;
    let shift = shift_data(params);
    let e = (shift.e % g as u64) as i64;
    Ok((0..g)
        .map(|b| &nd[(b - e).rem_euclid(g) as usize] * shift.sign)
        .collect())
}

/// Right-hand side of a deviation bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    /// `base^{exp/2}`, possibly irrational.
    SqrtPow { base: u64, exp: u64 },
    Exact(BigRational),
}

impl Bound {
    /// Whether `|x| <= self`, decided exactly.
    pub fn admits(&self, x: &BigRational) -> bool {
        match self {
            Bound::SqrtPow { base, exp } => {
                let lhs = x * x;
                let rhs = BigInt::from(*base).pow(*exp);
                lhs <= BigRational::from_integer(rhs)
            }
            Bound::Exact(r) => &x.abs() <= r,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::SqrtPow { base, exp } if exp % 2 == 0 => {
                write!(f, "{}", BigInt::from(*base).pow(exp / 2))
            }
            Bound::SqrtPow { base, exp } => write!(f, "{base}^({exp}/2)"),
            Bound::Exact(r) => write!(f, "{}", render_rational(r)),
        }
    }
}

/// One progression sum compared with its main term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgressionRecord {
    pub params: BorweinParams,
    pub d: u64,
    pub b: u64,
    pub sum: BigInt,
    pub main_term: BigRational,
    pub bound: Bound,
    pub within_bound: bool,
}

impl ProgressionRecord {
    fn new(params: BorweinParams, d: u64, b: i64, sum: BigInt, bound: Bound) -> Self {
        let main_term = main_term(&params, d, b);
        let dev = BigRational::from_integer(sum.clone()) - &main_term;
        let within_bound = bound.admits(&dev);
        ProgressionRecord {
            params,
            d,
            b: b.rem_euclid(d as i64) as u64,
            sum,
            main_term,
            bound,
            within_bound,
        }
    }

    /// `S - main`.
    pub fn deviation(&self) -> BigRational {
        BigRational::from_integer(self.sum.clone()) - &self.main_term
    }
}

/// `v(b) p^{sn} / d`.
pub fn main_term(params: &BorweinParams, d: u64, b: i64) -> BigRational {
    let num = BigInt::from(v_of(b, params.p())) * BigInt::from(params.p()).pow(params.sn());
    BigRational::new(num, BigInt::from(d))
}

/// `p^{sn/2}`.
pub fn gp_bound(params: &BorweinParams) -> Bound {
    Bound::SqrtPow {
        base: params.p(),
        exp: params.sn(),
    }
}

/// `2^n`, the bound for `p = 3`, `s = 1`, `d = 3n`.
pub fn li_bound(n: u64) -> BigInt {
    BigInt::from(2).pow(n)
}

fn records_at(params: &BorweinParams, d: u64, bound: Bound) -> Result<Vec<ProgressionRecord>> {
    let sums = progression_sums(params, d)?;
    Ok(sums
        .into_iter()
        .enumerate()
        .map(|(b, s)| ProgressionRecord::new(*params, d, b as i64, s, bound.clone()))
        .collect())
}

/// `|S_{2pn,b} - v(b) p^{sn} / 2pn| <= p^{sn/2}` for one residue.
pub fn theorem_main_check(params: &BorweinParams, b: i64) -> Result<ProgressionRecord> {
    let d = params.group_order();
    let s = progression_sum(params, d, b)?;
    Ok(ProgressionRecord::new(*params, d, b, s, gp_bound(params)))
}

/// [`theorem_main_check`] for every residue modulo `2pn`, sharing one fold.
pub fn theorem_main_records(params: &BorweinParams) -> Result<Vec<ProgressionRecord>> {
    records_at(params, params.group_order(), gp_bound(params))
}

/// Same comparison at modulus `pn`.
pub fn gp_check(params: &BorweinParams, b: i64) -> Result<ProgressionRecord> {
    let d = params.p() * params.n();
    let s = progression_sum(params, d, b)?;
    Ok(ProgressionRecord::new(*params, d, b, s, gp_bound(params)))
}

pub fn gp_records(params: &BorweinParams) -> Result<Vec<ProgressionRecord>> {
    records_at(params, params.p() * params.n(), gp_bound(params))
}

fn require_li(params: &BorweinParams) -> Result<()> {
    if params.p() != 3 || params.s() != 1 {
        return Err(Error::InvalidArgument(format!(
            "the 2^n comparison needs p = 3, s = 1, got {params}"
        )));
    }
    Ok(())
}

/// `|S_{3n,b} - v(b) 3^n / 3n| <= 2^n` (only for `p = 3`, `s = 1`).
pub fn li_check(params: &BorweinParams, b: i64) -> Result<ProgressionRecord> {
    require_li(params)?;
    let d = 3 * params.n();
    let s = progression_sum(params, d, b)?;
    let bound = Bound::Exact(BigRational::from_integer(li_bound(params.n())));
    Ok(ProgressionRecord::new(*params, d, b, s, bound))
}

pub fn li_records(params: &BorweinParams) -> Result<Vec<ProgressionRecord>> {
    require_li(params)?;
    let bound = Bound::Exact(BigRational::from_integer(li_bound(params.n())));
    records_at(params, 3 * params.n(), bound)
}

/// `(p-1)(q-1) p^{s[n/q]-1} 2^{sq(p-1){n/q}} / q`. The exponent `q {n/q}` is `n mod q`, so
/// the value is rational. Needs `q` prime with `q <= n`; `q = p` is evaluated but
/// [`zaharescu_records`] refuses it.
pub fn zaharescu_bound(p: u64, q: u64, s: u64, n: u64) -> Result<BigRational> {
    BorweinParams::new(p, s, n)?;
    if !is_prime(q) || q > n {
        return Err(Error::InvalidArgument(format!(
            "q = {q} must be a prime with q <= n = {n}"
        )));
    }
    let num = BigInt::from((p - 1) * (q - 1))
        * BigInt::from(p).pow(s * (n / q))
        * BigInt::from(2).pow(s * (p - 1) * (n % q));
    Ok(BigRational::new(num, BigInt::from(p * q)))
}

/// Records at modulus `pq` against [`zaharescu_bound`].
pub fn zaharescu_records(params: &BorweinParams, q: u64) -> Result<Vec<ProgressionRecord>> {
    if q == params.p() {
        return Err(Error::InvalidArgument(format!("q must differ from p = {q}")));
    }
    let bound = zaharescu_bound(params.p(), q, params.s(), params.n())?;
    records_at(params, params.p() * q, Bound::Exact(bound))
}

/// Largest `|S - main|` over the records.
pub fn max_deviation(records: &[ProgressionRecord]) -> BigRational {
    records
        .iter()
        .map(|r| r.deviation().abs())
        .max()
        .unwrap_or_else(BigRational::zero)
}

/// Least `n >= 1` with `(p-1) p^{sn/2-1} > 2n` (divisible case) or `p^{sn/2-1} > 2n`,
/// decided after squaring and clearing the `p^{-2}`.
pub fn corollary_threshold(p: u64, s: u64, divisible: bool) -> Result<u64> {
    BorweinParams::new(p, s, 1)?;
    let c = if divisible { BigInt::from(p - 1).pow(2u32) } else { BigInt::from(1) };
    let p2 = BigInt::from(p * p);
    let mut n = 1u64;
    loop {
        let lhs = &c * BigInt::from(p).pow(s * n);
        let rhs = BigInt::from(4 * n * n) * &p2;
        if lhs > rhs {
            return Ok(n);
        }
        n += 1;
    }
}

/// `num/den` in lowest terms, or just `num` for integers.
pub fn render_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering with `digits` places after the point (truncated toward zero).
pub fn render_decimal(r: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = (r.abs() * BigRational::from_integer(scale.clone())).to_integer();
    let int = &scaled / &scale;
    let frac = &scaled % &scale;
    let sign = if r.is_negative() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, s: u64, n: u64) -> BorweinParams {
        BorweinParams::new(p, s, n).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn v_examples() {
        assert_eq!(v_of(0, 3), 2);
        assert_eq!(v_of(1, 3), -1);
        assert_eq!(v_of(-6, 3), 2);
    }

    #[test]
    fn sums_small() {
        let pr = params(3, 1, 1);
        assert_eq!(progression_sums(&pr, 6).unwrap(), ints(&[1, -1, -1, 1, 0, 0]));
        assert_eq!(progression_sum(&params(5, 2, 3), 1, 0).unwrap(), BigInt::zero());
        let total: BigInt = progression_sums(&params(3, 1, 2), 12).unwrap().iter().sum();
        assert!(total.is_zero());
        assert!(progression_sums(&pr, 0).is_err());
    }

    #[test]
    fn three_routes_agree() {
        for (p, s, n) in [(3, 1, 3), (3, 2, 2), (5, 1, 2), (5, 2, 3), (7, 3, 1)] {
            let pr = params(p, s, n);
            let g = pr.group_order();
            let fold = progression_sums(&pr, g).unwrap();
            assert_eq!(fold, progression_sums_dense(&pr, g).unwrap());
            let pol = PrecisionPolicy::for_params(&pr);
            assert_eq!(fold, progression_sums_via_characters(&pr, &pol).unwrap());
        }
    }

    #[test]
    fn refinement_from_2pn_to_pn() {
        let pr = params(5, 2, 3);
        let fine = progression_sums(&pr, 30).unwrap();
        let coarse = progression_sums(&pr, 15).unwrap();
        for b in 0..15 {
            assert_eq!(coarse[b], &fine[b] + &fine[b + 15]);
        }
    }

    #[test]
    fn main_check_examples() {
        let pr = params(3, 1, 1);
        let r0 = theorem_main_check(&pr, 0).unwrap();
        assert_eq!((r0.sum.clone(), r0.main_term.clone()), (BigInt::from(1), q(1, 1)));
        assert!(r0.within_bound);
        let r1 = theorem_main_check(&pr, 1).unwrap();
        assert_eq!(r1.main_term, q(-1, 2));
        assert_eq!(r1.deviation(), q(-1, 2));
        let r4 = theorem_main_check(&pr, 4).unwrap();
        assert_eq!(r4.deviation(), q(1, 2));
        assert!(theorem_main_records(&pr).unwrap().iter().all(|r| r.within_bound));
    }

    #[test]
    fn gp_examples() {
        let pr = params(3, 1, 1);
        let rs: Vec<_> = (0..3).map(|b| gp_check(&pr, b).unwrap()).collect();
        assert_eq!(rs[0].sum, BigInt::from(2));
        assert_eq!(rs[1].sum, BigInt::from(-1));
        assert_eq!(rs[2].sum, BigInt::from(-1));
        assert!(rs.iter().all(|r| r.deviation().is_zero()));
    }

    #[test]
    fn bound_values() {
        assert_eq!(li_bound(5), BigInt::from(32));
        assert_eq!(gp_bound(&params(3, 1, 2)).to_string(), "3");
        assert_eq!(gp_bound(&params(3, 2, 1)).to_string(), "3");
        assert_eq!(gp_bound(&params(3, 1, 1)).to_string(), "3^(1/2)");
        assert_eq!(zaharescu_bound(3, 2, 1, 4).unwrap(), q(3, 1));
        assert_eq!(zaharescu_bound(3, 3, 1, 3).unwrap(), q(4, 3));
        assert!(zaharescu_records(&params(3, 1, 3), 3).is_err());
        assert_eq!(zaharescu_bound(3, 5, 1, 5).unwrap(), q(8, 5));
        assert_eq!(zaharescu_bound(5, 3, 1, 3).unwrap(), q(8 * 5, 15));
        assert!(zaharescu_bound(3, 4, 1, 5).is_err());
        assert!(zaharescu_bound(3, 7, 1, 5).is_err());
    }

    #[test]
    fn sqrt_bound_is_exact_at_the_edge() {
        let b = Bound::SqrtPow { base: 3, exp: 1 };
        // 1.732 < sqrt 3 < 1.7321
        assert!(b.admits(&q(1732, 1000)));
        assert!(!b.admits(&q(17321, 10000)));
        assert!(b.admits(&q(-1732, 1000)));
    }

    #[test]
    fn corollary_thresholds() {
        assert_eq!(corollary_threshold(3, 1, true).unwrap(), 5);
        assert_eq!(corollary_threshold(3, 2, true).unwrap(), 2);
        assert_eq!(corollary_threshold(3, 1, false).unwrap(), 7);
    }

    #[test]
    fn li_records_small() {
        for n in 1..=8 {
            assert!(li_records(&params(3, 1, n)).unwrap().iter().all(|r| r.within_bound));
        }
        assert!(li_check(&params(5, 1, 2), 0).is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(render_rational(&q(6, 4)), "3/2");
        assert_eq!(render_rational(&q(-4, 2)), "-2");
        assert_eq!(render_decimal(&q(4, 3), 4), "1.3333");
        assert_eq!(render_decimal(&q(-1, 8), 2), "-0.12");
    }
}
