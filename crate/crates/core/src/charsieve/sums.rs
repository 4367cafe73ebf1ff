//! Character sums `S_m(chi) = (1/m!) sum chi(x_1) ... chi(x_m)` over the tuples of `D^m`
//! with distinct coordinates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::zpoly::binom_series_coeff;
use super::{Character, PrecisionPolicy};
use crate::ball::{ComplexBall, RootTable};
use crate::borwein::{exponent_set, BorweinParams};
use crate::error::{Error, Result};

/// Enumeration guard for [`s_m_chi_brute`]: `|D|`.
pub const MAX_BRUTE_D: usize = 12;
/// Enumeration guard for [`s_m_chi_brute`]: `m`.
pub const MAX_BRUTE_M: usize = 4;

fn check_group(params: &BorweinParams, chi: &Character) -> Result<()> {
    if chi.group_order() != params.group_order() {
        return Err(Error::InvalidArgument(format!(
            "character of Z/{}Z used with group order {}",
            chi.group_order(),
            params.group_order()
        )));
    }
    Ok(())
}

fn radius(z: &ComplexBall) -> f64 {
    z.re.radius_up().max(z.im.radius_up())
}

/// Closed form: for `p ∤ o(chi)`,
/// `(-1)^m [u^m] (1 - u^o)^{|D|/o}`; for `p | o(chi)`,
/// `(-1)^m [u^m] prod_{k=1}^{(p-1)/2} (1 - conj(chi)^{o/p}(k) u^{o/p})^{|G|/o}`.
pub fn s_m_chi_closed(
    params: &BorweinParams,
    chi: &Character,
    m: u64,
    prec: &PrecisionPolicy,
) -> Result<ComplexBall> {
    check_group(params, chi)?;
    let p = params.p();
    let o = chi.order();
    let sign_m = if m.is_multiple_of(2) { 1 } else { -1 };
    if !o.is_multiple_of(p) {
        let d_len = (params.n() * (p - 1)) as i64;
        let exact = binom_series_coeff(o, -d_len, m) * BigRational::from_integer(sign_m.into());
        return prec.certify(|bits| {
            let z = ComplexBall::from_ratio(&exact, bits);
            let r = radius(&z);
            (z, r)
        });
    }

    let g = params.group_order();
    let step = o / p;
    let expo = g / o;
    prec.certify(|bits| {
        if !m.is_multiple_of(step) {
            return (ComplexBall::zero(bits), 0.0);
        }
        let j = (m / step) as usize;
        let roots = RootTable::new(g, bits);
        let cbar = chi.pow(step);
        // series in v = u^{o/p}, truncated at degree j
        let mut acc = vec![ComplexBall::zero(bits); j + 1];
        acc[0] = ComplexBall::one(bits);
        for k in 1..=params.half() as i64 {
            let c = roots.get(-cbar.exponent_at(k));
            let mut coeffs = Vec::with_capacity(j + 1);
            let mut binom = BigInt::one();
            let mut cpow = ComplexBall::one(bits);
            for i in 0..=j as u64 {
                if i > expo {
                    break;
                }
                let term = cpow.mul_int(&binom);
                coeffs.push(if i % 2 == 0 { term } else { term.neg() });
                binom = binom * (expo - i) / (i + 1);
                cpow = cpow.mul(c);
            }
            let mut next = vec![ComplexBall::zero(bits); j + 1];
            for (a, x) in acc.iter().enumerate() {
                for (b, y) in coeffs.iter().enumerate().take(j + 1 - a) {
                    next[a + b] = next[a + b].add(&x.mul(y));
                }
            }
            acc = next;
        }
        let mut z = acc.swap_remove(j);
        if sign_m < 0 {
            z = z.neg();
        }
        let r = radius(&z);
        (z, r)
    })
}

/// Direct enumeration of the distinct-coordinate tuples of `D^m`, folded by their sum
/// modulo `|G|` before the character is applied.
pub fn s_m_chi_brute(
    params: &BorweinParams,
    chi: &Character,
    m: usize,
    prec: &PrecisionPolicy,
) -> Result<ComplexBall> {
    check_group(params, chi)?;
    let d = exponent_set(params);
    if d.len() > MAX_BRUTE_D {
        return Err(Error::GuardExceeded {
            what: "|D| for brute character sums",
            actual: d.len(),
            limit: MAX_BRUTE_D,
        });
    }
    if m > MAX_BRUTE_M {
        return Err(Error::GuardExceeded {
            what: "m for brute character sums",
            actual: m,
            limit: MAX_BRUTE_M,
        });
    }
    let g = params.group_order() as i64;
    let mut hist = vec![0u64; g as usize];
    let mut used = vec![false; d.len()];
    enumerate(d.elements(), m, 0, &mut used, &mut hist, g);

    let m_fact: u64 = (1..=m as u64).product();
    prec.certify(|bits| {
        let roots = RootTable::new(g as u64, bits);
        let mut acc = ComplexBall::zero(bits);
        for (r, &count) in hist.iter().enumerate() {
            if count != 0 {
                let v = chi.value(r as i64, &roots);
                acc = acc.add(&v.mul_int(&BigInt::from(count)));
            }
        }
        let z = acc.div_u64(m_fact);
        let r = radius(&z);
        (z, r)
    })
}

fn enumerate(d: &[i64], left: usize, sum: i64, used: &mut [bool], hist: &mut [u64], g: i64) {
    if left == 0 {
        hist[sum.rem_euclid(g) as usize] += 1;
        return;
    }
    for i in 0..d.len() {
        if !used[i] {
            used[i] = true;
            enumerate(d, left - 1, sum + d[i], used, hist, g);
            used[i] = false;
        }
    }
}
