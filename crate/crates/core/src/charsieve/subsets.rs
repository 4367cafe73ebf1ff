//! Subset-sum counts over the exponent set `D` and their size-alternating sum `N_D(b)`.

use num_bigint::BigInt;

use crate::borwein::{exponent_set, BorweinParams};
use crate::error::{Error, Result};
use crate::polyarith::CyclicPoly;

/// Enumeration guard: `s |D|` for the subset oracles.
pub const MAX_SUBSET_BITS: usize = 22;

fn guard(params: &BorweinParams) -> Result<usize> {
    let d_len = exponent_set(params).len();
    let bits = params.s() as usize * d_len;
    if bits > MAX_SUBSET_BITS {
        return Err(Error::GuardExceeded {
            what: "s|D| for subset enumeration",
            actual: bits,
            limit: MAX_SUBSET_BITS,
        });
    }
    Ok(d_len)
}

/// For every subset of `D` (as a bitmask), its size and its sum modulo `2pn`.
fn subset_table(params: &BorweinParams) -> Vec<(u32, usize)> {
    let d = exponent_set(params);
    let g = params.group_order() as i64;
    let elems = d.elements();
    (0u32..1 << elems.len())
        .map(|mask| {
            let sum: i64 = elems
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &x)| x)
                .sum();
            (mask.count_ones(), sum.rem_euclid(g) as usize)
        })
        .collect()
}

/// Histogram `h[size][residue]` of subsets of `D`.
fn size_residue_histogram(params: &BorweinParams, d_len: usize) -> Vec<Vec<u64>> {
    let g = params.group_order() as usize;
    let mut h = vec![vec![0u64; g]; d_len + 1];
    for (size, r) in subset_table(params) {
        h[size as usize][r] += 1;
    }
    h
}

/// Number of ordered tuples `(V_1, ..., V_s)` of subsets of `D` with `|V_i| = m_i` whose
/// elements sum, in total, to `b` modulo `2pn`.
pub fn n_d_subsets_brute(params: &BorweinParams, m_values: &[usize], b: i64) -> Result<u64> {
    let d_len = guard(params)?;
    if m_values.len() != params.s() as usize {
        return Err(Error::InvalidArgument(format!(
            "expected {} subset sizes, got {}",
            params.s(),
            m_values.len()
        )));
    }
    if m_values.iter().any(|&m| m > d_len) {
        return Ok(0);
    }
    let g = params.group_order() as usize;
    let h = size_residue_histogram(params, d_len);
    // convolve the s size-restricted histograms over Z/gZ
    let mut acc = vec![0u64; g];
    acc[0] = 1;
    for &m in m_values {
        let mut next = vec![0u64; g];
        for (r, &a) in acc.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (t, &c) in h[m].iter().enumerate().filter(|(_, c)| **c != 0) {
                next[(r + t) % g] += a * c;
            }
        }
        acc = next;
    }
    Ok(acc[b.rem_euclid(g as i64) as usize])
}

/// Oracle A for every residue: `N_D(b) = sum_{m} (-1)^{m_1 + ... + m_s} N_D(m_1, ..., m_s, b)`,
/// with every tuple of subsets enumerated explicitly.
pub fn n_d_alternating_all_brute(params: &BorweinParams) -> Result<Vec<BigInt>> {
    guard(params)?;
    let g = params.group_order() as usize;
    let table = subset_table(params);
    let mut out = vec![0i64; g];
    let s = params.s() as usize;
    let count = table.len();
    let mut idx = vec![0usize; s];
    loop {
        let (size, r) = idx.iter().fold((0u32, 0usize), |(sz, r), &i| {
            (sz + table[i].0, (r + table[i].1) % g)
        });
        out[r] += if size % 2 == 0 { 1 } else { -1 };
        // odometer over s-tuples of subsets
        let mut k = 0;
        while k < s {
            idx[k] += 1;
            if idx[k] < count {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == s {
            break;
        }
    }
    Ok(out.into_iter().map(BigInt::from).collect())
}

pub fn n_d_alternating_brute(params: &BorweinParams, b: i64) -> Result<BigInt> {
    let all = n_d_alternating_all_brute(params)?;
    Ok(all[b.rem_euclid(all.len() as i64) as usize].clone())
}

/// Oracle B for every residue: the coefficients of `prod_{x in D} (1 - q^x)^s` in the ring
/// of polynomials modulo `q^{2pn} - 1`.
pub fn n_d_alternating_all_fold(params: &BorweinParams) -> Vec<BigInt> {
    let mut acc = CyclicPoly::one(params.group_order() as usize);
    for &x in exponent_set(params).elements() {
        for _ in 0..params.s() {
            acc.mul_one_minus_monomial(x);
        }
    }
    acc.into_coeffs()
}

pub fn n_d_alternating_fold(params: &BorweinParams, b: i64) -> BigInt {
    let all = n_d_alternating_all_fold(params);
    all[b.rem_euclid(all.len() as i64) as usize].clone()
}

/// `N_D(b)` by the cyclic fold, which runs at any size.
pub fn n_d_alternating(params: &BorweinParams, b: i64) -> BigInt {
    n_d_alternating_fold(params, b)
}
