//! Cycle types of permutations and the cycle-index polynomials `Z_m`.
//!
//! `Z_m(t_1, ..., t_m)` is the coefficient of `u^m` in `exp(sum_i t_i u^i / i)`. It is
//! computed here by the log-derivative recurrence `m Z_m = sum_{i=1}^m t_i Z_{m-i}`, and
//! independently (for testing) by summing over cycle types.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn ratio(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// A cycle type `(c_1, ..., c_m)`: `c_i` cycles of length `i`, with `sum i c_i = m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleType {
    counts: Vec<u32>,
}

impl CycleType {
    /// `counts[i-1]` is the number of cycles of length `i`. Returns `None` unless `counts`
    /// has length `m` and `sum i c_i = m`.
    pub fn new(counts: Vec<u32>) -> Option<Self> {
        let m = counts.len() as u64;
        let total: u64 = counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as u64 + 1) * c as u64)
            .sum();
        (total == m).then_some(CycleType { counts })
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn m(&self) -> usize {
        self.counts.len()
    }

    pub fn num_cycles(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    /// `(-1)^{m - c(tau)}`.
    pub fn sign(&self) -> i64 {
        if (self.m() as u64 - self.num_cycles()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Number of permutations with this cycle type: `m! / prod i^{c_i} c_i!`.
    pub fn permutation_count(&self) -> BigInt {
        let denom = self
            .counts
            .iter()
            .enumerate()
            .fold(BigInt::one(), |acc, (i, &c)| {
                acc * BigInt::from(i as u64 + 1).pow(c) * factorial(c as u64)
            });
        let (q, r) = factorial(self.m() as u64).div_rem(&denom);
        debug_assert!(r.is_zero());
        q
    }
}

/// All cycle types of `S_m` (equivalently, integer partitions of `m`).
pub fn cycle_types(m: usize) -> Vec<CycleType> {
    fn rec(remaining: usize, max_part: usize, counts: &mut Vec<u32>, out: &mut Vec<CycleType>) {
        if remaining == 0 {
            out.push(CycleType {
                counts: counts.clone(),
            });
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            counts[part - 1] += 1;
            rec(remaining - part, part, counts, out);
            counts[part - 1] -= 1;
        }
    }
    let mut out = Vec::new();
    let mut counts = vec![0; m];
    rec(m, m, &mut counts, &mut out);
    out
}

/// `Z_0, ..., Z_m` for `t = (t_1, ..., t_m)`.
pub fn z_series(t: &[BigRational]) -> Vec<BigRational> {
    let mut z = vec![BigRational::one()];
    for m in 1..=t.len() {
        let acc = (1..=m).fold(BigRational::zero(), |acc, i| acc + &t[i - 1] * &z[m - i]);
        z.push(acc / ratio(m as i64));
    }
    z
}

/// `Z_m(t_1, ..., t_m)` with `m = t.len()`.
pub fn z_m(t: &[BigRational]) -> BigRational {
    z_series(t).pop().expect("series is never empty")
}

/// `Z_m` from its definition as a weighted sum over cycle types.
pub fn z_m_by_cycle_types(t: &[BigRational]) -> BigRational {
    let m = t.len();
    let total = cycle_types(m)
        .iter()
        .fold(BigRational::zero(), |acc, ct| {
            let mono = ct
                .counts()
                .iter()
                .enumerate()
                .fold(BigRational::one(), |acc, (i, &c)| acc * num_traits::pow(t[i].clone(), c as usize));
            acc + BigRational::from_integer(ct.permutation_count()) * mono
        });
    total / BigRational::from_integer(factorial(m as u64))
}

/// `binom(alpha, j)` for rational `alpha`.
pub fn generalized_binomial(alpha: &BigRational, j: u64) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..j {
        acc = acc * (alpha - ratio(i as i64)) / ratio(i as i64 + 1);
    }
    acc
}

/// `[u^m] (1 - u^ell)^{-a/ell}`.
pub fn binom_series_coeff(ell: u64, a: i64, m: u64) -> BigRational {
    assert!(ell >= 1, "ell must be positive");
    if !m.is_multiple_of(ell) {
        return BigRational::zero();
    }
    let j = m / ell;
    let alpha = BigRational::new((-a).into(), (ell as i64).into());
    let c = generalized_binomial(&alpha, j);
    if j.is_multiple_of(2) {
        c
    } else {
        -c
    }
}

/// `[u^m] prod_{z in points} (1 - z^ell u^ell)^{-a/ell}`, by multiplying truncated series.
pub fn binom_product_coeff(points: &[BigRational], ell: u64, a: i64, m: u64) -> BigRational {
    assert!(ell >= 1, "ell must be positive");
    if !m.is_multiple_of(ell) {
        return BigRational::zero();
    }
    let jmax = (m / ell) as usize;
    let alpha = BigRational::new((-a).into(), (ell as i64).into());
    let binoms: Vec<BigRational> = (0..=jmax as u64)
        .map(|j| generalized_binomial(&alpha, j))
        .collect();
    // series in v = u^ell
    let mut acc = vec![BigRational::zero(); jmax + 1];
    acc[0] = BigRational::one();
    for z in points {
        let w = -num_traits::pow(z.clone(), ell as usize);
        let factor: Vec<BigRational> = binoms
            .iter()
            .enumerate()
            .map(|(j, b)| b * num_traits::pow(w.clone(), j))
            .collect();
        let mut next = vec![BigRational::zero(); jmax + 1];
        for (i, x) in acc.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in factor.iter().enumerate().take(jmax + 1 - i) {
                next[i + j] += x * y;
            }
        }
        acc = next;
    }
    acc.swap_remove(jmax)
}

/// The `t` vector `t_i = a [ell | i]` of length `m`.
pub fn periodic_t(ell: u64, a: i64, m: usize) -> Vec<BigRational> {
    (1..=m as u64)
        .map(|i| if i % ell == 0 { ratio(a) } else { BigRational::zero() })
        .collect()
}

/// The `t` vector `t_i = a sum_{z in points} z^i` for `ell | i`, zero otherwise.
pub fn power_sum_t(points: &[BigRational], ell: u64, a: i64, m: usize) -> Vec<BigRational> {
    (1..=m as u64)
        .map(|i| {
            if i % ell != 0 {
                return BigRational::zero();
            }
            let ps = points
                .iter()
                .fold(BigRational::zero(), |acc, z| acc + num_traits::pow(z.clone(), i as usize));
            ps * ratio(a)
        })
        .collect()
}
