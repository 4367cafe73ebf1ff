//! The distinct-coordinate sieve.
//!
//! For `X ⊆ A^m` and `f: X -> Q`, the sum of `f` over the tuples of `X` with pairwise
//! distinct coordinates equals `sum_{tau in S_m} sign(tau) sum_{x in X_tau} f(x)`, where
//! `X_tau` holds the tuples constant on every cycle of `tau`.
//!
//! `X_tau` only depends on the set partition formed by the cycles of `tau`, so the signed
//! permutation side is evaluated one set partition at a time, weighted by the number of
//! permutations whose cycles are exactly those blocks, `prod (|B| - 1)!`, with sign
//! `prod (-1)^{|B| - 1}`. When `X` and `f` are symmetric the sum collapses further to cycle
//! types; [`li_wan_symmetric`] implements that case.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::zpoly::cycle_types;
use crate::error::{Error, Result};

/// Largest `m` accepted by the sieve routines.
pub const MAX_SIEVE_M: usize = 7;

/// An explicit set `X ⊆ A^m` over `A = {0, ..., domain_size - 1}` with rational values `f`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SieveInstance {
    pub domain_size: usize,
    pub m: usize,
    pub points: BTreeMap<Vec<usize>, BigRational>,
}

impl SieveInstance {
    pub fn new(domain_size: usize, m: usize) -> Self {
        SieveInstance {
            domain_size,
            m,
            points: BTreeMap::new(),
        }
    }

    /// The full cube `A^m` with `f ≡ 1`.
    pub fn full_cube(domain_size: usize, m: usize) -> Self {
        let mut inst = Self::new(domain_size, m);
        let mut x = vec![0usize; m];
        loop {
            inst.points.insert(x.clone(), BigRational::one());
            if !advance(&mut x, domain_size) {
                break;
            }
        }
        inst
    }

    pub fn insert(&mut self, x: Vec<usize>, value: BigRational) {
        assert_eq!(x.len(), self.m, "tuple length must equal m");
        assert!(x.iter().all(|&c| c < self.domain_size), "coordinate outside the domain");
        self.points.insert(x, value);
    }

    fn validate(&self) -> Result<()> {
        if self.m > MAX_SIEVE_M {
            return Err(Error::GuardExceeded {
                what: "sieve tuple length m",
                actual: self.m,
                limit: MAX_SIEVE_M,
            });
        }
        Ok(())
    }
}

/// Odometer increment over `A^m`; returns `false` after the last tuple.
fn advance(x: &mut [usize], base: usize) -> bool {
    for c in x.iter_mut().rev() {
        *c += 1;
        if *c < base {
            return true;
        }
        *c = 0;
    }
    false
}

fn all_distinct(x: &[usize]) -> bool {
    x.iter()
        .enumerate()
        .all(|(i, a)| x[i + 1..].iter().all(|b| a != b))
}

/// Set partitions of `{0, ..., m-1}` as restricted growth strings (`labels[i]` = block of `i`).
pub fn set_partitions(m: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, m: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == m {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max {
            cur.push(b);
            rec(i + 1, m, if b == max { max + 1 } else { max }, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, 0, &mut Vec::with_capacity(m), &mut out);
    out
}

/// Signed number of permutations whose cycle partition is `labels`.
fn partition_weight(labels: &[usize]) -> BigInt {
    let blocks = labels.iter().copied().max().map_or(0, |b| b + 1);
    let mut sizes = vec![0u64; blocks];
    for &l in labels {
        sizes[l] += 1;
    }
    sizes.iter().fold(BigInt::one(), |acc, &k| {
        let fact: BigInt = (1..k).fold(BigInt::one(), |a, i| a * i);
        let w = if (k - 1) % 2 == 0 { fact } else { -fact };
        acc * w
    })
}

fn constant_on_blocks(x: &[usize], labels: &[usize]) -> bool {
    let mut rep: [Option<usize>; MAX_SIEVE_M] = [None; MAX_SIEVE_M];
    for (&v, &l) in x.iter().zip(labels) {
        match rep[l] {
            None => rep[l] = Some(v),
            Some(r) if r != v => return false,
            _ => {}
        }
    }
    true
}

/// Sum of `f` over the tuples with distinct coordinates.
pub fn distinct_side(inst: &SieveInstance) -> BigRational {
    inst.points
        .iter()
        .filter(|(x, _)| all_distinct(x))
        .fold(BigRational::zero(), |acc, (_, v)| acc + v)
}

/// The signed permutation side, grouped by cycle partition.
pub fn permutation_side(inst: &SieveInstance) -> Result<BigRational> {
    inst.validate()?;
    let mut total = BigRational::zero();
    for labels in set_partitions(inst.m) {
        let inner = inst
            .points
            .iter()
            .filter(|(x, _)| constant_on_blocks(x, &labels))
            .fold(BigRational::zero(), |acc, (_, v)| acc + v);
        if !inner.is_zero() {
            total += inner * BigRational::from_integer(partition_weight(&labels));
        }
    }
    Ok(total)
}

/// The signed permutation side, literally summing over all `m!` permutations.
pub fn permutation_side_exhaustive(inst: &SieveInstance) -> Result<BigRational> {
    inst.validate()?;
    let m = inst.m;
    let mut total = BigRational::zero();
    for perm in permutations(m) {
        let labels = cycle_labels(&perm);
        let cycles = labels.iter().copied().max().map_or(0, |b| b + 1);
        let inner = inst
            .points
            .iter()
            .filter(|(x, _)| constant_on_blocks(x, &labels))
            .fold(BigRational::zero(), |acc, (_, v)| acc + v);
        if (m - cycles).is_multiple_of(2) {
            total += inner;
        } else {
            total -= inner;
        }
    }
    Ok(total)
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// Labels each position by the cycle of `perm` containing it.
fn cycle_labels(perm: &[usize]) -> Vec<usize> {
    let mut labels = vec![usize::MAX; perm.len()];
    let mut next = 0;
    for start in 0..perm.len() {
        if labels[start] != usize::MAX {
            continue;
        }
        let mut i = start;
        while labels[i] == usize::MAX {
            labels[i] = next;
            i = perm[i];
        }
        next += 1;
    }
    labels
}

/// Both sides of the sieve identity, computed independently: `(distinct, signed)`.
pub fn li_wan_check(inst: &SieveInstance) -> Result<(BigRational, BigRational)> {
    let rhs = permutation_side(inst)?;
    Ok((distinct_side(inst), rhs))
}

/// Symmetric case `X = A^m`, `f(x) = prod h(x_i)`: the signed side reduces to
/// `sum_types sign N(c) prod_i (sum_a h(a)^i)^{c_i}`. Returns `(distinct, signed)`.
pub fn li_wan_symmetric(weights: &[BigRational], m: usize) -> Result<(BigRational, BigRational)> {
    if m > MAX_SIEVE_M {
        return Err(Error::GuardExceeded {
            what: "sieve tuple length m",
            actual: m,
            limit: MAX_SIEVE_M,
        });
    }
    let power_sums: Vec<BigRational> = (1..=m)
        .map(|i| {
            weights
                .iter()
                .fold(BigRational::zero(), |acc, h| acc + num_traits::pow(h.clone(), i))
        })
        .collect();
    let rhs = cycle_types(m).iter().fold(BigRational::zero(), |acc, ct| {
        let mono = ct
            .counts()
            .iter()
            .enumerate()
            .fold(BigRational::one(), |a, (i, &c)| a * num_traits::pow(power_sums[i].clone(), c as usize));
        acc + mono * BigRational::from_integer(ct.permutation_count() * ct.sign())
    });

    let mut lhs = BigRational::zero();
    if m <= weights.len() {
        let mut x = vec![0usize; m];
        loop {
            if all_distinct(&x) {
                lhs += x.iter().fold(BigRational::one(), |a, &i| a * &weights[i]);
            }
            if !advance(&mut x, weights.len()) {
                break;
            }
        }
    }
    Ok((lhs, rhs))
}
