//! Exact polynomial arithmetic over arbitrary-precision integers.
//!
//! Three representations are provided:
//!
//! - [`DensePoly`]: an ordinary polynomial, `coeffs[i]` is the coefficient of `q^i`.
//! - [`LaurentPoly`]: a polynomial with a lowest-exponent offset, so negative powers of `q`
//!   are allowed.
//! - [`CyclicPoly`]: an element of `Z[q]/(q^d - 1)`, always exactly `d` coefficients.
//!
//! Dense and Laurent values are kept canonical (no zero coefficients at either trimmed end),
//! so derived equality is structural equality.
//!
//! The hot path for the Borwein products is multiplication by a single binomial `1 - q^m`,
//! which every type supports in `O(len)` without building the binomial first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A polynomial in `q` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DensePoly {
    coeffs: Vec<BigInt>,
}

impl DensePoly {
    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        DensePoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// Builds a polynomial from coefficients in ascending degree order, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = DensePoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c * q^deg`.
    pub fn monomial(c: BigInt, deg: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(coeffs)
    }

    /// `1 - q^m`.
    pub fn one_minus_monomial(m: usize) -> Self {
        let mut p = Self::one();
        p.mul_one_minus_monomial(m);
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `q^i` (zero outside the stored range).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Sum of all coefficients, i.e. the value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Multiplies in place by `1 - q^m`.
    pub fn mul_one_minus_monomial(&mut self, m: usize) {
        if self.is_zero() {
            return;
        }
        if m == 0 {
            self.coeffs.clear();
            return;
        }
        let old_len = self.coeffs.len();
        self.coeffs.resize(old_len + m, BigInt::zero());
        for i in (m..old_len + m).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            hi[0] -= &lo[i - m];
        }
        self.trim();
    }

    /// Schoolbook product.
    pub fn mul_schoolbook(&self, other: &DensePoly) -> DensePoly {
        if self.is_zero() || other.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        DensePoly::from_coeffs(out)
    }

    pub fn pow(&self, mut e: u32) -> DensePoly {
        let mut base = self.clone();
        let mut acc = DensePoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_schoolbook(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_schoolbook(&base);
            }
        }
        acc
    }

    /// `P(q^k)`.
    pub fn substitute_power(&self, k: usize) -> DensePoly {
        assert!(k >= 1, "substitution power must be positive");
        if self.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        DensePoly::from_coeffs(out)
    }

    /// `q^k P(q)`.
    pub fn shift_up(&self, k: usize) -> DensePoly {
        if self.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![BigInt::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        DensePoly { coeffs: out }
    }
}

fn add_coeffs(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

impl Add for &DensePoly {
    type Output = DensePoly;
    fn add(self, rhs: &DensePoly) -> DensePoly {
        DensePoly::from_coeffs(add_coeffs(&self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &DensePoly {
    type Output = DensePoly;
    fn neg(self) -> DensePoly {
        DensePoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &DensePoly {
    type Output = DensePoly;
    fn sub(self, rhs: &DensePoly) -> DensePoly {
        self + &(-rhs)
    }
}

impl Mul for &DensePoly {
    type Output = DensePoly;
    fn mul(self, rhs: &DensePoly) -> DensePoly {
        self.mul_schoolbook(rhs)
    }
}

/// Product of two dense polynomials.
pub fn poly_mul(a: &DensePoly, b: &DensePoly) -> DensePoly {
    a.mul_schoolbook(b)
}

/// Value at `q = 1`.
pub fn eval_at_one(a: &DensePoly) -> BigInt {
    a.eval_at_one()
}

/// A Laurent polynomial: `coeffs[i]` is the coefficient of `q^(offset + i)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    offset: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            offset: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        LaurentPoly {
            offset: 0,
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn new(offset: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { offset, coeffs };
        p.trim();
        p
    }

    /// `c * q^exp`.
    pub fn monomial(c: BigInt, exp: i64) -> Self {
        Self::new(exp, vec![c])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.offset += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.offset = 0;
        }
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn max_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.offset + self.coeffs.len() as i64 - 1)
    }

    /// Coefficient of `q^exp`.
    pub fn coeff(&self, exp: i64) -> BigInt {
        let idx = exp - self.offset;
        if idx < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(idx as usize).cloned().unwrap_or_default()
    }

    /// Iterates `(exponent, coefficient)` pairs over the stored range.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.offset + i as i64, c))
    }

    /// Multiplies in place by `1 - q^m`; `m` may be negative.
    pub fn mul_one_minus_monomial(&mut self, m: i64) {
        if self.is_zero() {
            return;
        }
        if m == 0 {
            *self = LaurentPoly::zero();
            return;
        }
        let k = m.unsigned_abs() as usize;
        let mut dense = DensePoly {
            coeffs: std::mem::take(&mut self.coeffs),
        };
        dense.mul_one_minus_monomial(k);
        if m > 0 {
            self.coeffs = dense.coeffs;
        } else {
            // 1 - q^{-k} = -q^{-k} (1 - q^k)
            self.coeffs = dense.coeffs.into_iter().map(|c| -c).collect();
            self.offset -= k as i64;
        }
        self.trim();
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let a = DensePoly {
            coeffs: self.coeffs.clone(),
        };
        let b = DensePoly {
            coeffs: other.coeffs.clone(),
        };
        LaurentPoly::new(self.offset + other.offset, a.mul_schoolbook(&b).coeffs)
    }

    /// `q^k` times this polynomial.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            offset: self.offset + k,
            coeffs: self.coeffs.clone(),
        }
    }
}

impl From<DensePoly> for LaurentPoly {
    fn from(p: DensePoly) -> Self {
        LaurentPoly::new(0, p.coeffs)
    }
}

/// An element of `Z[q]/(q^d - 1)`; the modulus is the number of coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicPoly {
    coeffs: Vec<BigInt>,
}

impl CyclicPoly {
    /// Panics if `d == 0`.
    pub fn zero(d: usize) -> Self {
        assert!(d >= 1, "cyclic modulus must be positive");
        CyclicPoly {
            coeffs: vec![BigInt::zero(); d],
        }
    }

    pub fn one(d: usize) -> Self {
        let mut p = Self::zero(d);
        p.coeffs[0] = BigInt::one();
        p
    }

    /// Folds an arbitrary coefficient vector into the ring of modulus `d`.
    pub fn from_coeffs(d: usize, coeffs: Vec<BigInt>) -> Self {
        let mut p = Self::zero(d);
        for (i, c) in coeffs.into_iter().enumerate() {
            p.coeffs[i % d] += c;
        }
        p
    }

    pub fn modulus(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Index of the residue class of `exp`.
    pub fn residue(&self, exp: i64) -> usize {
        exp.mod_floor(&(self.modulus() as i64)) as usize
    }

    /// Coefficient of the residue class containing `exp`.
    pub fn coeff(&self, exp: i64) -> &BigInt {
        &self.coeffs[self.residue(exp)]
    }

    /// Multiplies in place by `1 - q^m` (exponent taken modulo `d`).
    pub fn mul_one_minus_monomial(&mut self, m: i64) {
        let r = self.residue(m);
        if r == 0 {
            self.coeffs.iter_mut().for_each(|c| c.set_zero());
            return;
        }
        // Index i receives old[i - r]; walk each cycle of i -> i + r backwards so every
        // source is read before it is overwritten, saving only the wrapped-around element.
        let d = self.modulus();
        let cycles = r.gcd(&d);
        let len = d / cycles;
        for start in 0..cycles {
            let at = |k: usize| (start + k * r) % d;
            let last = self.coeffs[at(len - 1)].clone();
            for k in (1..len).rev() {
                sub_assign_from(&mut self.coeffs, at(k), at(k - 1));
            }
            self.coeffs[start] -= &last;
        }
    }

    pub fn mul(&self, other: &CyclicPoly) -> Result<CyclicPoly> {
        let d = self.modulus();
        if other.modulus() != d {
            return Err(Error::ModulusMismatch {
                left: d,
                right: other.modulus(),
            });
        }
        let mut out = vec![BigInt::zero(); d];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[(i + j) % d] += a * b;
                }
            }
        }
        Ok(CyclicPoly { coeffs: out })
    }

    pub fn sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

/// Product in `Z[q]/(q^d - 1)`.
/// `v[dst] -= v[src]` for distinct indices.
fn sub_assign_from(v: &mut [BigInt], dst: usize, src: usize) {
    if dst < src {
        let (a, b) = v.split_at_mut(src);
        a[dst] -= &b[0];
    } else {
        let (a, b) = v.split_at_mut(dst);
        b[0] -= &a[src];
    }
}

pub fn cyclic_mul(a: &CyclicPoly, b: &CyclicPoly) -> Result<CyclicPoly> {
    a.mul(b)
}

/// Folding into residue classes: coefficient `b` of the result is the sum of all input
/// coefficients whose exponent is congruent to `b` modulo `d`.
pub trait ReduceCyclic {
    fn reduce_cyclic(&self, d: usize) -> CyclicPoly;
}

impl ReduceCyclic for DensePoly {
    fn reduce_cyclic(&self, d: usize) -> CyclicPoly {
        let mut out = CyclicPoly::zero(d);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[i % d] += c;
        }
        out
    }
}

impl ReduceCyclic for LaurentPoly {
    fn reduce_cyclic(&self, d: usize) -> CyclicPoly {
        let mut out = CyclicPoly::zero(d);
        for (exp, c) in self.terms() {
            let r = out.residue(exp);
            out.coeffs[r] += c;
        }
        out
    }
}

/// Free-function form of [`ReduceCyclic::reduce_cyclic`].
pub fn reduce_cyclic<P: ReduceCyclic + ?Sized>(a: &P, d: usize) -> CyclicPoly {
    a.reduce_cyclic(d)
}

fn fmt_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, &'a BigInt)>,
) -> fmt::Result {
    let mut first = true;
    for (exp, c) in terms {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
        }
        first = false;
        let unit = mag.is_one();
        match exp {
            0 => write!(f, "{mag}")?,
            1 if unit => write!(f, "q")?,
            1 => write!(f, "{mag}q")?,
            e if unit => write!(f, "q^{e}")?,
            e => write!(f, "{mag}q^{e}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(
            f,
            self.coeffs.iter().enumerate().map(|(i, c)| (i as i64, c)),
        )
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dp(c: &[i64]) -> DensePoly {
        DensePoly::from_i64s(c)
    }

    fn cp(d: usize, c: &[i64]) -> CyclicPoly {
        CyclicPoly::from_coeffs(d, c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn product_examples() {
        assert_eq!(poly_mul(&dp(&[1, -1]), &dp(&[1, 0, -1])), dp(&[1, -1, -1, 1]));
        let p = dp(&[3, 0, -7, 2]);
        assert_eq!(poly_mul(&p, &DensePoly::one()), p);
        let sq = |a: &DensePoly| poly_mul(a, a);
        assert_eq!(
            poly_mul(&sq(&dp(&[1, -1])), &sq(&dp(&[1, 1]))),
            dp(&[1, 0, -2, 0, 1])
        );
        assert!(poly_mul(&p, &DensePoly::zero()).is_zero());
    }

    #[test]
    fn binomial_factor_matches_schoolbook() {
        let mut p = dp(&[2, -1, 0, 5]);
        let q = poly_mul(&p, &DensePoly::from_i64s(&[1, 0, 0, 0, -1]));
        p.mul_one_minus_monomial(4);
        assert_eq!(p, q);
        p.mul_one_minus_monomial(0);
        assert!(p.is_zero());
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(cyclic_mul(&cp(3, &[0, 0, 1]), &cp(3, &[0, 0, 1])).unwrap(), cp(3, &[0, 1]));
        let a = cp(6, &[1, 0, 0, 0, 0, -1]);
        let b = cp(6, &[1, 0, -1]);
        assert_eq!(cyclic_mul(&a, &b).unwrap(), cp(6, &[1, 1, -1, 0, 0, -1]));
        assert_eq!(dp(&[1, -1, -1, 1]).reduce_cyclic(2), cp(2, &[0, 0]));
        assert!(matches!(
            cyclic_mul(&cp(2, &[1]), &cp(3, &[1])),
            Err(Error::ModulusMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(dp(&[1, -1, -1, 1]).reduce_cyclic(6), cp(6, &[1, -1, -1, 1, 0, 0]));
        let inv = LaurentPoly::monomial(BigInt::one(), -1);
        let r = inv.reduce_cyclic(6);
        assert_eq!(r.coeffs()[5], BigInt::one());
        assert_eq!(r.sum(), BigInt::one());
        let p = dp(&[4, -2, 9, 1]);
        assert_eq!(p.reduce_cyclic(1).coeffs(), &[p.eval_at_one()]);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_at_one(&dp(&[1, -1, -1, 1])), BigInt::zero());
        assert_eq!(eval_at_one(&DensePoly::one()), BigInt::one());
        assert_eq!(eval_at_one(&DensePoly::zero()), BigInt::zero());
    }

    #[test]
    fn canonical_trimming() {
        let p = dp(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(&dp(&[1, 1]) - &dp(&[1, 1]), DensePoly::zero());
        let l = LaurentPoly::new(-3, vec![0.into(), 0.into(), 5.into(), 0.into()]);
        assert_eq!(l.offset(), -1);
        assert_eq!(l.coeffs().len(), 1);
    }

    #[test]
    fn laurent_negative_factor() {
        // (1 - q^{-1})(1 - q^2) = -q^{-1} + 1 + q - q^2
        let mut l = LaurentPoly::one();
        l.mul_one_minus_monomial(-1);
        l.mul_one_minus_monomial(2);
        assert_eq!(l, LaurentPoly::new(-1, vec![(-1).into(), 1.into(), 1.into(), (-1).into()]));
        assert_eq!(l.to_string(), "-q^-1 + 1 + q - q^2");
    }

    #[test]
    fn cyclic_binomial_factor() {
        let mut c = CyclicPoly::one(6);
        c.mul_one_minus_monomial(5);
        c.mul_one_minus_monomial(2);
        assert_eq!(c, cp(6, &[1, 1, -1, 0, 0, -1]));
        c.mul_one_minus_monomial(12);
        assert_eq!(c, CyclicPoly::zero(6));
    }

    #[test]
    fn display() {
        assert_eq!(dp(&[1, -1, -1, 1]).to_string(), "1 - q - q^2 + q^3");
        assert_eq!(dp(&[0, -2, 0, 3]).to_string(), "-2q + 3q^3");
        assert_eq!(DensePoly::zero().to_string(), "0");
    }

    fn small_poly() -> impl Strategy<Value = DensePoly> {
        prop::collection::vec(-20i64..20, 0..9).prop_map(|c| DensePoly::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn reduction_is_a_homomorphism(a in small_poly(), b in small_poly(), d in 1usize..12) {
            let lhs = (&a * &b).reduce_cyclic(d);
            let rhs = cyclic_mul(&a.reduce_cyclic(d), &b.reduce_cyclic(d)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn reduction_pads_when_modulus_exceeds_degree(a in small_poly(), extra in 1usize..5) {
            let d = a.coeffs().len() + extra;
            let r = a.reduce_cyclic(d);
            for i in 0..d {
                prop_assert_eq!(&r.coeffs()[i], &a.coeff(i));
            }
        }

        #[test]
        fn laurent_reduction_respects_shift(a in small_poly(), k in -15i64..15, d in 1usize..10) {
            let l = LaurentPoly::from(a.clone()).shift(k);
            let r = l.reduce_cyclic(d);
            let base = a.reduce_cyclic(d);
            for b in 0..d as i64 {
                prop_assert_eq!(r.coeff(b + k), base.coeff(b));
            }
        }
    }
}
