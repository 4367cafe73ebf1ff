//! Borwein-type polynomials `((q;q)_{pn} / (q^p;q^p)_n)^s` and their Laurent normal form.
//!
//! The polynomial is the product of `(1 - q^{pj-k})^s` over `1 <= j <= n`, `1 <= k <= p-1`.
//! Flipping every factor whose `k` exceeds `(p-1)/2` through `1 - q^m = -q^m (1 - q^{-m})`
//! gives `sign * q^e * L(q)` where `L` is the product of `(1 - q^x)^s` over the
//! [`ExponentSet`] `D = {pj - k : -(n-1) <= j <= n, 1 <= k <= (p-1)/2}`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::polyarith::{DensePoly, LaurentPoly};

/// Trial-division primality test; parameters here are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The triple `(p, s, n)`: an odd prime `p` and positive integers `s`, `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BorweinParams {
    p: u64,
    s: u64,
    n: u64,
}

impl BorweinParams {
    pub fn new(p: u64, s: u64, n: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidParams(format!("p = {p} is not an odd prime")));
        }
        if s < 1 {
            return Err(Error::InvalidParams("s must be at least 1".into()));
        }
        if n < 1 {
            return Err(Error::InvalidParams("n must be at least 1".into()));
        }
        Ok(BorweinParams { p, s, n })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Half-width `(p-1)/2` of the `k` range in the Laurent form.
    pub fn half(&self) -> u64 {
        (self.p - 1) / 2
    }

    /// `s n^2 (p-1) p / 2`.
    pub fn degree(&self) -> u64 {
        self.s * self.n * self.n * (self.p - 1) * self.p / 2
    }

    /// `|G| = 2pn`, the modulus of the main theorem.
    pub fn group_order(&self) -> u64 {
        2 * self.p * self.n
    }

    /// `s n` as an exponent of `p` in the main terms.
    pub fn sn(&self) -> u64 {
        self.s * self.n
    }

    /// Same `(p, s)` with a different `n`.
    pub fn with_n(&self, n: u64) -> Result<Self> {
        Self::new(self.p, self.s, n)
    }
}

impl fmt::Display for BorweinParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, s={}, n={})", self.p, self.s, self.n)
    }
}

/// `(q^step; q^step)_n = prod_{k=1}^{n} (1 - q^{step k})`.
pub fn q_pochhammer(n: u64, step: u64) -> DensePoly {
    assert!(step >= 1, "step must be positive");
    let mut acc = DensePoly::one();
    for k in 1..=n {
        acc.mul_one_minus_monomial((step * k) as usize);
    }
    acc
}

/// The factor exponents `pj - k` of the product form, in increasing order.
fn product_exponents(p: u64, j_range: std::ops::RangeInclusive<u64>) -> impl Iterator<Item = u64> {
    j_range.flat_map(move |j| (1..p).rev().map(move |k| p * j - k))
}

/// Expands `prod_{j=1}^n prod_{k=1}^{p-1} (1 - q^{pj-k})^s`.
pub fn borwein_poly(params: &BorweinParams) -> DensePoly {
    let mut acc = DensePoly::one();
    for m in product_exponents(params.p, 1..=params.n) {
        for _ in 0..params.s {
            acc.mul_one_minus_monomial(m as usize);
        }
    }
    acc
}

/// The exponent set `D`, ordered by `j` then `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentSet {
    elements: Vec<i64>,
}

impl ExponentSet {
    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Sum of the negative elements (the exponents that were flipped).
    pub fn negative_sum(&self) -> i64 {
        self.elements.iter().filter(|&&x| x < 0).sum()
    }
}

fn exponent_block(p: u64, j: i64) -> impl Iterator<Item = i64> {
    let half = ((p - 1) / 2) as i64;
    (1..=half).map(move |k| p as i64 * j - k)
}

pub fn exponent_set(params: &BorweinParams) -> ExponentSet {
    let n = params.n as i64;
    let elements = (-(n - 1)..=n)
        .flat_map(|j| exponent_block(params.p, j))
        .collect();
    ExponentSet { elements }
}

/// Exponent shift `e` and sign relating the dense and Laurent forms: `a_i = sign * b_{i-e}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftData {
    pub e: u64,
    /// `+1` or `-1`.
    pub sign: i64,
}

pub fn shift_data(params: &BorweinParams) -> ShiftData {
    let (p, s, n) = (params.p, params.s, params.n);
    let num = s * n * (p - 1) * (2 * p * n + 1 - p);
    debug_assert_eq!(num % 8, 0);
    let flips = s * n * (p - 1) / 2;
    ShiftData {
        e: num / 8,
        sign: if flips % 2 == 0 { 1 } else { -1 },
    }
}

/// Expands `prod_{x in D} (1 - q^x)^s` as a Laurent polynomial.
pub fn laurent_borwein(params: &BorweinParams) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for &x in exponent_set(params).elements() {
        for _ in 0..params.s {
            acc.mul_one_minus_monomial(x);
        }
    }
    acc
}

/// Splits `poly` into `p` residue-class components under the sign convention of the
/// Borwein conjectures: `poly = C_0(q^p) - q C_1(q^p) - ... - q^{p-1} C_{p-1}(q^p)`.
pub fn decompose_mod_p(poly: &DensePoly, p: u64) -> Vec<DensePoly> {
    assert!(p >= 2, "p must be at least 2");
    let p = p as usize;
    let mut parts: Vec<Vec<BigInt>> = vec![Vec::new(); p];
    for (i, c) in poly.coeffs().iter().enumerate() {
        let t = i % p;
        parts[t].push(if t == 0 { c.clone() } else { -c });
    }
    parts.into_iter().map(DensePoly::from_coeffs).collect()
}

/// Inverse of [`decompose_mod_p`].
pub fn reconstruct_mod_p(components: &[DensePoly]) -> DensePoly {
    let p = components.len();
    components
        .iter()
        .enumerate()
        .fold(DensePoly::zero(), |acc, (t, c)| {
            let term = c.substitute_power(p).shift_up(t);
            if t == 0 {
                &acc + &term
            } else {
                &acc - &term
            }
        })
}

/// Which of the three classical sign conjectures a `(p, s)` pair corresponds to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conjecture {
    First,
    Second,
    Third,
}

impl Conjecture {
    pub fn for_pair(p: u64, s: u64) -> Option<Conjecture> {
        match (p, s) {
            (3, 1) => Some(Conjecture::First),
            (3, 2) => Some(Conjecture::Second),
            (5, 1) => Some(Conjecture::Third),
            _ => None,
        }
    }
}

/// Outcome of a sign-pattern check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignPattern {
    /// Every component is coefficient-wise nonnegative.
    pub holds: bool,
    /// Smallest exponent `i` of the original polynomial whose sign breaks the pattern.
    pub first_violation: Option<usize>,
    /// `None` when `(p, s)` is outside the three classical conjectures; the pattern is then
    /// reported without any claim attached.
    pub conjecture: Option<Conjecture>,
}

/// Checks the sign pattern `+ - - ... -` of the coefficients modulo `p`.
pub fn sign_pattern_of(poly: &DensePoly, p: u64) -> Option<usize> {
    poly.coeffs().iter().enumerate().find_map(|(i, c)| {
        let bad = if (i as u64).is_multiple_of(p) {
            c.is_negative()
        } else {
            c.is_positive()
        };
        bad.then_some(i)
    })
}

pub fn check_sign_pattern(params: &BorweinParams) -> SignPattern {
    let poly = borwein_poly(params);
    let first_violation = sign_pattern_of(&poly, params.p);
    SignPattern {
        holds: first_violation.is_none(),
        first_violation,
        conjecture: Conjecture::for_pair(params.p, params.s),
    }
}

/// Successive dense expansions for `n = 1, 2, ...` at fixed `(p, s)`, each built from the
/// previous one by multiplying in the new `j = n` block.
#[derive(Clone, Debug)]
pub struct BorweinTower {
    p: u64,
    s: u64,
    n: u64,
    poly: DensePoly,
}

impl BorweinTower {
    pub fn new(p: u64, s: u64) -> Result<Self> {
        BorweinParams::new(p, s, 1)?;
        Ok(BorweinTower {
            p,
            s,
            n: 0,
            poly: DensePoly::one(),
        })
    }

    /// Advances to the next `n` and returns a view of its polynomial.
    pub fn advance(&mut self) -> (BorweinParams, &DensePoly) {
        self.n += 1;
        for m in product_exponents(self.p, self.n..=self.n) {
            for _ in 0..self.s {
                self.poly.mul_one_minus_monomial(m as usize);
            }
        }
        let params = BorweinParams {
            p: self.p,
            s: self.s,
            n: self.n,
        };
        (params, &self.poly)
    }
}

/// Laurent counterpart of [`BorweinTower`]: each step adds the `j = -(n-1)` and `j = n` blocks.
#[derive(Clone, Debug)]
pub struct LaurentTower {
    p: u64,
    s: u64,
    n: u64,
    poly: LaurentPoly,
}

impl LaurentTower {
    pub fn new(p: u64, s: u64) -> Result<Self> {
        BorweinParams::new(p, s, 1)?;
        Ok(LaurentTower {
            p,
            s,
            n: 0,
            poly: LaurentPoly::one(),
        })
    }

    pub fn advance(&mut self) -> (BorweinParams, &LaurentPoly) {
        self.n += 1;
        let n = self.n as i64;
        let blocks = exponent_block(self.p, -(n - 1)).chain(exponent_block(self.p, n));
        for x in blocks {
            for _ in 0..self.s {
                self.poly.mul_one_minus_monomial(x);
            }
        }
        let params = BorweinParams {
            p: self.p,
            s: self.s,
            n: self.n,
        };
        (params, &self.poly)
    }
}

/// Checks `a_i = sign * b_{i-e}` over every exponent of both polynomials.
pub fn shift_identity_holds(dense: &DensePoly, laurent: &LaurentPoly, shift: ShiftData) -> bool {
    let e = shift.e as i64;
    if dense.is_zero() || laurent.is_zero() {
        return dense.is_zero() && laurent.is_zero();
    }
    if laurent.offset() + e != 0 || laurent.coeffs().len() != dense.coeffs().len() {
        return false;
    }
    dense
        .coeffs()
        .iter()
        .zip(laurent.coeffs())
        .all(|(a, b)| if shift.sign > 0 { a == b } else { *a == -b })
}

/// Checks `a_i = a_{N-i}`.
pub fn is_palindromic(poly: &DensePoly) -> bool {
    let c = poly.coeffs();
    c.iter().eq(c.iter().rev())
}

/// `true` when every coefficient is nonnegative.
pub fn is_nonnegative(poly: &DensePoly) -> bool {
    poly.coeffs().iter().all(|c| !c.is_negative())
}
