//! The character formula for `N_D(b)`, its main terms, and the root-of-unity product
//! behind them.
//!
//! For a character `chi` of `G = Z/2pnZ` the product `prod_{x in D} (1 - chi(x))^s` vanishes
//! unless `p | o(chi)`, in which case it equals `F(chi)^{s|G|/o(chi)}` with
//! `F(chi) = prod_{k=1}^{(p-1)/2} (1 - conj(chi)^{o/p}(k))` and `|F(chi)| = sqrt(p)`.
//! Orthogonality then gives `N_D(b) = (1/|G|) sum_{p | o(chi)} conj(chi)(b) F(chi)^{s|G|/o}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;
use rayon::prelude::*;

use super::{characters, Character, PrecisionPolicy};
use crate::ball::{Ball, ComplexBall, RootTable};
use crate::borwein::{is_prime, shift_data, BorweinParams};
use crate::error::{Error, Result};

/// `F(chi)` together with a bound on `| |F(chi)|^2 - p |`.
#[derive(Clone, Debug)]
pub struct OrderPFactor {
    pub value: ComplexBall,
    pub norm_sqr: Ball,
    pub deviation_up: f64,
}

fn factor_with_roots(p: u64, chi: &Character, roots: &RootTable) -> ComplexBall {
    let step = chi.order() / p;
    let c = chi.pow(step);
    let prec = roots.get(0).prec();
    let one = ComplexBall::one(prec);
    (1..=((p - 1) / 2) as i64).fold(one.clone(), |acc, k| {
        acc.mul(&one.sub(roots.get(-c.exponent_at(k))))
    })
}

/// `F(chi) = prod_{k=1}^{(p-1)/2} (1 - conj(chi)^{o/p}(k))` for a character with `p | o(chi)`.
pub fn order_p_factor(params: &BorweinParams, chi: &Character, prec: u32) -> Result<OrderPFactor> {
    let p = params.p();
    if chi.group_order() != params.group_order() || !chi.order().is_multiple_of(p) {
        return Err(Error::InvalidArgument(format!(
            "character {} of Z/{}Z does not have order divisible by {p}",
            chi.index(),
            chi.group_order()
        )));
    }
    let roots = RootTable::new(chi.group_order(), prec);
    let value = factor_with_roots(p, chi, &roots);
    let norm_sqr = value.norm_sqr();
    let deviation_up = norm_sqr.distance_up(&Ball::from_i64(p as i64, norm_sqr.prec()));
    Ok(OrderPFactor {
        value,
        norm_sqr,
        deviation_up,
    })
}

/// Evaluates the character formula for every residue at `bits` of precision; returns the
/// rounded values and the worst residual.
fn char_formula_at(params: &BorweinParams, bits: u32) -> (Vec<BigInt>, f64) {
    let g = params.group_order();
    let p = params.p();
    let roots = RootTable::new(g, bits);
    let relevant: Vec<Character> = characters(g)
        .into_iter()
        .filter(|c| c.order() % p == 0)
        .collect();
    let weights: Vec<ComplexBall> = relevant
        .par_iter()
        .map(|chi| factor_with_roots(p, chi, &roots).pow(params.s() * g / chi.order()))
        .collect();

    let results: Vec<(BigInt, f64)> = (0..g as i64)
        .into_par_iter()
        .map(|b| {
            // fixed summation order (ascending character index) keeps enclosures reproducible
            let sum = relevant
                .iter()
                .zip(&weights)
                .fold(ComplexBall::zero(bits), |acc, (chi, w)| {
                    acc.add(&roots.get(-chi.exponent_at(b)).mul(w))
                });
            let z = sum.div_u64(g);
            let (v, res) = z.re.nearest_integer();
            (v, res.max(z.im.abs_up()))
        })
        .collect();
    let worst = results.iter().map(|r| r.1).fold(0.0, f64::max);
    (results.into_iter().map(|r| r.0).collect(), worst)
}

/// `N_D(b)` for every residue `b` modulo `2pn` from the character formula.
pub fn n_d_char_formula_all(params: &BorweinParams, policy: &PrecisionPolicy) -> Result<Vec<BigInt>> {
    policy.certify(|bits| char_formula_at(params, bits))
}

pub fn n_d_char_formula(params: &BorweinParams, b: i64, policy: &PrecisionPolicy) -> Result<BigInt> {
    let all = n_d_char_formula_all(params, policy)?;
    Ok(all[b.rem_euclid(all.len() as i64) as usize].clone())
}

/// Main term of `N_D(b)` and whether `b + sn(p^2-1)/8 ≡ 0 (mod p)` selected the large one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainTermND {
    pub value: BigRational,
    pub condition: bool,
}

pub fn n_d_main_term(params: &BorweinParams, b: i64) -> MainTermND {
    let p = params.p();
    let twist = (params.sn() as u128 * ((p as u128 * p as u128 - 1) / 8)) % p as u128;
    let condition = (b.rem_euclid(p as i64) as u128 + twist).is_multiple_of(p as u128);
    let sign = BigInt::from(shift_data(params).sign);
    let pow = BigInt::from(p).pow(params.sn());
    let numer = if condition {
        sign * BigInt::from(p - 1) * pow
    } else {
        -sign * pow
    };
    MainTermND {
        value: BigRational::new(numer, BigInt::from(params.group_order())),
        condition,
    }
}

/// Both sides of `prod_{k=1}^{(p-1)/2} (1 - zeta_p^{kr})^2 = p zeta_{8p}^{(p^2-1) r + 2p(p-1)}`.
#[derive(Clone, Debug)]
pub struct LemmaDProduct {
    pub lhs: ComplexBall,
    pub rhs: ComplexBall,
    /// Upper bound on `|lhs - rhs|`.
    pub diff_up: f64,
    /// Upper bound on `| |lhs| - p |`.
    pub modulus_dev_up: f64,
}

pub fn lemma_d_product(p: u64, r: u64, bits: u32) -> Result<LemmaDProduct> {
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidParams(format!("p = {p} must be an odd prime")));
    }
    if r == 0 || r >= p {
        return Err(Error::InvalidArgument(format!("r = {r} must lie in [1, {}]", p - 1)));
    }
    let prec = bits + super::GUARD_BITS;
    let roots = RootTable::new(8 * p, prec);
    let one = ComplexBall::one(prec);
    let lhs = (1..=(p - 1) / 2).fold(one.clone(), |acc, k| {
        let f = one.sub(roots.get((8 * k * r) as i64));
        acc.mul(&f.mul(&f))
    });
    let e = ((p * p - 1) * r + 2 * p * (p - 1)) as i64;
    let rhs = roots.get(e).mul_int(&BigInt::from(p));
    let diff_up = lhs.distance_up(&rhs);
    // ||z| - p| = ||z|^2 - p^2| / (|z| + p) <= ||z|^2 - p^2| / p
    let p_sq = Ball::from_int(&BigInt::from(p * p), prec);
    let modulus_dev_up = lhs.norm_sqr().distance_up(&p_sq) / p as f64;
    Ok(LemmaDProduct {
        lhs,
        rhs,
        diff_up,
        modulus_dev_up,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charsieve::n_d_alternating_all_fold;
    use num_traits::Zero;

    fn params(p: u64, s: u64, n: u64) -> BorweinParams {
        BorweinParams::new(p, s, n).unwrap()
    }

    #[test]
    fn char_formula_small() {
        let pr = params(3, 1, 1);
        let pol = PrecisionPolicy::for_params(&pr);
        assert_eq!(n_d_char_formula(&pr, 0, &pol).unwrap(), BigInt::from(1));
        assert_eq!(n_d_char_formula(&pr, 4, &pol).unwrap(), BigInt::from(0));
        assert_eq!(n_d_char_formula(&pr, -1, &pol).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn char_formula_matches_fold() {
        for (p, s, n) in [(5, 1, 2), (3, 2, 3), (7, 1, 2), (3, 3, 4), (11, 1, 1)] {
            let pr = params(p, s, n);
            let pol = PrecisionPolicy::for_params(&pr);
            assert_eq!(
                n_d_char_formula_all(&pr, &pol).unwrap(),
                n_d_alternating_all_fold(&pr),
                "{pr}"
            );
        }
    }

    #[test]
    fn main_terms_small() {
        let pr = params(3, 1, 1);
        let half = BigRational::new(1.into(), 2.into());
        for b in 0..6 {
            let m = n_d_main_term(&pr, b);
            if b % 3 == 2 {
                assert!(m.condition);
                assert_eq!(m.value, BigRational::from_integer((-1).into()));
            } else {
                assert!(!m.condition);
                assert_eq!(m.value, half);
            }
        }
    }

    #[test]
    fn main_terms_sum_to_zero() {
        for (p, s, n) in [(3, 1, 1), (3, 2, 4), (5, 3, 2), (7, 1, 3)] {
            let pr = params(p, s, n);
            let total = (0..pr.group_order() as i64)
                .map(|b| n_d_main_term(&pr, b).value)
                .fold(BigRational::zero(), |a, v| a + v);
            assert!(total.is_zero(), "{pr}");
        }
    }

    #[test]
    fn order_p_factor_modulus() {
        let pr = params(7, 1, 3);
        for chi in characters(42).into_iter().filter(|c| c.order() % 7 == 0) {
            let f = order_p_factor(&pr, &chi, 128).unwrap();
            assert!(f.deviation_up < 1e-12);
        }
        assert!(order_p_factor(&pr, &Character::new(42, 7).unwrap(), 128).is_err());
    }

    #[test]
    fn lemma_d_examples() {
        let l = lemma_d_product(3, 1, 128).unwrap();
        let ang = -std::f64::consts::PI / 3.0;
        let (re, im) = l.lhs.to_f64_pair();
        assert!((re - 3.0 * ang.cos()).abs() < 1e-12 && (im - 3.0 * ang.sin()).abs() < 1e-12);
        for r in 1..5 {
            let l = lemma_d_product(5, r, 128).unwrap();
            assert!(l.diff_up < 1e-12 && l.modulus_dev_up < 1e-12);
        }
        assert!(lemma_d_product(9, 1, 128).is_err());
        assert!(lemma_d_product(5, 5, 128).is_err());
    }
}
