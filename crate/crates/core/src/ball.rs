//! Fixed-point ball arithmetic for certified complex evaluation.
//!
//! A [`Ball`] is `mid * 2^-prec` with an error radius `rad * 2^-prec`; every operation
//! widens the radius enough to contain the exact result, so an enclosure computed here is
//! a proof that the true value lies inside. [`ComplexBall`] pairs two of them.
//!
//! All balls combined in one expression must share the same `prec`.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Upper bound on `x * 2^-prec` as an `f64`.
fn ulps_to_f64_up(x: &BigUint, prec: u32) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let bits = x.bits();
    let (mant, shift) = if bits > 64 {
        let s = bits - 64;
        ((x >> s) + 1u32, s as i64)
    } else {
        (x.clone(), 0)
    };
    let e = shift - prec as i64;
    if e + 64 < -1000 {
        return 1e-290;
    }
    let m = mant.to_f64().unwrap_or(f64::MAX) * (1.0 + 1e-15);
    m * 2f64.powi(e as i32)
}

/// A real interval `[mid - rad, mid + rad] * 2^-prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    mid: BigInt,
    rad: BigUint,
    prec: u32,
}

impl Ball {
    pub fn zero(prec: u32) -> Self {
        Ball {
            mid: BigInt::zero(),
            rad: BigUint::zero(),
            prec,
        }
    }

    pub fn from_int(v: &BigInt, prec: u32) -> Self {
        Ball {
            mid: v << prec,
            rad: BigUint::zero(),
            prec,
        }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::from_int(&BigInt::from(v), prec)
    }

    pub fn from_ratio(v: &BigRational, prec: u32) -> Self {
        let scaled = v.numer() << prec;
        let (q, r) = scaled.div_mod_floor(v.denom());
        Ball {
            mid: q,
            rad: if r.is_zero() {
                BigUint::zero()
            } else {
                BigUint::one()
            },
            prec,
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    fn check(&self, other: &Ball) {
        assert_eq!(self.prec, other.prec, "ball precision mismatch");
    }

    pub fn add(&self, other: &Ball) -> Ball {
        self.check(other);
        Ball {
            mid: &self.mid + &other.mid,
            rad: &self.rad + &other.rad,
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &Ball) -> Ball {
        self.check(other);
        Ball {
            mid: &self.mid - &other.mid,
            rad: &self.rad + &other.rad,
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Ball {
        Ball {
            mid: -&self.mid,
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        self.check(other);
        let full = &self.mid * &other.mid;
        let err = self.mid.magnitude() * &other.rad
            + other.mid.magnitude() * &self.rad
            + &self.rad * &other.rad;
        let rad = if err.is_zero() {
            BigUint::zero()
        } else {
            (err >> self.prec) + 1u32
        };
        // Truncating the product costs at most one more ulp.
        Ball {
            mid: full >> self.prec,
            rad: rad + 1u32,
            prec: self.prec,
        }
    }

    /// Exact multiplication by an integer.
    pub fn mul_int(&self, k: &BigInt) -> Ball {
        Ball {
            mid: &self.mid * k,
            rad: &self.rad * k.magnitude(),
            prec: self.prec,
        }
    }

    pub fn div_u64(&self, k: u64) -> Ball {
        assert!(k > 0, "division by zero");
        let (q, r) = self.mid.div_mod_floor(&BigInt::from(k));
        let (rq, rr) = self.rad.div_rem(&BigUint::from(k));
        let mut rad = rq;
        if !rr.is_zero() {
            rad += 1u32;
        }
        if !r.is_zero() {
            rad += 1u32;
        }
        Ball {
            mid: q,
            rad,
            prec: self.prec,
        }
    }

    /// Upper bound on the radius.
    pub fn radius_up(&self) -> f64 {
        ulps_to_f64_up(&self.rad, self.prec)
    }

    /// Upper bound on `|x|` over the whole ball.
    pub fn abs_up(&self) -> f64 {
        ulps_to_f64_up(&(self.mid.magnitude() + &self.rad), self.prec)
    }

    /// Midpoint as a (rounded) `f64`.
    pub fn mid_f64(&self) -> f64 {
        let bits = self.mid.bits();
        let s = bits.saturating_sub(64);
        let m = (&self.mid >> s).to_f64().unwrap_or(0.0);
        m * 2f64.powi(s as i32 - self.prec as i32)
    }

    /// Integer nearest to the midpoint, with an upper bound on the distance from that
    /// integer to any point of the ball.
    pub fn nearest_integer(&self) -> (BigInt, f64) {
        let half = BigInt::one() << self.prec.saturating_sub(1);
        let n = (&self.mid + &half) >> self.prec;
        let diff = &self.mid - (&n << self.prec);
        let res = ulps_to_f64_up(&(diff.magnitude() + &self.rad), self.prec);
        (n, res)
    }

    /// Upper bound on `|a - b|` over both balls.
    pub fn distance_up(&self, other: &Ball) -> f64 {
        self.sub(other).abs_up()
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn mid_sign(&self) -> Sign {
        self.mid.sign()
    }

    pub fn is_negative_certain(&self) -> bool {
        self.mid.is_negative() && self.mid.magnitude() > &self.rad
    }
}

/// A complex enclosure `re + i im`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: Ball,
    pub im: Ball,
}

impl ComplexBall {
    pub fn zero(prec: u32) -> Self {
        ComplexBall {
            re: Ball::zero(prec),
            im: Ball::zero(prec),
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_real(Ball::from_i64(1, prec))
    }

    pub fn from_real(re: Ball) -> Self {
        let prec = re.prec();
        ComplexBall {
            re,
            im: Ball::zero(prec),
        }
    }

    pub fn from_ratio(v: &BigRational, prec: u32) -> Self {
        Self::from_real(Ball::from_ratio(v, prec))
    }

    pub fn from_int(v: &BigInt, prec: u32) -> Self {
        Self::from_real(Ball::from_int(v, prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn add(&self, o: &ComplexBall) -> ComplexBall {
        ComplexBall {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn sub(&self, o: &ComplexBall) -> ComplexBall {
        ComplexBall {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    pub fn neg(&self) -> ComplexBall {
        ComplexBall {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn conj(&self) -> ComplexBall {
        ComplexBall {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn mul(&self, o: &ComplexBall) -> ComplexBall {
        ComplexBall {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> ComplexBall {
        ComplexBall {
            re: self.re.mul_int(k),
            im: self.im.mul_int(k),
        }
    }

    pub fn mul_ratio(&self, v: &BigRational) -> ComplexBall {
        self.mul(&ComplexBall::from_ratio(v, self.prec()))
    }

    pub fn div_u64(&self, k: u64) -> ComplexBall {
        ComplexBall {
            re: self.re.div_u64(k),
            im: self.im.div_u64(k),
        }
    }

    pub fn pow(&self, mut e: u64) -> ComplexBall {
        let mut base = self.clone();
        let mut acc = ComplexBall::one(self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `|z|^2` as a real ball.
    pub fn norm_sqr(&self) -> Ball {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    /// Upper bound on `|z|` over the ball (via the max-norm bound `|re| + |im|`
    /// tightened by the Euclidean norm of the two upper bounds).
    pub fn abs_up(&self) -> f64 {
        let r = self.re.abs_up();
        let i = self.im.abs_up();
        (r * r + i * i).sqrt() * (1.0 + 1e-15)
    }

    /// Upper bound on `|a - b|`.
    pub fn distance_up(&self, o: &ComplexBall) -> f64 {
        self.sub(o).abs_up()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.mid_f64(), self.im.mid_f64())
    }
}

impl fmt::Display for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64_pair();
        let rad = self.re.radius_up().max(self.im.radius_up());
        write!(f, "{re:.12} {} {:.12}i (±{rad:.1e})", if im < 0.0 { '-' } else { '+' }, im.abs())
    }
}

/// `arctan(1/x)` for an integer `x >= 2`.
fn atan_inv(x: u64, prec: u32) -> Ball {
    let one = BigInt::one() << prec;
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut power = one / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut terms = 0u64;
    let mut j = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * j + 1);
        if j.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power = &power / &x2;
        j += 1;
        terms += 1;
    }
    Ball {
        mid: sum,
        rad: BigUint::from(3 * terms + 2),
        prec,
    }
}

/// An enclosure of pi.
pub fn pi(prec: u32) -> Ball {
    let a = atan_inv(5, prec).mul_int(&BigInt::from(16));
    let b = atan_inv(239, prec).mul_int(&BigInt::from(4));
    a.sub(&b)
}

/// `exp(i theta)` by its Taylor series; intended for `0 <= theta <= 4`.
pub fn exp_i(theta: &Ball) -> ComplexBall {
    let prec = theta.prec();
    let theta_abs = theta.abs_up();
    let mut re = Ball::from_i64(1, prec);
    let mut im = Ball::zero(prec);
    let mut term = Ball::from_i64(1, prec);
    let mut j = 0u64;
    loop {
        j += 1;
        term = term.mul(theta).div_u64(j);
        match j % 4 {
            0 => re = re.add(&term),
            1 => im = im.add(&term),
            2 => re = re.sub(&term),
            _ => im = im.sub(&term),
        }
        let ulps = term.mid.magnitude() + &term.rad;
        if (j as f64 + 1.0) >= 2.0 * theta_abs && ulps <= BigUint::from(8u32) {
            break;
        }
        assert!(j < 100_000, "series failed to converge");
    }
    // The remaining terms sum to at most the last one (ratio <= 1/2), i.e. 8 ulps.
    let tail = Ball {
        mid: BigInt::zero(),
        rad: BigUint::from(9u32),
        prec,
    };
    ComplexBall {
        re: re.add(&tail),
        im: im.add(&tail),
    }
}

/// Enclosures of all `g`-th roots of unity `exp(2 pi i k / g)`, `0 <= k < g`.
#[derive(Clone, Debug)]
pub struct RootTable {
    roots: Vec<ComplexBall>,
}

impl RootTable {
    pub fn new(g: u64, prec: u32) -> Self {
        assert!(g >= 1, "order must be positive");
        let pi = pi(prec);
        let g_us = g as usize;
        let mut roots: Vec<ComplexBall> = Vec::with_capacity(g_us);
        roots.push(ComplexBall::one(prec));
        for k in 1..=g_us / 2 {
            roots.push(exact_or(g, k as u64, prec).unwrap_or_else(|| {
                exp_i(&pi.mul_int(&BigInt::from(2 * k as u64)).div_u64(g))
            }));
        }
        for k in g_us / 2 + 1..g_us {
            let c = roots[g_us - k].conj();
            roots.push(c);
        }
        RootTable { roots }
    }

    pub fn order(&self) -> u64 {
        self.roots.len() as u64
    }

    /// `exp(2 pi i e / g)` for any integer exponent.
    pub fn get(&self, e: i64) -> &ComplexBall {
        let g = self.roots.len() as i64;
        &self.roots[e.rem_euclid(g) as usize]
    }
}

/// Roots of unity with rational coordinates are stored exactly.
fn exact_or(g: u64, k: u64, prec: u32) -> Option<ComplexBall> {
    let (re, im) = match (4 * k).checked_rem(g)? {
        0 => match 4 * k / g {
            1 => (0, 1),
            2 => (-1, 0),
            _ => return None,
        },
        _ => return None,
    };
    Some(ComplexBall {
        re: Ball::from_i64(re, prec),
        im: Ball::from_i64(im, prec),
    })
}
