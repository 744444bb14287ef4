//! Exact arithmetic in the quadratic field Q(√5) and certified comparisons
//! of rationals against its elements.
//!
//! The path constants `a = (5-√5)/10`, `b = (7√5-17)/10` and the golden ratio
//! all live in Q(√5), as does the closed form for the average matching size
//! of a path, so every comparison the tree verifiers need is decidable.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ratio::{rational_to_decimal, rational_to_f64};

/// Decimal precisions tried, in order, by [`certified_cmp`].
pub const PRECISION_LADDER: [u32; 3] = [16, 32, 64];

/// `p + q√5` with rational `p`, `q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surd5 {
    pub p: BigRational,
    pub q: BigRational,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Surd5 {
    pub fn new(p: BigRational, q: BigRational) -> Surd5 {
        Surd5 { p, q }
    }

    pub fn rational(p: BigRational) -> Surd5 {
        Surd5 { p, q: BigRational::zero() }
    }

    /// `(p_num/p_den) + (q_num/q_den)√5`
    pub fn from_parts(p_num: i64, p_den: i64, q_num: i64, q_den: i64) -> Surd5 {
        Surd5 { p: rat(p_num, p_den), q: rat(q_num, q_den) }
    }

    pub fn sqrt5() -> Surd5 {
        Surd5::from_parts(0, 1, 1, 1)
    }

    pub fn golden_ratio() -> Surd5 {
        Surd5::from_parts(1, 2, 1, 2)
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn conjugate(&self) -> Surd5 {
        Surd5 { p: self.p.clone(), q: -self.q.clone() }
    }

    /// Field norm `p² - 5q²`.
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p - rat(5, 1) * &self.q * &self.q
    }

    pub fn recip(&self) -> Surd5 {
        assert!(!self.is_zero(), "division by zero in Q(sqrt 5)");
        let norm = self.norm();
        let c = self.conjugate();
        Surd5 { p: c.p / &norm, q: c.q / norm }
    }

    pub fn div(&self, other: &Surd5) -> Surd5 {
        self * &other.recip()
    }

    pub fn scale(&self, r: &BigRational) -> Surd5 {
        Surd5 { p: &self.p * r, q: &self.q * r }
    }

    pub fn pow(&self, mut e: u32) -> Surd5 {
        let mut base = self.clone();
        let mut acc = Surd5::rational(BigRational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        let sp = self.p.cmp(&BigRational::zero());
        let sq = self.q.cmp(&BigRational::zero());
        match (sp, sq) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (a, b) if a == b => a,
            (sp, _) => {
                // opposite signs: compare |p| with |q|√5 via squares
                let p2 = &self.p * &self.p;
                let q2 = rat(5, 1) * &self.q * &self.q;
                match p2.cmp(&q2) {
                    Ordering::Greater => sp,
                    Ordering::Less => sp.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn abs(&self) -> Surd5 {
        if self.signum() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// A rational interval of width at most `10^-digits` containing the value.
    pub fn enclose(&self, digits: u32) -> (BigRational, BigRational) {
        if self.q.is_zero() {
            return (self.p.clone(), self.p.clone());
        }
        // widen the √5 bracket so the q-scaled bracket still fits the budget
        let q_abs = self.q.abs();
        let extra = (q_abs.ceil().to_integer().to_string().len() as u32) + 1;
        let scale_digits = digits + extra;
        let scale = BigInt::from(10u32).pow(scale_digits);
        let s = (BigInt::from(5u32) * &scale * &scale).sqrt();
        let lo5 = BigRational::new(s.clone(), scale.clone());
        let hi5 = BigRational::new(s + 1u32, scale);
        let a = &self.p + &self.q * &lo5;
        let b = &self.p + &self.q * &hi5;
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclose(20);
        rational_to_f64(&((lo + hi) / rat(2, 1)))
    }

    pub fn to_decimal(&self, digits: u32) -> String {
        let (lo, _) = self.enclose(digits + 2);
        rational_to_decimal(&lo, digits)
    }
}

impl fmt::Debug for Surd5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})√5", self.p, self.q)
    }
}

impl fmt::Display for Surd5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &Surd5 {
    type Output = Surd5;
    fn add(self, o: &Surd5) -> Surd5 {
        Surd5 { p: &self.p + &o.p, q: &self.q + &o.q }
    }
}

impl Sub for &Surd5 {
    type Output = Surd5;
    fn sub(self, o: &Surd5) -> Surd5 {
        Surd5 { p: &self.p - &o.p, q: &self.q - &o.q }
    }
}

impl Mul for &Surd5 {
    type Output = Surd5;
    fn mul(self, o: &Surd5) -> Surd5 {
        Surd5 {
            p: &self.p * &o.p + rat(5, 1) * &self.q * &o.q,
            q: &self.p * &o.q + &self.q * &o.p,
        }
    }
}

impl Neg for Surd5 {
    type Output = Surd5;
    fn neg(self) -> Surd5 {
        Surd5 { p: -self.p, q: -self.q }
    }
}

impl Add for Surd5 {
    type Output = Surd5;
    fn add(self, o: Surd5) -> Surd5 {
        &self + &o
    }
}

impl Sub for Surd5 {
    type Output = Surd5;
    fn sub(self, o: Surd5) -> Surd5 {
        &self - &o
    }
}

impl Mul for Surd5 {
    type Output = Surd5;
    fn mul(self, o: Surd5) -> Surd5 {
        &self * &o
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("comparison undecided at {digits} decimal digits")]
pub struct Undecided {
    pub digits: u32,
}

/// Certified comparison of a rational `r` against `x ∈ Q(√5)`.
///
/// Encloses `x` in rational intervals of shrinking width until `r` falls
/// outside. If the ladder is exhausted, exact equality is tested; a value
/// that is neither separated nor equal is reported as [`Undecided`].
pub fn certified_cmp(r: &BigRational, x: &Surd5) -> Result<Ordering, Undecided> {
    certified_cmp_with(r, x, &PRECISION_LADDER)
}

pub fn certified_cmp_with(r: &BigRational, x: &Surd5, ladder: &[u32]) -> Result<Ordering, Undecided> {
    for &digits in ladder {
        let (lo, hi) = x.enclose(digits);
        if r < &lo {
            return Ok(Ordering::Less);
        }
        if r > &hi {
            return Ok(Ordering::Greater);
        }
    }
    if (x - &Surd5::rational(r.clone())).is_zero() {
        return Ok(Ordering::Equal);
    }
    Err(Undecided { digits: ladder.last().copied().unwrap_or(0) })
}

/// The path constants: slope `a`, intercept `b` of the non-path tree bound,
/// and the golden ratio.
#[derive(Debug, Clone)]
pub struct PathConstants {
    pub a: Surd5,
    pub b: Surd5,
    pub phi: Surd5,
}

impl Default for PathConstants {
    fn default() -> Self {
        PathConstants {
            a: Surd5::from_parts(1, 2, -1, 10),
            b: Surd5::from_parts(-17, 10, 7, 10),
            phi: Surd5::golden_ratio(),
        }
    }
}

impl PathConstants {
    /// `a·n + b`
    pub fn tree_bound(&self, n: usize) -> Surd5 {
        &self.a.scale(&rat(n as i64, 1)) + &self.b
    }

    /// Limit of `c_n`: `(1-√5)/10`.
    pub fn c_limit(&self) -> Surd5 {
        Surd5::from_parts(1, 10, -1, 10)
    }
}
