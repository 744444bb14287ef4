//! Dense univariate polynomials over Q and real-root isolation by Sturm
//! sequences with exact rational arithmetic.
//!
//! Coefficients are stored in ascending order of degree.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type QPoly = Vec<BigRational>;

pub fn trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn derivative(p: &[BigRational]) -> QPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

pub fn sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let len = a.len().max(b.len());
    let zero = BigRational::zero();
    trim((0..len).map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).collect())
}

/// Quotient and remainder; panics on a zero divisor.
pub fn div_rem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem = trim(a.to_vec());
    let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let coef = &rem[dr] / &lead;
        let shift = dr - db;
        for (i, c) in b.iter().enumerate().take(db + 1) {
            rem[i + shift] -= &coef * c;
        }
        quot[shift] = coef;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

pub fn monic(p: &[BigRational]) -> QPoly {
    match degree(p) {
        Some(d) => {
            let lead = p[d].clone();
            p[..=d].iter().map(|c| c / &lead).collect()
        }
        None => Vec::new(),
    }
}

pub fn gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while degree(&y).is_some() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Yun's square-free decomposition: returns `(factor, multiplicity)` pairs
/// with non-constant, pairwise coprime, square-free factors whose product
/// (with multiplicities) equals `p` up to a constant.
pub fn square_free_decomposition(p: &[BigRational]) -> Vec<(QPoly, usize)> {
    let p = trim(p.to_vec());
    if degree(&p).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let dp = derivative(&p);
    let a0 = gcd(&p, &dp);
    let mut b = div_rem(&p, &a0).0;
    let c = div_rem(&dp, &a0).0;
    let mut d = sub(&c, &derivative(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while degree(&b).unwrap_or(0) > 0 {
        let a = gcd(&b, &d);
        let next_b = div_rem(&b, &a).0;
        let next_c = div_rem(&d, &a).0;
        if degree(&a).unwrap_or(0) > 0 {
            out.push((a, i));
        }
        d = sub(&next_c, &derivative(&next_b));
        b = next_b;
        i += 1;
    }
    out
}

/// Polynomial with integer coefficients obtained by positive scaling, so
/// signs of values are preserved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly(pub Vec<BigInt>);

impl IntPoly {
    pub fn from_rational(p: &[BigRational]) -> IntPoly {
        let p = trim(p.to_vec());
        let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !content.is_zero() && !content.is_one() {
            for c in &mut ints {
                *c /= &content;
            }
        }
        IntPoly(ints)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|c| !c.is_zero())
    }

    /// Sign of `p(x)`, evaluated homogeneously in integers.
    pub fn sign_at_rational(&self, x: &BigRational) -> Ordering {
        let Some(d) = self.degree() else {
            return Ordering::Equal;
        };
        let num = x.numer();
        let den = x.denom();
        let mut value = BigInt::zero();
        let mut pow = BigInt::one();
        for c in self.0[..=d].iter().rev() {
            value = value * num + c * &pow;
            pow *= den;
        }
        value.sign_cmp()
    }

    fn lead_sign(&self) -> Ordering {
        self.degree().map_or(Ordering::Equal, |d| self.0[d].sign_cmp())
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

pub struct SturmSequence {
    polys: Vec<IntPoly>,
}

impl SturmSequence {
    pub fn new(p: &[BigRational]) -> SturmSequence {
        let mut seq: Vec<QPoly> = vec![trim(p.to_vec())];
        let dp = derivative(p);
        if degree(&dp).is_some() {
            seq.push(dp);
            loop {
                let k = seq.len();
                let (_, r) = div_rem(&seq[k - 2], &seq[k - 1]);
                if degree(&r).is_none() {
                    break;
                }
                seq.push(r.into_iter().map(|c| -c).collect());
            }
        }
        SturmSequence { polys: seq.iter().map(|q| IntPoly::from_rational(q)).collect() }
    }

    fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for s in signs.filter(|&s| s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.polys.iter().map(|p| p.sign_at_rational(x)))
    }

    pub fn variations_at_infinity(&self) -> usize {
        Self::variations(self.polys.iter().map(IntPoly::lead_sign))
    }

    /// Distinct roots in `(a, b]` for square-free input with `p(a) != 0`.
    pub fn count_between(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }
}

/// Cauchy bound: every root has absolute value strictly below the result.
pub fn root_bound(p: &[BigRational]) -> BigRational {
    let d = degree(p).expect("nonzero polynomial");
    let lead = p[d].abs();
    let max = p[..d].iter().map(|c| c.abs() / &lead).max().unwrap_or_else(BigRational::zero);
    (max + BigRational::one()).ceil() + BigRational::one()
}

/// A root bracketed in `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }
}

/// Isolates and refines every root of the square-free polynomial `p` in
/// `(lo, hi]` until each bracket is narrower than `width`. `p(lo)` and
/// `p(hi)` must be nonzero.
pub fn isolate_roots(p: &[BigRational], lo: &BigRational, hi: &BigRational, width: &BigRational) -> Vec<RootInterval> {
    let sturm = SturmSequence::new(p);
    let ip = IntPoly::from_rational(p);
    let mut out = Vec::new();
    let count = sturm.count_between(lo, hi);
    split(&sturm, &ip, lo.clone(), hi.clone(), count, width, &mut out);
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

fn split(
    sturm: &SturmSequence,
    p: &IntPoly,
    lo: BigRational,
    hi: BigRational,
    count: usize,
    width: &BigRational,
    out: &mut Vec<RootInterval>,
) {
    match count {
        0 => {}
        1 => out.push(refine(p, lo, hi, width)),
        _ => {
            let mid = nonroot_split_point(p, &lo, &hi);
            let left = sturm.count_between(&lo, &mid);
            split(sturm, p, lo, mid.clone(), left, width, out);
            split(sturm, p, mid, hi, count - left, width, out);
        }
    }
}

/// A point strictly inside `(lo, hi)` where `p` does not vanish.
fn nonroot_split_point(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let mut denom = BigInt::from(2);
    loop {
        // try lo + (hi-lo)·j/denom for odd j, closest to the middle first
        let step = (hi - lo) / BigRational::from_integer(denom.clone());
        let mid = (lo + hi) / &two;
        for j in 0u32..8 {
            let off = &step * BigRational::from_integer(BigInt::from(j)) / BigRational::from_integer(BigInt::from(8));
            for cand in [&mid + &off, &mid - &off] {
                if &cand > lo && &cand < hi && p.sign_at_rational(&cand) != Ordering::Equal {
                    return cand;
                }
            }
        }
        denom *= 2;
    }
}

/// Bisection on sign change for a bracket holding exactly one simple root.
fn refine(p: &IntPoly, mut lo: BigRational, mut hi: BigRational, width: &BigRational) -> RootInterval {
    let two = BigRational::from_integer(BigInt::from(2));
    let s_lo = p.sign_at_rational(&lo);
    if p.sign_at_rational(&hi) == Ordering::Equal {
        return RootInterval { lo: hi.clone(), hi };
    }
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        match p.sign_at_rational(&mid) {
            Ordering::Equal => return RootInterval { lo: mid.clone(), hi: mid },
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    RootInterval { lo, hi }
}
