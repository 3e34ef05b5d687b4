//! Outward-rounded dyadic interval arithmetic, and certified enclosures of
//! π and of the m-th roots of unity.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The closed interval [lo·2^−prec, hi·2^−prec].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealInterval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub prec: u32,
}

fn pow2(p: u32) -> BigInt {
    BigInt::from(1) << p as usize
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

impl RealInterval {
    pub fn point(v: BigInt, prec: u32) -> Self {
        RealInterval { lo: v.clone(), hi: v, prec }
    }

    pub fn from_integer(n: &BigInt, prec: u32) -> Self {
        Self::point(n << prec as usize, prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let scaled = q.numer() << prec as usize;
        RealInterval { lo: scaled.div_floor(q.denom()), hi: ceil_div(&scaled, q.denom()), prec }
    }

    fn ball(mid: BigInt, rad: BigInt, prec: u32) -> Self {
        RealInterval { lo: &mid - &rad, hi: mid + rad, prec }
    }

    pub fn width(&self) -> BigRational {
        BigRational::new(&self.hi - &self.lo, pow2(self.prec))
    }

    pub fn lower(&self) -> BigRational {
        BigRational::new(self.lo.clone(), pow2(self.prec))
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(self.hi.clone(), pow2(self.prec))
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    /// True iff `other` lies inside `self`; precisions may differ.
    pub fn contains(&self, other: &RealInterval) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        self.lower() <= *q && *q <= self.upper()
    }

    fn check_prec(&self, other: &Self) {
        assert_eq!(self.prec, other.prec, "interval precision mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_prec(other);
        RealInterval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi, prec: self.prec }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RealInterval { lo: -&self.hi, hi: -&self.lo, prec: self.prec }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_prec(other);
        let products = [&self.lo * &other.lo, &self.lo * &other.hi, &self.hi * &other.lo, &self.hi * &other.hi];
        let min = products.iter().min().unwrap();
        let max = products.iter().max().unwrap();
        let scale = pow2(self.prec);
        RealInterval { lo: min.div_floor(&scale), hi: ceil_div(max, &scale), prec: self.prec }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if c.is_negative() {
            RealInterval { lo: b, hi: a, prec: self.prec }
        } else {
            RealInterval { lo: a, hi: b, prec: self.prec }
        }
    }

    /// Division by a positive integer.
    pub fn div_int(&self, d: &BigInt) -> Self {
        assert!(d.is_positive(), "interval division by non-positive integer");
        RealInterval { lo: self.lo.div_floor(d), hi: ceil_div(&self.hi, d), prec: self.prec }
    }

    pub fn to_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi).to_f64().unwrap_or(f64::NAN);
        mid / num_traits::float::FloatCore::powi(2f64, self.prec as i32 + 1)
    }

    /// Midpoint rounded to `places` decimal places.
    pub fn to_decimal(&self, places: usize) -> String {
        let ten_pow = num_traits::pow(BigInt::from(10), places);
        let num: BigInt = (&self.lo + &self.hi) * ten_pow;
        let den: BigInt = pow2(self.prec + 1);
        let rounded: BigInt = (num * BigInt::from(2) + &den).div_floor(&(&den * BigInt::from(2)));
        let negative = rounded.is_negative();
        let digits = rounded.abs().to_str_radix(10);
        let digits = if digits.len() <= places {
            let mut padded = String::new();
            for _ in 0..=places - digits.len() {
                padded.push('0');
            }
            padded + &digits
        } else {
            digits
        };
        let split = digits.len() - places;
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        out.push_str(&digits[..split]);
        if places > 0 {
            out.push('.');
            out.push_str(&digits[split..]);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: RealInterval,
    pub im: RealInterval,
}

impl ComplexInterval {
    pub fn real(re: RealInterval) -> Self {
        let im = RealInterval::point(BigInt::zero(), re.prec);
        ComplexInterval { re, im }
    }

    pub fn add(&self, other: &Self) -> Self {
        ComplexInterval { re: self.re.add(&other.re), im: self.im.add(&other.im) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        ComplexInterval {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        ComplexInterval { re: self.re.scale_int(c), im: self.im.scale_int(c) }
    }

    pub fn div_int(&self, d: &BigInt) -> Self {
        ComplexInterval { re: self.re.div_int(d), im: self.im.div_int(d) }
    }

    pub fn contains(&self, other: &Self) -> bool {
        self.re.contains(&other.re) && self.im.contains(&other.im)
    }

    pub fn to_decimal(&self, places: usize) -> String {
        let mut out = self.re.to_decimal(places);
        let im = self.im.to_decimal(places);
        match im.strip_prefix('-') {
            Some(mag) => write!(out, " - {mag}i"),
            None => write!(out, " + {im}i"),
        }
        .expect("writing to a String");
        out
    }
}

/// atan(1/k)·2^p as a ball (mid, rad) in units of 2^−p.
fn atan_inv(k: u64, p: u32) -> (BigInt, BigInt) {
    let k2 = BigInt::from(k * k);
    let mut pw = pow2(p) / k;
    let mut sum = BigInt::zero();
    let mut j: u64 = 0;
    // each term is a floor of the exact term, so off by less than one unit
    loop {
        let term = &pw / (2 * j + 1);
        if term.is_zero() {
            break;
        }
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        pw /= &k2;
        j += 1;
    }
    (sum, BigInt::from(j + 1))
}

/// Enclosure of π at precision `p`.
pub fn pi(p: u32) -> RealInterval {
    let (a, ea) = atan_inv(5, p);
    let (b, eb) = atan_inv(239, p);
    RealInterval::ball(a * 16 - b * 4, ea * 16 + eb * 4, p)
}

/// Enclosures of (cos 2πk/m, sin 2πk/m) at precision `p`.
pub fn cos_sin_turn(k: u32, m: u32, p: u32) -> (RealInterval, RealInterval) {
    cos_sin_with_pi(&pi(p), k, m)
}

fn cos_sin_with_pi(pi: &RealInterval, k: u32, m: u32) -> (RealInterval, RealInterval) {
    let p = pi.prec;
    let k = k % m;
    if k == 0 {
        return (RealInterval::from_integer(&1.into(), p), RealInterval::point(BigInt::zero(), p));
    }
    let mid: BigInt = (&pi.lo + &pi.hi) / 2;
    let rad = (&pi.hi - &pi.lo) / 2 + 1;
    let theta: BigInt = (mid * BigInt::from(2 * k)).div_floor(&BigInt::from(m));
    let theta_rad = ceil_div(&(rad * (2 * k)), &BigInt::from(m)) + 1;
    debug_assert!(theta < pow2(p) * 7);

    let one = pow2(p);
    let mut t = one.clone();
    let mut err = BigInt::zero();
    let mut total_err = BigInt::zero();
    let (mut cos, mut sin) = (one.clone(), BigInt::zero());
    let mut n: u32 = 1;
    // t ≈ θ^n/n! in units of 2^−p with |error| ≤ err; θ < 7
    loop {
        t = (&t * &theta).div_floor(&(&one * n));
        err = ceil_div(&(&err * 7), &BigInt::from(n)) + 1;
        total_err += &err;
        let signed = if (n / 2) % 2 == 0 { t.clone() } else { -t.clone() };
        if n % 2 == 0 {
            cos += signed;
        } else {
            sin += signed;
        }
        if n >= 16 && t.is_zero() {
            // later terms shrink by a factor below 1/2
            total_err += (&err + BigInt::one()) * BigInt::from(2);
            break;
        }
        n += 1;
    }
    let rad: BigInt = total_err + theta_rad;
    (RealInterval::ball(cos, rad.clone(), p), RealInterval::ball(sin, rad, p))
}

/// ζ_m^j for j = 0..m as complex intervals at a common precision.
#[derive(Clone, Debug)]
pub struct RootTable {
    pub m: u32,
    pub prec: u32,
    roots: Vec<ComplexInterval>,
}

impl RootTable {
    pub fn new(m: u32, prec: u32) -> Self {
        let (re, im) = cos_sin_with_pi(&pi(prec), 1, m);
        let zeta = ComplexInterval { re, im };
        let mut roots = Vec::with_capacity(m as usize);
        roots.push(ComplexInterval::real(RealInterval::from_integer(&BigInt::one(), prec)));
        // radii grow by a few units per power; callers carry guard bits
        for j in 1..m as usize {
            let next = roots[j - 1].mul(&zeta);
            roots.push(next);
        }
        RootTable { m, prec, roots }
    }

    pub fn root(&self, j: u64) -> &ComplexInterval {
        &self.roots[(j % self.m as u64) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_enclosure() {
        let p = pi(200);
        assert!(p.width() < BigRational::new(1.into(), pow2(180)));
        // π to 30 digits
        let approx: BigRational = BigRational::new(
            "3141592653589793238462643383279".parse().unwrap(),
            num_traits::pow(BigInt::from(10), 30),
        );
        let slack = BigRational::new(1.into(), num_traits::pow(BigInt::from(10), 29));
        assert!(p.lower() < &approx + &slack && &approx - &slack < p.upper());
    }

    #[test]
    fn root_table_matches_floats() {
        let t = RootTable::new(7, 80);
        for j in 0..7 {
            let z = t.root(j);
            let ang = 2.0 * core::f64::consts::PI * j as f64 / 7.0;
            assert!((z.re.to_f64() - ang.cos()).abs() < 1e-14);
            assert!((z.im.to_f64() - ang.sin()).abs() < 1e-14);
        }
    }

    #[test]
    fn squares_of_roots_contain_unit_circle_relation() {
        let t = RootTable::new(5, 100);
        let z = t.root(1);
        let sq = z.mul(z);
        let z2 = t.root(2);
        assert!(!sq.re.sub(&z2.re).is_positive() && !sq.re.sub(&z2.re).is_negative());
    }

    #[test]
    fn decimal_rendering() {
        let third = RealInterval::from_rational(&BigRational::new((-1).into(), 3.into()), 64);
        assert_eq!(third.to_decimal(5), "-0.33333");
        let two = RealInterval::from_integer(&2.into(), 10);
        assert_eq!(two.to_decimal(2), "2.00");
        let small = RealInterval::from_rational(&BigRational::new(1.into(), 200.into()), 40);
        assert_eq!(small.to_decimal(3), "0.005");
    }
}
