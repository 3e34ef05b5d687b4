//! Exact arithmetic in ℚ(ζ_m) on the power basis 1, ζ, …, ζ^{φ(m)−1}.
//!
//! [`CycloElem`] is an element of ℤ[ζ_m]; [`CycloRatElem`] adds one shared
//! positive denominator. Both are kept canonical, so `==` is coefficient-wise
//! equality of field elements.

mod relative;
mod syntax;
mod twice_prime;

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, CyclotomicPolynomial, QPoly};
use crate::error::{Error, Result};

pub use relative::{descend, embed_subfield, relative_split, relative_trace, relative_tau, RelativeElem};
pub use twice_prime::{identify_twice_prime, restrict_twice_prime};

/// Moduli accepted for field arithmetic.
pub const SUPPORTED_MODULI: [u32; 22] = [
    3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 14, 16, 17, 19, 21, 22, 25, 26, 27, 32, 34, 38,
];

/// Handle on a supported cyclotomic field. Cheap to copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicField {
    m: u32,
    degree: usize,
}

impl CyclotomicField {
    pub fn new(m: u32) -> Result<Self> {
        if !SUPPORTED_MODULI.contains(&m) {
            return Err(Error::UnsupportedModulus(m));
        }
        Ok(CyclotomicField { m, degree: arith::euler_phi(m) as usize })
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn polynomial(&self) -> CyclotomicPolynomial {
        arith::cyclotomic_poly(self.m)
    }

    /// Residues n in `1..m` with gcd(n, m) = 1, indexing the embeddings σ_n.
    pub fn units(&self) -> Vec<u32> {
        arith::unit_residues(self.m)
    }

    pub fn zero(&self) -> CycloRatElem {
        self.int(0)
    }

    pub fn one(&self) -> CycloRatElem {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> CycloRatElem {
        self.rational(&BigRational::from_integer(n.into()))
    }

    pub fn rational(&self, q: &BigRational) -> CycloRatElem {
        let mut coeffs = vec![BigInt::zero(); self.degree];
        coeffs[0] = q.numer().clone();
        CycloRatElem::from_parts(CycloElem { m: self.m, coeffs }, q.denom().clone())
    }

    pub fn zeta(&self) -> CycloRatElem {
        self.zeta_pow(1)
    }

    pub fn zeta_pow(&self, k: i64) -> CycloRatElem {
        let mut lift = vec![BigInt::zero(); self.m as usize];
        lift[arith::residue(k, self.m) as usize] = BigInt::one();
        CycloElem::from_lift(self.m, lift).into()
    }

    /// Element with the given coefficients on 1, ζ, ζ², …; any length is
    /// accepted and reduced.
    pub fn from_coeffs(&self, coeffs: Vec<BigInt>) -> CycloElem {
        CycloElem::from_lift(self.m, coeffs)
    }

    pub fn from_i64_coeffs(&self, coeffs: &[i64]) -> CycloElem {
        self.from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn parse(&self, text: &str) -> Result<CycloRatElem> {
        syntax::parse(*self, text)
    }
}

/// Reduces a lift (coefficients of 1, x, x², …) modulo x^m − 1 and then Φ_m.
fn reduce(m: u32, lift: Vec<BigInt>) -> Vec<BigInt> {
    let phi = arith::cyclotomic_poly(m).coeffs;
    let deg = phi.len() - 1;
    let mut folded = vec![BigInt::zero(); (m as usize).max(deg)];
    for (k, c) in lift.into_iter().enumerate() {
        if !c.is_zero() {
            folded[k % m as usize] += c;
        }
    }
    for top in (deg..folded.len()).rev() {
        if folded[top].is_zero() {
            continue;
        }
        let c = core::mem::take(&mut folded[top]);
        let base = top - deg;
        for (j, &p) in phi[..deg].iter().enumerate() {
            if p != 0 {
                folded[base + j] -= &c * p;
            }
        }
    }
    folded.truncate(deg);
    folded
}

/// Element of ℤ[ζ_m], stored as φ(m) coefficients on the power basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloElem {
    m: u32,
    coeffs: Vec<BigInt>,
}

impl CycloElem {
    fn from_lift(m: u32, lift: Vec<BigInt>) -> Self {
        CycloElem { m, coeffs: reduce(m, lift) }
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn field(&self) -> CyclotomicField {
        CyclotomicField { m: self.m, degree: self.coeffs.len() }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn content(&self) -> BigInt {
        arith::content(&self.coeffs)
    }

    fn scale(&self, k: &BigInt) -> Self {
        CycloElem { m: self.m, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    fn div_exact(&self, k: &BigInt) -> Self {
        CycloElem { m: self.m, coeffs: self.coeffs.iter().map(|c| c / k).collect() }
    }

    fn mul_raw(&self, other: &Self) -> Self {
        let n = self.coeffs.len();
        let mut lift = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                lift[i + j] += a * b;
            }
        }
        CycloElem::from_lift(self.m, lift)
    }

    fn galois_raw(&self, i: u32) -> Self {
        let m = self.m as usize;
        let mut lift = vec![BigInt::zero(); m];
        for (k, c) in self.coeffs.iter().enumerate() {
            lift[(k * i as usize) % m] += c;
        }
        CycloElem::from_lift(self.m, lift)
    }

    pub fn galois_apply(&self, i: i64) -> Result<Self> {
        Ok(self.galois_raw(check_coprime(i, self.m)?))
    }

    pub fn conj(&self) -> Self {
        self.galois_raw(self.m - 1)
    }

    pub fn to_rat(&self) -> CycloRatElem {
        self.clone().into()
    }

    /// True iff the inverse lies in ℤ[ζ_m].
    pub fn is_unit(&self) -> bool {
        self.to_rat().is_unit()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        assert_same_modulus(self.m, other.m);
        CycloElem {
            m: self.m,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

fn check_coprime(i: i64, m: u32) -> Result<u32> {
    let r = arith::residue(i, m);
    if arith::gcd(r as u64, m as u64) != 1 {
        return Err(Error::NonCoprime { residue: i, modulus: m });
    }
    Ok(r)
}

fn assert_same_modulus(a: u32, b: u32) {
    assert!(a == b, "cyclotomic modulus mismatch: {a} vs {b}");
}

fn check_same_modulus(a: u32, b: u32) -> Result<()> {
    if a != b {
        return Err(Error::ModulusMismatch { left: a, right: b });
    }
    Ok(())
}

impl From<CycloElem> for CycloRatElem {
    fn from(num: CycloElem) -> Self {
        CycloRatElem { num, den: BigInt::one() }
    }
}

/// Element of ℚ(ζ_m): numerator in ℤ[ζ_m] over a positive integer.
/// The denominator is coprime to the content of the numerator, and is 1 for
/// zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloRatElem {
    num: CycloElem,
    den: BigInt,
}

impl CycloRatElem {
    fn from_parts(num: CycloElem, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = if den.is_negative() { (num.scale(&-BigInt::one()), -den) } else { (num, den) };
        if num.is_zero() {
            return CycloRatElem { num, den: BigInt::one() };
        }
        let g = num.content().gcd(&den);
        if g.is_one() {
            CycloRatElem { num, den }
        } else {
            CycloRatElem { num: num.div_exact(&g), den: den / g }
        }
    }

    pub fn modulus(&self) -> u32 {
        self.num.m
    }

    pub fn field(&self) -> CyclotomicField {
        self.num.field()
    }

    pub fn numerator(&self) -> &CycloElem {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Coefficient of ζ^k on the power basis, for k < φ(m).
    pub fn coeff(&self, k: usize) -> BigRational {
        BigRational::new(self.num.coeffs[k].clone(), self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_integral(&self) -> Option<CycloElem> {
        self.is_integral().then(|| self.num.clone())
    }

    /// The value as a rational number, if it lies in ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.num.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| BigRational::new(self.num.coeffs[0].clone(), self.den.clone()))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycloRatElem::from_parts(self.num.scale(q.numer()), &self.den * q.denom())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_same_modulus(self.modulus(), other.modulus())?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        check_same_modulus(self.modulus(), other.modulus())?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        check_same_modulus(self.modulus(), other.modulus())?;
        Ok(self * other)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        check_same_modulus(self.modulus(), other.modulus())?;
        Ok(self * &other.invert()?)
    }

    /// Multiplicative inverse, from the extended Euclidean algorithm of the
    /// lift against Φ_m over ℚ.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        let to_q = |c: &[i64]| -> QPoly { c.iter().map(|&v| BigRational::from_integer(v.into())).collect() };
        let mut r0 = to_q(&arith::cyclotomic_poly(self.modulus()).coeffs);
        let mut r1: QPoly = self.num.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        arith::qpoly_trim(&mut r1);
        let mut s0: QPoly = Vec::new();
        let mut s1: QPoly = vec![BigRational::one()];
        // invariant: s_k · num ≡ r_k mod Φ_m
        while r1.len() > 1 {
            let (q, r) = arith::qpoly_divrem(&r0, &r1);
            let qs = arith::qpoly_mul(&q, &s1);
            let mut s = s0.clone();
            for (k, c) in qs.into_iter().enumerate() {
                if k >= s.len() {
                    s.push(BigRational::zero());
                }
                s[k] -= c;
            }
            arith::qpoly_trim(&mut s);
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
        }
        let c = &r1[0];
        let scale = BigRational::from_integer(self.den.clone()) / c;
        let common = s1.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let coeffs: Vec<BigInt> = s1.iter().map(|q| (q * BigRational::from_integer(common.clone())).to_integer()).collect();
        let num = CycloElem::from_lift(self.modulus(), coeffs);
        Ok(CycloRatElem::from_parts(num.scale(scale.numer()), common * scale.denom()))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut acc = self.field().one();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// σ_i : ζ ↦ ζ^i, for i coprime to m.
    pub fn galois_apply(&self, i: i64) -> Result<Self> {
        let r = check_coprime(i, self.modulus())?;
        Ok(self.galois_unchecked(r))
    }

    pub(crate) fn galois_unchecked(&self, i: u32) -> Self {
        CycloRatElem::from_parts(self.num.galois_raw(i), self.den.clone())
    }

    /// Complex conjugation σ_{m−1}.
    pub fn conj(&self) -> Self {
        self.galois_unchecked(self.modulus() - 1)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// tr_{ℚ(ζ_m)/ℚ}, the sum of all conjugates.
    pub fn trace_to_q(&self) -> BigRational {
        let m = self.modulus();
        let total: BigInt = self
            .num
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| c * arith::ramanujan_sum(m, k as i64))
            .sum();
        BigRational::new(total, self.den.clone())
    }

    /// N_{ℚ(ζ_m)/ℚ}, the product of all conjugates.
    pub fn norm_to_q(&self) -> BigRational {
        let field = self.field();
        let prod = field.units().into_iter().fold(field.one(), |acc, i| &acc * &self.galois_unchecked(i));
        prod.as_rational().expect("norm lies in ℚ")
    }

    /// N_{F/F₀}(x) = x·x̄.
    pub fn norm_to_real_subfield(&self) -> Self {
        self * &self.conj()
    }

    /// True iff the element and its inverse are both integral.
    pub fn is_unit(&self) -> bool {
        self.is_integral() && self.invert().is_ok_and(|inv| inv.is_integral())
    }

    fn zip_with(&self, other: &Self, sign: i8) -> Self {
        assert_same_modulus(self.modulus(), other.modulus());
        let l = self.den.lcm(&other.den);
        let a = self.num.scale(&(&l / &self.den));
        let b = other.num.scale(&(&l / &other.den));
        let num = if sign > 0 { a.zip_with(&b, |x, y| x + y) } else { a.zip_with(&b, |x, y| x - y) };
        CycloRatElem::from_parts(num, l)
    }
}

macro_rules! forward_binop {
    ($ty:ident, $tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                let f: fn(&$ty, &$ty) -> $ty = $body;
                f(self, rhs)
            }
        }
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(CycloElem, Add, add, |a, b| a.zip_with(b, |x, y| x + y));
forward_binop!(CycloElem, Sub, sub, |a, b| a.zip_with(b, |x, y| x - y));
forward_binop!(CycloElem, Mul, mul, |a, b| {
    assert_same_modulus(a.m, b.m);
    a.mul_raw(b)
});
forward_binop!(CycloRatElem, Add, add, |a, b| a.zip_with(b, 1));
forward_binop!(CycloRatElem, Sub, sub, |a, b| a.zip_with(b, -1));
forward_binop!(CycloRatElem, Mul, mul, |a, b| {
    assert_same_modulus(a.modulus(), b.modulus());
    CycloRatElem::from_parts(a.num.mul_raw(&b.num), &a.den * &b.den)
});

impl Neg for &CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        self.scale(&-BigInt::one())
    }
}

impl Neg for CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        -&self
    }
}

impl Neg for &CycloRatElem {
    type Output = CycloRatElem;
    fn neg(self) -> CycloRatElem {
        CycloRatElem { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for CycloRatElem {
    type Output = CycloRatElem;
    fn neg(self) -> CycloRatElem {
        -&self
    }
}

impl core::fmt::Display for CycloElem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        syntax::write_poly(f, &self.coeffs)
    }
}

impl core::fmt::Display for CycloRatElem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.den.is_one() {
            syntax::write_poly(f, &self.num.coeffs)
        } else {
            f.write_str("(")?;
            syntax::write_poly(f, &self.num.coeffs)?;
            write!(f, ")/{}", self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn field(m: u32) -> CyclotomicField {
        CyclotomicField::new(m).unwrap()
    }

    #[test]
    fn zeta_powers_wrap() {
        let f = field(5);
        assert_eq!(&f.zeta() * &f.zeta_pow(4), f.one());
        assert_eq!(f.zeta_pow(5), f.one());
        assert_eq!(f.zeta_pow(-1), f.zeta_pow(4));
        // ζ⁴ = −1 − ζ − ζ² − ζ³
        assert_eq!(f.zeta_pow(4).numerator().coeffs(), [-1, -1, -1, -1].map(BigInt::from));
    }

    #[test]
    fn sqrt_minus_three_squares_to_minus_three() {
        let f = field(3);
        let s = &f.zeta() - &f.zeta_pow(2);
        assert_eq!(&s * &s, f.int(-3));
    }

    #[test]
    fn inverse_of_two_i() {
        let f = field(4);
        let two_i = f.zeta().scale(&BigRational::from_integer(2.into()));
        let expected = f.zeta().scale(&BigRational::new((-1).into(), 2.into()));
        assert_eq!(two_i.invert().unwrap(), expected);
        assert_eq!(f.one().invert().unwrap(), f.one());
        assert_eq!(f.zero().invert(), Err(Error::ZeroDivision));
    }

    #[test]
    fn unit_detection() {
        let f = field(5);
        let u2 = (&f.zeta_pow(3) - &f.zeta_pow(2)).checked_div(&(&f.zeta() - &f.zeta_pow(4))).unwrap();
        assert!(u2.is_unit());
        assert!(f.zeta().is_unit());
        assert!(!f.int(2).is_unit());
        assert!(!(&f.one() - &f.zeta()).is_unit());
    }

    #[test]
    fn traces_and_norms() {
        let f = field(5);
        assert_eq!(f.one().trace_to_q(), BigRational::from_integer(4.into()));
        assert_eq!(f.zeta().trace_to_q(), BigRational::from_integer((-1).into()));
        assert_eq!((&f.one() - &f.zeta()).norm_to_q(), BigRational::from_integer(5.into()));
        let q = BigRational::new(3.into(), 7.into());
        assert_eq!(field(7).rational(&q).trace_to_q(), q * BigRational::from_integer(6.into()));
        assert_eq!(f.zeta().norm_to_real_subfield(), f.one());
    }

    #[test]
    fn galois_composition_mod_seven() {
        let f = field(7);
        let x = f.parse("3*z^4 - z + 2").unwrap();
        let y = x.galois_apply(2).unwrap().galois_apply(4).unwrap();
        assert_eq!(y, x);
        assert_eq!(f.zeta().galois_apply(2).unwrap(), f.zeta_pow(2));
        assert!(matches!(field(21).one().galois_apply(7), Err(Error::NonCoprime { .. })));
    }

    #[test]
    fn mismatched_moduli() {
        let a = field(5).one();
        let b = field(7).one();
        assert_eq!(a.checked_add(&b), Err(Error::ModulusMismatch { left: 5, right: 7 }));
    }

    #[test]
    fn unsupported_modulus() {
        assert_eq!(CyclotomicField::new(23), Err(Error::UnsupportedModulus(23)));
        assert_eq!(CyclotomicField::new(12), Err(Error::UnsupportedModulus(12)));
    }

    #[test]
    fn canonical_denominator() {
        let f = field(7);
        let x = f.zeta().scale(&BigRational::new(4.into(), 6.into()));
        assert_eq!(x.denominator(), &BigInt::from(3));
        assert_eq!(x.to_string(), "(2*z)/3");
    }
}
