//! Subfield embeddings ℚ(ζ_d) ⊂ ℚ(ζ_n) and the quadratic extension
//! ℚ(ζ_{3m}) / ℚ(ζ_m) on the relative basis (1, ζ₃).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{CycloElem, CycloRatElem, CyclotomicField};
use crate::arith;
use crate::error::{Error, Result};

/// ι: ℚ(ζ_d) → ℚ(ζ_n), ζ_d ↦ ζ_n^{n/d}.
pub fn embed_subfield(x: &CycloRatElem, n: u32) -> Result<CycloRatElem> {
    let d = x.modulus();
    let target = CyclotomicField::new(n)?;
    if n % d != 0 {
        return Err(Error::BlockMismatch(format!("{d} does not divide {n}")));
    }
    let step = (n / d) as usize;
    let mut lift = vec![BigInt::zero(); n as usize];
    for (k, c) in x.num.coeffs.iter().enumerate() {
        lift[k * step] = c.clone();
    }
    Ok(CycloRatElem::from_parts(CycloElem::from_lift(target.modulus(), lift), x.den.clone()))
}

/// Preimage of `x` under [`embed_subfield`] into modulus `d`.
pub fn descend(x: &CycloRatElem, d: u32) -> Result<CycloRatElem> {
    let sub = CyclotomicField::new(d)?;
    let n = x.modulus();
    let columns: Vec<CycloRatElem> = (0..sub.degree())
        .map(|k| embed_subfield(&sub.zeta_pow(k as i64), n))
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<BigRational>> =
        (0..x.field().degree()).map(|r| columns.iter().map(|c| c.coeff(r)).collect()).collect();
    let rhs: Vec<BigRational> = (0..x.field().degree()).map(|r| x.coeff(r)).collect();
    let sol = arith::solve_rational(&rows, &rhs).ok_or(Error::NotInSubfield(d))?;
    let y = sol
        .iter()
        .enumerate()
        .fold(sub.zero(), |acc, (k, q)| &acc + &sub.zeta_pow(k as i64).scale(q));
    if embed_subfield(&y, n)? != *x {
        return Err(Error::NotInSubfield(d));
    }
    Ok(y)
}

fn base_of(extension: u32) -> Result<u32> {
    let m = extension / 3;
    if extension % 3 != 0 || m % 3 == 0 || m % 2 == 0 {
        return Err(Error::UnsupportedModulus(extension));
    }
    Ok(m)
}

/// The residue t mod 3m with t ≡ 1 mod m and t ≡ 2 mod 3; σ_t generates
/// Gal(ℚ(ζ_{3m}) / ℚ(ζ_m)).
pub fn relative_tau(m: u32) -> u32 {
    (1..3 * m).find(|t| t % m == 1 % m && t % 3 == 2).expect("CRT solution exists")
}

/// x₁ + x₂·ζ₃ with x₁, x₂ ∈ ℚ(ζ_m) and ζ₃ = ζ_{3m}^m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeElem {
    pub x1: CycloRatElem,
    pub x2: CycloRatElem,
}

impl RelativeElem {
    pub fn base_modulus(&self) -> u32 {
        self.x1.modulus()
    }

    pub fn to_flat(&self) -> Result<CycloRatElem> {
        let n = 3 * self.base_modulus();
        let big = CyclotomicField::new(n)?;
        let zeta3 = big.zeta_pow(self.base_modulus() as i64);
        Ok(&embed_subfield(&self.x1, n)? + &(&embed_subfield(&self.x2, n)? * &zeta3))
    }
}

pub fn relative_split(x: &CycloRatElem) -> Result<RelativeElem> {
    let n = x.modulus();
    let m = base_of(n)?;
    let big = x.field();
    let tx = x.galois_unchecked(relative_tau(m));
    let sqrt_m3 = &big.zeta_pow(m as i64) - &big.zeta_pow(2 * m as i64);
    // x − τx = x₂(ζ₃ − ζ₃²), x + τx = 2x₁ − x₂
    let x2 = (x - &tx).checked_div(&sqrt_m3)?;
    let x1 = (&(x + &tx) + &x2).scale(&BigRational::new(1.into(), 2.into()));
    Ok(RelativeElem { x1: descend(&x1, m)?, x2: descend(&x2, m)? })
}

/// tr_{ℚ(ζ_{3m})/ℚ(ζ_m)}(x) = x + τx, returned in ℚ(ζ_m).
pub fn relative_trace(x: &CycloRatElem) -> Result<CycloRatElem> {
    let m = base_of(x.modulus())?;
    let tx = x.galois_unchecked(relative_tau(m));
    descend(&(x + &tx), m)
}
