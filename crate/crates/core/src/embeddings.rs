//! Certified complex embeddings σ_n : ℚ(ζ_m) → ℂ, ζ ↦ e^{2πin/m}, and
//! exact sign decisions built on them.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith;
use crate::cyclotomic::CycloRatElem;
use crate::error::{Error, Result};
use crate::interval::{ComplexInterval, RealInterval, RootTable};

/// Starting precision for sign decisions.
pub const START_PRECISION: u32 = 64;
/// Precision cap; reaching it means the exact zero test was wrong.
pub const MAX_PRECISION: u32 = 4096;

const GUARD_BITS: u32 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

fn check_embedding(x: &CycloRatElem, n: i64) -> Result<u32> {
    let m = x.modulus();
    let r = arith::residue(n, m);
    if arith::gcd(r as u64, m as u64) != 1 {
        return Err(Error::NonCoprime { residue: n, modulus: m });
    }
    Ok(r)
}

fn working_precision(x: &CycloRatElem, precision_bits: u32) -> u32 {
    let coeff_bits = x.numerator().coeffs().iter().map(|c| c.bits()).max().unwrap_or(0) as u32;
    let len_bits = 32 - (x.field().degree() as u32).leading_zeros();
    precision_bits.max(32) + GUARD_BITS + coeff_bits + len_bits
}

/// Interval containing σ_n(x).
pub fn embed(x: &CycloRatElem, n: i64, precision_bits: u32) -> Result<ComplexInterval> {
    let r = check_embedding(x, n)?;
    let prec = working_precision(x, precision_bits);
    if let Some(q) = x.as_rational() {
        return Ok(ComplexInterval::real(RealInterval::from_rational(&q, prec)));
    }
    let table = RootTable::new(x.modulus(), prec);
    Ok(evaluate(x, r, &table))
}

fn evaluate(x: &CycloRatElem, n: u32, table: &RootTable) -> ComplexInterval {
    let zero = RealInterval::point(BigInt::zero(), table.prec);
    let mut acc = ComplexInterval { re: zero.clone(), im: zero };
    for (k, c) in x.numerator().coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&table.root(n as u64 * k as u64).scale_int(c));
        }
    }
    acc.div_int(x.denominator())
}

fn refine(x: &CycloRatElem, n: u32, pick: impl Fn(&ComplexInterval) -> &RealInterval) -> Result<Sign> {
    let mut p = START_PRECISION;
    while p <= MAX_PRECISION {
        let iv = embed(x, n as i64, p)?;
        let part = pick(&iv);
        if part.is_positive() {
            return Ok(Sign::Positive);
        }
        if part.is_negative() {
            return Ok(Sign::Negative);
        }
        p *= 2;
    }
    Err(Error::PrecisionExhausted)
}

/// Exact sign of Im σ_n(x).
pub fn certified_sign_im(x: &CycloRatElem, n: i64) -> Result<Sign> {
    let r = check_embedding(x, n)?;
    // Im σ_n(x) = 0 iff σ_n(x) = σ_{m−n}(x)
    if x.galois_unchecked(r) == x.galois_unchecked(x.modulus() - r) {
        return Ok(Sign::Zero);
    }
    refine(x, r, |iv| &iv.im)
}

/// Exact sign of Re σ_n(x).
pub fn certified_sign_re(x: &CycloRatElem, n: i64) -> Result<Sign> {
    let r = check_embedding(x, n)?;
    // Re σ_n(x) = 0 iff σ_n(x) = −σ_{m−n}(x)
    if x.galois_unchecked(r) == -x.galois_unchecked(x.modulus() - r) {
        return Ok(Sign::Zero);
    }
    refine(x, r, |iv| &iv.re)
}

/// Representatives n of the real embeddings of the maximal real subfield:
/// 1 ≤ n < m/2 with gcd(n, m) = 1.
pub fn real_embedding_reps(m: u32) -> Vec<u32> {
    arith::unit_residues(m).into_iter().filter(|&n| 2 * n < m).collect()
}

/// True iff x = x̄ and every real embedding of x is positive.
pub fn is_totally_positive(x: &CycloRatElem) -> Result<bool> {
    if !x.is_real() {
        return Err(Error::NotRealElement);
    }
    if x.is_zero() {
        return Ok(false);
    }
    if let Some(q) = x.as_rational() {
        return Ok(q.is_positive());
    }
    for n in real_embedding_reps(x.modulus()) {
        if certified_sign_re(x, n as i64)? != Sign::Positive {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Signs of a real unit under the real embeddings, in the order of
/// [`real_embedding_reps`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignVector {
    pub m: u32,
    pub signs: Vec<i8>,
}

impl SignVector {
    pub fn all_positive(m: u32) -> Self {
        SignVector { m, signs: alloc::vec![1; real_embedding_reps(m).len()] }
    }

    /// Bit i set iff entry i is −1.
    pub fn to_mask(&self) -> u64 {
        self.signs.iter().enumerate().filter(|(_, &s)| s < 0).fold(0, |acc, (i, _)| acc | (1 << i))
    }

    pub fn from_mask(m: u32, mask: u64) -> Self {
        let n = real_embedding_reps(m).len();
        SignVector { m, signs: (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect() }
    }

    pub fn product(&self, other: &Self) -> Self {
        SignVector { m: self.m, signs: self.signs.iter().zip(&other.signs).map(|(a, b)| a * b).collect() }
    }
}

pub fn sign_vector(u: &CycloRatElem) -> Result<SignVector> {
    if !u.is_real() {
        return Err(Error::NotRealElement);
    }
    if !u.is_unit() {
        return Err(Error::NotUnit);
    }
    // one table decides most signs; the rest are refined separately
    let table = RootTable::new(u.modulus(), working_precision(u, START_PRECISION));
    let signs = real_embedding_reps(u.modulus())
        .into_iter()
        .map(|n| {
            let re = evaluate(u, n, &table).re;
            if re.is_positive() {
                Ok(1)
            } else if re.is_negative() {
                Ok(-1)
            } else {
                certified_sign_re(u, n as i64).map(|s| s.to_i8())
            }
        })
        .collect::<Result<_>>()?;
    Ok(SignVector { m: u.modulus(), signs })
}
