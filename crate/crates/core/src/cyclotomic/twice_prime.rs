//! The identification ℚ(ζ_{m'}) = ℚ(ζ_{2m'}) for odd m', with
//! ζ_{m'} = ζ_{2m'}² and ζ_{2m'} = −ζ_{m'}^{(m'+1)/2}.

use alloc::vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{CycloElem, CycloRatElem, CyclotomicField};
use crate::error::{Error, Result};

/// Maps x ∈ ℚ(ζ_{m'}) to the same number written in powers of ζ_{2m'}.
pub fn identify_twice_prime(x: &CycloRatElem) -> Result<CycloRatElem> {
    let mp = x.modulus();
    if mp % 2 == 0 {
        return Err(Error::UnsupportedModulus(mp));
    }
    let target = CyclotomicField::new(2 * mp)?;
    let mut lift = vec![BigInt::zero(); 2 * mp as usize];
    for (k, c) in x.num.coeffs.iter().enumerate() {
        lift[2 * k] = c.clone();
    }
    Ok(CycloRatElem::from_parts(CycloElem::from_lift(target.modulus(), lift), x.den.clone()))
}

/// Inverse of [`identify_twice_prime`].
pub fn restrict_twice_prime(x: &CycloRatElem) -> Result<CycloRatElem> {
    let m = x.modulus();
    if m % 4 != 2 {
        return Err(Error::UnsupportedModulus(m));
    }
    let mp = m / 2;
    let target = CyclotomicField::new(mp)?;
    let half = ((mp + 1) / 2) as usize;
    let mut lift = vec![BigInt::zero(); mp as usize];
    for (k, c) in x.num.coeffs.iter().enumerate() {
        // ζ_m^k = (−1)^k ζ_{m'}^{k(m'+1)/2}
        let slot = (k * half) % mp as usize;
        if k % 2 == 0 {
            lift[slot] += c;
        } else {
            lift[slot] -= c;
        }
    }
    Ok(CycloRatElem::from_parts(CycloElem::from_lift(target.modulus(), lift), x.den.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta3_is_zeta6_squared() {
        let f3 = CyclotomicField::new(3).unwrap();
        let f6 = CyclotomicField::new(6).unwrap();
        assert_eq!(identify_twice_prime(&f3.zeta()).unwrap(), f6.zeta_pow(2));
        assert_eq!(identify_twice_prime(&f3.one()).unwrap(), f6.one());
        // ζ₆ = −ζ₃²
        assert_eq!(restrict_twice_prime(&f6.zeta()).unwrap(), -f3.zeta_pow(2));
    }

    #[test]
    fn sqrt_minus_three_round_trip() {
        let f3 = CyclotomicField::new(3).unwrap();
        let s = &f3.zeta() - &f3.zeta_pow(2);
        let up = identify_twice_prime(&s).unwrap();
        let f6 = up.field();
        // √−3 = ζ₆ + ζ₆² in ℚ(ζ₆)
        assert_eq!(up, &f6.zeta() + &f6.zeta_pow(2));
        assert_eq!(restrict_twice_prime(&up).unwrap(), s);
    }

    #[test]
    fn rejects_even_base() {
        let f4 = CyclotomicField::new(4).unwrap();
        assert_eq!(identify_twice_prime(&f4.one()), Err(Error::UnsupportedModulus(4)));
    }
}
