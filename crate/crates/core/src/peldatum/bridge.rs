//! Moving CM-types and polarizations from ℚ(ζ_{m'}) to ℚ(ζ_{2m'}).

use alloc::vec::Vec;

use crate::arith;
use crate::cmfield::CmType;
use crate::cyclotomic::{identify_twice_prime, CycloRatElem};
use crate::error::{Error, Result};
use crate::polarization::{verify_conditions, Conditions};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgedType {
    pub cm_type: CmType,
    pub beta: CycloRatElem,
    pub base_conditions: Conditions,
    pub conditions: Conditions,
}

/// σ_j ∈ Φ iff σ_{j mod m'} ∈ Φ', with β written in powers of ζ_{2m'}.
pub fn twice_prime_bridge(phi: &CmType, beta: &CycloRatElem) -> Result<BridgedType> {
    let mp = phi.m();
    if !arith::is_prime(mp) || mp == 2 {
        return Err(Error::UnsupportedModulus(mp));
    }
    let m = 2 * mp;
    let members: Vec<i64> =
        arith::unit_residues(m).into_iter().filter(|&j| phi.contains((j % mp) as i64)).map(|j| j as i64).collect();
    let cm_type = CmType::new(m, &members)?;
    let lifted = identify_twice_prime(beta)?;
    Ok(BridgedType {
        base_conditions: verify_conditions(beta, phi)?,
        conditions: verify_conditions(&lifted, &cm_type)?,
        cm_type,
        beta: lifted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CyclotomicField;

    fn bridge(m: u32, phi: &[i64], beta: &str) -> BridgedType {
        let f = CyclotomicField::new(m).unwrap();
        twice_prime_bridge(&CmType::new(m, phi).unwrap(), &f.parse(beta).unwrap()).unwrap()
    }

    #[test]
    fn bridged_types() {
        let b = bridge(3, &[2], "z - z^2");
        assert_eq!(b.cm_type.members(), [5]);
        assert!(b.base_conditions.all() && b.conditions.all());
        let b = bridge(5, &[2, 4], "5/(z^3 - z^2)");
        assert_eq!(b.cm_type.members(), [7, 9]);
        assert!(b.conditions.all());
        let b = bridge(5, &[1, 2], "5/(z - z^4)");
        assert_eq!(b.cm_type.members(), [1, 7]);
        assert!(b.conditions.all());
    }

    #[test]
    fn only_odd_primes() {
        let f = CyclotomicField::new(9).unwrap();
        let phi = CmType::new(9, &[1, 2, 4]).unwrap();
        assert_eq!(twice_prime_bridge(&phi, &f.zeta()), Err(Error::UnsupportedModulus(9)));
    }
}
