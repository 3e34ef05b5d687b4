//! The degree-7 family with inertia (2,4,4,4), through the curve y⁷ = x³ − 1
//! whose Jacobian has complex multiplication by ℤ[ζ₂₁].

use alloc::vec::Vec;

use crate::cmfield::{CmType, Simplicity};
use crate::cyclotomic::{descend, relative_tau, CycloRatElem, CyclotomicField};
use crate::error::{Error, Result};
use crate::polarization::{different_generator, verify_conditions, Conditions};

use super::{gram_of_matrix, integral_away_from, GramMatrix};

/// 2×2 matrix over ℚ(ζ₇).
pub type RelativeGram = [[CycloRatElem; 2]; 2];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M17Pipeline {
    pub cm_type: CmType,
    pub simplicity: Simplicity,
    pub alpha: CycloRatElem,
    pub beta3: CycloRatElem,
    pub z: CycloRatElem,
    pub z_conditions: Conditions,
    pub negated_z_conditions: Conditions,
    /// z = 21(ζ² − ζ¹⁹)/((ζ¹⁴ − ζ⁷)(ζ⁶ − ζ¹⁵)).
    pub z_closed_form: bool,
    pub z_is_minus_sigma4_beta0: bool,
    pub z_is_sigma4_beta0: bool,
    pub a11: CycloRatElem,
    pub a12: CycloRatElem,
    pub a21: CycloRatElem,
    pub a: RelativeGram,
    pub a_closed_form: bool,
    /// Power of 7 clearing the denominators of A.
    pub a_seven_power: Option<u32>,
    pub b: RelativeGram,
    pub b_closed_form: bool,
    pub b_gram: GramMatrix,
}

impl M17Pipeline {
    pub fn all_checks(&self) -> bool {
        self.simplicity.is_simple()
            && self.z_conditions.all()
            && self.z_closed_form
            && self.z_is_minus_sigma4_beta0
            && self.a_closed_form
            && self.a_seven_power.is_some()
            && self.b_closed_form
            && self.b_gram.is_unimodular()
    }
}

fn map(m: &RelativeGram, f: impl Fn(&CycloRatElem) -> Result<CycloRatElem>) -> Result<RelativeGram> {
    Ok([[f(&m[0][0])?, f(&m[0][1])?], [f(&m[1][0])?, f(&m[1][1])?]])
}

pub fn m17_pipeline() -> Result<M17Pipeline> {
    let big = CyclotomicField::new(21)?;
    let small = CyclotomicField::new(7)?;
    let z21 = |k: i64| big.zeta_pow(k);
    let z7 = |k: i64| small.zeta_pow(k);

    let cm_type = CmType::new(21, &[1, 2, 4, 8, 10, 16])?;
    let simplicity = cm_type.is_simple();
    let alpha = &(&z21(7) - &z21(14)) * &(&z21(2) - &z21(19));
    let beta3 = big.int(7).checked_div(&(&z21(6) - &z21(15)))?;
    let z = &beta3 * &alpha;
    let z_conditions = verify_conditions(&z, &cm_type)?;
    let negated_z_conditions = verify_conditions(&-&z, &cm_type)?;
    let z_expected =
        (&big.int(21) * &(&z21(2) - &z21(19))).checked_div(&(&(&z21(14) - &z21(7)) * &(&z21(6) - &z21(15))))?;
    let b0 = different_generator(21)?.beta0;
    let z_closed_form = z == z_expected;
    let sigma4_beta0 = b0.galois_apply(4)?;
    let z_is_minus_sigma4_beta0 = z == -&sigma4_beta0;
    let z_is_sigma4_beta0 = z == sigma4_beta0;

    let inv = alpha.invert()?;
    let tau = |x: &CycloRatElem| x.galois_apply(relative_tau(7) as i64);
    let zeta3 = z21(7);
    let zeta3_sq = z21(14);
    let a11 = descend(&(&inv + &tau(&inv)?), 7)?;
    let a12 = descend(&(&(&zeta3_sq * &inv) + &(&zeta3 * &tau(&inv)?)), 7)?;
    let a21 = descend(&(&(&zeta3 * &inv) + &(&zeta3_sq * &tau(&inv)?)), 7)?;

    let beta3_small = descend(&beta3, 7)?;
    let scale = beta3_small.invert()?;
    let a = [[&scale * &a11, &scale * &a12], [&scale * &a21, &scale * &a11]];

    let w = &(&small.one() + &z7(1)) + &z7(6);
    let prefactor = (&z7(2) - &z7(5)).checked_div(&(&small.int(7) * &w))?;
    let diag = &z7(3) + &z7(4);
    let a_expected: RelativeGram = [[&prefactor * &diag, -(&prefactor * &z7(4))], [-(&prefactor * &z7(3)), &prefactor * &diag]];
    let a_closed_form = a == a_expected
        && a11 == diag.checked_div(&w)?
        && a12 == (-z7(4)).checked_div(&w)?
        && a21 == (-z7(3)).checked_div(&w)?;
    let a_seven_power =
        a.iter().flatten().map(|x| integral_away_from(x, 7, 8)).collect::<Option<Vec<u32>>>().map(|ks| ks.into_iter().max().unwrap_or(0));

    // σ₄ = σ₂⁻¹ on ℚ(ζ₇)
    let b = map(&a, |x| x.galois_apply(4))?;
    let xi1 = (&z7(1) - &z7(6)).checked_div(&small.int(7))?;
    let u1 = &z7(2) + &z7(5);
    let v = (&(&small.one() + &z7(3)) + &z7(4)).invert()?;
    let front = &xi1 * &v;
    let b_expected: RelativeGram = [[&front * &u1, -(&front * &z7(2))], [-(&front * &z7(5)), &front * &u1]];
    let b_closed_form = b == b_expected;
    if !u1.is_unit() || !v.is_unit() {
        return Err(Error::Assertion("u₁ or v is not a unit".into()));
    }
    let rows: Vec<Vec<CycloRatElem>> = b.iter().map(|r| r.to_vec()).collect();
    let b_gram = gram_of_matrix(&rows)?;

    Ok(M17Pipeline {
        cm_type,
        simplicity,
        alpha,
        beta3,
        z,
        z_conditions,
        negated_z_conditions,
        z_closed_form,
        z_is_minus_sigma4_beta0,
        z_is_sigma4_beta0,
        a11,
        a12,
        a21,
        a,
        a_closed_form,
        a_seven_power,
        b,
        b_closed_form,
        b_gram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pipeline_checks_pass() {
        let p = m17_pipeline().unwrap();
        assert!(p.simplicity.is_simple());
        assert!(p.z_closed_form);
        assert!(p.a_closed_form);
        assert!(p.a_seven_power.is_some());
        assert!(p.b_closed_form);
        assert!(p.b_gram.is_skew());
        assert_eq!(p.b_gram.dimension(), 12);
    }

    #[test]
    fn z_has_positive_imaginary_part_on_the_type() {
        // Im σ_n(z) > 0 for n ∈ Φ; only −z meets the sign condition
        let p = m17_pipeline().unwrap();
        let c = p.z_conditions;
        assert!(c.generates_different && c.antisymmetric && !c.signs_negative);
        assert!(p.negated_z_conditions.all());
        assert!(p.z_is_sigma4_beta0 && !p.z_is_minus_sigma4_beta0);
        assert!(!p.all_checks());
        for n in [1, 2, 4, 8, 10, 16] {
            assert_eq!(crate::embeddings::certified_sign_im(&p.z, n).unwrap(), crate::Sign::Positive);
        }
    }

    #[test]
    fn alpha_is_real() {
        let p = m17_pipeline().unwrap();
        assert!(p.alpha.is_real());
        let f = CyclotomicField::new(21).unwrap();
        assert_eq!(p.alpha, f.parse("z^9 + z^12 - z^5 - z^16").unwrap());
    }
}
