//! Generators of the different, cyclotomic units and their signs, and the
//! polarization element β attached to a CM-type.

use alloc::vec::Vec;

use crate::arith;
use crate::cmfield::CmType;
use crate::cyclotomic::{identify_twice_prime, CycloRatElem, CyclotomicField, SUPPORTED_MODULI};
use crate::embeddings::{self, certified_sign_im, real_embedding_reps, Sign, SignVector};
use crate::error::{Error, Result};
use crate::gf2::{self, Span};

/// True iff every sign pattern on the real embeddings of ℚ(ζ_m)⁺ is
/// realized by a unit.
pub fn independent_signs(m: u32) -> bool {
    SUPPORTED_MODULI.contains(&m) && m != 21
}

/// An element β₀ with β₀ = −β̄₀ generating the different of ℚ(ζ_m)/ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentGenerator {
    pub m: u32,
    pub beta0: CycloRatElem,
}

/// The closed form for β₀, by the shape of m.
pub fn beta0(m: u32) -> Result<DifferentGenerator> {
    let f = CyclotomicField::new(m)?;
    let z = |k: u32| f.zeta_pow(k as i64);
    let int = |n: u32| f.int(n as i64);
    let factors = arith::factorize(m);
    let beta0 = match factors[..] {
        [(p, 1)] if p % 2 == 1 => int(m).checked_div(&(&z((m + 1) / 2) - &z((m - 1) / 2)))?,
        [(2, k)] if k >= 2 => -(&int(1 << (k - 1)) * &z(m / 4)),
        [(3, k)] if k >= 2 => -(&int(3u32.pow(k - 1)) * &(&z(m / 3) - &z(2 * m / 3))),
        [(p, 1), (q, 1)] if p % 2 == 1 => {
            let num = &int(m) * &(&z((m + 1) / 2) - &z((m - 1) / 2));
            let d1 = &z(q * (p + 1) / 2) - &z(q * (p - 1) / 2);
            let d2 = &z(p * (q + 1) / 2) - &z(p * (q - 1) / 2);
            num.checked_div(&(&d1 * &d2))?
        }
        _ => return Err(Error::UnsupportedModulus(m)),
    };
    if beta0 != -beta0.conj() || !beta0.is_integral() {
        return Err(Error::Assertion(alloc::format!("closed-form β₀ fails for m = {m}")));
    }
    Ok(DifferentGenerator { m, beta0 })
}

/// β₀ for m, or the image of β₀(m') under ℚ(ζ_{m'}) = ℚ(ζ_{2m'}) when m = 2m'
/// with m' odd.
pub fn different_generator(m: u32) -> Result<DifferentGenerator> {
    match beta0(m) {
        Err(Error::UnsupportedModulus(_)) if m % 4 == 2 => {
            let base = beta0(m / 2)?;
            Ok(DifferentGenerator { m, beta0: identify_twice_prime(&base.beta0)? })
        }
        other => other,
    }
}

/// −1 together with cyclotomic units spanning the real units of ℚ(ζ_m)
/// up to odd index.
pub fn unit_generators(m: u32) -> Result<Vec<CycloRatElem>> {
    let f = CyclotomicField::new(m)?;
    if m % 4 == 2 {
        return unit_generators(m / 2)?.iter().map(identify_twice_prime).collect();
    }
    let z = |k: i64| f.zeta_pow(k);
    let mut gens = alloc::vec![f.int(-1)];
    if m % 2 == 1 {
        let den = &z(1) - &z(-1);
        for a in 2..=(m as i64 - 1) / 2 {
            if arith::gcd(a as u64, m as u64) == 1 {
                gens.push((&z(a) - &z(-a)).checked_div(&den)?);
            }
        }
    } else {
        // m = 2^k: ζ^{(1−a)/2}(1 − ζ^a)/(1 − ζ), a odd
        let den = &f.one() - &z(1);
        for a in (3..m as i64 / 2).step_by(2) {
            gens.push(&z((1 - a) / 2) * &(&f.one() - &z(a)).checked_div(&den)?);
        }
    }
    for u in &gens {
        if !u.is_real() || !u.is_unit() {
            return Err(Error::Assertion(alloc::format!("generator {u} is not a real unit")));
        }
    }
    Ok(gens)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignSolution {
    /// ρ(unit) equals the target; `choice` lists the generators used.
    Solved { unit: CycloRatElem, choice: Vec<usize> },
    Unsatisfiable { cokernel_dim: usize },
}

/// Sign vectors of a fixed list of real units, row-reduced once.
#[derive(Clone, Debug)]
pub struct UnitSigns {
    pub m: u32,
    pub gens: Vec<CycloRatElem>,
    pub masks: Vec<u64>,
    span: Span,
}

impl UnitSigns {
    pub fn new(m: u32) -> Result<Self> {
        UnitSigns::from_generators(m, unit_generators(m)?)
    }

    pub fn from_generators(m: u32, gens: Vec<CycloRatElem>) -> Result<Self> {
        let masks = gens.iter().map(|u| embeddings::sign_vector(u).map(|s| s.to_mask())).collect::<Result<Vec<_>>>()?;
        let span = Span::new(&masks);
        Ok(UnitSigns { m, gens, masks, span })
    }

    pub fn rank(&self) -> usize {
        self.span.rank()
    }

    /// Dimension over GF(2) of the sign patterns not reached.
    pub fn cokernel_dim(&self) -> usize {
        real_embedding_reps(self.m).len() - self.rank()
    }

    /// Generators whose sign vectors multiply to `target`.
    pub fn solve_mask(&self, target: &SignVector) -> Option<Vec<usize>> {
        self.span.solve(target.to_mask()).map(gf2::members)
    }

    pub fn solve(&self, target: &SignVector) -> Result<SignSolution> {
        match self.solve_mask(target) {
            Some(choice) => {
                let one = CyclotomicField::new(self.m)?.one();
                let unit = choice.iter().fold(one, |acc, &i| &acc * &self.gens[i]);
                Ok(SignSolution::Solved { unit, choice })
            }
            None => Ok(SignSolution::Unsatisfiable { cokernel_dim: self.cokernel_dim() }),
        }
    }
}

pub fn solve_sign_pattern(target: &SignVector, gens: &[CycloRatElem]) -> Result<SignSolution> {
    UnitSigns::from_generators(target.m, gens.to_vec())?.solve(target)
}

/// The three conditions making β the polarization element of a
/// principally polarized CM abelian variety of type Φ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Conditions {
    pub generates_different: bool,
    pub antisymmetric: bool,
    pub signs_negative: bool,
}

impl Conditions {
    pub fn all(&self) -> bool {
        self.generates_different && self.antisymmetric && self.signs_negative
    }
}

pub fn verify_conditions(beta: &CycloRatElem, phi: &CmType) -> Result<Conditions> {
    let m = beta.modulus();
    if phi.m() != m {
        return Err(Error::ModulusMismatch { left: m, right: phi.m() });
    }
    let b0 = different_generator(m)?;
    let generates_different = !beta.is_zero() && beta.checked_div(&b0.beta0)?.is_unit();
    let antisymmetric = *beta == -beta.conj();
    let mut signs_negative = true;
    for &n in phi.members() {
        if certified_sign_im(beta, n as i64)? != Sign::Negative {
            signs_negative = false;
            break;
        }
    }
    Ok(Conditions { generates_different, antisymmetric, signs_negative })
}

/// Φ together with β = u₀β₀ satisfying all three conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizedCmPoint {
    pub cm_type: CmType,
    pub beta0: CycloRatElem,
    pub u0: CycloRatElem,
    pub beta: CycloRatElem,
    pub conditions: Conditions,
}

/// Sign pattern that u₀ must have so that u₀β₀ has Im σ_n < 0 exactly on Φ.
pub fn target_signs(phi: &CmType, beta0: &CycloRatElem) -> Result<SignVector> {
    let signs = real_embedding_reps(phi.m())
        .into_iter()
        .map(|n| {
            let want: i8 = if phi.contains(n as i64) { -1 } else { 1 };
            Ok(want * certified_sign_im(beta0, n as i64)?.to_i8())
        })
        .collect::<Result<_>>()?;
    Ok(SignVector { m: phi.m(), signs })
}

/// The data of one modulus shared by every CM-type: β₀ and the sign
/// vectors of the unit generators.
#[derive(Clone, Debug)]
pub struct Polarizer {
    beta0: CycloRatElem,
    signs: UnitSigns,
}

impl Polarizer {
    pub fn new(m: u32) -> Result<Self> {
        Ok(Polarizer { beta0: different_generator(m)?.beta0, signs: UnitSigns::new(m)? })
    }

    pub fn m(&self) -> u32 {
        self.signs.m
    }

    pub fn polarize(&self, phi: &CmType) -> Result<PolarizedCmPoint> {
        if phi.m() != self.m() {
            return Err(Error::ModulusMismatch { left: self.m(), right: phi.m() });
        }
        let target = target_signs(phi, &self.beta0)?;
        let u0 = match self.signs.solve(&target)? {
            SignSolution::Solved { unit, .. } => unit,
            SignSolution::Unsatisfiable { cokernel_dim } => return Err(Error::Unsatisfiable { cokernel_dim }),
        };
        let beta = &u0 * &self.beta0;
        let conditions = verify_conditions(&beta, phi)?;
        if !conditions.all() {
            return Err(Error::Assertion(alloc::format!("β = {beta} fails {conditions:?} for Φ = {phi}")));
        }
        Ok(PolarizedCmPoint { cm_type: phi.clone(), beta0: self.beta0.clone(), u0, beta, conditions })
    }
}

pub fn beta_for_type(phi: &CmType) -> Result<PolarizedCmPoint> {
    Polarizer::new(phi.m())?.polarize(phi)
}

/// β ~ β' iff β/β' is a totally positive unit of the real subfield.
/// Without units of independent signs a positive answer is only necessary,
/// and is reported as [`Error::Indeterminate`].
pub fn equivalent_beta(beta: &CycloRatElem, other: &CycloRatElem) -> Result<bool> {
    let ratio = beta.checked_div(other)?;
    if !ratio.is_real() || !ratio.is_unit() {
        return Ok(false);
    }
    let positive = embeddings::is_totally_positive(&ratio)?;
    if positive && !independent_signs(beta.modulus()) {
        return Err(Error::Indeterminate);
    }
    Ok(positive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn field(m: u32) -> CyclotomicField {
        CyclotomicField::new(m).unwrap()
    }

    #[test]
    fn closed_forms() {
        let f3 = field(3);
        assert_eq!(beta0(3).unwrap().beta0, &f3.zeta() - &f3.zeta_pow(2));
        assert_eq!(beta0(3).unwrap().beta0, f3.parse("3/(z^2-z)").unwrap());
        assert_eq!(beta0(4).unwrap().beta0, -field(4).zeta().scale(&rational(2, 1)));
        assert_eq!(beta0(8).unwrap().beta0, -field(8).zeta_pow(2).scale(&rational(4, 1)));
        assert_eq!(beta0(12), Err(Error::UnsupportedModulus(12)));
        assert_eq!(beta0(5).unwrap().beta0, field(5).parse("5/(z^3-z^2)").unwrap());
        for m in [7, 9, 11, 13, 16, 17, 19, 21, 27, 32] {
            assert!(beta0(m).is_ok(), "m = {m}");
        }
    }

    #[test]
    fn closed_form_norm_matches_discriminant() {
        // |N(β₀)| = |disc ℚ(ζ_m)|
        let disc = |m: u32| -> BigRational {
            let phi = arith::euler_phi(m) as i64;
            let mut num = BigRational::from_integer(BigInt::from(m).pow(phi as u32));
            for (p, _) in arith::factorize(m) {
                num /= BigRational::from_integer(BigInt::from(p).pow((phi / (p as i64 - 1)) as u32));
            }
            num
        };
        for m in [3u32, 4, 5, 7, 8, 9, 21, 27] {
            let n = beta0(m).unwrap().beta0.norm_to_q();
            assert_eq!(num_traits::Signed::abs(&n), disc(m), "m = {m}");
        }
    }

    #[test]
    fn twice_prime_generator() {
        let b = different_generator(6).unwrap().beta0;
        let f6 = field(6);
        assert_eq!(b, &f6.zeta() + &f6.zeta_pow(2));
    }

    #[test]
    fn generators_of_small_fields() {
        let f5 = field(5);
        let g5 = unit_generators(5).unwrap();
        assert_eq!(g5, [f5.int(-1), f5.parse("(z^2-z^3)/(z-z^4)").unwrap()]);
        assert_eq!(unit_generators(3).unwrap(), [field(3).int(-1)]);
        assert_eq!(unit_generators(7).unwrap().len(), 3);
        let f8 = field(8);
        // 1 + √2 with √2 = ζ + ζ⁻¹
        assert_eq!(unit_generators(8).unwrap()[1], &(&f8.one() + &f8.zeta()) + &f8.zeta_pow(7));
    }

    #[test]
    fn sign_solving() {
        let gens = unit_generators(5).unwrap();
        let f5 = field(5);
        match solve_sign_pattern(&SignVector::all_positive(5), &gens).unwrap() {
            SignSolution::Solved { unit, .. } => assert_eq!(unit, f5.one()),
            other => panic!("{other:?}"),
        }
        match solve_sign_pattern(&SignVector { m: 5, signs: alloc::vec![-1, -1] }, &gens).unwrap() {
            SignSolution::Solved { unit, .. } => assert_eq!(unit, f5.int(-1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn conditions_for_sqrt_minus_three() {
        let f = field(3);
        let s = &f.zeta() - &f.zeta_pow(2);
        let phi = CmType::new(3, &[2]).unwrap();
        let all = Conditions { generates_different: true, antisymmetric: true, signs_negative: true };
        assert_eq!(verify_conditions(&s, &phi).unwrap(), all);
        assert_eq!(verify_conditions(&-&s, &phi).unwrap(), Conditions { signs_negative: false, ..all });
        let c = verify_conditions(&s.scale(&rational(3, 1)), &phi).unwrap();
        assert!(!c.generates_different && c.antisymmetric);
        assert_eq!(beta_for_type(&phi).unwrap().beta, s);
    }

    #[test]
    fn beta_equivalence() {
        let f = field(5);
        let b = f.parse("5/(z^3-z^2)").unwrap();
        assert!(equivalent_beta(&b, &b).unwrap());
        let u = &f.zeta() + &f.one();
        assert!(equivalent_beta(&b, &(&u.norm_to_real_subfield() * &b)).unwrap());
        assert!(!equivalent_beta(&b, &-&b).unwrap());
    }
}
