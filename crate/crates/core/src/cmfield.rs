//! CM-types of ℚ(ζ_m), viewed as subsets of (ℤ/mℤ)*.

use alloc::format;
use alloc::vec::Vec;

use crate::arith;
use crate::error::{Error, Result};
use crate::monodromy::MonodromyDatum;

/// A set of residues containing exactly one of n, m − n for each unit n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CmType {
    m: u32,
    members: Vec<u32>,
}

impl CmType {
    pub fn new(m: u32, members: &[i64]) -> Result<Self> {
        if m < 3 || m > 63 {
            return Err(Error::UnsupportedModulus(m));
        }
        let mut set: Vec<u32> = members.iter().map(|&a| arith::residue(a, m)).collect();
        set.sort_unstable();
        set.dedup();
        if set.len() != members.len() {
            return Err(Error::InvalidCmType(format!("repeated residue in {members:?}")));
        }
        for &n in &set {
            if arith::gcd(n as u64, m as u64) != 1 {
                return Err(Error::InvalidCmType(format!("{n} is not a unit mod {m}")));
            }
            if set.contains(&(m - n)) {
                return Err(Error::InvalidCmType(format!("{n} and {} are conjugate", m - n)));
            }
        }
        if set.len() != arith::euler_phi(m) as usize / 2 {
            return Err(Error::InvalidCmType(format!("expected {} members", arith::euler_phi(m) / 2)));
        }
        Ok(CmType { m, members: set })
    }

    /// Φ = {n : f(n) > 0} for a three-point datum.
    pub fn from_triple(triple: &MonodromyDatum) -> Result<Self> {
        let m = triple.m();
        let f = triple.signature();
        let mut members = Vec::new();
        for n in arith::unit_residues(m) {
            match f.value(n as i64) {
                0 => {}
                1 => members.push(n as i64),
                value => return Err(Error::SignatureNotBinary { residue: n, value }),
            }
        }
        CmType::new(m, &members)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn contains(&self, n: i64) -> bool {
        self.members.binary_search(&arith::residue(n, self.m)).is_ok()
    }

    fn mask(&self) -> u64 {
        to_mask(&self.members)
    }

    /// i·Φ.
    pub fn galois_act(&self, i: i64) -> Result<Self> {
        let r = arith::residue(i, self.m);
        if arith::gcd(r as u64, self.m as u64) != 1 {
            return Err(Error::NonCoprime { residue: i, modulus: self.m });
        }
        let mut members: Vec<u32> = self.members.iter().map(|&n| (n * r) % self.m).collect();
        members.sort_unstable();
        Ok(CmType { m: self.m, members })
    }

    pub fn complement(&self) -> Self {
        let mut members: Vec<u32> = self.members.iter().map(|&n| self.m - n).collect();
        members.sort_unstable();
        CmType { m: self.m, members }
    }

    /// Φ is induced iff it is a union of cosets of some subgroup H with
    /// |H| > 1 and m − 1 ∉ H.
    pub fn is_simple(&self) -> Simplicity {
        let phi = self.mask();
        let mut witnesses = Vec::new();
        for h in eligible_subgroups(self.m) {
            match mixed_coset(self.m, h, phi) {
                Some(coset) => witnesses.push(SimplicityWitness { subgroup: from_mask(h), coset: from_mask(coset) }),
                None => return Simplicity::Induced { subgroup: from_mask(h) },
            }
        }
        Simplicity::Simple { witnesses }
    }
}

impl core::fmt::Display for CmType {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("{")?;
        for (k, n) in self.members.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicityWitness {
    pub subgroup: Vec<u32>,
    /// A coset of `subgroup` meeting both Φ and its complement.
    pub coset: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Simplicity {
    /// One witness per eligible subgroup.
    Simple { witnesses: Vec<SimplicityWitness> },
    /// Φ is a union of cosets of `subgroup`.
    Induced { subgroup: Vec<u32> },
}

impl Simplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, Simplicity::Simple { .. })
    }

    /// Re-checks the verdict from its own data.
    pub fn verify(&self, phi: &CmType) -> bool {
        let m = phi.m;
        let set = phi.mask();
        match self {
            Simplicity::Simple { witnesses } => {
                let hs = eligible_subgroups(m);
                witnesses.len() == hs.len()
                    && witnesses.iter().zip(&hs).all(|(w, &h)| {
                        let c = to_mask(&w.coset);
                        to_mask(&w.subgroup) == h
                            && w.coset.first().is_some_and(|&g| coset_of(m, h, g) == c)
                            && c & set != 0
                            && c & !set != 0
                    })
            }
            Simplicity::Induced { subgroup } => {
                let h = to_mask(subgroup);
                is_subgroup(m, h)
                    && h.count_ones() > 1
                    && h >> (m - 1) & 1 == 0
                    && phi.members.iter().all(|&g| coset_of(m, h, g) & !set == 0)
            }
        }
    }
}

fn to_mask(xs: &[u32]) -> u64 {
    xs.iter().fold(0, |acc, &x| acc | 1 << x)
}

fn from_mask(mask: u64) -> Vec<u32> {
    (0..64).filter(|&b| mask >> b & 1 == 1).collect()
}

fn coset_of(m: u32, h: u64, g: u32) -> u64 {
    from_mask(h).iter().fold(0, |acc, &x| acc | 1 << ((x * g) % m))
}

fn is_subgroup(m: u32, h: u64) -> bool {
    let elems = from_mask(h);
    h & 2 != 0 && elems.iter().all(|&a| arith::gcd(a as u64, m as u64) == 1 && coset_of(m, h, a) == h)
}

fn generated(m: u32, gens: u64) -> u64 {
    let mut h = 1u64 << 1;
    loop {
        let mut next = h;
        for a in from_mask(h) {
            for g in from_mask(gens) {
                next |= 1 << ((a * g) % m);
            }
        }
        if next == h {
            return h;
        }
        h = next;
    }
}

/// All subgroups of (ℤ/mℤ)*, as bitmasks over residues, ordered by size and
/// then by mask.
pub fn subgroups(m: u32) -> Vec<u64> {
    let mut found: Vec<u64> = arith::unit_residues(m).into_iter().map(|g| generated(m, 1 << g)).collect();
    found.sort_unstable();
    found.dedup();
    // a finite abelian group's subgroups are the joins of its cyclic ones
    loop {
        let mut added = false;
        for i in 0..found.len() {
            for j in i + 1..found.len() {
                let join = generated(m, found[i] | found[j]);
                if !found.contains(&join) {
                    found.push(join);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    found.sort_unstable_by_key(|&h| (h.count_ones(), h));
    found
}

/// Subgroups H with |H| > 1 and m − 1 ∉ H.
pub fn eligible_subgroups(m: u32) -> Vec<u64> {
    subgroups(m).into_iter().filter(|&h| h.count_ones() > 1 && h >> (m - 1) & 1 == 0).collect()
}

fn mixed_coset(m: u32, h: u64, phi: u64) -> Option<u64> {
    from_mask(phi).into_iter().map(|g| coset_of(m, h, g)).find(|&c| c & !phi != 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triple(m: u32, a: &[i64]) -> MonodromyDatum {
        MonodromyDatum::new(m, a).unwrap()
    }

    #[test]
    fn types_from_triples() {
        assert_eq!(CmType::from_triple(&triple(5, &[4, 3, 3])).unwrap().members(), [2, 4]);
        assert_eq!(CmType::from_triple(&triple(7, &[1, 1, 5])).unwrap().members(), [1, 2, 3]);
        assert_eq!(CmType::from_triple(&triple(21, &[7, 3, 11])).unwrap().members(), [1, 2, 4, 8, 10, 16]);
    }

    #[test]
    fn galois_and_complement() {
        let phi = CmType::new(5, &[2, 4]).unwrap();
        assert_eq!(phi.galois_act(3).unwrap().members(), [1, 2]);
        assert_eq!(phi.galois_act(1).unwrap(), phi);
        assert_eq!(phi.galois_act(4).unwrap(), phi.complement());
    }

    #[test]
    fn invalid_types() {
        assert!(matches!(CmType::new(5, &[1, 4]), Err(Error::InvalidCmType(_))));
        assert!(matches!(CmType::new(5, &[1]), Err(Error::InvalidCmType(_))));
        assert!(matches!(CmType::new(6, &[1, 3]), Err(Error::InvalidCmType(_))));
    }

    #[test]
    fn simplicity_examples() {
        for members in [[1i64, 2], [2, 4], [1, 3], [3, 4]] {
            let phi = CmType::new(5, &members).unwrap();
            assert!(phi.is_simple().is_simple());
        }
        let phi = CmType::new(7, &[1, 2, 4]).unwrap();
        assert_eq!(phi.is_simple(), Simplicity::Induced { subgroup: alloc::vec![1, 2, 4] });
        let phi = CmType::new(21, &[1, 2, 4, 8, 10, 16]).unwrap();
        let verdict = phi.is_simple();
        assert!(verdict.is_simple());
        assert!(verdict.verify(&phi));
    }

    #[test]
    fn subgroup_counts() {
        // (ℤ/21)* ≅ C2 × C6 has 10 subgroups; (ℤ/32)* ≅ C2 × C8 has 11
        assert_eq!(subgroups(21).len(), 10);
        assert_eq!(subgroups(32).len(), 11);
        assert_eq!(subgroups(7).len(), 4);
    }
}
