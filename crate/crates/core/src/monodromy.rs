//! Monodromy data (m, N, a) of cyclic degree-m covers of the projective
//! line: validation, genus, signature, Galois action and degeneration into
//! three-point covers.

use alloc::vec::Vec;

use crate::arith;
use crate::cyclotomic::CyclotomicField;
use crate::error::{Error, Result};

/// A validated monodromy datum; residues lie in `1..m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonodromyDatum {
    m: u32,
    inertia: Vec<u32>,
}

impl MonodromyDatum {
    pub fn new(m: u32, inertia: &[i64]) -> Result<Self> {
        if inertia.len() < 3 {
            return Err(Error::TooFewBranchPoints(inertia.len()));
        }
        CyclotomicField::new(m)?;
        let mut residues = Vec::with_capacity(inertia.len());
        for (index, &a) in inertia.iter().enumerate() {
            let r = arith::residue(a, m);
            if r == 0 {
                return Err(Error::ZeroInertia { index });
            }
            residues.push(r);
        }
        let sum: i64 = inertia.iter().sum();
        if arith::residue(sum, m) != 0 {
            return Err(Error::UnbalancedInertia { sum, modulus: m });
        }
        let g = residues.iter().fold(m as u64, |g, &a| arith::gcd(g, a as u64)) as u32;
        if g != 1 {
            return Err(Error::DisconnectedCover { gcd: g });
        }
        Ok(MonodromyDatum { m, inertia: residues })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of branch points.
    pub fn n(&self) -> usize {
        self.inertia.len()
    }

    pub fn inertia(&self) -> &[u32] {
        &self.inertia
    }

    /// g = 1 + ((N−2)m − Σ gcd(a_i, m)) / 2.
    pub fn genus(&self) -> u64 {
        let m = self.m as u64;
        let s: u64 = self.inertia.iter().map(|&a| arith::gcd(a as u64, m)).sum();
        1 + ((self.n() as u64 - 2) * m - s) / 2
    }

    /// f(n) = −1 + Σ_i ⟨−n·a_i/m⟩ for n ≢ 0, and f(0) = 0.
    pub fn signature(&self) -> Signature {
        let m = self.m as i64;
        let values = (0..m)
            .map(|n| {
                if n == 0 {
                    return 0;
                }
                let total: i64 = self.inertia.iter().map(|&a| (-n * a as i64).rem_euclid(m)).sum();
                (total / m - 1) as u32
            })
            .collect();
        Signature { m: self.m, values }
    }

    /// a' = i⁻¹·a.
    pub fn galois_act(&self, i: i64) -> Result<Self> {
        let inv = arith::inverse_mod(i, self.m).ok_or(Error::NonCoprime { residue: i, modulus: self.m })?;
        let inertia = self.inertia.iter().map(|&a| (a as u64 * inv as u64 % self.m as u64) as u32).collect();
        Ok(MonodromyDatum { m: self.m, inertia })
    }

    /// Divisors 1 < d | m with d ∤ a_i for every i.
    pub fn cm_algebra_check(&self) -> Vec<u32> {
        arith::divisors(self.m)
            .into_iter()
            .filter(|&d| d > 1 && self.inertia.iter().all(|&a| a % d != 0))
            .collect()
    }

    /// Splits the datum into N − 2 three-point data by repeatedly merging the
    /// lexicographically least pair (i, j) whose sum is a unit mod m.
    pub fn degenerate(&self) -> Result<DegenerationTree> {
        let mut steps = Vec::new();
        let mut current = self.inertia.clone();
        while current.len() > 3 {
            let (i, j) = unit_pairs(&current, self.m).next().ok_or(Error::NonCompactType)?;
            steps.push(merge(&mut current, self.m, i, j));
        }
        self.tree_from_steps(&steps)
    }

    /// Every admissible degeneration, one per distinct multiset of triples,
    /// in order of first discovery (the lexicographic one first).
    pub fn degenerations(&self) -> Result<Vec<DegenerationTree>> {
        let mut found: Vec<DegenerationTree> = Vec::new();
        let mut keys: Vec<Vec<[u32; 3]>> = Vec::new();
        let mut stack = alloc::vec![(self.inertia.clone(), Vec::new())];
        let mut last_error = Error::NonCompactType;
        // depth-first, visiting pairs in lexicographic order
        while let Some((current, steps)) = stack.pop() {
            if current.len() == 3 {
                match self.tree_from_steps(&steps) {
                    Ok(tree) => {
                        let key = tree.triple_multiset();
                        if !keys.contains(&key) {
                            keys.push(key);
                            found.push(tree);
                        }
                    }
                    Err(e) => last_error = e,
                }
                continue;
            }
            let pairs: Vec<_> = unit_pairs(&current, self.m).collect();
            for &(i, j) in pairs.iter().rev() {
                let mut next = current.clone();
                let mut path = steps.clone();
                path.push(merge(&mut next, self.m, i, j));
                stack.push((next, path));
            }
        }
        if found.is_empty() {
            return Err(last_error);
        }
        Ok(found)
    }

    fn tree_from_steps(&self, steps: &[MergeStep]) -> Result<DegenerationTree> {
        let m = self.m;
        let mut current = self.inertia.clone();
        let mut triples = Vec::new();
        for step in steps {
            let (a, b) = (current[step.first], current[step.second]);
            triples.push(MonodromyDatum { m, inertia: alloc::vec![a, b, m - step.merged] });
            merge(&mut current, m, step.first, step.second);
        }
        triples.push(MonodromyDatum { m, inertia: current });
        if !arith::is_prime(m) {
            for t in &triples {
                let divisors = t.cm_algebra_check();
                if divisors.len() != 1 {
                    return Err(Error::NonMaximalOrder { triple: t.inertia.clone(), divisors });
                }
            }
        }
        Ok(DegenerationTree { m, triples, steps: steps.to_vec() })
    }
}

fn merge(current: &mut Vec<u32>, m: u32, i: usize, j: usize) -> MergeStep {
    let merged = (current[i] + current[j]) % m;
    current[i] = merged;
    current.remove(j);
    MergeStep { first: i, second: j, merged }
}

fn unit_pairs(a: &[u32], m: u32) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..a.len())
        .flat_map(move |i| (i + 1..a.len()).map(move |j| (i, j)))
        .filter(move |&(i, j)| arith::gcd(((a[i] + a[j]) % m) as u64, m as u64) == 1)
}

/// The signature type f, stored as values f(0), …, f(m−1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub m: u32,
    pub values: Vec<u32>,
}

impl Signature {
    pub fn value(&self, n: i64) -> u32 {
        self.values[arith::residue(n, self.m) as usize]
    }

    pub fn total(&self) -> u64 {
        self.values.iter().map(|&v| v as u64).sum()
    }

    /// f'(n) = f(n·i⁻¹).
    pub fn galois_act(&self, i: i64) -> Result<Self> {
        let inv = arith::inverse_mod(i, self.m).ok_or(Error::NonCoprime { residue: i, modulus: self.m })?;
        let values = (0..self.m as i64).map(|n| self.value(n * inv as i64)).collect();
        Ok(Signature { m: self.m, values })
    }
}

/// One merge: entries `first` and `second` of the current datum were joined
/// into `merged`, which replaced `first`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MergeStep {
    pub first: usize,
    pub second: usize,
    pub merged: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegenerationTree {
    pub m: u32,
    pub triples: Vec<MonodromyDatum>,
    pub steps: Vec<MergeStep>,
}

impl DegenerationTree {
    /// Triples with sorted entries, sorted.
    pub fn triple_multiset(&self) -> Vec<[u32; 3]> {
        let mut key: Vec<[u32; 3]> = self
            .triples
            .iter()
            .map(|t| {
                let mut x = [t.inertia[0], t.inertia[1], t.inertia[2]];
                x.sort_unstable();
                x
            })
            .collect();
        key.sort_unstable();
        key
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(m: u32, a: &[i64]) -> MonodromyDatum {
        MonodromyDatum::new(m, a).unwrap()
    }

    #[test]
    fn validation_errors() {
        assert!(MonodromyDatum::new(5, &[1, 3, 3, 3]).is_ok());
        assert_eq!(MonodromyDatum::new(5, &[1, 1, 1]), Err(Error::UnbalancedInertia { sum: 3, modulus: 5 }));
        assert_eq!(MonodromyDatum::new(6, &[2, 2, 2]), Err(Error::DisconnectedCover { gcd: 2 }));
        assert_eq!(MonodromyDatum::new(5, &[1, 4]), Err(Error::TooFewBranchPoints(2)));
        assert_eq!(MonodromyDatum::new(5, &[1, 5, 4]), Err(Error::ZeroInertia { index: 1 }));
        assert_eq!(MonodromyDatum::new(23, &[1, 1, 21]), Err(Error::UnsupportedModulus(23)));
        assert_eq!(datum(5, &[-1, 6, 9, 1]).inertia(), [4, 1, 4, 1]);
    }

    #[test]
    fn genera() {
        assert_eq!(datum(7, &[2, 4, 4, 4]).genus(), 6);
        assert_eq!(datum(3, &[1, 1, 2, 2]).genus(), 2);
        assert_eq!(datum(5, &[4, 3, 3]).genus(), 2);
    }

    #[test]
    fn signatures() {
        assert_eq!(datum(7, &[1, 1, 5]).signature().values[1..], [1, 1, 1, 0, 0, 0]);
        assert_eq!(datum(5, &[1, 3, 3, 3]).signature().values, [0, 1, 2, 0, 1]);
    }

    #[test]
    fn galois_action_on_inertia() {
        let g = datum(7, &[1, 1, 1, 4]).galois_act(2).unwrap();
        let mut a = g.inertia().to_vec();
        a.sort();
        assert_eq!(a, [2, 4, 4, 4]);
        assert_eq!(datum(7, &[1, 1, 5]).galois_act(1).unwrap(), datum(7, &[1, 1, 5]));
    }

    #[test]
    fn degenerations() {
        let t = datum(5, &[2, 2, 2, 2, 2]).degenerate().unwrap();
        let triples: Vec<&[u32]> = t.triples.iter().map(|d| d.inertia()).collect();
        assert_eq!(triples, [&[2, 2, 1][..], &[4, 2, 4], &[1, 2, 2]]);
        let t = datum(7, &[2, 4, 4, 4]).degenerate().unwrap();
        let triples: Vec<&[u32]> = t.triples.iter().map(|d| d.inertia()).collect();
        assert_eq!(triples, [&[2, 4, 1][..], &[6, 4, 4]]);
        assert_eq!(datum(6, &[1, 1, 1, 3]).degenerate(), Err(Error::NonCompactType));
    }

    #[test]
    fn all_degenerations() {
        let trees = datum(7, &[1, 2, 5, 6]).degenerations().unwrap();
        let keys: Vec<_> = trees.iter().map(|t| t.triple_multiset()).collect();
        assert_eq!(keys[0], datum(7, &[1, 2, 5, 6]).degenerate().unwrap().triple_multiset());
        assert!(keys.contains(&alloc::vec![[1, 1, 5], [2, 6, 6]]));
        assert!(keys.contains(&alloc::vec![[1, 2, 4], [3, 5, 6]]));
        assert_eq!(datum(6, &[1, 1, 1, 3]).degenerations(), Err(Error::NonCompactType));
        assert_eq!(datum(5, &[1, 3, 1]).degenerations().unwrap().len(), 1);
    }

    #[test]
    fn cm_algebras() {
        assert_eq!(datum(7, &[1, 2, 4]).cm_algebra_check(), [7]);
        assert_eq!(datum(6, &[1, 1, 4]).cm_algebra_check(), [3, 6]);
        assert_eq!(datum(6, &[1, 2, 3]).cm_algebra_check(), [6]);
        assert_eq!(
            datum(6, &[1, 1, 4]).degenerate(),
            Err(Error::NonMaximalOrder { triple: alloc::vec![1, 1, 4], divisors: alloc::vec![3, 6] })
        );
    }
}
