//! Linear systems over GF(2) with vectors packed into `u64` bitmasks.

use alloc::vec::Vec;

/// Row-reduced span of a list of vectors, remembering which inputs combine
/// into each basis vector.
#[derive(Clone, Debug)]
pub struct Span {
    /// Basis vector and input combination, indexed by pivot (highest set bit).
    basis: [Option<(u64, u64)>; 64],
    inputs: usize,
}

impl Span {
    pub fn new(vectors: &[u64]) -> Self {
        assert!(vectors.len() <= 64, "at most 64 input vectors");
        let mut span = Span { basis: [None; 64], inputs: vectors.len() };
        for (i, &v) in vectors.iter().enumerate() {
            let (rest, combo) = span.reduce(v, 1 << i);
            if rest != 0 {
                span.basis[63 - rest.leading_zeros() as usize] = Some((rest, combo));
            }
        }
        span
    }

    fn reduce(&self, mut v: u64, mut combo: u64) -> (u64, u64) {
        while v != 0 {
            let pivot = 63 - v.leading_zeros() as usize;
            match self.basis[pivot] {
                Some((b, c)) => {
                    v ^= b;
                    combo ^= c;
                }
                None => break,
            }
        }
        (v, combo)
    }

    pub fn rank(&self) -> usize {
        self.basis.iter().flatten().count()
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    /// A subset of the inputs (as a bitmask) summing to `target`.
    pub fn solve(&self, target: u64) -> Option<u64> {
        let (rest, combo) = self.reduce(target, 0);
        (rest == 0).then_some(combo)
    }
}

/// Indices of the set bits of a combination mask.
pub fn members(combo: u64) -> Vec<usize> {
    (0..64).filter(|&i| combo >> i & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_and_rejects() {
        let span = Span::new(&[0b011, 0b110]);
        assert_eq!(span.rank(), 2);
        let combo = span.solve(0b101).unwrap();
        assert_eq!(members(combo), [0, 1]);
        assert_eq!(span.solve(0b001), None);
        assert_eq!(span.solve(0), Some(0));
    }

    #[test]
    fn dependent_inputs() {
        let span = Span::new(&[0b1, 0b1, 0b10]);
        assert_eq!(span.rank(), 2);
        let combo = span.solve(0b11).unwrap();
        let sum = members(combo).iter().fold(0u64, |acc, &i| acc ^ [0b1, 0b1, 0b10][i]);
        assert_eq!(sum, 0b11);
    }
}
