//! Integral PEL data: the diagonal Hermitian matrix B, the integer Gram
//! matrix of its trace form, the signature it realizes, and equivalence of
//! two such data.

mod bridge;
mod fixture;
mod m17;

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith;
use crate::cmfield::{CmType, Simplicity};
use crate::cyclotomic::{CycloRatElem, CyclotomicField};
use crate::embeddings::{certified_sign_im, Sign};
use crate::error::{Error, Result};
use crate::monodromy::{DegenerationTree, MonodromyDatum, Signature};
use crate::polarization::{equivalent_beta, Polarizer, PolarizedCmPoint};

pub use bridge::{twice_prime_bridge, BridgedType};
pub use fixture::{verify_fixture, Check, Fixture, FixtureBlock, FixtureEntry, FixtureReport};
pub use m17::{m17_pipeline, M17Pipeline, RelativeGram};

/// Moduli for which the full pipeline runs unassisted.
pub const PIPELINE_MODULI: [u32; 7] = [3, 5, 7, 11, 13, 17, 19];

/// Diagonal entries ξ over ℚ(ζ_d), acting on the lattice (ℤ[ζ_d])^r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianBlock {
    pub modulus: u32,
    pub entries: Vec<CycloRatElem>,
}

/// B as a direct sum of diagonal blocks for a family of degree m. A block of
/// modulus d carries the characters n with m / gcd(n, m) = d, read through
/// σ_{n mod d}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianDatum {
    m: u32,
    blocks: Vec<HermitianBlock>,
}

impl HermitianDatum {
    pub fn new(m: u32, blocks: Vec<HermitianBlock>) -> Result<Self> {
        CyclotomicField::new(m)?;
        for block in &blocks {
            let d = block.modulus;
            if d < 3 || m % d != 0 {
                return Err(Error::BlockMismatch(format!("block modulus {d} for family modulus {m}")));
            }
            for x in &block.entries {
                if x.modulus() != d {
                    return Err(Error::ModulusMismatch { left: d, right: x.modulus() });
                }
                if x.is_zero() {
                    return Err(Error::ZeroDivision);
                }
            }
        }
        Ok(HermitianDatum { m, blocks })
    }

    pub fn diagonal(entries: Vec<CycloRatElem>) -> Result<Self> {
        let m = entries.first().map(|x| x.modulus()).ok_or_else(|| Error::BlockMismatch("empty diagonal".into()))?;
        HermitianDatum::new(m, alloc::vec![HermitianBlock { modulus: m, entries }])
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn blocks(&self) -> &[HermitianBlock] {
        &self.blocks
    }

    /// Total number of diagonal entries.
    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.entries.len()).sum()
    }

    /// σ_i applied to every entry, through i mod d on a block of modulus d.
    pub fn galois_act(&self, i: i64) -> Result<Self> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let entries = b.entries.iter().map(|x| x.galois_apply(i)).collect::<Result<_>>()?;
                Ok(HermitianBlock { modulus: b.modulus, entries })
            })
            .collect::<Result<_>>()?;
        Ok(HermitianDatum { m: self.m, blocks })
    }
}

/// Residue k with which the family character n reads a block of modulus d.
pub fn block_residue(m: u32, d: u32, n: i64) -> Option<u32> {
    let r = arith::residue(n, m);
    (r != 0 && m / arith::gcd(r as u64, m as u64) as u32 == d).then_some(r % d)
}

/// f(n) = number of entries ξ with Im σ_k(ξ⁻¹) < 0, over the block read by n.
pub fn form_signature(datum: &HermitianDatum) -> Result<Signature> {
    let m = datum.m;
    let mut values = alloc::vec![0u32; m as usize];
    for block in &datum.blocks {
        for n in 1..m {
            let Some(k) = block_residue(m, block.modulus, n as i64) else { continue };
            for xi in &block.entries {
                // Im ξ⁻¹ < 0 iff Im ξ > 0
                if certified_sign_im(xi, k as i64)? == Sign::Positive {
                    values[n as usize] += 1;
                }
            }
        }
    }
    Ok(Signature { m, values })
}

/// CM-type of a single entry: the k with Im σ_k(ξ⁻¹) < 0.
pub fn entry_cm_type(xi: &CycloRatElem) -> Result<CmType> {
    let d = xi.modulus();
    let mut members = Vec::new();
    for k in arith::unit_residues(d) {
        if certified_sign_im(xi, k as i64)? == Sign::Positive {
            members.push(k as i64);
        }
    }
    CmType::new(d, &members)
}

/// Integer matrix of E(x, y) = Σ tr(x_j B_jk ȳ_k) on the ℤ-basis ζ^a·e_j,
/// ordered by j and then by a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub entries: Vec<Vec<BigInt>>,
    pub determinant: BigInt,
}

impl GramMatrix {
    pub fn dimension(&self) -> usize {
        self.entries.len()
    }

    pub fn is_skew(&self) -> bool {
        let n = self.entries.len();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == -&self.entries[j][i]))
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant == BigInt::one() || self.determinant == -BigInt::one()
    }
}

fn integral(q: num_rational::BigRational, row: usize, col: usize) -> Result<BigInt> {
    if !q.denom().is_one() {
        return Err(Error::NonIntegralForm { row, col });
    }
    Ok(q.numer().clone())
}

/// Gram block of one entry: E(ζ^a, ζ^b) = tr(x ζ^{a−b}).
fn entry_gram(x: &CycloRatElem, row0: usize, col0: usize) -> Result<Vec<Vec<BigInt>>> {
    let f = x.field();
    let deg = f.degree();
    let traces: Vec<BigInt> = (0..2 * deg - 1)
        .map(|s| {
            let shift = s as i64 - (deg as i64 - 1);
            let t = (x * &f.zeta_pow(shift)).trace_to_q();
            integral(t, row0 + s.min(deg - 1), col0 + (deg - 1).saturating_sub(s))
        })
        .collect::<Result<_>>()?;
    Ok((0..deg).map(|a| (0..deg).map(|b| traces[a + deg - 1 - b].clone()).collect()).collect())
}

/// Gram matrix of a full r×r matrix over one field.
pub fn gram_of_matrix(matrix: &[Vec<CycloRatElem>]) -> Result<GramMatrix> {
    let r = matrix.len();
    let d = matrix.first().and_then(|row| row.first()).map(|x| x.modulus()).ok_or(Error::ZeroDivision)?;
    let deg = CyclotomicField::new(d)?.degree();
    let mut entries = alloc::vec![alloc::vec![BigInt::zero(); r * deg]; r * deg];
    for (j, row) in matrix.iter().enumerate() {
        if row.len() != r {
            return Err(Error::BlockMismatch("matrix is not square".into()));
        }
        for (k, x) in row.iter().enumerate() {
            let g = entry_gram(x, j * deg, k * deg)?;
            for a in 0..deg {
                for b in 0..deg {
                    entries[j * deg + a][k * deg + b] = g[a][b].clone();
                }
            }
        }
    }
    let determinant = arith::determinant(&entries);
    let gram = GramMatrix { entries, determinant };
    if !gram.is_skew() {
        return Err(Error::Assertion("trace form is not skew".into()));
    }
    Ok(gram)
}

/// Blockwise Gram matrix of a diagonal datum; the determinant is the product
/// of the entry determinants.
pub fn gram_matrix(datum: &HermitianDatum) -> Result<GramMatrix> {
    let dim: usize = datum.blocks.iter().map(|b| b.entries.len() * arith::euler_phi(b.modulus) as usize).sum();
    let mut entries = alloc::vec![alloc::vec![BigInt::zero(); dim]; dim];
    let mut determinant = BigInt::one();
    let mut offset = 0;
    for block in &datum.blocks {
        for x in &block.entries {
            let g = entry_gram(x, offset, offset)?;
            determinant *= arith::determinant(&g);
            for (a, row) in g.into_iter().enumerate() {
                for (b, v) in row.into_iter().enumerate() {
                    entries[offset + a][offset + b] = v;
                }
            }
            offset += x.field().degree();
        }
    }
    let gram = GramMatrix { entries, determinant };
    if !gram.is_skew() {
        return Err(Error::Assertion("trace form is not skew".into()));
    }
    Ok(gram)
}

/// How the Hermitian form is pinned down by the component data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certainty {
    /// Every component CM-type is simple.
    AllSimple,
    /// Some component CM-type is induced; uniqueness of the form rests on
    /// the uniqueness of Hermitian forms with the given signature.
    ReliesOnUniqueness,
}

/// One component of the degeneration with its polarization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub triple: MonodromyDatum,
    pub simplicity: Simplicity,
    pub point: PolarizedCmPoint,
    pub xi: CycloRatElem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assembly {
    pub tree: DegenerationTree,
    pub components: Vec<Component>,
    pub datum: HermitianDatum,
    pub certainty: Certainty,
}

/// B = diag[ξ_1, …, ξ_r] with ξ_j = β_j⁻¹, one entry per component of the
/// lexicographic degeneration, in tree order.
/// Compactness of the degeneration is decided before the modulus is checked.
pub fn assemble(gamma: &MonodromyDatum) -> Result<Assembly> {
    assemble_tree(gamma.degenerate()?)
}

/// As [`assemble`], along a given degeneration.
pub fn assemble_tree(tree: DegenerationTree) -> Result<Assembly> {
    if !PIPELINE_MODULI.contains(&tree.m) {
        return Err(Error::UnsupportedModulus(tree.m));
    }
    let polarizer = Polarizer::new(tree.m)?;
    let mut components = Vec::with_capacity(tree.triples.len());
    for triple in &tree.triples {
        let phi = CmType::from_triple(triple)?;
        let simplicity = phi.is_simple();
        let point = polarizer.polarize(&phi)?;
        let xi = point.beta.invert()?;
        components.push(Component { triple: triple.clone(), simplicity, point, xi });
    }
    let certainty = if components.iter().all(|c| c.simplicity.is_simple()) {
        Certainty::AllSimple
    } else {
        Certainty::ReliesOnUniqueness
    };
    let datum = HermitianDatum::diagonal(components.iter().map(|c| c.xi.clone()).collect())?;
    Ok(Assembly { tree, components, datum, certainty })
}

/// Entries of equal blocks pair up bijectively with equivalent polarizations;
/// with `allow_galois`, after some σ_i applied to every entry.
pub fn equivalent_datum(a: &HermitianDatum, b: &HermitianDatum, allow_galois: bool) -> Result<bool> {
    let same_shape = a.m == b.m
        && a.blocks.len() == b.blocks.len()
        && a.blocks.iter().zip(&b.blocks).all(|(x, y)| x.modulus == y.modulus && x.entries.len() == y.entries.len());
    if !same_shape {
        return Err(Error::BlockMismatch("different block structure".into()));
    }
    let twists = if allow_galois { arith::unit_residues(a.m) } else { alloc::vec![1] };
    for i in twists {
        let twisted = a.galois_act(i as i64)?;
        let mut all = true;
        for (x, y) in twisted.blocks.iter().zip(&b.blocks) {
            if !blocks_match(&x.entries, &y.entries)? {
                all = false;
                break;
            }
        }
        if all {
            return Ok(true);
        }
    }
    Ok(false)
}

fn blocks_match(xs: &[CycloRatElem], ys: &[CycloRatElem]) -> Result<bool> {
    // ξ/ξ' = β'/β, so equivalence of the ξ is equivalence of the β
    let compatible = xs
        .iter()
        .map(|x| ys.iter().map(|y| equivalent_beta(x, y)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut used = alloc::vec![false; ys.len()];
    Ok(assign(&compatible, 0, &mut used))
}

fn assign(compatible: &[Vec<bool>], row: usize, used: &mut [bool]) -> bool {
    if row == compatible.len() {
        return true;
    }
    for col in 0..used.len() {
        if compatible[row][col] && !used[col] {
            used[col] = true;
            if assign(compatible, row + 1, used) {
                return true;
            }
            used[col] = false;
        }
    }
    false
}

/// Smallest k ≤ `max_power` with p^k·x integral, if any.
pub fn integral_away_from(x: &CycloRatElem, p: u32, max_power: u32) -> Option<u32> {
    let den = x.denominator();
    let mut scaled = den.clone();
    for k in 0..=max_power {
        if scaled.is_one() {
            return Some(k);
        }
        let (q, r) = scaled.div_rem(&BigInt::from(p));
        if !r.is_zero() {
            return None;
        }
        scaled = q;
    }
    None
}
