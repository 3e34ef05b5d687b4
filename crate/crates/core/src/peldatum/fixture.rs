//! Checking a hand-supplied Hermitian datum against a monodromy datum.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::arith;
use crate::cmfield::CmType;
use crate::cyclotomic::{identify_twice_prime, CycloRatElem, CyclotomicField};
use crate::error::{Error, Result};
use crate::monodromy::{DegenerationTree, MonodromyDatum};
use crate::polarization::verify_conditions;

use super::{assemble_tree, equivalent_datum, form_signature, gram_matrix, HermitianBlock, HermitianDatum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureEntry {
    /// ξ as an element string in the block's variable.
    pub xi: String,
    /// Φ for which ξ⁻¹ must satisfy the polarization conditions.
    pub cm_type: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureBlock {
    pub modulus: u32,
    /// Modulus of the variable the entries are written in, when it is the odd
    /// half of `modulus`.
    pub written_in: Option<u32>,
    pub entries: Vec<FixtureEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub m: u32,
    pub inertia: Vec<i64>,
    pub blocks: Vec<FixtureBlock>,
    pub expected_signature: Option<Vec<u32>>,
    /// Compare with the assembled datum; the flag allows a Galois twist.
    pub compare_assembly: Option<bool>,
    /// Triples of the degeneration to assemble along, when it is not the
    /// lexicographic one.
    pub degeneration: Option<Vec<[i64; 3]>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    fn fail(&mut self, name: impl Into<String>, err: impl ToString) {
        self.push(name, false, err.to_string());
    }
}

fn parse_entry(block: &FixtureBlock, text: &str) -> Result<CycloRatElem> {
    match block.written_in {
        Some(w) if w != block.modulus => {
            let x = CyclotomicField::new(w)?.parse(text)?;
            let y = identify_twice_prime(&x)?;
            if y.modulus() != block.modulus {
                return Err(Error::ModulusMismatch { left: block.modulus, right: y.modulus() });
            }
            Ok(y)
        }
        _ => CyclotomicField::new(block.modulus)?.parse(text),
    }
}

fn build(fixture: &Fixture, report: &mut FixtureReport) -> Option<HermitianDatum> {
    let mut blocks = Vec::new();
    for (b, block) in fixture.blocks.iter().enumerate() {
        let mut entries = Vec::new();
        for (e, entry) in block.entries.iter().enumerate() {
            let label = format!("block {b} entry {e}");
            let xi = match parse_entry(block, &entry.xi) {
                Ok(x) => x,
                Err(err) => {
                    report.fail(format!("{label}: parse"), err);
                    return None;
                }
            };
            match check_entry(&xi, block.modulus, &entry.cm_type) {
                Ok(conditions) => report.push(format!("{label}: conditions"), conditions.0, conditions.1),
                Err(err) => report.fail(format!("{label}: conditions"), err),
            }
            entries.push(xi);
        }
        blocks.push(HermitianBlock { modulus: block.modulus, entries });
    }
    match HermitianDatum::new(fixture.m, blocks) {
        Ok(d) => Some(d),
        Err(err) => {
            report.fail("block structure", err);
            None
        }
    }
}

fn check_entry(xi: &CycloRatElem, d: u32, members: &[i64]) -> Result<(bool, String)> {
    let phi = CmType::new(d, members)?;
    let beta = xi.invert()?;
    let c = verify_conditions(&beta, &phi)?;
    Ok((c.all(), format!("Φ = {phi}: {c:?}")))
}

/// Runs every check; failures are recorded in the report, never raised.
pub fn verify_fixture(fixture: &Fixture) -> FixtureReport {
    let mut report = FixtureReport { name: fixture.name.clone(), checks: Vec::new() };
    let gamma = match MonodromyDatum::new(fixture.m, &fixture.inertia) {
        Ok(g) => g,
        Err(err) => {
            report.fail("monodromy datum", err);
            return report;
        }
    };
    let signature = gamma.signature();
    if let Some(expected) = &fixture.expected_signature {
        let computed = &signature.values[1..];
        report.push("declared signature", computed == &expected[..], format!("computed {computed:?}, declared {expected:?}"));
    }
    let Some(datum) = build(fixture, &mut report) else { return report };

    match form_signature(&datum) {
        Ok(f) => report.push("form signature", f == signature, format!("{:?}", &f.values[1..])),
        Err(err) => report.fail("form signature", err),
    }
    match gram_matrix(&datum) {
        Ok(g) => {
            report.push("gram integral and skew", true, format!("dimension {}", g.dimension()));
            report.push("gram unimodular", g.is_unimodular(), format!("determinant {}", g.determinant));
        }
        Err(err) => report.fail("gram integral and skew", err),
    }
    if let Some(allow_galois) = fixture.compare_assembly {
        let tree = match &fixture.degeneration {
            None => gamma.degenerate(),
            Some(declared) => find_tree(&gamma, declared),
        };
        let how = if allow_galois { "up to a Galois twist" } else { "entrywise" };
        match tree.and_then(assemble_tree).and_then(|a| equivalent_datum(&a.datum, &datum, allow_galois)) {
            Ok(eq) => report.push("matches assembly", eq, how),
            Err(err) => report.fail("matches assembly", err),
        }
    }
    report
}

fn find_tree(gamma: &MonodromyDatum, declared: &[[i64; 3]]) -> Result<DegenerationTree> {
    let m = gamma.m();
    let mut key: Vec<[u32; 3]> = declared
        .iter()
        .map(|t| {
            let mut x = t.map(|a| arith::residue(a, m));
            x.sort_unstable();
            x
        })
        .collect();
    key.sort_unstable();
    gamma
        .degenerations()?
        .into_iter()
        .find(|t| t.triple_multiset() == key)
        .ok_or_else(|| Error::BlockMismatch(format!("{declared:?} is not an admissible degeneration")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn entry(xi: &str, cm_type: &[i64]) -> FixtureEntry {
        FixtureEntry { xi: xi.into(), cm_type: cm_type.to_vec() }
    }

    fn m4() -> Fixture {
        Fixture {
            name: "m4 (1,2,2,3)".into(),
            m: 4,
            inertia: vec![1, 2, 2, 3],
            blocks: vec![FixtureBlock {
                modulus: 4,
                written_in: None,
                entries: vec![entry("1/(2*z)", &[3]), entry("-1/(2*z)", &[1])],
            }],
            expected_signature: Some(vec![1, 0, 1]),
            compare_assembly: None,
            degeneration: None,
        }
    }

    #[test]
    fn m4_passes() {
        let r = verify_fixture(&m4());
        assert!(r.passed(), "{r:#?}");
    }

    #[test]
    fn negated_entry_fails() {
        let mut f = m4();
        f.blocks[0].entries[0].xi = "-1/(2*z)".into();
        let r = verify_fixture(&f);
        assert!(!r.passed());
        assert!(r.checks.iter().any(|c| c.name == "block 0 entry 0: conditions" && !c.passed));
    }

    #[test]
    fn declared_degeneration_is_used() {
        let xi1 = "(z - z^6)/7";
        let mut f = Fixture {
            name: "m7 (1,2,5,6)".into(),
            m: 7,
            inertia: vec![1, 2, 5, 6],
            blocks: vec![FixtureBlock {
                modulus: 7,
                written_in: None,
                entries: vec![entry(xi1, &[1, 2, 3]), entry("-(z - z^6)/7", &[4, 5, 6])],
            }],
            expected_signature: Some(vec![1; 6]),
            compare_assembly: Some(false),
            degeneration: Some(vec![[1, 5, 1], [6, 2, 6]]),
        };
        let r = verify_fixture(&f);
        assert!(r.passed(), "{r:#?}");
        f.degeneration = None;
        assert!(!verify_fixture(&f).passed());
        f.degeneration = Some(vec![[1, 1, 5], [2, 2, 3]]);
        let r = verify_fixture(&f);
        assert!(r.checks.iter().any(|c| c.name == "matches assembly" && c.detail.contains("not an admissible")));
    }

    #[test]
    fn bad_inertia_is_reported() {
        let mut f = m4();
        f.inertia = vec![1, 1];
        let r = verify_fixture(&f);
        assert_eq!(r.checks.len(), 1);
        assert!(!r.passed());
    }
}
