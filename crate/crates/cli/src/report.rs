use std::fmt::Write as _;
use std::time::Instant;

use hurwitz_pel_core::embeddings::embed;
use hurwitz_pel_core::peldatum::{assemble, assemble_tree, equivalent_datum, form_signature, gram_matrix, Certainty};
use hurwitz_pel_core::{CycloRatElem, Error, MonodromyDatum, Result, Simplicity};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyOptions {
    pub m: u32,
    pub inertia: Vec<i64>,
    /// Bits of precision for the decimal renderings.
    pub precision: u32,
    pub allow_galois_compare: bool,
    pub timing: bool,
}

impl FamilyOptions {
    pub fn new(m: u32, inertia: Vec<i64>) -> Self {
        FamilyOptions { m, inertia, precision: 64, allow_galois_compare: false, timing: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Input {
    pub m: u32,
    pub n: usize,
    pub inertia: Vec<u32>,
}

/// An element as an exact string in z = ζ_m, with σ₁ of it as a decimal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Value {
    pub exact: String,
    pub decimal: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Witness {
    pub subgroup: Vec<u32>,
    pub coset: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SimplicityReport {
    Simple { witnesses: Vec<Witness> },
    Induced { subgroup: Vec<u32> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionsReport {
    pub generates_different: bool,
    pub antisymmetric: bool,
    pub signs_negative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentReport {
    pub triple: [u32; 3],
    pub cm_type: Vec<u32>,
    pub simplicity: SimplicityReport,
    pub beta0: Value,
    pub u0: Value,
    pub beta: Value,
    pub conditions: ConditionsReport,
    pub xi: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureCheck {
    pub form_signature: Vec<u32>,
    pub matches: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertaintyTier {
    AllSimple,
    ReliesOnUniqueness,
}

/// Assembly along another admissible degeneration, compared with the main one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlternativeReport {
    pub degeneration: Vec<[u32; 3]>,
    pub hermitian: Vec<String>,
    pub equivalent: Option<bool>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub input: Input,
    pub genus: u64,
    /// f(1), …, f(m−1).
    pub signature: Vec<u32>,
    pub degeneration: Vec<[u32; 3]>,
    pub components: Vec<ComponentReport>,
    /// Diagonal entries of B.
    pub hermitian: Vec<Value>,
    pub gram: Vec<Vec<i64>>,
    pub determinant: String,
    pub signature_check: SignatureCheck,
    pub certainty: CertaintyTier,
    pub allow_galois_compare: bool,
    pub alternatives: Vec<AlternativeReport>,
    pub precision_bits: u32,
    pub timing_us: Option<u64>,
}

fn value(x: &CycloRatElem, precision: u32) -> Result<Value> {
    let places = (precision as f64 * std::f64::consts::LOG10_2).floor() as usize;
    Ok(Value { exact: x.to_string(), decimal: embed(x, 1, precision)?.to_decimal(places) })
}

fn triple(t: &MonodromyDatum) -> [u32; 3] {
    [t.inertia()[0], t.inertia()[1], t.inertia()[2]]
}

fn simplicity(s: &Simplicity) -> SimplicityReport {
    match s {
        Simplicity::Simple { witnesses } => SimplicityReport::Simple {
            witnesses: witnesses.iter().map(|w| Witness { subgroup: w.subgroup.clone(), coset: w.coset.clone() }).collect(),
        },
        Simplicity::Induced { subgroup } => SimplicityReport::Induced { subgroup: subgroup.clone() },
    }
}

/// Runs the prime-degree pipeline on one monodromy datum.
pub fn run_family(opts: &FamilyOptions) -> Result<Report> {
    let start = Instant::now();
    let gamma = MonodromyDatum::new(opts.m, &opts.inertia)?;
    let assembly = assemble(&gamma)?;
    let signature = gamma.signature();
    let p = opts.precision;

    let components = assembly
        .components
        .iter()
        .map(|c| {
            Ok(ComponentReport {
                triple: triple(&c.triple),
                cm_type: c.point.cm_type.members().to_vec(),
                simplicity: simplicity(&c.simplicity),
                beta0: value(&c.point.beta0, p)?,
                u0: value(&c.point.u0, p)?,
                beta: value(&c.point.beta, p)?,
                conditions: ConditionsReport {
                    generates_different: c.point.conditions.generates_different,
                    antisymmetric: c.point.conditions.antisymmetric,
                    signs_negative: c.point.conditions.signs_negative,
                },
                xi: value(&c.xi, p)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let hermitian = assembly.components.iter().map(|c| value(&c.xi, p)).collect::<Result<Vec<_>>>()?;

    let gram = gram_matrix(&assembly.datum)?;
    let entries = gram
        .entries
        .iter()
        .map(|row| row.iter().map(|v| v.to_i64().ok_or_else(|| Error::Assertion("Gram entry overflows i64".into()))).collect())
        .collect::<Result<Vec<Vec<i64>>>>()?;
    let f = form_signature(&assembly.datum)?;

    let mut alternatives = Vec::new();
    for tree in gamma.degenerations()? {
        if tree.triple_multiset() == assembly.tree.triple_multiset() {
            continue;
        }
        let degeneration = tree.triples.iter().map(triple).collect();
        let alt = match assemble_tree(tree) {
            Ok(a) => {
                let hermitian = a.datum.blocks().iter().flat_map(|b| b.entries.iter().map(|x| x.to_string())).collect();
                match equivalent_datum(&assembly.datum, &a.datum, opts.allow_galois_compare) {
                    Ok(eq) => AlternativeReport { degeneration, hermitian, equivalent: Some(eq), error: None },
                    Err(e) => AlternativeReport { degeneration, hermitian, equivalent: None, error: Some(e.to_string()) },
                }
            }
            Err(e) => AlternativeReport { degeneration, hermitian: Vec::new(), equivalent: None, error: Some(e.to_string()) },
        };
        alternatives.push(alt);
    }

    Ok(Report {
        input: Input { m: gamma.m(), n: gamma.n(), inertia: gamma.inertia().to_vec() },
        genus: gamma.genus(),
        signature: signature.values[1..].to_vec(),
        degeneration: assembly.tree.triples.iter().map(triple).collect(),
        components,
        hermitian,
        gram: entries,
        determinant: gram.determinant.to_string(),
        signature_check: SignatureCheck { matches: f == signature, form_signature: f.values[1..].to_vec() },
        certainty: match assembly.certainty {
            Certainty::AllSimple => CertaintyTier::AllSimple,
            Certainty::ReliesOnUniqueness => CertaintyTier::ReliesOnUniqueness,
        },
        allow_galois_compare: opts.allow_galois_compare,
        alternatives,
        precision_bits: p,
        timing_us: opts.timing.then(|| start.elapsed().as_micros() as u64),
    })
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let list = |xs: &[u32]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let _ = writeln!(w, "monodromy datum  ({}, {}, ({}))", self.input.m, self.input.n, list(&self.input.inertia));
        let _ = writeln!(w, "genus            {}", self.genus);
        let _ = writeln!(w, "signature        ({})", list(&self.signature));
        let trees: Vec<String> = self.degeneration.iter().map(|t| format!("({})", list(t))).collect();
        let _ = writeln!(w, "degeneration     {}", trees.join(" + "));
        for (j, c) in self.components.iter().enumerate() {
            let verdict = match &c.simplicity {
                SimplicityReport::Simple { .. } => "simple".to_string(),
                SimplicityReport::Induced { subgroup } => format!("induced from subgroup {{{}}}", list(subgroup)),
            };
            let _ = writeln!(w, "component {j}      ({}) Φ = {{{}}} {verdict}", list(&c.triple), list(&c.cm_type));
            let _ = writeln!(w, "  β  = {}  ≈ {}", c.beta.exact, c.beta.decimal);
            let _ = writeln!(w, "  u₀ = {}", c.u0.exact);
            let _ = writeln!(w, "  ξ  = {}  ≈ {}", c.xi.exact, c.xi.decimal);
        }
        let b: Vec<&str> = self.hermitian.iter().map(|v| v.exact.as_str()).collect();
        let _ = writeln!(w, "B                diag[{}]", b.join(", "));
        let _ = writeln!(w, "gram             {}×{}, determinant {}", self.gram.len(), self.gram.len(), self.determinant);
        let check = if self.signature_check.matches { "matches" } else { "DIFFERS" };
        let _ = writeln!(w, "form signature   ({}) {check}", list(&self.signature_check.form_signature));
        let tier = match self.certainty {
            CertaintyTier::AllSimple => "every component type is simple",
            CertaintyTier::ReliesOnUniqueness => "relies on uniqueness of the Hermitian form",
        };
        let _ = writeln!(w, "certainty        {tier}");
        for alt in &self.alternatives {
            let trees: Vec<String> = alt.degeneration.iter().map(|t| format!("({})", list(t))).collect();
            let verdict = match (alt.equivalent, &alt.error) {
                (Some(true), _) => "equivalent".to_string(),
                (Some(false), _) => "not equivalent".to_string(),
                (None, Some(e)) => e.clone(),
                (None, None) => String::new(),
            };
            let _ = writeln!(w, "alternative      {}: {verdict}", trees.join(" + "));
        }
        if let Some(t) = self.timing_us {
            let _ = writeln!(w, "time             {:.3} ms", t as f64 / 1000.0);
        }
        out
    }
}
