//! JSON records for generators and algebra elements.
//!
//! Records are the wire format of the command-line tools: plain structs with
//! integer fields only (weights travel as doubled integers elsewhere, and
//! exact fractions as `"p/q"` strings), serialized in a canonical order so
//! that equal values always produce identical bytes.
//!
//! Parsing is deliberately lenient where it is safe: the `algebra` tag and
//! the strand count `k` may be omitted and are then filled in from context.
//! Structural defects (duplicate monomials, arity mismatches) are rejected.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{Element, StrandGenerator};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};

/// A single generator in wire form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    /// `"pong"` or `"asteroids"`; optional on input, always set on output.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    pub m: i64,
    /// Strand count; optional on input (defaults to `domain.len()`).
    #[serde(default)]
    pub k: usize,
    pub domain: Vec<i64>,
    pub values: Vec<i64>,
}

impl GeneratorRecord {
    pub fn from_generator<G: StrandGenerator>(g: &G) -> Self {
        GeneratorRecord {
            algebra: Some(G::algebra_name().to_string()),
            m: g.m_value(),
            k: g.strand_count(),
            domain: g.domain_reps().to_vec(),
            values: g.image_values().to_vec(),
        }
    }

    /// The algebra this record claims to belong to, if any.
    pub fn algebra_tag(&self) -> Option<&str> {
        self.algebra.as_deref()
    }

    /// Rebuilds the generator, checking the algebra tag when present.
    pub fn to_generator<G: StrandGenerator>(&self) -> Result<G> {
        if let Some(tag) = self.algebra_tag() {
            if tag != G::algebra_name() {
                return Err(Error::InvalidInput(format!(
                    "record is tagged algebra {tag:?} but {:?} was requested",
                    G::algebra_name()
                )));
            }
        }
        let k = if self.k == 0 && !self.domain.is_empty() {
            self.domain.len()
        } else {
            self.k
        };
        G::from_parts(self.m, k, self.domain.clone(), self.values.clone())
    }
}

/// One generator together with the monomials of its `F_2` coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub generator: GeneratorRecord,
    /// Exponent vectors, one per monomial, each of length `m`.
    pub monomials: Vec<Vec<i64>>,
}

/// An element in wire form: a canonically sorted list of terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub terms: Vec<TermRecord>,
}

impl ElementRecord {
    /// Canonical wire form: terms in generator order, monomials in
    /// exponent-lexicographic order, no duplicates on either level.
    pub fn from_element<G: StrandGenerator>(e: &Element<G>) -> Self {
        let terms = e
            .terms()
            .map(|(g, poly)| TermRecord {
                generator: GeneratorRecord::from_generator(g),
                monomials: poly.monomials().map(|m| m.exponents().to_vec()).collect(),
            })
            .collect();
        ElementRecord { terms }
    }

    /// Rebuilds the element, rejecting duplicate monomials or generators.
    pub fn to_element<G: StrandGenerator>(&self) -> Result<Element<G>> {
        let mut out = Element::zero();
        let mut seen = std::collections::BTreeSet::new();
        for term in &self.terms {
            let gen: G = term.generator.to_generator()?;
            if !seen.insert(gen.clone()) {
                return Err(Error::InvalidInput(format!(
                    "duplicate generator {gen} in element record"
                )));
            }
            if term.monomials.is_empty() {
                return Err(Error::InvalidInput(format!(
                    "generator {gen} carries no monomials"
                )));
            }
            let vars = gen.m_value() as usize;
            let mut poly = Polynomial::zero();
            for exps in &term.monomials {
                if exps.len() != vars {
                    return Err(Error::InvalidInput(format!(
                        "monomial {exps:?} has {} exponents, expected {vars}",
                        exps.len()
                    )));
                }
                let mono = Monomial::new(exps.clone())?;
                if poly.monomials().any(|m| *m == mono) {
                    return Err(Error::InvalidInput(format!(
                        "duplicate monomial {exps:?} for generator {gen}"
                    )));
                }
                poly.toggle(mono);
            }
            out.add_term(gen, poly);
        }
        Ok(out)
    }
}

/// Serializes any record compactly with a trailing newline, the format used
/// on stdout and in golden files.
pub fn to_json_line<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string(value)?;
    s.push('\n');
    Ok(s)
}

/// Parses an element from a JSON value that may be either a full element
/// record or a bare generator record (meaning that generator with
/// coefficient one).
pub fn parse_element<G: StrandGenerator>(value: &Value) -> Result<Element<G>> {
    if value.get("terms").is_some() {
        let record: ElementRecord = serde_json::from_value(value.clone())?;
        record.to_element()
    } else {
        let record: GeneratorRecord = serde_json::from_value(value.clone())?;
        Ok(Element::generator(record.to_generator()?))
    }
}

/// Reads the algebra tag of an element-or-generator JSON value, if present.
pub fn algebra_tag_of(value: &Value) -> Option<&str> {
    let gen_value = if value.get("terms").is_some() {
        value.get("terms")?.get(0)?.get("generator")?
    } else {
        value
    };
    gen_value.get("algebra")?.as_str()
}
