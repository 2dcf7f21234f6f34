//! Input documents describing a plane divisor.
//!
//! Coefficients travel as exact rational strings "p/q" so nothing is
//! rounded before the classification sees it.  Every parse failure
//! carries the path of the offending field.

use perdiv::forms::LinearForm;
use perdiv::index::PlaneDivisor;
use perdiv::rat::{parse_rat, GaussRat};
use serde::Deserialize;
use std::fmt;

/// A divisor description: n and one entry per plane component.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorDocument {
    pub n: usize,
    pub hyperplanes: Vec<HyperplaneDoc>,
}

/// One component: coefficients a as [re, im] rational strings, offset c,
/// and the multiplicity.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperplaneDoc {
    pub a: Vec<[String; 2]>,
    pub c: [String; 2],
    pub mult: u32,
}

/// A parse or validation failure, located by field path.
#[derive(Debug, Clone)]
pub struct DocumentError {
    pub path: String,
    pub message: String,
}

impl DocumentError {
    fn at(path: impl Into<String>, message: impl fmt::Display) -> Self {
        DocumentError { path: path.into(), message: message.to_string() }
    }
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl std::error::Error for DocumentError {}

fn gauss(pair: &[String; 2], path: &str) -> Result<GaussRat, DocumentError> {
    let re = parse_rat(&pair[0]).map_err(|e| DocumentError::at(format!("{path}[0]"), e))?;
    let im = parse_rat(&pair[1]).map_err(|e| DocumentError::at(format!("{path}[1]"), e))?;
    Ok(GaussRat::new(re, im))
}

impl DivisorDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::at("document", e))
    }

    pub fn to_divisor(&self) -> Result<PlaneDivisor, DocumentError> {
        let mut forms = Vec::with_capacity(self.hyperplanes.len());
        for (i, h) in self.hyperplanes.iter().enumerate() {
            let base = format!("hyperplanes[{i}]");
            if h.a.len() != self.n {
                return Err(DocumentError::at(
                    format!("{base}.a"),
                    format!("expected {} coefficients, found {}", self.n, h.a.len()),
                ));
            }
            let mut a = Vec::with_capacity(self.n);
            for (j, pair) in h.a.iter().enumerate() {
                a.push(gauss(pair, &format!("{base}.a[{j}]"))?);
            }
            let c = gauss(&h.c, &format!("{base}.c"))?;
            forms.push(
                LinearForm::new(a, c, h.mult).map_err(|e| DocumentError::at(base.clone(), e))?,
            );
        }
        PlaneDivisor::new(self.n, forms).map_err(|e| DocumentError::at("hyperplanes", e))
    }
}
