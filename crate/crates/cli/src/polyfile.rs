//! Period-polynomial files: `{"weight": k, "monomials": [{"x": i, "y": j, "coeff": "num/den"}]}`.
//! Monomials are written in decreasing powers of `X`, zero coefficients
//! omitted.

use std::fs;
use std::path::Path;

use qzeta_core::{HomPoly, PeriodData, Rational};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyFile {
    pub weight: u32,
    pub monomials: Vec<MonomialEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialEntry {
    pub x: u32,
    pub y: u32,
    pub coeff: String,
}

/// `"n"` or `"n/d"` with `d != 0`, surrounding whitespace ignored.
pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let s = s.trim();
    s.parse::<Rational>().map_err(|_| CliError::Config(format!("malformed rational {s:?}")))
}

/// Reduced `"num/den"`, or `"num"` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

impl PolyFile {
    pub fn from_poly(p: &HomPoly) -> Self {
        Self {
            weight: p.weight(),
            monomials: p
                .monomials()
                .map(|(x, y, c)| MonomialEntry { x, y, coeff: format_rational(c) })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<HomPoly, CliError> {
        let mut terms = Vec::with_capacity(self.monomials.len());
        for m in &self.monomials {
            terms.push((m.x, m.y, parse_rational(&m.coeff)?));
        }
        HomPoly::from_monomials(self.weight, terms).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serialises") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("period polynomial file: {e}")))
    }
}

pub fn read_period_file(path: &Path) -> Result<PeriodData, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let poly = PolyFile::from_json(&text)?.to_poly()?;
    PeriodData::new(poly).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

pub fn write_period_file(path: &Path, p: &HomPoly) -> Result<(), CliError> {
    fs::write(path, PolyFile::from_poly(p).to_json()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
