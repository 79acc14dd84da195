use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebra::{
    gcd_is_constant, is_reserved_name, monomial_content, parse_poly, GcdCheck, Polynomial, Var, VarKind, VariableTable,
};

use super::chart::{Atlas, LogFormChart};
use super::ModelError;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Style {
    /// Values are the `a_j` of `sum a_j dx_j/x_j + sum a_l dy_l`.
    #[default]
    Logarithmic,
    /// Values are the `f_z` of `sum f_z dz`.
    Holomorphic,
}

/// Input document describing a single chart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDocument {
    pub divisor: Vec<String>,
    #[serde(default)]
    pub free: Vec<String>,
    pub form: BTreeMap<String, String>,
    #[serde(default)]
    pub style: Style,
}

impl SpaceDocument {
    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))
    }
}

pub fn load_space_json(text: &str) -> Result<Atlas, ModelError> {
    load_space(&SpaceDocument::from_json(text)?)
}

/// Parses, converts and validates the document into a one-chart atlas.
pub fn load_space(doc: &SpaceDocument) -> Result<Atlas, ModelError> {
    let mut table = VariableTable::new();
    let mut seen = BTreeSet::new();
    for (names, kind) in [(&doc.divisor, VarKind::Divisor), (&doc.free, VarKind::Free)] {
        for n in names {
            if is_reserved_name(n) {
                return Err(ModelError::ReservedName(n.clone()));
            }
            if !valid_name(n) {
                return Err(ModelError::InvalidName(n.clone()));
            }
            if !seen.insert(n.clone()) {
                return Err(ModelError::DuplicateVariable(n.clone()));
            }
            table.declare(n, kind);
        }
    }
    for key in doc.form.keys() {
        if !seen.contains(key) {
            return Err(ModelError::UnknownCoefficient(key.clone()));
        }
    }
    let divisor: BTreeSet<Var> = doc.divisor.iter().map(Var::new).collect();
    let free: BTreeSet<Var> = doc.free.iter().map(Var::new).collect();
    let mut coeffs: BTreeMap<Var, Polynomial> = BTreeMap::new();
    for name in &seen {
        let text = doc
            .form
            .get(name)
            .ok_or_else(|| ModelError::MissingCoefficient(name.clone()))?;
        let p = parse_poly(text, &table).map_err(|source| ModelError::Parse {
            var: name.clone(),
            source,
        })?;
        coeffs.insert(Var::new(name), p);
    }
    if doc.style == Style::Holomorphic {
        for (v, p) in coeffs.iter_mut() {
            if divisor.contains(v) {
                *p = p.mul_monomial(&crate::algebra::Monomial::var(v.clone()));
            }
        }
        let family: Vec<Polynomial> = coeffs.values().cloned().collect();
        let content = monomial_content(&family, &divisor).map_err(|_| ModelError::ZeroForm)?;
        for p in coeffs.values_mut() {
            *p = p.div_monomial(&content).expect("content divides every coefficient");
        }
    }
    let family: Vec<Polynomial> = coeffs.values().cloned().collect();
    if let Ok(content) = monomial_content(&family, &divisor) {
        if !content.is_one() {
            return Err(ModelError::MonomialContent(content.to_string()));
        }
    }
    match gcd_is_constant(&family) {
        Err(_) => return Err(ModelError::ZeroForm),
        Ok(GcdCheck::Common(g)) => return Err(ModelError::CommonFactor(g.to_string())),
        Ok(GcdCheck::Constant) => {}
    }
    Ok(Atlas::from_root(LogFormChart::new(0, divisor, free, coeffs)?))
}

fn valid_name(n: &str) -> bool {
    let mut chars = n.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
