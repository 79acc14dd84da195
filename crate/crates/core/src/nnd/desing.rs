use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::blowup::{blowup_atlas, BlowupError};
use crate::fabric::Stratum;
use crate::foliated::{newton_polyhedra_system, Atlas, ModelError};
use crate::polyhedra::PolyhedraSystem;

/// Rule for picking the next center among the admissible ones. Ties are
/// broken lexicographically on the sorted label lists.
///
/// Deepest-first can cycle: blowing up the closed point of a chart where
/// only a codimension-two stratum is bad reproduces the same bad stratum
/// in one of the new charts, forever. Shallowest-first is the default.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Largest `|J|` first.
    DeepestFirst,
    /// Lexicographically smallest label list.
    LexFirst,
    /// Polyhedron with the most vertices first.
    WidestPolyhedron,
    /// Smallest `|J|` first.
    #[default]
    ShallowestFirst,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::DeepestFirst,
        Strategy::LexFirst,
        Strategy::WidestPolyhedron,
        Strategy::ShallowestFirst,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::DeepestFirst => "deepest-first",
            Strategy::LexFirst => "lex-first",
            Strategy::WidestPolyhedron => "widest-polyhedron",
            Strategy::ShallowestFirst => "shallowest-first",
        }
    }

    pub fn select(self, centers: &[Stratum], sys: &PolyhedraSystem) -> Option<Stratum> {
        let lex = |j: &Stratum| j.iter().cloned().collect::<Vec<_>>();
        let width = |j: &Stratum| sys.get(j).map_or(0, |n| n.vertices().len());
        let pick = match self {
            Strategy::DeepestFirst => centers.iter().min_by(|a, b| b.len().cmp(&a.len()).then_with(|| lex(a).cmp(&lex(b)))),
            Strategy::LexFirst => centers.iter().min_by_key(|j| lex(j)),
            Strategy::ShallowestFirst => centers.iter().min_by(|a, b| a.len().cmp(&b.len()).then_with(|| lex(a).cmp(&lex(b)))),
            Strategy::WidestPolyhedron => {
                centers.iter().min_by(|a, b| width(b).cmp(&width(a)).then_with(|| lex(a).cmp(&lex(b))))
            }
        };
        pick.cloned()
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| format!("unknown strategy {s:?}"))
    }
}

/// Strata whose polyhedron has at least two vertices, by size then labels.
pub fn admissible_centers(atlas: &Atlas) -> Result<Vec<Stratum>, ModelError> {
    let sys = newton_polyhedra_system(atlas)?;
    Ok(admissible_in(&sys))
}

fn admissible_in(sys: &PolyhedraSystem) -> Vec<Stratum> {
    let mut out: Vec<Stratum> = sys
        .iter()
        .filter(|(j, n)| !j.is_empty() && n.vertices().len() >= 2)
        .map(|(j, _)| j.clone())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

#[derive(Debug, Clone)]
pub struct Desingularization {
    pub atlas: Atlas,
    pub centers: Vec<Stratum>,
    pub system: PolyhedraSystem,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum DesingError {
    #[error("blow-up budget of {limit} exhausted")]
    Exhausted { limit: usize, partial: Box<Atlas> },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Blowup(#[from] BlowupError),
}

/// Blows up admissible centers chosen by `strategy` until none remain.
pub fn desingularize(atlas: &Atlas, strategy: Strategy, max_blowups: usize) -> Result<Desingularization, DesingError> {
    let mut current = atlas.clone();
    let mut centers = Vec::new();
    loop {
        let sys = newton_polyhedra_system(&current)?;
        let admissible = admissible_in(&sys);
        let Some(center) = strategy.select(&admissible, &sys) else {
            return Ok(Desingularization {
                atlas: current,
                centers,
                system: sys,
            });
        };
        if centers.len() >= max_blowups {
            return Err(DesingError::Exhausted {
                limit: max_blowups,
                partial: Box::new(current),
            });
        }
        current = blowup_atlas(&current, &center)?;
        centers.push(center);
    }
}
