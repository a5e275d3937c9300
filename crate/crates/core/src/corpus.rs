//! The bundled derived rules and proof scripts, and the pipeline that
//! checks them: kernel, erased kernel, then the finite-model oracle.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::kernel::{obs_eq_rule, AdmitError, CheckReport, DerivedRule, Equation, ProofScript, Session, Strength};
use crate::semantics::{applicable, check_equation_model, Counterexample, FiniteModel, SemanticsError};
use crate::syntax::{parse_rules, parse_script, SyntaxError};
use crate::term::Loc;
use crate::theory::{Theory, TheoryKind, BANK_LOCATION};
use crate::translate::{erase_check, ApparentSession};

/// Derived rules in admission order.
pub const DERIVED: &[(&str, &str)] = &[
    ("derived-E1acc", include_str!("../corpus/derived-E1acc")),
    ("derived-E1pure", include_str!("../corpus/derived-E1pure")),
    ("derived-E2acc", include_str!("../corpus/derived-E2acc")),
    ("derived-E2pure", include_str!("../corpus/derived-E2pure")),
    ("derived-E3acc", include_str!("../corpus/derived-E3acc")),
    ("derived-E3pure", include_str!("../corpus/derived-E3pure")),
    ("derived-E4acc", include_str!("../corpus/derived-E4acc")),
    ("derived-E4pure", include_str!("../corpus/derived-E4pure")),
];

/// Proof scripts, by file name.
pub const SCRIPTS: &[(&str, &str)] = &[
    ("bank-deposit", include_str!("../corpus/bank-deposit")),
    ("eq-2.1d", include_str!("../corpus/eq-2.1d")),
    ("eq-2.2d", include_str!("../corpus/eq-2.2d")),
    ("eq-2.3d", include_str!("../corpus/eq-2.3d")),
    ("eq-2.4d", include_str!("../corpus/eq-2.4d")),
    ("eq-2.5d", include_str!("../corpus/eq-2.5d")),
    ("eq-2.6d", include_str!("../corpus/eq-2.6d")),
    ("eq-2.7d", include_str!("../corpus/eq-2.7d")),
];

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{file}: {error}")]
    Syntax { file: String, error: SyntaxError },
    #[error("{file}: {error}")]
    Admit { file: String, error: AdmitError },
    #[error("{0}")]
    Theory(String),
    #[error("bad model grid `{0}`")]
    Grid(String),
}

pub fn derived_rules() -> Result<Vec<DerivedRule>, CorpusError> {
    let mut out = Vec::new();
    for (file, src) in DERIVED {
        let rules = parse_rules(src).map_err(|error| CorpusError::Syntax { file: file.to_string(), error })?;
        out.extend(rules);
    }
    Ok(out)
}

pub fn scripts() -> Result<Vec<(&'static str, ProofScript)>, CorpusError> {
    SCRIPTS
        .iter()
        .map(|(file, src)| {
            parse_script(src)
                .map(|s| (*file, s))
                .map_err(|error| CorpusError::Syntax { file: file.to_string(), error })
        })
        .collect()
}

/// A session over `th` with the bundled derived rules and `obs-eq` admitted.
pub fn session_for(th: &Theory) -> Result<Session, CorpusError> {
    let mut s = Session::new(th.clone());
    for (file, src) in DERIVED {
        let rules = parse_rules(src).map_err(|error| CorpusError::Syntax { file: file.to_string(), error })?;
        for r in rules {
            s.admit(r).map_err(|error| CorpusError::Admit { file: file.to_string(), error })?;
        }
    }
    s.admit(obs_eq_rule(th)).map_err(|error| CorpusError::Admit { file: "obs-eq".into(), error })?;
    Ok(s)
}

/// The erased counterpart of [`session_for`].
pub fn apparent_session_for(th: &Theory) -> Result<ApparentSession, CorpusError> {
    let mut s = ApparentSession::new(th);
    for rule in derived_rules()?.iter().chain(std::iter::once(&obs_eq_rule(th))) {
        s.admit(rule).map_err(|error| CorpusError::Admit { file: rule.id.clone(), error })?;
    }
    Ok(s)
}

/// Carrier sizes, applied to the first locations of the theory (or to `locations`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelGrid(pub Vec<Vec<u32>>);

impl ModelGrid {
    /// Every size vector over {1,2,3} of length 1 to `max_len`.
    pub fn full(max_len: usize) -> Self {
        let mut out = Vec::new();
        let mut layer: Vec<Vec<u32>> = vec![vec![]];
        for _ in 0..max_len {
            layer = layer.into_iter().flat_map(|v| (1..=3).map(move |n| [v.clone(), vec![n]].concat())).collect();
            out.extend(layer.iter().cloned());
        }
        ModelGrid(out)
    }

    /// `full` or comma-separated vectors such as `2x3,2x2x2`.
    pub fn parse(text: &str, max_len: usize) -> Result<Self, CorpusError> {
        if text.trim() == "full" {
            return Ok(ModelGrid::full(max_len));
        }
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let sizes: Result<Vec<u32>, _> = part.split('x').map(|n| n.trim().parse::<u32>()).collect();
            match sizes {
                Ok(v) if !v.is_empty() && v.iter().all(|n| *n > 0) => out.push(v),
                _ => return Err(CorpusError::Grid(text.to_string())),
            }
        }
        if out.is_empty() {
            return Err(CorpusError::Grid(text.to_string()));
        }
        Ok(ModelGrid(out))
    }

    /// Concrete models for `th`. Vectors longer than the location list are skipped.
    pub fn models(&self, th: &Theory, locations: Option<&[Loc]>) -> Result<Vec<FiniteModel>, SemanticsError> {
        if th.kind == TheoryKind::Bank {
            // The account has a single carrier; every size named in the grid is used.
            let mut sizes: Vec<u32> = self.0.iter().flatten().copied().collect();
            sizes.sort_unstable();
            sizes.dedup();
            return sizes.into_iter().map(FiniteModel::bank).collect();
        }
        let locs = locations.unwrap_or(&th.locations);
        self.0
            .iter()
            .filter(|v| v.len() <= locs.len())
            .map(|v| {
                let named: Vec<(&str, u32)> = locs.iter().map(Loc::as_str).zip(v.iter().copied()).collect();
                FiniteModel::canonical(&named)
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PhaseResult {
    pub accepted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_step: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
}

impl From<&CheckReport> for PhaseResult {
    fn from(r: &CheckReport) -> Self {
        PhaseResult {
            accepted: r.is_accepted(),
            failing_step: r.failing_step(),
            violation: r.violation().map(|v| v.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleFailure {
    pub step: Option<usize>,
    pub equation: String,
    pub model: String,
    pub counterexample: Option<Counterexample>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct OracleResult {
    pub models: usize,
    pub equations_checked: usize,
    pub holds: bool,
    pub failures: Vec<OracleFailure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ItemReport {
    pub file: String,
    pub name: String,
    pub theory: String,
    pub goal: String,
    pub strength: Strength,
    pub kernel: PhaseResult,
    pub erased: PhaseResult,
    pub oracle: OracleResult,
}

impl ItemReport {
    pub fn ok(&self) -> bool {
        self.kernel.accepted && self.erased.accepted && self.oracle.holds
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub lemmas: Vec<String>,
    pub items: Vec<ItemReport>,
}

impl CorpusReport {
    pub fn ok(&self) -> bool {
        self.items.iter().all(ItemReport::ok)
    }
}

/// Checks `eq` in every applicable model; `step` labels failures.
pub fn oracle_sweep(
    th: &Theory,
    equations: &[(Option<usize>, &Equation)],
    models: &[FiniteModel],
    cap: u64,
) -> OracleResult {
    let mut res = OracleResult { models: models.len(), holds: true, ..Default::default() };
    for m in models {
        for (step, eq) in equations {
            if !applicable(th, eq, m) {
                continue;
            }
            res.equations_checked += 1;
            let failure = |counterexample, error| OracleFailure {
                step: *step,
                equation: eq.to_string(),
                model: m.to_string(),
                counterexample,
                error,
            };
            match check_equation_model(th, eq, m, cap) {
                Ok(c) if c.holds => {}
                Ok(c) => res.failures.push(failure(c.counterexample, None)),
                Err(e) => res.failures.push(failure(None, Some(e.to_string()))),
            }
        }
    }
    res.holds = res.failures.is_empty();
    res
}

/// Runs the whole corpus. Every step of an accepted script is swept by the
/// oracle, not only its goal.
pub fn run_corpus(
    grid: &ModelGrid,
    locations: Option<&[Loc]>,
    cap: u64,
    scripts: &[(&str, ProofScript)],
) -> Result<CorpusReport, CorpusError> {
    let mut sessions: BTreeMap<String, (Theory, Session, ApparentSession)> = BTreeMap::new();
    let mut items = Vec::new();
    for (file, script) in scripts {
        let header = script.theory.header();
        if !sessions.contains_key(&header) {
            let th = script.theory.build().map_err(|e| CorpusError::Theory(e.to_string()))?;
            let s = session_for(&th)?;
            let a = apparent_session_for(&th)?;
            sessions.insert(header.clone(), (th, s, a));
        }
        let (th, session, apparent) = &sessions[&header];
        let kernel = session.check(script);
        let erased = erase_check(apparent, script);
        let oracle = if kernel.is_accepted() {
            let models = grid.models(th, locations).map_err(|e| CorpusError::Grid(e.to_string()))?;
            let mut eqs: Vec<(Option<usize>, &Equation)> =
                script.steps.iter().map(|s| (Some(s.index), &s.equation)).collect();
            eqs.push((None, &script.goal));
            oracle_sweep(th, &eqs, &models, cap)
        } else {
            OracleResult::default()
        };
        items.push(ItemReport {
            file: file.to_string(),
            name: script.name.clone(),
            theory: header,
            goal: script.goal.to_string(),
            strength: script.goal.strength,
            kernel: PhaseResult::from(&kernel),
            erased: PhaseResult::from(&erased),
            oracle,
        });
    }
    let lemmas = match sessions.values().next() {
        Some((_, s, _)) => s.lemmas().map(|r| r.id.clone()).collect(),
        None => Vec::new(),
    };
    Ok(CorpusReport { lemmas, items })
}

/// Location list used for bank models.
pub fn bank_locations() -> Vec<Loc> {
    vec![Loc::new(BANK_LOCATION)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::DEFAULT_CAP;

    #[test]
    fn grid_shapes() {
        assert_eq!(ModelGrid::full(3).0.len(), 3 + 9 + 27);
        assert_eq!(ModelGrid::parse("2x3, 2x2x2", 3).unwrap().0, vec![vec![2, 3], vec![2, 2, 2]]);
        assert!(ModelGrid::parse("2x0", 3).is_err());
        assert!(ModelGrid::parse("", 3).is_err());
    }

    #[test]
    fn bundled_scripts_pass_on_a_small_grid() {
        let scripts = scripts().unwrap();
        let grid = ModelGrid::parse("2x3x2", 3).unwrap();
        let r = run_corpus(&grid, None, DEFAULT_CAP, &scripts).unwrap();
        assert_eq!(r.items.len(), 8);
        for it in &r.items {
            assert!(it.ok(), "{}: {:?} {:?}", it.file, it.kernel, it.oracle.failures.first());
            assert!(it.oracle.equations_checked > 0, "{}", it.file);
        }
    }

    #[test]
    fn derived_rules_parse() {
        let rules = derived_rules().unwrap();
        assert_eq!(rules.len(), 8);
    }
}
