//! The trusted checker for decorated proof scripts.
//!
//! A script is a flat list of numbered steps. Each step asserts an equation
//! and cites a rule of the catalog, an axiom of the theory, an admitted
//! derived rule (lemma) or, inside derived-rule templates, a hypothesis.
//! Terms are compared modulo [`normalize`](crate::term::normalize) only.

mod derived;
mod rules;

pub mod apparent;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::term::{decoration_of, same, typecheck, Arrow, Decoration, Term};
use crate::theory::Theory;

pub use derived::{obs_eq_rule, DerivedRule, Param};
pub use rules::{ApparentRule, RuleId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strength {
    /// `≡`: same result and same final state.
    Strong,
    /// `~`: same result, final states may differ.
    Weak,
}

impl Strength {
    pub fn symbol(self) -> &'static str {
        match self {
            Strength::Strong => "==",
            Strength::Weak => "~~",
        }
    }
}

impl fmt::Display for Strength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
    pub strength: Strength,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term, strength: Strength) -> Self {
        Equation { lhs, rhs, strength }
    }

    pub fn strong(lhs: Term, rhs: Term) -> Self {
        Equation::new(lhs, rhs, Strength::Strong)
    }

    pub fn weak(lhs: Term, rhs: Term) -> Self {
        Equation::new(lhs, rhs, Strength::Weak)
    }

    /// Same sides modulo normalization and same strength.
    pub fn matches(&self, other: &Equation) -> bool {
        self.strength == other.strength && same(&self.lhs, &other.lhs) && same(&self.rhs, &other.rhs)
    }

    /// Source and target, checking that both sides are parallel.
    pub fn arrow(&self, th: &Theory) -> Result<Arrow, Violation> {
        let l = typecheck(&self.lhs, th).map_err(|e| Violation::IllTyped(e.to_string()))?;
        let r = typecheck(&self.rhs, th).map_err(|e| Violation::IllTyped(e.to_string()))?;
        if l != r {
            return Err(Violation::NotParallel {
                lhs: format!("{} -> {}", l.0, l.1),
                rhs: format!("{} -> {}", r.0, r.1),
            });
        }
        Ok(l)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.strength, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Rule { rule: RuleId, premises: Vec<usize>, sides: Vec<Term> },
    Axiom(String),
    Lemma { name: String, premises: Vec<usize>, sides: Vec<Term> },
    /// The k-th hypothesis of the derived rule whose template is being checked (1-based).
    Hyp(usize),
}

impl Justification {
    pub fn premises(&self) -> &[usize] {
        match self {
            Justification::Rule { premises, .. } | Justification::Lemma { premises, .. } => premises,
            Justification::Axiom(_) | Justification::Hyp(_) => &[],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub index: usize,
    pub equation: Equation,
    pub justification: Justification,
}

/// The theory a script claims to be written in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoryRef {
    State(Vec<String>),
    Bank,
}

impl TheoryRef {
    pub fn build(&self) -> Result<Theory, crate::theory::TheoryError> {
        match self {
            TheoryRef::State(locs) => crate::theory::state_theory(locs),
            TheoryRef::Bank => Ok(crate::theory::bank_theory()),
        }
    }

    pub fn header(&self) -> String {
        match self {
            TheoryRef::State(locs) => format!("state({})", locs.join(",")),
            TheoryRef::Bank => "bank".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofScript {
    pub name: String,
    pub theory: TheoryRef,
    pub goal: Equation,
    pub goal_arrow: Arrow,
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    #[error("{rule}: {term} must be {required} but is {actual}")]
    DecorationViolation { rule: String, term: String, required: Decoration, actual: Decoration },
    #[error("{rule}: expected {expected}")]
    ShapeMismatch { rule: String, expected: String },
    #[error("{rule}: {what} must be {expected}")]
    StrengthMismatch { rule: String, what: String, expected: Strength },
    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
    #[error("unknown or unadmitted lemma `{0}`")]
    UnknownLemma(String),
    #[error("step {step} cites step {premise}, which does not precede it")]
    PremiseOutOfOrder { step: usize, premise: usize },
    #[error("{rule}: expected {expected} premises, found {found}")]
    PremiseCount { rule: String, expected: usize, found: usize },
    #[error("{rule}: expected {expected} side terms, found {found}")]
    SideTermCount { rule: String, expected: usize, found: usize },
    #[error("hypothesis {0} is not available here")]
    UnknownHypothesis(usize),
    #[error("ill-typed: {0}")]
    IllTyped(String),
    #[error("ill-decorated: {0}")]
    IllDecorated(String),
    #[error("sides are not parallel: {lhs} vs {rhs}")]
    NotParallel { lhs: String, rhs: String },
    #[error("step numbers must increase: {0}")]
    StepOrder(usize),
    #[error("last step proves `{proved}`, goal is `{goal}`")]
    GoalMismatch { proved: String, goal: String },
    #[error("goal has arrow {found}, declared {declared}")]
    GoalArrow { declared: String, found: String },
    #[error("script has no steps")]
    EmptyScript,
    #[error("script is written for {script}, session theory is {session}")]
    TheoryMismatch { script: String, session: String },
}

/// Outcome of checking a script.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckReport {
    Accepted { proved: Equation },
    Rejected { step: Option<usize>, violation: Violation },
}

impl CheckReport {
    pub fn is_accepted(&self) -> bool {
        matches!(self, CheckReport::Accepted { .. })
    }

    pub fn failing_step(&self) -> Option<usize> {
        match self {
            CheckReport::Rejected { step, .. } => *step,
            CheckReport::Accepted { .. } => None,
        }
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            CheckReport::Rejected { violation, .. } => Some(violation),
            CheckReport::Accepted { .. } => None,
        }
    }
}

/// Which logic the checker enforces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Decorated,
    /// Decorations dropped and every equation read as `≡`.
    Apparent,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AdmitError {
    #[error("template of `{rule}` rejected at step {step:?}: {violation}")]
    TemplateRejected { rule: String, step: Option<usize>, violation: Violation },
    #[error("lemma `{0}` is already admitted")]
    Duplicate(String),
}

/// A theory together with the lemmas admitted so far.
#[derive(Clone, Debug)]
pub struct Session {
    theory: Theory,
    lemmas: BTreeMap<String, DerivedRule>,
    mode: Mode,
}

impl Session {
    pub fn new(theory: Theory) -> Self {
        Session { theory, lemmas: BTreeMap::new(), mode: Mode::Decorated }
    }

    pub(crate) fn with_mode(theory: Theory, mode: Mode) -> Self {
        Session { theory, lemmas: BTreeMap::new(), mode }
    }

    pub fn theory(&self) -> &Theory {
        &self.theory
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn lemma(&self, name: &str) -> Option<&DerivedRule> {
        self.lemmas.get(name)
    }

    pub fn lemmas(&self) -> impl Iterator<Item = &DerivedRule> {
        self.lemmas.values()
    }

    /// Checks the certifying template of `rule` against the primitive rules
    /// and the lemmas admitted so far; on success the rule becomes citable.
    pub fn admit(&mut self, rule: DerivedRule) -> Result<(), AdmitError> {
        if self.lemmas.contains_key(&rule.id) {
            return Err(AdmitError::Duplicate(rule.id));
        }
        derived::check_template(self, &rule).map_err(|(step, violation)| AdmitError::TemplateRejected {
            rule: rule.id.clone(),
            step,
            violation,
        })?;
        self.lemmas.insert(rule.id.clone(), rule);
        Ok(())
    }

    /// Registers an already proved closed equation under `name`.
    pub fn register_theorem(&mut self, name: &str, equation: Equation) {
        self.lemmas.insert(name.to_string(), DerivedRule::theorem(name, equation));
    }

    pub fn check(&self, script: &ProofScript) -> CheckReport {
        if script.theory.header() != self.theory.header() {
            return CheckReport::Rejected {
                step: None,
                violation: Violation::TheoryMismatch {
                    script: script.theory.header(),
                    session: self.theory.header(),
                },
            };
        }
        match self.check_goal(script) {
            Ok(proved) => CheckReport::Accepted { proved },
            Err((step, violation)) => CheckReport::Rejected { step, violation },
        }
    }

    fn check_goal(&self, script: &ProofScript) -> Result<Equation, (Option<usize>, Violation)> {
        let arrow = self.well_formed(&script.goal).map_err(|v| (None, v))?;
        if arrow != script.goal_arrow {
            return Err((
                None,
                Violation::GoalArrow {
                    declared: format!("{} -> {}", script.goal_arrow.0, script.goal_arrow.1),
                    found: format!("{} -> {}", arrow.0, arrow.1),
                },
            ));
        }
        let proved = self.check_steps(&self.theory, &script.steps, &[])?;
        if !self.equations_match(&proved, &script.goal) {
            return Err((
                script.steps.last().map(|s| s.index),
                Violation::GoalMismatch { proved: proved.to_string(), goal: script.goal.to_string() },
            ));
        }
        Ok(script.goal.clone())
    }

    fn equations_match(&self, a: &Equation, b: &Equation) -> bool {
        match self.mode {
            Mode::Decorated => a.matches(b),
            Mode::Apparent => same(&a.lhs, &b.lhs) && same(&a.rhs, &b.rhs),
        }
    }

    /// Typechecks and decorates both sides.
    fn well_formed_in(&self, th: &Theory, eq: &Equation) -> Result<Arrow, Violation> {
        let arrow = eq.arrow(th)?;
        if self.mode == Mode::Decorated {
            for side in [&eq.lhs, &eq.rhs] {
                decoration_of(side, th).map_err(|e| Violation::IllDecorated(e.to_string()))?;
            }
        }
        Ok(arrow)
    }

    fn well_formed(&self, eq: &Equation) -> Result<Arrow, Violation> {
        self.well_formed_in(&self.theory, eq)
    }

    /// Checks a step list in theory `th` (the session theory, possibly
    /// extended with template parameters). Returns the last proved equation.
    fn check_steps(
        &self,
        th: &Theory,
        steps: &[Step],
        hyps: &[Equation],
    ) -> Result<Equation, (Option<usize>, Violation)> {
        let mut proved: Vec<(usize, &Equation)> = Vec::with_capacity(steps.len());
        for step in steps {
            let at = Some(step.index);
            if let Some((last, _)) = proved.last() {
                if step.index <= *last {
                    return Err((at, Violation::StepOrder(step.index)));
                }
            }
            let mut premises = Vec::new();
            for &p in step.justification.premises() {
                match proved.iter().find(|(k, _)| *k == p) {
                    Some((_, eq)) => premises.push(*eq),
                    None => return Err((at, Violation::PremiseOutOfOrder { step: step.index, premise: p })),
                }
            }
            self.check_step_in(th, step, &premises, hyps).map_err(|v| (at, v))?;
            proved.push((step.index, &step.equation));
        }
        proved
            .last()
            .map(|(_, eq)| (*eq).clone())
            .ok_or((None, Violation::EmptyScript))
    }

    /// Checks one step given the equations of its cited premises.
    pub fn check_step(&self, step: &Step, premises: &[&Equation]) -> Result<(), Violation> {
        self.check_step_in(&self.theory, step, premises, &[])
    }

    fn check_step_in(
        &self,
        th: &Theory,
        step: &Step,
        premises: &[&Equation],
        hyps: &[Equation],
    ) -> Result<(), Violation> {
        self.well_formed_in(th, &step.equation)?;
        match &step.justification {
            Justification::Rule { rule, sides, .. } => {
                let ctx = rules::RuleCtx { th, mode: self.mode };
                rules::check_rule(&ctx, *rule, &step.equation, premises, sides)
            }
            Justification::Axiom(id) => {
                let ax = self.theory.axiom(id).ok_or_else(|| Violation::UnknownAxiom(id.clone()))?;
                if self.equations_match(&ax.equation, &step.equation) {
                    Ok(())
                } else {
                    Err(Violation::ShapeMismatch {
                        rule: format!("axiom {id}"),
                        expected: ax.equation.to_string(),
                    })
                }
            }
            Justification::Hyp(k) => {
                let hyp = k
                    .checked_sub(1)
                    .and_then(|i| hyps.get(i))
                    .ok_or(Violation::UnknownHypothesis(*k))?;
                if self.equations_match(hyp, &step.equation) {
                    Ok(())
                } else {
                    Err(Violation::ShapeMismatch { rule: format!("hyp({k})"), expected: hyp.to_string() })
                }
            }
            Justification::Lemma { name, sides, .. } => {
                let rule = self.lemmas.get(name).ok_or_else(|| Violation::UnknownLemma(name.clone()))?;
                derived::check_use(self, th, rule, &step.equation, premises, sides)
            }
        }
    }
}

/// Checks `script` in a fresh session over `th` that has the given lemmas admitted.
pub fn check_script(session: &Session, script: &ProofScript) -> CheckReport {
    session.check(script)
}
