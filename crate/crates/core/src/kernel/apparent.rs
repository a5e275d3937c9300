//! Erasure of decorated proofs into the plain equational logic, and a
//! checker for the erased scripts.
//!
//! The erased checker shares the shape tests of the decorated catalog but
//! skips every decoration condition and reads every equation as `≡`.

use crate::term::{Decoration, Term};
use crate::theory::Theory;

use super::{
    CheckReport, DerivedRule, Equation, Justification, Mode, ProofScript, RuleId, Session, Step, TheoryRef,
};
pub use super::ApparentRule;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ApparentJustification {
    Rule { rule: ApparentRule, premises: Vec<usize>, sides: Vec<Term> },
    Axiom(String),
    Lemma { name: String, premises: Vec<usize>, sides: Vec<Term> },
    Hyp(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApparentStep {
    pub index: usize,
    pub lhs: Term,
    pub rhs: Term,
    pub justification: ApparentJustification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApparentScript {
    pub name: String,
    pub theory: TheoryRef,
    pub lhs: Term,
    pub rhs: Term,
    pub arrow: crate::term::Arrow,
    pub steps: Vec<ApparentStep>,
}

fn erase_justification(j: &Justification) -> ApparentJustification {
    match j {
        Justification::Rule { rule, premises, sides } => {
            ApparentJustification::Rule { rule: rule.erased(), premises: premises.clone(), sides: sides.clone() }
        }
        Justification::Axiom(id) => ApparentJustification::Axiom(id.clone()),
        Justification::Lemma { name, premises, sides } => {
            ApparentJustification::Lemma { name: name.clone(), premises: premises.clone(), sides: sides.clone() }
        }
        Justification::Hyp(k) => ApparentJustification::Hyp(*k),
    }
}

pub(crate) fn erase_step(step: &Step) -> Step {
    Step {
        index: step.index,
        equation: Equation::strong(step.equation.lhs.clone(), step.equation.rhs.clone()),
        justification: match &step.justification {
            Justification::Rule { rule, premises, sides } => {
                Justification::Rule { rule: rule.erased().shape(), premises: premises.clone(), sides: sides.clone() }
            }
            other => other.clone(),
        },
    }
}

/// Drops decorations and strengths from a script. Rule names are replaced
/// by their plain images.
pub fn erase_script(script: &ProofScript) -> ApparentScript {
    ApparentScript {
        name: script.name.clone(),
        theory: script.theory.clone(),
        lhs: script.goal.lhs.clone(),
        rhs: script.goal.rhs.clone(),
        arrow: script.goal_arrow.clone(),
        steps: script
            .steps
            .iter()
            .map(|s| ApparentStep {
                index: s.index,
                lhs: s.equation.lhs.clone(),
                rhs: s.equation.rhs.clone(),
                justification: erase_justification(&s.justification),
            })
            .collect(),
    }
}

/// The theory with every generator at the modifier level and every axiom strong.
pub fn erase_theory(th: &Theory) -> Theory {
    let mut out = th.clone();
    for sig in out.generators.values_mut() {
        sig.decoration = Decoration::Modifier;
    }
    for ax in &mut out.axioms {
        ax.equation = Equation::strong(ax.equation.lhs.clone(), ax.equation.rhs.clone());
    }
    out
}

impl ApparentScript {
    fn to_core(&self) -> ProofScript {
        let justification = |j: &ApparentJustification| match j {
            ApparentJustification::Rule { rule, premises, sides } => {
                Justification::Rule { rule: rule.shape(), premises: premises.clone(), sides: sides.clone() }
            }
            ApparentJustification::Axiom(id) => Justification::Axiom(id.clone()),
            ApparentJustification::Lemma { name, premises, sides } => {
                Justification::Lemma { name: name.clone(), premises: premises.clone(), sides: sides.clone() }
            }
            ApparentJustification::Hyp(k) => Justification::Hyp(*k),
        };
        ProofScript {
            name: self.name.clone(),
            theory: self.theory.clone(),
            goal: Equation::strong(self.lhs.clone(), self.rhs.clone()),
            goal_arrow: self.arrow.clone(),
            steps: self
                .steps
                .iter()
                .map(|s| Step {
                    index: s.index,
                    equation: Equation::strong(s.lhs.clone(), s.rhs.clone()),
                    justification: justification(&s.justification),
                })
                .collect(),
        }
    }
}

/// A checker for erased scripts over the erased theory.
#[derive(Clone, Debug)]
pub struct ApparentSession {
    inner: Session,
}

impl ApparentSession {
    pub fn new(th: &Theory) -> Self {
        ApparentSession { inner: Session::with_mode(erase_theory(th), Mode::Apparent) }
    }

    /// Erases `rule` and checks its erased template.
    pub fn admit(&mut self, rule: &DerivedRule) -> Result<(), super::AdmitError> {
        self.inner.admit(rule.erased())
    }

    pub fn register_theorem(&mut self, name: &str, equation: &Equation) {
        self.inner.register_theorem(name, Equation::strong(equation.lhs.clone(), equation.rhs.clone()));
    }

    pub fn check(&self, script: &ApparentScript) -> CheckReport {
        self.inner.check(&script.to_core())
    }
}

/// Erases and checks the script against the erased theory.
pub fn erase_check(session: &ApparentSession, script: &ProofScript) -> CheckReport {
    session.check(&erase_script(script))
}

/// Rules whose erased image is the given plain rule.
pub fn preimages(rule: ApparentRule) -> Vec<RuleId> {
    RuleId::ALL.iter().copied().filter(|r| r.erased() == rule).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Type;
    use crate::theory::state_theory;

    #[test]
    fn weak_and_strong_rules_share_images() {
        assert_eq!(RuleId::WTrans.erased(), RuleId::EqTrans.erased());
        assert_eq!(preimages(ApparentRule::Copy), vec![RuleId::AccWToS, RuleId::SToW]);
    }

    #[test]
    fn erased_pure_replacement_through_accessor() {
        let th = state_theory(&["i", "j"]).unwrap();
        let lj = Term::lookup("j");
        let vi = Type::val("i");
        let a2 = Equation::weak(Term::comp(lj.clone(), Term::update("i")), Term::comp(lj.clone(), Term::Final(vi.clone())));
        let lhs = Term::comps([Term::Final(Type::val("j")), lj.clone(), Term::update("i")]);
        let rhs = Term::comps([Term::Final(Type::val("j")), lj, Term::Final(vi.clone())]);
        let script = ProofScript {
            name: "t".into(),
            theory: TheoryRef::State(vec!["i".into(), "j".into()]),
            goal: Equation::weak(lhs.clone(), rhs.clone()),
            goal_arrow: (vi, Type::Unit),
            steps: vec![
                Step { index: 1, equation: a2, justification: Justification::Axiom("A2(j,i)".into()) },
                Step {
                    index: 2,
                    equation: Equation::weak(lhs, rhs),
                    justification: Justification::Rule { rule: RuleId::EqRepl, premises: vec![1], sides: vec![] },
                },
            ],
        };
        assert!(!Session::new(th.clone()).check(&script).is_accepted());
        assert!(erase_check(&ApparentSession::new(&th), &script).is_accepted());
    }
}
