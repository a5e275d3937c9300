use crate::term::{decoration_of, match_type, substitute, typecheck, Arrow, Decoration, Generator, Term, Type};
use crate::theory::{GenSig, Theory};

use super::{Equation, Justification, Mode, RuleId, Session, Step, Violation};

/// A schematic term parameter `?name : source -> target` at most `sig.decoration`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Param {
    pub name: String,
    pub sig: GenSig,
}

/// A rule proved once from schematic parameters and then cited as a lemma.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedRule {
    pub id: String,
    /// Type variables, without the `?`.
    pub type_params: Vec<String>,
    pub params: Vec<Param>,
    pub hyps: Vec<Equation>,
    pub conclusion: Equation,
    pub arrow: Option<Arrow>,
    pub template: Vec<Step>,
}

impl DerivedRule {
    pub(crate) fn theorem(name: &str, equation: Equation) -> Self {
        DerivedRule {
            id: name.to_string(),
            type_params: vec![],
            params: vec![],
            hyps: vec![],
            conclusion: equation,
            arrow: None,
            template: vec![],
        }
    }

    /// Copy with every parameter bound at the modifier level and every
    /// equation strong, as seen by the apparent checker.
    pub fn erased(&self) -> DerivedRule {
        let strong = |e: &Equation| Equation::strong(e.lhs.clone(), e.rhs.clone());
        DerivedRule {
            id: self.id.clone(),
            type_params: self.type_params.clone(),
            params: self
                .params
                .iter()
                .map(|p| Param {
                    name: p.name.clone(),
                    sig: GenSig::new(p.sig.source.clone(), p.sig.target.clone(), Decoration::Modifier),
                })
                .collect(),
            hyps: self.hyps.iter().map(strong).collect(),
            conclusion: strong(&self.conclusion),
            arrow: self.arrow.clone(),
            template: self.template.iter().map(super::apparent::erase_step).collect(),
        }
    }

    fn extended(&self, th: &Theory) -> Theory {
        th.with_metas(self.params.iter().map(|p| (p.name.as_str(), p.sig.clone())))
    }
}

pub(crate) fn check_template(session: &Session, rule: &DerivedRule) -> Result<(), (Option<usize>, Violation)> {
    let th = rule.extended(session.theory());
    for eq in rule.hyps.iter().chain(std::iter::once(&rule.conclusion)) {
        session.well_formed_in(&th, eq).map_err(|v| (None, v))?;
    }
    if let Some(arrow) = &rule.arrow {
        let found = rule.conclusion.arrow(&th).map_err(|v| (None, v))?;
        if &found != arrow {
            return Err((
                None,
                Violation::GoalArrow {
                    declared: format!("{} -> {}", arrow.0, arrow.1),
                    found: format!("{} -> {}", found.0, found.1),
                },
            ));
        }
    }
    let proved = session.check_steps(&th, &rule.template, &rule.hyps)?;
    if !session.equations_match(&proved, &rule.conclusion) {
        return Err((
            rule.template.last().map(|s| s.index),
            Violation::GoalMismatch { proved: proved.to_string(), goal: rule.conclusion.to_string() },
        ));
    }
    Ok(())
}

/// Checks a step that cites an admitted rule with the given side terms.
pub(crate) fn check_use(
    session: &Session,
    th: &Theory,
    rule: &DerivedRule,
    concl: &Equation,
    premises: &[&Equation],
    sides: &[Term],
) -> Result<(), Violation> {
    let name = format!("lemma {}", rule.id);
    if sides.len() != rule.params.len() {
        return Err(Violation::SideTermCount { rule: name, expected: rule.params.len(), found: sides.len() });
    }
    if premises.len() != rule.hyps.len() {
        return Err(Violation::PremiseCount { rule: name, expected: rule.hyps.len(), found: premises.len() });
    }
    let mut bindings: Vec<(String, Type)> = Vec::new();
    for (p, arg) in rule.params.iter().zip(sides) {
        let (src, tgt) = typecheck(arg, th).map_err(|e| Violation::IllTyped(e.to_string()))?;
        if !match_type(&p.sig.source, &src, &mut bindings) || !match_type(&p.sig.target, &tgt, &mut bindings) {
            return Err(Violation::ShapeMismatch {
                rule: name,
                expected: format!("?{} : {} -> {}, got {} -> {}", p.name, p.sig.source, p.sig.target, src, tgt),
            });
        }
        if session.mode() == Mode::Decorated {
            let actual = decoration_of(arg, th).map_err(|e| Violation::IllDecorated(e.to_string()))?;
            if actual > p.sig.decoration {
                return Err(Violation::DecorationViolation {
                    rule: name,
                    term: arg.to_string(),
                    required: p.sig.decoration,
                    actual,
                });
            }
        }
    }
    let term_of = |g: &Generator| match g {
        Generator::Meta(m) => rule.params.iter().position(|p| &p.name == m).map(|k| sides[k].clone()),
        _ => None,
    };
    let type_of = |v: &str| bindings.iter().find(|(n, _)| n == v).map(|(_, t)| t.clone());
    let inst = |e: &Equation| {
        Equation::new(substitute(&e.lhs, &term_of, &type_of), substitute(&e.rhs, &term_of, &type_of), e.strength)
    };
    for (k, (hyp, prem)) in rule.hyps.iter().zip(premises).enumerate() {
        let want = inst(hyp);
        if !session.equations_match(&want, prem) {
            return Err(Violation::ShapeMismatch {
                rule: format!("{name} premise {}", k + 1),
                expected: want.to_string(),
            });
        }
    }
    let want = inst(&rule.conclusion);
    if !session.equations_match(&want, concl) {
        return Err(Violation::ShapeMismatch { rule: name, expected: want.to_string() });
    }
    Ok(())
}

fn meta_sig(source: Type, target: Type, decoration: Decoration) -> GenSig {
    GenSig::new(source, target, decoration)
}

/// Observational equality: `g ≡ h` for `g, h : X -> 1` whenever every cone leg
/// composed with `g` and with `h` is weakly equal to the same accessor.
/// Premises list the `g` equations in leg order, then the `h` ones.
pub fn obs_eq_rule(th: &Theory) -> DerivedRule {
    let x = Type::Var("X".into());
    let legs: Vec<(Generator, Type)> = th
        .obs_legs()
        .iter()
        .map(|g| (g.clone(), th.signature(g).map(|s| s.target.clone()).unwrap_or(Type::Unit)))
        .collect();
    let fname = |g: &Generator| match g {
        Generator::Lookup(l) => format!("f_{l}"),
        Generator::Named(n) => format!("f_{n}"),
        other => format!("f_{}", crate::syntax::print_generator(other)),
    };
    let mut params = vec![
        Param { name: "g".into(), sig: meta_sig(x.clone(), Type::Unit, Decoration::Modifier) },
        Param { name: "h".into(), sig: meta_sig(x.clone(), Type::Unit, Decoration::Modifier) },
    ];
    for (g, v) in &legs {
        params.push(Param { name: fname(g), sig: meta_sig(x.clone(), v.clone(), Decoration::Accessor) });
    }
    let n = legs.len();
    let mut hyps = Vec::with_capacity(2 * n);
    for side in ["g", "h"] {
        for (g, _) in &legs {
            hyps.push(Equation::weak(Term::comp(Term::Gen(g.clone()), Term::meta(side)), Term::meta(&fname(g))));
        }
    }
    let tuple = Term::ObsTuple(legs.iter().map(|(g, _)| Term::meta(&fname(g))).collect());
    let mut template: Vec<Step> = hyps
        .iter()
        .enumerate()
        .map(|(k, e)| Step { index: k + 1, equation: e.clone(), justification: Justification::Hyp(k + 1) })
        .collect();
    let rule = |rule: RuleId, premises: Vec<usize>| Justification::Rule { rule, premises, sides: vec![] };
    let (g, h) = (Term::meta("g"), Term::meta("h"));
    template.push(Step {
        index: 2 * n + 1,
        equation: Equation::strong(g.clone(), tuple.clone()),
        justification: rule(RuleId::STupleUnique, (1..=n).collect()),
    });
    template.push(Step {
        index: 2 * n + 2,
        equation: Equation::strong(h.clone(), tuple.clone()),
        justification: rule(RuleId::STupleUnique, (n + 1..=2 * n).collect()),
    });
    template.push(Step {
        index: 2 * n + 3,
        equation: Equation::strong(tuple, h.clone()),
        justification: rule(RuleId::EqSym, vec![2 * n + 2]),
    });
    template.push(Step {
        index: 2 * n + 4,
        equation: Equation::strong(g.clone(), h.clone()),
        justification: rule(RuleId::EqTrans, vec![2 * n + 1, 2 * n + 3]),
    });
    DerivedRule {
        id: "obs-eq".into(),
        type_params: vec!["X".into()],
        params,
        hyps,
        conclusion: Equation::strong(g, h),
        arrow: None,
        template,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::{bank_theory, state_theory};

    #[test]
    fn obs_eq_admits_in_every_theory() {
        for th in [state_theory(&["i"]).unwrap(), state_theory(&["i", "j", "k"]).unwrap(), bank_theory()] {
            let mut s = Session::new(th.clone());
            let rule = obs_eq_rule(&th);
            assert_eq!(rule.hyps.len(), 2 * th.obs_legs().len());
            s.admit(rule).unwrap();
        }
    }

    #[test]
    fn instantiation_checks_decoration() {
        let th = state_theory(&["i", "j"]).unwrap();
        let mut s = Session::new(th.clone());
        s.admit(obs_eq_rule(&th)).unwrap();
        let rule = s.lemma("obs-eq").unwrap().clone();
        let ui = Term::update("i");
        let mut sides = vec![ui.clone(), ui.clone(), Term::comp(Term::lookup("i"), ui.clone()), Term::comp(Term::lookup("j"), ui.clone())];
        let hyps: Vec<Equation> = (0..4)
            .map(|k| {
                let leg = if k % 2 == 0 { "i" } else { "j" };
                Equation::weak(Term::comp(Term::lookup(leg), ui.clone()), sides[2 + k % 2].clone())
            })
            .collect();
        let refs: Vec<&Equation> = hyps.iter().collect();
        let concl = Equation::strong(ui.clone(), ui.clone());
        match check_use(&s, &th, &rule, &concl, &refs, &sides) {
            Err(Violation::DecorationViolation { required, actual, .. }) => {
                assert_eq!((required, actual), (Decoration::Accessor, Decoration::Modifier));
            }
            other => panic!("unexpected {other:?}"),
        }
        sides[2] = Term::Id(Type::val("i"));
        sides[3] = Term::comp(Term::lookup("j"), Term::Final(Type::val("i")));
        assert!(matches!(check_use(&s, &th, &rule, &concl, &refs, &sides), Err(Violation::ShapeMismatch { .. })));
    }
}
