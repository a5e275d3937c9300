//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines always reach the output.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;

use common::{commutes, grid, holds_in, TermGen};
use statecheck::corpus::{self, run_corpus, ModelGrid, DERIVED, SCRIPTS};
use statecheck::kernel::{CheckReport, Equation, Justification, ProofScript, Session, Strength, Violation};
use statecheck::semantics::{
    check_equation_model, verify_equations_1, verify_equations_2, FiniteModel, State, Value, DEFAULT_CAP,
};
use statecheck::syntax::{parse_rules, parse_script, parse_term, print_rule, print_script};
use statecheck::term::{decoration_of, typecheck, Decoration, Generator, Loc, Term};
use statecheck::theory::{bank_theory, state_theory, Theory};
use statecheck::translate::erase_check;

type Outcome = Result<String, String>;

fn script(file: &str) -> ProofScript {
    let src = SCRIPTS.iter().find(|(f, _)| *f == file).expect("bundled script").1;
    parse_script(src).expect("bundled scripts parse")
}

fn ijk() -> Theory {
    state_theory(&["i", "j", "k"]).unwrap()
}

fn expect_accepted(session: &Session, file: &str) -> Result<ProofScript, String> {
    let s = script(file);
    match session.check(&s) {
        CheckReport::Accepted { .. } => Ok(s),
        CheckReport::Rejected { step, violation } => Err(format!("{file} rejected at {step:?}: {violation}")),
    }
}

fn cited(s: &ProofScript) -> BTreeSet<String> {
    s.steps
        .iter()
        .map(|st| match &st.justification {
            Justification::Rule { rule, .. } => rule.to_string(),
            Justification::Lemma { name, .. } => name.clone(),
            Justification::Axiom(_) => "axiom".into(),
            Justification::Hyp(_) => "hyp".into(),
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let session = corpus::session_for(&ijk()).map_err(|e| e.to_string())?;
    let p31 = expect_accepted(&session, "eq-2.1d")?;
    let p32 = expect_accepted(&session, "eq-2.6d")?;
    if p31.goal.to_string() != "comp(u[i], l[i]) == id[unit]" {
        return Err(format!("unexpected goal {}", p31.goal));
    }
    let mut rules = cited(&p31);
    rules.extend(cited(&p32));
    let needed = [
        "w-subs", "eq-repl", "s-to-w", "w-trans", "s-tuple-unique", "E3pure", "E4acc", "left-proj-1", "left-proj-2",
        "right-proj-1", "right-proj-2",
    ];
    let missing: Vec<&str> = needed.iter().copied().filter(|r| !rules.contains(*r)).collect();
    if !missing.is_empty() {
        return Err(format!("proofs never cite {missing:?}"));
    }
    Ok(format!("{} + {} steps, {} distinct justifications", p31.steps.len(), p32.steps.len(), rules.len()))
}

fn criterion_2() -> Outcome {
    // the exact statements, written out independently of the corpus files
    let goals = [
        ("eq-2.2d", "comp(l[i], final[V[i]], l[i]) == l[i]"),
        ("eq-2.3d", "comp(u[i], pi2[unit,V[i]], rsemi(u[i])[V[i]]) == comp(u[i], pi2[V[i],V[i]])"),
        ("eq-2.4d", "comp(l[i], u[i]) ~~ id[V[i]]"),
        (
            "eq-2.5d",
            "comp(lsemi[V[i]](l[j]), pi1inv[V[i]], l[i]) == comp(perm[V[j],V[i]], lsemi[V[j]](l[i]), pi1inv[V[j]], l[j])",
        ),
        (
            "eq-2.7d",
            "comp(l[j], u[i]) == comp(pi2[unit,V[j]], rsemi(u[i])[V[j]], lsemi[V[i]](l[j]), pi1inv[V[i]])",
        ),
    ];
    let session = corpus::session_for(&ijk()).map_err(|e| e.to_string())?;
    for (file, goal) in goals {
        let s = expect_accepted(&session, file)?;
        if s.goal.to_string() != goal {
            return Err(format!("{file} proves {} instead of {goal}", s.goal));
        }
    }
    let mut fresh = Session::new(ijk());
    let mut ids = Vec::new();
    for (file, src) in DERIVED {
        for rule in parse_rules(src).map_err(|e| format!("{file}: {e}"))? {
            ids.push(rule.id.clone());
            fresh.admit(rule).map_err(|e| format!("{file}: {e}"))?;
        }
    }
    let want = ["E1acc", "E1pure", "E2acc", "E2pure", "E3acc", "E3pure", "E4acc", "E4pure"];
    if ids != want {
        return Err(format!("derived rules {ids:?}"));
    }
    Ok(format!("{} equations proved, {} derived rules admitted", goals.len(), ids.len()))
}

fn criterion_3() -> Outcome {
    let src = include_str!("fixtures/eq-2.1d-modifier");
    let variant = parse_script(src).map_err(|e| e.to_string())?;
    let th = ijk().with_decoration(&Generator::Lookup(Loc::new("i")), Decoration::Modifier);
    let session = corpus::session_for(&th).map_err(|e| e.to_string())?;
    let replacement = 6;
    match session.check(&variant) {
        CheckReport::Rejected {
            step: Some(s),
            violation: Violation::DecorationViolation { rule, term, required: Decoration::Pure, actual },
        } if s == replacement && rule == "w-pure-repl" && term == "l[j]" && actual == Decoration::Accessor => {}
        other => return Err(format!("weak replacement through l[j]: {other:?}")),
    }
    // the same step as an unrestricted strong replacement cites a weak premise
    let strong = parse_script(&src.replace("by w-pure-repl(5; l[j])", "by eq-repl(5; l[j])")).unwrap();
    match session.check(&strong) {
        CheckReport::Rejected { step: Some(s), violation: Violation::StrengthMismatch { .. } } if s == replacement => {}
        other => return Err(format!("strong replacement of a weak premise: {other:?}")),
    }
    // and the accessor lemma no longer applies to l[i]
    let e4 = Equation::strong(parse_term("comp(final[V[i]], l[i])").unwrap(), Term::Id(statecheck::term::Type::Unit));
    let lemma = Justification::Lemma { name: "E4acc".into(), premises: vec![], sides: vec![Term::lookup("i")] };
    let step = statecheck::kernel::Step { index: 1, equation: e4, justification: lemma };
    match session.check_step(&step, &[]) {
        Err(Violation::DecorationViolation { .. }) => {}
        other => return Err(format!("E4acc on a modifier: {other:?}")),
    }
    Ok(format!("rejected at step {replacement}: l[j] must be pure but is an accessor"))
}

fn criterion_4() -> Outcome {
    let mut n = 0;
    for (file, src) in SCRIPTS {
        let s = parse_script(src).map_err(|e| e.to_string())?;
        let th = s.theory.build().map_err(|e| e.to_string())?;
        let decorated = corpus::session_for(&th).map_err(|e| e.to_string())?;
        if !decorated.check(&s).is_accepted() {
            return Err(format!("{file} is not accepted"));
        }
        let apparent = corpus::apparent_session_for(&th).map_err(|e| e.to_string())?;
        match erase_check(&apparent, &s) {
            CheckReport::Accepted { .. } => n += 1,
            CheckReport::Rejected { step, violation } => {
                return Err(format!("erased {file} rejected at {step:?}: {violation}"))
            }
        }
    }
    Ok(format!("{n}/{} erased scripts accepted", SCRIPTS.len()))
}

/// Set-level laws computed directly on states, for comparison with the library.
fn reference_laws(m: &FiniteModel) -> Vec<(&'static str, bool)> {
    let locs: Vec<Loc> = m.locations().cloned().collect();
    let sizes = m.sizes();
    let states = m.states();
    let upd = |k: usize, a: u32, s: &State| {
        let mut t = s.clone();
        t[k] = a;
        t
    };
    let idx = |l: &Loc| locs.iter().position(|x| x == l).unwrap();
    let mut l11 = true;
    let mut l12 = true;
    let mut l26 = true;
    for s in &states {
        for i in &locs {
            let ki = idx(i);
            for a in 0..sizes[ki] {
                let after = m.update(i, a, s).unwrap();
                l11 &= m.lookup(i, &after).unwrap() == a && after == upd(ki, a, s);
                for j in locs.iter().filter(|j| *j != i) {
                    let kj = idx(j);
                    l12 &= m.lookup(j, &after).unwrap() == s[kj];
                    for b in 0..sizes[kj] {
                        let ij = m.update(j, b, &after).unwrap();
                        let ji = m.update(i, a, &m.update(j, b, s).unwrap()).unwrap();
                        l26 &= ij == ji;
                    }
                }
            }
        }
    }
    vec![("1.1", l11), ("1.2", l12), ("2.6", l26)]
}

fn criterion_5() -> Outcome {
    let mut models = 0;
    let mut laws = 0;
    for sizes in grid() {
        let m = FiniteModel::canonical(&sizes).map_err(|e| e.to_string())?;
        let mut all = verify_equations_1(&m, DEFAULT_CAP).map_err(|e| e.to_string())?;
        all.extend(verify_equations_2(&m, DEFAULT_CAP).map_err(|e| e.to_string())?);
        if all.len() != 9 {
            return Err(format!("{m}: {} laws reported", all.len()));
        }
        if let Some(bad) = all.iter().find(|l| !l.holds) {
            return Err(format!("{m}: ({}) fails: {:?}", bad.law, bad.counterexample));
        }
        for (law, ok) in reference_laws(&m) {
            if !ok {
                return Err(format!("{m}: reference check of ({law}) fails"));
            }
        }
        models += 1;
        laws += all.len();
    }
    let bad = FiniteModel::corrupted(&[("i", 2), ("j", 3)], "i", "j").map_err(|e| e.to_string())?;
    let found = verify_equations_1(&bad, DEFAULT_CAP).map_err(|e| e.to_string())?;
    let l12 = found.iter().find(|l| l.law == "1.2").ok_or("no (1.2) entry")?;
    if l12.holds || l12.counterexample.is_none() {
        return Err("the mutated model was not caught".into());
    }
    if reference_laws(&bad).iter().any(|(law, ok)| *law == "1.2" && *ok) {
        return Err("reference check missed the mutation".into());
    }
    Ok(format!(
        "{laws} law checks over {models} models hold; mutation caught: {}",
        l12.counterexample.as_deref().unwrap_or("")
    ))
}

fn criterion_6() -> Outcome {
    let scripts = corpus::scripts().map_err(|e| e.to_string())?;
    let report = run_corpus(&ModelGrid::full(3), None, DEFAULT_CAP, &scripts).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for item in &report.items {
        if !item.ok() {
            return Err(format!("{}: {:?} {:?}", item.file, item.kernel, item.oracle.failures.first()));
        }
        checked += item.oracle.equations_checked;
    }
    // the same sweep again through the reference reading
    let mut reference = 0;
    let mut strong = 0;
    for (file, s) in &scripts {
        let th = s.theory.build().unwrap();
        let models: Vec<FiniteModel> = if th.kind == statecheck::theory::TheoryKind::Bank {
            (1..=3).map(|n| FiniteModel::bank(n).unwrap()).collect()
        } else {
            grid().iter().map(|g| FiniteModel::canonical(g).unwrap()).collect()
        };
        for m in &models {
            for eq in s.steps.iter().map(|st| &st.equation).chain(std::iter::once(&s.goal)) {
                if !statecheck::semantics::applicable(&th, eq, m) {
                    continue;
                }
                if !holds_in(&th, eq, m)? {
                    return Err(format!("{file}: {eq} fails in {m}"));
                }
                reference += 1;
                strong += usize::from(eq.strength == Strength::Strong);
            }
        }
    }
    if checked == 0 || checked != reference {
        return Err(format!("library checked {checked} equations, reference {reference}"));
    }
    Ok(format!("{checked} proved equations ({strong} strong) hold in every grid model"))
}

fn corpus_terms() -> Vec<(String, Term)> {
    let mut out = Vec::new();
    for (_, src) in SCRIPTS {
        let s = parse_script(src).unwrap();
        for st in &s.steps {
            out.push((s.theory.header(), st.equation.lhs.clone()));
            out.push((s.theory.header(), st.equation.rhs.clone()));
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let ij = state_theory(&["i", "j"]).unwrap();
    let m_ij = FiniteModel::canonical(&[("i", 2), ("j", 3)]).unwrap();
    // the corpus needs a third location; it gets the smaller carrier again
    let m_ijk = FiniteModel::canonical(&[("i", 2), ("j", 3), ("k", 2)]).unwrap();
    let bank = bank_theory();
    let m_bank = FiniteModel::bank(6).unwrap();
    let mut corpus_n = 0;
    for (header, t) in corpus_terms() {
        let r = if header == "bank" { commutes(&bank, &m_bank, &t) } else { commutes(&ijk(), &m_ijk, &t) };
        r?;
        corpus_n += 1;
    }
    let mut g = TermGen::new(&ij, 7);
    let mut points = 0;
    for _ in 0..1000 {
        let t = g.term(Decoration::Modifier, 6);
        points += commutes(&ij, &m_ij, &t)?;
    }
    Ok(format!("{corpus_n} corpus terms and 1000 random terms agree at {points} random-term points"))
}

fn criterion_8() -> Outcome {
    let th = state_theory(&["i", "j"]).unwrap();
    let m = FiniteModel::canonical(&[("i", 2), ("j", 3)]).unwrap();
    let mut g = TermGen::new(&th, 8);
    let ev = |t: &Term, x: &Value, s: &State| statecheck::semantics::eval_decorated(&th, t, &m, x, s).unwrap();
    let mut by_arrow: std::collections::BTreeMap<String, Vec<Term>> = Default::default();
    for n in 0..600 {
        let pure = n % 2 == 0;
        let t = g.term(if pure { Decoration::Pure } else { Decoration::Accessor }, 5);
        let (src, tgt) = typecheck(&t, &th).unwrap();
        if decoration_of(&t, &th).unwrap() > Decoration::Accessor {
            return Err(format!("{t} was generated as an accessor"));
        }
        let states = m.states();
        for x in m.values(&src).unwrap() {
            let first = ev(&t, &x, &states[0]).0;
            for s in &states {
                let (v, s1) = ev(&t, &x, s);
                if &s1 != s {
                    return Err(format!("accessor {t} changed the state at {x}, {s:?}"));
                }
                if pure && v != first {
                    return Err(format!("pure {t} depends on the state at {x}"));
                }
            }
        }
        by_arrow.entry(format!("{src} -> {tgt}")).or_default().push(t);
    }
    let mut pairs = 0;
    let mut equal = 0;
    for terms in by_arrow.values() {
        for (a, b) in terms.iter().zip(terms.iter().skip(1)).take(20) {
            let s = check_equation_model(&th, &Equation::strong(a.clone(), b.clone()), &m, DEFAULT_CAP)
                .map_err(|e| e.to_string())?;
            let w = check_equation_model(&th, &Equation::weak(a.clone(), b.clone()), &m, DEFAULT_CAP)
                .map_err(|e| e.to_string())?;
            if s.holds != w.holds {
                return Err(format!("strong and weak disagree on {a} and {b}"));
            }
            pairs += 1;
            equal += usize::from(s.holds);
        }
    }
    Ok(format!("600 terms obey their laws; weak and strong agree on {pairs} accessor pairs ({equal} equal)"))
}

fn criterion_9() -> Outcome {
    let th = state_theory(&["i", "j"]).unwrap();
    let mut g = TermGen::new(&th, 9);
    for _ in 0..1000 {
        let t = g.term(Decoration::Modifier, 6);
        let text = t.to_string();
        let back = parse_term(&text).map_err(|e| format!("{text}: {e}"))?;
        if back != t || back.to_string() != text {
            return Err(format!("{text} reparses as {back}"));
        }
    }
    let strip = |s: &str| -> String { s.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect() };
    for (file, src) in SCRIPTS {
        let printed = print_script(&parse_script(src).map_err(|e| e.to_string())?);
        if printed != strip(src) {
            return Err(format!("{file} does not print back to itself"));
        }
    }
    for (file, src) in DERIVED {
        let printed: String = parse_rules(src).map_err(|e| e.to_string())?.iter().map(print_rule).collect();
        if printed != strip(src) {
            return Err(format!("{file} does not print back to itself"));
        }
    }
    Ok(format!("1000 terms and {} corpus files round-trip", SCRIPTS.len() + DERIVED.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("written proofs accepted", criterion_1),
        ("constructed proofs and derived rules accepted", criterion_2),
        ("replacement through a non-pure lookup rejected", criterion_3),
        ("erased corpus accepted", criterion_4),
        ("laws hold on the model grid, mutation caught", criterion_5),
        ("soundness sweep", criterion_6),
        ("expansion commutes with evaluation", criterion_7),
        ("accessor and pure laws", criterion_8),
        ("print and parse round-trip", criterion_9),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let started = std::time::Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = started.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {secs:.2}s)", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
