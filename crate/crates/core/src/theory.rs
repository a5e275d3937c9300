//! Decorated theories: generators with decorations, axioms and the
//! observational product, plus the bundled state and bank theories.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::kernel::Equation;
use crate::term::{decoration_of, typecheck, Decoration, Generator, Loc, Term, Type};

/// Signature of a generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSig {
    pub source: Type,
    pub target: Type,
    pub decoration: Decoration,
}

impl GenSig {
    pub fn new(source: Type, target: Type, decoration: Decoration) -> Self {
        GenSig { source, target, decoration }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axiom {
    pub id: String,
    pub equation: Equation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoryKind {
    State,
    Bank,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    pub kind: TheoryKind,
    pub locations: Vec<Loc>,
    pub generators: BTreeMap<Generator, GenSig>,
    pub axioms: Vec<Axiom>,
    /// Legs of the observational product with vertex `1`, one per location.
    pub obs_product: Vec<Generator>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("a state theory needs at least one location")]
    EmptyLocations,
    #[error("location `{0}` is declared twice")]
    DuplicateLocation(Loc),
}

/// Name of the bank account's only location.
pub const BANK_LOCATION: &str = "acct";

/// Pure integer constants of the bank theory, by value.
pub const BANK_CONSTANTS: [&str; 10] = [
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine",
];

pub const BANK_OPERATIONS: [&str; 3] = ["plus", "minus", "times"];

impl Theory {
    pub fn signature(&self, g: &Generator) -> Option<&GenSig> {
        self.generators.get(g)
    }

    pub fn has_location(&self, loc: &Loc) -> bool {
        self.locations.contains(loc)
    }

    pub fn obs_legs(&self) -> &[Generator] {
        &self.obs_product
    }

    pub fn axiom(&self, id: &str) -> Option<&Axiom> {
        self.axioms.iter().find(|a| a.id == id)
    }

    /// Header form used by proof scripts: `state(i,j)` or `bank`.
    pub fn header(&self) -> String {
        match self.kind {
            TheoryKind::State => {
                let locs: Vec<&str> = self.locations.iter().map(Loc::as_str).collect();
                format!("state({})", locs.join(","))
            }
            TheoryKind::Bank => "bank".to_string(),
        }
    }

    /// Copy of the theory with one generator re-declared at another decoration.
    pub fn with_decoration(&self, g: &Generator, decoration: Decoration) -> Theory {
        let mut th = self.clone();
        if let Some(sig) = th.generators.get_mut(g) {
            sig.decoration = decoration;
        }
        th
    }

    /// Copy of the theory extended with schematic generators.
    pub fn with_metas<'a>(&self, metas: impl IntoIterator<Item = (&'a str, GenSig)>) -> Theory {
        let mut th = self.clone();
        for (name, sig) in metas {
            th.generators.insert(Generator::Meta(name.to_string()), sig);
        }
        th
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.header())
    }
}

/// The decorated theory of states over the given locations.
pub fn state_theory<S: AsRef<str>>(locations: &[S]) -> Result<Theory, TheoryError> {
    if locations.is_empty() {
        return Err(TheoryError::EmptyLocations);
    }
    let mut seen = BTreeSet::new();
    let locs: Vec<Loc> = locations.iter().map(|l| Loc::new(l.as_ref())).collect();
    for l in &locs {
        if !seen.insert(l.clone()) {
            return Err(TheoryError::DuplicateLocation(l.clone()));
        }
    }

    let mut generators = BTreeMap::new();
    for l in &locs {
        let v = Type::Val(l.clone());
        generators.insert(
            Generator::Lookup(l.clone()),
            GenSig::new(Type::Unit, v.clone(), Decoration::Accessor),
        );
        generators.insert(
            Generator::Update(l.clone()),
            GenSig::new(v, Type::Unit, Decoration::Modifier),
        );
    }

    let mut axioms = Vec::new();
    for i in &locs {
        let vi = Type::Val(i.clone());
        axioms.push(Axiom {
            id: format!("A1({i})"),
            equation: Equation::weak(
                Term::comp(Term::lookup(i.as_str()), Term::update(i.as_str())),
                Term::Id(vi),
            ),
        });
    }
    for i in &locs {
        for j in locs.iter().filter(|j| *j != i) {
            axioms.push(Axiom {
                id: format!("A2({j},{i})"),
                equation: Equation::weak(
                    Term::comp(Term::lookup(j.as_str()), Term::update(i.as_str())),
                    Term::comp(Term::lookup(j.as_str()), Term::Final(Type::Val(i.clone()))),
                ),
            });
        }
    }

    let obs_product = locs.iter().map(|l| Generator::Lookup(l.clone())).collect();
    Ok(Theory {
        kind: TheoryKind::State,
        locations: locs,
        generators,
        axioms,
        obs_product,
    })
}

/// The bank-account theory: one location holding a bounded integer.
///
/// Its one axiom `B1` says that reading the balance right after a deposit
/// of `x` yields `x` plus the previous balance.
pub fn bank_theory() -> Theory {
    let loc = Loc::new(BANK_LOCATION);
    let int = Type::Val(loc.clone());
    let mut generators = BTreeMap::new();
    let named = |s: &str| Generator::Named(s.to_string());
    generators.insert(named("balance"), GenSig::new(Type::Unit, int.clone(), Decoration::Accessor));
    generators.insert(named("deposit"), GenSig::new(int.clone(), Type::Unit, Decoration::Modifier));
    for c in BANK_CONSTANTS {
        generators.insert(named(c), GenSig::new(Type::Unit, int.clone(), Decoration::Pure));
    }
    for op in BANK_OPERATIONS {
        generators.insert(
            named(op),
            GenSig::new(Type::prod(int.clone(), int.clone()), int.clone(), Decoration::Pure),
        );
    }
    let b1 = Equation::weak(
        Term::comp(Term::Gen(named("balance")), Term::Gen(named("deposit"))),
        Term::comps([
            Term::Gen(named("plus")),
            Term::left_semi(int.clone(), Term::Gen(named("balance"))),
            Term::Proj1Inv(int),
        ]),
    );
    Theory {
        kind: TheoryKind::Bank,
        locations: vec![loc],
        generators,
        axioms: vec![Axiom { id: "B1".into(), equation: b1 }],
        obs_product: vec![named("balance")],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum DiagnosticCode {
    EmptyLocations,
    DuplicateLocation,
    IllTypedAxiom,
    NonParallelAxiom,
    IllTypedGenerator,
    MissingConeLeg,
    NonAccessorConeLeg,
    ConeLegShape,
    ConeArity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    pub message: String,
}

/// Checks every theory invariant; the result is empty iff all hold.
pub fn validate_theory(th: &Theory) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut push = |code, message: String| out.push(Diagnostic { code, message });

    if th.locations.is_empty() {
        push(DiagnosticCode::EmptyLocations, "no locations declared".into());
    }
    let mut seen = BTreeSet::new();
    for l in &th.locations {
        if !seen.insert(l) {
            push(DiagnosticCode::DuplicateLocation, format!("location `{l}` declared twice"));
        }
    }

    for (g, sig) in &th.generators {
        for ty in [&sig.source, &sig.target] {
            let mut locs = Vec::new();
            ty.collect_locs(&mut locs);
            if let Some(l) = locs.iter().find(|l| !th.has_location(l)) {
                push(
                    DiagnosticCode::IllTypedGenerator,
                    format!("generator {} mentions undeclared location `{l}`", crate::syntax::print_generator(g)),
                );
            }
        }
    }

    for ax in &th.axioms {
        let lhs = typecheck(&ax.equation.lhs, th);
        let rhs = typecheck(&ax.equation.rhs, th);
        match (lhs, rhs) {
            (Ok(a), Ok(b)) if a != b => push(
                DiagnosticCode::NonParallelAxiom,
                format!("axiom {} relates {} -> {} and {} -> {}", ax.id, a.0, a.1, b.0, b.1),
            ),
            (Ok(_), Ok(_)) => {}
            (Err(e), _) | (_, Err(e)) => {
                push(DiagnosticCode::IllTypedAxiom, format!("axiom {}: {e}", ax.id))
            }
        }
    }

    if th.obs_product.len() != th.locations.len() {
        push(
            DiagnosticCode::ConeArity,
            format!(
                "observational product has {} legs for {} locations",
                th.obs_product.len(),
                th.locations.len()
            ),
        );
    }
    for (leg, loc) in th.obs_product.iter().zip(&th.locations) {
        let Some(sig) = th.signature(leg) else {
            push(
                DiagnosticCode::MissingConeLeg,
                format!("cone leg {} is not declared", crate::syntax::print_generator(leg)),
            );
            continue;
        };
        if sig.source != Type::Unit || sig.target != Type::Val(loc.clone()) {
            push(
                DiagnosticCode::ConeLegShape,
                format!("cone leg {} is not an arrow 1 -> V[{loc}]", crate::syntax::print_generator(leg)),
            );
        }
        if sig.decoration > Decoration::Accessor {
            push(
                DiagnosticCode::NonAccessorConeLeg,
                format!("cone leg {} is a modifier", crate::syntax::print_generator(leg)),
            );
        }
        if decoration_of(&Term::Gen(leg.clone()), th).is_err() {
            push(DiagnosticCode::MissingConeLeg, "cone leg has no decoration".into());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Strength;

    #[test]
    fn single_location() {
        let th = state_theory(&["i"]).unwrap();
        assert_eq!(th.generators.len(), 2);
        assert_eq!(th.axioms.len(), 1);
        assert_eq!(th.axioms[0].id, "A1(i)");
    }

    #[test]
    fn two_locations() {
        let th = state_theory(&["i", "j"]).unwrap();
        assert_eq!(th.generators.len(), 4);
        let ids: Vec<&str> = th.axioms.iter().map(|a| a.id.as_str()).collect();
        assert_eq!(ids, ["A1(i)", "A1(j)", "A2(j,i)", "A2(i,j)"]);
        assert!(validate_theory(&th).is_empty());
        assert!(th.axioms.iter().all(|a| a.equation.strength == Strength::Weak));
    }

    #[test]
    fn a2_count_is_quadratic() {
        for n in 1..=4usize {
            let names: Vec<String> = (0..n).map(|k| format!("x{k}")).collect();
            let th = state_theory(&names).unwrap();
            let a2 = th.axioms.iter().filter(|a| a.id.starts_with("A2")).count();
            assert_eq!(a2, n * (n - 1));
        }
    }

    #[test]
    fn construction_errors() {
        let empty: [&str; 0] = [];
        assert_eq!(state_theory(&empty), Err(TheoryError::EmptyLocations));
        assert_eq!(
            state_theory(&["i", "i"]),
            Err(TheoryError::DuplicateLocation(Loc::new("i")))
        );
    }

    #[test]
    fn deterministic() {
        assert_eq!(state_theory(&["a", "b"]).unwrap(), state_theory(&["a", "b"]).unwrap());
    }

    #[test]
    fn bank_decorations_and_types() {
        let th = bank_theory();
        assert!(validate_theory(&th).is_empty());
        let bal = Term::named("balance");
        let dep = Term::named("deposit");
        assert_eq!(decoration_of(&bal, &th).unwrap(), Decoration::Accessor);
        assert_eq!(decoration_of(&dep, &th).unwrap(), Decoration::Modifier);
        let t = Term::comps([bal, dep, Term::named("seven")]);
        assert_eq!(typecheck(&t, &th).unwrap(), (Type::Unit, Type::val(BANK_LOCATION)));
    }

    #[test]
    fn diagnostics() {
        let mut th = state_theory(&["i", "j"]).unwrap();
        th.axioms.push(Axiom {
            id: "bad".into(),
            equation: Equation::strong(Term::lookup("i"), Term::lookup("j")),
        });
        let codes: Vec<_> = validate_theory(&th).into_iter().map(|d| d.code).collect();
        assert_eq!(codes, [DiagnosticCode::NonParallelAxiom]);

        let th = state_theory(&["i", "j"])
            .unwrap()
            .with_decoration(&Generator::Lookup(Loc::new("i")), Decoration::Modifier);
        let codes: Vec<_> = validate_theory(&th).into_iter().map(|d| d.code).collect();
        assert_eq!(codes, [DiagnosticCode::NonAccessorConeLeg]);
    }
}
