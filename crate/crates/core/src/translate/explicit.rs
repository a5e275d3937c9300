use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::kernel::{Equation, Strength};
use crate::term::{decoration_of, typecheck, Decoration, DecorationError, Generator, Loc, Term, Type, TypeError};
use crate::theory::Theory;

/// Objects of the explicit logic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExplicitType {
    Lifted(Type),
    /// The type of states.
    State,
    /// `X × S`
    ProdS(Type),
}

/// Terms of the explicit logic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExplicitTerm {
    Id(ExplicitType),
    Comp(Box<ExplicitTerm>, Box<ExplicitTerm>),
    /// `p_X : X×S -> X`
    P(Type),
    /// `q_X : X×S -> S`
    Q(Type),
    /// `⟨a, b⟩ : E -> Y×S` for `a : E -> Y`, `b : E -> S`.
    Tuple(Box<ExplicitTerm>, Box<ExplicitTerm>),
    /// `⟨a, b⟩ : E -> Y1×Y2` for value-valued `a`, `b`.
    Pair(Box<ExplicitTerm>, Box<ExplicitTerm>),
    Final(ExplicitType),
    /// `l_{i,1} : S -> V_i`
    Lookup1(Loc),
    /// `u_i : V_i×S -> S`
    Update(Loc),
    /// The state with the given observations, one component per cone leg.
    StateTuple(Vec<ExplicitTerm>),
    /// `f_0 : X -> Y` of a pure decorated term.
    Pure(Term),
    /// `f_1 : X×S -> Y` of an accessor generator.
    Acc1(Generator),
    /// A modifier generator `X×S -> Y×S`.
    Modi(Generator),
}

impl ExplicitTerm {
    pub fn comp(outer: ExplicitTerm, inner: ExplicitTerm) -> ExplicitTerm {
        ExplicitTerm::Comp(Box::new(outer), Box::new(inner))
    }

    pub fn tuple(a: ExplicitTerm, b: ExplicitTerm) -> ExplicitTerm {
        ExplicitTerm::Tuple(Box::new(a), Box::new(b))
    }

    pub fn pair(a: ExplicitTerm, b: ExplicitTerm) -> ExplicitTerm {
        ExplicitTerm::Pair(Box::new(a), Box::new(b))
    }

    pub fn size(&self) -> usize {
        match self {
            ExplicitTerm::Comp(a, b) | ExplicitTerm::Tuple(a, b) | ExplicitTerm::Pair(a, b) => 1 + a.size() + b.size(),
            ExplicitTerm::StateTuple(fs) => 1 + fs.iter().map(ExplicitTerm::size).sum::<usize>(),
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitEquation {
    pub lhs: ExplicitTerm,
    pub rhs: ExplicitTerm,
    pub source: ExplicitType,
    pub target: ExplicitType,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Decoration(#[from] DecorationError),
    #[error("schematic generator `{0}` cannot be expanded")]
    Schematic(String),
    #[error("ill-typed explicit term: {0}")]
    Explicit(String),
}

fn lifted_then_state(x: &Type) -> ExplicitTerm {
    ExplicitTerm::Q(x.clone())
}

/// `f_0 × id_S`
fn pure_image(t: &Term, x: &Type) -> ExplicitTerm {
    ExplicitTerm::tuple(ExplicitTerm::comp(ExplicitTerm::Pure(t.clone()), ExplicitTerm::P(x.clone())), lifted_then_state(x))
}

/// Structural translation of a decorated term `X -> Y` into `X×S -> Y×S`.
pub fn expand_term(th: &Theory, t: &Term) -> Result<ExplicitTerm, TranslateError> {
    use ExplicitTerm as E;
    let (x, _) = typecheck(t, th)?;
    Ok(match t {
        Term::Id(x) => E::Id(ExplicitType::ProdS(x.clone())),
        Term::Comp(outer, inner) => E::comp(expand_term(th, outer)?, expand_term(th, inner)?),
        Term::Gen(Generator::Lookup(l)) => {
            E::tuple(E::comp(E::Lookup1(l.clone()), E::Q(Type::Unit)), E::Q(Type::Unit))
        }
        Term::Gen(Generator::Update(l)) => {
            E::tuple(E::Final(ExplicitType::ProdS(Type::Val(l.clone()))), E::Update(l.clone()))
        }
        Term::Gen(Generator::Meta(m)) => return Err(TranslateError::Schematic(format!("?{m}"))),
        Term::Gen(g @ Generator::Named(_)) => match decoration_of(t, th)? {
            Decoration::Pure => pure_image(t, &x),
            Decoration::Accessor => E::tuple(E::Acc1(g.clone()), E::Q(x)),
            Decoration::Modifier => E::Modi(g.clone()),
        },
        Term::ObsTuple(fs) => {
            let legs = th.obs_legs();
            let mut parts = Vec::with_capacity(fs.len());
            for (f, leg) in fs.iter().zip(legs) {
                let v = th.signature(leg).map(|s| s.target.clone()).unwrap_or(Type::Unit);
                parts.push(E::comp(E::P(v), expand_term(th, f)?));
            }
            E::tuple(E::Final(ExplicitType::ProdS(x)), E::StateTuple(parts))
        }
        Term::LeftSemi(keep, f) => {
            let Type::Prod(_, a) = &x else { unreachable!("typechecked semi product") };
            let (_, b) = typecheck(f, th)?;
            let g = E::comp(
                expand_term(th, f)?,
                E::tuple(E::comp(E::Pure(Term::Proj2(keep.clone(), (**a).clone())), E::P(x.clone())), E::Q(x.clone())),
            );
            E::tuple(
                E::pair(
                    E::comp(E::Pure(Term::Proj1(keep.clone(), (**a).clone())), E::P(x.clone())),
                    E::comp(E::P(b.clone()), g.clone()),
                ),
                E::comp(E::Q(b), g),
            )
        }
        Term::RightSemi(f, keep) => {
            let Type::Prod(a, _) = &x else { unreachable!("typechecked semi product") };
            let (_, b) = typecheck(f, th)?;
            let g = E::comp(
                expand_term(th, f)?,
                E::tuple(E::comp(E::Pure(Term::Proj1((**a).clone(), keep.clone())), E::P(x.clone())), E::Q(x.clone())),
            );
            E::tuple(
                E::pair(
                    E::comp(E::P(b.clone()), g.clone()),
                    E::comp(E::Pure(Term::Proj2((**a).clone(), keep.clone())), E::P(x.clone())),
                ),
                E::comp(E::Q(b), g),
            )
        }
        Term::Final(_)
        | Term::Proj1(..)
        | Term::Proj2(..)
        | Term::Proj1Inv(_)
        | Term::Proj2Inv(_)
        | Term::Perm(..)
        | Term::PureProd(..) => pure_image(t, &x),
    })
}

/// Strong equations compare whole images, weak ones only their value parts.
pub fn expand_equation(th: &Theory, eq: &Equation) -> Result<ExplicitEquation, TranslateError> {
    let (x, y) = typecheck(&eq.lhs, th)?;
    let (l, r) = (expand_term(th, &eq.lhs)?, expand_term(th, &eq.rhs)?);
    Ok(match eq.strength {
        Strength::Strong => ExplicitEquation {
            lhs: l,
            rhs: r,
            source: ExplicitType::ProdS(x),
            target: ExplicitType::ProdS(y),
        },
        Strength::Weak => ExplicitEquation {
            lhs: ExplicitTerm::comp(ExplicitTerm::P(y.clone()), l),
            rhs: ExplicitTerm::comp(ExplicitTerm::P(y.clone()), r),
            source: ExplicitType::ProdS(x),
            target: ExplicitType::Lifted(y),
        },
    })
}

fn bad(msg: String) -> TranslateError {
    TranslateError::Explicit(msg)
}

pub fn explicit_typecheck(th: &Theory, t: &ExplicitTerm) -> Result<(ExplicitType, ExplicitType), TranslateError> {
    use ExplicitType as T;
    Ok(match t {
        ExplicitTerm::Id(e) => (e.clone(), e.clone()),
        ExplicitTerm::Comp(outer, inner) => {
            let (a, b) = explicit_typecheck(th, inner)?;
            let (b2, c) = explicit_typecheck(th, outer)?;
            if b != b2 {
                return Err(bad(format!("cannot compose {outer} after {inner}: {b2} vs {b}")));
            }
            (a, c)
        }
        ExplicitTerm::P(x) => (T::ProdS(x.clone()), T::Lifted(x.clone())),
        ExplicitTerm::Q(x) => (T::ProdS(x.clone()), T::State),
        ExplicitTerm::Tuple(a, b) => {
            let (sa, ta) = explicit_typecheck(th, a)?;
            let (sb, tb) = explicit_typecheck(th, b)?;
            match (ta, tb) {
                (T::Lifted(y), T::State) if sa == sb => (sa, T::ProdS(y)),
                _ => return Err(bad(format!("bad tuple {t}"))),
            }
        }
        ExplicitTerm::Pair(a, b) => {
            let (sa, ta) = explicit_typecheck(th, a)?;
            let (sb, tb) = explicit_typecheck(th, b)?;
            match (ta, tb) {
                (T::Lifted(y1), T::Lifted(y2)) if sa == sb => (sa, T::Lifted(Type::prod(y1, y2))),
                _ => return Err(bad(format!("bad pair {t}"))),
            }
        }
        ExplicitTerm::Final(e) => (e.clone(), T::Lifted(Type::Unit)),
        ExplicitTerm::Lookup1(l) => (T::State, T::Lifted(Type::Val(l.clone()))),
        ExplicitTerm::Update(l) => (T::ProdS(Type::Val(l.clone())), T::State),
        ExplicitTerm::StateTuple(fs) => {
            let mut src = None;
            for (f, leg) in fs.iter().zip(th.obs_legs()) {
                let (s, tgt) = explicit_typecheck(th, f)?;
                let want = th.signature(leg).map(|g| T::Lifted(g.target.clone()));
                if Some(&tgt) != want.as_ref() || src.as_ref().is_some_and(|s0| *s0 != s) {
                    return Err(bad(format!("bad state tuple {t}")));
                }
                src = Some(s);
            }
            if fs.len() != th.obs_legs().len() {
                return Err(bad(format!("bad state tuple {t}")));
            }
            (src.ok_or_else(|| bad("empty state tuple".into()))?, T::State)
        }
        ExplicitTerm::Pure(p) => {
            let (a, b) = typecheck(p, th)?;
            (T::Lifted(a), T::Lifted(b))
        }
        ExplicitTerm::Acc1(g) => {
            let sig = th.signature(g).ok_or_else(|| bad(format!("unknown generator {g}")))?;
            (T::ProdS(sig.source.clone()), T::Lifted(sig.target.clone()))
        }
        ExplicitTerm::Modi(g) => {
            let sig = th.signature(g).ok_or_else(|| bad(format!("unknown generator {g}")))?;
            (T::ProdS(sig.source.clone()), T::ProdS(sig.target.clone()))
        }
    })
}

struct Simplifier<'a> {
    th: &'a Theory,
    fuel: usize,
}

fn compose(factors: impl IntoIterator<Item = ExplicitTerm>) -> Option<ExplicitTerm> {
    let mut v: Vec<ExplicitTerm> = factors.into_iter().collect();
    let mut acc = v.pop()?;
    while let Some(outer) = v.pop() {
        acc = ExplicitTerm::comp(outer, acc);
    }
    Some(acc)
}

fn flatten(t: ExplicitTerm, out: &mut Vec<ExplicitTerm>) {
    match t {
        ExplicitTerm::Comp(a, b) => {
            flatten(*a, out);
            flatten(*b, out);
        }
        other => out.push(other),
    }
}

impl Simplifier<'_> {
    fn simp(&mut self, t: ExplicitTerm) -> ExplicitTerm {
        match t {
            ExplicitTerm::Comp(..) => {
                let ty = explicit_typecheck(self.th, &t).ok();
                let mut factors = Vec::new();
                flatten(t, &mut factors);
                let mut acc = VecDeque::new();
                for f in factors.into_iter().rev() {
                    let f = self.simp(f);
                    self.push(f, &mut acc);
                }
                compose(acc).unwrap_or_else(|| {
                    let (src, _) = ty.expect("composite of identities is typed");
                    ExplicitTerm::Id(src)
                })
            }
            ExplicitTerm::Tuple(a, b) => {
                let (a, b) = (self.simp(*a), self.simp(*b));
                match (&a, &b) {
                    (ExplicitTerm::P(x), ExplicitTerm::Q(y)) if x == y => ExplicitTerm::Id(ExplicitType::ProdS(x.clone())),
                    _ => ExplicitTerm::tuple(a, b),
                }
            }
            ExplicitTerm::Pair(a, b) => ExplicitTerm::pair(self.simp(*a), self.simp(*b)),
            ExplicitTerm::StateTuple(fs) => ExplicitTerm::StateTuple(fs.into_iter().map(|f| self.simp(f)).collect()),
            other => other,
        }
    }

    fn push_all(&mut self, t: ExplicitTerm, acc: &mut VecDeque<ExplicitTerm>) {
        let mut factors = Vec::new();
        flatten(t, &mut factors);
        for f in factors.into_iter().rev() {
            self.push(f, acc);
        }
    }

    /// Prepends `outer` to the factor list `acc` (outermost first), rewriting.
    fn push(&mut self, outer: ExplicitTerm, acc: &mut VecDeque<ExplicitTerm>) {
        use ExplicitTerm as E;
        if self.fuel == 0 {
            acc.push_front(outer);
            return;
        }
        self.fuel -= 1;
        if matches!(outer, E::Id(_)) {
            if acc.is_empty() {
                acc.push_front(outer);
            }
            return;
        }
        if let Some(E::Id(_)) = acc.front() {
            acc.pop_front();
        }
        let Some(front) = acc.front() else {
            acc.push_front(outer);
            return;
        };
        match (&outer, front) {
            (E::P(_), E::Tuple(..)) | (E::Q(_), E::Tuple(..)) => {
                let Some(E::Tuple(a, b)) = acc.pop_front() else { unreachable!() };
                let keep = if matches!(outer, E::P(_)) { *a } else { *b };
                self.push_all(keep, acc);
            }
            (E::Tuple(..) | E::Pair(..) | E::StateTuple(_), _) => {
                let rest = compose(acc.drain(..)).expect("non-empty");
                let through = |s: &mut Self, part: ExplicitTerm| s.simp(E::comp(part, rest.clone()));
                let distributed = match outer {
                    E::Tuple(a, b) => {
                        let (a, b) = (through(self, *a), through(self, *b));
                        self.simp(E::tuple(a, b))
                    }
                    E::Pair(a, b) => E::pair(through(self, *a), through(self, *b)),
                    E::StateTuple(fs) => E::StateTuple(fs.into_iter().map(|f| through(self, f)).collect()),
                    _ => unreachable!(),
                };
                acc.push_front(distributed);
            }
            (E::Final(_), _) => {
                let rest = compose(acc.drain(..)).expect("non-empty");
                match explicit_typecheck(self.th, &rest) {
                    Ok((src, _)) => acc.push_front(E::Final(src)),
                    Err(_) => {
                        acc.push_front(rest);
                        acc.push_front(outer);
                    }
                }
            }
            (E::Pure(f), E::Pure(g)) => {
                let merged = E::Pure(Term::comp(f.clone(), g.clone()));
                acc.pop_front();
                acc.push_front(merged);
            }
            _ => acc.push_front(outer),
        }
    }
}

/// Peephole simplification: projections of tuples, distribution of tuples
/// over composition, identities and merged pure parts. Sound for the set
/// interpretation; used for display only.
pub fn simplify(th: &Theory, t: &ExplicitTerm) -> ExplicitTerm {
    Simplifier { th, fuel: 10_000 }.simp(t.clone())
}

/// Conjugates by `1×S ≅ S` where a side starts or ends at `1×S`, then simplifies.
pub fn simplify_equation(th: &Theory, eq: &ExplicitEquation) -> ExplicitEquation {
    use ExplicitTerm as E;
    let unit_s = ExplicitType::ProdS(Type::Unit);
    let (mut source, mut target) = (eq.source.clone(), eq.target.clone());
    let conj = |t: &ExplicitTerm| {
        let mut t = t.clone();
        if eq.source == unit_s {
            t = E::comp(t, E::tuple(E::Final(ExplicitType::State), E::Id(ExplicitType::State)));
        }
        if eq.target == unit_s {
            t = E::comp(E::Q(Type::Unit), t);
        }
        simplify(th, &t)
    };
    let (lhs, rhs) = (conj(&eq.lhs), conj(&eq.rhs));
    if source == unit_s {
        source = ExplicitType::State;
    }
    if target == unit_s {
        target = ExplicitType::State;
    }
    ExplicitEquation { lhs, rhs, source, target }
}

impl fmt::Display for ExplicitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExplicitType::Lifted(t) => write!(f, "{t}"),
            ExplicitType::State => f.write_str("S"),
            ExplicitType::ProdS(t) => write!(f, "({t}*S)"),
        }
    }
}

impl fmt::Display for ExplicitTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExplicitTerm::Id(t) => write!(f, "id[{t}]"),
            ExplicitTerm::Comp(outer, inner) => {
                write!(f, "comp({outer}")?;
                let mut rest: &ExplicitTerm = inner;
                while let ExplicitTerm::Comp(o, i) = rest {
                    write!(f, ", {o}")?;
                    rest = i;
                }
                write!(f, ", {rest})")
            }
            ExplicitTerm::P(t) => write!(f, "p[{t}]"),
            ExplicitTerm::Q(t) => write!(f, "q[{t}]"),
            ExplicitTerm::Tuple(a, b) => write!(f, "tuple({a}, {b})"),
            ExplicitTerm::Pair(a, b) => write!(f, "pair({a}, {b})"),
            ExplicitTerm::Final(t) => write!(f, "final[{t}]"),
            ExplicitTerm::Lookup1(l) => write!(f, "l1[{l}]"),
            ExplicitTerm::Update(l) => write!(f, "u[{l}]"),
            ExplicitTerm::StateTuple(fs) => {
                f.write_str("stuple(")?;
                for (k, t) in fs.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str(")")
            }
            ExplicitTerm::Pure(t) => write!(f, "{t}"),
            ExplicitTerm::Acc1(g) => write!(f, "{g}1"),
            ExplicitTerm::Modi(g) => write!(f, "{g}"),
        }
    }
}

impl fmt::Display for ExplicitEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} == {} : {} -> {}", self.lhs, self.rhs, self.source, self.target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_equation, parse_term};
    use crate::theory::{bank_theory, state_theory};

    #[test]
    fn images_are_well_typed() {
        let th = state_theory(&["i", "j"]).unwrap();
        for src in [
            "l[i]",
            "u[j]",
            "comp(u[i], l[i])",
            "otuple(id[V[i]], comp(l[j], final[V[i]]))",
            "lsemi[V[j]](l[i])",
            "rsemi(u[i])[V[j]]",
            "comp(perm[V[i],V[j]], prod(id[V[i]], id[V[j]]))",
        ] {
            let t = parse_term(src).unwrap();
            let (x, y) = typecheck(&t, &th).unwrap();
            let e = expand_term(&th, &t).unwrap();
            assert_eq!(
                explicit_typecheck(&th, &e).unwrap(),
                (ExplicitType::ProdS(x), ExplicitType::ProdS(y)),
                "{src}"
            );
        }
    }

    #[test]
    fn identity_expands_to_identity() {
        let th = state_theory(&["i"]).unwrap();
        let e = expand_term(&th, &Term::Id(Type::val("i"))).unwrap();
        assert_eq!(e, ExplicitTerm::Id(ExplicitType::ProdS(Type::val("i"))));
    }

    #[test]
    fn annihilation_after_unit_collapse() {
        let th = state_theory(&["i", "j"]).unwrap();
        let eq = parse_equation("comp(u[i], l[i]) == id[unit]").unwrap();
        let s = simplify_equation(&th, &expand_equation(&th, &eq).unwrap());
        assert_eq!(s.to_string(), "comp(u[i], tuple(l1[i], id[S])) == id[S] : S -> S");
    }

    #[test]
    fn weak_update_lookup() {
        let th = state_theory(&["i", "j"]).unwrap();
        let eq = parse_equation("comp(l[i], u[i]) ~~ id[V[i]]").unwrap();
        let s = simplify_equation(&th, &expand_equation(&th, &eq).unwrap());
        assert_eq!(s.to_string(), "comp(l1[i], u[i]) == p[V[i]] : (V[i]*S) -> V[i]");
    }

    #[test]
    fn bank_generators() {
        let th = bank_theory();
        let t = parse_term("comp(deposit, seven)").unwrap();
        let e = expand_term(&th, &t).unwrap();
        assert!(e.to_string().contains("deposit"));
        assert!(explicit_typecheck(&th, &e).is_ok());
    }
}
