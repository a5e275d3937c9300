//! Types, decorated terms, typing, decoration inference and normalization
//! modulo associativity and identities.

use std::fmt;

use thiserror::Error;

use crate::theory::Theory;

/// A memory location identifier.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Loc(pub String);

impl Loc {
    pub fn new(name: impl Into<String>) -> Self {
        Loc(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An object of a theory.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Type {
    Unit,
    /// The value type `V_i` of a location.
    Val(Loc),
    Prod(Box<Type>, Box<Type>),
    /// Schematic type, only meaningful inside derived-rule templates.
    Var(String),
}

impl Type {
    pub fn val(loc: &str) -> Type {
        Type::Val(Loc::new(loc))
    }

    pub fn prod(l: Type, r: Type) -> Type {
        Type::Prod(Box::new(l), Box::new(r))
    }

    pub fn depth(&self) -> usize {
        match self {
            Type::Prod(l, r) => 1 + l.depth().max(r.depth()),
            _ => 0,
        }
    }

    pub(crate) fn collect_locs<'a>(&'a self, out: &mut Vec<&'a Loc>) {
        match self {
            Type::Val(l) => out.push(l),
            Type::Prod(l, r) => {
                l.collect_locs(out);
                r.collect_locs(out);
            }
            Type::Unit | Type::Var(_) => {}
        }
    }
}

/// Decoration levels: pure < accessor < modifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decoration {
    Pure = 0,
    Accessor = 1,
    Modifier = 2,
}

impl Decoration {
    pub fn level(self) -> u8 {
        self as u8
    }

    pub fn from_level(level: u8) -> Option<Decoration> {
        match level {
            0 => Some(Decoration::Pure),
            1 => Some(Decoration::Accessor),
            2 => Some(Decoration::Modifier),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Decoration::Pure => "pure",
            Decoration::Accessor => "accessor",
            Decoration::Modifier => "modifier",
        }
    }

    pub fn from_name(name: &str) -> Option<Decoration> {
        match name {
            "pure" => Some(Decoration::Pure),
            "accessor" => Some(Decoration::Accessor),
            "modifier" => Some(Decoration::Modifier),
            _ => None,
        }
    }
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.level())
    }
}

/// Generator symbols.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// `l_i : 1 -> V_i`
    Lookup(Loc),
    /// `u_i : V_i -> 1`
    Update(Loc),
    /// Any other declared operation (bank account operations, constants).
    Named(String),
    /// Schematic term variable of a derived-rule template.
    Meta(String),
}

/// Decorated terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Id(Type),
    Gen(Generator),
    /// `outer ∘ inner`
    Comp(Box<Term>, Box<Term>),
    /// `⟨⟩_X : X -> 1`
    Final(Type),
    /// Observational tuple into the unit vertex, one component per location.
    ObsTuple(Vec<Term>),
    Proj1(Type, Type),
    Proj2(Type, Type),
    /// Inverse of `π_1 : X×1 -> X`.
    Proj1Inv(Type),
    /// Inverse of `π_2 : 1×X -> X`.
    Proj2Inv(Type),
    PureProd(Box<Term>, Box<Term>),
    /// `id_X ⋉ f`
    LeftSemi(Type, Box<Term>),
    /// `f ⋊ id_X`
    RightSemi(Box<Term>, Type),
    Perm(Type, Type),
}

impl Term {
    pub fn lookup(loc: &str) -> Term {
        Term::Gen(Generator::Lookup(Loc::new(loc)))
    }

    pub fn update(loc: &str) -> Term {
        Term::Gen(Generator::Update(Loc::new(loc)))
    }

    pub fn named(name: &str) -> Term {
        Term::Gen(Generator::Named(name.to_string()))
    }

    pub fn meta(name: &str) -> Term {
        Term::Gen(Generator::Meta(name.to_string()))
    }

    pub fn comp(outer: Term, inner: Term) -> Term {
        Term::Comp(Box::new(outer), Box::new(inner))
    }

    /// Right-nested composition `ts[0] ∘ ts[1] ∘ ...`. Panics on an empty list.
    pub fn comps(ts: impl IntoIterator<Item = Term>) -> Term {
        let mut items: Vec<Term> = ts.into_iter().collect();
        let mut acc = items.pop().expect("comps of an empty list");
        while let Some(t) = items.pop() {
            acc = Term::comp(t, acc);
        }
        acc
    }

    pub fn pure_prod(f: Term, g: Term) -> Term {
        Term::PureProd(Box::new(f), Box::new(g))
    }

    pub fn left_semi(fixed: Type, f: Term) -> Term {
        Term::LeftSemi(fixed, Box::new(f))
    }

    pub fn right_semi(f: Term, fixed: Type) -> Term {
        Term::RightSemi(Box::new(f), fixed)
    }

    /// Number of AST nodes (types are not counted).
    pub fn size(&self) -> usize {
        match self {
            Term::Comp(a, b) | Term::PureProd(a, b) => 1 + a.size() + b.size(),
            Term::ObsTuple(fs) => 1 + fs.iter().map(Term::size).sum::<usize>(),
            Term::LeftSemi(_, f) | Term::RightSemi(f, _) => 1 + f.size(),
            _ => 1,
        }
    }

    /// Visit every generator occurring in the term.
    pub fn for_each_generator<'a>(&'a self, visit: &mut impl FnMut(&'a Generator)) {
        match self {
            Term::Gen(g) => visit(g),
            Term::Comp(a, b) | Term::PureProd(a, b) => {
                a.for_each_generator(visit);
                b.for_each_generator(visit);
            }
            Term::ObsTuple(fs) => fs.iter().for_each(|f| f.for_each_generator(visit)),
            Term::LeftSemi(_, f) | Term::RightSemi(f, _) => f.for_each_generator(visit),
            _ => {}
        }
    }

    pub fn contains_obs_tuple(&self) -> bool {
        match self {
            Term::ObsTuple(_) => true,
            Term::Comp(a, b) | Term::PureProd(a, b) => a.contains_obs_tuple() || b.contains_obs_tuple(),
            Term::LeftSemi(_, f) | Term::RightSemi(f, _) => f.contains_obs_tuple(),
            _ => false,
        }
    }

    /// Locations mentioned anywhere in the term, its types included.
    pub fn mentioned_locs(&self) -> Vec<Loc> {
        let mut out: Vec<&Loc> = Vec::new();
        self.collect_locs(&mut out);
        let mut locs: Vec<Loc> = out.into_iter().cloned().collect();
        locs.sort();
        locs.dedup();
        locs
    }

    fn collect_locs<'a>(&'a self, out: &mut Vec<&'a Loc>) {
        match self {
            Term::Id(t) | Term::Final(t) | Term::Proj1Inv(t) | Term::Proj2Inv(t) => t.collect_locs(out),
            Term::Gen(Generator::Lookup(l)) | Term::Gen(Generator::Update(l)) => out.push(l),
            Term::Gen(_) => {}
            Term::Comp(a, b) | Term::PureProd(a, b) => {
                a.collect_locs(out);
                b.collect_locs(out);
            }
            Term::ObsTuple(fs) => fs.iter().for_each(|f| f.collect_locs(out)),
            Term::Proj1(a, b) | Term::Proj2(a, b) | Term::Perm(a, b) => {
                a.collect_locs(out);
                b.collect_locs(out);
            }
            Term::LeftSemi(t, f) | Term::RightSemi(f, t) => {
                t.collect_locs(out);
                f.collect_locs(out);
            }
        }
    }
}

/// Position of a subterm: child indices from the root.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TermPath(pub Vec<usize>);

impl TermPath {
    fn child(&self, i: usize) -> TermPath {
        let mut p = self.0.clone();
        p.push(i);
        TermPath(p)
    }
}

impl fmt::Display for TermPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("/");
        }
        for i in &self.0 {
            write!(f, "/{i}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("type mismatch at {path}: expected {expected}, found {found}")]
    Mismatch { path: TermPath, expected: Type, found: Type },
    #[error("observational tuple at {path} has {found} components, expected {expected}")]
    TupleArity { path: TermPath, expected: usize, found: usize },
    #[error("undeclared location `{0}`")]
    UnknownLocation(Loc),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecorationError {
    #[error("pure product at {path} has a non-pure component")]
    ImpureProduct { path: TermPath },
    #[error("observational tuple component {index} at {path} is a modifier")]
    ModifierInTuple { path: TermPath, index: usize },
    #[error(transparent)]
    Type(#[from] TypeError),
}

/// The arrow `source -> target` of a well-typed term.
pub type Arrow = (Type, Type);

/// Computes source and target of `t` in theory `th`.
pub fn typecheck(t: &Term, th: &Theory) -> Result<Arrow, TypeError> {
    typecheck_at(t, th, &TermPath::default())
}

fn check_type(ty: &Type, th: &Theory) -> Result<(), TypeError> {
    let mut locs = Vec::new();
    ty.collect_locs(&mut locs);
    match locs.into_iter().find(|l| !th.has_location(l)) {
        Some(l) => Err(TypeError::UnknownLocation(l.clone())),
        None => Ok(()),
    }
}

fn expect(path: &TermPath, expected: &Type, found: &Type) -> Result<(), TypeError> {
    if expected == found {
        Ok(())
    } else {
        Err(TypeError::Mismatch {
            path: path.clone(),
            expected: expected.clone(),
            found: found.clone(),
        })
    }
}

fn typecheck_at(t: &Term, th: &Theory, path: &TermPath) -> Result<Arrow, TypeError> {
    use Type::*;
    match t {
        Term::Id(x) => {
            check_type(x, th)?;
            Ok((x.clone(), x.clone()))
        }
        Term::Gen(g) => th
            .signature(g)
            .map(|sig| (sig.source.clone(), sig.target.clone()))
            .ok_or_else(|| TypeError::UnknownGenerator(crate::syntax::print_generator(g))),
        Term::Comp(outer, inner) => {
            let (a, b) = typecheck_at(inner, th, &path.child(1))?;
            let (b2, c) = typecheck_at(outer, th, &path.child(0))?;
            expect(&path.child(0), &b, &b2)?;
            Ok((a, c))
        }
        Term::Final(x) => {
            check_type(x, th)?;
            Ok((x.clone(), Unit))
        }
        Term::ObsTuple(fs) => {
            let legs = th.obs_legs();
            if fs.len() != legs.len() || fs.is_empty() {
                return Err(TypeError::TupleArity {
                    path: path.clone(),
                    expected: legs.len(),
                    found: fs.len(),
                });
            }
            let mut source: Option<Type> = None;
            for (k, (f, leg)) in fs.iter().zip(legs).enumerate() {
                let p = path.child(k);
                let (x, y) = typecheck_at(f, th, &p)?;
                let leg_target = th.signature(leg).map(|s| s.target.clone()).unwrap_or(Unit);
                expect(&p, &leg_target, &y)?;
                match &source {
                    Some(s) => expect(&p, s, &x)?,
                    None => source = Some(x),
                }
            }
            Ok((source.unwrap_or(Unit), Unit))
        }
        Term::Proj1(l, r) => {
            check_type(l, th)?;
            check_type(r, th)?;
            Ok((Type::prod(l.clone(), r.clone()), l.clone()))
        }
        Term::Proj2(l, r) => {
            check_type(l, th)?;
            check_type(r, th)?;
            Ok((Type::prod(l.clone(), r.clone()), r.clone()))
        }
        Term::Proj1Inv(x) => {
            check_type(x, th)?;
            Ok((x.clone(), Type::prod(x.clone(), Unit)))
        }
        Term::Proj2Inv(x) => {
            check_type(x, th)?;
            Ok((x.clone(), Type::prod(Unit, x.clone())))
        }
        Term::PureProd(f, g) => {
            let (a, b) = typecheck_at(f, th, &path.child(0))?;
            let (c, d) = typecheck_at(g, th, &path.child(1))?;
            Ok((Type::prod(a, c), Type::prod(b, d)))
        }
        Term::LeftSemi(x, f) => {
            check_type(x, th)?;
            let (a, b) = typecheck_at(f, th, &path.child(0))?;
            Ok((Type::prod(x.clone(), a), Type::prod(x.clone(), b)))
        }
        Term::RightSemi(f, x) => {
            check_type(x, th)?;
            let (a, b) = typecheck_at(f, th, &path.child(0))?;
            Ok((Type::prod(a, x.clone()), Type::prod(b, x.clone())))
        }
        Term::Perm(l, r) => {
            check_type(l, th)?;
            check_type(r, th)?;
            Ok((Type::prod(l.clone(), r.clone()), Type::prod(r.clone(), l.clone())))
        }
    }
}

/// Least derivable decoration of a well-typed term.
///
/// Semi-pure products carry the decoration of their inner term: over a pure
/// term they coincide with the pure product, over an accessor they only read.
pub fn decoration_of(t: &Term, th: &Theory) -> Result<Decoration, DecorationError> {
    decoration_at(t, th, &TermPath::default())
}

fn decoration_at(t: &Term, th: &Theory, path: &TermPath) -> Result<Decoration, DecorationError> {
    Ok(match t {
        Term::Id(_)
        | Term::Final(_)
        | Term::Proj1(..)
        | Term::Proj2(..)
        | Term::Proj1Inv(_)
        | Term::Proj2Inv(_)
        | Term::Perm(..) => Decoration::Pure,
        Term::Gen(g) => {
            th.signature(g)
                .ok_or_else(|| TypeError::UnknownGenerator(crate::syntax::print_generator(g)))?
                .decoration
        }
        Term::Comp(a, b) => decoration_at(a, th, &path.child(0))?.max(decoration_at(b, th, &path.child(1))?),
        Term::PureProd(a, b) => {
            let da = decoration_at(a, th, &path.child(0))?;
            let db = decoration_at(b, th, &path.child(1))?;
            if da != Decoration::Pure || db != Decoration::Pure {
                return Err(DecorationError::ImpureProduct { path: path.clone() });
            }
            Decoration::Pure
        }
        Term::LeftSemi(_, f) | Term::RightSemi(f, _) => decoration_at(f, th, &path.child(0))?,
        Term::ObsTuple(fs) => {
            for (k, f) in fs.iter().enumerate() {
                if decoration_at(f, th, &path.child(k))? == Decoration::Modifier {
                    return Err(DecorationError::ModifierInTuple {
                        path: path.clone(),
                        index: k,
                    });
                }
            }
            Decoration::Modifier
        }
    })
}

/// Canonical form modulo `(id-src)`, `(id-tgt)` and `(assoc)`: compositions
/// become a right-nested spine with identities dropped, recursively.
pub fn normalize(t: &Term) -> Term {
    let mut factors = Vec::new();
    let mut last_id = None;
    flatten(t, &mut factors, &mut last_id);
    match factors.len() {
        0 => last_id.expect("a composition without factors consists of identities"),
        _ => Term::comps(factors),
    }
}

fn flatten(t: &Term, out: &mut Vec<Term>, last_id: &mut Option<Term>) {
    match t {
        Term::Comp(a, b) => {
            flatten(a, out, last_id);
            flatten(b, out, last_id);
        }
        Term::Id(_) => *last_id = Some(t.clone()),
        other => out.push(normalize_factor(other)),
    }
}

fn normalize_factor(t: &Term) -> Term {
    match t {
        Term::ObsTuple(fs) => Term::ObsTuple(fs.iter().map(normalize).collect()),
        Term::PureProd(a, b) => Term::pure_prod(normalize(a), normalize(b)),
        Term::LeftSemi(x, f) => Term::left_semi(x.clone(), normalize(f)),
        Term::RightSemi(f, x) => Term::right_semi(normalize(f), x.clone()),
        other => other.clone(),
    }
}

/// Factors of the normalized spine, outermost first. Identities yield `[]`.
pub fn spine(t: &Term) -> Vec<Term> {
    let mut factors = Vec::new();
    let mut last_id = None;
    flatten(t, &mut factors, &mut last_id);
    factors
}

/// Equality modulo normalization.
pub fn same(a: &Term, b: &Term) -> bool {
    normalize(a) == normalize(b)
}

/// Substitutes generators and type variables.
pub fn substitute(t: &Term, terms: &dyn Fn(&Generator) -> Option<Term>, types: &dyn Fn(&str) -> Option<Type>) -> Term {
    let sub = |u: &Term| substitute(u, terms, types);
    let ty = |x: &Type| substitute_type(x, types);
    match t {
        Term::Id(x) => Term::Id(ty(x)),
        Term::Gen(g) => terms(g).unwrap_or_else(|| t.clone()),
        Term::Comp(a, b) => Term::comp(sub(a), sub(b)),
        Term::Final(x) => Term::Final(ty(x)),
        Term::ObsTuple(fs) => Term::ObsTuple(fs.iter().map(sub).collect()),
        Term::Proj1(a, b) => Term::Proj1(ty(a), ty(b)),
        Term::Proj2(a, b) => Term::Proj2(ty(a), ty(b)),
        Term::Proj1Inv(x) => Term::Proj1Inv(ty(x)),
        Term::Proj2Inv(x) => Term::Proj2Inv(ty(x)),
        Term::PureProd(a, b) => Term::pure_prod(sub(a), sub(b)),
        Term::LeftSemi(x, f) => Term::left_semi(ty(x), sub(f)),
        Term::RightSemi(f, x) => Term::right_semi(sub(f), ty(x)),
        Term::Perm(a, b) => Term::Perm(ty(a), ty(b)),
    }
}

pub fn substitute_type(t: &Type, types: &dyn Fn(&str) -> Option<Type>) -> Type {
    match t {
        Type::Var(v) => types(v).unwrap_or_else(|| t.clone()),
        Type::Prod(a, b) => Type::prod(substitute_type(a, types), substitute_type(b, types)),
        other => other.clone(),
    }
}

/// First-order matching of a type pattern (with variables) against a type.
pub fn match_type(pattern: &Type, ty: &Type, bindings: &mut Vec<(String, Type)>) -> bool {
    match (pattern, ty) {
        (Type::Var(v), _) => match bindings.iter().find(|(name, _)| name == v) {
            Some((_, bound)) => bound == ty,
            None => {
                bindings.push((v.clone(), ty.clone()));
                true
            }
        },
        (Type::Prod(a, b), Type::Prod(c, d)) => match_type(a, c, bindings) && match_type(b, d, bindings),
        _ => pattern == ty,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::{state_theory, Theory};

    fn th() -> Theory {
        state_theory(&["i", "j"]).unwrap()
    }

    #[test]
    fn lookup_and_update_arrows() {
        let th = th();
        assert_eq!(typecheck(&Term::lookup("i"), &th).unwrap(), (Type::Unit, Type::val("i")));
        assert_eq!(typecheck(&Term::update("j"), &th).unwrap(), (Type::val("j"), Type::Unit));
        assert_eq!(typecheck(&Term::Id(Type::Unit), &th).unwrap(), (Type::Unit, Type::Unit));
    }

    #[test]
    fn ill_typed_composition() {
        let th = th();
        let t = Term::comp(Term::update("i"), Term::lookup("j"));
        match typecheck(&t, &th) {
            Err(TypeError::Mismatch { path, expected, found }) => {
                assert_eq!(path, TermPath(vec![0]));
                assert_eq!(expected, Type::val("j"));
                assert_eq!(found, Type::val("i"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            typecheck(&Term::lookup("z"), &th),
            Err(TypeError::UnknownGenerator(_))
        ));
    }

    #[test]
    fn decorations() {
        let th = th();
        assert_eq!(decoration_of(&Term::lookup("i"), &th).unwrap(), Decoration::Accessor);
        assert_eq!(decoration_of(&Term::Id(Type::val("i")), &th).unwrap(), Decoration::Pure);
        let ul = Term::comp(Term::update("i"), Term::lookup("i"));
        assert_eq!(decoration_of(&ul, &th).unwrap(), Decoration::Modifier);
        let bad = Term::pure_prod(Term::lookup("i"), Term::Id(Type::Unit));
        assert!(matches!(decoration_of(&bad, &th), Err(DecorationError::ImpureProduct { .. })));
        let semi = Term::left_semi(Type::val("i"), Term::lookup("j"));
        assert_eq!(decoration_of(&semi, &th).unwrap(), Decoration::Accessor);
        let tuple = Term::ObsTuple(vec![Term::lookup("i"), Term::lookup("j")]);
        assert_eq!(decoration_of(&tuple, &th).unwrap(), Decoration::Modifier);
    }

    #[test]
    fn normalize_identities_and_assoc() {
        let f = Term::lookup("i");
        let g = Term::update("i");
        let h = Term::lookup("i");
        assert_eq!(normalize(&Term::comp(f.clone(), Term::Id(Type::Unit))), f);
        let left = Term::comp(Term::comp(h.clone(), g.clone()), f.clone());
        assert_eq!(normalize(&left), Term::comp(h, Term::comp(g, f)));
        let id = Term::Id(Type::val("i"));
        assert_eq!(normalize(&id), id);
        assert_eq!(normalize(&Term::comp(id.clone(), id.clone())), id);
    }

    #[test]
    fn normalize_recurses_into_products() {
        let inner = Term::comp(Term::Id(Type::Unit), Term::lookup("j"));
        let t = Term::left_semi(Type::val("i"), inner);
        assert_eq!(normalize(&t), Term::left_semi(Type::val("i"), Term::lookup("j")));
    }

    #[test]
    fn type_matching_binds_consistently() {
        let pat = Type::prod(Type::Var("X".into()), Type::Var("X".into()));
        let mut b = Vec::new();
        assert!(match_type(&pat, &Type::prod(Type::Unit, Type::Unit), &mut b));
        let mut b = Vec::new();
        assert!(!match_type(&pat, &Type::prod(Type::Unit, Type::val("i")), &mut b));
    }
}
