use std::fmt;
use std::str::FromStr;

use crate::term::{decoration_of, normalize, same, spine, typecheck, Arrow, Decoration, Term, Type};
use crate::theory::Theory;

use super::{Equation, Mode, Strength, Violation};

macro_rules! rule_ids {
    ($name:ident { $($variant:ident => $text:literal,)* }) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum $name { $($variant,)* }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self { $($name::$variant => $text,)* }
            }
        }

        impl FromStr for $name {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                match s {
                    $($text => Ok($name::$variant),)*
                    _ => Err(format!("unknown rule `{s}`")),
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

rule_ids!(RuleId {
    IdSrc => "id-src",
    IdTgt => "id-tgt",
    Assoc => "assoc",
    EqRefl => "eq-refl",
    EqSym => "eq-sym",
    EqTrans => "eq-trans",
    EqSubs => "eq-subs",
    EqRepl => "eq-repl",
    WRefl => "w-refl",
    WSym => "w-sym",
    WTrans => "w-trans",
    WSubs => "w-subs",
    WPureRepl => "w-pure-repl",
    AccWToS => "acc-w-to-s",
    SToW => "s-to-w",
    WFinalUnique => "w-final-unique",
    WTupleProj => "w-tuple-proj",
    STupleUnique => "s-tuple-unique",
    PureProj1 => "pure-proj-1",
    PureProj2 => "pure-proj-2",
    PureProdUnique => "pure-prod-unique",
    LeftProj1 => "left-proj-1",
    LeftProj2 => "left-proj-2",
    LeftProdUnique => "left-prod-unique",
    RightProj1 => "right-proj-1",
    RightProj2 => "right-proj-2",
    RightProdUnique => "right-prod-unique",
    LeftPureProd => "left-pure-prod",
    RightPureProd => "right-pure-prod",
    PermDef1 => "perm-def-1",
    PermDef2 => "perm-def-2",
    UnitProjIso1 => "unitproj-iso-1",
    UnitProjIso2 => "unitproj-iso-2",
    UnitProjIso3 => "unitproj-iso-3",
    UnitProjIso4 => "unitproj-iso-4",
    WProdUnique => "w-prod-unique",
    WEffToS => "w-eff-to-s",
});

rule_ids!(ApparentRule {
    Structural => "structural",
    Refl => "refl",
    Sym => "sym",
    Trans => "trans",
    Subs => "subs",
    Repl => "repl",
    Copy => "copy",
    FinalUnique => "final-unique",
    TupleProj => "tuple-proj",
    TupleUnique => "tuple-unique",
    ProdProj1 => "prod-proj-1",
    ProdProj2 => "prod-proj-2",
    ProdUnique => "prod-unique",
    LeftProj1 => "left-proj-1",
    LeftProj2 => "left-proj-2",
    LeftProdUnique => "left-prod-unique",
    RightProj1 => "right-proj-1",
    RightProj2 => "right-proj-2",
    RightProdUnique => "right-prod-unique",
    LeftPureProd => "left-pure-prod",
    RightPureProd => "right-pure-prod",
    PermDef1 => "perm-def-1",
    PermDef2 => "perm-def-2",
    UnitProjIso1 => "unitproj-iso-1",
    UnitProjIso2 => "unitproj-iso-2",
    UnitProjIso3 => "unitproj-iso-3",
    UnitProjIso4 => "unitproj-iso-4",
    PairUnique => "pair-unique",
    EffUnique => "eff-unique",
});

impl RuleId {
    /// Image of the rule once decorations are dropped.
    pub fn erased(self) -> ApparentRule {
        use ApparentRule as A;
        match self {
            RuleId::IdSrc | RuleId::IdTgt | RuleId::Assoc => A::Structural,
            RuleId::EqRefl | RuleId::WRefl => A::Refl,
            RuleId::EqSym | RuleId::WSym => A::Sym,
            RuleId::EqTrans | RuleId::WTrans => A::Trans,
            RuleId::EqSubs | RuleId::WSubs => A::Subs,
            RuleId::EqRepl | RuleId::WPureRepl => A::Repl,
            RuleId::AccWToS | RuleId::SToW => A::Copy,
            RuleId::WFinalUnique => A::FinalUnique,
            RuleId::WTupleProj => A::TupleProj,
            RuleId::STupleUnique => A::TupleUnique,
            RuleId::PureProj1 => A::ProdProj1,
            RuleId::PureProj2 => A::ProdProj2,
            RuleId::PureProdUnique => A::ProdUnique,
            RuleId::LeftProj1 => A::LeftProj1,
            RuleId::LeftProj2 => A::LeftProj2,
            RuleId::LeftProdUnique => A::LeftProdUnique,
            RuleId::RightProj1 => A::RightProj1,
            RuleId::RightProj2 => A::RightProj2,
            RuleId::RightProdUnique => A::RightProdUnique,
            RuleId::LeftPureProd => A::LeftPureProd,
            RuleId::RightPureProd => A::RightPureProd,
            RuleId::PermDef1 => A::PermDef1,
            RuleId::PermDef2 => A::PermDef2,
            RuleId::UnitProjIso1 => A::UnitProjIso1,
            RuleId::UnitProjIso2 => A::UnitProjIso2,
            RuleId::UnitProjIso3 => A::UnitProjIso3,
            RuleId::UnitProjIso4 => A::UnitProjIso4,
            RuleId::WProdUnique => A::PairUnique,
            RuleId::WEffToS => A::EffUnique,
        }
    }
}

impl ApparentRule {
    /// A decorated rule with the same shape; checked with decorations and
    /// strengths ignored it behaves as this plain rule.
    pub(crate) fn shape(self) -> RuleId {
        RuleId::ALL.iter().copied().find(|r| r.erased() == self).expect("every apparent rule has a preimage")
    }
}

pub(crate) struct RuleCtx<'a> {
    pub th: &'a Theory,
    pub mode: Mode,
}

impl RuleCtx<'_> {
    fn arrow(&self, t: &Term) -> Result<Arrow, Violation> {
        typecheck(t, self.th).map_err(|e| Violation::IllTyped(e.to_string()))
    }

    fn at_most(&self, rule: RuleId, t: &Term, required: Decoration) -> Result<(), Violation> {
        if self.mode == Mode::Apparent {
            return Ok(());
        }
        let actual = decoration_of(t, self.th).map_err(|e| Violation::IllDecorated(e.to_string()))?;
        if actual > required {
            return Err(Violation::DecorationViolation {
                rule: rule.to_string(),
                term: t.to_string(),
                required,
                actual,
            });
        }
        Ok(())
    }

    fn strength(&self, rule: RuleId, what: &str, eq: &Equation, expected: Strength) -> Result<(), Violation> {
        if self.mode == Mode::Decorated && eq.strength != expected {
            return Err(Violation::StrengthMismatch { rule: rule.to_string(), what: what.to_string(), expected });
        }
        Ok(())
    }
}

fn shape(rule: RuleId, expected: impl Into<String>) -> Violation {
    Violation::ShapeMismatch { rule: rule.to_string(), expected: expected.into() }
}

fn expect(rule: RuleId, eq: &Equation, lhs: Term, rhs: Term) -> Result<(), Violation> {
    if same(&eq.lhs, &lhs) && same(&eq.rhs, &rhs) {
        Ok(())
    } else {
        Err(shape(rule, format!("{} {} {}", normalize(&lhs), eq.strength, normalize(&rhs))))
    }
}

fn arity(rule: RuleId, premises: &[&Equation], n: usize) -> Result<(), Violation> {
    if premises.len() != n {
        return Err(Violation::PremiseCount { rule: rule.to_string(), expected: n, found: premises.len() });
    }
    Ok(())
}

fn comp(outer: &Term, inner: &Term) -> Term {
    Term::comp(outer.clone(), inner.clone())
}

/// Splits the spine of `whole` as `prefix ∘ part` when the spine of `part`
/// is a suffix, returning the prefix (or the identity on the target of `part`).
fn strip_suffix(ctx: &RuleCtx, whole: &Term, part: &Term) -> Option<Term> {
    let w = spine(whole);
    let p = spine(part);
    if p.len() > w.len() || w[w.len() - p.len()..] != p[..] {
        return None;
    }
    let rest = &w[..w.len() - p.len()];
    if rest.is_empty() {
        let (_, tgt) = ctx.arrow(part).ok()?;
        return Some(Term::Id(tgt));
    }
    Some(Term::comps(rest.iter().cloned()))
}

/// Splits `whole` as `part ∘ suffix`, returning the suffix.
fn strip_prefix(ctx: &RuleCtx, whole: &Term, part: &Term) -> Option<Term> {
    let w = spine(whole);
    let p = spine(part);
    if p.len() > w.len() || w[..p.len()] != p[..] {
        return None;
    }
    let rest = &w[p.len()..];
    if rest.is_empty() {
        let (src, _) = ctx.arrow(part).ok()?;
        return Some(Term::Id(src));
    }
    Some(Term::comps(rest.iter().cloned()))
}

/// The spine of `t` must be exactly two factors.
fn two_factors(t: &Term) -> Option<(Term, Term)> {
    let mut s = spine(t);
    if s.len() != 2 {
        return None;
    }
    let inner = s.pop()?;
    let outer = s.pop()?;
    Some((outer, inner))
}

fn single_factor(t: &Term) -> Option<Term> {
    let mut s = spine(t);
    if s.len() == 1 {
        s.pop()
    } else {
        None
    }
}

pub(crate) fn check_rule(
    ctx: &RuleCtx,
    rule: RuleId,
    concl: &Equation,
    premises: &[&Equation],
    sides: &[Term],
) -> Result<(), Violation> {
    use Strength::{Strong, Weak};
    let takes_side = matches!(rule, RuleId::EqSubs | RuleId::WSubs | RuleId::EqRepl | RuleId::WPureRepl);
    let max_sides = usize::from(takes_side);
    if sides.len() > max_sides {
        return Err(Violation::SideTermCount { rule: rule.to_string(), expected: max_sides, found: sides.len() });
    }
    for s in sides {
        ctx.arrow(s)?;
    }
    match rule {
        RuleId::IdSrc | RuleId::IdTgt | RuleId::Assoc | RuleId::EqRefl | RuleId::WRefl => {
            arity(rule, premises, 0)?;
            let st = if rule == RuleId::WRefl { Weak } else { Strong };
            ctx.strength(rule, "conclusion", concl, st)?;
            expect(rule, concl, concl.lhs.clone(), concl.lhs.clone())
        }
        RuleId::EqSym | RuleId::WSym => {
            arity(rule, premises, 1)?;
            let st = if rule == RuleId::WSym { Weak } else { Strong };
            ctx.strength(rule, "premise", premises[0], st)?;
            ctx.strength(rule, "conclusion", concl, st)?;
            expect(rule, concl, premises[0].rhs.clone(), premises[0].lhs.clone())
        }
        RuleId::EqTrans | RuleId::WTrans => {
            arity(rule, premises, 2)?;
            let st = if rule == RuleId::WTrans { Weak } else { Strong };
            let (p, q) = (premises[0], premises[1]);
            ctx.strength(rule, "first premise", p, st)?;
            ctx.strength(rule, "second premise", q, st)?;
            ctx.strength(rule, "conclusion", concl, st)?;
            if !same(&p.rhs, &q.lhs) {
                return Err(shape(rule, format!("second premise to start from {}", normalize(&p.rhs))));
            }
            expect(rule, concl, p.lhs.clone(), q.rhs.clone())
        }
        RuleId::EqSubs | RuleId::WSubs => {
            arity(rule, premises, 1)?;
            let st = if rule == RuleId::WSubs { Weak } else { Strong };
            let p = premises[0];
            ctx.strength(rule, "premise", p, st)?;
            ctx.strength(rule, "conclusion", concl, st)?;
            let f = match sides.first() {
                Some(f) => f.clone(),
                None => strip_prefix(ctx, &concl.lhs, &p.lhs)
                    .ok_or_else(|| shape(rule, format!("left side of the form {} ∘ f", normalize(&p.lhs))))?,
            };
            expect(rule, concl, comp(&p.lhs, &f), comp(&p.rhs, &f))
        }
        RuleId::EqRepl | RuleId::WPureRepl => {
            arity(rule, premises, 1)?;
            let st = if rule == RuleId::WPureRepl { Weak } else { Strong };
            let p = premises[0];
            ctx.strength(rule, "premise", p, st)?;
            ctx.strength(rule, "conclusion", concl, st)?;
            let g = match sides.first() {
                Some(g) => g.clone(),
                None => strip_suffix(ctx, &concl.lhs, &p.lhs)
                    .ok_or_else(|| shape(rule, format!("left side of the form g ∘ {}", normalize(&p.lhs))))?,
            };
            if rule == RuleId::WPureRepl {
                ctx.at_most(rule, &g, Decoration::Pure)?;
            }
            expect(rule, concl, comp(&g, &p.lhs), comp(&g, &p.rhs))
        }
        RuleId::AccWToS => {
            arity(rule, premises, 1)?;
            let p = premises[0];
            ctx.strength(rule, "premise", p, Weak)?;
            ctx.strength(rule, "conclusion", concl, Strong)?;
            ctx.at_most(rule, &p.lhs, Decoration::Accessor)?;
            ctx.at_most(rule, &p.rhs, Decoration::Accessor)?;
            expect(rule, concl, p.lhs.clone(), p.rhs.clone())
        }
        RuleId::SToW => {
            arity(rule, premises, 1)?;
            let p = premises[0];
            ctx.strength(rule, "premise", p, Strong)?;
            ctx.strength(rule, "conclusion", concl, Weak)?;
            expect(rule, concl, p.lhs.clone(), p.rhs.clone())
        }
        RuleId::WFinalUnique => {
            arity(rule, premises, 0)?;
            ctx.strength(rule, "conclusion", concl, Weak)?;
            let (src, tgt) = ctx.arrow(&concl.lhs)?;
            if tgt != Type::Unit {
                return Err(shape(rule, "a left side with target unit"));
            }
            expect(rule, concl, concl.lhs.clone(), Term::Final(src))
        }
        RuleId::WTupleProj => {
            arity(rule, premises, 0)?;
            ctx.strength(rule, "conclusion", concl, Weak)?;
            let bad = || shape(rule, "a left side l ∘ otuple(...) with l a cone leg");
            let (leg, tuple) = two_factors(&concl.lhs).ok_or_else(bad)?;
            let Term::ObsTuple(fs) = tuple else { return Err(bad()) };
            let k = ctx
                .th
                .obs_legs()
                .iter()
                .position(|g| leg == Term::Gen(g.clone()))
                .ok_or_else(bad)?;
            for f in &fs {
                ctx.at_most(rule, f, Decoration::Accessor)?;
            }
            let fk = fs.get(k).ok_or_else(bad)?;
            expect(rule, concl, concl.lhs.clone(), fk.clone())
        }
        RuleId::STupleUnique => {
            let legs = ctx.th.obs_legs();
            arity(rule, premises, legs.len())?;
            ctx.strength(rule, "conclusion", concl, Strong)?;
            let bad = || shape(rule, "a right side otuple(...)");
            let Some(Term::ObsTuple(fs)) = single_factor(&concl.rhs) else { return Err(bad()) };
            if fs.len() != legs.len() {
                return Err(bad());
            }
            let g = &concl.lhs;
            for (k, (leg, f)) in legs.iter().zip(&fs).enumerate() {
                ctx.at_most(rule, f, Decoration::Accessor)?;
                let p = premises[k];
                ctx.strength(rule, &format!("premise {}", k + 1), p, Weak)?;
                expect(rule, p, comp(&Term::Gen(leg.clone()), g), f.clone())?;
            }
            Ok(())
        }
        RuleId::PureProj1 | RuleId::PureProj2 => {
            arity(rule, premises, 0)?;
            ctx.strength(rule, "conclusion", concl, Strong)?;
            let first = rule == RuleId::PureProj1;
            let bad = || shape(rule, "a left side π ∘ prod(f1,f2)");
            let (proj, prod) = two_factors(&concl.lhs).ok_or_else(bad)?;
            let Term::PureProd(f1, f2) = prod else { return Err(bad()) };
            match (&proj, first) {
                (Term::Proj1(..), true) | (Term::Proj2(..), false) => {}
                _ => return Err(bad()),
            }
            ctx.at_most(rule, &f1, Decoration::Pure)?;
            ctx.at_most(rule, &f2, Decoration::Pure)?;
            let (x1, _) = ctx.arrow(&f1)?;
            let (x2, _) = ctx.arrow(&f2)?;
            let rhs = if first {
                comp(&f1, &Term::Proj1(x1, x2))
            } else {
                comp(&f2, &Term::Proj2(x1, x2))
            };
            expect(rule, concl, concl.lhs.clone(), rhs)
        }
        RuleId::PureProdUnique => {
            arity(rule, premises, 2)?;
            ctx.strength(rule, "conclusion", concl, Strong)?;
            let Some(Term::PureProd(f1, f2)) = single_factor(&concl.rhs) else {
                return Err(shape(rule, "a right side prod(f1,f2)"));
            };
            let g = &concl.lhs;
            ctx.at_most(rule, g, Decoration::Pure)?;
            let (x1, y1) = ctx.arrow(&f1)?;
            let (x2, y2) = ctx.arrow(&f2)?;
            ctx.strength(rule, "premise 1", premises[0], Strong)?;
            ctx.strength(rule, "premise 2", premises[1], Strong)?;
            expect(
                rule,
                premises[0],
                comp(&Term::Proj1(y1.clone(), y2.clone()), g),
                comp(&f1, &Term::Proj1(x1.clone(), x2.clone())),
            )?;
            expect(rule, premises[1], comp(&Term::Proj2(y1, y2), g), comp(&f2, &Term::Proj2(x1, x2)))
        }
        RuleId::LeftProj1 | RuleId::LeftProj2 => {
            arity(rule, premises, 0)?;
            let first = rule == RuleId::LeftProj1;
            ctx.strength(rule, "conclusion", concl, if first { Weak } else { Strong })?;
            let bad = || shape(rule, "a left side π ∘ lsemi[X](f)");
            let (proj, semi) = two_factors(&concl.lhs).ok_or_else(bad)?;
            let Term::LeftSemi(x, f) = semi else { return Err(bad()) };
            let (a, _) = ctx.arrow(&f)?;
            let rhs = match (&proj, first) {
                (Term::Proj1(..), true) => Term::Proj1(x, a),
                (Term::Proj2(..), false) => comp(&f, &Term::Proj2(x, a)),
                _ => return Err(bad()),
            };
            expect(rule, concl, concl.lhs.clone(), rhs)
        }
        RuleId::RightProj1 | RuleId::RightProj2 => {
            arity(rule, premises, 0)?;
            let first = rule == RuleId::RightProj1;
            ctx.strength(rule, "conclusion", concl, if first { Strong } else { Weak })?;
            let bad = || shape(rule, "a left side π ∘ rsemi(f)[X]");
            let (proj, semi) = two_factors(&concl.lhs).ok_or_else(bad)?;
            let Term::RightSemi(f, x) = semi else { return Err(bad()) };
            let (a, _) = ctx.arrow(&f)?;
            let rhs = match (&proj, first) {
                (Term::Proj1(..), true) => comp(&f, &Term::Proj1(a, x)),
                (Term::Proj2(..), false) => Term::Proj2(a, x),
                _ => return Err(bad()),
            };
            expect(rule, concl, concl.lhs.clone(), rhs)
        }
        RuleId::LeftProdUnique => {
            arity(rule, premises, 2)?;
            ctx.strength(rule, "conclusion", concl, Strong)?;
            let Some(Term::LeftSemi(x, f)) = single_factor(&concl.rhs) else {
                return Err(shape(rule, "a right side lsemi[X](f)"));
            };
            let g = &concl.lhs;
            let (a, b) = ctx.arrow(&f)?;
            ctx.strength(rule, "premise 1", premises[0], Weak)?;
            ctx.strength(rule, "premise 2", premises[1], Strong)?;
            expect(rule, premises[0], comp(&Term::Proj1(x.clone(), b.clone()), g), Term::Proj1(x.clone(), a.clone()))?;
            expect(rule, premises[1], comp(&Term::Proj2(x.clone(), b), g), comp(&f, &Term::Proj2(x, a)))
        }
        RuleId::RightProdUnique => {
            arity(rule, premises, 2)?;
            ctx.strength(rule, "conclusion", concl, Strong)?;
            let Some(Term::RightSemi(f, x)) = single_factor(&concl.rhs) else {
                return Err(shape(rule, "a right side rsemi(f)[X]"));
            };
            let g = &concl.lhs;
            let (a, b) = ctx.arrow(&f)?;
            ctx.strength(rule, "premise 1", premises[0], Strong)?;
            ctx.strength(rule, "premise 2", premises[1], Weak)?;
            expect(
                rule,
                premises[0],
                comp(&Term::Proj1(b.clone(), x.clone()), g),
                comp(&f, &Term::Proj1(a.clone(), x.clone())),
            )?;
            expect(rule, premises[1], comp(&Term::Proj2(b, x.clone()), g), Term::Proj2(a, x))
        }
        RuleId::LeftPureProd | RuleId::RightPureProd => {
            arity(rule, premises, 0)?;
            ctx.strength(rule, "conclusion", concl, Strong)?;
            let rhs = match (single_factor(&concl.lhs), rule) {
                (Some(Term::LeftSemi(x, f)), RuleId::LeftPureProd) => {
                    ctx.at_most(rule, &f, Decoration::Pure)?;
                    Term::PureProd(Box::new(Term::Id(x)), f)
                }
                (Some(Term::RightSemi(f, x)), RuleId::RightPureProd) => {
                    ctx.at_most(rule, &f, Decoration::Pure)?;
                    Term::PureProd(f, Box::new(Term::Id(x)))
                }
                _ => return Err(shape(rule, "a left side that is a single semi-pure product")),
            };
            expect(rule, concl, concl.lhs.clone(), rhs)
        }
        RuleId::PermDef1 | RuleId::PermDef2 => {
            arity(rule, premises, 0)?;
            ctx.strength(rule, "conclusion", concl, Strong)?;
            let bad = || shape(rule, "a left side π ∘ perm[A,B]");
            let (proj, perm) = two_factors(&concl.lhs).ok_or_else(bad)?;
            let Term::Perm(a, b) = perm else { return Err(bad()) };
            let rhs = match (&proj, rule) {
                (Term::Proj1(..), RuleId::PermDef1) => Term::Proj2(a, b),
                (Term::Proj2(..), RuleId::PermDef2) => Term::Proj1(a, b),
                _ => return Err(bad()),
            };
            expect(rule, concl, concl.lhs.clone(), rhs)
        }
        RuleId::UnitProjIso1 | RuleId::UnitProjIso2 | RuleId::UnitProjIso3 | RuleId::UnitProjIso4 => {
            arity(rule, premises, 0)?;
            ctx.strength(rule, "conclusion", concl, Strong)?;
            let bad = || shape(rule, "a projection composed with its inverse");
            let pair = two_factors(&concl.lhs).ok_or_else(bad)?;
            let rhs = match (pair, rule) {
                ((Term::Proj1(x, Type::Unit), Term::Proj1Inv(_)), RuleId::UnitProjIso1) => Term::Id(x),
                ((Term::Proj1Inv(x), Term::Proj1(_, Type::Unit)), RuleId::UnitProjIso2) => {
                    Term::Id(Type::prod(x, Type::Unit))
                }
                ((Term::Proj2(Type::Unit, x), Term::Proj2Inv(_)), RuleId::UnitProjIso3) => Term::Id(x),
                ((Term::Proj2Inv(x), Term::Proj2(Type::Unit, _)), RuleId::UnitProjIso4) => {
                    Term::Id(Type::prod(Type::Unit, x))
                }
                _ => return Err(bad()),
            };
            expect(rule, concl, concl.lhs.clone(), rhs)
        }
        RuleId::WProdUnique => {
            arity(rule, premises, 2)?;
            ctx.strength(rule, "conclusion", concl, Weak)?;
            let (_, tgt) = ctx.arrow(&concl.lhs)?;
            let Type::Prod(y1, y2) = tgt else {
                return Err(shape(rule, "sides with a product target"));
            };
            let p1 = Term::Proj1(*y1.clone(), *y2.clone());
            let p2 = Term::Proj2(*y1, *y2);
            ctx.strength(rule, "premise 1", premises[0], Weak)?;
            ctx.strength(rule, "premise 2", premises[1], Weak)?;
            expect(rule, premises[0], comp(&p1, &concl.lhs), comp(&p1, &concl.rhs))?;
            expect(rule, premises[1], comp(&p2, &concl.lhs), comp(&p2, &concl.rhs))
        }
        RuleId::WEffToS => {
            arity(rule, premises, 2)?;
            ctx.strength(rule, "conclusion", concl, Strong)?;
            let (_, tgt) = ctx.arrow(&concl.lhs)?;
            let fin = Term::Final(tgt);
            ctx.strength(rule, "premise 1", premises[0], Weak)?;
            ctx.strength(rule, "premise 2", premises[1], Strong)?;
            expect(rule, premises[0], concl.lhs.clone(), concl.rhs.clone())?;
            expect(rule, premises[1], comp(&fin, &concl.lhs), comp(&fin, &concl.rhs))
        }
    }
}
