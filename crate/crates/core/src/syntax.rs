//! Concrete syntax for types, terms, proof scripts and derived-rule files.
//!
//! ```text
//! type  ::= unit | V[loc] | (type*type) | ?X
//! term  ::= id[T] | l[loc] | u[loc] | final[T] | pi1[T,T] | pi2[T,T]
//!         | pi1inv[T] | pi2inv[T] | perm[T,T] | prod(t,t) | lsemi[T](t)
//!         | rsemi(t)[T] | otuple(t,...) | comp(t,t,...) | name | ?name
//! eq    ::= term == term | term ~~ term
//! ```
//!
//! A proof file is a header, a goal and numbered steps:
//!
//! ```text
//! proof name in state(i,j)
//! goal comp(l[i], u[i]) ~~ id[V[i]] : V[i] -> V[i]
//! 1. comp(l[i], u[i]) ~~ id[V[i]] by axiom A1(i)
//! ```
//!
//! `#` starts a comment.

use std::fmt;

use thiserror::Error;

use crate::kernel::apparent::{ApparentJustification, ApparentScript};
use crate::kernel::{DerivedRule, Equation, Justification, Param, ProofScript, RuleId, Step, Strength, TheoryRef};
use crate::term::{Arrow, Decoration, Generator, Loc, Term, Type};
use crate::theory::GenSig;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: expected {expected}, found {found}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
    pub found: String,
}

pub fn print_generator(g: &Generator) -> String {
    match g {
        Generator::Lookup(l) => format!("l[{l}]"),
        Generator::Update(l) => format!("u[{l}]"),
        Generator::Named(n) => n.clone(),
        Generator::Meta(m) => format!("?{m}"),
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Unit => f.write_str("unit"),
            Type::Val(l) => write!(f, "V[{l}]"),
            Type::Prod(a, b) => write!(f, "({a}*{b})"),
            Type::Var(v) => write!(f, "?{v}"),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_generator(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Id(t) => write!(f, "id[{t}]"),
            Term::Gen(g) => write!(f, "{g}"),
            Term::Comp(outer, inner) => {
                write!(f, "comp({outer}")?;
                let mut rest: &Term = inner;
                while let Term::Comp(o, i) = rest {
                    write!(f, ", {o}")?;
                    rest = i;
                }
                write!(f, ", {rest})")
            }
            Term::Final(t) => write!(f, "final[{t}]"),
            Term::ObsTuple(fs) => {
                f.write_str("otuple(")?;
                for (k, t) in fs.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str(")")
            }
            Term::Proj1(a, b) => write!(f, "pi1[{a},{b}]"),
            Term::Proj2(a, b) => write!(f, "pi2[{a},{b}]"),
            Term::Proj1Inv(t) => write!(f, "pi1inv[{t}]"),
            Term::Proj2Inv(t) => write!(f, "pi2inv[{t}]"),
            Term::PureProd(a, b) => write!(f, "prod({a}, {b})"),
            Term::LeftSemi(x, t) => write!(f, "lsemi[{x}]({t})"),
            Term::RightSemi(t, x) => write!(f, "rsemi({t})[{x}]"),
            Term::Perm(a, b) => write!(f, "perm[{a},{b}]"),
        }
    }
}

fn print_args(premises: &[usize], sides: &[Term]) -> String {
    if premises.is_empty() && sides.is_empty() {
        return String::new();
    }
    let ps: Vec<String> = premises.iter().map(|p| p.to_string()).collect();
    let mut out = format!("({}", ps.join(", "));
    if !sides.is_empty() {
        let ss: Vec<String> = sides.iter().map(|s| s.to_string()).collect();
        out.push_str("; ");
        out.push_str(&ss.join(", "));
    }
    out.push(')');
    out
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Rule { rule, premises, sides } => write!(f, "{rule}{}", print_args(premises, sides)),
            Justification::Axiom(id) => write!(f, "axiom {id}"),
            Justification::Lemma { name, premises, sides } => {
                let args = print_args(premises, sides);
                write!(f, "lemma {name}{}", if args.is_empty() { "()".to_string() } else { args })
            }
            Justification::Hyp(k) => write!(f, "hyp({k})"),
        }
    }
}

impl fmt::Display for ApparentJustification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ApparentJustification::Rule { rule, premises, sides } => write!(f, "{rule}{}", print_args(premises, sides)),
            ApparentJustification::Axiom(id) => write!(f, "axiom {id}"),
            ApparentJustification::Lemma { name, premises, sides } => {
                let args = print_args(premises, sides);
                write!(f, "lemma {name}{}", if args.is_empty() { "()".to_string() } else { args })
            }
            ApparentJustification::Hyp(k) => write!(f, "hyp({k})"),
        }
    }
}

/// Erased scripts print with `=` for the single equality of the plain logic.
impl fmt::Display for ApparentScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "proof {} in {}", self.name, self.theory.header())?;
        writeln!(f, "goal {} = {} : {} -> {}", self.lhs, self.rhs, self.arrow.0, self.arrow.1)?;
        for s in &self.steps {
            writeln!(f, "{}. {} = {} by {}", s.index, s.lhs, s.rhs, s.justification)?;
        }
        Ok(())
    }
}

fn print_steps(out: &mut String, steps: &[Step]) {
    for s in steps {
        out.push_str(&format!("{}. {} by {}\n", s.index, s.equation, s.justification));
    }
}

pub fn print_script(script: &ProofScript) -> String {
    let mut out = format!(
        "proof {} in {}\ngoal {} : {} -> {}\n",
        script.name,
        script.theory.header(),
        script.goal,
        script.goal_arrow.0,
        script.goal_arrow.1
    );
    print_steps(&mut out, &script.steps);
    out
}

pub fn print_rule(rule: &DerivedRule) -> String {
    let mut out = format!("rule {}\n", rule.id);
    for v in &rule.type_params {
        out.push_str(&format!("type ?{v}\n"));
    }
    for p in &rule.params {
        out.push_str(&format!("term ?{} : {} -> {} {}\n", p.name, p.sig.source, p.sig.target, p.sig.decoration.name()));
    }
    for h in &rule.hyps {
        out.push_str(&format!("hyp {h}\n"));
    }
    out.push_str(&format!("conclude {}", rule.conclusion));
    if let Some((a, b)) = &rule.arrow {
        out.push_str(&format!(" : {a} -> {b}"));
    }
    out.push('\n');
    print_steps(&mut out, &rule.template);
    out
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

const RESERVED: &[&str] = &[
    "id", "l", "u", "final", "pi1", "pi2", "pi1inv", "pi2inv", "perm", "prod", "lsemi", "rsemi", "otuple", "comp",
];

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.'
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        loop {
            let r = self.rest();
            let trimmed = r.trim_start();
            self.pos += r.len() - trimmed.len();
            if trimmed.starts_with('#') {
                let end = trimmed.find('\n').unwrap_or(trimmed.len());
                self.pos += end;
            } else {
                break;
            }
        }
    }

    fn error(&self, expected: impl Into<String>) -> SyntaxError {
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        let found = match self.rest().split_whitespace().next() {
            Some(tok) => format!("`{}`", tok.chars().take(24).collect::<String>()),
            None => "end of input".into(),
        };
        SyntaxError { line, column, expected: expected.into(), found }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    fn peek_is(&mut self, s: &str) -> bool {
        self.skip_ws();
        self.rest().starts_with(s)
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.peek_is(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), SyntaxError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(format!("`{s}`")))
        }
    }

    /// Identifier; a `-` directly followed by `>` ends it.
    fn peek_ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let r = self.rest();
        let mut end = 0;
        for (i, c) in r.char_indices() {
            if !is_ident_char(c) || (c == '-' && r[i + 1..].starts_with('>')) {
                break;
            }
            end = i + c.len_utf8();
        }
        if end == 0 {
            None
        } else {
            Some(&r[..end])
        }
    }

    fn ident(&mut self, what: &str) -> Result<&'a str, SyntaxError> {
        match self.peek_ident() {
            Some(id) => {
                self.pos += id.len();
                Ok(id)
            }
            None => Err(self.error(what)),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), SyntaxError> {
        if self.peek_ident() == Some(kw) {
            self.pos += kw.len();
            Ok(())
        } else {
            Err(self.error(format!("`{kw}`")))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.keyword(kw).is_ok()
    }

    fn number(&mut self) -> Result<usize, SyntaxError> {
        self.skip_ws();
        let digits: &str = &self.rest()[..self.rest().bytes().take_while(u8::is_ascii_digit).count()];
        if digits.is_empty() {
            return Err(self.error("a step number"));
        }
        let n = digits.parse().map_err(|_| self.error("a step number"))?;
        self.pos += digits.len();
        Ok(n)
    }

    fn loc(&mut self) -> Result<Loc, SyntaxError> {
        let name = self.ident("a location name")?;
        if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(self.error("a location name"));
        }
        Ok(Loc::new(name))
    }

    fn bracketed_loc(&mut self) -> Result<Loc, SyntaxError> {
        self.expect("[")?;
        let l = self.loc()?;
        self.expect("]")?;
        Ok(l)
    }

    fn ty(&mut self) -> Result<Type, SyntaxError> {
        if self.eat("?") {
            return Ok(Type::Var(self.ident("a type variable")?.to_string()));
        }
        if self.eat("(") {
            let a = self.ty()?;
            self.expect("*")?;
            let b = self.ty()?;
            self.expect(")")?;
            return Ok(Type::prod(a, b));
        }
        match self.peek_ident() {
            Some("unit") => {
                self.pos += 4;
                Ok(Type::Unit)
            }
            Some("V") => {
                self.pos += 1;
                Ok(Type::Val(self.bracketed_loc()?))
            }
            _ => Err(self.error("a type")),
        }
    }

    fn bracketed_type(&mut self) -> Result<Type, SyntaxError> {
        self.expect("[")?;
        let t = self.ty()?;
        self.expect("]")?;
        Ok(t)
    }

    fn bracketed_types(&mut self) -> Result<(Type, Type), SyntaxError> {
        self.expect("[")?;
        let a = self.ty()?;
        self.expect(",")?;
        let b = self.ty()?;
        self.expect("]")?;
        Ok((a, b))
    }

    fn term_list(&mut self) -> Result<Vec<Term>, SyntaxError> {
        self.expect("(")?;
        let mut out = vec![self.term()?];
        while self.eat(",") {
            out.push(self.term()?);
        }
        self.expect(")")?;
        Ok(out)
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        if self.eat("?") {
            return Ok(Term::meta(self.ident("a term variable")?));
        }
        let start = self.pos;
        let Some(name) = self.peek_ident() else { return Err(self.error("a term")) };
        self.pos += name.len();
        let t = match name {
            "id" => Term::Id(self.bracketed_type()?),
            "l" => Term::Gen(Generator::Lookup(self.bracketed_loc()?)),
            "u" => Term::Gen(Generator::Update(self.bracketed_loc()?)),
            "final" => Term::Final(self.bracketed_type()?),
            "pi1" => {
                let (a, b) = self.bracketed_types()?;
                Term::Proj1(a, b)
            }
            "pi2" => {
                let (a, b) = self.bracketed_types()?;
                Term::Proj2(a, b)
            }
            "perm" => {
                let (a, b) = self.bracketed_types()?;
                Term::Perm(a, b)
            }
            "pi1inv" => Term::Proj1Inv(self.bracketed_type()?),
            "pi2inv" => Term::Proj2Inv(self.bracketed_type()?),
            "prod" => {
                let args = self.term_list()?;
                let [a, b]: [Term; 2] = args.try_into().map_err(|_| self.error("two arguments to prod"))?;
                Term::pure_prod(a, b)
            }
            "lsemi" => {
                let x = self.bracketed_type()?;
                self.expect("(")?;
                let f = self.term()?;
                self.expect(")")?;
                Term::left_semi(x, f)
            }
            "rsemi" => {
                self.expect("(")?;
                let f = self.term()?;
                self.expect(")")?;
                Term::right_semi(f, self.bracketed_type()?)
            }
            "otuple" => Term::ObsTuple(self.term_list()?),
            "comp" => {
                let args = self.term_list()?;
                if args.len() < 2 {
                    return Err(self.error("at least two arguments to comp"));
                }
                Term::comps(args)
            }
            other if is_plain_name(other) => {
                Term::Gen(Generator::Named(other.to_string()))
            }
            _ => {
                self.pos = start;
                return Err(self.error("a term"));
            }
        };
        Ok(t)
    }

    fn strength(&mut self) -> Result<Strength, SyntaxError> {
        if self.eat("==") {
            Ok(Strength::Strong)
        } else if self.eat("~~") {
            Ok(Strength::Weak)
        } else {
            Err(self.error("`==` or `~~`"))
        }
    }

    fn equation(&mut self) -> Result<Equation, SyntaxError> {
        let lhs = self.term()?;
        let strength = self.strength()?;
        let rhs = self.term()?;
        Ok(Equation::new(lhs, rhs, strength))
    }

    fn arrow(&mut self) -> Result<Arrow, SyntaxError> {
        self.expect(":")?;
        let a = self.ty()?;
        self.expect("->")?;
        let b = self.ty()?;
        Ok((a, b))
    }

    fn args(&mut self) -> Result<(Vec<usize>, Vec<Term>), SyntaxError> {
        let mut premises = Vec::new();
        let mut sides = Vec::new();
        if !self.eat("(") {
            return Ok((premises, sides));
        }
        if self.eat(")") {
            return Ok((premises, sides));
        }
        if !self.peek_is(";") {
            premises.push(self.number()?);
            while self.eat(",") {
                premises.push(self.number()?);
            }
        }
        if self.eat(";") {
            sides.push(self.term()?);
            while self.eat(",") {
                sides.push(self.term()?);
            }
        }
        self.expect(")")?;
        Ok((premises, sides))
    }

    fn justification(&mut self) -> Result<Justification, SyntaxError> {
        let start = self.pos;
        let name = self.ident("a rule name, `axiom`, `lemma` or `hyp`")?;
        match name {
            "axiom" => {
                let mut id = self.ident("an axiom name")?.to_string();
                if self.eat("(") {
                    let close = self.rest().find(')').ok_or_else(|| self.error("`)`"))?;
                    let inner: String = self.rest()[..close].chars().filter(|c| !c.is_whitespace()).collect();
                    self.pos += close + 1;
                    id = format!("{id}({inner})");
                }
                Ok(Justification::Axiom(id))
            }
            "hyp" => {
                self.expect("(")?;
                let k = self.number()?;
                self.expect(")")?;
                Ok(Justification::Hyp(k))
            }
            "lemma" => {
                let name = self.ident("a lemma name")?.to_string();
                let (premises, sides) = self.args()?;
                Ok(Justification::Lemma { name, premises, sides })
            }
            _ => {
                let rule: RuleId = name.parse().map_err(|_| {
                    self.pos = start;
                    self.error("a rule name")
                })?;
                let (premises, sides) = self.args()?;
                Ok(Justification::Rule { rule, premises, sides })
            }
        }
    }

    fn steps(&mut self) -> Result<Vec<Step>, SyntaxError> {
        let mut steps = Vec::new();
        while !self.at_end() && self.rest().starts_with(|c: char| c.is_ascii_digit()) {
            let index = self.number()?;
            self.expect(".")?;
            let equation = self.equation()?;
            self.keyword("by")?;
            let justification = self.justification()?;
            steps.push(Step { index, equation, justification });
        }
        Ok(steps)
    }

    fn theory_ref(&mut self) -> Result<TheoryRef, SyntaxError> {
        if self.eat_keyword("bank") {
            return Ok(TheoryRef::Bank);
        }
        self.keyword("state")?;
        self.expect("(")?;
        let mut locs = vec![self.loc()?.0];
        while self.eat(",") {
            locs.push(self.loc()?.0);
        }
        self.expect(")")?;
        Ok(TheoryRef::State(locs))
    }

    fn finish(&mut self) -> Result<(), SyntaxError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    fn script(&mut self) -> Result<ProofScript, SyntaxError> {
        self.keyword("proof")?;
        let name = self.ident("a proof name")?.to_string();
        self.keyword("in")?;
        let theory = self.theory_ref()?;
        self.keyword("goal")?;
        let goal = self.equation()?;
        let goal_arrow = self.arrow()?;
        let steps = self.steps()?;
        Ok(ProofScript { name, theory, goal, goal_arrow, steps })
    }

    fn rule(&mut self) -> Result<DerivedRule, SyntaxError> {
        self.keyword("rule")?;
        let id = self.ident("a rule name")?.to_string();
        let mut type_params = Vec::new();
        while self.eat_keyword("type") {
            self.expect("?")?;
            type_params.push(self.ident("a type variable")?.to_string());
        }
        let mut params = Vec::new();
        while self.eat_keyword("term") {
            self.expect("?")?;
            let name = self.ident("a term variable")?.to_string();
            let (source, target) = self.arrow()?;
            let dec = self.ident("`pure`, `accessor` or `modifier`")?;
            let decoration = Decoration::from_name(dec).ok_or_else(|| self.error("`pure`, `accessor` or `modifier`"))?;
            params.push(Param { name, sig: GenSig::new(source, target, decoration) });
        }
        let mut hyps = Vec::new();
        while self.eat_keyword("hyp") {
            hyps.push(self.equation()?);
        }
        self.keyword("conclude")?;
        let conclusion = self.equation()?;
        let arrow = if self.peek_is(":") { Some(self.arrow()?) } else { None };
        let template = self.steps()?;
        Ok(DerivedRule { id, type_params, params, hyps, conclusion, arrow, template })
    }
}

pub fn parse_type(src: &str) -> Result<Type, SyntaxError> {
    let mut p = Parser::new(src);
    let t = p.ty()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_term(src: &str) -> Result<Term, SyntaxError> {
    let mut p = Parser::new(src);
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_equation(src: &str) -> Result<Equation, SyntaxError> {
    let mut p = Parser::new(src);
    let e = p.equation()?;
    p.finish()?;
    Ok(e)
}

/// Either `t` or `t1 == t2` / `t1 ~~ t2`.
pub fn parse_term_or_equation(src: &str) -> Result<Result<Term, Equation>, SyntaxError> {
    let mut p = Parser::new(src);
    let lhs = p.term()?;
    if p.at_end() {
        return Ok(Ok(lhs));
    }
    let strength = p.strength()?;
    let rhs = p.term()?;
    p.finish()?;
    Ok(Err(Equation::new(lhs, rhs, strength)))
}

pub fn parse_script(src: &str) -> Result<ProofScript, SyntaxError> {
    let mut p = Parser::new(src);
    let s = p.script()?;
    p.finish()?;
    Ok(s)
}

/// One or more `rule` blocks.
pub fn parse_rules(src: &str) -> Result<Vec<DerivedRule>, SyntaxError> {
    let mut p = Parser::new(src);
    let mut out = vec![p.rule()?];
    while !p.at_end() {
        out.push(p.rule()?);
    }
    Ok(out)
}

/// Whether `name` would be read back as a named generator.
pub fn is_plain_name(name: &str) -> bool {
    !name.is_empty()
        && !RESERVED.contains(&name)
        && !["unit", "V"].contains(&name)
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn types_round_trip() {
        for src in ["unit", "V[i]", "(V[i]*(unit*V[j]))", "?X"] {
            assert_eq!(parse_type(src).unwrap().to_string(), src);
        }
    }

    #[test]
    fn terms_round_trip() {
        for src in [
            "comp(l[i], u[i])",
            "comp(comp(l[i], u[j]), id[V[j]])",
            "otuple(l[i], comp(l[j], final[V[i]]))",
            "lsemi[V[j]](l[i])",
            "rsemi(u[i])[V[j]]",
            "prod(pi1[V[i],unit], final[V[j]])",
            "comp(perm[V[j],V[i]], pi1inv[V[j]], pi2inv[unit], ?f)",
            "comp(plus, prod(seven, id[V[acct]]))",
        ] {
            let t = parse_term(src).unwrap();
            assert_eq!(t.to_string(), src);
            assert_eq!(parse_term(&t.to_string()).unwrap(), t);
        }
    }

    #[test]
    fn comp_needs_two_arguments() {
        let err = parse_term("comp(l[i])").unwrap_err();
        assert_eq!((err.line, err.column), (1, 11));
        assert!(err.expected.contains("two"));
    }

    #[test]
    fn error_position_counts_lines() {
        let src = "proof p in state(i)\ngoal l[i] == l[i] : unit -> V[i]\n1. l[i] =! l[i] by eq-refl\n";
        let err = parse_script(src).unwrap_err();
        assert_eq!(err.line, 3);
        assert_eq!(err.column, 9);
    }

    #[test]
    fn script_round_trip() {
        let src = "\
proof t in state(i,j)   # comment
goal comp(l[j], u[i]) ~~ comp(l[j], final[V[i]]) : V[i] -> V[j]
1. comp(l[j], u[i]) ~~ comp(l[j], final[V[i]]) by axiom A2(j, i)
2. comp(l[j], final[V[i]]) ~~ comp(l[j], u[i]) by w-sym(1)
3. comp(l[i], l[j]) == comp(l[i], l[j]) by lemma E4acc(; l[i], ?f)
4. comp(l[i], l[j]) == comp(l[i], l[j]) by w-subs(1; id[unit])
";
        let s = parse_script(src).unwrap();
        assert_eq!(s.steps.len(), 4);
        assert_eq!(s.steps[0].justification, Justification::Axiom("A2(j,i)".into()));
        assert_eq!(parse_script(&print_script(&s)).unwrap(), s);
    }

    #[test]
    fn rule_round_trip() {
        let src = "\
rule E1acc
type ?X
term ?f : ?X -> unit accessor
conclude ?f == final[?X] : ?X -> unit
1. ?f ~~ final[?X] by w-final-unique
2. ?f == final[?X] by acc-w-to-s(1)
";
        let rules = parse_rules(src).unwrap();
        assert_eq!(rules.len(), 1);
        assert_eq!(rules[0].params[0].sig.decoration, Decoration::Accessor);
        assert_eq!(parse_rules(&print_rule(&rules[0])).unwrap(), rules);
    }

    #[test]
    fn arrow_after_identifier() {
        let mut p = Parser::new(": unit->V[i]");
        assert_eq!(p.arrow().unwrap(), (Type::Unit, Type::val("i")));
    }
}
