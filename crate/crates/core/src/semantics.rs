//! Finite set models and brute-force evaluation.
//!
//! Location `i` with size `n` has carrier `{0, .., n-1}`. A state is the tuple
//! of per-location values in declared order. Enumeration is lexicographic
//! with the first location varying slowest, so counterexamples are stable.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::kernel::{Equation, Strength};
use crate::term::{typecheck, Generator, Loc, Term, Type};
use crate::theory::{Theory, TheoryKind, BANK_CONSTANTS, BANK_LOCATION};
use crate::translate::{ExplicitTerm, ExplicitType};

pub const DEFAULT_CAP: u64 = 1_000_000;
pub const DEFAULT_BANK_MODULUS: u32 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Unit,
    Atom(u32),
    Pair(Box<Value>, Box<Value>),
}

impl Value {
    pub fn pair(a: Value, b: Value) -> Value {
        Value::Pair(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Unit => f.write_str("()"),
            Value::Atom(a) => write!(f, "{a}"),
            Value::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

pub type State = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("value {found} does not belong to {expected}")]
    CarrierMismatch { expected: String, found: String },
    #[error("location `{0}` is not part of the model")]
    UnknownLocation(Loc),
    #[error("generator `{0}` has no interpretation in this model")]
    Uninterpreted(String),
    #[error("enumeration of {size} inputs exceeds the cap of {cap}")]
    EnumerationTooLarge { size: u64, cap: u64 },
    #[error("location `{0}` has an empty carrier")]
    EmptyCarrier(Loc),
    #[error("model has locations {model}, observational tuples need exactly {theory}")]
    ConeMismatch { model: String, theory: String },
    #[error("ill-typed: {0}")]
    IllTyped(String),
    #[error("bad model description `{0}`")]
    BadModel(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Interpretation {
    Canonical,
    Bank,
    /// `u_writer` also writes its argument, reduced modulo the carrier size, into `victim`.
    Corrupted { writer: usize, victim: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModel {
    locations: Vec<(Loc, u32)>,
    interpretation: Interpretation,
}

impl FiniteModel {
    /// The canonical model: `l_i` reads the `i` component, `u_i` overwrites it.
    pub fn canonical<S: AsRef<str>>(sizes: &[(S, u32)]) -> Result<Self, SemanticsError> {
        let mut locations = Vec::with_capacity(sizes.len());
        for (name, n) in sizes {
            let loc = Loc::new(name.as_ref());
            if *n == 0 {
                return Err(SemanticsError::EmptyCarrier(loc));
            }
            if locations.iter().any(|(l, _)| *l == loc) {
                return Err(SemanticsError::BadModel(format!("location `{loc}` listed twice")));
            }
            locations.push((loc, *n));
        }
        if locations.is_empty() {
            return Err(SemanticsError::BadModel("no locations".into()));
        }
        Ok(FiniteModel { locations, interpretation: Interpretation::Canonical })
    }

    /// Bank account whose balance is an integer modulo `modulus`.
    pub fn bank(modulus: u32) -> Result<Self, SemanticsError> {
        let mut m = FiniteModel::canonical(&[(BANK_LOCATION, modulus)])?;
        m.interpretation = Interpretation::Bank;
        Ok(m)
    }

    /// Mutation fixture in which `u_writer` also clobbers `victim`.
    #[doc(hidden)]
    pub fn corrupted<S: AsRef<str>>(sizes: &[(S, u32)], writer: &str, victim: &str) -> Result<Self, SemanticsError> {
        let mut m = FiniteModel::canonical(sizes)?;
        let w = m.index_of(&Loc::new(writer))?;
        let v = m.index_of(&Loc::new(victim))?;
        m.interpretation = Interpretation::Corrupted { writer: w, victim: v };
        Ok(m)
    }

    /// Parses `i:2,j:3`.
    pub fn parse(text: &str) -> Result<Self, SemanticsError> {
        let mut sizes = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, n) = part.split_once(':').ok_or_else(|| SemanticsError::BadModel(text.to_string()))?;
            let n: u32 = n.trim().parse().map_err(|_| SemanticsError::BadModel(text.to_string()))?;
            sizes.push((name.trim().to_string(), n));
        }
        FiniteModel::canonical(&sizes)
    }

    pub fn locations(&self) -> impl Iterator<Item = &Loc> {
        self.locations.iter().map(|(l, _)| l)
    }

    pub fn sizes(&self) -> Vec<u32> {
        self.locations.iter().map(|(_, n)| *n).collect()
    }

    pub fn has_location(&self, loc: &Loc) -> bool {
        self.locations.iter().any(|(l, _)| l == loc)
    }

    fn index_of(&self, loc: &Loc) -> Result<usize, SemanticsError> {
        self.locations
            .iter()
            .position(|(l, _)| l == loc)
            .ok_or_else(|| SemanticsError::UnknownLocation(loc.clone()))
    }

    fn size_of(&self, loc: &Loc) -> Result<u32, SemanticsError> {
        Ok(self.locations[self.index_of(loc)?].1)
    }

    pub fn state_count(&self) -> u64 {
        self.locations.iter().fold(1u64, |acc, (_, n)| acc.saturating_mul(u64::from(*n)))
    }

    /// All states, first location varying slowest.
    pub fn states(&self) -> Vec<State> {
        let mut out = vec![vec![]];
        for (_, n) in &self.locations {
            out = out.into_iter().flat_map(|s| (0..*n).map(move |v| [s.clone(), vec![v]].concat())).collect();
        }
        out
    }

    pub fn type_size(&self, t: &Type) -> Result<u64, SemanticsError> {
        match t {
            Type::Unit => Ok(1),
            Type::Val(l) => Ok(u64::from(self.size_of(l)?)),
            Type::Prod(a, b) => Ok(self.type_size(a)?.saturating_mul(self.type_size(b)?)),
            Type::Var(v) => Err(SemanticsError::IllTyped(format!("type variable ?{v}"))),
        }
    }

    /// All values of `t`, left component varying slowest.
    pub fn values(&self, t: &Type) -> Result<Vec<Value>, SemanticsError> {
        match t {
            Type::Unit => Ok(vec![Value::Unit]),
            Type::Val(l) => Ok((0..self.size_of(l)?).map(Value::Atom).collect()),
            Type::Prod(a, b) => {
                let (va, vb) = (self.values(a)?, self.values(b)?);
                Ok(va.iter().flat_map(|x| vb.iter().map(move |y| Value::pair(x.clone(), y.clone()))).collect())
            }
            Type::Var(v) => Err(SemanticsError::IllTyped(format!("type variable ?{v}"))),
        }
    }

    /// `l_{i,1}`
    pub fn lookup(&self, loc: &Loc, s: &State) -> Result<u32, SemanticsError> {
        Ok(s[self.index_of(loc)?])
    }

    /// `u_i : Val_i × St -> St`
    pub fn update(&self, loc: &Loc, a: u32, s: &State) -> Result<State, SemanticsError> {
        let k = self.index_of(loc)?;
        let n = self.locations[k].1;
        if a >= n {
            return Err(SemanticsError::CarrierMismatch { expected: format!("V[{loc}]"), found: a.to_string() });
        }
        let mut out = s.clone();
        match self.interpretation {
            Interpretation::Bank => out[k] = ((u64::from(out[k]) + u64::from(a)) % u64::from(n)) as u32,
            Interpretation::Corrupted { writer, victim } if writer == k => {
                out[k] = a;
                out[victim] = a % self.locations[victim].1;
            }
            _ => out[k] = a,
        }
        Ok(out)
    }

    fn describe(&self) -> String {
        let parts: Vec<String> = self.locations.iter().map(|(l, n)| format!("{l}:{n}")).collect();
        parts.join(",")
    }

    fn atom(&self, v: &Value, loc: &Loc) -> Result<u32, SemanticsError> {
        match v {
            Value::Atom(a) if *a < self.size_of(loc)? => Ok(*a),
            other => Err(SemanticsError::CarrierMismatch { expected: format!("V[{loc}]"), found: other.to_string() }),
        }
    }

    fn apply_named(&self, name: &str, x: &Value, s: &State) -> Result<(Value, State), SemanticsError> {
        if self.interpretation != Interpretation::Bank {
            return Err(SemanticsError::Uninterpreted(name.to_string()));
        }
        let acct = Loc::new(BANK_LOCATION);
        let n = u64::from(self.size_of(&acct)?);
        if let Some(c) = BANK_CONSTANTS.iter().position(|c| *c == name) {
            return Ok((Value::Atom((c as u64 % n) as u32), s.clone()));
        }
        match name {
            "balance" => Ok((Value::Atom(self.lookup(&acct, s)?), s.clone())),
            "deposit" => {
                let a = self.atom(x, &acct)?;
                Ok((Value::Unit, self.update(&acct, a, s)?))
            }
            "plus" | "minus" | "times" => {
                let Value::Pair(a, b) = x else {
                    return Err(SemanticsError::CarrierMismatch { expected: "a pair".into(), found: x.to_string() });
                };
                let (a, b) = (u64::from(self.atom(a, &acct)?), u64::from(self.atom(b, &acct)?));
                let r = match name {
                    "plus" => (a + b) % n,
                    "minus" => (a + n - b) % n,
                    _ => (a * b) % n,
                };
                Ok((Value::Atom(r as u32), s.clone()))
            }
            _ => Err(SemanticsError::Uninterpreted(name.to_string())),
        }
    }

    /// Interpretation of a generator as a function `X × St -> Y × St`.
    pub fn apply_generator(&self, g: &Generator, x: &Value, s: &State) -> Result<(Value, State), SemanticsError> {
        match g {
            Generator::Lookup(l) => Ok((Value::Atom(self.lookup(l, s)?), s.clone())),
            Generator::Update(l) => {
                let a = self.atom(x, l)?;
                Ok((Value::Unit, self.update(l, a, s)?))
            }
            Generator::Named(n) => self.apply_named(n, x, s),
            Generator::Meta(m) => Err(SemanticsError::Uninterpreted(format!("?{m}"))),
        }
    }

    /// The state whose observations through the cone legs are `values`.
    fn state_from_observations(&self, th: &Theory, values: &[Value]) -> Result<State, SemanticsError> {
        let legs = th.obs_legs();
        let model_locs: Vec<&Loc> = self.locations().collect();
        let leg_locs: Vec<Loc> = legs
            .iter()
            .map(|g| match g {
                Generator::Lookup(l) => l.clone(),
                _ => Loc::new(BANK_LOCATION),
            })
            .collect();
        if model_locs.len() != leg_locs.len() || model_locs.iter().zip(&leg_locs).any(|(a, b)| *a != b) {
            let names: Vec<String> = leg_locs.iter().map(|l| l.to_string()).collect();
            return Err(SemanticsError::ConeMismatch { model: self.describe(), theory: names.join(",") });
        }
        leg_locs.iter().zip(values).map(|(l, v)| self.atom(v, l)).collect()
    }
}

impl fmt::Display for FiniteModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

fn pair_parts(v: &Value) -> Result<(&Value, &Value), SemanticsError> {
    match v {
        Value::Pair(a, b) => Ok((a, b)),
        other => Err(SemanticsError::CarrierMismatch { expected: "a pair".into(), found: other.to_string() }),
    }
}

/// Runs `t` as a state-passing function on `(x, s)`.
pub fn eval_decorated(
    th: &Theory,
    t: &Term,
    m: &FiniteModel,
    x: &Value,
    s: &State,
) -> Result<(Value, State), SemanticsError> {
    match t {
        Term::Id(_) => Ok((x.clone(), s.clone())),
        Term::Gen(g) => m.apply_generator(g, x, s),
        Term::Comp(outer, inner) => {
            let (y, s1) = eval_decorated(th, inner, m, x, s)?;
            eval_decorated(th, outer, m, &y, &s1)
        }
        Term::Final(_) => Ok((Value::Unit, s.clone())),
        Term::ObsTuple(fs) => {
            let mut observed = Vec::with_capacity(fs.len());
            for f in fs {
                observed.push(eval_decorated(th, f, m, x, s)?.0);
            }
            Ok((Value::Unit, m.state_from_observations(th, &observed)?))
        }
        Term::Proj1(..) => Ok((pair_parts(x)?.0.clone(), s.clone())),
        Term::Proj2(..) => Ok((pair_parts(x)?.1.clone(), s.clone())),
        Term::Proj1Inv(_) => Ok((Value::pair(x.clone(), Value::Unit), s.clone())),
        Term::Proj2Inv(_) => Ok((Value::pair(Value::Unit, x.clone()), s.clone())),
        Term::Perm(..) => {
            let (a, b) = pair_parts(x)?;
            Ok((Value::pair(b.clone(), a.clone()), s.clone()))
        }
        Term::PureProd(f, g) => {
            let (a, b) = pair_parts(x)?;
            let (fa, _) = eval_decorated(th, f, m, a, s)?;
            let (gb, _) = eval_decorated(th, g, m, b, s)?;
            Ok((Value::pair(fa, gb), s.clone()))
        }
        Term::LeftSemi(_, f) => {
            let (kept, a) = pair_parts(x)?;
            let (b, s1) = eval_decorated(th, f, m, a, s)?;
            Ok((Value::pair(kept.clone(), b), s1))
        }
        Term::RightSemi(f, _) => {
            let (a, kept) = pair_parts(x)?;
            let (b, s1) = eval_decorated(th, f, m, a, s)?;
            Ok((Value::pair(b, kept.clone()), s1))
        }
    }
}

/// Values of the explicit logic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExplicitValue {
    Val(Value),
    State(State),
    WithState(Value, State),
}

fn explicit_mismatch(expected: &str, found: &ExplicitValue) -> SemanticsError {
    SemanticsError::CarrierMismatch { expected: expected.into(), found: format!("{found:?}") }
}

fn as_val(v: ExplicitValue) -> Result<Value, SemanticsError> {
    match v {
        ExplicitValue::Val(x) => Ok(x),
        other => Err(explicit_mismatch("a value", &other)),
    }
}

fn as_state(v: ExplicitValue) -> Result<State, SemanticsError> {
    match v {
        ExplicitValue::State(s) => Ok(s),
        other => Err(explicit_mismatch("a state", &other)),
    }
}

fn as_with_state(v: &ExplicitValue) -> Result<(&Value, &State), SemanticsError> {
    match v {
        ExplicitValue::WithState(x, s) => Ok((x, s)),
        other => Err(explicit_mismatch("a value with a state", other)),
    }
}

/// Plain set-theoretic evaluation of an explicit term.
pub fn eval_explicit(
    th: &Theory,
    t: &ExplicitTerm,
    m: &FiniteModel,
    input: &ExplicitValue,
) -> Result<ExplicitValue, SemanticsError> {
    use ExplicitValue as V;
    match t {
        ExplicitTerm::Id(_) => Ok(input.clone()),
        ExplicitTerm::Comp(outer, inner) => {
            let mid = eval_explicit(th, inner, m, input)?;
            eval_explicit(th, outer, m, &mid)
        }
        ExplicitTerm::P(_) => Ok(V::Val(as_with_state(input)?.0.clone())),
        ExplicitTerm::Q(_) => Ok(V::State(as_with_state(input)?.1.clone())),
        ExplicitTerm::Tuple(a, b) => {
            let x = as_val(eval_explicit(th, a, m, input)?)?;
            let s = as_state(eval_explicit(th, b, m, input)?)?;
            Ok(V::WithState(x, s))
        }
        ExplicitTerm::Pair(a, b) => {
            let x = as_val(eval_explicit(th, a, m, input)?)?;
            let y = as_val(eval_explicit(th, b, m, input)?)?;
            Ok(V::Val(Value::pair(x, y)))
        }
        ExplicitTerm::Final(_) => Ok(V::Val(Value::Unit)),
        ExplicitTerm::Lookup1(l) => match input {
            V::State(s) => Ok(V::Val(Value::Atom(m.lookup(l, s)?))),
            other => Err(explicit_mismatch("a state", other)),
        },
        ExplicitTerm::Update(l) => {
            let (x, s) = as_with_state(input)?;
            let a = m.atom(x, l)?;
            Ok(V::State(m.update(l, a, s)?))
        }
        ExplicitTerm::StateTuple(fs) => {
            let mut observed = Vec::with_capacity(fs.len());
            for f in fs {
                observed.push(as_val(eval_explicit(th, f, m, input)?)?);
            }
            Ok(V::State(m.state_from_observations(th, &observed)?))
        }
        ExplicitTerm::Pure(p) => {
            let x = match input {
                V::Val(x) => x,
                other => return Err(explicit_mismatch("a value", other)),
            };
            Ok(V::Val(eval_decorated(th, p, m, x, &Vec::new())?.0))
        }
        ExplicitTerm::Acc1(g) => {
            let (x, s) = as_with_state(input)?;
            Ok(V::Val(m.apply_generator(g, x, s)?.0))
        }
        ExplicitTerm::Modi(g) => {
            let (x, s) = as_with_state(input)?;
            let (y, s1) = m.apply_generator(g, x, s)?;
            Ok(V::WithState(y, s1))
        }
    }
}

/// All inputs of an explicit type, states varying fastest.
pub fn explicit_inputs(m: &FiniteModel, t: &ExplicitType) -> Result<Vec<ExplicitValue>, SemanticsError> {
    Ok(match t {
        ExplicitType::Lifted(ty) => m.values(ty)?.into_iter().map(ExplicitValue::Val).collect(),
        ExplicitType::State => m.states().into_iter().map(ExplicitValue::State).collect(),
        ExplicitType::ProdS(ty) => {
            let states = m.states();
            m.values(ty)?
                .into_iter()
                .flat_map(|x| states.iter().map(move |s| ExplicitValue::WithState(x.clone(), s.clone())))
                .collect()
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub input: String,
    pub state: State,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelCheck {
    pub holds: bool,
    pub inputs: u64,
    pub counterexample: Option<Counterexample>,
}

fn render_output(out: &(Value, State), strength: Strength) -> String {
    match strength {
        Strength::Strong => format!("{} / {:?}", out.0, out.1),
        Strength::Weak => out.0.to_string(),
    }
}

/// Compares both sides of `eq` on every input of `m`.
pub fn check_equation_model(
    th: &Theory,
    eq: &Equation,
    m: &FiniteModel,
    cap: u64,
) -> Result<ModelCheck, SemanticsError> {
    let (src, _) = typecheck(&eq.lhs, th).map_err(|e| SemanticsError::IllTyped(e.to_string()))?;
    typecheck(&eq.rhs, th).map_err(|e| SemanticsError::IllTyped(e.to_string()))?;
    let size = m.type_size(&src)?.saturating_mul(m.state_count());
    if size > cap {
        return Err(SemanticsError::EnumerationTooLarge { size, cap });
    }
    let states = m.states();
    let mut inputs = 0;
    for x in m.values(&src)? {
        for s in &states {
            inputs += 1;
            let l = eval_decorated(th, &eq.lhs, m, &x, s)?;
            let r = eval_decorated(th, &eq.rhs, m, &x, s)?;
            let agree = match eq.strength {
                Strength::Strong => l == r,
                Strength::Weak => l.0 == r.0,
            };
            if !agree {
                return Ok(ModelCheck {
                    holds: false,
                    inputs,
                    counterexample: Some(Counterexample {
                        input: x.to_string(),
                        state: s.clone(),
                        lhs: render_output(&l, eq.strength),
                        rhs: render_output(&r, eq.strength),
                    }),
                });
            }
        }
    }
    Ok(ModelCheck { holds: true, inputs, counterexample: None })
}

/// Whether `eq` can be interpreted in `m`: every location it mentions is
/// present, and observational tuples need the model to carry exactly the
/// theory's cone.
pub fn applicable(th: &Theory, eq: &Equation, m: &FiniteModel) -> bool {
    let mut locs = eq.lhs.mentioned_locs();
    locs.extend(eq.rhs.mentioned_locs());
    if !locs.iter().all(|l| m.has_location(l)) {
        return false;
    }
    if eq.lhs.contains_obs_tuple() || eq.rhs.contains_obs_tuple() {
        let ms: Vec<&Loc> = m.locations().collect();
        return th.kind == TheoryKind::State && ms.len() == th.locations.len() && ms.iter().zip(&th.locations).all(|(a, b)| *a == b);
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub law: &'static str,
    pub holds: bool,
    /// The law quantifies over pairs of distinct locations and the model has one.
    pub vacuous: bool,
    pub checked: u64,
    pub counterexample: Option<String>,
}

struct LawRun<'a> {
    m: &'a FiniteModel,
    cap: u64,
}

impl LawRun<'_> {
    /// Runs `body` for every location (pair) and state; `body` returns a failure description.
    fn run(
        &self,
        law: &'static str,
        distinct: bool,
        per_state: u64,
        body: &dyn Fn(&Loc, &Loc, &State) -> Result<Option<String>, SemanticsError>,
    ) -> Result<LawCheck, SemanticsError> {
        let locs: Vec<&Loc> = self.m.locations().collect();
        let pairs: Vec<(&Loc, &Loc)> = if distinct {
            locs.iter().flat_map(|i| locs.iter().filter(move |j| *j != i).map(move |j| (*i, *j))).collect()
        } else {
            locs.iter().map(|i| (*i, *i)).collect()
        };
        let size = (pairs.len() as u64).saturating_mul(self.m.state_count()).saturating_mul(per_state);
        if size > self.cap {
            return Err(SemanticsError::EnumerationTooLarge { size, cap: self.cap });
        }
        let mut checked = 0;
        for (i, j) in &pairs {
            for s in self.m.states() {
                checked += 1;
                if let Some(why) = body(i, j, &s)? {
                    return Ok(LawCheck { law, holds: false, vacuous: false, checked, counterexample: Some(why) });
                }
            }
        }
        Ok(LawCheck { law, holds: true, vacuous: pairs.is_empty(), checked, counterexample: None })
    }
}

fn max_size(m: &FiniteModel) -> u64 {
    m.sizes().into_iter().max().map_or(1, u64::from)
}

/// Update then lookup of the same location, and of a different one, on the model's functions.
pub fn verify_equations_1(m: &FiniteModel, cap: u64) -> Result<Vec<LawCheck>, SemanticsError> {
    let run = LawRun { m, cap };
    let n = max_size(m);
    let e11 = run.run("1.1", false, n, &|i, _, s| {
        for a in 0..m.size_of(i)? {
            let got = m.lookup(i, &m.update(i, a, s)?)?;
            if got != a {
                return Ok(Some(format!("l[{i}](u[{i}]({a}, {s:?})) = {got}")));
            }
        }
        Ok(None)
    })?;
    let e12 = run.run("1.2", true, n, &|i, j, s| {
        for a in 0..m.size_of(i)? {
            let after = m.update(i, a, s)?;
            let (got, was) = (m.lookup(j, &after)?, m.lookup(j, s)?);
            if got != was {
                return Ok(Some(format!("l[{j}](u[{i}]({a}, {s:?})) = {got}, l[{j}]({s:?}) = {was}")));
            }
        }
        Ok(None)
    })?;
    Ok(vec![e11, e12])
}

/// The seven lookup and update interaction laws, labelled `2.1` to `2.7`.
pub fn verify_equations_2(m: &FiniteModel, cap: u64) -> Result<Vec<LawCheck>, SemanticsError> {
    let run = LawRun { m, cap };
    let n = max_size(m);
    let mut out = Vec::with_capacity(7);
    out.push(run.run("2.1", false, 1, &|i, _, s| {
        let back = m.update(i, m.lookup(i, s)?, s)?;
        Ok((back != *s).then(|| format!("u[{i}](l[{i}]({s:?})) = {back:?}")))
    })?);
    out.push(run.run("2.2", false, 1, &|i, _, s| {
        let once = (m.lookup(i, s)?, s.clone());
        let twice = (m.lookup(i, &once.1)?, once.1.clone());
        Ok((once != twice).then(|| format!("reading {i} twice in {s:?}")))
    })?);
    out.push(run.run("2.3", false, n * n, &|i, _, s| {
        let k = m.size_of(i)?;
        for a in 0..k {
            for b in 0..k {
                let l = m.update(i, b, &m.update(i, a, s)?)?;
                let r = m.update(i, b, s)?;
                if l != r {
                    return Ok(Some(format!("u[{i}]({b}, u[{i}]({a}, {s:?})) = {l:?}, u[{i}]({b}, {s:?}) = {r:?}")));
                }
            }
        }
        Ok(None)
    })?);
    out.push(run.run("2.4", false, n, &|i, _, s| {
        for a in 0..m.size_of(i)? {
            let got = m.lookup(i, &m.update(i, a, s)?)?;
            if got != a {
                return Ok(Some(format!("l[{i}](u[{i}]({a}, {s:?})) = {got}")));
            }
        }
        Ok(None)
    })?);
    out.push(run.run("2.5", true, 1, &|i, j, s| {
        let l = ((m.lookup(i, s)?, m.lookup(j, s)?), s.clone());
        let swapped = ((m.lookup(j, s)?, m.lookup(i, s)?), s.clone());
        let r = ((swapped.0 .1, swapped.0 .0), swapped.1);
        Ok((l != r).then(|| format!("reading {i},{j} in {s:?}")))
    })?);
    out.push(run.run("2.6", true, n * n, &|i, j, s| {
        for a in 0..m.size_of(i)? {
            for b in 0..m.size_of(j)? {
                let l = m.update(j, b, &m.update(i, a, s)?)?;
                let r = m.update(i, a, &m.update(j, b, s)?)?;
                if l != r {
                    return Ok(Some(format!("u[{i}]:={a}, u[{j}]:={b} from {s:?}: {l:?} vs {r:?}")));
                }
            }
        }
        Ok(None)
    })?);
    out.push(run.run("2.7", true, n, &|i, j, s| {
        for a in 0..m.size_of(i)? {
            let after = m.update(i, a, s)?;
            let l = (m.lookup(j, &after)?, after.clone());
            let r = (m.lookup(j, s)?, after);
            if l != r {
                return Ok(Some(format!("l[{j}] after u[{i}]({a}) from {s:?}: {l:?} vs {r:?}")));
            }
        }
        Ok(None)
    })?);
    Ok(out)
}
