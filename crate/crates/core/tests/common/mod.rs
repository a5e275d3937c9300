//! Random well-typed terms and a small reference evaluator shared by the
//! integration tests.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use statecheck::kernel::{Equation, Strength};
use statecheck::semantics::{eval_decorated, eval_explicit, ExplicitValue, FiniteModel};
use statecheck::term::{typecheck, Decoration, Generator, Term, Type};
use statecheck::theory::Theory;
use statecheck::translate::{expand_term, simplify};

pub struct TermGen<'a> {
    th: &'a Theory,
    pub rng: StdRng,
}

fn type_size(t: &Type) -> usize {
    match t {
        Type::Prod(a, b) => 1 + type_size(a) + type_size(b),
        _ => 1,
    }
}

impl<'a> TermGen<'a> {
    pub fn new(th: &'a Theory, seed: u64) -> Self {
        TermGen { th, rng: StdRng::seed_from_u64(seed) }
    }

    pub fn target(&self, t: &Term) -> Type {
        typecheck(t, self.th).expect("generated terms are well typed").1
    }

    /// A small source type built from the theory's value types.
    pub fn source_type(&mut self) -> Type {
        let vals: Vec<Type> = self.th.locations.iter().map(|l| Type::Val(l.clone())).collect();
        let v = |g: &mut Self| vals.choose(&mut g.rng).cloned().unwrap_or(Type::Unit);
        match self.rng.gen_range(0..6) {
            0 => Type::Unit,
            1 | 2 => v(self),
            3 => Type::prod(v(self), v(self)),
            4 => Type::prod(v(self), Type::Unit),
            _ => Type::prod(Type::Unit, v(self)),
        }
    }

    /// A term with a random source, decoration at most `max`, tree depth at most `depth`.
    pub fn term(&mut self, max: Decoration, depth: usize) -> Term {
        let src = self.source_type();
        self.from(&src, max, depth)
    }

    pub fn from(&mut self, src: &Type, max: Decoration, depth: usize) -> Term {
        if depth <= 1 {
            return self.leaf(src, max);
        }
        let d = depth - 1;
        match self.rng.gen_range(0..10) {
            0..=2 => self.leaf(src, max),
            3..=5 => {
                let g = self.from(src, max, d);
                let mid = self.target(&g);
                let f = self.from(&mid, max, d);
                Term::comp(f, g)
            }
            6 | 7 => match src {
                Type::Prod(a, b) => match self.rng.gen_range(0..3) {
                    0 => Term::left_semi((**a).clone(), self.from(b, max, d)),
                    1 => Term::right_semi(self.from(a, max, d), (**b).clone()),
                    _ => Term::pure_prod(self.from(a, Decoration::Pure, d), self.from(b, Decoration::Pure, d)),
                },
                _ => self.leaf(src, max),
            },
            _ if max == Decoration::Modifier => self.obs_tuple(src, d),
            _ => self.leaf(src, max),
        }
    }

    /// `otuple(...)` whose legs each discard an accessor then look a location up.
    fn obs_tuple(&mut self, src: &Type, depth: usize) -> Term {
        let legs: Vec<Generator> = self.th.obs_legs().to_vec();
        let fs = legs
            .into_iter()
            .map(|leg| {
                let a = self.from(src, Decoration::Accessor, depth);
                let y = self.target(&a);
                Term::comps([Term::Gen(leg), Term::Final(y), a])
            })
            .collect();
        Term::ObsTuple(fs)
    }

    fn leaf(&mut self, src: &Type, max: Decoration) -> Term {
        let mut c = vec![Term::Id(src.clone()), Term::Final(src.clone())];
        if type_size(src) < 3 {
            c.push(Term::Proj1Inv(src.clone()));
            c.push(Term::Proj2Inv(src.clone()));
        }
        if let Type::Prod(a, b) = src {
            let (a, b) = ((**a).clone(), (**b).clone());
            c.push(Term::Proj1(a.clone(), b.clone()));
            c.push(Term::Proj2(a.clone(), b.clone()));
            c.push(Term::Perm(a, b));
        }
        for (g, sig) in &self.th.generators {
            if sig.source == *src && sig.decoration <= max {
                // generators are listed twice so effects show up often
                c.push(Term::Gen(g.clone()));
                c.push(Term::Gen(g.clone()));
            }
        }
        c.choose(&mut self.rng).cloned().expect("identity is always available")
    }
}

/// `eval_decorated t` against `eval_explicit (expand t)` and its simplified
/// form, over every input and state of `m`.
pub fn commutes(th: &Theory, m: &FiniteModel, t: &Term) -> Result<usize, String> {
    let (src, _) = typecheck(t, th).map_err(|e| e.to_string())?;
    let e = expand_term(th, t).map_err(|e| e.to_string())?;
    let s = simplify(th, &e);
    let mut n = 0;
    for x in m.values(&src).map_err(|e| e.to_string())? {
        for st in m.states() {
            let (v, st1) = eval_decorated(th, t, m, &x, &st).map_err(|e| format!("{t}: {e}"))?;
            let want = ExplicitValue::WithState(v, st1);
            let input = ExplicitValue::WithState(x.clone(), st.clone());
            for (label, img) in [("expanded", &e), ("simplified", &s)] {
                let got = eval_explicit(th, img, m, &input).map_err(|e| format!("{t} ({label}): {e}"))?;
                if got != want {
                    return Err(format!("{t} ({label}) at {x}, {st:?}: {got:?} vs {want:?}"));
                }
            }
            n += 1;
        }
    }
    Ok(n)
}

/// Reference reading of an equation: strong compares value and state,
/// weak compares values only.
pub fn holds_in(th: &Theory, eq: &Equation, m: &FiniteModel) -> Result<bool, String> {
    let (src, _) = typecheck(&eq.lhs, th).map_err(|e| e.to_string())?;
    for x in m.values(&src).map_err(|e| e.to_string())? {
        for st in m.states() {
            let l = eval_decorated(th, &eq.lhs, m, &x, &st).map_err(|e| e.to_string())?;
            let r = eval_decorated(th, &eq.rhs, m, &x, &st).map_err(|e| e.to_string())?;
            let same = match eq.strength {
                Strength::Strong => l == r,
                Strength::Weak => l.0 == r.0,
            };
            if !same {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every size vector over {1,2,3} for one, two and three locations,
/// first location slowest.
pub fn grid() -> Vec<Vec<(&'static str, u32)>> {
    let names = ["i", "j", "k"];
    let mut out = Vec::new();
    for n in 1..=3u32 {
        for code in 0..3u32.pow(n) {
            let sizes = (0..n).map(|p| code / 3u32.pow(n - 1 - p) % 3 + 1);
            out.push(names.iter().copied().zip(sizes).collect());
        }
    }
    out
}
