//! Translations out of the decorated logic: erasure to the apparent logic
//! and expansion to the explicit state-passing logic.

mod explicit;

pub use explicit::{
    expand_equation, expand_term, explicit_typecheck, simplify, simplify_equation, ExplicitEquation, ExplicitTerm,
    ExplicitType, TranslateError,
};

pub use crate::kernel::apparent::{erase_check, erase_script, erase_theory, ApparentScript, ApparentSession};

use crate::kernel::Equation;
use crate::term::Term;

/// Apparent terms share the decorated syntax; decorations live in the theory.
pub fn erase_term(t: &Term) -> Term {
    t.clone()
}

/// Every equation of the apparent logic is strong.
pub fn erase_equation(eq: &Equation) -> Equation {
    Equation::strong(erase_term(&eq.lhs), erase_term(&eq.rhs))
}
