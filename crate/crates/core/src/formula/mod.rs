//! Syntax of the graded similarity language.
//!
//! Formulas are built from atoms with `~`, `&`, the sugar `|`, `->`, and the
//! graded modalities `[g]` (stability) and `<g>` (plausibility). A
//! biconditional `a <-> b` is accepted by the parser and stored as
//! `(a -> b) & (b -> a)`.

mod parser;
mod printer;

use std::collections::{BTreeSet, HashSet};

pub use parser::{parse, ParseError};

use crate::grade::Grade;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    /// `[g]φ`: φ holds throughout the closed ball of radius `g`.
    Necessity(Grade, Box<Formula>),
    /// `<g>φ`: φ holds somewhere in the closed ball of radius `g`.
    Possibility(Grade, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// `(a -> b) & (b -> a)`.
    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::and(
            Formula::implies(a.clone(), b.clone()),
            Formula::implies(b, a),
        )
    }

    pub fn necessity(g: Grade, f: Formula) -> Self {
        Formula::Necessity(g, Box::new(f))
    }

    pub fn possibility(g: Grade, f: Formula) -> Self {
        Formula::Possibility(g, Box::new(f))
    }

    /// Immediate subterms, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) => vec![],
            Formula::Not(a) | Formula::Necessity(_, a) | Formula::Possibility(_, a) => vec![a],
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => vec![a, b],
        }
    }

    /// Unfold only the outermost connective if it is sugar.
    pub fn unfold_top(&self) -> Option<Formula> {
        match self {
            Formula::Or(a, b) => Some(Formula::not(Formula::and(
                Formula::not((**a).clone()),
                Formula::not((**b).clone()),
            ))),
            Formula::Implies(a, b) => Some(Formula::not(Formula::and(
                (**a).clone(),
                Formula::not((**b).clone()),
            ))),
            Formula::Possibility(g, a) => Some(Formula::not(Formula::necessity(
                g.clone(),
                Formula::not((**a).clone()),
            ))),
            _ => None,
        }
    }

    /// Rewrite into the core connectives `Atom`, `Not`, `And`, `Necessity`.
    pub fn desugar(&self) -> Formula {
        match self {
            Formula::Atom(_) => self.clone(),
            Formula::Not(a) => Formula::not(a.desugar()),
            Formula::And(a, b) => Formula::and(a.desugar(), b.desugar()),
            Formula::Or(a, b) => {
                Formula::not(Formula::and(Formula::not(a.desugar()), Formula::not(b.desugar())))
            }
            Formula::Implies(a, b) => {
                Formula::not(Formula::and(a.desugar(), Formula::not(b.desugar())))
            }
            Formula::Necessity(g, a) => Formula::necessity(g.clone(), a.desugar()),
            Formula::Possibility(g, a) => {
                Formula::not(Formula::necessity(g.clone(), Formula::not(a.desugar())))
            }
        }
    }

    pub fn is_core(&self) -> bool {
        match self {
            Formula::Or(..) | Formula::Implies(..) | Formula::Possibility(..) => false,
            _ => self.children().into_iter().all(Formula::is_core),
        }
    }

    /// Every distinct subterm once, children before parents.
    pub fn subformulas(&self) -> Vec<&Formula> {
        fn walk<'a>(f: &'a Formula, seen: &mut HashSet<&'a Formula>, out: &mut Vec<&'a Formula>) {
            if seen.contains(f) {
                return;
            }
            for c in f.children() {
                walk(c, seen, out);
            }
            seen.insert(f);
            out.push(f);
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        walk(self, &mut seen, &mut out);
        out
    }

    pub fn grade_set(&self) -> BTreeSet<Grade> {
        let mut out = BTreeSet::new();
        for f in self.subformulas() {
            if let Formula::Necessity(g, _) | Formula::Possibility(g, _) = f {
                out.insert(g.clone());
            }
        }
        out
    }

    pub fn atoms(&self) -> BTreeSet<&str> {
        self.subformulas()
            .into_iter()
            .filter_map(|f| match f {
                Formula::Atom(a) => Some(a.as_str()),
                _ => None,
            })
            .collect()
    }

    /// Nesting depth of connectives; atoms have depth 0.
    pub fn depth(&self) -> usize {
        self.children().into_iter().map(|c| c.depth() + 1).max().unwrap_or(0)
    }

    pub fn modal_depth(&self) -> usize {
        let inner = self.children().into_iter().map(Formula::modal_depth).max().unwrap_or(0);
        match self {
            Formula::Necessity(..) | Formula::Possibility(..) => inner + 1,
            _ => inner,
        }
    }

    /// Replace every modal grade `g` by `f(g)`.
    pub fn map_grades(&self, f: &impl Fn(&Grade) -> Grade) -> Formula {
        match self {
            Formula::Atom(_) => self.clone(),
            Formula::Not(a) => Formula::not(a.map_grades(f)),
            Formula::And(a, b) => Formula::and(a.map_grades(f), b.map_grades(f)),
            Formula::Or(a, b) => Formula::or(a.map_grades(f), b.map_grades(f)),
            Formula::Implies(a, b) => Formula::implies(a.map_grades(f), b.map_grades(f)),
            Formula::Necessity(g, a) => Formula::necessity(f(g), a.map_grades(f)),
            Formula::Possibility(g, a) => Formula::possibility(f(g), a.map_grades(f)),
        }
    }
}
