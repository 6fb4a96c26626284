//! Axiom schemas: recognition and instantiation.
//!
//! Matching is structural, except that when a pattern node and a formula
//! node have different connectives, whichever side is sugar (`|`, `->`,
//! `<g>`) is unfolded one level and matching continues. Repeated formula
//! metavariables must agree up to full desugaring. So `<e>p` and `~[e]~p`
//! match the same patterns.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::formula::Formula;
use crate::grade::Grade;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Binding {
    Formula(Formula),
    Grade(Grade),
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Binding::Formula(x) => write!(f, "{x}"),
            Binding::Grade(g) => write!(f, "{g}"),
        }
    }
}

impl Serialize for Binding {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Binding {
    /// Equality with formulas compared after desugaring.
    pub fn agrees(&self, other: &Binding) -> bool {
        match (self, other) {
            (Binding::Formula(a), Binding::Formula(b)) => a == b || a.desugar() == b.desugar(),
            (Binding::Grade(a), Binding::Grade(b)) => a == b,
            _ => false,
        }
    }
}

/// Metavariable name to its value. Formula variables are `phi` and `psi`;
/// grade variables are `eps`, `gamma` and `delta`.
pub type Bindings = BTreeMap<String, Binding>;

const GRADE_VARS: [&str; 4] = ["eps", "gamma", "delta", "outer"];

/// Canonical metavariable name, accepting Greek letters and long forms.
pub fn canonical_var(name: &str) -> Option<&'static str> {
    Some(match name {
        "phi" | "φ" => "phi",
        "psi" | "ψ" => "psi",
        "eps" | "epsilon" | "ε" => "eps",
        "gamma" | "γ" => "gamma",
        "delta" | "δ" => "delta",
        "outer" => "outer",
        _ => return None,
    })
}

/// Parse a textual binding value for metavariable `var`.
pub fn parse_binding(var: &str, value: &str) -> Result<(String, Binding), Error> {
    let var = canonical_var(var).ok_or_else(|| Error::MissingBinding(format!("unknown metavariable `{var}`")))?;
    let b = if GRADE_VARS.contains(&var) {
        Binding::Grade(Grade::parse_unit(value)?)
    } else {
        Binding::Formula(crate::formula::parse(value)?)
    };
    Ok((var.to_string(), b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Schema {
    K,
    T,
    UM1,
    TI,
    TILtr,
    TIRtl,
    UM2,
    UM3,
    D,
    DLtr,
    DRtl,
    UM4,
}

impl Schema {
    pub const ALL: [Schema; 12] = [
        Schema::K,
        Schema::T,
        Schema::UM1,
        Schema::TI,
        Schema::TILtr,
        Schema::TIRtl,
        Schema::UM2,
        Schema::UM3,
        Schema::D,
        Schema::DLtr,
        Schema::DRtl,
        Schema::UM4,
    ];

    /// The eight axioms of the system, biconditionals in full.
    pub const AXIOMS: [Schema; 8] =
        [Schema::K, Schema::T, Schema::UM1, Schema::TI, Schema::UM2, Schema::UM3, Schema::D, Schema::UM4];

    pub fn name(self) -> &'static str {
        match self {
            Schema::K => "K",
            Schema::T => "T",
            Schema::UM1 => "UM1",
            Schema::TI => "TI",
            Schema::TILtr => "TI-ltr",
            Schema::TIRtl => "TI-rtl",
            Schema::UM2 => "UM2",
            Schema::UM3 => "UM3",
            Schema::D => "D",
            Schema::DLtr => "D-ltr",
            Schema::DRtl => "D-rtl",
            Schema::UM4 => "UM4",
        }
    }

    /// The axiom a one-directional variant belongs to.
    pub fn family(self) -> Schema {
        match self {
            Schema::TILtr | Schema::TIRtl => Schema::TI,
            Schema::DLtr | Schema::DRtl => Schema::D,
            s => s,
        }
    }

    /// Whether a justification naming `self` is satisfied by a match of
    /// `other`: exact names match, and a biconditional's name also admits
    /// either direction.
    pub fn admits(self, other: Schema) -> bool {
        self == other || (self == self.family() && other.family() == self)
    }

    pub fn formula_vars(self) -> &'static [&'static str] {
        match self {
            Schema::K => &["phi", "psi"],
            _ => &["phi"],
        }
    }

    pub fn grade_vars(self) -> &'static [&'static str] {
        match self.family() {
            Schema::TI | Schema::UM3 => &["gamma", "delta"],
            _ => &["eps"],
        }
    }

    fn pattern(self) -> Pat {
        use Pat::*;
        let phi = || Meta("phi");
        let psi = || Meta("psi");
        let eps = "eps";
        match self {
            Schema::K => imp(
                nec(eps, imp(phi(), psi())),
                imp(nec(eps, phi()), nec(eps, psi())),
            ),
            Schema::T => imp(nec(eps, phi()), phi()),
            Schema::UM1 => imp(nec(eps, phi()), pos(eps, phi())),
            Schema::TI => iff(nec("gamma", nec("delta", phi())), nec("outer", phi())),
            Schema::TILtr => imp(nec("gamma", nec("delta", phi())), nec("outer", phi())),
            Schema::TIRtl => imp(nec("outer", phi()), nec("gamma", nec("delta", phi()))),
            Schema::UM2 => imp(pos(eps, phi()), nec(eps, pos(eps, phi()))),
            Schema::UM3 => imp(nec("gamma", phi()), nec("delta", phi())),
            Schema::D => iff(pos(eps, phi()), Not(Box::new(nec(eps, Not(Box::new(phi())))))),
            Schema::DLtr => imp(pos(eps, phi()), Not(Box::new(nec(eps, Not(Box::new(phi())))))),
            Schema::DRtl => imp(Not(Box::new(nec(eps, Not(Box::new(phi()))))), pos(eps, phi())),
            Schema::UM4 => imp(phi(), nec(eps, pos(eps, phi()))),
        }
    }

    fn side_condition(self, b: &Bindings) -> Result<(), String> {
        let grade = |k: &str| match b.get(k) {
            Some(Binding::Grade(g)) => Some(g.clone()),
            _ => None,
        };
        match self.family() {
            Schema::TI => {
                let (g, d, o) = (grade("gamma"), grade("delta"), grade("outer"));
                match (g, d, o) {
                    (Some(g), Some(d), Some(o)) => {
                        let m = std::cmp::max(&g, &d);
                        if &o == m {
                            Ok(())
                        } else {
                            Err(format!("outer grade {o} must equal max({g}, {d}) = {m}"))
                        }
                    }
                    _ => Err("TI needs gamma and delta".into()),
                }
            }
            Schema::UM3 => match (grade("gamma"), grade("delta")) {
                (Some(g), Some(d)) if g >= d => Ok(()),
                (Some(g), Some(d)) => Err(format!("gamma {g} must be >= delta {d}")),
                _ => Err("UM3 needs gamma and delta".into()),
            },
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Schema {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Schema::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownSchema(s.to_string()))
    }
}

impl Serialize for Schema {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Debug)]
enum Pat {
    Meta(&'static str),
    Not(Box<Pat>),
    And(Box<Pat>, Box<Pat>),
    Implies(Box<Pat>, Box<Pat>),
    Necessity(&'static str, Box<Pat>),
    Possibility(&'static str, Box<Pat>),
}

fn imp(a: Pat, b: Pat) -> Pat {
    Pat::Implies(Box::new(a), Box::new(b))
}

fn iff(a: Pat, b: Pat) -> Pat {
    Pat::And(Box::new(imp(a.clone(), b.clone())), Box::new(imp(b, a)))
}

fn nec(g: &'static str, a: Pat) -> Pat {
    Pat::Necessity(g, Box::new(a))
}

fn pos(g: &'static str, a: Pat) -> Pat {
    Pat::Possibility(g, Box::new(a))
}

impl Pat {
    fn unfold_top(&self) -> Option<Pat> {
        match self {
            Pat::Implies(a, b) => Some(Pat::Not(Box::new(Pat::And(
                a.clone(),
                Box::new(Pat::Not(b.clone())),
            )))),
            Pat::Possibility(g, a) => {
                Some(Pat::Not(Box::new(Pat::Necessity(g, Box::new(Pat::Not(a.clone()))))))
            }
            _ => None,
        }
    }

    fn same_connective(&self, f: &Formula) -> bool {
        matches!(
            (self, f),
            (Pat::Not(_), Formula::Not(_))
                | (Pat::And(..), Formula::And(..))
                | (Pat::Implies(..), Formula::Implies(..))
                | (Pat::Necessity(..), Formula::Necessity(..))
                | (Pat::Possibility(..), Formula::Possibility(..))
        )
    }

    fn bind(b: &mut Bindings, var: &str, value: Binding) -> bool {
        match b.get(var) {
            Some(old) => old.agrees(&value),
            None => {
                b.insert(var.to_string(), value);
                true
            }
        }
    }

    fn matches(&self, f: &Formula, b: &mut Bindings) -> bool {
        if let Pat::Meta(v) = self {
            return Pat::bind(b, v, Binding::Formula(f.clone()));
        }
        if !self.same_connective(f) {
            if let Some(g) = f.unfold_top() {
                return self.matches(&g, b);
            }
            if let Some(p) = self.unfold_top() {
                return p.matches(f, b);
            }
            return false;
        }
        match (self, f) {
            (Pat::Not(p), Formula::Not(a)) => p.matches(a, b),
            (Pat::And(p, q), Formula::And(x, y)) | (Pat::Implies(p, q), Formula::Implies(x, y)) => {
                p.matches(x, b) && q.matches(y, b)
            }
            (Pat::Necessity(g, p), Formula::Necessity(e, a))
            | (Pat::Possibility(g, p), Formula::Possibility(e, a)) => {
                Pat::bind(b, g, Binding::Grade(e.clone())) && p.matches(a, b)
            }
            _ => false,
        }
    }

    fn build(&self, b: &Bindings) -> Result<Formula, Error> {
        let grade = |g: &str| match b.get(g) {
            Some(Binding::Grade(x)) => Ok(x.clone()),
            _ => Err(Error::MissingBinding(g.to_string())),
        };
        Ok(match self {
            Pat::Meta(v) => match b.get(*v) {
                Some(Binding::Formula(x)) => x.clone(),
                _ => return Err(Error::MissingBinding(v.to_string())),
            },
            Pat::Not(p) => Formula::not(p.build(b)?),
            Pat::And(p, q) => Formula::and(p.build(b)?, q.build(b)?),
            Pat::Implies(p, q) => Formula::implies(p.build(b)?, q.build(b)?),
            Pat::Necessity(g, p) => Formula::necessity(grade(g)?, p.build(b)?),
            Pat::Possibility(g, p) => Formula::possibility(grade(g)?, p.build(b)?),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemaMatch {
    pub schema: Schema,
    pub bindings: Bindings,
}

/// Every schema under which `f` is an instance, with its bindings.
pub fn match_axiom(f: &Formula) -> Vec<SchemaMatch> {
    Schema::ALL
        .into_iter()
        .filter_map(|schema| {
            let mut b = Bindings::new();
            if !schema.pattern().matches(f, &mut b) || schema.side_condition(&b).is_err() {
                return None;
            }
            b.remove("outer");
            Some(SchemaMatch { schema, bindings: b })
        })
        .collect()
}

/// The instance of `schema` under `bindings`. For TI the outer grade is
/// `max(gamma, delta)`; an explicit `outer` binding must agree with it.
pub fn instantiate_axiom(schema: Schema, bindings: &Bindings) -> Result<Formula, Error> {
    let mut b = bindings.clone();
    for v in schema.formula_vars().iter().chain(schema.grade_vars()) {
        if !b.contains_key(*v) {
            return Err(Error::MissingBinding(v.to_string()));
        }
    }
    if schema.family() == Schema::TI && !b.contains_key("outer") {
        if let (Some(Binding::Grade(g)), Some(Binding::Grade(d))) = (b.get("gamma"), b.get("delta")) {
            let m = std::cmp::max(g, d).clone();
            b.insert("outer".into(), Binding::Grade(m));
        }
    }
    schema.side_condition(&b).map_err(Error::SideCondition)?;
    schema.pattern().build(&b)
}
