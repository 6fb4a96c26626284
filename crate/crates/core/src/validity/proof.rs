//! Hilbert-style proof checking.
//!
//! Rules: axiom instances, modus ponens, and necessitation (from `φ` infer
//! `[e]φ`). Premises are allowed; a line derived from a premise is a
//! consequence of it rather than a theorem. Formulas are compared up to
//! desugaring throughout.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::schema::{match_axiom, parse_binding, Bindings, Schema};
use crate::error::Error;
use crate::formula::{parse, Formula};
use crate::grade::Grade;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// Schema name as written; unknown names are rejected by the checker.
    Axiom(String),
    /// Modus ponens from line `minor` (φ) and line `major` (φ -> ψ).
    Mp(usize, usize),
    Nec(usize, Grade),
    Premise,
}

impl Justification {
    pub fn parse(text: &str) -> Result<Self, Error> {
        let bad = || Error::MalformedProof(format!("bad justification `{text}`"));
        let (kind, rest) = text.split_once(':').unwrap_or((text, ""));
        match kind.trim() {
            "premise" if rest.is_empty() => Ok(Justification::Premise),
            "axiom" if !rest.is_empty() => Ok(Justification::Axiom(rest.trim().to_string())),
            "mp" => {
                let (i, j) = rest.split_once(',').ok_or_else(bad)?;
                Ok(Justification::Mp(i.trim().parse().map_err(|_| bad())?, j.trim().parse().map_err(|_| bad())?))
            }
            "nec" => {
                let (i, g) = rest.split_once(':').ok_or_else(bad)?;
                Ok(Justification::Nec(i.trim().parse().map_err(|_| bad())?, Grade::parse_unit(g.trim())?))
            }
            _ => Err(bad()),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Justification::Axiom(n) => format!("axiom:{n}"),
            Justification::Mp(i, j) => format!("mp:{i},{j}"),
            Justification::Nec(i, g) => format!("nec:{i}:{g}"),
            Justification::Premise => "premise".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLine {
    pub n: usize,
    pub formula: Formula,
    pub by: Justification,
    pub bind: Option<Bindings>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Proof {
    pub lines: Vec<ProofLine>,
}

#[derive(Serialize, Deserialize)]
struct RawLine {
    n: usize,
    formula: String,
    by: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bind: Option<BTreeMap<String, String>>,
}

impl Proof {
    /// Read the JSON array form. Line numbers must strictly increase.
    pub fn from_json(text: &str) -> Result<Proof, Error> {
        let raw: Vec<RawLine> =
            serde_json::from_str(text).map_err(|e| Error::MalformedProof(e.to_string()))?;
        let mut lines = Vec::with_capacity(raw.len());
        for r in raw {
            if lines.last().is_some_and(|l: &ProofLine| l.n >= r.n) {
                return Err(Error::MalformedProof(format!("line numbers must increase (at {})", r.n)));
            }
            let formula = parse(&r.formula)
                .map_err(|e| Error::MalformedProof(format!("line {}: {e}", r.n)))?;
            let by = Justification::parse(&r.by)?;
            let bind = match r.bind {
                None => None,
                Some(m) => Some(
                    m.iter()
                        .map(|(k, v)| parse_binding(k, v))
                        .collect::<Result<Bindings, _>>()
                        .map_err(|e| Error::MalformedProof(format!("line {}: {e}", r.n)))?,
                ),
            };
            lines.push(ProofLine { n: r.n, formula, by, bind });
        }
        Ok(Proof { lines })
    }

    pub fn to_json(&self) -> String {
        let raw: Vec<RawLine> = self
            .lines
            .iter()
            .map(|l| RawLine {
                n: l.n,
                formula: l.formula.to_string(),
                by: l.by.render(),
                bind: l
                    .bind
                    .as_ref()
                    .map(|b| b.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()),
            })
            .collect();
        serde_json::to_string_pretty(&raw).expect("serializable")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub line: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub accepted: bool,
    pub first_failure: Option<Rejection>,
    /// Line numbers whose formulas were derived without premises.
    pub theorems: Vec<usize>,
}

fn same(a: &Formula, b: &Formula) -> bool {
    a == b || a.desugar() == b.desugar()
}

fn is_implication(f: &Formula) -> bool {
    match f.desugar() {
        Formula::Not(a) => matches!(*a, Formula::And(_, ref b) if matches!(**b, Formula::Not(_))),
        _ => false,
    }
}

/// Check each line in order, stopping at the first bad one.
pub fn check_proof(proof: &Proof) -> Verdict {
    // line number -> (formula, depends on a premise)
    let mut seen: HashMap<usize, (&Formula, bool)> = HashMap::new();
    let mut theorems = Vec::new();
    for line in &proof.lines {
        let reject = |reason: String| Verdict {
            accepted: false,
            first_failure: Some(Rejection { line: line.n, reason }),
            theorems: theorems.clone(),
        };
        let earlier = |i: usize| {
            seen.get(&i).copied().ok_or_else(|| format!("line {i} is not an earlier line"))
        };
        let outcome: Result<bool, String> = match &line.by {
            Justification::Premise => Ok(true),
            Justification::Axiom(name) => check_axiom(name, line),
            Justification::Mp(i, j) => (|| {
                let (minor, d1) = earlier(*i)?;
                let (major, d2) = earlier(*j)?;
                let expected = Formula::implies(minor.clone(), line.formula.clone());
                if same(major, &expected) {
                    Ok(d1 || d2)
                } else if is_implication(major) {
                    Err(format!("line {j} is not `{minor} -> {}`", line.formula))
                } else {
                    Err(format!("line {j} is not an implication"))
                }
            })(),
            Justification::Nec(i, g) => earlier(*i).and_then(|(f, dep)| {
                if same(&line.formula, &Formula::necessity(g.clone(), f.clone())) {
                    Ok(dep)
                } else {
                    Err(format!("formula is not [{g}] applied to line {i}"))
                }
            }),
        };
        match outcome {
            Ok(dep) => {
                if !dep {
                    theorems.push(line.n);
                }
                seen.insert(line.n, (&line.formula, dep));
            }
            Err(reason) => return reject(reason),
        }
    }
    Verdict { accepted: true, first_failure: None, theorems }
}

fn check_axiom(name: &str, line: &ProofLine) -> Result<bool, String> {
    let wanted: Schema = name.parse().map_err(|_| format!("unknown axiom schema `{name}`"))?;
    let matches = match_axiom(&line.formula);
    let ok = matches.iter().any(|m| {
        wanted.admits(m.schema)
            && line.bind.as_ref().is_none_or(|b| {
                b.iter().all(|(k, v)| m.bindings.get(k).is_some_and(|x| x.agrees(v)))
            })
    });
    if ok {
        Ok(false)
    } else if matches.iter().any(|m| wanted.admits(m.schema)) {
        Err(format!("instance of {wanted} but not under the given bindings"))
    } else {
        Err(format!("not an instance of {wanted}"))
    }
}
