//! Truth evaluation over finite models.
//!
//! `[g]φ` is evaluated with the graded interior `I_g`, `<g>φ` with the
//! graded closure `C_g`, both over closed balls.

use std::collections::HashMap;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::Error;
use crate::formula::Formula;
use crate::grade::Grade;
use crate::model::{Model, Valuation};
use crate::pointset::PointSet;
use crate::space::UltrametricSpace;

/// `I_eps(A)`: points whose closed `eps`-ball lies inside `A`.
pub fn interior_eps(space: &UltrametricSpace, a: &PointSet, eps: &Grade) -> PointSet {
    let n = space.len();
    let c = space.levels_within(eps);
    PointSet::from_indices(n, (0..n).filter(|&x| (0..n).all(|y| space.rank(x, y) >= c || a.contains(y))))
}

/// `C_eps(A)`: points with some member of `A` within closed distance `eps`.
pub fn closure_eps(space: &UltrametricSpace, a: &PointSet, eps: &Grade) -> PointSet {
    let n = space.len();
    let c = space.levels_within(eps);
    PointSet::from_indices(n, (0..n).filter(|&x| a.iter().any(|y| space.rank(x, y) < c)))
}

#[derive(Clone, Copy, Debug)]
enum Node {
    Atom(usize),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Necessity(usize, usize),
    Possibility(usize, usize),
}

/// A formula compiled against one space: one node per distinct subformula,
/// children first, with the ball tables its grades need.
///
/// Evaluating a plan under many valuations reuses the ball tables.
pub struct Plan<'f> {
    subformulas: Vec<&'f Formula>,
    nodes: Vec<Node>,
    atoms: Vec<&'f str>,
    balls: Vec<Vec<PointSet>>,
    universe: usize,
}

impl<'f> Plan<'f> {
    pub fn new(space: &UltrametricSpace, f: &'f Formula) -> Self {
        let subformulas = f.subformulas();
        let position: HashMap<&Formula, usize> =
            subformulas.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        let mut atoms: Vec<&str> = Vec::new();
        let mut tables: HashMap<usize, usize> = HashMap::new();
        let mut balls = Vec::new();
        let n = space.len();
        let mut table_for = |g: &Grade| {
            let count = space.levels_within(g);
            *tables.entry(count).or_insert_with(|| {
                balls.push((0..n).map(|x| space.ball_at_level(x, count)).collect());
                balls.len() - 1
            })
        };
        let nodes = subformulas
            .iter()
            .map(|g| match g {
                Formula::Atom(a) => {
                    let i = atoms.iter().position(|b| b == a).unwrap_or_else(|| {
                        atoms.push(a);
                        atoms.len() - 1
                    });
                    Node::Atom(i)
                }
                Formula::Not(a) => Node::Not(position[&**a]),
                Formula::And(a, b) => Node::And(position[&**a], position[&**b]),
                Formula::Or(a, b) => Node::Or(position[&**a], position[&**b]),
                Formula::Implies(a, b) => Node::Implies(position[&**a], position[&**b]),
                Formula::Necessity(e, a) => Node::Necessity(table_for(e), position[&**a]),
                Formula::Possibility(e, a) => Node::Possibility(table_for(e), position[&**a]),
            })
            .collect();
        Plan { subformulas, nodes, atoms, balls, universe: n }
    }

    /// Atom names in the order [`Plan::eval`] expects their extensions.
    pub fn atoms(&self) -> &[&'f str] {
        &self.atoms
    }

    pub fn subformulas(&self) -> &[&'f Formula] {
        &self.subformulas
    }

    /// Truth sets of every subformula, in [`Plan::subformulas`] order.
    pub fn eval(&self, atom_sets: &[PointSet]) -> Vec<PointSet> {
        let mut out: Vec<PointSet> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let s = match *node {
                Node::Atom(i) => atom_sets[i].clone(),
                Node::Not(a) => out[a].complement(),
                Node::And(a, b) => out[a].intersection(&out[b]),
                Node::Or(a, b) => out[a].union(&out[b]),
                Node::Implies(a, b) => out[a].implication(&out[b]),
                Node::Necessity(t, a) => PointSet::from_indices(
                    self.universe,
                    self.balls[t].iter().enumerate().filter(|(_, b)| b.is_subset(&out[a])).map(|(x, _)| x),
                ),
                Node::Possibility(t, a) => PointSet::from_indices(
                    self.universe,
                    self.balls[t].iter().enumerate().filter(|(_, b)| b.intersects(&out[a])).map(|(x, _)| x),
                ),
            };
            out.push(s);
        }
        out
    }

    pub fn eval_root(&self, atom_sets: &[PointSet]) -> PointSet {
        self.eval(atom_sets).pop().expect("plan has a root")
    }

    pub fn eval_valuation(&self, v: &Valuation) -> Vec<PointSet> {
        let sets: Vec<PointSet> = self.atoms.iter().map(|a| v.extension(a, self.universe)).collect();
        self.eval(&sets)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthSet {
    pub formula: Formula,
    pub points: PointSet,
}

pub fn truthset(m: &Model, f: &Formula) -> TruthSet {
    let plan = Plan::new(&m.space, f);
    let points = plan.eval_valuation(&m.valuation).pop().expect("root");
    TruthSet { formula: f.clone(), points }
}

/// Truth sets for every subformula of `f`, children first.
pub fn truthsets(m: &Model, f: &Formula) -> Vec<TruthSet> {
    let plan = Plan::new(&m.space, f);
    plan.subformulas()
        .iter()
        .zip(plan.eval_valuation(&m.valuation))
        .map(|(g, points)| TruthSet { formula: (*g).clone(), points })
        .collect()
}

pub fn holds(m: &Model, w: &str, f: &Formula) -> Result<bool, Error> {
    let i = m.space.index_of(w)?;
    Ok(truthset(m, f).points.contains(i))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeKind {
    Stability,
    Plausibility,
}

/// Threshold radius at which a graded modality switches truth value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub kind: DegreeKind,
    /// `None` when no radius makes the modality true.
    pub threshold: Option<Grade>,
    pub attained: bool,
    /// `1 - threshold` for plausibility reports whose threshold is at most 1.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_level")]
    pub level: Option<BigRational>,
}

fn ser_level<S: serde::Serializer>(l: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match l {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

impl DegreeReport {
    /// Whether the modality of this report holds at radius `eps`.
    pub fn admits(&self, eps: &Grade) -> bool {
        match (&self.threshold, self.kind) {
            (None, _) => false,
            (Some(t), DegreeKind::Stability) => {
                if self.attained {
                    eps <= t
                } else {
                    eps < t
                }
            }
            (Some(t), DegreeKind::Plausibility) => eps >= t,
        }
    }
}

fn nearest(space: &UltrametricSpace, w: usize, set: &PointSet) -> Option<Grade> {
    set.iter().map(|v| space.distance(w, v)).min().cloned()
}

/// `[eps]f` holds at `w` exactly for `eps` strictly below the distance to
/// the nearest world refuting `f`. If `f` holds everywhere the threshold is
/// 1 and attained.
pub fn stability_degree(m: &Model, w: &str, f: &Formula) -> Result<DegreeReport, Error> {
    let wi = m.space.index_of(w)?;
    let truth = truthset(m, f).points;
    let (threshold, attained) = if !truth.contains(wi) {
        (None, false)
    } else {
        match nearest(&m.space, wi, &truth.complement()) {
            Some(t) => (Some(t), false),
            None => (Some(Grade::one()), true),
        }
    };
    Ok(DegreeReport { kind: DegreeKind::Stability, threshold, attained, level: None })
}

/// `<eps>f` holds at `w` exactly for `eps` at or above the distance to the
/// nearest world satisfying `f`.
pub fn plausibility_degree(m: &Model, w: &str, f: &Formula) -> Result<DegreeReport, Error> {
    let wi = m.space.index_of(w)?;
    let truth = truthset(m, f).points;
    let threshold = nearest(&m.space, wi, &truth);
    let level = threshold.as_ref().filter(|t| t.is_unit()).map(Grade::complement);
    Ok(DegreeReport {
        kind: DegreeKind::Plausibility,
        attained: threshold.is_some(),
        threshold,
        level,
    })
}
