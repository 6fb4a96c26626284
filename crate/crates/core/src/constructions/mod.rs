//! Model constructions that preserve validity: disjoint unions,
//! ball-generated subspaces and bounded morphisms.

pub mod harness;
mod morphism;

pub use morphism::{
    bilipschitz_bounds, check_bounded_morphism, check_frame_morphism, BackWitness, BilipschitzReport,
    ForwardWitness, AtomWitness, MorphismVerdict, PointMap,
};

use crate::error::Error;
use crate::grade::Grade;
use crate::model::{Model, Valuation};
use crate::pointset::PointSet;
use crate::space::UltrametricSpace;

/// Name of point `name` of component `i` inside a disjoint union.
pub fn tagged(i: usize, name: &str) -> String {
    format!("{i}:{name}")
}

/// Disjoint union of spaces: distances inside a component are kept, points
/// of different components are at distance exactly 2.
pub fn disjoint_union_spaces(spaces: &[&UltrametricSpace]) -> Result<UltrametricSpace, Error> {
    if spaces.is_empty() {
        return Err(Error::Space("disjoint union of no spaces".into()));
    }
    let owner: Vec<(usize, usize)> = spaces
        .iter()
        .enumerate()
        .flat_map(|(c, s)| (0..s.len()).map(move |i| (c, i)))
        .collect();
    let names = owner.iter().map(|&(c, i)| tagged(c, spaces[c].name(i))).collect();
    UltrametricSpace::from_fn(names, |a, b| {
        let ((ca, ia), (cb, ib)) = (owner[a], owner[b]);
        if ca == cb {
            spaces[ca].distance(ia, ib).clone()
        } else {
            Grade::sentinel()
        }
    })
}

/// Disjoint union of models; each atom is true on the union of its
/// component extensions.
pub fn disjoint_union(models: &[Model]) -> Result<Model, Error> {
    let spaces: Vec<&UltrametricSpace> = models.iter().map(|m| &m.space).collect();
    let space = disjoint_union_spaces(&spaces)?;
    let n = space.len();
    let mut valuation = Valuation::new();
    let mut offset = 0;
    for m in models {
        for (atom, set) in m.valuation.atoms() {
            let shifted = PointSet::from_indices(n, set.iter().map(|i| i + offset));
            let merged = valuation.extension(atom, n).union(&shifted);
            valuation.set(atom, merged);
        }
        offset += m.space.len();
    }
    Model::new(space, valuation)
}

/// Index in the union of point `i` of component `c`.
pub fn union_index(models: &[Model], c: usize, i: usize) -> usize {
    models[..c].iter().map(|m| m.space.len()).sum::<usize>() + i
}

/// The closed ball `B_eps(x)` with restricted distances and valuation.
pub fn epsilon_subspace(m: &Model, x: &str, eps: &Grade) -> Result<Model, Error> {
    let ball = m.space.ball_named(x, eps)?;
    epsilon_subspace_of(m, &ball)
}

fn epsilon_subspace_of(m: &Model, ball: &PointSet) -> Result<Model, Error> {
    let space = m.space.restrict(ball)?;
    let idx: Vec<usize> = ball.iter().collect();
    let mut valuation = Valuation::new();
    for (atom, set) in m.valuation.atoms() {
        let restricted = PointSet::from_indices(
            idx.len(),
            idx.iter().enumerate().filter(|(_, &i)| set.contains(i)).map(|(k, _)| k),
        );
        valuation.set(atom, restricted);
    }
    Model::new(space, valuation)
}

/// Subspace generated by point index `x`, for callers working in indices.
pub fn epsilon_subspace_at(m: &Model, x: usize, eps: &Grade) -> Result<Model, Error> {
    epsilon_subspace_of(m, &m.space.ball(x, eps))
}
