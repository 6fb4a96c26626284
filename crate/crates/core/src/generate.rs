//! Seeded random generators and exhaustive enumerators for spaces,
//! valuations and formulas.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::formula::Formula;
use crate::validity::{instantiate_axiom, Binding, Bindings, Schema};
use crate::grade::Grade;
use crate::model::{Model, Valuation};
use crate::pointset::PointSet;
use crate::space::UltrametricSpace;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Merge heights used by [`random_ultrametric`] unless told otherwise.
pub fn default_heights() -> Vec<Grade> {
    ["1/8", "1/4", "3/8", "1/2", "3/4", "1"].iter().map(|s| s.parse().unwrap()).collect()
}

/// A random ultra-metric on `n` points named `x0..`.
///
/// Clusters are merged pairwise at non-decreasing heights drawn from
/// `heights`; two points end up at the height where their clusters met.
pub fn random_ultrametric<R: Rng>(rng: &mut R, n: usize, heights: &[Grade]) -> UltrametricSpace {
    assert!(n >= 1 && !heights.is_empty());
    let mut merge: Vec<Grade> = (1..n).map(|_| heights.choose(rng).unwrap().clone()).collect();
    merge.sort();
    let mut clusters: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut d = vec![vec![Grade::zero(); n]; n];
    for h in merge {
        let a = rng.gen_range(0..clusters.len());
        let mut b = rng.gen_range(0..clusters.len() - 1);
        if b >= a {
            b += 1;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let right = clusters.swap_remove(hi);
        for &x in &clusters[lo] {
            for &y in &right {
                d[x][y] = h.clone();
                d[y][x] = h.clone();
            }
        }
        clusters[lo].extend(right);
    }
    let names = (0..n).map(|i| format!("x{i}")).collect();
    UltrametricSpace::new(names, d).expect("well-formed matrix")
}

pub fn random_set<R: Rng>(rng: &mut R, n: usize) -> PointSet {
    PointSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)))
}

pub fn random_valuation<R: Rng>(rng: &mut R, n: usize, atoms: &[&str]) -> Valuation {
    let mut v = Valuation::new();
    for a in atoms {
        v.set(*a, random_set(rng, n));
    }
    v
}

pub fn random_model<R: Rng>(rng: &mut R, n: usize, atoms: &[&str]) -> Model {
    let space = random_ultrametric(rng, n, &default_heights());
    let valuation = random_valuation(rng, n, atoms);
    Model::new(space, valuation).expect("sizes agree")
}

/// A random formula of depth at most `depth` using every connective,
/// sugared ones included. Grades are drawn from `grades`.
pub fn random_formula<R: Rng>(rng: &mut R, depth: usize, atoms: &[&str], grades: &[Grade]) -> Formula {
    if depth == 0 || rng.gen_ratio(1, 5) {
        return Formula::atom(*atoms.choose(rng).unwrap());
    }
    let sub = |rng: &mut R| random_formula(rng, depth - 1, atoms, grades);
    let grade = |rng: &mut R| grades.choose(rng).unwrap().clone();
    match rng.gen_range(0..7) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        3 => Formula::implies(sub(rng), sub(rng)),
        4 | 5 => {
            let g = grade(rng);
            Formula::necessity(g, sub(rng))
        }
        _ => {
            let g = grade(rng);
            Formula::possibility(g, sub(rng))
        }
    }
}

/// Grades in `[0,1]` realized by `space`.
pub fn unit_grades(space: &UltrametricSpace) -> Vec<Grade> {
    space.realized_distances().iter().filter(|g| g.is_unit()).cloned().collect()
}

/// A random instance of `schema` with metavariables bound to formulas of
/// depth at most `depth` and grades drawn from `grades`.
pub fn random_axiom_instance<R: Rng>(
    rng: &mut R,
    schema: Schema,
    depth: usize,
    atoms: &[&str],
    grades: &[Grade],
) -> Formula {
    let mut b = Bindings::new();
    for v in schema.formula_vars() {
        b.insert(v.to_string(), Binding::Formula(random_formula(rng, depth, atoms, grades)));
    }
    let mut gs: Vec<Grade> = schema.grade_vars().iter().map(|_| grades.choose(rng).unwrap().clone()).collect();
    if schema.family() == Schema::UM3 {
        gs.sort_by(|a, b| b.cmp(a));
    }
    for (v, g) in schema.grade_vars().iter().zip(gs) {
        b.insert(v.to_string(), Binding::Grade(g));
    }
    instantiate_axiom(schema, &b).expect("bindings complete and side conditions met")
}

/// Every ultra-metric on `n` labelled points whose non-zero distances come
/// from `values` (ascending, positive). Points are named `x0..`.
pub fn enumerate_ultrametrics(n: usize, values: &[Grade]) -> Vec<UltrametricSpace> {
    assert!(n >= 1);
    assert!(values.windows(2).all(|w| w[0] < w[1]) && !values[0].is_zero());
    // Grow one point at a time: a new row is admissible iff every triangle
    // through the new point satisfies the strong inequality.
    let mut partial: Vec<Vec<Vec<usize>>> = vec![vec![vec![0]]];
    for size in 1..n {
        let mut next = Vec::new();
        for m in &partial {
            let mut row = vec![1usize; size];
            loop {
                let ok = (0..size).all(|a| {
                    (0..size).all(|b| {
                        let (da, db, dab) = (row[a], row[b], m[a][b]);
                        dab <= da.max(db) && da <= dab.max(db) && db <= dab.max(da)
                    })
                });
                if ok {
                    let mut g = m.clone();
                    for (a, r) in g.iter_mut().enumerate() {
                        r.push(row[a]);
                    }
                    let mut last = row.clone();
                    last.push(0);
                    g.push(last);
                    next.push(g);
                }
                // odometer over 1..=values.len(); index 0 stands for d(x,x)
                match row.iter().position(|&r| r < values.len()) {
                    Some(i) => {
                        row[i] += 1;
                        row[..i].fill(1);
                    }
                    None => break,
                }
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|m| {
            let names = (0..n).map(|i| format!("x{i}")).collect();
            UltrametricSpace::from_fn(names, |i, j| {
                if m[i][j] == 0 {
                    Grade::zero()
                } else {
                    values[m[i][j] - 1].clone()
                }
            })
            .expect("square")
        })
        .collect()
}

/// All formulas of depth at most `depth` built from `atoms` with `~`, `&`,
/// `[g]` and `<g>` for `g` in `grades`.
pub fn enumerate_formulas(depth: usize, atoms: &[&str], grades: &[Grade]) -> Vec<Formula> {
    let mut all: Vec<Formula> = atoms.iter().map(|a| Formula::atom(*a)).collect();
    let mut frontier_start = 0;
    for _ in 0..depth {
        let prev = all.clone();
        let fresh_from = frontier_start;
        frontier_start = all.len();
        // at least one child must come from the newest layer so nothing repeats
        let is_new = |i: usize| i >= fresh_from;
        for (i, a) in prev.iter().enumerate() {
            if !is_new(i) {
                continue;
            }
            all.push(Formula::not(a.clone()));
            for g in grades {
                all.push(Formula::necessity(g.clone(), a.clone()));
                all.push(Formula::possibility(g.clone(), a.clone()));
            }
        }
        for (i, a) in prev.iter().enumerate() {
            for (j, b) in prev.iter().enumerate() {
                if is_new(i) || is_new(j) {
                    all.push(Formula::and(a.clone(), b.clone()));
                }
            }
        }
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_spaces_are_ultrametric() {
        let mut r = rng(7);
        for n in 1..=12 {
            for _ in 0..20 {
                let s = random_ultrametric(&mut r, n, &default_heights());
                assert!(s.validate().is_valid());
            }
        }
    }

    #[test]
    fn ultrametric_enumeration_counts() {
        let vals = default_heights()[..2].to_vec();
        // n = 2: one distance, 2 choices
        assert_eq!(enumerate_ultrametrics(2, &vals).len(), 2);
        // n = 3: brute force over 2^3 matrices, keep the valid ones
        let brute = (0..8u32)
            .filter(|code| {
                let v = |b: u32| vals[(code >> b & 1) as usize].clone();
                let (ab, bc, ac) = (v(0), v(1), v(2));
                ab <= std::cmp::max(ac.clone(), bc.clone())
                    && bc <= std::cmp::max(ab.clone(), ac.clone())
                    && ac <= std::cmp::max(ab, bc)
            })
            .count();
        let spaces = enumerate_ultrametrics(3, &vals);
        assert_eq!(spaces.len(), brute);
        assert!(spaces.iter().all(|s| s.validate().is_valid()));
        assert_eq!(enumerate_ultrametrics(1, &vals).len(), 1);
    }

    #[test]
    fn formula_enumeration_has_no_duplicates() {
        let grades = [Grade::zero(), Grade::one()];
        let fs = enumerate_formulas(2, &["p"], &grades);
        // depth <= 1: p, ~p, [0]p, <0>p, [1]p, <1>p, p & p
        assert_eq!(enumerate_formulas(1, &["p"], &grades).len(), 7);
        let n1 = 7;
        assert_eq!(fs.len(), n1 + (n1 - 1) * 5 + (n1 * n1 - 1));
        let set: std::collections::HashSet<_> = fs.iter().collect();
        assert_eq!(set.len(), fs.len());
        assert!(fs.iter().all(|f| f.depth() <= 2));
    }

    #[test]
    fn deterministic_under_seed() {
        let f = |seed| {
            let mut r = rng(seed);
            random_formula(&mut r, 4, &["p", "q"], &default_heights())
        };
        assert_eq!(f(3), f(3));
    }
}
