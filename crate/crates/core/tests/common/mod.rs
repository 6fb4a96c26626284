//! Reference implementations computed straight from the definitions, with
//! no ball tables, ranks or compiled plans.
#![allow(dead_code)]

use ultramodal::{Formula, Grade, Model, PointSet, UltrametricSpace};

pub fn interior(s: &UltrametricSpace, a: &PointSet, eps: &Grade) -> PointSet {
    let n = s.len();
    PointSet::from_indices(n, (0..n).filter(|&x| (0..n).all(|y| s.distance(x, y) > eps || a.contains(y))))
}

pub fn closure(s: &UltrametricSpace, a: &PointSet, eps: &Grade) -> PointSet {
    let n = s.len();
    PointSet::from_indices(n, (0..n).filter(|&x| (0..n).any(|y| s.distance(x, y) <= eps && a.contains(y))))
}

/// Satisfaction by recursion on the formula, one world at a time.
pub fn sat(m: &Model, w: usize, f: &Formula) -> bool {
    let n = m.space.len();
    match f {
        Formula::Atom(p) => m.valuation.get(p).is_some_and(|s| s.contains(w)),
        Formula::Not(a) => !sat(m, w, a),
        Formula::And(a, b) => sat(m, w, a) && sat(m, w, b),
        Formula::Or(a, b) => sat(m, w, a) || sat(m, w, b),
        Formula::Implies(a, b) => !sat(m, w, a) || sat(m, w, b),
        Formula::Necessity(e, a) => (0..n).all(|v| m.space.distance(w, v) > e || sat(m, v, a)),
        Formula::Possibility(e, a) => (0..n).any(|v| m.space.distance(w, v) <= e && sat(m, v, a)),
    }
}

pub fn grade(s: &str) -> Grade {
    s.parse().unwrap()
}

/// The non-ultra metric triangle with d(a,b) = d(b,c) = 1/2 and d(a,c) = 1.
pub fn triangle() -> UltrametricSpace {
    let h = grade("1/2");
    let z = Grade::zero();
    UltrametricSpace::new(
        vec!["a".into(), "b".into(), "c".into()],
        vec![
            vec![z.clone(), h.clone(), Grade::one()],
            vec![h.clone(), z.clone(), h.clone()],
            vec![Grade::one(), h, z],
        ],
    )
    .unwrap()
}
