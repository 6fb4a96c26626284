//! Finite ultra-metric spaces.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::Error;
use crate::grade::Grade;
use crate::pointset::PointSet;

/// A finite point set with an exact distance matrix.
///
/// Construction only checks shape and naming; the metric axioms are
/// checked by [`UltrametricSpace::validate`], so non-ultra spaces can still
/// be built and evaluated against.
#[derive(Clone, PartialEq, Eq)]
pub struct UltrametricSpace {
    points: Vec<String>,
    index: HashMap<String, usize>,
    dist: Vec<Grade>,
    /// Realized distances, ascending and deduplicated.
    levels: Vec<Grade>,
    /// `rank[x*n+y]` is the position of `d(x,y)` in `levels`.
    rank: Vec<u32>,
}

impl fmt::Debug for UltrametricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UltrametricSpace")
            .field("points", &self.points)
            .field("levels", &self.levels)
            .finish()
    }
}

/// One violated metric axiom together with its first witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    /// `d(x,x) != 0`.
    SelfDistance { x: String, distance: Grade },
    /// `d(x,y) = 0` for distinct points.
    Indiscernible { x: String, y: String },
    Symmetry { x: String, y: String, forward: Grade, backward: Grade },
    /// `d(x,y) > max(d(x,z), d(y,z))`.
    StrongTriangle { x: String, y: String, z: String, xy: Grade, xz: Grade, yz: Grade },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| match v {
                Violation::SelfDistance { x, distance } => format!("d({x},{x}) = {distance} != 0"),
                Violation::Indiscernible { x, y } => format!("d({x},{y}) = 0 for distinct points"),
                Violation::Symmetry { x, y, forward, backward } => {
                    format!("d({x},{y}) = {forward} but d({y},{x}) = {backward}")
                }
                Violation::StrongTriangle { x, y, z, xy, xz, yz } => format!(
                    "d({x},{y}) = {xy} > max(d({x},{z}) = {xz}, d({y},{z}) = {yz})"
                ),
            })
            .collect();
        f.write_str(&parts.join("; "))
    }
}

impl UltrametricSpace {
    /// Build from point names and a row-major distance matrix.
    pub fn new(points: Vec<String>, matrix: Vec<Vec<Grade>>) -> Result<Self, Error> {
        let n = points.len();
        if n == 0 {
            return Err(Error::Space("a space needs at least one point".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(Error::Space(format!("duplicate point name `{p}`")));
            }
        }
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::Space(format!("distance matrix must be {n}x{n}")));
        }
        let dist: Vec<Grade> = matrix.into_iter().flatten().collect();
        let mut levels = dist.clone();
        levels.sort();
        levels.dedup();
        let rank = dist
            .iter()
            .map(|d| levels.binary_search(d).expect("level present") as u32)
            .collect();
        Ok(UltrametricSpace { points, index, dist, levels, rank })
    }

    /// Build from a distance function over indices.
    pub fn from_fn(points: Vec<String>, d: impl Fn(usize, usize) -> Grade) -> Result<Self, Error> {
        let n = points.len();
        let matrix = (0..n).map(|i| (0..n).map(|j| d(i, j)).collect()).collect();
        UltrametricSpace::new(points, matrix)
    }

    /// Points labelled by event histories; `d(x,y) = 2^-n` where `n` is
    /// the 1-based first position at which the histories differ.
    pub fn from_sequences(points: Vec<String>, sequences: &[String]) -> Result<Self, Error> {
        if sequences.len() != points.len() {
            return Err(Error::Space("one sequence per point required".into()));
        }
        for s in sequences {
            if s.is_empty() || !s.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(Error::Space(format!("`{s}` is not a non-empty binary string")));
            }
        }
        let width = sequences[0].len();
        if sequences.iter().any(|s| s.len() != width) {
            return Err(Error::Space("all sequences must have the same length".into()));
        }
        UltrametricSpace::from_fn(points, |i, j| {
            match sequences[i].bytes().zip(sequences[j].bytes()).position(|(a, b)| a != b) {
                Some(k) => Grade::dyadic(k as u32 + 1),
                None => Grade::zero(),
            }
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn name(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, Error> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    pub fn distance(&self, x: usize, y: usize) -> &Grade {
        &self.dist[x * self.len() + y]
    }

    pub fn rank(&self, x: usize, y: usize) -> usize {
        self.rank[x * self.len() + y] as usize
    }

    /// Sorted, deduplicated set of all pairwise distances (including 0).
    pub fn realized_distances(&self) -> &[Grade] {
        &self.levels
    }

    /// Number of realized distances that are `<= eps`.
    pub fn levels_within(&self, eps: &Grade) -> usize {
        self.levels.partition_point(|l| l <= eps)
    }

    /// Closed ball `{y : d(x,y) <= eps}`.
    pub fn ball(&self, x: usize, eps: &Grade) -> PointSet {
        self.ball_at_level(x, self.levels_within(eps))
    }

    /// Ball made of points whose distance rank is below `count`.
    pub fn ball_at_level(&self, x: usize, count: usize) -> PointSet {
        let n = self.len();
        PointSet::from_indices(n, (0..n).filter(|&y| self.rank(x, y) < count))
    }

    pub fn ball_named(&self, x: &str, eps: &Grade) -> Result<PointSet, Error> {
        Ok(self.ball(self.index_of(x)?, eps))
    }

    pub fn names_of<'a>(&'a self, set: &'a PointSet) -> impl Iterator<Item = &'a str> + 'a {
        set.iter().map(move |i| self.name(i))
    }

    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<PointSet, Error> {
        let mut s = PointSet::empty(self.len());
        for n in names {
            s.insert(self.index_of(n.as_ref())?);
        }
        Ok(s)
    }

    /// Check the ultra-metric axioms; each violated axiom is listed once
    /// with the first witness in index order.
    pub fn validate(&self) -> ValidationReport {
        let n = self.len();
        let d = |i: usize, j: usize| self.distance(i, j);
        let name = |i: usize| self.points[i].clone();
        let mut violations = Vec::new();
        if let Some(x) = (0..n).find(|&x| !d(x, x).is_zero()) {
            violations.push(Violation::SelfDistance { x: name(x), distance: d(x, x).clone() });
        }
        let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
        if let Some((x, y)) = pairs().find(|&(x, y)| x != y && d(x, y).is_zero()) {
            violations.push(Violation::Indiscernible { x: name(x), y: name(y) });
        }
        if let Some((x, y)) = pairs().find(|&(x, y)| d(x, y) != d(y, x)) {
            violations.push(Violation::Symmetry {
                x: name(x),
                y: name(y),
                forward: d(x, y).clone(),
                backward: d(y, x).clone(),
            });
        }
        let triple = pairs().find_map(|(x, y)| {
            (0..n)
                .find(|&z| self.rank(x, y) > self.rank(x, z).max(self.rank(y, z)))
                .map(|z| (x, y, z))
        });
        if let Some((x, y, z)) = triple {
            violations.push(Violation::StrongTriangle {
                x: name(x),
                y: name(y),
                z: name(z),
                xy: d(x, y).clone(),
                xz: d(x, z).clone(),
                yz: d(y, z).clone(),
            });
        }
        ValidationReport { violations }
    }

    /// Restrict to the points of `keep`, preserving order.
    pub fn restrict(&self, keep: &PointSet) -> Result<UltrametricSpace, Error> {
        let idx: Vec<usize> = keep.iter().collect();
        let points = idx.iter().map(|&i| self.points[i].clone()).collect();
        UltrametricSpace::from_fn(points, |a, b| self.distance(idx[a], idx[b]).clone())
    }
}

/// Binary history of the `i`-th point of a depth-`depth` Cantor tree, where
/// index 0 is the all-ones history and the last index is all zeros.
pub fn cantor_history(depth: u32, i: usize) -> String {
    let v = (1usize << depth) - 1 - i;
    format!("{v:0width$b}", width = depth as usize)
}

/// Depth-`depth` truncation of the Cantor space, points named by their
/// binary histories, starting with `11..1`.
pub fn cantor_space(depth: u32) -> Result<UltrametricSpace, Error> {
    let seqs = cantor_sequences(depth)?;
    UltrametricSpace::from_sequences(seqs.clone(), &seqs)
}

/// The same space with points named `w0 .. w{2^depth - 1}`; returns the
/// histories alongside.
pub fn cantor_worlds(depth: u32) -> Result<(UltrametricSpace, Vec<String>), Error> {
    let seqs = cantor_sequences(depth)?;
    let names = (0..seqs.len()).map(|i| format!("w{i}")).collect();
    Ok((UltrametricSpace::from_sequences(names, &seqs)?, seqs))
}

/// Largest depth accepted by the Cantor constructors.
pub const MAX_CANTOR_DEPTH: u32 = 16;

fn cantor_sequences(depth: u32) -> Result<Vec<String>, Error> {
    if depth == 0 {
        return Err(Error::Space("Cantor depth must be at least 1".into()));
    }
    if depth > MAX_CANTOR_DEPTH {
        return Err(Error::Space(format!("Cantor depth {depth} exceeds {MAX_CANTOR_DEPTH}")));
    }
    Ok((0..1usize << depth).map(|i| cantor_history(depth, i)).collect())
}
