//! The tree of closed balls of a finite ultra-metric space.
//!
//! Any two balls are either disjoint or nested, so the distinct balls
//! ordered by inclusion form a rooted tree whose leaves are the points.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::grade::Grade;
use crate::pointset::PointSet;
use crate::space::UltrametricSpace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallNode {
    pub members: PointSet,
    /// Largest distance inside the ball.
    pub diameter: Grade,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dendrogram {
    /// Preorder: the root first, children ordered by their first member.
    pub nodes: Vec<BallNode>,
}

fn diameter(space: &UltrametricSpace, members: &PointSet) -> Grade {
    let first = members.first().expect("balls are non-empty");
    // every member is a center, so distances from one member suffice
    members.iter().map(|y| space.distance(first, y).clone()).max().unwrap_or_else(Grade::zero)
}

impl Dendrogram {
    pub fn new(space: &UltrametricSpace) -> Dendrogram {
        let n = space.len();
        let levels = space.realized_distances().len();
        let mut balls: BTreeMap<Vec<usize>, PointSet> = BTreeMap::new();
        for x in 0..n {
            for count in 1..=levels {
                let b = space.ball_at_level(x, count);
                balls.entry(b.iter().collect()).or_insert(b);
            }
        }
        let mut all: Vec<PointSet> = balls.into_values().collect();
        // larger balls first; among equals, by first member
        all.sort_by_key(|b| (std::cmp::Reverse(b.count()), b.first()));

        let parent_of = |i: usize| -> Option<usize> {
            (0..i).rev().find(|&j| all[j].count() > all[i].count() && all[i].is_subset(&all[j]))
        };
        let parents: Vec<Option<usize>> = (0..all.len()).map(parent_of).collect();

        let mut kids: Vec<Vec<usize>> = vec![Vec::new(); all.len()];
        for (i, p) in parents.iter().enumerate() {
            if let Some(p) = p {
                kids[*p].push(i);
            }
        }
        for k in &mut kids {
            k.sort_by_key(|&c| all[c].first());
        }

        let mut order = Vec::with_capacity(all.len());
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            order.push(i);
            stack.extend(kids[i].iter().rev());
        }
        let mut renumber = vec![0; all.len()];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = new;
        }
        let nodes = order
            .iter()
            .map(|&old| BallNode {
                members: all[old].clone(),
                diameter: diameter(space, &all[old]),
                parent: parents[old].map(|p| renumber[p]),
                children: kids[old].iter().map(|&c| renumber[c]).collect(),
            })
            .collect();
        Dendrogram { nodes }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn leaves(&self) -> impl Iterator<Item = &BallNode> {
        self.nodes.iter().filter(|b| b.children.is_empty())
    }

    /// Number of nodes on the longest root-to-leaf path.
    pub fn height(&self) -> usize {
        let mut depth = vec![1; self.nodes.len()];
        for i in 1..self.nodes.len() {
            depth[i] = depth[self.nodes[i].parent.expect("non-root")] + 1;
        }
        depth.into_iter().max().unwrap_or(0)
    }

    pub fn to_dot(&self, space: &UltrametricSpace) -> String {
        let mut out = String::from("digraph balls {\n  node [shape=box];\n");
        for (i, b) in self.nodes.iter().enumerate() {
            let label = if b.members.count() == 1 {
                space.name(b.members.first().unwrap()).to_string()
            } else {
                format!("d={}", b.diameter)
            };
            let members: Vec<&str> = space.names_of(&b.members).collect();
            writeln!(out, "  n{i} [label=\"{label}\", tooltip=\"{}\"];", members.join(" ")).unwrap();
        }
        for (i, b) in self.nodes.iter().enumerate() {
            for c in &b.children {
                writeln!(out, "  n{i} -> n{c};").unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}
