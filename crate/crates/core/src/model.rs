use std::collections::BTreeMap;

use crate::error::Error;
use crate::pointset::PointSet;
use crate::space::UltrametricSpace;

/// Atom name to the set of points where it is true. Atoms not present are
/// false everywhere.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Valuation {
    atoms: BTreeMap<String, PointSet>,
}

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, atom: impl Into<String>, points: PointSet) {
        self.atoms.insert(atom.into(), points);
    }

    pub fn get(&self, atom: &str) -> Option<&PointSet> {
        self.atoms.get(atom)
    }

    pub fn extension(&self, atom: &str, universe: usize) -> PointSet {
        self.atoms.get(atom).cloned().unwrap_or_else(|| PointSet::empty(universe))
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&str, &PointSet)> {
        self.atoms.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Build from point names, rejecting names not in `space`.
    pub fn from_names<S: AsRef<str>>(
        space: &UltrametricSpace,
        entries: impl IntoIterator<Item = (String, Vec<S>)>,
    ) -> Result<Self, Error> {
        let mut v = Valuation::new();
        for (atom, pts) in entries {
            v.set(atom, space.set_of(&pts)?);
        }
        Ok(v)
    }

    pub fn to_names(&self, space: &UltrametricSpace) -> BTreeMap<String, Vec<String>> {
        self.atoms
            .iter()
            .map(|(a, s)| (a.clone(), space.names_of(s).map(str::to_string).collect()))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Model {
    pub space: UltrametricSpace,
    pub valuation: Valuation,
}

impl Model {
    pub fn new(space: UltrametricSpace, valuation: Valuation) -> Result<Self, Error> {
        for (atom, set) in valuation.atoms() {
            if set.universe() != space.len() {
                return Err(Error::Space(format!(
                    "valuation of `{atom}` is over {} points, space has {}",
                    set.universe(),
                    space.len()
                )));
            }
        }
        Ok(Model { space, valuation })
    }

    pub fn bare(space: UltrametricSpace) -> Self {
        Model { space, valuation: Valuation::new() }
    }
}
