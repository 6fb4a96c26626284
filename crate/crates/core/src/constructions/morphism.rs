use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::Error;
use crate::grade::Grade;
use crate::model::Model;
use crate::space::UltrametricSpace;

/// A total map between point sets together with a positive scaling
/// constant `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMap {
    images: Vec<usize>,
    k: Grade,
}

impl PointMap {
    pub fn new(images: Vec<usize>, k: Grade) -> Result<Self, Error> {
        if k.is_zero() {
            return Err(Error::NonPositiveScale);
        }
        Ok(PointMap { images, k })
    }

    pub fn identity(n: usize) -> Self {
        PointMap { images: (0..n).collect(), k: Grade::one() }
    }

    pub fn from_names(
        src: &UltrametricSpace,
        tgt: &UltrametricSpace,
        map: &BTreeMap<String, String>,
        k: Grade,
    ) -> Result<Self, Error> {
        if let Some(extra) = map.keys().find(|p| src.index_of(p).is_err()) {
            return Err(Error::UnknownPoint(extra.clone()));
        }
        let images = src
            .points()
            .iter()
            .map(|p| match map.get(p) {
                Some(t) => tgt.index_of(t),
                None => Err(Error::NonTotalMap(p.clone())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        PointMap::new(images, k)
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn k(&self) -> &Grade {
        &self.k
    }

    fn check_shape(&self, src: &UltrametricSpace, tgt: &UltrametricSpace) -> Result<(), Error> {
        if self.images.len() != src.len() {
            let missing = src.points().get(self.images.len()).cloned().unwrap_or_default();
            return Err(Error::NonTotalMap(missing));
        }
        if let Some(&bad) = self.images.iter().find(|&&j| j >= tgt.len()) {
            return Err(Error::UnknownPoint(format!("target index {bad}")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtomWitness {
    pub atom: String,
    pub world: String,
    pub source_value: bool,
    pub image_value: bool,
}

/// `d'(f(w), f(v)) > k * d(w, v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForwardWitness {
    pub w: String,
    pub v: String,
    pub source_distance: Grade,
    pub image_distance: Grade,
}

/// `d'(f(w), target) <= radius` but no preimage of `target` lies within
/// `radius / k` of `w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BackWitness {
    pub w: String,
    pub target: String,
    pub radius: Grade,
    pub bound: Grade,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismVerdict {
    pub accepted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub atoms_ok: Option<bool>,
    pub forward_ok: bool,
    pub back_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub atom_witness: Option<AtomWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forward_witness: Option<ForwardWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub back_witness: Option<BackWitness>,
}

fn forward_witness(src: &UltrametricSpace, tgt: &UltrametricSpace, pm: &PointMap) -> Option<ForwardWitness> {
    let n = src.len();
    (0..n).flat_map(|w| (0..n).map(move |v| (w, v))).find_map(|(w, v)| {
        let d = src.distance(w, v);
        let d2 = tgt.distance(pm.image(w), pm.image(v));
        (d2 > &pm.k.mul(d)).then(|| ForwardWitness {
            w: src.name(w).into(),
            v: src.name(v).into(),
            source_distance: d.clone(),
            image_distance: d2.clone(),
        })
    })
}

// The back condition for every radius at or above d'(f(w), v') is implied by
// the one at exactly that distance, so each (w, v') is checked once.
fn back_witness(src: &UltrametricSpace, tgt: &UltrametricSpace, pm: &PointMap) -> Option<BackWitness> {
    let n = src.len();
    (0..n).flat_map(|w| (0..tgt.len()).map(move |t| (w, t))).find_map(|(w, t)| {
        let radius = tgt.distance(pm.image(w), t);
        let bound = radius.div(&pm.k);
        let ok = (0..n).any(|v| pm.image(v) == t && src.distance(w, v) <= &bound);
        (!ok).then(|| BackWitness {
            w: src.name(w).into(),
            target: tgt.name(t).into(),
            radius: radius.clone(),
            bound,
        })
    })
}

/// Forward and back conditions between two spaces.
pub fn check_frame_morphism(
    src: &UltrametricSpace,
    tgt: &UltrametricSpace,
    pm: &PointMap,
) -> Result<MorphismVerdict, Error> {
    pm.check_shape(src, tgt)?;
    let forward_witness = forward_witness(src, tgt, pm);
    let back_witness = back_witness(src, tgt, pm);
    Ok(MorphismVerdict {
        accepted: forward_witness.is_none() && back_witness.is_none(),
        atoms_ok: None,
        forward_ok: forward_witness.is_none(),
        back_ok: back_witness.is_none(),
        atom_witness: None,
        forward_witness,
        back_witness,
    })
}

/// Frame conditions plus agreement of every atom named by either
/// valuation.
pub fn check_bounded_morphism(src: &Model, tgt: &Model, pm: &PointMap) -> Result<MorphismVerdict, Error> {
    let mut v = check_frame_morphism(&src.space, &tgt.space, pm)?;
    let atoms: BTreeSet<&str> = src.valuation.atoms().chain(tgt.valuation.atoms()).map(|(a, _)| a).collect();
    let n = src.space.len();
    let witness = atoms.iter().find_map(|atom| {
        let a = src.valuation.extension(atom, n);
        let b = tgt.valuation.extension(atom, tgt.space.len());
        (0..n).find(|&w| a.contains(w) != b.contains(pm.image(w))).map(|w| AtomWitness {
            atom: atom.to_string(),
            world: src.space.name(w).into(),
            source_value: a.contains(w),
            image_value: b.contains(pm.image(w)),
        })
    });
    v.atoms_ok = Some(witness.is_none());
    v.accepted &= witness.is_none();
    v.atom_witness = witness;
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BilipschitzReport {
    /// Whether `d/k <= d' <= k*d` holds for the map's own `k`.
    pub holds: bool,
    pub k: Grade,
    /// Smallest `k` for which both inequalities hold.
    pub tightest_k: Grade,
    pub isometry: bool,
}

/// Two-sided distance bounds for a bijective map.
pub fn bilipschitz_bounds(
    src: &UltrametricSpace,
    tgt: &UltrametricSpace,
    pm: &PointMap,
) -> Result<BilipschitzReport, Error> {
    pm.check_shape(src, tgt)?;
    let mut preimage: Vec<Option<usize>> = vec![None; tgt.len()];
    for (i, &j) in pm.images.iter().enumerate() {
        if let Some(prev) = preimage[j] {
            return Err(Error::NotBijective(format!(
                "`{}` and `{}` both map to `{}`",
                src.name(prev),
                src.name(i),
                tgt.name(j)
            )));
        }
        preimage[j] = Some(i);
    }
    if let Some(j) = preimage.iter().position(Option::is_none) {
        return Err(Error::NotBijective(format!("`{}` has no preimage", tgt.name(j))));
    }
    let n = src.len();
    let mut tightest = Grade::one();
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let d = src.distance(x, y);
            let d2 = tgt.distance(pm.image(x), pm.image(y));
            if d.is_zero() || d2.is_zero() {
                return Err(Error::Space("bi-Lipschitz bounds need positive distances between distinct points".into()));
            }
            let ratio = std::cmp::max(d2.div(d), d.div(d2));
            tightest = std::cmp::max(tightest, ratio);
        }
    }
    Ok(BilipschitzReport {
        holds: tightest <= pm.k,
        k: pm.k.clone(),
        isometry: tightest == Grade::one(),
        tightest_k: tightest,
    })
}
