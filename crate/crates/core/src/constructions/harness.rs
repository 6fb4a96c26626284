//! Seeded empirical checks that satisfaction and validity survive disjoint
//! unions, ball-generated subspaces and bounded morphisms.
//!
//! Every random choice flows from `HarnessConfig::seed`, so a config always
//! produces the same report.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{
    check_bounded_morphism, disjoint_union, disjoint_union_spaces, epsilon_subspace_at, union_index, PointMap,
};
use crate::error::Error;
use crate::formula::Formula;
use crate::generate::{
    random_axiom_instance, random_formula, random_model, random_set, rng, unit_grades, Rng64,
};
use crate::grade::Grade;
use crate::model::{Model, Valuation};
use crate::pointset::PointSet;
use crate::semantics::{truthset, Plan};
use crate::space::{cantor_space, UltrametricSpace};
use crate::validity::{valid_in_model, Schema};

use rand::Rng;

const ATOMS: [&str; 2] = ["p", "q"];
const VALIDITY_CAP: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HarnessConfig {
    pub seed: u64,
    /// Random formulas per model pair or morphism.
    pub formula_samples: usize,
    pub formula_depth: usize,
    /// Largest component in random disjoint unions.
    pub component_points: usize,
    /// Number of random component pairs for the union check.
    pub union_trials: usize,
    /// Random instances drawn per axiom schema for the validity checks.
    pub instances_per_schema: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            seed: 0,
            formula_samples: 100,
            formula_depth: 3,
            component_points: 4,
            union_trials: 10,
            instances_per_schema: 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub samples: usize,
    pub discrepancies: usize,
    pub first_witness: Option<Value>,
}

impl PropertyReport {
    fn new(name: &str) -> Self {
        PropertyReport { name: name.into(), samples: 0, discrepancies: 0, first_witness: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.samples += 1;
        if !ok {
            self.discrepancies += 1;
            if self.first_witness.is_none() {
                self.first_witness = Some(witness());
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HarnessReport {
    pub config: HarnessConfig,
    pub properties: Vec<PropertyReport>,
    pub notes: Vec<String>,
}

impl HarnessReport {
    pub fn discrepancies(&self) -> usize {
        self.properties.iter().map(|p| p.discrepancies).sum()
    }

    pub fn property(&self, name: &str) -> Option<&PropertyReport> {
        self.properties.iter().find(|p| p.name == name)
    }
}

fn grades_of(spaces: &[&UltrametricSpace]) -> Vec<Grade> {
    let mut g: Vec<Grade> = spaces.iter().flat_map(|s| unit_grades(s)).collect();
    g.push(Grade::one());
    g.sort();
    g.dedup();
    g
}

/// Satisfaction at every component world is unchanged in the union.
pub fn check_union_satisfaction(
    components: &[Model],
    formulas: &[Formula],
    report: &mut PropertyReport,
) -> Result<(), Error> {
    let union = disjoint_union(components)?;
    for f in formulas {
        let whole = truthset(&union, f).points;
        for (c, m) in components.iter().enumerate() {
            let part = truthset(m, f).points;
            for w in 0..m.space.len() {
                let (a, b) = (part.contains(w), whole.contains(union_index(components, c, w)));
                report.record(a == b, || {
                    json!({
                        "formula": f.to_string(),
                        "component": c,
                        "world": m.space.name(w),
                        "in_component": a,
                        "in_union": b,
                    })
                });
            }
        }
    }
    Ok(())
}

/// Candidate formulas for validity transfer: axiom instances over `p`
/// plus random formulas.
fn candidate_formulas(r: &mut Rng64, cfg: &HarnessConfig, grades: &[Grade]) -> Vec<Formula> {
    let mut out = Vec::new();
    for schema in Schema::AXIOMS {
        for _ in 0..cfg.instances_per_schema {
            out.push(random_axiom_instance(r, schema, 1, &["p"], grades));
        }
    }
    for _ in 0..cfg.formula_samples {
        out.push(random_formula(r, 2, &["p"], grades));
    }
    out
}

/// Formulas valid on every component stay valid on their union.
pub fn check_union_validity(
    components: &[&UltrametricSpace],
    formulas: &[Formula],
    report: &mut PropertyReport,
) -> Result<(), Error> {
    let union = disjoint_union_spaces(components)?;
    for f in formulas {
        let mut all_valid = true;
        for c in components {
            all_valid &= valid_in_model(c, f, VALIDITY_CAP)?.valid;
        }
        if !all_valid {
            continue;
        }
        let v = valid_in_model(&union, f, VALIDITY_CAP)?;
        report.record(v.valid, || json!({ "formula": f.to_string(), "counterexample": v.counterexample }));
    }
    Ok(())
}

/// Formulas valid on `space` stay valid on every ball-generated subspace.
pub fn check_subspace_validity(
    space: &UltrametricSpace,
    formulas: &[Formula],
    report: &mut PropertyReport,
) -> Result<(), Error> {
    let bare = Model::bare(space.clone());
    let radii = unit_grades(space);
    for f in formulas {
        if !valid_in_model(space, f, VALIDITY_CAP)?.valid {
            continue;
        }
        for x in 0..space.len() {
            for eps in &radii {
                let sub = epsilon_subspace_at(&bare, x, eps)?;
                let v = valid_in_model(&sub.space, f, VALIDITY_CAP)?;
                report.record(v.valid, || {
                    json!({
                        "formula": f.to_string(),
                        "center": space.name(x),
                        "radius": eps.to_string(),
                        "counterexample": v.counterexample,
                    })
                });
            }
        }
    }
    Ok(())
}

/// Truth transfer along an accepted bounded morphism.
///
/// Non-modal formulas transfer exactly. `<e>φ` at `w` with non-modal `φ`
/// implies `<k*e>φ` at `f(w)`. With `k = 1` every formula transfers in both
/// directions.
pub fn check_morphism_transfer(
    src: &Model,
    tgt: &Model,
    pm: &PointMap,
    formulas: &[Formula],
    report: &mut PropertyReport,
) -> Result<(), Error> {
    let verdict = check_bounded_morphism(src, tgt, pm)?;
    if !verdict.accepted {
        report.record(false, || json!({ "not_a_bounded_morphism": verdict }));
        return Ok(());
    }
    let k = pm.k();
    let unit = *k == Grade::one();
    for f in formulas {
        let n = src.space.len();
        if unit || f.modal_depth() == 0 {
            let a = truthset(src, f).points;
            let b = truthset(tgt, f).points;
            for w in 0..n {
                let (x, y) = (a.contains(w), b.contains(pm.image(w)));
                report.record(x == y, || {
                    json!({ "formula": f.to_string(), "world": src.space.name(w), "source": x, "image": y })
                });
            }
        }
        if let Formula::Possibility(eps, inner) = f {
            let scaled = eps.mul(k);
            if inner.modal_depth() > 0 || !scaled.is_unit() {
                continue;
            }
            let lifted = Formula::possibility(scaled, (**inner).clone());
            let a = truthset(src, f).points;
            let b = truthset(tgt, &lifted).points;
            for w in a.iter() {
                let y = b.contains(pm.image(w));
                report.record(y, || {
                    json!({ "formula": f.to_string(), "lifted": lifted.to_string(), "world": src.space.name(w) })
                });
            }
        }
    }
    Ok(())
}

/// Pull a target valuation back along a map so atom agreement holds.
pub fn pull_back(tgt: &Valuation, pm: &PointMap, src_len: usize, tgt_len: usize) -> Valuation {
    let mut v = Valuation::new();
    for (atom, _) in tgt.atoms() {
        let set = tgt.extension(atom, tgt_len);
        v.set(atom, PointSet::from_indices(src_len, (0..src_len).filter(|&i| set.contains(pm.image(i)))));
    }
    v
}

fn cantor_model(r: &mut Rng64, depth: u32) -> Result<Model, Error> {
    let s = cantor_space(depth)?;
    let n = s.len();
    let mut v = Valuation::new();
    for a in ATOMS {
        v.set(a, random_set(r, n));
    }
    Model::new(s, v)
}

/// The morphisms exercised by the harness: identity, a first-bit swap,
/// last-bit truncation (depth 4 onto depth 3) and a `k = 2` rescaling.
pub fn standard_morphisms(r: &mut Rng64) -> Result<Vec<(String, Model, Model, PointMap)>, Error> {
    let mut out = Vec::new();

    let m = cantor_model(r, 3)?;
    out.push(("identity".to_string(), m.clone(), m.clone(), PointMap::identity(m.space.len())));

    let tgt = cantor_model(r, 2)?;
    let images: Vec<usize> = tgt
        .space
        .points()
        .iter()
        .map(|p| {
            let first = if p.starts_with('1') { '0' } else { '1' };
            tgt.space.index_of(&format!("{first}{}", &p[1..]))
        })
        .collect::<Result<_, _>>()?;
    let pm = PointMap::new(images, Grade::one())?;
    let src = Model::new(tgt.space.clone(), pull_back(&tgt.valuation, &pm, 4, 4))?;
    out.push(("first-bit swap".to_string(), src, tgt, pm));

    let tgt = cantor_model(r, 3)?;
    let src_space = cantor_space(4)?;
    let images: Vec<usize> = src_space
        .points()
        .iter()
        .map(|p| tgt.space.index_of(&p[..p.len() - 1]))
        .collect::<Result<_, _>>()?;
    let pm = PointMap::new(images, Grade::one())?;
    let src = Model::new(src_space, pull_back(&tgt.valuation, &pm, 16, 8))?;
    out.push(("last-bit truncation".to_string(), src, tgt, pm));

    let src = cantor_model(r, 3)?;
    let two = Grade::from_int(2);
    let doubled = UltrametricSpace::from_fn(src.space.points().to_vec(), |i, j| src.space.distance(i, j).mul(&two))?;
    let pm = PointMap::new((0..src.space.len()).collect(), two)?;
    let tgt = Model::new(doubled, src.valuation.clone())?;
    out.push(("rescale by 2".to_string(), src, tgt, pm));

    Ok(out)
}

pub fn run(cfg: &HarnessConfig) -> Result<HarnessReport, Error> {
    let mut r = rng(cfg.seed);
    let mut properties = Vec::new();

    // (a) satisfaction under disjoint unions
    let mut sat = PropertyReport::new("union_satisfaction");
    let c2a = cantor_model(&mut r, 2)?;
    let c2b = cantor_model(&mut r, 2)?;
    let mut pairs = vec![vec![c2a, c2b]];
    for _ in 0..cfg.union_trials {
        let n1 = r.gen_range(1..=cfg.component_points.max(1));
        let n2 = r.gen_range(1..=cfg.component_points.max(1));
        pairs.push(vec![random_model(&mut r, n1, &ATOMS), random_model(&mut r, n2, &ATOMS)]);
    }
    for comps in &pairs {
        let spaces: Vec<&UltrametricSpace> = comps.iter().map(|m| &m.space).collect();
        let grades = grades_of(&spaces);
        let formulas: Vec<Formula> =
            (0..cfg.formula_samples).map(|_| random_formula(&mut r, cfg.formula_depth, &ATOMS, &grades)).collect();
        check_union_satisfaction(comps, &formulas, &mut sat)?;
    }
    properties.push(sat);

    // (b) validity under disjoint unions, including three Cantor copies
    let mut uv = PropertyReport::new("union_validity");
    let c2 = cantor_space(2)?;
    let grades = grades_of(&[&c2]);
    let formulas = candidate_formulas(&mut r, cfg, &grades);
    check_union_validity(&[&c2, &c2, &c2], &formulas, &mut uv)?;
    let n = r.gen_range(1..=cfg.component_points.max(1));
    let extra = crate::generate::random_ultrametric(&mut r, n, &crate::generate::default_heights());
    let grades = grades_of(&[&c2, &extra]);
    let formulas = candidate_formulas(&mut r, cfg, &grades);
    check_union_validity(&[&c2, &extra], &formulas, &mut uv)?;
    properties.push(uv);

    // (c) validity under ball-generated subspaces
    let mut sv = PropertyReport::new("subspace_validity");
    let c3 = cantor_space(3)?;
    let grades = grades_of(&[&c3]);
    let formulas = candidate_formulas(&mut r, cfg, &grades);
    check_subspace_validity(&c3, &formulas, &mut sv)?;
    properties.push(sv);

    // (d) transfer along bounded morphisms
    let mut mt = PropertyReport::new("morphism_transfer");
    for (_, src, tgt, pm) in standard_morphisms(&mut r)? {
        let grades = grades_of(&[&src.space]);
        let mut formulas: Vec<Formula> =
            (0..cfg.formula_samples).map(|_| random_formula(&mut r, cfg.formula_depth, &ATOMS, &grades)).collect();
        for _ in 0..cfg.formula_samples {
            let eps = grades[r.gen_range(0..grades.len())].clone();
            formulas.push(Formula::possibility(eps, random_formula(&mut r, 0, &ATOMS, &grades)));
        }
        check_morphism_transfer(&src, &tgt, &pm, &formulas, &mut mt)?;
    }
    properties.push(mt);

    Ok(HarnessReport {
        config: cfg.clone(),
        properties,
        notes: vec![
            "reverse transfer of nested modalities along morphisms with k != 1 is not tested".into(),
            "the three-copy Cantor union has realized distance 2, so it is not a Cantor-tree model".into(),
        ],
    })
}

/// Evaluate one formula plan against a fixed valuation; used by tests that
/// sweep many formulas over the same space.
pub fn root_truth(space: &UltrametricSpace, f: &Formula, v: &Valuation) -> PointSet {
    Plan::new(space, f).eval_valuation(v).pop().expect("root")
}
