//! Validity over finite spaces, axiom schemas and Hilbert proof checking.

mod proof;
mod schema;

use std::collections::BTreeMap;

use serde::Serialize;

pub use proof::{check_proof, Justification, Proof, ProofLine, Rejection, Verdict};
pub use schema::{instantiate_axiom, match_axiom, parse_binding, Binding, Bindings, Schema, SchemaMatch};

use crate::error::Error;
use crate::formula::Formula;
use crate::model::Valuation;
use crate::pointset::PointSet;
use crate::semantics::Plan;
use crate::space::UltrametricSpace;

/// Default limit on the number of valuations enumerated.
pub const DEFAULT_CAP: u64 = 1 << 22;

/// A valuation and world at which a formula fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub valuation: BTreeMap<String, Vec<String>>,
    pub world: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidityVerdict {
    pub valid: bool,
    pub valuations_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

/// Decide whether `f` holds at every world under every valuation of its
/// atoms.
///
/// Valuations are enumerated in increasing index order, atom `i` (in
/// sorted order) taking bits `i*n .. (i+1)*n` with bit `i*n + x` meaning
/// "true at point x". The reported counterexample is the first failing
/// valuation in that order, at its lowest-indexed failing world.
pub fn valid_in_model(space: &UltrametricSpace, f: &Formula, cap: u64) -> Result<ValidityVerdict, Error> {
    let plan = Plan::new(space, f);
    let n = space.len();
    let atoms: Vec<&str> = plan.atoms().to_vec();
    let bits = n * atoms.len();
    if bits >= 64 || (1u64 << bits) > cap {
        return Err(Error::CapExceeded { bits, cap });
    }
    let total = 1u64 << bits;
    for code in 0..total {
        let sets: Vec<PointSet> =
            (0..atoms.len()).map(|i| PointSet::from_bits(n, &[code], i * n)).collect();
        let root = plan.eval_root(&sets);
        if let Some(world) = root.complement().first() {
            let mut v = Valuation::new();
            for (a, s) in atoms.iter().zip(sets) {
                v.set(*a, s);
            }
            return Ok(ValidityVerdict {
                valid: false,
                valuations_checked: code + 1,
                counterexample: Some(Counterexample {
                    valuation: v.to_names(space),
                    world: space.name(world).to_string(),
                }),
            });
        }
    }
    Ok(ValidityVerdict { valid: true, valuations_checked: total, counterexample: None })
}
