//! Brute-force oracles for small instances: exhaustive ideal
//! enumeration and duality testing by direct scan.

use std::collections::HashSet;

use thiserror::Error;

use crate::instance::DualInstance;
use crate::poset::Poset;
use crate::set::ElementSet;

/// Default cap on the number of ideals an oracle call may touch.
pub const DEFAULT_IDEAL_CAP: u64 = 1 << 22;

#[derive(Debug, Error)]
#[error("ideal count exceeds the oracle cap of {cap}")]
pub struct ScaleRefusal {
    pub cap: u64,
}

/// Every ideal of the induced order on `ground`, in graded
/// lexicographic order, or `ScaleRefusal` if there are more than `cap`.
pub fn enumerate_ideals_in(
    poset: &Poset,
    ground: &ElementSet,
    cap: u64,
) -> Result<Vec<ElementSet>, ScaleRefusal> {
    // BFS from the empty ideal, extending by one minimal element of the
    // uncovered part of the ground each time.
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let empty = ElementSet::empty(poset.len());
    seen.insert(empty.clone());
    let mut frontier = vec![empty];
    while let Some(x) = frontier.pop() {
        for p in ground.iter() {
            if x.contains(p) {
                continue;
            }
            // p is addable iff everything strictly below it (in ground)
            // is already in x.
            let mut pb = poset.down_set_in(p, ground);
            pb.remove(p);
            if !pb.is_subset(&x) {
                continue;
            }
            let mut next = x.clone();
            next.insert(p);
            if seen.insert(next.clone()) {
                if seen.len() as u64 > cap {
                    return Err(ScaleRefusal { cap });
                }
                frontier.push(next);
            }
        }
    }
    let mut out: Vec<ElementSet> = seen.into_iter().collect();
    out.sort_by(|a, b| a.cmp_graded_lex(b));
    Ok(out)
}

/// Ideals of the whole poset at the default cap.
pub fn enumerate_ideals(poset: &Poset) -> Result<Vec<ElementSet>, ScaleRefusal> {
    enumerate_ideals_in(poset, &ElementSet::full(poset.len()), DEFAULT_IDEAL_CAP)
}

/// Outcome of a duality test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Dual,
    NotDual { witness: ElementSet },
}

impl Verdict {
    pub fn is_dual(&self) -> bool {
        matches!(self, Verdict::Dual)
    }

    pub fn witness(&self) -> Option<&ElementSet> {
        match self {
            Verdict::Dual => None,
            Verdict::NotDual { witness } => Some(witness),
        }
    }
}

/// Scans every ideal of the instance ground and returns the first
/// witness in enumeration order, or `Dual` if none exists.
pub fn brute_force_dual(inst: &DualInstance) -> Result<Verdict, ScaleRefusal> {
    brute_force_dual_capped(inst, DEFAULT_IDEAL_CAP)
}

pub fn brute_force_dual_capped(
    inst: &DualInstance,
    cap: u64,
) -> Result<Verdict, ScaleRefusal> {
    for x in enumerate_ideals_in(&inst.poset, &inst.ground, cap)? {
        if inst.verify_witness(&x) {
            return Ok(Verdict::NotDual { witness: x });
        }
    }
    Ok(Verdict::Dual)
}

/// Independent ideal counter used as a cross-check oracle: recursive
/// splitting on a maximal element,
/// `#ideals(G) = #ideals(G ∖ p⁺) + #ideals(G ∖ p⁻)`.
pub fn count_ideals_by_splitting(poset: &Poset, ground: &ElementSet) -> u64 {
    match poset.maximal_in(ground).first() {
        None => 1, // only the empty ideal
        Some(&p) => {
            let without_up = ground.difference(&poset.up_set_in(p, ground));
            let without_down = ground.difference(&poset.down_set_in(p, ground));
            count_ideals_by_splitting(poset, &without_up)
                + count_ideals_by_splitting(poset, &without_down)
        }
    }
}
