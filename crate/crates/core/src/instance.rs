//! Validated dualization instances: a poset, a family of ideals and a
//! family of filters satisfying the pairwise intersection condition.

use std::sync::Arc;

use thiserror::Error;

use crate::poset::Poset;
use crate::set::ElementSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Ideal,
    Filter,
}

/// An ordered family of subsets of one poset, all playing the same role.
#[derive(Debug, Clone)]
pub struct SetFamily {
    pub role: Role,
    pub members: Vec<ElementSet>,
}

impl SetFamily {
    pub fn new(role: Role, members: Vec<ElementSet>) -> Self {
        Self { role, members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Drops duplicates and inclusion-supersets, keeping the minimal
/// members, and sorts the survivors into graded lexicographic order.
/// The witness condition quantifies over all members but is decided by
/// the minimal ones, so this never changes a verdict.
pub fn normalize_members(members: &[ElementSet]) -> Vec<ElementSet> {
    let mut sorted: Vec<&ElementSet> = members.iter().collect();
    sorted.sort_by(|a, b| a.cmp_graded_lex(b));
    let mut out: Vec<ElementSet> = Vec::with_capacity(sorted.len());
    'next: for cand in sorted {
        for kept in &out {
            if kept.is_subset(cand) {
                continue 'next;
            }
        }
        out.push(cand.clone());
    }
    out
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("ideal family member {index} = {member:?} is not an ideal")]
    NotAnIdeal { index: usize, member: String },
    #[error("filter family member {index} = {member:?} is not a filter")]
    NotAFilter { index: usize, member: String },
    #[error("ideal {ideal:?} and filter {filter:?} are disjoint (intersection condition fails)")]
    IntersectionViolation { ideal: String, filter: String },
    #[error("family member {member:?} is not a subset of the ground set")]
    OutsideGround { member: String },
}

/// A dualization instance over (a sub-ground-set of) a shared poset.
///
/// Subinstances produced by the decomposition rules keep the parent
/// poset and restrict `ground`; all ideal/filter conditions are w.r.t.
/// the induced order on `ground`.
#[derive(Debug, Clone)]
pub struct DualInstance {
    pub poset: Arc<Poset>,
    pub ground: ElementSet,
    pub ideals: Vec<ElementSet>,
    pub filters: Vec<ElementSet>,
}

impl DualInstance {
    /// Checks every invariant and normalizes both families to their
    /// inclusion-minimal, duplicate-free members.
    pub fn validate(
        poset: Arc<Poset>,
        ideals: Vec<ElementSet>,
        filters: Vec<ElementSet>,
    ) -> Result<Self, InstanceError> {
        let ground = ElementSet::full(poset.len());
        Self::validate_in(poset, ground, ideals, filters)
    }

    pub fn validate_in(
        poset: Arc<Poset>,
        ground: ElementSet,
        ideals: Vec<ElementSet>,
        filters: Vec<ElementSet>,
    ) -> Result<Self, InstanceError> {
        for (index, x) in ideals.iter().enumerate() {
            if !x.is_subset(&ground) {
                return Err(InstanceError::OutsideGround {
                    member: format!("{x:?}"),
                });
            }
            if !poset.is_ideal_in(x, &ground) {
                return Err(InstanceError::NotAnIdeal {
                    index,
                    member: format!("{x:?}"),
                });
            }
        }
        for (index, x) in filters.iter().enumerate() {
            if !x.is_subset(&ground) {
                return Err(InstanceError::OutsideGround {
                    member: format!("{x:?}"),
                });
            }
            if !poset.is_filter_in(x, &ground) {
                return Err(InstanceError::NotAFilter {
                    index,
                    member: format!("{x:?}"),
                });
            }
        }
        for i in &ideals {
            for f in &filters {
                if !i.intersects(f) {
                    return Err(InstanceError::IntersectionViolation {
                        ideal: format!("{i:?}"),
                        filter: format!("{f:?}"),
                    });
                }
            }
        }
        Ok(Self {
            poset,
            ground,
            ideals: normalize_members(&ideals),
            filters: normalize_members(&filters),
        })
    }

    /// Like `validate`, but keeps both families verbatim: duplicates
    /// and inclusion-supersets survive. Redundant members never change
    /// a verdict but do enlarge the instance volume, which is useful
    /// for driving the recursion past its base case.
    pub fn validate_raw(
        poset: Arc<Poset>,
        ideals: Vec<ElementSet>,
        filters: Vec<ElementSet>,
    ) -> Result<Self, InstanceError> {
        let normalized = Self::validate(Arc::clone(&poset), ideals.clone(), filters.clone())?;
        Ok(Self {
            poset,
            ground: normalized.ground,
            ideals,
            filters,
        })
    }

    /// Assembles a subinstance without normalizing. Debug builds check
    /// the structural invariants; the decomposition rules guarantee
    /// them for the instances they produce.
    pub(crate) fn from_parts(
        poset: Arc<Poset>,
        ground: ElementSet,
        ideals: Vec<ElementSet>,
        filters: Vec<ElementSet>,
    ) -> Self {
        let inst = Self {
            poset,
            ground,
            ideals,
            filters,
        };
        inst.debug_check();
        inst
    }

    pub(crate) fn debug_check(&self) {
        if cfg!(debug_assertions) {
            for x in &self.ideals {
                debug_assert!(
                    self.poset.is_ideal_in(x, &self.ground),
                    "subinstance ideal {x:?} invalid on ground {:?}",
                    self.ground
                );
            }
            for x in &self.filters {
                debug_assert!(
                    self.poset.is_filter_in(x, &self.ground),
                    "subinstance filter {x:?} invalid on ground {:?}",
                    self.ground
                );
            }
            for i in &self.ideals {
                for f in &self.filters {
                    debug_assert!(
                        i.intersects(f),
                        "subinstance violates the intersection condition: {i:?} vs {f:?}"
                    );
                }
            }
        }
    }

    /// Returns a copy with both families reduced to minimal members.
    pub fn normalized(&self) -> Self {
        Self {
            poset: Arc::clone(&self.poset),
            ground: self.ground.clone(),
            ideals: normalize_members(&self.ideals),
            filters: normalize_members(&self.filters),
        }
    }

    pub fn num_ideals(&self) -> usize {
        self.ideals.len()
    }

    pub fn num_filters(&self) -> usize {
        self.filters.len()
    }

    /// `v = |I|·|F|`.
    pub fn volume(&self) -> u64 {
        self.ideals.len() as u64 * self.filters.len() as u64
    }

    /// Does `X` witness non-duality: an ideal of the ground containing
    /// no ideal-family member and meeting every filter-family member?
    pub fn verify_witness(&self, x: &ElementSet) -> bool {
        self.poset.is_ideal_in(x, &self.ground)
            && self.ideals.iter().all(|i| !i.is_subset(x))
            && self.filters.iter().all(|f| x.intersects(f))
    }

    /// The symmetric check: the complement of `x` as a filter witness
    /// for the pair with roles swapped.
    pub fn verify_witness_filter_side(&self, x_bar: &ElementSet) -> bool {
        self.poset.is_filter_in(x_bar, &self.ground)
            && self.filters.iter().all(|f| !f.is_subset(x_bar))
            && self.ideals.iter().all(|i| x_bar.intersects(i))
    }
}
