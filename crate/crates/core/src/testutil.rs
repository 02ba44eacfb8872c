//! Shared fixtures for the unit tests.

use std::sync::Arc;

use crate::instance::DualInstance;
use crate::poset::Poset;
use crate::set::ElementSet;

pub fn set(n: usize, ids: &[usize]) -> ElementSet {
    ElementSet::from_ids(n, ids.iter().copied())
}

/// The four-element reference poset: 1⪯3, 2⪯3, 2⪯4 (ids 0..3).
pub fn reference_poset() -> Poset {
    Poset::from_edges(4, &[(0, 2), (1, 2), (1, 3)])
        .unwrap()
        .with_names(vec!["1".into(), "2".into(), "3".into(), "4".into()])
        .unwrap()
}

/// The running example pair I = {{1,2},{2,4}}, F = {{2,3,4}} on the
/// reference poset.
pub fn reference_instance() -> DualInstance {
    DualInstance::validate(
        Arc::new(reference_poset()),
        vec![set(4, &[0, 1]), set(4, &[1, 3])],
        vec![set(4, &[1, 2, 3])],
    )
    .unwrap()
}
