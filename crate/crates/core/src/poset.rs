//! Finite posets with dense integer ids.
//!
//! The order is stored as per-element up/down bitsets (the
//! reflexive-transitive closure of the input edges), so principal
//! up-sets, down-sets and closure operators are single intersections.

use std::collections::HashMap;

use thiserror::Error;

use crate::set::ElementSet;

#[derive(Debug, Error)]
pub enum PosetError {
    #[error("element id {id} out of range 0..{n}")]
    Index { id: usize, n: usize },
    #[error("order closure relates {a} and {b} in both directions (not antisymmetric)")]
    Cycle { a: usize, b: usize },
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("expected {n} names, got {got}")]
    NameCount { n: usize, got: usize },
}

/// A finite poset on elements `0..n`.
#[derive(Debug, Clone)]
pub struct Poset {
    n: usize,
    /// `below[p]` is the principal down-set `p^-` (contains `p`).
    below: Vec<ElementSet>,
    /// `above[p]` is the principal up-set `p^+` (contains `p`).
    above: Vec<ElementSet>,
    names: Option<Vec<String>>,
    name_to_id: HashMap<String, usize>,
}

impl Poset {
    /// Builds the poset from relation edges `(a, b)` meaning `a ⪯ b`,
    /// taking the reflexive-transitive closure. Rejects closures that
    /// violate antisymmetry.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, PosetError> {
        // leq as an adjacency matrix, then Warshall closure.
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in edges {
            for (id, _) in [(a, b), (b, a)] {
                if id >= n {
                    return Err(PosetError::Index { id, n });
                }
            }
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if leq[a * n + b] && leq[b * n + a] {
                    return Err(PosetError::Cycle { a, b });
                }
            }
        }
        let mut below = vec![ElementSet::empty(n); n];
        let mut above = vec![ElementSet::empty(n); n];
        for a in 0..n {
            for b in 0..n {
                if leq[a * n + b] {
                    below[b].insert(a);
                    above[a].insert(b);
                }
            }
        }
        Ok(Self {
            n,
            below,
            above,
            names: None,
            name_to_id: HashMap::new(),
        })
    }

    /// An antichain of `n` incomparable elements.
    pub fn antichain(n: usize) -> Self {
        Self::from_edges(n, &[]).expect("empty edge list cannot cycle")
    }

    /// The poset with the same elements and the order reversed.
    pub fn reversed(&self) -> Self {
        Self {
            n: self.n,
            below: self.above.clone(),
            above: self.below.clone(),
            names: self.names.clone(),
            name_to_id: self.name_to_id.clone(),
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, PosetError> {
        if names.len() != self.n {
            return Err(PosetError::NameCount {
                n: self.n,
                got: names.len(),
            });
        }
        let mut map = HashMap::new();
        for (id, name) in names.iter().enumerate() {
            if map.insert(name.clone(), id).is_some() {
                return Err(PosetError::DuplicateName(name.clone()));
            }
        }
        self.name_to_id = map;
        self.names = Some(names);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn name(&self, id: usize) -> String {
        match &self.names {
            Some(names) => names[id].clone(),
            None => id.to_string(),
        }
    }

    pub fn id_of(&self, name: &str) -> Option<usize> {
        self.name_to_id.get(name).copied()
    }

    fn check(&self, p: usize) -> Result<(), PosetError> {
        if p < self.n {
            Ok(())
        } else {
            Err(PosetError::Index { id: p, n: self.n })
        }
    }

    /// `a ⪯ b`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.above[a].contains(b)
    }

    /// Principal down-set `p^-`.
    pub fn down_set(&self, p: usize) -> Result<ElementSet, PosetError> {
        self.check(p)?;
        Ok(self.below[p].clone())
    }

    /// Principal up-set `p^+`.
    pub fn up_set(&self, p: usize) -> Result<ElementSet, PosetError> {
        self.check(p)?;
        Ok(self.above[p].clone())
    }

    /// `p^-` intersected with `ground`.
    pub fn down_set_in(&self, p: usize, ground: &ElementSet) -> ElementSet {
        self.below[p].intersection(ground)
    }

    /// `p^+` intersected with `ground`.
    pub fn up_set_in(&self, p: usize, ground: &ElementSet) -> ElementSet {
        self.above[p].intersection(ground)
    }

    /// `X^-`, the smallest ideal containing `X`.
    pub fn down_closure(&self, x: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.n);
        for p in x.iter() {
            out.union_with(&self.below[p]);
        }
        out
    }

    /// `X^+`, the smallest filter containing `X`.
    pub fn up_closure(&self, x: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.n);
        for p in x.iter() {
            out.union_with(&self.above[p]);
        }
        out
    }

    pub fn down_closure_in(&self, x: &ElementSet, ground: &ElementSet) -> ElementSet {
        self.down_closure(x).intersection(ground)
    }

    pub fn up_closure_in(&self, x: &ElementSet, ground: &ElementSet) -> ElementSet {
        self.up_closure(x).intersection(ground)
    }

    /// Is `X` down-closed?
    pub fn is_ideal(&self, x: &ElementSet) -> bool {
        self.is_ideal_in(x, &ElementSet::full(self.n))
    }

    /// Is `X` up-closed?
    pub fn is_filter(&self, x: &ElementSet) -> bool {
        self.is_filter_in(x, &ElementSet::full(self.n))
    }

    /// Is `X` down-closed within the induced order on `ground`?
    pub fn is_ideal_in(&self, x: &ElementSet, ground: &ElementSet) -> bool {
        x.is_subset(ground) && x.iter().all(|p| self.below[p].intersection(ground).is_subset(x))
    }

    /// Is `X` up-closed within the induced order on `ground`?
    pub fn is_filter_in(&self, x: &ElementSet, ground: &ElementSet) -> bool {
        x.is_subset(ground) && x.iter().all(|p| self.above[p].intersection(ground).is_subset(x))
    }

    /// Elements of `ground` that are maximal in the induced order.
    pub fn maximal_in(&self, ground: &ElementSet) -> Vec<usize> {
        ground
            .iter()
            .filter(|&p| self.above[p].intersection(ground).len() == 1)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::reference_poset;

    #[test]
    fn reference_down_up_sets() {
        let p = reference_poset();
        assert_eq!(p.down_set(2).unwrap().to_vec(), vec![0, 1, 2]);
        assert_eq!(p.down_set(0).unwrap().to_vec(), vec![0]);
        assert_eq!(p.up_set(0).unwrap().to_vec(), vec![0, 2]);
        assert_eq!(p.up_set(3).unwrap().to_vec(), vec![3]);
    }

    #[test]
    fn antichain_and_chain() {
        let a = Poset::antichain(3);
        for p in 0..3 {
            assert_eq!(a.down_set(p).unwrap().to_vec(), vec![p]);
            assert_eq!(a.up_set(p).unwrap().to_vec(), vec![p]);
        }
        let c = Poset::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(c.leq(0, 2), "transitive closure of a chain");
    }

    #[test]
    fn cycle_rejected() {
        let err = Poset::from_edges(2, &[(0, 1), (1, 0)]).unwrap_err();
        assert!(matches!(err, PosetError::Cycle { .. }));
    }

    #[test]
    fn out_of_range_rejected() {
        let err = Poset::from_edges(2, &[(0, 5)]).unwrap_err();
        assert!(matches!(err, PosetError::Index { id: 5, .. }));
    }

    #[test]
    fn up_closure_reference() {
        let p = reference_poset();
        let x = ElementSet::from_ids(4, [1]);
        assert_eq!(p.up_closure(&x).to_vec(), vec![1, 2, 3]);
        assert!(p.down_closure(&ElementSet::empty(4)).is_empty());
    }

    #[test]
    fn ideal_filter_complement_duality() {
        // For every subset of a small poset: is_ideal(X) == is_filter(~X).
        let p = reference_poset();
        let full = ElementSet::full(4);
        for mask in 0u32..16 {
            let x = ElementSet::from_ids(4, (0..4).filter(|i| mask >> i & 1 == 1));
            assert_eq!(p.is_ideal(&x), p.is_filter(&x.complement_in(&full)));
        }
    }

    #[test]
    fn closure_operators_idempotent_extensive() {
        let p = reference_poset();
        for mask in 0u32..16 {
            let x = ElementSet::from_ids(4, (0..4).filter(|i| mask >> i & 1 == 1));
            let c = p.down_closure(&x);
            assert!(x.is_subset(&c));
            assert_eq!(p.down_closure(&c), c);
            assert!(p.is_ideal(&c));
            if p.is_ideal(&x) {
                assert_eq!(c, x);
            }
        }
    }
}
