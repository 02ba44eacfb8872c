//! Distributive lattices and their reduction to poset dualization.
//!
//! A finite distributive lattice is isomorphic to the lattice of ideals
//! of the poset of its join-irreducible elements. That representation
//! turns the lattice-level duality question for a pair of antichains
//! (A, B), namely whether some element x satisfies `a ⋠ x` for all
//! `a ∈ A` and `x ⋠ b` for all `b ∈ B`, into an ideal/filter
//! dualization instance on the join-irreducible poset.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::engine::{check_dual, CheckOptions};
use crate::instance::{DualInstance, InstanceError};
use crate::oracle::{enumerate_ideals, ScaleRefusal};
use crate::poset::Poset;
use crate::set::ElementSet;

/// Exhaustive distributivity checking up to this size; seeded triple
/// sampling beyond it.
const EXHAUSTIVE_DISTRIBUTIVITY_LIMIT: usize = 512;
const SAMPLED_TRIPLES: usize = 200_000;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("element id {id} out of range 0..{n}")]
    Index { id: usize, n: usize },
    #[error("not a lattice: elements {a} and {b} have no unique {kind}")]
    NotALattice { a: usize, b: usize, kind: String },
    #[error("relation is not a partial order: {a} and {b} are equivalent")]
    NotAPartialOrder { a: usize, b: usize },
    #[error("not distributive: x={x}, y={y}, z={z} violate x∧(y∨z) = (x∧y)∨(x∧z)")]
    NotDistributive { x: usize, y: usize, z: usize },
    #[error("the lattice is empty")]
    Empty,
    #[error("join-irreducible representation round-trip failed at element {element}")]
    Representation { element: usize },
    #[error("{family} is not an antichain: {a} ⪯ {b}")]
    AntichainViolation { family: String, a: String, b: String },
    #[error("domination violated: a = {a} ⪯ b = {b}")]
    DominationViolation { a: String, b: String },
    #[error("tuple arity {got} does not match the {expected} lattice factors")]
    Arity { got: usize, expected: usize },
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Scale(#[from] ScaleRefusal),
}

/// A finite lattice given by an explicit order relation on `0..n`.
/// Construction validates the lattice axioms and distributivity, so a
/// value of this type is always a distributive lattice.
#[derive(Debug, Clone)]
pub struct ExplicitLattice {
    n: usize,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl ExplicitLattice {
    /// Builds the lattice from relation pairs `(a, b)` meaning `a ⪯ b`,
    /// closing under reflexivity and transitivity.
    pub fn from_leq_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in pairs {
            for id in [a, b] {
                if id >= n {
                    return Err(LatticeError::Index { id, n });
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
                    return Err(LatticeError::NotAPartialOrder { a, b });
                }
            }
        }
        Self::from_closed_relation(n, leq)
    }

    fn from_closed_relation(n: usize, leq: Vec<bool>) -> Result<Self, LatticeError> {
        let mut meet = vec![0usize; n * n];
        let mut join = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                meet[a * n + b] = extremum(n, &leq, a, b, true)?;
                join[a * n + b] = extremum(n, &leq, a, b, false)?;
            }
        }
        let lat = Self {
            n,
            leq,
            meet,
            join,
            bottom: 0,
            top: 0,
        };
        let mut lat = lat;
        lat.bottom = (0..n).fold(0, |acc, x| lat.meet[acc * n + x]);
        lat.top = (0..n).fold(0, |acc, x| lat.join[acc * n + x]);
        lat.check_distributivity()?;
        Ok(lat)
    }

    fn check_distributivity(&self) -> Result<(), LatticeError> {
        let n = self.n;
        let violation = |x: usize, y: usize, z: usize| {
            self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z))
        };
        if n <= EXHAUSTIVE_DISTRIBUTIVITY_LIMIT {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if violation(x, y, z) {
                            return Err(LatticeError::NotDistributive { x, y, z });
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x1a77);
            for _ in 0..SAMPLED_TRIPLES {
                let (x, y, z) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if violation(x, y, z) {
                    return Err(LatticeError::NotDistributive { x, y, z });
                }
            }
        }
        Ok(())
    }

    /// A total order on `k` elements, `0 ⪯ 1 ⪯ … ⪯ k−1`.
    pub fn chain(k: usize) -> Result<Self, LatticeError> {
        let pairs: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
        Self::from_leq_pairs(k, &pairs)
    }

    /// The lattice of ideals of `poset`, ordered by inclusion. Returns
    /// the lattice together with the ideal each element stands for, in
    /// element-id order.
    pub fn ideal_lattice(poset: &Poset) -> Result<(Self, Vec<ElementSet>), LatticeError> {
        let ideals = enumerate_ideals(poset)?;
        let n = ideals.len();
        let mut leq = vec![false; n * n];
        for (a, ia) in ideals.iter().enumerate() {
            for (b, ib) in ideals.iter().enumerate() {
                if ia.is_subset(ib) {
                    leq[a * n + b] = true;
                }
            }
        }
        Ok((Self::from_closed_relation(n, leq)?, ideals))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Elements with exactly one lower cover: the non-bottom elements
    /// that are not the join of two strictly smaller elements.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| {
                if x == self.bottom {
                    return false;
                }
                let irr = !(0..self.n).any(|y| {
                    y != x && self.join(x, y) == x && {
                        (0..self.n).any(|z| z != x && z != y && self.join(y, z) == x)
                    }
                });
                debug_assert_eq!(irr, self.lower_cover_count(x) == 1);
                irr
            })
            .collect()
    }

    fn lower_cover_count(&self, x: usize) -> usize {
        (0..self.n)
            .filter(|&y| {
                y != x
                    && self.leq(y, x)
                    && !(0..self.n).any(|z| z != x && z != y && self.leq(y, z) && self.leq(z, x))
            })
            .count()
    }
}

fn extremum(
    n: usize,
    leq: &[bool],
    a: usize,
    b: usize,
    lower: bool,
) -> Result<usize, LatticeError> {
    let le = |x: usize, y: usize| leq[x * n + y];
    let bounds: Vec<usize> = (0..n)
        .filter(|&c| {
            if lower {
                le(c, a) && le(c, b)
            } else {
                le(a, c) && le(b, c)
            }
        })
        .collect();
    let kind = if lower { "meet" } else { "join" };
    let best = bounds
        .iter()
        .copied()
        .find(|&c| {
            bounds
                .iter()
                .all(|&d| if lower { le(d, c) } else { le(c, d) })
        })
        .ok_or(LatticeError::NotALattice {
            a,
            b,
            kind: kind.into(),
        })?;
    Ok(best)
}

/// A product of validated distributive lattices; elements are tuples
/// ordered factor-wise.
#[derive(Debug, Clone)]
pub struct ProductLattice {
    pub factors: Vec<ExplicitLattice>,
}

impl ProductLattice {
    pub fn new(factors: Vec<ExplicitLattice>) -> Result<Self, LatticeError> {
        if factors.is_empty() {
            return Err(LatticeError::Empty);
        }
        Ok(Self { factors })
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn len(&self) -> u64 {
        self.factors.iter().map(|f| f.len() as u64).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn leq(&self, a: &[usize], b: &[usize]) -> bool {
        a.iter()
            .zip(b)
            .enumerate()
            .all(|(i, (&x, &y))| self.factors[i].leq(x, y))
    }

    pub fn bottom(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.bottom()).collect()
    }

    pub fn top(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.top()).collect()
    }

    fn check_tuple(&self, x: &[usize]) -> Result<(), LatticeError> {
        if x.len() != self.factors.len() {
            return Err(LatticeError::Arity {
                got: x.len(),
                expected: self.factors.len(),
            });
        }
        for (i, &v) in x.iter().enumerate() {
            if v >= self.factors[i].len() {
                return Err(LatticeError::Index {
                    id: v,
                    n: self.factors[i].len(),
                });
            }
        }
        Ok(())
    }

    /// All tuples, for brute-force scans at oracle scale.
    pub fn elements(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let sizes: Vec<usize> = self.factors.iter().map(|f| f.len()).collect();
        let total = self.len();
        (0..total).map(move |mut idx| {
            let mut tuple = vec![0usize; sizes.len()];
            for (i, &s) in sizes.iter().enumerate().rev() {
                tuple[i] = (idx % s as u64) as usize;
                idx /= s as u64;
            }
            tuple
        })
    }
}

/// The join-irreducible representation of a distributive lattice (or a
/// product of them): the poset on the irreducibles, plus the encoding
/// of every lattice element as the ideal of irreducibles below it.
#[derive(Debug, Clone)]
pub struct BirkhoffMap {
    pub poset: Arc<Poset>,
    lattice: ProductLattice,
    /// Poset id -> (factor index, factor element id).
    irreducibles: Vec<(usize, usize)>,
}

impl BirkhoffMap {
    pub fn lattice(&self) -> &ProductLattice {
        &self.lattice
    }

    pub fn irreducible(&self, poset_id: usize) -> (usize, usize) {
        self.irreducibles[poset_id]
    }

    pub fn num_irreducibles(&self) -> usize {
        self.irreducibles.len()
    }

    /// The ideal of join-irreducibles below `x`.
    pub fn encode_tuple(&self, x: &[usize]) -> Result<ElementSet, LatticeError> {
        self.lattice.check_tuple(x)?;
        let n = self.irreducibles.len();
        Ok(ElementSet::from_ids(
            n,
            (0..n).filter(|&j| {
                let (fi, e) = self.irreducibles[j];
                self.lattice.factors[fi].leq(e, x[fi])
            }),
        ))
    }

    /// The join of the irreducibles in `ideal`; the empty ideal decodes
    /// to the bottom tuple.
    pub fn decode_tuple(&self, ideal: &ElementSet) -> Vec<usize> {
        let mut tuple = self.lattice.bottom();
        for j in ideal.iter() {
            let (fi, e) = self.irreducibles[j];
            tuple[fi] = self.lattice.factors[fi].join(tuple[fi], e);
        }
        tuple
    }

    /// Single-factor convenience; panics if the map has several factors.
    pub fn encode(&self, x: usize) -> Result<ElementSet, LatticeError> {
        assert_eq!(self.lattice.arity(), 1, "encode needs a single factor");
        self.encode_tuple(&[x])
    }

    pub fn decode(&self, ideal: &ElementSet) -> usize {
        assert_eq!(self.lattice.arity(), 1, "decode needs a single factor");
        self.decode_tuple(ideal)[0]
    }
}

fn build_map(lattice: ProductLattice) -> Result<BirkhoffMap, LatticeError> {
    let mut irreducibles = Vec::new();
    for (fi, f) in lattice.factors.iter().enumerate() {
        irreducibles.extend(f.join_irreducibles().into_iter().map(|e| (fi, e)));
    }
    let n = irreducibles.len();
    // The induced order: incomparable across factors, the lattice order
    // within one factor.
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let (fa, ea) = irreducibles[a];
            let (fb, eb) = irreducibles[b];
            if a != b && fa == fb && lattice.factors[fa].leq(ea, eb) {
                edges.push((a, b));
            }
        }
    }
    let poset = Poset::from_edges(n, &edges).expect("a lattice order cannot cycle");
    let map = BirkhoffMap {
        poset: Arc::new(poset),
        lattice,
        irreducibles,
    };
    verify_round_trip(&map)?;
    Ok(map)
}

fn verify_round_trip(map: &BirkhoffMap) -> Result<(), LatticeError> {
    for (element, tuple) in map.lattice.elements().enumerate() {
        let ideal = map.encode_tuple(&tuple)?;
        if !map.poset.is_ideal(&ideal) || map.decode_tuple(&ideal) != tuple {
            return Err(LatticeError::Representation { element });
        }
    }
    Ok(())
}

/// The join-irreducible poset of one lattice with its encode/decode map.
pub fn birkhoff_poset(lattice: ExplicitLattice) -> Result<BirkhoffMap, LatticeError> {
    build_map(ProductLattice::new(vec![lattice])?)
}

/// The join-irreducible poset of a product: the disjoint union of the
/// factor posets.
pub fn product_poset(lattice: ProductLattice) -> Result<BirkhoffMap, LatticeError> {
    build_map(lattice)
}

/// Outcome of a lattice-level duality test; the witness is a tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeVerdict {
    Dual,
    NotDual { witness: Vec<usize> },
}

impl LatticeVerdict {
    pub fn is_dual(&self) -> bool {
        matches!(self, LatticeVerdict::Dual)
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            LatticeVerdict::Dual => None,
            LatticeVerdict::NotDual { witness } => Some(witness),
        }
    }
}

fn validate_antichain(
    map: &BirkhoffMap,
    family: &[Vec<usize>],
    name: &str,
) -> Result<(), LatticeError> {
    for x in family {
        map.lattice.check_tuple(x)?;
    }
    for (i, a) in family.iter().enumerate() {
        for (j, b) in family.iter().enumerate() {
            if i != j && map.lattice.leq(a, b) {
                return Err(LatticeError::AntichainViolation {
                    family: name.into(),
                    a: format!("{a:?}"),
                    b: format!("{b:?}"),
                });
            }
        }
    }
    Ok(())
}

/// Decides whether some lattice element x satisfies `a ⋠ x` for every
/// `a ∈ A` and `x ⋠ b` for every `b ∈ B`; returns such an x as the
/// witness, or `Dual` when none exists. Requires A and B to be
/// antichains with `a ⋠ b` throughout.
pub fn lattice_dual(
    map: &BirkhoffMap,
    a_family: &[Vec<usize>],
    b_family: &[Vec<usize>],
    opts: &CheckOptions,
) -> Result<LatticeVerdict, LatticeError> {
    validate_antichain(map, a_family, "A")?;
    validate_antichain(map, b_family, "B")?;
    for a in a_family {
        for b in b_family {
            if map.lattice.leq(a, b) {
                return Err(LatticeError::DominationViolation {
                    a: format!("{a:?}"),
                    b: format!("{b:?}"),
                });
            }
        }
    }
    let j = map.num_irreducibles();
    let full = ElementSet::full(j);
    let ideals: Vec<ElementSet> = a_family
        .iter()
        .map(|a| map.encode_tuple(a))
        .collect::<Result<_, _>>()?;
    // x ⪯ b iff encode(x) ⊆ encode(b), so x escapes b exactly when its
    // ideal meets the complementary filter.
    let filters: Vec<ElementSet> = b_family
        .iter()
        .map(|b| Ok(map.encode_tuple(b)?.complement_in(&full)))
        .collect::<Result<_, LatticeError>>()?;
    let inst = DualInstance::validate(Arc::clone(&map.poset), ideals, filters)?;
    let res = check_dual(&inst, opts);
    Ok(match res.verdict.witness() {
        None => LatticeVerdict::Dual,
        Some(w) => {
            let witness = map.decode_tuple(w);
            debug_assert!(
                a_family.iter().all(|a| !map.lattice.leq(a, &witness))
                    && b_family.iter().all(|b| !map.lattice.leq(&witness, b)),
                "decoded witness fails the lattice condition"
            );
            LatticeVerdict::NotDual { witness }
        }
    })
}

/// Exhaustive scan over all lattice elements; the independent oracle
/// for `lattice_dual` at small scale.
pub fn brute_force_lattice_dual(
    map: &BirkhoffMap,
    a_family: &[Vec<usize>],
    b_family: &[Vec<usize>],
) -> LatticeVerdict {
    for x in map.lattice.elements() {
        if a_family.iter().all(|a| !map.lattice.leq(a, &x))
            && b_family.iter().all(|b| !map.lattice.leq(&x, b))
        {
            return LatticeVerdict::NotDual { witness: x };
        }
    }
    LatticeVerdict::Dual
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::reference_poset;

    fn boolean_square() -> ExplicitLattice {
        // 0 < 1, 0 < 2, 1 < 3, 2 < 3.
        ExplicitLattice::from_leq_pairs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn chain_basics() {
        let c = ExplicitLattice::chain(4).unwrap();
        assert_eq!(c.bottom(), 0);
        assert_eq!(c.top(), 3);
        assert_eq!(c.meet(1, 3), 1);
        assert_eq!(c.join(1, 2), 2);
        assert_eq!(c.join_irreducibles(), vec![1, 2, 3]);
    }

    #[test]
    fn boolean_square_atoms_are_irreducible() {
        let l = boolean_square();
        assert_eq!(l.join_irreducibles(), vec![1, 2]);
        assert_eq!(l.meet(1, 2), 0);
        assert_eq!(l.join(1, 2), 3);
    }

    #[test]
    fn pentagon_is_rejected() {
        // N5: 0 < a < b < 1 and 0 < c < 1 with c incomparable to a, b.
        let err = ExplicitLattice::from_leq_pairs(
            5,
            &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)],
        )
        .unwrap_err();
        assert!(matches!(err, LatticeError::NotDistributive { .. }));
    }

    #[test]
    fn diamond_is_rejected() {
        // M3: three incomparable atoms between bottom and top.
        let err = ExplicitLattice::from_leq_pairs(
            5,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        )
        .unwrap_err();
        assert!(matches!(err, LatticeError::NotDistributive { .. }));
    }

    #[test]
    fn non_lattice_rejected() {
        // Two maximal elements: the pair (1, 2) has no join.
        let err = ExplicitLattice::from_leq_pairs(3, &[(0, 1), (0, 2)]).unwrap_err();
        assert!(matches!(err, LatticeError::NotALattice { .. }));
    }

    #[test]
    fn reference_ideal_lattice_irreducibles() {
        // The ideal lattice of the reference poset has the principal
        // ideals {1}, {2}, {2,4}, {1,2,3} as its join-irreducibles.
        let (lat, ideals) = ExplicitLattice::ideal_lattice(&reference_poset()).unwrap();
        assert_eq!(lat.len(), 8);
        let ji: Vec<Vec<usize>> = lat
            .join_irreducibles()
            .into_iter()
            .map(|x| ideals[x].to_vec())
            .collect();
        assert_eq!(ji, vec![vec![0], vec![1], vec![1, 3], vec![0, 1, 2]]);
    }

    #[test]
    fn birkhoff_round_trip_reference() {
        let (lat, ideals) = ExplicitLattice::ideal_lattice(&reference_poset()).unwrap();
        let map = birkhoff_poset(lat).unwrap();
        assert_eq!(map.num_irreducibles(), 4);
        // encode of the element standing for {1,2} is a 2-element ideal
        // consisting of the irreducibles {1} and {2}.
        let elem_12 = ideals
            .iter()
            .position(|i| i.to_vec() == vec![0, 1])
            .unwrap();
        let enc = map.encode(elem_12).unwrap();
        assert_eq!(enc.len(), 2);
        assert_eq!(map.decode(&enc), elem_12);
        // Bottom encodes to the empty ideal, top to everything.
        let bottom = map.lattice().bottom()[0];
        let top = map.lattice().top()[0];
        assert!(map.encode(bottom).unwrap().is_empty());
        assert_eq!(map.encode(top).unwrap().len(), 4);
    }

    #[test]
    fn encode_is_an_order_isomorphism() {
        let (lat, _) = ExplicitLattice::ideal_lattice(&reference_poset()).unwrap();
        let n = lat.len();
        let map = birkhoff_poset(lat).unwrap();
        for x in 0..n {
            for y in 0..n {
                let ex = map.encode(x).unwrap();
                let ey = map.encode(y).unwrap();
                assert_eq!(
                    map.lattice().factors[0].leq(x, y),
                    ex.is_subset(&ey),
                    "iso fails at ({x}, {y})"
                );
            }
        }
    }

    #[test]
    fn encode_hits_every_ideal() {
        let (lat, _) = ExplicitLattice::ideal_lattice(&reference_poset()).unwrap();
        let n = lat.len();
        let map = birkhoff_poset(lat).unwrap();
        let mut images: Vec<ElementSet> = (0..n).map(|x| map.encode(x).unwrap()).collect();
        images.sort_by(|a, b| a.cmp_graded_lex(b));
        let ideals = enumerate_ideals(&map.poset).unwrap();
        assert_eq!(images, ideals);
    }

    #[test]
    fn product_poset_is_disjoint_union_of_chains() {
        let factors = vec![
            ExplicitLattice::chain(2).unwrap(),
            ExplicitLattice::chain(3).unwrap(),
            ExplicitLattice::chain(4).unwrap(),
        ];
        let map = product_poset(ProductLattice::new(factors).unwrap()).unwrap();
        assert_eq!(map.num_irreducibles(), 1 + 2 + 3);
        // Cross-factor incomparability.
        for a in 0..6 {
            for b in 0..6 {
                let (fa, _) = map.irreducible(a);
                let (fb, _) = map.irreducible(b);
                if fa != fb {
                    assert!(!map.poset.leq(a, b));
                }
            }
        }
    }

    #[test]
    fn one_element_factor_contributes_nothing() {
        let factors = vec![
            ExplicitLattice::chain(3).unwrap(),
            ExplicitLattice::chain(1).unwrap(),
        ];
        let map = product_poset(ProductLattice::new(factors).unwrap()).unwrap();
        assert_eq!(map.num_irreducibles(), 2);
    }

    #[test]
    fn reference_antichain_pair_has_middle_witness() {
        // On the ideal lattice of the reference poset, A = the elements
        // for {1,2} and {2,4}, B = the element for {1}: the element
        // standing for {2} escapes both sides.
        let (lat, ideals) = ExplicitLattice::ideal_lattice(&reference_poset()).unwrap();
        let idx = |v: &[usize]| ideals.iter().position(|i| i.to_vec() == v).unwrap();
        let a = vec![vec![idx(&[0, 1])], vec![idx(&[1, 3])]];
        let b = vec![vec![idx(&[0])]];
        let map = birkhoff_poset(lat).unwrap();
        let v = lattice_dual(&map, &a, &b, &CheckOptions::default()).unwrap();
        let w = v.witness().expect("a middle element exists");
        assert_eq!(w, &[idx(&[1])]);
        assert_eq!(brute_force_lattice_dual(&map, &a, &b).is_dual(), false);

        // Swapping the roles breaks the domination precondition:
        // the element for {1} lies below the one for {1,2}.
        let err = lattice_dual(&map, &b, &a, &CheckOptions::default()).unwrap_err();
        assert!(matches!(err, LatticeError::DominationViolation { .. }));
    }

    #[test]
    fn top_bottom_pair_on_chain() {
        // A = {top}, B = {bottom}: any strictly-between element
        // witnesses; a 2-chain has none and is dual.
        let map3 = birkhoff_poset(ExplicitLattice::chain(3).unwrap()).unwrap();
        let v = lattice_dual(&map3, &[vec![2]], &[vec![0]], &CheckOptions::default()).unwrap();
        assert_eq!(v.witness().unwrap(), &[1]);

        let map2 = birkhoff_poset(ExplicitLattice::chain(2).unwrap()).unwrap();
        let v2 = lattice_dual(&map2, &[vec![1]], &[vec![0]], &CheckOptions::default()).unwrap();
        assert!(v2.is_dual());
    }

    #[test]
    fn antichain_and_domination_validation() {
        let map = birkhoff_poset(ExplicitLattice::chain(4).unwrap()).unwrap();
        let err = lattice_dual(
            &map,
            &[vec![1], vec![2]],
            &[vec![0]],
            &CheckOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, LatticeError::AntichainViolation { .. }));

        let err2 =
            lattice_dual(&map, &[vec![1]], &[vec![2]], &CheckOptions::default()).unwrap_err();
        assert!(matches!(err2, LatticeError::DominationViolation { .. }));
    }

    #[test]
    fn product_duality_matches_brute_force() {
        let factors = vec![
            ExplicitLattice::chain(3).unwrap(),
            ExplicitLattice::chain(3).unwrap(),
        ];
        let map = product_poset(ProductLattice::new(factors).unwrap()).unwrap();
        // A = {(1,1)}, B = {(2,0), (0,2)}.
        let a = vec![vec![1, 1]];
        let b = vec![vec![2, 0], vec![0, 2]];
        let fast = lattice_dual(&map, &a, &b, &CheckOptions::default()).unwrap();
        let slow = brute_force_lattice_dual(&map, &a, &b);
        assert_eq!(fast.is_dual(), slow.is_dual());
        if let Some(w) = fast.witness() {
            assert!(a.iter().all(|x| !map.lattice().leq(x, w)));
            assert!(b.iter().all(|x| !map.lattice().leq(w, x)));
        }
    }
}
