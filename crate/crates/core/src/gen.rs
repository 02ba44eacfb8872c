//! Seeded instance generators for tests and benchmarks.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::instance::{normalize_members, DualInstance};
use crate::oracle::{enumerate_ideals, ScaleRefusal};
use crate::poset::Poset;
use crate::set::ElementSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenMode {
    /// Independent random families, repaired to satisfy the
    /// intersection condition by discarding violating filters.
    Random,
    /// A pair that is dual by construction (oracle scale only).
    ExactlyDual,
    /// An exactly-dual pair with one filter dropped, which always
    /// reopens a witness.
    NearDual,
}

#[derive(Debug, Clone)]
pub struct GeneratorSpec {
    pub seed: u64,
    pub n: usize,
    pub edge_density: f64,
    pub num_ideals: usize,
    pub num_filters: usize,
    pub mode: GenMode,
}

#[derive(Debug, Error)]
pub enum GenError {
    #[error("generator needs a nonempty poset")]
    EmptyPoset,
    #[error("edge density {0} outside [0, 1]")]
    Density(f64),
    #[error(transparent)]
    Scale(#[from] ScaleRefusal),
}

fn random_poset(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Poset {
    // Edges only from lower to higher id, so the closure is acyclic.
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(density) {
                edges.push((i, j));
            }
        }
    }
    Poset::from_edges(n, &edges).expect("forward edges cannot cycle")
}

fn random_down_closure(rng: &mut ChaCha8Rng, poset: &Poset, nonempty: bool) -> ElementSet {
    let n = poset.len();
    let seedset = ElementSet::from_ids(n, (0..n).filter(|_| rng.gen_bool(0.3)));
    let mut out = poset.down_closure(&seedset);
    if nonempty && out.is_empty() {
        out = poset
            .down_set(rng.gen_range(0..n))
            .expect("id in range");
    }
    out
}

fn random_up_closure(rng: &mut ChaCha8Rng, poset: &Poset) -> ElementSet {
    let n = poset.len();
    let seedset = ElementSet::from_ids(n, (0..n).filter(|_| rng.gen_bool(0.3)));
    poset.up_closure(&seedset)
}

/// The maximal ideals containing no member of `avoid`, complemented
/// into filters. Pairing `avoid` with this family is dual by
/// construction: the complements of the maximal avoiders are exactly
/// the filters a fresh avoider would have to miss.
fn dual_filters(poset: &Poset, avoid: &[ElementSet]) -> Result<Vec<ElementSet>, ScaleRefusal> {
    let ideals = enumerate_ideals(poset)?;
    let avoiders: Vec<&ElementSet> = ideals
        .iter()
        .filter(|x| !avoid.iter().any(|i| i.is_subset(x)))
        .collect();
    let full = ElementSet::full(poset.len());
    Ok(avoiders
        .iter()
        .filter(|x| !avoiders.iter().any(|y| *x != y && x.is_subset(y)))
        .map(|x| x.complement_in(&full))
        .collect())
}

pub fn gen_instance(spec: &GeneratorSpec) -> Result<DualInstance, GenError> {
    if spec.n == 0 {
        return Err(GenError::EmptyPoset);
    }
    if !(0.0..=1.0).contains(&spec.edge_density) {
        return Err(GenError::Density(spec.edge_density));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let poset = Arc::new(random_poset(&mut rng, spec.n, spec.edge_density));
    match spec.mode {
        GenMode::Random => {
            let ideals: Vec<ElementSet> = (0..spec.num_ideals)
                .map(|_| random_down_closure(&mut rng, &poset, false))
                .collect();
            let ideals = normalize_members(&ideals);
            let filters: Vec<ElementSet> = (0..spec.num_filters)
                .map(|_| random_up_closure(&mut rng, &poset))
                .filter(|f| ideals.iter().all(|i| i.intersects(f)))
                .collect();
            Ok(DualInstance::validate_in(
                Arc::clone(&poset),
                ElementSet::full(spec.n),
                ideals,
                filters,
            )
            .expect("construction satisfies every invariant"))
        }
        GenMode::ExactlyDual | GenMode::NearDual => {
            let ideals: Vec<ElementSet> = (0..spec.num_ideals.max(1))
                .map(|_| random_down_closure(&mut rng, &poset, true))
                .collect();
            let ideals = normalize_members(&ideals);
            let mut filters = dual_filters(&poset, &ideals)?;
            if spec.mode == GenMode::NearDual && !filters.is_empty() {
                let drop = rng.gen_range(0..filters.len());
                filters.remove(drop);
            }
            Ok(DualInstance::validate_in(
                Arc::clone(&poset),
                ElementSet::full(spec.n),
                ideals,
                filters,
            )
            .expect("construction satisfies every invariant"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{check_dual, CheckOptions};
    use crate::oracle::brute_force_dual;

    fn spec(seed: u64, mode: GenMode) -> GeneratorSpec {
        GeneratorSpec {
            seed,
            n: 7,
            edge_density: 0.3,
            num_ideals: 4,
            num_filters: 4,
            mode,
        }
    }

    #[test]
    fn exactly_dual_is_dual() {
        for seed in 0..30 {
            let inst = gen_instance(&spec(seed, GenMode::ExactlyDual)).unwrap();
            assert!(
                brute_force_dual(&inst).unwrap().is_dual(),
                "seed {seed} not dual"
            );
            assert!(check_dual(&inst, &CheckOptions::default()).is_dual());
        }
    }

    #[test]
    fn near_dual_has_witness() {
        for seed in 0..30 {
            let inst = gen_instance(&spec(seed, GenMode::NearDual)).unwrap();
            let res = check_dual(&inst, &CheckOptions::default());
            let w = res.verdict.witness().expect("dropping a filter reopens a witness");
            assert!(inst.verify_witness(w), "seed {seed}");
        }
    }

    #[test]
    fn random_mode_validates_and_matches_oracle() {
        for seed in 0..30 {
            let inst = gen_instance(&spec(seed, GenMode::Random)).unwrap();
            let fast = check_dual(&inst, &CheckOptions::default());
            let slow = brute_force_dual(&inst).unwrap();
            assert_eq!(fast.is_dual(), slow.is_dual(), "seed {seed}");
        }
    }

    #[test]
    fn seed_determinism() {
        for mode in [GenMode::Random, GenMode::ExactlyDual, GenMode::NearDual] {
            let a = gen_instance(&spec(42, mode)).unwrap();
            let b = gen_instance(&spec(42, mode)).unwrap();
            assert_eq!(a.ideals, b.ideals);
            assert_eq!(a.filters, b.filters);
            assert_eq!(a.ground, b.ground);
        }
    }

    #[test]
    fn bad_specs_rejected() {
        let mut s = spec(1, GenMode::Random);
        s.n = 0;
        assert!(matches!(gen_instance(&s), Err(GenError::EmptyPoset)));
        let mut s2 = spec(1, GenMode::Random);
        s2.edge_density = 1.5;
        assert!(matches!(gen_instance(&s2), Err(GenError::Density(_))));
    }
}
