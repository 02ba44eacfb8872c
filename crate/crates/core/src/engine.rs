//! The quasi-polynomial duality-testing recursion: base cases, the
//! three decomposition rules, balanced-set construction, and the full
//! recursive procedure with witness propagation and call counting.

use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use thiserror::Error;

use crate::chi::chi;
use crate::instance::DualInstance;
use crate::oracle::Verdict;
use crate::set::ElementSet;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Instrumentation for one `check_dual` run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursionStats {
    /// Total recursive invocations, counting the root.
    pub calls: u64,
    /// Deepest recursion level reached (root is depth 0).
    pub max_depth: usize,
    /// `|I|·|F|` at the root, after normalization.
    pub root_volume: u64,
}

/// The `ε` pair driving one recursion level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Epsilons {
    pub eps1: f64,
    pub eps2: f64,
    pub v: u64,
}

impl Epsilons {
    pub fn for_volume(v: u64) -> Self {
        let c = chi(v as f64).expect("volume is positive");
        Self {
            eps1: 1.0 / c,
            eps2: 2.0 / c,
            v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Base case, `min{|I|,|F|} ≤ 1`.
    Simple,
    /// Decomposition on a common large-degree element.
    Element(usize),
    /// Balanced-ideal split of the ideal family.
    BalancedIdeal,
    /// Balanced-filter split of the filter family.
    BalancedFilter,
}

/// One line of the per-call volume trace.
#[derive(Debug, Clone)]
pub struct TraceEntry {
    pub depth: usize,
    pub volume: u64,
    pub branch: Branch,
    pub child_volumes: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct CheckOptions {
    /// Evaluate independent subcalls concurrently. Sequential mode
    /// short-circuits on the first non-dual child and therefore
    /// guarantees bit-identical stats across runs.
    pub parallel: bool,
    /// Collect the per-call volume trace (forces sequential order).
    pub trace: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            parallel: false,
            trace: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DualResult {
    pub verdict: Verdict,
    pub stats: RecursionStats,
    pub trace: Vec<TraceEntry>,
}

impl DualResult {
    pub fn is_dual(&self) -> bool {
        self.verdict.is_dual()
    }
}

/// Elements whose degree in `family` is at least `eps·|family|`.
pub fn large_degree_set(
    family: &[ElementSet],
    eps: f64,
    universe: usize,
) -> Result<ElementSet, EngineError> {
    if family.is_empty() {
        return Err(EngineError::Precondition(
            "large_degree_set needs a nonempty family".into(),
        ));
    }
    Ok(large_degree_unchecked(family, eps, universe))
}

fn large_degree_unchecked(family: &[ElementSet], eps: f64, universe: usize) -> ElementSet {
    let threshold = eps * family.len() as f64;
    let mut degrees = vec![0u32; universe];
    for member in family {
        for p in member.iter() {
            degrees[p] += 1;
        }
    }
    ElementSet::from_ids(
        universe,
        (0..universe).filter(|&p| degrees[p] as f64 >= threshold),
    )
}

fn count_within(family: &[ElementSet], region: &ElementSet) -> usize {
    family.iter().filter(|m| m.is_subset(region)).count()
}

/// The balanced-set scan shared by the ideal and filter versions. All
/// of `L` and the family members live on one side of the order, so the
/// returned union is automatically closed on that side.
fn find_balanced_set(
    family: &[ElementSet],
    large: &ElementSet,
    ground: &ElementSet,
    eps1: f64,
    eps2: f64,
) -> Result<ElementSet, EngineError> {
    let m = family.len() as f64;
    if family.is_empty() || eps1 >= eps2 || eps2 >= 1.0 {
        return Err(EngineError::Precondition(format!(
            "balanced-set scan needs a nonempty family and 0 < eps1 < eps2 < 1 (eps1={eps1}, eps2={eps2})"
        )));
    }
    let threshold = (1.0 - eps2) * m;
    if count_within(family, large) as f64 > threshold {
        return Err(EngineError::Precondition(
            "too many members inside the large-degree set".into(),
        ));
    }
    // Scan elements of ground ∖ L in ascending id order, peeling one at
    // a time until the number of surviving members first drops to the
    // threshold; the balanced set is the union of the survivors.
    let mut alive: Vec<bool> = family
        .iter()
        .map(|member| member.is_subset(ground))
        .collect();
    let mut alive_count = alive.iter().filter(|&&a| a).count();
    if (alive_count as f64) <= threshold {
        return Err(EngineError::Precondition(
            "family does not live on the given ground".into(),
        ));
    }
    for p in ground.difference(large).iter() {
        let hit: Vec<usize> = (0..family.len())
            .filter(|&i| alive[i] && family[i].contains(p))
            .collect();
        if (alive_count - hit.len()) as f64 <= threshold {
            // Removal of p would cross the threshold: stop before it.
            let mut s = large.clone();
            for (i, member) in family.iter().enumerate() {
                if alive[i] {
                    s.union_with(member);
                }
            }
            let inside = count_within(family, &s) as f64;
            debug_assert!(inside > threshold && inside < (1.0 - (eps2 - eps1)) * m);
            return Ok(s);
        }
        for i in hit {
            alive[i] = false;
            alive_count -= 1;
        }
    }
    Err(EngineError::Precondition(
        "balanced-set scan exhausted the ground".into(),
    ))
}

/// A `(1−ε₂, 1−(ε₂−ε₁))`-balanced ideal containing the large-degree
/// set of the ideal family.
pub fn find_balanced_ideal(
    inst: &DualInstance,
    eps1: f64,
    eps2: f64,
) -> Result<ElementSet, EngineError> {
    let large = large_degree_unchecked(&inst.ideals, eps1, inst.poset.len());
    let s = find_balanced_set(&inst.ideals, &large, &inst.ground, eps1, eps2)?;
    debug_assert!(inst.poset.is_ideal_in(&s, &inst.ground));
    Ok(s)
}

/// Mirror of `find_balanced_ideal` for the filter family.
pub fn find_balanced_filter(
    inst: &DualInstance,
    eps1: f64,
    eps2: f64,
) -> Result<ElementSet, EngineError> {
    let large = large_degree_unchecked(&inst.filters, eps1, inst.poset.len());
    let s = find_balanced_set(&inst.filters, &large, &inst.ground, eps1, eps2)?;
    debug_assert!(inst.poset.is_filter_in(&s, &inst.ground));
    Ok(s)
}

/// Splits the instance on one element: the pair is dual iff both
/// subinstances (on ground ∖ p⁻ and ground ∖ p⁺) are dual. Families
/// are the exact projections, without normalization.
pub fn decompose_element(inst: &DualInstance, p: usize) -> (DualInstance, DualInstance) {
    let pm = inst.poset.down_set_in(p, &inst.ground);
    let pp = inst.poset.up_set_in(p, &inst.ground);

    let g1 = inst.ground.difference(&pm);
    let i1: Vec<ElementSet> = inst.ideals.iter().map(|i| i.difference(&pm)).collect();
    let f1: Vec<ElementSet> = inst
        .filters
        .iter()
        .filter(|f| !f.intersects(&pm))
        .cloned()
        .collect();

    let g2 = inst.ground.difference(&pp);
    let i2: Vec<ElementSet> = inst
        .ideals
        .iter()
        .filter(|i| !i.intersects(&pp))
        .cloned()
        .collect();
    let f2: Vec<ElementSet> = inst.filters.iter().map(|f| f.difference(&pp)).collect();

    (
        DualInstance::from_parts(Arc::clone(&inst.poset), g1, i1, f1),
        DualInstance::from_parts(Arc::clone(&inst.poset), g2, i2, f2),
    )
}

/// Splits on an ideal `S`: one subinstance inside `S`, plus one
/// subinstance on ground ∖ Y⁺ per distinct projection `Y` of a filter
/// onto `S`. Returns each child with the `Y` that produced it.
pub fn decompose_ideal(
    inst: &DualInstance,
    s: &ElementSet,
) -> Result<(DualInstance, Vec<(ElementSet, DualInstance)>), EngineError> {
    if !inst.poset.is_ideal_in(s, &inst.ground) {
        return Err(EngineError::Precondition(format!(
            "decompose_ideal: {s:?} is not an ideal of the instance ground"
        )));
    }
    let inside_ideals: Vec<ElementSet> = inst
        .ideals
        .iter()
        .filter(|i| i.is_subset(s))
        .cloned()
        .collect();
    let projections: Vec<ElementSet> = {
        let mut ys: Vec<ElementSet> = inst.filters.iter().map(|f| f.intersection(s)).collect();
        ys.sort_by(|a, b| a.cmp_graded_lex(b));
        ys.dedup();
        ys
    };
    let inside = DualInstance::from_parts(
        Arc::clone(&inst.poset),
        s.clone(),
        inside_ideals,
        projections.clone(),
    );
    let children = projections
        .into_iter()
        .map(|y| {
            let y_up = inst.poset.up_closure_in(&y, &inst.ground);
            let g = inst.ground.difference(&y_up);
            let ideals: Vec<ElementSet> = inst
                .ideals
                .iter()
                .filter(|i| !i.intersects(&y_up))
                .cloned()
                .collect();
            let filters: Vec<ElementSet> =
                inst.filters.iter().map(|f| f.difference(&y_up)).collect();
            let child = DualInstance::from_parts(Arc::clone(&inst.poset), g, ideals, filters);
            (y, child)
        })
        .collect();
    Ok((inside, children))
}

/// Mirror of `decompose_ideal` for a filter `S`, splitting on the
/// distinct projections of the ideal family onto `S`.
pub fn decompose_filter(
    inst: &DualInstance,
    s: &ElementSet,
) -> Result<(DualInstance, Vec<(ElementSet, DualInstance)>), EngineError> {
    if !inst.poset.is_filter_in(s, &inst.ground) {
        return Err(EngineError::Precondition(format!(
            "decompose_filter: {s:?} is not a filter of the instance ground"
        )));
    }
    let inside_filters: Vec<ElementSet> = inst
        .filters
        .iter()
        .filter(|f| f.is_subset(s))
        .cloned()
        .collect();
    let projections: Vec<ElementSet> = {
        let mut ys: Vec<ElementSet> = inst.ideals.iter().map(|i| i.intersection(s)).collect();
        ys.sort_by(|a, b| a.cmp_graded_lex(b));
        ys.dedup();
        ys
    };
    let inside = DualInstance::from_parts(
        Arc::clone(&inst.poset),
        s.clone(),
        projections.clone(),
        inside_filters,
    );
    let children = projections
        .into_iter()
        .map(|y| {
            let y_down = inst.poset.down_closure_in(&y, &inst.ground);
            let g = inst.ground.difference(&y_down);
            let ideals: Vec<ElementSet> =
                inst.ideals.iter().map(|i| i.difference(&y_down)).collect();
            let filters: Vec<ElementSet> = inst
                .filters
                .iter()
                .filter(|f| !f.intersects(&y_down))
                .cloned()
                .collect();
            let child = DualInstance::from_parts(Arc::clone(&inst.poset), g, ideals, filters);
            (y, child)
        })
        .collect();
    Ok((inside, children))
}

/// Base case: duality testing when `min{|I|,|F|} ≤ 1`.
pub fn simple_dual(inst: &DualInstance) -> Result<DualResult, EngineError> {
    if inst.num_ideals() > 1 && inst.num_filters() > 1 {
        return Err(EngineError::Precondition(
            "simple_dual requires min{|I|,|F|} <= 1".into(),
        ));
    }
    let verdict = simple_verdict(inst);
    Ok(DualResult {
        verdict,
        stats: RecursionStats {
            calls: 1,
            max_depth: 0,
            root_volume: inst.volume(),
        },
        trace: Vec::new(),
    })
}

fn simple_verdict(inst: &DualInstance) -> Verdict {
    let (m, k) = (inst.num_ideals(), inst.num_filters());
    debug_assert!(m.min(k) <= 1);
    if m == 0 && k == 0 {
        return Verdict::NotDual {
            witness: ElementSet::empty(inst.poset.len()),
        };
    }
    if m == 0 {
        // (∅, F) is dual iff ∅ ∈ F; otherwise the whole ground meets
        // every filter and contains no ideal member.
        return if inst.filters.iter().any(|f| f.is_empty()) {
            Verdict::Dual
        } else {
            Verdict::NotDual {
                witness: inst.ground.clone(),
            }
        };
    }
    if k == 0 {
        // (I, ∅) is dual iff ∅ ∈ I.
        return if inst.ideals.iter().any(|i| i.is_empty()) {
            Verdict::Dual
        } else {
            Verdict::NotDual {
                witness: ElementSet::empty(inst.poset.len()),
            }
        };
    }
    if m == 1 {
        // Dual iff every p in the single ideal has some filter inside
        // p⁺; a failing p yields the witness ground ∖ p⁺.
        for p in inst.ideals[0].iter() {
            let p_up = inst.poset.up_set_in(p, &inst.ground);
            if !inst.filters.iter().any(|f| f.is_subset(&p_up)) {
                return Verdict::NotDual {
                    witness: inst.ground.difference(&p_up),
                };
            }
        }
        return Verdict::Dual;
    }
    // k == 1: dual iff every p in the single filter has some ideal
    // inside p⁻; a failing p yields the witness p⁻.
    for p in inst.filters[0].iter() {
        let p_down = inst.poset.down_set_in(p, &inst.ground);
        if !inst.ideals.iter().any(|i| i.is_subset(&p_down)) {
            return Verdict::NotDual { witness: p_down };
        }
    }
    Verdict::Dual
}

/// How a child's witness maps back to the parent ground.
#[derive(Clone)]
enum Lift {
    Identity,
    UnionWith(ElementSet),
}

impl Lift {
    fn apply(&self, witness: ElementSet) -> ElementSet {
        match self {
            Lift::Identity => witness,
            Lift::UnionWith(fixed) => witness.union(fixed),
        }
    }
}

struct RunOutcome {
    verdict: Verdict,
    calls: u64,
    max_depth: usize,
}

/// The full duality-testing procedure. Returns the verdict, a witness
/// on non-duality, and recursion statistics; optionally a per-call
/// volume trace.
pub fn check_dual(inst: &DualInstance, opts: &CheckOptions) -> DualResult {
    // The instance is taken as given: redundant members are legal and
    // only enlarge the volume. Subinstances are normalized as they are
    // produced.
    let root = inst.clone();
    let trace = Mutex::new(Vec::new());
    let collect = if opts.trace { Some(&trace) } else { None };
    // Trace lines are pushed in visit order, so tracing forces the
    // sequential strategy.
    let parallel = opts.parallel && !opts.trace;
    let out = recurse(&root, 0, parallel, collect);
    DualResult {
        verdict: out.verdict,
        stats: RecursionStats {
            calls: out.calls,
            max_depth: out.max_depth,
            root_volume: root.volume(),
        },
        trace: trace.into_inner().unwrap(),
    }
}

fn recurse(
    inst: &DualInstance,
    depth: usize,
    parallel: bool,
    trace: Option<&Mutex<Vec<TraceEntry>>>,
) -> RunOutcome {
    let (m, k) = (inst.num_ideals(), inst.num_filters());
    if m.min(k) <= 1 {
        if let Some(t) = trace {
            t.lock().unwrap().push(TraceEntry {
                depth,
                volume: inst.volume(),
                branch: Branch::Simple,
                child_volumes: Vec::new(),
            });
        }
        return RunOutcome {
            verdict: simple_verdict(inst),
            calls: 1,
            max_depth: depth,
        };
    }

    let eps = Epsilons::for_volume(inst.volume());
    let n = inst.poset.len();
    let l1 = large_degree_unchecked(&inst.ideals, eps.eps1, n);
    let l2 = large_degree_unchecked(&inst.filters, eps.eps1, n);
    let ideals_in_l1 = count_within(&inst.ideals, &l1);
    let filters_in_l2 = count_within(&inst.filters, &l2);

    let (branch, children) = if ideals_in_l1 >= 1 && filters_in_l2 >= 1 {
        // The intersection condition puts a whole (I, F) pair inside
        // L1 × L2, so a common large-degree element exists.
        let p = l1
            .intersection(&l2)
            .iter()
            .next()
            .unwrap_or_else(|| max_degree_element(inst));
        (Branch::Element(p), element_children(inst, p))
    } else if ideals_in_l1 == 0 {
        match find_balanced_ideal(inst, eps.eps1, eps.eps2) {
            Ok(s) => {
                let outside = m - count_within(&inst.ideals, &s);
                let frac = outside as f64 / m as f64;
                assert!(
                    frac > eps.eps2 - eps.eps1 - 1e-12 && frac <= eps.eps2 + 1e-12,
                    "balanced-ideal fraction {frac} outside ({}, {}]",
                    eps.eps2 - eps.eps1,
                    eps.eps2
                );
                let (inside, avoid) = decompose_ideal(inst, &s).expect("S is an ideal");
                let mut children = vec![(inside.normalized(), Lift::Identity)];
                children.extend(
                    avoid
                        .into_iter()
                        .map(|(_, child)| (child.normalized(), Lift::Identity)),
                );
                (Branch::BalancedIdeal, children)
            }
            // Unreachable by the case analysis; kept as a guard.
            Err(_) => {
                let p = max_degree_element(inst);
                (Branch::Element(p), element_children(inst, p))
            }
        }
    } else {
        match find_balanced_filter(inst, eps.eps1, eps.eps2) {
            Ok(s) => {
                let outside = k - count_within(&inst.filters, &s);
                let frac = outside as f64 / k as f64;
                assert!(
                    frac > eps.eps2 - eps.eps1 - 1e-12 && frac <= eps.eps2 + 1e-12,
                    "balanced-filter fraction {frac} outside ({}, {}]",
                    eps.eps2 - eps.eps1,
                    eps.eps2
                );
                let (inside, avoid) = decompose_filter(inst, &s).expect("S is a filter");
                let s_complement = inst.ground.difference(&s);
                let mut children = vec![(inside.normalized(), Lift::UnionWith(s_complement))];
                children.extend(avoid.into_iter().map(|(y, child)| {
                    let y_down = inst.poset.down_closure_in(&y, &inst.ground);
                    (child.normalized(), Lift::UnionWith(y_down))
                }));
                (Branch::BalancedFilter, children)
            }
            Err(_) => {
                let p = max_degree_element(inst);
                (Branch::Element(p), element_children(inst, p))
            }
        }
    };

    if let Some(t) = trace {
        t.lock().unwrap().push(TraceEntry {
            depth,
            volume: inst.volume(),
            branch,
            child_volumes: children.iter().map(|(c, _)| c.volume()).collect(),
        });
    }

    let combine = |outcomes: Vec<(RunOutcome, &Lift)>| -> RunOutcome {
        let mut calls = 1;
        let mut max_depth = depth;
        let mut verdict = Verdict::Dual;
        for (out, lift) in outcomes {
            calls += out.calls;
            max_depth = max_depth.max(out.max_depth);
            if verdict.is_dual() {
                if let Verdict::NotDual { witness } = out.verdict {
                    let lifted = lift.apply(witness);
                    debug_assert!(
                        inst.verify_witness(&lifted),
                        "lifted witness failed verification"
                    );
                    verdict = Verdict::NotDual { witness: lifted };
                }
            }
        }
        RunOutcome {
            verdict,
            calls,
            max_depth,
        }
    };

    if parallel && children.len() > 1 {
        let outcomes: Vec<RunOutcome> = children
            .par_iter()
            .map(|(child, _)| recurse(child, depth + 1, true, trace))
            .collect();
        combine(
            outcomes
                .into_iter()
                .zip(children.iter().map(|(_, lift)| lift))
                .collect(),
        )
    } else {
        // Sequential: short-circuit on the first non-dual child.
        let mut calls = 1;
        let mut max_depth = depth;
        for (child, lift) in &children {
            let out = recurse(child, depth + 1, parallel, trace);
            calls += out.calls;
            max_depth = max_depth.max(out.max_depth);
            if let Verdict::NotDual { witness } = out.verdict {
                let lifted = lift.apply(witness);
                debug_assert!(
                    inst.verify_witness(&lifted),
                    "lifted witness failed verification"
                );
                return RunOutcome {
                    verdict: Verdict::NotDual { witness: lifted },
                    calls,
                    max_depth,
                };
            }
        }
        RunOutcome {
            verdict: Verdict::Dual,
            calls,
            max_depth,
        }
    }
}

fn element_children(inst: &DualInstance, p: usize) -> Vec<(DualInstance, Lift)> {
    let pm = inst.poset.down_set_in(p, &inst.ground);
    let (a, b) = decompose_element(inst, p);
    vec![
        (a.normalized(), Lift::UnionWith(pm)),
        (b.normalized(), Lift::Identity),
    ]
}

fn max_degree_element(inst: &DualInstance) -> usize {
    let n = inst.poset.len();
    let mut degrees = vec![0u64; n];
    for member in inst.ideals.iter().chain(&inst.filters) {
        for p in member.iter() {
            degrees[p] += 1;
        }
    }
    inst.ground
        .iter()
        .max_by_key(|&p| degrees[p])
        .expect("nonempty ground")
}
