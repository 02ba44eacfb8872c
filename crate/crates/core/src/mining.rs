//! Minimal closed sets of unary implication bases under monotone
//! properties.
//!
//! A base of unary rules `{a} → b` orders the attributes by `b ⪯ a`;
//! its closed sets are exactly the ideals of that order (after
//! collapsing mutually-implying attribute groups). Monotone properties
//! given by transversal inequalities, such as t-infrequency in a
//! transaction database, admit incremental quasi-polynomial enumeration
//! of their minimal closed sets: each new set is produced by a bounded
//! number of dualization rounds against the sets found so far.

use std::sync::Arc;

use thiserror::Error;

use crate::engine::{check_dual, CheckOptions};
use crate::instance::{DualInstance, InstanceError};
use crate::poset::Poset;
use crate::set::ElementSet;

#[derive(Debug, Error)]
pub enum MiningError {
    #[error("rule {premise:?} -> {conclusion} has premise size {size}; only unary premises are supported (larger bases have no output-polynomial enumeration)")]
    Dimension {
        premise: Vec<usize>,
        conclusion: usize,
        size: usize,
    },
    #[error("duplicate rule {{{premise}}} -> {conclusion}")]
    DuplicateRule { premise: usize, conclusion: usize },
    #[error("attribute id {id} out of range 0..{n}")]
    Index { id: usize, n: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("discard budget exceeded: {discards} discards against a bound of {budget}; this indicates an implementation bug")]
    BudgetViolation { discards: u64, budget: u64 },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// A set of implications `{a} → b` over attributes `0..n`.
#[derive(Debug, Clone)]
pub struct ImplicationBase {
    num_attributes: usize,
    names: Option<Vec<String>>,
    /// (premise attribute, conclusion attribute).
    rules: Vec<(usize, usize)>,
}

impl ImplicationBase {
    pub fn new(num_attributes: usize) -> Self {
        Self {
            num_attributes,
            names: None,
            rules: Vec::new(),
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.num_attributes);
        self.names = Some(names);
        self
    }

    pub fn num_attributes(&self) -> usize {
        self.num_attributes
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn rules(&self) -> &[(usize, usize)] {
        &self.rules
    }

    /// Largest premise size; always 1 for a nonempty base here.
    pub fn dim(&self) -> usize {
        if self.rules.is_empty() {
            0
        } else {
            1
        }
    }

    /// Adds `premise → conclusion`. Premises must be single attributes:
    /// larger ones are rejected rather than silently truncated, and an
    /// empty premise has no place in the order construction.
    pub fn add_rule(&mut self, premise: &[usize], conclusion: usize) -> Result<(), MiningError> {
        if premise.len() != 1 {
            return Err(MiningError::Dimension {
                premise: premise.to_vec(),
                conclusion,
                size: premise.len(),
            });
        }
        let a = premise[0];
        for id in [a, conclusion] {
            if id >= self.num_attributes {
                return Err(MiningError::Index {
                    id,
                    n: self.num_attributes,
                });
            }
        }
        if self.rules.contains(&(a, conclusion)) {
            return Err(MiningError::DuplicateRule {
                premise: a,
                conclusion,
            });
        }
        self.rules.push((a, conclusion));
        Ok(())
    }

    /// Does `X` contain the conclusion of every rule whose premise it
    /// contains?
    pub fn is_closed(&self, x: &ElementSet) -> bool {
        self.rules
            .iter()
            .all(|&(a, b)| !x.contains(a) || x.contains(b))
    }
}

/// The quotient poset of an implication base: mutually-implying
/// attributes form one poset element, and `b ⪯ a` for each rule
/// `{a} → b`. Closed sets of the base correspond bijectively to the
/// ideals of this poset.
#[derive(Debug, Clone)]
pub struct AttributePoset {
    pub poset: Arc<Poset>,
    /// Poset element -> member attributes, ascending.
    pub groups: Vec<Vec<usize>>,
    /// Attribute -> poset element.
    pub attr_group: Vec<usize>,
    pub num_attributes: usize,
}

impl AttributePoset {
    /// The attribute set underlying an ideal of the quotient poset.
    pub fn expand(&self, ideal: &ElementSet) -> ElementSet {
        ElementSet::from_ids(
            self.num_attributes,
            ideal.iter().flat_map(|g| self.groups[g].iter().copied()),
        )
    }

    /// The quotient image of an attribute set, provided the set is a
    /// union of whole groups.
    pub fn restrict(&self, attrs: &ElementSet) -> Option<ElementSet> {
        let mut out = ElementSet::empty(self.poset.len());
        for a in attrs.iter() {
            out.insert(self.attr_group[a]);
        }
        if self.expand(&out) == *attrs {
            Some(out)
        } else {
            None
        }
    }

    /// Is the attribute set a closed set, i.e. the expansion of an
    /// ideal of the quotient poset?
    pub fn is_closed_set(&self, attrs: &ElementSet) -> bool {
        match self.restrict(attrs) {
            Some(ideal) => self.poset.is_ideal(&ideal),
            None => false,
        }
    }
}

/// Builds the quotient poset of a unary base. Cyclic implication
/// chains collapse into single elements; group ids are assigned in
/// order of each group's smallest attribute.
pub fn poset_from_unary_base(base: &ImplicationBase) -> Result<AttributePoset, MiningError> {
    let n = base.num_attributes;
    // reach[a][b]: membership of a implies membership of b.
    let mut reach = vec![false; n * n];
    for i in 0..n {
        reach[i * n + i] = true;
    }
    for &(a, b) in base.rules() {
        reach[a * n + b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i * n + k] {
                for j in 0..n {
                    if reach[k * n + j] {
                        reach[i * n + j] = true;
                    }
                }
            }
        }
    }
    // Mutual reachability classes, ordered by smallest member.
    let mut attr_group = vec![usize::MAX; n];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        if attr_group[a] != usize::MAX {
            continue;
        }
        let gid = groups.len();
        let members: Vec<usize> = (a..n)
            .filter(|&b| reach[a * n + b] && reach[b * n + a])
            .collect();
        for &b in &members {
            attr_group[b] = gid;
        }
        groups.push(members);
    }
    // g ⪯ h when the h-attributes imply the g-attributes.
    let mut edges = Vec::new();
    for (g, mg) in groups.iter().enumerate() {
        for (h, mh) in groups.iter().enumerate() {
            if g != h && reach[mh[0] * n + mg[0]] {
                edges.push((g, h));
            }
        }
    }
    let mut poset =
        Poset::from_edges(groups.len(), &edges).expect("mutual reachability was collapsed");
    if let Some(names) = base.names() {
        let group_names: Vec<String> = groups
            .iter()
            .map(|g| {
                g.iter()
                    .map(|&a| names[a].clone())
                    .collect::<Vec<_>>()
                    .join("+")
            })
            .collect();
        poset = poset
            .with_names(group_names)
            .expect("group names are distinct");
    }
    Ok(AttributePoset {
        poset: Arc::new(poset),
        groups,
        attr_group,
        num_attributes: n,
    })
}

/// A multiset of transactions over attributes `0..universe`.
#[derive(Debug, Clone)]
pub struct TransactionDB {
    pub universe: usize,
    pub rows: Vec<ElementSet>,
}

impl TransactionDB {
    pub fn new(universe: usize, rows: Vec<ElementSet>) -> Self {
        for row in &rows {
            assert!(row.is_subset(&ElementSet::full(universe)));
        }
        Self { universe, rows }
    }

    /// Number of rows containing `x`.
    pub fn support(&self, x: &ElementSet) -> usize {
        self.rows.iter().filter(|r| x.is_subset(r)).count()
    }
}

/// One inequality `Σ_{H : H∩X≠∅} w(H) ≥ t`; monotone in `X` since the
/// weights are nonnegative.
#[derive(Debug, Clone)]
pub struct TransversalInequality {
    pub hyperedges: Vec<ElementSet>,
    pub weights: Vec<f64>,
    pub threshold: f64,
}

impl TransversalInequality {
    pub fn new(hyperedges: Vec<ElementSet>, weights: Vec<f64>, threshold: f64) -> Self {
        assert_eq!(hyperedges.len(), weights.len());
        assert!(weights.iter().all(|&w| w >= 0.0) && threshold >= 0.0);
        Self {
            hyperedges,
            weights,
            threshold,
        }
    }

    pub fn eval(&self, x: &ElementSet) -> f64 {
        self.hyperedges
            .iter()
            .zip(&self.weights)
            .filter(|(h, _)| h.intersects(x))
            .map(|(_, w)| w)
            .sum()
    }

    pub fn holds(&self, x: &ElementSet) -> bool {
        self.eval(x) >= self.threshold
    }
}

/// A conjunction of transversal inequalities.
#[derive(Debug, Clone)]
pub struct MonotoneProperty {
    pub inequalities: Vec<TransversalInequality>,
}

/// The monotone-property contract consumed by the enumeration driver.
/// `hyperedge_total` backs the discard bound of the incremental
/// guarantee; oracles that return `None` run without budget
/// enforcement.
pub trait PiOracle {
    fn eval(&self, x: &ElementSet) -> bool;

    fn hyperedge_total(&self) -> Option<u64> {
        None
    }
}

impl MonotoneProperty {
    pub fn new(inequalities: Vec<TransversalInequality>) -> Self {
        Self { inequalities }
    }
}

impl PiOracle for MonotoneProperty {
    fn eval(&self, x: &ElementSet) -> bool {
        self.inequalities.iter().all(|f| f.holds(x))
    }

    fn hyperedge_total(&self) -> Option<u64> {
        Some(self.inequalities.iter().map(|f| f.hyperedges.len() as u64).sum())
    }
}

/// π(X) = 1 iff `supp(X) ≤ t`: at least `|D| − t` rows have a
/// complement meeting `X`.
pub fn property_infrequent(db: &TransactionDB, t: usize) -> MonotoneProperty {
    let full = ElementSet::full(db.universe);
    let hyperedges: Vec<ElementSet> = db.rows.iter().map(|r| r.complement_in(&full)).collect();
    let weights = vec![1.0; hyperedges.len()];
    let threshold = db.rows.len().saturating_sub(t) as f64;
    MonotoneProperty::new(vec![TransversalInequality::new(
        hyperedges, weights, threshold,
    )])
}

/// π(X) = 1 iff at least `t` rows meet `X`.
pub fn property_row_cover(db: &TransactionDB, t: usize) -> MonotoneProperty {
    let weights = vec![1.0; db.rows.len()];
    MonotoneProperty::new(vec![TransversalInequality::new(
        db.rows.clone(),
        weights,
        t as f64,
    )])
}

/// π(X) = 1 iff `Σ_{x∈X} w_i(x) ≥ t_i` for every weight function; each
/// linear form becomes a transversal inequality over singletons.
pub fn property_linear(universe: usize, weights: &[Vec<f64>], thresholds: &[f64]) -> MonotoneProperty {
    assert_eq!(weights.len(), thresholds.len());
    let inequalities = weights
        .iter()
        .zip(thresholds)
        .map(|(w, &t)| {
            assert_eq!(w.len(), universe);
            let hyperedges: Vec<ElementSet> = (0..universe)
                .map(|a| ElementSet::from_ids(universe, [a]))
                .collect();
            TransversalInequality::new(hyperedges, w.clone(), t)
        })
        .collect();
    MonotoneProperty::new(inequalities)
}

fn eval_ideal(ap: &AttributePoset, pi: &dyn PiOracle, ideal: &ElementSet) -> bool {
    pi.eval(&ap.expand(ideal))
}

fn min_pi_ideal(ap: &AttributePoset, pi: &dyn PiOracle, x: &ElementSet) -> ElementSet {
    debug_assert!(ap.poset.is_ideal(x) && eval_ideal(ap, pi, x));
    let mut cur = x.clone();
    for g in x.to_vec() {
        if !cur.contains(g) {
            continue;
        }
        let candidate = cur.difference(&ap.poset.up_set(g).expect("id in range"));
        if eval_ideal(ap, pi, &candidate) {
            cur = candidate;
        }
    }
    debug_assert!(cur.iter().all(|g| {
        !eval_ideal(
            ap,
            pi,
            &cur.difference(&ap.poset.up_set(g).expect("id in range")),
        )
    }));
    cur
}

fn max_pi_ideal(ap: &AttributePoset, pi: &dyn PiOracle, x: &ElementSet) -> ElementSet {
    debug_assert!(ap.poset.is_ideal(x) && !eval_ideal(ap, pi, x));
    let mut cur = x.clone();
    for g in 0..ap.poset.len() {
        if cur.contains(g) {
            continue;
        }
        let candidate = cur.union(&ap.poset.down_set(g).expect("id in range"));
        if !eval_ideal(ap, pi, &candidate) {
            cur = candidate;
        }
    }
    debug_assert!((0..ap.poset.len()).all(|g| {
        cur.contains(g)
            || eval_ideal(
                ap,
                pi,
                &cur.union(&ap.poset.down_set(g).expect("id in range")),
            )
    }));
    cur
}

fn closed_ideal_of(
    ap: &AttributePoset,
    attrs: &ElementSet,
    what: &str,
) -> Result<ElementSet, MiningError> {
    let ideal = ap
        .restrict(attrs)
        .filter(|i| ap.poset.is_ideal(i))
        .ok_or_else(|| MiningError::Precondition(format!("{what} is not a closed set")))?;
    Ok(ideal)
}

/// The minimal π-satisfying closed set obtained from `x` by a single
/// ascending pass of principal-up-set removals. Requires `x` closed
/// with π(x) = 1.
pub fn min_pi(
    ap: &AttributePoset,
    pi: &dyn PiOracle,
    x: &ElementSet,
) -> Result<ElementSet, MiningError> {
    let ideal = closed_ideal_of(ap, x, "min_pi input")?;
    if !pi.eval(x) {
        return Err(MiningError::Precondition(
            "min_pi requires π(X) = 1".into(),
        ));
    }
    Ok(ap.expand(&min_pi_ideal(ap, pi, &ideal)))
}

/// The maximal π-violating closed set obtained from `x` by a single
/// ascending pass of principal-down-set additions. Requires `x` closed
/// with π(x) = 0.
pub fn max_pi(
    ap: &AttributePoset,
    pi: &dyn PiOracle,
    x: &ElementSet,
) -> Result<ElementSet, MiningError> {
    let ideal = closed_ideal_of(ap, x, "max_pi input")?;
    if pi.eval(x) {
        return Err(MiningError::Precondition(
            "max_pi requires π(X) = 0".into(),
        ));
    }
    Ok(ap.expand(&max_pi_ideal(ap, pi, &ideal)))
}

/// Joint-generation state: the minimal π-satisfying closed sets found
/// so far and the maximal violating ones, both as ideals of the
/// quotient poset.
#[derive(Debug, Clone, Default)]
pub struct EnumState {
    pub x: Vec<ElementSet>,
    pub y: Vec<ElementSet>,
    pub discard_count: u64,
}

/// Outcome of one joint-generation round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    /// A new member of the minimal π-satisfying family (quotient ideal).
    NewMinimal(ElementSet),
    /// A new member of the maximal violating family (quotient ideal).
    NewMaximal(ElementSet),
    /// The two families are jointly complete.
    Exhausted,
}

/// One round of joint generation: dualize the found minimal sets
/// against the complements of the found maximal ones; classify any
/// witness by π and sweep it to the corresponding extreme set.
pub fn joint_gen_step(
    ap: &AttributePoset,
    pi: &dyn PiOracle,
    state: &EnumState,
) -> Result<StepOutcome, MiningError> {
    let n = ap.poset.len();
    let full = ElementSet::full(n);
    let filters: Vec<ElementSet> = state.y.iter().map(|y| y.complement_in(&full)).collect();
    let inst = DualInstance::validate(Arc::clone(&ap.poset), state.x.clone(), filters)?;
    let res = check_dual(&inst, &CheckOptions::default());
    let z = match res.verdict.witness() {
        None => return Ok(StepOutcome::Exhausted),
        Some(z) => z.clone(),
    };
    if eval_ideal(ap, pi, &z) {
        Ok(StepOutcome::NewMinimal(min_pi_ideal(ap, pi, &z)))
    } else {
        let m = max_pi_ideal(ap, pi, &z);
        debug_assert!(
            !state.y.contains(&m),
            "the witness escapes every found maximal set"
        );
        Ok(StepOutcome::NewMaximal(m))
    }
}

fn in_dual_family(ap: &AttributePoset, x_family: &[ElementSet], m: &ElementSet) -> bool {
    // m is a maximal ideal containing no member of x_family iff every
    // one-step extension swallows some member.
    (0..ap.poset.len()).all(|g| {
        m.contains(g) || {
            let ext = m.union(&ap.poset.down_set(g).expect("id in range"));
            x_family.iter().any(|x| x.is_subset(&ext))
        }
    })
}

fn extend_to_dual_family(
    ap: &AttributePoset,
    x_family: &[ElementSet],
    m: &ElementSet,
) -> ElementSet {
    let mut cur = m.clone();
    for g in 0..ap.poset.len() {
        if cur.contains(g) {
            continue;
        }
        let ext = cur.union(&ap.poset.down_set(g).expect("id in range"));
        if !x_family.iter().any(|x| x.is_subset(&ext)) {
            cur = ext;
        }
    }
    debug_assert!(in_dual_family(ap, x_family, &cur));
    cur
}

/// Result of one incremental call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IncOutcome {
    /// A minimal π-satisfying closed set outside the given family
    /// (attribute level).
    NewMinimal(ElementSet),
    /// The given family is the whole minimal π-satisfying family.
    Complete,
}

/// Given verified minimal π-satisfying closed sets, produces one more
/// or reports completeness. Runs joint generation from a fresh empty
/// maximal-side family; discarded maximal sets are counted against the
/// transversal bound (number of hyperedges times `|X|`), whose
/// violation is a hard error.
pub fn enum_inc(
    ap: &AttributePoset,
    pi: &dyn PiOracle,
    x_family: &[ElementSet],
) -> Result<IncOutcome, MiningError> {
    let n = ap.poset.len();
    let full = ElementSet::full(n);
    if x_family.is_empty() {
        // The full set is the unique maximal closed set: the family is
        // nonempty iff it satisfies π.
        return Ok(if eval_ideal(ap, pi, &full) {
            IncOutcome::NewMinimal(ap.expand(&min_pi_ideal(ap, pi, &full)))
        } else {
            IncOutcome::Complete
        });
    }
    let mut ideals = Vec::with_capacity(x_family.len());
    for x in x_family {
        let ideal = closed_ideal_of(ap, x, "enum_inc family member")?;
        if !pi.eval(x) {
            return Err(MiningError::Precondition(format!(
                "family member {x:?} does not satisfy π"
            )));
        }
        ideals.push(ideal);
    }
    let budget = pi.hyperedge_total().map(|h| h * x_family.len() as u64);
    if budget.is_none() {
        eprintln!(
            "warning: π oracle reports no hyperedge count; running without the discard bound"
        );
    }
    let mut state = EnumState {
        x: ideals,
        y: Vec::new(),
        discard_count: 0,
    };
    loop {
        match joint_gen_step(ap, pi, &state)? {
            StepOutcome::Exhausted => return Ok(IncOutcome::Complete),
            StepOutcome::NewMinimal(ideal) => {
                return Ok(IncOutcome::NewMinimal(ap.expand(&ideal)));
            }
            StepOutcome::NewMaximal(m) => {
                if in_dual_family(ap, &state.x, &m) {
                    state.discard_count += 1;
                    if let Some(b) = budget {
                        if state.discard_count > b {
                            return Err(MiningError::BudgetViolation {
                                discards: state.discard_count,
                                budget: b,
                            });
                        }
                    }
                    state.y.push(m);
                } else {
                    // m is maximal among violating closed sets, so any
                    // strict extension satisfies π; extending it to a
                    // maximal avoider of the found family yields a set
                    // whose minimization is new.
                    let ext = extend_to_dual_family(ap, &state.x, &m);
                    debug_assert!(ext != m && eval_ideal(ap, pi, &ext));
                    return Ok(IncOutcome::NewMinimal(
                        ap.expand(&min_pi_ideal(ap, pi, &ext)),
                    ));
                }
            }
        }
    }
}

/// All minimal π-satisfying closed sets, in discovery order, by
/// repeated incremental calls.
pub fn enumerate_all(
    ap: &AttributePoset,
    pi: &dyn PiOracle,
) -> Result<Vec<ElementSet>, MiningError> {
    let mut found: Vec<ElementSet> = Vec::new();
    loop {
        match enum_inc(ap, pi, &found)? {
            IncOutcome::Complete => return Ok(found),
            IncOutcome::NewMinimal(s) => {
                debug_assert!(!found.contains(&s), "duplicate emission");
                found.push(s);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enumerate_ideals;
    use crate::testutil::set;

    // Attribute ids: Bread=0, Butter=1, Cheese=2, Milk=3.
    fn grocery_base() -> ImplicationBase {
        let mut base = ImplicationBase::new(4).with_names(vec![
            "Bread".into(),
            "Butter".into(),
            "Cheese".into(),
            "Milk".into(),
        ]);
        base.add_rule(&[1], 0).unwrap(); // Butter -> Bread
        base.add_rule(&[2], 0).unwrap(); // Cheese -> Bread
        base.add_rule(&[2], 3).unwrap(); // Cheese -> Milk
        base
    }

    fn fixture_db() -> TransactionDB {
        TransactionDB::new(
            4,
            vec![
                set(4, &[0, 1]),
                set(4, &[0, 1]),
                set(4, &[0, 3]),
                set(4, &[0, 2, 3]),
                set(4, &[0]),
            ],
        )
    }

    /// All minimal π-satisfying closed sets by exhaustive scan.
    fn brute_force_minimal(ap: &AttributePoset, pi: &dyn PiOracle) -> Vec<ElementSet> {
        let ideals = enumerate_ideals(&ap.poset).unwrap();
        let sat: Vec<ElementSet> = ideals
            .iter()
            .filter(|i| eval_ideal(ap, pi, i))
            .cloned()
            .collect();
        sat.iter()
            .filter(|i| !sat.iter().any(|j| j != *i && j.is_subset(i)))
            .map(|i| ap.expand(i))
            .collect()
    }

    fn sorted(mut v: Vec<ElementSet>) -> Vec<ElementSet> {
        v.sort_by(|a, b| a.cmp_graded_lex(b));
        v
    }

    #[test]
    fn base_construction_and_order() {
        let ap = poset_from_unary_base(&grocery_base()).unwrap();
        assert_eq!(ap.poset.len(), 4);
        assert!(ap.poset.leq(0, 1), "Bread below Butter");
        assert!(ap.poset.leq(0, 2), "Bread below Cheese");
        assert!(ap.poset.leq(3, 2), "Milk below Cheese");
        assert!(!ap.poset.leq(3, 1));
        assert_eq!(enumerate_ideals(&ap.poset).unwrap().len(), 8);
    }

    #[test]
    fn empty_base_gives_antichain() {
        let ap = poset_from_unary_base(&ImplicationBase::new(3)).unwrap();
        assert_eq!(enumerate_ideals(&ap.poset).unwrap().len(), 8);
    }

    #[test]
    fn mutual_implication_collapses() {
        let mut base = ImplicationBase::new(3);
        base.add_rule(&[0], 1).unwrap();
        base.add_rule(&[1], 0).unwrap();
        base.add_rule(&[2], 0).unwrap();
        let ap = poset_from_unary_base(&base).unwrap();
        assert_eq!(ap.poset.len(), 2);
        assert_eq!(ap.groups[0], vec![0, 1]);
        // {0,1} below 2; the expansion of the principal ideal of the
        // collapsed element is both attributes.
        let ideal = set(2, &[0]);
        assert_eq!(ap.expand(&ideal).to_vec(), vec![0, 1]);
        assert!(ap.restrict(&set(3, &[0])).is_none(), "half a group");
    }

    #[test]
    fn wide_and_empty_premises_rejected() {
        let mut base = ImplicationBase::new(4);
        assert!(matches!(
            base.add_rule(&[0, 1], 2),
            Err(MiningError::Dimension { size: 2, .. })
        ));
        assert!(matches!(
            base.add_rule(&[], 2),
            Err(MiningError::Dimension { size: 0, .. })
        ));
        base.add_rule(&[0], 1).unwrap();
        assert!(matches!(
            base.add_rule(&[0], 1),
            Err(MiningError::DuplicateRule { .. })
        ));
    }

    #[test]
    fn closure_matches_ideals_exhaustively() {
        let base = grocery_base();
        let ap = poset_from_unary_base(&base).unwrap();
        for mask in 0u32..16 {
            let x = ElementSet::from_ids(4, (0..4).filter(|i| mask >> i & 1 == 1));
            assert_eq!(base.is_closed(&x), ap.is_closed_set(&x), "at {x:?}");
        }
    }

    #[test]
    fn support_and_closedness() {
        let db = fixture_db();
        let base = grocery_base();
        assert!(base.is_closed(&set(4, &[0, 2, 3])), "{{B,C,M}} closed");
        assert_eq!(db.support(&set(4, &[0, 2, 3])), 1);
        assert_eq!(db.support(&set(4, &[])), 5);
        assert_eq!(db.support(&set(4, &[0, 1])), 2);
        assert_eq!(db.support(&set(4, &[3])), 2);
    }

    #[test]
    fn infrequency_property_evaluation() {
        let db = fixture_db();
        let pi = property_infrequent(&db, 3);
        let f = &pi.inequalities[0];
        assert_eq!(f.hyperedges.len(), 5);
        assert_eq!(f.threshold, 2.0);
        // Three rows miss Milk, so {Milk} is 3-infrequent.
        assert_eq!(f.eval(&set(4, &[3])), 3.0);
        assert!(pi.eval(&set(4, &[3])));
        assert!(!pi.eval(&set(4, &[])), "f(∅) = 0 below the threshold");
        assert_eq!(f.eval(&ElementSet::full(4)), 5.0, "every complement hit");
    }

    #[test]
    fn linear_property_counts_cardinality() {
        let pi = property_linear(3, &[vec![1.0, 1.0, 1.0]], &[2.0]);
        assert!(!pi.eval(&set(3, &[0])));
        assert!(pi.eval(&set(3, &[0, 2])));
    }

    #[test]
    fn row_cover_property() {
        let db = fixture_db();
        let pi = property_row_cover(&db, 5);
        assert!(pi.eval(&set(4, &[0])), "Bread meets every row");
        assert!(!pi.eval(&set(4, &[3])), "Milk meets only two rows");
    }

    #[test]
    fn min_pi_fixture_trace() {
        let ap = poset_from_unary_base(&grocery_base()).unwrap();
        let pi = property_infrequent(&fixture_db(), 3);
        let out = min_pi(&ap, &pi, &ElementSet::full(4)).unwrap();
        assert_eq!(out.to_vec(), vec![3], "the Milk singleton");
        // Already-minimal input is a fixed point.
        assert_eq!(min_pi(&ap, &pi, &out).unwrap(), out);
    }

    #[test]
    fn max_pi_fixture_trace() {
        let ap = poset_from_unary_base(&grocery_base()).unwrap();
        let pi = property_infrequent(&fixture_db(), 3);
        let out = max_pi(&ap, &pi, &ElementSet::empty(4)).unwrap();
        assert_eq!(out.to_vec(), vec![0], "the Bread singleton");
    }

    #[test]
    fn greedy_preconditions() {
        let ap = poset_from_unary_base(&grocery_base()).unwrap();
        let pi = property_infrequent(&fixture_db(), 3);
        assert!(min_pi(&ap, &pi, &ElementSet::empty(4)).is_err(), "π = 0");
        assert!(max_pi(&ap, &pi, &ElementSet::full(4)).is_err(), "π = 1");
        // {Butter} alone is not closed (Butter -> Bread).
        assert!(min_pi(&ap, &pi, &set(4, &[1])).is_err());
    }

    #[test]
    fn enum_inc_fixture_steps() {
        let ap = poset_from_unary_base(&grocery_base()).unwrap();
        let pi = property_infrequent(&fixture_db(), 3);
        let first = enum_inc(&ap, &pi, &[]).unwrap();
        assert_eq!(first, IncOutcome::NewMinimal(set(4, &[3])));
        let second = enum_inc(&ap, &pi, &[set(4, &[3])]).unwrap();
        assert_eq!(second, IncOutcome::NewMinimal(set(4, &[0, 1])));
        let done = enum_inc(&ap, &pi, &[set(4, &[3]), set(4, &[0, 1])]).unwrap();
        assert_eq!(done, IncOutcome::Complete);
    }

    #[test]
    fn enumerate_all_fixture() {
        let ap = poset_from_unary_base(&grocery_base()).unwrap();
        let pi = property_infrequent(&fixture_db(), 3);
        let all = enumerate_all(&ap, &pi).unwrap();
        assert_eq!(
            all.iter().map(|s| s.to_vec()).collect::<Vec<_>>(),
            vec![vec![3], vec![0, 1]],
            "minimal 3-infrequent closed sets: {{Milk}} and {{Bread,Butter}}"
        );
        assert_eq!(sorted(all), sorted(brute_force_minimal(&ap, &pi)));
    }

    #[test]
    fn enumerate_all_reconstructed_db() {
        // A database in which {Bread,Butter} and {Bread,Milk} are the
        // minimal 3-infrequent closed sets and {Bread,Cheese,Milk} has
        // support 2.
        let db = TransactionDB::new(
            4,
            vec![
                set(4, &[0, 2, 3]),
                set(4, &[0, 2, 3]),
                set(4, &[3]),
                set(4, &[0, 1]),
                set(4, &[0, 3]),
                set(4, &[0]),
            ],
        );
        assert_eq!(db.support(&set(4, &[0, 2, 3])), 2);
        let ap = poset_from_unary_base(&grocery_base()).unwrap();
        let pi = property_infrequent(&db, 3);
        let all = sorted(enumerate_all(&ap, &pi).unwrap());
        assert_eq!(
            all.iter().map(|s| s.to_vec()).collect::<Vec<_>>(),
            vec![vec![0, 1], vec![0, 3]]
        );
        assert_eq!(all, sorted(brute_force_minimal(&ap, &pi)));
    }

    #[test]
    fn trivial_properties() {
        let ap = poset_from_unary_base(&grocery_base()).unwrap();
        // π ≡ 1: threshold 0 is met by every set including ∅.
        let always = property_infrequent(&fixture_db(), 5);
        assert_eq!(
            enumerate_all(&ap, &always)
                .unwrap()
                .iter()
                .map(|s| s.to_vec())
                .collect::<Vec<_>>(),
            vec![Vec::<usize>::new()]
        );
        // π ≡ 0: an unreachable threshold empties the stream.
        let never = MonotoneProperty::new(vec![TransversalInequality::new(
            fixture_db().rows.clone(),
            vec![1.0; 5],
            100.0,
        )]);
        assert!(enumerate_all(&ap, &never).unwrap().is_empty());
    }

    #[test]
    fn joint_gen_exhausted_on_full_families() {
        let ap = poset_from_unary_base(&grocery_base()).unwrap();
        let pi = property_infrequent(&fixture_db(), 3);
        // Brute-force both extreme families, then assert joint
        // completeness.
        let ideals = enumerate_ideals(&ap.poset).unwrap();
        let sat: Vec<ElementSet> = ideals
            .iter()
            .filter(|i| eval_ideal(&ap, &pi, i))
            .cloned()
            .collect();
        let unsat: Vec<ElementSet> = ideals
            .iter()
            .filter(|i| !eval_ideal(&ap, &pi, i))
            .cloned()
            .collect();
        let state = EnumState {
            x: sat
                .iter()
                .filter(|i| !sat.iter().any(|j| j != *i && j.is_subset(i)))
                .cloned()
                .collect(),
            y: unsat
                .iter()
                .filter(|i| !unsat.iter().any(|j| j != *i && i.is_subset(j)))
                .cloned()
                .collect(),
            discard_count: 0,
        };
        assert_eq!(
            joint_gen_step(&ap, &pi, &state).unwrap(),
            StepOutcome::Exhausted
        );
    }

    #[test]
    fn random_instances_match_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..50 {
            let n = rng.gen_range(2..=7);
            let mut base = ImplicationBase::new(n);
            for a in 0..n {
                for b in 0..n {
                    if a != b && rng.gen_bool(0.25) {
                        let _ = base.add_rule(&[a], b);
                    }
                }
            }
            let ap = poset_from_unary_base(&base).unwrap();
            let rows: Vec<ElementSet> = (0..rng.gen_range(1..=6))
                .map(|_| {
                    ElementSet::from_ids(n, (0..n).filter(|_| rng.gen_bool(0.5)))
                })
                .collect();
            let t = rng.gen_range(0..=rows.len());
            let db = TransactionDB::new(n, rows);
            let pi = property_infrequent(&db, t);
            let got = sorted(enumerate_all(&ap, &pi).unwrap());
            let want = sorted(brute_force_minimal(&ap, &pi));
            assert_eq!(got, want, "n={n}, t={t}");
        }
    }
}
