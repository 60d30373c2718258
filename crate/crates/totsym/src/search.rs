//! Exhaustive, pruned enumeration of totally symmetric sets.
//!
//! The search walks each conjugacy class depth-first, building candidate
//! tuples in ascending element-id order. A partial tuple is extended only if
//!
//! 1. every ordered pair of its members lies in one simultaneous-conjugacy
//!    orbit (the [`PairTypeKey`] of a totally symmetric set is constant
//!    across all its ordered pairs), and
//! 2. the partial tuple is itself totally symmetric (subsets of totally
//!    symmetric sets are totally symmetric, so nothing is ever pruned away).
//!
//! Complete tuples are deduplicated to conjugation-orbit representatives at
//! the leaves via [`canonical_form`]. Both prunes are exact, so the output
//! is set-for-set equal to an unpruned scan of all k-subsets of each class.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::group::{FiniteGroup, GroupError};
use crate::tss::{CandidateSet, TssCertificate};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("pair type requires two distinct elements (got id {id} twice)")]
    EqualPairElements { id: usize },
    #[error("subset sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("target size k must be at least 1")]
    InvalidK,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Wall-clock budget for a search. Expired budgets make searches return
/// partial results marked incomplete rather than truncating silently.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    deadline: Option<Instant>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget { deadline: None }
    }

    pub fn from_seconds(secs: u64) -> Self {
        SearchBudget {
            deadline: Some(Instant::now() + Duration::from_secs(secs)),
        }
    }

    pub fn expired(&self) -> bool {
        match self.deadline {
            Some(deadline) => Instant::now() >= deadline,
            None => false,
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self::unlimited()
    }
}

/// Canonical representative of the conjugation orbit of an ordered pair:
/// the lexicographically minimal `(g·x·g⁻¹, g·y·g⁻¹)` over all `g`. Equal
/// keys mean the pairs are simultaneously conjugate. All ordered pairs of a
/// totally symmetric set share one key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairTypeKey {
    pub first: usize,
    pub second: usize,
}

/// Canonical simultaneous-conjugacy key of the ordered pair `(x, y)`.
///
/// The minimal first coordinate is the representative `r` of x's class; the
/// elements conjugating `x` to `r` form a coset `Z(r)·q`, so the second
/// coordinate is minimized over the centralizer of `r`.
pub fn pair_type(group: &FiniteGroup, x: usize, y: usize) -> Result<PairTypeKey, SearchError> {
    if x == y {
        return Err(SearchError::EqualPairElements { id: x });
    }
    let order = group.order();
    if x >= order || y >= order {
        return Err(GroupError::InvalidElementId {
            id: x.max(y),
            order,
        }
        .into());
    }
    let class = &group.conjugacy_classes()[group.class_index_of(x)];
    let rep = class.representative_id;
    let centralizer = group.centralizer(rep)?;
    Ok(pair_type_via(group, &centralizer, x, y, rep))
}

fn pair_type_via(
    group: &FiniteGroup,
    rep_centralizer: &[usize],
    x: usize,
    y: usize,
    rep: usize,
) -> PairTypeKey {
    let q = group.inv_of(group.witness_from_rep(x));
    debug_assert_eq!(group.conj_ids(q, x), rep);
    let y0 = group.conj_ids(q, y);
    let second = rep_centralizer
        .iter()
        .map(|&z| group.conj_ids(z, y0))
        .min()
        .expect("centralizer contains the identity");
    PairTypeKey { first: rep, second }
}

/// Lexicographically minimal sorted id list among all conjugates
/// `{g Y g⁻¹ : g ∈ G}`. Constant on conjugation orbits; two subsets are
/// conjugate iff their canonical forms agree.
pub fn canonical_form(group: &FiniteGroup, ids: &[usize]) -> Result<Vec<usize>, SearchError> {
    if ids.is_empty() {
        return Err(GroupError::EmptySubset.into());
    }
    for &id in ids {
        if id >= group.order() {
            return Err(GroupError::InvalidElementId {
                id,
                order: group.order(),
            }
            .into());
        }
    }
    let mut best: Option<Vec<usize>> = None;
    let mut buffer = vec![0usize; ids.len()];
    for g in 0..group.order() {
        for (slot, &y) in buffer.iter_mut().zip(ids) {
            *slot = group.conj_ids(g, y);
        }
        buffer.sort_unstable();
        if best.as_deref().is_none_or(|b| buffer[..] < b[..]) {
            best = Some(buffer.clone());
        }
    }
    Ok(best.expect("nonempty subset"))
}

/// Searches for `g` with `g Y g⁻¹ = Z` as sets; `None` if the subsets are
/// not conjugate. Full scan preceded by a pair-type comparison that rejects
/// most non-conjugate inputs immediately.
pub fn subsets_conjugate(
    group: &FiniteGroup,
    y: &[usize],
    z: &[usize],
) -> Result<Option<usize>, SearchError> {
    if y.len() != z.len() {
        return Err(SearchError::SizeMismatch {
            left: y.len(),
            right: z.len(),
        });
    }
    if y.is_empty() {
        return Err(GroupError::EmptySubset.into());
    }
    if pair_profile(group, y)? != pair_profile(group, z)? {
        return Ok(None);
    }
    let mut target: Vec<usize> = z.to_vec();
    target.sort_unstable();
    let mut buffer = vec![0usize; y.len()];
    for g in 0..group.order() {
        for (slot, &m) in buffer.iter_mut().zip(y) {
            *slot = group.conj_ids(g, m);
        }
        buffer.sort_unstable();
        if buffer == target {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

// Conjugation-invariant fingerprint: sorted pair-type keys of all ordered
// pairs (class representatives for singletons).
fn pair_profile(group: &FiniteGroup, ids: &[usize]) -> Result<Vec<PairTypeKey>, SearchError> {
    if ids.len() == 1 {
        let class = group.class_index_of(ids[0]);
        let rep = group.conjugacy_classes()[class].representative_id;
        return Ok(vec![PairTypeKey {
            first: rep,
            second: rep,
        }]);
    }
    let mut keys = Vec::with_capacity(ids.len() * (ids.len() - 1));
    for &a in ids {
        for &b in ids {
            if a != b {
                keys.push(pair_type(group, a, b)?);
            }
        }
    }
    keys.sort_unstable();
    Ok(keys)
}

/// One conjugation orbit of totally symmetric sets of the target size.
#[derive(Debug, Clone)]
pub struct TssClass {
    /// Canonical orbit representative (sorted ids).
    pub representative: Vec<usize>,
    pub orbit_size: usize,
    pub certificate: TssCertificate,
}

/// Result of [`enumerate_tss`]: every totally symmetric set of size `k`
/// in the group, grouped into conjugation orbits when `up_to_conjugacy` is
/// set (otherwise each set is its own entry with orbit size 1).
#[derive(Debug, Clone)]
pub struct TssClassReport {
    pub group_label: String,
    pub k: usize,
    pub up_to_conjugacy: bool,
    /// False when the wall-clock budget expired; the classes listed are
    /// then a verified subset, not the full answer.
    pub complete: bool,
    pub classes: Vec<TssClass>,
    pub total_count: usize,
}

// Per-class context for the depth-first search.
struct ClassCtx<'g> {
    group: &'g FiniteGroup,
    members: Vec<usize>,
    rep: usize,
    rep_centralizer: Vec<usize>,
}

impl<'g> ClassCtx<'g> {
    fn new(group: &'g FiniteGroup, class_idx: usize) -> Self {
        let class = &group.conjugacy_classes()[class_idx];
        let rep = class.representative_id;
        ClassCtx {
            group,
            members: class.member_ids.clone(),
            rep,
            rep_centralizer: group.centralizer(rep).expect("valid rep"),
        }
    }
}

// Mutable per-branch search state; never shared across workers.
struct BranchState {
    pair_memo: HashMap<(usize, usize), PairTypeKey>,
    tss_memo: HashMap<Vec<usize>, bool>,
    leaves: Vec<Vec<usize>>,
    complete: bool,
}

impl BranchState {
    fn new() -> Self {
        BranchState {
            pair_memo: HashMap::new(),
            tss_memo: HashMap::new(),
            leaves: Vec::new(),
            complete: true,
        }
    }

    fn key(&mut self, ctx: &ClassCtx<'_>, x: usize, y: usize) -> PairTypeKey {
        *self
            .pair_memo
            .entry((x, y))
            .or_insert_with(|| pair_type_via(ctx.group, &ctx.rep_centralizer, x, y, ctx.rep))
    }

    // Memoized by canonical form: total symmetry is conjugation-invariant,
    // so sibling branches that build conjugate partial sets share the scan.
    fn tuple_is_tss(&mut self, group: &FiniteGroup, tuple: &[usize]) -> bool {
        let canon = canonical_form(group, tuple).expect("valid tuple");
        if let Some(&known) = self.tss_memo.get(&canon) {
            return known;
        }
        let result = tuple_realizes_full_symmetric(group, tuple);
        self.tss_memo.insert(canon, result);
        result
    }
}

// Bool-only total symmetry scan: collect induced permutations of the tuple
// over the whole group, closing under composition, and stop as soon as the
// image reaches t!.
fn tuple_realizes_full_symmetric(group: &FiniteGroup, tuple: &[usize]) -> bool {
    let t = tuple.len();
    let full: usize = (2..=t).product::<usize>().max(1);
    if full > group.order() {
        return false;
    }
    let slot_of: HashMap<usize, u32> = tuple
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as u32))
        .collect();
    let mut image: std::collections::HashSet<Vec<u32>> = std::collections::HashSet::new();
    image.insert((0..t as u32).collect());
    'scan: for g in 0..group.order() {
        if image.len() == full {
            return true;
        }
        let mut induced = vec![0u32; t];
        for (i, &y) in tuple.iter().enumerate() {
            match slot_of.get(&group.conj_ids(g, y)) {
                Some(&j) => induced[i] = j,
                None => continue 'scan,
            }
        }
        if image.contains(&induced) {
            continue;
        }
        let mut queue = vec![induced];
        while let Some(pi) = queue.pop() {
            if !image.insert(pi.clone()) {
                continue;
            }
            let snapshot: Vec<Vec<u32>> = image.iter().cloned().collect();
            for rho in snapshot {
                let forward: Vec<u32> = rho.iter().map(|&i| pi[i as usize]).collect();
                let backward: Vec<u32> = pi.iter().map(|&i| rho[i as usize]).collect();
                queue.push(forward);
                queue.push(backward);
            }
        }
    }
    image.len() == full
}

fn search_branch(
    ctx: &ClassCtx<'_>,
    k: usize,
    start_pos: usize,
    budget: &SearchBudget,
) -> (Vec<Vec<usize>>, bool) {
    let mut state = BranchState::new();
    let mut tuple = vec![ctx.members[start_pos]];
    extend(ctx, k, start_pos, &mut tuple, None, &mut state, budget);
    (state.leaves, state.complete)
}

fn extend(
    ctx: &ClassCtx<'_>,
    k: usize,
    last_pos: usize,
    tuple: &mut Vec<usize>,
    key: Option<PairTypeKey>,
    state: &mut BranchState,
    budget: &SearchBudget,
) {
    if tuple.len() == k {
        state.leaves.push(tuple.clone());
        return;
    }
    if budget.expired() {
        state.complete = false;
        return;
    }
    // Not enough members left to reach size k.
    if ctx.members.len() - (last_pos + 1) < k - tuple.len() {
        return;
    }
    'candidates: for pos in last_pos + 1..ctx.members.len() {
        let candidate = ctx.members[pos];
        let mut subtree_key = key;
        for &existing in tuple.iter() {
            let forward = state.key(ctx, existing, candidate);
            match subtree_key {
                None => {
                    if state.key(ctx, candidate, existing) != forward {
                        continue 'candidates;
                    }
                    subtree_key = Some(forward);
                }
                Some(expected) => {
                    if forward != expected
                        || state.key(ctx, candidate, existing) != expected
                    {
                        continue 'candidates;
                    }
                }
            }
        }
        tuple.push(candidate);
        // Size-2 total symmetry is exactly the matched swapped pair key;
        // scan only from size 3 up.
        if tuple.len() <= 2 || state.tuple_is_tss(ctx.group, tuple) {
            extend(ctx, k, pos, tuple, subtree_key, state, budget);
        }
        tuple.pop();
        if !state.complete {
            return;
        }
    }
}

/// Enumerates every totally symmetric set of size `k` in the group.
///
/// With `up_to_conjugacy` the sets are grouped into conjugation orbits and
/// one canonical representative per orbit is reported; otherwise every set
/// is listed. Size 1 is degenerate: every singleton is totally symmetric,
/// reported as one class per conjugacy class.
pub fn enumerate_tss(
    group: &FiniteGroup,
    k: usize,
    up_to_conjugacy: bool,
    budget: &SearchBudget,
) -> Result<TssClassReport, SearchError> {
    if k == 0 {
        return Err(SearchError::InvalidK);
    }
    if k == 1 {
        return Ok(singleton_report(group, up_to_conjugacy));
    }

    let class_count = group.conjugacy_classes().len();
    let contexts: Vec<ClassCtx<'_>> = (0..class_count)
        .filter(|&ci| group.conjugacy_classes()[ci].len() >= k)
        .map(|ci| ClassCtx::new(group, ci))
        .collect();
    let units: Vec<(usize, usize)> = contexts
        .iter()
        .enumerate()
        .flat_map(|(ci, ctx)| (0..ctx.members.len()).map(move |pos| (ci, pos)))
        .collect();

    let branch_results: Vec<(Vec<Vec<usize>>, bool)> = units
        .par_iter()
        .map(|&(ci, pos)| search_branch(&contexts[ci], k, pos, budget))
        .collect();

    let mut leaves: Vec<Vec<usize>> = Vec::new();
    let mut complete = true;
    for (mut branch_leaves, branch_complete) in branch_results {
        leaves.append(&mut branch_leaves);
        complete &= branch_complete;
    }
    leaves.sort_unstable();

    let classes = if up_to_conjugacy {
        let mut orbits: std::collections::BTreeMap<Vec<usize>, usize> =
            std::collections::BTreeMap::new();
        for leaf in &leaves {
            *orbits.entry(canonical_form(group, leaf)?).or_insert(0) += 1;
        }
        let mut classes = Vec::with_capacity(orbits.len());
        for (representative, found) in orbits {
            let orbit_size = group.subset_orbit(&representative)?.orbit.len();
            if complete {
                assert_eq!(
                    orbit_size, found,
                    "orbit of {representative:?} has {orbit_size} members but the \
                     search found {found}; the search missed totally symmetric sets"
                );
            }
            let certificate = CandidateSet::new(group, representative.clone())
                .expect("canonical representative is a valid candidate")
                .is_totally_symmetric()
                .expect("orbit representative of a verified leaf");
            classes.push(TssClass {
                representative,
                orbit_size,
                certificate,
            });
        }
        classes
    } else {
        leaves
            .iter()
            .map(|leaf| {
                let certificate = CandidateSet::new(group, leaf.clone())
                    .expect("leaf is a valid candidate")
                    .is_totally_symmetric()
                    .expect("leaf was verified during the search");
                TssClass {
                    representative: leaf.clone(),
                    orbit_size: 1,
                    certificate,
                }
            })
            .collect()
    };

    let total_count = classes.iter().map(|c| c.orbit_size).sum();
    Ok(TssClassReport {
        group_label: group.label().to_string(),
        k,
        up_to_conjugacy,
        complete,
        classes,
        total_count,
    })
}

fn singleton_report(group: &FiniteGroup, up_to_conjugacy: bool) -> TssClassReport {
    let certificate_for = |id: usize| TssCertificate {
        member_ids: vec![id],
        adjacent_witnesses: vec![],
        realized_group_order: 1,
    };
    let classes: Vec<TssClass> = if up_to_conjugacy {
        group
            .conjugacy_classes()
            .iter()
            .map(|class| TssClass {
                representative: vec![class.representative_id],
                orbit_size: class.len(),
                certificate: certificate_for(class.representative_id),
            })
            .collect()
    } else {
        (0..group.order())
            .map(|id| TssClass {
                representative: vec![id],
                orbit_size: 1,
                certificate: certificate_for(id),
            })
            .collect()
    };
    let total_count = classes.iter().map(|c| c.orbit_size).sum();
    TssClassReport {
        group_label: group.label().to_string(),
        k: 1,
        up_to_conjugacy,
        complete: true,
        classes,
        total_count,
    }
}

/// Outcome of [`max_tss_size`], with the per-size reports that established
/// it (sizes 1 up to the first empty one).
#[derive(Debug, Clone)]
pub struct MaxTssOutcome {
    pub max_size: usize,
    pub complete: bool,
    pub reports: Vec<TssClassReport>,
}

/// Largest k for which the group has a totally symmetric set of size k,
/// computed incrementally (valid because subsets of totally symmetric sets
/// are totally symmetric). Every group reaches at least 1 via singletons.
pub fn max_tss_size(group: &FiniteGroup, budget: &SearchBudget) -> Result<MaxTssOutcome, SearchError> {
    let mut reports = Vec::new();
    let mut k = 1;
    loop {
        let report = enumerate_tss(group, k, true, budget)?;
        let complete = report.complete;
        let empty = report.classes.is_empty();
        reports.push(report);
        if !complete {
            return Ok(MaxTssOutcome {
                max_size: k - 1,
                complete: false,
                reports,
            });
        }
        if empty {
            return Ok(MaxTssOutcome {
                max_size: k - 1,
                complete: true,
                reports,
            });
        }
        k += 1;
    }
}
