//! Exact solvers for the swap median and closest problems, and the crossing
//! structure connecting them to independent sets.
//!
//! A swap applied on the way from π₁ toward a median that achieves the
//! pairwise lower bound must break a cycle in *both* quotients π₂ρ⁻¹ and
//! π₃ρ⁻¹. Such doubly-breaking swaps are chords of the quotient cycles; the
//! swaps of any one valid sequence never cross, so every reachable sequence
//! projects to an independent set in the crossing graph. That provable
//! direction powers a sound prune; the search itself stays complete, so both
//! positive and negative achievability answers are exact.

use std::collections::HashSet;

use thiserror::Error;

use crate::geodesy::{
    enumerate_geodesics, lb_swap_budget, median_lower_bound, pairwise_distances, GeodesyError,
    MedianInstance,
};
use crate::graphs::{exact_mis, GraphError, SimpleGraph};
use crate::perm::{CycleDecomposition, PermError, Permutation, SwapOp};

/// Errors for the exact solvers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Geodesy(#[from] GeodesyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("instance size {n} exceeds the configured limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("pairwise distances {d12}, {d13}, {d23} are not all equal")]
    NotEqualized { d12: usize, d13: usize, d23: usize },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

/// Size guards for the exact algorithms.
#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    /// Largest size solved by plain exhaustive enumeration.
    pub exhaustive_limit: usize,
    /// Largest size accepted by the branch-and-bound solvers.
    pub branch_limit: usize,
    /// Largest crossing graph on which the achievability search computes the
    /// exact independence-number prune (bigger graphs skip the prune).
    pub mis_prune_limit: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            exhaustive_limit: 8,
            branch_limit: 18,
            mis_prune_limit: 64,
        }
    }
}

/// A doubly-breaking swap: its values are co-cyclic in both quotients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PossibleSwap {
    pub swap: SwapOp,
    /// Index of the cycle of π₂π₁⁻¹ containing both values.
    pub red_cycle: usize,
    /// Index of the cycle of π₃π₁⁻¹ containing both values.
    pub blue_cycle: usize,
}

/// All doubly-breaking swaps at π₁, in lexicographic order.
pub fn possible_swaps(t: &MedianInstance) -> Vec<PossibleSwap> {
    let q2 = t.p2().relative_to(t.p1()).expect("equal sizes").cycles();
    let q3 = t.p3().relative_to(t.p1()).expect("equal sizes").cycles();
    doubly_breaking(&q2, &q3)
        .into_iter()
        .map(|swap| PossibleSwap {
            swap,
            red_cycle: q2.cycle_of(swap.a()),
            blue_cycle: q3.cycle_of(swap.a()),
        })
        .collect()
}

/// The crossing graph of the instance: vertex `i` is `possible_swaps(t)[i]`,
/// and two swaps are adjacent when their chords cross in some quotient cycle.
pub fn build_2ci_graph(t: &MedianInstance) -> SimpleGraph {
    let q2 = t.p2().relative_to(t.p1()).expect("equal sizes").cycles();
    let q3 = t.p3().relative_to(t.p1()).expect("equal sizes").cycles();
    crossing_graph(&doubly_breaking(&q2, &q3), &q2, &q3)
}

/// Swaps co-cyclic in both decompositions, sorted.
fn doubly_breaking(q2: &CycleDecomposition, q3: &CycleDecomposition) -> Vec<SwapOp> {
    let mut swaps = Vec::new();
    for cycle in q2.cycles() {
        for i in 0..cycle.len() {
            for j in (i + 1)..cycle.len() {
                if q3.co_cyclic(cycle[i], cycle[j]) {
                    swaps.push(SwapOp::new(cycle[i], cycle[j]).expect("distinct"));
                }
            }
        }
    }
    swaps.sort_unstable();
    swaps
}

/// Builds the crossing graph over the given swaps.
fn crossing_graph(
    swaps: &[SwapOp],
    q2: &CycleDecomposition,
    q3: &CycleDecomposition,
) -> SimpleGraph {
    let mut edges = Vec::new();
    for i in 0..swaps.len() {
        for j in (i + 1)..swaps.len() {
            if swaps_cross(swaps[i], swaps[j], q2) || swaps_cross(swaps[i], swaps[j], q3) {
                edges.push((i, j));
            }
        }
    }
    SimpleGraph::new(swaps.len(), &edges).expect("pairs of distinct indices")
}

/// Whether the chords of `s` and `t` cross in the cycle (of `dec`) they share.
///
/// Chords sharing an endpoint or living in different cycles never cross.
fn swaps_cross(s: SwapOp, t: SwapOp, dec: &CycleDecomposition) -> bool {
    if s.a() == t.a() || s.a() == t.b() || s.b() == t.a() || s.b() == t.b() {
        return false;
    }
    let c = dec.cycle_of(s.a());
    if dec.cycle_of(t.a()) != c || dec.cycle_of(s.b()) != c || dec.cycle_of(t.b()) != c {
        return false;
    }
    let cycle = &dec.cycles()[c];
    let pos = |v: u32| cycle.iter().position(|&x| x == v).expect("in cycle");
    let (pa, pb) = (pos(s.a()), pos(s.b()));
    // Walk the cycle from a to b; the chords cross iff exactly one endpoint
    // of `t` lies strictly inside that arc.
    let inside = |p: usize| -> bool {
        let len = cycle.len();
        let rel = (p + len - pa) % len;
        let end = (pb + len - pa) % len;
        rel > 0 && rel < end
    };
    inside(pos(t.a())) != inside(pos(t.b()))
}

/// Outcome of the lower-bound achievability decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LbAchievability {
    /// A sequence of doubly-breaking swaps from π₁ realizing the bound.
    Achievable(Vec<SwapOp>),
    /// The search space is exhausted: the bound cannot be met.
    Blocked,
    /// The budget (d12 + d13 − d23)/2 is not an integer; no genuine triple
    /// reaches this case, but the contract stays total.
    ParityBlocked,
}

impl LbAchievability {
    pub fn is_achievable(&self) -> bool {
        matches!(self, LbAchievability::Achievable(_))
    }
}

/// Decides whether the median lower bound ⌈(d12+d13+d23)/2⌉ is attained.
///
/// The bound is attained exactly when some sequence of (d12+d13−d23)/2
/// doubly-breaking swaps exists starting from π₁ (each step must shorten the
/// remaining distance to both π₂ and π₃, which forces the arithmetic to come
/// out to the bound). The search is a complete depth-first traversal with
/// failure memoization; subtrees whose crossing graph has independence number
/// below the remaining budget cannot contain a valid sequence and are pruned.
pub fn lb_achievability_median(
    t: &MedianInstance,
    cfg: &SolverConfig,
) -> Result<LbAchievability, SolverError> {
    let Some(budget) = lb_swap_budget(t) else {
        return Ok(LbAchievability::ParityBlocked);
    };
    let mut failed: HashSet<Permutation> = HashSet::new();
    let mut sequence = Vec::new();
    let found = search_double_breaks(
        t,
        t.p1().clone(),
        budget,
        cfg,
        &mut failed,
        &mut sequence,
    );
    if !found {
        return Ok(LbAchievability::Blocked);
    }
    replay_lb_sequence(t, &sequence)?;
    Ok(LbAchievability::Achievable(sequence))
}

/// Every sequence of doubly-breaking swaps realizing the lower bound, up to a
/// cap on the number of sequences collected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LbSequenceEnumeration {
    pub sequences: Vec<Vec<SwapOp>>,
    pub truncated: bool,
}

/// Enumerates all lower-bound-realizing swap sequences from π₁ (all orderings
/// included). Since each doubly-breaking step shortens the distance to both
/// π₂ and π₃ by one, any run of (d12 + d13 − d23)/2 such steps ends at the
/// bound; the enumeration therefore only has to extend doubly-breaking swaps.
pub fn enumerate_lb_sequences(
    t: &MedianInstance,
    cfg: &SolverConfig,
    cap: usize,
) -> Result<LbSequenceEnumeration, SolverError> {
    let Some(budget) = lb_swap_budget(t) else {
        return Ok(LbSequenceEnumeration {
            sequences: Vec::new(),
            truncated: false,
        });
    };
    let mut out = LbSequenceEnumeration {
        sequences: Vec::new(),
        truncated: false,
    };
    let mut failed: HashSet<Permutation> = HashSet::new();
    let mut sequence = Vec::new();
    collect_double_breaks(
        t,
        t.p1().clone(),
        budget,
        cfg,
        cap,
        &mut failed,
        &mut sequence,
        &mut out,
    );
    for seq in &out.sequences {
        replay_lb_sequence(t, seq)?;
    }
    Ok(out)
}

/// Exhaustive variant of [`search_double_breaks`]: barren states are still
/// memoized (they admit no completion from any path), but successful states
/// are re-walked so every ordering is emitted.
#[allow(clippy::too_many_arguments)]
fn collect_double_breaks(
    t: &MedianInstance,
    rho: Permutation,
    remaining: usize,
    cfg: &SolverConfig,
    cap: usize,
    failed: &mut HashSet<Permutation>,
    sequence: &mut Vec<SwapOp>,
    out: &mut LbSequenceEnumeration,
) -> bool {
    if out.sequences.len() >= cap {
        out.truncated = true;
        return true;
    }
    if remaining == 0 {
        out.sequences.push(sequence.clone());
        return true;
    }
    let q2 = t.p2().relative_to(&rho).expect("equal sizes").cycles();
    let q3 = t.p3().relative_to(&rho).expect("equal sizes").cycles();
    let swaps = doubly_breaking(&q2, &q3);
    if swaps.len() < remaining {
        failed.insert(rho);
        return false;
    }
    if remaining >= 2 && swaps.len() <= cfg.mis_prune_limit {
        let graph = crossing_graph(&swaps, &q2, &q3);
        let alpha = exact_mis(&graph, cfg.mis_prune_limit)
            .expect("guarded by mis_prune_limit")
            .size;
        if alpha < remaining {
            failed.insert(rho);
            return false;
        }
    }
    let mut any = false;
    for swap in swaps {
        let next = rho.apply_swap(swap).expect("values in range");
        if failed.contains(&next) {
            continue;
        }
        sequence.push(swap);
        any |= collect_double_breaks(t, next, remaining - 1, cfg, cap, failed, sequence, out);
        sequence.pop();
        if out.truncated {
            return any;
        }
    }
    if !any {
        failed.insert(rho);
    }
    any
}

fn search_double_breaks(
    t: &MedianInstance,
    rho: Permutation,
    remaining: usize,
    cfg: &SolverConfig,
    failed: &mut HashSet<Permutation>,
    sequence: &mut Vec<SwapOp>,
) -> bool {
    if remaining == 0 {
        return true;
    }
    let q2 = t.p2().relative_to(&rho).expect("equal sizes").cycles();
    let q3 = t.p3().relative_to(&rho).expect("equal sizes").cycles();
    let swaps = doubly_breaking(&q2, &q3);
    if swaps.len() < remaining {
        failed.insert(rho);
        return false;
    }
    if remaining >= 2 && swaps.len() <= cfg.mis_prune_limit {
        let graph = crossing_graph(&swaps, &q2, &q3);
        let alpha = exact_mis(&graph, cfg.mis_prune_limit)
            .expect("guarded by mis_prune_limit")
            .size;
        if alpha < remaining {
            failed.insert(rho);
            return false;
        }
    }
    for swap in swaps {
        let next = rho.apply_swap(swap).expect("values in range");
        if failed.contains(&next) {
            continue;
        }
        sequence.push(swap);
        if search_double_breaks(t, next, remaining - 1, cfg, failed, sequence) {
            return true;
        }
        sequence.pop();
    }
    failed.insert(rho);
    false
}

/// Replays a claimed sequence: every swap must break both quotients at its
/// application point, and the endpoint must attain the median lower bound.
/// Returns the endpoint on success.
pub fn replay_lb_sequence(
    t: &MedianInstance,
    sequence: &[SwapOp],
) -> Result<Permutation, SolverError> {
    let mut rho = t.p1().clone();
    for &swap in sequence {
        let q2 = t.p2().relative_to(&rho)?.cycles();
        let q3 = t.p3().relative_to(&rho)?.cycles();
        if !q2.co_cyclic(swap.a(), swap.b()) || !q3.co_cyclic(swap.a(), swap.b()) {
            return Err(SolverError::Internal(format!(
                "swap {swap} does not break both quotients"
            )));
        }
        rho = rho.apply_swap(swap)?;
    }
    let total = t.total_distance(&rho)?;
    if total != median_lower_bound(t) {
        return Err(SolverError::Internal(format!(
            "sequence endpoint has total distance {total}, expected the lower bound"
        )));
    }
    Ok(rho)
}

/// An exact median: the lexicographically smallest permutation minimizing the
/// total distance to the three input permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MedianCertificate {
    pub sigma: Permutation,
    pub value: usize,
    pub distances: [usize; 3],
    /// A shortest swap sequence from π₁ to `sigma`.
    pub swaps_from_p1: Option<Vec<SwapOp>>,
}

/// An exact closest permutation: lexicographically smallest minimizer of the
/// largest distance to the three input permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosestCertificate {
    pub sigma: Permutation,
    pub radius: usize,
    pub distances: [usize; 3],
}

/// Solves the median problem exactly.
///
/// Sizes up to `cfg.exhaustive_limit` scan all permutations; sizes up to
/// `cfg.branch_limit` run branch and bound over one-line prefixes. Among all
/// optimal medians the lexicographically smallest is returned.
pub fn exact_median(
    t: &MedianInstance,
    cfg: &SolverConfig,
) -> Result<MedianCertificate, SolverError> {
    let n = t.size();
    let (value, sigma) = if n <= cfg.exhaustive_limit {
        exhaustive_best(t, |ds| ds.iter().sum())?
    } else if n <= cfg.branch_limit {
        branch_and_bound(t, cfg, Objective::Sum)?
    } else {
        return Err(SolverError::TooLarge {
            n,
            limit: cfg.branch_limit,
        });
    };
    let distances = distances_from(t, &sigma)?;
    let swaps_from_p1 = enumerate_geodesics(t.p1(), &sigma, 1)?
        .sequences
        .into_iter()
        .next();
    Ok(MedianCertificate {
        sigma,
        value,
        distances,
        swaps_from_p1,
    })
}

/// Solves the closest (minimum radius) problem exactly; same guards and
/// tie-breaking as [`exact_median`].
pub fn exact_closest(
    t: &MedianInstance,
    cfg: &SolverConfig,
) -> Result<ClosestCertificate, SolverError> {
    let n = t.size();
    let (radius, sigma) = if n <= cfg.exhaustive_limit {
        exhaustive_best(t, |ds| ds.iter().copied().max().unwrap_or(0))?
    } else if n <= cfg.branch_limit {
        branch_and_bound(t, cfg, Objective::Max)?
    } else {
        return Err(SolverError::TooLarge {
            n,
            limit: cfg.branch_limit,
        });
    };
    let distances = distances_from(t, &sigma)?;
    Ok(ClosestCertificate {
        sigma,
        radius,
        distances,
    })
}

fn distances_from(t: &MedianInstance, sigma: &Permutation) -> Result<[usize; 3], SolverError> {
    Ok([
        sigma.distance_to(t.p1())?,
        sigma.distance_to(t.p2())?,
        sigma.distance_to(t.p3())?,
    ])
}

/// Scans all permutations in lexicographic order; first-found wins ties.
fn exhaustive_best(
    t: &MedianInstance,
    objective: impl Fn(&[usize; 3]) -> usize,
) -> Result<(usize, Permutation), SolverError> {
    use itertools::Itertools;
    let n = t.size();
    let mut best = usize::MAX;
    let mut best_sigma = None;
    for elems in (1..=n as u32).permutations(n) {
        let sigma = Permutation::new(elems).expect("permutation by construction");
        let value = objective(&distances_from(t, &sigma)?);
        if value < best {
            best = value;
            best_sigma = Some(sigma);
        }
    }
    Ok((best, best_sigma.expect("n >= 1 so some permutation exists")))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Objective {
    Sum,
    Max,
}

/// Branch and bound over one-line prefixes, trying values in ascending order.
///
/// For a prefix, the distance to target πⱼ is at least (assigned arcs) −
/// (closed cycles) in the partial quotient πⱼ⁻¹∘σ, because every arc costs a
/// swap unless its cycle eventually closes. Pruning keeps subtrees whose bound
/// beats the incumbent, plus ties until the first optimal leaf fixes the
/// lexicographic winner.
fn branch_and_bound(
    t: &MedianInstance,
    cfg: &SolverConfig,
    objective: Objective,
) -> Result<(usize, Permutation), SolverError> {
    let n = t.size();
    let inverses = [t.p1().inverse(), t.p2().inverse(), t.p3().inverse()];
    // Seed the incumbent with the inputs themselves and, when the lower bound
    // is achievable, with the endpoint of a doubly-breaking sequence.
    let mut incumbent = usize::MAX;
    for p in t.perms() {
        let ds = distances_from(t, p)?;
        incumbent = incumbent.min(aggregate(objective, &ds));
    }
    if let LbAchievability::Achievable(seq) = lb_achievability_median(t, cfg)? {
        let sigma = replay_lb_sequence(t, &seq)?;
        let ds = distances_from(t, &sigma)?;
        incumbent = incumbent.min(aggregate(objective, &ds));
    }
    let mut search = PrefixSearch {
        inverses,
        objective,
        incumbent,
        result: None,
        assigned: vec![0u32; n],
        used: vec![false; n + 1],
    };
    search.descend(0)?;
    let sigma = search
        .result
        .ok_or_else(|| SolverError::Internal("branch and bound found no candidate".into()))?;
    Ok((search.incumbent, sigma))
}

fn aggregate(objective: Objective, ds: &[usize; 3]) -> usize {
    match objective {
        Objective::Sum => ds.iter().sum(),
        Objective::Max => ds.iter().copied().max().unwrap_or(0),
    }
}

struct PrefixSearch {
    inverses: [Permutation; 3],
    objective: Objective,
    incumbent: usize,
    result: Option<Permutation>,
    assigned: Vec<u32>,
    used: Vec<bool>,
}

impl PrefixSearch {
    fn descend(&mut self, depth: usize) -> Result<(), SolverError> {
        let n = self.assigned.len();
        let bound = self.prefix_bound(depth);
        if bound > self.incumbent || (bound == self.incumbent && self.result.is_some()) {
            return Ok(());
        }
        if depth == n {
            // The bound is exact on complete assignments.
            let sigma = Permutation::new(self.assigned.clone()).expect("valid by construction");
            if bound < self.incumbent || self.result.is_none() {
                self.incumbent = bound;
                self.result = Some(sigma);
            }
            return Ok(());
        }
        for value in 1..=n as u32 {
            if self.used[value as usize] {
                continue;
            }
            self.assigned[depth] = value;
            self.used[value as usize] = true;
            self.descend(depth + 1)?;
            self.used[value as usize] = false;
        }
        Ok(())
    }

    /// Objective lower bound for the current prefix (exact when complete).
    fn prefix_bound(&self, depth: usize) -> usize {
        let n = self.assigned.len();
        let mut per_target = [0usize; 3];
        for (j, inv) in self.inverses.iter().enumerate() {
            // Partial quotient arcs p → πⱼ⁻¹(σ(p)) for assigned positions.
            let mut succ = vec![0u32; n + 1];
            let mut has_pred = vec![false; n + 1];
            for p in 1..=depth {
                let q = inv.image(self.assigned[p - 1]);
                succ[p] = q;
                has_pred[q as usize] = true;
            }
            let mut closed = 0usize;
            let mut visited = vec![false; n + 1];
            for start in 1..=n {
                if visited[start] || succ[start] == 0 || has_pred[start] {
                    continue;
                }
                // Open chain: walk it so its nodes never restart a walk.
                let mut p = start;
                while p != 0 && !visited[p] {
                    visited[p] = true;
                    p = succ[p] as usize;
                }
            }
            for start in 1..=n {
                if visited[start] || succ[start] == 0 {
                    continue;
                }
                // Remaining arcs form closed cycles.
                let mut p = start;
                while !visited[p] {
                    visited[p] = true;
                    p = succ[p] as usize;
                }
                closed += 1;
            }
            per_target[j] = depth - closed;
        }
        aggregate(self.objective, &per_target)
    }
}

/// Report of the equal-distance bridge between the three problems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeReport {
    /// The common pairwise distance c.
    pub common_distance: usize,
    /// Whether a doubly-breaking sequence of length c/2 exists.
    pub sequence_exists: bool,
    pub closest_radius: usize,
    /// Whether the closest radius equals c/2 exactly.
    pub closest_at_half: bool,
    /// Median value, when the sequence exists and the check applies.
    pub median_value: Option<usize>,
    /// Whether the median value equals 3c/2; only checked when the sequence exists.
    pub median_at_three_halves: Option<bool>,
}

impl BridgeReport {
    /// The biconditional: the radius sits at c/2 exactly when the sequence
    /// exists, and in that case the median value sits at 3c/2.
    pub fn holds(&self) -> bool {
        self.sequence_exists == self.closest_at_half
            && (!self.sequence_exists || self.median_at_three_halves == Some(true))
    }
}

/// On an instance with equal pairwise distances c, checks that a c/2-length
/// doubly-breaking sequence exists iff the closest radius is exactly c/2, and
/// that the median value is exactly 3c/2 when it does.
pub fn verify_median_closest_bridge(
    t: &MedianInstance,
    cfg: &SolverConfig,
) -> Result<BridgeReport, SolverError> {
    let d = pairwise_distances(t);
    if !d.equalized() {
        return Err(SolverError::NotEqualized {
            d12: d.d12,
            d13: d.d13,
            d23: d.d23,
        });
    }
    let c = d.d12;
    let sequence_exists = lb_achievability_median(t, cfg)?.is_achievable();
    let closest = exact_closest(t, cfg)?;
    let closest_at_half = 2 * closest.radius == c;
    let (median_value, median_at_three_halves) = if sequence_exists {
        let m = exact_median(t, cfg)?;
        (Some(m.value), Some(2 * m.value == 3 * c))
    } else {
        (None, None)
    };
    Ok(BridgeReport {
        common_distance: c,
        sequence_exists,
        closest_radius: closest.radius,
        closest_at_half,
        median_value,
        median_at_three_halves,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesy::{closest_lower_bound, optimal_medians};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn perm(s: &str) -> Permutation {
        s.parse().expect("test permutation")
    }

    fn instance(a: &str, b: &str, c: &str) -> MedianInstance {
        MedianInstance::new(perm(a), perm(b), perm(c)).unwrap()
    }

    fn random_instance(rng: &mut ChaCha8Rng, n: usize) -> MedianInstance {
        let make = |rng: &mut ChaCha8Rng| {
            let mut v: Vec<u32> = (1..=n as u32).collect();
            v.shuffle(rng);
            Permutation::new(v).unwrap()
        };
        MedianInstance::new(make(rng), make(rng), make(rng)).unwrap()
    }

    #[test]
    fn possible_swaps_need_both_quotients() {
        // Relabeled three-cycle triple: quotients (1 3) and (1 2) share no pair.
        let t = instance("1 2 3", "3 2 1", "2 1 3");
        assert!(possible_swaps(&t).is_empty());
        // With π₂ = π₃ a single 3-cycle, every pair in it qualifies.
        let t = instance("1 2 3", "2 3 1", "2 3 1");
        let swaps: Vec<SwapOp> = possible_swaps(&t).iter().map(|p| p.swap).collect();
        assert_eq!(
            swaps,
            vec![
                SwapOp::new(1, 2).unwrap(),
                SwapOp::new(1, 3).unwrap(),
                SwapOp::new(2, 3).unwrap()
            ]
        );
    }

    #[test]
    fn chords_sharing_an_endpoint_do_not_cross() {
        // All three swaps of the 3-cycle share endpoints pairwise: no edges.
        let t = instance("1 2 3", "2 3 1", "2 3 1");
        let g = build_2ci_graph(&t);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn interleaved_chords_cross() {
        // Quotients both the 4-cycle (1 2 3 4): chords {1,3} and {2,4} cross.
        let p = perm("2 3 4 1");
        let t = MedianInstance::new(
            Permutation::identity(4).unwrap(),
            p.clone(),
            p.clone(),
        )
        .unwrap();
        let swaps: Vec<SwapOp> = possible_swaps(&t).iter().map(|s| s.swap).collect();
        let g = build_2ci_graph(&t);
        assert_eq!(swaps.len(), 6);
        assert_eq!(g.vertex_count(), 6);
        let i13 = swaps.iter().position(|s| (s.a(), s.b()) == (1, 3)).unwrap();
        let i24 = swaps.iter().position(|s| (s.a(), s.b()) == (2, 4)).unwrap();
        let i12 = swaps.iter().position(|s| (s.a(), s.b()) == (1, 2)).unwrap();
        let i34 = swaps.iter().position(|s| (s.a(), s.b()) == (3, 4)).unwrap();
        assert!(g.has_edge(i13, i24));
        assert!(!g.has_edge(i12, i34));
        assert!(!g.has_edge(i12, i13));
    }

    #[test]
    fn achievability_finds_a_sequence_when_quotients_agree() {
        let p = perm("2 3 1");
        let t = MedianInstance::new(Permutation::identity(3).unwrap(), p.clone(), p).unwrap();
        let cfg = SolverConfig::default();
        match lb_achievability_median(&t, &cfg).unwrap() {
            LbAchievability::Achievable(seq) => {
                assert_eq!(seq.len(), 2);
                let sigma = replay_lb_sequence(&t, &seq).unwrap();
                assert_eq!(t.total_distance(&sigma).unwrap(), median_lower_bound(&t));
            }
            other => panic!("expected an achievable bound, got {other:?}"),
        }
    }

    #[test]
    fn achievability_blocked_when_no_swap_breaks_both() {
        // Disjoint transposition structure: no doubly-breaking swap exists,
        // but the budget is 1 > 0, so the bound is unreachable.
        let t = instance("1 2 3 4", "2 1 4 3", "3 4 1 2");
        let cfg = SolverConfig::default();
        assert_eq!(
            lb_achievability_median(&t, &cfg).unwrap(),
            LbAchievability::Blocked
        );
    }

    #[test]
    fn achievability_backtracks_past_greedy_dead_ends() {
        // Sweep random instances; for each, compare the decision against the
        // ground truth from the exhaustive median solver.
        let cfg = SolverConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..120 {
            let t = random_instance(&mut rng, 5);
            let achieved = lb_achievability_median(&t, &cfg).unwrap().is_achievable();
            let (best, _) = optimal_medians(&t, 6).unwrap();
            assert_eq!(
                achieved,
                best == median_lower_bound(&t),
                "achievability disagrees with exhaustive optimum on {t:?}"
            );
        }
    }

    #[test]
    fn exact_median_matches_exhaustive_reference() {
        let cfg = SolverConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [3usize, 4, 5] {
            for _ in 0..40 {
                let t = random_instance(&mut rng, n);
                let cert = exact_median(&t, &cfg).unwrap();
                let (best, optima) = optimal_medians(&t, 6).unwrap();
                assert_eq!(cert.value, best);
                let lex_smallest = optima.iter().min().unwrap();
                assert_eq!(&cert.sigma, lex_smallest);
                assert_eq!(cert.distances.iter().sum::<usize>(), best);
                // The reported swap sequence really reaches sigma.
                let seq = cert.swaps_from_p1.as_ref().unwrap();
                let mut rho = t.p1().clone();
                for &s in seq {
                    rho = rho.apply_swap(s).unwrap();
                }
                assert_eq!(rho, cert.sigma);
                assert_eq!(seq.len(), t.p1().distance_to(&cert.sigma).unwrap());
            }
        }
    }

    #[test]
    fn branch_and_bound_agrees_with_exhaustive_mode() {
        let exhaustive = SolverConfig::default();
        let branchy = SolverConfig {
            exhaustive_limit: 0,
            ..SolverConfig::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..60 {
            let t = random_instance(&mut rng, 5);
            let a = exact_median(&t, &exhaustive).unwrap();
            let b = exact_median(&t, &branchy).unwrap();
            assert_eq!(a.value, b.value);
            assert_eq!(a.sigma, b.sigma);
            let a = exact_closest(&t, &exhaustive).unwrap();
            let b = exact_closest(&t, &branchy).unwrap();
            assert_eq!(a.radius, b.radius);
            assert_eq!(a.sigma, b.sigma);
        }
    }

    #[test]
    fn exact_closest_matches_exhaustive_reference() {
        use itertools::Itertools;
        let cfg = SolverConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..40 {
            let t = random_instance(&mut rng, 4);
            let cert = exact_closest(&t, &cfg).unwrap();
            let mut best = usize::MAX;
            let mut best_sigma = None;
            for elems in (1..=4u32).permutations(4) {
                let sigma = Permutation::new(elems).unwrap();
                let r = t.radius_at(&sigma).unwrap();
                if r < best {
                    best = r;
                    best_sigma = Some(sigma);
                }
            }
            assert_eq!(cert.radius, best);
            assert_eq!(cert.sigma, best_sigma.unwrap());
            assert!(cert.radius >= closest_lower_bound(&t));
        }
    }

    #[test]
    fn solvers_respect_size_guards() {
        let tiny = SolverConfig {
            exhaustive_limit: 2,
            branch_limit: 3,
            ..SolverConfig::default()
        };
        let t = instance("1 2 3 4", "2 1 4 3", "3 4 1 2");
        assert!(matches!(
            exact_median(&t, &tiny),
            Err(SolverError::TooLarge { n: 4, limit: 3 })
        ));
        assert!(matches!(
            exact_closest(&t, &tiny),
            Err(SolverError::TooLarge { n: 4, limit: 3 })
        ));
    }

    #[test]
    fn bridge_holds_on_equalized_instances() {
        let cfg = SolverConfig::default();
        // All pairwise distances 2; one doubly-breaking swap reaches radius 1.
        let good = instance("1 2 3", "2 3 1", "3 1 2");
        let report = verify_median_closest_bridge(&good, &cfg).unwrap();
        assert_eq!(report.common_distance, 2);
        assert!(report.sequence_exists);
        assert_eq!(report.closest_radius, 1);
        assert!(report.closest_at_half);
        assert_eq!(report.median_value, Some(3));
        assert!(report.holds());

        // All pairwise distances 2, but no swap breaks both quotients; the
        // radius stays above c/2 and the biconditional still holds.
        let blocked = instance("1 2 3 4", "2 1 4 3", "3 4 1 2");
        let report = verify_median_closest_bridge(&blocked, &cfg).unwrap();
        assert!(!report.sequence_exists);
        assert_eq!(report.closest_radius, 2);
        assert!(!report.closest_at_half);
        assert!(report.holds());

        // Unequal distances are a precondition error.
        let uneven = instance("1 2 3", "2 1 3", "2 3 1");
        assert!(matches!(
            verify_median_closest_bridge(&uneven, &cfg),
            Err(SolverError::NotEqualized { .. })
        ));
    }

    #[test]
    fn lb_sequence_enumeration_is_exhaustive() {
        let cfg = SolverConfig::default();
        // Budget 0: exactly the empty sequence.
        let zero = instance("1 2 3", "2 1 3", "1 3 2");
        let e = enumerate_lb_sequences(&zero, &cfg, 100).unwrap();
        assert_eq!(e.sequences, vec![Vec::<SwapOp>::new()]);
        assert!(!e.truncated);

        // Both quotients are 3-cycles sharing all three co-cyclic pairs, so
        // each single swap realizes the bound: three length-1 sequences.
        let three = instance("1 2 3", "2 3 1", "3 1 2");
        let e = enumerate_lb_sequences(&three, &cfg, 100).unwrap();
        assert_eq!(e.sequences.len(), 3);
        assert!(e.sequences.iter().all(|s| s.len() == 1));
        assert!(!e.truncated);
        let capped = enumerate_lb_sequences(&three, &cfg, 2).unwrap();
        assert_eq!(capped.sequences.len(), 2);
        assert!(capped.truncated);

        // No swap breaks both quotients: nothing to enumerate.
        let blocked = instance("1 2 3 4", "2 1 4 3", "3 4 1 2");
        let e = enumerate_lb_sequences(&blocked, &cfg, 100).unwrap();
        assert!(e.sequences.is_empty());
        assert!(!e.truncated);
    }
}
