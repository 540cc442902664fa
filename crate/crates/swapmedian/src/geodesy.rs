//! Triples of permutations, lower bounds for median and closest problems,
//! geodesics between permutations, and instance classification.
//!
//! A geodesic from `u` to `v` is a shortest sequence of swaps transforming `u`
//! into `v`; every prefix step must break a cycle of the quotient `v ∘ u⁻¹`.

use num_bigint::BigUint;
use thiserror::Error;

use crate::perm::{PermError, Permutation, SwapOp};

/// Errors for instance-level operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeodesyError {
    #[error(transparent)]
    Perm(#[from] PermError),
    /// Exhaustive operations refuse instances beyond the configured limit.
    #[error("instance size {n} exceeds the exhaustive limit {limit}")]
    TooLarge { n: usize, limit: usize },
}

/// Three permutations of equal size; inputs to the median and closest problems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MedianInstance {
    p1: Permutation,
    p2: Permutation,
    p3: Permutation,
}

impl MedianInstance {
    /// Validates that all three permutations have the same size.
    pub fn new(
        p1: Permutation,
        p2: Permutation,
        p3: Permutation,
    ) -> Result<Self, GeodesyError> {
        if p1.size() != p2.size() || p1.size() != p3.size() {
            return Err(PermError::SizeMismatch {
                left: p1.size(),
                right: p1.size().max(p2.size()).max(p3.size()),
            }
            .into());
        }
        Ok(MedianInstance { p1, p2, p3 })
    }

    pub fn p1(&self) -> &Permutation {
        &self.p1
    }

    pub fn p2(&self) -> &Permutation {
        &self.p2
    }

    pub fn p3(&self) -> &Permutation {
        &self.p3
    }

    pub fn perms(&self) -> [&Permutation; 3] {
        [&self.p1, &self.p2, &self.p3]
    }

    pub fn size(&self) -> usize {
        self.p1.size()
    }

    /// Renames values so the first permutation becomes the identity.
    ///
    /// Every σᵢ is replaced by π₁⁻¹ ∘ σᵢ. Renaming is distance-preserving, so
    /// medians, closest solutions and all lower bounds carry over unchanged.
    pub fn relabeled(&self) -> MedianInstance {
        let inv = self.p1.inverse();
        let rename = |p: &Permutation| inv.compose(p).expect("equal sizes");
        MedianInstance {
            p1: rename(&self.p1),
            p2: rename(&self.p2),
            p3: rename(&self.p3),
        }
    }

    /// Total distance from `sigma` to the three permutations.
    pub fn total_distance(&self, sigma: &Permutation) -> Result<usize, GeodesyError> {
        let mut total = 0;
        for p in self.perms() {
            total += sigma.distance_to(p)?;
        }
        Ok(total)
    }

    /// Largest of the three distances from `sigma` (the radius at `sigma`).
    pub fn radius_at(&self, sigma: &Permutation) -> Result<usize, GeodesyError> {
        let mut radius = 0;
        for p in self.perms() {
            radius = radius.max(sigma.distance_to(p)?);
        }
        Ok(radius)
    }
}

/// The three pairwise swap distances of an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairwiseDistances {
    pub d12: usize,
    pub d13: usize,
    pub d23: usize,
}

impl PairwiseDistances {
    pub fn sum(&self) -> usize {
        self.d12 + self.d13 + self.d23
    }

    pub fn max(&self) -> usize {
        self.d12.max(self.d13).max(self.d23)
    }

    /// Whether all three distances are equal.
    pub fn equalized(&self) -> bool {
        self.d12 == self.d13 && self.d13 == self.d23
    }
}

/// Computes the three pairwise distances.
pub fn pairwise_distances(t: &MedianInstance) -> PairwiseDistances {
    PairwiseDistances {
        d12: t.p1().distance_to(t.p2()).expect("equal sizes"),
        d13: t.p1().distance_to(t.p3()).expect("equal sizes"),
        d23: t.p2().distance_to(t.p3()).expect("equal sizes"),
    }
}

/// Lower bound for the median value: ⌈(d12 + d13 + d23) / 2⌉.
pub fn median_lower_bound(t: &MedianInstance) -> usize {
    pairwise_distances(t).sum().div_ceil(2)
}

/// Lower bound for the closest (radius) value: ⌈max pairwise distance / 2⌉.
pub fn closest_lower_bound(t: &MedianInstance) -> usize {
    pairwise_distances(t).max().div_ceil(2)
}

/// Number of swaps from π₁ to any median achieving the lower bound:
/// (d12 + d13 − d23) / 2, anchored at the first permutation.
///
/// Returns `None` when d12 + d13 − d23 is odd. For genuine permutation triples
/// that never happens (each distance has the parity of the two parities'
/// difference, so the combination is always even); the sentinel exists so the
/// contract is total.
pub fn lb_swap_budget(t: &MedianInstance) -> Option<usize> {
    let d = pairwise_distances(t);
    let num = (d.d12 + d.d13).checked_sub(d.d23)?;
    if num % 2 != 0 {
        return None;
    }
    Some(num / 2)
}

/// Whether `z` lies on a geodesic from `u` to `v`.
pub fn on_geodesic(
    z: &Permutation,
    u: &Permutation,
    v: &Permutation,
) -> Result<bool, GeodesyError> {
    Ok(u.distance_to(z)? + z.distance_to(v)? == u.distance_to(v)?)
}

/// Result of geodesic enumeration: the sequences found, in lexicographic
/// order, and whether the enumeration was cut off by the limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicEnumeration {
    pub sequences: Vec<Vec<SwapOp>>,
    pub truncated: bool,
}

/// Enumerates swap sequences realizing geodesics from `u` to `v`.
///
/// At each step the candidates are exactly the pairs co-cyclic in the current
/// quotient (the breaking swaps), tried in lexicographic order. At most
/// `limit` sequences are collected; `truncated` reports whether more exist.
pub fn enumerate_geodesics(
    u: &Permutation,
    v: &Permutation,
    limit: usize,
) -> Result<GeodesicEnumeration, GeodesyError> {
    let d = u.distance_to(v)?;
    let mut sequences = Vec::new();
    let mut prefix = Vec::new();
    let truncated = !walk_geodesics(u, v, d, &mut prefix, &mut sequences, limit);
    Ok(GeodesicEnumeration {
        sequences,
        truncated,
    })
}

/// Depth-first enumeration; returns false as soon as the limit would be exceeded.
fn walk_geodesics(
    rho: &Permutation,
    v: &Permutation,
    remaining: usize,
    prefix: &mut Vec<SwapOp>,
    out: &mut Vec<Vec<SwapOp>>,
    limit: usize,
) -> bool {
    if remaining == 0 {
        if out.len() >= limit {
            return false;
        }
        out.push(prefix.clone());
        return true;
    }
    let quotient = v.relative_to(rho).expect("equal sizes");
    for swap in breaking_swaps(&quotient) {
        let next = rho.apply_swap(swap).expect("in range");
        prefix.push(swap);
        let keep_going = walk_geodesics(&next, v, remaining - 1, prefix, out, limit);
        prefix.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

/// All swaps whose values are co-cyclic in `quotient`, in lexicographic order.
pub(crate) fn breaking_swaps(quotient: &Permutation) -> Vec<SwapOp> {
    let mut swaps = Vec::new();
    for cycle in quotient.cycles().cycles() {
        if cycle.len() < 2 {
            continue;
        }
        for i in 0..cycle.len() {
            for j in (i + 1)..cycle.len() {
                swaps.push(SwapOp::new(cycle[i], cycle[j]).expect("distinct"));
            }
        }
    }
    swaps.sort_unstable();
    swaps
}

/// Number of geodesics from `u` to `v`, by the product formula: with quotient
/// cycle sizes k₁, …, kᵣ and d = Σ(kᵢ − 1), the count is
/// d! · Π kᵢ^(kᵢ−2) / Π (kᵢ − 1)!.
pub fn count_geodesics(u: &Permutation, v: &Permutation) -> Result<BigUint, GeodesyError> {
    let quotient = v.relative_to(u)?;
    let mut count = factorial(quotient.swap_distance());
    for cycle in quotient.cycles().cycles() {
        let k = cycle.len();
        if k < 2 {
            continue;
        }
        count *= BigUint::from(k).pow(k as u32 - 2);
        count /= factorial(k - 1);
    }
    Ok(count)
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product::<BigUint>().max(BigUint::from(1u32))
}

/// How favorably an instance's optimal medians sit relative to the pairwise
/// geodesics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceType {
    /// Some optimal median lies on a geodesic for all three pairs.
    Type1,
    /// Neither of the other two cases.
    Type2,
    /// Every optimal median lies on no pairwise geodesic at all.
    Type3,
}

impl std::fmt::Display for InstanceType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InstanceType::Type1 => write!(f, "type-1"),
            InstanceType::Type2 => write!(f, "type-2"),
            InstanceType::Type3 => write!(f, "type-3"),
        }
    }
}

/// Exhaustively finds the optimal median value and every optimal median.
///
/// Only feasible for small sizes; refuses `n > limit`.
pub fn optimal_medians(
    t: &MedianInstance,
    limit: usize,
) -> Result<(usize, Vec<Permutation>), GeodesyError> {
    let n = t.size();
    if n > limit {
        return Err(GeodesyError::TooLarge { n, limit });
    }
    use itertools::Itertools;
    let mut best = usize::MAX;
    let mut optima = Vec::new();
    for elems in (1..=n as u32).permutations(n) {
        let sigma = Permutation::new(elems).expect("permutation by construction");
        let total = t.total_distance(&sigma)?;
        if total < best {
            best = total;
            optima.clear();
        }
        if total == best {
            optima.push(sigma);
        }
    }
    Ok((best, optima))
}

/// Classifies an instance by examining all optimal medians (exhaustive).
pub fn classify_instance_type(
    t: &MedianInstance,
    limit: usize,
) -> Result<InstanceType, GeodesyError> {
    let (_, optima) = optimal_medians(t, limit)?;
    let mut any_all_three = false;
    let mut all_none = true;
    for sigma in &optima {
        let pairs = [
            (t.p1(), t.p2()),
            (t.p1(), t.p3()),
            (t.p2(), t.p3()),
        ];
        let mut hits = 0;
        for (u, v) in pairs {
            if on_geodesic(sigma, u, v)? {
                hits += 1;
            }
        }
        if hits == 3 {
            any_all_three = true;
        }
        if hits > 0 {
            all_none = false;
        }
    }
    Ok(if any_all_three {
        InstanceType::Type1
    } else if all_none {
        InstanceType::Type3
    } else {
        InstanceType::Type2
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(s: &str) -> Permutation {
        s.parse().expect("test permutation")
    }

    fn instance(a: &str, b: &str, c: &str) -> MedianInstance {
        MedianInstance::new(perm(a), perm(b), perm(c)).unwrap()
    }

    #[test]
    fn three_cycle_triple_distances_and_bounds() {
        let t = instance("3 1 2", "2 1 3", "1 3 2");
        let d = pairwise_distances(&t);
        assert_eq!((d.d12, d.d13, d.d23), (1, 1, 2));
        assert_eq!(median_lower_bound(&t), 2);
        assert_eq!(closest_lower_bound(&t), 1);
        assert_eq!(lb_swap_budget(&t), Some(0));
        // The first permutation itself achieves the median lower bound here.
        assert_eq!(t.total_distance(t.p1()).unwrap(), 2);
    }

    #[test]
    fn relabeling_fixes_first_permutation_and_preserves_distances() {
        let t = instance("3 1 2", "2 1 3", "1 3 2");
        let r = t.relabeled();
        assert_eq!(r.p1(), &Permutation::identity(3).unwrap());
        assert_eq!(r.p2(), &perm("3 2 1"));
        assert_eq!(r.p3(), &perm("2 1 3"));
        assert_eq!(pairwise_distances(&r), pairwise_distances(&t));
    }

    #[test]
    fn budget_is_anchored_at_first_permutation() {
        let p = perm("2 3 1");
        let id = Permutation::identity(3).unwrap();
        let t = MedianInstance::new(id.clone(), p.clone(), p.clone()).unwrap();
        // d12 = d13 = d(ι, p) = 2, d23 = 0, so the budget equals d(ι, p).
        assert_eq!(lb_swap_budget(&t), Some(2));
        let anchored = MedianInstance::new(p.clone(), id.clone(), id).unwrap();
        assert_eq!(lb_swap_budget(&anchored), Some(2));
    }

    #[test]
    fn size_mismatch_is_rejected() {
        assert!(MedianInstance::new(perm("1 2"), perm("1 2"), perm("1 2 3")).is_err());
    }

    #[test]
    fn on_geodesic_examples() {
        let id = Permutation::identity(3).unwrap();
        let v = perm("2 3 1");
        assert!(on_geodesic(&perm("2 1 3"), &id, &v).unwrap());
        assert!(on_geodesic(&id, &id, &v).unwrap());
        assert!(on_geodesic(&v, &id, &v).unwrap());
        // The opposite three-cycle is two swaps from both endpoints.
        assert!(!on_geodesic(&perm("3 1 2"), &id, &v).unwrap());
    }

    #[test]
    fn geodesics_of_a_three_cycle() {
        let id = Permutation::identity(3).unwrap();
        let v = perm("2 3 1");
        let found = enumerate_geodesics(&id, &v, 100).unwrap();
        assert_eq!(found.sequences.len(), 3);
        assert!(!found.truncated);
        assert_eq!(count_geodesics(&id, &v).unwrap(), BigUint::from(3u32));
        for seq in &found.sequences {
            assert_eq!(seq.len(), 2);
            let mut rho = id.clone();
            for &s in seq {
                rho = rho.apply_swap(s).unwrap();
            }
            assert_eq!(rho, v);
        }
        let cut = enumerate_geodesics(&id, &v, 2).unwrap();
        assert_eq!(cut.sequences.len(), 2);
        assert!(cut.truncated);
    }

    #[test]
    fn geodesic_count_for_pair_exchanges() {
        // With every value paired up and exchanged, the sequences are the
        // orderings of the forced swaps: (n/2)! of them.
        let cases = [(2, 1u32), (4, 2), (6, 6), (8, 24)];
        for (n, expected) in cases {
            let id = Permutation::identity(n).unwrap();
            let cycles: Vec<Vec<u32>> = (0..n as u32 / 2)
                .map(|i| vec![2 * i + 1, 2 * i + 2])
                .collect();
            let v = Permutation::from_cycles(n, &cycles).unwrap();
            assert_eq!(count_geodesics(&id, &v).unwrap(), BigUint::from(expected));
        }
    }

    #[test]
    fn geodesic_count_matches_enumeration_for_small_sizes() {
        use itertools::Itertools;
        for n in 1..=4usize {
            let id = Permutation::identity(n).unwrap();
            for elems in (1..=n as u32).permutations(n) {
                let v = Permutation::new(elems).unwrap();
                let found = enumerate_geodesics(&id, &v, 1_000_000).unwrap();
                assert!(!found.truncated);
                assert_eq!(
                    count_geodesics(&id, &v).unwrap(),
                    BigUint::from(found.sequences.len()),
                    "count mismatch for {v:?}"
                );
            }
        }
    }

    #[test]
    fn classify_three_cycle_triple_as_type_one() {
        let t = instance("3 1 2", "2 1 3", "1 3 2");
        assert_eq!(classify_instance_type(&t, 6).unwrap(), InstanceType::Type1);
        assert!(classify_instance_type(&t, 2).is_err());
    }

    proptest! {
        #[test]
        fn budget_sentinel_never_fires_on_valid_triples(
            xs in proptest::collection::vec(0u32..10_000, 2..8),
            ys in proptest::collection::vec(0u32..10_000, 2..8),
            zs in proptest::collection::vec(0u32..10_000, 2..8),
        ) {
            let n = xs.len().min(ys.len()).min(zs.len());
            let t = MedianInstance::new(
                rand_perm(&xs[..n]),
                rand_perm(&ys[..n]),
                rand_perm(&zs[..n]),
            ).unwrap();
            let d = pairwise_distances(&t);
            prop_assert_eq!(d.sum() % 2, 0);
            prop_assert!(d.d12 + d.d13 >= d.d23);
            prop_assert!(lb_swap_budget(&t).is_some());
            // The relabeled instance is genuinely the same instance.
            let r = t.relabeled();
            prop_assert_eq!(pairwise_distances(&r), d);
            prop_assert_eq!(lb_swap_budget(&r), lb_swap_budget(&t));
        }

        #[test]
        fn lower_bounds_hold_for_exhaustive_optima(
            xs in proptest::collection::vec(0u32..10_000, 3..6),
            ys in proptest::collection::vec(0u32..10_000, 3..6),
            zs in proptest::collection::vec(0u32..10_000, 3..6),
        ) {
            let n = xs.len().min(ys.len()).min(zs.len());
            let t = MedianInstance::new(
                rand_perm(&xs[..n]),
                rand_perm(&ys[..n]),
                rand_perm(&zs[..n]),
            ).unwrap();
            let (best, optima) = optimal_medians(&t, 6).unwrap();
            prop_assert!(best >= median_lower_bound(&t));
            prop_assert!(!optima.is_empty());
        }
    }

    fn rand_perm(keys: &[u32]) -> Permutation {
        let n = keys.len();
        let mut idx: Vec<u32> = (1..=n as u32).collect();
        idx.sort_by_key(|&i| (keys[i as usize - 1], i));
        Permutation::new(idx).unwrap()
    }
}
