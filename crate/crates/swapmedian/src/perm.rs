//! Permutations in one-line notation, their cycle structure, and the swap metric.
//!
//! A permutation of size `n` maps `{1, …, n}` onto itself. The number of algebraic
//! cycles (fixed points included) determines the swap distance: sorting a
//! permutation by transpositions of values takes exactly `n − c` swaps, and the
//! distance between two permutations is the swap distance of their quotient.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors for constructing and combining permutations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    /// Permutations of size 0 carry no information and are rejected everywhere.
    #[error("permutation must have size at least 1")]
    Empty,
    /// One-line notation must list each of 1..=n exactly once.
    #[error("invalid one-line notation: {0}")]
    NotAPermutation(String),
    /// Binary operations require equal sizes.
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    /// Swap endpoints must be distinct values inside 1..=n.
    #[error("swap ({a}, {b}) is not valid for size {n}")]
    BadSwap { a: u32, b: u32, n: usize },
    /// A cycle list must partition 1..=n without repeats.
    #[error("invalid cycle list: {0}")]
    BadCycles(String),
}

/// An unordered pair of distinct values `{a, b}`, stored with `a < b`.
///
/// Applying a swap to a permutation exchanges the two values wherever they
/// appear in one-line notation (left multiplication by the transposition).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SwapOp {
    a: u32,
    b: u32,
}

impl SwapOp {
    /// Builds the swap `{a, b}`; order of arguments does not matter.
    pub fn new(a: u32, b: u32) -> Result<Self, PermError> {
        if a == b || a == 0 || b == 0 {
            return Err(PermError::BadSwap { a, b, n: 0 });
        }
        Ok(SwapOp {
            a: a.min(b),
            b: a.max(b),
        })
    }

    /// The smaller value of the pair.
    pub fn a(&self) -> u32 {
        self.a
    }

    /// The larger value of the pair.
    pub fn b(&self) -> u32 {
        self.b
    }
}

impl fmt::Display for SwapOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {})", self.a, self.b)
    }
}

/// Effect of a swap on the cycle structure of a permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwapClass {
    /// Both values lie in one cycle; the swap splits it (cycle count +1).
    Break,
    /// The values lie in different cycles; the swap joins them (cycle count −1).
    Unite,
}

/// A permutation of `{1, …, n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    /// `elems[i]` is the image of `i + 1`.
    elems: Vec<u32>,
}

impl Permutation {
    /// Validates one-line notation: every value in 1..=n exactly once, n ≥ 1.
    pub fn new(elems: Vec<u32>) -> Result<Self, PermError> {
        if elems.is_empty() {
            return Err(PermError::Empty);
        }
        let n = elems.len();
        let mut seen = vec![false; n];
        for &v in &elems {
            if v == 0 || v as usize > n {
                return Err(PermError::NotAPermutation(format!(
                    "value {v} out of range 1..={n}"
                )));
            }
            if seen[v as usize - 1] {
                return Err(PermError::NotAPermutation(format!("value {v} repeated")));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { elems })
    }

    /// The identity permutation of size `n`.
    pub fn identity(n: usize) -> Result<Self, PermError> {
        if n == 0 {
            return Err(PermError::Empty);
        }
        Ok(Permutation {
            elems: (1..=n as u32).collect(),
        })
    }

    /// Builds the permutation of size `n` with the given cycles.
    ///
    /// Fixed points may be omitted; listed values must be distinct and in range.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Self, PermError> {
        if n == 0 {
            return Err(PermError::Empty);
        }
        let mut elems: Vec<u32> = (1..=n as u32).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (i, &v) in cycle.iter().enumerate() {
                if v == 0 || v as usize > n {
                    return Err(PermError::BadCycles(format!(
                        "value {v} out of range 1..={n}"
                    )));
                }
                if used[v as usize - 1] {
                    return Err(PermError::BadCycles(format!("value {v} repeated")));
                }
                used[v as usize - 1] = true;
                let next = cycle[(i + 1) % cycle.len()];
                elems[v as usize - 1] = next;
            }
        }
        Permutation::new(elems)
    }

    /// Number of elements moved around, i.e. the size `n`.
    pub fn size(&self) -> usize {
        self.elems.len()
    }

    /// Image of `i` (1-based).
    pub fn image(&self, i: u32) -> u32 {
        self.elems[i as usize - 1]
    }

    /// One-line notation as a slice.
    pub fn as_slice(&self) -> &[u32] {
        &self.elems
    }

    /// Composition `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.size() != other.size() {
            return Err(PermError::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        Ok(Permutation {
            elems: other.elems.iter().map(|&v| self.image(v)).collect(),
        })
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.size()];
        for (i, &v) in self.elems.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation { elems: inv }
    }

    /// Quotient `self ∘ base⁻¹`: the rearrangement that turns `base` into `self`.
    ///
    /// Its cycles describe how `self` differs from `base`; with `base` the
    /// identity this is `self` itself.
    pub fn relative_to(&self, base: &Permutation) -> Result<Permutation, PermError> {
        self.compose(&base.inverse())
    }

    /// Cycle decomposition in canonical form.
    pub fn cycles(&self) -> CycleDecomposition {
        let n = self.size();
        let mut cycle_index = vec![usize::MAX; n];
        let mut cycles = Vec::new();
        for start in 1..=n as u32 {
            if cycle_index[start as usize - 1] != usize::MAX {
                continue;
            }
            let idx = cycles.len();
            let mut cycle = Vec::new();
            let mut v = start;
            loop {
                cycle_index[v as usize - 1] = idx;
                cycle.push(v);
                v = self.image(v);
                if v == start {
                    break;
                }
            }
            cycles.push(cycle);
        }
        CycleDecomposition {
            size: n,
            cycles,
            cycle_index,
        }
    }

    /// Number of algebraic cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 1..=n as u32 {
            if seen[start as usize - 1] {
                continue;
            }
            count += 1;
            let mut v = start;
            while !seen[v as usize - 1] {
                seen[v as usize - 1] = true;
                v = self.image(v);
            }
        }
        count
    }

    /// Minimum number of swaps that sort this permutation: `n − c`.
    pub fn swap_distance(&self) -> usize {
        self.size() - self.cycle_count()
    }

    /// Swap distance between two permutations of the same size.
    pub fn distance_to(&self, other: &Permutation) -> Result<usize, PermError> {
        Ok(self.relative_to(other)?.swap_distance())
    }

    /// Exchanges the values `s.a` and `s.b` wherever they appear.
    pub fn apply_swap(&self, s: SwapOp) -> Result<Permutation, PermError> {
        let n = self.size();
        if s.b as usize > n {
            return Err(PermError::BadSwap { a: s.a, b: s.b, n });
        }
        let mut elems = self.elems.clone();
        let pa = elems.iter().position(|&v| v == s.a).expect("validated");
        let pb = elems.iter().position(|&v| v == s.b).expect("validated");
        elems.swap(pa, pb);
        Ok(Permutation { elems })
    }

    /// Whether applying `s` breaks one cycle of `self` in two or unites two.
    pub fn classify_swap(&self, s: SwapOp) -> Result<SwapClass, PermError> {
        let n = self.size();
        if s.b as usize > n {
            return Err(PermError::BadSwap { a: s.a, b: s.b, n });
        }
        // Walk the cycle of `a`; if it reaches `b` the two values are co-cyclic.
        let mut v = self.image(s.a);
        while v != s.a {
            if v == s.b {
                return Ok(SwapClass::Break);
            }
            v = self.image(v);
        }
        Ok(SwapClass::Unite)
    }

    /// Disjoint union: `other` acts on a fresh block of values shifted past `self`.
    pub fn union(&self, other: &Permutation) -> Permutation {
        let shift = self.size() as u32;
        let mut elems = self.elems.clone();
        elems.extend(other.elems.iter().map(|&v| v + shift));
        Permutation { elems }
    }

    /// Parity of the permutation: `(n − c) mod 2`.
    pub fn parity(&self) -> usize {
        self.swap_distance() % 2
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.elems {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Parses whitespace-separated one-line notation, e.g. `"8 5 1 3 2 7 6 4"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let elems: Result<Vec<u32>, _> = s.split_whitespace().map(|t| t.parse()).collect();
        let elems = elems.map_err(|e| PermError::NotAPermutation(format!("{e}")))?;
        Permutation::new(elems)
    }
}

/// Cycle decomposition of a permutation, in canonical form: each cycle starts
/// at its smallest value and cycles are ordered by smallest value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    size: usize,
    cycles: Vec<Vec<u32>>,
    cycle_index: Vec<usize>,
}

impl CycleDecomposition {
    /// Number of cycles, fixed points included.
    pub fn count(&self) -> usize {
        self.cycles.len()
    }

    /// Size of the underlying permutation.
    pub fn size(&self) -> usize {
        self.size
    }

    /// The cycles themselves.
    pub fn cycles(&self) -> &[Vec<u32>] {
        &self.cycles
    }

    /// Index (into `cycles`) of the cycle containing `v`.
    pub fn cycle_of(&self, v: u32) -> usize {
        self.cycle_index[v as usize - 1]
    }

    /// Whether `a` and `b` lie in the same cycle.
    pub fn co_cyclic(&self, a: u32, b: u32) -> bool {
        self.cycle_of(a) == self.cycle_of(b)
    }

    /// Rebuilds the permutation the decomposition came from.
    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_cycles(self.size, &self.cycles).expect("decomposition is consistent")
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in &self.cycles {
            write!(f, "(")?;
            let mut first = true;
            for v in cycle {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
                first = false;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashMap;
    use std::collections::VecDeque;

    fn perm(s: &str) -> Permutation {
        s.parse().expect("test permutation")
    }

    /// Breadth-first search over the swap graph: distance from `p` to every
    /// permutation of the same size. Independent of the cycle-count formula.
    fn bfs_distances(p: &Permutation) -> HashMap<Permutation, usize> {
        let n = p.size();
        let mut dist = HashMap::new();
        dist.insert(p.clone(), 0);
        let mut queue = VecDeque::new();
        queue.push_back(p.clone());
        while let Some(q) = queue.pop_front() {
            let d = dist[&q];
            for a in 1..=n as u32 {
                for b in (a + 1)..=n as u32 {
                    let s = SwapOp::new(a, b).unwrap();
                    let r = q.apply_swap(s).unwrap();
                    if !dist.contains_key(&r) {
                        dist.insert(r.clone(), d + 1);
                        queue.push_back(r);
                    }
                }
            }
        }
        dist
    }

    fn all_perms(n: usize) -> Vec<Permutation> {
        use itertools::Itertools;
        (1..=n as u32)
            .permutations(n)
            .map(|v| Permutation::new(v).unwrap())
            .collect()
    }

    #[test]
    fn rejects_empty_and_malformed() {
        assert_eq!(Permutation::new(vec![]), Err(PermError::Empty));
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![2, 3]).is_err());
        assert!(Permutation::new(vec![0]).is_err());
        assert!(Permutation::identity(0).is_err());
    }

    #[test]
    fn eight_element_example_has_three_cycles_and_distance_five() {
        let p = perm("8 5 1 3 2 7 6 4");
        let dec = p.cycles();
        assert_eq!(dec.count(), 3);
        assert_eq!(
            dec.cycles(),
            &[vec![1, 8, 4, 3], vec![2, 5], vec![6, 7]]
        );
        assert_eq!(p.swap_distance(), 5);
        assert_eq!(dec.to_permutation(), p);
    }

    #[test]
    fn identity_has_n_cycles_and_distance_zero() {
        let id = Permutation::identity(6).unwrap();
        assert_eq!(id.cycle_count(), 6);
        assert_eq!(id.swap_distance(), 0);
    }

    #[test]
    fn distance_examples() {
        assert_eq!(perm("3 2 1").distance_to(&perm("2 1 3")).unwrap(), 2);
        assert_eq!(perm("2 1 3 4").distance_to(&perm("1 2 4 3")).unwrap(), 2);
        let id = Permutation::identity(3).unwrap();
        assert_eq!(id.distance_to(&perm("2 3 1")).unwrap(), 2);
    }

    #[test]
    fn compose_applies_right_operand_first() {
        let p = perm("2 1 3");
        let q = perm("1 3 2");
        let pq = p.compose(&q).unwrap();
        // (p ∘ q)(2) = p(q(2)) = p(3) = 3
        assert_eq!(pq.image(2), 3);
        assert_eq!(pq, perm("2 3 1"));
        assert!(p.compose(&Permutation::identity(4).unwrap()).is_err());
    }

    #[test]
    fn inverse_composes_to_identity() {
        let p = perm("8 5 1 3 2 7 6 4");
        let id = Permutation::identity(8).unwrap();
        assert_eq!(p.compose(&p.inverse()).unwrap(), id);
        assert_eq!(p.inverse().compose(&p).unwrap(), id);
    }

    #[test]
    fn apply_swap_exchanges_values() {
        let p = perm("3 2 1");
        let s = SwapOp::new(3, 1).unwrap();
        assert_eq!(p.apply_swap(s).unwrap(), perm("1 2 3"));
        // Out-of-range swap is rejected.
        assert!(p.apply_swap(SwapOp::new(1, 4).unwrap()).is_err());
    }

    #[test]
    fn swap_classification_matches_cycle_count_change() {
        let p = perm("8 5 1 3 2 7 6 4");
        // 1 and 4 share the cycle (1 8 4 3): breaking.
        assert_eq!(p.classify_swap(SwapOp::new(1, 4).unwrap()).unwrap(), SwapClass::Break);
        // 2 and 6 lie in different cycles: uniting.
        assert_eq!(p.classify_swap(SwapOp::new(2, 6).unwrap()).unwrap(), SwapClass::Unite);
        for q in all_perms(5) {
            let c = q.cycle_count();
            for a in 1..=5u32 {
                for b in (a + 1)..=5u32 {
                    let s = SwapOp::new(a, b).unwrap();
                    let c_after = q.apply_swap(s).unwrap().cycle_count();
                    match q.classify_swap(s).unwrap() {
                        SwapClass::Break => assert_eq!(c_after, c + 1),
                        SwapClass::Unite => assert_eq!(c_after, c.wrapping_sub(1)),
                    }
                }
            }
        }
    }

    #[test]
    fn union_shifts_second_block() {
        let p = perm("2 1");
        let q = perm("1 3 2");
        assert_eq!(p.union(&q), perm("2 1 3 5 4"));
    }

    #[test]
    fn from_cycles_round_trip() {
        let p = Permutation::from_cycles(8, &[vec![1, 8, 4, 3], vec![2, 5], vec![6, 7]]).unwrap();
        assert_eq!(p, perm("8 5 1 3 2 7 6 4"));
        assert!(Permutation::from_cycles(3, &[vec![1, 1]]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![1, 4]]).is_err());
    }

    #[test]
    fn swap_distance_matches_bfs_oracle_small_sizes() {
        for n in 1..=5 {
            let id = Permutation::identity(n).unwrap();
            let oracle = bfs_distances(&id);
            for (q, &d) in &oracle {
                assert_eq!(q.swap_distance(), d, "swap distance of {q:?}");
            }
            assert_eq!(oracle.len(), (1..=n).product::<usize>());
        }
    }

    #[test]
    fn pairwise_distance_matches_bfs_oracle() {
        let base = perm("3 1 4 2");
        let oracle = bfs_distances(&base);
        for (q, &d) in &oracle {
            assert_eq!(q.distance_to(&base).unwrap(), d);
            assert_eq!(base.distance_to(q).unwrap(), d);
        }
    }

    proptest! {
        #[test]
        fn distance_is_a_metric(xs in proptest::collection::vec(0u32..10_000, 2..9),
                                ys in proptest::collection::vec(0u32..10_000, 2..9),
                                zs in proptest::collection::vec(0u32..10_000, 2..9)) {
            let n = xs.len().min(ys.len()).min(zs.len());
            let p = rand_perm(&xs[..n]);
            let q = rand_perm(&ys[..n]);
            let r = rand_perm(&zs[..n]);
            let dpq = p.distance_to(&q).unwrap();
            let dqp = q.distance_to(&p).unwrap();
            prop_assert_eq!(dpq, dqp);
            prop_assert_eq!(dpq == 0, p == q);
            prop_assert!(p.distance_to(&r).unwrap() <= dpq + q.distance_to(&r).unwrap());
        }

        #[test]
        fn distance_is_invariant_under_relabeling(xs in proptest::collection::vec(0u32..10_000, 2..9),
                                                  ys in proptest::collection::vec(0u32..10_000, 2..9),
                                                  zs in proptest::collection::vec(0u32..10_000, 2..9)) {
            let n = xs.len().min(ys.len()).min(zs.len());
            let p = rand_perm(&xs[..n]);
            let q = rand_perm(&ys[..n]);
            let t = rand_perm(&zs[..n]);
            let d = p.distance_to(&q).unwrap();
            // Renaming values (left) and positions (right) both preserve distance.
            let left = t.compose(&p).unwrap().distance_to(&t.compose(&q).unwrap()).unwrap();
            let right = p.compose(&t).unwrap().distance_to(&q.compose(&t).unwrap()).unwrap();
            prop_assert_eq!(d, left);
            prop_assert_eq!(d, right);
        }

        #[test]
        fn cycles_are_canonical(xs in proptest::collection::vec(0u32..10_000, 1..10)) {
            let p = rand_perm(&xs);
            let dec = p.cycles();
            let mins: Vec<u32> = dec.cycles().iter().map(|c| c[0]).collect();
            for c in dec.cycles() {
                prop_assert_eq!(c[0], *c.iter().min().unwrap());
            }
            let mut sorted = mins.clone();
            sorted.sort_unstable();
            prop_assert_eq!(mins, sorted);
            prop_assert_eq!(dec.cycles().iter().map(|c| c.len()).sum::<usize>(), p.size());
            prop_assert_eq!(dec.to_permutation(), p);
        }
    }

    /// Deterministically turns a seed vector into a permutation of its length
    /// (sort indices by key): keeps proptest shrinkable while covering S_n.
    fn rand_perm(keys: &[u32]) -> Permutation {
        let n = keys.len();
        let mut idx: Vec<u32> = (1..=n as u32).collect();
        idx.sort_by_key(|&i| (keys[i as usize - 1], i));
        Permutation::new(idx).unwrap()
    }
}
