//! Simple undirected graphs: 2-subdivision, exact maximum independent sets,
//! isomorphism testing, padding with isolated vertices, and a canonical
//! catalog of small graphs up to isomorphism.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Errors for graph construction and the exact algorithms' size guards.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({u}, {v}) is not valid for {n} vertices")]
    BadEdge { u: usize, v: usize, n: usize },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },
    #[error("graph with {n} vertices exceeds the configured limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("padding needs k − k′ − m ≥ 0, got k = {k}, k′ = {k_prime}, m = {m}")]
    PadPrecondition { k: usize, k_prime: usize, m: usize },
    #[error("vertex {v} has no label")]
    MissingLabel { v: usize },
}

/// Identity of a vertex in a subdivision graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexLabel {
    /// A vertex of the source graph, by its original index.
    Original(usize),
    /// The subdivision vertex of edge `{near, far}` sitting next to `near`.
    Subdivision { near: usize, far: usize },
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Original(v) => write!(f, "v{v}"),
            VertexLabel::Subdivision { near, far } => write!(f, "x({near},{far})"),
        }
    }
}

/// A simple undirected graph on vertices `0..n`, optionally with labels
/// recording subdivision provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    labels: Option<Vec<VertexLabel>>,
}

impl SimpleGraph {
    /// Builds a graph, normalizing edges to `(min, max)` and rejecting loops,
    /// out-of-range endpoints and duplicates.
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut edges = BTreeSet::new();
        for &(u, v) in edge_list {
            if u == v || u >= n || v >= n {
                return Err(GraphError::BadEdge { u, v, n });
            }
            let e = (u.min(v), u.max(v));
            if !edges.insert(e) {
                return Err(GraphError::DuplicateEdge { u: e.0, v: e.1 });
            }
        }
        Ok(SimpleGraph {
            n,
            edges,
            labels: None,
        })
    }

    /// The edgeless graph on `n` vertices.
    pub fn edgeless(n: usize) -> Self {
        SimpleGraph {
            n,
            edges: BTreeSet::new(),
            labels: None,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as normalized `(u, v)` pairs with `u < v`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| self.has_edge(u, v)).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// Labels, if the graph records subdivision provenance.
    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    pub fn label_of(&self, v: usize) -> Option<VertexLabel> {
        self.labels.as_ref().map(|l| l[v])
    }

    /// Attaches labels (one per vertex).
    pub fn with_labels(mut self, labels: Vec<VertexLabel>) -> Self {
        assert_eq!(labels.len(), self.n, "one label per vertex");
        self.labels = Some(labels);
        self
    }

    /// Closed-neighborhood bitmasks; requires at most 128 vertices.
    fn adjacency_masks(&self) -> Result<Vec<u128>, GraphError> {
        if self.n > 128 {
            return Err(GraphError::TooLarge {
                n: self.n,
                limit: 128,
            });
        }
        let mut adj = vec![0u128; self.n];
        for &(u, v) in &self.edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(adj)
    }
}

/// Replaces every edge `{u, v}` by a path `u — x(u,v) — x(v,u) — v`.
///
/// Original vertices keep their indices; the two subdivision vertices of each
/// edge are appended in edge order, labeled with their provenance.
pub fn subd2(g: &SimpleGraph) -> SimpleGraph {
    let n = g.vertex_count();
    let mut labels: Vec<VertexLabel> = (0..n).map(VertexLabel::Original).collect();
    let mut edges = Vec::new();
    let mut next = n;
    for (u, v) in g.edges() {
        let x_uv = next;
        let x_vu = next + 1;
        next += 2;
        labels.push(VertexLabel::Subdivision { near: u, far: v });
        labels.push(VertexLabel::Subdivision { near: v, far: u });
        edges.push((u, x_uv));
        edges.push((x_uv, x_vu));
        edges.push((x_vu, v));
    }
    SimpleGraph::new(next, &edges)
        .expect("subdivision of a simple graph is simple")
        .with_labels(labels)
}

/// Adds `k − k_prime − m` isolated vertices to `g` (m = edge count).
///
/// Labels are dropped: padding applies to source graphs, not subdivisions.
pub fn pad_graph(g: &SimpleGraph, k: usize, k_prime: usize) -> Result<SimpleGraph, GraphError> {
    let m = g.edge_count();
    let t = k
        .checked_sub(k_prime)
        .and_then(|x| x.checked_sub(m))
        .ok_or(GraphError::PadPrecondition {
            k,
            k_prime,
            m,
        })?;
    let edges: Vec<_> = g.edges().collect();
    SimpleGraph::new(g.vertex_count() + t, &edges)
}

/// A maximum independent set: the lexicographically smallest one, with its size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependentSetResult {
    pub members: Vec<usize>,
    pub size: usize,
}

/// Exact maximum independent set by branch and bound.
///
/// Refuses graphs with more than `limit` vertices. Among all maximum
/// independent sets, the returned member list is lexicographically smallest.
pub fn exact_mis(g: &SimpleGraph, limit: usize) -> Result<IndependentSetResult, GraphError> {
    let n = g.vertex_count();
    if n > limit {
        return Err(GraphError::TooLarge { n, limit });
    }
    let adj = g.adjacency_masks()?;
    let full: u128 = if n == 128 { !0 } else { (1u128 << n) - 1 };
    let size = mis_size(&adj, full);
    // Greedy lexicographic extraction: include the smallest vertex that still
    // permits a maximum set, otherwise discard it for good.
    let mut members = Vec::new();
    let mut rem = full;
    for v in 0..n {
        let bit = 1u128 << v;
        if rem & bit == 0 {
            continue;
        }
        let cand = rem & !(adj[v] | bit);
        if members.len() + 1 + mis_size(&adj, cand) == size {
            members.push(v);
            rem = cand;
        } else {
            rem &= !bit;
        }
    }
    debug_assert_eq!(members.len(), size);
    Ok(IndependentSetResult { members, size })
}

/// Size of a maximum independent set within `active`.
fn mis_size(adj: &[u128], active: u128) -> usize {
    let mut best = 0;
    mis_rec(adj, active, 0, &mut best);
    best
}

fn mis_rec(adj: &[u128], mut active: u128, mut current: usize, best: &mut usize) {
    loop {
        if active == 0 {
            *best = (*best).max(current);
            return;
        }
        if current + active.count_ones() as usize <= *best {
            return;
        }
        // Vertices of degree ≤ 1 always belong to some maximum set: take them.
        let mut max_v = usize::MAX;
        let mut max_d = 0;
        let mut peeled = false;
        let mut scan = active;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            let d = (adj[v] & active).count_ones() as usize;
            if d <= 1 {
                active &= !(adj[v] & active | (1u128 << v));
                current += 1;
                peeled = true;
                break;
            }
            if d > max_d {
                max_d = d;
                max_v = v;
            }
        }
        if peeled {
            continue;
        }
        // All degrees are ≥ 2; when they are exactly 2 the remainder is a
        // disjoint union of paths and cycles, solvable in closed form.
        if max_d == 2 {
            *best = (*best).max(current + paths_and_cycles_alpha(adj, active));
            return;
        }
        let v = max_v;
        mis_rec(adj, active & !(adj[v] | (1u128 << v)), current + 1, best);
        mis_rec(adj, active & !(1u128 << v), current, best);
        return;
    }
}

/// Independence number of a graph whose active part has maximum degree 2:
/// ⌈p/2⌉ per path with p vertices, ⌊p/2⌋ per cycle.
fn paths_and_cycles_alpha(adj: &[u128], active: u128) -> usize {
    let mut seen = 0u128;
    let mut total = 0;
    let mut scan = active;
    while scan != 0 {
        let v = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        if seen & (1u128 << v) != 0 {
            continue;
        }
        // Flood the component of v.
        let mut comp = 1u128 << v;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0u128;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[u] & active & !comp;
            }
            comp |= next;
            frontier = next;
        }
        seen |= comp;
        let vertices = comp.count_ones() as usize;
        let mut edge_ends = 0;
        let mut c = comp;
        while c != 0 {
            let u = c.trailing_zeros() as usize;
            c &= c - 1;
            edge_ends += (adj[u] & comp).count_ones() as usize;
        }
        let is_cycle = edge_ends / 2 == vertices;
        total += if is_cycle { vertices / 2 } else { vertices.div_ceil(2) };
    }
    total
}

/// Isomorphism test by degree-guided backtracking.
///
/// Refuses graphs with more than `limit` vertices; labels are ignored (they
/// record provenance, not structure).
pub fn is_isomorphic(g: &SimpleGraph, h: &SimpleGraph, limit: usize) -> Result<bool, GraphError> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let n = g.vertex_count();
    if n > limit {
        return Err(GraphError::TooLarge { n, limit });
    }
    let deg_g: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let deg_h: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    let mut sorted_g = deg_g.clone();
    let mut sorted_h = deg_h.clone();
    sorted_g.sort_unstable();
    sorted_h.sort_unstable();
    if sorted_g != sorted_h {
        return Ok(false);
    }
    // Map high-degree vertices first; constraints bite earlier that way.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(deg_g[v]));
    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend_mapping(
        g, h, &deg_g, &deg_h, &order, 0, &mut mapping, &mut used,
    ))
}

#[allow(clippy::too_many_arguments)]
fn extend_mapping(
    g: &SimpleGraph,
    h: &SimpleGraph,
    deg_g: &[usize],
    deg_h: &[usize],
    order: &[usize],
    pos: usize,
    mapping: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    'candidates: for w in 0..h.vertex_count() {
        if used[w] || deg_h[w] != deg_g[v] {
            continue;
        }
        for &u in &order[..pos] {
            if g.has_edge(v, u) != h.has_edge(w, mapping[u]) {
                continue 'candidates;
            }
        }
        mapping[v] = w;
        used[w] = true;
        if extend_mapping(g, h, deg_g, deg_h, order, pos + 1, mapping, used) {
            return true;
        }
        mapping[v] = usize::MAX;
        used[w] = false;
    }
    false
}

/// All graphs with 1..=`max_n` vertices, one representative per isomorphism
/// class, in a deterministic order (by vertex count, then by canonical form).
///
/// Built by extending each smaller graph with one new vertex in every possible
/// way and deduplicating canonical edge encodings. Sizes up to 8 are supported.
pub fn graph_catalog(max_n: usize) -> Vec<SimpleGraph> {
    assert!(max_n <= 8, "catalog supports at most 8 vertices");
    let mut out = Vec::new();
    let mut prev: Vec<u64> = Vec::new();
    for n in 1..=max_n {
        let perms = permutations_of(n);
        let pair_maps: Vec<Vec<usize>> = perms.iter().map(|p| edge_remap(p, n)).collect();
        let mut seen = BTreeSet::new();
        if n == 1 {
            seen.insert(0u64);
        } else {
            let mut raw = BTreeSet::new();
            for &base in &prev {
                for nb in 0u64..(1 << (n - 1)) {
                    let mut mask = base;
                    for i in 0..(n - 1) {
                        if nb & (1 << i) != 0 {
                            mask |= 1 << pair_index(i, n - 1);
                        }
                    }
                    raw.insert(mask);
                }
            }
            for mask in raw {
                seen.insert(canonical_mask(mask, n, &pair_maps));
            }
        }
        for &mask in &seen {
            out.push(graph_from_mask(n, mask));
        }
        prev = seen.into_iter().collect();
    }
    out
}

/// Triangle index of the pair `(i, j)` with `i < j`.
fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

fn permutations_of(n: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).permutations(n).collect()
}

/// For a vertex permutation, where each edge bit moves to.
fn edge_remap(p: &[usize], n: usize) -> Vec<usize> {
    let mut map = vec![0; n * (n - 1) / 2];
    for j in 1..n {
        for i in 0..j {
            let (a, b) = (p[i].min(p[j]), p[i].max(p[j]));
            map[pair_index(i, j)] = pair_index(a, b);
        }
    }
    map
}

fn canonical_mask(mask: u64, n: usize, pair_maps: &[Vec<usize>]) -> u64 {
    let bits: Vec<usize> = (0..n * (n - 1) / 2).filter(|&i| mask & (1 << i) != 0).collect();
    let mut best = u64::MAX;
    for map in pair_maps {
        let mut relabeled = 0u64;
        for &i in &bits {
            relabeled |= 1 << map[i];
        }
        best = best.min(relabeled);
    }
    best
}

fn graph_from_mask(n: usize, mask: u64) -> SimpleGraph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if mask & (1 << pair_index(i, j)) != 0 {
                edges.push((i, j));
            }
        }
    }
    SimpleGraph::new(n, &edges).expect("mask encodes a simple graph")
}
