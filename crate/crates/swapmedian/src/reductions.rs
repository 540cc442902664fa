//! Reductions between maximum independent set and the swap median problem.
//!
//! Every vertex of a twice-subdivided graph becomes an arc on a circle, drawn
//! twice: red circles group the arcs around each original vertex, blue circles
//! group them along each original edge. Reading the circles off as permutation
//! cycles yields a triple (identity, red, blue) whose doubly-breaking swaps
//! correspond exactly to the subdivided graph's vertices, with chord crossings
//! matching its edges. Deciding whether the triple's median lower bound is
//! attainable then answers an independence question on the subdivided graph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::geodesy::{lb_swap_budget, pairwise_distances, GeodesyError, MedianInstance};
use crate::graphs::{exact_mis, is_isomorphic, subd2, GraphError, SimpleGraph, VertexLabel};
use crate::perm::{PermError, Permutation, SwapOp};
use crate::solvers::{
    build_2ci_graph, lb_achievability_median, possible_swaps, verify_median_closest_bridge,
    SolverConfig, SolverError,
};

/// Errors for the reduction constructions.
#[derive(Debug, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Geodesy(#[from] GeodesyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("graph carries no subdivision labels")]
    MissingLabels,
    #[error("not a labeled 2-subdivision: {0}")]
    MalformedSubdivision(String),
    #[error("red and blue models disagree: {0}")]
    LabelMismatch(String),
    #[error("cycle trace found {traced} cycles but the quotient has {algebraic}")]
    TraceMismatch { traced: usize, algebraic: usize },
    #[error("independent-set target {target} disagrees with the swap budget {budget}")]
    TargetMismatch { target: usize, budget: usize },
    #[error(
        "equalization needs d23 ≤ min(d12, d13), got d12 = {d12}, d13 = {d13}, d23 = {d23}"
    )]
    EqualizePrecondition { d12: usize, d13: usize, d23: usize },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

/// Which family of circles a model describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ModelColor {
    /// One circle per original vertex.
    Red,
    /// One circle per original vertex plus one per original edge.
    Blue,
}

/// Whether a label marks the start or the end of a vertex's arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ArcEnd {
    Start,
    Finish,
}

/// One endpoint of one arc: which subdivided-graph vertex, and which end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EndpointLabel {
    pub vertex: VertexLabel,
    pub end: ArcEnd,
}

impl EndpointLabel {
    fn start(vertex: VertexLabel) -> Self {
        EndpointLabel {
            vertex,
            end: ArcEnd::Start,
        }
    }

    fn finish(vertex: VertexLabel) -> Self {
        EndpointLabel {
            vertex,
            end: ArcEnd::Finish,
        }
    }
}

impl fmt::Display for EndpointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.end {
            ArcEnd::Start => "S",
            ArcEnd::Finish => "E",
        };
        match self.vertex {
            VertexLabel::Original(v) => write!(f, "{tag}{v}"),
            VertexLabel::Subdivision { near, far } => write!(f, "{tag}({near},{far})"),
        }
    }
}

/// A family of circles whose points are arc endpoints, plus the arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircularModel {
    pub color: ModelColor,
    /// Each circle lists its endpoint labels in cyclic order.
    pub circles: Vec<Vec<EndpointLabel>>,
    /// One arc per subdivided-graph vertex: (start endpoint, finish endpoint).
    pub arcs: Vec<(EndpointLabel, EndpointLabel)>,
}

impl CircularModel {
    fn label_set(&self) -> BTreeSet<EndpointLabel> {
        self.circles.iter().flatten().copied().collect()
    }
}

/// A reduction instance: the permutation triple built from a graph, together
/// with everything needed to interpret answers back on the graph.
#[derive(Debug, Clone)]
pub struct ReductionInstance {
    pub source_graph: SimpleGraph,
    pub subdivided: SimpleGraph,
    pub red: CircularModel,
    pub blue: CircularModel,
    pub triple: MedianInstance,
    /// (3m + k)/2: the independent-set size needed for the median lower bound
    /// to be attainable. `None` would mean odd 3m + k, which no genuine
    /// instance produces.
    pub mis_target: Option<usize>,
    pub label_to_element: BTreeMap<EndpointLabel, u32>,
}

/// Builds the red and blue circular models of a labeled 2-subdivision.
///
/// Red: around each original vertex `v` with subdivision neighbors
/// `x(v,u₁), …, x(v,u_k)` (u ascending), the circle reads
/// `Sv, S(v,u₁), …, S(v,u_k), Ev, E(v,u_k), …, E(v,u₁)` — so `v`'s own arc
/// crosses each neighbor arc and the neighbor arcs nest.
///
/// Blue: each original vertex contributes the two-point circle `Sv, Ev`; each
/// original edge `{u,v}` (u < v) contributes
/// `S(u,v), S(v,u), E(u,v), E(v,u)`, making the two subdivision arcs cross.
pub fn circular_models(
    subdivided: &SimpleGraph,
) -> Result<(CircularModel, CircularModel), ReductionError> {
    let labels = subdivided.labels().ok_or(ReductionError::MissingLabels)?;
    let structure = SubdivisionStructure::read(subdivided, labels)?;

    let mut arcs = Vec::new();
    for v in 0..subdivided.vertex_count() {
        let vl = labels[v];
        arcs.push((EndpointLabel::start(vl), EndpointLabel::finish(vl)));
    }

    let mut red_circles = Vec::new();
    for v in 0..structure.originals {
        let vl = VertexLabel::Original(v);
        let mut circle = vec![EndpointLabel::start(vl)];
        for &far in &structure.neighbors[v] {
            circle.push(EndpointLabel::start(VertexLabel::Subdivision { near: v, far }));
        }
        circle.push(EndpointLabel::finish(vl));
        for &far in structure.neighbors[v].iter().rev() {
            circle.push(EndpointLabel::finish(VertexLabel::Subdivision { near: v, far }));
        }
        red_circles.push(circle);
    }

    let mut blue_circles = Vec::new();
    for v in 0..structure.originals {
        let vl = VertexLabel::Original(v);
        blue_circles.push(vec![EndpointLabel::start(vl), EndpointLabel::finish(vl)]);
    }
    for &(u, v) in &structure.edges {
        let near_u = VertexLabel::Subdivision { near: u, far: v };
        let near_v = VertexLabel::Subdivision { near: v, far: u };
        blue_circles.push(vec![
            EndpointLabel::start(near_u),
            EndpointLabel::start(near_v),
            EndpointLabel::finish(near_u),
            EndpointLabel::finish(near_v),
        ]);
    }

    Ok((
        CircularModel {
            color: ModelColor::Red,
            circles: red_circles,
            arcs: arcs.clone(),
        },
        CircularModel {
            color: ModelColor::Blue,
            circles: blue_circles,
            arcs,
        },
    ))
}

/// The original graph recovered from subdivision labels, after validation.
struct SubdivisionStructure {
    originals: usize,
    edges: Vec<(usize, usize)>,
    /// For each original vertex, its neighbors in the original graph, ascending.
    neighbors: Vec<Vec<usize>>,
}

impl SubdivisionStructure {
    fn read(g: &SimpleGraph, labels: &[VertexLabel]) -> Result<Self, ReductionError> {
        let bad = |msg: String| Err(ReductionError::MalformedSubdivision(msg));
        let mut originals = 0;
        let mut sub_ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (id, &label) in labels.iter().enumerate() {
            match label {
                VertexLabel::Original(v) => {
                    if v != id {
                        return bad(format!("original vertex {v} labeled at index {id}"));
                    }
                    if id != originals {
                        return bad("original vertices must precede subdivisions".into());
                    }
                    originals += 1;
                }
                VertexLabel::Subdivision { near, far } => {
                    if near == far {
                        return bad(format!("subdivision label x({near},{far}) is degenerate"));
                    }
                    if sub_ids.insert((near, far), id).is_some() {
                        return bad(format!("duplicate subdivision label x({near},{far})"));
                    }
                }
            }
        }
        let mut edges = Vec::new();
        let mut neighbors = vec![Vec::new(); originals];
        for (&(near, far), &id) in &sub_ids {
            if near >= originals || far >= originals {
                return bad(format!("x({near},{far}) refers to a missing original vertex"));
            }
            let &mirror = sub_ids
                .get(&(far, near))
                .ok_or_else(|| ReductionError::MalformedSubdivision(format!(
                    "x({near},{far}) has no mirror x({far},{near})"
                )))?;
            if !g.has_edge(near, id) || !g.has_edge(id, mirror) {
                return bad(format!("x({near},{far}) is not wired as a subdivision"));
            }
            if g.degree(id) != 2 {
                return bad(format!("x({near},{far}) must have degree 2"));
            }
            neighbors[near].push(far);
            if near < far {
                edges.push((near, far));
            }
        }
        for v in 0..originals {
            if g.degree(v) != neighbors[v].len() {
                return bad(format!("original vertex {v} has extra edges"));
            }
        }
        if g.edge_count() != 3 * edges.len() {
            return bad("edge count is not three per original edge".into());
        }
        Ok(SubdivisionStructure {
            originals,
            edges,
            neighbors,
        })
    }
}

/// Numbers the red circles' endpoints 1..N in reading order and converts both
/// models into permutations: the triple is (identity, red cycles, blue cycles).
pub fn models_to_permutations(
    red: &CircularModel,
    blue: &CircularModel,
) -> Result<ReductionInstance, ReductionError> {
    let red_labels = red.label_set();
    if red_labels.len() != red.circles.iter().map(Vec::len).sum::<usize>() {
        return Err(ReductionError::LabelMismatch(
            "red model repeats a label".into(),
        ));
    }
    let blue_labels = blue.label_set();
    if blue_labels.len() != blue.circles.iter().map(Vec::len).sum::<usize>() {
        return Err(ReductionError::LabelMismatch(
            "blue model repeats a label".into(),
        ));
    }
    if red_labels != blue_labels {
        return Err(ReductionError::LabelMismatch(format!(
            "label sets differ ({} red vs {} blue labels)",
            red_labels.len(),
            blue_labels.len()
        )));
    }

    let mut label_to_element = BTreeMap::new();
    let mut next = 1u32;
    for circle in &red.circles {
        for &label in circle {
            label_to_element.insert(label, next);
            next += 1;
        }
    }
    let n_elements = (next - 1) as usize;

    let circle_cycles = |model: &CircularModel| -> Vec<Vec<u32>> {
        model
            .circles
            .iter()
            .map(|circle| circle.iter().map(|l| label_to_element[l]).collect())
            .collect()
    };
    let p2 = Permutation::from_cycles(n_elements, &circle_cycles(red))?;
    let p3 = Permutation::from_cycles(n_elements, &circle_cycles(blue))?;
    let p1 = Permutation::identity(n_elements)?;
    let triple = MedianInstance::new(p1, p2, p3)?;

    // Recover the source graph from the labels.
    let mut originals = 0;
    let mut edges = BTreeSet::new();
    for (label, _) in &label_to_element {
        match label.vertex {
            VertexLabel::Original(v) => originals = originals.max(v + 1),
            VertexLabel::Subdivision { near, far } => {
                edges.insert((near.min(far), near.max(far)));
            }
        }
    }
    let edge_list: Vec<_> = edges.into_iter().collect();
    let source_graph = SimpleGraph::new(originals, &edge_list)?;
    let subdivided = subd2(&source_graph);

    let mut instance = ReductionInstance {
        source_graph,
        subdivided,
        red: red.clone(),
        blue: blue.clone(),
        triple,
        mis_target: None,
        label_to_element,
    };
    instance.mis_target = alpha_target(&instance)?;
    Ok(instance)
}

/// Convenience: graph → subdivision → circular models → permutation triple.
pub fn reduction_instance(g: &SimpleGraph) -> Result<ReductionInstance, ReductionError> {
    let subdivided = subd2(g);
    let (red, blue) = circular_models(&subdivided)?;
    models_to_permutations(&red, &blue)
}

/// Number of cycles between the red and blue permutations, computed two ways:
/// tracing the circles (blue successor of each red predecessor) and counting
/// the cycles of π₃ ∘ π₂⁻¹ algebraically. Errors if they disagree.
pub fn cycles_between(inst: &ReductionInstance) -> Result<usize, ReductionError> {
    let mut red_pred = BTreeMap::new();
    for circle in &inst.red.circles {
        for (i, &label) in circle.iter().enumerate() {
            let prev = circle[(i + circle.len() - 1) % circle.len()];
            red_pred.insert(inst.label_to_element[&label], inst.label_to_element[&prev]);
        }
    }
    let mut blue_succ = BTreeMap::new();
    for circle in &inst.blue.circles {
        for (i, &label) in circle.iter().enumerate() {
            let nxt = circle[(i + 1) % circle.len()];
            blue_succ.insert(inst.label_to_element[&label], inst.label_to_element[&nxt]);
        }
    }
    let n = inst.triple.size() as u32;
    let mut seen = vec![false; n as usize + 1];
    let mut traced = 0;
    for start in 1..=n {
        if seen[start as usize] {
            continue;
        }
        traced += 1;
        let mut u = start;
        while !seen[u as usize] {
            seen[u as usize] = true;
            u = blue_succ[&red_pred[&u]];
        }
    }
    let algebraic = inst
        .triple
        .p3()
        .compose(&inst.triple.p2().inverse())?
        .cycle_count();
    if traced != algebraic {
        return Err(ReductionError::TraceMismatch { traced, algebraic });
    }
    Ok(traced)
}

/// The independent-set size needed for the median lower bound: (3m + k)/2,
/// cross-checked against the triple's swap budget. `None` on odd 3m + k.
pub fn alpha_target(inst: &ReductionInstance) -> Result<Option<usize>, ReductionError> {
    let k = cycles_between(inst)?;
    let m = inst.source_graph.edge_count();
    let total = 3 * m + k;
    if total % 2 != 0 {
        return Ok(None);
    }
    let target = total / 2;
    match lb_swap_budget(&inst.triple) {
        Some(budget) if budget == target => Ok(Some(target)),
        Some(budget) => Err(ReductionError::TargetMismatch { target, budget }),
        None => Err(ReductionError::Internal(
            "even target but odd swap budget".into(),
        )),
    }
}

/// A triple padded so all three pairwise distances are equal, with enough
/// provenance to state properties about the original block of values.
#[derive(Debug, Clone)]
pub struct EqualizedInstance {
    pub triple: MedianInstance,
    /// Size of the unpadded triple; values ≤ this belong to the original.
    pub original_size: usize,
    /// The common pairwise distance d12 + d13 − d23.
    pub common_distance: usize,
}

/// Pads a triple with two blocks (identity-vs-cycle patterns) so all pairwise
/// distances become d12 + d13 − d23. Requires d23 ≤ min(d12, d13).
pub fn equalize_distances(t: &MedianInstance) -> Result<EqualizedInstance, ReductionError> {
    let d = pairwise_distances(t);
    if d.d23 > d.d12 || d.d23 > d.d13 {
        return Err(ReductionError::EqualizePrecondition {
            d12: d.d12,
            d13: d.d13,
            d23: d.d23,
        });
    }
    let b1 = d.d12 - d.d23 + 1;
    let b2 = d.d13 - d.d23 + 1;
    let idle = |len: usize| Permutation::identity(len).expect("len >= 1");
    let turn = |len: usize| {
        let cycle: Vec<u32> = (1..=len as u32).collect();
        Permutation::from_cycles(len, &[cycle]).expect("len >= 1")
    };
    // First block: move π₃ away by b1 − 1; second block: move π₂ away by b2 − 1.
    let p1 = t.p1().union(&idle(b1)).union(&turn(b2));
    let p2 = t.p2().union(&idle(b1)).union(&idle(b2));
    let p3 = t.p3().union(&turn(b1)).union(&turn(b2));
    let triple = MedianInstance::new(p1, p2, p3)?;
    let common = d.d12 + d.d13 - d.d23;
    let got = pairwise_distances(&triple);
    if !(got.equalized() && got.d12 == common) {
        return Err(ReductionError::Internal(format!(
            "equalization produced distances {}, {}, {} instead of {common}",
            got.d12, got.d13, got.d23
        )));
    }
    Ok(EqualizedInstance {
        triple,
        original_size: t.size(),
        common_distance: common,
    })
}

/// Whether a swap sequence touches only the original (unpadded) values.
pub fn check_first_part_property(eq: &EqualizedInstance, sequence: &[SwapOp]) -> bool {
    sequence
        .iter()
        .all(|s| (s.b() as usize) <= eq.original_size)
}

/// Outcome of one pipeline check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckOutcome {
    Pass,
    Fail,
    Skipped,
}

/// One named check with its outcome and a human-readable detail line.
#[derive(Debug, Clone, Serialize)]
pub struct PipelineCheck {
    pub name: String,
    pub outcome: CheckOutcome,
    pub detail: String,
}

impl PipelineCheck {
    fn pass(name: &str, detail: String) -> Self {
        PipelineCheck {
            name: name.into(),
            outcome: CheckOutcome::Pass,
            detail,
        }
    }

    fn fail(name: &str, detail: String) -> Self {
        PipelineCheck {
            name: name.into(),
            outcome: CheckOutcome::Fail,
            detail,
        }
    }

    fn skipped(name: &str, detail: String) -> Self {
        PipelineCheck {
            name: name.into(),
            outcome: CheckOutcome::Skipped,
            detail,
        }
    }

    fn verdict(name: &str, ok: bool, detail: String) -> Self {
        if ok {
            Self::pass(name, detail)
        } else {
            Self::fail(name, detail)
        }
    }
}

/// Size guards for the pipeline's optional exact computations.
#[derive(Debug, Clone, Copy)]
pub struct PipelineConfig {
    pub solver: SolverConfig,
    /// Largest graph for the exact independence number.
    pub mis_limit: usize,
    /// Largest graph for the generic isomorphism test.
    pub iso_limit: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            solver: SolverConfig::default(),
            mis_limit: 64,
            iso_limit: 16,
        }
    }
}

/// Full report of the reduction pipeline on one graph.
#[derive(Debug, Clone, Serialize)]
pub struct PipelineReport {
    pub source_vertices: usize,
    pub source_edges: usize,
    pub permutation_size: usize,
    pub cycles_between: usize,
    pub mis_target: Option<usize>,
    pub alpha_subdivided: Option<usize>,
    pub lb_achievable: bool,
    pub checks: Vec<PipelineCheck>,
}

impl PipelineReport {
    /// True when no check failed (skipped checks are fine).
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome != CheckOutcome::Fail)
    }
}

/// Runs the whole reduction on a graph and checks every property the
/// construction promises, reporting one verdict per check.
pub fn full_hardness_pipeline(
    g: &SimpleGraph,
    cfg: &PipelineConfig,
) -> Result<PipelineReport, ReductionError> {
    let inst = reduction_instance(g)?;
    let mut checks = Vec::new();

    checks.push(PipelineCheck::verdict(
        "source-round-trip",
        inst.source_graph == *g,
        "source graph recovered from the circular models".into(),
    ));

    let k = cycles_between(&inst)?;
    checks.push(PipelineCheck::pass(
        "cycle-trace-consistency",
        format!("circle trace and quotient both count {k} cycles"),
    ));

    let d = pairwise_distances(&inst.triple);
    let n = inst.source_graph.vertex_count();
    let m = inst.source_graph.edge_count();
    let size = inst.triple.size();
    checks.push(PipelineCheck::verdict(
        "distance-profile",
        d.d12 == size - n && d.d13 == size - (n + m) && d.d23 == size - k,
        format!("distances ({}, {}, {})", d.d12, d.d13, d.d23),
    ));

    // The possible swaps must be exactly the subdivided graph's vertex arcs,
    // and chord crossings must reproduce its edges.
    checks.push(crossing_graph_check(&inst));
    let crossing = build_2ci_graph(&inst.triple);
    if crossing.vertex_count() <= cfg.iso_limit {
        let iso = is_isomorphic(&crossing, &inst.subdivided, cfg.iso_limit)?;
        checks.push(PipelineCheck::verdict(
            "crossing-graph-isomorphic",
            iso,
            "generic isomorphism test against the subdivision".into(),
        ));
    } else {
        checks.push(PipelineCheck::skipped(
            "crossing-graph-isomorphic",
            format!(
                "{} vertices exceed the isomorphism guard {}",
                crossing.vertex_count(),
                cfg.iso_limit
            ),
        ));
    }

    let achievability = lb_achievability_median(&inst.triple, &cfg.solver)?;
    let lb_achievable = achievability.is_achievable();
    let alpha_subdivided = if inst.subdivided.vertex_count() <= cfg.mis_limit {
        Some(exact_mis(&inst.subdivided, cfg.mis_limit)?.size)
    } else {
        None
    };
    match (alpha_subdivided, inst.mis_target) {
        (Some(alpha), Some(target)) => {
            checks.push(PipelineCheck::verdict(
                "lb-iff-independent-set",
                lb_achievable == (alpha >= target),
                format!("achievable = {lb_achievable}, α = {alpha}, target = {target}"),
            ));
        }
        _ => {
            checks.push(PipelineCheck::skipped(
                "lb-iff-independent-set",
                "independence number or target unavailable".into(),
            ));
        }
    }

    match equalize_distances(&inst.triple) {
        Ok(eq) => {
            checks.push(PipelineCheck::pass(
                "equalize-distances",
                format!(
                    "padded {} → {} values, common distance {}",
                    eq.original_size,
                    eq.triple.size(),
                    eq.common_distance
                ),
            ));
            if eq.triple.size() <= cfg.solver.branch_limit {
                let bridge = verify_median_closest_bridge(&eq.triple, &cfg.solver)?;
                checks.push(PipelineCheck::verdict(
                    "median-closest-bridge",
                    bridge.holds(),
                    format!(
                        "sequence {}, radius {} (c = {})",
                        bridge.sequence_exists, bridge.closest_radius, bridge.common_distance
                    ),
                ));
                checks.push(sum_bound_check(&eq.triple, bridge.closest_radius));
                match lb_achievability_median(&eq.triple, &cfg.solver)? {
                    crate::solvers::LbAchievability::Achievable(seq) => {
                        checks.push(PipelineCheck::verdict(
                            "first-part-property",
                            check_first_part_property(&eq, &seq),
                            format!("witness of {} swaps", seq.len()),
                        ));
                    }
                    _ => {
                        checks.push(PipelineCheck::skipped(
                            "first-part-property",
                            "no doubly-breaking sequence on the equalized triple".into(),
                        ));
                    }
                }
            } else {
                checks.push(PipelineCheck::skipped(
                    "median-closest-bridge",
                    format!(
                        "equalized size {} exceeds solver guard {}",
                        eq.triple.size(),
                        cfg.solver.branch_limit
                    ),
                ));
            }
        }
        Err(ReductionError::EqualizePrecondition { d12, d13, d23 }) => {
            checks.push(PipelineCheck::skipped(
                "equalize-distances",
                format!("precondition unmet: d12 = {d12}, d13 = {d13}, d23 = {d23}"),
            ));
        }
        Err(e) => return Err(e),
    }

    Ok(PipelineReport {
        source_vertices: n,
        source_edges: m,
        permutation_size: size,
        cycles_between: k,
        mis_target: inst.mis_target,
        alpha_subdivided,
        lb_achievable,
        checks,
    })
}

/// The explicit bijection behind the crossing-graph/subdivision match: every
/// subdivided-graph vertex's arc endpoints form a possible swap, and two arcs
/// cross exactly when the vertices are adjacent.
fn crossing_graph_check(inst: &ReductionInstance) -> PipelineCheck {
    let name = "crossing-graph-bijection";
    let swaps = possible_swaps(&inst.triple);
    let crossing = build_2ci_graph(&inst.triple);
    let mut expected: Vec<SwapOp> = Vec::new();
    for &(start, finish) in &inst.red.arcs {
        let (a, b) = (
            inst.label_to_element[&start],
            inst.label_to_element[&finish],
        );
        expected.push(SwapOp::new(a, b).expect("arc endpoints differ"));
    }
    let mut got: Vec<SwapOp> = swaps.iter().map(|p| p.swap).collect();
    let mut want = expected.clone();
    got.sort_unstable();
    want.sort_unstable();
    if got != want {
        return PipelineCheck::fail(
            name,
            format!("{} possible swaps, expected {} arcs", got.len(), want.len()),
        );
    }
    // Arc order follows vertex order, so vertex i's swap is expected[i]; find
    // its index among the sorted possible swaps to compare adjacency.
    let index_of = |s: SwapOp| got.binary_search(&s).expect("present");
    for u in 0..inst.subdivided.vertex_count() {
        for v in (u + 1)..inst.subdivided.vertex_count() {
            let crossing_edge = crossing.has_edge(index_of(expected[u]), index_of(expected[v]));
            if crossing_edge != inst.subdivided.has_edge(u, v) {
                return PipelineCheck::fail(
                    name,
                    format!("adjacency of vertices {u} and {v} differs from chord crossing"),
                );
            }
        }
    }
    PipelineCheck::pass(
        name,
        format!("{} arcs match the possible swaps, adjacency preserved", want.len()),
    )
}

/// The finite arithmetic of the approximation chain: the sum of pairwise
/// distances never exceeds six times the closest radius.
fn sum_bound_check(t: &MedianInstance, radius: usize) -> PipelineCheck {
    let d = pairwise_distances(t);
    PipelineCheck::verdict(
        "sum-radius-bound",
        d.sum() <= 6 * radius,
        format!("pairwise sum {} vs 6 × radius {}", d.sum(), radius),
    )
}
