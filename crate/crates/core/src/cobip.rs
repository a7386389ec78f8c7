//! Structural semi-transitivity test for orientations of co-bipartite graphs.
//!
//! Each clique must be oriented transitively, which gives it a linear order.
//! Every vertex is then typed against the order of the opposite clique:
//!
//! * `A`: all cross edges leave the vertex and land on a consecutive run;
//! * `B`: all cross edges enter the vertex from a consecutive run;
//! * `C`: edges enter from a prefix holding the source and leave to a suffix
//!   holding the sink (the source group and the sink group).
//!
//! A vertex with no cross edges is reported as `A`. Three families of local
//! conditions are then checked on the typed vertices; see
//! [`check_lemma41`], [`check_lemma42`], [`check_lemma43`].

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, bits, write_graph, CoBipartitePartition, Graph};
use crate::orientation::{enumerate_acyclic_orientations, Orientation};

/// Topological order of a transitively oriented clique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueOrder {
    vertices: Vec<usize>,
}

impl CliqueOrder {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn labels(&self, g: &Graph) -> Vec<String> {
        self.vertices.iter().map(|&v| g.label(v).to_string()).collect()
    }

    pub fn mask(&self) -> u64 {
        self.vertices.iter().fold(0, |m, &v| m | bit(v))
    }

    /// Bit `i` set when the `i`-th vertex of the order is in `set`.
    fn positions(&self, set: u64) -> u64 {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(_, &v)| set & bit(v) != 0)
            .fold(0, |m, (i, _)| m | bit(i))
    }
}

/// Orders a clique by its induced tournament, which must be transitive.
pub fn clique_order(o: &Orientation<'_>, clique: u64) -> Result<CliqueOrder> {
    let g = o.graph();
    let describe = || bits(clique).map(|v| g.label(v)).collect::<Vec<_>>().join(",");
    if !g.is_clique(clique) {
        return Err(Error::NotAClique(describe()));
    }
    // a tournament is transitive iff its in-degrees are pairwise distinct
    let mut by_indeg: Vec<(u32, usize)> = bits(clique).map(|v| ((o.in_mask(v) & clique).count_ones(), v)).collect();
    by_indeg.sort_unstable();
    if by_indeg.iter().enumerate().any(|(i, &(d, _))| d as usize != i) {
        return Err(Error::NotTransitive(describe()));
    }
    Ok(CliqueOrder {
        vertices: by_indeg.into_iter().map(|(_, v)| v).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VertexKind {
    A,
    B,
    C,
    Invalid,
}

/// Type of one vertex relative to the opposite clique order. For `A`/`B`
/// the interval is the run of cross-neighbours; for `C` the source and sink
/// groups and their boundary vertices `xs` (last of the source group) and
/// `xs1` (first of the sink group).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VertexTypeInfo {
    pub vertex: String,
    #[serde(rename = "type")]
    pub kind: VertexKind,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub interval: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub source_group: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sink_group: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xs1: Option<String>,
}

/// Index-level typing used by the checks.
#[derive(Clone, Copy, Debug)]
struct Typed {
    kind: VertexKind,
    /// cross in- and out-neighbours
    inn: u64,
    out: u64,
    xs: usize,
    xs1: usize,
}

fn contiguous(m: u64) -> bool {
    m != 0 && ((m >> m.trailing_zeros()) + 1).is_power_of_two()
}

fn type_vertex(o: &Orientation<'_>, v: usize, opposite: &CliqueOrder) -> Typed {
    let other = opposite.mask();
    let inn = o.in_mask(v) & other;
    let out = o.out_mask(v) & other;
    let (pi, po) = (opposite.positions(inn), opposite.positions(out));
    let last = opposite.vertices.len() - 1;
    let mut t = Typed {
        kind: VertexKind::Invalid,
        inn,
        out,
        xs: usize::MAX,
        xs1: usize::MAX,
    };
    if inn == 0 && (out == 0 || contiguous(po)) {
        t.kind = VertexKind::A;
    } else if out == 0 && contiguous(pi) {
        t.kind = VertexKind::B;
    } else if contiguous(pi) && pi & 1 != 0 && contiguous(po) && po & bit(last) != 0 {
        t.kind = VertexKind::C;
        t.xs = opposite.vertices[63 - pi.leading_zeros() as usize];
        t.xs1 = opposite.vertices[po.trailing_zeros() as usize];
    }
    t
}

fn ordered_labels(g: &Graph, order: &CliqueOrder, set: u64) -> Vec<String> {
    order.vertices.iter().filter(|&&v| set & bit(v) != 0).map(|&v| g.label(v).to_string()).collect()
}

fn describe_type(g: &Graph, v: usize, t: &Typed, opposite: &CliqueOrder) -> VertexTypeInfo {
    let mut info = VertexTypeInfo {
        vertex: g.label(v).to_string(),
        kind: t.kind,
        interval: Vec::new(),
        source_group: Vec::new(),
        sink_group: Vec::new(),
        xs: None,
        xs1: None,
    };
    match t.kind {
        VertexKind::A => info.interval = ordered_labels(g, opposite, t.out),
        VertexKind::B => info.interval = ordered_labels(g, opposite, t.inn),
        VertexKind::C => {
            info.source_group = ordered_labels(g, opposite, t.inn);
            info.sink_group = ordered_labels(g, opposite, t.out);
            info.xs = Some(g.label(t.xs).to_string());
            info.xs1 = Some(g.label(t.xs1).to_string());
        }
        VertexKind::Invalid => {}
    }
    info
}

/// Both clique orders plus the type of every vertex, indexed by vertex.
struct Analysis<'a, 'g> {
    o: &'a Orientation<'g>,
    cliques: [u64; 2],
    orders: [CliqueOrder; 2],
    types: Vec<Typed>,
}

impl<'a, 'g> Analysis<'a, 'g> {
    fn new(o: &'a Orientation<'g>, partition: &CoBipartitePartition) -> Result<Self> {
        let (a, b) = partition.masks(o.graph())?;
        let orders = [clique_order(o, a)?, clique_order(o, b)?];
        Ok(Self::with_orders(o, [a, b], orders))
    }

    fn with_orders(o: &'a Orientation<'g>, cliques: [u64; 2], orders: [CliqueOrder; 2]) -> Self {
        let n = o.graph().len();
        let mut types = vec![
            Typed {
                kind: VertexKind::Invalid,
                inn: 0,
                out: 0,
                xs: usize::MAX,
                xs1: usize::MAX
            };
            n
        ];
        for side in 0..2 {
            for v in bits(cliques[side]) {
                types[v] = type_vertex(o, v, &orders[1 - side]);
            }
        }
        Analysis { o, cliques, orders, types }
    }

    fn label(&self, v: usize) -> String {
        self.o.graph().label(v).to_string()
    }

    fn labels(&self, vs: &[usize]) -> Vec<String> {
        vs.iter().map(|&v| self.label(v)).collect()
    }

    fn cross(&self, v: usize) -> u64 {
        self.types[v].inn | self.types[v].out
    }

    fn lemma41(&self) -> Vec<Finding> {
        let mut found = Vec::new();
        for &clique in &self.cliques {
            for y in bits(clique).filter(|&y| self.types[y].kind == VertexKind::B) {
                for x in bits(self.o.out_mask(y) & clique).filter(|&x| self.types[x].kind == VertexKind::A) {
                    let common = self.cross(x) & self.cross(y);
                    if common != 0 {
                        let shared: Vec<String> = bits(common).map(|v| self.label(v)).collect();
                        found.push(Finding {
                            stage: Stage::Lemma41,
                            vertices: self.labels(&[x, y]),
                            detail: format!(
                                "type A vertex {} and type B vertex {} with {} -> {} share cross-neighbours {}",
                                self.label(x),
                                self.label(y),
                                self.label(y),
                                self.label(x),
                                shared.join(",")
                            ),
                        });
                    }
                }
            }
        }
        found
    }

    fn lemma42(&self) -> Vec<Finding> {
        let o = self.o;
        let mut found = Vec::new();
        for side in 0..2 {
            let (own, other) = (self.cliques[side], self.cliques[1 - side]);
            for x in bits(own) {
                for y in bits(o.out_mask(x) & own) {
                    for xs in bits(other) {
                        for xs1 in bits(o.out_mask(xs) & other) {
                            let quad = [x, y, xs, xs1];
                            if o.has_arc(xs, x) && o.has_arc(y, xs1) && !(o.has_arc(x, xs1) && o.has_arc(xs, y)) {
                                found.push(Finding {
                                    stage: Stage::Lemma42,
                                    vertices: self.labels(&quad),
                                    detail: format!(
                                        "{xs} -> {x} -> {y} -> {xs1} with {xs} -> {xs1} needs {x} -> {xs1} and {xs} -> {y}",
                                        x = self.label(x),
                                        y = self.label(y),
                                        xs = self.label(xs),
                                        xs1 = self.label(xs1)
                                    ),
                                });
                            }
                            if o.has_arc(y, xs) && o.has_arc(x, xs1) && !(o.has_arc(x, xs) && o.has_arc(y, xs1)) {
                                found.push(Finding {
                                    stage: Stage::Lemma42,
                                    vertices: self.labels(&quad),
                                    detail: format!(
                                        "{x} -> {y} -> {xs} -> {xs1} with {x} -> {xs1} needs {x} -> {xs} and {y} -> {xs1}",
                                        x = self.label(x),
                                        y = self.label(y),
                                        xs = self.label(xs),
                                        xs1 = self.label(xs1)
                                    ),
                                });
                            }
                        }
                    }
                }
            }
        }
        found
    }

    fn lemma43(&self) -> Vec<Finding> {
        let o = self.o;
        let mut found = Vec::new();
        for &clique in &self.cliques {
            for x in bits(clique).filter(|&x| self.types[x].kind == VertexKind::C) {
                let Typed { xs, xs1, .. } = self.types[x];
                let both = bit(xs) | bit(xs1);
                for y in bits(clique & !bit(x)) {
                    let ty = self.types[y];
                    let case = if o.has_arc(x, y) {
                        match ty.kind {
                            VertexKind::A if self.cross(y) & both == both => Some("a"),
                            VertexKind::C if ty.out & bit(xs) != 0 => Some("b"),
                            _ => None,
                        }
                    } else {
                        match ty.kind {
                            VertexKind::B if self.cross(y) & both == both => Some("c"),
                            VertexKind::C if ty.inn & bit(xs1) != 0 => Some("d"),
                            _ => None,
                        }
                    };
                    if let Some(case) = case {
                        found.push(Finding {
                            stage: Stage::Lemma43,
                            vertices: self.labels(&[x, y, xs, xs1]),
                            detail: format!(
                                "case ({case}): type C vertex {} with boundary {} | {} against {} (type {:?})",
                                self.label(x),
                                self.label(xs),
                                self.label(xs1),
                                self.label(y),
                                ty.kind
                            ),
                        });
                    }
                }
            }
        }
        found
    }
}

/// Types `v` against the order of the clique it does not belong to.
pub fn classify_vertex(o: &Orientation<'_>, partition: &CoBipartitePartition, v: &str) -> Result<VertexTypeInfo> {
    let g = o.graph();
    let i = g.require(v)?;
    let an = Analysis::new(o, partition)?;
    let side = if an.cliques[0] & bit(i) != 0 { 0 } else { 1 };
    Ok(describe_type(g, i, &an.types[i], &an.orders[1 - side]))
}

/// Types of all vertices, clique A first, each clique in its own order.
pub fn classify_all(o: &Orientation<'_>, partition: &CoBipartitePartition) -> Result<Vec<VertexTypeInfo>> {
    let an = Analysis::new(o, partition)?;
    let mut out = Vec::new();
    for side in 0..2 {
        for &v in an.orders[side].vertices() {
            out.push(describe_type(o.graph(), v, &an.types[v], &an.orders[1 - side]));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Stage {
    #[serde(rename = "clique-transitivity")]
    CliqueTransitivity,
    #[serde(rename = "typing")]
    Typing,
    #[serde(rename = "lemma41")]
    Lemma41,
    #[serde(rename = "lemma42")]
    Lemma42,
    #[serde(rename = "lemma43")]
    Lemma43,
}

impl Stage {
    pub fn as_str(&self) -> &'static str {
        match self {
            Stage::CliqueTransitivity => "clique-transitivity",
            Stage::Typing => "typing",
            Stage::Lemma41 => "lemma41",
            Stage::Lemma42 => "lemma42",
            Stage::Lemma43 => "lemma43",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub stage: Stage,
    pub vertices: Vec<String>,
    pub detail: String,
}

/// x type A, y type B in one clique, `y -> x`, common cross-neighbour.
pub fn check_lemma41(o: &Orientation<'_>, partition: &CoBipartitePartition) -> Result<Vec<Finding>> {
    Ok(Analysis::new(o, partition)?.lemma41())
}

/// For `x -> y` in one clique and `xs -> xs1` in the other:
/// `xs -> x`, `y -> xs1` force `x -> xs1`, `xs -> y`; and
/// `y -> xs`, `x -> xs1` force `x -> xs`, `y -> xs1`.
pub fn check_lemma42(o: &Orientation<'_>, partition: &CoBipartitePartition) -> Result<Vec<Finding>> {
    Ok(Analysis::new(o, partition)?.lemma42())
}

/// For every type C vertex `x` with boundary `xs | xs1` and every `y` in its clique:
/// (a) `x -> y`, y type A adjacent to both `xs` and `xs1`;
/// (b) `x -> y`, y type C with `xs` in its sink group;
/// (c) `y -> x`, y type B adjacent to both;
/// (d) `y -> x`, y type C with `xs1` in its source group.
pub fn check_lemma43(o: &Orientation<'_>, partition: &CoBipartitePartition) -> Result<Vec<Finding>> {
    Ok(Analysis::new(o, partition)?.lemma43())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CobipReport {
    pub semi_transitive: bool,
    pub failed_stage: Option<Stage>,
    pub details: Vec<Finding>,
}

impl CobipReport {
    fn fail(stage: Stage, details: Vec<Finding>) -> Self {
        CobipReport {
            semi_transitive: false,
            failed_stage: Some(stage),
            details,
        }
    }
}

/// Runs the stages in order and stops at the first that fails.
pub fn is_semi_transitive_cobip(o: &Orientation<'_>, partition: &CoBipartitePartition) -> Result<CobipReport> {
    let g = o.graph();
    let (a, b) = partition.masks(g)?;
    let mut orders = Vec::with_capacity(2);
    for clique in [a, b] {
        match clique_order(o, clique) {
            Ok(order) => orders.push(order),
            Err(Error::NotTransitive(which)) => {
                return Ok(CobipReport::fail(
                    Stage::CliqueTransitivity,
                    vec![Finding {
                        stage: Stage::CliqueTransitivity,
                        vertices: which.split(',').map(String::from).collect(),
                        detail: "induced tournament is not transitive".into(),
                    }],
                ));
            }
            Err(e) => return Err(e),
        }
    }
    let orders: [CliqueOrder; 2] = orders.try_into().expect("two cliques");
    let an = Analysis::with_orders(o, [a, b], orders);

    let mut invalid: Vec<String> = (0..g.len())
        .filter(|&v| an.types[v].kind == VertexKind::Invalid)
        .map(|v| an.label(v))
        .collect();
    if !invalid.is_empty() {
        invalid.sort();
        let details = invalid
            .into_iter()
            .map(|v| Finding {
                stage: Stage::Typing,
                detail: format!("{v} fits none of the types A, B, C"),
                vertices: vec![v],
            })
            .collect();
        return Ok(CobipReport::fail(Stage::Typing, details));
    }
    for stage in [Stage::Lemma41, Stage::Lemma42, Stage::Lemma43] {
        let found = match stage {
            Stage::Lemma41 => an.lemma41(),
            Stage::Lemma42 => an.lemma42(),
            _ => an.lemma43(),
        };
        if !found.is_empty() {
            return Ok(CobipReport::fail(stage, found));
        }
    }
    Ok(CobipReport {
        semi_transitive: true,
        failed_stage: None,
        details: Vec::new(),
    })
}

/// An orientation on which the structural test and the generic
/// shortcut-based test disagree.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Counterexample {
    pub graph: String,
    pub partition: CoBipartitePartition,
    pub arcs: Vec<(String, String)>,
    pub generic: bool,
    pub report: CobipReport,
}

#[derive(Clone, Debug, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepSummary {
    pub graphs: usize,
    pub orientations: usize,
    pub sampled: bool,
    pub semi_transitive_generic: usize,
    pub semi_transitive_cobip: usize,
    /// How many orientations failed at each stage, in stage order.
    pub failed_by_stage: [usize; 5],
    pub disagreements: Vec<Counterexample>,
}

impl SweepSummary {
    fn record(&mut self, o: &Orientation<'_>, partition: &CoBipartitePartition) -> Result<()> {
        let generic = o.is_semi_transitive();
        let report = is_semi_transitive_cobip(o, partition)?;
        self.orientations += 1;
        self.semi_transitive_generic += generic as usize;
        self.semi_transitive_cobip += report.semi_transitive as usize;
        if let Some(stage) = report.failed_stage {
            self.failed_by_stage[stage as usize] += 1;
        }
        if generic != report.semi_transitive {
            self.disagreements.push(Counterexample {
                graph: write_graph(o.graph(), Some(partition)),
                partition: partition.clone(),
                arcs: o.labeled_arcs(),
                generic,
                report,
            });
        }
        Ok(())
    }

    fn merge(mut self, other: SweepSummary) -> SweepSummary {
        self.graphs += other.graphs;
        self.orientations += other.orientations;
        self.sampled |= other.sampled;
        self.semi_transitive_generic += other.semi_transitive_generic;
        self.semi_transitive_cobip += other.semi_transitive_cobip;
        for (a, b) in self.failed_by_stage.iter_mut().zip(other.failed_by_stage) {
            *a += b;
        }
        self.disagreements.extend(other.disagreements);
        self
    }
}

/// Compares both tests on every acyclic orientation of `g`. When there are
/// more than `sample_bound` of them, `sample_bound` orientations induced by
/// uniformly random linear orders are checked instead. Work is split across
/// the current rayon pool; the result does not depend on its size.
pub fn sweep_graph<R: Rng + ?Sized>(
    g: &Graph,
    partition: &CoBipartitePartition,
    sample_bound: usize,
    rng: &mut R,
) -> Result<SweepSummary> {
    partition.masks(g)?;
    let mut summary = SweepSummary {
        graphs: 1,
        ..Default::default()
    };
    let mut all = enumerate_acyclic_orientations(g, crate::orientation::DEFAULT_VERTEX_CAP)?;
    let mut orders = Vec::new();
    while let Some(order) = all.next_order() {
        if orders.len() == sample_bound {
            summary.sampled = true;
            break;
        }
        orders.push(order.to_vec());
    }
    if summary.sampled {
        orders.clear();
        let mut perm: Vec<usize> = (0..g.len()).collect();
        for _ in 0..sample_bound {
            perm.shuffle(rng);
            orders.push(perm.clone());
        }
    }
    let parts: Vec<SweepSummary> = orders
        .par_chunks(1024)
        .map(|chunk| -> Result<SweepSummary> {
            let mut s = SweepSummary::default();
            for order in chunk {
                s.record(&Orientation::from_order(g, order)?, partition)?;
            }
            Ok(s)
        })
        .collect::<Result<_>>()?;
    Ok(parts.into_iter().fold(summary, SweepSummary::merge))
}

/// Co-bipartite graph on cliques `x1..xm`, `y1..yn` whose cross edges are
/// given by the bits of `pattern` (bit `i*n + j` joins `x(i+1)` and `y(j+1)`).
pub fn cross_pattern_graph(m: usize, n: usize, pattern: u64) -> Result<(Graph, CoBipartitePartition)> {
    if m == 0 || n == 0 || m * n > 63 {
        return Err(Error::InvalidParam(format!("unsupported clique sizes {m}+{n}")));
    }
    let xs: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
    let ys: Vec<String> = (1..=n).map(|j| format!("y{j}")).collect();
    let labels: Vec<String> = xs.iter().chain(&ys).cloned().collect();
    let mut edges = Vec::new();
    for i in 0..m {
        edges.extend((i + 1..m).map(|j| (i, j)));
    }
    for i in 0..n {
        edges.extend((i + 1..n).map(|j| (m + i, m + j)));
    }
    for i in 0..m {
        for j in 0..n {
            if pattern >> (i * n + j) & 1 == 1 {
                edges.push((i, m + j));
            }
        }
    }
    Ok((Graph::from_index_edges(&labels, &edges)?, CoBipartitePartition::new(&xs, &ys)))
}

/// Exhaustive comparison over every cross-edge pattern between cliques of
/// sizes `m` and `n` and every acyclic orientation of each graph. Patterns
/// are processed in parallel; the merged result is in pattern order.
pub fn sweep_cross_patterns(m: usize, n: usize) -> Result<SweepSummary> {
    if m * n > 16 || m + n > crate::orientation::DEFAULT_VERTEX_CAP {
        return Err(Error::InvalidParam(format!("clique sizes {m}+{n} are too large for an exhaustive sweep")));
    }
    let parts: Vec<SweepSummary> = (0..1u64 << (m * n))
        .into_par_iter()
        .map(|pattern| -> Result<SweepSummary> {
            let (g, part) = cross_pattern_graph(m, n, pattern)?;
            let mut s = SweepSummary {
                graphs: 1,
                ..Default::default()
            };
            for o in enumerate_acyclic_orientations(&g, crate::orientation::DEFAULT_VERTEX_CAP)? {
                s.record(&o, &part)?;
            }
            Ok(s)
        })
        .collect::<Result<_>>()?;
    Ok(parts.into_iter().fold(SweepSummary::default(), SweepSummary::merge))
}
