//! Small simple graphs over string labels with bitset adjacency, plus the
//! bipartite families whose complements are studied here.
//!
//! Every graph holds at most [`MAX_VERTICES`] vertices so that a vertex set
//! fits in one `u64`. Vertex order is fixed at construction and never changes.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// Iterate over the set bits of a mask in increasing order.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

#[inline]
pub(crate) fn bit(i: usize) -> u64 {
    1u64 << i
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, Debug)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on the given labels.
    pub fn empty<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        if labels.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(labels.len(), MAX_VERTICES));
        }
        let mut seen = BTreeSet::new();
        let mut owned = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::InvalidParam(format!("bad vertex label `{l}`")));
            }
            if !seen.insert(l) {
                return Err(Error::DuplicateLabel(l.to_string()));
            }
            owned.push(l.to_string());
        }
        Ok(Graph {
            adj: vec![0; owned.len()],
            labels: owned,
        })
    }

    pub fn from_edges<S: AsRef<str>, T: AsRef<str>>(labels: &[S], edges: &[(T, T)]) -> Result<Self> {
        let mut g = Graph::empty(labels)?;
        for (a, b) in edges {
            let i = g.require(a.as_ref())?;
            let j = g.require(b.as_ref())?;
            g.connect(i, j)?;
        }
        Ok(g)
    }

    pub fn from_index_edges<S: AsRef<str>>(labels: &[S], edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(labels)?;
        for &(i, j) in edges {
            if i >= g.len() || j >= g.len() {
                return Err(Error::InvalidParam(format!("edge ({i}, {j}) out of range")));
            }
            g.connect(i, j)?;
        }
        Ok(g)
    }

    pub(crate) fn connect(&mut self, i: usize, j: usize) -> Result<()> {
        if i == j {
            return Err(Error::SelfLoop(self.labels[i].clone()));
        }
        self.adj[i] |= bit(j);
        self.adj[j] |= bit(i);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label).ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn all_mask(&self) -> u64 {
        low_mask(self.len())
    }

    /// Bitset of vertices named in `labels`.
    pub fn mask_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<u64> {
        labels
            .iter()
            .try_fold(0u64, |m, l| Ok(m | bit(self.require(l.as_ref())?)))
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i] & bit(j) != 0
    }

    #[inline]
    pub fn neighbors(&self, i: usize) -> u64 {
        self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as index pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| bits(self.adj[i] & !low_mask(i + 1)).map(move |j| (i, j)))
            .collect()
    }

    pub fn is_clique(&self, mask: u64) -> bool {
        bits(mask).all(|i| self.adj[i] & mask == mask & !bit(i))
    }

    pub fn is_dominant(&self, i: usize) -> bool {
        self.degree(i) + 1 == self.len()
    }

    pub fn complement(&self) -> Graph {
        let all = self.all_mask();
        Graph {
            labels: self.labels.clone(),
            adj: (0..self.len()).map(|i| !self.adj[i] & all & !bit(i)).collect(),
        }
    }

    /// Induced subgraph on `mask`, keeping the original relative vertex order.
    pub fn induced(&self, mask: u64) -> Graph {
        let keep: Vec<usize> = bits(mask & self.all_mask()).collect();
        let adj = keep
            .iter()
            .map(|&i| {
                keep.iter()
                    .enumerate()
                    .filter(|&(_, &j)| self.has_edge(i, j))
                    .fold(0u64, |m, (p, _)| m | bit(p))
            })
            .collect();
        Graph {
            labels: keep.iter().map(|&i| self.labels[i].clone()).collect(),
            adj,
        }
    }

    pub fn remove_vertex(&self, i: usize) -> Graph {
        self.induced(self.all_mask() & !bit(i))
    }

    /// Adds a vertex adjacent to every vertex in `neighbors`, appended last.
    pub fn with_vertex(&self, label: &str, neighbors: u64) -> Result<Graph> {
        let mut labels = self.labels.clone();
        labels.push(label.to_string());
        let mut g = Graph::empty(&labels)?;
        g.adj[..self.len()].copy_from_slice(&self.adj);
        let v = self.len();
        for j in bits(neighbors & self.all_mask()) {
            g.connect(v, j)?;
        }
        Ok(g)
    }

    /// Same graph with vertices listed in the order `perm` (indices into `self`).
    pub fn reordered(&self, perm: &[usize]) -> Graph {
        let mut pos = vec![0usize; self.len()];
        for (p, &i) in perm.iter().enumerate() {
            pos[i] = p;
        }
        Graph {
            labels: perm.iter().map(|&i| self.labels[i].clone()).collect(),
            adj: perm
                .iter()
                .map(|&i| bits(self.adj[i]).fold(0u64, |m, j| m | bit(pos[j])))
                .collect(),
        }
    }

    fn labeled_edge_set(&self) -> BTreeSet<(String, String)> {
        self.edges()
            .into_iter()
            .map(|(i, j)| {
                let (a, b) = (self.labels[i].clone(), self.labels[j].clone());
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect()
    }
}

/// Label-set and edge-set equality; vertex order is ignored.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        let a: BTreeSet<&String> = self.labels.iter().collect();
        let b: BTreeSet<&String> = other.labels.iter().collect();
        a == b && self.labeled_edge_set() == other.labeled_edge_set()
    }
}

impl Eq for Graph {}

/// Bipartite graph `B(X, Y)`; cross edges are index pairs `(x, y)` into the parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteSpec {
    part_x: Vec<String>,
    part_y: Vec<String>,
    cross: BTreeSet<(usize, usize)>,
}

impl BipartiteSpec {
    pub fn new(
        part_x: Vec<String>,
        part_y: Vec<String>,
        cross: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let x: BTreeSet<&String> = part_x.iter().collect();
        if x.len() != part_x.len() {
            return Err(Error::InvalidPartition("duplicate label in X".into()));
        }
        if let Some(l) = part_y.iter().find(|l| x.contains(l)) {
            return Err(Error::InvalidPartition(format!("`{l}` is in both parts")));
        }
        let cross: BTreeSet<(usize, usize)> = cross.into_iter().collect();
        if let Some(&(i, j)) = cross.iter().find(|&&(i, j)| i >= part_x.len() || j >= part_y.len()) {
            return Err(Error::InvalidParam(format!("cross edge ({i}, {j}) out of range")));
        }
        Ok(BipartiteSpec { part_x, part_y, cross })
    }

    pub fn from_labeled<S: AsRef<str>>(part_x: &[S], part_y: &[S], cross: &[(S, S)]) -> Result<Self> {
        let px: Vec<String> = part_x.iter().map(|s| s.as_ref().to_string()).collect();
        let py: Vec<String> = part_y.iter().map(|s| s.as_ref().to_string()).collect();
        let mut pairs = Vec::with_capacity(cross.len());
        for (a, b) in cross {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = px.iter().position(|l| l == a);
            let j = py.iter().position(|l| l == b);
            match (i, j) {
                (Some(i), Some(j)) => pairs.push((i, j)),
                _ => {
                    // accept either orientation of the pair
                    let i = px.iter().position(|l| l == b);
                    let j = py.iter().position(|l| l == a);
                    match (i, j) {
                        (Some(i), Some(j)) => pairs.push((i, j)),
                        _ => return Err(Error::InvalidParam(format!("`{a}`-`{b}` does not join X to Y"))),
                    }
                }
            }
        }
        BipartiteSpec::new(px, py, pairs)
    }

    pub fn part_x(&self) -> &[String] {
        &self.part_x
    }

    pub fn part_y(&self) -> &[String] {
        &self.part_y
    }

    pub fn cross_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cross.iter().copied()
    }

    pub fn has_cross_edge(&self, x: usize, y: usize) -> bool {
        self.cross.contains(&(x, y))
    }

    /// The bipartite graph itself, vertices X then Y.
    pub fn to_graph(&self) -> Result<Graph> {
        let labels: Vec<&String> = self.part_x.iter().chain(&self.part_y).collect();
        let m = self.part_x.len();
        let edges: Vec<(usize, usize)> = self.cross.iter().map(|&(i, j)| (i, m + j)).collect();
        Graph::from_index_edges(&labels, &edges)
    }
}

/// A split of the vertex set into two cliques.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CoBipartitePartition {
    pub clique_a: Vec<String>,
    pub clique_b: Vec<String>,
}

impl CoBipartitePartition {
    pub fn new<S: AsRef<str>>(clique_a: &[S], clique_b: &[S]) -> Self {
        CoBipartitePartition {
            clique_a: clique_a.iter().map(|s| s.as_ref().to_string()).collect(),
            clique_b: clique_b.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    /// Checks the partition against `g` and returns the two clique masks.
    pub fn masks(&self, g: &Graph) -> Result<(u64, u64)> {
        let a = g.mask_of(&self.clique_a)?;
        let b = g.mask_of(&self.clique_b)?;
        if a.count_ones() as usize != self.clique_a.len() || b.count_ones() as usize != self.clique_b.len() {
            return Err(Error::InvalidPartition("repeated label".into()));
        }
        if a & b != 0 {
            return Err(Error::InvalidPartition("cliques overlap".into()));
        }
        if a | b != g.all_mask() {
            return Err(Error::InvalidPartition("cliques do not cover every vertex".into()));
        }
        if a == 0 || b == 0 {
            return Err(Error::InvalidPartition("both cliques must be non-empty".into()));
        }
        if !g.is_clique(a) {
            return Err(Error::NotAClique("cliqueA".into()));
        }
        if !g.is_clique(b) {
            return Err(Error::NotAClique("cliqueB".into()));
        }
        Ok((a, b))
    }

    /// Finds a partition of `g` into two non-empty cliques by 2-colouring the
    /// complement. The first vertex of every complement component goes to A.
    pub fn detect(g: &Graph) -> Option<Self> {
        if g.len() < 2 {
            return None;
        }
        let co = g.complement();
        let mut side: Vec<Option<bool>> = vec![None; g.len()];
        for s in 0..g.len() {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for v in bits(co.neighbors(u)) {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            queue.push_back(v);
                        }
                        Some(sv) if sv == su => return None,
                        _ => {}
                    }
                }
            }
        }
        let mut a: Vec<&str> = Vec::new();
        let mut b: Vec<&str> = Vec::new();
        for (i, s) in side.iter().enumerate() {
            if s == &Some(false) {
                a.push(g.label(i));
            } else {
                b.push(g.label(i));
            }
        }
        if b.is_empty() {
            // complete graph: peel off the last vertex
            b.push(a.pop()?);
        }
        Some(CoBipartitePartition::new(&a, &b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralizedCrownParams {
    n: usize,
    k: usize,
}

impl GeneralizedCrownParams {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParam("crown part size must be at least 1".into()));
        }
        if k + 1 > n {
            return Err(Error::InvalidParam(format!(
                "cannot remove {} perfect matchings from K{n},{n}",
                k + 1
            )));
        }
        Ok(GeneralizedCrownParams { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

pub(crate) fn unprimed(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

pub(crate) fn primed(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{i}'")).collect()
}

/// `P_{2n}` as `B(X, Y)`: `1~1'` and `i~(i-1)'`, `i~i'` for `1 < i <= n`.
pub fn path_bipartite(n: usize) -> Result<BipartiteSpec> {
    if n == 0 {
        return Err(Error::InvalidParam("path needs n >= 1".into()));
    }
    let mut cross = vec![(0, 0)];
    for i in 1..n {
        cross.push((i, i - 1));
        cross.push((i, i));
    }
    BipartiteSpec::new(unprimed(n), primed(n), cross)
}

/// `C_{2n}`: the path plus `1~n'`.
pub fn cycle_bipartite(n: usize) -> Result<BipartiteSpec> {
    if n < 2 {
        return Err(Error::InvalidParam("even cycle needs n >= 2".into()));
    }
    let path = path_bipartite(n)?;
    let cross = path.cross_edges().chain([(0, n - 1)]);
    BipartiteSpec::new(unprimed(n), primed(n), cross.collect::<Vec<_>>())
}

/// Cross non-neighbours of `i` (0-based) in `S^k_{n-k}`: `i', (i+1)', ..., (i+k)'` taken mod n.
pub(crate) fn crown_removed(params: GeneralizedCrownParams, i: usize) -> impl Iterator<Item = usize> {
    let n = params.n;
    (0..=params.k).map(move |t| (i + t) % n)
}

/// Generalized crown `S^k_{n-k}`: `K_{n,n}` minus `k + 1` matchings.
pub fn generalized_crown(params: GeneralizedCrownParams) -> Result<BipartiteSpec> {
    let n = params.n;
    let mut cross = Vec::new();
    for i in 0..n {
        let removed: BTreeSet<usize> = crown_removed(params, i).collect();
        cross.extend((0..n).filter(|j| !removed.contains(j)).map(|j| (i, j)));
    }
    BipartiteSpec::new(unprimed(n), primed(n), cross)
}

/// Complement of a bipartite graph: X and Y become cliques and a cross pair is
/// an edge exactly when it was a non-edge of `spec`.
pub fn cobipartite_from_bipartite(spec: &BipartiteSpec) -> Result<(Graph, CoBipartitePartition)> {
    let m = spec.part_x.len();
    let n = spec.part_y.len();
    let labels: Vec<&String> = spec.part_x.iter().chain(&spec.part_y).collect();
    let mut g = Graph::empty(&labels)?;
    for i in 0..m {
        for j in i + 1..m {
            g.connect(i, j)?;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            g.connect(m + i, m + j)?;
        }
    }
    for i in 0..m {
        for j in 0..n {
            if !spec.has_cross_edge(i, j) {
                g.connect(i, m + j)?;
            }
        }
    }
    let part = CoBipartitePartition::new(&spec.part_x, &spec.part_y);
    Ok((g, part))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedWitness {
    T1Bar,
    T2Bar,
    /// Complement of the crown `H_{n,n}` plus an isolated vertex `v`.
    G1Bar(usize),
}

impl NamedWitness {
    pub fn name(&self) -> String {
        match self {
            NamedWitness::T1Bar => "T1bar".into(),
            NamedWitness::T2Bar => "T2bar".into(),
            NamedWitness::G1Bar(n) => format!("G1bar({n})"),
        }
    }
}

/// Label of the dominant vertex added to `G1bar(n)`; it sits in clique A.
pub const G1BAR_DOMINANT: &str = "v";

pub fn named_witness(which: NamedWitness) -> Result<(Graph, CoBipartitePartition)> {
    match which {
        NamedWitness::T1Bar => {
            // T1 is bipartite with parts {1,4,5,6} and {2,3,7}
            let spec = BipartiteSpec::from_labeled(
                &["1", "4", "5", "6"],
                &["2", "3", "7"],
                &[
                    ("1", "2"),
                    ("1", "7"),
                    ("1", "3"),
                    ("4", "2"),
                    ("5", "2"),
                    ("5", "7"),
                    ("6", "7"),
                    ("6", "3"),
                    ("4", "3"),
                ],
            )?;
            cobipartite_from_bipartite(&spec)
        }
        NamedWitness::T2Bar => {
            let spec = BipartiteSpec::from_labeled(
                &["1", "2", "3", "4"],
                &["5", "6", "7"],
                &[("1", "5"), ("2", "6"), ("3", "7"), ("4", "5"), ("4", "6"), ("4", "7")],
            )?;
            cobipartite_from_bipartite(&spec)
        }
        NamedWitness::G1Bar(n) => {
            if n < 3 {
                return Err(Error::InvalidParam("G1bar needs n >= 3".into()));
            }
            let crown = generalized_crown(GeneralizedCrownParams::new(n, 0)?)?;
            let (co, part) = cobipartite_from_bipartite(&crown)?;
            let g = co.with_vertex(G1BAR_DOMINANT, co.all_mask())?;
            // keep clique A contiguous: 1..n, v, 1'..n'
            let mut perm: Vec<usize> = (0..n).collect();
            perm.push(2 * n);
            perm.extend(n..2 * n);
            let g = g.reordered(&perm);
            let mut a = part.clique_a.clone();
            a.push(G1BAR_DOMINANT.to_string());
            Ok((g, CoBipartitePartition::new(&a, &part.clique_b)))
        }
    }
}

/// Uniform cross-edge sampling: every `X`-`Y` pair is an edge with probability 1/2.
pub fn random_bipartite<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Result<BipartiteSpec> {
    let px: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
    let py: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
    let mut cross = Vec::new();
    for i in 0..m {
        for j in 0..n {
            if rng.random_bool(0.5) {
                cross.push((i, j));
            }
        }
    }
    BipartiteSpec::new(px, py, cross)
}

/// Serializes `g` (and optionally a partition) in the graph text format.
pub fn write_graph(g: &Graph, partition: Option<&CoBipartitePartition>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "vertices: {}", g.labels().join(" "));
    for (i, j) in g.edges() {
        let _ = writeln!(out, "{} {}", g.label(i), g.label(j));
    }
    if let Some(p) = partition {
        let _ = writeln!(out, "cliqueA: {}", p.clique_a.join(" "));
        let _ = writeln!(out, "cliqueB: {}", p.clique_b.join(" "));
    }
    out
}

/// Parses the graph text format. A partition is returned when both
/// `cliqueA:` and `cliqueB:` lines are present; it is validated against the graph.
pub fn parse_graph(text: &str) -> Result<(Graph, Option<CoBipartitePartition>)> {
    let mut graph: Option<Graph> = None;
    let mut clique_a: Option<Vec<String>> = None;
    let mut clique_b: Option<Vec<String>> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: lineno + 1, msg };
        if let Some(rest) = line.strip_prefix("vertices:") {
            if graph.is_some() {
                return Err(err("duplicate `vertices:` line".into()));
            }
            let labels: Vec<&str> = rest.split_whitespace().collect();
            graph = Some(Graph::empty(&labels).map_err(|e| err(e.to_string()))?);
            continue;
        }
        let tokens = |rest: &str| rest.split_whitespace().map(str::to_string).collect::<Vec<_>>();
        if let Some(rest) = line.strip_prefix("cliqueA:") {
            clique_a = Some(tokens(rest));
            continue;
        }
        if let Some(rest) = line.strip_prefix("cliqueB:") {
            clique_b = Some(tokens(rest));
            continue;
        }
        let g = graph
            .as_mut()
            .ok_or_else(|| err("edge before `vertices:` line".into()))?;
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(err(format!("expected `<label> <label>`, got `{line}`")));
        }
        let i = g.require(parts[0]).map_err(|e| err(e.to_string()))?;
        let j = g.require(parts[1]).map_err(|e| err(e.to_string()))?;
        g.connect(i, j).map_err(|e| err(e.to_string()))?;
    }
    let graph = graph.ok_or(Error::Parse {
        line: 0,
        msg: "missing `vertices:` line".into(),
    })?;
    let partition = match (clique_a, clique_b) {
        (Some(a), Some(b)) => {
            let p = CoBipartitePartition { clique_a: a, clique_b: b };
            p.masks(&graph)?;
            Some(p)
        }
        (None, None) => None,
        _ => {
            return Err(Error::Parse {
                line: 0,
                msg: "partition needs both cliqueA and cliqueB".into(),
            })
        }
    };
    Ok((graph, partition))
}
