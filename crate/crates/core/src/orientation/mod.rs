//! Orientations of small graphs: acyclicity, shortcuts, semi-transitivity and
//! the exhaustive searches built on them.
//!
//! A shortcut here is a directed path `v0 -> v1 -> ... -> vk` (k >= 3) together
//! with the arc `v0 -> vk` such that some pair `vi, vj` (i < j) is not joined
//! by the arc `vi -> vj`. The path-based test is used as the operational form
//! of the semi-cycle definition; on acyclic input a failed pair is always a
//! missing edge, never a reversed one.

mod enumerate;
mod repnum;
mod search;

pub use enumerate::{acyclic_orientations_by_dedup, enumerate_acyclic_orientations, AcyclicOrientations};
pub use repnum::{bounded_representation_number, find_uniform_word, REPNUM_MAX_K, REPNUM_MAX_VERTICES};
pub use search::{
    check_odd_walk, find_noncomparability_witness, find_semi_transitive_orientation,
    find_semi_transitive_orientation_capped, is_comparability, is_comparability_capped, is_word_representable,
    is_word_representable_capped, representable_via_dominant, OddWalk, DEFAULT_VERTEX_CAP,
};

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, bits, Graph};

/// Direction for every edge of a borrowed graph. `out[u]` has bit `v` iff `u -> v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation<'g> {
    graph: &'g Graph,
    out: Vec<u64>,
}

impl<'g> Orientation<'g> {
    /// Orients every edge from the earlier to the later vertex of `order`.
    pub fn from_order(graph: &'g Graph, order: &[usize]) -> Result<Self> {
        if order.len() != graph.len() || order.iter().fold(0u64, |m, &v| m | bit(v)) != graph.all_mask() {
            return Err(Error::BadOrientation("order is not a permutation of the vertices".into()));
        }
        let mut placed = 0u64;
        let mut out = vec![0u64; graph.len()];
        for &v in order.iter().rev() {
            out[v] = graph.neighbors(v) & placed;
            placed |= bit(v);
        }
        Ok(Orientation { graph, out })
    }

    /// Builds an orientation from arcs; every edge must be oriented exactly once.
    pub fn from_arcs(graph: &'g Graph, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut out = vec![0u64; graph.len()];
        for &(u, v) in arcs {
            if u >= graph.len() || v >= graph.len() || !graph.has_edge(u, v) {
                return Err(Error::BadOrientation(format!("({u}, {v}) is not an edge")));
            }
            if (out[u] | out[v]) & (bit(u) | bit(v)) != 0 {
                return Err(Error::BadOrientation(format!(
                    "edge {}-{} oriented twice",
                    graph.label(u),
                    graph.label(v)
                )));
            }
            out[u] |= bit(v);
        }
        let o = Orientation { graph, out };
        if let Some((u, v)) = graph.edges().into_iter().find(|&(u, v)| !o.has_arc(u, v) && !o.has_arc(v, u)) {
            return Err(Error::BadOrientation(format!(
                "edge {}-{} is not oriented",
                graph.label(u),
                graph.label(v)
            )));
        }
        Ok(o)
    }

    pub fn from_labeled_arcs<S: AsRef<str>>(graph: &'g Graph, arcs: &[(S, S)]) -> Result<Self> {
        let arcs: Vec<(usize, usize)> = arcs
            .iter()
            .map(|(a, b)| Ok((graph.require(a.as_ref())?, graph.require(b.as_ref())?)))
            .collect::<Result<_>>()?;
        Orientation::from_arcs(graph, &arcs)
    }

    /// Parses lines of the form `<tail> -> <head>`; `#` starts a comment.
    pub fn parse(graph: &'g Graph, text: &str) -> Result<Self> {
        let mut arcs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: lineno + 1, msg };
            let (a, b) = line
                .split_once("->")
                .ok_or_else(|| err(format!("expected `<tail> -> <head>`, got `{line}`")))?;
            let u = graph.require(a.trim()).map_err(|e| err(e.to_string()))?;
            let v = graph.require(b.trim()).map_err(|e| err(e.to_string()))?;
            arcs.push((u, v));
        }
        Orientation::from_arcs(graph, &arcs)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (u, v) in self.arcs() {
            let _ = writeln!(s, "{} -> {}", self.graph.label(u), self.graph.label(v));
        }
        s
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u] & bit(v) != 0
    }

    #[inline]
    pub fn out_mask(&self, u: usize) -> u64 {
        self.out[u]
    }

    #[inline]
    pub fn in_mask(&self, u: usize) -> u64 {
        self.graph.neighbors(u) & !self.out[u]
    }

    /// Arcs in edge order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.graph
            .edges()
            .into_iter()
            .map(|(u, v)| if self.has_arc(u, v) { (u, v) } else { (v, u) })
            .collect()
    }

    pub fn labeled_arcs(&self) -> Vec<(String, String)> {
        self.arcs()
            .into_iter()
            .map(|(u, v)| (self.graph.label(u).to_string(), self.graph.label(v).to_string()))
            .collect()
    }

    /// Raw out-neighbourhood bitsets; equal fingerprints mean equal orientations.
    pub fn fingerprint(&self) -> &[u64] {
        &self.out
    }

    /// A topological order, or `None` when there is a directed cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.graph.len();
        let mut remaining = self.graph.all_mask();
        let mut order = Vec::with_capacity(n);
        while remaining != 0 {
            let src = bits(remaining).find(|&v| self.in_mask(v) & remaining == 0)?;
            order.push(src);
            remaining &= !bit(src);
        }
        Some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// `u -> w -> z` always implies `u -> z`.
    pub fn is_transitive(&self) -> bool {
        (0..self.graph.len()).all(|u| bits(self.out[u]).all(|w| self.out[w] & !self.out[u] & !bit(u) == 0))
            && self.is_acyclic()
    }

    /// Strict reachability sets; requires an acyclic orientation.
    fn reachability(&self, topo: &[usize]) -> Vec<u64> {
        let mut reach = vec![0u64; self.graph.len()];
        for &v in topo.iter().rev() {
            reach[v] = bits(self.out[v]).fold(self.out[v], |m, w| m | reach[w]);
        }
        reach
    }

    /// Searches for a shortcut. Arcs `u -> v` are scanned in vertex order and
    /// for each one the directed `u`-`v` paths are explored depth first,
    /// restricted to vertices lying between `u` and `v`; a branch stops as
    /// soon as its vertex set stops being transitive.
    pub fn find_shortcut(&self) -> Result<Option<ShortcutWitness>> {
        let topo = self.topological_order().ok_or(Error::Cyclic)?;
        let reach = self.reachability(&topo);
        let n = self.graph.len();
        for u in 0..n {
            for v in bits(self.out[u]) {
                let between = bits(reach[u]).filter(|&w| reach[w] & bit(v) != 0).fold(0u64, |m, w| m | bit(w));
                if between == 0 {
                    continue;
                }
                let mut path = vec![u];
                if let Some((p, w)) = self.shortcut_dfs(&mut path, v, between | bit(v)) {
                    let mut full = path.clone();
                    if w != v {
                        full.extend(self.path_within(w, v, between | bit(v)).into_iter().skip(1));
                    }
                    return Ok(Some(self.witness(&full, (p, w))));
                }
            }
        }
        Ok(None)
    }

    /// Returns the first non-transitive pair; on success `path` ends at the
    /// offending vertex.
    fn shortcut_dfs(&self, path: &mut Vec<usize>, target: usize, allowed: u64) -> Option<(usize, usize)> {
        let last = *path.last().unwrap();
        for w in bits(self.out[last] & allowed) {
            if w == target && path.len() == 1 {
                continue;
            }
            if let Some(&p) = path[..path.len() - 1].iter().find(|&&p| !self.has_arc(p, w)) {
                path.push(w);
                return Some((p, w));
            }
            if w == target {
                continue;
            }
            path.push(w);
            if let Some(hit) = self.shortcut_dfs(path, target, allowed) {
                return Some(hit);
            }
            path.pop();
        }
        None
    }

    /// Shortest directed path from `from` to `to` inside `allowed ∪ {from}`.
    fn path_within(&self, from: usize, to: usize, allowed: u64) -> Vec<usize> {
        let mut prev = vec![usize::MAX; self.graph.len()];
        let mut seen = bit(from);
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            for y in bits(self.out[x] & allowed & !seen) {
                seen |= bit(y);
                prev[y] = x;
                queue.push_back(y);
            }
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = prev[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    fn witness(&self, path: &[usize], pair: (usize, usize)) -> ShortcutWitness {
        let l = |i: usize| self.graph.label(i).to_string();
        ShortcutWitness {
            path_vertices: path.iter().map(|&i| l(i)).collect(),
            shortcutting_edge: (l(path[0]), l(*path.last().unwrap())),
            missing_pair: (l(pair.0), l(pair.1)),
        }
    }

    /// Acyclic and shortcut-free.
    pub fn is_semi_transitive(&self) -> bool {
        matches!(self.find_shortcut(), Ok(None))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ShortcutWitness {
    pub path_vertices: Vec<String>,
    pub shortcutting_edge: (String, String),
    /// `(p, q)` with `p` before `q` on the path but no arc `p -> q`.
    pub missing_pair: (String, String),
}

/// Tagged witness for JSON output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    Shortcut {
        vertices: Vec<String>,
        detail: ShortcutWitness,
    },
    OddWalk {
        vertices: Vec<String>,
        detail: String,
    },
}

impl From<ShortcutWitness> for Witness {
    fn from(w: ShortcutWitness) -> Self {
        Witness::Shortcut {
            vertices: w.path_vertices.clone(),
            detail: w,
        }
    }
}

impl From<OddWalk> for Witness {
    fn from(w: OddWalk) -> Self {
        Witness::OddWalk {
            detail: format!("odd closed walk of length {} without triangular chords", w.vertices.len()),
            vertices: w.vertices,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::from_index_edges(&labels, &edges).unwrap()
    }

    fn identity(n: usize) -> Vec<usize> {
        (0..n).collect()
    }

    #[test]
    fn cyclic_triangle() {
        let g = complete(3);
        let o = Orientation::from_arcs(&g, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(!o.is_acyclic());
        assert!(!o.is_semi_transitive());
        assert!(!o.is_transitive());
        assert_eq!(o.find_shortcut(), Err(Error::Cyclic));
    }

    #[test]
    fn transitive_tournament() {
        let g = complete(4);
        let o = Orientation::from_order(&g, &identity(4)).unwrap();
        assert!(o.is_acyclic());
        assert!(o.is_transitive());
        assert_eq!(o.find_shortcut().unwrap(), None);
        assert!(o.is_semi_transitive());
    }

    #[test]
    fn order_induced_on_co_p4_is_acyclic() {
        let g = Graph::from_edges(&["1", "2", "1'", "2'"], &[("1", "2"), ("1'", "2'"), ("1", "2'")]).unwrap();
        for order in [[0, 1, 2, 3], [3, 2, 1, 0], [2, 0, 3, 1]] {
            assert!(Orientation::from_order(&g, &order).unwrap().is_acyclic());
        }
    }

    #[test]
    fn chordless_four_cycle_shortcut() {
        // v0 -> v1 -> v2 -> v3 with v0 -> v3, no chords
        let g = Graph::from_edges(&["v0", "v1", "v2", "v3"], &[("v0", "v1"), ("v1", "v2"), ("v2", "v3"), ("v0", "v3")])
            .unwrap();
        let o = Orientation::from_labeled_arcs(&g, &[("v0", "v1"), ("v1", "v2"), ("v2", "v3"), ("v0", "v3")]).unwrap();
        let w = o.find_shortcut().unwrap().unwrap();
        assert_eq!(w.path_vertices, vec!["v0", "v1", "v2", "v3"]);
        assert_eq!(w.shortcutting_edge, ("v0".to_string(), "v3".to_string()));
        assert_eq!(w.missing_pair, ("v0".to_string(), "v2".to_string()));
    }

    #[test]
    fn lemma_pattern_shortcut() {
        // x_s -> x -> y -> x_{s+1}, x_s -> x_{s+1}; x ~ x_{s+1} and x_s ~ y missing
        let g = Graph::from_edges(
            &["xs", "x", "y", "xs1"],
            &[("xs", "x"), ("x", "y"), ("y", "xs1"), ("xs", "xs1")],
        )
        .unwrap();
        let o = Orientation::from_labeled_arcs(&g, &[("xs", "x"), ("x", "y"), ("y", "xs1"), ("xs", "xs1")]).unwrap();
        assert!(o.find_shortcut().unwrap().is_some());
        assert!(!o.is_semi_transitive());
    }

    #[test]
    fn witness_is_a_real_shortcut() {
        // 5-cycle with the long chord closing a path of length 4
        let g = Graph::from_edges(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("a", "e"), ("a", "c")],
        )
        .unwrap();
        let o = Orientation::from_order(&g, &identity(5)).unwrap();
        let w = o.find_shortcut().unwrap().unwrap();
        let idx: Vec<usize> = w.path_vertices.iter().map(|l| g.require(l).unwrap()).collect();
        assert!(idx.windows(2).all(|p| o.has_arc(p[0], p[1])));
        assert!(o.has_arc(idx[0], *idx.last().unwrap()));
        let (p, q) = (g.require(&w.missing_pair.0).unwrap(), g.require(&w.missing_pair.1).unwrap());
        assert!(!o.has_arc(p, q));
    }

    #[test]
    fn arcs_validation_and_text() {
        let g = complete(3);
        assert!(Orientation::from_arcs(&g, &[(0, 1), (1, 2)]).is_err());
        assert!(Orientation::from_arcs(&g, &[(0, 1), (1, 0), (1, 2), (0, 2)]).is_err());
        let o = Orientation::from_order(&g, &[2, 0, 1]).unwrap();
        let text = o.to_text();
        assert_eq!(text, "1 -> 2\n3 -> 1\n3 -> 2\n");
        assert_eq!(Orientation::parse(&g, &text).unwrap(), o);
        assert!(Orientation::parse(&g, "1 => 2").is_err());
        assert!(Orientation::from_order(&g, &[0, 0, 1]).is_err());
    }

    #[test]
    fn witness_json() {
        let w = ShortcutWitness {
            path_vertices: vec!["a".into(), "b".into()],
            shortcutting_edge: ("a".into(), "b".into()),
            missing_pair: ("a".into(), "b".into()),
        };
        let json = serde_json::to_value(Witness::from(w)).unwrap();
        assert_eq!(json["type"], "shortcut");
        assert_eq!(json["vertices"][1], "b");
    }
}
