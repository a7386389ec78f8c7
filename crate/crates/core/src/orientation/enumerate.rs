use std::collections::HashSet;

use super::Orientation;
use crate::error::{Error, Result};
use crate::graph::{bit, Graph};

/// Streams every acyclic orientation of a graph exactly once.
///
/// Linear orders are walked in lexicographic order and each orientation is
/// emitted at its lexicographically least inducing order. That order is
/// recognised while it is being built: when vertex `c` is appended, every
/// vertex placed after the last neighbour of `c` must be smaller than `c`
/// (otherwise `c` could move left past it without changing any arc). Pruned
/// prefixes never reach a full order, so no fingerprint set is needed and the
/// output sequence equals the dedup-by-fingerprint stream.
pub struct AcyclicOrientations<'g> {
    graph: &'g Graph,
    perm: Vec<usize>,
    used: u64,
    next: Vec<usize>,
    at_leaf: bool,
    done: bool,
}

pub fn enumerate_acyclic_orientations(graph: &Graph, max_vertices: usize) -> Result<AcyclicOrientations<'_>> {
    if graph.len() > max_vertices {
        return Err(Error::TooManyVertices(graph.len(), max_vertices));
    }
    Ok(AcyclicOrientations {
        graph,
        perm: Vec::with_capacity(graph.len()),
        used: 0,
        next: vec![0; graph.len() + 1],
        at_leaf: false,
        done: false,
    })
}

impl<'g> AcyclicOrientations<'g> {
    fn admissible(&self, c: usize) -> bool {
        for &p in self.perm.iter().rev() {
            if self.graph.has_edge(p, c) {
                return true;
            }
            if p > c {
                return false;
            }
        }
        true
    }

    fn pop(&mut self) -> bool {
        match self.perm.pop() {
            Some(c) => {
                self.used &= !bit(c);
                true
            }
            None => false,
        }
    }

    /// Advances to the next canonical linear order.
    pub fn next_order(&mut self) -> Option<&[usize]> {
        let n = self.graph.len();
        if self.done {
            return None;
        }
        if self.at_leaf {
            self.at_leaf = false;
            if !self.pop() {
                self.done = true;
                return None;
            }
        }
        loop {
            let d = self.perm.len();
            if d == n {
                self.at_leaf = true;
                return Some(&self.perm);
            }
            let mut found = None;
            while self.next[d] < n {
                let c = self.next[d];
                self.next[d] += 1;
                if self.used & bit(c) == 0 && self.admissible(c) {
                    found = Some(c);
                    break;
                }
            }
            match found {
                Some(c) => {
                    self.perm.push(c);
                    self.used |= bit(c);
                    self.next[d + 1] = 0;
                }
                None => {
                    if !self.pop() {
                        self.done = true;
                        return None;
                    }
                }
            }
        }
    }
}

impl<'g> Iterator for AcyclicOrientations<'g> {
    type Item = Orientation<'g>;

    fn next(&mut self) -> Option<Self::Item> {
        let graph = self.graph;
        let order = self.next_order()?.to_vec();
        Some(Orientation::from_order(graph, &order).expect("canonical order is a permutation"))
    }
}

/// Reference enumeration: every permutation in lexicographic order, keeping
/// the first orientation per fingerprint. Returns the out-neighbourhood
/// fingerprints in emission order.
pub fn acyclic_orientations_by_dedup(graph: &Graph) -> Vec<Vec<u64>> {
    let n = graph.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    loop {
        let o = Orientation::from_order(graph, &perm).expect("permutation");
        let fp = o.fingerprint().to_vec();
        if seen.insert(fp.clone()) {
            out.push(fp);
        }
        if !next_permutation(&mut perm) {
            return out;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(labels: &[&str], edges: &[(&str, &str)]) -> Graph {
        Graph::from_edges(labels, edges).unwrap()
    }

    fn count(graph: &Graph) -> usize {
        enumerate_acyclic_orientations(graph, 10).unwrap().count()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(&g(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")])), 6);
        assert_eq!(count(&g(&["a", "b"], &[("a", "b")])), 2);
        assert_eq!(count(&g(&["a", "b", "c"], &[("a", "b"), ("b", "c")])), 4);
        assert_eq!(count(&g(&["a", "b", "c"], &[])), 1);
        assert_eq!(count(&g(&[], &[])), 1);
        // C4 has 2^4 - 2 acyclic orientations
        assert_eq!(count(&g(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])), 14);
    }

    #[test]
    fn cap() {
        let labels: Vec<String> = (0..11).map(|i| i.to_string()).collect();
        let big = Graph::empty(&labels).unwrap();
        assert!(matches!(
            enumerate_acyclic_orientations(&big, 10),
            Err(Error::TooManyVertices(11, 10))
        ));
    }

    #[test]
    fn matches_dedup_reference() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..60 {
            let n = rng.random_range(1..=7);
            let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.random_bool(0.5) {
                        edges.push((i, j));
                    }
                }
            }
            let graph = Graph::from_index_edges(&labels, &edges).unwrap();
            let fast: Vec<Vec<u64>> = enumerate_acyclic_orientations(&graph, 10)
                .unwrap()
                .map(|o| {
                    assert!(o.is_acyclic());
                    o.fingerprint().to_vec()
                })
                .collect();
            assert_eq!(fast, acyclic_orientations_by_dedup(&graph));
        }
    }
}
