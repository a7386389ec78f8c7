use serde::Serialize;

use super::{enumerate_acyclic_orientations, Orientation};
use crate::error::{Error, Result};
use crate::graph::{bit, bits, Graph};

/// Vertex cap for the exhaustive orientation searches.
pub const DEFAULT_VERTEX_CAP: usize = 10;

pub fn find_semi_transitive_orientation(g: &Graph) -> Result<Option<Orientation<'_>>> {
    find_semi_transitive_orientation_capped(g, DEFAULT_VERTEX_CAP)
}

/// First semi-transitive orientation in enumeration order.
pub fn find_semi_transitive_orientation_capped(g: &Graph, cap: usize) -> Result<Option<Orientation<'_>>> {
    Ok(enumerate_acyclic_orientations(g, cap)?.find(|o| o.is_semi_transitive()))
}

pub fn is_word_representable(g: &Graph) -> Result<bool> {
    is_word_representable_capped(g, DEFAULT_VERTEX_CAP)
}

pub fn is_word_representable_capped(g: &Graph, cap: usize) -> Result<bool> {
    Ok(find_semi_transitive_orientation_capped(g, cap)?.is_some())
}

/// A transitive orientation, if the graph has one.
pub fn is_comparability(g: &Graph) -> Result<Option<Orientation<'_>>> {
    is_comparability_capped(g, DEFAULT_VERTEX_CAP)
}

pub fn is_comparability_capped(g: &Graph, cap: usize) -> Result<Option<Orientation<'_>>> {
    Ok(enumerate_acyclic_orientations(g, cap)?.find(|o| o.is_transitive()))
}

/// For a dominant vertex `x`: the graph is word-representable iff `g - x`
/// is a comparability graph.
pub fn representable_via_dominant(g: &Graph, x: &str) -> Result<bool> {
    let i = g.require(x)?;
    if !g.is_dominant(i) {
        return Err(Error::NotDominant(x.to_string()));
    }
    let rest = g.remove_vertex(i);
    Ok(is_comparability(&rest)?.is_some())
}

/// Closed walk `a1 ... ak`; the edge `ak a1` closes it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OddWalk {
    pub vertices: Vec<String>,
}

/// Odd closed walk where consecutive vertices (cyclically) are adjacent, no
/// ordered pair `(a_i, a_{i+1})` is used twice and no `a_i a_{i+2}` is an edge.
/// A walk of this kind certifies that the graph is not a comparability graph.
pub fn check_odd_walk<S: AsRef<str>>(g: &Graph, walk: &[S]) -> Result<bool> {
    let idx = walk.iter().map(|s| g.require(s.as_ref())).collect::<Result<Vec<_>>>()?;
    Ok(valid_walk(g, &idx))
}

fn valid_walk(g: &Graph, w: &[usize]) -> bool {
    let k = w.len();
    if k < 3 || k % 2 == 0 {
        return false;
    }
    let mut pairs = std::collections::HashSet::new();
    (0..k).all(|i| {
        let (a, b, c) = (w[i], w[(i + 1) % k], w[(i + 2) % k]);
        g.has_edge(a, b) && pairs.insert((a, b)) && (a == c || !g.has_edge(a, c))
    })
}

/// Depth-first search for a chordless odd closed walk, shortest lengths
/// first (5, 7, ..., `max_len`), start vertices in index order.
pub fn find_noncomparability_witness(g: &Graph, max_len: usize) -> Result<Option<OddWalk>> {
    if max_len < 5 || max_len % 2 == 0 {
        return Err(Error::InvalidParam(format!("walk length bound must be odd and at least 5, got {max_len}")));
    }
    // triangles are never chordless, so length 3 is skipped
    for len in (5..=max_len).step_by(2) {
        for start in 0..g.len() {
            let mut walk = vec![start];
            let mut used = vec![0u64; g.len()];
            if walk_dfs(g, len, &mut walk, &mut used) {
                return Ok(Some(OddWalk {
                    vertices: walk.iter().map(|&i| g.label(i).to_string()).collect(),
                }));
            }
        }
    }
    Ok(None)
}

/// `used[a]` has bit `b` when the ordered pair `(a, b)` is on the walk.
fn walk_dfs(g: &Graph, len: usize, walk: &mut Vec<usize>, used: &mut [u64]) -> bool {
    let last = *walk.last().unwrap();
    let prev = walk.len().checked_sub(2).map(|i| walk[i]);
    if walk.len() == len {
        let (a0, a1) = (walk[0], walk[1]);
        let closes = g.has_edge(last, a0)
            && used[last] & bit(a0) == 0
            && prev.is_none_or(|p| p == a0 || !g.has_edge(p, a0))
            && (last == a1 || !g.has_edge(last, a1));
        return closes;
    }
    let mut cands = g.neighbors(last) & !used[last];
    if let Some(p) = prev {
        // no triangular chord p - next
        cands &= !g.neighbors(p);
    }
    for c in bits(cands) {
        used[last] |= bit(c);
        walk.push(c);
        if walk_dfs(g, len, walk, used) {
            return true;
        }
        walk.pop();
        used[last] &= !bit(c);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_witness, NamedWitness};

    fn cycle(n: usize) -> Graph {
        let labels: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_index_edges(&labels, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let labels: Vec<String> = (0..n).map(|i| format!("k{i}")).collect();
        Graph::empty(&labels).unwrap().complement()
    }

    #[test]
    fn complete_graphs() {
        let k4 = complete(4);
        let o = find_semi_transitive_orientation(&k4).unwrap().unwrap();
        assert!(o.is_transitive());
        assert!(is_comparability(&k4).unwrap().is_some());
        assert_eq!(find_noncomparability_witness(&k4, 9).unwrap(), None);
    }

    #[test]
    fn odd_cycles() {
        let c5 = cycle(5);
        assert!(is_comparability(&c5).unwrap().is_none());
        assert!(is_word_representable(&c5).unwrap());
        let w = find_noncomparability_witness(&c5, 5).unwrap().unwrap();
        assert_eq!(w.vertices, ["c0", "c1", "c2", "c3", "c4"]);
        assert!(check_odd_walk(&c5, &w.vertices).unwrap());
        // even cycles are bipartite, hence comparability graphs
        assert!(is_comparability(&cycle(6)).unwrap().is_some());
        assert_eq!(find_noncomparability_witness(&cycle(6), 9).unwrap(), None);
    }

    #[test]
    fn walk_validation() {
        let c5 = cycle(5);
        assert!(!check_odd_walk(&c5, &["c0", "c1", "c2", "c3"]).unwrap());
        assert!(!check_odd_walk(&c5, &["c0", "c2", "c1", "c3", "c4"]).unwrap());
        assert!(check_odd_walk(&c5, &["nope"]).is_err());
        assert!(find_noncomparability_witness(&c5, 6).is_err());
        assert!(find_noncomparability_witness(&c5, 3).is_err());
    }

    #[test]
    fn dominant_route() {
        let (g, _) = named_witness(NamedWitness::G1Bar(3)).unwrap();
        assert!(!representable_via_dominant(&g, "v").unwrap());
        assert!(!is_word_representable(&g).unwrap());
        assert!(matches!(representable_via_dominant(&g, "1"), Err(Error::NotDominant(_))));
        // K1 joined to K4
        assert!(representable_via_dominant(&complete(5), "k0").unwrap());
    }

    #[test]
    fn seven_vertex_witnesses() {
        let (t2, _) = named_witness(NamedWitness::T2Bar).unwrap();
        assert!(!is_word_representable(&t2).unwrap());
        // T1bar as drawn (prism plus a vertex on one triangle) does have a
        // representing word, so the search must find an orientation
        let (t1, _) = named_witness(NamedWitness::T1Bar).unwrap();
        let w = crate::words::Word::parse("1 2 3 4 6 5 1 7 4 2 6 3 7 2 5 3 1 4 7 6 5");
        assert!(w.represents(&t1).unwrap().ok);
        let o = find_semi_transitive_orientation(&t1).unwrap().unwrap();
        assert!(o.is_semi_transitive());
    }

    #[test]
    fn walks_agree_with_comparability() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..80 {
            let n = rng.random_range(3..=6);
            let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.random_bool(0.5) {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::from_index_edges(&labels, &edges).unwrap();
            let comparability = is_comparability(&g).unwrap().is_some();
            let walk = find_noncomparability_witness(&g, 9).unwrap();
            if let Some(w) = &walk {
                assert!(check_odd_walk(&g, &w.vertices).unwrap());
                assert!(!comparability, "walk {:?} in a comparability graph", w.vertices);
            }
        }
    }
}
