use crate::error::{Error, Result};
use crate::graph::{bit, bits, Graph};
use crate::words::Word;

pub const REPNUM_MAX_VERTICES: usize = 6;
pub const REPNUM_MAX_K: usize = 3;

fn check_caps(g: &Graph, k: usize) -> Result<()> {
    if g.len() > REPNUM_MAX_VERTICES {
        return Err(Error::TooManyVertices(g.len(), REPNUM_MAX_VERTICES));
    }
    if g.is_empty() {
        return Err(Error::InvalidParam("graph has no vertices".into()));
    }
    if k == 0 || k > REPNUM_MAX_K {
        return Err(Error::InvalidParam(format!("k must be in 1..={REPNUM_MAX_K}, got {k}")));
    }
    Ok(())
}

/// Smallest `k <= max_k` such that a `k`-uniform word represents `g`.
pub fn bounded_representation_number(g: &Graph, max_k: usize) -> Result<Option<usize>> {
    check_caps(g, max_k)?;
    for k in 1..=max_k {
        if find_uniform_word(g, k)?.is_some() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Backtracking search for a `k`-uniform representing word.
///
/// Rotating a uniform word keeps the represented graph, so the first letter
/// is fixed to vertex 0. Adjacent pairs are pruned as soon as one letter
/// repeats without the other in between; a non-adjacent pair that has not yet
/// repeated is abandoned once one side is exhausted and the other has fewer
/// than two occurrences left.
pub fn find_uniform_word(g: &Graph, k: usize) -> Result<Option<Word>> {
    check_caps(g, k)?;
    let n = g.len();
    let mut s = Search {
        g,
        k,
        count: vec![0; n],
        last: vec![-1; n],
        broken: vec![0; n],
        word: Vec::with_capacity(n * k),
    };
    s.place(0);
    if s.dfs() {
        return Ok(Some(Word::new(s.word.iter().map(|&i| g.label(i).to_string()))));
    }
    Ok(None)
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    count: Vec<usize>,
    last: Vec<isize>,
    /// Symmetric: bit `d` of `broken[c]` once the restriction to `{c, d}` has a repeat.
    broken: Vec<u64>,
    word: Vec<usize>,
}

impl Search<'_> {
    /// Letters `d` with no occurrence since the last `c`.
    fn stale(&self, c: usize) -> u64 {
        if self.count[c] == 0 {
            return 0;
        }
        (0..self.g.len())
            .filter(|&d| d != c && self.last[d] < self.last[c])
            .fold(0u64, |m, d| m | bit(d))
    }

    fn allowed(&self, c: usize) -> bool {
        if self.count[c] == self.k || self.stale(c) & self.g.neighbors(c) != 0 {
            return false;
        }
        if self.count[c] + 1 < self.k {
            return true;
        }
        // c is about to be exhausted; unbroken non-neighbours need two more copies
        let fresh = self.stale(c);
        let non_adj = self.g.all_mask() & !self.g.neighbors(c) & !bit(c);
        bits(non_adj & !self.broken[c] & !fresh).all(|d| self.count[d] + 2 <= self.k)
    }

    fn place(&mut self, c: usize) -> (u64, isize) {
        let fresh = self.stale(c);
        for d in bits(fresh) {
            self.broken[d] |= bit(c);
        }
        let saved = (self.broken[c], self.last[c]);
        self.broken[c] |= fresh;
        self.last[c] = self.word.len() as isize;
        self.count[c] += 1;
        self.word.push(c);
        saved
    }

    fn unplace(&mut self, c: usize, saved: (u64, isize)) {
        self.word.pop();
        self.count[c] -= 1;
        let fresh_then = self.broken[c] & !saved.0;
        self.broken[c] = saved.0;
        self.last[c] = saved.1;
        for d in bits(fresh_then) {
            self.broken[d] &= !bit(c);
        }
    }

    fn dfs(&mut self) -> bool {
        let n = self.g.len();
        if self.word.len() == n * self.k {
            return (0..n).all(|c| {
                let non_adj = self.g.all_mask() & !self.g.neighbors(c) & !bit(c);
                non_adj & !self.broken[c] == 0
            });
        }
        for c in 0..n {
            if !self.allowed(c) {
                continue;
            }
            let saved = self.place(c);
            if self.dfs() {
                return true;
            }
            self.unplace(c, saved);
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(g: &Graph, k: usize) -> Option<Word> {
        let w = find_uniform_word(g, k).unwrap()?;
        assert_eq!(w.uniformity(), Some(k));
        assert!(w.represents(g).unwrap().ok, "{w} does not represent the graph");
        Some(w)
    }

    #[test]
    fn small_numbers() {
        let k3 = Graph::empty(&["a", "b", "c"]).unwrap().complement();
        assert_eq!(bounded_representation_number(&k3, 3).unwrap(), Some(1));
        let k2 = Graph::from_edges(&["a", "b"], &[("a", "b")]).unwrap();
        assert_eq!(bounded_representation_number(&k2, 3).unwrap(), Some(1));
        let empty = Graph::empty(&["a", "b"]).unwrap();
        assert_eq!(bounded_representation_number(&empty, 3).unwrap(), Some(2));
        assert_eq!(check(&empty, 2).unwrap().to_string(), "a a b b");
        let p3 = Graph::from_edges(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(bounded_representation_number(&p3, 3).unwrap(), Some(2));
        check(&p3, 2).unwrap();
        check(&p3, 3).unwrap();
        let single = Graph::empty(&["a"]).unwrap();
        assert_eq!(check(&single, 3).unwrap().to_string(), "a a a");
    }

    #[test]
    fn prism() {
        let labels = ["1", "2", "3", "1'", "2'", "3'"];
        let g = Graph::from_edges(
            &labels,
            &[("1", "2"), ("2", "3"), ("1", "3"), ("1'", "2'"), ("2'", "3'"), ("1'", "3'"), ("1", "1'"), ("2", "2'"), ("3", "3'")],
        )
        .unwrap();
        assert!(find_uniform_word(&g, 2).unwrap().is_none());
        check(&g, 3).unwrap();
        assert_eq!(bounded_representation_number(&g, 3).unwrap(), Some(3));
        assert_eq!(bounded_representation_number(&g, 2).unwrap(), None);
    }

    #[test]
    fn caps() {
        let labels: Vec<String> = (0..7).map(|i| i.to_string()).collect();
        let big = Graph::empty(&labels).unwrap();
        assert!(matches!(find_uniform_word(&big, 2), Err(Error::TooManyVertices(7, 6))));
        let g = Graph::empty(&["a"]).unwrap();
        assert!(find_uniform_word(&g, 4).is_err());
        assert!(find_uniform_word(&g, 0).is_err());
    }

    #[test]
    fn agrees_with_brute_force_on_four_vertices() {
        // every labelled graph on 4 vertices: compare with exhaustive 2-uniform words
        let labels = ["a", "b", "c", "d"];
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
        for mask in 0u32..64 {
            let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &p)| p).collect();
            let g = Graph::from_index_edges(&labels, &edges).unwrap();
            let brute = brute_uniform(&g, 2);
            assert_eq!(find_uniform_word(&g, 2).unwrap().is_some(), brute, "edges {edges:?}");
        }
    }

    fn brute_uniform(g: &Graph, k: usize) -> bool {
        fn rec(g: &Graph, k: usize, counts: &mut Vec<usize>, w: &mut Vec<String>) -> bool {
            if w.len() == g.len() * k {
                return Word::new(w.clone()).represents(g).unwrap().ok;
            }
            for c in 0..g.len() {
                if counts[c] < k {
                    counts[c] += 1;
                    w.push(g.label(c).to_string());
                    if rec(g, k, counts, w) {
                        return true;
                    }
                    w.pop();
                    counts[c] -= 1;
                }
            }
            false
        }
        rec(g, k, &mut vec![0; g.len()], &mut Vec::new())
    }
}
