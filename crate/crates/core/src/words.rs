//! Words over vertex labels and the alternation relation they induce.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, bits, Graph};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<String>,
}

impl Word {
    pub fn new<S: Into<String>>(letters: impl IntoIterator<Item = S>) -> Self {
        Word {
            letters: letters.into_iter().map(Into::into).collect(),
        }
    }

    /// Parses whitespace-separated letter tokens.
    pub fn parse(text: &str) -> Self {
        Word::new(text.split_whitespace())
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn count(&self, x: &str) -> usize {
        self.letters.iter().filter(|l| *l == x).count()
    }

    /// Distinct letters in order of first occurrence.
    pub fn alphabet(&self) -> Vec<String> {
        let mut seen = HashSet::new();
        self.letters
            .iter()
            .filter(|l| seen.insert(l.as_str()))
            .cloned()
            .collect()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.letters.iter().chain(&other.letters).cloned())
    }

    /// `w_{keep}`: the subsequence of letters in `keep`.
    pub fn restrict<S: AsRef<str>>(&self, keep: &[S]) -> Word {
        let keep: HashSet<&str> = keep.iter().map(AsRef::as_ref).collect();
        Word::new(self.letters.iter().filter(|l| keep.contains(l.as_str())).cloned())
    }

    fn require_letter(&self, x: &str) -> Result<()> {
        if self.letters.iter().any(|l| l == x) {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(format!("`{x}` does not occur in the word")))
        }
    }

    pub fn alternates(&self, x: &str, y: &str) -> Result<bool> {
        if x == y {
            return Err(Error::InvalidParam("alternation needs two distinct letters".into()));
        }
        self.require_letter(x)?;
        self.require_letter(y)?;
        let r = self.restrict(&[x, y]);
        Ok(r.letters.windows(2).all(|p| p[0] != p[1]))
    }

    /// Letter indices into `alphabet`, or the first letter missing from it.
    fn indexed(&self, alphabet: &[String]) -> std::result::Result<Vec<usize>, String> {
        let pos: HashMap<&str, usize> = alphabet.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        self.letters
            .iter()
            .map(|l| pos.get(l.as_str()).copied().ok_or_else(|| l.clone()))
            .collect()
    }

    /// Checks every vertex pair of `g`: alternation in the word must coincide
    /// with adjacency. All offending pairs are listed, ordered by vertex position.
    pub fn represents(&self, g: &Graph) -> Result<VerifyReport> {
        if self.is_empty() {
            return Err(Error::AlphabetMismatch("empty word".into()));
        }
        let idx = self
            .indexed(g.labels())
            .map_err(|l| Error::AlphabetMismatch(format!("letter `{l}` is not a vertex")))?;
        let present = idx.iter().fold(0u64, |m, &i| m | bit(i));
        if let Some(v) = bits(g.all_mask() & !present).next() {
            return Err(Error::AlphabetMismatch(format!("vertex `{}` does not occur", g.label(v))));
        }
        let alt = alternation_masks(&idx, g.len());
        let mut violations = Vec::new();
        for x in 0..g.len() {
            for y in x + 1..g.len() {
                let alternating = alt[x] & bit(y) != 0;
                let adjacent = g.has_edge(x, y);
                if alternating != adjacent {
                    violations.push(Violation {
                        x: g.label(x).to_string(),
                        y: g.label(y).to_string(),
                        restriction: self.restrict(&[g.label(x), g.label(y)]).to_string(),
                        expected: adjacent,
                    });
                }
            }
        }
        Ok(VerifyReport {
            ok: violations.is_empty(),
            violations,
        })
    }

    /// The graph this word represents, on its alphabet in first-occurrence order.
    pub fn represented_graph(&self) -> Result<Graph> {
        let alphabet = self.alphabet();
        let idx = self.indexed(&alphabet).expect("alphabet covers every letter");
        let alt = alternation_masks(&idx, alphabet.len());
        let edges: Vec<(usize, usize)> = (0..alphabet.len())
            .flat_map(|x| bits(alt[x]).filter(move |&y| y > x).map(move |y| (x, y)))
            .collect();
        Graph::from_index_edges(&alphabet, &edges)
    }

    /// `Some(k)` when every letter occurs exactly `k` times.
    pub fn uniformity(&self) -> Option<usize> {
        let mut counts: HashMap<&str, usize> = HashMap::new();
        for l in &self.letters {
            *counts.entry(l).or_default() += 1;
        }
        let mut it = counts.values();
        let k = *it.next()?;
        it.all(|&c| c == k).then_some(k)
    }

    /// `π(w)`: leftmost occurrences in order.
    pub fn initial_permutation(&self) -> Word {
        Word::new(self.alphabet())
    }

    /// `σ(w)`: rightmost occurrences in order.
    pub fn final_permutation(&self) -> Word {
        let mut seen = HashSet::new();
        let mut rev: Vec<&String> = self.letters.iter().rev().filter(|l| seen.insert(l.as_str())).collect();
        rev.reverse();
        Word::new(rev.into_iter().cloned())
    }

    /// `π(w) w`, which represents the same graph as `w`.
    pub fn prepend_initial(&self) -> Word {
        self.initial_permutation().concat(self)
    }

    /// For a uniform word `w = uv` with `|u| = cut`, returns `vu`.
    pub fn rotate_uniform(&self, cut: usize) -> Result<Word> {
        if self.uniformity().is_none() {
            return Err(Error::NotUniform);
        }
        if cut > self.len() {
            return Err(Error::InvalidParam(format!("cut {cut} beyond word length {}", self.len())));
        }
        let (u, v) = self.letters.split_at(cut);
        Ok(Word::new(v.iter().chain(u).cloned()))
    }

    /// Letters alternating with `x`, plus for each gap between consecutive
    /// occurrences of `x` the letters occurring exactly once inside it.
    pub fn alternation_neighborhood(&self, x: &str) -> Result<AlternationNeighborhood> {
        self.require_letter(x)?;
        let alphabet = self.alphabet();
        let mut alternating = Vec::new();
        for y in alphabet.iter().filter(|y| *y != x) {
            if self.alternates(x, y)? {
                alternating.push(y.clone());
            }
        }
        let occurrences: Vec<usize> = (0..self.len()).filter(|&p| self.letters[p] == x).collect();
        let gap_singletons = occurrences
            .windows(2)
            .map(|w| {
                let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
                let mut order = Vec::new();
                for l in &self.letters[w[0] + 1..w[1]] {
                    let c = counts.entry(l).or_default();
                    if *c == 0 {
                        order.push(l.clone());
                    }
                    *c += 1;
                }
                order.retain(|l| counts[l.as_str()] == 1);
                order
            })
            .collect();
        Ok(AlternationNeighborhood {
            alternating,
            gap_singletons,
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.letters.join(" "))
    }
}

/// Bitset kernel: `result[x]` has bit `y` iff letters `x` and `y` alternate.
///
/// `recent[c]` holds the letters `d` whose last occurrence precedes the last
/// occurrence of `c`; seeing `c` again while `d` is in that set produces `cc`
/// in the restriction to `{c, d}`.
pub(crate) fn alternation_masks(word: &[usize], n: usize) -> Vec<u64> {
    let all = crate::graph::low_mask(n);
    let mut seen = 0u64;
    let mut recent = vec![0u64; n];
    let mut broken = vec![0u64; n];
    for &c in word {
        if seen & bit(c) != 0 {
            let hit = recent[c];
            broken[c] |= hit;
            for d in bits(hit) {
                broken[d] |= bit(c);
            }
        }
        seen |= bit(c);
        recent[c] = all & !bit(c);
        for d in bits(all & !bit(c)) {
            recent[d] &= !bit(c);
        }
    }
    (0..n)
        .map(|x| if seen & bit(x) == 0 { 0 } else { seen & !broken[x] & !bit(x) })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub x: String,
    pub y: String,
    pub restriction: String,
    /// Whether `x` and `y` should alternate (they are adjacent).
    pub expected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AlternationNeighborhood {
    pub alternating: Vec<String>,
    pub gap_singletons: Vec<Vec<String>>,
}
