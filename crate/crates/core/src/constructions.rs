//! Explicit representing words for complements of paths, even cycles and
//! generalized crowns, and for co-bipartite graphs with one clique of size 2 or 3.
//!
//! Each word builder has a matching graph builder so callers can verify the
//! pair with [`Word::represents`].

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    cobipartite_from_bipartite, cycle_bipartite, generalized_crown, path_bipartite, unprimed, CoBipartitePartition,
    GeneralizedCrownParams, Graph,
};
use crate::words::Word;

fn x(i: usize) -> String {
    i.to_string()
}

fn y(i: usize) -> String {
    format!("{i}'")
}

/// `12 1'3 2'... n(n-1)' n' · 1'1 2'2 ... n'n`; for `even == false` every
/// `n'` is deleted, giving a word for the complement of `P_{2n-1}`.
pub fn word_complement_path(n: usize, even: bool) -> Result<Word> {
    if n == 0 {
        return Err(Error::InvalidParam("path needs n >= 1".into()));
    }
    let mut first = vec![x(1)];
    for i in 2..=n {
        first.push(x(i));
        first.push(y(i - 1));
    }
    first.push(y(n));
    let second = (1..=n).flat_map(|i| [y(i), x(i)]);
    let mut letters: Vec<String> = first.into_iter().chain(second).collect();
    if !even {
        let last = y(n);
        letters.retain(|l| *l != last);
    }
    Ok(Word::new(letters))
}

/// Complement of `P_{2n}` (`even`) or of `P_{2n-1}` (the even one minus `n'`).
pub fn complement_path_graph(n: usize, even: bool) -> Result<(Graph, CoBipartitePartition)> {
    let (g, part) = cobipartite_from_bipartite(&path_bipartite(n)?)?;
    if even {
        return Ok((g, part));
    }
    let last = y(n);
    let g = g.remove_vertex(g.require(&last)?);
    let clique_b: Vec<&String> = part.clique_b.iter().filter(|l| **l != last).collect();
    if clique_b.is_empty() {
        // n = 1: a single vertex is left
        return Ok((g, CoBipartitePartition::new(&part.clique_a, &[] as &[String])));
    }
    Ok((g, CoBipartitePartition::new(&part.clique_a.iter().collect::<Vec<_>>(), &clique_b)))
}

/// Word for the complement of `C_{2n}`: take the path word `w`, form `π(w)w`,
/// then swap the first `n'` with the second `1`.
pub fn word_complement_even_cycle(n: usize) -> Result<Word> {
    if n < 2 {
        return Err(Error::InvalidParam("even cycle needs n >= 2".into()));
    }
    let w1 = word_complement_path(n, true)?.prepend_initial();
    let mut letters = w1.letters().to_vec();
    let last = y(n);
    let first_last = letters
        .iter()
        .position(|l| *l == last)
        .ok_or_else(|| Error::InvalidParam("missing n'".into()))?;
    let second_one = letters
        .iter()
        .enumerate()
        .filter(|(_, l)| *l == "1")
        .map(|(p, _)| p)
        .nth(1)
        .ok_or_else(|| Error::InvalidParam("missing second 1".into()))?;
    // π(w) ends with n' and the next letter is the second 1
    assert_eq!(first_last + 1, second_one, "swap positions must be adjacent in π(w)w");
    letters.swap(first_last, second_one);
    Ok(Word::new(letters))
}

pub fn complement_cycle_graph(n: usize) -> Result<(Graph, CoBipartitePartition)> {
    cobipartite_from_bipartite(&cycle_bipartite(n)?)
}

/// `h1(V1) h2(V2) h3(V1) h2(V2) h4(V3) h5(V4)` with `h1(x) = x`,
/// `h2(x) = x'(n-k+x)`, `h3(x) = (k+x)'x`, `h4(x) = x'`, `h5(x) = xx'` and
/// `V1 = 1..n-k`, `V2 = 1..k`, `V3 = k+1..n`, `V4 = 1..n`.
pub fn word_generalized_crown(params: GeneralizedCrownParams) -> Word {
    let (n, k) = (params.n(), params.k());
    let v1 = 1..=n - k;
    let v2 = 1..=k;
    let v3 = k + 1..=n;
    let v4 = 1..=n;
    let h2 = |i: usize| [y(i), x(n - k + i)];
    let mut letters: Vec<String> = Vec::with_capacity(6 * n);
    letters.extend(v1.clone().map(x));
    letters.extend(v2.clone().flat_map(h2));
    letters.extend(v1.flat_map(|i| [y(k + i), x(i)]));
    letters.extend(v2.flat_map(h2));
    letters.extend(v3.map(y));
    letters.extend(v4.flat_map(|i| [x(i), y(i)]));
    Word::new(letters)
}

pub fn complement_crown_graph(params: GeneralizedCrownParams) -> Result<(Graph, CoBipartitePartition)> {
    cobipartite_from_bipartite(&generalized_crown(params)?)
}

/// Cross-neighbourhood class of a `K_m` vertex relative to the fixed small
/// clique `1..K`: `adjacent[i]` says whether it is joined to vertex `i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NeighborClass<const K: usize> {
    pub adjacent: [bool; K],
}

impl<const K: usize> NeighborClass<K> {
    pub fn new(adjacent: [bool; K]) -> Self {
        NeighborClass { adjacent }
    }

    /// Every class for this `K`, in mask order.
    pub fn all() -> Vec<Self> {
        (0..1usize << K)
            .map(|m| NeighborClass {
                adjacent: std::array::from_fn(|i| m & (1 << i) != 0),
            })
            .collect()
    }
}

/// Tokens look like `N12b3`: each digit optionally followed by `b` (barred,
/// i.e. not adjacent).
impl<const K: usize> FromStr for NeighborClass<K> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParam(format!("bad neighbourhood class `{s}`"));
        let rest = s.strip_prefix('N').ok_or_else(bad)?;
        let mut adjacent = [false; K];
        let mut chars = rest.chars().peekable();
        for (i, slot) in adjacent.iter_mut().enumerate() {
            let d = chars.next().ok_or_else(bad)?;
            if d.to_digit(10) != Some(i as u32 + 1) {
                return Err(bad());
            }
            *slot = chars.next_if_eq(&'b').is_none();
        }
        if chars.next().is_some() {
            return Err(bad());
        }
        Ok(NeighborClass { adjacent })
    }
}

impl<const K: usize> fmt::Display for NeighborClass<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("N")?;
        for (i, a) in self.adjacent.iter().enumerate() {
            write!(f, "{}{}", i + 1, if *a { "" } else { "b" })?;
        }
        Ok(())
    }
}

/// Assignment of every `K_m` vertex to a neighbourhood class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodProfile<const K: usize> {
    entries: Vec<(String, NeighborClass<K>)>,
}

pub type NeighborhoodProfile2 = NeighborhoodProfile<2>;
pub type NeighborhoodProfile3 = NeighborhoodProfile<3>;

impl<const K: usize> NeighborhoodProfile<K> {
    /// Entries are sorted by label; labels must be distinct and must not
    /// collide with the small clique `1..K`.
    pub fn new(entries: impl IntoIterator<Item = (String, NeighborClass<K>)>) -> Result<Self> {
        let mut entries: Vec<(String, NeighborClass<K>)> = entries.into_iter().collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateLabel(w[0].0.clone()));
        }
        let small = unprimed(K);
        if let Some((l, _)) = entries.iter().find(|(l, _)| small.contains(l)) {
            return Err(Error::InvalidParam(format!("label `{l}` is reserved for the small clique")));
        }
        Ok(NeighborhoodProfile { entries })
    }

    /// Parses `label:class,label:class,...`; the empty string is the empty profile.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (label, class) = item
                .split_once(':')
                .ok_or_else(|| Error::InvalidParam(format!("expected label:class, got `{item}`")))?;
            entries.push((label.trim().to_string(), class.trim().parse()?));
        }
        NeighborhoodProfile::new(entries)
    }

    pub fn entries(&self) -> &[(String, NeighborClass<K>)] {
        &self.entries
    }

    fn members(&self, class: NeighborClass<K>) -> impl Iterator<Item = String> + '_ {
        self.entries.iter().filter(move |(_, c)| *c == class).map(|(l, _)| l.clone())
    }

    /// Co-bipartite graph: vertices `1..K` then the profile labels; both sides
    /// are cliques and cross edges follow the classes.
    pub fn graph(&self) -> Result<(Graph, CoBipartitePartition)> {
        let small = unprimed(K);
        let big: Vec<String> = self.entries.iter().map(|(l, _)| l.clone()).collect();
        let labels: Vec<&String> = small.iter().chain(&big).collect();
        let mut edges = Vec::new();
        for i in 0..labels.len() {
            for j in i + 1..labels.len() {
                let same_side = (i < K) == (j < K);
                if same_side || self.entries[j - K].1.adjacent[i] {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::from_index_edges(&labels, &edges)?;
        Ok((g, CoBipartitePartition::new(&small, &big)))
    }

    fn expand(&self, blocks: &[Block<K>]) -> Word {
        Word::new(blocks.iter().flat_map(|b| -> Vec<String> {
            match b {
                Block::Small(i) => vec![x(*i)],
                Block::Class(c) => self.members(*c).collect(),
            }
        }))
    }
}

impl<const K: usize> fmt::Display for NeighborhoodProfile<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.entries.iter().map(|(l, c)| format!("{l}:{c}")).collect();
        f.write_str(&items.join(","))
    }
}

enum Block<const K: usize> {
    Small(usize),
    Class(NeighborClass<K>),
}

fn c2(a: bool, b: bool) -> Block<2> {
    Block::Class(NeighborClass::new([a, b]))
}

fn c3(a: bool, b: bool, c: bool) -> Block<3> {
    Block::Class(NeighborClass::new([a, b, c]))
}

/// `N12 1 N1̄2 2 N1̄2̄ N12̄ N12 N1̄2 N1̄2̄ 1 N12̄ 2`
pub fn word_cobip_k2(profile: &NeighborhoodProfile2) -> Word {
    use Block::Small;
    let (t, f) = (true, false);
    let blocks = [
        c2(t, t),
        Small(1),
        c2(f, t),
        Small(2),
        c2(f, f),
        c2(t, f),
        c2(t, t),
        c2(f, t),
        c2(f, f),
        Small(1),
        c2(t, f),
        Small(2),
    ];
    profile.expand(&blocks)
}

/// Block word for clique size 3; profiles with a vertex adjacent to all of
/// `1, 2, 3` or to none of them are rejected.
pub fn word_cobip_k3(profile: &NeighborhoodProfile3) -> Result<Word> {
    if let Some((l, c)) = profile
        .entries
        .iter()
        .find(|(_, c)| c.adjacent.iter().all(|&a| a) || c.adjacent.iter().all(|&a| !a))
    {
        return Err(Error::InvalidParam(format!("class {c} of `{l}` is not supported")));
    }
    use Block::Small;
    let (t, f) = (true, false);
    let n1b3 = || c3(t, f, t); // N1 2̄ 3
    let n1 = || c3(t, f, f); // N1 2̄ 3̄
    let n12 = || c3(t, t, f); // N1 2 3̄
    let n2 = || c3(f, t, f); // N1̄ 2 3̄
    let n23 = || c3(f, t, t); // N1̄ 2 3
    let n3 = || c3(f, f, t); // N1̄ 2̄ 3
    let blocks = [
        Small(1),
        n1b3(),
        Small(2),
        n1(),
        n12(),
        Small(3),
        n2(),
        Small(1),
        n23(),
        Small(2),
        n3(),
        n1b3(),
        Small(3),
        n1(),
        n12(),
        Small(1),
        n2(),
        n23(),
        n3(),
        n1b3(),
        n1(),
        Small(2),
        n12(),
        n2(),
        Small(3),
        n23(),
        n3(),
    ];
    Ok(profile.expand(&blocks))
}

/// Family instance for the CLI and the catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    ComplementPath { n: usize, even: bool },
    ComplementCycle { n: usize },
    Crown { n: usize, k: usize },
    CobipK2 { profile: String },
    CobipK3 { profile: String },
}

/// A constructed word together with the graph it is claimed to represent.
#[derive(Clone, Debug)]
pub struct Construction {
    pub word: Word,
    pub graph: Graph,
    pub partition: CoBipartitePartition,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::ComplementPath { .. } => "complement-path",
            Family::ComplementCycle { .. } => "complement-cycle",
            Family::Crown { .. } => "crown",
            Family::CobipK2 { .. } => "cobip-k2",
            Family::CobipK3 { .. } => "cobip-k3",
        }
    }

    pub fn build(&self) -> Result<Construction> {
        let (word, (graph, partition)) = match self {
            Family::ComplementPath { n, even } => {
                (word_complement_path(*n, *even)?, complement_path_graph(*n, *even)?)
            }
            Family::ComplementCycle { n } => (word_complement_even_cycle(*n)?, complement_cycle_graph(*n)?),
            Family::Crown { n, k } => {
                let p = GeneralizedCrownParams::new(*n, *k)?;
                (word_generalized_crown(p), complement_crown_graph(p)?)
            }
            Family::CobipK2 { profile } => {
                let p = NeighborhoodProfile2::parse(profile)?;
                (word_cobip_k2(&p), p.graph()?)
            }
            Family::CobipK3 { profile } => {
                let p = NeighborhoodProfile3::parse(profile)?;
                (word_cobip_k3(&p)?, p.graph()?)
            }
        };
        Ok(Construction { word, graph, partition })
    }
}
