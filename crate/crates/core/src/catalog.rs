//! Named graph instances: the non-representable witnesses and the small
//! members of each constructed family, in a fixed order.

use std::ops::RangeInclusive;

use serde_json::{json, Value};

use crate::constructions::Family;
use crate::error::{Error, Result};
use crate::graph::{named_witness, CoBipartitePartition, Graph, NamedWitness};
use crate::words::Word;

pub const CATALOG_FAMILIES: [&str; 4] = ["witness", "complement-path", "complement-cycle", "crown"];

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    /// File-name friendly identifier, e.g. `crown-4-1`.
    pub name: String,
    pub family: &'static str,
    pub params: Value,
    pub graph: Graph,
    pub partition: CoBipartitePartition,
    /// Representing word, for the constructed families.
    pub word: Option<Word>,
}

fn from_family(name: String, family: Family) -> Result<CatalogEntry> {
    let c = family.build()?;
    let mut params = serde_json::to_value(&family).expect("family serializes");
    params.as_object_mut().expect("tagged enum").remove("family");
    Ok(CatalogEntry {
        name,
        family: family.name(),
        params,
        graph: c.graph,
        partition: c.partition,
        word: Some(c.word),
    })
}

/// Catalog entries, optionally restricted to one family; `n` bounds the
/// family parameter (witnesses are fixed: T1bar, T2bar, G1bar(3), G1bar(4)).
pub fn catalog(family: Option<&str>, n: RangeInclusive<usize>) -> Result<Vec<CatalogEntry>> {
    if let Some(f) = family {
        if !CATALOG_FAMILIES.contains(&f) {
            return Err(Error::InvalidParam(format!(
                "unknown catalog family `{f}` (expected one of {})",
                CATALOG_FAMILIES.join(", ")
            )));
        }
    }
    let wanted = |f: &str| family.is_none_or(|x| x == f);
    let mut out = Vec::new();
    if wanted("witness") {
        for w in [NamedWitness::T1Bar, NamedWitness::T2Bar, NamedWitness::G1Bar(3), NamedWitness::G1Bar(4)] {
            let (graph, partition) = named_witness(w)?;
            let (name, params) = match w {
                NamedWitness::G1Bar(k) => (format!("G1bar-{k}"), json!({ "n": k })),
                _ => (w.name(), json!({})),
            };
            out.push(CatalogEntry {
                name,
                family: "witness",
                params,
                graph,
                partition,
                word: None,
            });
        }
    }
    if wanted("complement-path") {
        // the odd path on one vertex has no second clique, so start at 2
        for k in n.clone().filter(|&k| k >= 2) {
            for even in [true, false] {
                let tag = if even { "even" } else { "odd" };
                out.push(from_family(format!("co-path-{tag}-{k}"), Family::ComplementPath { n: k, even })?);
            }
        }
    }
    if wanted("complement-cycle") {
        for k in n.clone().filter(|&k| k >= 2) {
            out.push(from_family(format!("co-cycle-{k}"), Family::ComplementCycle { n: k })?);
        }
    }
    if wanted("crown") {
        for k_n in n.clone().filter(|&k| k >= 1) {
            for k in 0..k_n {
                out.push(from_family(format!("crown-{k_n}-{k}"), Family::Crown { n: k_n, k })?);
            }
        }
    }
    Ok(out)
}
