//! Python bindings. Orientations cross the boundary as lists of
//! `(tail, head)` label pairs; partitions as `(clique_a, clique_b)`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use wordrep::cobip::is_semi_transitive_cobip;
use wordrep::constructions::Family;
use wordrep::graph::{named_witness, parse_graph, write_graph, NamedWitness};
use wordrep::orientation::{self, DEFAULT_VERTEX_CAP};
use wordrep::{CoBipartitePartition, Orientation};

type Arcs = Vec<(String, String)>;
type Partition = (Vec<String>, Vec<String>);

fn err(e: wordrep::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn split(p: CoBipartitePartition) -> Partition {
    (p.clique_a, p.clique_b)
}

#[pyclass(name = "Graph", module = "wordrep_py", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyGraph {
    inner: wordrep::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (labels, edges = Vec::new()))]
    fn new(labels: Vec<String>, edges: Arcs) -> PyResult<Self> {
        let inner = wordrep::Graph::from_edges(&labels, &edges).map_err(err)?;
        Ok(PyGraph { inner })
    }

    /// Parses the text format; returns `(graph, partition or None)`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<(PyGraph, Option<Partition>)> {
        let (inner, p) = parse_graph(text).map_err(err)?;
        Ok((PyGraph { inner }, p.map(split)))
    }

    #[pyo3(signature = (partition = None))]
    fn to_text(&self, partition: Option<Partition>) -> String {
        let p = partition.map(|(a, b)| CoBipartitePartition::new(&a, &b));
        write_graph(&self.inner, p.as_ref())
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn edges(&self) -> Arcs {
        let g = &self.inner;
        g.edges().into_iter().map(|(u, v)| (g.label(u).to_string(), g.label(v).to_string())).collect()
    }

    fn has_edge(&self, u: &str, v: &str) -> PyResult<bool> {
        let g = &self.inner;
        Ok(g.has_edge(g.require(u).map_err(err)?, g.require(v).map_err(err)?))
    }

    fn complement(&self) -> PyGraph {
        PyGraph {
            inner: self.inner.complement(),
        }
    }

    /// Some partition into two cliques, if one exists.
    fn cobipartite_partition(&self) -> Option<Partition> {
        CoBipartitePartition::detect(&self.inner).map(split)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Graph({} vertices, {} edges)", self.inner.len(), self.inner.edge_count())
    }
}

#[pyclass(name = "Word", module = "wordrep_py", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyWord {
    inner: wordrep::Word,
}

#[pymethods]
impl PyWord {
    /// Whitespace-separated letters.
    #[new]
    fn new(text: &str) -> Self {
        PyWord {
            inner: wordrep::Word::parse(text),
        }
    }

    #[getter]
    fn letters(&self) -> Vec<String> {
        self.inner.letters().to_vec()
    }

    fn represents(&self, graph: &PyGraph) -> PyResult<bool> {
        Ok(self.inner.represents(&graph.inner).map_err(err)?.ok)
    }

    /// `(x, y, expected_edge)` for each pair where word and graph disagree.
    fn violations(&self, graph: &PyGraph) -> PyResult<Vec<(String, String, bool)>> {
        let report = self.inner.represents(&graph.inner).map_err(err)?;
        Ok(report.violations.into_iter().map(|v| (v.x, v.y, v.expected)).collect())
    }

    fn represented_graph(&self) -> PyResult<PyGraph> {
        Ok(PyGraph {
            inner: self.inner.represented_graph().map_err(err)?,
        })
    }

    fn uniformity(&self) -> Option<usize> {
        self.inner.uniformity()
    }

    fn prepend_initial(&self) -> PyWord {
        PyWord {
            inner: self.inner.prepend_initial(),
        }
    }

    fn rotate_uniform(&self, cut: usize) -> PyResult<PyWord> {
        Ok(PyWord {
            inner: self.inner.rotate_uniform(cut).map_err(err)?,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.letters().join(" ")
    }

    fn __repr__(&self) -> String {
        format!("Word('{}')", self.inner.letters().join(" "))
    }
}

/// Builds a family member; returns `(word, graph, partition)`.
#[pyfunction]
#[pyo3(signature = (family, n = None, k = None, odd = false, profile = None))]
fn construct(
    family: &str,
    n: Option<usize>,
    k: Option<usize>,
    odd: bool,
    profile: Option<String>,
) -> PyResult<(PyWord, PyGraph, Partition)> {
    let need_n = || n.ok_or_else(|| PyValueError::new_err(format!("{family} needs n")));
    let fam = match family {
        "complement-path" => Family::ComplementPath { n: need_n()?, even: !odd },
        "complement-cycle" => Family::ComplementCycle { n: need_n()? },
        "crown" => Family::Crown {
            n: need_n()?,
            k: k.ok_or_else(|| PyValueError::new_err("crown needs k"))?,
        },
        "cobip-k2" => Family::CobipK2 {
            profile: profile.unwrap_or_default(),
        },
        "cobip-k3" => Family::CobipK3 {
            profile: profile.unwrap_or_default(),
        },
        other => return Err(PyValueError::new_err(format!("unknown family `{other}`"))),
    };
    let c = fam.build().map_err(err)?;
    Ok((PyWord { inner: c.word }, PyGraph { inner: c.graph }, split(c.partition)))
}

/// `T1bar`, `T2bar` or `G1bar(n)`; returns `(graph, partition)`.
#[pyfunction]
fn witness(name: &str) -> PyResult<(PyGraph, Partition)> {
    let which = match name {
        "T1bar" => NamedWitness::T1Bar,
        "T2bar" => NamedWitness::T2Bar,
        _ => match name.strip_prefix("G1bar(").and_then(|s| s.strip_suffix(')')).and_then(|s| s.parse().ok()) {
            Some(n) => NamedWitness::G1Bar(n),
            None => return Err(PyValueError::new_err(format!("unknown witness `{name}`"))),
        },
    };
    let (inner, p) = named_witness(which).map_err(err)?;
    Ok((PyGraph { inner }, split(p)))
}

#[pyfunction]
#[pyo3(signature = (graph, max_vertices = DEFAULT_VERTEX_CAP))]
fn is_word_representable(graph: &PyGraph, max_vertices: usize) -> PyResult<bool> {
    orientation::is_word_representable_capped(&graph.inner, max_vertices).map_err(err)
}

/// First semi-transitive orientation found, or `None`.
#[pyfunction]
#[pyo3(signature = (graph, max_vertices = DEFAULT_VERTEX_CAP))]
fn semi_transitive_orientation(graph: &PyGraph, max_vertices: usize) -> PyResult<Option<Arcs>> {
    let o = orientation::find_semi_transitive_orientation_capped(&graph.inner, max_vertices).map_err(err)?;
    Ok(o.map(|o| o.labeled_arcs()))
}

/// A transitive orientation, or `None` if the graph is not a comparability graph.
#[pyfunction]
#[pyo3(signature = (graph, max_vertices = DEFAULT_VERTEX_CAP))]
fn transitive_orientation(graph: &PyGraph, max_vertices: usize) -> PyResult<Option<Arcs>> {
    let o = orientation::is_comparability_capped(&graph.inner, max_vertices).map_err(err)?;
    Ok(o.map(|o| o.labeled_arcs()))
}

#[pyfunction]
#[pyo3(signature = (graph, max_len = 9))]
fn odd_walk_witness(graph: &PyGraph, max_len: usize) -> PyResult<Option<Vec<String>>> {
    let w = orientation::find_noncomparability_witness(&graph.inner, max_len).map_err(err)?;
    Ok(w.map(|w| w.vertices))
}

#[pyfunction]
fn is_semi_transitive(graph: &PyGraph, arcs: Arcs) -> PyResult<bool> {
    let o = Orientation::from_labeled_arcs(&graph.inner, &arcs).map_err(err)?;
    Ok(o.is_semi_transitive())
}

/// Smallest `k <= max_k` with a `k`-uniform representant, or `None`.
#[pyfunction]
#[pyo3(signature = (graph, max_k = 3))]
fn representation_number(graph: &PyGraph, max_k: usize) -> PyResult<Option<usize>> {
    orientation::bounded_representation_number(&graph.inner, max_k).map_err(err)
}

#[pyfunction]
fn uniform_word(graph: &PyGraph, k: usize) -> PyResult<Option<PyWord>> {
    let w = orientation::find_uniform_word(&graph.inner, k).map_err(err)?;
    Ok(w.map(|inner| PyWord { inner }))
}

/// Structural check of an acyclic orientation of a co-bipartite graph.
/// Returns `{"semi_transitive", "failed_stage", "details"}`.
#[pyfunction]
fn cobip_report<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    arcs: Arcs,
    partition: Partition,
) -> PyResult<Bound<'py, PyDict>> {
    let o = Orientation::from_labeled_arcs(&graph.inner, &arcs).map_err(err)?;
    let p = CoBipartitePartition::new(&partition.0, &partition.1);
    let report = is_semi_transitive_cobip(&o, &p).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("semi_transitive", report.semi_transitive)?;
    out.set_item("failed_stage", report.failed_stage.map(|s| s.as_str()))?;
    let details: Vec<(&str, Vec<String>, String)> =
        report.details.into_iter().map(|f| (f.stage.as_str(), f.vertices, f.detail)).collect();
    out.set_item("details", details)?;
    Ok(out)
}

#[pymodule]
fn wordrep_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyWord>()?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(witness, m)?)?;
    m.add_function(wrap_pyfunction!(is_word_representable, m)?)?;
    m.add_function(wrap_pyfunction!(semi_transitive_orientation, m)?)?;
    m.add_function(wrap_pyfunction!(transitive_orientation, m)?)?;
    m.add_function(wrap_pyfunction!(odd_walk_witness, m)?)?;
    m.add_function(wrap_pyfunction!(is_semi_transitive, m)?)?;
    m.add_function(wrap_pyfunction!(representation_number, m)?)?;
    m.add_function(wrap_pyfunction!(uniform_word, m)?)?;
    m.add_function(wrap_pyfunction!(cobip_report, m)?)?;
    Ok(())
}
