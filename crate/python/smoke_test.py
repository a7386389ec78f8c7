"""Smoke test for the wordrep_py extension.

Build and install first:  pip install ./crates/py   (or: maturin develop -m crates/py/Cargo.toml)
"""

import wordrep_py as wr


def main():
    # the word 1 2 1' 2' 1' 1 2' 2 represents co-P4
    g = wr.Graph(["1", "2", "1'", "2'"], [("1", "2"), ("1'", "2'"), ("1", "2'")])
    w = wr.Word("1 2 1' 2' 1' 1 2' 2")
    assert w.represents(g)
    assert w.represented_graph() == g
    assert w.prepend_initial().represented_graph() == g
    assert wr.Word("1 1 2 2").violations(wr.Graph(["1", "2"], [("1", "2")])) == [("1", "2", True)]

    word, graph, (a, b) = wr.construct("crown", n=3, k=0)
    assert word.represents(graph) and word.uniformity() == 3
    assert len(a) == len(b) == 3
    assert wr.representation_number(graph) == 3
    assert wr.transitive_orientation(graph) is None
    assert wr.odd_walk_witness(graph) is not None

    t2, part = wr.witness("T2bar")
    assert len(t2) == 7 and len(t2.edges()) == 15
    assert not wr.is_word_representable(t2)

    t1, _ = wr.witness("T1bar")
    arcs = wr.semi_transitive_orientation(t1)
    assert arcs is not None and wr.is_semi_transitive(t1, arcs)

    g1, part = wr.witness("G1bar(3)")
    assert wr.semi_transitive_orientation(g1) is None

    word, graph, part = wr.construct("cobip-k3", profile="a:N1b23,b:N12b3")
    assert word.represents(graph)
    arcs = wr.semi_transitive_orientation(graph)
    report = wr.cobip_report(graph, arcs, part)
    assert report["semi_transitive"] and report["failed_stage"] is None

    text = graph.to_text(part)
    back, back_part = wr.Graph.parse(text)
    assert back == graph and back_part == part

    try:
        wr.construct("crown", n=3, k=3)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

    print("smoke test passed")


if __name__ == "__main__":
    main()
