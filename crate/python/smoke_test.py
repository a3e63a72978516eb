"""Smoke test for the `dsr` extension module.

Build and install it first, e.g. `pip install --no-build-isolation crates/python`.
"""

import dsr


def check_graph_basics():
    c6 = dsr.CircularArcModel.ring(6)
    g = c6.graph()
    assert g.vertex_count == 6
    assert len(g.edges()) == 6
    assert g.is_dominating([0, 3])
    assert not g.is_dominating([0, 1])
    assert dsr.apply_slide(g, [0, 3], 0, 1) == [1, 3]
    # sliding 0 to 1 leaves vertex 5 undominated
    assert dsr.validate_sequence(g, [0, 3], [(0, 1)]) is not None
    assert dsr.validate_sequence(g, [0, 3], []) is None
    parsed = dsr.Graph.parse(str(g))
    assert parsed.edges() == g.edges()


def check_carc():
    c6 = dsr.CircularArcModel.ring(6)
    assert dsr.decide_carc(c6, [0, 3], [0, 3])
    assert not dsr.decide_carc(c6, [0, 3], [1, 4])
    assert dsr.reconfig_bfs(c6.graph(), [0, 3], [1, 4]) is None

    hub = dsr.CircularArcModel(12, [None, (0, 2), (3, 5), (6, 8), (9, 11)])
    ok, case, moves = dsr.solve_carc(hub, [0, 1], [0, 3], witness=True)
    assert ok and case == "full-circle"
    assert dsr.validate_sequence(hub.graph(), [0, 1], moves) is None

    try:
        dsr.reconfig_bfs(c6.graph(), [0, 3], [0, 3], cap=1)
    except dsr.ResourceLimitError:
        pass
    else:
        raise AssertionError("cap was not enforced")


def check_reduction():
    f = dsr.Formula(2, [[1, 2], [1, -2], [1, 2], [1, -2]])
    red = dsr.Reduction(f, pending_count=3)
    assert red.verify() == []
    a, b = [True, True], [True, False]
    start = red.dominating_set(a)
    assert len(start) == red.k
    moves = red.flip_sequence(a, 1, False)
    assert dsr.validate_sequence(red.graph(), start, moves) is None
    assert red.extract_assignment(red.dominating_set(b)) == b
    assert red.label(red.junction) == "J"
    assert red.lookup("J") == red.junction

    flips = dsr.satr_bfs(f, a, b)
    assert flips == [1]
    begin, seq = red.simulate_flips(a, flips)
    assert dsr.validate_sequence(red.graph(), begin, seq) is None

    try:
        red.flip_sequence(a, 0, False)
    except dsr.DsrError as e:
        assert "falsifies" in str(e)
    else:
        raise AssertionError("illegal flip accepted")


def main():
    check_graph_basics()
    check_carc()
    check_reduction()
    print("smoke test passed")


if __name__ == "__main__":
    main()
