import math

import pytest

import forestdec as fd


def triangle():
    return fd.Digraph(3, [(0, 1), (1, 2), (2, 0)])


def test_digraph_basics():
    d = triangle()
    assert d.vertex_count == 3
    assert d.arc_count == 3
    assert d.arcs == [(0, 1), (1, 2), (2, 0)]
    assert d.degree(0) == 2 and d.out_degree(0) == 1
    assert d == triangle()
    assert len(d.digest()) == 16


def test_spec():
    s = fd.Spec("LinearForest", 2, 1)
    assert str(s) == "LinearForest(2,1)"
    assert fd.Spec.parse("LinearForest(2,1)") == s
    assert fd.Spec("og", math.inf, 1).k == math.inf
    assert s.is_polynomial
    assert not fd.Spec("LinearForest", 3, 3).is_polynomial
    with pytest.raises(fd.Error):
        fd.Spec("LinearForest", 0, 1)


def test_solve_and_oracle_agree():
    d = triangle()
    for k, l in [(1, 1), (2, 1)]:
        s = fd.Spec("LinearForest", k, l)
        a = fd.solve(d, s)
        b = fd.oracle(d, s)
        assert a["verdict"] == b["verdict"]
        if a["certificate"] is not None:
            assert fd.verify(d, a["certificate"], s)
    assert fd.oracle(d, fd.Spec("LinearForest", 1, 1))["verdict"] == "No"


def test_oracle_budget_and_fixed_arcs():
    d = fd.Digraph(5, [(u, v) for u in range(5) for v in range(u + 1, 5)])
    s = fd.Spec("LinearForest", 3, 3)
    assert fd.oracle(d, s, max_nodes=1)["verdict"] == "BudgetExceeded"
    r = fd.oracle(d, s, fixed={0: 2})
    if r["certificate"] is not None:
        assert r["certificate"][0] == 2
    with pytest.raises(fd.Error) as e:
        fd.solve(d, s)
    assert e.value.code == "UnsupportedSpec"


def test_violation_and_enumerate():
    d = fd.Digraph(4, [(0, 1), (1, 2), (2, 3)])
    s = fd.Spec("LinearForest", 2, 1)
    v = fd.find_violation(d, [1, 1, 1], s)
    assert v["part"] == 1 and sorted(v["component"]) == [0, 1, 2]
    assert fd.find_violation(d, [1, 1, 2], s) is None
    decs, exhausted = fd.enumerate(d, s)
    assert not exhausted
    assert all(fd.verify(d, x, s) for x in decs)
    assert [1, 1, 2] in decs


def test_io_round_trip():
    d = triangle()
    s = fd.Spec("OutGalaxy", 2, 1)
    for fmt in ["json", "edgelist", "dot"]:
        text = fd.dump(d, [1, 2, 1], s, fmt)
        back = fd.load(text, fmt)
        assert back["digraph"] == d
        assert back["labels"] == [1, 2, 1]
        assert back["spec"] == s


def test_reduction_round_trip():
    clauses = [[1, 2, 3], [-1, -2, -3], [1, -2, 3], [-1, 2, -3]]
    red = fd.reduce("3b2sat-bdlfd", clauses, k=3)
    assert red.name == "3b2sat-bdlfd"
    phi = [True, True, False]
    labels = red.encode(phi)
    assert fd.verify(red.instance, labels, red.spec)
    r = fd.oracle(red.instance, red.spec, max_nodes=10_000_000)
    assert r["verdict"] == "Yes"
    back = red.decode(r["certificate"])
    assert all(any((lit > 0) == back[abs(lit) - 1] for lit in c) for c in clauses)
    with pytest.raises(fd.Error):
        fd.reduce("nope", clauses, k=3)


def test_hamiltonicity_reduction():
    k3 = fd.Digraph(3, [(0, 1), (1, 2), (2, 0), (0, 2), (2, 1), (1, 0)])
    red = fd.reduce("hamiltonicity-bdlfd", k3, k=1)
    labels = red.encode_cycle([0, 1, 2])
    assert fd.verify(red.instance, labels, red.spec)
    assert sorted(red.decode_cycle(labels)) == [0, 1, 2]


def test_engines():
    assert fd.solve_2sat(2, [(1, 2), (-1, 2), (1, -2)]) == [True, True]
    assert fd.solve_2sat(1, [(1, 1), (-1, -1)]) is None
    assert len(fd.maximum_matching(4, [(0, 1), (1, 2), (2, 3)])) == 2
    assert fd.matching_covering(3, [(0, 1), (1, 2)], [0, 2]) is None
    assert fd.matching_covering(3, [(0, 1), (1, 2)], [0]) == [0]
