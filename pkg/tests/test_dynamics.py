import json
import random

import pytest

from hdflow.dynamics import (
    decompose,
    export_graph,
    functional_graph,
    load_graph_json,
    orbit,
    periodic_points,
)
from hdflow.errors import FieldTooLargeError
from hdflow.ff import INF, FieldCtx, node_name
from hdflow.selfmap import SelfMapCtx


@pytest.fixture(scope="module")
def graphs(f81):
    return {lam: functional_graph(SelfMapCtx(f81, f81(lam))) for lam in (5, 6, 11)}


def test_decompose_small_hand_example():
    # 0 -> 1 -> 2 -> 1, 3 -> 3, 4 -> 0
    cycles, tails = decompose([1, 2, 1, 3, 0])
    assert cycles == [[3], [1, 2]]
    assert tails == [1, 0, 0, 0, 2]


def test_graph_invariants(graphs):
    for g in graphs.values():
        n = g.q + 1
        assert len(g.succ) == n
        on_cycle = {v for c in g.cycles for v in c}
        assert len(on_cycle) + sum(1 for t in g.tails if t > 0) == n
        for v in range(n):
            # walking tails[v] steps lands on a cycle, one step fewer does not
            w = v
            for _ in range(g.tails[v]):
                w = g.succ[w]
            assert w in on_cycle
            if g.tails[v]:
                assert v not in on_cycle


def test_cycle_periods_are_exact(graphs):
    for g in graphs.values():
        for c in g.cycles:
            n = len(c)
            for d in range(1, n + 1):
                if n % d:
                    continue
                w = c[0]
                for _ in range(d):
                    w = g.succ[w]
                assert (w == c[0]) == (d == n)
            assert c[0] == min(c)


def test_orbit_agrees_with_graph(graphs, f81):
    rng = random.Random(0)
    for lam, g in graphs.items():
        sm = SelfMapCtx(f81, f81(lam))
        for _ in range(100):
            i = rng.randrange(82)
            start = INF if i == 81 else f81(i)
            tail, cycle = orbit(sm, start)
            assert len(tail) == g.tails[g.node(start)]
            names = [node_name(x) for x in cycle]
            assert names in g.cycle_names()


def test_orbit_examples(f81):
    sm11 = SelfMapCtx(f81, f81(11))
    tail, cycle = orbit(sm11, f81(47))
    assert [x.n for x in tail] == [47] and [x.n for x in cycle] == [15, 31]
    tail, cycle = orbit(SelfMapCtx(f81, f81(6)), f81(6))
    assert tail == [] and [x.n for x in cycle] == [6]
    assert orbit(sm11, INF) == ([], [INF])


def test_periodic_points(graphs):
    per6 = dict(periodic_points(graphs[6]))
    assert per6["6"] == 1 and per6["65"] == 1
    assert {1, 2, 8} <= set(dict(periodic_points(graphs[11])).values())


def test_frobenius_squared_permutes_everything():
    F9 = FieldCtx(3, 2)
    g = functional_graph(SelfMapCtx(F9, F9(2)))
    assert all(t == 0 for t in g.tails)


def test_exports(graphs):
    g = graphs[6]
    blob = export_graph(g, "json")
    assert load_graph_json(blob) == g
    assert blob == export_graph(g, "json")
    doc = json.loads(blob)
    assert doc["edges"]["27"] == "6" and doc["modulus"] == [2, 0, 1, 0, 1]
    assert {"period": 1, "nodes": ["6"]} in doc["cycles"]
    dot = export_graph(g, "dot").decode()
    assert '"27" -> "6";' in dot
    assert '"65" [label="65 (period 1)"' in dot
    with pytest.raises(ValueError):
        export_graph(g, "png")


def test_parallel_build_is_identical(graphs, f81):
    assert functional_graph(SelfMapCtx(f81, f81(11)), jobs=3) == graphs[11]


def test_node_bound(monkeypatch, f81):
    monkeypatch.setenv("HDFLOW_MAX_NODES", "50")
    with pytest.raises(FieldTooLargeError):
        functional_graph(SelfMapCtx(f81, f81(6)))
