"""Functional graphs of phi on P^1(F_q), orbits, and periodic points.

Nodes are integer ids: 0..q-1 are the field encodings and q stands for the
point at infinity, so "inf" sorts after every finite node.  Exported artifacts
name nodes by decimal strings and "inf".
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import FieldTooLargeError
from .ff import INF, FieldCtx
from .selfmap import SelfMapCtx, selfmap_eval

DEFAULT_MAX_NODES = 10**6


def max_nodes() -> int:
    env = os.environ.get("HDFLOW_MAX_NODES")
    return int(env) if env else DEFAULT_MAX_NODES


def _to_id(ctx: FieldCtx, pt) -> int:
    return ctx.q if pt is INF else pt.n


def _from_id(ctx: FieldCtx, i: int):
    return INF if i == ctx.q else ctx(i)


def _name(q: int, i: int) -> str:
    return "inf" if i == q else str(i)


def _parse(q: int, s: str) -> int:
    return q if s == "inf" else int(s)


def _rotate_min(cycle: list[int]) -> list[int]:
    k = cycle.index(min(cycle))
    return cycle[k:] + cycle[:k]


@dataclass
class OrbitGraph:
    ctx: FieldCtx
    lam: int
    succ: list[int]
    cycles: list[list[int]] = field(default_factory=list)
    tails: list[int] = field(default_factory=list)

    @classmethod
    def from_successors(cls, ctx: FieldCtx, lam: int, succ: list[int]) -> "OrbitGraph":
        cycles, tails = decompose(succ)
        return cls(ctx, lam, list(succ), cycles, tails)

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def edges(self) -> dict[str, str]:
        q = self.q
        return {_name(q, i): _name(q, j) for i, j in enumerate(self.succ)}

    def name(self, i: int) -> str:
        return _name(self.q, i)

    def node(self, token) -> int:
        """Node id from an int, a decimal string, 'inf', or a field point."""
        if token is INF:
            return self.q
        if isinstance(token, str):
            return _parse(self.q, token)
        return int(token)

    def image(self, token) -> str:
        return self.name(self.succ[self.node(token)])

    def period_of(self) -> dict[int, int]:
        return {v: len(c) for c in self.cycles for v in c}

    def cycle_names(self) -> list[list[str]]:
        return [[self.name(v) for v in c] for c in self.cycles]

    def preimages(self, token) -> list[str]:
        t = self.node(token)
        return [self.name(i) for i, j in enumerate(self.succ) if j == t]


def decompose(succ: list[int]) -> tuple[list[list[int]], list[int]]:
    """Cycles (canonically rotated and sorted) and per-node distance to a cycle."""
    n = len(succ)
    state = [0] * n  # 0 unseen, 1 on the current walk, 2 done
    tails = [-1] * n
    cycles = []
    for start in range(n):
        if state[start]:
            continue
        walk = []
        v = start
        while state[v] == 0:
            state[v] = 1
            walk.append(v)
            v = succ[v]
        path = walk
        if state[v] == 1:
            k = walk.index(v)
            for u in walk[k:]:
                tails[u] = 0
            cycles.append(_rotate_min(walk[k:]))
            path = walk[:k]
        base = tails[v]
        for d, u in enumerate(reversed(path), start=1):
            tails[u] = base + d
        for u in walk:
            state[u] = 2
    cycles.sort(key=lambda c: (len(c), c[0]))
    return cycles, tails


def _eval_chunk(args) -> list[int]:
    ctx, lam, ids = args
    sm = SelfMapCtx(ctx, ctx(lam))
    return [_to_id(ctx, selfmap_eval(sm, _from_id(ctx, i))) for i in ids]


def functional_graph(sm: SelfMapCtx, jobs: int = 1, limit: int | None = None) -> OrbitGraph:
    """Evaluate phi once at every point of P^1(F_q) and decompose the resulting graph."""
    ctx = sm.ctx
    q = ctx.q
    limit = max_nodes() if limit is None else limit
    if q > limit:
        raise FieldTooLargeError(f"q = {q} exceeds the node bound {limit} (see HDFLOW_MAX_NODES)")
    ids = list(range(q + 1))
    if jobs <= 1:
        succ = _eval_chunk((ctx, sm.lam.n, ids))
    else:
        size = -(-len(ids) // (4 * jobs))
        chunks = [(ctx, sm.lam.n, ids[k : k + size]) for k in range(0, len(ids), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            succ = [v for part in pool.map(_eval_chunk, chunks) for v in part]
    return OrbitGraph.from_successors(ctx, sm.lam.n, succ)


def orbit(sm: SelfMapCtx, start) -> tuple[list, list]:
    """(tail, cycle) of the forward orbit of ``start`` by Brent's algorithm.

    The cycle is rotated to start at its minimal node, as in ``OrbitGraph``.
    """
    f = sm.__call__
    key = lambda pt: _to_id(sm.ctx, pt)  # noqa: E731
    power = lam = 1
    tortoise, hare = start, f(start)
    while key(tortoise) != key(hare):
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = f(hare)
        lam += 1
    tortoise = hare = start
    for _ in range(lam):
        hare = f(hare)
    tail = []
    while key(tortoise) != key(hare):
        tail.append(tortoise)
        tortoise, hare = f(tortoise), f(hare)
    cycle = [tortoise]
    for _ in range(lam - 1):
        cycle.append(f(cycle[-1]))
    k = min(range(lam), key=lambda i: key(cycle[i]))
    return tail, cycle[k:] + cycle[:k]


def periodic_points(g: OrbitGraph) -> list[tuple[str, int]]:
    """Every cycle node with its exact period, in node order."""
    return [(g.name(v), n) for v, n in sorted(g.period_of().items())]


def export_graph(g: OrbitGraph, fmt: str = "json") -> bytes:
    q = g.q
    if fmt == "json":
        doc = {
            "p": g.ctx.p,
            "f": g.ctx.f,
            "modulus": list(g.ctx.modulus),
            "lambda": g.lam,
            "edges": g.edges,
            "cycles": [{"period": len(c), "nodes": [_name(q, v) for v in c]} for c in g.cycles],
            "tails": {_name(q, i): t for i, t in enumerate(g.tails)},
        }
        return (json.dumps(doc, separators=(",", ":")) + "\n").encode()
    if fmt == "dot":
        period = g.period_of()
        lines = [f'digraph "phi_lambda_{g.lam}" {{']
        for i in range(q + 1):
            nm = _name(q, i)
            if i in period:
                lines.append(f'  "{nm}" [label="{nm} (period {period[i]})", shape=doublecircle];')
            else:
                lines.append(f'  "{nm}";')
        for i, j in enumerate(g.succ):
            lines.append(f'  "{_name(q, i)}" -> "{_name(q, j)}";')
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}; expected 'json' or 'dot'")


def load_graph_json(data: bytes | str) -> OrbitGraph:
    doc = json.loads(data)
    ctx = FieldCtx(doc["p"], doc["f"], doc["modulus"])
    q = ctx.q
    succ = [0] * (q + 1)
    for a, b in doc["edges"].items():
        succ[_parse(q, a)] = _parse(q, b)
    cycles = [[_parse(q, s) for s in c["nodes"]] for c in doc["cycles"]]
    tails = [0] * (q + 1)
    for a, t in doc["tails"].items():
        tails[_parse(q, a)] = t
    return OrbitGraph(ctx, doc["lambda"], succ, cycles, tails)
