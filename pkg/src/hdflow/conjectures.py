"""Machine checks of the conjectured identities and the dynamics/torsion correspondence.

Every check returns a ``ConjectureReport``; ``verdict == "fails"`` exactly when
``counterexamples`` is nonempty.
"""

from __future__ import annotations

import json
import logging
import math
import random
import time
from dataclasses import asdict, dataclass, field
from functools import lru_cache

from .ecurve import (
    Curve,
    _mul,
    b_last,
    b_matrix,
    b_zero,
    build_B,
    build_B_symbolic,
    gamma_closed,
    gamma_table,
    lift_x,
    point_order,
    x_coord,
)
from .errors import BoundExceededError, UnsupportedModeError
from .ff import INF, FieldCtx, first_irreducible, is_prime, node_name
from .matrix import det, det_field, det_ring, transpose
from .poly import BiPoly
from .selfmap import (
    SelfMapCtx,
    a_matrix,
    a_submatrix,
    build_A,
    build_A_symbolic,
    delta,
    selfmap_eval,
)

log = logging.getLogger(__name__)

SYMBOLIC_MAX_P = 13


@dataclass
class ConjectureReport:
    conjecture: str
    params: dict
    verdict: str
    counterexamples: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def to_dict(self, timing: bool = True) -> dict:
        d = asdict(self)
        if not timing:
            d["stats"].pop("runtime_s", None)
        return d

    def to_json(self, timing: bool = False) -> str:
        """Sorted-key JSON; wall-clock timing is left out unless asked for, so output is reproducible."""
        return json.dumps(self.to_dict(timing), sort_keys=True, separators=(",", ":"))

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"


def _finish(name, params, counterexamples, stats, t0, verdict=None) -> ConjectureReport:
    stats["runtime_s"] = round(time.perf_counter() - t0, 4)
    if verdict is None:
        verdict = "fails" if counterexamples else "holds"
    return ConjectureReport(name, params, verdict, counterexamples, stats)


def _ctx_params(ctx: FieldCtx) -> dict:
    return {"p": ctx.p, "f": ctx.f, "modulus": list(ctx.modulus)}


# --- the constant c ----------------------------------------------------------------------------


@dataclass(frozen=True)
class ConstantC:
    p: int
    value: int


def constant_c(p: int) -> ConstantC:
    """(-1)^m det[1/(m+s-r)]_{r,s=1..m} mod p."""
    if p < 3 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    m = (p - 1) // 2
    F = FieldCtx(p)
    M = [[F(pow(m + s - r, p - 2, p)) for s in range(1, m + 1)] for r in range(1, m + 1)]
    d = det_field(M, F.one).n
    return ConstantC(p, d if m % 2 == 0 else (-d) % p)


# --- var_conj: det A_p = c lam^{m^2} (lam-1)^{m^2} det B_{m+1} -----------------------------


def degree_bounds(p: int) -> tuple[int, int]:
    """(bound in lambda, bound in a) for both sides of the determinant identity."""
    m = (p - 1) // 2
    return m * (2 * p - 1) + m * m + m, (m + 1) * p


def sz_extension_degree(p: int) -> int:
    """Smallest k with p^k > 4 (bound_lambda + bound_a)."""
    bl, ba = degree_bounds(p)
    k = 1
    while p**k <= 4 * (bl + ba):
        k += 1
    return k


def _var_sides_at(p: int, lam, a, c: int):
    """Both sides of the identity at a point (lam, a) of some extension of F_p."""
    m = (p - 1) // 2
    one = lam.ctx.one
    deltas = [None] + [delta(lam, a, n) for n in range(1, p)]
    lhs = det(a_submatrix(a_matrix(deltas, m), m, p), one)
    gammas = {n: gamma_closed(lam, m, n) for n in range(m, 3 * m + 1)}
    B = b_matrix(gammas, a**p, m)
    rhs = det(b_last(B), one) * lam ** (m * m) * (lam - 1) ** (m * m) * c
    return lhs, rhs


def var_sides_symbolic(p: int) -> tuple[BiPoly, BiPoly]:
    m = (p - 1) // 2
    one = BiPoly.const(p, 1)
    lhs = det_ring(a_submatrix(build_A_symbolic(p), m, p), one)
    L = BiPoly.lam(p)
    rhs = det_ring(b_last(build_B_symbolic(p)), one) * L ** (m * m) * (L - 1) ** (m * m)
    return lhs, rhs * constant_c(p).value


def check_var_conj(
    p: int, mode: str = "symbolic", trials: int = 20, seed: int = 0, max_p: int = SYMBOLIC_MAX_P
) -> ConjectureReport:
    t0 = time.perf_counter()
    if p < 3 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    params = {"p": p, "mode": mode}
    bl, ba = degree_bounds(p)
    stats: dict = {"bound_lambda": bl, "bound_a": ba}
    c = constant_c(p).value
    stats["c"] = c
    cex = []
    if mode == "symbolic":
        if p > max_p:
            raise BoundExceededError(f"symbolic mode is limited to p <= {max_p}")
        lhs, rhs = var_sides_symbolic(p)
        stats.update(terms_lhs=len(lhs.to_dict()), deg_lambda=lhs.degree_lam, deg_a=lhs.degree_a)
        if lhs != rhs:
            diff = (lhs - rhs).to_dict()
            first = min(diff)
            cex.append({"monomial": list(first), "coefficient": diff[first]})
    elif mode == "grid":
        if p > max_p:
            raise BoundExceededError(f"grid mode is limited to p <= {max_p}")
        need = max(bl, ba) + 1
        k = 1
        while p**k < need:
            k += 1
        F = FieldCtx(p, k, first_irreducible(p, k))
        lams = [F(i) for i in range(bl + 1)]
        avals = [F(i) for i in range(ba + 1)]
        params["k"] = k
        stats["grid"] = [len(lams), len(avals)]
        for lam in lams:
            for a in avals:
                lhs, rhs = _var_sides_at(p, lam, a, c)
                if lhs != rhs:
                    cex.append({"lambda": lam.n, "a": a.n, "lhs": lhs.n, "rhs": rhs.n})
                    break
            if cex:
                break
    elif mode == "random":
        k = sz_extension_degree(p)
        F = FieldCtx(p, k, first_irreducible(p, k))
        rng = random.Random(seed)
        params.update(k=k, trials=trials, seed=seed)
        samples = []
        for _ in range(trials):
            lam, a = F.random(rng), F.random(rng)
            lhs, rhs = _var_sides_at(p, lam, a, c)
            samples.append([lam.n, a.n])
            if lhs != rhs:
                cex.append({"lambda": lam.n, "a": a.n, "lhs": lhs.n, "rhs": rhs.n})
        per_trial = (bl + ba) / p**k
        stats.update(
            samples=samples,
            per_trial_failure_bound=per_trial,
            failure_bound=per_trial**trials,
            failure_bound_log4=trials * math.log(per_trial, 4),
        )
    else:
        raise UnsupportedModeError(f"var_conj mode must be symbolic, grid or random, not {mode!r}")
    return _finish("var", params, cex, stats, t0)


# --- equ_main: x([p]Q) from B equals phi(a) from A --------------------------------------------


def equ_main_sides(ctx: FieldCtx, lam, a):
    """(1/a^p)(det B_0/det B_{m+1})^2 and (a^p/lam^(p-1))(det A_{m+1}/det A_p)^2, None if undefined."""
    p = ctx.p
    m = (p - 1) // 2
    one = ctx.one
    A = build_A(SelfMapCtx(ctx, lam), a)
    a1 = det(a_submatrix(A, m, m + 1), one)
    ap = det(a_submatrix(A, m, p), one)
    B = build_B(Curve(ctx, lam), a)
    b0 = det(b_zero(B), one)
    b1 = det(b_last(B), one)
    if not ap or not b1:
        return None
    left = (b0 / b1) ** 2 / a**p
    right = a**p / lam ** (p - 1) * (a1 / ap) ** 2
    return left, right


def equ_main_symbolic(p: int) -> bool:
    """Cross-multiplied identity det B_0^2 lam^(p-1) det A_p^2 = a^(2p) det A_{m+1}^2 det B_{m+1}^2."""
    m = (p - 1) // 2
    one = BiPoly.const(p, 1)
    A = build_A_symbolic(p)
    B = build_B_symbolic(p)
    a1 = det_ring(a_submatrix(A, m, m + 1), one)
    ap = det_ring(a_submatrix(A, m, p), one)
    b0 = det_ring(b_zero(B), one)
    b1 = det_ring(b_last(B), one)
    L = BiPoly.lam(p)
    lhs = b0 * b0 * L ** (p - 1) * ap * ap
    rhs = BiPoly.monomial(p, 0, 2 * p) * a1 * a1 * b1 * b1
    return lhs == rhs


def check_equ_main(
    ctx: FieldCtx,
    lam,
    mode: str = "exhaustive",
    samples: int = 100,
    seed: int = 0,
    symbolic: bool | None = None,
) -> ConjectureReport:
    t0 = time.perf_counter()
    p = ctx.p
    params = {**_ctx_params(ctx), "lambda": lam.n, "mode": mode}
    if mode == "exhaustive":
        pts = list(ctx.elements())
    elif mode == "sample":
        rng = random.Random(seed)
        pts = [ctx.random(rng) for _ in range(samples)]
        params.update(samples=samples, seed=seed)
    else:
        raise UnsupportedModeError(f"equ_main mode must be exhaustive or sample, not {mode!r}")
    cex, checked, skipped = [], 0, []
    for a in pts:
        if a == 0 or a == 1 or a == lam:
            continue
        sides = equ_main_sides(ctx, lam, a)
        if sides is None:
            log.info("equ_main: denominator vanishes at a=%d; skipped", a.n)
            skipped.append(a.n)
            continue
        checked += 1
        if sides[0] != sides[1]:
            cex.append({"a": a.n, "lhs": sides[0].n, "rhs": sides[1].n})
    stats = {"checked": checked, "skipped": skipped}
    if symbolic is None:
        symbolic = p <= 7
    if symbolic:
        ok = equ_main_symbolic(p)
        stats["polynomial_identity"] = ok
        if not ok:
            cex.append({"polynomial_identity": False, "p": p})
    return _finish("equ_main", params, cex, stats, t0)


# --- commutativity: phi(x(Q)) = x([p]Q) ------------------------------------------------------


@lru_cache(maxsize=64)
def _curve_over_extension(c: Curve) -> Curve:
    big, emb = c.ctx.quadratic_extension()
    return Curve(big, emb(c.lam))


def _lift(c: Curve, a):
    """lift_x, reusing one extension curve per base curve so its group order is cached."""
    c2, pts = lift_x(c, a)
    if c2 is not c:
        c2 = _curve_over_extension(c)
    return c2, pts


def check_commutativity(
    ctx: FieldCtx, lam, mode: str = "exhaustive", samples: int = 200, seed: int = 0
) -> ConjectureReport:
    """Compare phi(x(Q)) with x([p]Q) over every x in P^1(F_q) and both lifts of each.

    Rational points are those whose y lies in F_q; the rest live on the curve over
    the quadratic extension and are compared after embedding phi(x).
    """
    t0 = time.perf_counter()
    p = ctx.p
    sm = SelfMapCtx(ctx, lam)
    c = Curve(ctx, lam)
    params = {**_ctx_params(ctx), "lambda": lam.n, "mode": mode}
    if mode == "exhaustive":
        xs = list(ctx.elements())
    elif mode == "sample":
        rng = random.Random(seed)
        xs = sorted({ctx.random(rng).n for _ in range(samples)})
        xs = [ctx(n) for n in xs]
        params.update(samples=samples, seed=seed)
    else:
        raise UnsupportedModeError(f"commutativity mode must be exhaustive or sample, not {mode!r}")
    cex = []
    rational = twisted = 0
    # the point at infinity: phi(inf) against [p]O = O
    if selfmap_eval(sm, INF) is not INF:
        cex.append({"x": "inf", "phi": node_name(selfmap_eval(sm, INF)), "xp": "inf"})
    rational += 1
    for a in xs:
        phi = selfmap_eval(sm, a)
        c2, pts = _lift(c, a)
        if c2 is c:
            target = phi
            rational += len(pts)
        else:
            emb = ctx.quadratic_extension()[1]
            target = emb(phi)
            twisted += len(pts)
        for Q in pts:
            xp = x_coord(_mul(c2, p, Q))
            if (xp is INF) != (target is INF) or (xp is not INF and xp != target):
                cex.append(
                    {"x": a.n, "y": Q.y.n, "over_extension": c2 is not c,
                     "phi": node_name(phi), "xp": node_name(xp)}
                )
    stats = {"rational_points": rational, "extension_points": twisted, "x_values": len(xs) + 1}
    return _finish("commute", params, cex, stats, t0)


# --- periodic zeros vs torsion of order prime to p ---------------------------------------------


def check_torsion_periodicity(ctx: FieldCtx, lam, graph=None) -> ConjectureReport:
    """Agreement table between graph periodicity and p-coprime point order (conditional claim)."""
    from .dynamics import functional_graph

    t0 = time.perf_counter()
    p = ctx.p
    sm = SelfMapCtx(ctx, lam)
    g = graph if graph is not None else functional_graph(sm)
    period = g.period_of()
    c = Curve(ctx, lam)
    table = [{"a": "inf", "periodic": ctx.q in period, "order": 1, "p_coprime": True,
              "agree": ctx.q in period}]
    for a in ctx.elements():
        c2, pts = _lift(c, a)
        order = point_order(c2, pts[0])
        coprime = order % p != 0
        periodic = a.n in period
        table.append({"a": str(a.n), "periodic": periodic, "order": order,
                      "p_coprime": coprime, "agree": periodic == coprime})
    cex = [row for row in table if not row["agree"]]
    stats = {
        "table": table,
        "periodic_count": sum(r["periodic"] for r in table),
        "coprime_count": sum(r["p_coprime"] for r in table),
        "conditional": True,
    }
    return _finish("torsion", {**_ctx_params(ctx), "lambda": lam.n}, cex, stats, t0)


# --- transpose/inversion symmetries ------------------------------------------------------------


def _ratio_table(X, Y):
    """Entrywise X/Y as encodings; None where exactly one side vanishes, 'both0' where both do."""
    out = []
    for rx, ry in zip(X, Y):
        row = []
        for x, y in zip(rx, ry):
            if not x and not y:
                row.append("both0")
            elif not x or not y:
                row.append(None)
            else:
                row.append((x / y).n)
        out.append(row)
    return out


def check_symmetries(ctx: FieldCtx, lam, a) -> ConjectureReport:
    """Entrywise ratios for A^T_{m+1} vs lam^(2p) a^p A_p(1/lam, 1/a) and
    B^T_0 vs lam^m a^p B_{m+1}(1/lam, 1/a), plus the determinant-level relation
    det A_{m+1} = c lam^(m^2+m) (1-lam)^(m^2) a^(-p) det B_0.

    Entrywise mismatches only make the verdict indeterminate; a determinant-level
    mismatch is a counterexample.
    """
    t0 = time.perf_counter()
    p = ctx.p
    m = (p - 1) // 2
    one = ctx.one
    params = {**_ctx_params(ctx), "lambda": lam.n, "a": a.n}
    il, ia = lam.inv(), a.inv()
    A = build_A(SelfMapCtx(ctx, lam), a)
    A_inv = build_A(SelfMapCtx(ctx, il), ia)
    lhs_a = transpose(a_submatrix(A, m, m + 1))
    scale_a = lam ** (2 * p) * a**p
    rhs_a = [[scale_a * x for x in row] for row in a_submatrix(A_inv, m, p)]
    B = b_matrix(gamma_table(lam, m), a**p, m)
    B_inv = b_matrix(gamma_table(il, m), ia**p, m)
    lhs_b = transpose(b_zero(B))
    scale_b = lam**m * a**p
    rhs_b = [[scale_b * x for x in row] for row in b_last(B_inv)]
    ratios_a = _ratio_table(lhs_a, rhs_a)
    ratios_b = _ratio_table(lhs_b, rhs_b)
    entrywise_ok = all(r in (1, "both0") for row in ratios_a + ratios_b for r in row)

    c = constant_c(p).value
    d_a = det(a_submatrix(A, m, m + 1), one)
    d_b = det(b_zero(B), one)
    rhs = lam ** (m * m + m) * (1 - lam) ** (m * m) / a**p * d_b * c
    cex = []
    if d_a != rhs:
        cex.append({"det_A_m+1": d_a.n, "rhs": rhs.n})
    stats = {
        "ratios_A": ratios_a,
        "ratios_B": ratios_b,
        "entrywise_exact": entrywise_ok,
        "determinant_relation": not cex,
    }
    verdict = "fails" if cex else ("holds" if entrywise_ok else "indeterminate")
    return _finish("symmetry", params, cex, stats, t0, verdict)
