"""Acceptance criteria, each at its stated tolerance.

Every test logs one PASS/FAIL line (collected in the pytest terminal summary).
Three statements are checked literally and are known to be false as written;
they are marked ``xfail(strict=True)`` so the suite stays green while the
FAIL line is still emitted.
"""

import json
import random
import time
from math import comb

import pytest

from acclog import record
from hdflow.conjectures import (
    check_commutativity,
    check_torsion_periodicity,
    check_var_conj,
)
from hdflow.dynamics import functional_graph
from hdflow.ecurve import (
    Curve,
    b_matrix,
    build_B_symbolic,
    ec_mul,
    factorization_check,
    gamma_table,
    lift_x,
    x_coord,
    xp_via_determinant,
)
from hdflow.ff import FieldCtx, is_prime
from hdflow.matrix import kernel_cofactors, mat_vec
from hdflow.poly import BiPoly, UniPoly
from hdflow.selfmap import (
    SelfMapCtx,
    alpha_from_matrix,
    alpha_vector,
    build_A,
    build_A_symbolic,
    is_pure_frobenius,
    selfmap_closed_form,
    selfmap_rational,
)


def random_lambdas(F, n, rng, ordinary=False):
    out = []
    while len(out) < n:
        lam = F.random(rng)
        if lam in (0, 1):
            continue
        if ordinary:
            m = (F.p - 1) // 2
            if not sum((comb(m, i) ** 2 * lam**i for i in range(m + 1)), F.zero):
                continue
        out.append(lam)
    return out


# 1 -------------------------------------------------------------------------------------------


def test_criterion_1_closed_forms():
    t0 = time.perf_counter()
    bad = []
    for p in (3, 5, 7):
        F = FieldCtx(p, 2)
        rng = random.Random(100 + p)
        for _ in range(50):
            lam = F.random(rng)
            while lam in (0, 1):
                lam = F.random(rng)
            if selfmap_rational(SelfMapCtx(F, lam)) != selfmap_closed_form(p, lam):
                bad.append((p, lam.n))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 5
    record("criterion 1 closed forms (150 maps)", ok, f"mismatches={bad} time={dt:.2f}s")
    assert ok


# 2 -------------------------------------------------------------------------------------------


def test_criterion_2_degenerate_lambda():
    t0 = time.perf_counter()
    bad = []
    for p in (3, 5, 7):
        F = FieldCtx(p, 2)
        for lam in F.elements():
            if lam in (0, 1):
                continue
            frob = is_pure_frobenius(selfmap_rational(SelfMapCtx(F, lam)), p)
            if p == 3:
                predicted = lam == -1
            elif p == 5:
                predicted = lam**6 == 1 and lam**2 != 1 and lam**3 != 1
            else:
                predicted = not ((lam + 1) * (lam**2 + lam + 1))
            if frob != predicted:
                bad.append((p, lam.n, frob))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 5
    record("criterion 2 degenerate lambda (both directions)", ok, f"mismatches={bad} time={dt:.2f}s")
    assert ok


# 3 -------------------------------------------------------------------------------------------


def _graphs(f81):
    t0 = time.perf_counter()
    gs = {lam: functional_graph(SelfMapCtx(f81, f81(lam))) for lam in (6, 11, 5)}
    return gs, (time.perf_counter() - t0) / 3


def _edges_hold(g, edges):
    return [(a, b, g.image(a)) for a, b in edges if g.image(a) != str(b)]


def _chain(*nodes):
    return list(zip(nodes, nodes[1:]))


def test_criterion_3_paper_diagrams(f81):
    gs, per_graph = _graphs(f81)
    g6, g11, g5 = gs[6], gs[11], gs[5]
    diagram6 = {21, 43, 54, 27, 6, 34, 61, 62, 15, 38, 47, 25, 35, 65}
    fixed6 = sorted(v for v in diagram6 if g6.image(v) == str(v))
    e6 = _edges_hold(g6, [(21, 27), (43, 27), (54, 27), (27, 6), (6, 6), (34, 15), (61, 15),
                         (62, 15), (15, 65), (38, 35), (47, 35), (25, 35), (35, 65), (65, 65)])
    e11 = _edges_hold(g11, [(15, 31), (31, 15), (47, 31), (60, 31), (35, 15), (57, 15)]
                      + _chain(21, 64, 48, 53, 24, 37, 78, 77, 21))
    cyc11 = g11.cycle_names()
    # the lambda = 5 diagram as drawn: 3-cycle and its feeders read off the arrow heads
    e5 = _edges_hold(g5, _chain(32, 59, 35, 32) + [(65, 35), (74, 35), (60, 59), (61, 59),
                                                    (33, 32), (34, 32)])
    four5 = ["15", "58", "38", "31"] in g5.cycle_names()
    ok = (fixed6 == [6, 65] and not e6 and not e11 and ["15", "31"] in cyc11
          and ["21", "64", "48", "53", "24", "37", "78", "77"] in cyc11 and not e5 and four5
          and per_graph < 1)
    all_fixed6 = [v for v in range(81) if g6.image(v) == str(v)]
    record(
        "criterion 3 diagrams (lambda=6, 11; lambda=5 3-cycle, feeders, 4-cycle node set)",
        ok,
        f"fixed6(diagram)={fixed6} fixed6(all finite)={all_fixed6} bad6={e6} bad11={e11} "
        f"bad5={e5} graph_build={per_graph * 1000:.1f}ms",
    )
    assert ok


@pytest.mark.xfail(strict=True, reason="4-cycle direction as stated disagrees with phi and with x([3]Q)")
def test_criterion_3_lambda5_four_cycle_as_stated(f81):
    g5 = _graphs(f81)[0][5]
    stated = _chain(31, 38, 15, 58, 31)
    bad = _edges_hold(g5, stated)
    computed = [f"{v}->{g5.image(v)}" for v in (31, 38, 15, 58)]
    # the curve side independently gives the computed direction
    c = Curve(f81, f81(5))
    curve_side = []
    for v in (31, 38, 15, 58):
        c2, pts = lift_x(c, f81(v))
        xp = x_coord(ec_mul(c2, 3, pts[0]))
        curve_side.append(f"{v}->{xp.n if c2 is c else xp}")
    record("criterion 3 lambda=5 4-cycle 31->38->15->58->31 as stated", not bad,
           f"computed={computed} via [3]Q={curve_side}")
    assert not bad


@pytest.mark.xfail(strict=True, reason="feeder edges 74->65 and 61->60 as listed disagree with phi")
def test_criterion_3_lambda5_listed_feeders_as_stated(f81):
    g5 = _graphs(f81)[0][5]
    listed = [(65, 35), (74, 65), (60, 59), (61, 60), (33, 32), (34, 32)]
    bad = _edges_hold(g5, listed)
    record("criterion 3 lambda=5 feeders as listed (74->65, 61->60)", not bad,
           f"mismatches (from, listed, computed)={bad}")
    assert not bad


# 4 -------------------------------------------------------------------------------------------


def test_criterion_4_multiplication_by_p_oracle():
    t0 = time.perf_counter()
    bad, checked = [], 0
    for p in (3, 5, 7, 11):
        F = FieldCtx(p, 2)
        rng = random.Random(400 + p)
        for lam in random_lambdas(F, 5, rng):
            c = Curve(F, lam)
            for a in F.elements():
                if a in (0, 1) or a == lam:
                    continue
                c2, pts = lift_x(c, a)
                by_det = xp_via_determinant(c2, pts[0].x)
                by_add = x_coord(ec_mul(c2, p, pts[0]))
                checked += 1
                if by_det != by_add and not (by_det is by_add):
                    bad.append((p, lam.n, a.n))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60
    record("criterion 4 determinant x([p]Q) vs double-and-add", ok,
           f"points={checked} mismatches={bad[:5]} time={dt:.1f}s")
    assert ok


# 5 -------------------------------------------------------------------------------------------


def test_criterion_5_commutativity(f81):
    t0 = time.perf_counter()
    reports = []
    for p in (3, 5, 7, 11, 13):
        F = FieldCtx(p, 2)
        for lam in random_lambdas(F, 5, random.Random(500 + p)):
            reports.append(check_commutativity(F, lam))
    for lam in (6, 11, 5):
        reports.append(check_commutativity(f81, f81(lam)))
    dt = time.perf_counter() - t0
    failing = [(r.params["p"], r.params["lambda"], r.counterexamples[:2]) for r in reports if not r.holds]
    npts = sum(r.stats["rational_points"] + r.stats["extension_points"] for r in reports)
    ok = not failing and dt < 300
    record("criterion 5 commutativity phi(x(Q)) = x([p]Q)", ok,
           f"curves={len(reports)} points={npts} failing={failing} time={dt:.1f}s")
    assert ok


# 6 -------------------------------------------------------------------------------------------


def test_criterion_6_var_conj():
    t0 = time.perf_counter()
    sym = {p: check_var_conj(p, "symbolic") for p in (3, 5, 7, 11, 13)}
    t_sym = time.perf_counter() - t0
    t1 = time.perf_counter()
    rnd = {p: check_var_conj(p, "random", trials=20, seed=1) for p in range(3, 48) if is_prime(p)}
    t_rnd = time.perf_counter() - t1
    bad_sym = [p for p, r in sym.items() if not r.holds]
    bad_rnd = [p for p, r in rnd.items() if not r.holds]
    bad_bound = [p for p, r in rnd.items() if not r.stats["failure_bound"] <= 4.0**-20]
    ok = not bad_sym and not bad_rnd and not bad_bound and t_sym < 600 and t_sym + t_rnd < 600
    worst = max(r.stats["failure_bound_log4"] for r in rnd.values())
    record("criterion 6 var_conj symbolic p<=13 and random p<=47", ok,
           f"sym_fail={bad_sym} rnd_fail={bad_rnd} bound_fail={bad_bound} "
           f"worst_log4_bound={worst:.1f} time_sym={t_sym:.2f}s time_rnd={t_rnd:.2f}s")
    assert ok


# 7 -------------------------------------------------------------------------------------------


def test_criterion_7_kernel_identities():
    bad = []
    for p in (3, 5, 7):
        m = (p - 1) // 2
        one = BiPoly.const(p, 1)
        A = build_A_symbolic(p)
        alpha = alpha_from_matrix(A, m, one)
        if any(v for v in mat_vec(A, alpha)):
            bad.append(("A symbolic", p))
        B = build_B_symbolic(p)
        if any(v for v in mat_vec(B, kernel_cofactors(B, one))):
            bad.append(("B symbolic", p))
    numeric = 0
    for p in (3, 5, 7, 11, 13):
        F = FieldCtx(p, 2)
        rng = random.Random(700 + p)
        m = (p - 1) // 2
        n = 0
        while n < 200:
            lam, a = F.random(rng), F.random(rng)
            if lam in (0, 1):
                continue
            sm = SelfMapCtx(F, lam)
            if any(v for v in mat_vec(build_A(sm, a), alpha_vector(sm, a))):
                bad.append(("A", p, lam.n, a.n))
            # B is defined for every a, so beta is taken from it directly
            B = b_matrix(gamma_table(lam, m), a**p, m)
            if any(v for v in mat_vec(B, kernel_cofactors(B, F.one))):
                bad.append(("B", p, lam.n, a.n))
            n += 1
            numeric += 1
    ok = not bad
    record("criterion 7 A alpha = 0, B beta = 0", ok,
           f"symbolic p<=7, numeric cases={numeric} (200 per p) failures={bad[:5]}")
    assert ok


# 8 -------------------------------------------------------------------------------------------


def test_criterion_8_factorization_identity():
    bad, cases = [], 0
    for p in (3, 5, 7):
        F = FieldCtx(p, 2)
        rng = random.Random(800 + p)
        n = 0
        while n < 20:
            lam, a = F.random(rng), F.random(rng)
            if lam in (0, 1) or a in (0, 1) or a == lam:
                continue
            c2, pts = lift_x(Curve(F, lam), a)
            v = factorization_check(c2, rng.choice(pts))
            if not v.ok:
                bad.append((p, lam.n, a.n, str(v.residual)))
            n += 1
            cases += 1
    ok = not bad
    record("criterion 8 (x-a)^p (x-a_p) = f^2 - x(x-1)(x-lam) g^2", ok,
           f"cases={cases} nonzero residuals={bad}")
    assert ok


# 9 -------------------------------------------------------------------------------------------


def _generic_maps():
    for p in (3, 5, 7):
        F = FieldCtx(p, 2)
        for lam in random_lambdas(F, 10, random.Random(900 + p), ordinary=True):
            yield p, lam, selfmap_rational(SelfMapCtx(F, lam))


def test_criterion_9_degree_and_fixed_points():
    bad = []
    for p, lam, rm in _generic_maps():
        affine, form_degree = rm.fixed_point_form()
        at_inf = form_degree - affine.degree
        if rm.degree != p * p or form_degree != p * p + 1 or at_inf != 1 or not rm.fixed_points_simple():
            bad.append((p, lam.n, rm.degree, affine.degree, form_degree))
    ok = not bad
    record("criterion 9 degree p^2 and p^2+1 fixed points (projective form X*D - Z*N)", ok,
           f"30 ordinary lambdas, failures={bad}")
    assert ok


@pytest.mark.xfail(strict=True, reason="affine num - z*den has degree p^2: the (p^2+1)-th fixed point is infinity")
def test_criterion_9_affine_polynomial_degree_as_stated():
    degs = []
    for p, lam, rm in _generic_maps():
        z = UniPoly.x(rm.num.ctx)
        degs.append((p, (rm.num - z * rm.den).degree))
    ok = all(d == p * p + 1 for p, d in degs)
    record("criterion 9 deg(num - z*den) = p^2+1 as stated", ok,
           f"observed degrees per p={sorted(set(degs))}")
    assert ok


# 10 ------------------------------------------------------------------------------------------


def test_criterion_10_torsion_periodicity(f81):
    lines = []
    ok = True
    for lam in (6, 11, 5):
        rep = check_torsion_periodicity(f81, f81(lam))
        doc = json.loads(rep.to_json())
        schema = (set(doc) == {"conjecture", "params", "verdict", "counterexamples", "stats"}
                  and len(doc["stats"]["table"]) == 82
                  and all(set(r) == {"a", "periodic", "order", "p_coprime", "agree"}
                          for r in doc["stats"]["table"])
                  and (doc["verdict"] == "fails") == bool(doc["counterexamples"]))
        ok &= schema
        lines.append(f"lambda={lam}:{doc['verdict']}({doc['stats']['periodic_count']} periodic)")
    record("criterion 10 torsion/periodicity table emitted, schema-valid", ok, " ".join(lines))
    assert ok
