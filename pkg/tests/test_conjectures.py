import json
import random

import pytest

from hdflow.conjectures import (
    check_commutativity,
    check_equ_main,
    check_symmetries,
    check_torsion_periodicity,
    check_var_conj,
    constant_c,
    degree_bounds,
    sz_extension_degree,
    var_sides_symbolic,
)
from hdflow.errors import BoundExceededError, UnsupportedModeError
from hdflow.ff import FieldCtx
from hdflow.poly import BiPoly

SCHEMA_KEYS = {"conjecture", "params", "verdict", "counterexamples", "stats"}


def test_constant_c_small_cases():
    assert constant_c(3).value == 2
    assert constant_c(5).value == 2


def test_var_conj_p3_matches_hand_expansion():
    lhs, rhs = var_sides_symbolic(3)
    # lam^3 - lam^4 + a^3 lam - a^3 lam^3
    expected = BiPoly.from_dict(3, {(3, 0): 1, (4, 0): 2, (1, 3): 1, (3, 3): 2})
    assert lhs == expected and rhs == expected


@pytest.mark.parametrize("p", [3, 5, 7])
def test_var_conj_modes_agree(p):
    assert check_var_conj(p, "symbolic").verdict == "holds"
    assert check_var_conj(p, "grid").verdict == "holds"
    assert check_var_conj(p, "random", trials=5).verdict == "holds"


def test_var_conj_random_is_reproducible_and_bounded():
    a = check_var_conj(47, "random", trials=20, seed=1)
    b = check_var_conj(47, "random", trials=20, seed=1)
    assert a.to_json() == b.to_json()
    assert a.params["k"] == 3
    assert a.stats["failure_bound"] <= 4.0**-20
    assert sz_extension_degree(3) == 4
    assert degree_bounds(3) == (7, 6)


def test_var_conj_errors():
    with pytest.raises(UnsupportedModeError):
        check_var_conj(5, "magic")
    with pytest.raises(BoundExceededError):
        check_var_conj(17, "symbolic")


def test_equ_main():
    F9 = FieldCtx(3, 2)
    rep = check_equ_main(F9, F9(2))
    assert rep.holds and rep.stats["polynomial_identity"]
    F25 = FieldCtx(5, 2)
    rng = random.Random(5)
    for _ in range(5):
        lam = F25.random(rng)
        if lam in (0, 1):
            continue
        assert check_equ_main(F25, lam).holds


def test_commutativity_supersingular_and_sampled():
    F9 = FieldCtx(3, 2)
    assert check_commutativity(F9, F9(2)).holds
    F49 = FieldCtx(7, 2)
    rep = check_commutativity(F49, F49(10), mode="sample", samples=30, seed=2)
    assert rep.holds and rep.params["seed"] == 2


def test_torsion_report_schema(f81):
    rep = check_torsion_periodicity(f81, f81(6))
    doc = json.loads(rep.to_json())
    assert set(doc) == SCHEMA_KEYS
    rows = {r["a"]: r for r in doc["stats"]["table"]}
    assert rows["6"]["periodic"] and rows["65"]["periodic"]
    assert not rows["21"]["periodic"] and rows["21"]["order"] % 3 == 0
    assert rows["0"]["order"] == 2
    assert (rep.verdict == "fails") == bool(rep.counterexamples)


def test_symmetries_report(f81):
    rep = check_symmetries(f81, f81(6), f81(7))
    assert rep.stats["determinant_relation"]
    assert rep.verdict in ("holds", "indeterminate")
    F = FieldCtx(7, 2)
    rep = check_symmetries(F, F(9), F(20))
    assert rep.stats["determinant_relation"]
    assert rep.verdict != "fails"


def test_report_json_is_deterministic(f81):
    a = check_commutativity(f81, f81(11))
    b = check_commutativity(f81, f81(11))
    assert a.to_json() == b.to_json()
    assert "runtime_s" in a.to_dict()["stats"]
