import dataclasses

import pytest
from hypothesis import assume, given, strategies as st

import oracles
from conftest import SMALL, carrier_and_two_sets
from konvex import (
    ALL,
    INT,
    MultiplierSet,
    are_F_disjoint,
    capped_add,
    cyclic,
    decide_konvex,
    extend_step,
    stone_separate,
    verify_certificate,
)
from konvex.errors import InputsNotDisjoint, NotComplementary, NotDisjointInput, SymbolicUnsupported
from konvex.separation import (
    COLLISION,
    DISJOINT,
    check_disjoint_hulls,
    complementary_check,
    extension_check,
)

SWEEP = range(1, 121)


def _first_collision(T, A, B):
    pa, pb = oracles.powers(T, A, max(SWEEP)), oracles.powers(T, B, max(SWEEP))
    for n in SWEEP:
        common = pa[n - 1] & pb[n - 1]
        if common:
            return n, min(common)
    return None


@given(carrier_and_two_sets())
def test_all_n_disjointness_matches_sweep(SAB):
    S, A, B = SAB
    ev = are_F_disjoint(S, ALL, A, B)
    expected = _first_collision(S.table, set(A), set(B))
    if expected is None:
        assert ev.disjoint and ev.verdict == DISJOINT
    else:
        assert ev.verdict == COLLISION
        assert (ev.collision_n, ev.collision_element) == expected


@given(carrier_and_two_sets(), st.sampled_from([(2,), (3,), (2, 5)]))
def test_generated_disjointness_matches_sweep(SAB, gens):
    S, A, B = SAB
    ns = oracles.generated_ns(gens, 1000)
    ev = are_F_disjoint(S, MultiplierSet.of(*gens), A, B)
    assert ev.disjoint == oracles.disjoint_for(S.table, set(A), set(B), ns)


def test_disjointness_examples():
    C5 = cyclic(5)
    ev = are_F_disjoint(C5, ALL, C5.subset(["1"]), C5.subset(["2"]))
    assert not ev and ev.collision_n == 5 and C5.label(ev.collision_element) == "0"
    C3 = capped_add(3)
    assert are_F_disjoint(C3, ALL, C3.subset(["0"]), C3.subset(["3"])).disjoint


def test_symbolic_disjointness_needs_explicit_list():
    A, B = INT.subset([1]), INT.subset([2])
    assert are_F_disjoint(INT, [1, 3], A, B).disjoint
    assert not are_F_disjoint(INT, [2], INT.subset([2]), INT.subset([1, 3])).disjoint
    with pytest.raises(SymbolicUnsupported):
        are_F_disjoint(INT, ALL, A, B)


def _disjoint_pair(S, a, b):
    return S.from_mask(a & ~b), S.from_mask(b & ~a)


@given(carrier_and_two_sets(), st.data())
def test_extend_step_keeps_disjointness(SAB, data):
    S, A, B = SAB
    A, B = _disjoint_pair(S, A.members, B.members)
    assume(_first_collision(S.table, set(A), set(B)) is None)
    s = data.draw(st.integers(0, S.order - 1))
    side = extend_step(S, A, B, s)
    A2 = set(A) | ({s} if side == "A" else set())
    B2 = set(B) | ({s} if side == "B" else set())
    assert oracles.disjoint_for(S.table, A2, B2, SWEEP)
    if side == "B" and s not in B:
        assert not oracles.disjoint_for(S.table, set(A) | {s}, set(B), SWEEP)


def test_extend_step_rejects_colliding_input():
    C5 = cyclic(5)
    with pytest.raises(NotDisjointInput):
        extend_step(C5, C5.subset(["1"]), C5.subset(["2"]), 0)


@pytest.mark.parametrize("S", [S for S in SMALL if S.order <= 5], ids=lambda S: S.name)
def test_one_point_extension_exhaustive(S):
    rep = extension_check(S)
    assert rep.passed, rep.violations


@given(carrier_and_two_sets())
def test_separation_certificates(SAB):
    S, A, B = SAB
    A0, B0 = _disjoint_pair(S, A.members, B.members)
    if _first_collision(S.table, set(A0), set(B0)) is not None:
        with pytest.raises(InputsNotDisjoint):
            stone_separate(S, A0, B0)
        return
    cert = stone_separate(S, A0, B0)
    assert verify_certificate(S, cert, A0, B0) == []
    A, B = set(cert.A), set(cert.B)
    assert A | B == set(range(S.order)) and not A & B
    assert set(A0) <= A and set(B0) <= B
    assert oracles.disjoint_for(S.table, A, B, SWEEP)
    assert oracles.convex_for(S.table, A, SWEEP) and oracles.convex_for(S.table, B, SWEEP)
    if decide_konvex(S, S.whole()).holds:
        assert oracles.konvex_for(S.table, A, SWEEP) and oracles.konvex_for(S.table, B, SWEEP)


def test_separation_example_and_tampering():
    S = capped_add(3)
    A0, B0 = S.subset(["0"]), S.subset(["3"])
    cert = stone_separate(S, A0, B0)
    assert cert.A.labels() == ["0"] and cert.B.labels() == ["1", "2", "3"]
    assert cert.to_json()["evidence"]["verdict"] == DISJOINT
    assert verify_certificate(S, cert, A0, B0) == []
    bad = dataclasses.replace(cert, B=S.subset(["1", "3"]))
    assert verify_certificate(S, bad, A0, B0)
    bad = dataclasses.replace(cert, A=S.subset(["0", "2"]))
    assert verify_certificate(S, bad, A0, B0)


def test_separation_collision_and_empty_inputs():
    C5 = cyclic(5)
    with pytest.raises(InputsNotDisjoint) as info:
        stone_separate(C5, C5.subset(["1"]), C5.subset(["2"]))
    assert info.value.evidence.collision_n == 5
    cert = stone_separate(C5, C5.empty(), C5.empty())
    assert verify_certificate(C5, cert) == []


@given(carrier_and_two_sets())
def test_disjoint_sets_have_disjoint_hulls(SAB):
    S, A, B = SAB
    assert check_disjoint_hulls(S, ALL, A, B).passed


@pytest.mark.parametrize("S", SMALL, ids=lambda S: S.name)
def test_complementary_pairs(S):
    for mask in range(S.full_mask + 1):
        A = S.from_mask(mask)
        assert complementary_check(S, A, S.whole() - A).passed
    with pytest.raises(NotComplementary):
        complementary_check(S, S.whole(), S.whole())
