import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import carrier_and_set, carrier_and_two_sets
from konvex import INT, INT_NO_ONE_MONOID, capped_add, cyclic, preimage, scale, sumset, sumset_power
from konvex.errors import BadN, CarrierMismatch
from konvex.setalg import (
    EQUAL,
    INCLUSION_ONLY,
    PROPER,
    identity_report,
    run_op,
    sumset_powers,
)

ns = st.integers(1, 5)


@given(carrier_and_set(), ns)
def test_scale_matches_oracle(SA, n):
    S, A = SA
    assert set(scale(S, n, A)) == oracles.scale(S.table, n, set(A))


@given(carrier_and_set(), ns)
def test_preimage_matches_oracle(SA, n):
    S, A = SA
    assert set(preimage(S, n, A)) == oracles.preimage(S.table, n, set(A))


@given(carrier_and_two_sets())
def test_sumset_matches_oracle(SAB):
    S, A, B = SAB
    assert set(sumset(S, A, B)) == oracles.sumset(S.table, set(A), set(B))


@given(carrier_and_set(), st.integers(1, 4))
def test_power_matches_tuple_enumeration(SA, n):
    S, A = SA
    assert set(sumset_power(S, n, A)) == oracles.power_tuples(S.table, n, set(A))


@given(carrier_and_set())
def test_sumset_powers_prefix(SA):
    S, A = SA
    got = sumset_powers(S, A, 6)
    assert [set(X) for X in got] == oracles.powers(S.table, set(A), 6)


def test_examples():
    C6 = cyclic(6)
    assert scale(C6, 2, C6.subset(["1", "4"])).labels() == ["2"]
    assert list(scale(INT, 2, INT.subset([1, 3]))) == [2, 6]
    assert list(preimage(INT, 2, INT.subset([0, 1, 2, 3, 4]))) == [0, 1, 2]
    C4 = cyclic(4)
    assert preimage(C4, 2, C4.subset(["0"])).labels() == ["0", "2"]
    assert list(sumset_power(INT, 3, INT.subset([0, 1]))) == [0, 1, 2, 3]
    assert list(sumset_power(INT_NO_ONE_MONOID, 2, INT_NO_ONE_MONOID.subset([0, 2]))) == [0, 2, 4]


def test_symbolic_preimage_respects_carrier():
    # 2 has the half 1 in Z but not in the monoid without 1
    assert list(preimage(INT, 2, INT.subset([2, 4]))) == [1, 2]
    assert list(preimage(INT_NO_ONE_MONOID, 2, INT_NO_ONE_MONOID.subset([2, 4]))) == [2]
    assert list(preimage(INT, 2, INT.subset([-3, -4]))) == [-2]


@given(st.frozensets(st.integers(-20, 20), max_size=5), st.integers(1, 4))
def test_symbolic_ops_match_definitions(A, n):
    X = INT.subset(A)
    assert set(scale(INT, n, X)) == {n * a for a in A}
    assert set(preimage(INT, n, X)) == {a // n for a in A if a % n == 0}
    brute = set(A)
    for _ in range(n - 1):
        brute = {u + a for u in brute for a in A}
    assert set(sumset_power(INT, n, X)) == brute


def test_bad_n_and_mismatch():
    C4 = cyclic(4)
    with pytest.raises(BadN):
        scale(C4, 0, C4.whole())
    with pytest.raises(BadN):
        sumset_power(C4, -1, C4.whole())
    with pytest.raises(CarrierMismatch):
        sumset(C4, C4.whole(), cyclic(5).whole())


def test_empty_set_conventions():
    C4 = cyclic(4)
    E = C4.empty()
    assert not scale(C4, 3, E) and not preimage(C4, 3, E) and not sumset_power(C4, 3, E)
    assert not sumset(C4, E, C4.whole())


def test_run_op_saturation_flag():
    S = capped_add(3)
    assert not run_op(S, "sumset", None, S.subset(["1"]), S.subset(["1"])).saturated
    rep = run_op(S, "power", 2, S.subset(["2"]))
    assert rep.saturated and rep.result.labels() == ["3"]
    assert not run_op(cyclic(4), "power", 4, cyclic(4).whole()).saturated


@given(carrier_and_two_sets(), st.integers(1, 4), st.integers(1, 4))
def test_scalar_sumset_relations_hold(SAB, k, n):
    S, A, B = SAB
    report = identity_report(S, A, B, k, n)
    assert report.violations == []


@given(carrier_and_two_sets(), st.integers(1, 4))
def test_monotonicity_against_oracle(SAB, n):
    S, A, B = SAB
    big = set(A) | set(B)
    T = S.table
    assert oracles.scale(T, n, set(A)) <= oracles.scale(T, n, big)
    assert oracles.preimage(T, n, set(A)) <= oracles.preimage(T, n, big)
    assert oracles.power(T, n, set(A)) <= oracles.power(T, n, big)
    assert set(sumset_power(S, n, A)) <= set(sumset_power(S, n, A | B))


def test_odd_fixture_gives_five_proper_inclusions():
    A = INT.subset([1, 3])
    report = identity_report(INT, A, A, 2, 2)
    assert report.violations == []
    for name in INCLUSION_ONLY:
        assert report.status(name) == PROPER, name
    equalities = [r for r in report.relations if r.kind == "="]
    assert all(r.status == EQUAL for r in equalities)
