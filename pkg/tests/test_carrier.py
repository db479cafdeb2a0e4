import json

import pytest
from hypothesis import given, strategies as st

import oracles
from konvex import (
    INT,
    INT_NO_ONE_MONOID,
    MultiplierSet,
    build_cayley,
    builtin,
    capped_add,
    catalog,
    chain_min,
    cyclic,
    load_cayley,
    parse_carrier,
    powerset_union,
    product,
    sample_carrier,
    subsemigroup_closure,
)
from konvex.carrier import from_json, to_json
from konvex.errors import (
    BadParams,
    BadTable,
    CarrierMismatch,
    EmptyGenerators,
    NotAssociative,
    NotCommutative,
    UnknownLabel,
)


def test_cyclic_addition():
    S = cyclic(4)
    assert S.label(S.add(S.index("2"), S.index("3"))) == "1"


def test_capped_add_saturates():
    S = capped_add(3)
    assert S.label(S.add(S.index("2"), S.index("2"))) == "3"
    assert S.cap == S.index("3")


def test_powerset_union_joins():
    S = powerset_union(2)
    assert S.order == 4
    assert S.label(S.add(S.index("{1}"), S.index("{2}"))) == "{1,2}"


def test_chain_min_labels_start_at_one():
    S = chain_min(3)
    assert S.labels == ("1", "2", "3")
    assert S.label(S.add(S.index("2"), S.index("3"))) == "2"


@pytest.mark.parametrize("kind", ["cyclic", "chain-min", "capped-add", "powerset-union"])
def test_builtin_rejects_nonpositive(kind):
    with pytest.raises(BadParams):
        builtin(kind, 0)


@pytest.mark.parametrize("S", catalog(), ids=lambda S: S.name)
def test_catalog_carriers_are_commutative_semigroups(S):
    assert oracles.is_commutative(S.table)
    assert oracles.is_associative(S.table)
    assert S.order <= 8


def test_catalog_is_deterministic_and_large_enough():
    a, b = catalog(), catalog()
    assert [S.name for S in a] == [S.name for S in b]
    assert len(a) >= 20
    assert len({S.name for S in a}) == len(a)


@given(st.integers(0, 10_000), st.integers(1, 8))
def test_sample_carrier_is_valid_and_deterministic(seed, max_order):
    S = sample_carrier(seed, max_order)
    assert S.order <= max_order
    assert oracles.is_commutative(S.table) and oracles.is_associative(S.table)
    assert sample_carrier(seed, max_order).same_as(S)


@pytest.mark.parametrize("m", range(1, 9))
def test_cyclic_mul_matches_modular_and_repeated_addition(m):
    S = cyclic(m)
    for n in range(1, 15):
        for x in range(m):
            assert S.mul(n, x) == (n * x) % m == oracles.mul(S.table, n, x)


@pytest.mark.parametrize("c", range(1, 6))
def test_capped_add_is_transparent_below_cap(c):
    S = capped_add(c)
    for x in range(c + 1):
        for y in range(c + 1):
            if x + y <= c:
                assert S.add(x, y) == x + y


def test_product_is_componentwise():
    S = product(cyclic(2), chain_min(2))
    assert S.label(S.add(S.index("(1,2)"), S.index("(1,1)"))) == "(0,1)"


def test_subsemigroup_closure_examples():
    S = cyclic(6)
    assert subsemigroup_closure(S, S.subset(["2"])).labels() == ["0", "2", "4"]
    assert subsemigroup_closure(cyclic(5), cyclic(5).subset(["1"])) == cyclic(5).whole()
    P = powerset_union(2)
    assert subsemigroup_closure(P, P.subset(["{1}", "{2}"])).labels() == ["{1}", "{2}", "{1,2}"]


def test_build_cayley_reports_noncommutative_witness():
    with pytest.raises(NotCommutative) as info:
        build_cayley(["a", "b"], [["a", "a"], ["b", "b"]])
    assert set(info.value.witness) == {"a", "b"}


def test_build_cayley_reports_nonassociative_witness():
    # commutative but not associative: x+y = "b" unless both are "b"
    with pytest.raises(NotAssociative) as info:
        build_cayley(["a", "b"], [["b", "b"], ["b", "a"]])
    x, y, z = info.value.witness
    T = {("a", "a"): "b", ("a", "b"): "b", ("b", "a"): "b", ("b", "b"): "a"}
    assert T[T[x, y], z] != T[x, T[y, z]]


def test_build_cayley_rejects_bad_shape_and_labels():
    with pytest.raises(BadTable):
        build_cayley(["a", "b"], [["a"]])
    with pytest.raises(UnknownLabel):
        build_cayley(["a"], [["z"]])


def test_json_round_trip(tmp_path):
    S = product(cyclic(2), capped_add(2))
    path = tmp_path / "s.json"
    path.write_text(json.dumps(to_json(S)))
    T = load_cayley(path)
    assert T.labels == S.labels and T.table == S.table
    assert from_json(to_json(S)).same_as(S)


def test_load_cayley_missing_file(tmp_path):
    with pytest.raises(BadTable):
        load_cayley(tmp_path / "missing.json")


@pytest.mark.parametrize("text, name", [
    ("cyclic(4)", "cyclic(4)"),
    ("product(cyclic(2),chain-min(3))", "product(cyclic(2),chain-min(3))"),
    ("int-additive", "int-additive"),
])
def test_parse_carrier(text, name):
    assert parse_carrier(text).name == name


def test_subsets_reject_foreign_carrier():
    A, B = cyclic(3).whole(), cyclic(3).whole()
    assert (A | B) == A  # distinct but equal tables are compatible
    with pytest.raises(CarrierMismatch):
        cyclic(3).whole() | cyclic(4).whole()


def test_symbolic_subsets():
    assert list(INT.subset([3, -1])) == [-1, 3]
    with pytest.raises(UnknownLabel):
        INT_NO_ONE_MONOID.subset([1])


def test_multiplier_sets():
    F = MultiplierSet.parse("2,3")
    assert F.members_up_to(12) == oracles.generated_ns([2, 3], 12)
    assert 6 in F and 5 not in F
    raw = MultiplierSet.of(2, 3, closed=False)
    assert 6 not in raw and not raw.is_subsemigroup
    assert MultiplierSet.parse("ALL").is_all
    with pytest.raises(EmptyGenerators):
        MultiplierSet(())
    with pytest.raises(BadParams):
        MultiplierSet.of(0)
