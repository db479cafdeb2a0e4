import sys
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from konvex import capped_add, chain_min, cyclic, powerset_union, product  # noqa: E402
from konvex.carrier import restrict, subsemigroup_closure  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def _monogenic():
    P = product(cyclic(4), capped_add(3))
    return restrict(P, subsemigroup_closure(P, P.subset(["(1,1)"])), name="monogenic")


SMALL = [
    cyclic(1), cyclic(2), cyclic(4), cyclic(5), cyclic(6),
    chain_min(3), capped_add(2), capped_add(4), powerset_union(2),
    product(cyclic(2), chain_min(2)), product(cyclic(2), capped_add(1)),
    _monogenic(),
]
SEMILATTICES = [chain_min(4), powerset_union(2), powerset_union(3),
                product(chain_min(2), powerset_union(2))]


@st.composite
def carrier_and_set(draw, carriers=SMALL):
    S = draw(st.sampled_from(carriers))
    return S, S.from_mask(draw(st.integers(0, S.full_mask)))


@st.composite
def carrier_and_two_sets(draw, carriers=SMALL):
    S = draw(st.sampled_from(carriers))
    a = draw(st.integers(0, S.full_mask))
    b = draw(st.integers(0, S.full_mask))
    return S, S.from_mask(a), S.from_mask(b)


@pytest.fixture(params=SMALL, ids=lambda S: S.name)
def small_carrier(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
