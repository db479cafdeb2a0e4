"""n-convexity and n-konvexity: fixed-n predicates and exact all-n decisions.

A set A is n-convex when ``n^-1([n]A) ⊆ A`` and n-konvex when ``[n]A ⊆ nA``.
For a multiplier set F the all-n decisions walk the (power map, [n]A) states
for every n in F (see ``iteration``), which on a finite carrier is a finite
and complete search.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .carrier import ALL, MultiplierSet, Semigroup, Subset, check_same_carrier
from .errors import SymbolicUnsupported
from .iteration import state_orbit
from .reporting import CheckReport
from .setalg import need_n, preimage, scale, sumset, sumset_power, sumset_powers

HOLDS = "holds-for-all-n"
FAILS = "fails"


@dataclass(frozen=True)
class Decision:
    holds: bool
    witness_n: int | None = None
    witness_element: int | None = None
    tail_length: int = 0
    cycle_length: int = 0
    states: int = 0

    @property
    def verdict(self) -> str:
        return HOLDS if self.holds else FAILS

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class SpectrumReport:
    n_max: int
    convex_ns: list[int]
    konvex_ns: list[int]


def require_finite(S: Semigroup, what: str):
    if not S.finite:
        raise SymbolicUnsupported(
            f"{what} needs a finite carrier; use a bounded --n-max sweep on {S.kind}"
        )


def is_n_convex(S: Semigroup, n: int, A: Subset) -> bool:
    need_n(n)
    check_same_carrier(S, A)
    if S.finite:
        a = A.members
        return S.preimage_of(S.mul_map(n), S.power_mask(n, a)) & ~a == 0
    return preimage(S, n, sumset_power(S, n, A)) <= A


def is_n_konvex(S: Semigroup, n: int, A: Subset) -> bool:
    need_n(n)
    check_same_carrier(S, A)
    if S.finite:
        a = A.members
        return S.power_mask(n, a) & ~S.image(S.mul_map(n), a) == 0
    return sumset_power(S, n, A) <= scale(S, n, A)


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def decide_convex(S: Semigroup, A: Subset, F: MultiplierSet = ALL) -> Decision:
    """Whether A is n-convex for every n in F."""
    require_finite(S, "an all-n decision")
    check_same_carrier(S, A)
    a = A.members
    orbit = state_orbit(S, a, F)
    meta = dict(tail_length=orbit.tail, cycle_length=orbit.cycle, states=len(orbit))
    for n, st in orbit:
        bad = S.preimage_of(st.pow, st.sum) & ~a
        if bad:
            return Decision(False, n, _lowest(bad), **meta)
    return Decision(True, **meta)


def decide_konvex(S: Semigroup, A: Subset, F: MultiplierSet = ALL) -> Decision:
    """Whether A is n-konvex for every n in F."""
    require_finite(S, "an all-n decision")
    check_same_carrier(S, A)
    a = A.members
    orbit = state_orbit(S, a, F)
    meta = dict(tail_length=orbit.tail, cycle_length=orbit.cycle, states=len(orbit))
    for n, st in orbit:
        bad = st.sum & ~S.image(st.pow, a)
        if bad:
            return Decision(False, n, _lowest(bad), **meta)
    return Decision(True, **meta)


def decide_convex_all_n(S: Semigroup, A: Subset) -> Decision:
    return decide_convex(S, A, ALL)


def decide_konvex_all_n(S: Semigroup, A: Subset) -> Decision:
    return decide_konvex(S, A, ALL)


def spectrum(S: Semigroup, A: Subset, n_max: int) -> SpectrumReport:
    """``C_A ∩ [1, n_max]`` and ``K_A ∩ [1, n_max]`` from the fixed-n predicates."""
    need_n(n_max)
    check_same_carrier(S, A)
    convex, konvex = [], []
    for n, power in enumerate(sumset_powers(S, A, n_max), start=1):
        if preimage(S, n, power) <= A:
            convex.append(n)
        if power <= scale(S, n, A):
            konvex.append(n)
    return SpectrumReport(n_max, convex, konvex)


def check_structure_props(S: Semigroup, A: Subset, n_max: int = 12) -> CheckReport:
    """K_A multiplicatively closed and C_A divisor-closed, within ``[1, n_max]``."""
    report = CheckReport("spectrum-structure")
    sp = spectrum(S, A, n_max)
    K = set(sp.konvex_ns)
    C = set(sp.convex_ns)
    for n in sp.konvex_ns:
        for k in sp.konvex_ns:
            if n * k <= n_max and n * k not in K:
                report.fail(f"{A!r}: {n},{k} in K_A but {n * k} not")
    for n in sp.convex_ns:
        for k in range(1, n + 1):
            if n % k == 0 and k not in C:
                report.fail(f"{A!r}: {n} in C_A but divisor {k} not")
    if 1 not in C or 1 not in K:
        report.fail(f"{A!r}: 1 missing from C_A or K_A")
    report.count("sets")
    return report


# ---------------------------------------------------------------------------
# closure landscape


def _random_subset(rng: random.Random, S: Semigroup, p: float | None = None) -> Subset:
    p = rng.random() if p is None else p
    return S.from_mask(sum(1 << i for i in range(S.order) if rng.random() < p))


def _chain(sets: list[Subset]) -> list[Subset]:
    chain = []
    for X in sorted(sets, key=len):
        if not chain or (chain[-1] <= X and chain[-1] != X):
            chain.append(X)
    return chain


def check_closure_props(
    S: Semigroup, F: MultiplierSet = ALL, samples: int = 40, seed: int = 0
) -> CheckReport:
    """Sample F-convex and F-konvex sets and check every closure property they must keep.

    Konvex sets: closed under A + B, kA and [k]A.  Convex sets: closed under
    k^-1, intersections and unions of ascending chains.  Konvex chains keep
    their union konvex; convex ∩ konvex is konvex.
    """
    from .hull import hull  # deferred: hull builds on this module

    require_finite(S, "closure checks")
    rng = random.Random(seed)
    report = CheckReport("closure-properties")
    convex = lambda X: decide_convex(S, X, F).holds  # noqa: E731
    konvex = lambda X: decide_konvex(S, X, F).holds  # noqa: E731

    convex_sets, konvex_sets = [], []
    for _ in range(samples):
        X = _random_subset(rng, S)
        if convex(X):
            convex_sets.append(X)
        if konvex(X):
            konvex_sets.append(X)
        convex_sets.append(hull(S, F, _random_subset(rng, S, 0.25)))
        x, y = rng.randrange(S.order), rng.randrange(S.order)
        konvex_sets.append(S.singleton(x))
        konvex_sets.append(sumset(S, S.singleton(x), S.singleton(y)))
    report.stats["convex_sampled"] = len(convex_sets)
    report.stats["konvex_sampled"] = len(konvex_sets)

    for X in convex_sets:
        if not convex(X):
            report.fail(f"sampled convex set {X!r} is not convex")
    for X in konvex_sets:
        if not konvex(X):
            report.fail(f"sampled konvex set {X!r} is not konvex")

    for _ in range(samples):
        A, B = rng.choice(konvex_sets), rng.choice(konvex_sets)
        k = rng.randint(1, 4)
        for what, Y in (
            ("A+B", sumset(S, A, B)),
            (f"{k}A", scale(S, k, A)),
            (f"[{k}]A", sumset_power(S, k, A)),
        ):
            report.count("konvex_checks")
            if not konvex(Y):
                report.fail(f"konvex A={A!r}, B={B!r}: {what}={Y!r} not konvex")

        C = rng.choice(convex_sets)
        Y = preimage(S, k, C)
        report.count("convex_checks")
        if not convex(Y):
            report.fail(f"convex {C!r}: {k}^-1 of it {Y!r} not convex")

        family = rng.sample(convex_sets, min(len(convex_sets), rng.randint(2, 4)))
        meet = family[0]
        for X in family[1:]:
            meet = meet & X
        report.count("convex_checks")
        if not convex(meet):
            report.fail(f"intersection of convex {family!r} not convex")

        D = rng.choice(konvex_sets)
        report.count("mixed_checks")
        if not konvex(C & D):
            report.fail(f"convex {C!r} ∩ konvex {D!r} not konvex")

    for sets, pred, what in ((convex_sets, convex, "convex"), (konvex_sets, konvex, "konvex")):
        for _ in range(max(1, samples // 4)):
            chain = _chain(rng.sample(sets, min(len(sets), 8)))
            union = chain[0]
            for X in chain[1:]:
                union = union | X
            report.count("chain_checks")
            if not pred(union):
                report.fail(f"union of {what} chain {chain!r} not {what}")
    return report


def find_konvex_intersection_failure(S: Semigroup, n: int):
    """First (A, B) of n-konvex sets whose intersection is not n-konvex, or None."""
    require_finite(S, "exhaustive search")
    need_n(n)
    konvex_masks = [
        m for m in range(1 << S.order) if is_n_konvex(S, n, S.from_mask(m))
    ]
    ok = set(konvex_masks)
    for i, a in enumerate(konvex_masks):
        for b in konvex_masks[i + 1:]:
            if a & b not in ok:
                return S.from_mask(a), S.from_mask(b)
    return None
