"""F-convex hulls, singleton classes, the equivalence they induce and the quotient."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .carrier import (
    ALL,
    MultiplierSet,
    Semigroup,
    Subset,
    check_same_carrier,
    from_index_table,
    iter_bits,
)
from .convexity import decide_konvex, require_finite
from .errors import (
    BadParams,
    CoverMissesSet,
    CoverNotKonvex,
    InvariantViolation,
    WellDefinednessViolation,
)
from .iteration import generated_orbit, linear_orbit, mul_map_orbit, state_orbit
from .reporting import CheckReport

FIXED_POINT = "fixed-point"
FORMULA = "formula"


@dataclass(frozen=True)
class HullResult:
    hull: Subset
    method: str
    rounds: int
    contributing_ns: tuple[int, ...] = ()


def convex_union(S: Semigroup, F: MultiplierSet, a: int) -> tuple[int, tuple[int, ...]]:
    """``⋃_{n in F} n^-1([n]A)`` for a bitmask ``a``.

    Also returns the n values whose term added elements not already present
    (in exploration order, starting from ``a`` itself).
    """
    acc = a
    contributing = []
    for n, st in state_orbit(S, a, F):
        new = S.preimage_of(st.pow, st.sum) & ~acc
        if new:
            acc |= new
            contributing.append(n)
    return acc, tuple(contributing)


def hull_fixedpoint(S: Semigroup, F: MultiplierSet, A: Subset) -> HullResult:
    """Least superset of A stable under ``H -> H ∪ ⋃_{n in F} n^-1([n]H)``.

    ``rounds`` counts the passes that enlarged H (at least 1): a set that is
    already F-convex, or one whose first pass lands on the hull, reports 1.
    """
    require_finite(S, "hulls")
    check_same_carrier(S, A)
    h = A.members
    grew = 0
    while True:
        nxt, _ = convex_union(S, F, h)
        if nxt == h:
            break
        h = nxt
        grew += 1
    return HullResult(Subset(S, h), FIXED_POINT, max(1, grew))


def hull_formula(S: Semigroup, F: MultiplierSet, A: Subset) -> HullResult:
    """``⋃_{n in <F>} n^-1([n]A)`` in one pass; F is closed multiplicatively first."""
    require_finite(S, "hulls")
    check_same_carrier(S, A)
    h, ns = convex_union(S, F.closure(), A.members)
    return HullResult(Subset(S, h), FORMULA, 1, ns)


def hull(S: Semigroup, F: MultiplierSet, A: Subset) -> Subset:
    """The F-convex hull: closed-form union when F is a subsemigroup, else the fixed point."""
    if F.is_subsemigroup:
        return hull_formula(S, F, A).hull
    return hull_fixedpoint(S, F, A).hull


@dataclass
class Sandwich:
    """``A ⊆ single ⊆ exact ⊆ closed``: one union over F, the exact F-hull, the <F>-hull."""

    A: Subset
    single: Subset
    exact: Subset
    closed: Subset

    @property
    def holds(self) -> bool:
        return self.A <= self.single <= self.exact <= self.closed


def hull_sandwich(S: Semigroup, F: MultiplierSet, A: Subset) -> Sandwich:
    require_finite(S, "hulls")
    if F.is_all:
        raw = F
    else:
        raw = MultiplierSet(F.generators, closed=False)
    single, _ = convex_union(S, raw, A.members)
    exact = hull_fixedpoint(S, raw, A).hull
    closed = hull_formula(S, F, A).hull
    return Sandwich(A, Subset(S, single), exact, closed)


# ---------------------------------------------------------------------------
# hulls of finite unions


@dataclass
class UnionHullReport:
    lower: Subset
    hull: Subset
    upper: Subset | None
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def _need_subsemigroup(F: MultiplierSet):
    if not F.is_subsemigroup:
        raise BadParams(f"{F} is not closed under multiplication")


def hull_of_union(
    S: Semigroup,
    F: MultiplierSet,
    sets: list[Subset],
    covers: list[Subset] | None = None,
) -> UnionHullReport:
    """Bracket ``conv_F(A_1 ∪ ... ∪ A_k)`` between hulls of element tuples.

    LOWER unions ``conv_F({a_1..a_k})`` over ``a_i in conv_F(A_i)``; with konvex
    covers ``B_i ⊇ A_i``, UPPER does the same over ``b_i in conv_N(A_i) ∩ B_i``.
    For F = N with covers the lower bound is exact.  Empty ``A_i`` are dropped
    before forming tuples.
    """
    require_finite(S, "hulls")
    _need_subsemigroup(F)
    check_same_carrier(S, *sets)
    if covers is not None:
        if len(covers) != len(sets):
            raise BadParams("need exactly one cover per set")
        check_same_carrier(S, *covers)
        for i, (A, B) in enumerate(zip(sets, covers)):
            if not decide_konvex(S, B, ALL).holds:
                raise CoverNotKonvex(i)
            if not A <= B:
                raise CoverMissesSet(i)
    cache: dict = {}

    def conv(mask: int, G: MultiplierSet = F) -> int:
        key = (mask, G)
        if key not in cache:
            cache[key] = convex_union(S, G.closure(), mask)[0]
        return cache[key]

    def tuple_union(pools: list[int]) -> int:
        out = 0
        done = set()
        for combo in itertools.product(*(list(iter_bits(p)) for p in pools)):
            m = 0
            for x in combo:
                m |= 1 << x
            if m not in done:
                done.add(m)
                out |= conv(m)
        return out

    keep = [i for i, A in enumerate(sets) if A]
    union = 0
    for A in sets:
        union |= A.members
    target = conv(union)
    lower = tuple_union([conv(sets[i].members) for i in keep]) if keep else 0
    upper = None
    if covers is not None:
        upper = (
            tuple_union([conv(sets[i].members, ALL) & covers[i].members for i in keep])
            if keep else 0
        )

    report = UnionHullReport(Subset(S, lower), Subset(S, target),
                             None if upper is None else Subset(S, upper))
    if lower & ~target:
        report.violations.append("lower bound not contained in the hull of the union")
    if upper is not None:
        if target & ~upper:
            report.violations.append("hull of the union exceeds the upper bound")
        if F.is_all and target != lower:
            report.violations.append("hull of the union differs from the tuple-hull union")
    return report


# ---------------------------------------------------------------------------
# singleton classes, equivalence, quotient


def singleton_class(S: Semigroup, F: MultiplierSet, x: int) -> Subset:
    """``{u : n·u = n·x for some n in F}`` (the hull of ``{x}``)."""
    require_finite(S, "singleton classes")
    _need_subsemigroup(F)
    out = 0
    for _, pm in mul_map_orbit(S, F):
        px = pm[x]
        for u, pu in enumerate(pm):
            if pu == px:
                out |= 1 << u
    return Subset(S, out)


def equiv(S: Semigroup, F: MultiplierSet, x: int, y: int) -> bool:
    """Whether ``n·x = n·y`` for some n in F."""
    require_finite(S, "equivalence")
    _need_subsemigroup(F)
    start = (x, y)
    if F.is_all:
        orbit = linear_orbit(start, lambda s: (S.table[s[0]][x], S.table[s[1]][y]))
    elif F.closed:
        orbit = generated_orbit(
            start, F.generators, lambda s, g: (S.mul(g, s[0]), S.mul(g, s[1]))
        )
    else:
        orbit = [(g, (S.mul(g, x), S.mul(g, y))) for g in F.generators]
    return any(a == b for _, (a, b) in orbit)


class PartitionViolation(InvariantViolation):
    pass


@dataclass
class QuotientMap:
    classes: list[Subset]
    projection: tuple[int, ...]
    quotient: Semigroup
    F: MultiplierSet
    cancellation_violations: list[str] = field(default_factory=list)


def quotient(S: Semigroup, F: MultiplierSet = ALL, n_max_internal: int = 24) -> QuotientMap:
    """Quotient of S by ``x ~ y iff n·x = n·y for some n in F``.

    Classes are ordered by their smallest element, which also represents
    them.  Raises ``WellDefinednessViolation`` if the addition of classes
    depended on representatives (impossible for a subsemigroup F).
    """
    require_finite(S, "quotients")
    _need_subsemigroup(F)
    proj = [-1] * S.order
    classes = []
    for x in range(S.order):
        if proj[x] >= 0:
            continue
        cls = singleton_class(S, F, x)
        for u in cls:
            if proj[u] >= 0:
                raise PartitionViolation(
                    f"classes of {S.label(u)} and {S.label(x)} overlap without coinciding"
                )
            proj[u] = len(classes)
        classes.append(cls)
    for x in range(S.order):
        for y in range(x + 1, S.order):
            if equiv(S, F, x, y) != (proj[x] == proj[y]):
                raise PartitionViolation(
                    f"equivalence of {S.label(x)}, {S.label(y)} disagrees with the classes"
                )
    reps = [min(c) for c in classes]
    table = [[proj[S.table[r][s]] for s in reps] for r in reps]
    for i, ci in enumerate(classes):
        for j, cj in enumerate(classes):
            for x in ci:
                for y in cj:
                    if proj[S.table[x][y]] != table[i][j]:
                        raise WellDefinednessViolation(
                            f"{S.label(x)}+{S.label(y)} leaves the class of "
                            f"{S.label(reps[i])}+{S.label(reps[j])}"
                        )
    labels = ["[" + S.label(r) + "]" for r in reps]
    Q = from_index_table(labels, table, name=f"{S.name}/~{F}", validate=False)
    qm = QuotientMap(classes, tuple(proj), Q, F)

    ns = F.members_up_to(n_max_internal)
    k = len(classes)
    for i in range(k):
        for j in range(i + 1, k):
            for n in ns:
                if Q.mul(n, i) == Q.mul(n, j):
                    qm.cancellation_violations.append(
                        f"{n}·{labels[i]} = {n}·{labels[j]} with distinct classes"
                    )
                    break
            if equiv(Q, F, i, j):
                qm.cancellation_violations.append(
                    f"{labels[i]} ~ {labels[j]} in the quotient"
                )
    return qm


def quotient_json(qm: QuotientMap) -> dict:
    from .carrier import to_json

    return {
        "multipliers": str(qm.F),
        "classes": [c.labels() for c in qm.classes],
        "quotient": to_json(qm.quotient),
    }


def check_quotient(S: Semigroup, F: MultiplierSet = ALL) -> CheckReport:
    """Partition, compatibility, homomorphism and cancellation for one carrier."""
    report = CheckReport("quotient")
    try:
        qm = quotient(S, F)
    except InvariantViolation as exc:
        report.fail(f"{S.name} {F}: {exc}")
        return report
    covered = 0
    for c in qm.classes:
        if c.members & covered:
            report.fail(f"{S.name} {F}: classes overlap")
        covered |= c.members
    if covered != S.full_mask:
        report.fail(f"{S.name} {F}: classes do not cover the carrier")
    for x in range(S.order):
        if singleton_class(S, F, x) != qm.classes[qm.projection[x]]:
            report.fail(f"{S.name} {F}: hull of {S.label(x)} is not its class")
    Q, p = qm.quotient, qm.projection
    for x in range(S.order):
        for y in range(S.order):
            if p[S.table[x][y]] != Q.table[p[x]][p[y]]:
                report.fail(f"{S.name} {F}: projection not additive at {x},{y}")
    for v in qm.cancellation_violations:
        report.fail(f"{S.name} {F}: {v}")
    report.count("classes", len(qm.classes))
    report.count("carriers")
    return report
