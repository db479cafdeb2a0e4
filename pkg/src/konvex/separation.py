"""F-disjointness and separation of N-disjoint sets by complementary convex sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .carrier import ALL, MultiplierSet, Semigroup, Subset, check_same_carrier
from .convexity import Decision, decide_convex, decide_konvex, is_n_convex, is_n_konvex
from .errors import (
    CoverNotKonvex,
    InputsNotDisjoint,
    LemmaViolation,
    NotComplementary,
    NotDisjointInput,
    SymbolicUnsupported,
)
from .hull import hull
from .iteration import pair_sumset_orbit
from .reporting import CheckReport
from .setalg import need_n, sumset, sumset_power

DISJOINT = "disjoint-for-all-n"
COLLISION = "collision"
A_SIDE = "A"
B_SIDE = "B"


@dataclass(frozen=True)
class DisjointnessEvidence:
    disjoint: bool
    collision_n: int | None = None
    collision_element: object = None
    tail_length: int = 0
    cycle_length: int = 0

    @property
    def verdict(self) -> str:
        return DISJOINT if self.disjoint else COLLISION

    def __bool__(self):
        return self.disjoint


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def are_F_disjoint(S: Semigroup, F, A: Subset, B: Subset) -> DisjointnessEvidence:
    """Whether ``[n]A ∩ [n]B = ∅`` for every n in F.

    ``F`` is a ``MultiplierSet`` or an explicit iterable of n values; integer
    carriers accept only the latter.
    """
    check_same_carrier(S, A, B)
    if not isinstance(F, MultiplierSet):
        return _disjoint_on_list(S, [need_n(n) for n in F], A, B)
    if not S.finite:
        if F.is_all or F.closed:
            raise SymbolicUnsupported(
                f"disjointness for all n in {F} needs a finite carrier"
            )
        return _disjoint_on_list(S, list(F.generators), A, B)
    orbit = pair_sumset_orbit(S, A.members, B.members, F)
    for n, (sa, sb) in orbit:
        common = sa & sb
        if common:
            return DisjointnessEvidence(False, n, _lowest(common), orbit.tail, orbit.cycle)
    return DisjointnessEvidence(True, tail_length=orbit.tail, cycle_length=orbit.cycle)


def _disjoint_on_list(S, ns: list[int], A, B) -> DisjointnessEvidence:
    for n in sorted(set(ns)):
        common = sumset_power(S, n, A) & sumset_power(S, n, B)
        if common:
            return DisjointnessEvidence(False, n, min(common))
    return DisjointnessEvidence(True)


def extend_step(S: Semigroup, A: Subset, B: Subset, s: int, check_input: bool = True) -> str:
    """Side (``"A"`` or ``"B"``) that can absorb ``s`` keeping N-disjointness; A is tried first."""
    if check_input:
        ev = are_F_disjoint(S, ALL, A, B)
        if not ev:
            raise NotDisjointInput(
                f"{A!r} and {B!r} collide at n={ev.collision_n}"
            )
    if s in A:
        return A_SIDE
    if s in B:
        return B_SIDE
    point = S.singleton(s)
    if are_F_disjoint(S, ALL, A | point, B):
        return A_SIDE
    if are_F_disjoint(S, ALL, A, B | point):
        return B_SIDE
    raise LemmaViolation(
        f"neither side of ({A!r}, {B!r}) can absorb {S.label(s)}"
    )


@dataclass
class SeparationCertificate:
    A: Subset
    B: Subset
    insertion_log: list[tuple[str, str]]
    evidence: DisjointnessEvidence
    convex_A: Decision
    convex_B: Decision
    konvex_A: Decision | None = None
    konvex_B: Decision | None = None

    def to_json(self) -> dict:
        out = {
            "A": self.A.labels(),
            "B": self.B.labels(),
            "insertion_log": [list(e) for e in self.insertion_log],
            "evidence": {
                "verdict": self.evidence.verdict,
                "tail": self.evidence.tail_length,
                "cycle": self.evidence.cycle_length,
            },
            "convex": {"A": self.convex_A.holds, "B": self.convex_B.holds},
        }
        if self.konvex_A is not None:
            out["konvex"] = {"A": self.konvex_A.holds, "B": self.konvex_B.holds}
        return out


def stone_separate(S: Semigroup, A0: Subset, B0: Subset) -> SeparationCertificate:
    """Grow N-disjoint ``A0, B0`` into complementary N-disjoint convex ``A ⊇ A0, B ⊇ B0``.

    Elements outside ``A0 ∪ B0`` are placed greedily in index order.
    """
    if not S.finite:
        raise SymbolicUnsupported("separation needs a finite carrier")
    check_same_carrier(S, A0, B0)
    ev = are_F_disjoint(S, ALL, A0, B0)
    if not ev:
        raise InputsNotDisjoint(ev)
    A, B = A0, B0
    log = []
    for s in range(S.order):
        if s in A or s in B:
            continue
        side = extend_step(S, A, B, s, check_input=False)
        if side == A_SIDE:
            A = A | S.singleton(s)
        else:
            B = B | S.singleton(s)
        log.append((S.label(s), side))
    final = are_F_disjoint(S, ALL, A, B)
    cert = SeparationCertificate(
        A, B, log, final, decide_convex(S, A, ALL), decide_convex(S, B, ALL)
    )
    if decide_konvex(S, S.whole(), ALL):
        cert.konvex_A = decide_konvex(S, A, ALL)
        cert.konvex_B = decide_konvex(S, B, ALL)
    return cert


def verify_certificate(
    S: Semigroup, cert: SeparationCertificate, A0: Subset | None = None, B0: Subset | None = None
) -> list[str]:
    """Re-check every claim of a certificate from scratch; returns the problems found.

    Disjointness is replayed with plain iterated sumsets for n up to
    ``tail + 2·cycle``; convexity with the fixed-n predicates up to the same
    horizon of each decision.
    """
    problems = []
    A, B = cert.A, cert.B
    if (A | B) != S.whole():
        problems.append("A ∪ B is not the whole carrier")
    if A & B:
        problems.append("A and B intersect")
    if A0 is not None and not A0 <= A:
        problems.append("A does not contain A0")
    if B0 is not None and not B0 <= B:
        problems.append("B does not contain B0")
    if not cert.evidence.disjoint:
        problems.append("evidence reports a collision")
    horizon = cert.evidence.tail_length + 2 * cert.evidence.cycle_length
    if horizon < 1:
        problems.append("evidence has no period")
    sa, sb = A, B
    for n in range(1, horizon + 1):
        if n > 1:
            sa, sb = sumset(S, sa, A), sumset(S, sb, B)
        if sa & sb:
            problems.append(f"[{n}]A and [{n}]B intersect")
            break
    for name, X, dec, pred in (
        ("A", A, cert.convex_A, is_n_convex),
        ("B", B, cert.convex_B, is_n_convex),
        ("A", A, cert.konvex_A, is_n_konvex),
        ("B", B, cert.konvex_B, is_n_konvex),
    ):
        if dec is None:
            continue
        what = "convex" if pred is is_n_convex else "konvex"
        if not dec.holds:
            problems.append(f"{name} is not {what}")
            continue
        bound = max(1, dec.tail_length + 2 * dec.cycle_length)
        bad = [n for n in range(1, bound + 1) if not pred(S, n, X)]
        if bad:
            problems.append(f"{name} is not {bad[0]}-{what}")
    whole_konvex = decide_konvex(S, S.whole(), ALL).holds
    if whole_konvex and cert.konvex_A is None:
        problems.append("carrier is konvex but konvexity of the parts was not certified")
    return problems


def check_disjoint_hulls(
    S: Semigroup, F: MultiplierSet, A: Subset, B: Subset, konvex_cover: Subset | None = None
) -> CheckReport:
    """F-disjoint sets have disjoint F-hulls; with a konvex cover of A the converse holds."""
    report = CheckReport("disjoint-hulls")
    if konvex_cover is not None:
        if not decide_konvex(S, konvex_cover, F) or not A <= konvex_cover:
            raise CoverNotKonvex(0)
    disjoint = are_F_disjoint(S, F, A, B).disjoint
    hulls_meet = bool(hull(S, F, A) & hull(S, F, B))
    if disjoint and hulls_meet:
        report.fail(f"{A!r}, {B!r}: F-disjoint but hulls intersect")
    if konvex_cover is not None and not hulls_meet and not disjoint:
        report.fail(f"{A!r}, {B!r}: hulls disjoint, konvex cover, yet not F-disjoint")
    report.count("pairs")
    return report


def complementary_check(S: Semigroup, A: Subset, B: Subset) -> CheckReport:
    """Complementary N-disjoint sets are convex, and konvex when S is."""
    check_same_carrier(S, A, B)
    if (A | B) != S.whole() or (A & B):
        raise NotComplementary(f"{A!r} and {B!r} do not partition the carrier")
    report = CheckReport("complementary")
    if not are_F_disjoint(S, ALL, A, B):
        report.stats["disjoint"] = 0
        return report
    report.stats["disjoint"] = 1
    for name, X in (("A", A), ("B", B)):
        if not decide_convex(S, X, ALL):
            report.fail(f"{name}={X!r} not convex")
    if decide_konvex(S, S.whole(), ALL):
        for name, X in (("A", A), ("B", B)):
            if not decide_konvex(S, X, ALL):
                report.fail(f"{name}={X!r} not konvex although S is")
    return report


def extension_check(S: Semigroup, pairs: Iterable[tuple[int, int]] | None = None) -> CheckReport:
    """Every N-disjoint pair (A, B) and every s: one of the two extensions stays N-disjoint.

    ``pairs`` defaults to all pairs of disjoint subsets.
    """
    report = CheckReport("one-point-extension")
    cache: dict = {}

    def disjoint(a: int, b: int) -> bool:
        key = (a, b) if a <= b else (b, a)
        hit = cache.get(key)
        if hit is None:
            hit = cache[key] = bool(are_F_disjoint(S, ALL, Subset(S, a), Subset(S, b)))
        return hit

    if pairs is None:
        pairs = _disjoint_mask_pairs(S.order)
    for a, b in pairs:
        if a & b or not disjoint(a, b):
            continue
        report.count("disjoint_pairs")
        for s in range(S.order):
            bit = 1 << s
            if not (disjoint(a | bit, b) or disjoint(a, b | bit)):
                report.fail(f"{S.name}: A={Subset(S, a)!r}, B={Subset(S, b)!r}, s={S.label(s)}")
    return report


def _disjoint_mask_pairs(order: int):
    full = (1 << order) - 1
    for a in range(full + 1):
        rest = full & ~a
        b = rest
        while True:
            yield a, b
            if b == 0:
                break
            b = (b - 1) & rest
