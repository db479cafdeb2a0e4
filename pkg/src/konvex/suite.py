"""The full verification suite: every structural theorem as an executable sweep.

Each ``check_*`` function returns a ``CheckReport``; ``run_suite`` runs them
all.  Instance counts default to the acceptance sizes and shrink with
``scale``.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from functools import lru_cache

from .carrier import (
    ALL,
    INT,
    INT_NO_ONE_MONOID,
    MultiplierSet,
    Semigroup,
    Subset,
    catalog,
    capped_add,
    cyclic,
    product,
    restrict,
    sample_carrier,
    subsemigroup_closure,
)
from .convexity import (
    check_structure_props,
    decide_convex,
    decide_konvex,
    find_konvex_intersection_failure,
    is_n_convex,
    is_n_konvex,
)
from .hull import check_quotient, hull_fixedpoint, hull_formula, hull_of_union, hull_sandwich
from .reporting import CheckReport
from .separation import are_F_disjoint, extension_check, stone_separate, verify_certificate
from . import setalg
from .setalg import (
    INCLUSION_ONLY,
    PROPER,
    identity_report,
    preimage,
    scale,
    sumset,
    sumset_power,
)


def _carriers(order_cap: int, max_order: int = 8) -> list[Semigroup]:
    cap = min(order_cap, max_order)
    return catalog(cap) if cap >= 1 else []


def _rand_subset(rng: random.Random, S: Semigroup) -> Subset:
    p = rng.random()
    return S.from_mask(sum(1 << i for i in range(S.order) if rng.random() < p))


def _n(scale: float, base: int) -> int:
    return max(1, int(round(base * scale)))


# ---------------------------------------------------------------------------


def check_identities(order_cap=8, seed=0, scale=1.0, per_carrier=200) -> CheckReport:
    report = CheckReport("sumset-identities")
    rng = random.Random(seed)
    carriers = _carriers(order_cap)
    report.stats["carriers"] = len(carriers)
    for S in carriers:
        for _ in range(_n(scale, per_carrier)):
            A, B = _rand_subset(rng, S), _rand_subset(rng, S)
            k, n = rng.randint(1, 4), rng.randint(1, 4)
            family = [A, B, _rand_subset(rng, S)]
            rep = identity_report(S, A, B, k, n, family)
            report.count("instances")
            for r in rep.violations:
                report.fail(f"{S.name} A={A!r} B={B!r} k={k} n={n}: {r.name}")
    return report


def check_proper_inclusions(**_) -> CheckReport:
    """Odd-number fixture in Z: A = B = {1, 3}, k = n = 2."""
    report = CheckReport("proper-inclusions")
    A = INT.subset([1, 3])
    rep = identity_report(INT, A, A, 2, 2)
    for name in INCLUSION_ONLY:
        report.count("relations")
        if rep.status(name) != PROPER:
            report.fail(f"{name}: expected proper inclusion, got {rep.status(name)}")
    for r in rep.violations:
        report.fail(f"{r.name} violated")
    return report


def check_counterexamples(order_cap=8, corrupt=False, cyclic_max=12, **_) -> CheckReport:
    report = CheckReport("counterexamples")
    Z, N1 = INT, INT_NO_ONE_MONOID

    def expect(what, got, want):
        report.count("fixtures")
        if got != want:
            report.fail(f"{what}: expected {want}, got {got}")

    for n in range(1, 11):
        expect(f"{{0,1}} is {n}-convex in Z", is_n_convex(Z, n, Z.subset([0, 1])), True)
    expect("{0,2} is 2-convex in Z", is_n_convex(Z, 2, Z.subset([0, 2])), corrupt)
    for n in range(2, 6):
        for k in range(1, 7):
            expect(f"{{0,{k}}} is {n}-convex iff gcd({n},{k}) = 1",
                   is_n_convex(Z, n, Z.subset([0, k])), math.gcd(n, k) == 1)

    for n in (2, 3, 4, 5):
        A, B = Z.subset([0, n - 1]), Z.subset([0, 2 * n - 1])
        expect(f"A={{0,{n - 1}}} is {n}-convex", is_n_convex(Z, n, A), True)
        expect(f"B={{0,{2 * n - 1}}} is {n}-convex", is_n_convex(Z, n, B), True)
        AB = sumset(Z, A, B)
        expect(f"A+B for n={n}", sorted(AB), [0, n - 1, 2 * n - 1, 3 * n - 2])
        expect(f"A+B not {n}-convex", is_n_convex(Z, n, AB), False)
        witness = n - 1 + n // 2
        pre = preimage(Z, n, sumset_power(Z, n, AB))
        expect(f"witness {witness} in n^-1([n](A+B)) \\ (A+B), n={n}",
               witness in pre and witness not in AB, True)

    A = N1.subset([0, 2])
    for n in range(1, 6):
        expect(f"{{0,2}} is {n}-convex in the no-one monoid", is_n_convex(N1, n, A), True)
    kA = sumset_power(N1, 2, A)
    expect("[2]{0,2} in the no-one monoid", sorted(kA), [0, 2, 4])
    expect("[2]{0,2} not 2-convex", is_n_convex(N1, 2, kA), False)
    expect("2^-1([4]{0,2})", sorted(preimage(N1, 2, sumset_power(N1, 4, A))), [0, 2, 3, 4])

    Z12 = cyclic(12)
    H = preimage(Z12, 4, Z12.subset([0]))
    expect("4^-1{0} in Z_12", H.labels(), ["0", "3", "6", "9"])
    expect("{0} is 2-konvex in Z_12", is_n_konvex(Z12, 2, Z12.subset([0])), True)
    expect("[2]H = H", sumset_power(Z12, 2, H) == H, True)
    expect("|2H| = 4/gcd(2,4)", len(scale(Z12, 2, H)), 2)
    expect("4^-1{0} not 2-konvex in Z_12", is_n_konvex(Z12, 2, H), False)

    # konvex sets not closed under intersection: brute force in cyclic groups
    found = None
    for m in range(2, cyclic_max + 1):
        for n in (2, 3, 4):
            hit = find_konvex_intersection_failure(cyclic(m), n)
            if hit:
                found = (m, n, hit)
                break
        if found:
            break
    report.stats["cyclic_groups_searched"] = cyclic_max - 1
    report.count("fixtures")
    if found is None:
        report.fail(
            f"no pair of n-konvex sets with non-konvex intersection in Z_m, "
            f"m <= {cyclic_max}, n in 2..4"
        )
    # the same phenomenon in a monogenic (cyclic) semigroup that is not a group
    P = product(cyclic(4), capped_add(3))
    mono = restrict(P, subsemigroup_closure(P, P.subset(["(1,1)"])), name="<(1,1)>")
    hit = find_konvex_intersection_failure(mono, 3)
    report.count("fixtures")
    if hit is None:
        report.fail("no konvex-intersection failure in the monogenic semigroup <(1,1)>")
    else:
        A, B = hit
        ok = is_n_konvex(mono, 3, A) and is_n_konvex(mono, 3, B) and not is_n_konvex(mono, 3, A & B)
        if not ok:
            report.fail("monogenic konvex-intersection witness does not re-verify")
        report.stats["monogenic_witness"] = f"{A!r} ∩ {B!r}"
    return report


def check_structure(order_cap=8, seed=0, scale=1.0, per_carrier=100) -> CheckReport:
    report = CheckReport("spectrum-structure")
    rng = random.Random(seed + 4)
    for S in _carriers(order_cap):
        for _ in range(_n(scale, per_carrier)):
            A = _rand_subset(rng, S)
            report.absorb(check_structure_props(S, A, 12), prefix=f"{S.name}: ")
    return report


def check_hull_formula(order_cap=8, seed=0, scale=1.0, instances=10_000) -> CheckReport:
    report = CheckReport("hull-formula")
    rng = random.Random(seed + 5)
    carriers = _carriers(order_cap)
    if not carriers:
        return report
    for _ in range(_n(scale, instances)):
        S = rng.choice(carriers)
        A = _rand_subset(rng, S)
        f = hull_formula(S, ALL, A)
        p = hull_fixedpoint(S, ALL, A)
        report.count("instances")
        if f.hull != p.hull:
            report.fail(f"{S.name} A={A!r}: formula {f.hull!r} != fixed point {p.hull!r}")
        if p.rounds != 1:
            report.fail(f"{S.name} A={A!r}: fixed point took {p.rounds} rounds")
        if not A <= f.hull or not decide_convex(S, f.hull, ALL):
            report.fail(f"{S.name} A={A!r}: hull {f.hull!r} not a convex superset")
    return report


@lru_cache(maxsize=None)
def _konvex_masks(S: Semigroup) -> tuple[int, ...]:
    return tuple(
        m for m in range(1, 1 << S.order) if decide_konvex(S, S.from_mask(m), ALL)
    )


def _random_generated(rng: random.Random) -> MultiplierSet:
    gens = rng.sample(range(1, 7), rng.randint(1, 2))
    return MultiplierSet.of(*gens)


def check_hull_sandwich(order_cap=8, seed=0, scale=1.0, generated=1000, unions=500) -> CheckReport:
    report = CheckReport("hull-sandwich")
    rng = random.Random(seed + 6)
    carriers = _carriers(order_cap)
    if not carriers:
        return report
    for _ in range(_n(scale, generated)):
        S = rng.choice(carriers)
        F = _random_generated(rng)
        A = _rand_subset(rng, S)
        sw = hull_sandwich(S, F, A)
        report.count("sandwich_instances")
        if not sw.holds:
            report.fail(f"{S.name} F={F} A={A!r}: sandwich broken {sw}")
        closed_fp = hull_fixedpoint(S, F, A).hull
        if closed_fp != sw.closed:
            report.fail(f"{S.name} F={F} A={A!r}: <F> fixed point {closed_fp!r} != formula {sw.closed!r}")

    small = [S for S in carriers if S.order <= 6] or carriers
    done = 0
    while done < _n(scale, unions):
        S = rng.choice(small)
        pool = _konvex_masks(S)
        if not pool:
            continue
        k = rng.randint(1, 3)
        covers = [S.from_mask(rng.choice(pool)) for _ in range(k)]
        sets = [S.from_mask(c.members & _rand_subset(rng, S).members) for c in covers]
        F = ALL if rng.random() < 0.6 else _random_generated(rng)
        rep = hull_of_union(S, F, sets, covers)
        done += 1
        report.count("union_instances")
        if F.is_all:
            report.count("cor_equality_instances")
        for v in rep.violations:
            report.fail(f"{S.name} F={F} sets={sets!r} covers={covers!r}: {v}")
    return report


QUOTIENT_MULTIPLIERS = (
    ALL, MultiplierSet.of(1), MultiplierSet.of(2), MultiplierSet.of(3), MultiplierSet.of(2, 3),
)


def check_quotients(order_cap=8, **_) -> CheckReport:
    report = CheckReport("partition-quotient")
    for S in _carriers(order_cap):
        for F in QUOTIENT_MULTIPLIERS:
            report.absorb(check_quotient(S, F))
    return report


def check_extension_lemma(order_cap=8, **_) -> CheckReport:
    """Exhaustive over all disjoint pairs; for order <= 6 this is at most 3^6 pairs."""
    report = CheckReport("one-point-extension")
    for S in _carriers(order_cap, max_order=6):
        report.absorb(extension_check(S), prefix="")
        report.count("carriers")
    return report


def check_separation(order_cap=8, seed=0, scale=1.0, instances=200) -> CheckReport:
    report = CheckReport("separation")
    rng = random.Random(seed + 9)
    cap = min(order_cap, 8)
    if cap < 1:
        return report
    done = 0
    attempt = 0
    while done < _n(scale, instances):
        attempt += 1
        S = sample_carrier(seed * 100_003 + attempt, cap)
        A0 = S.from_mask(_rand_subset(rng, S).members & _rand_subset(rng, S).members)
        B0 = S.from_mask(_rand_subset(rng, S).members & ~A0.members & _rand_subset(rng, S).members)
        if not are_F_disjoint(S, ALL, A0, B0):
            continue
        done += 1
        cert = stone_separate(S, A0, B0)
        report.count("instances")
        if cert.konvex_A is not None:
            report.count("konvex_carrier_instances")
        for p in verify_certificate(S, cert, A0, B0):
            report.fail(f"{S.name} A0={A0!r} B0={B0!r}: {p}")
        if stone_separate(S, A0, B0).A != cert.A:
            report.fail(f"{S.name} A0={A0!r} B0={B0!r}: nondeterministic result")
    return report


def check_decisions(order_cap=8, seed=0, scale=1.0, instances=5000, horizon=50) -> CheckReport:
    report = CheckReport("decision-soundness")
    rng = random.Random(seed + 10)
    carriers = _carriers(order_cap)
    if not carriers:
        return report
    for _ in range(_n(scale, instances)):
        S = rng.choice(carriers)
        A, B = _rand_subset(rng, S), _rand_subset(rng, S)
        dc, dk = decide_convex(S, A, ALL), decide_konvex(S, A, ALL)
        dd = are_F_disjoint(S, ALL, A, B)
        bound = max(horizon, dc.tail_length + 2 * dc.cycle_length,
                    dk.tail_length + 2 * dk.cycle_length)
        sweep_c = sweep_k = True
        power = A
        for n in range(1, bound + 1):
            if n > 1:
                power = sumset(S, power, A)
            sweep_c = sweep_c and preimage(S, n, power) <= A
            sweep_k = sweep_k and power <= setalg.scale(S, n, A)
        sa, sb, sweep_d = A, B, True
        for n in range(1, max(horizon, dd.tail_length + 2 * dd.cycle_length) + 1):
            if n > 1:
                sa, sb = sumset(S, sa, A), sumset(S, sb, B)
            if sa & sb:
                sweep_d = False
                break
        report.count("instances")
        for what, dec, sweep, pred in (
            ("convex", dc, sweep_c, is_n_convex),
            ("konvex", dk, sweep_k, is_n_konvex),
        ):
            if dec.holds != sweep:
                report.fail(f"{S.name} A={A!r}: {what} decision {dec.verdict} vs sweep {sweep}")
            if not dec.holds and pred(S, dec.witness_n, A):
                report.fail(f"{S.name} A={A!r}: {what} witness n={dec.witness_n} does not fail")
        if dd.disjoint != sweep_d:
            report.fail(f"{S.name} A={A!r} B={B!r}: disjointness {dd.verdict} vs sweep {sweep_d}")
        if dd.disjoint and (A & B):
            report.fail(f"{S.name}: N-disjoint sets {A!r}, {B!r} intersect")
        if not dd.disjoint:
            n = dd.collision_n
            if dd.collision_element not in (sumset_power(S, n, A) & sumset_power(S, n, B)):
                report.fail(f"{S.name}: collision witness at n={n} does not re-verify")
    return report


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Criterion:
    number: int
    check: object
    title: str
    time_limit: float | None = None


CRITERIA = (
    Criterion(1, check_identities, "scalar/sumset identities, monotonicity, family laws", 60),
    Criterion(2, check_proper_inclusions, "odd-number fixture: five proper inclusions"),
    Criterion(3, check_counterexamples, "counterexample fixtures"),
    Criterion(4, check_structure, "K_A multiplicative, C_A divisor-closed"),
    Criterion(5, check_hull_formula, "hull union formula = least fixed point, one round", 120),
    Criterion(6, check_hull_sandwich, "generated-F sandwich; hulls of unions with konvex covers"),
    Criterion(7, check_quotients, "singleton hulls partition; quotient compatible and cancellative"),
    Criterion(8, check_extension_lemma, "one-element extension keeps N-disjointness"),
    Criterion(9, check_separation, "separation certificates re-verify", 120),
    Criterion(10, check_decisions, "all-n decisions agree with bounded sweeps"),
)


def run_criterion(c: Criterion, order_cap=8, seed=0, scale=1.0, corrupt=False) -> CheckReport:
    kwargs = dict(order_cap=order_cap, seed=seed, scale=scale)
    if c.check is check_counterexamples:
        kwargs["corrupt"] = corrupt
    t0 = time.perf_counter()
    report = c.check(**kwargs)
    elapsed = time.perf_counter() - t0
    report.stats["seconds"] = round(elapsed, 2)
    if c.time_limit is not None and scale >= 1.0 and elapsed > c.time_limit:
        report.fail(f"runtime {elapsed:.1f}s exceeds {c.time_limit}s")
    return report


def run_suite(order_cap=8, seed=0, scale=1.0, corrupt=False, only=None) -> list[tuple[Criterion, CheckReport]]:
    out = []
    for c in CRITERIA:
        if only and c.number not in only:
            continue
        out.append((c, run_criterion(c, order_cap, seed, scale, corrupt)))
    return out
