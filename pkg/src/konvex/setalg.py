"""Set operations nA, n^-1 A, A + B and [n]A, and the identity surface they obey."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

from .carrier import INT_NO_ONE, Semigroup, Subset, check_same_carrier
from .errors import BadN, BadParams


def need_n(n) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise BadN(n)
    return n


def scale(S: Semigroup, n: int, A: Subset) -> Subset:
    """``nA = {n·x : x in A}``."""
    need_n(n)
    check_same_carrier(S, A)
    if S.finite:
        return Subset(S, S.image(S.mul_map(n), A.members))
    return Subset(S, frozenset(n * x for x in A.members))


def preimage(S: Semigroup, n: int, A: Subset) -> Subset:
    """``n^-1 A = {x : n·x in A}``; on integer carriers only exact divisors qualify."""
    need_n(n)
    check_same_carrier(S, A)
    if S.finite:
        return Subset(S, S.preimage_of(S.mul_map(n), A.members))
    out = frozenset(m // n for m in A.members if m % n == 0)
    if S.kind == INT_NO_ONE:
        out = frozenset(x for x in out if x != 1)
    return Subset(S, out)


def sumset(S: Semigroup, A: Subset, B: Subset) -> Subset:
    check_same_carrier(S, A, B)
    if S.finite:
        return Subset(S, S.sum_masks(A.members, B.members))
    return Subset(S, frozenset(a + b for a in A.members for b in B.members))


def sumset_powers(S: Semigroup, A: Subset, n_max: int) -> list[Subset]:
    """``[[1]A, [2]A, ..., [n_max]A]`` via ``[n+1]A = [n]A + A``."""
    need_n(n_max)
    check_same_carrier(S, A)
    out = [A]
    for _ in range(n_max - 1):
        out.append(sumset(S, out[-1], A))
    return out


def sumset_power(S: Semigroup, n: int, A: Subset) -> Subset:
    """The n-fold sumset ``[n]A``."""
    need_n(n)
    return sumset_powers(S, A, n)[-1]


# ---------------------------------------------------------------------------
# saturation-aware wrapper used by the CLI


@dataclass(frozen=True)
class OpReport:
    result: Subset
    saturated: bool = False


def _value(S: Semigroup, x) -> int:
    return int(S.labels[x])


def _cap_value(S: Semigroup) -> int:
    return int(S.labels[S.cap])


def run_op(S: Semigroup, op: str, n: int | None, A: Subset, B: Subset | None = None) -> OpReport:
    """Run one of ``scale | preimage | sumset | power`` and flag saturation.

    On capped-addition carriers an operation is flagged ``saturated`` when
    some integer sum it formed exceeded the cap, i.e. when the result may
    differ from the same computation in the nonnegative integers.
    """
    if op == "sumset":
        if B is None:
            raise BadParams("sumset needs two sets")
        result = sumset(S, A, B)
    elif op in ("scale", "preimage", "power"):
        fn = {"scale": scale, "preimage": preimage, "power": sumset_power}[op]
        result = fn(S, n, A)
    else:
        raise BadParams(f"unknown operation {op!r}")
    saturated = False
    if S.finite and S.cap is not None:
        c = _cap_value(S)
        vals = [_value(S, x) for x in A]
        if op == "scale":
            saturated = any(n * v > c for v in vals)
        elif op == "power":
            saturated = bool(vals) and n * max(vals) > c
        elif op == "sumset":
            other = [_value(S, x) for x in B]
            saturated = bool(vals and other) and max(vals) + max(other) > c
        else:
            saturated = S.cap in A and any(
                n * _value(S, x) > c for x in range(S.order)
            )
    return OpReport(result, saturated)


# ---------------------------------------------------------------------------
# identity/inclusion surface

EQUAL = "equal"
PROPER = "proper-inclusion"
VIOLATION = "VIOLATION"


@dataclass(frozen=True)
class Relation:
    name: str
    kind: str  # "=", "<=" or ">="
    lhs: Subset
    rhs: Subset
    status: str


def _relation(name: str, kind: str, lhs: Subset, rhs: Subset) -> Relation:
    if lhs == rhs:
        status = EQUAL
    elif kind == "=":
        status = VIOLATION
    elif (kind == "<=" and lhs <= rhs) or (kind == ">=" and rhs <= lhs):
        status = PROPER
    else:
        status = VIOLATION
    return Relation(name, kind, lhs, rhs, status)


@dataclass
class IdentityReport:
    relations: list[Relation] = field(default_factory=list)

    @property
    def violations(self) -> list[Relation]:
        return [r for r in self.relations if r.status == VIOLATION]

    def status(self, name: str) -> str:
        for r in self.relations:
            if r.name == name:
                return r.status
        raise KeyError(name)


INCLUSION_ONLY = (
    "(k+n)A <= kA+nA",
    "kA+nA >= (kn)(k^-1A+n^-1A)",
    "n^-1(A+B) >= n^-1A+n^-1B",
    "[k](n^-1A) <= n^-1([k]A)",
    "k(n^-1A) <= n^-1(kA)",
)


def identity_report(
    S: Semigroup, A: Subset, B: Subset, k: int, n: int, family: list[Subset] | None = None
) -> IdentityReport:
    """Evaluate the twelve scalar/sumset relations, monotonicity and family laws.

    Monotonicity is checked on the nested pair ``A ⊆ A ∪ B``; the family laws
    on ``family`` (default ``[A, B]``).
    """
    need_n(k)
    need_n(n)
    check_same_carrier(S, A, B)
    sc = lambda m, X: scale(S, m, X)  # noqa: E731
    pre = lambda m, X: preimage(S, m, X)  # noqa: E731
    pw = lambda m, X: sumset_power(S, m, X)  # noqa: E731
    add = lambda X, Y: sumset(S, X, Y)  # noqa: E731
    rel = []
    rel.append(_relation("(k+n)A <= kA+nA", "<=", sc(k + n, A), add(sc(k, A), sc(n, A))))
    rel.append(_relation("(kn)A = k(nA)", "=", sc(k * n, A), sc(k, sc(n, A))))
    rel.append(_relation("n(A+B) = nA+nB", "=", sc(n, add(A, B)), add(sc(n, A), sc(n, B))))
    rel.append(_relation("[k+n]A = [k]A+[n]A", "=", pw(k + n, A), add(pw(k, A), pw(n, A))))
    rel.append(_relation("[kn]A = [k]([n]A)", "=", pw(k * n, A), pw(k, pw(n, A))))
    rel.append(_relation("[n](A+B) = [n]A+[n]B", "=", pw(n, add(A, B)), add(pw(n, A), pw(n, B))))
    rel.append(_relation(
        "kA+nA >= (kn)(k^-1A+n^-1A)", ">=",
        add(sc(k, A), sc(n, A)), sc(k * n, add(pre(k, A), pre(n, A))),
    ))
    rel.append(_relation("(kn)^-1A = k^-1(n^-1A)", "=", pre(k * n, A), pre(k, pre(n, A))))
    rel.append(_relation("n^-1(A+B) >= n^-1A+n^-1B", ">=", pre(n, add(A, B)), add(pre(n, A), pre(n, B))))
    rel.append(_relation("[k](n^-1A) <= n^-1([k]A)", "<=", pw(k, pre(n, A)), pre(n, pw(k, A))))
    rel.append(_relation("[k](nA) = n([k]A)", "=", pw(k, sc(n, A)), sc(n, pw(k, A))))
    rel.append(_relation("k(n^-1A) <= n^-1(kA)", "<=", sc(k, pre(n, A)), pre(n, sc(k, A))))

    big = A | B
    rel.append(_relation("A<=B => nA <= nB", "<=", sc(n, A), sc(n, big)))
    rel.append(_relation("A<=B => n^-1A <= n^-1B", "<=", pre(n, A), pre(n, big)))
    rel.append(_relation("A<=B => [n]A <= [n]B", "<=", pw(n, A), pw(n, big)))

    fam = family if family is not None else [A, B]
    check_same_carrier(S, *fam)
    inter = reduce(lambda X, Y: X & Y, fam)
    union = reduce(lambda X, Y: X | Y, fam)
    for label, op in (("n", sc), ("n^-1", pre), ("[n]", pw)):
        images = [op(n, X) for X in fam]
        rel.append(_relation(
            f"{label}(meet) <= meet {label}", "<=",
            op(n, inter), reduce(lambda X, Y: X & Y, images),
        ))
        rel.append(_relation(
            f"{label}(join) >= join {label}", ">=",
            op(n, union), reduce(lambda X, Y: X | Y, images),
        ))
    return IdentityReport(rel)

