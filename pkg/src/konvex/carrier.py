"""Abelian semigroup carriers, subsets of them, and multiplier sets.

Finite carriers are Cayley tables over element indices ``0..order-1`` (in
label order); their subsets are integer bitmasks.  Two symbolic carriers,
the integers and the monoid ``{0, 2, 3, 4, ...}``, hold finite explicit
subsets as frozensets of ints and never enumerate their elements.
"""

from __future__ import annotations

import itertools
import json
import random
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import (
    BadParams,
    BadTable,
    CarrierMismatch,
    EmptyGenerators,
    NotAssociative,
    NotCommutative,
    UnknownLabel,
)

FINITE = "finite-table"
INT_ADDITIVE = "int-additive"
INT_NO_ONE = "int-no-one-monoid"


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True, eq=False)
class Semigroup:
    """An abelian semigroup.

    For ``kind == FINITE`` the element ``i`` carries ``labels[i]`` and
    ``table[i][j]`` is the index of ``i + j``.  ``cap`` is the index of the
    saturation element of a capped-addition carrier, if any.
    """

    kind: str
    labels: tuple[str, ...] = ()
    table: tuple[tuple[int, ...], ...] = ()
    name: str = ""
    cap: int | None = None
    _index: dict = field(default_factory=dict, repr=False)
    _shift: dict = field(default_factory=dict, repr=False)
    _maps: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.kind == FINITE and not self._index:
            self._index.update({lab: i for i, lab in enumerate(self.labels)})

    # -- basic structure -------------------------------------------------

    @property
    def finite(self) -> bool:
        return self.kind == FINITE

    @property
    def order(self) -> int:
        if not self.finite:
            raise BadParams(f"{self.name} is infinite")
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    def __repr__(self):
        if self.finite:
            return f"Semigroup({self.name or 'table'}, order={self.order})"
        return f"Semigroup({self.kind})"

    def same_as(self, other: "Semigroup") -> bool:
        return self is other or (
            self.kind == other.kind
            and self.labels == other.labels
            and self.table == other.table
        )

    def contains(self, x) -> bool:
        if self.finite:
            return isinstance(x, int) and 0 <= x < self.order
        if self.kind == INT_NO_ONE:
            return isinstance(x, int) and (x == 0 or x >= 2)
        return isinstance(x, int)

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise UnknownLabel(label, f" in {self.name or 'carrier'}") from None

    def label(self, x) -> str:
        return self.labels[x] if self.finite else str(x)

    def add(self, x, y):
        if self.finite:
            return self.table[x][y]
        return x + y

    def mul(self, n: int, x):
        """``n·x`` computed with ``n - 1`` additions."""
        if not self.finite:
            return n * x
        row = self.table[x]
        acc = x
        for _ in range(n - 1):
            acc = row[acc]
        return acc

    # -- subsets ---------------------------------------------------------

    def subset(self, items: Iterable = ()) -> "Subset":
        """Subset from element labels (finite) or integers (symbolic)."""
        if self.finite:
            return Subset(self, mask_of(self.index(x) for x in items))
        members = frozenset(_as_int(x) for x in items)
        bad = [x for x in members if not self.contains(x)]
        if bad:
            raise UnknownLabel(min(bad), f" ({self.kind})")
        return Subset(self, members)

    def from_indices(self, indices: Iterable[int]) -> "Subset":
        return Subset(self, mask_of(indices))

    def from_mask(self, mask: int) -> "Subset":
        return Subset(self, mask)

    def empty(self) -> "Subset":
        return Subset(self, 0 if self.finite else frozenset())

    def whole(self) -> "Subset":
        return Subset(self, self.full_mask)

    def singleton(self, x) -> "Subset":
        if self.finite:
            return Subset(self, 1 << x)
        return Subset(self, frozenset([x]))

    # -- bitmask kernels (finite carriers) ---------------------------------

    def translate(self, a: int, mask: int) -> int:
        """``a + mask`` as a bitmask."""
        key = (a, mask)
        hit = self._shift.get(key)
        if hit is None:
            row = self.table[a]
            hit = 0
            for b in iter_bits(mask):
                hit |= 1 << row[b]
            self._shift[key] = hit
        return hit

    def sum_masks(self, a: int, b: int) -> int:
        if a.bit_count() > b.bit_count():
            a, b = b, a
        out = 0
        for x in iter_bits(a):
            out |= self.translate(x, b)
        return out

    def power_mask(self, n: int, a: int) -> int:
        acc = a
        for _ in range(n - 1):
            acc = self.sum_masks(acc, a)
        return acc

    def identity_map(self) -> tuple[int, ...]:
        return tuple(range(self.order))

    def mul_map(self, n: int) -> tuple[int, ...]:
        hit = self._maps.get(n)
        if hit is None:
            hit = self._maps[n] = tuple(self.mul(n, x) for x in range(self.order))
        return hit

    def next_mul_map(self, pow_map: tuple[int, ...]) -> tuple[int, ...]:
        """``x -> n·x`` to ``x -> (n+1)·x``."""
        t = self.table
        return tuple(t[p][x] for x, p in enumerate(pow_map))

    @staticmethod
    def image(pow_map: Sequence[int], mask: int) -> int:
        out = 0
        for x in iter_bits(mask):
            out |= 1 << pow_map[x]
        return out

    @staticmethod
    def preimage_of(pow_map: Sequence[int], mask: int) -> int:
        out = 0
        for x, p in enumerate(pow_map):
            if mask >> p & 1:
                out |= 1 << x
        return out


def _as_int(x) -> int:
    if isinstance(x, bool):
        raise UnknownLabel(x)
    if isinstance(x, int):
        return x
    try:
        return int(str(x).strip())
    except ValueError:
        raise UnknownLabel(x, " (integer carrier)") from None


@dataclass(frozen=True, eq=False)
class Subset:
    """A subset of a carrier: a bitmask on finite carriers, else a frozenset."""

    carrier: Semigroup
    members: int | frozenset

    def _check(self, other: "Subset"):
        if not self.carrier.same_as(other.carrier):
            raise CarrierMismatch("subsets live on different carriers")

    def __eq__(self, other):
        if not isinstance(other, Subset):
            return NotImplemented
        return self.carrier.same_as(other.carrier) and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __iter__(self):
        if self.carrier.finite:
            return iter_bits(self.members)
        return iter(sorted(self.members))

    def __len__(self):
        if self.carrier.finite:
            return self.members.bit_count()
        return len(self.members)

    def __bool__(self):
        return bool(self.members)

    def __contains__(self, x):
        if self.carrier.finite:
            return isinstance(x, int) and x >= 0 and bool(self.members >> x & 1)
        return x in self.members

    def __le__(self, other):
        self._check(other)
        if self.carrier.finite:
            return self.members & ~other.members == 0
        return self.members <= other.members

    def __lt__(self, other):
        return self <= other and self.members != other.members

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    def __or__(self, other):
        self._check(other)
        return Subset(self.carrier, self.members | other.members)

    def __and__(self, other):
        self._check(other)
        return Subset(self.carrier, self.members & other.members)

    def __sub__(self, other):
        self._check(other)
        if self.carrier.finite:
            return Subset(self.carrier, self.members & ~other.members)
        return Subset(self.carrier, self.members - other.members)

    def isdisjoint(self, other) -> bool:
        return not (self & other)

    def labels(self) -> list[str]:
        return [self.carrier.label(x) for x in self]

    def __repr__(self):
        return "{" + ", ".join(self.labels()) + "}"


def check_same_carrier(S: Semigroup, *subsets: Subset):
    for A in subsets:
        if not S.same_as(A.carrier):
            raise CarrierMismatch(f"subset {A!r} does not live on {S!r}")


# ---------------------------------------------------------------------------
# construction and validation


def _validate(labels, table):
    n = len(labels)
    for i in range(n):
        for j in range(i + 1, n):
            if table[i][j] != table[j][i]:
                raise NotCommutative(labels[i], labels[j])
    for i in range(n):
        ti = table[i]
        for j in range(n):
            ij = ti[j]
            tij = table[ij]
            tj = table[j]
            for k in range(n):
                if tij[k] != ti[tj[k]]:
                    raise NotAssociative(labels[i], labels[j], labels[k])


def from_index_table(labels, table, name="", cap=None, validate=True) -> Semigroup:
    labels = tuple(str(x) for x in labels)
    table = tuple(tuple(row) for row in table)
    if validate:
        _validate(labels, table)
    return Semigroup(FINITE, labels, table, name=name, cap=cap)


def build_cayley(labels: Sequence, table: Sequence[Sequence], name: str = "") -> Semigroup:
    """Validated finite semigroup from a table of labels.

    ``table[i][j]`` is the label of ``labels[i] + labels[j]``.
    """
    labels = [str(x) for x in labels]
    if not labels:
        raise BadTable("carrier must have at least one element")
    if len(set(labels)) != len(labels):
        raise BadTable("duplicate element labels")
    index = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    if len(table) != n or any(len(row) != n for row in table):
        raise BadTable(f"table must be {n}x{n}")
    idx_table = []
    for i, row in enumerate(table):
        idx_row = []
        for j, entry in enumerate(row):
            try:
                idx_row.append(index[str(entry)])
            except KeyError:
                raise UnknownLabel(entry, f" at table[{i}][{j}]") from None
        idx_table.append(idx_row)
    return from_index_table(labels, idx_table, name=name)


def _need_positive(**params):
    for key, value in params.items():
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise BadParams(f"{key} must be an integer >= 1, got {value!r}")


def cyclic(m: int) -> Semigroup:
    _need_positive(m=m)
    return from_index_table(
        range(m), [[(i + j) % m for j in range(m)] for i in range(m)],
        name=f"cyclic({m})", validate=False,
    )


def chain_min(k: int) -> Semigroup:
    _need_positive(k=k)
    return from_index_table(
        range(1, k + 1), [[min(i, j) for j in range(k)] for i in range(k)],
        name=f"chain-min({k})", validate=False,
    )


def capped_add(c: int) -> Semigroup:
    _need_positive(c=c)
    n = c + 1
    return from_index_table(
        range(n), [[min(i + j, c) for j in range(n)] for i in range(n)],
        name=f"capped-add({c})", cap=c, validate=False,
    )


def _set_label(bits: int) -> str:
    return "{" + ",".join(str(b + 1) for b in iter_bits(bits)) + "}"


def powerset_union(k: int) -> Semigroup:
    _need_positive(k=k)
    n = 1 << k
    return from_index_table(
        [_set_label(m) for m in range(n)],
        [[i | j for j in range(n)] for i in range(n)],
        name=f"powerset-union({k})", validate=False,
    )


def product(S1: Semigroup, S2: Semigroup) -> Semigroup:
    if not (S1.finite and S2.finite):
        raise BadParams("products need finite factors")
    n2 = S2.order
    labels = [f"({a},{b})" for a in S1.labels for b in S2.labels]
    pairs = list(itertools.product(range(S1.order), range(n2)))
    table = [
        [S1.table[a1][a2] * n2 + S2.table[b1][b2] for (a2, b2) in pairs]
        for (a1, b1) in pairs
    ]
    return from_index_table(
        labels, table, name=f"product({S1.name},{S2.name})", validate=False
    )


INT = Semigroup(INT_ADDITIVE, name=INT_ADDITIVE)
INT_NO_ONE_MONOID = Semigroup(INT_NO_ONE, name=INT_NO_ONE)

_BUILTINS = {
    "cyclic": cyclic,
    "chain-min": chain_min,
    "capped-add": capped_add,
    "powerset-union": powerset_union,
}


def builtin(kind: str, *params) -> Semigroup:
    """One of the built-in carriers, e.g. ``builtin("cyclic", 4)``."""
    if kind == "product":
        if len(params) != 2:
            raise BadParams("product takes two carriers")
        return product(*params)
    if kind == INT_ADDITIVE:
        return INT
    if kind == INT_NO_ONE:
        return INT_NO_ONE_MONOID
    try:
        ctor = _BUILTINS[kind]
    except KeyError:
        raise BadParams(f"unknown carrier kind {kind!r}") from None
    if len(params) != 1:
        raise BadParams(f"{kind} takes one size parameter")
    return ctor(params[0])


def restrict(S: Semigroup, sub: Subset, name: str = "") -> Semigroup:
    """The subsemigroup ``sub`` (which must be closed) as a carrier of its own."""
    check_same_carrier(S, sub)
    idx = list(sub)
    pos = {x: i for i, x in enumerate(idx)}
    try:
        table = [[pos[S.table[a][b]] for b in idx] for a in idx]
    except KeyError:
        raise BadParams("subset is not closed under the operation") from None
    cap = pos.get(S.cap) if S.cap is not None else None
    return from_index_table(
        [S.labels[i] for i in idx], table, name=name or f"sub({S.name})",
        cap=cap, validate=False,
    )


def subsemigroup_closure(S: Semigroup, gens: Subset) -> Subset:
    """Smallest subset containing ``gens`` closed under the operation."""
    check_same_carrier(S, gens)
    if not S.finite:
        raise BadParams("closure needs a finite carrier")
    if not gens:
        raise EmptyGenerators("closure of the empty set requested")
    closed = gens.members
    frontier = closed
    while frontier:
        new = S.sum_masks(frontier, closed) & ~closed
        closed |= new
        frontier = new
    return Subset(S, closed)


# ---------------------------------------------------------------------------
# carrier specs, catalog, sampling


_TOKEN = re.compile(r"\s*([A-Za-z][\w-]*|\d+|[(),])")


def parse_carrier(text: str) -> Semigroup:
    """Parse ``cyclic(4)``, ``product(cyclic(2),chain-min(3))``, ... or a JSON path."""
    text = text.strip()
    if text.endswith(".json") or Path(text).is_file():
        return load_cayley(text)
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise BadParams(f"cannot parse carrier {text!r}")
        tokens.append(m.group(1))
        pos = m.end()
    tokens.append(None)
    it = iter(tokens)
    look = [next(it)]

    def take():
        tok = look[0]
        look[0] = next(it)
        return tok

    def expr():
        tok = take()
        if tok is None or not tok[0].isalpha():
            raise BadParams(f"cannot parse carrier {text!r}")
        args = []
        if look[0] == "(":
            take()
            while True:
                if look[0] is not None and look[0].isdigit():
                    args.append(int(take()))
                else:
                    args.append(expr())
                sep = take()
                if sep == ")":
                    break
                if sep != ",":
                    raise BadParams(f"cannot parse carrier {text!r}")
        return builtin(tok, *args)

    result = expr()
    if look[0] is not None:
        raise BadParams(f"trailing input in carrier {text!r}")
    return result


def to_json(S: Semigroup) -> dict:
    return {
        "elements": list(S.labels),
        "table": [[S.labels[v] for v in row] for row in S.table],
    }


def from_json(data: dict, name: str = "") -> Semigroup:
    if not isinstance(data, dict) or "elements" not in data or "table" not in data:
        raise BadTable('expected an object with "elements" and "table"')
    if not isinstance(data["elements"], list) or not isinstance(data["table"], list):
        raise BadTable('"elements" and "table" must be arrays')
    if not all(isinstance(r, list) for r in data["table"]):
        raise BadTable("table rows must be arrays")
    return build_cayley(data["elements"], data["table"], name=name)


def load_cayley(path) -> Semigroup:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise BadTable(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise BadTable(f"{path} is not valid JSON: {exc}") from None
    return from_json(data, name=Path(path).stem)


def _small_builtins(max_order: int) -> list[Semigroup]:
    out = [cyclic(m) for m in range(1, max_order + 1)]
    out += [chain_min(k) for k in range(2, max_order + 1)]
    out += [capped_add(c) for c in range(1, max_order)]
    out += [powerset_union(k) for k in range(1, 8) if (1 << k) <= max_order]
    return out


def catalog(max_order: int = 8) -> list[Semigroup]:
    """A fixed, deterministic list of carriers of order at most ``max_order``."""
    _need_positive(max_order=max_order)
    out = _small_builtins(max_order)
    bases = [cyclic(2), cyclic(3), cyclic(4), chain_min(2), chain_min(3),
             capped_add(1), capped_add(2), capped_add(3)]
    seen = set()
    for i, S1 in enumerate(bases):
        for S2 in bases[i:]:
            if S1.order * S2.order > max_order:
                continue
            key = (S1.name, S2.name)
            if key in seen:
                continue
            seen.add(key)
            out.append(product(S1, S2))
    # semigroups without identity and a finite stand-in for {0, 2, 3, ...}
    for c in range(2, max_order + 1):
        S = capped_add(c)
        for gens, tag in (([1], "pos"), ([0, 2, 3], "no-one"), ([2, 3], "ge2")):
            if max(gens) > c:
                continue
            sub = subsemigroup_closure(S, S.subset(gens))
            if len(sub) <= max_order and len(sub) < S.order:
                out.append(restrict(S, sub, name=f"{tag}-capped({c})"))
    P = product(cyclic(4), capped_add(3))
    for gens in (["(1,1)"], ["(2,1)", "(0,2)"], ["(1,2)", "(3,3)"]):
        sub = subsemigroup_closure(P, P.subset(gens))
        if len(sub) <= max_order:
            out.append(restrict(P, sub, name=f"closure({P.name},{'+'.join(gens)})"))
    return out


def sample_carrier(seed: int, max_order: int) -> Semigroup:
    """Deterministically chosen commutative semigroup of order <= ``max_order``."""
    _need_positive(max_order=max_order)
    rng = random.Random(seed)
    pool = _small_builtins(max_order)
    choice = rng.random()
    if choice < 0.4 or max_order < 4:
        return rng.choice(pool)
    if choice < 0.7:
        pairs = [(a, b) for a in pool for b in pool
                 if 1 < a.order and 1 < b.order and a.order * b.order <= max_order]
        if pairs:
            return product(*rng.choice(pairs))
        return rng.choice(pool)
    small = _small_builtins(min(max_order, 6))
    for _ in range(20):
        S1, S2 = rng.choice(small), rng.choice(small)
        P = product(S1, S2)
        ngens = rng.randint(1, 3)
        gens = rng.sample(range(P.order), min(ngens, P.order))
        sub = subsemigroup_closure(P, P.from_indices(gens))
        if len(sub) <= max_order:
            return restrict(P, sub, name=f"closure({P.name},{sub!r})")
    return rng.choice(pool)


# ---------------------------------------------------------------------------
# multiplier sets


@dataclass(frozen=True)
class MultiplierSet:
    """A set of positive integer multipliers.

    ``generators is None`` means all of ``N = {1, 2, 3, ...}``.  Otherwise the
    set is the multiplicative closure of ``generators`` when ``closed`` is
    true, and exactly the listed numbers when it is false.
    """

    generators: tuple[int, ...] | None = None
    closed: bool = True

    def __post_init__(self):
        if self.generators is not None:
            if not self.generators:
                raise EmptyGenerators("multiplier set needs at least one generator")
            for g in self.generators:
                if not isinstance(g, int) or isinstance(g, bool) or g < 1:
                    raise BadParams(f"multipliers must be integers >= 1, got {g!r}")
            object.__setattr__(self, "generators", tuple(sorted(set(self.generators))))

    @classmethod
    def all(cls) -> "MultiplierSet":
        return cls()

    @classmethod
    def of(cls, *gens: int, closed: bool = True) -> "MultiplierSet":
        return cls(tuple(gens), closed)

    @classmethod
    def parse(cls, text: str, closed: bool = True) -> "MultiplierSet":
        text = text.strip()
        if text.upper() in ("ALL", "N"):
            return cls()
        try:
            gens = tuple(int(t) for t in text.split(",") if t.strip())
        except ValueError:
            raise BadParams(f"bad multiplier list {text!r}") from None
        return cls(gens, closed)

    @property
    def is_all(self) -> bool:
        return self.generators is None

    @property
    def is_subsemigroup(self) -> bool:
        """Whether the denoted set is closed under multiplication."""
        if self.is_all or self.closed:
            return True
        gens = set(self.generators)
        return all(a * b in gens for a in gens for b in gens)

    def closure(self) -> "MultiplierSet":
        return self if self.is_all else MultiplierSet(self.generators, True)

    def members_up_to(self, n_max: int) -> list[int]:
        if self.is_all:
            return list(range(1, n_max + 1))
        if not self.closed:
            return [g for g in self.generators if g <= n_max]
        found = {g for g in self.generators if g <= n_max}
        frontier = set(found)
        while frontier:
            nxt = {a * g for a in frontier for g in self.generators
                   if a * g <= n_max} - found
            found |= nxt
            frontier = nxt
        return sorted(found)

    def __contains__(self, n: int) -> bool:
        if self.is_all:
            return n >= 1
        if not self.closed:
            return n in self.generators
        return n in self.members_up_to(n)

    def __str__(self):
        if self.is_all:
            return "ALL"
        body = ",".join(map(str, self.generators))
        return f"<{body}>" if self.closed else f"{{{body}}}"


ALL = MultiplierSet.all()
