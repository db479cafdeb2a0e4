"""Exhaustive exploration of multiplier-indexed state sequences.

Every "for all n" question on a finite carrier is answered by walking a
deterministic state sequence indexed by n (power maps, n-fold sumsets, pairs
of those) until it revisits a state.  Two walks are provided:

* ``linear_orbit`` for n = 1, 2, 3, ... with a successor function; the
  sequence is eventually periodic, so the distinct states are the tail plus
  one full cycle.
* ``generated_orbit`` for n ranging over the multiplicative closure of a set
  of generators; states are explored smallest-n first and merged by identity.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, TypeVar

from .carrier import Semigroup

T = TypeVar("T", bound=Hashable)


@dataclass(frozen=True)
class Orbit:
    """Distinct states of a walk, each tagged with the first n reaching it.

    ``tail`` and ``cycle`` describe the period of a linear walk (the state at
    n = tail + 1 is the first to recur, ``cycle`` steps later).  Generated
    walks have no period; both are reported as 0 there.
    """

    entries: tuple
    tail: int
    cycle: int

    @property
    def ns(self) -> list[int]:
        return [n for n, _ in self.entries]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def linear_orbit(first: T, step: Callable[[T], T]) -> Orbit:
    seen: dict = {}
    entries = []
    state = first
    while state not in seen:
        seen[state] = len(entries)
        entries.append((len(entries) + 1, state))
        state = step(state)
    start = seen[state]
    return Orbit(tuple(entries), start, len(entries) - start)


def generated_orbit(
    first: T, gens: Iterable[int], times: Callable[[T, int], T]
) -> Orbit:
    """States at every n in the multiplicative closure of ``gens``.

    ``first`` is the state at n = 1 and ``times(state, g)`` maps the state at
    n to the state at n*g.  The state at n = 1 is included only when 1 is a
    generator.
    """
    gens = sorted(set(gens))
    counter = itertools.count()
    heap = [(g, next(counter), times(first, g) if g > 1 else first) for g in gens]
    heapq.heapify(heap)
    seen = set()
    entries = []
    while heap:
        n, _, state = heapq.heappop(heap)
        if state in seen:
            continue
        seen.add(state)
        entries.append((n, state))
        for g in gens:
            if g > 1:
                nxt = times(state, g)
                if nxt not in seen:
                    heapq.heappush(heap, (n * g, next(counter), nxt))
    return Orbit(tuple(entries), 0, 0)


@dataclass(frozen=True)
class IterationState:
    """The pair (x -> n·x, [n]A) at a fixed n; ``sum`` is a bitmask."""

    pow: tuple[int, ...]
    sum: int


def first_state(S: Semigroup, a: int) -> IterationState:
    return IterationState(S.identity_map(), a)


def next_state(S: Semigroup, st: IterationState, a: int) -> IterationState:
    return IterationState(S.next_mul_map(st.pow), S.sum_masks(st.sum, a))


def scaled_state(S: Semigroup, st: IterationState, g: int) -> IterationState:
    """State at n*g from the state at n: compose with x -> g·x, take [g] of the sumset."""
    gmap = S.mul_map(g)
    return IterationState(
        tuple(gmap[p] for p in st.pow), S.power_mask(g, st.sum)
    )


def state_orbit(S: Semigroup, a: int, F) -> Orbit:
    """All distinct (power map, sumset) states for n in ``F``."""
    st = first_state(S, a)
    if F.is_all:
        return linear_orbit(st, lambda s: next_state(S, s, a))
    if F.closed:
        return generated_orbit(st, F.generators, lambda s, g: scaled_state(S, s, g))
    return Orbit(
        tuple((g, IterationState(S.mul_map(g), S.power_mask(g, a)))
              for g in F.generators),
        0, 0,
    )


def sumset_orbit(S: Semigroup, a: int, F) -> Orbit:
    """Distinct ``[n]A`` masks for n in ``F``."""
    if F.is_all:
        return linear_orbit(a, lambda s: S.sum_masks(s, a))
    if F.closed:
        return generated_orbit(a, F.generators, lambda s, g: S.power_mask(g, s))
    return Orbit(tuple((g, S.power_mask(g, a)) for g in F.generators), 0, 0)


def pair_sumset_orbit(S: Semigroup, a: int, b: int, F) -> Orbit:
    """Distinct ``([n]A, [n]B)`` pairs for n in ``F``."""
    if F.is_all:
        return linear_orbit(
            (a, b), lambda s: (S.sum_masks(s[0], a), S.sum_masks(s[1], b))
        )
    if F.closed:
        return generated_orbit(
            (a, b), F.generators,
            lambda s, g: (S.power_mask(g, s[0]), S.power_mask(g, s[1])),
        )
    return Orbit(
        tuple((g, (S.power_mask(g, a), S.power_mask(g, b))) for g in F.generators),
        0, 0,
    )


def mul_map_orbit(S: Semigroup, F) -> Orbit:
    """Distinct maps ``x -> n·x`` for n in ``F``."""
    ident = S.identity_map()
    if F.is_all:
        return linear_orbit(ident, S.next_mul_map)
    if F.closed:
        return generated_orbit(
            ident, F.generators,
            lambda p, g: tuple(S.mul_map(g)[v] for v in p),
        )
    return Orbit(tuple((g, S.mul_map(g)) for g in F.generators), 0, 0)
