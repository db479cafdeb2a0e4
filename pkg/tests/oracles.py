"""Brute-force reference implementations over raw Cayley tables and Python sets.

Nothing here imports the package under test.  Elements are table indices.
"""

from __future__ import annotations

import itertools
from functools import reduce


def add(T, x, y):
    return T[x][y]


def mul(T, n, x):
    acc = x
    for _ in range(n - 1):
        acc = T[acc][x]
    return acc


def scale(T, n, A):
    return {mul(T, n, x) for x in A}


def preimage(T, n, A):
    return {x for x in range(len(T)) if mul(T, n, x) in A}


def sumset(T, A, B):
    return {T[a][b] for a in A for b in B}


def power_tuples(T, n, A):
    """[n]A by enumerating every n-tuple."""
    if not A:
        return set()
    return {reduce(lambda u, v: T[u][v], combo) for combo in itertools.product(sorted(A), repeat=n)}


def power(T, n, A):
    """[n]A by iterated sumsets."""
    acc = set(A)
    for _ in range(n - 1):
        acc = sumset(T, acc, A)
    return acc


def powers(T, A, n_max):
    out, acc = [], set(A)
    for n in range(1, n_max + 1):
        if n > 1:
            acc = sumset(T, acc, A)
        out.append(acc)
    return out


def is_convex(T, n, A):
    return preimage(T, n, power(T, n, A)) <= set(A)


def is_konvex(T, n, A):
    return power(T, n, A) <= scale(T, n, A)


def convex_for(T, A, ns):
    ps = powers(T, A, max(ns))
    return all(preimage(T, n, ps[n - 1]) <= set(A) for n in ns)


def konvex_for(T, A, ns):
    ps = powers(T, A, max(ns))
    return all(ps[n - 1] <= scale(T, n, A) for n in ns)


def first_convex_failure(T, A, ns):
    ps = powers(T, A, max(ns))
    for n in ns:
        bad = preimage(T, n, ps[n - 1]) - set(A)
        if bad:
            return n, min(bad)
    return None


def disjoint_for(T, A, B, ns):
    pa, pb = powers(T, A, max(ns)), powers(T, B, max(ns))
    return all(not (pa[n - 1] & pb[n - 1]) for n in ns)


def all_subsets(order):
    for m in range(1 << order):
        yield {i for i in range(order) if m >> i & 1}


def hull(T, A, ns):
    """Intersection of every superset of A that is n-convex for all n in ``ns``."""
    out = set(range(len(T)))
    for X in all_subsets(len(T)):
        if set(A) <= X and convex_for(T, X, ns):
            out &= X
    return out


def hull_formula(T, A, ns):
    ps = powers(T, A, max(ns))
    out = set(A)
    for n in ns:
        out |= preimage(T, n, ps[n - 1])
    return out


def equiv(T, x, y, ns):
    return any(mul(T, n, x) == mul(T, n, y) for n in ns)


def is_commutative(T):
    m = len(T)
    return all(T[x][y] == T[y][x] for x in range(m) for y in range(m))


def is_associative(T):
    m = len(T)
    r = range(m)
    return all(T[T[x][y]][z] == T[x][T[y][z]] for x in r for y in r for z in r)


def generated_ns(gens, n_max):
    """Members of the multiplicative semigroup generated by ``gens`` up to ``n_max``."""
    seen, frontier = set(), [g for g in gens if g <= n_max]
    while frontier:
        n = frontier.pop()
        if n in seen:
            continue
        seen.add(n)
        frontier.extend(n * g for g in gens if n * g <= n_max)
    return sorted(seen)
