"""Independent oracles: plain integer arithmetic and brute-force set search.

Nothing here imports the package under test; expected values in the test
suite are computed against these and frozen where the value is small.
"""

from __future__ import annotations

import math
from itertools import combinations


def divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def down_sets(elements, leq) -> list[frozenset]:
    """All downward-closed subsets of a finite poset, by include/exclude
    recursion along a linear extension."""
    elems = sorted(elements, key=lambda e: (sum(1 for x in elements if leq(x, e)), str(e)))
    strict_below = {e: frozenset(x for x in elems if x != e and leq(x, e)) for e in elems}
    out = []

    def rec(i, current):
        if i == len(elems):
            out.append(frozenset(current))
            return
        e = elems[i]
        rec(i + 1, current)
        if strict_below[e] <= current:
            current.add(e)
            rec(i + 1, current)
            current.discard(e)

    rec(0, set())
    return out


def divisor_down_sets(n: int) -> list[frozenset]:
    """Down-closed subsets of the divisors of n under divisibility."""
    return down_sets(divisors(n), lambda a, b: b % a == 0)


def dense_below(n: int, D: frozenset) -> bool:
    """Whether every divisor of n has a divisor inside D."""
    return all(any(m % k == 0 for k in D) for m in divisors(n))


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def lcm(a: int, b: int) -> int:
    return math.lcm(a, b)


def all_subsets(items):
    items = list(items)
    for r in range(len(items) + 1):
        yield from (frozenset(c) for c in combinations(items, r))
