"""Sieves: right ideals of arrows into a fixed object.

A sieve on X is a set of arrows with codomain X closed under
precomposition with arbitrary arrows.  On a divisor poset the sieves on n
are exactly the down-sets of the divisors of n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import StructuralError


@dataclass(frozen=True)
class Sieve:
    base: object
    members: frozenset

    def __contains__(self, arrow) -> bool:
        return arrow in self.members

    def __len__(self) -> int:
        return len(self.members)


def empty_sieve(x) -> Sieve:
    return Sieve(x, frozenset())


def maximal_sieve(C, x) -> Sieve:
    """All arrows with codomain x."""
    return Sieve(x, frozenset(C.arrows_into(x)))


def sieve_closure(C, x, generators: Iterable) -> Sieve:
    """The smallest sieve on x containing the given arrows.

    Because the ambient category is closed under composition, one round of
    precomposition with every incoming arrow (identities included) already
    reaches the fixpoint.
    """
    gens = tuple(generators)
    for f in gens:
        if C.cod(f) != x:
            raise StructuralError(f"generator {C.arrow_label(f)} does not land in {x!r}")
    members = set()
    for f in gens:
        for g in C.arrows_into(C.dom(f)):
            members.add(C.compose(f, g))
    return Sieve(x, frozenset(members))


def is_sieve(C, x, members: Iterable) -> bool:
    """Whether a set of arrows is a sieve on x."""
    members = frozenset(members)
    for a in members:
        if C.cod(a) != x:
            return False
    for a in members:
        for g in C.arrows_into(C.dom(a)):
            if C.compose(a, g) not in members:
                return False
    return True


def pullback_sieve(C, h, S: Sieve) -> Sieve:
    """The sieve { g into dom(h) : h . g in S } on the domain of h."""
    if S.base != C.cod(h):
        raise StructuralError(
            f"sieve based at {S.base!r} cannot be pulled back along {C.arrow_label(h)}"
        )
    d = C.dom(h)
    return Sieve(d, frozenset(g for g in C.arrows_into(d) if C.compose(h, g) in S.members))


def sieve_sort_key(C, S: Sieve):
    """Deterministic ordering: by size, then sorted member labels."""
    return (len(S.members), tuple(sorted(C.arrow_label(a) for a in S.members)))


def sieve_literal(C, S: Sieve) -> str:
    """Printable form: sorted member labels in braces."""
    return "{" + ", ".join(sorted(C.arrow_label(a) for a in S.members)) + "}"
