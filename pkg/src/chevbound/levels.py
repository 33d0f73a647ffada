"""Level ideals of group elements, the maximal-ideal obstruction set Pi,
and the Pi-intersection certificates behind the lower-bound constructions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import GroupElem
from .rings import Ideal, ideal_from_generators, maximal_ideals


class LevelError(Exception):
    pass


class UnsupportedGroupError(LevelError):
    """Requested a level-ideal power outside the realized groups."""


def level_generators(elem: GroupElem):
    """Off-diagonal entries plus diagonal differences.

    For SL(n) in the standard one-block representation the diagonal part is
    a_ii - a_nn; for Sp4 all pairwise differences enter."""
    ring = elem.ring
    n = elem.group.n
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                gens.append(elem.entry(i, j))
    if elem.group.kind == "SP4":
        for i in range(n):
            for j in range(n):
                if i != j:
                    gens.append(elem.entry(i, i) - elem.entry(j, j))
    else:
        for i in range(n - 1):
            gens.append(elem.entry(i, i) - elem.entry(n - 1, n - 1))
    return gens


def level_ideal(elem: GroupElem) -> Ideal:
    """l(A): distance of A from the scalars, as an ideal."""
    return ideal_from_generators(elem.ring, level_generators(elem))


def level_ideal_power(elem: GroupElem, e: int) -> Ideal:
    """l(A)_2 for Sp4: the ideal of squared level generators.  The cubed
    variant belongs to a G2 realization that does not exist here."""
    if elem.group.kind != "SP4" or e != 2:
        raise UnsupportedGroupError(
            f"level power e={e} is only defined for Sp4 (got {elem.group})")
    return ideal_from_generators(
        elem.ring, [g * g for g in level_generators(elem)])


def pi_set(S) -> set:
    """Maximal ideals containing every level ideal of S."""
    S = list(S)
    if not S:
        raise LevelError("Pi of the empty set is every maximal ideal; pass "
                         "elements explicitly")
    ring = S[0].ring
    levels = [level_ideal(a) for a in S]
    out = set()
    for m in maximal_ideals(ring):
        if all(l.indices <= m.indices for l in levels):
            out.add(m)
    return out


def levels_sum_is_full(S) -> bool:
    """True iff the sum of the level ideals is the whole ring; equivalent to
    pi_set(S) being empty."""
    S = list(S)
    ring = S[0].ring
    gens = []
    for a in S:
        gens.extend(level_generators(a))
    return ideal_from_generators(ring, gens).is_full


# ---------------------------------------------------------------------------
# Pi-intersection lower-bound certificates


@dataclass
class CertificateRecord:
    """Machine-checkable record: with |primes| = k, any product of at most
    k-1 conjugates of S keeps a common prime over all its Pi-sets, while the
    target's Pi misses every listed prime, so the word norm is >= k."""

    bound: int
    primes: list
    per_element_missed: list   # per generator: primes NOT containing l(s)
    target_missing_all: bool

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "primes": [repr(p) for p in self.primes],
            "per_element_missed": [[repr(p) for p in miss]
                                   for miss in self.per_element_missed],
            "target_missing_all": self.target_missing_all,
        }


def lower_bound_certificate(S, target: GroupElem, primes) -> CertificateRecord:
    S = list(S)
    primes = list(primes)
    target_level = level_ideal(target)
    target_ok = all(not (target_level.indices <= p.indices) for p in primes)
    missed = []
    elements_ok = bool(primes)
    for s in S:
        l = level_ideal(s)
        miss = [p for p in primes if not (l.indices <= p.indices)]
        missed.append(miss)
        if len(miss) > 1:
            elements_ok = False
    bound = len(primes) if (target_ok and elements_ok and primes) else 0
    return CertificateRecord(bound=bound, primes=primes,
                             per_element_missed=missed,
                             target_missing_all=target_ok)


def pi_lower_bound_certificate(S, target: GroupElem, primes) -> int:
    """The certified lower bound for ||target||_S, or 0 when the
    preconditions fail (0 signals "no certificate")."""
    return lower_bound_certificate(S, target, primes).bound
