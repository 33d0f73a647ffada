"""Lower-bound generating sets, the splitting invariant r, the Sp4(F2) sign
epimorphism and its F2^r product, abelianization dimension, and the
normal-generation criteria over finite quotient rings.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import SP4, GroupElem, MatrixGroup, enumerate_group, reduce_mod, root_matrix
from .levels import CertificateRecord, lower_bound_certificate, pi_set
from .norms import commutator_subgroup, normal_closure, normally_generates, quotient_group
from .rings import (
    FiniteRing,
    Ideal,
    RingElem,
    SplitKind,
    ideal_from_generators,
    local_factors,
    make_ring,
    maximal_ideals,
    quotient_ring,
    residue_field_size,
    split_two_quadratic,
    to_f2,
)
from .roots import Length, root_length


class ConstructionError(Exception):
    pass


class NotCoprimeError(ConstructionError):
    pass


class KTooSmallError(ConstructionError):
    """Requested a generating set smaller than the F2-prime count r."""


class WrongGroupError(ConstructionError):
    pass


class NoF2FactorsError(ConstructionError):
    pass


class NotTwoTorsionError(ConstructionError):
    pass


class HypothesisViolatedError(ConstructionError):
    """More than one local factor has residue field F2."""


# ---------------------------------------------------------------------------
# splitting data


@dataclass(frozen=True)
class SplitData:
    D: int
    kind: SplitKind
    r: int
    residue_degrees: tuple

    @classmethod
    def for_discriminant(cls, D: int) -> "SplitData":
        kind, r = split_two_quadratic(D)
        degrees = {SplitKind.SPLIT: (1, 1), SplitKind.RAMIFIED: (1,),
                   SplitKind.INERT: (2,)}[kind]
        return cls(D=D, kind=kind, r=r, residue_degrees=degrees)


def split_data(D: int) -> SplitData:
    return SplitData.for_discriminant(D)


# ---------------------------------------------------------------------------
# lower-bound generating sets


@dataclass
class LowerBoundSet:
    group: object
    ring: FiniteRing
    generators: list          # GroupElems eps_phi(r_i)
    arguments: list           # the ring elements r_i
    claimed_bound: int
    primes: list
    certificate: CertificateRecord

    def to_json(self) -> dict:
        return {
            "group": str(self.group),
            "ring": self.ring.spec_str(),
            "arguments": [self.ring.format(a.index) for a in self.arguments],
            "claimed_bound": self.claimed_bound,
            "certificate": self.certificate.to_json(),
        }


def _maximal_ideal_of(ring, t: RingElem) -> Ideal:
    gen = ideal_from_generators(ring, [t])
    for m in maximal_ideals(ring):
        if m.indices == gen.indices:
            return m
    raise ConstructionError(f"({t}) is not a maximal ideal of {ring.spec_str()}")


def _product(ring, elems):
    out = ring.one
    for e in elems:
        out = out * e
    return out


def lower_bound_set_higher_rank(group, phi, ts, ring) -> LowerBoundSet:
    """S = {eps_phi(r_1), ..., eps_phi(r_k)} with r_i the product of all t_j
    except t_i; k pairwise-coprime maximal-ideal generators give a certified
    word-norm lower bound of k on eps_phi(1)."""
    if root_length(phi) != Length.SHORT:
        raise ConstructionError(f"{phi} must be a short root")
    ts = [ring.coerce(t) for t in ts]
    primes = [_maximal_ideal_of(ring, t) for t in ts]
    for a in range(len(ts)):
        for b in range(a + 1, len(ts)):
            if ideal_from_generators(ring, [ts[a], ts[b]]).indices != frozenset(
                    range(ring.size)):
                raise NotCoprimeError(f"({ts[a]}) + ({ts[b]}) is not the full ring")
    args = [_product(ring, [t for j, t in enumerate(ts) if j != i])
            for i in range(len(ts))]
    gens = [root_matrix(group, ring, phi, r) for r in args]
    if pi_set(gens):
        raise ConstructionError("Pi(S) is not empty; inputs are inconsistent")
    target = root_matrix(group, ring, phi, ring.one)
    cert = lower_bound_certificate(gens, target, primes)
    if cert.bound != len(ts):
        raise ConstructionError(f"certificate bound {cert.bound} != k={len(ts)}")
    return LowerBoundSet(group=group, ring=ring, generators=gens, arguments=args,
                         claimed_bound=len(ts), primes=primes, certificate=cert)


def lower_bound_set_rank2(ring, x_gens, v_gens, k=None,
                          split: SplitData | None = None) -> LowerBoundSet:
    """The Sp4 rank-2 construction over a finite quotient ring: with r
    generators x_i of the residue-degree-1 primes over 2 and extra prime
    generators v_q, builds S = {eps_a(r_1), ..., eps_a(r_k)}.

    Raises KTooSmallError for a requested k below r: no normally generating
    set that small exists (the F2^r quotient obstruction)."""
    x_gens = [ring.coerce(x) for x in x_gens]
    v_gens = [ring.coerce(v) for v in v_gens]
    r = len(x_gens)
    if split is not None and split.r != r:
        raise ConstructionError(
            f"split data has r={split.r} but {r} x-generators were given")
    if k is None:
        k = r + len(v_gens)
    if k < r:
        raise KTooSmallError(f"k={k} < r={r}: Delta_k = -infinity here")
    if k != r + len(v_gens):
        raise ConstructionError(
            f"k={k} inconsistent with r={r} plus {len(v_gens)} extra primes")
    primes = [_maximal_ideal_of(ring, t) for t in x_gens + v_gens]
    args = []
    for u in range(r):
        args.append(_product(ring, [x for i, x in enumerate(x_gens) if i != u]
                             + v_gens))
    for u in range(len(v_gens)):
        args.append(_product(ring, x_gens
                             + [v for q, v in enumerate(v_gens) if q != u]))
    alpha = SP4.root_system.parse_root("a")
    gens = [root_matrix(SP4, ring, alpha, a) for a in args]
    if pi_set(gens):
        raise ConstructionError("Pi(S) is not empty; inputs are inconsistent")
    target = root_matrix(SP4, ring, alpha, ring.one)
    cert = lower_bound_certificate(gens, target, primes)
    if cert.bound != k:
        raise ConstructionError(f"certificate bound {cert.bound} != k={k}")
    return LowerBoundSet(group=SP4, ring=ring, generators=gens, arguments=args,
                         claimed_bound=k, primes=primes, certificate=cert)


# ---------------------------------------------------------------------------
# sign epimorphism Sp4(F2) -> F2 and its F2^r product


def _kernel_mask(G: MatrixGroup):
    mask = getattr(G, "_sign_kernel_mask", None)
    if mask is None:
        kernel = commutator_subgroup(G)
        if 2 * len(kernel) != G.order:
            raise WrongGroupError(
                "commutator subgroup does not have index 2")
        mask = np.zeros(G.order, dtype=bool)
        mask[kernel] = True
        G._sign_kernel_mask = mask
    return mask


def sp4_sign_epimorphism(G: MatrixGroup, g) -> int:
    """The surjection Sp4(F2) -> F2 with eps_phi(a) -> a; kernel is the
    commutator subgroup (the A6 copy, 360 elements)."""
    if not isinstance(G, MatrixGroup) or G.group_id != SP4 or G.ring.size != 2:
        raise WrongGroupError("expected the enumerated Sp4 over a 2-element ring")
    mask = _kernel_mask(G)
    if not isinstance(g, (int, np.integer)):
        g = G.index_of(g)
    return 0 if mask[int(g)] else 1


_sp4_f2_cache = {}


def _sp4_f2_group() -> MatrixGroup:
    if "g" not in _sp4_f2_cache:
        _sp4_f2_cache["g"] = enumerate_group(SP4, make_ring("Z/2"))
    return _sp4_f2_cache["g"]


class F2REpimorphism:
    """Sp4(ring) -> F2^r: reduce modulo each residue-degree-1 local factor,
    then apply the sign epimorphism on each Sp4(F2) image."""

    def __init__(self, ring: FiniteRing):
        self.ring = ring
        self.projections = []
        for fac, proj in local_factors(ring):
            nonunits = frozenset(i for i in range(fac.size)
                                 if fac.try_invert_i(i) is None)
            if fac.size // len(nonunits) != 2:
                continue
            m = Ideal(fac, [fac.element(i) for i in sorted(nonunits)], nonunits)
            _, qproj = quotient_ring(fac, m)
            if qproj.dst.size != 2:
                continue
            self.projections.append(proj.compose(qproj).compose(to_f2(qproj.dst)))
        if not self.projections:
            raise NoF2FactorsError(
                f"{ring.spec_str()} has no local factor with residue field F2")
        self.r = len(self.projections)
        self.sp4_f2 = _sp4_f2_group()

    def __call__(self, elem) -> tuple:
        if isinstance(elem, (int, np.integer)):
            raise ConstructionError("pass a GroupElem, not an index")
        bits = []
        for proj in self.projections:
            bits.append(sp4_sign_epimorphism(self.sp4_f2, reduce_mod(elem, proj)))
        return tuple(bits)


def f2r_epimorphism(ring: FiniteRing) -> F2REpimorphism:
    cached = getattr(ring, "_f2r_epi", None)
    if cached is None:
        cached = F2REpimorphism(ring)
        ring._f2r_epi = cached
    return cached


def abelianization_dim(G) -> int:
    """dim_F2 of G/[G,G]; raises unless the quotient is elementary 2-torsion."""
    kernel = commutator_subgroup(G)
    m = G.order // len(kernel)
    if m == 1:
        return 0
    dim = m.bit_length() - 1
    if 2 ** dim != m:
        raise NotTwoTorsionError(f"abelianization has order {m}")
    in_kernel = np.zeros(G.order, dtype=bool)
    in_kernel[kernel] = True
    for g in G.generators:
        if not in_kernel[G.mult(int(g), int(g))]:
            raise NotTwoTorsionError("a generator class has order > 2")
    return dim


# ---------------------------------------------------------------------------
# normal-generation checks over finite rings


def _count_f2_factors(ring: FiniteRing) -> int:
    return sum(1 for fac, _ in local_factors(ring)
               if residue_field_size(fac) == 2)


def check_unit_normal_generation(ring: FiniteRing, x, group: MatrixGroup | None = None,
                                 cap: int = 2_000_000) -> bool:
    """Does eps_a(x) normally generate Sp4(ring)?  Requires at most one local
    factor with residue field F2 and a unit x."""
    if _count_f2_factors(ring) > 1:
        raise HypothesisViolatedError(
            f"{ring.spec_str()} has {_count_f2_factors(ring)} F2-residue factors")
    x = ring.coerce(x)
    if not x.is_unit():
        raise ConstructionError(f"{x} is not a unit")
    G = group if group is not None else enumerate_group(SP4, ring, cap=cap)
    alpha = SP4.root_system.parse_root("a")
    return normally_generates(G, [G.root_element_index(alpha, x)])


def congruence_subgroup(G: MatrixGroup):
    """The normal closure of every eps_phi(2a); cached on the group."""
    cached = getattr(G, "_congruence_subgroup", None)
    if cached is not None:
        return cached
    ring = G.ring
    two = ring.from_int(2)
    gens = set()
    for phi in G.group_id.root_system.all_roots():
        for a in ring.elements():
            idx = G.root_element_index(phi, two * a)
            if idx != G.identity:
                gens.add(idx)
    result = (normal_closure(G, sorted(gens)) if gens
              else np.array([G.identity], dtype=np.int64))
    G._congruence_subgroup = result
    return result


@dataclass
class GenerationVerdict:
    pi_empty: bool
    quotient_generates: bool
    actually_generates: bool

    @property
    def consistent(self) -> bool:
        return self.actually_generates == (self.pi_empty and self.quotient_generates)

    def to_json(self) -> dict:
        return {
            "pi_empty": self.pi_empty,
            "quotient_generates": self.quotient_generates,
            "actually_generates": self.actually_generates,
            "consistent": self.consistent,
        }


def generation_criteria_check(ring: FiniteRing, S,
                              group: MatrixGroup | None = None,
                              cap: int = 2_000_000) -> GenerationVerdict:
    """Evaluate both sides of the generation criterion for S in Sp4(ring):
    Pi(S) empty plus normal generation of G/N must match actual normal
    generation of G."""
    G = group if group is not None else enumerate_group(SP4, ring, cap=cap)
    elems = [s if isinstance(s, GroupElem) else G.elem(int(s)) for s in S]
    idxs = [G.index_of(e) for e in elems]
    pi_empty = (len(elems) > 0) and (pi_set(elems) == set())
    n = congruence_subgroup(G)
    if len(n) == G.order:
        quotient_generates = True
    else:
        q, proj = quotient_group(G, n)
        image = sorted({int(proj[i]) for i in idxs})
        quotient_generates = normally_generates(q, image)
    actually = normally_generates(G, idxs) if idxs else False
    return GenerationVerdict(pi_empty=pi_empty,
                             quotient_generates=quotient_generates,
                             actually_generates=actually)
