"""Finite commutative rings with 1, with exact index-based arithmetic.

Supported rings: residue rings Z/n, quotients O_D/(m) of quadratic integer
orders, finite direct products, idempotent-slice factors e*R, and quotients
R/I.  Every element is addressed by a canonical index 0..size-1; arithmetic
is exact integer work on those indices, and hot loops can pull numpy lookup
tables on demand.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

import numpy as np


class RingError(Exception):
    pass


class InvalidSpecError(RingError):
    """Malformed ring specification (n < 2, D not square-free, empty product)."""


class NotUnitError(RingError):
    """An operation required a unit and the element has no inverse."""


# ---------------------------------------------------------------------------
# ring specifications


def _is_square_free(d: int) -> bool:
    d = abs(d)
    f = 2
    while f * f <= d:
        if d % (f * f) == 0:
            return False
        while d % f == 0:
            d //= f
        f += 1
    return True


@dataclass(frozen=True)
class ZMod:
    n: int

    def validate(self) -> None:
        if self.n < 2:
            raise InvalidSpecError(f"Z/{self.n}: modulus must be >= 2")

    def __str__(self) -> str:
        return f"Z/{self.n}"


@dataclass(frozen=True)
class QuadQuot:
    """Quotient of the quadratic order with discriminant parameter D by (m)."""

    D: int
    m: int

    def validate(self) -> None:
        if self.D in (0, 1) or not _is_square_free(self.D):
            raise InvalidSpecError(f"D={self.D} must be square-free and not 0 or 1")
        if self.m < 2:
            raise InvalidSpecError(f"m={self.m} must be >= 2")

    def __str__(self) -> str:
        return f"Quad({self.D})/{self.m}"


@dataclass(frozen=True)
class Product:
    factors: tuple

    def validate(self) -> None:
        if not self.factors:
            raise InvalidSpecError("empty product")
        for f in self.factors:
            f.validate()

    def __str__(self) -> str:
        return "x".join(str(f) for f in self.factors)


_RING_RE_ZMOD = re.compile(r"^Z/(\d+)$")
_RING_RE_QUAD = re.compile(r"^Quad\((-?\d+)\)/(\d+)$")


def parse_ring(text: str):
    """Parse a compact ring spec such as "Z/6", "Quad(-7)/2" or "Z/2xZ/3"."""
    parts = [p.strip() for p in text.strip().split("x")]
    specs = []
    for part in parts:
        m = _RING_RE_ZMOD.match(part)
        if m:
            specs.append(ZMod(int(m.group(1))))
            continue
        m = _RING_RE_QUAD.match(part)
        if m:
            specs.append(QuadQuot(int(m.group(1)), int(m.group(2))))
            continue
        raise InvalidSpecError(f"cannot parse ring spec {part!r}")
    if len(specs) == 1:
        return specs[0]
    return Product(tuple(specs))


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True)
class RingElem:
    """One element of a finite ring, identified by its canonical index."""

    ring: "FiniteRing"
    index: int

    @property
    def value(self):
        return self.ring.value_at(self.index)

    def __add__(self, other):
        other = self.ring.coerce(other)
        return RingElem(self.ring, self.ring.add_i(self.index, other.index))

    __radd__ = __add__

    def __neg__(self):
        return RingElem(self.ring, self.ring.neg_i(self.index))

    def __sub__(self, other):
        other = self.ring.coerce(other)
        return RingElem(self.ring, self.ring.add_i(self.index, self.ring.neg_i(other.index)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self.ring.coerce(other)
        return RingElem(self.ring, self.ring.mul_i(self.index, other.index))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            inv = try_invert(self)
            if inv is None:
                raise NotUnitError(f"{self} is not a unit")
            return inv ** (-k)
        out = self.ring.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        return (
            isinstance(other, RingElem)
            and other.ring is self.ring
            and other.index == self.index
        )

    def __hash__(self):
        return hash((id(self.ring), self.index))

    def __repr__(self):
        return self.ring.format(self.index)

    def is_unit(self) -> bool:
        return self.ring.try_invert_i(self.index) is not None


# ---------------------------------------------------------------------------
# ring handles

_TABLE_LIMIT = 1024


class FiniteRing:
    """Base class: subclasses define index arithmetic, everything else is shared.

    Handles are immutable after construction; make_ring caches them so equal
    specs share one handle and element equality is identity-plus-index.
    """

    size: int
    spec = None

    # -- subclass interface -------------------------------------------------

    def add_i(self, i: int, j: int) -> int:
        raise NotImplementedError

    def mul_i(self, i: int, j: int) -> int:
        raise NotImplementedError

    def neg_i(self, i: int) -> int:
        raise NotImplementedError

    def value_at(self, i: int):
        raise NotImplementedError

    def format(self, i: int) -> str:
        return str(self.value_at(i))

    def from_int(self, k: int) -> RingElem:
        raise NotImplementedError

    def try_invert_i(self, i: int):
        """Return the index of the inverse, or None.  Generic O(size) scan."""
        one = self.one.index
        for j in range(self.size):
            if self.mul_i(i, j) == one:
                return j
        return None

    def additive_generator_indices(self):
        """Indices generating (R, +); greedy fallback works for any size."""
        gens = []
        span = {self.zero.index}
        for i in range(self.size):
            if i not in span:
                gens.append(i)
                frontier = [i]
                while frontier:
                    x = frontier.pop()
                    for s in list(span):
                        y = self.add_i(x, s)
                        if y not in span:
                            span.add(y)
                            frontier.append(y)
                    if x not in span:
                        span.add(x)
        return gens

    # -- shared machinery ----------------------------------------------------

    @property
    def zero(self) -> RingElem:
        return RingElem(self, self._zero_index())

    @property
    def one(self) -> RingElem:
        return RingElem(self, self._one_index())

    def _zero_index(self) -> int:
        return 0

    def _one_index(self) -> int:
        return self.from_int(1).index

    def element(self, i: int) -> RingElem:
        if not 0 <= i < self.size:
            raise IndexError(i)
        return RingElem(self, i)

    def elements(self):
        return [RingElem(self, i) for i in range(self.size)]

    def coerce(self, x) -> RingElem:
        if isinstance(x, RingElem):
            if x.ring is not self:
                raise RingError("elements from different rings")
            return x
        if isinstance(x, int):
            return self.from_int(x)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def additive_generators(self):
        return [RingElem(self, i) for i in self.additive_generator_indices()]

    def units(self):
        return [RingElem(self, i) for i in range(self.size)
                if self.try_invert_i(i) is not None]

    def sample(self, rng):
        return RingElem(self, rng.randrange(self.size))

    def tables(self):
        """(ADD, MUL, NEG) numpy lookup tables, built lazily."""
        tabs = getattr(self, "_tables", None)
        if tabs is None:
            if self.size > _TABLE_LIMIT:
                raise RingError(
                    f"ring of size {self.size} exceeds the table limit {_TABLE_LIMIT}")
            n = self.size
            add = np.empty((n, n), dtype=np.int32)
            mul = np.empty((n, n), dtype=np.int32)
            neg = np.empty(n, dtype=np.int32)
            for a in range(n):
                neg[a] = self.neg_i(a)
                for b in range(n):
                    add[a, b] = self.add_i(a, b)
                    mul[a, b] = self.mul_i(a, b)
            tabs = (add, mul, neg)
            self._tables = tabs
        return tabs

    def spec_str(self) -> str:
        return str(self.spec) if self.spec is not None else type(self).__name__

    def __repr__(self):
        return self.spec_str()

    def __len__(self):
        return self.size


class ZModRing(FiniteRing):
    def __init__(self, spec: ZMod):
        self.spec = spec
        self.n = spec.n
        self.size = spec.n

    def add_i(self, i, j):
        return (i + j) % self.n

    def mul_i(self, i, j):
        return (i * j) % self.n

    def neg_i(self, i):
        return (-i) % self.n

    def value_at(self, i):
        return i

    def from_int(self, k):
        return RingElem(self, k % self.n)

    def try_invert_i(self, i):
        try:
            return pow(i, -1, self.n)
        except ValueError:
            return None

    def additive_generator_indices(self):
        return [1]


class QuadQuotRing(FiniteRing):
    """O_D/(m) in the basis {1, w}: w = sqrt(D) for D = 2,3 mod 4,
    w = (1+sqrt(D))/2 for D = 1 mod 4.  Index of a+bw is a + m*b."""

    def __init__(self, spec: QuadQuot):
        self.spec = spec
        self.D = spec.D
        self.m = spec.m
        self.size = spec.m * spec.m
        if spec.D % 4 == 1:
            self._half = True
            self._c = ((spec.D - 1) // 4) % spec.m   # w^2 = w + c
        else:
            self._half = False
            self._c = spec.D % spec.m                # w^2 = c

    def _split(self, i):
        return i % self.m, i // self.m

    def _join(self, a, b):
        return (a % self.m) + self.m * (b % self.m)

    def add_i(self, i, j):
        a, b = self._split(i)
        c, d = self._split(j)
        return self._join(a + c, b + d)

    def mul_i(self, i, j):
        a, b = self._split(i)
        c, d = self._split(j)
        if self._half:
            return self._join(a * c + b * d * self._c, a * d + b * c + b * d)
        return self._join(a * c + b * d * self._c, a * d + b * c)

    def neg_i(self, i):
        a, b = self._split(i)
        return self._join(-a, -b)

    def value_at(self, i):
        return self._split(i)

    def format(self, i):
        a, b = self._split(i)
        if b == 0:
            return str(a)
        w = "w" if b == 1 else f"{b}w"
        return w if a == 0 else f"{a}+{w}"

    def from_int(self, k):
        return RingElem(self, k % self.m)

    @property
    def omega(self) -> RingElem:
        return RingElem(self, self._join(0, 1))

    def try_invert_i(self, i):
        a, b = self._split(i)
        if self._half:
            det = (a * (a + b) - b * b * self._c) % self.m
            conj = ((a + b) % self.m, (-b) % self.m)
        else:
            det = (a * a - b * b * self._c) % self.m
            conj = (a, (-b) % self.m)
        try:
            dinv = pow(det, -1, self.m)
        except ValueError:
            return None
        return self._join(conj[0] * dinv, conj[1] * dinv)

    def additive_generator_indices(self):
        return [self._join(1, 0), self._join(0, 1)]


class ProductRing(FiniteRing):
    """Direct product; the index is mixed-radix over the factor indices."""

    def __init__(self, spec: Product, factors):
        self.spec = spec
        self.factors = list(factors)
        self.size = 1
        for f in self.factors:
            self.size *= f.size

    def _split(self, i):
        out = []
        for f in self.factors:
            i, r = divmod(i, f.size)
            out.append(r)
        return out

    def _join(self, parts):
        i = 0
        for f, p in zip(reversed(self.factors), reversed(list(parts))):
            i = i * f.size + p
        return i

    def add_i(self, i, j):
        return self._join(f.add_i(a, b) for f, a, b in
                          zip(self.factors, self._split(i), self._split(j)))

    def mul_i(self, i, j):
        return self._join(f.mul_i(a, b) for f, a, b in
                          zip(self.factors, self._split(i), self._split(j)))

    def neg_i(self, i):
        return self._join(f.neg_i(a) for f, a in zip(self.factors, self._split(i)))

    def value_at(self, i):
        return tuple(f.value_at(a) for f, a in zip(self.factors, self._split(i)))

    def format(self, i):
        return "(" + ",".join(f.format(a) for f, a in
                              zip(self.factors, self._split(i))) + ")"

    def from_int(self, k):
        return RingElem(self, self._join(f.from_int(k).index for f in self.factors))

    def try_invert_i(self, i):
        parts = []
        for f, a in zip(self.factors, self._split(i)):
            inv = f.try_invert_i(a)
            if inv is None:
                return None
            parts.append(inv)
        return self._join(parts)

    def additive_generator_indices(self):
        gens = []
        for pos, f in enumerate(self.factors):
            for g in f.additive_generator_indices():
                parts = [other._zero_index() for other in self.factors]
                parts[pos] = g
                gens.append(self._join(parts))
        return gens


class FactorRing(FiniteRing):
    """The slice e*R for an idempotent e, a ring with identity e."""

    def __init__(self, parent: FiniteRing, idem: int):
        self.parent = parent
        self.idem = idem
        elems = sorted({parent.mul_i(idem, x) for x in range(parent.size)})
        self._elems = elems
        self._pos = {p: k for k, p in enumerate(elems)}
        self.size = len(elems)

    def add_i(self, i, j):
        return self._pos[self.parent.add_i(self._elems[i], self._elems[j])]

    def mul_i(self, i, j):
        return self._pos[self.parent.mul_i(self._elems[i], self._elems[j])]

    def neg_i(self, i):
        return self._pos[self.parent.neg_i(self._elems[i])]

    def value_at(self, i):
        return self.parent.value_at(self._elems[i])

    def format(self, i):
        return self.parent.format(self._elems[i])

    def from_int(self, k):
        # k*e, the image of the integer k under Z -> eR
        parent_k = self.parent.from_int(k).index
        return RingElem(self, self._pos[self.parent.mul_i(self.idem, parent_k)])

    def parent_index(self, i):
        return self._elems[i]

    def spec_str(self):
        return f"{self.parent.spec_str()}|e={self.parent.format(self.idem)}"


class QuotientRing(FiniteRing):
    """R/I with the minimal-index coset representative as canonical form."""

    def __init__(self, parent: FiniteRing, ideal: "Ideal"):
        if ideal.ring is not parent:
            raise RingError("ideal belongs to a different ring")
        self.parent = parent
        self.ideal = ideal
        rep = {}
        reps = []
        shifts = sorted(ideal.indices)
        for x in range(parent.size):
            if x in rep:
                continue
            reps.append(x)
            for j in shifts:
                rep[parent.add_i(x, j)] = x
        self._rep = rep
        self._elems = reps            # already ascending, reps are coset minima
        self._pos = {p: k for k, p in enumerate(reps)}
        self.size = len(reps)

    def add_i(self, i, j):
        return self._pos[self._rep[self.parent.add_i(self._elems[i], self._elems[j])]]

    def mul_i(self, i, j):
        return self._pos[self._rep[self.parent.mul_i(self._elems[i], self._elems[j])]]

    def neg_i(self, i):
        return self._pos[self._rep[self.parent.neg_i(self._elems[i])]]

    def value_at(self, i):
        return self.parent.value_at(self._elems[i])

    def format(self, i):
        return self.parent.format(self._elems[i]) + "~"

    def from_int(self, k):
        return RingElem(self, self._pos[self._rep[self.parent.from_int(k).index]])

    def project_index(self, parent_i):
        return self._pos[self._rep[parent_i]]

    def spec_str(self):
        gens = ",".join(self.parent.format(g.index) for g in self.ideal.generators)
        return f"{self.parent.spec_str()}/({gens})"


_RING_CACHE: dict = {}


def make_ring(spec) -> FiniteRing:
    """Construct (or fetch the cached) ring handle for a spec or spec string."""
    if isinstance(spec, str):
        spec = parse_ring(spec)
    if spec in _RING_CACHE:
        return _RING_CACHE[spec]
    spec.validate()
    if isinstance(spec, ZMod):
        ring = ZModRing(spec)
    elif isinstance(spec, QuadQuot):
        ring = QuadQuotRing(spec)
    elif isinstance(spec, Product):
        ring = ProductRing(spec, [make_ring(f) for f in spec.factors])
    else:
        raise InvalidSpecError(f"unknown spec {spec!r}")
    _RING_CACHE[spec] = ring
    return ring


def try_invert(x: RingElem):
    """Multiplicative inverse of x, or None when x is not a unit."""
    j = x.ring.try_invert_i(x.index)
    return None if j is None else RingElem(x.ring, j)


# ---------------------------------------------------------------------------
# element literals ("3", "w", "2+3w", "(1,0)")

_ELEM_RE_QUAD = re.compile(r"^(?:(-?\d+)\+)?(-?\d*)w$")


def parse_elem(ring: FiniteRing, text: str) -> RingElem:
    text = text.strip()
    if isinstance(ring, ProductRing):
        if not (text.startswith("(") and text.endswith(")")):
            return ring.from_int(int(text))
        parts, depth, cur = [], 0, ""
        for ch in text[1:-1]:
            if ch == "," and depth == 0:
                parts.append(cur)
                cur = ""
                continue
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            cur += ch
        parts.append(cur)
        if len(parts) != len(ring.factors):
            raise RingError(f"{text!r} has {len(parts)} components, ring has "
                            f"{len(ring.factors)}")
        idx = ring._join(parse_elem(f, p).index for f, p in zip(ring.factors, parts))
        return RingElem(ring, idx)
    if isinstance(ring, QuadQuotRing):
        m = _ELEM_RE_QUAD.match(text)
        if m:
            a = int(m.group(1) or 0)
            bs = m.group(2)
            b = 1 if bs in ("", "+") else (-1 if bs == "-" else int(bs))
            return a * ring.one + b * ring.omega
        return ring.from_int(int(text))
    return ring.from_int(int(text))


# ---------------------------------------------------------------------------
# ideals


class Ideal:
    """An enumerated ideal; equality and hashing go by the element set."""

    __slots__ = ("ring", "generators", "indices", "_sorted")

    def __init__(self, ring: FiniteRing, generators, indices):
        self.ring = ring
        self.generators = tuple(generators)
        self.indices = frozenset(indices)
        self._sorted = tuple(sorted(indices))

    def __contains__(self, x) -> bool:
        x = self.ring.coerce(x)
        return x.index in self.indices

    def __len__(self):
        return len(self.indices)

    def __eq__(self, other):
        return (isinstance(other, Ideal) and other.ring is self.ring
                and other.indices == self.indices)

    def __hash__(self):
        return hash((id(self.ring), self.indices))

    def __le__(self, other):
        return self.indices <= other.indices

    @property
    def is_full(self) -> bool:
        return len(self.indices) == self.ring.size

    @property
    def is_zero(self) -> bool:
        return len(self.indices) == 1

    def sorted_elements(self):
        return [RingElem(self.ring, i) for i in self._sorted]

    def __repr__(self):
        gens = ",".join(self.ring.format(g.index) for g in self.generators)
        return f"({gens}) in {self.ring.spec_str()}"


def _additive_closure(ring: FiniteRing, seed):
    """Closure of seed under addition; seed must be negation-closed or will
    be completed through repeated addition (finite ring => it is)."""
    known = set(seed)
    known.add(ring._zero_index())
    frontier = list(known)
    adders = list(set(seed))
    while frontier:
        x = frontier.pop()
        for a in adders:
            y = ring.add_i(x, a)
            if y not in known:
                known.add(y)
                frontier.append(y)
    return known


def ideal_from_generators(ring: FiniteRing, gens) -> Ideal:
    """Smallest ideal containing gens: all multiples, then additive closure."""
    gens = [ring.coerce(g) for g in gens]
    multiples = {ring._zero_index()}
    for g in gens:
        for r in range(ring.size):
            multiples.add(ring.mul_i(r, g.index))
    return Ideal(ring, gens, _additive_closure(ring, multiples))


def ideal_sum(*ideals) -> Ideal:
    ring = ideals[0].ring
    gens = [g for I in ideals for g in I.generators]
    seed = set()
    for I in ideals:
        seed |= I.indices
    return Ideal(ring, gens, _additive_closure(ring, seed))


def ideal_is_full(ideal: Ideal) -> bool:
    return ideal.is_full


def _reduced_generators(ring: FiniteRing, indices):
    """Greedy small generating set for a known ideal element set."""
    gens = []
    span = {ring._zero_index()}
    for i in sorted(indices):
        if i not in span:
            gens.append(RingElem(ring, i))
            span = ideal_from_generators(ring, gens).indices
            if span == set(indices):
                break
    return gens


def radical_contains(ideal: Ideal, x) -> bool:
    """True iff some power x^k (1 <= k <= |R|) lies in the ideal."""
    x = ideal.ring.coerce(x)
    p = x.index
    seen = set()
    for _ in range(ideal.ring.size):
        if p in ideal.indices:
            return True
        if p in seen:
            return False
        seen.add(p)
        p = ideal.ring.mul_i(p, x.index)
    return False


# ---------------------------------------------------------------------------
# idempotent decomposition, local factors, maximal ideals


class RingProjection:
    """A surjective ring homomorphism src -> dst, tabulated on indices."""

    def __init__(self, src: FiniteRing, dst: FiniteRing, table):
        self.src = src
        self.dst = dst
        self.table = np.asarray(table, dtype=np.int64)

    def __call__(self, x: RingElem) -> RingElem:
        return RingElem(self.dst, int(self.table[x.index]))

    def apply_indices(self, arr):
        return self.table[arr]

    def compose(self, after: "RingProjection") -> "RingProjection":
        if after.src is not self.dst:
            raise RingError("projection domains do not chain")
        return RingProjection(self.src, after.dst, after.table[self.table])

    def __repr__(self):
        return f"{self.src.spec_str()} -> {self.dst.spec_str()}"


def idempotents(ring: FiniteRing):
    return [i for i in range(ring.size) if ring.mul_i(i, i) == i]


def primitive_idempotents(ring: FiniteRing):
    idems = idempotents(ring)
    zero = ring._zero_index()
    prim = []
    for e in idems:
        if e == zero:
            continue
        if all(f in (zero, e) or ring.mul_i(e, f) != f for f in idems):
            prim.append(e)
    return sorted(prim)


def local_factors(ring: FiniteRing):
    """Local rings e*R for the primitive idempotents e, with projections."""
    cached = getattr(ring, "_local_factors", None)
    if cached is not None:
        return cached
    out = []
    for e in primitive_idempotents(ring):
        fac = FactorRing(ring, e)
        table = [fac._pos[ring.mul_i(e, x)] for x in range(ring.size)]
        out.append((fac, RingProjection(ring, fac, table)))
    out.sort(key=lambda pair: (pair[0].size, pair[0]._elems))
    ring._local_factors = out
    return out


def residue_field_size(local_ring: FiniteRing) -> int:
    """|L/m| for a local ring L; the non-units of L form its maximal ideal."""
    nonunits = sum(1 for i in range(local_ring.size)
                   if local_ring.try_invert_i(i) is None)
    return local_ring.size // nonunits if nonunits else local_ring.size


def maximal_ideals(ring: FiniteRing):
    """All maximal ideals, through the idempotent decomposition."""
    cached = getattr(ring, "_maximal_ideals", None)
    if cached is not None:
        return cached
    out = []
    for fac, proj in local_factors(ring):
        nonunit_pos = {i for i in range(fac.size) if fac.try_invert_i(i) is None}
        members = {x for x in range(ring.size) if int(proj.table[x]) in nonunit_pos}
        out.append(Ideal(ring, _reduced_generators(ring, members), members))
    out.sort(key=lambda I: I._sorted)
    ring._maximal_ideals = out
    return out


def quotient_ring(ring: FiniteRing, ideal: Ideal):
    """R/I together with the projection R -> R/I."""
    cache = getattr(ring, "_quotients", None)
    if cache is None:
        cache = {}
        ring._quotients = cache
    if ideal in cache:
        return cache[ideal]
    q = QuotientRing(ring, ideal)
    table = [q.project_index(x) for x in range(ring.size)]
    pair = (q, RingProjection(ring, q, table))
    cache[ideal] = pair
    return pair


def to_f2(ring: FiniteRing) -> RingProjection:
    """The unique isomorphism from a two-element ring onto Z/2."""
    if ring.size != 2:
        raise RingError(f"{ring.spec_str()} has size {ring.size}, not 2")
    f2 = make_ring(ZMod(2))
    table = np.zeros(2, dtype=np.int64)
    table[ring._one_index()] = 1
    table[ring._zero_index()] = 0
    return RingProjection(ring, f2, table)


# ---------------------------------------------------------------------------
# how 2 factors in a quadratic order


class SplitKind(Enum):
    SPLIT = "split"
    RAMIFIED = "ramified"
    INERT = "inert"


def split_two_quadratic(D: int):
    """Factorization type of (2) in the quadratic order for D, and the count
    r of prime factors with residue field F2."""
    if D in (0, 1) or not _is_square_free(D):
        raise InvalidSpecError(f"D={D} must be square-free and not 0 or 1")
    c = D % 8
    if c == 1:
        return SplitKind.SPLIT, 2
    if c == 5:
        # inert: the residue field is F4, which never counts toward r
        return SplitKind.INERT, 0
    return SplitKind.RAMIFIED, 1
