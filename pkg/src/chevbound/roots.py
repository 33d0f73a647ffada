"""Root combinatorics for A_n, B2 and G2: positive roots, Cartan pairings,
reflections, lengths, and the support/coefficient data of the commutator
relations.  Pure lookup tables over integer vectors, no floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import factorial


class RootError(Exception):
    pass


class InvalidRootError(RootError):
    pass


class Length(Enum):
    SHORT = "short"
    LONG = "long"


@dataclass(frozen=True)
class Root:
    system: "RootSystem"
    vec: tuple

    def __neg__(self) -> "Root":
        return Root(self.system, tuple(-c for c in self.vec))

    @property
    def height(self) -> int:
        return sum(self.vec)

    def is_positive(self) -> bool:
        return self.height > 0

    def __repr__(self):
        return self.system.format_root(self.vec)


def _vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _vscale(k, u):
    return tuple(k * a for a in u)


# Gram matrices scaled to integers; ratios of inner products are what matter.
_GRAM = {
    "A2-like": None,  # A-type uses the standard e_i inner product instead
    "B2": ((2, -2), (-2, 4)),
    "G2": ((2, -3), (-3, 6)),
}


class RootSystem:
    """One of A(n), B2, G2, with roots as integer vectors.

    Rank-2 roots are coefficient pairs (i, j) over the simple roots (a, b)
    with a short where lengths differ; A(n) roots are e_p - e_q vectors of
    length n+1.
    """

    def __init__(self, kind: str, rank: int):
        self.kind = kind
        self.rank = rank
        if kind == "A":
            dim = rank + 1
            vecs = []
            for p in range(dim):
                for q in range(dim):
                    if p != q:
                        v = [0] * dim
                        v[p], v[q] = 1, -1
                        vecs.append(tuple(v))
            self._vecs = set(vecs)
            self._gram = None
        elif kind == "B2":
            pos = [(1, 0), (0, 1), (1, 1), (2, 1)]
            self._vecs = set(pos) | {_vscale(-1, v) for v in pos}
            self._gram = _GRAM["B2"]
        elif kind == "G2":
            pos = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
            self._vecs = set(pos) | {_vscale(-1, v) for v in pos}
            self._gram = _GRAM["G2"]
        else:
            raise InvalidRootError(f"unknown root system kind {kind!r}")
        self._min_norm = min(self.inner(v, v) for v in self._vecs)
        self._max_norm = max(self.inner(v, v) for v in self._vecs)

    # -- basics --------------------------------------------------------------

    def __repr__(self):
        return f"A{self.rank}" if self.kind == "A" else self.kind

    def inner(self, u, v) -> int:
        if self._gram is None:
            return sum(a * b for a, b in zip(u, v))
        g = self._gram
        return sum(u[i] * g[i][j] * v[j] for i in range(2) for j in range(2))

    def contains_vec(self, v) -> bool:
        return tuple(v) in self._vecs

    def root(self, vec) -> Root:
        vec = tuple(vec)
        if vec not in self._vecs:
            raise InvalidRootError(f"{vec} is not a root of {self}")
        return Root(self, vec)

    def root_or_none(self, vec):
        vec = tuple(vec)
        return Root(self, vec) if vec in self._vecs else None

    def positive_roots(self):
        def sort_key(v):
            if self.kind == "A":
                return (_a_height(v), v.index(1))
            return (sum(v), v[1])
        pos = [v for v in self._vecs if self._is_positive_vec(v)]
        pos.sort(key=sort_key)
        return [Root(self, v) for v in pos]

    def all_roots(self):
        pos = self.positive_roots()
        return pos + [-r for r in pos]

    def simple_roots(self):
        if self.kind == "A":
            dim = self.rank + 1
            out = []
            for p in range(dim - 1):
                v = [0] * dim
                v[p], v[p + 1] = 1, -1
                out.append(Root(self, tuple(v)))
            return out
        return [Root(self, (1, 0)), Root(self, (0, 1))]

    def _is_positive_vec(self, v) -> bool:
        if self.kind == "A":
            return v[[c != 0 for c in v].index(True)] > 0
        return sum(v) > 0

    # -- printing and parsing --------------------------------------------------

    def format_root(self, vec) -> str:
        if self.kind == "A":
            p = vec.index(1) + 1
            q = vec.index(-1) + 1
            return f"e{p}-e{q}"
        i, j = vec
        if i <= 0 and j <= 0 and (i, j) != (0, 0):
            body = self.format_root((-i, -j))
            return f"-({body})" if "+" in body else f"-{body}"
        parts = []
        if i:
            parts.append("a" if i == 1 else f"{i}a")
        if j:
            parts.append("b" if j == 1 else f"{j}b")
        return "+".join(parts)

    def parse_root(self, text: str) -> Root:
        text = text.strip()
        m = re.match(r"^e(\d+)-e(\d+)$", text)
        if m:
            if self.kind != "A":
                raise InvalidRootError(f"{text!r} names an A-type root")
            p, q = int(m.group(1)) - 1, int(m.group(2)) - 1
            dim = self.rank + 1
            if not (0 <= p < dim and 0 <= q < dim and p != q):
                raise InvalidRootError(f"{text!r} out of range for {self}")
            v = [0] * dim
            v[p], v[q] = 1, -1
            return self.root(v)
        neg = False
        if text.startswith("-(") and text.endswith(")"):
            neg, text = True, text[2:-1]
        elif text.startswith("-"):
            neg, text = True, text[1:]
        m = re.match(r"^(?:(\d*)a)?\+?(?:(\d*)b)?$", text)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise InvalidRootError(f"cannot parse root {text!r}")
        i = 0 if m.group(1) is None else int(m.group(1) or 1)
        j = 0 if m.group(2) is None else int(m.group(2) or 1)
        if self.kind == "A":
            # a, b aliases for the first two simple roots
            simples = self.simple_roots()
            vec = (0,) * (self.rank + 1)
            if i:
                if self.rank < 1:
                    raise InvalidRootError("no simple root 'a' in A0")
                vec = _vadd(vec, _vscale(i, simples[0].vec))
            if j:
                if self.rank < 2:
                    raise InvalidRootError(f"no simple root 'b' in {self}")
                vec = _vadd(vec, _vscale(j, simples[1].vec))
        else:
            vec = (i, j)
        if neg:
            vec = _vscale(-1, vec)
        return self.root(vec)


def _a_height(vec) -> int:
    # height of e_p - e_q is q - p
    return vec.index(-1) - vec.index(1)


@lru_cache(maxsize=None)
def _root_system_cached(name: str) -> RootSystem:
    if name in ("B2", "G2"):
        return RootSystem(name, 2)
    m = re.match(r"^A(\d+)$", name)
    if m and 1 <= int(m.group(1)) <= 8:
        return RootSystem("A", int(m.group(1)))
    raise InvalidRootError(f"unsupported root system {name!r}")


def root_system(name: str) -> RootSystem:
    """Fetch a cached root system by name: "A1".."A8", "B2", "G2"."""
    return _root_system_cached(name.upper())


B2 = root_system("B2")
G2 = root_system("G2")


def A(n: int) -> RootSystem:
    return root_system(f"A{n}")


# ---------------------------------------------------------------------------
# operations


def positive_roots(system: RootSystem):
    return system.positive_roots()


def pairing(phi: Root, psi: Root) -> int:
    """Cartan integer <phi, psi> = 2(phi,psi)/(psi,psi)."""
    if phi.system is not psi.system:
        raise RootError("roots from different systems")
    num = 2 * phi.system.inner(phi.vec, psi.vec)
    den = phi.system.inner(psi.vec, psi.vec)
    assert num % den == 0
    return num // den


def reflect(phi: Root, alpha: Root) -> Root:
    """w_alpha(phi) = phi - <phi,alpha> alpha."""
    vec = _vadd(phi.vec, _vscale(-pairing(phi, alpha), alpha.vec))
    return phi.system.root(vec)


def root_length(phi: Root) -> Length:
    sys = phi.system
    if sys._min_norm == sys._max_norm:
        return Length.SHORT  # simply-laced convention
    return Length.SHORT if sys.inner(phi.vec, phi.vec) == sys._min_norm else Length.LONG


_SUPPORT_RANGE = 4


def commutator_support(alpha: Root, beta: Root):
    """All (i, j, i*alpha + j*beta) with i, j >= 1 landing in the system,
    ordered ascending by i+j then i.  Empty iff alpha+beta is not a root."""
    sys = alpha.system
    if sys is not beta.system:
        raise RootError("roots from different systems")
    if all(a + b == 0 for a, b in zip(alpha.vec, beta.vec)):
        raise RootError("alpha + beta = 0 has no commutator relation")
    out = []
    for i in range(1, _SUPPORT_RANGE):
        for j in range(1, _SUPPORT_RANGE):
            vec = _vadd(_vscale(i, alpha.vec), _vscale(j, beta.vec))
            r = sys.root_or_none(vec)
            if r is not None:
                out.append((i, j, r))
    out.sort(key=lambda t: (t[0] + t[1], t[0]))
    return out


def _chain_length(sys: RootSystem, theta, step) -> int:
    """Largest p >= 0 with theta - p*step still a root."""
    p = 0
    cur = theta
    while True:
        cur = _vadd(cur, _vscale(-1, step))
        if not sys.contains_vec(cur):
            return p
        p += 1


def commutator_coeffs(alpha: Root, beta: Root):
    """Support terms with their structure-constant magnitudes: entries
    (i, j, root, c) for the relation
    (eps_beta(b), eps_alpha(a)) = prod eps_{i*alpha+j*beta}(+-c a^i b^j)."""
    sys = alpha.system
    out = []
    for i, j, r in commutator_support(alpha, beta):
        if i >= 2 and j >= 2:
            c = 1  # the lone G2 (3,2)-type term
        elif j == 1:
            num = 1
            for k in range(i):
                theta = _vadd(_vscale(k, alpha.vec), beta.vec)
                num *= _chain_length(sys, theta, alpha.vec) + 1
            assert num % factorial(i) == 0
            c = num // factorial(i)
        else:
            num = 1
            for k in range(j):
                theta = _vadd(_vscale(k, beta.vec), alpha.vec)
                num *= _chain_length(sys, theta, beta.vec) + 1
            assert num % factorial(j) == 0
            c = num // factorial(j)
        out.append((i, j, r, c))
    return out
