"""Conjugation-invariant word metrics on finite groups.

Conjugacy closures, balls B_S(k), the word norm and its diameter, epsilon
sets, normal closures, and exact Delta_k through conjugacy-class multiset
enumeration.  Works on any group object exposing the small index protocol
(order, identity, generators, mult_many/lmult_many, inv_many, conj_many);
matrix groups from :mod:`chevbound.groups` and table groups defined here
both qualify.

Infinity is always the float sentinel ``math.inf`` / ``-math.inf``, never a
large integer.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .groups import CapExceededError, MatrixGroup

INFINITY = math.inf
NEG_INFINITY = -math.inf


class NormError(Exception):
    pass


class CacheVersionError(NormError):
    """A cache file was written by an incompatible format version."""


# ---------------------------------------------------------------------------
# table-backed groups (oracles, quotients, small examples)


class TableGroup:
    """Finite group by explicit multiplication table; identity is index 0."""

    def __init__(self, table, generators=None, name="table"):
        table = np.asarray(table, dtype=np.int64)
        n = len(table)
        if not ((table[0] == np.arange(n)).all() and (table[:, 0] == np.arange(n)).all()):
            raise NormError("index 0 must be the identity")
        self.table = table
        self.name = name
        inv = np.empty(n, dtype=np.int64)
        for i in range(n):
            js = np.nonzero(table[i] == 0)[0]
            if len(js) != 1:
                raise NormError("not a group table: missing or non-unique inverse")
            inv[i] = js[0]
        self._inv = inv
        self.generators = (list(range(1, n)) if generators is None
                           else [int(g) for g in generators])

    @property
    def order(self) -> int:
        return len(self.table)

    identity = 0

    def spec_key(self) -> str:
        return self.name

    def mult(self, i, j):
        return int(self.table[i, j])

    def mult_many(self, idx, j):
        return self.table[np.asarray(idx, dtype=np.int64), j]

    def lmult_many(self, i, idx):
        return self.table[i, np.asarray(idx, dtype=np.int64)]

    def inv(self, i):
        return int(self._inv[i])

    def inv_many(self, idx):
        return self._inv[np.asarray(idx, dtype=np.int64)]

    def conj(self, g, x):
        return int(self.table[self.table[g, x], self._inv[g]])

    def conj_many(self, g, idx):
        return self.table[self.table[g, np.asarray(idx, dtype=np.int64)], self._inv[g]]

    @classmethod
    def from_elements(cls, elems, mul, identity, name="table"):
        """Build a table group from abstract elements and a product function."""
        elems = list(elems)
        elems.remove(identity)
        elems.insert(0, identity)
        pos = {e: i for i, e in enumerate(elems)}
        n = len(elems)
        table = np.empty((n, n), dtype=np.int64)
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                table[i, j] = pos[mul(a, b)]
        return cls(table, name=name)


def symmetric_group(n: int) -> TableGroup:
    perms = list(itertools.permutations(range(n)))

    def mul(p, q):  # act left-to-right: (p*q)(x) = p(q(x))
        return tuple(p[q[i]] for i in range(n))

    return TableGroup.from_elements(perms, mul, tuple(range(n)), name=f"S{n}")


def cyclic_group(n: int) -> TableGroup:
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return TableGroup(table, name=f"C{n}")


class ProductGroup:
    """Direct product of two protocol groups, index = a * |G2| + b."""

    def __init__(self, g1, g2):
        self.g1 = g1
        self.g2 = g2
        self.n2 = g2.order
        self.generators = [g * self.n2 for g in g1.generators] + list(g2.generators)

    @property
    def order(self) -> int:
        return self.g1.order * self.g2.order

    identity = 0

    def spec_key(self) -> str:
        return f"({self.g1.spec_key()})x({self.g2.spec_key()})"

    def _split(self, idx):
        idx = np.asarray(idx, dtype=np.int64)
        return idx // self.n2, idx % self.n2

    def mult_many(self, idx, j):
        a, b = self._split(idx)
        ja, jb = divmod(int(j), self.n2)
        return self.g1.mult_many(a, ja) * self.n2 + self.g2.mult_many(b, jb)

    def lmult_many(self, i, idx):
        a, b = self._split(idx)
        ia, ib = divmod(int(i), self.n2)
        return self.g1.lmult_many(ia, a) * self.n2 + self.g2.lmult_many(ib, b)

    def mult(self, i, j):
        ia, ib = divmod(int(i), self.n2)
        ja, jb = divmod(int(j), self.n2)
        return self.g1.mult(ia, ja) * self.n2 + self.g2.mult(ib, jb)

    def inv(self, i):
        a, b = divmod(int(i), self.n2)
        return self.g1.inv(a) * self.n2 + self.g2.inv(b)

    def inv_many(self, idx):
        a, b = self._split(idx)
        return self.g1.inv_many(a) * self.n2 + self.g2.inv_many(b)

    def conj_many(self, g, idx):
        return self.lmult_many(g, self.mult_many(idx, self.inv(g)))

    def conj(self, g, x):
        return self.mult(self.mult(g, x), self.inv(g))


# ---------------------------------------------------------------------------
# conjugacy classes


def conjugacy_classes(G):
    """Classes as sorted index arrays, ordered by their minimal element;
    the identity class comes first.  Cached on the group object."""
    cached = getattr(G, "_conj_classes", None)
    if cached is not None:
        return cached
    n = G.order
    seen = np.zeros(n, dtype=bool)
    in_orbit = np.zeros(n, dtype=bool)
    classes = []
    for i in range(n):
        if seen[i]:
            continue
        in_orbit[:] = False
        in_orbit[i] = True
        frontier = np.array([i], dtype=np.int64)
        while len(frontier):
            nxt = []
            for g in G.generators:
                conj = G.conj_many(g, frontier)
                fresh = np.unique(conj[~in_orbit[conj]])
                if len(fresh):
                    in_orbit[fresh] = True
                    nxt.append(fresh)
            frontier = (np.unique(np.concatenate(nxt)) if nxt
                        else np.array([], dtype=np.int64))
        cls = np.nonzero(in_orbit)[0].astype(np.int64)
        seen[cls] = True
        classes.append(cls)
    G._conj_classes = classes
    return classes


def class_map(G):
    """Element index -> class position in conjugacy_classes(G)."""
    cached = getattr(G, "_class_map", None)
    if cached is not None:
        return cached
    cm = np.empty(G.order, dtype=np.int64)
    for ci, cls in enumerate(conjugacy_classes(G)):
        cm[cls] = ci
    G._class_map = cm
    return cm


def _as_index_array(G, S):
    out = []
    for s in S:
        if isinstance(s, (int, np.integer)):
            out.append(int(s))
        else:
            out.append(G.index_of(s))
    return np.array(sorted(set(out)), dtype=np.int64)


def conjugacy_closure(G, S):
    """All conjugates of the elements of S and of their inverses."""
    idx = _as_index_array(G, S)
    if len(idx) == 0:
        return idx
    cm = class_map(G)
    classes = conjugacy_classes(G)
    wanted = set(cm[idx].tolist()) | set(cm[G.inv_many(idx)].tolist())
    return np.unique(np.concatenate([classes[c] for c in sorted(wanted)]))


# ---------------------------------------------------------------------------
# balls, norms, diameters


def _bfs_distances(G, gens, max_level=None):
    """Single-source BFS from the identity over right multiplication."""
    dist = np.full(G.order, -1, dtype=np.int32)
    dist[G.identity] = 0
    frontier = np.array([G.identity], dtype=np.int64)
    level = 0
    while len(frontier) and (max_level is None or level < max_level):
        level += 1
        nxt = []
        for c in gens:
            prod = G.mult_many(frontier, int(c))
            nxt.append(prod[dist[prod] < 0])
        if not nxt:
            break
        cand = np.unique(np.concatenate(nxt))
        cand = cand[dist[cand] < 0]
        if len(cand) == 0:
            break
        dist[cand] = level
        frontier = cand
    return dist


def ball(G, S, k: int):
    """B_S(k): products of at most k conjugates of S u S^{-1}, plus 1."""
    if k < 0:
        raise NormError("k must be nonnegative")
    gens = conjugacy_closure(G, S)
    dist = _bfs_distances(G, gens, max_level=k)
    return np.nonzero(dist >= 0)[0].astype(np.int64)


def norm_table(G, S) -> "NormTable":
    gens = conjugacy_closure(G, S)
    dist = _bfs_distances(G, gens)
    return NormTable(
        group_key=G.spec_key(),
        class_key=_class_multiset_key(G, gens),
        gen_set=[int(x) for x in _as_index_array(G, S)],
        dists=dist,
    )


def word_norm(G, S, g):
    """BFS distance of g, or math.inf outside the normal closure."""
    if not isinstance(g, (int, np.integer)):
        g = G.index_of(g)
    return norm_table(G, S).distance(int(g))


def diameter(G, S):
    return norm_table(G, S).diameter()


def normal_closure(G, S):
    """Smallest normal subgroup containing S, as a sorted index array."""
    return _normal_closure_impl(G, S, early_full=False)


def normally_generates(G, S) -> bool:
    """Whether the normal closure of S is the whole group.  Exits early once
    membership exceeds half the order: a proper subgroup never can."""
    result = _normal_closure_impl(G, S, early_full=True)
    if result is True:
        return True
    return len(result) == G.order


def _normal_closure_impl(G, S, early_full: bool):
    T: list = []
    member = np.zeros(G.order, dtype=bool)
    member[G.identity] = True
    count = 1
    half = G.order // 2
    new_gens = [int(x) for x in _as_index_array(G, S) if x != G.identity]
    while new_gens:
        # invariant: member = <T> before this round.  Fresh elements can only
        # come from products touching a new generator, so seed the frontier
        # with member x new and then BFS the fresh part over all generators.
        current = np.nonzero(member)[0]
        T.extend(new_gens)
        parts = []
        for t in new_gens:
            prod = G.mult_many(current, t)
            parts.append(prod[~member[prod]])
        frontier = np.unique(np.concatenate(parts)) if parts else np.array([], dtype=np.int64)
        member[frontier] = True
        count += len(frontier)
        if early_full and count > half:
            return True
        while len(frontier):
            nxt = []
            for t in T:
                prod = G.mult_many(frontier, t)
                nxt.append(prod[~member[prod]])
            cand = np.unique(np.concatenate(nxt)) if nxt else np.array([], dtype=np.int64)
            cand = cand[~member[cand]]
            member[cand] = True
            count += len(cand)
            if early_full and count > half:
                return True
            frontier = cand
        # conjugating the generators is enough: once every g t g^{-1} stays
        # inside, the subgroup they generate is normal
        fresh = set()
        t_arr = np.array(T, dtype=np.int64)
        for g in G.generators:
            conj = G.conj_many(int(g), t_arr)
            fresh.update(int(c) for c in conj[~member[conj]])
        new_gens = sorted(fresh)
    return np.nonzero(member)[0].astype(np.int64)


def epsilon_set(mgroup: MatrixGroup, S, chi, k: int):
    """Ring elements r with eps_chi(r) inside B_S(k)."""
    in_ball = np.zeros(mgroup.order, dtype=bool)
    in_ball[ball(mgroup, S, k)] = True
    out = set()
    for r in mgroup.ring.elements():
        idx = mgroup.root_element_index(chi, r)
        if in_ball[idx]:
            out.add(r)
    return out


# ---------------------------------------------------------------------------
# commutator subgroup and abelianization (shared with constructions)


def commutator_subgroup(G):
    """[G, G] as a sorted index array: the normal closure of the commutators
    of the generators.  Cached on the group object."""
    cached = getattr(G, "_commutator_subgroup", None)
    if cached is not None:
        return cached
    comms = set()
    for a in G.generators:
        inv_a = G.inv(int(a))
        for b in G.generators:
            c = G.mult(G.mult(int(a), int(b)),
                       G.mult(inv_a, G.inv(int(b))))
            comms.add(c)
    comms.discard(G.identity)
    result = (normal_closure(G, sorted(comms)) if comms
              else np.array([G.identity], dtype=np.int64))
    G._commutator_subgroup = result
    return result


def quotient_group(G, normal_indices):
    """(Q, proj): quotient by a normal subgroup, as a table group plus the
    element -> coset projection array."""
    normal_indices = np.asarray(normal_indices, dtype=np.int64)
    label = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for i in range(G.order):
        if label[i] >= 0:
            continue
        coset = G.lmult_many(i, normal_indices)
        label[coset] = len(reps)
        reps.append(i)
    reps_arr = np.array(reps, dtype=np.int64)
    m = len(reps)
    table = np.empty((m, m), dtype=np.int64)
    for ci in range(m):
        table[ci] = label[G.lmult_many(int(reps_arr[ci]), reps_arr)]
    gen_img = sorted({int(label[g]) for g in G.generators} - {0})
    q = TableGroup(table, generators=gen_img or None,
                   name=f"{G.spec_key()}/N{len(normal_indices)}")
    return q, label


def abelian_quotient(G):
    """(Q, proj) for G/[G,G]; cached."""
    cached = getattr(G, "_abelian_quotient", None)
    if cached is None:
        cached = quotient_group(G, commutator_subgroup(G))
        G._abelian_quotient = cached
    return cached


# ---------------------------------------------------------------------------
# exact Delta_k


def _class_pair_units(G):
    """Inverse-closed class units: frozensets {c, c_inv} over nontrivial
    classes, with a canonical representative element for each."""
    classes = conjugacy_classes(G)
    cm = class_map(G)
    units = {}
    for ci, cls in enumerate(classes):
        if len(cls) == 1 and cls[0] == G.identity:
            continue
        ci_inv = int(cm[G.inv(int(cls[0]))])
        key = frozenset({ci, ci_inv})
        if key not in units:
            units[key] = int(classes[min(key)][0])
    return sorted(units.items(), key=lambda kv: sorted(kv[0]))


def delta_k_exact(G, k: int, multiset_cap: int = 100_000,
                  use_abelianization_skip: bool = True):
    """Exact Delta_k by exhausting class-content candidates of size <= k.

    The word norm depends only on the conjugacy closure of S, so candidates
    are combinations of inverse-closed class units; each is tested for
    normal generation (optionally pre-screened through the abelianization)
    and, when it generates, measured by a full BFS.
    """
    if k < 1:
        raise NormError("k must be at least 1")
    units = _class_pair_units(G)
    total = sum(math.comb(len(units), j) for j in range(1, k + 1))
    if total > multiset_cap:
        raise CapExceededError(total)
    if use_abelianization_skip:
        q, proj = abelian_quotient(G)
    best = NEG_INFINITY
    for j in range(1, k + 1):
        for combo in itertools.combinations(units, j):
            reps = [rep for _, rep in combo]
            if use_abelianization_skip and q.order > 1:
                image = normal_closure(q, sorted({int(proj[r]) for r in reps}))
                if len(image) < q.order:
                    continue
            if not normally_generates(G, reps):
                continue
            d = diameter(G, reps)
            if best is NEG_INFINITY or d > best:
                best = d
    return best


# ---------------------------------------------------------------------------
# norm tables and their binary cache

CACHE_VERSION = 1
_MAGIC = b"CBNT"


def _class_multiset_key(G, closure_gens):
    """Canonical key for the class content of a generating set: the minimal
    element of every class meeting the conjugacy closure."""
    if len(closure_gens) == 0:
        return ()
    cm = class_map(G)
    classes = conjugacy_classes(G)
    return tuple(sorted(int(classes[c][0]) for c in np.unique(cm[closure_gens])))


@dataclass
class NormTable:
    group_key: str
    class_key: tuple
    gen_set: list
    dists: np.ndarray  # int32, -1 encodes infinity

    def distance(self, i: int):
        d = int(self.dists[i])
        return INFINITY if d < 0 else d

    def diameter(self):
        if (self.dists < 0).any():
            return INFINITY
        return int(self.dists.max())

    def ball_indices(self, k: int):
        return np.nonzero((self.dists >= 0) & (self.dists <= k))[0]

    def normally_generates(self) -> bool:
        return bool((self.dists >= 0).all())


def cache_path(cache_dir, group_key: str, class_key) -> Path:
    payload = json.dumps([CACHE_VERSION, group_key, list(class_key)])
    digest = hashlib.sha256(payload.encode()).hexdigest()[:24]
    return Path(cache_dir) / f"normtable-{digest}.cbnt"


def save_norm_table(table: NormTable, cache_dir) -> Path:
    Path(cache_dir).mkdir(parents=True, exist_ok=True)
    meta = json.dumps({
        "group": table.group_key,
        "class_key": list(table.class_key),
        "gen_set": [int(x) for x in table.gen_set],
        "n": int(len(table.dists)),
    }, sort_keys=True).encode()
    blob = (_MAGIC + struct.pack("<II", CACHE_VERSION, len(meta)) + meta
            + table.dists.astype("<i4").tobytes())
    path = cache_path(cache_dir, table.group_key, table.class_key)
    path.write_bytes(blob)
    return path


def load_norm_table(cache_dir, group_key: str, class_key):
    path = cache_path(cache_dir, group_key, class_key)
    if not path.exists():
        return None
    blob = path.read_bytes()
    if blob[:4] != _MAGIC:
        raise CacheVersionError(f"{path} is not a norm-table cache file")
    version, meta_len = struct.unpack("<II", blob[4:12])
    if version != CACHE_VERSION:
        raise CacheVersionError(
            f"{path}: format version {version}, expected {CACHE_VERSION}")
    meta = json.loads(blob[12:12 + meta_len])
    dists = np.frombuffer(blob[12 + meta_len:], dtype="<i4").astype(np.int32)
    if meta["group"] != group_key or tuple(meta["class_key"]) != tuple(class_key):
        return None
    return NormTable(group_key=meta["group"], class_key=tuple(meta["class_key"]),
                     gen_set=list(meta["gen_set"]), dists=dists)


def norm_table_cached(G, S, cache_dir=None):
    """(table, cache_hit): fetch from the cache when possible."""
    gens = conjugacy_closure(G, S)
    key = _class_multiset_key(G, gens)
    if cache_dir is not None:
        hit = load_norm_table(cache_dir, G.spec_key(), key)
        if hit is not None:
            return hit, True
    table = norm_table(G, S)
    if cache_dir is not None:
        save_norm_table(table, cache_dir)
    return table, False
