"""Matrix realizations of SL_n(R) and Sp4(R) over finite rings.

Root, Weyl and torus elements, membership tests, reduction along ring
projections, breadth-first group enumeration, empirical resolution of the
commutator-relation signs over the probing ring Z/101, and the <=4-factor
unitriangular decomposition in SL2.

Matrices are arrays of ring element indices; hot paths (enumeration, the
relation grid) run on numpy, everything else on exact scalar index ops.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .rings import (
    FiniteRing,
    NotUnitError,
    RingElem,
    RingProjection,
    ZMod,
    ZModRing,
    make_ring,
    try_invert,
)
from .roots import InvalidRootError, Root, RootSystem, commutator_coeffs, reflect, root_system


class GroupError(Exception):
    pass


class DimensionMismatchError(GroupError):
    pass


class CapExceededError(GroupError):
    def __init__(self, estimate: int):
        super().__init__(f"group order exceeds cap (at least {estimate} elements)")
        self.estimate = estimate


class NoConsistentSignsError(GroupError):
    """No sign assignment satisfies a commutator identity: realization bug."""


# ---------------------------------------------------------------------------
# group identifiers


@dataclass(frozen=True)
class GroupId:
    kind: str   # "SL" or "SP4"
    n: int      # matrix dimension

    @property
    def root_system(self) -> RootSystem:
        if self.kind == "SP4":
            return root_system("B2")
        return root_system(f"A{self.n - 1}")

    def __str__(self):
        return "sp4" if self.kind == "SP4" else f"sl{self.n}"


def SL(n: int) -> GroupId:
    if n < 2 or n > 9:
        raise GroupError(f"SL({n}) outside the supported range 2..9")
    return GroupId("SL", n)


SP4 = GroupId("SP4", 4)


def parse_group(text: str) -> GroupId:
    text = text.strip().lower()
    if text == "sp4":
        return SP4
    if text.startswith("sl"):
        return SL(int(text[2:]))
    raise GroupError(f"unknown group {text!r}")


# ---------------------------------------------------------------------------
# vectorized ring arithmetic on index arrays


class _ZModVecOps:
    def __init__(self, n):
        self.n = n

    def add(self, a, b):
        return (a + b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def matmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        return (a @ b) % self.n


class _TableVecOps:
    def __init__(self, add, mul, neg):
        self.ADD, self.MUL, self.NEG = add, mul, neg

    def add(self, a, b):
        return self.ADD[a, b]

    def mul(self, a, b):
        return self.MUL[a, b]

    def neg(self, a):
        return self.NEG[a]

    def matmul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        p = self.MUL[a[..., :, :, None], b[..., None, :, :]]
        c = p[..., 0, :]
        for k in range(1, a.shape[-1]):
            c = self.ADD[c, p[..., k, :]]
        return c


def vec_ops(ring: FiniteRing):
    ops = getattr(ring, "_vec_ops", None)
    if ops is None:
        if isinstance(ring, ZModRing):
            ops = _ZModVecOps(ring.n)
        else:
            ops = _TableVecOps(*ring.tables())
        ring._vec_ops = ops
    return ops


def mat_mul(ring, a, b):
    return vec_ops(ring).matmul(a, b)


def identity_indices(ring: FiniteRing, d: int):
    m = np.full((d, d), ring._zero_index(), dtype=np.int64)
    np.fill_diagonal(m, ring._one_index())
    return m


# ---------------------------------------------------------------------------
# group elements


@dataclass(frozen=True)
class GroupElem:
    """Exact matrix over a finite ring, entries stored as element indices."""

    group: GroupId
    ring: FiniteRing
    mat: tuple

    @classmethod
    def from_rows(cls, group, ring, rows):
        mat = tuple(tuple(ring.coerce(x).index for x in row) for row in rows)
        return cls(group, ring, mat)

    @classmethod
    def from_array(cls, group, ring, arr):
        return cls(group, ring, tuple(tuple(int(x) for x in row) for row in arr))

    def entry(self, i, j) -> RingElem:
        return RingElem(self.ring, self.mat[i][j])

    def to_array(self):
        return np.array(self.mat, dtype=np.int64)

    def __mul__(self, other: "GroupElem") -> "GroupElem":
        if other.ring is not self.ring or other.group != self.group:
            raise GroupError("elements from different groups")
        r = self.ring
        d = self.group.n
        rows = []
        for i in range(d):
            row = []
            for j in range(d):
                acc = r._zero_index()
                for k in range(d):
                    acc = r.add_i(acc, r.mul_i(self.mat[i][k], other.mat[k][j]))
                row.append(acc)
            rows.append(tuple(row))
        return GroupElem(self.group, r, tuple(rows))

    def inverse(self) -> "GroupElem":
        if self.group.kind == "SP4":
            r = self.ring
            j = _j_matrix(r)
            at = np.array(self.mat, dtype=np.int64).T
            prod = mat_mul(r, mat_mul(r, j, at), j)
            neg = vec_ops(r).neg(prod)
            return GroupElem.from_array(self.group, r, neg)
        return GroupElem(self.group, self.ring, _adjugate(self.ring, self.mat))

    def is_identity(self) -> bool:
        r, d = self.ring, self.group.n
        one, zero = r._one_index(), r._zero_index()
        return all(self.mat[i][j] == (one if i == j else zero)
                   for i in range(d) for j in range(d))

    def is_scalar(self) -> bool:
        r, d = self.ring, self.group.n
        zero = r._zero_index()
        t = self.mat[0][0]
        return all(self.mat[i][j] == (t if i == j else zero)
                   for i in range(d) for j in range(d))

    def __repr__(self):
        rows = ["[" + " ".join(self.ring.format(x) for x in row) + "]"
                for row in self.mat]
        return f"{self.group}({self.ring.spec_str()})" + "".join(rows)

    def to_record(self) -> dict:
        return {
            "group": str(self.group),
            "ring": self.ring.spec_str(),
            "entries": [[self.ring.format(x) for x in row] for row in self.mat],
        }

    @classmethod
    def from_record(cls, record: dict) -> "GroupElem":
        from .rings import parse_elem

        group = parse_group(record["group"])
        ring = make_ring(record["ring"])
        return cls.from_rows(group, ring,
                             [[parse_elem(ring, cell) for cell in row]
                              for row in record["entries"]])


def _det(ring: FiniteRing, mat) -> int:
    """Determinant over any finite commutative ring, by column-subset DP."""
    n = len(mat)
    zero, one = ring._zero_index(), ring._one_index()
    f = [zero] * (1 << n)
    f[0] = one
    for mask in range(1 << n):
        val = f[mask]
        if val == zero:
            continue
        k = bin(mask).count("1")
        if k == n:
            continue
        for c in range(n):
            if mask & (1 << c):
                continue
            term = ring.mul_i(mat[k][c], val)
            if bin(mask >> (c + 1)).count("1") & 1:
                term = ring.neg_i(term)
            nm = mask | (1 << c)
            f[nm] = ring.add_i(f[nm], term)
    return f[(1 << n) - 1]


def _adjugate(ring: FiniteRing, mat):
    n = len(mat)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [[mat[r][c] for c in range(n) if c != i]
                     for r in range(n) if r != j]
            cof = _det(ring, minor) if minor else ring._one_index()
            if (i + j) & 1:
                cof = ring.neg_i(cof)
            row.append(cof)
        out.append(tuple(row))
    return tuple(out)


def _j_matrix(ring: FiniteRing):
    """The Sp4 form: J = [[0,I2],[-I2,0]] as an index matrix."""
    zero, one = ring._zero_index(), ring._one_index()
    neg_one = ring.neg_i(one)
    j = np.full((4, 4), zero, dtype=np.int64)
    j[0, 2] = one
    j[1, 3] = one
    j[2, 0] = neg_one
    j[3, 1] = neg_one
    return j


# ---------------------------------------------------------------------------
# root, Weyl and torus matrices

_SP4_POSITIVE_POSITIONS = {
    (1, 0): ((0, 1, 1), (3, 2, -1)),   # eps_a(t)   = I + t(e12 - e43)
    (0, 1): ((1, 3, 1),),              # eps_b(t)   = I + t e24
    (1, 1): ((0, 3, 1), (1, 2, 1)),    # eps_a+b(t) = I + t(e14 + e23)
    (2, 1): ((0, 2, 1),),              # eps_2a+b(t)= I + t e13
}


def root_positions(group: GroupId, phi: Root):
    """Off-diagonal positions (row, col, sign) filled by eps_phi(t)."""
    if phi.system is not group.root_system:
        raise InvalidRootError(f"{phi} is not a root of {group}")
    if group.kind == "SL":
        p = phi.vec.index(1)
        q = phi.vec.index(-1)
        return ((p, q, 1),)
    if phi.is_positive():
        return _SP4_POSITIVE_POSITIONS[phi.vec]
    return tuple((c, r, s) for r, c, s in _SP4_POSITIVE_POSITIONS[(-phi).vec])


def root_matrix(group: GroupId, ring: FiniteRing, phi: Root, t) -> GroupElem:
    """The root element eps_phi(t)."""
    t = ring.coerce(t)
    mat = identity_indices(ring, group.n)
    neg_t = ring.neg_i(t.index)
    for r, c, s in root_positions(group, phi):
        mat[r, c] = t.index if s > 0 else neg_t
    return GroupElem.from_array(group, ring, mat)


def root_matrix_batch(group: GroupId, ring: FiniteRing, phi: Root, idx):
    """Stacked eps_phi(t) for an array of element indices t."""
    idx = np.asarray(idx, dtype=np.int64)
    mats = np.broadcast_to(identity_indices(ring, group.n),
                           (len(idx), group.n, group.n)).copy()
    neg = vec_ops(ring).neg(idx)
    for r, c, s in root_positions(group, phi):
        mats[:, r, c] = idx if s > 0 else neg
    return mats


def is_member(group: GroupId, ring: FiniteRing, mat) -> bool:
    """Exact membership: det = 1 for SL, A^T J A = J for Sp4."""
    if isinstance(mat, GroupElem):
        mat = mat.mat
    arr = np.asarray(mat)
    if arr.ndim != 2 or arr.shape != (group.n, group.n):
        raise DimensionMismatchError(
            f"expected a {group.n}x{group.n} matrix, got shape {arr.shape}")
    mat = tuple(tuple(int(x) for x in row) for row in arr)
    if group.kind == "SL":
        return _det(ring, mat) == ring._one_index()
    a = np.array(mat, dtype=np.int64)
    j = _j_matrix(ring)
    lhs = mat_mul(ring, mat_mul(ring, a.T, j), a)
    return bool((lhs == j).all())


def weyl_matrix(group: GroupId, ring: FiniteRing, phi: Root, t) -> GroupElem:
    """w_phi(t) = eps_phi(t) eps_{-phi}(-t^{-1}) eps_phi(t); t must be a unit."""
    t = ring.coerce(t)
    t_inv = try_invert(t)
    if t_inv is None:
        raise NotUnitError(f"{t} is not a unit in {ring.spec_str()}")
    outer = root_matrix(group, ring, phi, t)
    return outer * root_matrix(group, ring, -phi, -t_inv) * outer


def torus_matrix(group: GroupId, ring: FiniteRing, phi: Root, t) -> GroupElem:
    """h_phi(t) = w_phi(t) w_phi(1)^{-1}."""
    return weyl_matrix(group, ring, phi, t) * weyl_matrix(group, ring, phi, ring.one).inverse()


def reduce_mod(elem: GroupElem, proj: RingProjection) -> GroupElem:
    """Entry-wise image of a group element along a ring projection."""
    if proj.src is not elem.ring:
        raise GroupError("projection domain does not match the element's ring")
    arr = proj.apply_indices(elem.to_array())
    return GroupElem.from_array(elem.group, proj.dst, arr)


# ---------------------------------------------------------------------------
# group enumeration


def _key_params(ring: FiniteRing, d: int):
    s = ring.size
    if s ** (d * d) < 2 ** 63:
        return "u64", None
    return "bytes", None


def _encode_u64(mats, size: int):
    flat = np.ascontiguousarray(mats, dtype=np.uint64).reshape(len(mats), -1)
    keys = np.zeros(len(mats), dtype=np.uint64)
    s = np.uint64(size)
    for col in range(flat.shape[1]):
        keys = keys * s + flat[:, col]
    return keys


class MatrixGroup:
    """An enumerated matrix group: element table plus vectorized index ops.

    Element 0 is the identity; elements are listed level by level in the
    breadth-first closure, key-sorted within each level, so the ordering is
    canonical for a fixed generator list.
    """

    def __init__(self, group_id: GroupId, ring: FiniteRing, mats, gen_info):
        self.group_id = group_id
        self.ring = ring
        self.mats = mats
        self.keys = _encode_u64(mats, ring.size)
        self._order = np.argsort(self.keys, kind="stable")
        self._skeys = self.keys[self._order]
        self.generator_info = gen_info       # list of (Root, RingElem)
        self.generators = [
            self.index_of(root_matrix(group_id, ring, phi, t))
            for phi, t in gen_info
        ]

    # -- bookkeeping ----------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.mats)

    identity = 0

    def spec_key(self) -> str:
        return f"{self.group_id}|{self.ring.spec_str()}"

    def elem(self, i: int) -> GroupElem:
        return GroupElem.from_array(self.group_id, self.ring, self.mats[int(i)])

    def elems(self, indices):
        return [self.elem(i) for i in indices]

    def index_of_array(self, arr):
        arr = np.asarray(arr)
        single = arr.ndim == 2
        if single:
            arr = arr[None]
        keys = _encode_u64(arr, self.ring.size)
        pos = np.searchsorted(self._skeys, keys)
        pos = np.clip(pos, 0, len(self._skeys) - 1)
        if not (self._skeys[pos] == keys).all():
            raise KeyError("matrix is not an element of the enumerated group")
        idx = self._order[pos]
        return int(idx[0]) if single else idx.astype(np.int64)

    def index_of(self, elem) -> int:
        if isinstance(elem, GroupElem):
            elem = elem.to_array()
        return self.index_of_array(elem)

    def contains_mat(self, arr) -> bool:
        try:
            self.index_of_array(arr)
            return True
        except KeyError:
            return False

    # -- vectorized group operations -------------------------------------------

    def mult(self, i: int, j: int) -> int:
        prod = mat_mul(self.ring, self.mats[int(i)], self.mats[int(j)])
        return self.index_of_array(prod)

    def mult_many(self, idx, j: int):
        idx = np.asarray(idx, dtype=np.int64)
        prod = mat_mul(self.ring, self.mats[idx], self.mats[int(j)])
        return self.index_of_array(prod)

    def lmult_many(self, i: int, idx):
        idx = np.asarray(idx, dtype=np.int64)
        prod = mat_mul(self.ring, self.mats[int(i)], self.mats[idx])
        return self.index_of_array(prod)

    def inv_mats(self, idx):
        idx = np.asarray(idx, dtype=np.int64)
        a = self.mats[idx].astype(np.int64)
        r = self.ring
        v = vec_ops(r)
        if self.group_id.kind == "SP4":
            j = _j_matrix(r)
            return v.neg(mat_mul(r, mat_mul(r, j, a.transpose(0, 2, 1)), j))
        if self.group_id.n == 2:
            out = np.empty_like(a)
            out[:, 0, 0] = a[:, 1, 1]
            out[:, 1, 1] = a[:, 0, 0]
            out[:, 0, 1] = v.neg(a[:, 0, 1])
            out[:, 1, 0] = v.neg(a[:, 1, 0])
            return out
        if self.group_id.n == 3:
            out = np.empty_like(a)
            for i in range(3):
                for j in range(3):
                    r1, r2 = [x for x in range(3) if x != j]
                    c1, c2 = [x for x in range(3) if x != i]
                    cof = v.add(v.mul(a[:, r1, c1], a[:, r2, c2]),
                                v.neg(v.mul(a[:, r1, c2], a[:, r2, c1])))
                    out[:, i, j] = v.neg(cof) if (i + j) & 1 else cof
            return out
        stacked = [np.array(_adjugate(r, tuple(map(tuple, m))), dtype=np.int64)
                   for m in a]
        return np.stack(stacked)

    def inv_many(self, idx):
        return self.index_of_array(self.inv_mats(idx))

    def inv(self, i: int) -> int:
        return int(self.inv_many(np.array([i]))[0])

    def conj_many(self, g: int, idx):
        """g x g^{-1} for each x in idx."""
        idx = np.asarray(idx, dtype=np.int64)
        r = self.ring
        left = mat_mul(r, self.mats[int(g)], self.mats[idx])
        ginv = self.inv_mats(np.array([g]))[0]
        return self.index_of_array(mat_mul(r, left, ginv))

    def conj(self, g: int, x: int) -> int:
        return int(self.conj_many(g, np.array([x]))[0])

    def root_element_index(self, phi: Root, t) -> int:
        return self.index_of(root_matrix(self.group_id, self.ring, phi, t))


_BFS_CHUNK = 1 << 16


def expected_order(group: GroupId, ring: FiniteRing):
    """Closed-form order where available: product over local factors of
    |G(F_q)| * (|L|/q)^dim.  Returns None when a factor is not a clean
    power of its residue field size."""
    from .rings import local_factors, residue_field_size

    n = group.n
    dim = 10 if group.kind == "SP4" else n * n - 1
    total = 1
    for fac, _ in local_factors(ring):
        q = residue_field_size(fac)
        size = fac.size
        k = 0
        while size > 1 and size % q == 0:
            size //= q
            k += 1
        if size != 1:
            return None
        if group.kind == "SP4":
            base = q ** 4 * (q ** 2 - 1) * (q ** 4 - 1)
        else:
            base = q ** (n * (n - 1) // 2)
            for i in range(2, n + 1):
                base *= q ** i - 1
        total *= base * q ** ((k - 1) * dim)
    return total


def enumerate_group(group: GroupId, ring: FiniteRing, cap: int = 2_000_000) -> MatrixGroup:
    """Breadth-first closure of the root elements under multiplication.

    For finite rings this is the full group of the realization: finite rings
    are semilocal, where the rank >= 2 groups are generated by root elements,
    and SL2 is covered by stable range 1.  Successful enumerations are cached
    on the ring handle.
    """
    cache = getattr(ring, "_enum_groups", None)
    if cache is None:
        cache = {}
        ring._enum_groups = cache
    if group in cache and cache[group].order <= cap:
        return cache[group]
    d = group.n
    if ring.size ** (d * d) >= 2 ** 63:
        raise CapExceededError(ring.size ** (d * d))
    est = expected_order(group, ring)
    if est is not None and est > cap:
        raise CapExceededError(est)
    gen_info = []
    gen_mats = []
    seen = set()
    for phi in group.root_system.all_roots():
        for t in ring.additive_generators():
            m = root_matrix(group, ring, phi, t)
            key = m.mat
            if key not in seen:
                seen.add(key)
                gen_info.append((phi, t))
                gen_mats.append(m.to_array())

    ident = identity_indices(ring, d)[None]
    known = _encode_u64(ident, ring.size)
    levels = [ident]
    frontier = ident
    total = 1
    while len(frontier):
        cand_keys = []
        cand_mats = []
        for start in range(0, len(frontier), _BFS_CHUNK):
            chunk = frontier[start:start + _BFS_CHUNK]
            for gm in gen_mats:
                prod = mat_mul(ring, chunk, gm)
                keys = _encode_u64(prod, ring.size)
                fresh = ~np.isin(keys, known)
                if fresh.any():
                    cand_keys.append(keys[fresh])
                    cand_mats.append(prod[fresh])
        if not cand_keys:
            break
        keys = np.concatenate(cand_keys)
        mats = np.concatenate(cand_mats)
        uniq, first = np.unique(keys, return_index=True)
        new_mats = mats[first]
        total += len(uniq)
        if total > cap:
            raise CapExceededError(total)
        levels.append(new_mats)
        known = np.sort(np.concatenate([known, uniq]))
        frontier = new_mats
    all_mats = np.concatenate(levels).astype(
        np.uint8 if ring.size <= 256 else np.int32)
    result = MatrixGroup(group, ring, all_mats, gen_info)
    cache[group] = result
    return result


def central_elements(g: MatrixGroup):
    """Indices of elements commuting with every generator."""
    idx = np.arange(g.order, dtype=np.int64)
    mask = np.ones(g.order, dtype=bool)
    for gen in g.generators:
        mask &= g.mult_many(idx, gen) == g.lmult_many(gen, idx)
    return idx[mask]


# ---------------------------------------------------------------------------
# commutator relations: sign resolution and checks


@dataclass(frozen=True)
class SignEntry:
    i: int
    j: int
    root: Root
    coeff: int
    sign: int


class SignTable:
    """Resolved signs for (eps_beta(b), eps_alpha(a)) = prod eps(s c a^i b^j),
    one entry list per ordered root pair, in canonical product order."""

    version = 1

    def __init__(self, group: GroupId, probe_modulus: int):
        self.group = group
        self.probe_modulus = probe_modulus
        self.entries: dict = {}

    def pair(self, alpha: Root, beta: Root):
        return self.entries[(alpha.vec, beta.vec)]


_PROBE_MODULUS = 101  # exceeds every coefficient degree in the identities
_sign_tables: dict = {}


def _commutator_batch(group, ring, alpha, beta, a_idx, b_idx):
    v = vec_ops(ring)
    ea = root_matrix_batch(group, ring, alpha, a_idx)
    eb = root_matrix_batch(group, ring, beta, b_idx)
    ea_inv = root_matrix_batch(group, ring, alpha, v.neg(a_idx))
    eb_inv = root_matrix_batch(group, ring, beta, v.neg(b_idx))
    return mat_mul(ring, mat_mul(ring, mat_mul(ring, eb, ea), eb_inv), ea_inv)


def resolve_signs(group: GroupId, probe_modulus: int = _PROBE_MODULUS) -> SignTable:
    """Resolve every pair's signs over Z/probe by exhausting the full grid.

    The probe modulus exceeds the degree of each argument polynomial, so
    agreement on the whole grid pins the identity, not just sample points.
    """
    cache_key = (group, probe_modulus)
    if cache_key in _sign_tables:
        return _sign_tables[cache_key]
    ring = make_ring(ZMod(probe_modulus))
    n = probe_modulus
    a_idx = np.repeat(np.arange(n, dtype=np.int64), n)
    b_idx = np.tile(np.arange(n, dtype=np.int64), n)
    ident = identity_indices(ring, group.n)[None]
    table = SignTable(group, probe_modulus)
    roots = group.root_system.all_roots()
    for alpha, beta in itertools.product(roots, roots):
        if alpha.vec == (-beta).vec:
            continue
        lhs = _commutator_batch(group, ring, alpha, beta, a_idx, b_idx)
        terms = commutator_coeffs(alpha, beta)
        if not terms:
            if not (lhs == ident).all():
                raise NoConsistentSignsError(
                    f"({beta},{alpha}): commutator is not trivial")
            table.entries[(alpha.vec, beta.vec)] = ()
            continue
        args = []
        for i, j, r, c in terms:
            arg = (pow(a_idx, i) * pow(b_idx, j) * c) % n
            args.append((r, arg))
        found = None
        for signs in itertools.product((1, -1), repeat=len(terms)):
            rhs = None
            for (r, arg), s in zip(args, signs):
                cur = arg if s > 0 else (n - arg) % n
                m = root_matrix_batch(group, ring, r, cur)
                rhs = m if rhs is None else mat_mul(ring, rhs, m)
            if (lhs == rhs).all():
                found = signs
                break
        if found is None:
            raise NoConsistentSignsError(f"pair ({alpha}, {beta})")
        table.entries[(alpha.vec, beta.vec)] = tuple(
            SignEntry(i, j, r, c, s)
            for (i, j, r, c), s in zip(terms, found))
    _sign_tables[cache_key] = table
    return table


def check_commutator_identity(group: GroupId, ring: FiniteRing, alpha: Root,
                              beta: Root, a, b, table: SignTable) -> bool:
    """Exact check of one commutator identity at one point (a, b)."""
    a = ring.coerce(a)
    b = ring.coerce(b)
    ea = root_matrix(group, ring, alpha, a)
    eb = root_matrix(group, ring, beta, b)
    lhs = eb * ea * root_matrix(group, ring, beta, -b) * root_matrix(group, ring, alpha, -a)
    rhs = None
    for e in table.pair(alpha, beta):
        arg = (a ** e.i) * (b ** e.j) * ring.from_int(e.coeff * e.sign)
        m = root_matrix(group, ring, e.root, arg)
        rhs = m if rhs is None else rhs * m
    if rhs is None:
        return lhs.is_identity()
    return lhs == rhs


_weyl_signs: dict = {}


def _weyl_sign(group: GroupId, phi: Root, psi: Root) -> int:
    """Global sign for w_phi eps_psi(x) w_phi^{-1} = eps_{w_phi(psi)}(+-x),
    pinned over the probe ring."""
    key = (group, phi.vec, psi.vec)
    if key in _weyl_signs:
        return _weyl_signs[key]
    ring = make_ring(ZMod(_PROBE_MODULUS))
    w = weyl_matrix(group, ring, phi, ring.one)
    w_inv = w.inverse()
    image = reflect(psi, phi)
    conj = w * root_matrix(group, ring, psi, ring.one) * w_inv
    for sign in (1, -1):
        if conj == root_matrix(group, ring, image, ring.from_int(sign)):
            _weyl_signs[key] = sign
            return sign
    raise NoConsistentSignsError(f"Weyl conjugation of {psi} by w_{phi}")


def check_weyl_conjugation(group: GroupId, ring: FiniteRing, phi: Root,
                           psi: Root, x) -> bool:
    """w_phi(1) eps_psi(x) w_phi(1)^{-1} = eps_{w_phi(psi)}(+-x), with the
    pair's globally consistent sign."""
    x = ring.coerce(x)
    sign = _weyl_sign(group, phi, psi)
    w = weyl_matrix(group, ring, phi, ring.one)
    conj = w * root_matrix(group, ring, psi, x) * w.inverse()
    expected = root_matrix(group, ring, reflect(psi, phi),
                           x if sign > 0 else -x)
    return conj == expected


# ---------------------------------------------------------------------------
# SL2 unitriangular decomposition


def _upper(ring, t):
    return root_matrix(SL(2), ring, root_system("A1").positive_roots()[0], t)


def _lower(ring, t):
    return root_matrix(SL(2), ring, -root_system("A1").positive_roots()[0], t)


def sl2_unitriangular_decompose(elem: GroupElem):
    """Write an SL2 element as <= 4 alternating unitriangular factors.

    Finite rings are semilocal, so have stable range 1: some w makes
    c + d w a unit, after which the element is upper * lower * upper times
    one correcting lower factor.
    """
    if elem.group != SL(2):
        raise GroupError("decomposition is defined on SL(2) elements")
    ring = elem.ring
    a, b = elem.entry(0, 0), elem.entry(0, 1)
    c, d = elem.entry(1, 0), elem.entry(1, 1)
    factors = []  # list of ("U"/"L", RingElem)
    c_inv = try_invert(c)
    if c_inv is None:
        w = None
        for cand in ring.elements():
            if (c + d * cand).is_unit():
                w = cand
                break
        if w is None:
            raise GroupError(f"no stable-range witness for {elem!r}")
        a, c = a + b * w, c + d * w
        c_inv = try_invert(c)
        factors_tail = [("L", -w)]
    else:
        factors_tail = []
    x = (a - ring.one) * c_inv
    z = (d - ring.one) * c_inv
    factors = [("U", x), ("L", c), ("U", z)] + factors_tail
    # drop trivial factors, merging same-type neighbours that dropping exposes
    merged = []
    for kind, t in factors:
        if t == ring.zero:
            continue
        if merged and merged[-1][0] == kind:
            s = merged[-1][1] + t
            merged.pop()
            if s != ring.zero:
                merged.append((kind, s))
        else:
            merged.append((kind, t))
    out = [_upper(ring, t) if kind == "U" else _lower(ring, t)
           for kind, t in merged]
    if not out and not elem.is_identity():  # pragma: no cover
        raise GroupError("decomposition collapsed unexpectedly")
    return out
