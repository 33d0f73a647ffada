import itertools
import random

import numpy as np
import pytest

from chevbound.groups import (
    SL,
    SP4,
    CapExceededError,
    DimensionMismatchError,
    GroupElem,
    central_elements,
    check_commutator_identity,
    check_weyl_conjugation,
    enumerate_group,
    expected_order,
    is_member,
    parse_group,
    reduce_mod,
    resolve_signs,
    root_matrix,
    sl2_unitriangular_decompose,
    torus_matrix,
    weyl_matrix,
)
from chevbound.rings import NotUnitError, ZMod, local_factors, make_ring
from chevbound.roots import root_system

B2 = root_system("B2")
A1 = root_system("A1")
A2 = root_system("A2")
Z6 = make_ring(ZMod(6))
Z101 = make_ring(ZMod(101))


def test_root_matrix_sp4_patterns():
    t = Z6.from_int(5)
    a, b = B2.simple_roots()
    ea = root_matrix(SP4, Z6, a, t)
    assert ea.entry(0, 1) == t and ea.entry(3, 2) == -t
    eb = root_matrix(SP4, Z6, b, t)
    assert eb.entry(1, 3) == t
    eab = root_matrix(SP4, Z6, B2.parse_root("a+b"), t)
    assert eab.entry(0, 3) == t and eab.entry(1, 2) == t
    echi = root_matrix(SP4, Z6, B2.parse_root("2a+b"), t)
    assert echi.entry(0, 2) == t
    # negative roots are the transposes
    for phi in B2.positive_roots():
        pos = root_matrix(SP4, Z6, phi, t).to_array()
        neg = root_matrix(SP4, Z6, -phi, t).to_array()
        assert (neg == pos.T).all()


def test_root_matrix_sl():
    z7 = make_ring(ZMod(7))
    t = z7.from_int(3)
    e12 = root_matrix(SL(3), z7, A2.parse_root("e1-e2"), t)
    assert e12.entry(0, 1) == t and e12.entry(2, 2) == z7.one


def test_all_root_matrices_are_members():
    for group, ring in [(SP4, Z6), (SL(3), Z6), (SL(2), make_ring(ZMod(9)))]:
        for phi in group.root_system.all_roots():
            for t in ring.elements():
                assert is_member(group, ring, root_matrix(group, ring, phi, t))


def test_is_member_rejects():
    bad = np.diag([2, 1, 1, 1])
    bad_idx = [[Z6.from_int(int(x)).index for x in row] for row in bad]
    assert not is_member(SP4, Z6, bad_idx)
    with pytest.raises(DimensionMismatchError):
        is_member(SP4, Z6, [[0, 1], [1, 0]])


def test_additivity_exhaustive_probe():
    for group in [SP4, SL(3)]:
        for phi in group.root_system.all_roots():
            s = np.repeat(np.arange(101), 101)
            t = np.tile(np.arange(101), 101)
            from chevbound.groups import mat_mul, root_matrix_batch
            lhs = root_matrix_batch(group, Z101, phi, (s + t) % 101)
            rhs = mat_mul(Z101, root_matrix_batch(group, Z101, phi, s),
                          root_matrix_batch(group, Z101, phi, t))
            assert (lhs == rhs).all()


def test_weyl_matrix_examples():
    w = weyl_matrix(SP4, Z6, B2.parse_root("b"), Z6.one)
    arr = w.to_array()
    expect = np.array([
        [1, 0, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
        [0, 5, 0, 0],  # -1 mod 6
    ])
    assert (arr == expect).all()
    w2 = weyl_matrix(SL(2), Z6, A1.positive_roots()[0], Z6.one)
    assert (w2.to_array() == np.array([[0, 1], [5, 0]])).all()
    with pytest.raises(NotUnitError):
        weyl_matrix(SP4, make_ring(ZMod(4)), B2.parse_root("b"), 2)


def test_torus_matrix_examples():
    for group, ring, phi in [(SP4, Z6, B2.parse_root("b")),
                             (SL(2), make_ring(ZMod(9)), A1.positive_roots()[0])]:
        assert torus_matrix(group, ring, phi, ring.one).is_identity()
    z9 = make_ring(ZMod(9))
    h = torus_matrix(SL(2), z9, A1.positive_roots()[0], z9.from_int(2))
    assert (h.to_array() == np.array([[2, 0], [0, 5]])).all()
    hb = torus_matrix(SP4, Z6, B2.parse_root("b"), Z6.from_int(5))
    assert (hb.to_array() == np.diag([1, 5, 1, 5])).all()


def test_reduce_mod_is_homomorphism():
    fac, proj = local_factors(Z6)[0]
    rng = random.Random(0)
    a, b = B2.simple_roots()
    x = root_matrix(SP4, Z6, a, Z6.from_int(3))
    y = root_matrix(SP4, Z6, b, Z6.from_int(5))
    assert reduce_mod(x * y, proj) == reduce_mod(x, proj) * reduce_mod(y, proj)
    assert is_member(SP4, fac, reduce_mod(x, proj))
    ident = root_matrix(SP4, Z6, a, Z6.zero)
    assert reduce_mod(ident, proj).is_identity()


def test_enumerate_small_groups():
    sl2f2 = enumerate_group(SL(2), make_ring(ZMod(2)))
    assert sl2f2.order == 6
    sl2f3 = enumerate_group(SL(2), make_ring(ZMod(3)))
    assert sl2f3.order == 24
    sp4f2 = enumerate_group(SP4, make_ring(ZMod(2)))
    assert sp4f2.order == 720
    assert expected_order(SP4, make_ring(ZMod(2))) == 720
    assert expected_order(SL(2), make_ring(ZMod(3))) == 24


def test_enumerate_cap():
    with pytest.raises(CapExceededError):
        enumerate_group(SP4, make_ring(ZMod(7)), cap=1000)


def test_matrix_group_ops():
    g = enumerate_group(SL(2), make_ring(ZMod(3)))
    rng = random.Random(1)
    for _ in range(50):
        i, j = rng.randrange(g.order), rng.randrange(g.order)
        prod = g.mult(i, j)
        assert g.elem(prod) == g.elem(i) * g.elem(j)
        assert g.mult(i, g.inv(i)) == g.identity
        k = rng.randrange(g.order)
        assert g.conj(k, i) == g.mult(g.mult(k, i), g.inv(k))
    idx = np.arange(g.order)
    assert (g.mult_many(idx, g.identity) == idx).all()
    assert (g.inv_many(g.inv_many(idx)) == idx).all()


def test_group_closure_properties():
    g = enumerate_group(SP4, make_ring(ZMod(2)))
    idx = np.arange(g.order)
    rng = random.Random(2)
    for _ in range(5):
        j = rng.randrange(g.order)
        assert set(g.mult_many(idx, j).tolist()) == set(range(g.order))


def test_central_elements_scalar():
    sp4f2 = enumerate_group(SP4, make_ring(ZMod(2)))
    cent = central_elements(sp4f2)
    assert len(cent) == 1  # only the identity: -1 = 1 in F2
    sl3f3 = enumerate_group(SL(3), make_ring(ZMod(3)))
    cent3 = central_elements(sl3f3)
    assert all(sl3f3.elem(i).is_scalar() for i in cent3)
    assert len(cent3) == 1  # no cube root of unity in F3 besides 1
    sl2f3 = enumerate_group(SL(2), make_ring(ZMod(3)))
    cent2 = central_elements(sl2f3)
    assert len(cent2) == 2  # +-I
    sl2z4 = enumerate_group(SL(2), make_ring(ZMod(4)))
    cent4 = central_elements(sl2z4)
    assert sorted(sl2z4.elem(i).entry(0, 0).value for i in cent4) == [1, 3]
    assert all(sl2z4.elem(i).is_scalar() for i in cent4)


def test_scalar_matrices_commute_with_roots():
    for ring in [Z6, make_ring(ZMod(4))]:
        for u in ring.units():
            scal = GroupElem.from_rows(
                SP4, ring,
                [[u if i == j else ring.zero for j in range(4)] for i in range(4)])
            for phi in B2.all_roots():
                e = root_matrix(SP4, ring, phi, ring.from_int(1))
                assert scal * e == e * scal


def test_resolve_signs_and_identity_checks():
    for group in [SL(3), SP4]:
        table = resolve_signs(group)
        roots = group.root_system.all_roots()
        rng = random.Random(3)
        ring = make_ring(ZMod(7))
        for alpha, beta in itertools.product(roots, roots):
            if alpha.vec == (-beta).vec:
                continue
            for _ in range(4):
                a, b = ring.sample(rng), ring.sample(rng)
                assert check_commutator_identity(group, ring, alpha, beta, a, b, table)


def test_sign_table_has_expected_entries():
    table = resolve_signs(SP4)
    a, b = B2.simple_roots()
    entries = table.pair(a, b)
    assert [(e.i, e.j, e.coeff) for e in entries] == [(1, 1, 1), (2, 1, 1)]
    assert all(e.sign in (1, -1) for e in entries)
    ab = B2.parse_root("a+b")
    (only,) = table.pair(a, ab)
    assert (only.i, only.j, only.coeff) == (1, 1, 2)


def test_commutator_identities_hold_over_other_rings():
    # the resolved signs are ring-independent
    table = resolve_signs(SP4)
    for ring in [make_ring(ZMod(4)), make_ring("Quad(-7)/2"), Z6]:
        a, b = B2.simple_roots()
        for x in ring.elements():
            for y in ring.elements():
                assert check_commutator_identity(SP4, ring, a, b, x, y, table)


def test_weyl_conjugation():
    for group in [SL(3), SL(4), SP4]:
        roots = group.root_system.all_roots()
        ring = Z101
        rng = random.Random(4)
        for phi, psi in itertools.product(roots, roots):
            for _ in range(3):
                assert check_weyl_conjugation(group, ring, phi, psi, ring.sample(rng))
    # spot example: conjugating eps_a by w_b lands on eps_{a+b} up to sign
    assert check_weyl_conjugation(SP4, Z6, B2.parse_root("b"),
                                  B2.parse_root("a"), Z6.from_int(4))


def test_sl2_decomposition_exhaustive():
    for n in [4, 5, 6, 9]:
        ring = make_ring(ZMod(n))
        g = enumerate_group(SL(2), ring)
        for i in range(g.order):
            elem = g.elem(i)
            factors = sl2_unitriangular_decompose(elem)
            assert len(factors) <= 4
            prod = GroupElem.from_rows(
                SL(2), ring, [[1, 0], [0, 1]])
            for f in factors:
                prod = prod * f
            assert prod == elem
            # factors alternate upper/lower
            kinds = ["U" if f.mat[0][1] != ring.zero.index else "L" for f in factors]
            assert all(kinds[i] != kinds[i + 1] for i in range(len(kinds) - 1))


def test_sl2_decomposition_examples():
    ident = GroupElem.from_rows(SL(2), Z6, [[1, 0], [0, 1]])
    assert sl2_unitriangular_decompose(ident) == []
    w = GroupElem.from_rows(SL(2), Z6, [[0, 1], [-1, 0]])
    factors = sl2_unitriangular_decompose(w)
    assert len(factors) == 3
    # upper(1), lower(-1), upper(1)
    assert factors[0].entry(0, 1) == Z6.one
    assert factors[1].entry(1, 0) == -Z6.one
    assert factors[2].entry(0, 1) == Z6.one


def test_parse_group():
    assert parse_group("sp4") == SP4
    assert parse_group("SL3") == SL(3)
    with pytest.raises(Exception):
        parse_group("e8")


def test_elem_serialization_roundtrip():
    e = root_matrix(SP4, make_ring("Quad(-7)/2"), B2.parse_root("a+b"), 1)
    rec = e.to_record()
    assert rec["ring"] == "Quad(-7)/2"
    assert rec["entries"][0][3] == "1"


def test_elem_record_roundtrip_parses_back():
    ring = make_ring("Quad(-7)/2")
    e = root_matrix(SP4, ring, B2.parse_root("a+b"), ring.omega)
    back = GroupElem.from_record(e.to_record())
    assert back == e
