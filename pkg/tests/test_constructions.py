import random

import pytest

from chevbound.constructions import (
    F2REpimorphism,
    HypothesisViolatedError,
    KTooSmallError,
    NoF2FactorsError,
    NotCoprimeError,
    WrongGroupError,
    abelianization_dim,
    check_unit_normal_generation,
    congruence_subgroup,
    f2r_epimorphism,
    generation_criteria_check,
    lower_bound_set_higher_rank,
    lower_bound_set_rank2,
    sp4_sign_epimorphism,
    split_data,
)
from chevbound.groups import SL, SP4, enumerate_group, reduce_mod, root_matrix
from chevbound.levels import pi_lower_bound_certificate, pi_set
from chevbound.norms import ProductGroup, symmetric_group
from chevbound.rings import SplitKind, ZMod, make_ring, quotient_ring, ideal_from_generators
from chevbound.roots import root_system

B2 = root_system("B2")
A2 = root_system("A2")
Z6 = make_ring(ZMod(6))
ALPHA = B2.parse_root("a")


@pytest.fixture(scope="module")
def sp4_f2():
    return enumerate_group(SP4, make_ring("Z/2"))


def test_split_data():
    d = split_data(-7)
    assert d.kind == SplitKind.SPLIT and d.r == 2
    assert d.residue_degrees == (1, 1)
    assert split_data(5).residue_degrees == (2,)
    assert split_data(-5).r == 1


def test_lower_bound_higher_rank_z6():
    phi = A2.parse_root("e1-e2")
    lbs = lower_bound_set_higher_rank(SL(3), phi,
                                      [Z6.from_int(2), Z6.from_int(3)], Z6)
    assert [Z6.format(a.index) for a in lbs.arguments] == ["3", "2"]
    assert lbs.claimed_bound == 2
    assert pi_set(lbs.generators) == set()
    target = root_matrix(SL(3), Z6, phi, Z6.one)
    assert pi_lower_bound_certificate(lbs.generators, target, lbs.primes) == 2


def test_lower_bound_higher_rank_k1_and_k3():
    phi = A2.parse_root("e1-e2")
    z5 = make_ring(ZMod(5))
    single = lower_bound_set_higher_rank(SL(3), phi, [z5.zero], z5)
    assert [str(a) for a in single.arguments] == ["1"]  # empty product
    assert single.claimed_bound == 1
    z30 = make_ring(ZMod(30))
    lbs = lower_bound_set_higher_rank(
        SL(3), phi, [z30.from_int(t) for t in (2, 3, 5)], z30)
    assert [z30.format(a.index) for a in lbs.arguments] == ["15", "10", "6"]
    assert lbs.claimed_bound == 3


def test_lower_bound_higher_rank_not_coprime():
    phi = A2.parse_root("e1-e2")
    z12 = make_ring(ZMod(12))
    with pytest.raises(NotCoprimeError):
        lower_bound_set_higher_rank(
            SL(3), phi, [z12.from_int(2), z12.from_int(2)], z12)


def test_lower_bound_rank2_z_shadow():
    # r = 1 (the prime 2), one extra prime 3, over the Z/6 shadow
    lbs = lower_bound_set_rank2(Z6, [Z6.from_int(2)], [Z6.from_int(3)])
    assert [Z6.format(a.index) for a in lbs.arguments] == ["3", "2"]
    assert lbs.claimed_bound == 2


def test_lower_bound_rank2_split_case():
    ring = make_ring("Quad(-7)/2")
    w = ring.omega
    x1, x2 = w, ring.one + w  # the two idempotent prime generators over 2
    lbs = lower_bound_set_rank2(ring, [x1, x2], [], split=split_data(-7))
    assert lbs.claimed_bound == 2
    assert [str(a) for a in lbs.arguments] == [str(x2), str(x1)]
    assert pi_set(lbs.generators) == set()


def test_lower_bound_rank2_k_too_small():
    ring = make_ring("Quad(-7)/2")
    with pytest.raises(KTooSmallError):
        lower_bound_set_rank2(ring, [ring.omega, ring.one + ring.omega], [], k=1)


def test_sign_epimorphism(sp4_f2):
    ring = sp4_f2.ring
    for phi in B2.all_roots():
        assert sp4_sign_epimorphism(
            sp4_f2, root_matrix(SP4, ring, phi, ring.one)) == 1
    assert sp4_sign_epimorphism(sp4_f2, sp4_f2.identity) == 0
    a, b = B2.simple_roots()
    prod = root_matrix(SP4, ring, a, ring.one) * root_matrix(SP4, ring, b, ring.one)
    assert sp4_sign_epimorphism(sp4_f2, prod) == 0
    # kernel size 360, and the map is a homomorphism
    kernel = sum(1 for i in range(sp4_f2.order)
                 if sp4_sign_epimorphism(sp4_f2, i) == 0)
    assert kernel == 360
    rng = random.Random(0)
    for _ in range(200):
        i, j = rng.randrange(720), rng.randrange(720)
        assert (sp4_sign_epimorphism(sp4_f2, sp4_f2.mult(i, j))
                == sp4_sign_epimorphism(sp4_f2, i) ^ sp4_sign_epimorphism(sp4_f2, j))


def test_sign_epimorphism_wrong_group():
    sl2 = enumerate_group(SL(2), make_ring("Z/2"))
    with pytest.raises(WrongGroupError):
        sp4_sign_epimorphism(sl2, 0)


def test_f2r_epimorphism_quad():
    ring = make_ring("Quad(-7)/2")
    epi = f2r_epimorphism(ring)
    assert epi.r == 2
    e1 = root_matrix(SP4, ring, ALPHA, ring.one)
    assert epi(e1) == (1, 1)
    ew = root_matrix(SP4, ring, ALPHA, ring.omega)
    assert sorted(epi(ew)) == [0, 1]
    ident = root_matrix(SP4, ring, ALPHA, ring.zero)
    assert epi(ident) == (0, 0)


def test_f2r_epimorphism_is_homomorphism():
    ring = make_ring("Quad(-7)/2")
    epi = f2r_epimorphism(ring)
    rng = random.Random(1)
    roots = B2.all_roots()
    for _ in range(100):
        x = root_matrix(SP4, ring, rng.choice(roots), ring.sample(rng))
        y = root_matrix(SP4, ring, rng.choice(roots), ring.sample(rng))
        fx, fy, fxy = epi(x), epi(y), epi(x * y)
        assert fxy == tuple(a ^ b for a, b in zip(fx, fy))


def test_f2r_no_factors():
    with pytest.raises(NoF2FactorsError):
        F2REpimorphism(make_ring("Z/3"))
    with pytest.raises(NoF2FactorsError):
        F2REpimorphism(make_ring("Quad(5)/2"))  # F4 residue field


def test_abelianization_dims(sp4_f2):
    assert abelianization_dim(sp4_f2) == 1
    prod = ProductGroup(sp4_f2, sp4_f2)
    assert abelianization_dim(prod) == 2
    s6 = symmetric_group(6)
    assert abelianization_dim(s6) == 1


def test_unit_normal_generation_small(sp4_f2):
    assert check_unit_normal_generation(sp4_f2.ring, sp4_f2.ring.one,
                                        group=sp4_f2)
    z4 = make_ring(ZMod(4))
    g4 = enumerate_group(SP4, z4)
    for u in z4.units():
        assert check_unit_normal_generation(z4, u, group=g4)
    with pytest.raises(HypothesisViolatedError):
        check_unit_normal_generation(make_ring("Quad(-7)/2"), 1)


def test_congruence_subgroup_is_reduction_kernel():
    # over Z/4 the closure of all eps_phi(2a) equals the kernel of the
    # reduction Sp4(Z/4) -> Sp4(Z/2)
    z4 = make_ring(ZMod(4))
    g4 = enumerate_group(SP4, z4)
    n = congruence_subgroup(g4)
    two_ideal = ideal_from_generators(z4, [z4.from_int(2)])
    _, proj = quotient_ring(z4, two_ideal)
    kernel = [i for i in range(g4.order)
              if reduce_mod(g4.elem(i), proj).is_identity()]
    assert sorted(n.tolist()) == kernel
    # over Quad(-7)/2 the ideal 2R is zero, so N is trivial
    qq = make_ring("Quad(-7)/2")
    gq = enumerate_group(SP4, qq)
    nq = congruence_subgroup(gq)
    assert len(nq) == 1


def test_generation_criteria_f3():
    z3 = make_ring(ZMod(3))
    g3 = enumerate_group(SP4, z3)
    v = generation_criteria_check(z3, [root_matrix(SP4, z3, ALPHA, z3.one)],
                                  group=g3)
    assert v.pi_empty and v.quotient_generates and v.actually_generates
    assert v.consistent


def test_generation_criteria_identity(sp4_f2):
    ring = sp4_f2.ring
    ident = root_matrix(SP4, ring, ALPHA, ring.zero)
    v = generation_criteria_check(ring, [ident], group=sp4_f2)
    assert not v.pi_empty and not v.actually_generates
    assert v.consistent


def test_generation_criteria_z4():
    z4 = make_ring(ZMod(4))
    g4 = enumerate_group(SP4, z4)
    v = generation_criteria_check(z4, [root_matrix(SP4, z4, ALPHA, z4.one)],
                                  group=g4)
    assert v.pi_empty and v.quotient_generates and v.actually_generates
    # a non-generating singleton: eps_a(2) has level ideal (2)
    v2 = generation_criteria_check(z4, [root_matrix(SP4, z4, ALPHA, z4.from_int(2))],
                                   group=g4)
    assert not v2.pi_empty and not v2.actually_generates and v2.consistent
