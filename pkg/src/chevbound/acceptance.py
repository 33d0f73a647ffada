"""Runnable acceptance checks: each criterion of the verification suite as a
library call emitting structured records, so the CLI can replay any of them
in one invocation (`chevbound accept --criterion N`).

The pytest acceptance module keeps its own independent implementations of
the same checks (including a separate brute-force ball oracle); this module
exists so the checks are scriptable outside pytest."""

from __future__ import annotations

import itertools
import random

import numpy as np

from .constructions import (
    abelianization_dim,
    check_unit_normal_generation,
    f2r_epimorphism,
    generation_criteria_check,
    lower_bound_set_higher_rank,
    sp4_sign_epimorphism,
)
from .groups import (
    SL,
    SP4,
    GroupElem,
    enumerate_group,
    mat_mul,
    resolve_signs,
    root_matrix,
    root_matrix_batch,
    sl2_unitriangular_decompose,
    weyl_matrix,
)
from .levels import levels_sum_is_full, pi_lower_bound_certificate, pi_set
from .norms import (
    NEG_INFINITY,
    ProductGroup,
    ball,
    conjugacy_classes,
    delta_k_exact,
    normal_closure,
    symmetric_group,
)
from .rings import local_factors, make_ring, residue_field_size, split_two_quadratic
from .roots import reflect, root_system

B2 = root_system("B2")
A2 = root_system("A2")


def _criterion_1(emit):
    """Commutator, additivity and Weyl identities on the (Z/101)^2 grid."""
    ring = make_ring("Z/101")
    n = 101
    a_idx = np.repeat(np.arange(n, dtype=np.int64), n)
    b_idx = np.tile(np.arange(n, dtype=np.int64), n)
    ok = True
    for group in [SL(3), SP4]:
        table = resolve_signs(group)
        roots = group.root_system.all_roots()
        ident = np.eye(group.n, dtype=np.int64)[None]
        pairs = 0
        for alpha, beta in itertools.product(roots, roots):
            if alpha.vec == (-beta).vec:
                continue
            ea = root_matrix_batch(group, ring, alpha, a_idx)
            eb = root_matrix_batch(group, ring, beta, b_idx)
            ea_i = root_matrix_batch(group, ring, alpha, (-a_idx) % n)
            eb_i = root_matrix_batch(group, ring, beta, (-b_idx) % n)
            lhs = mat_mul(ring, mat_mul(ring, mat_mul(ring, eb, ea), eb_i), ea_i)
            rhs = None
            for e in table.pair(alpha, beta):
                arg = (e.sign * e.coeff * pow(a_idx, e.i) * pow(b_idx, e.j)) % n
                m = root_matrix_batch(group, ring, e.root, arg)
                rhs = m if rhs is None else mat_mul(ring, rhs, m)
            good = bool((lhs == (ident if rhs is None else rhs)).all())
            ok &= good
            pairs += 1
        add_ok = True
        for phi in roots:
            lhs = root_matrix_batch(group, ring, phi, (a_idx + b_idx) % n)
            rhs = mat_mul(ring, root_matrix_batch(group, ring, phi, a_idx),
                          root_matrix_batch(group, ring, phi, b_idx))
            add_ok &= bool((lhs == rhs).all())
        weyl_ok = True
        xs = np.arange(n, dtype=np.int64)
        for phi, psi in itertools.product(roots, roots):
            w = weyl_matrix(group, ring, phi, ring.one)
            conj = mat_mul(ring, mat_mul(ring, w.to_array()[None],
                                         root_matrix_batch(group, ring, psi, xs)),
                           w.inverse().to_array()[None])
            image = reflect(psi, phi)
            plus = root_matrix_batch(group, ring, image, xs)
            minus = root_matrix_batch(group, ring, image, (-xs) % n)
            weyl_ok &= bool((conj == plus).all() or (conj == minus).all())
        ok &= add_ok and weyl_ok
        emit({"group": str(group), "pairs": pairs, "additivity": add_ok,
              "weyl": weyl_ok, "ok": ok})
    return ok


def _criterion_2(emit):
    """Exact enumerated group orders."""
    expected = [("sp4", "Z/2", 720), ("sp4", "Z/3", 51840),
                ("sp4", "Z/4", 737280), ("sl2", "Z/3", 24)]
    ok = True
    for gname, rname, order in expected:
        group = SP4 if gname == "sp4" else SL(2)
        got = enumerate_group(group, make_ring(rname)).order
        ok &= got == order
        emit({"group": gname, "ring": rname, "order": got,
              "expected": order, "ok": got == order})
    return ok


def _criterion_3(emit):
    """Sign epimorphism values, kernel size, abelianization dimensions."""
    g = enumerate_group(SP4, make_ring("Z/2"))
    ring = g.ring
    roots_ok = all(sp4_sign_epimorphism(g, root_matrix(SP4, ring, phi, ring.one)) == 1
                   for phi in B2.all_roots())
    kernel = sum(1 for i in range(g.order) if sp4_sign_epimorphism(g, i) == 0)
    dims = (abelianization_dim(g),
            abelianization_dim(ProductGroup(g, g)),
            abelianization_dim(enumerate_group(SP4, make_ring("Z/3"))))
    ok = roots_ok and kernel == 360 and dims == (1, 2, 0)
    emit({"roots_map_to_1": roots_ok, "kernel": kernel,
          "abelianization_dims": list(dims), "ok": ok})
    return ok


def _criterion_4(emit):
    """Units normally generate Sp4 over F2, F3, Z/4, F4."""
    ok = True
    for spec in ["Z/2", "Z/3", "Z/4", "Quad(5)/2"]:
        ring = make_ring(spec)
        g = enumerate_group(SP4, ring)
        for u in ring.units():
            good = check_unit_normal_generation(ring, u, group=g)
            ok &= good
            emit({"ring": spec, "unit": ring.format(u.index), "ok": good})
    return ok


def _criterion_5(emit):
    """No single conjugacy class normally generates Sp4(Quad(-7)/2)."""
    ring = make_ring("Quad(-7)/2")
    g = enumerate_group(SP4, ring)
    classes = conjugacy_classes(g)
    proper = all(len(normal_closure(g, [int(c[0])])) < g.order for c in classes)
    delta = delta_k_exact(g, 1)
    epi = f2r_epimorphism(ring)
    epi_ok = all(len({(0, 0), epi(g.elem(int(c[0])))}) < 4 for c in classes)
    ok = proper and delta == NEG_INFINITY and epi_ok and len(classes) == 121
    emit({"classes": len(classes), "all_closures_proper": proper,
          "delta_1": delta, "f2r_obstruction": epi_ok, "ok": ok})
    return ok


def _criterion_6(emit):
    """Pi-certificates for the k=2 / k=3 sets, plus the ball-1 exclusion."""
    z6 = make_ring("Z/6")
    z30 = make_ring("Z/30")
    phi = A2.parse_root("e1-e2")
    lbs2 = lower_bound_set_higher_rank(SL(3), phi, [2, 3], z6)
    lbs3 = lower_bound_set_higher_rank(SL(3), phi, [2, 3, 5], z30)
    t2 = root_matrix(SL(3), z6, phi, z6.one)
    t3 = root_matrix(SL(3), z30, phi, z30.one)
    b2 = pi_lower_bound_certificate(lbs2.generators, t2, lbs2.primes)
    b3 = pi_lower_bound_certificate(lbs3.generators, t3, lbs3.primes)
    g = enumerate_group(SL(3), z6)
    s_idx = [g.index_of(x) for x in lbs2.generators]
    outside = g.index_of(t2) not in set(ball(g, s_idx, 1).tolist())
    ok = b2 == 2 and b3 == 3 and outside
    emit({"bound_z6": b2, "bound_z30": b3, "target_outside_ball1": outside,
          "ok": ok})
    return ok


def _criterion_7(emit):
    """Exhaustive <=4-factor unitriangular decomposition in SL2."""
    ok = True
    for m in [4, 5, 6, 9]:
        ring = make_ring(f"Z/{m}")
        g = enumerate_group(SL(2), ring)
        good = True
        for i in range(g.order):
            elem = g.elem(i)
            factors = sl2_unitriangular_decompose(elem)
            prod = GroupElem.from_rows(SL(2), ring, [[1, 0], [0, 1]])
            for f in factors:
                prod = prod * f
            good &= len(factors) <= 4 and prod == elem
        ok &= good
        emit({"ring": f"Z/{m}", "elements": g.order, "ok": good})
    return ok


def _criterion_8(emit):
    """Generation criteria: Sp4(F3) class singletons and Sp4(Z/4) random sets."""
    z3 = make_ring("Z/3")
    g3 = enumerate_group(SP4, z3)
    ok = True
    for cls in conjugacy_classes(g3):
        rep = g3.elem(int(cls[0]))
        v = generation_criteria_check(z3, [rep], group=g3)
        ok &= v.consistent and (v.actually_generates == v.pi_empty)
        ok &= levels_sum_is_full([rep]) == (pi_set([rep]) == set())
    emit({"ring": "Z/3", "singletons": len(conjugacy_classes(g3)), "ok": ok})
    z4 = make_ring("Z/4")
    g4 = enumerate_group(SP4, z4)
    rng = random.Random(0)
    roots = B2.all_roots()
    rand_ok = True
    for _ in range(50):
        elems = []
        for _ in range(rng.randint(1, 2)):
            e = g4.elem(0)
            for _ in range(rng.randint(1, 6)):
                e = e * root_matrix(SP4, z4, rng.choice(roots), z4.sample(rng))
            elems.append(e)
        rand_ok &= generation_criteria_check(z4, elems, group=g4).consistent
    ok &= rand_ok
    emit({"ring": "Z/4", "random_sets": 50, "ok": rand_ok})
    return ok


def _criterion_9(emit):
    """The mod-8 splitting table and its local-factor cross-check."""
    expected = {-7: ("split", 2), -5: ("ramified", 1), -1: ("ramified", 1),
                2: ("ramified", 1), 3: ("ramified", 1), 5: ("inert", 0),
                17: ("split", 2)}
    ok = True
    for d, (kind, r) in expected.items():
        got_kind, got_r = split_two_quadratic(d)
        good = (got_kind.value, got_r) == (kind, r)
        if d in (-7, -5, 5):
            ring = make_ring(f"Quad({d})/2")
            count = sum(1 for fac, _ in local_factors(ring)
                        if residue_field_size(fac) == 2)
            good &= count == r
        ok &= good
        emit({"D": d, "kind": got_kind.value, "r": got_r, "ok": good})
    return ok


def _naive_ball(G, S, k):
    conj = set()
    for s in S:
        s_inv = G.inv(s)
        for g in range(G.order):
            conj.add(G.conj(g, s))
            conj.add(G.conj(g, s_inv))
    out = {G.identity}
    level = {G.identity}
    for _ in range(k):
        level = {G.mult(x, c) for x in level for c in conj}
        out |= level
    return out


def _criterion_10(emit):
    """BFS balls against the direct product-of-conjugates enumeration."""
    ok = True
    for G, name in [(symmetric_group(3), "S3"),
                    (enumerate_group(SL(2), make_ring("Z/3")), "SL2(F3)")]:
        cases = 0
        good = True
        singles = [[x] for x in range(G.order)]
        pairs = [[x, y] for x in range(G.order) for y in range(x + 1, G.order)]
        for S in singles + pairs:
            for k in range(4):
                good &= set(ball(G, S, k).tolist()) == _naive_ball(G, S, k)
                cases += 1
        ok &= good
        emit({"group": name, "cases": cases, "ok": good})
    return ok


CRITERIA = {
    1: _criterion_1, 2: _criterion_2, 3: _criterion_3, 4: _criterion_4,
    5: _criterion_5, 6: _criterion_6, 7: _criterion_7, 8: _criterion_8,
    9: _criterion_9, 10: _criterion_10,
}


def run_criterion(number: int, emit) -> bool:
    """Run one acceptance criterion, emitting result records; True iff pass."""
    if number not in CRITERIA:
        raise ValueError(f"no criterion {number}; valid: 1..10")
    return CRITERIA[number](emit)
