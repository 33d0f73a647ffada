"""Command-line front end: verification suites, norm computations and the
generating-set constructions as reproducible runs with line-delimited JSON
output.

Every result line is one RunRecord; identical argv, seed and cache state
produce byte-identical output (elapsed_ms is 0 unless --timing is passed,
which is documented to break replay)."""

from __future__ import annotations

import argparse
import itertools
import json
import math
import re
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import constructions, groups, levels, norms, rings
from .groups import enumerate_group, parse_group, root_matrix, root_matrix_batch, mat_mul
from .rings import make_ring, parse_elem
from .roots import InvalidRootError


class UsageError(Exception):
    pass


@dataclass
class RunRecord:
    command: str
    inputs: dict
    result: dict
    elapsed_ms: int = 0
    cache_hit: bool = False

    def to_line(self) -> str:
        doc = {
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "elapsed_ms": self.elapsed_ms,
            "cache_hit": self.cache_hit,
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_line(cls, line: str) -> "RunRecord":
        doc = json.loads(line)
        return cls(command=doc["command"], inputs=doc["inputs"],
                   result=doc["result"], elapsed_ms=doc["elapsed_ms"],
                   cache_hit=doc["cache_hit"])


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    return value


class Emitter:
    def __init__(self, args):
        self.pretty = args.pretty
        self.timing = args.timing
        self.t0 = time.monotonic()

    def emit(self, command, inputs, result, cache_hit=False):
        elapsed = int((time.monotonic() - self.t0) * 1000) if self.timing else 0
        rec = RunRecord(command=command, inputs=_jsonable(inputs),
                        result=_jsonable(result), elapsed_ms=elapsed,
                        cache_hit=cache_hit)
        if self.pretty:
            print(f"== {rec.command}")
            for k, v in rec.inputs.items():
                print(f"   {k}: {v}")
            for k, v in rec.result.items():
                print(f"   {k} = {v}")
        else:
            print(rec.to_line())
        self.t0 = time.monotonic()


# ---------------------------------------------------------------------------
# literals


_A_ROOT = re.compile(r"^e\d+-e\d+$")


def parse_root_literal(system, text: str):
    text = text.strip()
    if _A_ROOT.match(text):
        return system.parse_root(text)
    if not text.startswith("e"):
        raise UsageError(f"root literal {text!r} must start with 'e'")
    return system.parse_root(text[1:])


def parse_gen_literals(group, ring, text: str):
    """Comma-separated root-element literals such as "ea(1),eb(w)"."""
    out = []
    depth = 0
    cur = ""
    parts = []
    for ch in text:
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        cur += ch
    if cur:
        parts.append(cur)
    for lit in parts:
        lit = lit.strip()
        if "(" not in lit or not lit.endswith(")"):
            raise UsageError(f"bad generator literal {lit!r}; expected root(elem)")
        cut = lit.index("(")
        phi = parse_root_literal(group.root_system, lit[:cut])
        t = parse_elem(ring, lit[cut + 1:-1])
        out.append(root_matrix(group, ring, phi, t))
    return out


# ---------------------------------------------------------------------------
# subcommands


def _cmd_relations_verify(args, em: Emitter) -> int:
    group = parse_group(args.group)
    probe_spec = rings.parse_ring(args.probe)
    if not isinstance(probe_spec, rings.ZMod):
        raise UsageError("--probe must be a Z/p ring")
    probe = probe_spec.n
    failures = 0
    try:
        table = groups.resolve_signs(group, probe)
    except groups.NoConsistentSignsError as exc:
        em.emit("relations verify", {"group": args.group, "probe": args.probe},
                {"ok": False, "error": str(exc)})
        return 1
    roots = group.root_system.all_roots()
    for alpha, beta in itertools.product(roots, roots):
        if alpha.vec == (-beta).vec:
            continue
        entries = table.pair(alpha, beta)
        em.emit("relations verify",
                {"group": args.group, "probe": args.probe,
                 "pair": f"({alpha},{beta})"},
                {"ok": True,
                 "terms": [{"root": str(e.root), "i": e.i, "j": e.j,
                            "coeff": e.coeff, "sign": e.sign} for e in entries]})
    # additivity of every root map on the full probe grid
    ring = make_ring(rings.ZMod(probe))
    s = np.repeat(np.arange(probe, dtype=np.int64), probe)
    t = np.tile(np.arange(probe, dtype=np.int64), probe)
    for phi in roots:
        lhs = root_matrix_batch(group, ring, phi, (s + t) % probe)
        rhs = mat_mul(ring, root_matrix_batch(group, ring, phi, s),
                      root_matrix_batch(group, ring, phi, t))
        ok = bool((lhs == rhs).all())
        failures += 0 if ok else 1
        em.emit("relations verify",
                {"group": args.group, "probe": args.probe, "additivity": str(phi)},
                {"ok": ok})
    # Weyl conjugation on the full grid
    for phi, psi in itertools.product(roots, roots):
        ok = all(groups.check_weyl_conjugation(group, ring, phi, psi, ring.element(x))
                 for x in range(probe))
        failures += 0 if ok else 1
        em.emit("relations verify",
                {"group": args.group, "probe": args.probe,
                 "weyl": f"({phi},{psi})"},
                {"ok": ok})
    return 1 if failures else 0


def _norm_context(args):
    group = parse_group(args.group)
    ring = make_ring(args.ring)
    g = enumerate_group(group, ring, cap=args.cap)
    gens = parse_gen_literals(group, ring, args.gens) if args.gens else []
    return group, ring, g, [g.index_of(x) for x in gens]


def _cmd_norm_ball(args, em: Emitter) -> int:
    group, ring, g, idxs = _norm_context(args)
    table, hit = norms.norm_table_cached(g, idxs, cache_dir=args.cache_dir)
    members = table.ball_indices(args.k)
    em.emit("norm ball",
            {"group": args.group, "ring": args.ring, "gens": args.gens,
             "k": args.k},
            {"size": int(len(members))}, cache_hit=hit)
    return 0


def _cmd_norm_diameter(args, em: Emitter) -> int:
    group, ring, g, idxs = _norm_context(args)
    table, hit = norms.norm_table_cached(g, idxs, cache_dir=args.cache_dir)
    em.emit("norm diameter",
            {"group": args.group, "ring": args.ring, "gens": args.gens},
            {"diameter": table.diameter(),
             "normally_generates": table.normally_generates()},
            cache_hit=hit)
    return 0


def _cmd_norm_delta(args, em: Emitter) -> int:
    group = parse_group(args.group)
    ring = make_ring(args.ring)
    g = enumerate_group(group, ring, cap=args.cap)
    value = norms.delta_k_exact(g, args.k)
    em.emit("norm delta",
            {"group": args.group, "ring": args.ring, "k": args.k},
            {"delta": value})
    return 0


def _cmd_levels_pi(args, em: Emitter) -> int:
    group = parse_group(args.group)
    ring = make_ring(args.ring)
    gens = parse_gen_literals(group, ring, args.gens)
    pi = levels.pi_set(gens)
    full = levels.levels_sum_is_full(gens)
    em.emit("levels pi",
            {"group": args.group, "ring": args.ring, "gens": args.gens},
            {"pi": sorted(repr(m) for m in pi), "pi_empty": not pi,
             "levels_sum_full": full})
    return 0 if full == (not pi) else 1


def _cmd_construct_split_two(args, em: Emitter) -> int:
    kind, r = rings.split_two_quadratic(args.D)
    em.emit("construct split-two", {"D": args.D},
            {"kind": kind.value, "r": r})
    return 0


def _cmd_construct_lower_bound(args, em: Emitter) -> int:
    ring = make_ring(args.ring)
    if args.kind == "higher":
        if not args.ts:
            raise UsageError("--kind higher needs --ts")
        group = parse_group(args.group)
        phi = parse_root_literal(group.root_system, args.phi)
        ts = [parse_elem(ring, t) for t in args.ts.split(",")]
        lbs = constructions.lower_bound_set_higher_rank(group, phi, ts, ring)
    else:
        xs = [parse_elem(ring, x) for x in args.xs.split(",")] if args.xs else []
        vs = [parse_elem(ring, v) for v in args.vs.split(",")] if args.vs else []
        lbs = constructions.lower_bound_set_rank2(ring, xs, vs)
    em.emit("construct lower-bound",
            {"kind": args.kind, "ring": args.ring},
            lbs.to_json())
    return 0


def _cmd_gen_check(args, em: Emitter) -> int:
    ring = make_ring(args.ring)
    g = enumerate_group(groups.SP4, ring, cap=args.cap)
    failures = 0
    sets = []
    if args.gens:
        sets.append((args.gens, parse_gen_literals(groups.SP4, ring, args.gens)))
    if args.random:
        import random as _random
        rng = _random.Random(args.seed)
        roots = groups.SP4.root_system.all_roots()
        for i in range(args.random):
            size = rng.randint(1, args.max_size)
            elems = []
            for _ in range(size):
                e = g.elem(0)
                for _ in range(rng.randint(1, 6)):
                    e = e * root_matrix(groups.SP4, ring, rng.choice(roots),
                                        ring.sample(rng))
                elems.append(e)
            sets.append((f"random[{i}]", elems))
    if not sets:
        raise UsageError("gen check needs --gens or --random N")
    for label, elems in sets:
        verdict = constructions.generation_criteria_check(ring, elems, group=g)
        failures += 0 if verdict.consistent else 1
        em.emit("gen check",
                {"ring": args.ring, "gens": label, "seed": args.seed},
                verdict.to_json())
    return 1 if failures else 0


def _cmd_gen_unit_check(args, em: Emitter) -> int:
    ring = make_ring(args.ring)
    if not args.all_units and args.x is None:
        raise UsageError("gen unit-check needs -x or --all-units")
    g = enumerate_group(groups.SP4, ring, cap=args.cap)
    units = ring.units() if args.all_units else [parse_elem(ring, args.x)]
    failures = 0
    for u in units:
        ok = constructions.check_unit_normal_generation(ring, u, group=g)
        failures += 0 if ok else 1
        em.emit("gen unit-check",
                {"ring": args.ring, "x": ring.format(u.index)},
                {"normally_generates": ok})
    return 1 if failures else 0


def _cmd_accept(args, em: Emitter) -> int:
    from . import acceptance

    if args.criterion == "all":
        numbers = sorted(acceptance.CRITERIA)
    else:
        numbers = [int(args.criterion)]
    failures = 0
    for n in numbers:
        passed = acceptance.run_criterion(
            n, lambda result, _n=n: em.emit(
                "accept", {"criterion": _n}, result))
        em.emit("accept", {"criterion": n},
                {"criterion_passed": bool(passed)})
        failures += 0 if passed else 1
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# dispatcher


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true",
                        help="human-readable output instead of JSON lines")
    common.add_argument("--timing", action="store_true",
                        help="real elapsed_ms in records (breaks byte-identical replay)")
    common.add_argument("--seed", type=int, default=0, help="seed for any randomness")
    common.add_argument("--cap", type=int, default=2_000_000,
                        help="group enumeration cap")
    common.add_argument("--cache-dir", default=None,
                        help="norm-table cache directory")

    p = argparse.ArgumentParser(
        prog="chevbound",
        description="Exact Chevalley groups over finite rings: relation "
                    "verification, word norms, and normal-generation checks.")
    sub = p.add_subparsers(dest="topic", required=True)

    def leaf(parent_sub, name):
        return parent_sub.add_parser(name, parents=[common])

    rel = sub.add_parser("relations", help="verify the commutator relation suite")
    rel_sub = rel.add_subparsers(dest="action", required=True)
    rv = leaf(rel_sub, "verify")
    rv.add_argument("--group", required=True)
    rv.add_argument("--probe", default="Z/101")
    rv.set_defaults(func=_cmd_relations_verify)

    norm = sub.add_parser("norm", help="conjugation-invariant word norms")
    norm_sub = norm.add_subparsers(dest="action", required=True)
    nb = leaf(norm_sub, "ball")
    nd = leaf(norm_sub, "diameter")
    for q in (nb, nd):
        q.add_argument("--group", required=True)
        q.add_argument("--ring", required=True)
        q.add_argument("--gens", required=True,
                       help='root-element literals, e.g. "ea(1),eb(w)"')
    nb.add_argument("--k", type=int, required=True)
    nb.set_defaults(func=_cmd_norm_ball)
    nd.set_defaults(func=_cmd_norm_diameter)
    nx = leaf(norm_sub, "delta")
    nx.add_argument("--group", required=True)
    nx.add_argument("--ring", required=True)
    nx.add_argument("--k", type=int, required=True)
    nx.set_defaults(func=_cmd_norm_delta)

    lv = sub.add_parser("levels", help="level ideals and the Pi obstruction")
    lv_sub = lv.add_subparsers(dest="action", required=True)
    lp = leaf(lv_sub, "pi")
    lp.add_argument("--group", required=True)
    lp.add_argument("--ring", required=True)
    lp.add_argument("--gens", required=True)
    lp.set_defaults(func=_cmd_levels_pi)

    con = sub.add_parser("construct", help="lower-bound constructions")
    con_sub = con.add_subparsers(dest="action", required=True)
    cs = leaf(con_sub, "split-two")
    cs.add_argument("-D", type=int, required=True)
    cs.set_defaults(func=_cmd_construct_split_two)
    cl = leaf(con_sub, "lower-bound")
    cl.add_argument("--kind", choices=["higher", "rank2"], default="higher")
    cl.add_argument("--ring", required=True)
    cl.add_argument("--group", default="sl3")
    cl.add_argument("--phi", default="ea")
    cl.add_argument("--ts", default=None, help="comma-separated maximal generators")
    cl.add_argument("--xs", default=None, help="rank2: degree-1 prime generators")
    cl.add_argument("--vs", default=None, help="rank2: extra prime generators")
    cl.set_defaults(func=_cmd_construct_lower_bound)

    gen = sub.add_parser("gen", help="normal-generation criteria")
    gen_sub = gen.add_subparsers(dest="action", required=True)
    gc = leaf(gen_sub, "check")
    gc.add_argument("--ring", required=True)
    gc.add_argument("--gens", default=None)
    gc.add_argument("--random", type=int, default=0,
                    help="also check N seeded random sets")
    gc.add_argument("--max-size", type=int, default=2)
    gc.set_defaults(func=_cmd_gen_check)
    gu = leaf(gen_sub, "unit-check")
    gu.add_argument("--ring", required=True)
    gu.add_argument("-x", default=None, help="unit to test")
    gu.add_argument("--all-units", action="store_true")
    gu.set_defaults(func=_cmd_gen_unit_check)

    acc = leaf(sub, "accept")
    acc.add_argument("--criterion", default="all",
                     help="acceptance criterion number 1..10, or 'all'")
    acc.set_defaults(func=_cmd_accept)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    em = Emitter(args)
    try:
        code = args.func(args, em)
    except (UsageError, ValueError, rings.InvalidSpecError, InvalidRootError,
            constructions.ConstructionError, groups.GroupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
