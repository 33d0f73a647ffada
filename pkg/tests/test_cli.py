from chevbound.cli import RunRecord, main, parse_gen_literals, parse_root_literal
from chevbound.groups import SP4
from chevbound.rings import make_ring
from chevbound.roots import root_system


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    lines = [l for l in out.strip().splitlines() if l]
    return code, lines


def records(lines):
    return [RunRecord.from_line(l) for l in lines]


def test_split_two(capsys):
    code, lines = run(capsys, "construct", "split-two", "-D", "-7")
    assert code == 0
    (rec,) = records(lines)
    assert rec.result == {"kind": "split", "r": 2}
    code, lines = run(capsys, "construct", "split-two", "-D", "5")
    assert records(lines)[0].result == {"kind": "inert", "r": 0}


def test_split_two_invalid(capsys):
    code, _ = run(capsys, "construct", "split-two", "-D", "12")
    assert code == 2


def test_norm_ball_b0(capsys):
    code, lines = run(capsys, "norm", "ball", "--group", "sp4",
                      "--ring", "Z/2", "--gens", "ea(1)", "--k", "0")
    assert code == 0
    (rec,) = records(lines)
    assert rec.result == {"size": 1}


def test_norm_ball_k1(capsys):
    code, lines = run(capsys, "norm", "ball", "--group", "sp4",
                      "--ring", "Z/2", "--gens", "ea(1)", "--k", "1")
    (rec,) = records(lines)
    assert rec.result["size"] > 1


def test_norm_diameter_and_cache(capsys, tmp_path):
    argv = ["norm", "diameter", "--group", "sl2", "--ring", "Z/3",
            "--gens", "ea(1)", "--cache-dir", str(tmp_path)]
    code, lines = run(capsys, *argv)
    assert code == 0
    (rec,) = records(lines)
    assert not rec.cache_hit
    assert rec.result["normally_generates"] is True
    code2, lines2 = run(capsys, *argv)
    (rec2,) = records(lines2)
    assert rec2.cache_hit
    assert rec2.result["diameter"] == rec.result["diameter"]


def test_byte_identical_output(capsys):
    argv = ["norm", "ball", "--group", "sl2", "--ring", "Z/3",
            "--gens", "ea(1)", "--k", "2"]
    _, lines1 = run(capsys, *argv)
    _, lines2 = run(capsys, *argv)
    assert lines1 == lines2


def test_levels_pi(capsys):
    code, lines = run(capsys, "levels", "pi", "--group", "sp4",
                      "--ring", "Z/6", "--gens", "ea(2)")
    assert code == 0
    (rec,) = records(lines)
    assert not rec.result["pi_empty"]
    assert not rec.result["levels_sum_full"]
    code, lines = run(capsys, "levels", "pi", "--group", "sp4",
                      "--ring", "Z/6", "--gens", "ea(2),ea(3)")
    (rec,) = records(lines)
    assert rec.result["pi_empty"] and rec.result["levels_sum_full"]


def test_construct_lower_bound_higher(capsys):
    code, lines = run(capsys, "construct", "lower-bound", "--kind", "higher",
                      "--ring", "Z/6", "--group", "sl3", "--phi", "e1-e2",
                      "--ts", "2,3")
    assert code == 0
    (rec,) = records(lines)
    assert rec.result["claimed_bound"] == 2
    assert rec.result["arguments"] == ["3", "2"]


def test_construct_lower_bound_rank2(capsys):
    code, lines = run(capsys, "construct", "lower-bound", "--kind", "rank2",
                      "--ring", "Quad(-7)/2", "--xs", "w,1+w")
    assert code == 0
    (rec,) = records(lines)
    assert rec.result["claimed_bound"] == 2


def test_gen_unit_check(capsys):
    code, lines = run(capsys, "gen", "unit-check", "--ring", "Z/2", "-x", "1")
    assert code == 0
    (rec,) = records(lines)
    assert rec.result["normally_generates"] is True


def test_gen_unit_check_hypothesis_violated(capsys):
    code, _ = run(capsys, "gen", "unit-check", "--ring", "Quad(-7)/2", "-x", "1")
    assert code == 2


def test_gen_check_seeded_random(capsys):
    argv = ["gen", "check", "--ring", "Z/2", "--random", "3", "--seed", "7"]
    code, lines = run(capsys, *argv)
    assert code == 0
    assert len(lines) == 3
    assert all(r.result["consistent"] for r in records(lines))
    _, lines2 = run(capsys, *argv)
    assert lines == lines2


def test_relations_verify_sl2(capsys):
    code, lines = run(capsys, "relations", "verify", "--group", "sl2",
                      "--probe", "Z/101")
    assert code == 0
    assert all(r.result["ok"] for r in records(lines))


def test_usage_errors(capsys):
    code, _ = run(capsys, "norm", "ball", "--group", "sp4",
                  "--ring", "nonsense", "--gens", "ea(1)", "--k", "0")
    assert code == 2
    code, _ = run(capsys, "gen", "unit-check", "--ring", "Z/2")
    assert code == 2
    assert main(["bogus-topic"]) == 2


def test_pretty_output(capsys):
    code, lines = run(capsys, "construct", "split-two", "-D", "17", "--pretty")
    assert code == 0
    assert lines[0].startswith("== construct split-two")


def test_run_record_roundtrip():
    rec = RunRecord(command="x", inputs={"a": 1}, result={"b": "-inf"},
                    elapsed_ms=0, cache_hit=True)
    assert RunRecord.from_line(rec.to_line()) == rec


def test_parse_literals():
    b2 = root_system("B2")
    assert str(parse_root_literal(b2, "ea")) == "a"
    assert str(parse_root_literal(b2, "e2a+b")) == "2a+b"
    assert str(parse_root_literal(root_system("A2"), "e1-e3")) == "e1-e3"
    ring = make_ring("Quad(-7)/2")
    (g,) = parse_gen_literals(SP4, ring, "eb(1+w)")
    assert g.entry(1, 3) == ring.one + ring.omega


def test_accept_subcommand(capsys):
    code, lines = run(capsys, "accept", "--criterion", "9")
    assert code == 0
    recs = records(lines)
    assert recs[-1].result == {"criterion_passed": True}
    assert all(r.result.get("ok", True) for r in recs[:-1])
    code, _ = run(capsys, "accept", "--criterion", "77")
    assert code == 2


def test_relations_verify_sp4_full(capsys):
    code, lines = run(capsys, "relations", "verify", "--group", "sp4",
                      "--probe", "Z/101")
    assert code == 0
    recs = records(lines)
    assert len(recs) == 56 + 8 + 64  # pairs + additivity + weyl conjugation
    assert all(r.result["ok"] for r in recs)
