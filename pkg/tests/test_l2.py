"""Moded target: compilation goldens, execution, instrumentation, and
the well-modedness analysis."""

import os
import random

import pytest

from lpc import l2
from lpc.engine import Const, StrictMatchViolation
from lpc.interp import solve_uniform
from lpc.parser import parse_program, parse_query
from lpc.preprocess import preprocess_program
from lpc.runtime import Ctx, SearchConfig, drive
from lpc.syntax import (Atom, Atomic, IN, OUT, alpha_equal, dump_sexpr,
                        parse_sexpr, pretty_term, MalformedClause,
                        substitute_many)

from helpers import gen_ground_term, gen_syn_term

HERE = os.path.dirname(__file__)


def golden_lines(name):
    with open(os.path.join(HERE, "golden", name)) as fh:
        return [line.strip() for line in fh if line.strip()]


def test_head_arity0():
    ps, ins, outs = l2.compile_head_l2([], Atom("p", []))
    assert ps.prefix == ()
    assert dump_sexpr(ins) == "true" and dump_sexpr(outs) == "true"


def test_head_stlc_moded():
    p = parse_program(open("samples/stlc.lp").read())
    g, _ = parse_query("?- of (app E1 E2) T2.", p)
    ps, ins, outs = l2.compile_head_l2([], g.atom)
    assert list(ps.prefix) == ["x1", "x2"]
    assert dump_sexpr(ins) == ("(and true (mtch (var x1) (app (app "
                               "(const app) (var E1)) (var E2))))")
    assert dump_sexpr(outs) == "(and (assg (var x2) (var T2)) true)"


def test_head_single_output():
    ps, ins, outs = l2.compile_head_l2(
        [], Atom("q", [Const("a")], marks=(OUT,)))
    assert dump_sexpr(ins) == "true"
    assert dump_sexpr(outs) == "(and (assg (var x1) (const a)) true)"


def test_atomic_goal_arity0():
    ps, m = l2.compile_atomic_goal_l2([], Atom("p", []))
    assert ps.prefix == () and dump_sexpr(m) == "true"
    f = l2.fill_atomic_goal(ps, m)
    assert dump_sexpr(f) == "(and (atom p) true)"


def test_atomic_goal_single_output():
    p = parse_program(open("samples/stlc.lp").read())
    g, _ = parse_query("?- of E1 (arr T1 T2).", p)
    f = l2.compile_goal_l2(g)
    assert dump_sexpr(f) == \
        ("(exists z1 (and (atom of (var E1) (var z1)) (and (mtch (var z1) "
         "(app (app (const arr) (var T1)) (var T2))) true)))")


def test_atomic_goal_all_input():
    a = Atom("q", [Const("a"), Const("b")], marks=(IN, IN))
    f = l2.compile_goal_l2(Atomic(a))
    assert dump_sexpr(f) == "(and (atom q (const a) (const b)) true)"


def test_unit_clause_compiles_with_both_units():
    [c] = l2.compile_program_l2(parse_program("p."))
    assert dump_sexpr(c) == "(imp (and true true) (atom p))"


def test_program_golden():
    p = parse_program(open("samples/stlc.lp").read())
    compiled = l2.compile_program_l2(p)
    golden = [parse_sexpr(s, "clause2") for s in golden_lines("l2_stlc.sexpr")]
    assert len(compiled) == len(golden) == 2
    for got, want in zip(compiled, golden):
        assert alpha_equal(got, want)


def _run(ptext, qtext, fused=False, strict=False, depth=30, nsol=8):
    p = preprocess_program(parse_program(ptext))
    g, vs = parse_query(qtext, p)
    r = l2.solve_l2(l2.compile_program_l2(p), l2.compile_goal_l2(g),
                    SearchConfig(depth, nsol, fused=fused,
                                 strict_match=strict), vs)
    return [{k: pretty_term(t) for k, t in s.bindings.items()}
            for s in r.solutions], r


PLUS = "#mode plus(+,+,-).\nplus z Y Y.\nplus (s X) Y (s Z) <- plus X Y Z.\n"


def test_solve_unit():
    answers, r = _run("p.", "?- p.")
    assert answers == [{}]


def test_arity0_call_is_one_macro_step():
    answers, r = _run("p.", "?- p.", fused=True)
    assert answers == [{}]
    assert r.counters.rules.get("a2_atm'") == 1
    assert r.counters.rules.get("g2_atm'") == 1


def test_moded_append_unbound_output_fused_parity():
    app = ("#mode app(+,+,-).\napp nil L L.\n"
           "app (cons H T) L (cons H R) <- app T L R.\n")
    small, r1 = _run(app, "?- app (cons a nil) (cons b nil) R.", nsol=16)
    fused, r2 = _run(app, "?- app (cons a nil) (cons b nil) R.", nsol=16,
                     fused=True)
    assert small == fused == [{"R": "cons a (cons b nil)"}]
    assert r1.incomplete == r2.incomplete


def test_moded_plus_against_interpreter():
    # oracle: the unmoded source interpreter on the same program
    p = preprocess_program(parse_program(PLUS))
    g, vs = parse_query("?- plus (s z) (s z) X.", p)
    ref = solve_uniform(p, g, SearchConfig(30, 8), vs)
    want = [pretty_term(s.bindings["X"]) for s in ref.solutions]
    assert want == ["s (s z)"]
    for fused in (False, True):
        answers, r = _run(PLUS, "?- plus (s z) (s z) X.", fused=fused)
        assert [a["X"] for a in answers] == want


def test_moded_plus_match_only_and_strict():
    for fused in (False, True):
        answers, r = _run(PLUS, "?- plus (s z) (s z) X.", fused=fused,
                          strict=True)
        assert [a["X"] for a in answers] == ["s (s z)"]
        assert r.counters.non_ground_match_lhs_events == 0


def test_unmoded_run_falls_back_to_unification():
    # With an unbound input, matching degrades to unification and the
    # fallback is counted; under strict mode it is a hard error.
    unmoded = "plus z Y Y.\nplus (s X) Y (s Z) <- plus X Y Z.\n"
    answers, r = _run(unmoded, "?- plus X Y (s z).", nsol=16)
    assert len(answers) == 2
    assert r.counters.non_ground_match_lhs_events > 0
    with pytest.raises(StrictMatchViolation):
        _run(unmoded, "?- plus X Y (s z).", strict=True, nsol=16)


def test_fused_macro_counts():
    answers, r = _run(PLUS, "?- plus z z X.", fused=True)
    assert answers == [{"X": "z"}]
    assert r.counters.rules.get("a2_atm'", 0) >= 1
    assert r.counters.rules.get("g2_atm'", 0) >= 1


def test_fused_requires_canonical_clauses():
    bad = parse_sexpr("(imp true (atom p))", "clause2")  # no block
    with pytest.raises(MalformedClause):
        l2.solve_l2([bad], parse_sexpr("(and (atom p) true)", "goal2"),
                    SearchConfig(30, 1, fused=True), [])


def test_output_position_with_ground_term_checks_value():
    answers, r = _run(PLUS, "?- plus (s z) z (s z).")
    assert answers == [{}]
    answers, r = _run(PLUS, "?- plus (s z) z z.")
    assert answers == []


# --- well-modedness --------------------------------------------------------

def test_plus_well_moded():
    rep = l2.check_well_moded(parse_program(PLUS))
    assert rep.well_moded and rep.violations == []


def test_plus_reversed_modes():
    # Running the dataflow by hand: with plus(-,-,+) the head input
    # (s Z) grounds Z, which is exactly the recursive call's input, and
    # the head outputs are grounded by the call. Reversed plus is
    # well-moded (it enumerates the splits of its third argument).
    rev = "#mode plus(-,-,+).\nplus z Y Y.\nplus (s X) Y (s Z) <- plus X Y Z.\n"
    rep = l2.check_well_moded(parse_program(rev))
    assert rep.well_moded


def test_ill_moded_head_output():
    # plus(+,-,-): the base clause promises two outputs it never grounds
    bad = "#mode plus(+,-,-).\nplus z Y Y.\nplus (s X) Y (s Z) <- plus X Y Z.\n"
    rep = l2.check_well_moded(parse_program(bad))
    assert not rep.well_moded
    assert any(ix == 1 and "head output" in msg
               for ix, msg in rep.violations)


def test_ill_moded_call_input():
    # the recursive call swaps its arguments, so its input is the
    # enclosing clause's yet-unbound output
    bad = "#mode sw(+,-).\nsw z z.\nsw X Y <- sw Y X.\n"
    rep = l2.check_well_moded(parse_program(bad))
    assert not rep.well_moded
    assert any(ix == 2 and "input variable Y" in msg
               for ix, msg in rep.violations)


def test_no_modes_is_vacuously_well_moded():
    rep = l2.check_well_moded(parse_program("p X <- q X."))
    assert rep.well_moded and rep.note == "no modes declared"


def test_strict_flags_unmoded_predicates():
    prog = parse_program("#mode p(+).\np X <- q X.\nq a.")
    rep = l2.check_well_moded(prog, strict=True)
    assert not rep.well_moded
    assert any("no mode" in msg for _, msg in rep.violations)


def test_hypothetical_checked_recursively():
    # A hypothesis that uses only grounded inputs passes...
    ok = parse_program(
        "#mode q(+).\n#mode r(+).\n"
        "r X <- q X.\n"
        "p X <- (q X => r X).\n")
    assert l2.check_well_moded(ok).well_moded
    # ...but one that promises an output it cannot ground is flagged:
    # the recursive check is deliberately conservative here.
    shaky = parse_program(
        "#mode p(+,-).\n#mode q(+,-).\n"
        "p X Y <- ((q X Y) => q X Y).\n")
    rep = l2.check_well_moded(shaky)
    assert not rep.well_moded
    assert any("head output variable Y" in msg for _, msg in rep.violations)


def test_eigenvariables_count_as_ground():
    prog = parse_program(
        "#mode w(+).\n#mode v(+).\n"
        "v z.\n"
        "w X <- (all y. (v y => v y)).\n")
    assert l2.check_well_moded(prog).well_moded


# --- lemma checks ----------------------------------------------------------

def _entail_clause(clause, atom):
    ctx = Ctx([], SearchConfig(60, 1))
    return drive(l2._entail(ctx, clause, atom, 1), ctx, {},
                 SearchConfig(60, 1))


def test_head_compilation_lemma_random():
    rng = random.Random(31)
    for _ in range(300):
        arity = rng.randint(0, 3)
        marks = tuple(rng.choice((IN, OUT)) for _ in range(arity))
        args = [gen_syn_term(rng, ["Y1", "Y2"], 2) for _ in range(arity)]
        atom = Atom("p", args, marks)
        ps, ins, outs = l2.compile_head_l2([], atom)
        clause = l2.instantiate_hole_l2(ps, ins, outs)
        grounding = [(gen_ground_term(rng, 2), n) for n in ("Y1", "Y2")]
        clause_g = substitute_many(grounding, clause)
        goal = substitute_many(grounding, Atomic(atom))
        assert _entail_clause(clause_g, goal.atom).solvable


def test_atomic_goal_lemma_random():
    # The compiled call form proves its own atom: run it against a
    # program holding exactly the corresponding fact.
    rng = random.Random(37)
    for _ in range(300):
        arity = rng.randint(0, 3)
        marks = tuple(rng.choice((IN, OUT)) for _ in range(arity))
        args = [gen_ground_term(rng, 2) for _ in range(arity)]
        atom = Atom("p", args, marks)
        fact = l2.instantiate_hole_l2(*l2.compile_clause_l2(Atomic(atom)))
        goal = l2.compile_goal_l2(Atomic(atom))
        r = l2.solve_l2([fact], goal, SearchConfig(60, 1), [])
        assert r.solvable
