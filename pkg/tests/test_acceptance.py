"""Acceptance criteria, one test per criterion.

Run with `pytest tests/test_acceptance.py -s` to see one PASS/FAIL line
per criterion. The differential corpus (criterion 5) is run once and
shared by the fused-equivalence, match-only and optimizer criteria.
"""

import os
import random
import time

import pytest

from lpc import l0, l1, l2
from lpc.engine import Store
from lpc.harness import run_diff
from lpc.parser import parse_program
from lpc.preprocess import distribute
from lpc.runtime import Ctx, SearchConfig, drive
from lpc.syntax import (Atom, Atomic, alpha_equal, parse_sexpr,
                        substitute_many, IN, OUT)

from helpers import (robinson, apply_subst, variant, gen_runtime_term,
                     gen_ground_term, gen_syn_term)

HERE = os.path.dirname(__file__)
STLC = open(os.path.join(HERE, "..", "samples", "stlc.lp")).read()

PROFILES = ("horn", "hh", "moded")
SEEDS = [1, 2, 3, 4, 5]
COUNT = 40  # per seed: 5 x 40 = 200 programs per profile


def _report(ok, text):
    print("%s %s" % ("PASS" if ok else "FAIL", text))
    assert ok, text


def _golden(name, kind):
    path = os.path.join(HERE, "golden", name)
    with open(path) as fh:
        return [parse_sexpr(line.strip(), kind)
                for line in fh if line.strip()]


def _check_golden(n, target, kind, compile_fn):
    t0 = time.monotonic()
    program = parse_program(STLC)
    compiled = compile_fn(program)
    golden = _golden("%s_stlc.sexpr" % target, kind)
    ok = (len(compiled) == len(golden) == 2
          and all(alpha_equal(g, c) for g, c in zip(golden, compiled)))
    elapsed = time.monotonic() - t0
    _report(ok and elapsed < 1.0,
            "criterion %d: golden %s compilation of the two typing "
            "clauses (%.3fs)" % (n, target, elapsed))


def test_criterion_1_golden_l0():
    _check_golden(1, "l0", "clause0", l0.compile_program_l0)


def test_criterion_2_golden_l1():
    _check_golden(2, "l1", "clause1", l1.compile_program_l1)


def test_criterion_3_golden_l2():
    _check_golden(3, "l2", "clause2", l2.compile_program_l2)


def test_criterion_4_distribution():
    t0 = time.monotonic()
    p = parse_program("(p1 X Y, (r X Y => p2 X)) <- q X Y.\ntrue <- q2.")
    got = distribute(p.clauses[0])
    want1 = parse_sexpr(
        "(all X (all Y (imp (atom q (var X) (var Y)) "
        "(atom p1 (var X) (var Y)))))", "source")
    want2 = parse_sexpr(
        "(all X (all Y (imp (atom q (var X) (var Y)) "
        "(imp (atom r (var X) (var Y)) (atom p2 (var X))))))", "source")
    ok = (len(got) == 2 and alpha_equal(got[0], want1)
          and alpha_equal(got[1], want2)
          and distribute(p.clauses[1]) == [])
    elapsed = time.monotonic() - t0
    _report(ok and elapsed < 1.0,
            "criterion 4: conjunction distribution and headless-clause "
            "elimination (%.3fs)" % elapsed)


@pytest.fixture(scope="module")
def corpus_reports():
    t0 = time.monotonic()
    reports = {profile: run_diff(SEEDS, COUNT, profile, depth=30,
                                 max_solutions=16)
               for profile in PROFILES}
    reports["elapsed"] = time.monotonic() - t0
    return reports


def test_criterion_5_differential(corpus_reports):
    ok = True
    total_p = total_q = total_g = 0
    for profile in PROFILES:
        rep = corpus_reports[profile]
        ok = ok and rep["passed"] and rep["programs"] >= 200
        ok = ok and all(len(item["queries"]) >= 3 for item in rep["items"])
        total_p += rep["programs"]
        total_q += rep["queries"]
        total_g += rep["gated_queries"]
    elapsed = corpus_reports["elapsed"]
    ok = ok and elapsed < 60.0
    _report(ok,
            "criterion 5: differential agreement over %d programs / %d "
            "queries (depth 30, %d depth-exempt), zero mismatches "
            "(%.1fs)" % (total_p, total_q, total_g, elapsed))


def test_criterion_6_fused_equivalence(corpus_reports):
    checked = 0
    ok = True
    for profile in PROFILES:
        for item in corpus_reports[profile]["items"]:
            for q in item["queries"]:
                if q["gated"]:
                    continue
                o = q["outcomes"]
                ok = ok and o["l1"]["answers"] == o["l1_fused"]["answers"]
                ok = ok and o["l2"]["answers"] == o["l2_fused"]["answers"]
                checked += 1
    _report(ok and checked > 1000,
            "criterion 6: fused modes answer-equivalent to small-step on "
            "%d corpus queries" % checked)


def test_criterion_7_match_only(corpus_reports):
    ok = True
    checked = 0
    for item in corpus_reports["moded"]["items"]:
        for q in item["queries"]:
            o = q["outcomes"]
            for name in ("l2", "l2_fused", "l2_strict", "l2_fused_strict"):
                ok = ok and o[name]["counters"]["non_ground_match_lhs"] == 0
            ok = ok and o["l2"]["answers"] == o["l2_strict"]["answers"]
            ok = ok and (o["l2_fused"]["answers"]
                         == o["l2_fused_strict"]["answers"])
            checked += 1
    _report(ok and checked >= 600,
            "criterion 7: zero non-ground matches on %d moded ground-input "
            "queries; strict reruns identical" % checked)


def test_criterion_8_unification_oracle():
    t0 = time.monotonic()
    rng = random.Random(2024)
    ok = True
    for _ in range(1000):
        st = Store()
        pool = [st.fresh_lvar() for _ in range(3)]
        t1 = gen_runtime_term(rng, pool, 4)
        t2 = gen_runtime_term(rng, pool, 4)
        s = robinson(t1, t2)
        got = st.unify(t1, t2)
        ok = ok and got == (s is not None)
        if got and s is not None:
            from lpc.engine import resolve
            ok = ok and variant(resolve(t1), apply_subst(s, t1))
            ok = ok and variant(resolve(t2), apply_subst(s, t2))
    elapsed = time.monotonic() - t0
    _report(ok and elapsed < 5.0,
            "criterion 8: engine agrees with the naive unification oracle "
            "on 1000 random pairs (%.2fs)" % elapsed)


def _entail(mod, clause, atom, lang):
    ctx = Ctx([], SearchConfig(80, 1))
    if lang == 1:
        gen = l1._entail(ctx, clause, atom, 1, False)
    else:
        gen = l2._entail(ctx, clause, atom, 1)
    return drive(gen, ctx, {}, SearchConfig(80, 1)).solvable


def test_criterion_9_lemma_suites():
    t0 = time.monotonic()
    rng = random.Random(515)
    ok = True
    for _ in range(500):  # head-compilation lemma, main target
        arity = rng.randint(0, 3)
        args = [gen_syn_term(rng, ["Y1", "Y2"], 2) for _ in range(arity)]
        atom = Atom("p", args)
        ps, eqs = l1.compile_head_l1([], atom)
        clause = l1.instantiate_hole(ps, eqs)
        grounding = [(gen_ground_term(rng, 2), n) for n in ("Y1", "Y2")]
        clause_g = substitute_many(grounding, clause)
        goal = substitute_many(grounding, Atomic(atom))
        ok = ok and _entail(l1, clause_g, goal.atom, 1)
    for _ in range(500):  # head-compilation lemma, moded target
        arity = rng.randint(0, 3)
        marks = tuple(rng.choice((IN, OUT)) for _ in range(arity))
        args = [gen_syn_term(rng, ["Y1", "Y2"], 2) for _ in range(arity)]
        atom = Atom("p", args, marks)
        clause = l2.instantiate_hole_l2(*l2.compile_head_l2([], atom))
        grounding = [(gen_ground_term(rng, 2), n) for n in ("Y1", "Y2")]
        clause_g = substitute_many(grounding, clause)
        goal = substitute_many(grounding, Atomic(atom))
        ok = ok and _entail(l2, clause_g, goal.atom, 2)
    for _ in range(500):  # atomic-goal lemma, moded target
        arity = rng.randint(0, 3)
        marks = tuple(rng.choice((IN, OUT)) for _ in range(arity))
        args = [gen_ground_term(rng, 2) for _ in range(arity)]
        atom = Atom("p", args, marks)
        fact = l2.instantiate_hole_l2(*l2.compile_clause_l2(Atomic(atom)))
        goal = l2.compile_goal_l2(Atomic(atom))
        r = l2.solve_l2([fact], goal, SearchConfig(80, 1), [])
        ok = ok and r.solvable
    elapsed = time.monotonic() - t0
    _report(ok and elapsed < 10.0,
            "criterion 9: instantiated-entailment lemma suites, 3 x 500 "
            "random instances (%.2fs)" % elapsed)


def test_criterion_10_optimizer_safety(corpus_reports):
    checked = 0
    ok = True
    for profile in PROFILES:
        for item in corpus_reports[profile]["items"]:
            for q in item["queries"]:
                if q["gated"]:
                    continue
                o = q["outcomes"]
                ok = ok and o["l1"]["answers"] == o["l1_opt"]["answers"]
                checked += 1
    _report(ok and checked > 1000,
            "criterion 10: optimizer preserves answer multisets on %d "
            "corpus queries" % checked)
