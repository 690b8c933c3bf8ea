"""Concrete syntax: programs, queries, static checks, round-trips."""

import pytest

from lpc.parser import ParseError, parse_program, parse_query
from lpc.syntax import (Imp, All, And, TrueF, alpha_equal, dump_sexpr,
                        parse_sexpr, IN, OUT)


def test_empty_and_fact():
    p = parse_program("p.")
    assert len(p.clauses) == 1
    assert dump_sexpr(p.clauses[0]) == "(atom p)"
    assert p.arities == {"p": 0}
    assert parse_program("").clauses == []


def test_stlc_clauses_match_source_figures():
    text = open("samples/stlc.lp").read()
    p = parse_program(text)
    want1 = parse_sexpr(
        "(all E1 (all E2 (all T1 (all T2 (imp (atom of (var E2) (var T1)) "
        "(imp (atom of (var E1) (app (app (const arr) (var T1)) (var T2))) "
        "(atom of (app (app (const app) (var E1)) (var E2)) (var T2))))))))",
        "source")
    want2 = parse_sexpr(
        "(all E (all T1 (all T2 (imp (all x (imp (atom of (var x) (var T1)) "
        "(atom of (app (var E) (var x)) (var T2)))) "
        "(atom of (app (app (const lam) (var T1)) (var E)) "
        "(app (app (const arr) (var T1)) (var T2)))))))",
        "source")
    assert alpha_equal(p.clauses[0], want1)
    assert alpha_equal(p.clauses[1], want2)
    assert p.modes == {"of": (IN, OUT)}


def test_arity_mismatch():
    with pytest.raises(ParseError) as e:
        parse_program("p a. p a b.")
    assert e.value.kind == "ArityMismatch"
    assert e.value.line == 1


def test_mode_arity_mismatch():
    with pytest.raises(ParseError) as e:
        parse_program("#mode p(+,-).\np a.")
    assert e.value.kind == "ModeMismatch"


def test_conflicting_modes():
    with pytest.raises(ParseError) as e:
        parse_program("#mode p(+).\n#mode p(-).\np a.")
    assert e.value.kind == "ModeMismatch"


def test_leading_operator_rejected():
    with pytest.raises(ParseError) as e:
        parse_program("<- p.")
    assert e.value.kind == "UnboundOperator"


def test_query_variables_in_order():
    p = parse_program("of (app E1 E2) T2 <- of E1 (arr T1 T2) <- of E2 T1.")
    g, vs = parse_query("?- of (app X Y) T.", p)
    assert vs == ["X", "Y", "T"]
    assert dump_sexpr(g) == ("(atom of (app (app (const app) (var X)) "
                             "(var Y)) (var T))")


def test_query_universal_implication():
    g, vs = parse_query("?- all x. p x => q.")
    assert vs == []
    assert type(g) is All and type(g.body) is Imp
    assert dump_sexpr(g) == "(all x (imp (atom p (var x)) (atom q)))"


def test_query_append():
    p = parse_program("append nil L L.\n"
                      "append (cons H T) L (cons H R) <- append T L R.")
    g, vs = parse_query("?- append (cons a nil) nil R.", p)
    assert vs == ["R"]


def test_query_arity_checked_against_program():
    p = parse_program("p a.")
    with pytest.raises(ParseError):
        parse_query("?- p a b.", p)


def test_clause_body_chain_is_left_associated():
    p = parse_program("h <- b1 <- b2.")
    c = p.clauses[0]
    # b2 => (b1 => h): textual order is execution order
    assert dump_sexpr(c) == "(imp (atom b2) (imp (atom b1) (atom h)))"


def test_implicit_quantifier_prefix_order():
    p = parse_program("q Y X <- r X Z.")
    dumped = dump_sexpr(p.clauses[0])
    assert dumped.startswith("(all Y (all X (all Z ")


def test_conjunction_and_true():
    p = parse_program("(h1 X, h2 X) <- src X.\nw <- true.")
    c = p.clauses[0]
    assert type(c) is All and type(c.body) is Imp
    assert type(c.body.concl) is And
    assert type(p.clauses[1].prem) is TrueF


def test_comments_and_mode_lines():
    p = parse_program("% comment line\n#mode f(+).\nf a. % trailing\n")
    assert p.modes == {"f": (IN,)}


def test_pretty_roundtrip():
    texts = [
        "p.",
        "of (app E1 E2) T2 <- of E1 (arr T1 T2) <- of E2 T1.",
        "all E. of (lam E) T <- (all x. of x T => of (E x) T).",
        "(h1 X, h2 X) <- src X.",
        "#mode plus(+,+,-).\nplus z Y Y.\nplus (s X) Y (s Z) <- plus X Y Z.",
        "w <- true.",
    ]
    for text in texts:
        p = parse_program(text)
        p2 = parse_program(p.pretty())
        assert len(p.clauses) == len(p2.clauses)
        for a, b in zip(p.clauses, p2.clauses):
            assert alpha_equal(a, b), text
        assert p.modes == p2.modes


def test_error_positions_are_one_based():
    with pytest.raises(ParseError) as e:
        parse_program("p a.\nq (b.")
    assert e.value.line == 2
    assert e.value.column >= 1
