"""Shared test utilities: independent oracles and random AST generators.

The Robinson unifier here is deliberately naive (substitution maps, no
trail, no mutation) so it shares nothing with the engine it checks.
"""

import random

from lpc.engine import Var, Const, App, LVar, Eigen
from lpc.syntax import Atom, Atomic, Imp, All, And, TRUE, dump_sexpr


# ---------------------------------------------------------------------------
# Robinson unification oracle (substitution-based, engine-independent)
# ---------------------------------------------------------------------------

def walk(t, s):
    while type(t) is LVar and t.id in s:
        t = s[t.id]
    return t


def occurs(vid, t, s):
    t = walk(t, s)
    if type(t) is LVar:
        return t.id == vid
    if type(t) is App:
        return occurs(vid, t.fn, s) or occurs(vid, t.arg, s)
    return False


def robinson(t1, t2, s=None):
    """Most general unifier as a dict lvar-id -> term, or None."""
    if s is None:
        s = {}
    t1 = walk(t1, s)
    t2 = walk(t2, s)
    if type(t1) is LVar and type(t2) is LVar and t1.id == t2.id:
        return s
    if type(t1) is LVar:
        if occurs(t1.id, t2, s):
            return None
        s2 = dict(s)
        s2[t1.id] = t2
        return s2
    if type(t2) is LVar:
        return robinson(t2, t1, s)
    if type(t1) is not type(t2):
        return None
    if type(t1) is Const or type(t1) is Eigen:
        return s if t1.name == t2.name else None
    if type(t1) is Var:
        return s if t1.name == t2.name else None
    s = robinson(t1.fn, t2.fn, s)
    if s is None:
        return None
    return robinson(t1.arg, t2.arg, s)


def apply_subst(s, t):
    t = walk(t, s)
    if type(t) is App:
        return App(apply_subst(s, t.fn), apply_subst(s, t.arg))
    return t


def variant(t1, t2, m=None):
    """True iff t1 and t2 are equal up to a bijection on logic variables."""
    if m is None:
        m = ({}, {})
    if type(t1) is not type(t2):
        return False
    if type(t1) is LVar:
        f, b = m
        if t1.id in f:
            return f[t1.id] == t2.id
        if t2.id in b:
            return False
        f[t1.id] = t2.id
        b[t2.id] = t1.id
        return True
    if type(t1) is App:
        return variant(t1.fn, t2.fn, m) and variant(t1.arg, t2.arg, m)
    if type(t1) is Var or type(t1) is Const or type(t1) is Eigen:
        return t1.name == t2.name
    return False


# ---------------------------------------------------------------------------
# Random generators
# ---------------------------------------------------------------------------

CONSTS = ("a", "b", "c")
FUNCS = (("f", 1), ("g", 2), ("s", 1))


def gen_runtime_term(rng, pool, depth=4):
    """Random runtime term over a pool of shared logic variables."""
    roll = rng.random()
    if depth == 0 or roll < 0.35:
        if rng.random() < 0.5 and pool:
            return rng.choice(pool)
        return Const(rng.choice(CONSTS))
    name, arity = rng.choice(FUNCS)
    t = Const(name)
    for _ in range(arity):
        t = App(t, gen_runtime_term(rng, pool, depth - 1))
    return t


def gen_ground_term(rng, depth=2):
    if depth == 0 or rng.random() < 0.4:
        return Const(rng.choice(CONSTS))
    name, arity = rng.choice(FUNCS)
    t = Const(name)
    for _ in range(arity):
        t = App(t, gen_ground_term(rng, depth - 1))
    return t


def gen_syn_term(rng, vars_, depth=2):
    """Random compile-time term over syntactic variable names."""
    roll = rng.random()
    if depth == 0 or roll < 0.4:
        if vars_ and rng.random() < 0.5:
            return Var(rng.choice(vars_))
        return Const(rng.choice(CONSTS))
    name, arity = rng.choice(FUNCS)
    t = Const(name)
    for _ in range(arity):
        t = App(t, gen_syn_term(rng, vars_, depth - 1))
    return t


SIG = {"p": 1, "q": 2, "r": 0}


def gen_atom(rng, vars_):
    pred = rng.choice(list(SIG))
    return Atom(pred, [gen_syn_term(rng, vars_, 2)
                       for _ in range(SIG[pred])])


def gen_goal(rng, vars_, depth=2, extended=False):
    roll = rng.random()
    if depth == 0 or roll < 0.45:
        return Atomic(gen_atom(rng, vars_))
    if roll < 0.6:
        return Imp(gen_clause(rng, vars_, depth - 1, extended),
                   gen_goal(rng, vars_, depth - 1, extended))
    if roll < 0.75:
        v = "U%d" % rng.randint(0, 2)
        return All(v, gen_goal(rng, vars_ + [v], depth - 1, extended))
    if extended and roll < 0.9:
        return And(gen_goal(rng, vars_, depth - 1, extended),
                   gen_goal(rng, vars_, depth - 1, extended))
    if extended:
        return TRUE
    return Atomic(gen_atom(rng, vars_))


def gen_clause(rng, vars_, depth=2, extended=False):
    roll = rng.random()
    if depth == 0 or roll < 0.4:
        return Atomic(gen_atom(rng, vars_))
    if roll < 0.6:
        return Imp(gen_goal(rng, vars_, depth - 1, extended),
                   gen_clause(rng, vars_, depth - 1, extended))
    if roll < 0.8 or not extended:
        v = "V%d" % rng.randint(0, 2)
        return All(v, gen_clause(rng, vars_ + [v], depth - 1, extended))
    if roll < 0.92:
        return And(gen_clause(rng, vars_, depth - 1, extended),
                   gen_clause(rng, vars_, depth - 1, extended))
    return TRUE


def close_clause(cl):
    from lpc.syntax import free_vars_ordered
    for name in reversed(free_vars_ordered(cl)):
        cl = All(name, cl)
    return cl


def same_dump(a, b):
    return dump_sexpr(a) == dump_sexpr(b)
