"""Reference interpreter for the source language.

Implements uniform provability and immediate entailment directly over
source formulas: right rules decompose the goal until it is atomic, then
a program formula is focused on and decomposed by the left rules.
Universal goals introduce fresh scoped constants; focused universals
instantiate lazily with logical variables. The extended connectives
(goal conjunction and truth, and their clause-position left rules) are
supported so unpreprocessed programs can serve as the semantic baseline.
"""

from .syntax import (Atomic, Imp, All, And, TrueF, subst_map)
from .runtime import (Ctx, SearchConfig, drive, make_query_vars,
                      unify_atoms, hypothetically)


def _goal(ctx, g, d):
    t = type(g)
    if t is Atomic:
        if not ctx.charge("u_atm", d):
            return
        for cl in ctx.clause_seq():
            yield from _focus(ctx, cl, g.atom, d + 1)
    elif t is Imp:
        if not ctx.charge("u_imp", d):
            return
        yield from hypothetically(ctx, g.prem, _goal(ctx, g.concl, d + 1))
    elif t is All:
        if not ctx.charge("u_all", d):
            return
        c = ctx.store.fresh_eigen()
        yield from _goal(ctx, subst_map({g.var: c}, g.body), d + 1)
    elif t is And:
        if not ctx.charge("u_and", d):
            return
        for _ in _goal(ctx, g.left, d + 1):
            yield from _goal(ctx, g.right, d + 1)
    elif t is TrueF:
        if ctx.charge("u_true", d):
            yield
    else:
        raise TypeError("interp: unexpected goal %r" % (g,))


def _focus(ctx, cl, atom, d):
    # The goal is atomic here by construction; this is the uniformity
    # property (no focusing while the goal retains structure).
    t = type(cl)
    if t is Atomic:
        if not ctx.charge("i_atm", d):
            return
        store = ctx.store
        cp = store.mark()
        if unify_atoms(store, cl.atom, atom):
            try:
                yield
            finally:
                store.undo(cp)
    elif t is Imp:
        # Entailment premise first, then the body goal, left to right.
        if not ctx.charge("i_imp", d):
            return
        for _ in _focus(ctx, cl.concl, atom, d + 1):
            yield from _goal(ctx, cl.prem, d + 1)
    elif t is All:
        if not ctx.charge("i_all", d):
            return
        x = ctx.store.fresh_lvar()
        yield from _focus(ctx, subst_map({cl.var: x}, cl.body), atom, d + 1)
    elif t is And:
        # Extended input: focusing a conjunction picks either conjunct.
        if ctx.charge("i_and_l", d):
            yield from _focus(ctx, cl.left, atom, d + 1)
        if ctx.charge("i_and_r", d):
            yield from _focus(ctx, cl.right, atom, d + 1)
    elif t is TrueF:
        return  # no left rule for truth
    else:
        raise TypeError("interp: unexpected clause %r" % (cl,))


def solve_uniform(program, goal, cfg=None, qvar_names=None):
    """Run a query against a source program; returns a RunResult.

    `goal` is a source formula whose free variables (qvar_names, in
    order) become the query variables of the reported solutions.
    """
    cfg = cfg or SearchConfig()
    ctx = Ctx(program.clauses, cfg)
    if qvar_names is None:
        from .syntax import free_vars_ordered
        qvar_names = free_vars_ordered(goal)
    qvars = make_query_vars(qvar_names, ctx.store)
    g = subst_map(dict(qvars), goal)
    return drive(_goal(ctx, g, 1), ctx, qvars, cfg)


def immediate_entail(program, clause, atom, cfg=None):
    """Direct access to the focused judgment (used by the lemma checks)."""
    cfg = cfg or SearchConfig()
    ctx = Ctx(program.clauses if program is not None else [], cfg)
    return drive(_focus(ctx, clause, atom, 1), ctx, {}, cfg)
