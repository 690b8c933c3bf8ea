"""Background pipeline: second-order-binder target.

Kept for three-way differential testing. A clause compiles to a binder
over the atomic goal it will be resolved against; resolving an atomic
goal against the clause plugs the goal in for the binder, which here is
realized by carrying the goal atom into the clause-body walk (the binder
has no term-level status and is never unified).

Compilation, clause side:   a       ->  a == alpha
                            A => B  ->  C(B) & G(A)
                            all x.A ->  ex x. C(A)
Goal side is structural; goal implications wrap their hypothesis in a
fresh binder.
"""

from .syntax import (Atomic, Imp, All, Exists, And, TRUE, TrueF,
                     Lam, EqAtom, UnpreprocessedConnective, subst_map)
from .runtime import (Ctx, SearchConfig, drive, make_query_vars,
                      unify_atoms, hypothetically)

ALPHA = "alpha"


def compile_clause_l0(f):
    return Lam(ALPHA, _clause(f))


def _clause(f):
    t = type(f)
    if t is Atomic:
        return EqAtom(f.atom, ALPHA)
    if t is Imp:
        return And(_clause(f.concl), compile_goal_l0(f.prem))
    if t is All:
        return Exists(f.var, _clause(f.body))
    raise UnpreprocessedConnective(
        "conjunction/truth in clause position: %r" % (f,))


def compile_goal_l0(g):
    t = type(g)
    if t is Atomic:
        return g
    if t is Imp:
        return Imp(compile_clause_l0(g.prem), compile_goal_l0(g.concl))
    if t is All:
        return All(g.var, compile_goal_l0(g.body))
    if t is And:
        return And(compile_goal_l0(g.left), compile_goal_l0(g.right))
    if t is TrueF:
        return TRUE
    raise TypeError("compile_goal_l0: %r" % (g,))


def compile_program_l0(program):
    return [compile_clause_l0(c) for c in program.clauses]


def _goal(ctx, g, d):
    t = type(g)
    if t is Atomic:
        if not ctx.charge("g0_atm", d):
            return
        for lam in ctx.clause_seq():
            yield from _cbody(ctx, lam.body, g.atom, d + 1)
    elif t is Imp:
        if not ctx.charge("g0_imp", d):
            return
        yield from hypothetically(ctx, g.prem, _goal(ctx, g.concl, d + 1))
    elif t is All:
        if not ctx.charge("g0_all", d):
            return
        c = ctx.store.fresh_eigen()
        yield from _goal(ctx, subst_map({g.var: c}, g.body), d + 1)
    elif t is And:
        if not ctx.charge("g0_and", d):
            return
        for _ in _goal(ctx, g.left, d + 1):
            yield from _goal(ctx, g.right, d + 1)
    elif t is TrueF:
        if ctx.charge("g0_true", d):
            yield
    else:
        raise TypeError("solve_l0: unexpected goal %r" % (g,))


def _cbody(ctx, c, goal_atom, d):
    # goal_atom plays the role of the instantiated binder.
    t = type(c)
    if t is EqAtom:
        if not ctx.charge("r0_eq", d):
            return
        store = ctx.store
        cp = store.mark()
        if unify_atoms(store, c.atom, goal_atom):
            try:
                yield
            finally:
                store.undo(cp)
    elif t is And:
        if not ctx.charge("r0_and", d):
            return
        for _ in _cbody(ctx, c.left, goal_atom, d + 1):
            yield from _goal(ctx, c.right, d + 1)
    elif t is Exists:
        if not ctx.charge("r0_exists", d):
            return
        x = ctx.store.fresh_lvar()
        yield from _cbody(ctx, subst_map({c.var: x}, c.body), goal_atom, d + 1)
    else:
        raise TypeError("solve_l0: unexpected clause body %r" % (c,))


def solve_l0(clauses, goal, cfg=None, qvar_names=None):
    """Run a compiled goal against a compiled program."""
    cfg = cfg or SearchConfig()
    ctx = Ctx(clauses, cfg)
    if qvar_names is None:
        from .syntax import free_vars_ordered
        qvar_names = free_vars_ordered(goal)
    qvars = make_query_vars(qvar_names, ctx.store)
    g = subst_map(dict(qvars), goal)
    return drive(_goal(ctx, g, 1), ctx, qvars, cfg)
