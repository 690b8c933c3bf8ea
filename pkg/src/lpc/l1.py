"""Main pipeline: fully logical target.

A clause compiles to a universally quantified implication whose head is
the predicate applied to distinct fresh variables and whose body is a
residual: the equality block seeding those variables, then the compiled
body goals, all under existentials for the source clause variables.

Head compilation produces a pseudo clause (prefix + head around a hole)
and the equality block; hole filling captures the prefix variables in
the residual on purpose. Generated head variables are named x1..xn in
argument order, skipping any name already used in the clause.

Two execution modes share the residual walker: the small-step mode
applies the nine rules one node at a time; the fused mode replaces
clause selection, prefix instantiation and head decomposition with the
backchaining macro-rule, substituting the goal's arguments directly into
the residual. The macro is charged as (1 + arity + 1) small steps so
depth-bounded runs align between the modes.
"""

from .engine import Var
from .syntax import (Atom, Atomic, Imp, All, Exists, And, Eq, TRUE, TrueF,
                     PseudoClause, UnpreprocessedConnective, MalformedClause,
                     subst_map, var_names, substitute)
from .runtime import (Ctx, SearchConfig, drive, make_query_vars,
                      unify_atoms, hypothetically)


def _head_names(n, avoid):
    names = []
    for i in range(1, n + 1):
        name = "x%d" % i
        while name in avoid:
            name += "'"
        names.append(name)
    return names


def compile_head_l1(acc, atom, avoid=()):
    """Head compilation: returns the pseudo clause and the equality block.

    acc holds variable names for argument positions beyond those of atom
    (empty for a full head). The equality block is left-nested from true,
    one equality per argument in order.
    """
    xs = _head_names(len(atom.args), set(avoid) | set(acc))
    eqs = TRUE
    for x, t in zip(xs, atom.args):
        eqs = And(eqs, Eq(Var(x), t))
    marks = atom.marks + (None,) * len(acc)
    head = Atom(atom.pred, [Var(x) for x in xs] + [Var(a) for a in acc], marks)
    return PseudoClause(xs, head), eqs


def compile_clause_l1(f, avoid=None):
    """Clause compilation: returns (pseudo clause, residual)."""
    if avoid is None:
        avoid = var_names(f)
    t = type(f)
    if t is Atomic:
        return compile_head_l1([], f.atom, avoid)
    if t is Imp:
        ps, res = compile_clause_l1(f.concl, avoid)
        return ps, And(res, compile_goal_l1(f.prem, avoid))
    if t is All:
        ps, res = compile_clause_l1(f.body, avoid)
        return ps, Exists(f.var, res)
    raise UnpreprocessedConnective(
        "conjunction/truth in clause position: %r" % (f,))


def instantiate_hole(ps, res):
    """Plug the residual into the pseudo clause, capturing prefix vars."""
    c = Imp(res, Atomic(ps.head))
    for v in reversed(ps.prefix):
        c = All(v, c)
    return c


def compile_goal_l1(g, avoid=None):
    if avoid is None:
        avoid = var_names(g)
    t = type(g)
    if t is Atomic:
        return g
    if t is Imp:
        return Imp(instantiate_hole(*compile_clause_l1(g.prem, avoid)),
                   compile_goal_l1(g.concl, avoid))
    if t is All:
        return All(g.var, compile_goal_l1(g.body, avoid))
    if t is And:
        return And(compile_goal_l1(g.left, avoid),
                   compile_goal_l1(g.right, avoid))
    if t is TrueF:
        return TRUE
    raise TypeError("compile_goal_l1: %r" % (g,))


def compile_program_l1(program):
    return [instantiate_hole(*compile_clause_l1(c)) for c in program.clauses]


def decompose_clause(cl):
    """Split a canonical clause into (prefix names, residual, head atom).

    Raises MalformedClause unless the head is the predicate applied to
    exactly the prefix variables, pairwise distinct, in order.
    """
    xs = []
    c = cl
    while type(c) is All:
        xs.append(c.var)
        c = c.body
    if type(c) is not Imp or type(c.concl) is not Atomic:
        raise MalformedClause("clause is not a quantified implication")
    head = c.concl.atom
    names = []
    for a in head.args:
        if type(a) is not Var:
            raise MalformedClause("head argument is not a variable")
        names.append(a.name)
    if names != xs or len(set(xs)) != len(xs):
        raise MalformedClause("head variables do not match the prefix")
    return tuple(xs), c.prem, head


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------

def _goal(ctx, g, d, fused):
    t = type(g)
    if t is Atomic:
        if fused:
            yield from _backchain(ctx, g.atom, d)
        else:
            if not ctx.charge("g1_atm", d):
                return
            for cl in ctx.clause_seq():
                yield from _entail(ctx, cl, g.atom, d + 1, fused)
    elif t is Imp:
        if not ctx.charge("g1_imp", d):
            return
        yield from hypothetically(ctx, g.prem, _goal(ctx, g.concl, d + 1, fused))
    elif t is All:
        if not ctx.charge("g1_all", d):
            return
        c = ctx.store.fresh_eigen()
        yield from _goal(ctx, subst_map({g.var: c}, g.body), d + 1, fused)
    elif t is And:
        if not ctx.charge("g1_and", d):
            return
        for _ in _goal(ctx, g.left, d + 1, fused):
            yield from _goal(ctx, g.right, d + 1, fused)
    elif t is TrueF:
        if ctx.charge("g1_true", d):
            yield
    else:
        raise TypeError("solve_l1: unexpected goal %r" % (g,))


def _entail(ctx, cl, atom, d, fused):
    t = type(cl)
    if t is All:
        if not ctx.charge("c1_all", d):
            return
        x = ctx.store.fresh_lvar()
        yield from _entail(ctx, subst_map({cl.var: x}, cl.body), atom, d + 1,
                           fused)
    elif t is Imp:
        if not ctx.charge("c1_imp", d):
            return
        if type(cl.concl) is not Atomic:
            raise MalformedClause("clause head is not atomic")
        store = ctx.store
        cp = store.mark()
        if unify_atoms(store, cl.concl.atom, atom):
            try:
                yield from _residual(ctx, cl.prem, d + 1, fused)
            finally:
                store.undo(cp)
    else:
        raise MalformedClause("unexpected clause node %r" % (cl,))


def _backchain(ctx, atom, d):
    """Macro-rule: pick a matching clause and run its instantiated residual.

    Charged as one g1_atm, arity c1_all steps and one c1_imp so fused and
    small-step runs prune at the same depths.
    """
    for cl in ctx.clause_seq():
        xs, res, head = decompose_clause(cl)
        if head.pred != atom.pred:
            continue
        if len(xs) != len(atom.args):
            continue
        if not ctx.bump(d + len(xs) + 1):
            continue
        ctx.store.counters.rule("g1_atm'")
        inst = subst_map(dict(zip(xs, atom.args)), res) if xs else res
        yield from _residual(ctx, inst, d + len(xs) + 2, True)


def _residual(ctx, r, d, fused):
    t = type(r)
    if t is TrueF:
        if ctx.charge("r1_true", d):
            yield
    elif t is Eq:
        if not ctx.charge("r1_eq", d):
            return
        store = ctx.store
        cp = store.mark()
        if store.unify(r.lhs, r.rhs):
            try:
                yield
            finally:
                store.undo(cp)
    elif t is And:
        if not ctx.charge("r1_and", d):
            return
        for _ in _residual(ctx, r.left, d + 1, fused):
            yield from _rside(ctx, r.right, d + 1, fused)
    elif t is Exists:
        if not ctx.charge("r1_exists", d):
            return
        x = ctx.store.fresh_lvar()
        yield from _residual(ctx, subst_map({r.var: x}, r.body), d + 1, fused)
    else:
        yield from _rside(ctx, r, d, fused)


def _rside(ctx, x, d, fused):
    # Right-hand conjuncts are goal invocations or further residual.
    if type(x) in (Atomic, Imp, All):
        yield from _goal(ctx, x, d, fused)
    else:
        yield from _residual(ctx, x, d, fused)


def solve_l1(clauses, goal, cfg=None, qvar_names=None):
    cfg = cfg or SearchConfig()
    ctx = Ctx(clauses, cfg)
    if cfg.fused:
        for cl in clauses:
            decompose_clause(cl)  # surface MalformedClause before running
    if qvar_names is None:
        from .syntax import free_vars_ordered
        qvar_names = free_vars_ordered(goal)
    qvars = make_query_vars(qvar_names, ctx.store)
    g = subst_map(dict(qvars), goal)
    return drive(_goal(ctx, g, 1, cfg.fused), ctx, qvars, cfg)


def solve_l1_fused(clauses, goal, cfg=None, qvar_names=None):
    cfg = cfg or SearchConfig()
    cfg.fused = True
    return solve_l1(clauses, goal, cfg, qvar_names)


# ---------------------------------------------------------------------------
# Optimizer
# ---------------------------------------------------------------------------

def _flatten_spine(r):
    items = []
    while type(r) is And:
        items.append(r.right)
        r = r.left
    items.append(r)
    items.reverse()
    return items


def _rebuild_spine(items):
    if not items:
        return TRUE
    out = items[0]
    for it in items[1:]:
        out = And(out, it)
    return out


def _optimize_embedded(x):
    """Recursively optimize hypothetical clauses inside goal positions."""
    t = type(x)
    if t is Imp:  # goal implication: premise is an embedded clause
        return Imp(optimize_l1(x.prem), _optimize_embedded(x.concl))
    if t is All:
        return All(x.var, _optimize_embedded(x.body))
    if t is Exists:
        return Exists(x.var, _optimize_embedded(x.body))
    if t is And:
        return And(_optimize_embedded(x.left), _optimize_embedded(x.right))
    return x


def optimize_l1(cl):
    """Drop unit constraints and eliminate head-to-existential aliases.

    A constraint x == y with x a head variable and y an existential that
    is the target of exactly one such constraint is removed, y replaced
    by x and its quantifier dropped. Substitution is capture avoiding, so
    occurrences shadowed inside embedded hypothetical clauses are never
    rewritten into their heads. Leading truth conjuncts are removed; an
    emptied body collapses back to true. Off by default.
    """
    xs, res, head = decompose_clause(cl)
    res = _optimize_embedded(res)

    ys = []
    r = res
    while type(r) is Exists:
        ys.append(r.var)
        r = r.body
    items = _flatten_spine(r)

    head_vars = set(xs)
    changed = True
    while changed:
        changed = False
        # Count head-var == existential-var constraints per target var.
        targets = {}
        for it in items:
            if (type(it) is Eq and type(it.lhs) is Var and
                    type(it.rhs) is Var and it.lhs.name in head_vars and
                    it.rhs.name in ys and it.rhs.name not in head_vars):
                targets.setdefault(it.rhs.name, []).append(it)
        for y, eqs in targets.items():
            if len(eqs) != 1:
                continue  # multiple constraints target y: keep them all
            eq = eqs[0]
            items = [substitute(eq.lhs, y, it)
                     for it in items if it is not eq]
            ys.remove(y)
            changed = True
            break

    items = [it for it in items if type(it) is not TrueF]
    body = _rebuild_spine(items)
    for y in reversed(ys):
        body = Exists(y, body)
    return instantiate_hole(PseudoClause(xs, head), body)


def optimize_program_l1(clauses):
    return [optimize_l1(c) for c in clauses]
