"""Moded pipeline: matches on the way in, assignments on the way out.

Clause heads split their argument handling by mode: input positions land
in a match block (left-nested from true, argument order), output
positions in a trailing assignment block (right-nested, ending in true)
attached after the last body conjunct, inside the clause's existential
prefix. Atomic goals compile to a call whose output positions are fresh
variables checked against the expected terms once the call returns:

    of <in >out   becomes   ex z1. (of in z1  &  z1 ?= out & true)

Unmoded argument positions compile as inputs, which degenerates this
target to the main one with equality spelled as match.

The fused mode packages call / run residual / return / match-outputs as
one macro step, substituting the expected output terms directly into the
call; its depth accounting mirrors the small-step decomposition so the
two modes prune identically on successful branches.
"""

from .engine import Var, App
from .syntax import (Atom, Atomic, Imp, All, Exists, And, Mtch, Assg,
                     TRUE, TrueF, Call, OUT, PseudoClause, PseudoAtomicGoal,
                     UnpreprocessedConnective, MalformedClause, subst_map,
                     var_names)
from .runtime import (Ctx, SearchConfig, drive, make_query_vars,
                      unify_atoms, hypothetically)


def _names(base, n, avoid, start=1):
    names = []
    for i in range(start, start + n):
        name = "%s%d" % (base, i)
        while name in avoid:
            name += "'"
        names.append(name)
    return names


def compile_head_l2(acc, atom, avoid=()):
    """Head compilation: returns (pseudo clause, input matches, output
    assignments)."""
    xs = _names("x", len(atom.args), set(avoid) | set(acc))
    ins = TRUE
    outs = []
    for x, t, mark in zip(xs, atom.args, atom.marks):
        if mark == OUT:
            outs.append((x, t))
        else:
            ins = And(ins, Mtch(Var(x), t))
    oblock = TRUE
    for x, t in reversed(outs):
        oblock = And(Assg(Var(x), t), oblock)
    marks = atom.marks + (None,) * len(acc)
    head = Atom(atom.pred, [Var(x) for x in xs] + [Var(a) for a in acc], marks)
    return PseudoClause(xs, head), ins, oblock


class _ZCounter:
    """Fresh z-name supply, numbered per top-level clause or goal."""

    def __init__(self, avoid):
        self.n = 0
        self.avoid = set(avoid)

    def take(self):
        self.n += 1
        name = "z%d" % self.n
        while name in self.avoid:
            name += "'"
        return name


def compile_atomic_goal_l2(acc, atom, zc=None):
    """Atomic-goal compilation: returns (pseudo atomic goal, match block).

    Inputs pass straight into the call; each output position becomes an
    existential variable in the call with a match against the expected
    term, block ending in true.
    """
    if zc is None:
        zc = _ZCounter(var_names(atom))
    args = list(atom.args)
    outs = []
    for i, (t, mark) in enumerate(zip(atom.args, atom.marks)):
        if mark == OUT:
            z = zc.take()
            args[i] = Var(z)
            outs.append((z, t))
    matches = TRUE
    for z, t in reversed(outs):
        matches = And(Mtch(Var(z), t), matches)
    call_atom = Atom(atom.pred, args + list(acc), atom.marks +
                     (None,) * len(acc))
    return PseudoAtomicGoal([z for z, _ in outs], call_atom), matches


def fill_atomic_goal(ps, matches):
    f = Call(ps.atom, matches)
    for z in reversed(ps.prefix):
        f = Exists(z, f)
    return f


def compile_clause_l2(f, avoid=None, zc=None):
    """Clause compilation: returns (pseudo clause, residual, assignments)."""
    if avoid is None:
        avoid = var_names(f)
    if zc is None:
        zc = _ZCounter(avoid)
    t = type(f)
    if t is Atomic:
        return compile_head_l2([], f.atom, avoid)
    if t is Imp:
        ps, res, oblock = compile_clause_l2(f.concl, avoid, zc)
        return ps, And(res, compile_goal_l2(f.prem, avoid, zc)), oblock
    if t is All:
        ps, res, oblock = compile_clause_l2(f.body, avoid, zc)
        return ps, Exists(f.var, res), oblock
    raise UnpreprocessedConnective(
        "conjunction/truth in clause position: %r" % (f,))


def _attach(res, oblock):
    """Attach the assignment block after the last body conjunct, inside
    the existential prefix."""
    if type(res) is Exists:
        return Exists(res.var, _attach(res.body, oblock))
    return And(res, oblock)


def instantiate_hole_l2(ps, res, oblock):
    c = Imp(_attach(res, oblock), Atomic(ps.head))
    for v in reversed(ps.prefix):
        c = All(v, c)
    return c


def compile_goal_l2(g, avoid=None, zc=None):
    if avoid is None:
        avoid = var_names(g)
    if zc is None:
        zc = _ZCounter(avoid)
    t = type(g)
    if t is Atomic:
        return fill_atomic_goal(*compile_atomic_goal_l2([], g.atom, zc))
    if t is Imp:
        return Imp(instantiate_hole_l2(*compile_clause_l2(g.prem, avoid, zc)),
                   compile_goal_l2(g.concl, avoid, zc))
    if t is All:
        return All(g.var, compile_goal_l2(g.body, avoid, zc))
    if t is And:
        return And(compile_goal_l2(g.left, avoid, zc),
                   compile_goal_l2(g.right, avoid, zc))
    if t is TrueF:
        return TRUE
    raise TypeError("compile_goal_l2: %r" % (g,))


def compile_program_l2(program):
    return [instantiate_hole_l2(*compile_clause_l2(c))
            for c in program.clauses]


def decompose_clause2(cl):
    """Split a canonical clause into (prefix, locals, residual, assignment
    chain, head atom). Raises MalformedClause otherwise."""
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
    ys = []
    body = c.prem
    while type(body) is Exists:
        ys.append(body.var)
        body = body.body
    if type(body) is not And:
        raise MalformedClause("clause body lacks the assignment block")
    oblock = body.right
    o = oblock
    while type(o) is And:
        if type(o.left) is not Assg:
            raise MalformedClause("assignment block is malformed")
        o = o.right
    if type(o) is not TrueF:
        raise MalformedClause("assignment block does not end in true")
    return tuple(xs), tuple(ys), body.left, oblock, head


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------

def _goal(ctx, g, d, fused):
    t = type(g)
    if t is Call or t is Exists:
        if not ctx.charge("g2_f", d):
            return
        if fused:
            yield from _call_fused(ctx, g, d + 1)
        else:
            yield from _f(ctx, g, d + 1)
    elif t is Imp:
        if not ctx.charge("g2_imp", d):
            return
        yield from hypothetically(ctx, g.prem, _goal(ctx, g.concl, d + 1, fused))
    elif t is All:
        if not ctx.charge("g2_all", d):
            return
        c = ctx.store.fresh_eigen()
        yield from _goal(ctx, subst_map({g.var: c}, g.body), d + 1, fused)
    elif t is And:
        if not ctx.charge("g2_and", d):
            return
        for _ in _goal(ctx, g.left, d + 1, fused):
            yield from _goal(ctx, g.right, d + 1, fused)
    elif t is TrueF:
        if ctx.charge("g2_true", d):
            yield
    else:
        raise TypeError("solve_l2: unexpected goal %r" % (g,))


def _f(ctx, f, d):
    t = type(f)
    if t is Exists:
        if not ctx.charge("a2_exists", d):
            return
        x = ctx.store.fresh_lvar()
        yield from _f(ctx, subst_map({f.var: x}, f.body), d + 1)
    elif t is Call:
        if not ctx.charge("a2_atm", d):
            return
        for cl in ctx.clause_seq():
            for _ in _entail(ctx, cl, f.atom, d + 1):
                yield from _matches(ctx, f.matches, d + 1)
    else:
        raise TypeError("solve_l2: unexpected atomic goal %r" % (f,))


def _matches(ctx, m, d):
    t = type(m)
    if t is TrueF:
        if ctx.charge("m2_true", d):
            yield
    elif t is And and type(m.left) is Mtch:
        if not ctx.charge("m2_mtch", d):
            return
        store = ctx.store
        cp = store.mark()
        if store.match_lhs(m.left.lhs, m.left.rhs):
            try:
                yield from _matches(ctx, m.right, d + 1)
            finally:
                store.undo(cp)
    else:
        raise TypeError("solve_l2: malformed match block %r" % (m,))


def _entail(ctx, cl, atom, d):
    t = type(cl)
    if t is All:
        if not ctx.charge("c2_all", d):
            return
        x = ctx.store.fresh_lvar()
        yield from _entail(ctx, subst_map({cl.var: x}, cl.body), atom, d + 1)
    elif t is Imp:
        if not ctx.charge("c2_imp", d):
            return
        if type(cl.concl) is not Atomic:
            raise MalformedClause("clause head is not atomic")
        store = ctx.store
        cp = store.mark()
        if unify_atoms(store, cl.concl.atom, atom):
            try:
                yield from _residual(ctx, cl.prem, d + 1, False)
            finally:
                store.undo(cp)
    else:
        raise MalformedClause("unexpected clause node %r" % (cl,))


def _residual(ctx, r, d, fused):
    t = type(r)
    if t is TrueF:
        if ctx.charge("r2_true", d):
            yield
    elif t is Mtch:
        if not ctx.charge("r2_mtch", d):
            return
        store = ctx.store
        cp = store.mark()
        if store.match_lhs(r.lhs, r.rhs):
            try:
                yield
            finally:
                store.undo(cp)
    elif t is Assg:
        if not ctx.charge("r2_assg", d):
            return
        store = ctx.store
        cp = store.mark()
        if store.assign(r.lhs, r.rhs):
            try:
                yield
            finally:
                store.undo(cp)
    elif t is And:
        if not ctx.charge("r2_and", d):
            return
        for _ in _residual(ctx, r.left, d + 1, fused):
            yield from _rside(ctx, r.right, d + 1, fused)
    elif t is Exists:
        if not ctx.charge("r2_exists", d):
            return
        x = ctx.store.fresh_lvar()
        yield from _residual(ctx, subst_map({r.var: x}, r.body), d + 1, fused)
    else:
        yield from _rside(ctx, r, d, fused)


def _rside(ctx, x, d, fused):
    # Right-hand conjuncts are goal invocations or further residual. An
    # existential here is a compiled atomic call, not an instantiation
    # request: clause compilation only wraps existentials around the
    # residual root.
    if type(x) in (Atomic, Imp, All, Call, Exists):
        yield from _goal(ctx, x, d, fused)
    else:
        yield from _residual(ctx, x, d, fused)


def _call_fused(ctx, f, d):
    """Macro execution: call with inputs, run the residual, carry out the
    return assignments against the caller's expected output terms.

    Charged to mirror the small-step decomposition: the existential
    openings, the call step, the match block and one clause-entry per
    quantifier, so both modes prune at the same depths.
    """
    zs = []
    while type(f) is Exists:
        zs.append(f.var)
        f = f.body
    if type(f) is not Call:
        raise TypeError("solve_l2: unexpected atomic goal %r" % (f,))
    k = len(zs)
    # Carried-out output matches: substitute expected terms into the call.
    outmap = {}
    m = f.matches
    while type(m) is And:
        if type(m.left) is not Mtch or type(m.left.lhs) is not Var:
            raise MalformedClause("malformed match block in call")
        outmap[m.left.lhs.name] = m.left.rhs
        m = m.right
    if set(outmap) != set(zs):
        raise MalformedClause("call variables and match block disagree")
    atom = f.atom
    if outmap:
        atom = Atom(atom.pred,
                    [subst_map(outmap, a) for a in atom.args], atom.marks)
    if not ctx.bump(d + k):  # a2_exists* then a2_atm
        return
    ctx.store.counters.rule("a2_atm'")
    d_atm = d + k
    for cl in ctx.clause_seq():
        xs, ys, res, oblock, head = decompose_clause2(cl)
        if head.pred != atom.pred or len(xs) != len(atom.args):
            continue
        n = len(xs)
        if not ctx.bump(d_atm + n + 1):  # c2_all* then c2_imp
            continue
        ctx.store.counters.rule("g2_atm'")
        m0 = dict(zip(xs, atom.args))
        ymap = {y: ctx.store.fresh_lvar() for y in ys}
        m0.update(ymap)
        if not ctx.bump(d_atm + n + 2 + len(ys)):  # r2_exists*, r2_and
            continue
        base = d_atm + n + len(ys) + 3
        res_i = subst_map(m0, res)
        ob_i = subst_map(m0, oblock)
        for _ in _residual(ctx, res_i, base, True):
            for _ in _residual(ctx, ob_i, base, True):
                # The caller-side match block was carried out by the
                # substitution; account for its depth anyway.
                if ctx.bump(d_atm + 1 + k):
                    yield


def solve_l2(clauses, goal, cfg=None, qvar_names=None):
    cfg = cfg or SearchConfig()
    ctx = Ctx(clauses, cfg)
    if cfg.fused:
        for cl in clauses:
            decompose_clause2(cl)
    if qvar_names is None:
        from .syntax import free_vars_ordered
        qvar_names = free_vars_ordered(goal)
    qvars = make_query_vars(qvar_names, ctx.store)
    g = subst_map(dict(qvars), goal)
    return drive(_goal(ctx, g, 1, cfg.fused), ctx, qvars, cfg)


def solve_l2_fused(clauses, goal, cfg=None, qvar_names=None):
    cfg = cfg or SearchConfig()
    cfg.fused = True
    return solve_l2(clauses, goal, cfg, qvar_names)


# ---------------------------------------------------------------------------
# Well-modedness analysis
# ---------------------------------------------------------------------------

class ModeReport:
    def __init__(self, well_moded, violations, note=None):
        self.well_moded = well_moded
        self.violations = violations  # list of (clause_index, message)
        self.note = note


def _term_vars(t, acc):
    tt = type(t)
    if tt is Var:
        acc.add(t.name)
    elif tt is App:
        _term_vars(t.fn, acc)
        _term_vars(t.arg, acc)
    return acc


def _atom_io_vars(atom):
    ins, outs = set(), set()
    for t, mark in zip(atom.args, atom.marks):
        _term_vars(t, outs if mark == OUT else ins)
    return ins, outs


def check_well_moded(program, strict=False):
    """Left-to-right groundness dataflow over each clause.

    Head input variables start ground; every body goal needs its input
    terms ground and then grounds its output variables; head output terms
    must be ground at the end. Hypothetical clauses are checked
    recursively as clauses (with the enclosing ground set); universal
    eigenvariables count as ground constants. Unmoded predicates are
    treated as all-input, or flagged when strict. A program with no mode
    declarations at all passes vacuously.
    """
    if not program.modes:
        return ModeReport(True, [], note="no modes declared")
    violations = []
    for ix, cl in enumerate(program.clauses, 1):
        _check_clause(cl, set(), ix, violations, program.modes, strict)
    return ModeReport(not violations, violations)


def _check_clause(cl, outer_ground, ix, violations, modes, strict):
    c = cl
    while type(c) is All:
        c = c.body
    goals = []
    while type(c) is Imp:
        goals.append(c.prem)
        c = c.concl
    goals.reverse()  # execution order: innermost antecedent first
    if type(c) is not Atomic:
        violations.append((ix, "clause has no atomic head"))
        return
    head = c.atom
    if strict and head.pred not in modes:
        violations.append((ix, "predicate %s has no mode" % head.pred))
    head_in, head_out = _atom_io_vars(head)
    ground = set(outer_ground) | head_in
    for g in goals:
        _check_goal(g, ground, ix, violations, modes, strict)
    missing = head_out - ground
    for v in sorted(missing):
        violations.append(
            (ix, "head output variable %s not ground at clause end" % v))


def _check_goal(g, ground, ix, violations, modes, strict):
    t = type(g)
    if t is Atomic:
        a = g.atom
        if strict and a.pred not in modes:
            violations.append((ix, "predicate %s has no mode" % a.pred))
        ins, outs = _atom_io_vars(a)
        for v in sorted(ins - ground):
            violations.append(
                (ix, "input variable %s of goal %s not ground"
                 % (v, a.pred)))
        ground |= outs
    elif t is And:
        _check_goal(g.left, ground, ix, violations, modes, strict)
        _check_goal(g.right, ground, ix, violations, modes, strict)
    elif t is TrueF:
        pass
    elif t is All:
        # The eigenvariable is a ground constant inside the subgoal only;
        # output groundings of the subgoal do flow out (answers cannot
        # mention the eigenvariable by the scope discipline).
        added = g.var not in ground
        if added:
            ground.add(g.var)
        _check_goal(g.body, ground, ix, violations, modes, strict)
        if added:
            ground.discard(g.var)
    elif t is Imp:
        _check_clause(g.prem, ground, ix, violations, modes, strict)
        _check_goal(g.concl, ground, ix, violations, modes, strict)
    else:
        raise TypeError("check_well_moded: unexpected goal %r" % (g,))
