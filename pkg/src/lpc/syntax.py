"""Abstract syntax shared by the source language and all three targets.

Formula-level nodes are structural and deliberately shared across the
source language, the compiled goal/clause/residual layers, and the match
blocks of the moded target: an `Imp` is a clause implication or a goal
implication depending on where it sits, an `And` chains residual
conjuncts as well as extended goal conjunctions, and `TRUE` serves both
as the trivial residual constraint and as the trivial goal. The solvers
always know which judgment they are in, so no per-layer node classes are
needed; the compilers only ever build well-shaped forms.

All values here are immutable after construction and safe to share
between concurrent runs.
"""

from .engine import Var, Const, App, LVar, Eigen, deref

# Argument mode marks.
IN = "+"
OUT = "-"
UNMODED = None


class Atom:
    """Predicate applied to terms, with one mode mark per argument."""

    __slots__ = ("pred", "args", "marks")

    def __init__(self, pred, args=(), marks=None):
        self.pred = pred
        self.args = tuple(args)
        if marks is None:
            marks = (UNMODED,) * len(self.args)
        self.marks = tuple(marks)

    def __repr__(self):
        return "Atom(%s/%d)" % (self.pred, len(self.args))


class Form:
    __slots__ = ()


class Atomic(Form):
    """Atom in formula position (source clause/goal, compiled goal, head)."""

    __slots__ = ("atom",)

    def __init__(self, atom):
        self.atom = atom


class Imp(Form):
    """prem => concl.  In clause position prem is the body goal; in goal
    position prem is a hypothetical clause; in compiled clauses prem is
    the residual and concl the head."""

    __slots__ = ("prem", "concl")

    def __init__(self, prem, concl):
        self.prem = prem
        self.concl = concl


class All(Form):
    __slots__ = ("var", "body")

    def __init__(self, var, body):
        self.var = var
        self.body = body


class Exists(Form):
    __slots__ = ("var", "body")

    def __init__(self, var, body):
        self.var = var
        self.body = body


class And(Form):
    __slots__ = ("left", "right")

    def __init__(self, left, right):
        self.left = left
        self.right = right


class TrueF(Form):
    __slots__ = ()

    def __repr__(self):
        return "TRUE"


TRUE = TrueF()


class Eq(Form):
    """Equality constraint between two terms (first target residuals)."""

    __slots__ = ("lhs", "rhs")

    def __init__(self, lhs, rhs):
        self.lhs = lhs
        self.rhs = rhs


class Mtch(Form):
    """Match constraint: left side is nominally ground at run time."""

    __slots__ = ("lhs", "rhs")

    def __init__(self, lhs, rhs):
        self.lhs = lhs
        self.rhs = rhs


class Assg(Form):
    """Assignment constraint: left side is nominally unbound at run time."""

    __slots__ = ("lhs", "rhs")

    def __init__(self, lhs, rhs):
        self.lhs = lhs
        self.rhs = rhs


class Lam(Form):
    """Second-order binder of the background target: abstracts the atomic
    goal a clause is resolved against. Quarantined to that target."""

    __slots__ = ("alpha", "body")

    def __init__(self, alpha, body):
        self.alpha = alpha
        self.body = body


class EqAtom(Form):
    """Head leaf of the background target: head atom matched against the
    goal the enclosing Lam was applied to."""

    __slots__ = ("atom", "alpha")

    def __init__(self, atom, alpha):
        self.atom = atom
        self.alpha = alpha


class Call(Form):
    """Moded-target atomic call: atom whose output positions hold fresh
    variables, paired with the match block for the expected outputs."""

    __slots__ = ("atom", "matches")

    def __init__(self, atom, matches):
        self.atom = atom
        self.matches = matches


class PseudoClause:
    """Clause skeleton: quantifier prefix and head, with a hole where the
    residual goes. Hole filling captures prefix variables on purpose."""

    __slots__ = ("prefix", "head")

    def __init__(self, prefix, head):
        self.prefix = tuple(prefix)
        self.head = head  # Atom over distinct prefix variables


class PseudoAtomicGoal:
    """Atomic-call skeleton: existential prefix over the output slots and
    the call atom, with a hole where the match block goes."""

    __slots__ = ("prefix", "atom")

    def __init__(self, prefix, atom):
        self.prefix = tuple(prefix)
        self.atom = atom


class UnpreprocessedConnective(Exception):
    """Conjunction or truth found in clause position during compilation."""


class MalformedClause(Exception):
    """Compiled clause not in the canonical quantified-implication shape."""


# ---------------------------------------------------------------------------
# Free variables and substitution
# ---------------------------------------------------------------------------

def free_vars(x, acc=None):
    """Set of free syntactic variable names in a term or formula."""
    if acc is None:
        acc = set()
    t = type(x)
    if t is Var:
        acc.add(x.name)
    elif t is App:
        free_vars(x.fn, acc)
        free_vars(x.arg, acc)
    elif t is Atom:
        for a in x.args:
            free_vars(a, acc)
    elif t is Atomic:
        free_vars(x.atom, acc)
    elif t is Imp:
        free_vars(x.prem, acc)
        free_vars(x.concl, acc)
    elif t is And:
        free_vars(x.left, acc)
        free_vars(x.right, acc)
    elif t in (All, Exists):
        inner = free_vars(x.body, set())
        inner.discard(x.var)
        acc |= inner
    elif t in (Eq, Mtch, Assg):
        free_vars(x.lhs, acc)
        free_vars(x.rhs, acc)
    elif t is Lam:
        free_vars(x.body, acc)
    elif t is EqAtom:
        free_vars(x.atom, acc)
    elif t is Call:
        free_vars(x.atom, acc)
        free_vars(x.matches, acc)
    return acc


def free_vars_ordered(x, seen=None, out=None):
    """Free variable names in first-occurrence order (left to right)."""
    if seen is None:
        seen, out = set(), []
    t = type(x)
    if t is Var:
        if x.name not in seen:
            seen.add(x.name)
            out.append(x.name)
    elif t is App:
        free_vars_ordered(x.fn, seen, out)
        free_vars_ordered(x.arg, seen, out)
    elif t is Atom:
        for a in x.args:
            free_vars_ordered(a, seen, out)
    elif t is Atomic:
        free_vars_ordered(x.atom, seen, out)
    elif t is Imp:
        free_vars_ordered(x.prem, seen, out)
        free_vars_ordered(x.concl, seen, out)
    elif t is And:
        free_vars_ordered(x.left, seen, out)
        free_vars_ordered(x.right, seen, out)
    elif t in (All, Exists):
        inner = [n for n in free_vars_ordered(x.body, set(), []) if n != x.var]
        for n in inner:
            if n not in seen:
                seen.add(n)
                out.append(n)
    elif t in (Eq, Mtch, Assg):
        free_vars_ordered(x.lhs, seen, out)
        free_vars_ordered(x.rhs, seen, out)
    elif t is Lam:
        free_vars_ordered(x.body, seen, out)
    elif t is EqAtom:
        free_vars_ordered(x.atom, seen, out)
    elif t is Call:
        free_vars_ordered(x.atom, seen, out)
        free_vars_ordered(x.matches, seen, out)
    return out


def fresh_name(base, avoid):
    name = base + "'"
    while name in avoid:
        name += "'"
    return name


def var_names(x, acc=None):
    """All variable names in x: free occurrences and binder names alike.

    Compilers draw generated names (x1.., z1..) outside this set so hole
    filling only ever captures the variables it means to.
    """
    if acc is None:
        acc = set()
    t = type(x)
    if t is Var:
        acc.add(x.name)
    elif t is App:
        var_names(x.fn, acc)
        var_names(x.arg, acc)
    elif t is Atom:
        for a in x.args:
            var_names(a, acc)
    elif t is Atomic:
        var_names(x.atom, acc)
    elif t is Imp:
        var_names(x.prem, acc)
        var_names(x.concl, acc)
    elif t is And:
        var_names(x.left, acc)
        var_names(x.right, acc)
    elif t in (All, Exists):
        acc.add(x.var)
        var_names(x.body, acc)
    elif t in (Eq, Mtch, Assg):
        var_names(x.lhs, acc)
        var_names(x.rhs, acc)
    elif t is Lam:
        var_names(x.body, acc)
    elif t is EqAtom:
        var_names(x.atom, acc)
    elif t is Call:
        var_names(x.atom, acc)
        var_names(x.matches, acc)
    return acc


def _subst(m, fvs, x):
    """Simultaneous capture-avoiding substitution.

    m maps variable names to replacement terms, fvs is the union of the
    replacements' free variable names. Returns x itself whenever nothing
    changes, so runtime instantiation does not copy untouched subtrees.
    """
    if not m:
        return x
    t = type(x)
    if t is Var:
        return m.get(x.name, x)
    if t in (Const, LVar, Eigen):
        return x
    if t is App:
        fn = _subst(m, fvs, x.fn)
        arg = _subst(m, fvs, x.arg)
        if fn is x.fn and arg is x.arg:
            return x
        return App(fn, arg)
    if t is Atom:
        args = tuple(_subst(m, fvs, a) for a in x.args)
        if all(a is b for a, b in zip(args, x.args)):
            return x
        return Atom(x.pred, args, x.marks)
    if t is Atomic:
        a = _subst(m, fvs, x.atom)
        return x if a is x.atom else Atomic(a)
    if t is Imp:
        p = _subst(m, fvs, x.prem)
        c = _subst(m, fvs, x.concl)
        if p is x.prem and c is x.concl:
            return x
        return Imp(p, c)
    if t is And:
        l = _subst(m, fvs, x.left)
        r = _subst(m, fvs, x.right)
        if l is x.left and r is x.right:
            return x
        return And(l, r)
    if t in (All, Exists):
        v = x.var
        if v in m:
            m = {k: t2 for k, t2 in m.items() if k != v}
            if not m:
                return x
            fvs = set()
            for t2 in m.values():
                free_vars(t2, fvs)
        if v in fvs:
            # Rename the binder so replacements cannot be captured.
            nv = fresh_name(v, fvs | free_vars(x.body))
            body = _subst({v: Var(nv)}, {nv}, x.body)
            body = _subst(m, fvs, body)
            return t(nv, body)
        b = _subst(m, fvs, x.body)
        return x if b is x.body else t(x.var, b)
    if t in (Eq, Mtch, Assg):
        l = _subst(m, fvs, x.lhs)
        r = _subst(m, fvs, x.rhs)
        if l is x.lhs and r is x.rhs:
            return x
        return t(l, r)
    if t is TrueF:
        return x
    if t is Lam:
        b = _subst(m, fvs, x.body)
        return x if b is x.body else Lam(x.alpha, b)
    if t is EqAtom:
        a = _subst(m, fvs, x.atom)
        return x if a is x.atom else EqAtom(a, x.alpha)
    if t is Call:
        a = _subst(m, fvs, x.atom)
        mm = _subst(m, fvs, x.matches)
        if a is x.atom and mm is x.matches:
            return x
        return Call(a, mm)
    raise TypeError("cannot substitute into %r" % (x,))


def substitute(replacement, var, target):
    """Replace free occurrences of var by replacement, avoiding capture."""
    return _subst({var: replacement}, free_vars(replacement), target)


def substitute_many(replacements, target):
    """Simultaneous substitution of (term, var) pairs; vars must be distinct."""
    m = {}
    for term, var in replacements:
        if var in m:
            raise ValueError("duplicate substitution variable %r" % var)
        m[var] = term
    fvs = set()
    for term in m.values():
        free_vars(term, fvs)
    return _subst(m, fvs, target)


def subst_map(m, target):
    """Substitution from a prebuilt name->term map (runtime fast path)."""
    fvs = set()
    for term in m.values():
        free_vars(term, fvs)
    return _subst(m, fvs, target)


# ---------------------------------------------------------------------------
# Alpha equality
# ---------------------------------------------------------------------------

def alpha_equal(a, b):
    """Structural equality modulo consistent renaming of bound variables.

    Works uniformly over terms and every formula layer. Mode marks are
    ignored; second-order binder names are compared in their own
    namespace. Runtime variables compare by identity of their ids.
    """
    return _alpha(a, b, {}, {}, {}, {}, [0])


def _alpha(a, b, ea, eb, la, lb, ctr):
    ta = type(a)
    if ta is not type(b):
        return False
    if ta is Var:
        ia = ea.get(a.name)
        ib = eb.get(b.name)
        if ia is None and ib is None:
            return a.name == b.name
        return ia is not None and ia == ib
    if ta is Const:
        return a.name == b.name
    if ta is Eigen:
        return a.name == b.name
    if ta is LVar:
        da, db = deref(a), deref(b)
        if type(da) is LVar and type(db) is LVar:
            return da.id == db.id
        if type(da) is LVar or type(db) is LVar:
            return False
        return _alpha(da, db, ea, eb, la, lb, ctr)
    if ta is App:
        return (_alpha(a.fn, b.fn, ea, eb, la, lb, ctr)
                and _alpha(a.arg, b.arg, ea, eb, la, lb, ctr))
    if ta is Atom:
        if a.pred != b.pred or len(a.args) != len(b.args):
            return False
        return all(_alpha(x, y, ea, eb, la, lb, ctr)
                   for x, y in zip(a.args, b.args))
    if ta is Atomic:
        return _alpha(a.atom, b.atom, ea, eb, la, lb, ctr)
    if ta is Imp:
        return (_alpha(a.prem, b.prem, ea, eb, la, lb, ctr)
                and _alpha(a.concl, b.concl, ea, eb, la, lb, ctr))
    if ta is And:
        return (_alpha(a.left, b.left, ea, eb, la, lb, ctr)
                and _alpha(a.right, b.right, ea, eb, la, lb, ctr))
    if ta in (All, Exists):
        ctr[0] += 1
        ea2 = dict(ea)
        eb2 = dict(eb)
        ea2[a.var] = ctr[0]
        eb2[b.var] = ctr[0]
        return _alpha(a.body, b.body, ea2, eb2, la, lb, ctr)
    if ta in (Eq, Mtch, Assg):
        return (_alpha(a.lhs, b.lhs, ea, eb, la, lb, ctr)
                and _alpha(a.rhs, b.rhs, ea, eb, la, lb, ctr))
    if ta is TrueF:
        return True
    if ta is Lam:
        ctr[0] += 1
        la2 = dict(la)
        lb2 = dict(lb)
        la2[a.alpha] = ctr[0]
        lb2[b.alpha] = ctr[0]
        return _alpha(a.body, b.body, ea, eb, la2, lb2, ctr)
    if ta is EqAtom:
        ia = la.get(a.alpha)
        ib = lb.get(b.alpha)
        if ia is None and ib is None:
            ok = a.alpha == b.alpha
        else:
            ok = ia is not None and ia == ib
        return ok and _alpha(a.atom, b.atom, ea, eb, la, lb, ctr)
    if ta is Call:
        return (_alpha(a.atom, b.atom, ea, eb, la, lb, ctr)
                and _alpha(a.matches, b.matches, ea, eb, la, lb, ctr))
    raise TypeError("alpha_equal: unhandled node %r" % (a,))


# ---------------------------------------------------------------------------
# S-expression dump (stable encoding, used by golden tests and traces)
# ---------------------------------------------------------------------------

def dump_sexpr(x):
    out = []
    _dump(x, out)
    return "".join(out)


def _dump(x, out):
    t = type(x)
    if t is Var:
        out.append("(var %s)" % x.name)
    elif t is LVar:
        x2 = deref(x)
        if type(x2) is LVar:
            out.append("(var _%d)" % x2.id)
        else:
            _dump(x2, out)
    elif t is Const:
        out.append("(const %s)" % x.name)
    elif t is Eigen:
        out.append("(const %s)" % x.name)
    elif t is App:
        out.append("(app ")
        _dump(x.fn, out)
        out.append(" ")
        _dump(x.arg, out)
        out.append(")")
    elif t is Atom:
        out.append("(atom %s" % x.pred)
        for a in x.args:
            out.append(" ")
            _dump(a, out)
        out.append(")")
    elif t is Atomic:
        _dump(x.atom, out)
    elif t is Imp:
        out.append("(imp ")
        _dump(x.prem, out)
        out.append(" ")
        _dump(x.concl, out)
        out.append(")")
    elif t is All:
        out.append("(all %s " % x.var)
        _dump(x.body, out)
        out.append(")")
    elif t is Exists:
        out.append("(exists %s " % x.var)
        _dump(x.body, out)
        out.append(")")
    elif t is And:
        out.append("(and ")
        _dump(x.left, out)
        out.append(" ")
        _dump(x.right, out)
        out.append(")")
    elif t is TrueF:
        out.append("true")
    elif t is Eq:
        out.append("(eq ")
        _dump(x.lhs, out)
        out.append(" ")
        _dump(x.rhs, out)
        out.append(")")
    elif t is Mtch:
        out.append("(mtch ")
        _dump(x.lhs, out)
        out.append(" ")
        _dump(x.rhs, out)
        out.append(")")
    elif t is Assg:
        out.append("(assg ")
        _dump(x.lhs, out)
        out.append(" ")
        _dump(x.rhs, out)
        out.append(")")
    elif t is Lam:
        out.append("(lam %s " % x.alpha)
        _dump(x.body, out)
        out.append(")")
    elif t is EqAtom:
        out.append("(eqatom ")
        _dump(x.atom, out)
        out.append(" %s)" % x.alpha)
    elif t is Call:
        out.append("(and ")
        _dump(x.atom, out)
        out.append(" ")
        _dump(x.matches, out)
        out.append(")")
    else:
        raise TypeError("dump_sexpr: unhandled node %r" % (x,))


# ---------------------------------------------------------------------------
# S-expression reader (inverse of dump_sexpr within a known layer)
# ---------------------------------------------------------------------------

class SexprError(ValueError):
    pass


def _read(text):
    toks = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = [0]

    def expr():
        if pos[0] >= len(toks):
            raise SexprError("unexpected end of input")
        tok = toks[pos[0]]
        pos[0] += 1
        if tok == "(":
            items = []
            while pos[0] < len(toks) and toks[pos[0]] != ")":
                items.append(expr())
            if pos[0] >= len(toks):
                raise SexprError("missing )")
            pos[0] += 1
            return items
        if tok == ")":
            raise SexprError("unexpected )")
        return tok

    e = expr()
    if pos[0] != len(toks):
        raise SexprError("trailing tokens")
    return e


def parse_sexpr(text, kind):
    """Parse a dumped form back into the AST for the given layer.

    kind: term | atom | source | goal0 | clause0 | goal1 | clause1 |
    residual1 | goal2 | clause2 | residual2
    """
    e = _read(text)
    if kind == "term":
        return _c_term(e)
    if kind == "atom":
        return _c_atom(e)
    if kind == "source":
        return _c_source(e)
    if kind == "goal0":
        return _c_goal(e, 0)
    if kind == "clause0":
        return _c_clause0(e)
    if kind == "goal1":
        return _c_goal(e, 1)
    if kind == "clause1":
        return _c_clause(e, 1)
    if kind == "residual1":
        return _c_res(e, 1)
    if kind == "goal2":
        return _c_goal(e, 2)
    if kind == "clause2":
        return _c_clause(e, 2)
    if kind == "residual2":
        return _c_res(e, 2)
    raise SexprError("unknown kind %r" % kind)


def _c_term(e):
    if not isinstance(e, list):
        raise SexprError("bad term %r" % (e,))
    if e[0] == "var":
        if e[1].startswith("_"):
            raise SexprError("logic variables are not re-readable")
        return Var(e[1])
    if e[0] == "const":
        return Const(e[1])
    if e[0] == "app":
        return App(_c_term(e[1]), _c_term(e[2]))
    raise SexprError("bad term tag %r" % (e[0],))


def _c_atom(e):
    if not isinstance(e, list) or e[0] != "atom":
        raise SexprError("bad atom %r" % (e,))
    return Atom(e[1], [_c_term(a) for a in e[2:]])


def _c_source(e):
    if e == "true":
        return TRUE
    if not isinstance(e, list):
        raise SexprError("bad formula %r" % (e,))
    if e[0] == "atom":
        return Atomic(_c_atom(e))
    if e[0] == "imp":
        return Imp(_c_source(e[1]), _c_source(e[2]))
    if e[0] == "all":
        return All(e[1], _c_source(e[2]))
    if e[0] == "and":
        return And(_c_source(e[1]), _c_source(e[2]))
    raise SexprError("bad formula tag %r" % (e[0],))


def _c_goal(e, lang):
    if e == "true":
        return TRUE
    if not isinstance(e, list):
        raise SexprError("bad goal %r" % (e,))
    tag = e[0]
    if tag == "atom":
        return Atomic(_c_atom(e))
    if tag == "imp":
        return Imp(_c_clause_any(e[1], lang), _c_goal(e[2], lang))
    if tag == "all":
        return All(e[1], _c_goal(e[2], lang))
    if tag == "exists" and lang == 2:
        return Exists(e[1], _c_goal(e[2], lang))
    if tag == "and":
        if lang == 2 and isinstance(e[1], list) and e[1][0] == "atom":
            return Call(_c_atom(e[1]), _c_matches(e[2]))
        return And(_c_goal(e[1], lang), _c_goal(e[2], lang))
    raise SexprError("bad goal tag %r" % (tag,))


def _c_clause_any(e, lang):
    if lang == 0:
        return _c_clause0(e)
    return _c_clause(e, lang)


def _c_clause0(e):
    if not isinstance(e, list) or e[0] != "lam":
        raise SexprError("background clause must start with lam")
    return Lam(e[1], _c_c0body(e[2]))


def _c_c0body(e):
    if not isinstance(e, list):
        raise SexprError("bad clause body %r" % (e,))
    if e[0] == "eqatom":
        return EqAtom(_c_atom(e[1]), e[2])
    if e[0] == "and":
        return And(_c_c0body(e[1]), _c_goal(e[2], 0))
    if e[0] == "exists":
        return Exists(e[1], _c_c0body(e[2]))
    raise SexprError("bad clause tag %r" % (e[0],))


def _c_clause(e, lang):
    if not isinstance(e, list):
        raise SexprError("bad clause %r" % (e,))
    if e[0] == "all":
        return All(e[1], _c_clause(e[2], lang))
    if e[0] == "imp":
        return Imp(_c_res(e[1], lang), Atomic(_c_atom(e[2])))
    raise SexprError("bad clause tag %r" % (e[0],))


def _c_res(e, lang):
    if e == "true":
        return TRUE
    if not isinstance(e, list):
        raise SexprError("bad residual %r" % (e,))
    tag = e[0]
    if tag == "eq":
        return Eq(_c_term(e[1]), _c_term(e[2]))
    if tag == "mtch":
        return Mtch(_c_term(e[1]), _c_term(e[2]))
    if tag == "assg":
        return Assg(_c_term(e[1]), _c_term(e[2]))
    if tag == "exists":
        return Exists(e[1], _c_res(e[2], lang))
    if tag in ("atom", "imp", "all"):
        return _c_goal(e, lang)
    if tag == "and":
        if lang == 2 and isinstance(e[1], list) and e[1][0] == "atom":
            return Call(_c_atom(e[1]), _c_matches(e[2]))
        return And(_c_res(e[1], lang), _c_res(e[2], lang))
    raise SexprError("bad residual tag %r" % (tag,))


def _c_matches(e):
    if e == "true":
        return TRUE
    if isinstance(e, list) and e[0] == "and":
        return And(_c_res(e[1], 2), _c_matches(e[2]))
    if isinstance(e, list) and e[0] == "mtch":
        return Mtch(_c_term(e[1]), _c_term(e[2]))
    raise SexprError("bad match block %r" % (e,))


# ---------------------------------------------------------------------------
# Human-oriented printing
# ---------------------------------------------------------------------------

def pretty_term(t, nested=False):
    t = deref(t)
    tt = type(t)
    if tt is Var:
        return t.name
    if tt is Const:
        return t.name
    if tt is Eigen:
        return t.name
    if tt is LVar:
        return "_%d" % t.id
    if tt is App:
        parts = []
        while type(t) is App:
            parts.append(t.arg)
            t = deref(t.fn)
        parts.append(t)
        parts.reverse()
        s = " ".join(pretty_term(p, nested=True) for p in parts)
        return "(%s)" % s if nested else s
    raise TypeError("pretty_term: %r" % (t,))


def pretty_atom(a):
    if not a.args:
        return a.pred
    return a.pred + " " + " ".join(pretty_term(t, nested=True) for t in a.args)


def pretty_formula(f, clause_pos=True):
    """Concrete syntax for source formulas (round-trips through the parser)."""
    t = type(f)
    if t is Atomic:
        return pretty_atom(f.atom)
    if t is TrueF:
        return "true"
    if t is And:
        return "(%s, %s)" % (pretty_formula(f.left, clause_pos),
                             pretty_formula(f.right, clause_pos))
    if t is All:
        return "all %s. %s" % (f.var, pretty_formula(f.body, clause_pos))
    if t is Imp:
        if clause_pos:
            # Clause implication: body goal displayed after the head.
            return "%s <- %s" % (pretty_formula(f.concl, True),
                                 pretty_formula(f.prem, False))
        return "(%s => %s)" % (pretty_formula(f.prem, True),
                               pretty_formula(f.concl, False))
    raise TypeError("pretty_formula: %r" % (f,))


def pretty_compiled(f):
    """Loose human rendering of compiled forms (not reparseable)."""
    t = type(f)
    if t is Atomic:
        return pretty_atom(f.atom)
    if t is TrueF:
        return "true"
    if t is And:
        return "%s & %s" % (pretty_compiled(f.left), pretty_compiled(f.right))
    if t is All:
        return "all %s. %s" % (f.var, pretty_compiled(f.body))
    if t is Exists:
        return "ex %s. %s" % (f.var, pretty_compiled(f.body))
    if t is Imp:
        return "(%s => %s)" % (pretty_compiled(f.prem), pretty_compiled(f.concl))
    if t is Eq:
        return "%s = %s" % (pretty_term(f.lhs, True), pretty_term(f.rhs, True))
    if t is Mtch:
        return "%s ?= %s" % (pretty_term(f.lhs, True), pretty_term(f.rhs, True))
    if t is Assg:
        return "%s := %s" % (pretty_term(f.lhs, True), pretty_term(f.rhs, True))
    if t is Lam:
        return "lam %s. %s" % (f.alpha, pretty_compiled(f.body))
    if t is EqAtom:
        return "(%s == %s)" % (pretty_atom(f.atom), f.alpha)
    if t is Call:
        return "(%s & %s)" % (pretty_atom(f.atom), pretty_compiled(f.matches))
    raise TypeError("pretty_compiled: %r" % (f,))
