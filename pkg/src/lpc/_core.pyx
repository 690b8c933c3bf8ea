# cython: language_level=3, boundscheck=False, wraparound=False
"""Cython build of the term-cell and binding-store kernel.

Mirror of lpc._core_py: same classes, same semantics, same trail
behavior. Dereferencing, the occurs/scope walk and the unification loop
dominate proof-search time, so these are compiled; everything above the
store stays in Python. Keep this file in sync with _core_py.py.
"""


cdef class Term:
    pass


cdef class Var(Term):
    cdef readonly str name

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return "Var(%r)" % (self.name,)


cdef class Const(Term):
    cdef readonly str name

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return "Const(%r)" % (self.name,)


cdef class App(Term):
    cdef readonly object fn
    cdef readonly object arg

    def __init__(self, fn, arg):
        self.fn = fn
        self.arg = arg

    def __repr__(self):
        return "App(%r, %r)" % (self.fn, self.arg)


cdef class LVar(Term):
    cdef readonly long id
    cdef public long level
    cdef public object ref

    def __init__(self, id, level):
        self.id = id
        self.level = level
        self.ref = None

    def __repr__(self):
        return "LVar(_%d)" % (self.id,)


cdef class Eigen(Term):
    cdef readonly str name
    cdef readonly long level

    def __init__(self, name, level):
        self.name = name
        self.level = level

    def __repr__(self):
        return "Eigen(%r)" % (self.name,)


class StrictMatchViolation(Exception):
    """Raised under --strict-match when a match left side is not ground."""


cdef class Counters:
    cdef public long unify_events
    cdef public long match_events
    cdef public long assign_events
    cdef public long non_ground_match_lhs_events
    cdef public dict rules

    def __init__(self):
        self.unify_events = 0
        self.match_events = 0
        self.assign_events = 0
        self.non_ground_match_lhs_events = 0
        self.rules = {}

    def rule(self, name):
        cdef dict rules = self.rules
        rules[name] = rules.get(name, 0) + 1

    def snapshot(self):
        return {
            "unify": self.unify_events,
            "match": self.match_events,
            "assign": self.assign_events,
            "non_ground_match_lhs": self.non_ground_match_lhs_events,
            "rules": dict(self.rules),
        }


cpdef object deref(object t):
    cdef LVar v
    while type(t) is LVar:
        v = <LVar> t
        if v.ref is None:
            return t
        t = v.ref
    return t


cpdef bint is_ground(object t):
    cdef list stack = [t]
    cdef object x
    while stack:
        x = deref(stack.pop())
        if type(x) is Var or type(x) is LVar:
            return False
        if type(x) is App:
            stack.append((<App> x).fn)
            stack.append((<App> x).arg)
    return True


cpdef object resolve(object t):
    t = deref(t)
    if type(t) is App:
        return App(resolve((<App> t).fn), resolve((<App> t).arg))
    return t


DEF BIND = 0
DEF LEVEL = 1


cdef class Store:
    cdef public list trail
    cdef public long clock
    cdef public long var_count
    cdef public long eigen_count
    cdef public Counters counters
    cdef public bint strict_match
    cdef public object trace

    def __init__(self):
        self.trail = []
        self.clock = 0
        self.var_count = 0
        self.eigen_count = 0
        self.counters = Counters()
        self.strict_match = False
        self.trace = None

    def fresh_lvar(self):
        self.clock += 1
        self.var_count += 1
        return LVar(self.var_count, self.clock)

    def fresh_eigen(self):
        self.clock += 1
        self.eigen_count += 1
        return Eigen("#c%d" % self.eigen_count, self.clock)

    cpdef long mark(self):
        return len(self.trail)

    cpdef undo(self, long cp):
        cdef list trail = self.trail
        cdef tuple entry
        if cp > len(trail):
            raise ValueError("stale checkpoint: %d > %d" % (cp, len(trail)))
        while len(trail) > cp:
            entry = trail.pop()
            if entry[0] == BIND:
                (<LVar> entry[1]).ref = None
            else:
                (<LVar> entry[1]).level = entry[2]

    cdef object _bind(self, LVar v, object t):
        cdef long lvl = v.level
        cdef list lower = None
        cdef list stack = [t]
        cdef object x
        cdef LVar lx
        while stack:
            x = deref(stack.pop())
            if type(x) is LVar:
                lx = <LVar> x
                if lx is v:
                    return "occurs"
                if lx.level > lvl:
                    if lower is None:
                        lower = [lx]
                    else:
                        lower.append(lx)
            elif type(x) is Eigen:
                if (<Eigen> x).level > lvl:
                    return "scope"
            elif type(x) is App:
                stack.append((<App> x).fn)
                stack.append((<App> x).arg)
        cdef list trail = self.trail
        if lower is not None:
            for x in lower:
                lx = <LVar> x
                trail.append((LEVEL, lx, lx.level))
                lx.level = lvl
        trail.append((BIND, v, None))
        v.ref = t
        return None

    cdef object _unify(self, object t1, object t2):
        cdef list stack = [(t1, t2)]
        cdef object a, b, r
        cdef tuple pair
        while stack:
            pair = stack.pop()
            a = deref(pair[0])
            b = deref(pair[1])
            if a is b:
                continue
            if type(a) is LVar:
                if type(b) is LVar:
                    if (<LVar> a).level >= (<LVar> b).level:
                        r = self._bind(<LVar> a, b)
                    else:
                        r = self._bind(<LVar> b, a)
                else:
                    r = self._bind(<LVar> a, b)
                if r is not None:
                    return r
            elif type(b) is LVar:
                r = self._bind(<LVar> b, a)
                if r is not None:
                    return r
            elif type(a) is not type(b):
                return "clash"
            elif type(a) is Const:
                if (<Const> a).name != (<Const> b).name:
                    return "clash"
            elif type(a) is Eigen:
                if (<Eigen> a).name != (<Eigen> b).name:
                    return "clash"
            elif type(a) is Var:
                if (<Var> a).name != (<Var> b).name:
                    return "clash"
            else:
                stack.append(((<App> a).arg, (<App> b).arg))
                stack.append(((<App> a).fn, (<App> b).fn))
        return None

    cdef bint _attempt(self, str kind, object t1, object t2):
        cdef long cp = len(self.trail)
        cdef object reason = self._unify(t1, t2)
        if reason is not None:
            self.undo(cp)
        if self.trace is not None:
            self.trace(kind, t1, t2,
                       "ok" if reason is None else "fail-" + <str> reason)
        return reason is None

    def unify(self, t1, t2):
        self.counters.unify_events += 1
        return self._attempt("unify", t1, t2)

    def unify_seq(self, ts1, ts2):
        cdef long cp = len(self.trail)
        cdef object reason
        self.counters.unify_events += 1
        for a, b in zip(ts1, ts2):
            reason = self._unify(a, b)
            if reason is not None:
                self.undo(cp)
                if self.trace is not None:
                    self.trace("unify", a, b, "fail-" + <str> reason)
                return False
        if self.trace is not None:
            self.trace("unify", ts1, ts2, "ok")
        return True

    def match_lhs(self, lhs, rhs):
        self.counters.match_events += 1
        if not is_ground(lhs):
            self.counters.non_ground_match_lhs_events += 1
            if self.strict_match:
                raise StrictMatchViolation(
                    "non-ground match left side: %r" % (resolve(lhs),))
        return self._attempt("match", lhs, rhs)

    def assign(self, lhs, rhs):
        self.counters.assign_events += 1
        return self._attempt("assign", lhs, rhs)

    def snapshot_bindings(self, lvars):
        out = {}
        for v in lvars:
            if (<LVar> v).ref is not None:
                out[(<LVar> v).id] = resolve(v)
        return out


BACKEND = "cython"
