"""Pure-Python term cells and binding store.

This is the reference implementation of the hot kernel: term node types,
the trail-based binding store, and the three binding operations (unify,
match, assign). `lpc._core` is a Cython build of the same module; `engine`
picks whichever is available at import time. Keep the two in sync.

Terms are first-order applicative:

    term := Var name        (syntactic variable, bound by a quantifier)
         |  Const name
         |  App fn arg      (curried application, left-nested)
         |  LVar            (runtime logical variable)
         |  Eigen name      (runtime fresh constant for universal goals)

LVar and Eigen only ever appear at run time. An LVar carries a `ref` slot
(None while unbound) and a creation timestamp; an Eigen carries a
timestamp. A logical variable may never be bound to a term containing an
Eigen younger than itself: that is the scope discipline for fresh
constants introduced by universal goals.
"""


class Term:
    __slots__ = ()


class Var(Term):
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return "Var(%r)" % (self.name,)


class Const(Term):
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return "Const(%r)" % (self.name,)


class App(Term):
    __slots__ = ("fn", "arg")

    def __init__(self, fn, arg):
        self.fn = fn
        self.arg = arg

    def __repr__(self):
        return "App(%r, %r)" % (self.fn, self.arg)


class LVar(Term):
    __slots__ = ("id", "level", "ref")

    def __init__(self, id, level):
        self.id = id
        self.level = level
        self.ref = None  # None = unbound

    def __repr__(self):
        return "LVar(_%d)" % (self.id,)


class Eigen(Term):
    __slots__ = ("name", "level")

    def __init__(self, name, level):
        self.name = name
        self.level = level

    def __repr__(self):
        return "Eigen(%r)" % (self.name,)


class StrictMatchViolation(Exception):
    """Raised under --strict-match when a match left side is not ground."""


class Counters:
    """Instrumentation counters for one query run.

    Monotone within a run; mark/undo does not roll them back.
    """

    __slots__ = ("unify_events", "match_events", "assign_events",
                 "non_ground_match_lhs_events", "rules")

    def __init__(self):
        self.unify_events = 0
        self.match_events = 0
        self.assign_events = 0
        self.non_ground_match_lhs_events = 0
        self.rules = {}

    def rule(self, name):
        rules = self.rules
        rules[name] = rules.get(name, 0) + 1

    def snapshot(self):
        return {
            "unify": self.unify_events,
            "match": self.match_events,
            "assign": self.assign_events,
            "non_ground_match_lhs": self.non_ground_match_lhs_events,
            "rules": dict(self.rules),
        }


def deref(t):
    """Follow LVar bindings to the representative term."""
    while type(t) is LVar:
        r = t.ref
        if r is None:
            return t
        t = r
    return t


def is_ground(t):
    """True iff t (after dereferencing) has no Var and no unbound LVar."""
    stack = [t]
    while stack:
        x = deref(stack.pop())
        tx = type(x)
        if tx is Var or tx is LVar:
            return False
        if tx is App:
            stack.append(x.fn)
            stack.append(x.arg)
    return True


def resolve(t):
    """Deep copy of t with all bindings applied."""
    t = deref(t)
    if type(t) is App:
        return App(resolve(t.fn), resolve(t.arg))
    return t


# Trail entry tags.  A bind entry unbinds the variable on undo; a level
# entry restores a variable's scope timestamp lowered during a bind.
_BIND = 0
_LEVEL = 1


class Store:
    """Binding store with an undo trail and eigen scope timestamps."""

    __slots__ = ("trail", "clock", "var_count", "eigen_count", "counters",
                 "strict_match", "trace")

    def __init__(self):
        self.trail = []
        self.clock = 0
        self.var_count = 0
        self.eigen_count = 0
        self.counters = Counters()
        self.strict_match = False
        self.trace = None  # callable(kind, lhs, rhs, result) or None

    def fresh_lvar(self):
        self.clock += 1
        self.var_count += 1
        return LVar(self.var_count, self.clock)

    def fresh_eigen(self):
        self.clock += 1
        self.eigen_count += 1
        return Eigen("#c%d" % self.eigen_count, self.clock)

    def mark(self):
        return len(self.trail)

    def undo(self, cp):
        trail = self.trail
        if cp > len(trail):
            raise ValueError("stale checkpoint: %d > %d" % (cp, len(trail)))
        while len(trail) > cp:
            tag, v, old = trail.pop()
            if tag == _BIND:
                v.ref = None
            else:
                v.level = old

    def _bind(self, v, t):
        """Bind unbound LVar v to t, enforcing occurs check and eigen scope.

        Returns None on success or a failure reason string. On failure
        nothing is recorded (the caller restores any earlier bindings).
        """
        lvl = v.level
        lower = None
        stack = [t]
        while stack:
            x = deref(stack.pop())
            tx = type(x)
            if tx is LVar:
                if x is v:
                    return "occurs"
                if x.level > lvl:
                    if lower is None:
                        lower = [x]
                    else:
                        lower.append(x)
            elif tx is Eigen:
                if x.level > lvl:
                    return "scope"
            elif tx is App:
                stack.append(x.fn)
                stack.append(x.arg)
        trail = self.trail
        if lower is not None:
            # Scope lowering: vars inside t must not later capture eigens
            # that v itself is too old to see.
            for x in lower:
                trail.append((_LEVEL, x, x.level))
                x.level = lvl
        trail.append((_BIND, v, None))
        v.ref = t
        return None

    def _unify(self, t1, t2):
        """Structural first-order unification. Returns None or a reason."""
        stack = [(t1, t2)]
        while stack:
            a, b = stack.pop()
            a = deref(a)
            b = deref(b)
            if a is b:
                continue
            ta = type(a)
            tb = type(b)
            if ta is LVar:
                if tb is LVar:
                    # Bind the younger to the older so scope levels only
                    # ever tighten.
                    if a.level >= b.level:
                        r = self._bind(a, b)
                    else:
                        r = self._bind(b, a)
                else:
                    r = self._bind(a, b)
                if r is not None:
                    return r
            elif tb is LVar:
                r = self._bind(b, a)
                if r is not None:
                    return r
            elif ta is not tb:
                return "clash"
            elif ta is Const:
                if a.name != b.name:
                    return "clash"
            elif ta is Eigen:
                if a.name != b.name:
                    return "clash"
            elif ta is Var:
                # Syntactic variables unify only with themselves by name;
                # they should not normally reach the runtime store.
                if a.name != b.name:
                    return "clash"
            else:  # App
                stack.append((a.arg, b.arg))
                stack.append((a.fn, b.fn))
        return None

    def _attempt(self, kind, t1, t2):
        cp = len(self.trail)
        reason = self._unify(t1, t2)
        if reason is not None:
            self.undo(cp)
        if self.trace is not None:
            self.trace(kind, t1, t2, "ok" if reason is None else "fail-" + reason)
        return reason is None

    def unify(self, t1, t2):
        """Unify two terms; restores the store on failure."""
        self.counters.unify_events += 1
        return self._attempt("unify", t1, t2)

    def unify_seq(self, ts1, ts2):
        """Unify two equal-length term sequences as one event."""
        self.counters.unify_events += 1
        cp = len(self.trail)
        for a, b in zip(ts1, ts2):
            reason = self._unify(a, b)
            if reason is not None:
                self.undo(cp)
                if self.trace is not None:
                    self.trace("unify", a, b, "fail-" + reason)
                return False
        if self.trace is not None:
            self.trace("unify", ts1, ts2, "ok")
        return True

    def match_lhs(self, lhs, rhs):
        """Match with nominally-ground left side.

        Falls back to full unification when the left side is open; the
        fallback is counted, and is a hard error under strict mode.
        """
        self.counters.match_events += 1
        if not is_ground(lhs):
            self.counters.non_ground_match_lhs_events += 1
            if self.strict_match:
                raise StrictMatchViolation(
                    "non-ground match left side: %r" % (resolve(lhs),))
        return self._attempt("match", lhs, rhs)

    def assign(self, lhs, rhs):
        """Assignment: binds lhs when it is an unbound variable.

        When backtracking revisits an assignment with lhs already bound
        this degrades to an equality check, like match and unify do.
        """
        self.counters.assign_events += 1
        return self._attempt("assign", lhs, rhs)

    def snapshot_bindings(self, lvars):
        """Map id -> resolved term for the bound variables in lvars."""
        out = {}
        for v in lvars:
            if v.ref is not None:
                out[v.id] = resolve(v)
        return out


BACKEND = "python"
