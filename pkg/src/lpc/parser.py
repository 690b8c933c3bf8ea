"""Concrete syntax for source programs and queries.

Program files (.lp) hold mode declarations and clauses:

    #mode of(+,-).
    of (app E1 E2) T2 <- of E1 (arr T1 T2) <- of E2 T1.
    mem X (cons X T).
    test <- (all y. elem y => found y).

Clause bodies chain with `<-` (left associated, so textual order is
execution order), embedded hypothetical goals use `=>`, `all N.` is an
explicit universal, `,` is extended conjunction and `true` the extended
unit. Uppercase identifiers are variables; free ones are implicitly
universally quantified at the clause head, in first-occurrence order.
A lowercase name bound by an enclosing `all` is also a variable, which
mirrors the usual eigenvariable style (`all x. of x T1 => ...`).

Queries: `?- append (cons a nil) nil R.`  Free uppercase identifiers are
the query variables.
"""

from .engine import Var, Const, App
from .syntax import Atom, Atomic, Imp, All, And, TRUE, TrueF, IN, OUT


class ParseError(Exception):
    """Parse or static-consistency error, with a 1-based source position."""

    def __init__(self, line, column, message, kind="Syntax"):
        super().__init__("%d:%d: %s: %s" % (line, column, kind, message))
        self.line = line
        self.column = column
        self.message = message
        self.kind = kind


class SourceProgram:
    """Parsed program: clause list (file order), mode table, arities."""

    def __init__(self, clauses, modes=None, arities=None):
        self.clauses = list(clauses)
        self.modes = dict(modes or {})
        self.arities = dict(arities or {})

    def pretty(self):
        from .syntax import pretty_formula
        lines = []
        for pred in sorted(self.modes):
            lines.append("#mode %s(%s)." % (pred, ",".join(self.modes[pred])))
        for cl in self.clauses:
            lines.append(_pretty_clause(cl) + ".")
        return "\n".join(lines) + "\n"


def _pretty_clause(cl):
    # Print the implicit prefix explicitly so reparsing binds the same way.
    from .syntax import pretty_formula
    return pretty_formula(cl, clause_pos=True)


_PUNCT = ("<-", "=>", "?-", "(", ")", ".", ",", "+", "-")


class _Lexer:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1
        self.toks = []
        self._run()

    def _advance(self, n):
        for _ in range(n):
            if self.text[self.pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def _run(self):
        text = self.text
        while self.pos < len(text):
            c = text[self.pos]
            if c in " \t\r\n":
                self._advance(1)
                continue
            if c == "%":
                while self.pos < len(text) and text[self.pos] != "\n":
                    self._advance(1)
                continue
            line, col = self.line, self.col
            if c == "#":
                j = self.pos + 1
                while j < len(text) and text[j].isalpha():
                    j += 1
                word = text[self.pos:j]
                if word != "#mode":
                    raise ParseError(line, col, "unknown declaration %r" % word)
                self._advance(j - self.pos)
                self.toks.append(("#mode", "#mode", line, col))
                continue
            two = text[self.pos:self.pos + 2]
            if two in ("<-", "=>", "?-"):
                self._advance(2)
                self.toks.append((two, two, line, col))
                continue
            if c in "().,+-":
                self._advance(1)
                self.toks.append((c, c, line, col))
                continue
            if c.isalpha() or c == "_":
                j = self.pos
                while j < len(text) and (text[j].isalnum() or text[j] in "_'"):
                    j += 1
                word = text[self.pos:j]
                self._advance(j - self.pos)
                kind = "VAR" if word[0].isupper() or word[0] == "_" else "IDENT"
                self.toks.append((kind, word, line, col))
                continue
            raise ParseError(line, col, "unexpected character %r" % c)
        self.toks.append(("EOF", "", self.line, self.col))


class _Parser:
    def __init__(self, text):
        self.toks = _Lexer(text).toks
        self.i = 0
        self.atom_sites = []  # (atom, line, col), for arity diagnostics
        self.var_order = []   # free variables in textual occurrence order
        self._var_seen = set()

    def reset_var_order(self):
        self.var_order = []
        self._var_seen = set()

    def _saw_var(self, name):
        if name not in self._var_seen:
            self._var_seen.add(name)
            self.var_order.append(name)

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind):
        k, v, line, col = self.next()
        if k != kind:
            raise ParseError(line, col, "expected %r, found %r" % (kind, v or k))
        return v, line, col

    def at(self, kind):
        return self.toks[self.i][0] == kind

    # --- formulas -----------------------------------------------------

    def formula(self, env):
        k, v, line, col = self.peek()
        if k in ("<-", "=>", ",", "."):
            raise ParseError(line, col, "formula expected before %r" % k,
                             kind="UnboundOperator")
        left = self.conj(env)
        if self.at("=>"):
            self.next()
            return Imp(left, self.formula(env))
        acc = left
        while self.at("<-"):
            self.next()
            body = self.conj(env)
            acc = Imp(body, acc)
        return acc

    def conj(self, env):
        f = self.prim(env)
        while self.at(","):
            self.next()
            f = And(f, self.prim(env))
        return f

    def prim(self, env):
        k, v, line, col = self.peek()
        if k == "IDENT" and v == "true":
            self.next()
            return TRUE
        if k == "IDENT" and v == "all":
            self.next()
            nk, name, nl, nc = self.next()
            if nk not in ("VAR", "IDENT"):
                raise ParseError(nl, nc, "binder name expected after 'all'")
            self.expect(".")
            return All(name, self.formula(env | {name}))
        if k == "(":
            self.next()
            f = self.formula(env)
            self.expect(")")
            return f
        if k == "IDENT":
            if v in env:
                raise ParseError(line, col,
                                 "bound variable %r cannot head an atom" % v)
            return self.atom(env)
        raise ParseError(line, col, "formula expected, found %r" % (v or k))

    def atom(self, env):
        _, pred, line, col = self.next()
        args = []
        while True:
            k, v, _, _ = self.peek()
            if k == "VAR" or k == "(":
                args.append(self.term(env))
            elif k == "IDENT" and v not in ("all",):
                args.append(self.term(env))
            else:
                break
        a = Atom(pred, args)
        self.atom_sites.append((a, line, col))
        return Atomic(a)

    def term(self, env):
        k, v, line, col = self.next()
        if k == "VAR":
            if v not in env:
                self._saw_var(v)
            return Var(v)
        if k == "IDENT":
            return Var(v) if v in env else Const(v)
        if k == "(":
            parts = [self.term(env)]
            while not self.at(")"):
                parts.append(self.term(env))
            self.expect(")")
            if len(parts) < 2:
                raise ParseError(line, col, "application needs two terms")
            t = parts[0]
            for p in parts[1:]:
                t = App(t, p)
            return t
        raise ParseError(line, col, "term expected, found %r" % (v or k))

    # --- declarations -------------------------------------------------

    def modedecl(self):
        _, _, line, col = self.next()  # '#mode'
        pred, pl, pc = self.expect("IDENT")
        self.expect("(")
        marks = [self.mark()]
        while self.at(","):
            self.next()
            marks.append(self.mark())
        self.expect(")")
        self.expect(".")
        return pred, tuple(marks), pl, pc

    def mark(self):
        k, v, line, col = self.next()
        if k == "+":
            return IN
        if k == "-":
            return OUT
        raise ParseError(line, col, "mode mark '+' or '-' expected")


def _check_arities(sites, arities, modes, mode_sites):
    for a, line, col in sites:
        n = len(a.args)
        if a.pred in arities and arities[a.pred] != n:
            raise ParseError(
                line, col,
                "%s used with %d arguments, previously %d"
                % (a.pred, n, arities[a.pred]), kind="ArityMismatch")
        arities.setdefault(a.pred, n)
    for pred, (line, col) in mode_sites.items():
        if pred in arities and len(modes[pred]) != arities[pred]:
            raise ParseError(
                line, col,
                "mode for %s declares arity %d, used with %d"
                % (pred, len(modes[pred]), arities[pred]),
                kind="ModeMismatch")


def _apply_marks(f, modes):
    t = type(f)
    if t is Atomic:
        a = f.atom
        marks = modes.get(a.pred)
        if marks is None:
            return f
        return Atomic(Atom(a.pred, a.args, marks))
    if t is Imp:
        return Imp(_apply_marks(f.prem, modes), _apply_marks(f.concl, modes))
    if t is All:
        return All(f.var, _apply_marks(f.body, modes))
    if t is And:
        return And(_apply_marks(f.left, modes), _apply_marks(f.right, modes))
    if t is TrueF:
        return f
    raise TypeError("unexpected source node %r" % (f,))


def parse_program(text):
    """Parse a .lp program. Raises ParseError on any inconsistency."""
    p = _Parser(text)
    clauses = []
    modes = {}
    mode_sites = {}
    while not p.at("EOF"):
        if p.at("#mode"):
            pred, marks, line, col = p.modedecl()
            if pred in modes and modes[pred] != marks:
                raise ParseError(line, col,
                                 "conflicting mode for %s" % pred,
                                 kind="ModeMismatch")
            modes[pred] = marks
            mode_sites[pred] = (line, col)
            continue
        p.reset_var_order()
        f = p.formula(frozenset())
        p.expect(".")
        # Implicit universal closure, first textual occurrence outermost.
        for name in reversed(p.var_order):
            f = All(name, f)
        clauses.append(f)
    arities = {}
    _check_arities(p.atom_sites, arities, modes, mode_sites)
    clauses = [_apply_marks(c, modes) for c in clauses]
    return SourceProgram(clauses, modes, arities)


def parse_query(text, program=None):
    """Parse a query, returning (goal formula, query variable names).

    When a program is given, the query is checked against its arities and
    its atoms pick up the program's mode marks.
    """
    p = _Parser(text)
    if p.at("?-"):
        p.next()
    p.reset_var_order()
    f = p.formula(frozenset())
    if p.at("."):
        p.next()
    if not p.at("EOF"):
        k, v, line, col = p.peek()
        raise ParseError(line, col, "trailing input %r" % (v or k))
    modes = program.modes if program is not None else {}
    arities = dict(program.arities) if program is not None else {}
    mode_sites = {}
    _check_arities(p.atom_sites, arities, modes, mode_sites)
    f = _apply_marks(f, modes)
    return f, list(p.var_order)
