"""Source transformation for extended programs.

Conjunction and truth are admitted in input programs, but the compilers
want clauses with a single head. Conjunction distributes over the
consequent of implication and over universals, so a clause position
never needs to keep either connective:

    B => (A1, A2)    becomes   (B => A1), (B => A2)
    all x. (A1, A2)  becomes   (all x. A1), (all x. A2)
    B => true        becomes   true         (headless clause, dropped)

Goal positions keep `,` and `true` untouched; embedded hypothetical
clauses inside goals are normalized recursively, a conjunction of
hypotheses currying into nested implications.
"""

from .syntax import Atomic, Imp, All, And, TrueF
from .parser import SourceProgram


def distribute(f):
    """Split one (closed) clause into its And/True-free conjuncts."""
    t = type(f)
    if t is Atomic:
        return [f]
    if t is TrueF:
        return []
    if t is And:
        return distribute(f.left) + distribute(f.right)
    if t is Imp:
        goal = normalize_goal(f.prem)
        return [Imp(goal, c) for c in distribute(f.concl)]
    if t is All:
        return [All(f.var, c) for c in distribute(f.body)]
    raise TypeError("distribute: unexpected clause node %r" % (f,))


def normalize_goal(g):
    """Normalize clause positions inside a goal, keeping goal ,/true."""
    t = type(g)
    if t is Atomic or t is TrueF:
        return g
    if t is And:
        return And(normalize_goal(g.left), normalize_goal(g.right))
    if t is All:
        return All(g.var, normalize_goal(g.body))
    if t is Imp:
        # The antecedent is a clause: distribute it and curry the pieces.
        body = normalize_goal(g.concl)
        for c in reversed(distribute(g.prem)):
            body = Imp(c, body)
        return body
    raise TypeError("normalize_goal: unexpected goal node %r" % (g,))


def preprocess_program(program):
    """Clause-wise distribution, preserving relative clause order."""
    clauses = []
    for cl in program.clauses:
        clauses.extend(distribute(cl))
    return SourceProgram(clauses, program.modes, program.arities)


def preprocess_query(goal):
    return normalize_goal(goal)


def clause_position_clean(f):
    """True iff f has no And/True in clause position (structural check)."""
    t = type(f)
    if t is Atomic:
        return True
    if t is TrueF or t is And:
        return False
    if t is All:
        return clause_position_clean(f.body)
    if t is Imp:
        return _goal_clean(f.prem) and clause_position_clean(f.concl)
    return False


def _goal_clean(g):
    t = type(g)
    if t is Atomic or t is TrueF:
        return True
    if t is And:
        return _goal_clean(g.left) and _goal_clean(g.right)
    if t is All:
        return _goal_clean(g.body)
    if t is Imp:
        return clause_position_clean(g.prem) and _goal_clean(g.concl)
    return False
