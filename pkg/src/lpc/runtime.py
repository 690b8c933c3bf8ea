"""Shared proof-search machinery: configuration, run context, driver.

All four pipelines are depth-first, left-to-right backtracking searches
written as generators. One yield is one proof of the current goal under
the current bindings; the caller reads the store while the generator is
suspended. Every state change is paired with an undo in a finally block,
so abandoning a generator mid-stream (solution cap) unwinds the trail in
LIFO order.

Depth is the number of inference-rule applications on the current branch.
A branch that would exceed the budget is pruned and the run is flagged
incomplete; pruning is not an error.
"""

from .engine import Store, resolve


class SearchConfig:
    def __init__(self, max_depth=30, max_solutions=1, fused=False,
                 strict_match=False, trace=None, clause_order="file",
                 optimize=False):
        if max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        self.max_depth = max_depth
        self.max_solutions = max_solutions
        self.fused = fused
        self.strict_match = strict_match
        self.trace = trace
        self.clause_order = clause_order  # FileOrder is the only policy
        self.optimize = optimize


class Solution:
    """One answer: query-variable bindings plus run statistics."""

    def __init__(self, bindings, stats, depth_used):
        self.bindings = bindings  # name -> fully dereferenced Term
        self.stats = stats
        self.depth_used = depth_used

    def __repr__(self):
        return "Solution(%r)" % (self.bindings,)


class RunResult:
    def __init__(self, solutions, incomplete, counters):
        self.solutions = solutions
        self.incomplete = incomplete
        self.counters = counters

    @property
    def solvable(self):
        return bool(self.solutions)


class Ctx:
    """Mutable state of one query run."""

    __slots__ = ("store", "cfg", "static", "dynamic", "pruned", "high",
                 "max_depth")

    def __init__(self, static_clauses, cfg, store=None):
        self.store = store or Store()
        self.store.strict_match = cfg.strict_match
        self.store.trace = cfg.trace
        self.cfg = cfg
        self.static = list(static_clauses)
        self.dynamic = []
        self.pruned = False
        self.high = 0
        self.max_depth = cfg.max_depth

    def charge(self, rule, depth):
        """Account for one rule application; False means the branch is cut."""
        if depth > self.max_depth:
            self.pruned = True
            return False
        if depth > self.high:
            self.high = depth
        self.store.counters.rule(rule)
        return True

    def bump(self, depth):
        """Depth check without a rule charge (macro-step accounting)."""
        if depth > self.max_depth:
            self.pruned = True
            return False
        if depth > self.high:
            self.high = depth
        return True

    def clause_seq(self):
        """Selection order: most recently assumed first, then file order."""
        if self.dynamic:
            return list(reversed(self.dynamic)) + self.static
        return self.static


def unify_atoms(store, a1, a2):
    """One unification event covering predicate and arguments."""
    if a1.pred != a2.pred or len(a1.args) != len(a2.args):
        return False
    return store.unify_seq(a1.args, a2.args)


def hypothetically(ctx, clause, gen):
    """Run gen with clause assumed, but retract it while each success is
    consumed: the assumption must not leak into whatever the caller
    proves next, and must be back in place when the proof is re-entered
    on backtracking."""
    ctx.dynamic.append(clause)
    try:
        for _ in gen:
            ctx.dynamic.pop()
            try:
                yield
            finally:
                ctx.dynamic.append(clause)
    finally:
        ctx.dynamic.pop()


def drive(gen, ctx, qvars, cfg):
    """Enumerate solutions from a solver generator.

    qvars is an ordered mapping of query variable name -> LVar.
    """
    solutions = []
    try:
        for _ in gen:
            bindings = {name: resolve(v) for name, v in qvars.items()}
            solutions.append(Solution(bindings,
                                      ctx.store.counters.snapshot(),
                                      ctx.high))
            if len(solutions) >= cfg.max_solutions:
                break
    finally:
        gen.close()
    return RunResult(solutions, ctx.pruned, ctx.store.counters)


def make_query_vars(names, store):
    """Create the query's logical variables (oldest timestamps in the run)."""
    return {name: store.fresh_lvar() for name in names}
