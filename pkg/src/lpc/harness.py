"""Corpus generation and differential testing across the pipelines.

Programs are generated from small parametric families (peano addition,
list append/member/reverse, DAG reachability, hypothetical and
eigenvariable patterns, multi-headed extended clauses, a first-order
lambda-term typing fragment) with randomized sizes, constants and
distractor clauses. Every family terminates by construction: recursion
always peels a constructor or walks an acyclic fact base, so a depth-30
budget either completes or prunes only doomed branches. The moded
profile declares modes that its generator keeps consistent with the
dataflow, and only emits queries with ground input arguments.

For each (program, query) the differential driver runs the source
interpreter (on the raw and on the preprocessed program), the background
target, the main target in small-step and fused mode, the moded target
in both modes, and the optimizer variant of the main target. Answers are
compared as multisets of alpha-normalized binding tuples. A query where
any configuration was depth-pruned is exempt from comparison: a pruned
run may legitimately miss answers. Everything else must agree exactly.
"""

import json
import random
from collections import Counter

from .engine import Const, Var, LVar, Eigen, deref
from . import interp, l0, l1, l2
from .parser import parse_program, parse_query
from .preprocess import preprocess_program, preprocess_query
from .runtime import SearchConfig

CORE_CONFIGS = ("interp", "l0", "l1", "l1_fused", "l2", "l2_fused")


# ---------------------------------------------------------------------------
# Corpus generation
# ---------------------------------------------------------------------------

class CorpusItem:
    def __init__(self, text, queries, profile, family, ground_inputs):
        self.text = text
        self.queries = queries
        self.profile = profile
        self.family = family
        self.ground_inputs = ground_inputs


def _nat(n):
    return "z" if n == 0 else "(s %s)" % _nat(n - 1)


def _lst(xs):
    out = "nil"
    for x in reversed(xs):
        out = "(cons %s %s)" % (x, out)
    return out


def _distract(rng, lines, queries):
    # An irrelevant clause keeps clause selection honest. Only used by
    # families with at most two predicates of their own: each program
    # stays within six clauses over at most three predicate symbols,
    # arities up to three, and constructor terms nested at most three.
    if rng.random() < 0.5:
        c = rng.choice("kmn")
        lines.append("aux %s." % c)
        if rng.random() < 0.4:
            queries.append("?- aux %s." % rng.choice("kmn"))


def _t_plus(rng, moded):
    lines = ["#mode plus(+,+,-)."] if moded else []
    lines += ["plus z Y Y.", "plus (s X) Y (s Z) <- plus X Y Z."]
    i, j = rng.randint(0, 1), rng.randint(0, 1)
    qs = ["?- plus %s %s R." % (_nat(i), _nat(j)),
          "?- plus %s z %s." % (_nat(i), _nat(i)),
          "?- plus z z (s z)."]
    if not moded:
        qs.append("?- plus X Y (s z).")
    _distract(rng, lines, qs)
    return lines, qs


def _t_append(rng, moded):
    lines = ["#mode app(+,+,-)."] if moded else []
    lines += ["app nil L L.", "app (cons H T) L (cons H R) <- app T L R."]
    l1_ = [rng.choice("ab") for _ in range(rng.randint(0, 1))]
    l2_ = [rng.choice("bc") for _ in range(rng.randint(0, 2))]
    qs = ["?- app %s %s R." % (_lst(l1_), _lst(l2_)),
          "?- app nil %s %s." % (_lst(l2_), _lst(l2_)),
          "?- app %s nil %s." % (_lst(l1_), _lst(["d"]))]
    if not moded:
        qs.append("?- app X Y %s." % _lst(["a"]))
    _distract(rng, lines, qs)
    return lines, qs


def _t_member(rng, moded):
    lines = ["#mode mem(-,+)."] if moded else []
    lines += ["mem X (cons X T).", "mem X (cons H T) <- mem X T."]
    xs = [rng.choice("abc") for _ in range(rng.randint(1, 2))]
    qs = ["?- mem R %s." % _lst(xs),
          "?- mem R nil.",
          "?- mem %s %s." % (xs[0], _lst(xs))]
    _distract(rng, lines, qs)
    return lines, qs


def _t_path(rng, moded):
    nodes = "abc"
    lines = ["#mode edge(+,-).", "#mode path(+,-)."] if moded else []
    for x, y in zip(nodes, nodes[1:]):
        lines.append("edge %s %s." % (x, y))
    if rng.random() < 0.5 and len(nodes) >= 3:
        lines.append("edge %s %s." % (nodes[0], nodes[2]))
    lines += ["path X Y <- edge X Y.",
              "path X Z <- edge X Y <- path Y Z."]
    qs = ["?- path %s R." % nodes[0],
          "?- path %s R." % nodes[-1],
          "?- path %s %s." % (nodes[0], nodes[1])]
    return lines, qs


def _t_rev(rng, moded):
    lines = ["#mode rev(+,+,-)."] if moded else []
    lines += ["rev nil A A.", "rev (cons H T) A R <- rev T (cons H A) R."]
    xs = [rng.choice("ab") for _ in range(rng.randint(0, 1))]
    qs = ["?- rev %s nil R." % _lst(xs),
          "?- rev nil %s %s." % (_lst(xs), _lst(xs)),
          "?- rev %s nil %s." % (_lst(xs), _lst(["d", "d"]))]
    _distract(rng, lines, qs)
    return lines, qs


def _t_hyp(rng):
    c = rng.choice("cde")
    lines = ["r X <- q X.", "test Y <- (q Y => r Y)."]
    qs = ["?- test %s." % c, "?- test X.", "?- r %s." % c,
          "?- (q %s => q %s)." % (c, c)]
    return lines, qs


def _t_eigen(rng):
    lines = ["good X <- chk X.",
             "tst <- (all y. chk y => good y)."]
    qs = ["?- tst.", "?- good %s." % rng.choice("cd"),
          "?- all y. (chk y => chk y)."]
    return lines, qs


def _t_eigen_trap(rng):
    # binding an outer variable to the eigenvariable violates its scope
    lines = ["good X <- chk X.",
             "trap R <- (all y. chk y => good R)."]
    qs = ["?- trap R.", "?- trap %s." % rng.choice("cd"), "?- good R."]
    return lines, qs


def _t_scope(rng):
    c = rng.choice("cd")
    lines = ["q %s <- p %s." % (c, c), "w <- true."]
    qs = ["?- (p %s => q %s), p %s." % (c, c, c),
          "?- (p %s => q %s)." % (c, c),
          "?- w."]
    return lines, qs


def _t_twohead(rng):
    c = rng.choice("cde")
    lines = ["(h1 X, h2 X) <- src X.", "src %s." % c, "true <- src d."]
    qs = ["?- h2 %s." % c, "?- h1 %s, h2 %s." % (c, c), "?- h1 k."]
    return lines, qs


def _t_stlc_fo(rng):
    # First-order reading of the typing clauses; runtime behavior of the
    # variable-headed application is plain syntactic unification.
    lines = ["of (app E1 E2) T2 <- of E1 (arr T1 T2) <- of E2 T1.",
             "of (lam T1 E) (arr T1 T2) <- (all x. of x T1 => of (E x) T2).",
             "of e0 t0."]
    qs = ["?- of e0 T.", "?- of (app E1 E2) t0 => of e0 t0.",
          "?- of q0 T."]
    return lines, qs


def _t_hyp_moded(rng):
    # Hypotheses and universal goals under mode discipline: the embedded
    # clause and the eigenvariable both pass the conservative checker,
    # and every match in these runs keeps a ground left side.
    c = rng.choice("cd")
    lines = ["#mode rm(+).", "#mode qm(+).", "#mode tm(+).",
             "rm X <- qm X.",
             "tm X <- (qm X => rm X)."]
    qs = ["?- tm %s." % c, "?- rm %s." % c, "?- tm %s, tm %s." % (c, c)]
    return lines, qs


def _t_eig_moded(rng):
    lines = ["#mode rm(+).", "#mode qm(+).",
             "rm X <- qm X.",
             "um <- (all y. qm y => rm y)."]
    qs = ["?- um.", "?- rm %s." % rng.choice("cd"), "?- um, um."]
    return lines, qs


def _t_horn_soup(rng):
    consts = rng.sample("abcd", 3)
    lines = ["p %s." % consts[0], "p %s." % consts[1],
             "r %s %s." % (consts[0], consts[1]),
             "q X <- p X.",
             "q X <- r X Y <- p Y."]
    qs = ["?- q A.", "?- r A B.", "?- q %s." % consts[2]]
    return lines, qs


_FAMILIES = {
    "horn": [("plus", lambda r: _t_plus(r, False)),
             ("append", lambda r: _t_append(r, False)),
             ("member", lambda r: _t_member(r, False)),
             ("path", lambda r: _t_path(r, False)),
             ("rev", lambda r: _t_rev(r, False)),
             ("soup", _t_horn_soup)],
    "hh": [("hyp", _t_hyp),
           ("eigen", _t_eigen),
           ("scope", _t_scope),
           ("twohead", _t_twohead),
           ("stlc", _t_stlc_fo),
           ("trap", _t_eigen_trap)],
    "moded": [("plus", lambda r: _t_plus(r, True)),
              ("append", lambda r: _t_append(r, True)),
              ("member", lambda r: _t_member(r, True)),
              ("path", lambda r: _t_path(r, True)),
              ("rev", lambda r: _t_rev(r, True)),
              ("hypm", _t_hyp_moded),
              ("eigm", _t_eig_moded)],
}


def gen_corpus(seed, count, profile):
    """Deterministic corpus of `count` (program, queries) items."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if profile not in _FAMILIES:
        raise ValueError("unknown profile %r" % profile)
    rng = random.Random(1000003 * seed + len(profile))
    families = _FAMILIES[profile]
    items = []
    for i in range(count):
        name, fn = families[i % len(families)]
        lines, qs = fn(rng)
        items.append(CorpusItem("\n".join(lines) + "\n", qs, profile, name,
                                ground_inputs=(profile == "moded")))
    return items


# ---------------------------------------------------------------------------
# Answer normalization
# ---------------------------------------------------------------------------

def normalize_term(t, ren):
    t = deref(t)
    tt = type(t)
    if tt is LVar:
        if t.id not in ren:
            ren[t.id] = "_%d" % len(ren)
        return ren[t.id]
    if tt is Const:
        return t.name
    if tt is Eigen:
        return "!" + t.name  # should never survive into an answer
    if tt is Var:
        return "'" + t.name
    return "(%s %s)" % (normalize_term(t.fn, ren), normalize_term(t.arg, ren))


def normalize_answers(result, qvar_names):
    """Multiset of answers, open variables renamed canonically per answer."""
    out = Counter()
    for sol in result.solutions:
        ren = {}
        out[";".join("%s=%s" % (n, normalize_term(sol.bindings[n], ren))
                     for n in qvar_names)] += 1
    return out


# ---------------------------------------------------------------------------
# Differential driver
# ---------------------------------------------------------------------------

class Artifacts:
    """Everything compiled once per corpus item."""

    def __init__(self, text):
        self.raw = parse_program(text)
        self.pre = preprocess_program(self.raw)
        self.p0 = l0.compile_program_l0(self.pre)
        self.p1 = l1.compile_program_l1(self.pre)
        self.p1_opt = l1.optimize_program_l1(self.p1)
        self.p2 = l2.compile_program_l2(self.pre)


def run_config(name, art, raw_goal, qvars, depth, max_solutions,
               strict=False):
    cfg = SearchConfig(max_depth=depth, max_solutions=max_solutions,
                       strict_match=strict)
    if name == "interp_raw":
        return interp.solve_uniform(art.raw, raw_goal, cfg, qvars)
    goal = preprocess_query(raw_goal)
    if name == "interp":
        return interp.solve_uniform(art.pre, goal, cfg, qvars)
    if name == "l0":
        return l0.solve_l0(art.p0, l0.compile_goal_l0(goal), cfg, qvars)
    if name in ("l1", "l1_fused", "l1_opt"):
        cfg.fused = name == "l1_fused"
        prog = art.p1_opt if name == "l1_opt" else art.p1
        return l1.solve_l1(prog, l1.compile_goal_l1(goal), cfg, qvars)
    if name in ("l2", "l2_fused"):
        cfg.fused = name == "l2_fused"
        return l2.solve_l2(art.p2, l2.compile_goal_l2(goal), cfg, qvars)
    raise ValueError("unknown configuration %r" % name)


def diff_pipelines(text, queries, depth=30, max_solutions=16,
                   ground_inputs=False, art=None):
    """Run every configuration on every query and compare.

    Returns a dict report; verdict is "pass" unless some non-pruned pair
    of configurations disagrees on solvability or answers, or a moded
    ground-input run performed a non-ground match.
    """
    if art is None:
        art = Artifacts(text)
    configs = list(CORE_CONFIGS) + ["interp_raw", "l1_opt"]
    if ground_inputs:
        configs += ["l2_strict", "l2_fused_strict"]
    qreports = []
    verdict = "pass"
    for qtext in queries:
        raw_goal, qvars = parse_query(qtext, art.raw)
        outcomes = {}
        for name in configs:
            strict = name.endswith("_strict")
            base = name[:-7] if strict else name
            res = run_config(base, art, raw_goal, qvars, depth,
                             max_solutions, strict=strict)
            outcomes[name] = {
                "solvable": res.solvable,
                "incomplete": res.incomplete,
                "answers": normalize_answers(res, qvars),
                "counters": res.counters.snapshot(),
            }
        gated = any(o["incomplete"] for o in outcomes.values())
        mismatch = None
        if not gated:
            ref = outcomes["interp"]
            for name, o in outcomes.items():
                if (o["solvable"] != ref["solvable"]
                        or o["answers"] != ref["answers"]):
                    mismatch = ("%s disagrees with interp on %r"
                                % (name, qtext))
                    break
        if ground_inputs and mismatch is None:
            for name in ("l2", "l2_fused", "l2_strict", "l2_fused_strict"):
                if outcomes[name]["counters"]["non_ground_match_lhs"] != 0:
                    mismatch = ("%s performed a non-ground match on %r"
                                % (name, qtext))
                    break
        if mismatch:
            verdict = "fail"
        qreports.append({"query": qtext, "gated": gated,
                         "mismatch": mismatch, "outcomes": outcomes})
    return {"program": text, "verdict": verdict, "queries": qreports}


def run_diff(seeds, count, profile, depth=30, max_solutions=16):
    """Full differential run; returns a report dict (JSON-ready)."""
    if isinstance(seeds, int):
        seeds = [seeds]
    items = []
    mismatches = 0
    gated = 0
    nqueries = 0
    for seed in seeds:
        for ix, item in enumerate(gen_corpus(seed, count, profile)):
            rep = diff_pipelines(item.text, item.queries, depth,
                                 max_solutions,
                                 ground_inputs=item.ground_inputs)
            rep["seed"] = seed
            rep["index"] = ix
            rep["family"] = item.family
            nqueries += len(rep["queries"])
            gated += sum(1 for q in rep["queries"] if q["gated"])
            if rep["verdict"] == "fail":
                mismatches += 1
            items.append(rep)
    return {
        "profile": profile,
        "seeds": list(seeds),
        "count": count,
        "depth": depth,
        "max_solutions": max_solutions,
        "programs": len(items),
        "queries": nqueries,
        "gated_queries": gated,
        "mismatches": mismatches,
        "passed": mismatches == 0,
        "items": items,
    }


def report_to_json(report, path=None):
    """Serialize a diff report (Counters become sorted answer lists)."""

    def default(o):
        if isinstance(o, Counter):
            return sorted(o.elements())
        raise TypeError(repr(o))

    text = json.dumps(report, indent=2, default=default, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    return text
