#!/usr/bin/env python3
"""Benchmark the compiled binding-store kernel against the pure one.

Spawns itself twice (with and without LPC_PURE=1) so each process gets a
clean backend, runs a unification stress loop and a proof-search
workload, and prints the timings side by side.

    python scripts/benchmark.py [--pairs N] [--programs N]
"""

import argparse
import json
import os
import random
import subprocess
import sys
import time


def _gen_term(rng, pool, depth, Const, App):
    if depth == 0 or rng.random() < 0.3:
        if pool and rng.random() < 0.5:
            return rng.choice(pool)
        return Const(rng.choice("abc"))
    name, arity = rng.choice((("f", 1), ("g", 2), ("s", 1)))
    t = Const(name)
    for _ in range(arity):
        t = App(t, _gen_term(rng, pool, depth - 1, Const, App))
    return t


def run_workload(pairs, programs):
    import lpc
    from lpc.engine import Store, Const, App
    from lpc.harness import run_diff

    rng = random.Random(12345)
    t0 = time.perf_counter()
    successes = 0
    for _ in range(pairs):
        st = Store()
        pool = [st.fresh_lvar() for _ in range(4)]
        t1 = _gen_term(rng, pool, 5, Const, App)
        t2 = _gen_term(rng, pool, 5, Const, App)
        if st.unify(t1, t2):
            successes += 1
    t_unify = time.perf_counter() - t0

    t0 = time.perf_counter()
    mism = 0
    for profile in ("horn", "hh", "moded"):
        rep = run_diff([1], programs, profile, depth=30, max_solutions=16)
        mism += rep["mismatches"]
    t_search = time.perf_counter() - t0

    return {"backend": lpc.BACKEND, "unify_s": t_unify,
            "search_s": t_search, "successes": successes,
            "mismatches": mism}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--pairs", type=int, default=30000)
    ap.add_argument("--programs", type=int, default=30)
    ap.add_argument("--child", action="store_true")
    args = ap.parse_args()

    if args.child:
        print(json.dumps(run_workload(args.pairs, args.programs)))
        return 0

    results = []
    for pure in (False, True):
        env = dict(os.environ)
        if pure:
            env["LPC_PURE"] = "1"
        else:
            env.pop("LPC_PURE", None)
        out = subprocess.run(
            [sys.executable, __file__, "--child",
             "--pairs", str(args.pairs), "--programs", str(args.programs)],
            capture_output=True, text=True, env=env, check=True)
        results.append(json.loads(out.stdout))

    compiled, pure = results
    if compiled["backend"] == pure["backend"]:
        print("note: extension not built, both runs used the %r backend"
              % pure["backend"])
    print("%-8s %14s %14s" % ("backend", "unify stress", "proof search"))
    for r in results:
        print("%-8s %12.3fs %12.3fs" % (r["backend"], r["unify_s"],
                                        r["search_s"]))
    if compiled["backend"] != pure["backend"]:
        print("speedup: unify x%.2f, search x%.2f"
              % (pure["unify_s"] / compiled["unify_s"],
                 pure["search_s"] / compiled["search_s"]))
    assert compiled["successes"] == pure["successes"]
    assert compiled["mismatches"] == pure["mismatches"] == 0
    return 0


if __name__ == "__main__":
    sys.exit(main())
