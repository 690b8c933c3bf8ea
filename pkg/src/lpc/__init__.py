"""Compiler and proof-search runtime for a small hereditary Harrop
logic programming language, with three compilation targets and a
differential harness that cross-checks them against the source
interpreter."""

from .engine import (BACKEND, Var, Const, App, LVar, Eigen, Store,
                     StrictMatchViolation, deref, is_ground, resolve)
from .syntax import (Atom, Atomic, Imp, All, Exists, And, TRUE, Eq, Mtch,
                     Assg, Lam, EqAtom, Call, IN, OUT, UNMODED,
                     substitute, substitute_many, alpha_equal, dump_sexpr,
                     parse_sexpr, pretty_term, UnpreprocessedConnective,
                     MalformedClause)
from .parser import ParseError, SourceProgram, parse_program, parse_query
from .preprocess import distribute, preprocess_program, preprocess_query
from .runtime import SearchConfig, Solution, RunResult
from .interp import solve_uniform, immediate_entail
from .l0 import compile_program_l0, compile_goal_l0, solve_l0
from .l1 import (compile_program_l1, compile_goal_l1, compile_clause_l1,
                 compile_head_l1, instantiate_hole, solve_l1, solve_l1_fused,
                 optimize_l1, optimize_program_l1)
from .l2 import (compile_program_l2, compile_goal_l2, compile_clause_l2,
                 compile_head_l2, compile_atomic_goal_l2, solve_l2,
                 solve_l2_fused, check_well_moded)
from .harness import gen_corpus, diff_pipelines, run_diff

__version__ = "0.1.0"
