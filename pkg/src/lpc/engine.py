"""Binding-store backend selection.

The hot kernel (term cells, trail, unify/match/assign) exists twice: as a
Cython extension (`lpc._core`) and as plain Python (`lpc._core_py`). The
extension is used when it was built; set LPC_PURE=1 to force the pure
version. Everything else in the package imports the kernel names from
here so the choice is made exactly once per process.
"""

import os

if os.environ.get("LPC_PURE"):
    from . import _core_py as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _core_py as _impl

Term = _impl.Term
Var = _impl.Var
Const = _impl.Const
App = _impl.App
LVar = _impl.LVar
Eigen = _impl.Eigen
Store = _impl.Store
Counters = _impl.Counters
StrictMatchViolation = _impl.StrictMatchViolation
deref = _impl.deref
is_ground = _impl.is_ground
resolve = _impl.resolve
BACKEND = _impl.BACKEND
