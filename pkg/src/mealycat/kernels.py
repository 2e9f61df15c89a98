"""Kernel dispatch.

The compiled module is used when it was built and importable; otherwise the
pure-Python implementation takes over.  Setting ``MEALYCAT_PURE_PYTHON=1``
forces the fallback at import time, and :func:`use_backend` switches at run
time (benchmarks and the equivalence tests use it).
"""

import os

from . import _pykernels as pure

try:
    if os.environ.get("MEALYCAT_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python kernels requested")
    from . import _ckernels as compiled
except ImportError:
    compiled = None

_NAMES = (
    "word_offsets",
    "extend_free",
    "extend_fold",
    "split_violation_free",
    "split_violation_table",
    "diamond_mismatch",
    "rel_compose_rows",
    "rel_enumerate",
)

BACKEND = "python"


def available():
    return ["cython", "python"] if compiled is not None else ["python"]


def use_backend(name):
    """Select "cython" or "python"; returns the name previously in use."""
    global BACKEND
    if name == "cython":
        if compiled is None:
            raise ImportError("the compiled kernels were not built")
        module = compiled
    elif name == "python":
        module = pure
    else:
        raise ValueError(f"unknown backend {name!r}")
    previous = BACKEND
    for fn in _NAMES:
        globals()[fn] = getattr(module, fn)
    BACKEND = name
    return previous


use_backend("cython" if compiled is not None else "python")
