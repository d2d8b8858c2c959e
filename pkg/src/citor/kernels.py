"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``CITOR_PURE_PYTHON=1`` to force the fallback.
"""

import os

BACKEND = "python"

if os.environ.get("CITOR_PURE_PYTHON") != "1":
    try:
        from ._ckernels import (full_reduce, rref, shift_vector, sub_mul,  # noqa: F401
                                top_reduce, top_reduce_below)
        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from ._kernels_py import (full_reduce, rref, shift_vector, sub_mul,  # noqa: F401
                              top_reduce, top_reduce_below)
