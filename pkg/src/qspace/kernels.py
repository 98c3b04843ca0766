"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
reference kernels.  Set ``QSPACE_PURE_PYTHON=1`` to force the fallback.
"""

import os

from qspace import _kernels_py

if os.environ.get("QSPACE_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from qspace import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"

gf2_rref = _impl.gf2_rref
count_simplices = _impl.count_simplices
all_intersecting = _impl.all_intersecting
adjacency = _impl.adjacency
count_sequences = _impl.count_sequences
