"""Hot inner loops, compiled when the extension is built.

The compiled module is preferred at import; set ``DUALCX_PURE_PYTHON=1`` to
force the pure-Python implementations. ``BACKEND`` names the active one.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("DUALCX_PURE_PYTHON") != "1":
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

reduce_a = _impl.reduce_a
reduce_ab = _impl.reduce_ab
peel_greedy = _impl.peel_greedy

__all__ = ["BACKEND", "reduce_a", "reduce_ab", "peel_greedy"]
