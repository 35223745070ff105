"""Hot loops of the statevector simulator.

The compiled extension is used when it was built; otherwise the numpy
fallback is loaded. Set ``HSPLAB_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
if os.environ.get("HSPLAB_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
else:
    _impl = _pykernels

apply_matrix = _impl.apply_matrix
oracle_add = _impl.oracle_add
marginal = _impl.marginal
project = _impl.project


def available_backends():
    out = {"python": _pykernels}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
