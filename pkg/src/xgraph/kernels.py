"""Backend selection for the hot kernels.

The compiled ``_kernels`` extension is used when it was built; otherwise
the pure-Python twin in ``_pykernels`` is used.  Setting the environment
variable ``XGRAPH_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _pykernels

if os.environ.get("XGRAPH_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

perfect_matchings = _impl.perfect_matchings
canonical_code = _impl.canonical_code


def backends():
    """All importable backends, keyed by name (used by tests and benchmarks)."""
    found = {"python": _pykernels}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        found["cython"] = _kernels
    return found
