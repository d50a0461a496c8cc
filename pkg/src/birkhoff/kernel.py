"""Backend selection for the elimination kernels.

The compiled extension ``_ckernel`` is used when importable; otherwise the
pure-Python ``_pykernel`` is used.  Setting ``BIRKHOFF_BACKEND=python`` forces
the fallback.
"""

import os

from . import _pykernel

if os.environ.get("BIRKHOFF_BACKEND", "").lower() == "python":
    _impl = _pykernel
else:
    try:
        from . import _ckernel as _impl
    except ImportError:  # extension not built
        _impl = _pykernel

BACKEND = "cython" if _impl is not _pykernel else "python"

rref_mod = _impl.rref_mod
rank_mod = _impl.rank_mod
rref_int = _impl.rref_int


def backends():
    """Return the importable backends as a ``{name: module}`` dict."""
    found = {"python": _pykernel}
    try:
        from . import _ckernel

        found["cython"] = _ckernel
    except ImportError:
        pass
    return found
