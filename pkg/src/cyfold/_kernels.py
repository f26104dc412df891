"""Kernel selection: compiled extension when built, pure Python otherwise.

Set CYFOLD_PURE_PYTHON=1 to force the fallback (used by the benchmark and
by the bit-identity test).
"""

import os

if os.environ.get("CYFOLD_PURE_PYTHON"):
    from . import _rowreduce_py as _impl
else:
    try:
        from . import _rowreduce_c as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _rowreduce_py as _impl

rref_frac = _impl.rref_frac
rref_modp = _impl.rref_modp
BACKEND = _impl.BACKEND
