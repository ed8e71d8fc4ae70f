"""Kernel backend selection: compiled extension if available, else pure Python.

Set SINGER_PURE_PYTHON=1 to force the fallback (used by the benchmark and
the backend-equivalence tests)."""

import os

if os.environ.get("SINGER_PURE_PYTHON"):
    from . import _kernels_py as _impl
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl
        BACKEND = "python"

assoc_witness = _impl.assoc_witness
distrib_witness = _impl.distrib_witness
line_pair_witness = _impl.line_pair_witness
coverage_witness = _impl.coverage_witness
