"""Backend selection for the hot subset scan.

The compiled extension is used when it was built; set ``METRICDIV_PURE=1``
to force the pure-Python implementation.
"""
import os

from . import _kernels_py

BACKEND = "python"
scan_error_objective = _kernels_py.scan_error_objective

if not os.environ.get("METRICDIV_PURE"):
    try:
        from . import _kernels
    except ImportError:  # extension not built
        _kernels = None
    else:
        scan_error_objective = _kernels.scan_error_objective
        BACKEND = "cython"
