"""Select the grid-scan backend at import time.

The compiled extension is used when it was built; set
``RIPANGLE_PURE_PYTHON=1`` to force the numpy fallback.
"""
import os

from . import _scan_py

if os.environ.get("RIPANGLE_PURE_PYTHON"):
    scan_blocks = _scan_py.scan_blocks
    BACKEND = "python"
else:
    try:
        from ._scan import scan_blocks
        BACKEND = "cython"
    except ImportError:
        scan_blocks = _scan_py.scan_blocks
        BACKEND = "python"

python_scan_blocks = _scan_py.scan_blocks
