"""Pick the compiled kernels when available, else the pure-Python ones.

Set GMMH_PURE_PYTHON=1 to force the fallback.
"""

import os

from . import _purepy

kernels = _purepy
NAME = "python"

if not os.environ.get("GMMH_PURE_PYTHON"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        kernels = _ckernels
        NAME = "cython"
