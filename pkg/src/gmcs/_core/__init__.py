"""Numerical kernel selection: compiled extension if available, NumPy fallback
otherwise.  Set GMCS_PURE_PYTHON=1 to force the fallback."""

import os

from . import fallback as _fallback

if os.environ.get("GMCS_PURE_PYTHON"):
    _impl = _fallback
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _fallback

COMPILED = bool(getattr(_impl, "COMPILED", False))
reg_inc_beta = _impl.reg_inc_beta
reg_inc_beta_many = _impl.reg_inc_beta_many
closure_scan = _impl.closure_scan
