"""Select the compiled kernels when available, the numpy reference otherwise.

Set ``INFOWIDTH_PURE_PYTHON=1`` to force the reference implementation.
"""

from __future__ import annotations

import os

if os.environ.get("INFOWIDTH_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pykernels as _impl

BACKEND: str = _impl.BACKEND
point_subsets = _impl.point_subsets
shatters_any = _impl.shatters_any
vc_dims = _impl.vc_dims
l_dims = _impl.l_dims
enumerate_dims = _impl.enumerate_dims

__all__ = [
    "BACKEND",
    "point_subsets",
    "shatters_any",
    "vc_dims",
    "l_dims",
    "enumerate_dims",
]
