"""Backend selection for the hot kernels.

The compiled extension (damplab._kernels) is preferred; the pure-python
twin (damplab._kernels_py) is the fallback. Set DAMPLAB_BACKEND=python or
DAMPLAB_BACKEND=cython to force one; forcing cython raises if the
extension was never built.
"""

import os

_forced = os.environ.get("DAMPLAB_BACKEND")

if _forced == "python":
    from . import _kernels_py as _impl
elif _forced == "cython":
    from . import _kernels as _impl  # type: ignore[no-redef]
elif _forced:
    raise ValueError(f"DAMPLAB_BACKEND must be 'python' or 'cython', got {_forced!r}")
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as _impl  # type: ignore[no-redef]

BACKEND = _impl.BACKEND_NAME

apply_kraus4 = _impl.apply_kraus4
trajectory4 = _impl.trajectory4
eigvalsh4 = _impl.eigvalsh4
completeness_residual = _impl.completeness_residual
