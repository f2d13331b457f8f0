"""Kernel selection: the compiled extension when importable, else numpy.

Set ``TWRGRAPH_PURE=1`` to force the numpy fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py
if os.environ.get("TWRGRAPH_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py

tuple_mul = _impl.tuple_mul
tuple_twist = _impl.tuple_twist
coset_lexmin = _impl.coset_lexmin
coset_members = _impl.coset_members

__all__ = ["BACKEND", "tuple_mul", "tuple_twist", "coset_lexmin", "coset_members"]
