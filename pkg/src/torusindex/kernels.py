"""Select the compiled polynomial kernels when available.

Set ``TORUSINDEX_PURE_PYTHON=1`` to force the pure-Python fallback.
"""

import os

if os.environ.get("TORUSINDEX_PURE_PYTHON"):
    from torusindex import _kernels_py as impl
else:
    try:
        from torusindex import _kernels as impl
    except ImportError:  # extension not built
        from torusindex import _kernels_py as impl

BACKEND = impl.BACKEND
KEY_OFFSET = impl.KEY_OFFSET
pack = impl.pack
unpack = impl.unpack
mul = impl.mul
add = impl.add
scale = impl.scale
content = impl.content
divexact = impl.divexact
shift = impl.shift

__all__ = [
    "BACKEND", "KEY_OFFSET", "pack", "unpack", "mul", "add", "scale",
    "content", "divexact", "shift",
]
