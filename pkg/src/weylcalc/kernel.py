"""Selects the compiled product kernel when available.

Set ``WEYLCALC_PURE=1`` to force the pure-Python implementation.
"""

import os

from . import _kernel_py

BACKEND = "python"

if os.environ.get("WEYLCALC_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernel as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _kernel_py
else:
    _impl = _kernel_py

product_accumulate = _impl.product_accumulate
decode_laurent = _impl.decode_laurent
pack = _kernel_py.pack
unpack = _kernel_py.unpack

__all__ = ["BACKEND", "available_backends", "decode_laurent", "pack", "product_accumulate", "unpack", "use_backend"]


def available_backends():
    out = ["python"]
    try:
        from . import _kernel  # noqa: F401

        out.insert(0, "cython")
    except ImportError:
        pass
    return out


def use_backend(name: str) -> None:
    """Switch the product kernel at runtime ('cython' or 'python')."""
    global product_accumulate, decode_laurent, BACKEND
    if name == "python":
        impl = _kernel_py
    elif name == "cython":
        from . import _kernel as impl
    else:
        raise ValueError(f"unknown kernel backend {name!r}")
    product_accumulate = impl.product_accumulate
    decode_laurent = impl.decode_laurent
    BACKEND = name
