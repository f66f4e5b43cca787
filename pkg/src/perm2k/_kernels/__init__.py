"""Kernel backend selection.

The compiled Cython core is preferred when it was built; otherwise the
pure-Python twin is used.  Set ``PERM2K_BACKEND=pure`` or
``PERM2K_BACKEND=compiled`` to force a choice (the latter raises if the
extension is unavailable).  Both backends implement the same functions
on int-packed GF(2) polynomials and agree exactly.
"""

import os

_choice = os.environ.get("PERM2K_BACKEND", "")
if _choice not in ("", "pure", "compiled"):
    raise ImportError(f"unknown PERM2K_BACKEND value: {_choice!r}")

if _choice == "pure":
    from perm2k._kernels import pure as _impl
else:
    try:
        from perm2k._kernels import core as _impl  # type: ignore[no-redef]
    except ImportError:
        if _choice == "compiled":
            raise
        from perm2k._kernels import pure as _impl

BACKEND = _impl.BACKEND
has_clmul = _impl.has_clmul
clmul = _impl.clmul
clsqr = _impl.clsqr
clrem = _impl.clrem
cldivmod = _impl.cldivmod
clmulmod = _impl.clmulmod
clsqrmod = _impl.clsqrmod
clmulmod_tri = _impl.clmulmod_tri
clsqrmod_tri = _impl.clsqrmod_tri

__all__ = [
    "BACKEND",
    "has_clmul",
    "clmul",
    "clsqr",
    "clrem",
    "cldivmod",
    "clmulmod",
    "clsqrmod",
    "clmulmod_tri",
    "clsqrmod_tri",
]
