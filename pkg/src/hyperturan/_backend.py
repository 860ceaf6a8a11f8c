"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module is used.  Both expose the same functions
with identical results, so the choice only affects speed.
"""
from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["compiled"] = _ckernels

kernels = _ckernels if _ckernels is not None else _pykernels


def available() -> list[str]:
    return sorted(_BACKENDS)


def current() -> str:
    return "compiled" if kernels is _ckernels and _ckernels is not None else "python"


def use(name: str) -> None:
    """Switch every module to the named backend (``"python"`` or ``"compiled"``)."""
    global kernels
    try:
        kernels = _BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available; have {available()}") from None
