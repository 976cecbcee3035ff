"""Backend selection for the hot numeric kernels.

Two interchangeable kernel implementations exist: numba-compiled sequential
scans and vectorized pure-numpy batch scans.  The numba path is used when
numba imports cleanly and the environment variable ``NETGAMES_NO_NUMBA`` is
unset (or "0"); otherwise the numpy path is selected.  Both paths implement
identical scan orders, so results (including failure witnesses) are
bit-for-bit interchangeable.
"""

import os

_DISABLED = os.environ.get("NETGAMES_NO_NUMBA", "0") not in ("0", "")

HAS_NUMBA = False
if not _DISABLED:
    try:
        import numba  # noqa: F401

        HAS_NUMBA = True
    except ImportError:
        HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and not _DISABLED


def njit_or_noop(*args, **kwargs):
    """Return ``numba.njit`` when the numba backend is active, else a no-op.

    With the numpy backend active the decorated functions still run as plain
    Python; they are only used as slow references and in the benchmark.
    """
    if USE_NUMBA:
        import numba

        return numba.njit(*args, **kwargs)

    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def decorator(func):
        return func

    return decorator


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
