"""Word-sum kernels with a compiled fast path.

Importing this package picks the Cython extension when it is built and
falls back to the NumPy reference implementation otherwise.  ``BACKEND``
records which one is active; both expose the same three callables and are
asserted equal (to rounding) in the test suite.
"""

from . import _ref

try:  # pragma: no cover - depends on whether the extension was compiled
    from . import _speedups as _impl

    BACKEND = "cython"
except ImportError:  # pragma: no cover
    _impl = _ref
    BACKEND = "numpy"

cocycle_tables = _ref.cocycle_tables
mode_sums = _impl.mode_sums
power_shell_sums = _impl.power_shell_sums

reference = _ref

__all__ = [
    "BACKEND",
    "cocycle_tables",
    "mode_sums",
    "power_shell_sums",
    "reference",
]
