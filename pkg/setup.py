"""Build script: compiles the optional Cython word-sum kernel.

The package works without the extension (a NumPy fallback is selected at
import time), so any compiler failure downgrades to a pure-Python install
instead of aborting.
"""

import sys

from setuptools import setup

try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    extensions = cythonize(
        [
            Extension(
                "schottkyscat.kernels._speedups",
                ["src/schottkyscat/kernels/_speedups.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print(f"schottkyscat: skipping compiled kernels ({exc})", file=sys.stderr)
    extensions = []

setup(ext_modules=extensions)
