"""Build the optional Cython acceleration for the Monte Carlo SINR kernels.

The package works without the extension (a numpy fallback is selected at
import time), so a failed compile is downgraded to a warning.
"""

import warnings

from setuptools import setup

try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/hetnetcov/mcsim/_kernels.pyx"],
        language_level=3,
    )
    include_dirs = [numpy.get_include()]
except Exception as exc:  # pragma: no cover - build-env dependent
    warnings.warn(f"Cython extension disabled: {exc}")
    ext_modules = []
    include_dirs = []

setup(ext_modules=ext_modules, include_dirs=include_dirs)
