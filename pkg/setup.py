"""Builds the compiled eigensolver kernel.

The extension is optional: set MOMINT_PURE_PYTHON=1 (or build without Cython)
to skip it, in which case the package falls back to the pure-Python kernel at
import time.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("MOMINT_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "momint._jacobi",
                    ["src/momint/_jacobi.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
