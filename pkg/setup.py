"""Build script: compiles the integrator hot-loop extension when Cython and a
C compiler are available, otherwise installs the pure-Python package (the
numpy fallback kernel is selected automatically at import time).

Set MOBELL_PURE_PYTHON=1 to skip the extension build entirely.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("MOBELL_PURE_PYTHON") != "1":
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "mobell.kernels._cy_rk4",
                    ["src/mobell/kernels/_cy_rk4.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    # -fcx-limited-range keeps gcc from calling __muldc3 for
                    # every complex product in the hot loop (we never produce
                    # inf/nan intermediates); avoid -ffast-math, which sets
                    # flush-to-zero process-wide
                    extra_compile_args=["-O3", "-fcx-limited-range", "-march=native"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
