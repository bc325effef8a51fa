"""Build shim for the compiled Monte Carlo kernel.

The extension is optional at runtime (the package falls back to the numpy
backend when the import fails) but built by default.  Set LEVYSUP_NO_EXT=1
to skip compilation entirely, e.g. on a toolchain without native math
vector support.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("LEVYSUP_NO_EXT"):
    from Cython.Build import cythonize

    ext = Extension(
        "levysup._mc_kernel",
        ["src/levysup/_mc_kernel.pyx"],
        extra_compile_args=[
            "-Ofast",
            "-march=native",
            "-fopenmp-simd",
            "-std=c11",
        ],
        extra_link_args=["-lmvec", "-lm"],
    )
    ext_modules = cythonize([ext], language_level=3)

setup(ext_modules=ext_modules)
