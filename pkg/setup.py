"""Build script. The compiled kernel extension is optional: if Cython or a C
compiler is unavailable the package falls back to the numpy kernels at import
time. Build in place for development with:

    python setup.py build_ext --inplace
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("COVERBOUND_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "coverbound._kernels._ckern",
                    ["src/coverbound/_kernels/_ckern.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
