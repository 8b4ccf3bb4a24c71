"""Build script; the Cython kernels are optional and fall back to pure Python."""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("AGRARIAN_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "agrarian._kernels._ckernels",
                    ["src/agrarian/_kernels/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
