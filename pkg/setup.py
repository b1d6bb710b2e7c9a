"""Build script for the optional compiled radial kernels.

The pure-Python kernels in ``gravbec._kernels_py`` are used whenever the
extension is missing, so a failed compile is not fatal.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("GRAVBEC_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "gravbec._kernels_cy",
                    ["src/gravbec/_kernels_cy.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
