"""Build script: compiles the optional classification kernel when Cython is available.

The package is pure Python; the compiled kernel only accelerates plane sweeps.
A missing compiler or Cython falls back to the interpreted kernel at import time.
"""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "nkpolicy._kernel_cy",
                ["src/nkpolicy/_kernel_cy.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
