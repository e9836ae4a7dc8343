"""Build script: compiles the optional Cython projection kernel.

The package is fully functional without the extension; if Cython or a C
compiler is missing, the build falls back to the pure-Python kernel.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/jordan2/_kernels/_sjkernel.pyx",
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
