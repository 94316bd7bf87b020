"""Build setup for the optional compiled closure kernel.

The package is fully functional without the extension; when Cython and a C
compiler are available, `latloc.fca._closure_cy` provides a fast uint64
bitset kernel that `latloc.fca._kernel` picks up at import time.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "latloc.fca._closure_cy",
                ["src/latloc/fca/_closure_cy.pyx"],
            )
        ],
        language_level="3",
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
