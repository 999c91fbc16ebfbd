"""Build script: compiles the optional Cython kernel extension.

The extension is a pure accelerator.  If Cython or a C compiler is missing
the build silently falls back to the pure-Python kernels in
``blockprod._kernels_py`` (selected at import time by ``blockprod._kernels``).

Set BLOCKPROD_NO_EXT=1 to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("BLOCKPROD_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("blockprod._kernels_cy", ["src/blockprod/_kernels_cy.pyx"])],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
        for ext in ext_modules:
            ext.optional = True  # a failed C build must not break installation
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
