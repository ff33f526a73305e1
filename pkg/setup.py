"""Builds the optional compiled kernel.

The package is fully functional without it (a pure-Python fallback is
selected at import time); the extension only accelerates the exhaustive
search loops.  Set SCHLAFLI_NO_EXT=1 to skip compilation.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("SCHLAFLI_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "schlafli._fastkern",
                    sources=["src/schlafli/_fastkern.pyx"],
                )
            ],
            compiler_directives={
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "language_level": "3",
            },
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
