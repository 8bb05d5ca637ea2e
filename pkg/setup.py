"""Build hook: compiles the optional fast kernel when Cython is available.

The package is fully functional without the extension; conefan._kernel
falls back to the pure-Python twin at import time.  Set CONEFAN_NO_EXT=1
to skip the compilation attempt entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("CONEFAN_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "conefan._kernel.fastkernel",
                    ["src/conefan/_kernel/fastkernel.pyx"],
                )
            ],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
