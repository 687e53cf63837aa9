"""Build script: compiles the optional Cython feasibility kernel.

The package works without the extension (a pure-Python kernel with the
same behaviour is selected at import time), so a missing Cython or a
failed compile only costs speed.
"""

import os

from setuptools import setup

PYX = "src/shicone/_fmcore_c.pyx"

ext_modules = []
if os.path.exists(PYX):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [PYX], compiler_directives={"language_level": "3"}
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
