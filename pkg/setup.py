"""Build script for the optional compiled kernel extension.

The package is fully functional without the extension (a numpy fallback is
selected at import time). Set QAM_SKIP_EXT=1 to skip compilation entirely,
e.g. on hosts without a C toolchain.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("QAM_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("qamsim._kernels_cy", ["src/qamsim/_kernels_cy.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython available: ship the pure-python kernels only.
        ext_modules = []

setup(ext_modules=ext_modules)
