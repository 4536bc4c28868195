import os

from setuptools import setup

ext_modules = []
if not os.environ.get("FINSHAPE_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("finshape._ckernels", ["src/finshape/_ckernels.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython: install the pure-Python package; the kernel shim
        # falls back to finshape._pykernels at import time.
        ext_modules = []

setup(ext_modules=ext_modules)
