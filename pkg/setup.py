import os

from setuptools import setup

ext_modules = []
if os.environ.get("RELHUR_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/relhur/_tridiag.pyx"],
            language_level=3,
        )
    except ImportError:
        # no Cython available: ship pure Python, the kernel shim falls back
        ext_modules = []

setup(ext_modules=ext_modules)
