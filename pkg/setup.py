import os

from setuptools import Extension, setup

# The binding-store kernel is optionally compiled with Cython; the pure
# Python fallback (lpc/_core_py.py) is used when the extension is absent.
ext_modules = []
pyx = os.path.join("src", "lpc", "_core.pyx")
if os.path.exists(pyx):
    try:
        from Cython.Build import cythonize
        ext_modules = cythonize(
            [Extension("lpc._core", [pyx])], language_level="3")
    except ImportError:
        pass

setup(ext_modules=ext_modules)
