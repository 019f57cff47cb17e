"""Builds the optional compiled kernels.

    pip install -e . --no-build-isolation
    python setup.py build_ext --inplace

If Cython or a C compiler is missing the package still installs and
``xgraph.kernels`` falls back to the pure-Python implementation.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("xgraph._kernels", ["src/xgraph/_kernels.pyx"], optional=True)],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
