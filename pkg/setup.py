"""Build hook: compile the optional speedup extension when Cython is present.

The package is fully functional without the extension; the kernels
package falls back to pure-Python/NumPy implementations at import time.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/valuix/kernels/_speedups.pyx"],
        language_level=3,
    )
    include_dirs = [numpy.get_include()]
    for ext in ext_modules:
        ext.include_dirs = include_dirs
        ext.define_macros = [("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")]
except ImportError:
    pass

setup(ext_modules=ext_modules)
