"""Build script: compiles the optional speedup extension when Cython is available.

The package is fully functional without the extension; depforge._speedups
falls back to the pure-Python kernels at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "depforge._speedups._kernels",
                ["src/depforge/_speedups/_kernels.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
