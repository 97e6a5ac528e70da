"""Build script: compiles the optional fast kernel for oracle products.

The package works without the extension (a numpy fallback is selected at
import time); the compiled kernel speeds up the brute-force period products
for n = 65537 by roughly an order of magnitude.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "ngontower._fastmul",
                ["src/ngontower/_fastmul.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
