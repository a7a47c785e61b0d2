"""Build script for the optional compiled core.

The package works without the extension (a pure-Python twin of every kernel
is selected at import time); building it just makes the hot loops fast.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "plaplab._core._kernels",
                sources=["src/plaplab/_core/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
