"""Build script: compiles the optional min-sum kernel extension.

The package works without the extension (a pure-Python backend is selected
at import time), so a failed compile only costs speed.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "cdlattice._kernels._minsum",
                ["src/cdlattice/_kernels/_minsum.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
