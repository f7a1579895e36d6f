"""Build script: compiles the optional fast kernels when Cython is available.

The package is fully functional without the extension (a pure-Python
implementation of the same kernels is selected at import time), so any
failure to build the extension is downgraded to a warning.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            warnings.warn(f"skipping compiled kernels: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping compiled kernel {ext.name}: {exc}")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "idealpoly._kernels._core",
        ["src/idealpoly/_kernels/_core.pyx"],
        # -ffp-contract=off keeps the compiled kernels bit-identical to the
        # pure-Python fallback (no FMA contraction of a*b+c).
        extra_compile_args=["-O2", "-ffp-contract=off"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
