"""Build script for the optional compiled Airy core.

The extension is a pure accelerator: if Cython or a C compiler is
missing the install still succeeds and the package falls back to the
NumPy implementation at import time.

-ffp-contract=off is required: the kernels use compensated (double-
double) arithmetic whose correctness depends on strict IEEE rounding
of individual operations.  Never add -ffast-math here.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the accelerator if possible, warn and continue if not."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            self._warn(exc)
            self.extensions = []

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"WARNING: compiled airy core not built ({exc!r}); "
            "qbounce will use the pure NumPy fallback",
            file=sys.stderr,
        )


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("WARNING: Cython unavailable; skipping compiled airy core",
              file=sys.stderr)
        return []
    ext = Extension(
        "qbounce._airy_cy",
        sources=["src/qbounce/_airy_cy.pyx"],
        extra_compile_args=["-O2", "-ffp-contract=off"],
    )
    return cythonize([ext], language_level=3)


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
