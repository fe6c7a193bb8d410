"""Build script for the compiled kernel core.

The extension is optional: if the toolchain is unavailable the install
still succeeds and the package falls back to the numpy kernels at import.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Treat extension build failures as a warning, not an error."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - toolchain dependent
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - toolchain dependent
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"warning: building esskit._kernels failed ({exc}); "
            "the pure numpy kernels will be used instead",
            file=sys.stderr,
        )


def extensions():
    from Cython.Build import cythonize

    ext = Extension(
        "esskit._kernels",
        ["src/esskit/_kernels.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level="3")


try:
    ext_modules = extensions()
except Exception as exc:  # pragma: no cover - Cython missing
    print(f"warning: Cython unavailable ({exc}); skipping compiled kernels", file=sys.stderr)
    ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
