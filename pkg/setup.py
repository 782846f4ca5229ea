"""Build hook for the optional compiled bit-kernel extension.

The package is fully functional without the extension; if Cython or a C
compiler is missing, the build degrades to the pure-Python kernels.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


def _extensions():
    if os.environ.get("SUMSETS_NO_EXT") == "1":
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "sumsets._bitops",
        sources=["src/sumsets/_bitops.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level=3)


class OptionalBuildExt(build_ext):
    """Treat extension build failures as a soft downgrade, not an error."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing entirely
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(f"warning: compiled kernels not built ({exc}); pure-Python fallback will be used")


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})
