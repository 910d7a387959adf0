"""Build script: compiles the optional C accelerator for the numeric kernels.

The extension is a speedup, not a requirement; `moodkit.special` falls back
to the pure-Python kernels when the compiled module is unavailable.  Set
MOODKIT_PURE_PYTHON=1 to skip the compile step entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that degrades to the pure-Python fallback on any failure."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            self._skip(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._skip(exc)

    @staticmethod
    def _skip(exc):
        print(f"warning: skipping compiled kernels ({exc}); "
              "moodkit will use the pure-Python fallback")


ext_modules = []
if not os.environ.get("MOODKIT_PURE_PYTHON"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("moodkit._kernels", ["src/moodkit/_kernels.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        print("warning: Cython not available; building without compiled kernels")

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
