"""Build script for the optional compiled kernel.

The extension is best-effort: if Cython or a C compiler is missing, the
package installs anyway and falls back to the pure-Python kernel at import.
Build in place for development with:

    python setup.py build_ext --inplace
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None


def extensions():
    if cythonize is None:
        return []
    ext = Extension(
        "propcom._kernel._fast",
        sources=["src/propcom/_kernel/_fast.pyx"],
        extra_compile_args=["-O3"],
    )
    try:
        return cythonize([ext], compiler_directives={"language_level": "3"})
    except Exception:
        return []


setup(ext_modules=extensions())
