"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a pure-Python fallback is
selected at import time); the build therefore marks the extension as
optional so that installation succeeds on hosts without a C toolchain.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext = Extension(
        "eqrep._ckernels",
        ["src/eqrep/_ckernels.pyx"],
        extra_compile_args=["-O3"],
    )
    ext.optional = True
    ext_modules = cythonize([ext], language_level=3)

setup(ext_modules=ext_modules)
