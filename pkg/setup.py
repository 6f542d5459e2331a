import os

from setuptools import setup

ext_modules = []
if not os.environ.get("WLAX_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("wlax._pbw_core", ["src/wlax/_pbw_core.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": 3},
        )
    except ImportError:  # no Cython: the pure-Python kernel is used
        ext_modules = []

setup(ext_modules=ext_modules)
