"""Build script for the optional compiled kernel extension.

The package is fully functional without the extension: twistlab._kernels
falls back to the numpy backend if the compiled module is missing.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "twistlab._kernels._fast",
                ["src/twistlab/_kernels/_fast.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
