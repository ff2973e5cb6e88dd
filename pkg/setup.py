from setuptools import setup, Extension

import numpy as np

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

import os

ext_modules = []
if cythonize is not None and os.path.exists("src/gyresw/kernels/_core.pyx"):
    ext_modules = cythonize(
        [
            Extension(
                "gyresw.kernels._core",
                ["src/gyresw/kernels/_core.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
