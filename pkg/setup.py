from setuptools import Extension, setup

import numpy as np
from Cython.Build import cythonize

ext = Extension(
    "prodcss._kernels._core",
    ["src/prodcss/_kernels/_core.pyx"],
    include_dirs=[np.get_include()],
)

setup(
    ext_modules=cythonize(
        [ext],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "initializedcheck": False,
            "cdivision": True,
        },
    ),
)
