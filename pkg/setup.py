import numpy as np
from setuptools import Extension, setup

# The compiled sweep kernel is optional: the package falls back to the numpy
# implementation when the extension is absent (see hrnr.kernels).
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "hrnr._sweep_cy",
                ["src/hrnr/_sweep_cy.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
