import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if os.environ.get("GEODETIC_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("geodetic._kernels", ["src/geodetic/_kernels.pyx"], include_dirs=[np.get_include()])],
            language_level=3,
        )

setup(ext_modules=ext_modules)
