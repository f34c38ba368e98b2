import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("CYCLOCSM_NO_EXT"):
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("cyclocsm._ckernels", ["src/cyclocsm/_ckernels.pyx"],
                       include_dirs=[numpy.get_include()])],
            compiler_directives={"language_level": 3},
        )

setup(ext_modules=ext_modules)
