import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("ALPAY_WORKBENCH_NO_EXT", "") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        # no toolchain: the package runs on its pure-Python kernels
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "alpay_workbench._kernels",
                    ["src/alpay_workbench/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
