"""Build the compiled kernel extension.

The package works without it (a pure-python fallback is selected at import
time), but the extension is what makes the big verification grids fast.
Use `pip install -e . --no-build-isolation` in a dev checkout.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "damplab._kernels",
                ["src/damplab/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
