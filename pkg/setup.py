from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    # -ffp-contract=off: the pure-Python fallback must be bit-identical, so
    # the compiler may not fuse multiply-adds.
    extensions = cythonize(
        [
            Extension(
                "causalmetrics._kernels._fast",
                ["src/causalmetrics/_kernels/_fast.pyx"],
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        language_level="3",
    )
else:
    extensions = []

setup(ext_modules=extensions)
