import platform

from setuptools import Extension, setup


def compile_args():
    args = ["-O2"]
    # Carry-less multiply needs an opt-in ISA flag; only enable it when the
    # build machine actually has the instruction.
    if platform.machine() in ("x86_64", "AMD64"):
        try:
            with open("/proc/cpuinfo") as f:
                if "pclmulqdq" in f.read():
                    args += ["-mpclmul", "-msse4.1"]
        except OSError:
            pass
    return args


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "perm2k._kernels.core",
        ["src/perm2k/_kernels/core.pyx"],
        extra_compile_args=compile_args(),
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions())
