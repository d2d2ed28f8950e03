"""Build glue for the optional compiled kernel.

The package is pure Python and fully functional without compilation.
When Cython and a C compiler are available we build ``rkanren._kernel_cy``,
a drop-in twin of ``rkanren._kernel_py`` that the kernel selector prefers
at import time.  Any failure here degrades to the pure build rather than
breaking the install.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/rkanren/_kernel_cy.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - depends on build host
    print(f"rkanren: skipping compiled kernel ({exc}); using pure-Python kernel")

setup(ext_modules=ext_modules)
