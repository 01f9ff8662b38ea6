"""Build hook for the optional compiled minor-scan kernel.

The package is fully functional without the extension; cfmkit.minorscan
falls back to the pure-Python twin when the import fails.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("cfmkit._minorscan_c", ["src/cfmkit/_minorscan_c.pyx"])],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
